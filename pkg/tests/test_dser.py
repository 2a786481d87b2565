import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthokit.classical import oe
from orthokit.dser import (
    OE,
    QTOP,
    QTOPSTAR,
    Conjugate,
    DSERError,
    E,
    HomMap,
    Word,
    alpha_star,
    dser_matrix,
    e_alpha,
    e_beta_star,
    hom,
    lift_elementary,
    lift_orthogonal,
    project_matrix,
    relative_generator,
    relative_normal_form,
    split_generator,
    word_eval,
    word_from_json,
    word_to_json,
)
from orthokit.matrix import DimensionError, Mat
from orthokit.quadmod import diagonal, is_orthogonal, is_relative, phi_tilde
from orthokit.ring import Excision, ideal

from conftest import EXC, PX, QQ, RINGS, Z9, elements

I3 = ideal(Z9, [3])


def H(S, direction, rows):
    return HomMap(direction, Mat.from_values(S.ctx, rows))


# -- alpha star and the matrices --------------------------------------------------------

def test_alpha_star_examples():
    S = phi_tilde(QQ, 3)
    assert alpha_star(S, hom(S, QTOP, [[3]])) == Mat.from_values(QQ, [[Fraction(3, 2)]])
    assert alpha_star(S, hom(S, QTOP, [[0]])) == Mat.from_values(QQ, [[0]])
    S2 = diagonal(QQ, [2, 2], 2)
    got = alpha_star(S2, hom(S2, QTOP, [[1, 0], [0, 1]]))
    assert got == Mat.from_values(QQ, [[Fraction(1, 2), 0], [0, Fraction(1, 2)]])


def test_e_alpha_small_case():
    S = phi_tilde(QQ, 3)
    a = Fraction(7, 3)
    want = Mat.from_values(QQ, [[1, 0, -a / 2], [a, 1, -a * a / 4], [0, 0, 1]])
    assert e_alpha(S, hom(S, QTOP, [[a]])) == want
    assert e_alpha(S, hom(S, QTOP, [[2]])) == Mat.from_values(QQ, [[1, 0, -1], [2, 1, -1], [0, 0, 1]])
    assert e_alpha(S, hom(S, QTOP, [[0]])).is_identity()


def test_e_beta_star_small_case():
    S = phi_tilde(QQ, 3)
    b = Fraction(-5, 2)
    want = Mat.from_values(QQ, [[1, -b / 2, 0], [0, 1, 0], [b, -b * b / 4, 1]])
    assert e_beta_star(S, hom(S, QTOPSTAR, [[b]])) == want
    assert e_beta_star(S, hom(S, QTOPSTAR, [[0]])).is_identity()


def test_direction_is_checked():
    S = phi_tilde(QQ, 3)
    with pytest.raises(DSERError):
        e_alpha(S, hom(S, QTOPSTAR, [[1]]))
    with pytest.raises(DSERError):
        e_beta_star(S, hom(S, QTOP, [[1]]))


def test_shape_and_space_errors():
    S = phi_tilde(QQ, 3)
    with pytest.raises(DimensionError):
        e_alpha(S, hom(S, QTOP, [[1, 2]]))
    even = phi_tilde(QQ, 4)
    with pytest.raises(DSERError):
        e_alpha(even, HomMap(QTOP, Mat.from_values(QQ, [[1], [1]])))


def _pair_swap(S):
    perm = list(range(S.dim))
    for k in range(S.m):
        perm[S.x_index(k)], perm[S.f_index(k)] = S.f_index(k), S.x_index(k)
    return perm


def test_star_is_the_pair_swapped_e():
    rng = random.Random(11)
    for _ in range(100):
        ctx = rng.choice([Z9, QQ, PX])
        S = diagonal(ctx, [ctx.from_int(rng.choice([1, 2, 4]))] * rng.randint(1, 3), rng.randint(1, 3))
        rows = [[ctx.random(rng) for _ in range(S.n)] for _ in range(S.m)]
        A = e_alpha(S, HomMap(QTOP, Mat(ctx, rows)))
        B = e_beta_star(S, HomMap(QTOPSTAR, Mat(ctx, rows)))
        assert A.permute(_pair_swap(S)) == B


def spaces_and_maps(ctx):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, 3))
        m = draw(st.integers(1, 3))
        units = [u for u in (ctx.from_int(k) for k in (1, 2, -1, 5)) if ctx.is_unit(u)]
        S = diagonal(ctx, [draw(st.sampled_from(units)) for _ in range(n)], m)
        mat = st.lists(st.lists(elements(ctx), min_size=n, max_size=n), min_size=m, max_size=m)
        direction = draw(st.sampled_from([QTOP, QTOPSTAR]))
        a1 = HomMap(direction, Mat(ctx, draw(mat)))
        a2 = HomMap(direction, Mat(ctx, draw(mat)))
        return S, a1, a2

    return build()


@pytest.mark.parametrize("name", sorted(RINGS))
def test_generators_orthogonal_det_one_and_invertible(name):
    ctx = RINGS[name]

    @given(spaces_and_maps(ctx))
    def check(case):
        S, a, _ = case
        M = dser_matrix(S, a)
        assert is_orthogonal(S, M)
        assert M.det_value() == ctx.one()
        assert (dser_matrix(S, -a) @ M).is_identity()

    check()


@pytest.mark.parametrize("name", sorted(RINGS))
def test_splitting_identity(name):
    ctx = RINGS[name]

    @given(spaces_and_maps(ctx))
    def check(case):
        S, a1, a2 = case
        lhs, rhs = split_generator(S, a1, a2)
        assert len(lhs) == 1 and len(rhs) == 3
        assert word_eval(lhs) == word_eval(rhs)

    check()


def test_splitting_with_zero():
    S = diagonal(Z9, [1], 2)
    a = H(S, QTOP, [[4], [7]])
    lhs, rhs = split_generator(S, a, H(S, QTOP, [[0], [0]]))
    assert word_eval(lhs) == word_eval(rhs) == e_alpha(S, a)
    with pytest.raises(DSERError):
        split_generator(S, a, H(S, QTOPSTAR, [[0], [0]]))


# -- commutation ----------------------------------------------------------------------------

def test_disjoint_rows_and_columns_commute():
    rng = random.Random(5)
    S = diagonal(Z9, [1, 2, 4], 3)
    for _ in range(200):
        r1, r2 = rng.sample(range(3), 2)
        c1, c2 = rng.sample(range(3), 2)
        m1 = [[rng.randrange(9) if (i, j) == (r1, c1) else 0 for j in range(3)] for i in range(3)]
        m2 = [[rng.randrange(9) if (i, j) == (r2, c2) else 0 for j in range(3)] for i in range(3)]
        A = dser_matrix(S, HomMap(rng.choice([QTOP, QTOPSTAR]), Mat(Z9, m1)))
        B = dser_matrix(S, HomMap(rng.choice([QTOP, QTOPSTAR]), Mat(Z9, m2)))
        assert A @ B == B @ A


def test_disjoint_rows_alone_do_not_force_commutation():
    # both maps read the same Q coordinate, so alpha_1 alpha_2^* is not symmetric
    S = diagonal(Z9, [1], 2)
    A = e_alpha(S, H(S, QTOP, [[1], [0]]))
    B = e_alpha(S, H(S, QTOP, [[0], [1]]))
    assert A @ B != B @ A


def test_commutation_criterion_matches_symmetry():
    # E_a1 and E_a2 commute exactly when a1 a2^* is symmetric
    rng = random.Random(8)
    S = diagonal(QQ, [1, 3], 2)
    for _ in range(100):
        a1 = HomMap(QTOP, Mat(QQ, [[QQ.from_int(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]))
        a2 = HomMap(QTOP, Mat(QQ, [[QQ.from_int(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]))
        P = a1.matrix @ alpha_star(S, a2)
        A, B = e_alpha(S, a1), e_alpha(S, a2)
        assert (A @ B == B @ A) == (P == P.T)


# -- words -----------------------------------------------------------------------------------

def test_word_eval_examples():
    S = diagonal(Z9, [1], 2)
    assert word_eval(Word(S)).is_identity()
    a = H(S, QTOP, [[2], [5]])
    assert word_eval(Word(S, ((E(a), 1), (E(a), -1)))).is_identity()
    S4 = phi_tilde(Z9, 4)
    assert word_eval(Word.of(S4, OE(1, 3, 2), OE(1, 3, 5))) == oe(Z9, 2, 1, 3, 7)


def test_word_inverse():
    S = diagonal(QQ, [1, 2], 1)
    w = Word(S, ((E(H(S, QTOP, [[1, 2]])), 1), (E(H(S, QTOPSTAR, [[3, -1]])), -1)))
    assert (word_eval(w) @ word_eval(w.inverse())).is_identity()


def test_word_json_round_trip():
    S = diagonal(Z9, [1], 2)
    gamma = Word(S, ((E(H(S, QTOP, [[1], [2]])), -1),))
    w = Word(S, ((Conjugate(gamma, E(H(S, QTOPSTAR, [[3], [6]]))), 1), (E(H(S, QTOP, [[0], [3]])), -1)))
    assert word_from_json(S, word_to_json(w)) == w
    S4 = phi_tilde(Z9, 4)
    v = Word.of(S4, OE(1, 3, 2))
    assert word_from_json(S4, word_to_json(v)) == v


def test_conjugate_flattens():
    S = diagonal(Z9, [1], 2)
    gamma = Word.of(S, E(H(S, QTOP, [[1], [2]])), E(H(S, QTOPSTAR, [[4], [0]])))
    inner = E(H(S, QTOPSTAR, [[3], [6]]))
    w = relative_generator(gamma, inner, I3)
    assert len(w) == 1 and len(w.flatten()) == 2 * len(gamma) + 1
    assert word_eval(w) == word_eval(w.flatten())


# -- relative generators and lifts --------------------------------------------------------------

def test_relative_generator_examples():
    S = diagonal(Z9, [1], 2)
    inner = E(H(S, QTOPSTAR, [[3], [6]]))
    w = relative_generator(Word(S), inner, I3)
    assert is_relative(S, word_eval(w), I3)
    w = relative_generator(Word.of(S, E(H(S, QTOP, [[1], [4]]))), E(H(S, QTOP, [[3], [0]])), I3)
    assert len(w.flatten()) == 3 and is_relative(S, word_eval(w), I3)
    anything = E(H(S, QTOP, [[1], [2]]))
    relative_generator(Word(S), anything, ideal(Z9, [1]))
    with pytest.raises(DSERError):
        relative_generator(Word(S), anything, I3)


def test_lift_elementary_round_trip():
    S = diagonal(Z9, [2], 2)
    inner = Word.of(S, E(H(S, QTOP, [[3], [6]])))
    for w in (
        inner,
        Word(S),
        relative_generator(Word.of(S, E(H(S, QTOPSTAR, [[1], [5]]))), E(H(S, QTOP, [[3], [3]])), I3),
    ):
        lifted = lift_elementary(w, I3)
        L = word_eval(lifted)
        assert project_matrix(L) == word_eval(w)
        assert is_orthogonal(lifted.space, L)
        assert is_relative(lifted.space, L, lifted.space.ctx.inner_ideal())
    assert word_eval(lift_elementary(Word(S), I3)).is_identity()


def test_lift_elementary_rejects_non_relative_letters():
    S = diagonal(Z9, [2], 2)
    with pytest.raises(DSERError):
        lift_elementary(Word.of(S, E(H(S, QTOP, [[1], [0]]))), I3)


def test_lift_orthogonal():
    S = diagonal(Z9, [2], 2)
    X = Excision(Z9, I3)
    L = lift_orthogonal(S, S.identity(), I3)
    assert L == Mat(X, [[(a, 0) for a in row] for row in S.identity().rows])
    eps = word_eval(relative_generator(Word.of(S, E(H(S, QTOP, [[1], [4]]))), E(H(S, QTOPSTAR, [[3], [6]])), I3))
    L = lift_orthogonal(S, eps, I3)
    S2 = S.change_ring(X, X.embed)
    assert is_orthogonal(S2, L)
    assert project_matrix(L) == eps
    with pytest.raises(DSERError):
        lift_orthogonal(S, e_alpha(S, H(S, QTOP, [[1], [0]])), I3)


# -- relative normal form ------------------------------------------------------------------------

def retract(a):
    return EXC.embed(a[0])


J = EXC.inner_ideal()


def test_normal_form_single_letter():
    S = diagonal(EXC, [EXC.one()], 1)
    rho_tau = HomMap(QTOP, Mat(EXC, [[(4, 3)]]))
    nf = relative_normal_form(Word.of(S, E(rho_tau)), retract, J)
    # E(rho/2) E(tau) E(rho/2)^-1 . E(rho/2) E(rho/2), rho/2 = 4/2 = 2
    assert len(nf) == 3
    assert word_eval(nf) == e_alpha(S, rho_tau)
    g = nf.letters[0][0]
    assert g.kind == "Conjugate" and g.inner.hom.matrix.rows == (((0, 3),),)
    assert [x.hom.matrix.rows[0][0] for x, _ in g.conj.letters] == [(2, 0)]
    assert [x.hom.matrix.rows[0][0] for x, _ in nf.letters[1:]] == [(2, 0), (2, 0)]


def test_normal_form_of_word_already_in_the_ideal():
    S = diagonal(EXC, [EXC.one()], 2)
    w = Word.of(S, E(HomMap(QTOP, Mat(EXC, [[(0, 3)], [(0, 6)]]))), E(HomMap(QTOPSTAR, Mat(EXC, [[(0, 0)], [(0, 3)]]))))
    nf = relative_normal_form(w, retract, J)
    assert len(nf) == 2
    assert all(g.conj.letters == () for g, _ in nf.letters)
    assert word_eval(nf) == word_eval(w)


def test_normal_form_two_letters():
    S = diagonal(EXC, [EXC.one()], 2)
    a = HomMap(QTOP, Mat(EXC, [[(1, 3)], [(2, 0)]]))
    b = HomMap(QTOP, Mat(EXC, [[(8, 6)], [(7, 3)]]))  # rho_b = -rho_a
    w = Word.of(S, E(a), E(b))
    nf = relative_normal_form(w, retract, J)
    assert len(nf) == 2
    assert word_eval(nf) == word_eval(w)
    for g, _ in nf.letters:
        assert all(J.contains(x) for x in g.inner.hom.entries())


def test_normal_form_keeps_non_trivial_tail():
    S = diagonal(EXC, [EXC.one()], 1)
    w = Word(S, ((E(HomMap(QTOP, Mat(EXC, [[(1, 0)]]))), -1),))
    nf = relative_normal_form(w, retract, J)
    assert word_eval(nf) == word_eval(w)
    assert nf.letters[-1][0].kind == "E"
