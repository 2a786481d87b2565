import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthokit.classical import oe
from orthokit.dser import HomMap, QTOP, QTOPSTAR, dser_matrix
from orthokit.matrix import DimensionError, Mat, Vector
from orthokit.quadmod import (
    QuadSpaceError,
    diagonal,
    hyperbolic,
    is_orthogonal,
    is_relative,
    orth_sum,
    orthogonal_inverse,
    parse_space,
    phi_tilde,
    q_eval,
)
from orthokit.ring import UnsupportedError, ideal, Poly

from conftest import F3, PX, QQ, RINGS, Z9, elements


def test_phi_tilde_grams():
    assert phi_tilde(QQ, 2).gram == Mat.from_values(QQ, [[0, 1], [1, 0]])
    assert phi_tilde(QQ, 3).gram == Mat.from_values(QQ, [[2, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert phi_tilde(QQ, 1).gram == Mat.from_values(QQ, [[2]])
    S = phi_tilde(QQ, 5)
    assert (S.n, S.m) == (1, 2)
    with pytest.raises(QuadSpaceError):
        phi_tilde(QQ, 0)


def test_orthogonal_sums():
    assert orth_sum(phi_tilde(Z9, 1), hyperbolic(Z9, 1)) == phi_tilde(Z9, 3)
    assert orth_sum(hyperbolic(Z9, 1), hyperbolic(Z9, 1)) == phi_tilde(Z9, 4)
    A = phi_tilde(Z9, 5)
    assert orth_sum(A, None) == A
    for r in range(1, 5):
        S = hyperbolic(Z9, 1)
        for _ in range(r - 1):
            S = orth_sum(S, hyperbolic(Z9, 1))
        assert S == phi_tilde(Z9, 2 * r)


def test_orth_sum_normalises_layout():
    S = orth_sum(hyperbolic(QQ, 1), diagonal(QQ, [3]))
    assert (S.n, S.m) == (1, 1)
    assert S.gram.rows[0][0] == 3


def test_q_on_hyperbolic_plane_is_the_pairing():
    assert q_eval(hyperbolic(QQ, 1), Vector.from_values(QQ, [3, 5])) == QQ(15)


def test_q_examples():
    S = phi_tilde(QQ, 3)
    assert q_eval(S, Vector.from_values(QQ, [0, 0, 0])) == QQ(0)
    assert q_eval(S, Vector.from_values(QQ, [1, 0, 0])) == QQ(1)
    with pytest.raises(DimensionError):
        q_eval(S, Vector.from_values(QQ, [1, 0]))


def test_orthogonality_examples():
    H9 = hyperbolic(Z9, 1)
    assert is_orthogonal(H9, H9.identity())
    assert is_orthogonal(H9, Mat.diag(Z9, [2, 5]))
    assert not is_orthogonal(hyperbolic(QQ, 1), Mat.diag(QQ, [2, 2]))
    with pytest.raises(DimensionError):
        is_orthogonal(H9, Mat.identity(Z9, 3))


def test_relative_examples():
    I = ideal(Z9, [3])
    S = phi_tilde(Z9, 4)
    assert is_relative(S, S.identity(), I)
    assert is_relative(S, oe(Z9, 2, 1, 3, 3), I)
    assert not is_relative(S, oe(Z9, 2, 1, 3, 1), I)


def test_relative_membership_undecidable():
    R = Poly(PX)
    S = hyperbolic(R, 1)
    with pytest.raises(UnsupportedError):
        is_relative(S, S.identity(), ideal(R, ["[[0,1]]"]))


def test_degenerate_gram_rejected():
    with pytest.raises(QuadSpaceError):
        diagonal(Z9, [3], 1)


def test_parse_space():
    assert parse_space(Z9, "phi:5") == phi_tilde(Z9, 5)
    S = parse_space(QQ, "diag:1,1/2+hyp:2")
    assert (S.n, S.m) == (2, 2)


@pytest.mark.parametrize("name", sorted(RINGS))
def test_polarization(name):
    ctx = RINGS[name]

    @given(st.integers(0, 2), st.integers(1, 2), st.data())
    def check(n, m, data):
        units = [u for u in (ctx.from_int(k) for k in (1, 2, -1, 4)) if ctx.is_unit(u)]
        S = diagonal(ctx, [data.draw(st.sampled_from(units)) for _ in range(n)], m)
        vec = st.lists(elements(ctx), min_size=S.dim, max_size=S.dim).map(lambda e: Vector(ctx, e))
        x, y = data.draw(vec), data.draw(vec)
        assert (q_eval(S, x + y) - q_eval(S, x) - q_eval(S, y)).value == S.bilinear(x, y)
        r = data.draw(elements(ctx))
        assert q_eval(S, x.scale(r)).value == ctx.mul(ctx.mul(r, r), q_eval(S, x).value)

    check()


def test_orthogonal_closed_under_product_and_inverse():
    rng = random.Random(3)
    for ctx in (Z9, QQ, PX):
        S = diagonal(ctx, [1, 2], 2)
        for _ in range(30):
            ms = []
            for _ in range(2):
                rows = [[ctx.random(rng) for _ in range(S.n)] for _ in range(S.m)]
                ms.append(dser_matrix(S, HomMap(rng.choice((QTOP, QTOPSTAR)), Mat(ctx, rows))))
            A, B = ms
            assert is_orthogonal(S, A @ B)
            Ai = orthogonal_inverse(S, A)
            assert is_orthogonal(S, Ai) and (A @ Ai).is_identity()


def test_orthogonal_determinants_are_plus_minus_one():
    # every orthogonal matrix of the hyperbolic plane over Z/9, exhaustively
    S = hyperbolic(Z9, 1)
    seen = set()
    for a in range(9):
        for b in range(9):
            for c in range(9):
                for d in range(9):
                    M = Mat(Z9, [[a, b], [c, d]])
                    if is_orthogonal(S, M):
                        seen.add(M.det_value())
    assert seen == {1, 8}
    S3 = phi_tilde(F3, 3)
    dets = set()
    from itertools import product
    for entries in product(range(3), repeat=9):
        M = Mat(F3, [entries[0:3], entries[3:6], entries[6:9]])
        if is_orthogonal(S3, M):
            dets.add(M.det_value())
    assert dets == {1, 2}
