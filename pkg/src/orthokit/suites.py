"""Seeded randomized property suites behind ``orthokit verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .classical import f_gen, oe, to_dser
from .dser import (
    QTOP,
    QTOPSTAR,
    E,
    Fgen,
    HomMap,
    Word,
    dser_matrix,
    lift_elementary,
    project_matrix,
    split_generator,
    word_eval,
    Conjugate,
)
from .matrix import Mat, Vector
from .quadmod import QuadSpace, diagonal, is_orthogonal, is_relative, phi_tilde, q_eval
from .ring import Excision, IdealDesc, RingCtx
from .spinor import decompose_reflections, recompose, spinor_norm


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, what: str, **info):
        self.cases += 1
        if not cond:
            self.failures.append({"check": what, **info})

    def to_dict(self) -> dict:
        return {"suite": self.name, "cases": self.cases, "ok": self.ok, "failures": self.failures[:20]}


def random_unit(ctx: RingCtx, rng: random.Random):
    while True:
        a = ctx.random(rng)
        if ctx.is_unit(a):
            return a


def random_space(ctx: RingCtx, rng: random.Random, n_max: int = 3, m_max: int = 3) -> QuadSpace:
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    return diagonal(ctx, [random_unit(ctx, rng) for _ in range(n)], m)


def random_hom(S: QuadSpace, rng: random.Random, direction: str | None = None,
               entry: Callable | None = None) -> HomMap:
    entry = entry or S.ctx.random
    direction = direction or rng.choice((QTOP, QTOPSTAR))
    return HomMap(direction, Mat(S.ctx, [[entry(rng) for _ in range(S.n)] for _ in range(S.m)]))


def suite_ring(ctx: RingCtx, rng: random.Random, cases: int = 200) -> SuiteResult:
    res = SuiteResult("ring")
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    one, zero = ctx.one(), ctx.zero()
    for _ in range(cases):
        a, b, c = ctx.random(rng), ctx.random(rng), ctx.random(rng)
        f = ctx.format
        info = {"a": f(a), "b": f(b), "c": f(c)}
        res.check(mul(mul(a, b), c) == mul(a, mul(b, c)), "mul associative", **info)
        res.check(add(add(a, b), c) == add(a, add(b, c)), "add associative", **info)
        res.check(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)), "distributive", **info)
        res.check(mul(a, b) == mul(b, a) and add(a, b) == add(b, a), "commutative", **info)
        res.check(mul(a, one) == a and add(a, zero) == a and add(a, neg(a)) == zero, "identities", **info)
        inv = ctx.inverse(a)
        res.check(inv is None or mul(a, inv) == one, "inverse", **info)
        res.check(ctx.parse(f(a)) == a, "round trip", **info)
        if isinstance(ctx, Excision):
            p = ctx.project
            B = ctx.base
            res.check(p(add(a, b)) == B.add(p(a), p(b)) and p(mul(a, b)) == B.mul(p(a), p(b)),
                      "projection is a homomorphism", **info)
            res.check((inv is not None) == (B.is_unit(a[0]) and B.is_unit(B.add(a[0], a[1]))),
                      "excision unit criterion", **info)
    return res


def suite_quadmod(ctx: RingCtx, rng: random.Random, cases: int = 200) -> SuiteResult:
    res = SuiteResult("quadmod")
    for _ in range(cases):
        S = random_space(ctx, rng)
        x = Vector(ctx, [ctx.random(rng) for _ in range(S.dim)])
        y = Vector(ctx, [ctx.random(rng) for _ in range(S.dim)])
        lhs = q_eval(S, x + y) - q_eval(S, x) - q_eval(S, y)
        res.check(lhs.value == S.bilinear(x, y), "polarization")
        A = dser_matrix(S, random_hom(S, rng))
        B = dser_matrix(S, random_hom(S, rng))
        res.check(is_orthogonal(S, A @ B), "closed under product")
    return res


def suite_dser(ctx: RingCtx, rng: random.Random, cases: int = 500) -> SuiteResult:
    res = SuiteResult("dser")
    one = ctx.one()
    for k in range(cases):
        S = random_space(ctx, rng)
        a = random_hom(S, rng)
        M = dser_matrix(S, a)
        res.check(is_orthogonal(S, M) and M.det_value() == one, "orthogonal with det 1", case=k)
        res.check((dser_matrix(S, -a) @ M).is_identity(), "inverse law", case=k)
        a2 = random_hom(S, rng, a.direction)
        lhs, rhs = split_generator(S, a, a2)
        res.check(word_eval(lhs) == word_eval(rhs), "splitting identity", case=k)
        if S.m >= 2 and S.n >= 2:
            # maps on different hyperbolic rows and different Q columns commute
            z = ctx.zero()
            r1, r2 = rng.sample(range(S.m), 2)
            c1, c2 = rng.sample(range(S.n), 2)
            rows1 = [[ctx.random(rng) if (i == r1 and j == c1) else z for j in range(S.n)] for i in range(S.m)]
            rows2 = [[ctx.random(rng) if (i == r2 and j == c2) else z for j in range(S.n)] for i in range(S.m)]
            A = dser_matrix(S, HomMap(rng.choice((QTOP, QTOPSTAR)), Mat(ctx, rows1)))
            B = dser_matrix(S, HomMap(rng.choice((QTOP, QTOPSTAR)), Mat(ctx, rows2)))
            res.check(A @ B == B @ A, "disjoint support commutes", case=k)
    return res


def suite_classical(ctx: RingCtx, rng: random.Random, cases: int = 200) -> SuiteResult:
    res = SuiteResult("classical")
    one = ctx.one()
    for k in range(cases):
        n = rng.randint(1, 3)
        z, w = ctx.random(rng), ctx.random(rng)
        if n >= 1:
            i, j = rng.sample(range(1, 2 * n + 1), 2) if n > 1 else (1, 2)
            S = phi_tilde(ctx, 2 * n)
            M = oe(ctx, n, i, j, z)
            res.check(is_orthogonal(S, M) and M.det_value() == one, "oe orthogonal", case=k)
            res.check(M @ oe(ctx, n, i, j, w) == oe(ctx, n, i, j, ctx.add(z, w)), "oe additive", case=k)
        S = phi_tilde(ctx, 2 * n + 1)
        kind = rng.randint(1, 5) if n >= 2 else rng.randint(1, 2)
        i = rng.randint(1, n)
        j = rng.choice([t for t in range(1, n + 1) if t != i]) if kind >= 3 else None
        F = f_gen(ctx, n, kind, i, z, j)
        res.check(is_orthogonal(S, F) and F.det_value() == one, f"F{kind} orthogonal", case=k)
        if kind <= 2:
            ok = word_eval(to_dser(S, Fgen(kind, i, z))) == F
            res.check(ok, "dictionary", case=k)
    return res


def suite_spinor(ctx: RingCtx, rng: random.Random, cases: int = 100) -> SuiteResult:
    res = SuiteResult("spinor")
    for k in range(cases):
        S = random_space(ctx, rng, 2, 2)
        vs = []
        while len(vs) < 4:
            v = Vector(ctx, [ctx.random(rng) for _ in range(S.dim)])
            if ctx.is_unit(S.bilinear(v, v)):
                vs.append(v)
        A = recompose(S, vs[:2])
        B = recompose(S, vs[2:]) @ dser_matrix(S, random_hom(S, rng))
        dec = decompose_reflections(S, A @ B)
        res.check(recompose(S, dec) == A @ B and len(dec) <= S.dim, "recomposition", case=k)
        res.check(spinor_norm(S, A @ B) == spinor_norm(S, A) * spinor_norm(S, B), "norm multiplicative", case=k)
    return res


def random_relative_word(S: QuadSpace, I: IdealDesc, rng: random.Random, letters: int = 2) -> Word:
    out = []
    for _ in range(letters):
        inner = E(random_hom(S, rng, entry=I.random_element))
        if rng.random() < 0.5:
            out.append((inner, rng.choice((1, -1))))
        else:
            gamma = Word(S, tuple((E(random_hom(S, rng)), rng.choice((1, -1))) for _ in range(rng.randint(1, 2))))
            out.append((Conjugate(gamma, inner), rng.choice((1, -1))))
    return Word(S, tuple(out))


def suite_lift(ctx: RingCtx, I: IdealDesc, rng: random.Random, cases: int = 200) -> SuiteResult:
    res = SuiteResult("lift")
    for k in range(cases):
        S = random_space(ctx, rng, 2, 2)
        w = random_relative_word(S, I, rng)
        M = word_eval(w)
        lifted = lift_elementary(w, I)
        L = word_eval(lifted)
        res.check(is_orthogonal(lifted.space, L), "lift orthogonal", case=k)
        res.check(project_matrix(L) == M, "projection recovers", case=k)
        exc = lifted.space.ctx
        res.check(is_relative(lifted.space, L, exc.inner_ideal()), "lift relative", case=k)
    return res


SUITES = ("ring", "quadmod", "dser", "classical", "spinor", "lift")


def run_suite(name: str, ctx: RingCtx, seed: int, ideal: IdealDesc | None = None) -> SuiteResult:
    rng = random.Random(seed)
    if name == "ring":
        return suite_ring(ctx, rng)
    if name == "quadmod":
        return suite_quadmod(ctx, rng)
    if name == "dser":
        return suite_dser(ctx, rng)
    if name == "classical":
        return suite_classical(ctx, rng)
    if name == "spinor":
        return suite_spinor(ctx, rng)
    if name == "lift":
        if ideal is None:
            raise ValueError("the lift suite needs --ideal")
        return suite_lift(ctx, ideal, rng)
    raise ValueError(f"unknown suite {name!r}")
