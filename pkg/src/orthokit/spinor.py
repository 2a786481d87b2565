"""Reflections, Cartan-Dieudonne decomposition and spinor norms over fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .matrix import Mat, Vector
from .quadmod import QuadSpace, is_orthogonal
from .ring import Rationals, RingCtx, UnsupportedError, Zmod

EXHAUSTIVE_LIMIT = 20000


class SpinorError(ValueError):
    pass


def _require_field(ctx: RingCtx):
    if not (isinstance(ctx, Rationals) or (isinstance(ctx, Zmod) and ctx.is_field)):
        raise UnsupportedError(f"{ctx.spec()} is not a field of odd characteristic")


def reflect(S: QuadSpace, v: Vector | Sequence) -> Mat:
    """tau_v(x) = x - 2 v <v,x> / <v,v>."""
    ctx = S.ctx
    ve = v.entries if isinstance(v, Vector) else tuple(v)
    if len(ve) != S.dim:
        raise SpinorError(f"vector of length {len(ve)} in a space of dim {S.dim}")
    inv = ctx.inverse(S.bilinear(ve, ve))
    if inv is None:
        raise SpinorError("<v,v> is not a unit; no reflection")
    c = ctx.mul(ctx.from_int(2), inv)
    Bv = S.gram.apply(ve)  # <v, e_j> = (B v)_j
    rows = []
    for i in range(S.dim):
        ci = ctx.mul(c, ve[i])
        row = []
        for j in range(S.dim):
            t = ctx.neg(ctx.mul(ci, Bv[j]))
            row.append(ctx.add(ctx.one(), t) if i == j else t)
        rows.append(row)
    return Mat(ctx, rows)


# -- Cartan-Dieudonne ----------------------------------------------------------------


class _Dense:
    """Small helper bundling payload arithmetic for the decomposition."""

    def __init__(self, S: QuadSpace):
        self.S = S
        self.ctx = S.ctx
        self.B = S.gram.rows
        self.n = S.dim

    def dot(self, x, y):
        ctx = self.ctx
        z = ctx.zero()
        acc = z
        for xi, row in zip(x, self.B):
            if xi == z:
                continue
            for b, yj in zip(row, y):
                if b != z and yj != z:
                    acc = ctx.add(acc, ctx.mul(xi, ctx.mul(b, yj)))
        return acc

    def apply(self, M, x):
        add, mul, z = self.ctx.add, self.ctx.mul, self.ctx.zero()
        out = []
        for row in M:
            acc = z
            for a, b in zip(row, x):
                if a != z and b != z:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return out

    def combo(self, coeffs, basis):
        ctx = self.ctx
        out = [ctx.zero()] * self.n
        for c, b in zip(coeffs, basis):
            if c == ctx.zero():
                continue
            out = [ctx.add(o, ctx.mul(c, e)) for o, e in zip(out, b)]
        return out

    def reflect_left(self, v, M):
        """tau_v . M = M - 2 v (v^T B M) / <v,v>."""
        ctx = self.ctx
        c = ctx.mul(ctx.from_int(2), ctx.inverse(self.dot(v, v)))
        vB = self.apply(self.B, v)  # B symmetric
        w = self.apply(list(zip(*M)), vB)  # (v^T B M)_j
        return [
            [ctx.sub(M[i][j], ctx.mul(ctx.mul(c, v[i]), w[j])) for j in range(self.n)]
            for i in range(self.n)
        ]


def _coefficient_candidates(ctx: RingCtx, d: int) -> Iterator[tuple]:
    """Coefficient tuples for vectors of a d-dimensional subspace, small ones first."""
    zero, one = ctx.zero(), ctx.one()
    seen = set()

    def emit(t):
        if t not in seen and any(c != zero for c in t):
            seen.add(t)
            return True
        return False

    for k in range(d):
        t = tuple(one if i == k else zero for i in range(d))
        if emit(t):
            yield t
    for a, b in itertools.combinations(range(d), 2):
        for s in (one, ctx.neg(one)):
            t = tuple(one if i == a else s if i == b else zero for i in range(d))
            if emit(t):
                yield t
    if isinstance(ctx, Zmod) and ctx.n ** d <= EXHAUSTIVE_LIMIT:
        values = ctx.elements()
    else:
        values = [ctx.from_int(k) for k in (0, 1, -1, 2, -2)]
    for t in itertools.product(values, repeat=d):
        if emit(t):
            yield t


def decompose_reflections(S: QuadSpace, M: Mat) -> list[Vector]:
    """Anisotropic v_1..v_k with tau_{v_1} ... tau_{v_k} = M and k <= dim.

    Works on a shrinking nondegenerate subspace U with sigma the identity on
    the orthogonal complement of U.  Each round looks for an anisotropic x in
    U (basis vectors first) that is either fixed by sigma or has sigma x - x
    anisotropic; the latter costs one reflection.  Both shrink U to
    x-perp.  If no such x exists, sigma is first multiplied by the
    reflection in an anisotropic vector of U and the search repeats.
    """
    ctx = S.ctx
    _require_field(ctx)
    if not is_orthogonal(S, M):
        raise SpinorError("matrix is not orthogonal for this space")
    D = _Dense(S)
    zero = ctx.zero()
    sigma = [list(r) for r in M.rows]
    basis = [[ctx.one() if i == k else zero for i in range(D.n)] for k in range(D.n)]
    out: list = []
    fallback_used = False
    while basis:
        if all(sigma[i][j] == (ctx.one() if i == j else zero) for i in range(D.n) for j in range(D.n)):
            break
        chosen = None
        first_aniso = None
        for coeffs in _coefficient_candidates(ctx, len(basis)):
            x = D.combo(coeffs, basis)
            qx = D.dot(x, x)
            if not ctx.is_unit(qx):
                continue
            if first_aniso is None:
                first_aniso = x
            sx = D.apply(sigma, x)
            if sx == x:
                chosen = (x, None)
                break
            v = [ctx.sub(a, b) for a, b in zip(sx, x)]
            if ctx.is_unit(D.dot(v, v)):
                chosen = (x, v)
                break
        if chosen is None:
            if first_aniso is None or fallback_used:
                raise SpinorError("no anisotropic vector found in the working subspace")
            out.append(first_aniso)
            sigma = D.reflect_left(first_aniso, sigma)
            fallback_used = True
            continue
        fallback_used = False
        x, v = chosen
        if v is not None:
            out.append(v)
            sigma = D.reflect_left(v, sigma)
        # restrict to x-perp inside U
        pairings = [D.dot(x, b) for b in basis]
        p = next(k for k, c in enumerate(pairings) if c != zero)
        inv = ctx.inverse(pairings[p])
        new_basis = []
        for k, b in enumerate(basis):
            if k == p:
                continue
            t = ctx.mul(pairings[k], inv)
            new_basis.append([ctx.sub(bi, ctx.mul(t, bp)) for bi, bp in zip(b, basis[p])])
        basis = new_basis
    return [Vector(ctx, v) for v in out]


def recompose(S: QuadSpace, vectors: Sequence[Vector]) -> Mat:
    M = S.identity()
    for v in vectors:
        M = M @ reflect(S, v)
    return M


# -- square classes ------------------------------------------------------------------


def _squarefree(k: int) -> int:
    sign = -1 if k < 0 else 1
    k = abs(k)
    out = 1
    d = 2
    while d * d <= k:
        e = 0
        while k % d == 0:
            k //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * k


@dataclass(frozen=True)
class SquareClass:
    """The coset u (R*)^2, stored by a canonical unit representative."""

    ctx: RingCtx
    rep: object

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return square_class(self.ctx, self.ctx.mul(self.rep, other.rep))

    @property
    def trivial(self) -> bool:
        return self.rep == self.ctx.one()

    def __str__(self):
        return self.ctx.format(self.rep)


_SQUARES: dict = {}


def _unit_squares(ctx: RingCtx) -> list:
    sq = _SQUARES.get(ctx)
    if sq is None:
        sq = sorted({ctx.mul(u, u) for u in ctx.units}, key=ctx.index)
        _SQUARES[ctx] = sq
    return sq


def square_class(ctx: RingCtx, u) -> SquareClass:
    u = ctx.elem(u).value
    if not ctx.is_unit(u):
        raise SpinorError(f"{ctx.format(u)} is not a unit")
    if isinstance(ctx, Rationals):
        return SquareClass(ctx, Fraction(_squarefree(u.numerator * u.denominator)))
    if ctx.finite:
        rep = min((ctx.mul(u, s) for s in _unit_squares(ctx)), key=ctx.index)
        return SquareClass(ctx, rep)
    raise UnsupportedError(f"square classes over {ctx.spec()} are not implemented")


def spinor_norm(S: QuadSpace, M: Mat) -> SquareClass:
    """Class of prod <v_i, v_i> over a reflection decomposition of M."""
    ctx = S.ctx
    acc = ctx.one()
    for v in decompose_reflections(S, M):
        acc = ctx.mul(acc, S.bilinear(v, v))
    return square_class(ctx, acc)


def eo_membership_oracle(S: QuadSpace, M: Mat) -> bool:
    """Whether M is elementary: det 1 and trivial spinor norm.

    Valid over fields for dim >= 3 with at least one hyperbolic plane.
    """
    _require_field(S.ctx)
    if S.dim < 3 or S.m < 1:
        raise UnsupportedError("oracle needs dim >= 3 and a hyperbolic plane")
    if M.det_value() != S.ctx.one():
        return False
    return spinor_norm(S, M).trivial
