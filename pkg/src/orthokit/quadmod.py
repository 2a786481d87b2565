"""Free quadratic spaces M = Q _|_ H(R)^m.

The Gram matrix stores the bilinear form <x, y> = q(x+y) - q(x) - q(y);
q itself is recovered as q(x) = <x, x> / 2.  Coordinates are laid out with
the Q-part first, then the hyperbolic pairs interleaved as
(x_1, f_1, x_2, f_2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .matrix import DimensionError, Mat, Vector
from .ring import ContextMismatch, IdealDesc, RingCtx, RingElem, split_top


class QuadSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class QuadSpace:
    ctx: RingCtx
    n: int
    m: int
    gram: Mat

    def __post_init__(self):
        g = self.gram
        if g.ctx != self.ctx:
            raise ContextMismatch("Gram matrix over a different ring")
        dim = self.n + 2 * self.m
        if g.shape != (dim, dim):
            raise QuadSpaceError(f"Gram is {g.shape}, layout needs {dim}x{dim}")
        if g != g.T:
            raise QuadSpaceError("Gram matrix is not symmetric")
        z, o = self.ctx.zero(), self.ctx.one()
        for k in range(self.m):
            a = self.n + 2 * k
            for i in range(dim):
                for j in (a, a + 1):
                    want = o if {i, j} == {a, a + 1} else z
                    if g.rows[i][j] != want:
                        raise QuadSpaceError(f"hyperbolic pair {k + 1} is not a standard [[0,1],[1,0]] block")
        if not self.ctx.is_unit(g.det_value()):
            raise QuadSpaceError("Gram determinant is not a unit (degenerate form)")

    @cached_property
    def gram_inverse(self) -> Mat:
        return self.gram.inverse()

    @property
    def dim(self) -> int:
        return self.n + 2 * self.m

    @property
    def q_gram(self) -> Mat:
        """Upper-left n x n block (the Q-part)."""
        return self.gram.submatrix(range(self.n), range(self.n))

    def x_index(self, k: int) -> int:
        """0-based coordinate of x_k (k is 0-based)."""
        return self.n + 2 * k

    def f_index(self, k: int) -> int:
        return self.n + 2 * k + 1

    def block_perm(self) -> list[int]:
        """perm[b] = stored coordinate of block coordinate b in (z | x | f) order."""
        return (
            list(range(self.n))
            + [self.x_index(k) for k in range(self.m)]
            + [self.f_index(k) for k in range(self.m)]
        )

    def identity(self) -> Mat:
        return Mat.identity(self.ctx, self.dim)

    def bilinear(self, x: Vector | Sequence, y: Vector | Sequence):
        """<x, y> as a payload."""
        xs = x.entries if isinstance(x, Vector) else x
        ys = y.entries if isinstance(y, Vector) else y
        ctx = self.ctx
        add, mul, z = ctx.add, ctx.mul, ctx.zero()
        gy = self.gram.apply(ys)
        acc = z
        for a, b in zip(xs, gy):
            if a != z and b != z:
                acc = add(acc, mul(a, b))
        return acc

    def change_ring(self, ctx: RingCtx, embed: Callable) -> "QuadSpace":
        return QuadSpace(ctx, self.n, self.m, self.gram.map(embed, ctx))

    def describe(self) -> dict:
        return {"ctx": self.ctx.spec(), "n": self.n, "m": self.m, "gram": self.gram.format()}


def hyperbolic(ctx: RingCtx, m: int) -> QuadSpace:
    if m < 0:
        raise QuadSpaceError("hyperbolic rank must be >= 0")
    if m == 0:
        raise QuadSpaceError("the zero space has no matrix; use orth_sum identity instead")
    z, o = ctx.zero(), ctx.one()
    h = Mat(ctx, [[z, o], [o, z]])
    return QuadSpace(ctx, 0, m, Mat.block_diag(*[h] * m))


def diagonal(ctx: RingCtx, entries: Sequence, m: int = 0) -> QuadSpace:
    """diag(entries) _|_ H(R)^m."""
    vals = [ctx.elem(e).value for e in entries]
    z, o = ctx.zero(), ctx.one()
    blocks = [Mat.diag(ctx, vals)] if vals else []
    blocks += [Mat(ctx, [[z, o], [o, z]])] * m
    return QuadSpace(ctx, len(vals), m, Mat.block_diag(*blocks))


def phi_tilde(ctx: RingCtx, n: int) -> QuadSpace:
    """The standard form: hyperbolic pairs, with a leading diagonal 2 when n is odd."""
    if n < 1:
        raise QuadSpaceError("phi_tilde needs n >= 1")
    return diagonal(ctx, [2] if n % 2 else [], n // 2)


def orth_sum(A: QuadSpace, B: QuadSpace | None) -> QuadSpace:
    """A _|_ B, normalised to Q-parts first, then all hyperbolic pairs."""
    if B is None:
        return A
    if A.ctx != B.ctx:
        raise ContextMismatch("orthogonal sum of spaces over different rings")
    ctx = A.ctx
    z, o = ctx.zero(), ctx.one()
    blocks = [s.q_gram for s in (A, B) if s.n]
    blocks += [Mat(ctx, [[z, o], [o, z]])] * (A.m + B.m)
    return QuadSpace(ctx, A.n + B.n, A.m + B.m, Mat.block_diag(*blocks))


def q_eval(S: QuadSpace, v: Vector) -> RingElem:
    if len(v) != S.dim:
        raise DimensionError(f"vector of length {len(v)} in a space of dim {S.dim}")
    ctx = S.ctx
    return RingElem(ctx, ctx.mul(ctx.half, S.bilinear(v, v)))


def is_orthogonal(S: QuadSpace, M: Mat) -> bool:
    if M.shape != (S.dim, S.dim):
        raise DimensionError(f"matrix {M.shape} on a space of dim {S.dim}")
    if M.ctx != S.ctx:
        raise ContextMismatch("matrix and space over different rings")
    return M.T @ S.gram @ M == S.gram


def is_relative(S: QuadSpace, M: Mat, I: IdealDesc) -> bool:
    """Whether every entry of M - Id lies in I."""
    if M.shape != (S.dim, S.dim):
        raise DimensionError(f"matrix {M.shape} on a space of dim {S.dim}")
    if I.ctx != M.ctx:
        raise ContextMismatch("ideal and matrix over different rings")
    D = M - S.identity()
    return all(I.contains(a) for row in D.rows for a in row)


def orthogonal_inverse(S: QuadSpace, M: Mat) -> Mat:
    """M^-1 = B^-1 M^T B for M orthogonal w.r.t. the Gram B."""
    return S.gram_inverse @ M.T @ S.gram


def pad_identity(M: Mat, k: int) -> Mat:
    """M _|_ I_k."""
    return Mat.block_diag(M, Mat.identity(M.ctx, k))


def parse_space(ctx: RingCtx, spec: str) -> QuadSpace:
    """``phi:N``, ``hyp:M``, ``diag:a,b,...`` joined with ``+``."""
    result = None
    for part in split_top(spec.strip(), "+"):
        kind, _, arg = part.strip().partition(":")
        if kind == "phi":
            piece = phi_tilde(ctx, int(arg))
        elif kind == "hyp":
            piece = hyperbolic(ctx, int(arg))
        elif kind == "diag":
            piece = diagonal(ctx, [ctx.parse(a) for a in split_top(arg, ",")])
        else:
            raise QuadSpaceError(f"unknown space component {part!r}")
        result = piece if result is None else orth_sum(result, piece)
    if result is None:
        raise QuadSpaceError("empty space spec")
    return result
