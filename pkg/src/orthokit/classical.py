"""Classical elementary orthogonal generators.

Even case: oe_ij(z) on phi_tilde(2n), hyperbolic pairs (2k-1, 2k) in 1-based
indices, sigma the pair swap.  Odd case: F^1..F^5 on phi_tilde(2n+1) with the
diagonal 2 in coordinate 1 and pairs (2i, 2i+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .dser import QTOP, QTOPSTAR, GeneratorRef, Word, E, DSERError, word_eval, elementary_hom
from .matrix import Mat
from .quadmod import QuadSpace, phi_tilde
from .ring import RingCtx


class GeneratorIndexError(ValueError):
    pass


def sigma(i: int) -> int:
    """Pair swap on 1-based indices: 2k-1 <-> 2k."""
    return i + 1 if i % 2 else i - 1


def _add_entries(ctx: RingCtx, dim: int, entries: Iterable[tuple[int, int, object]]) -> Mat:
    """Id plus the given (1-based row, col, payload) contributions."""
    rows = [list(r) for r in Mat.identity(ctx, dim).rows]
    for i, j, v in entries:
        rows[i - 1][j - 1] = ctx.add(rows[i - 1][j - 1], v)
    return Mat(ctx, rows)


def oe(ctx: RingCtx, n: int, i: int, j: int, z) -> Mat:
    """oe_ij(z) = I_2n + e_ij(z) - e_{sigma(j) sigma(i)}(z)."""
    dim = 2 * n
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise GeneratorIndexError(f"oe indices must lie in 1..{dim}")
    if i == j:
        raise GeneratorIndexError("oe needs i != j")
    z = ctx.elem(z).value
    return _add_entries(ctx, dim, [(i, j, z), (sigma(j), sigma(i), ctx.neg(z))])


def f_gen(ctx: RingCtx, n: int, kind: int, i: int, z, j: int | None = None) -> Mat:
    """F_i^1, F_i^2 or F_ij^3..5 on phi_tilde(2n+1)."""
    if not 1 <= i <= n:
        raise GeneratorIndexError(f"index i={i} outside 1..{n}")
    if kind in (3, 4, 5):
        if j is None or not 1 <= j <= n or j == i:
            raise GeneratorIndexError(f"F{kind} needs 1 <= j <= {n}, j != i")
    elif kind not in (1, 2):
        raise GeneratorIndexError(f"unknown F kind {kind}")
    z = ctx.elem(z).value
    neg, mul = ctx.neg, ctx.mul
    two = ctx.from_int(2)
    a, b = 2 * i, 2 * i + 1  # x_i, f_i
    dim = 2 * n + 1
    if kind == 1:
        ent = [(1, b, z), (a, 1, neg(mul(two, z))), (a, b, neg(mul(z, z)))]
    elif kind == 2:
        ent = [(1, a, z), (b, 1, neg(mul(two, z))), (b, a, neg(mul(z, z)))]
    else:
        c, d = 2 * j, 2 * j + 1
        if kind == 3:
            ent = [(a, c, z), (d, b, neg(z))]
        elif kind == 4:
            ent = [(a, d, z), (c, b, neg(z))]
        else:
            ent = [(b, c, z), (d, a, neg(z))]
    return _add_entries(ctx, dim, ent)


def generator_on_space(S: QuadSpace, kind: str, i: int, j: int | None, z) -> Mat:
    """Matrix of a classical letter on its ambient phi_tilde space."""
    if kind == "OE":
        if S.n != 0:
            raise DSERError("oe generators live on phi_tilde(2n)")
        return oe(S.ctx, S.m, i, j, z)
    if S.n != 1 or S.gram.rows[0][0] != S.ctx.from_int(2):
        raise DSERError("F generators live on phi_tilde(2n+1)")
    return f_gen(S.ctx, S.m, int(kind[1]), i, z, j)


def commutator(a: Mat, b: Mat, a_inv: Mat, b_inv: Mat) -> Mat:
    """[a, b] = a b a^-1 b^-1."""
    return a @ b @ a_inv @ b_inv


@dataclass
class RelationReport:
    form: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "form": self.form,
            "checked": self.checked,
            "holds": self.holds,
            "failures": self.failures,
        }


# (target kind, left kind, right kind) for [F^left_i(z), F^right_j(1)]
STATED = ((3, 2, 2), (4, 1, 1), (5, 1, 2))
CORRECTED = ((3, 1, 2), (4, 1, 1), (5, 2, 2))


def check_f_relations(ctx: RingCtx, n: int, zs: Iterable, form: str = "stated") -> RelationReport:
    """Check F^k_ij(c z) = [F^l_i(z), F^r_j(1)] for all i != j and each z.

    ``form="stated"`` uses the textbook list with c = 1:
    F3 = [F2, F2], F4 = [F1, F1], F5 = [F1, F2].  ``form="corrected"`` uses
    the identities that actually hold for these matrices, with c = -2:
    F3 = [F1, F2], F4 = [F1, F1], F5 = [F2, F2].
    """
    if n < 2:
        raise GeneratorIndexError("F relations need n >= 2")
    if form == "stated":
        table, scale = STATED, ctx.one()
    elif form == "corrected":
        table, scale = CORRECTED, ctx.from_int(-2)
    else:
        raise ValueError(f"unknown relation form {form!r}")
    report = RelationReport(form)
    one = ctx.one()
    zs = [ctx.elem(z).value for z in zs]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for z in zs:
                mz = ctx.neg(z)
                for target, left, right in table:
                    a, a_inv = f_gen(ctx, n, left, i, z), f_gen(ctx, n, left, i, mz)
                    b, b_inv = f_gen(ctx, n, right, j, one), f_gen(ctx, n, right, j, ctx.neg(one))
                    lhs = f_gen(ctx, n, target, i, ctx.mul(scale, z), j)
                    report.checked += 1
                    if lhs != commutator(a, b, a_inv, b_inv):
                        report.failures.append(
                            {"family": f"F{target}", "i": i, "j": j, "z": ctx.format(z)}
                        )
    return report


def to_dser(S: QuadSpace, g: GeneratorRef) -> Word:
    """F_i^1(l) -> E with map -2l e_{i,1};  F_i^2(l) -> E* with the same map."""
    if g.kind not in ("F1", "F2"):
        raise DSERError(f"to_dser handles F1/F2 only, got {g.kind}")
    if S != phi_tilde(S.ctx, 2 * S.m + 1):
        raise DSERError("to_dser needs the odd standard space phi_tilde(2n+1)")
    ctx = S.ctx
    value = ctx.mul(ctx.from_int(-2), ctx.elem(g.z).value)
    direction = QTOP if g.kind == "F1" else QTOPSTAR
    w = Word.of(S, E(elementary_hom(S, direction, g.i, 1, value)))
    if word_eval(w) != f_gen(ctx, S.m, int(g.kind[1]), g.i, g.z):
        raise DSERError("dictionary round trip failed")
    return w
