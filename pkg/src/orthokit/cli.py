"""orthokit command line.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .classical import check_f_relations, f_gen, oe, to_dser, sigma
from .dser import (
    DSERError,
    Fgen,
    HomMap,
    QTOP,
    QTOPSTAR,
    Word,
    dser_matrix,
    elementary_hom,
    lift_elementary,
    lift_orthogonal,
    project_matrix,
    relative_normal_form,
    word_eval,
    word_from_json,
    word_to_json,
)
from .grouplab import (
    DEFAULT_CAP,
    NotNormal,
    bfs_closure,
    derived_series,
    lower_central_series,
    quotient_structure,
)
from .matrix import DimensionError, Mat, parse_matrix
from .quadmod import QuadSpace, QuadSpaceError, is_orthogonal, is_relative, parse_space
from .ring import (
    CapExceeded,
    Excision,
    RingError,
    UnsupportedError,
    enumerate_ideals,
    ideal,
    is_maximal_ideal,
    parse_ring,
    split_components,
    split_top,
)
from .spinor import SpinorError, decompose_reflections, eo_membership_oracle, spinor_norm

SCHEMA = "orthokit-report/1"
IDEAL_CAP = 4096


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


# -- helpers ---------------------------------------------------------------------------------

def _ring(args):
    return parse_ring(args.ring)


def _space(args, ctx) -> QuadSpace:
    if not args.space:
        raise UsageError("--space is required")
    return parse_space(ctx, args.space)


def _ideal(args, ctx):
    if not args.ideal:
        raise UsageError("--ideal is required")
    body = args.ideal.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    return ideal(ctx, [ctx.parse(g) for g in split_top(body, ",") if g.strip()])


def _read_text(value: str) -> str:
    """A file path, ``-`` for stdin, or the literal text itself."""
    if value == "-":
        return sys.stdin.read()
    p = Path(value)
    if p.exists():
        return p.read_text()
    return value


def _matrix(args, ctx) -> Mat:
    if not args.matrix:
        raise UsageError("--matrix is required")
    return parse_matrix(ctx, _read_text(args.matrix))


def _word(args, S: QuadSpace) -> Word:
    if not args.word:
        raise UsageError("--word is required")
    try:
        data = json.loads(_read_text(args.word))
    except json.JSONDecodeError as exc:
        raise UsageError(f"word is not valid JSON: {exc}") from exc
    return word_from_json(S, data)


def _report(command: str, **body) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


def _emit(args, report: dict, text: str | None = None):
    if args.json or text is None:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(text)


def _finish(args, report: dict, ok: bool, text: str | None = None):
    report["ok"] = ok
    _emit(args, report, text)
    if not ok:
        raise VerificationFailed(report)


# -- generator sets for enumeration -------------------------------------------------------

def generator_set(name: str, S: QuadSpace) -> list[Mat]:
    ctx = S.ctx
    one = ctx.one()
    if name == "none":
        return []
    if name in ("f-all", "f-full"):
        if S.n != 1:
            raise UsageError("F generators need an odd phi space")
        kinds = (1, 2) if name == "f-all" else (1, 2, 3, 4, 5)
        out = []
        for k in kinds:
            for i in range(1, S.m + 1):
                js = [None] if k <= 2 else [j for j in range(1, S.m + 1) if j != i]
                for j in js:
                    out.append(f_gen(ctx, S.m, k, i, one, j))
        return out
    if name == "oe-all":
        if S.n != 0:
            raise UsageError("oe generators need an even phi space")
        d = 2 * S.m
        return [oe(ctx, S.m, i, j, one) for i in range(1, d + 1) for j in range(1, d + 1)
                if i != j and j != sigma(i)]
    if name == "dser-all":
        out = []
        for direction in (QTOP, QTOPSTAR):
            for k in range(1, S.m + 1):
                for l in range(1, S.n + 1):
                    out.append(dser_matrix(S, elementary_hom(S, direction, k, l, one)))
        return out
    raise UsageError(f"unknown generator set {name!r}")


def _group(args, S: QuadSpace, gens_name: str, extra: list[str]):
    gens = generator_set(gens_name, S)
    extras = [parse_matrix(S.ctx, _read_text(e)) for e in extra or []]
    for M in gens + extras:
        if M.shape != (S.dim, S.dim) or not is_orthogonal(S, M):
            raise UsageError("every generator must be orthogonal for the space")
    return gens, extras


# -- commands ------------------------------------------------------------------------------

def cmd_gen(args):
    ctx = _ring(args)
    kind = args.kind.lower()
    z = ctx.parse(args.z)
    if kind == "oe":
        if args.j is None:
            raise UsageError("oe needs --j")
        M = oe(ctx, args.n, args.i, args.j, z)
    elif kind in ("f1", "f2", "f3", "f4", "f5"):
        M = f_gen(ctx, args.n, int(kind[1]), args.i, z, args.j)
    elif kind in ("e", "estar"):
        S = _space(args, ctx)
        if not args.hom:
            raise UsageError("E generators need --hom")
        M = dser_matrix(S, HomMap(QTOP if kind == "e" else QTOPSTAR, parse_matrix(ctx, args.hom)))
    else:
        raise UsageError(f"unknown kind {args.kind!r}")
    _emit(args, _report("gen", ring=ctx.spec(), kind=kind, matrix=M.format()), M.pretty())


def cmd_eval(args):
    ctx = _ring(args)
    S = _space(args, ctx)
    w = _word(args, S)
    M = word_eval(w)
    report = _report(
        "eval",
        space=S.describe(),
        letters=len(w),
        matrix=M.format(),
        orthogonal=is_orthogonal(S, M),
        det=ctx.format(M.det_value()),
    )
    _emit(args, report, M.pretty())


def cmd_verify(args):
    from .suites import SUITES, run_suite

    ctx = _ring(args)
    names = SUITES if args.suite == "all" else [args.suite]
    I = _ideal(args, ctx) if args.ideal else None
    results = []
    for name in names:
        if name == "lift" and I is None:
            if args.suite == "lift":
                raise UsageError("the lift suite needs --ideal")
            continue
        if name == "spinor" and not ctx.is_field:
            if args.suite == "spinor":
                raise UsageError("the spinor suite needs a field")
            continue
        results.append(run_suite(name, ctx, args.seed, I).to_dict())
    report = _report("verify", ring=ctx.spec(), seed=args.seed, results=results,
                     cases=sum(r["cases"] for r in results))
    text = "\n".join(f"{r['suite']}: {r['cases']} checks, {'ok' if r['ok'] else 'FAILED'}" for r in results)
    _finish(args, report, all(r["ok"] for r in results), text)


def cmd_relations(args):
    ctx = _ring(args)
    if args.z:
        zs = [ctx.parse(z) for z in split_top(args.z, ",")]
    elif ctx.finite:
        zs = ctx.elements()
    else:
        rng = random.Random(args.seed)
        zs = [ctx.random(rng) for _ in range(5)]
    rep = check_f_relations(ctx, args.n, zs, args.form)
    report = _report("relations", ring=ctx.spec(), n=args.n, **rep.to_dict())
    report["failures"] = report["failures"][:50]
    _finish(args, report, rep.holds, f"{rep.form} relations: {rep.checked} checks, {len(rep.failures)} failures")


def cmd_dictionary(args):
    ctx = _ring(args)
    S = parse_space(ctx, f"phi:{2 * args.n + 1}")
    if ctx.finite:
        lams = ctx.elements()
    else:
        rng = random.Random(args.seed)
        lams = [ctx.random(rng) for _ in range(10)]
    checked, failures = 0, []
    for kind in (1, 2):
        for i in range(1, args.n + 1):
            for lam in lams:
                checked += 1
                try:
                    to_dser(S, Fgen(kind, i, lam))
                except DSERError:
                    failures.append({"kind": f"F{kind}", "i": i, "lambda": ctx.format(lam)})
    report = _report("dictionary", ring=ctx.spec(), n=args.n, checked=checked, failures=failures)
    _finish(args, report, not failures, f"dictionary: {checked} checks, {len(failures)} failures")


def cmd_spinor(args):
    ctx = _ring(args)
    S = _space(args, ctx)
    M = _matrix(args, ctx)
    vs = decompose_reflections(S, M)
    report = _report(
        "spinor",
        det=ctx.format(M.det_value()),
        reflections=[v.format() for v in vs],
        **{"class": str(spinor_norm(S, M))},
    )
    try:
        report["elementary"] = eo_membership_oracle(S, M)
    except UnsupportedError as exc:
        report["elementary"] = None
        report["oracle"] = str(exc)
    _emit(args, report)


def cmd_lift(args):
    ctx = _ring(args)
    S = _space(args, ctx)
    I = _ideal(args, ctx)
    if args.word:
        w = _word(args, S)
        lifted = lift_elementary(w, I)
        L = word_eval(lifted)
        M = word_eval(w)
        S2 = lifted.space
        extra = {"word": word_to_json(lifted)}
    else:
        M = _matrix(args, ctx)
        L = lift_orthogonal(S, M, I)
        S2 = S.change_ring(L.ctx, L.ctx.embed)
        extra = {}
    exc = L.ctx
    report = _report(
        "lift",
        ring=exc.spec(),
        matrix=L.format(),
        orthogonal=is_orthogonal(S2, L),
        relative=is_relative(S2, L, exc.inner_ideal()),
        projects_back=project_matrix(L) == M,
        **extra,
    )
    _finish(args, report, report["orthogonal"] and report["relative"] and report["projects_back"])


def cmd_rewrite(args):
    ctx = _ring(args)
    if not isinstance(ctx, Excision):
        raise UsageError("rewrite works over an excision ring exc:BASE:[gens]")
    S = _space(args, ctx)
    w = _word(args, S)
    nf = relative_normal_form(w, lambda a: ctx.embed(a[0]), ctx.inner_ideal())
    equal = word_eval(nf) == word_eval(w)
    report = _report("rewrite", ring=ctx.spec(), letters=len(nf), equal=equal, word=word_to_json(nf))
    _finish(args, report, equal)


def cmd_enumerate(args):
    ctx = _ring(args)
    S = _space(args, ctx)
    gens, extras = _group(args, S, args.gens, args.extra)
    t0 = time.perf_counter()
    G = bfs_closure(gens + extras, args.cap or DEFAULT_CAP, ctx=ctx, dim=S.dim)
    elapsed = time.perf_counter() - t0
    rng = random.Random(args.seed)
    sample = [G.element(k).format() for k in sorted(G.sample(rng, min(3, len(G))))]
    report = _report("enumerate", ring=ctx.spec(), space=args.space, gens=args.gens,
                     extra=len(extras), order=len(G), sample=sample)
    if args.timings:
        report["timings"] = {"bfs_seconds": round(elapsed, 4)}
    _emit(args, report, f"order {len(G)}")


def cmd_series(args):
    ctx = _ring(args)
    S = _space(args, ctx)
    gens, extras = _group(args, S, args.gens, args.extra)
    G = bfs_closure(gens + extras, args.cap or DEFAULT_CAP, ctx=ctx, dim=S.dim)
    report = _report("series", ring=ctx.spec(), space=args.space, order=len(G))
    if args.quotient:
        N = bfs_closure(gens, args.cap or DEFAULT_CAP, ctx=ctx, dim=S.dim)
        try:
            q = quotient_structure(G, N)
        except NotNormal as exc:
            report["normal"] = False
            report["witness"] = {"g": exc.g.format(), "n": exc.n.format()}
            _finish(args, report, False)
            return
        report["subgroup_order"] = len(N)
        report["quotient"] = q.to_dict()
    else:
        ds = derived_series(G, args.cap or DEFAULT_CAP)
        ls = lower_central_series(G, args.cap or DEFAULT_CAP)
        report["derived"] = {"orders": ds.orders, "length": ds.length}
        report["lower_central"] = {"orders": ls.orders, "class": ls.length}
    _emit(args, report)


def cmd_ideals(args):
    ctx = _ring(args)
    cap = args.cap or IDEAL_CAP
    ideals = enumerate_ideals(ctx, cap)
    rows = []
    for I in ideals:
        row = {"size": len(I.elements), "elements": I.describe(), "maximal": is_maximal_ideal(ctx, I, ideals)}
        if isinstance(ctx, Excision):
            J, I1, split = split_components(I)
            row["split"] = split
            row["J_size"], row["I1_size"] = len(J), len(I1)
        rows.append(row)
    report = _report("ideals", ring=ctx.spec(), count=len(ideals), ideals=rows)
    if isinstance(ctx, Excision):
        B = ctx.base
        base_ideals = enumerate_ideals(B, cap)
        checks = []
        for m in base_ideals:
            if not is_maximal_ideal(B, m, base_ideals):
                continue
            elems = frozenset((r, i) for r in m.elements for i in ctx.ideal.elements)
            target = next(K for K in ideals if K.elements == elems)
            checks.append({"m": m.describe(), "lifted_maximal": is_maximal_ideal(ctx, target, ideals)})
        report["maximal_lifts"] = checks
        report["non_split"] = sum(not r["split"] for r in rows)
        _finish(args, report, all(c["lifted_maximal"] for c in checks))
        return
    _emit(args, report)


# -- parser ----------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="zmod:9", help="zmod:N | Q | poly:BASE:VAR | exc:BASE:[gens]")
    common.add_argument("--space", help="phi:N | hyp:M | diag:a,b joined with +")
    common.add_argument("--ideal", help="ideal generators, e.g. [3]")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--cap", type=int, help="element cap for enumeration")

    p = _Parser(prog="orthokit", description="Exact orthogonal-group computations over commutative rings.")
    p.add_argument("--version", action="version", version=f"orthokit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="print a generator matrix")
    g.add_argument("--kind", required=True, help="oe | f1..f5 | e | estar")
    g.add_argument("--n", type=int, default=1, help="number of hyperbolic pairs")
    g.add_argument("--i", type=int, default=1)
    g.add_argument("--j", type=int)
    g.add_argument("--z", default="1")
    g.add_argument("--hom", help="m x n map for e / estar")
    g.set_defaults(fn=cmd_gen)

    e = sub.add_parser("eval", parents=[common], help="evaluate a word")
    e.add_argument("--word", help="JSON word (path, - or literal)")
    e.set_defaults(fn=cmd_eval)

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("--suite", default="all",
                   choices=["all", "ring", "quadmod", "dser", "classical", "spinor", "lift"])
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("relations", parents=[common], help="check the F commutator relations")
    r.add_argument("--n", type=int, default=2)
    r.add_argument("--z", help="comma-separated parameters (default: all ring elements)")
    r.add_argument("--form", choices=["stated", "corrected"], default="stated")
    r.set_defaults(fn=cmd_relations)

    d = sub.add_parser("dictionary", parents=[common], help="check F1/F2 against E/E*")
    d.add_argument("--n", type=int, default=2)
    d.set_defaults(fn=cmd_dictionary)

    s = sub.add_parser("spinor", parents=[common], help="reflections, spinor norm, membership")
    s.add_argument("--matrix", help="matrix text or file")
    s.set_defaults(fn=cmd_spinor)

    lf = sub.add_parser("lift", parents=[common], help="lift to the excision ring")
    lf.add_argument("--word")
    lf.add_argument("--matrix")
    lf.set_defaults(fn=cmd_lift)

    rw = sub.add_parser("rewrite", parents=[common], help="relative normal form over R (+) I")
    rw.add_argument("--word")
    rw.set_defaults(fn=cmd_rewrite)

    for name, fn, helptext in (("enumerate", cmd_enumerate, "enumerate a generated group"),
                               ("series", cmd_series, "derived / lower central series")):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--gens", default="f-all", help="f-all | f-full | oe-all | dser-all | none")
        q.add_argument("--extra", action="append", help="additional generator matrix (repeatable)")
        if name == "enumerate":
            q.add_argument("--timings", action="store_true", help="include wall-clock timings")
        else:
            q.add_argument("--quotient", action="store_true",
                           help="report <gens, extra> / <gens> instead of the series")
        q.set_defaults(fn=fn)

    i = sub.add_parser("ideals", parents=[common], help="enumerate ideals of a finite ring")
    i.set_defaults(fn=cmd_ideals)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except VerificationFailed:
        return 1
    except CapExceeded as exc:
        print(json.dumps(_report(args.command, error=str(exc), count=exc.count), sort_keys=True, indent=2))
        return 1
    except (UsageError, RingError, QuadSpaceError, DimensionError, DSERError, SpinorError,
            UnsupportedError, ValueError, OSError) as exc:
        print(f"orthokit: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"orthokit: internal error: {exc!r}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
