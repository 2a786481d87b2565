"""Elementary transformations E_alpha / E*_beta on M = Q _|_ H(R)^m.

For alpha: Q -> P (an m x n matrix) and alpha* = G_Q^-1 alpha^T,

    E_alpha (z, x, f) = (z - alpha* f,  x + alpha z - 1/2 alpha alpha* f,  f)
    E*_beta (z, x, f) = (z - beta* x,   x,  beta z - 1/2 beta beta* x + f)

The formulas are assembled in block coordinates (z | x | f) and then
re-interleaved into the stored (x_1, f_1, x_2, f_2, ...) layout.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Sequence

from .matrix import DimensionError, Mat, Vector, parse_matrix, parse_vector
from .quadmod import QuadSpace, is_relative
from .ring import ContextMismatch, Excision, IdealDesc, RingCtx, RingError

QTOP = "QtoP"
QTOPSTAR = "QtoPstar"

DSER_KINDS = ("E", "Estar")
CLASSICAL_KINDS = ("OE", "F1", "F2", "F3", "F4", "F5")
KINDS = DSER_KINDS + CLASSICAL_KINDS + ("Reflection", "Conjugate")


class DSERError(ValueError):
    pass


@dataclass(frozen=True)
class HomMap:
    """alpha: Q -> P (QtoP) or beta: Q -> P* (QtoPstar) as an m x n matrix."""

    direction: str
    matrix: Mat

    def __post_init__(self):
        if self.direction not in (QTOP, QTOPSTAR):
            raise DSERError(f"unknown direction {self.direction!r}")

    @property
    def ctx(self) -> RingCtx:
        return self.matrix.ctx

    @property
    def kind(self) -> str:
        return "E" if self.direction == QTOP else "Estar"

    def __add__(self, other: "HomMap") -> "HomMap":
        if other.direction != self.direction:
            raise DSERError("cannot add maps of different directions")
        return HomMap(self.direction, self.matrix + other.matrix)

    def __sub__(self, other: "HomMap") -> "HomMap":
        return self + (-other)

    def __neg__(self) -> "HomMap":
        return HomMap(self.direction, -self.matrix)

    def scale(self, c) -> "HomMap":
        return HomMap(self.direction, self.matrix.scale(c))

    def half(self) -> "HomMap":
        return self.scale(self.ctx.half)

    def map(self, fn: Callable, ctx: RingCtx | None = None) -> "HomMap":
        return HomMap(self.direction, self.matrix.map(fn, ctx))

    def entries(self) -> list:
        return [a for row in self.matrix.rows for a in row]

    def is_zero(self) -> bool:
        z = self.ctx.zero()
        return all(a == z for a in self.entries())


def hom(S: QuadSpace, direction: str, rows) -> HomMap:
    """HomMap on S from ints / strings; ``rows`` is m x n."""
    return HomMap(direction, Mat.from_values(S.ctx, rows))


def elementary_hom(S: QuadSpace, direction: str, k: int, l: int, value) -> HomMap:
    """value * e_{k,l} as a map Q -> P or P* (1-based hyperbolic index k, Q index l)."""
    z = S.ctx.zero()
    rows = [[z] * S.n for _ in range(S.m)]
    rows[k - 1][l - 1] = S.ctx.elem(value).value
    return HomMap(direction, Mat(S.ctx, rows))


def _check_hom(S: QuadSpace, a: HomMap):
    if a.ctx != S.ctx:
        raise ContextMismatch("map and space over different rings")
    if S.n < 1 or S.m < 1:
        raise DSERError(f"DSER transformations need rank Q >= 1 and m >= 1 (got n={S.n}, m={S.m})")
    if a.matrix.shape != (S.m, S.n):
        raise DimensionError(f"map is {a.matrix.shape}, space needs {(S.m, S.n)}")


def _q_gram_inverse(S: QuadSpace) -> Mat:
    cache = S.__dict__.get("_q_gram_inverse")
    if cache is None:
        try:
            cache = S.q_gram.inverse()
        except RingError as exc:
            raise DSERError("the Q-part Gram matrix is not invertible") from exc
        S.__dict__["_q_gram_inverse"] = cache
    return cache


def alpha_star(S: QuadSpace, a: HomMap) -> Mat:
    """G_Q^-1 a^T (n x m); the same formula serves both directions."""
    _check_hom(S, a)
    return _q_gram_inverse(S) @ a.matrix.T


def _dser_matrix(S: QuadSpace, a: HomMap, star: bool) -> Mat:
    _check_hom(S, a)
    ctx = S.ctx
    n, m = S.n, S.m
    A = a.matrix
    As = alpha_star(S, a)
    AAs = (A @ As).scale(ctx.half)
    z, o, neg = ctx.zero(), ctx.one(), ctx.neg
    N = n + 2 * m
    B = [[z] * N for _ in range(N)]
    for i in range(N):
        B[i][i] = o
    X, F = n, n + m  # block offsets of x and f
    for i in range(n):
        for k in range(m):
            B[i][(X if star else F) + k] = neg(As.rows[i][k])
    for k in range(m):
        row = F + k if star else X + k
        for j in range(n):
            B[row][j] = A.rows[k][j]
        for l in range(m):
            B[row][(X if star else F) + l] = neg(AAs.rows[k][l])
    return Mat(ctx, B).permute(S.block_perm())


def e_alpha(S: QuadSpace, a: HomMap) -> Mat:
    if a.direction != QTOP:
        raise DSERError("e_alpha needs a map Q -> P")
    return _dser_matrix(S, a, star=False)


def e_beta_star(S: QuadSpace, b: HomMap) -> Mat:
    if b.direction != QTOPSTAR:
        raise DSERError("e_beta_star needs a map Q -> P*")
    return _dser_matrix(S, b, star=True)


def dser_matrix(S: QuadSpace, a: HomMap) -> Mat:
    return _dser_matrix(S, a, star=a.direction == QTOPSTAR)


# -- symbolic generators and words -------------------------------------------------------

@dataclass(frozen=True)
class GeneratorRef:
    kind: str
    hom: HomMap | None = None
    i: int | None = None
    j: int | None = None
    z: Any = None
    vector: Vector | None = None
    conj: "Word | None" = None
    inner: "GeneratorRef | None" = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DSERError(f"unknown generator kind {self.kind!r}")
        if self.kind in DSER_KINDS:
            if self.hom is None or self.hom.kind != self.kind:
                raise DSERError(f"{self.kind} needs a matching HomMap")
        elif self.kind == "OE":
            if self.i is None or self.j is None or self.i == self.j:
                raise DSERError("OE needs indices i != j")
        elif self.kind in ("F1", "F2"):
            if self.i is None:
                raise DSERError(f"{self.kind} needs an index i")
        elif self.kind in ("F3", "F4", "F5"):
            if self.i is None or self.j is None or self.i == self.j:
                raise DSERError(f"{self.kind} needs indices i != j")
        elif self.kind == "Reflection":
            if self.vector is None:
                raise DSERError("Reflection needs a vector")
        elif self.conj is None or self.inner is None:
            raise DSERError("Conjugate needs a conjugating word and an inner generator")

    def params(self) -> list:
        """Ring payloads carried by this letter (for relative checks)."""
        if self.kind in DSER_KINDS:
            return self.hom.entries()
        if self.kind in CLASSICAL_KINDS:
            return [self.z]
        if self.kind == "Reflection":
            return list(self.vector.entries)
        return self.inner.params()

    def map_params(self, fn: Callable, ctx: RingCtx, space: "QuadSpace") -> "GeneratorRef":
        """Same generator with every ring parameter mapped by ``fn``."""
        if self.kind in DSER_KINDS:
            return replace(self, hom=self.hom.map(fn, ctx))
        if self.kind in CLASSICAL_KINDS:
            return replace(self, z=fn(self.z))
        if self.kind == "Reflection":
            return replace(self, vector=Vector(ctx, [fn(a) for a in self.vector.entries]))
        return replace(
            self,
            conj=self.conj.map_params(fn, ctx, space),
            inner=self.inner.map_params(fn, ctx, space),
        )


def E(a: HomMap) -> GeneratorRef:
    return GeneratorRef(a.kind, hom=a)


def OE(i: int, j: int, z) -> GeneratorRef:
    return GeneratorRef("OE", i=i, j=j, z=z)


def Fgen(k: int, i: int, z, j: int | None = None) -> GeneratorRef:
    return GeneratorRef(f"F{k}", i=i, j=j, z=z)


def Conjugate(gamma: "Word", inner: GeneratorRef) -> GeneratorRef:
    return GeneratorRef("Conjugate", conj=gamma, inner=inner)


@dataclass(frozen=True)
class Word:
    space: QuadSpace
    letters: tuple = ()

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1):
                raise DSERError(f"exponent must be +1 or -1, got {e}")
            if g.kind == "Conjugate" and g.conj.space != self.space:
                raise DSERError("conjugating word lives on a different space")

    @classmethod
    def of(cls, space: QuadSpace, *gens: GeneratorRef) -> "Word":
        return cls(space, tuple((g, 1) for g in gens))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if other.space != self.space:
            raise DSERError("words on different spaces")
        return Word(self.space, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.space, tuple((g, -e) for g, e in reversed(self.letters)))

    def flatten(self) -> "Word":
        """Expand Conjugate letters into gamma . inner^(+-1) . gamma^-1."""
        out = []
        for g, e in self.letters:
            if g.kind == "Conjugate":
                gamma = g.conj.flatten()
                inner = Word(self.space, ((g.inner, e),)).flatten()
                out.extend(gamma.letters + inner.letters + gamma.inverse().letters)
            else:
                out.append((g, e))
        return Word(self.space, tuple(out))

    def map_params(self, fn: Callable, ctx: RingCtx, space: QuadSpace | None = None) -> "Word":
        space = space or self.space
        return Word(space, tuple((g.map_params(fn, ctx, space), e) for g, e in self.letters))


def letter_matrix(S: QuadSpace, g: GeneratorRef, exp: int = 1) -> Mat:
    """Matrix of g^exp; inverses use the closed forms (E_{-alpha}, F(-z), ...)."""
    k = g.kind
    ctx = S.ctx
    if k in DSER_KINDS:
        return dser_matrix(S, g.hom if exp == 1 else -g.hom)
    if k in CLASSICAL_KINDS:
        from . import classical

        z = g.z if exp == 1 else ctx.neg(g.z)
        return classical.generator_on_space(S, k, g.i, g.j, z)
    if k == "Reflection":
        from .spinor import reflect

        return reflect(S, g.vector)
    gamma = word_eval(g.conj)
    return gamma @ letter_matrix(S, g.inner, exp) @ word_eval(g.conj.inverse())


def word_eval(w: Word) -> Mat:
    S = w.space
    M = S.identity()
    for g, e in w.letters:
        M = M @ letter_matrix(S, g, e)
    return M


def split_generator(S: QuadSpace, a1: HomMap, a2: HomMap) -> tuple[Word, Word]:
    """E_{a1+a2} and E_{a1/2} E_{a2} E_{a1/2} (or the E* analogue)."""
    if a1.direction != a2.direction:
        raise DSERError("split_generator needs maps of the same direction")
    h = a1.half()
    return Word.of(S, E(a1 + a2)), Word.of(S, E(h), E(a2), E(h))


def relative_generator(gamma: Word, inner: GeneratorRef, I: IdealDesc) -> Word:
    """The one-letter word gamma . inner . gamma^-1, with inner's parameters in I."""
    if inner.kind in ("Conjugate", "Reflection"):
        raise DSERError("inner generator must be elementary")
    if not all(I.contains(a) for a in inner.params()):
        raise DSERError("inner generator has parameters outside the ideal")
    return Word.of(gamma.space, Conjugate(gamma, inner))


def lift_elementary(g: Word, I: IdealDesc) -> Word:
    """Lift a product of relative generators over R to R (+) I.

    Conjugator parameters x become (x, 0); inner parameters become (0, x).
    A bare elementary letter is treated as an unconjugated inner generator.
    """
    S = g.space
    if I.ctx != S.ctx:
        raise ContextMismatch("ideal and word over different rings")
    exc = Excision(S.ctx, I)
    S2 = S.change_ring(exc, exc.embed)
    letters = []
    for gen, e in g.letters:
        if gen.kind == "Conjugate":
            inner = gen.inner
            gamma = gen.conj.map_params(exc.embed, exc, S2)
        elif gen.kind in DSER_KINDS + CLASSICAL_KINDS:
            inner, gamma = gen, None
        else:
            raise DSERError(f"{gen.kind} letter is not in relative-generator form")
        if inner.kind not in DSER_KINDS + CLASSICAL_KINDS:
            raise DSERError("inner generator must be elementary")
        if not all(I.contains(a) for a in inner.params()):
            raise DSERError("inner generator has parameters outside the ideal")
        lifted = inner.map_params(exc.embed_ideal, exc, S2)
        letters.append((lifted if gamma is None else Conjugate(gamma, lifted), e))
    return Word(S2, tuple(letters))


def lift_orthogonal(S: QuadSpace, eps: Mat, I: IdealDesc) -> Mat:
    """eps' = (Id, eps - Id) over R (+) I."""
    if not is_relative(S, eps, I):
        raise DSERError("matrix is not congruent to the identity modulo the ideal")
    exc = Excision(S.ctx, I)
    ident = S.identity()
    B = S.ctx
    return Mat(
        exc,
        [
            [(a, B.sub(b, a)) for a, b in zip(ra, rb)]
            for ra, rb in zip(ident.rows, eps.rows)
        ],
    )


def project_matrix(M: Mat) -> Mat:
    """Entrywise f(r, i) = r + i."""
    exc = M.ctx
    if not isinstance(exc, Excision):
        raise RingError("projection needs a matrix over an excision ring")
    return M.map(exc.project, exc.base)


def _normalize_letter(g: GeneratorRef, e: int) -> GeneratorRef:
    if g.kind not in DSER_KINDS:
        raise DSERError(f"normal form needs E/E* letters, got {g.kind}")
    return g if e == 1 else E(-g.hom)


def relative_normal_form(w: Word, retraction: Callable, J: IdealDesc) -> Word:
    """Rewrite w as prod_k gamma_k E'(tau_k) gamma_k^-1 [. gamma_{m+1}].

    Each letter's map alpha_k is split entrywise as rho_k + tau_k with
    rho_k = retraction(alpha_k) and tau_k in J.  The conjugators are built
    from the half pieces E'(rho/2); the trailing gamma_{m+1} is kept only if
    it does not evaluate to the identity.
    """
    S = w.space
    if J.ctx != S.ctx:
        raise ContextMismatch("ideal and word over different rings")
    gens = [_normalize_letter(g, e) for g, e in w.letters]
    rhos, taus = [], []
    for g in gens:
        rho = g.hom.map(retraction)
        tau = g.hom - rho
        if not all(J.contains(a) for a in tau.entries()):
            raise DSERError("retraction does not split this letter modulo the ideal")
        rhos.append(rho)
        taus.append(tau)

    def half_piece(rho: HomMap) -> list:
        return [] if rho.is_zero() else [(E(rho.half()), 1)]

    out = []
    gamma: list = []
    for k, (rho, tau) in enumerate(zip(rhos, taus)):
        if k > 0:
            gamma += half_piece(rhos[k - 1])
        gamma += half_piece(rho)
        gw = Word(S, tuple(gamma))
        out.append((Conjugate(gw, E(tau)), 1))
    tail = gamma + (half_piece(rhos[-1]) if rhos else [])
    tail_word = Word(S, tuple(tail))
    letters = tuple(out)
    if tail and not word_eval(tail_word).is_identity():
        letters += tail_word.letters
    return Word(S, letters)


# -- JSON ---------------------------------------------------------------------------------

def generator_to_json(g: GeneratorRef, ctx: RingCtx) -> dict:
    d: dict = {"kind": g.kind}
    if g.kind in DSER_KINDS:
        d["hom"] = g.hom.matrix.format()
    elif g.kind in CLASSICAL_KINDS:
        d["i"] = g.i
        if g.j is not None:
            d["j"] = g.j
        d["z"] = ctx.format(g.z)
    elif g.kind == "Reflection":
        d["vec"] = g.vector.format()
    else:
        d["conj"] = word_to_json(g.conj)
        d["inner"] = generator_to_json(g.inner, ctx)
    return d


def word_to_json(w: Word) -> list:
    out = []
    for g, e in w.letters:
        d = generator_to_json(g, w.space.ctx)
        d["exp"] = e
        out.append(d)
    return out


def generator_from_json(S: QuadSpace, d: dict) -> GeneratorRef:
    ctx = S.ctx
    kind = d.get("kind")
    if kind in DSER_KINDS:
        M = parse_matrix(ctx, d["hom"])
        return GeneratorRef(kind, hom=HomMap(QTOP if kind == "E" else QTOPSTAR, M))
    if kind in CLASSICAL_KINDS:
        return GeneratorRef(kind, i=d["i"], j=d.get("j"), z=ctx.parse(str(d.get("z", "1"))))
    if kind == "Reflection":
        return GeneratorRef(kind, vector=parse_vector(ctx, d["vec"]))
    if kind == "Conjugate":
        return Conjugate(word_from_json(S, d["conj"]), generator_from_json(S, d["inner"]))
    raise DSERError(f"unknown generator kind {kind!r}")


def word_from_json(S: QuadSpace, data: Sequence[dict]) -> Word:
    return Word(S, tuple((generator_from_json(S, d), int(d.get("exp", 1))) for d in data))
