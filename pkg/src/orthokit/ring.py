"""Commutative rings with 2 invertible.

A ring context (``RingCtx``) owns the arithmetic; elements are stored as
plain hashable payloads in canonical form so that equality is structural:

* ``Zmod(n)``      -- ``int`` in ``[0, n)``
* ``Rationals()``  -- ``fractions.Fraction``
* ``Poly(base)``   -- ``tuple`` of base payloads, no trailing zeros
* ``Excision(base, ideal)`` -- pair ``(r, i)`` with ``i`` in the ideal

Matrices and the rest of the package work on payloads directly.  ``RingElem``
wraps a payload together with its context for the user-facing API.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Sequence


class RingError(ValueError):
    """Invalid ring construction or element."""


class ContextMismatch(RingError):
    pass


class UnsupportedError(RuntimeError):
    """The requested decision is not available for this ring kind."""


class CapExceeded(RuntimeError):
    def __init__(self, msg: str, count: int):
        super().__init__(msg)
        self.count = count


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _radical(n: int) -> int:
    r, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            r *= d
            while n % d == 0:
                n //= d
        d += 1
    return r * n if n > 1 else r


class RingCtx:
    """Base class for ring contexts.  Subclasses are frozen dataclasses."""

    finite: bool = False
    is_field: bool = False

    # -- arithmetic on payloads -------------------------------------------
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def from_int(self, k: int):
        raise NotImplementedError

    def inverse(self, a):
        """Inverse payload of ``a`` or ``None`` when ``a`` is not a unit."""
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def is_unit(self, a) -> bool:
        return self.inverse(a) is not None

    def is_nilpotent(self, a) -> bool:
        raise NotImplementedError

    def contains(self, a) -> bool:
        """Whether ``a`` is a canonical payload of this ring."""
        raise NotImplementedError

    def random(self, rng: random.Random):
        raise NotImplementedError

    def elements(self) -> list:
        raise UnsupportedError(f"{self} is infinite")

    # -- text --------------------------------------------------------------
    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        p = _ElemParser(text)
        value = self._parse_at(p)
        p.skip_ws()
        if not p.done():
            raise RingError(f"trailing characters in element {text!r}")
        return value

    def _parse_at(self, p: "_ElemParser"):
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    # -- helpers -------------------------------------------------------------
    @cached_property
    def half(self):
        h = self.inverse(self.from_int(2))
        if h is None:
            raise RingError(f"2 is not invertible in {self.spec()}")
        return h

    def elem(self, value) -> "RingElem":
        """Coerce an int, string or payload into a ``RingElem`` of this ring."""
        if isinstance(value, RingElem):
            if value.ctx != self:
                raise ContextMismatch(f"{value.ctx.spec()} vs {self.spec()}")
            return value
        if isinstance(value, str):
            return RingElem(self, self.parse(value))
        if isinstance(value, int) and not isinstance(value, bool):
            return RingElem(self, self.from_int(value))
        if not self.contains(value):
            raise RingError(f"{value!r} is not an element of {self.spec()}")
        return RingElem(self, value)

    __call__ = elem

    def index(self, a) -> int:
        """Position of ``a`` in ``elements()`` (finite rings only)."""
        return self._index_map[a]

    @cached_property
    def _index_map(self) -> dict:
        return {e: k for k, e in enumerate(self.elements())}

    @cached_property
    def units(self) -> list:
        return [a for a in self.elements() if self.is_unit(a)]

    def __str__(self) -> str:
        return self.spec()


@dataclass(frozen=True, eq=True)
class Zmod(RingCtx):
    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise RingError(f"Zmod needs an odd modulus >= 3, got {self.n}")

    finite = True

    @property
    def is_field(self) -> bool:  # type: ignore[override]
        return _is_prime(self.n)

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return a * b % self.n

    def from_int(self, k):
        return k % self.n

    def inverse(self, a):
        if math.gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n)

    def is_nilpotent(self, a):
        return a % _radical(self.n) == 0

    def contains(self, a):
        return isinstance(a, int) and 0 <= a < self.n

    def random(self, rng):
        return rng.randrange(self.n)

    def elements(self):
        return list(range(self.n))

    def index(self, a):
        return a

    def format(self, a):
        return str(a)

    def _parse_at(self, p):
        return p.integer() % self.n

    def spec(self):
        return f"zmod:{self.n}"


@dataclass(frozen=True, eq=True)
class Rationals(RingCtx):
    is_field = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, k):
        return Fraction(k)

    def inverse(self, a):
        return None if a == 0 else 1 / a

    def is_nilpotent(self, a):
        return a == 0

    def contains(self, a):
        return isinstance(a, Fraction)

    def random(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    def format(self, a):
        return str(a)

    def _parse_at(self, p):
        num = p.integer()
        if p.peek() == "/":
            p.advance()
            den = p.integer()
            if den == 0:
                raise RingError("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def spec(self):
        return "Q"


@dataclass(frozen=True, eq=True)
class Poly(RingCtx):
    """Univariate polynomials over ``base``; payloads are trimmed coefficient tuples."""

    base: RingCtx
    var: str = "X"

    def __post_init__(self):
        if not isinstance(self.base, RingCtx):
            raise RingError("Poly base must be a ring context")
        self.base.half  # 2 must be a unit

    def _trim(self, coeffs: Sequence) -> tuple:
        z = self.base.zero()
        k = len(coeffs)
        while k and coeffs[k - 1] == z:
            k -= 1
        return tuple(coeffs[:k])

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def x(self):
        return (self.base.zero(), self.base.one())

    def constant(self, c):
        return self._trim((c,))

    def add(self, a, b):
        B = self.base
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = B.add(out[k], c)
        return self._trim(out)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        B = self.base
        z = B.zero()
        out = [z] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == z:
                continue
            for j, cb in enumerate(b):
                if cb != z:
                    out[i + j] = B.add(out[i + j], B.mul(ca, cb))
        return self._trim(out)

    def from_int(self, k):
        return self._trim((self.base.from_int(k),))

    def inverse(self, a):
        # unit iff constant term is a unit and the rest is nilpotent
        if not a:
            return None
        B = self.base
        c0 = B.inverse(a[0])
        if c0 is None or not all(B.is_nilpotent(c) for c in a[1:]):
            return None
        if len(a) == 1:
            return (c0,)
        # a = a0 (1 + u) with u nilpotent: a^-1 = a0^-1 (1 - u + u^2 - ...)
        u = self.mul((c0,), (B.zero(),) + tuple(a[1:]))
        term, total = self.one(), self.one()
        for _ in range(10_000):
            term = self.neg(self.mul(term, u))
            if not term:
                return self.mul((c0,), total)
            total = self.add(total, term)
        raise RingError("nilpotent series did not terminate")

    def is_nilpotent(self, a):
        return all(self.base.is_nilpotent(c) for c in a)

    def contains(self, a):
        return isinstance(a, tuple) and all(self.base.contains(c) for c in a) and self._trim(a) == a

    def random(self, rng, degree: int = 2):
        return self._trim([self.base.random(rng) for _ in range(degree + 1)])

    def evaluate(self, a, point):
        B = self.base
        acc = B.zero()
        for c in reversed(a):
            acc = B.add(B.mul(acc, point), c)
        return acc

    def degree(self, a) -> int:
        return len(a) - 1

    def divmod(self, a, b):
        """Euclidean division by ``b`` whose leading coefficient is a unit."""
        B = self.base
        lead_inv = B.inverse(b[-1])
        if lead_inv is None:
            raise UnsupportedError("leading coefficient is not a unit")
        q = [B.zero()] * max(len(a) - len(b) + 1, 1)
        r = list(a)
        while len(r) >= len(b) and r:
            shift = len(r) - len(b)
            c = B.mul(r[-1], lead_inv)
            q[shift] = c
            for k, cb in enumerate(b):
                r[shift + k] = B.sub(r[shift + k], B.mul(c, cb))
            r = list(self._trim(r))
        return self._trim(q), self._trim(r)

    def gcd(self, a, b):
        """Monic gcd; base must be a field."""
        if not self.base.is_field:
            raise UnsupportedError("polynomial gcd needs a field base")
        while b:
            a, b = b, self.divmod(a, b)[1]
        if not a:
            return ()
        inv = self.base.inverse(a[-1])
        return tuple(self.base.mul(c, inv) for c in a)

    def format(self, a):
        if not a:
            return "[0]"
        return "[" + ",".join(self.base.format(c) for c in a) + "]"

    def _parse_at(self, p):
        p.expect("[")
        coeffs = []
        p.skip_ws()
        if p.peek() != "]":
            coeffs.append(self.base._parse_at(p))
            p.skip_ws()
            while p.peek() == ",":
                p.advance()
                coeffs.append(self.base._parse_at(p))
                p.skip_ws()
        p.expect("]")
        return self._trim(coeffs)

    def spec(self):
        return f"poly:{self.base.spec()}:{self.var}"


class IdealDesc:
    """An ideal given by generators; finite rings also carry the element set."""

    def __init__(self, ctx: RingCtx, generators: Iterable, elements: frozenset | None = None):
        self.ctx = ctx
        gens = tuple(generators)
        for g in gens:
            if not ctx.contains(g):
                raise RingError(f"ideal generator {g!r} not in {ctx.spec()}")
        self.generators = gens
        if elements is None and ctx.finite:
            elements = _close_ideal(ctx, gens)
        self.elements = elements

    def __contains__(self, a) -> bool:
        return self.contains(a)

    def contains(self, a) -> bool:
        ctx = self.ctx
        if self.elements is not None:
            return a in self.elements
        gens = [g for g in self.generators if not ctx.is_zero(g)]
        if not gens:
            return ctx.is_zero(a)
        if isinstance(ctx, Rationals):
            return True
        if isinstance(ctx, Excision) and all(ctx.base.is_zero(g[0]) for g in gens):
            # (r, i)(0, g) = (0, (r + i) g): the ideal is 0 (+) (g_1, ..., g_k)
            inner = IdealDesc(ctx.base, [g[1] for g in gens])
            return ctx.base.is_zero(a[0]) and inner.contains(a[1])
        if isinstance(ctx, Poly) and ctx.base.is_field:
            g = gens[0]
            for h in gens[1:]:
                g = ctx.gcd(g, h)
            g = ctx.gcd(g, ())
            return not ctx.divmod(a, g)[1]
        raise UnsupportedError(f"ideal membership is not decidable here for {ctx.spec()}")

    def random_element(self, rng: random.Random):
        if self.elements is not None:
            return rng.choice(sorted(self.elements, key=self.ctx.index))
        acc = self.ctx.zero()
        for g in self.generators:
            acc = self.ctx.add(acc, self.ctx.mul(self.ctx.random(rng), g))
        return acc

    @property
    def is_unit_ideal(self) -> bool:
        return self.contains(self.ctx.one())

    def key(self):
        """Sort key: cardinality, then sorted element indices."""
        idx = sorted(self.ctx.index(e) for e in self.elements)
        return (len(idx), tuple(idx))

    def __eq__(self, other):
        if not isinstance(other, IdealDesc) or other.ctx != self.ctx:
            return NotImplemented
        if self.elements is not None and other.elements is not None:
            return self.elements == other.elements
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def __hash__(self):
        return hash((self.ctx, self.elements))

    def __le__(self, other: "IdealDesc") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __repr__(self):
        gens = ",".join(self.ctx.format(g) for g in self.generators)
        return f"IdealDesc({self.ctx.spec()}, [{gens}])"

    def describe(self) -> str:
        if self.elements is not None:
            return "{" + ", ".join(self.ctx.format(e) for e in sorted(self.elements, key=self.ctx.index)) + "}"
        return "(" + ", ".join(self.ctx.format(g) for g in self.generators) + ")"


def _close_ideal(ctx: RingCtx, gens: Sequence) -> frozenset:
    elems = ctx.elements()
    current = {ctx.zero()}
    for g in gens:
        principal = {ctx.mul(r, g) for r in elems}
        current = {ctx.add(a, b) for a in current for b in principal}
    return frozenset(current)


def ideal(ctx: RingCtx, gens: Iterable) -> IdealDesc:
    """Ideal generated by ``gens`` (ints, strings or payloads)."""
    return IdealDesc(ctx, [ctx.elem(g).value for g in gens])


@dataclass(frozen=True, eq=False)
class Excision(RingCtx):
    """The excision ring R (+) I on pairs (r, i)."""

    base: RingCtx
    ideal: IdealDesc

    def __post_init__(self):
        if self.ideal.ctx != self.base:
            raise RingError("excision ideal must live in the base ring")
        self.base.half

    def __eq__(self, other):
        return isinstance(other, Excision) and self.base == other.base and self.ideal == other.ideal

    def __hash__(self):
        return hash(("exc", self.base, self.ideal.generators))

    @property
    def finite(self):  # type: ignore[override]
        return self.base.finite

    def zero(self):
        z = self.base.zero()
        return (z, z)

    def one(self):
        return (self.base.one(), self.base.zero())

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def sub(self, a, b):
        B = self.base
        return (B.sub(a[0], b[0]), B.sub(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        r1, i1 = a
        r2, i2 = b
        return (B.mul(r1, r2), B.add(B.add(B.mul(r1, i2), B.mul(r2, i1)), B.mul(i1, i2)))

    def from_int(self, k):
        return (self.base.from_int(k), self.base.zero())

    def embed(self, r):
        """Base element r as (r, 0)."""
        return (r, self.base.zero())

    def embed_ideal(self, i):
        """Ideal element i as (0, i)."""
        return (self.base.zero(), i)

    def inner_ideal(self) -> IdealDesc:
        """The ideal 0 (+) I."""
        return IdealDesc(self, [self.embed_ideal(g) for g in self.ideal.generators])

    def project(self, a):
        """f(r, i) = r + i."""
        return self.base.add(a[0], a[1])

    def inverse(self, a):
        # (r, i) is a unit iff r and r+i are; inverse is (r^-1, (r+i)^-1 - r^-1)
        B = self.base
        r_inv = B.inverse(a[0])
        s_inv = B.inverse(B.add(a[0], a[1]))
        if r_inv is None or s_inv is None:
            return None
        return (r_inv, B.sub(s_inv, r_inv))

    def is_nilpotent(self, a):
        return self.base.is_nilpotent(a[0]) and self.base.is_nilpotent(self.project(a))

    def contains(self, a):
        return (
            isinstance(a, tuple)
            and len(a) == 2
            and self.base.contains(a[0])
            and self.base.contains(a[1])
            and self.ideal.contains(a[1])
        )

    def random(self, rng):
        return (self.base.random(rng), self.ideal.random_element(rng))

    def elements(self):
        if not self.finite:
            raise UnsupportedError(f"{self.spec()} is infinite")
        B = self.base
        ideal_elems = sorted(self.ideal.elements, key=B.index)
        return [(r, i) for r in B.elements() for i in ideal_elems]

    def format(self, a):
        return f"({self.base.format(a[0])}|{self.base.format(a[1])})"

    def _parse_at(self, p):
        p.skip_ws()
        if p.peek() != "(":
            # bare base element r means (r, 0)
            return self.embed(self.base._parse_at(p))
        p.expect("(")
        r = self.base._parse_at(p)
        p.expect("|")
        i = self.base._parse_at(p)
        p.expect(")")
        if not self.ideal.contains(i):
            raise RingError(f"{self.base.format(i)} is not in the excision ideal")
        return (r, i)

    def spec(self):
        gens = ",".join(self.base.format(g) for g in self.ideal.generators)
        return f"exc:{self.base.spec()}:[{gens}]"


@dataclass(frozen=True)
class RingElem:
    """A payload bound to its ring; supports the usual operators."""

    ctx: RingCtx
    value: Any = field(compare=True)

    def _other(self, other) -> Any:
        if isinstance(other, RingElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx.spec()} vs {other.ctx.spec()}")
            return other.value
        return self.ctx.elem(other).value

    def __add__(self, other):
        return RingElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, k: int):
        acc = self.ctx.one()
        for _ in range(k):
            acc = self.ctx.mul(acc, self.value)
        return RingElem(self.ctx, acc)

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, str)):
            return self.value == self.ctx.elem(other).value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def inverse(self) -> "RingElem | None":
        inv = self.ctx.inverse(self.value)
        return None if inv is None else RingElem(self.ctx, inv)

    def is_unit(self) -> bool:
        return self.ctx.is_unit(self.value)

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"RingElem({self.ctx.spec()}, {self})"


# -- operations -----------------------------------------------------------------

def ring_arith(ctx: RingCtx, op: str, a: RingElem, b: RingElem) -> RingElem:
    if a.ctx != ctx or b.ctx != ctx:
        raise ContextMismatch("operands do not belong to the ring")
    fn = {"add": ctx.add, "sub": ctx.sub, "mul": ctx.mul}.get(op)
    if op == "neg":
        return RingElem(ctx, ctx.neg(a.value))
    if fn is None:
        raise ValueError(f"unknown op {op!r}")
    return RingElem(ctx, fn(a.value, b.value))


def ring_inverse(ctx: RingCtx, a: RingElem) -> RingElem | None:
    """Inverse of ``a``; ``None`` stands for "not a unit"."""
    if a.ctx != ctx:
        raise ContextMismatch("element does not belong to the ring")
    return a.inverse()


def excision_project(e: RingElem) -> RingElem:
    if not isinstance(e.ctx, Excision):
        raise RingError("excision_project needs an excision-ring element")
    return RingElem(e.ctx.base, e.ctx.project(e.value))


def enumerate_ideals(ctx: RingCtx, size_cap: int = 4096) -> list[IdealDesc]:
    """All ideals of a finite ring: sums of principal ideals, closed under join."""
    if not ctx.finite:
        raise UnsupportedError("ideal enumeration needs a finite ring")
    elems = ctx.elements()
    if len(elems) > size_cap:
        raise CapExceeded(f"ring has {len(elems)} elements (cap {size_cap})", len(elems))
    found: dict[frozenset, tuple] = {}
    for a in elems:
        s = frozenset(ctx.mul(r, a) for r in elems)
        found.setdefault(s, (a,))
    frontier = list(found.items())
    principal = list(found.items())
    while frontier:
        new = []
        for s, gens in frontier:
            for p, pg in principal:
                if p <= s:
                    continue
                j = frozenset(ctx.add(x, y) for x in s for y in p)
                if j not in found:
                    found[j] = gens + pg
                    new.append((j, found[j]))
        frontier = new
    out = [IdealDesc(ctx, gens, s) for s, gens in found.items()]
    out.sort(key=IdealDesc.key)
    return out


def is_maximal_ideal(ctx: RingCtx, I: IdealDesc, ideals: list[IdealDesc] | None = None) -> bool:
    if ideals is None:
        ideals = enumerate_ideals(ctx)
    if ctx.one() in I.elements:
        return False
    return not any(
        I.elements < J.elements and ctx.one() not in J.elements for J in ideals
    )


def split_components(I: IdealDesc) -> tuple[frozenset, frozenset, bool]:
    """For an ideal of R (+) I: the projections J, I1 and whether it equals J (+) I1."""
    J = frozenset(r for r, _ in I.elements)
    I1 = frozenset(i for _, i in I.elements)
    split = len(I.elements) == len(J) * len(I1)
    return J, I1, split


# -- parsing ----------------------------------------------------------------------

class _ElemParser:
    def __init__(self, text: str):
        self.s = text
        self.k = 0

    def skip_ws(self):
        while self.k < len(self.s) and self.s[self.k].isspace():
            self.k += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.s[self.k] if self.k < len(self.s) else ""

    def advance(self):
        self.k += 1

    def done(self) -> bool:
        return self.k >= len(self.s)

    def expect(self, ch: str):
        if self.peek() != ch:
            raise RingError(f"expected {ch!r} at position {self.k} in {self.s!r}")
        self.k += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.k
        if self.k < len(self.s) and self.s[self.k] in "+-":
            self.k += 1
        while self.k < len(self.s) and self.s[self.k].isdigit():
            self.k += 1
        try:
            return int(self.s[start:self.k])
        except ValueError:
            raise RingError(f"expected an integer at position {start} in {self.s!r}") from None


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside brackets and parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_ring(spec: str) -> RingCtx:
    """Parse ``zmod:9``, ``Q``, ``poly:zmod:3:X``, ``exc:zmod:9:[3]``."""
    s = spec.strip()
    if s in ("Q", "QQ", "q"):
        return Rationals()
    if s.startswith("zmod:"):
        try:
            return Zmod(int(s[5:]))
        except ValueError:
            raise RingError(f"bad modulus in {spec!r}") from None
    if s.startswith("poly:"):
        rest = s[5:]
        base_spec, _, var = rest.rpartition(":")
        if not base_spec or not var.isidentifier():
            raise RingError(f"bad polynomial ring spec {spec!r}")
        return Poly(parse_ring(base_spec), var)
    if s.startswith("exc:"):
        if not s.endswith("]"):
            raise RingError(f"excision spec needs bracketed generators: {spec!r}")
        depth = 0
        for k in range(len(s) - 1, -1, -1):
            if s[k] == "]":
                depth += 1
            elif s[k] == "[":
                depth -= 1
                if depth == 0:
                    break
        base = parse_ring(s[4:k].rstrip(":"))
        inner = s[k + 1:-1].strip()
        gens = [base.parse(g) for g in split_top(inner)] if inner else []
        return Excision(base, IdealDesc(base, gens))
    raise RingError(f"unknown ring spec {spec!r}")
