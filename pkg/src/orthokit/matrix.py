"""Dense exact matrices and vectors over a ``RingCtx``.

Entries are ring payloads (see ``orthokit.ring``).  Text format: rows
separated by ``;``, entries by ``,``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .ring import ContextMismatch, RingCtx, RingElem, RingError, split_top


class DimensionError(ValueError):
    pass


class Mat:
    __slots__ = ("ctx", "rows", "_hash")

    def __init__(self, ctx: RingCtx, rows: Iterable[Sequence]):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        if not self.rows or not self.rows[0]:
            raise DimensionError("matrices need positive dimensions")
        w = len(self.rows[0])
        if any(len(r) != w for r in self.rows):
            raise DimensionError("ragged rows")
        self._hash = None

    # -- construction ------------------------------------------------------------
    @classmethod
    def identity(cls, ctx: RingCtx, n: int) -> "Mat":
        z, o = ctx.zero(), ctx.one()
        return cls(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx: RingCtx, r: int, c: int) -> "Mat":
        z = ctx.zero()
        return cls(ctx, [[z] * c for _ in range(r)])

    @classmethod
    def from_values(cls, ctx: RingCtx, rows) -> "Mat":
        """Build from ints / strings / RingElems."""
        return cls(ctx, [[ctx.elem(v).value for v in row] for row in rows])

    @classmethod
    def diag(cls, ctx: RingCtx, entries: Sequence) -> "Mat":
        n = len(entries)
        z = ctx.zero()
        return cls(ctx, [[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: "Mat") -> "Mat":
        ctx = blocks[0].ctx
        n = sum(b.nrows for b in blocks)
        z = ctx.zero()
        rows = [[z] * n for _ in range(n)]
        off = 0
        for b in blocks:
            if b.ctx != ctx:
                raise ContextMismatch("blocks over different rings")
            for i, row in enumerate(b.rows):
                rows[off + i][off:off + b.ncols] = row
            off += b.nrows
        return cls(ctx, rows)

    @classmethod
    def unit(cls, ctx: RingCtx, n: int, i: int, j: int, value) -> "Mat":
        """The n x n matrix with ``value`` at 0-based (i, j) and zeros elsewhere."""
        m = [list(r) for r in cls.zeros(ctx, n, n).rows]
        m[i][j] = value
        return cls(ctx, m)

    # -- shape ---------------------------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij) -> RingElem:
        i, j = ij
        return RingElem(self.ctx, self.rows[i][j])

    # -- algebra -------------------------------------------------------------------
    def _check(self, other: "Mat"):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx.spec()} vs {other.ctx.spec()}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"{self.shape} + {other.shape}")
        add = self.ctx.add
        return Mat(self.ctx, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"{self.shape} - {other.shape}")
        sub = self.ctx.sub
        return Mat(self.ctx, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        neg = self.ctx.neg
        return Mat(self.ctx, [[neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "Mat":
        mul = self.ctx.mul
        return Mat(self.ctx, [[mul(c, a) for a in r] for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, Vector):
            return Vector(self.ctx, self.apply(other.entries))
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"{self.shape} @ {other.shape}")
        ctx = self.ctx
        add, mul, z = ctx.add, ctx.mul, ctx.zero()
        cols = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * cols
            for k, a in enumerate(r):
                if a == z:
                    continue
                ok = orows[k]
                for j in range(cols):
                    b = ok[j]
                    if b != z:
                        acc[j] = add(acc[j], mul(a, b))
            out.append(acc)
        return Mat(ctx, out)

    def apply(self, v: Sequence) -> tuple:
        add, mul, z = self.ctx.add, self.ctx.mul, self.ctx.zero()
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v):
                if a != z and b != z:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return tuple(out)

    @property
    def T(self) -> "Mat":
        return Mat(self.ctx, zip(*self.rows))

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def is_identity(self) -> bool:
        return self.is_square() and self == Mat.identity(self.ctx, self.nrows)

    def map(self, fn: Callable, ctx: RingCtx | None = None) -> "Mat":
        """Entrywise image under ``fn`` (payload -> payload) into ``ctx``."""
        return Mat(ctx or self.ctx, [[fn(a) for a in r] for r in self.rows])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(self.ctx, [[self.rows[i][j] for j in cols] for i in rows])

    def permute(self, perm: Sequence[int]) -> "Mat":
        """Re-index: entry (i, j) of self goes to (perm[i], perm[j])."""
        n = self.nrows
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i]][perm[j]] = self.rows[i][j]
        return Mat(self.ctx, out)

    def charpoly(self) -> list:
        """Coefficients [1, c1, ..., cn] of det(xI - A), division free (Berkowitz)."""
        if not self.is_square():
            raise DimensionError("charpoly of a non-square matrix")
        ctx = self.ctx
        A = self.rows
        n = len(A)
        add, mul, neg, one, z = ctx.add, ctx.mul, ctx.neg, ctx.one(), ctx.zero()
        poly = [one, neg(A[n - 1][n - 1])]
        for k in range(n - 2, -1, -1):
            size = n - k
            R = A[k][k + 1:]
            v = [A[i][k] for i in range(k + 1, n)]
            sub = [row[k + 1:] for row in A[k + 1:]]
            t = [one, neg(A[k][k])]
            for _ in range(size - 1):
                acc = z
                for a, b in zip(R, v):
                    acc = add(acc, mul(a, b))
                t.append(neg(acc))
                nv = []
                for row in sub:
                    s = z
                    for a, b in zip(row, v):
                        s = add(s, mul(a, b))
                    nv.append(s)
                v = nv
            new = []
            for i in range(size + 1):
                s = z
                for j in range(min(i + 1, len(poly))):
                    s = add(s, mul(t[i - j], poly[j]))
                new.append(s)
            poly = new
        return poly

    def det_value(self):
        n = self.nrows
        c = self.charpoly()[-1]
        return c if n % 2 == 0 else self.ctx.neg(c)

    def det(self) -> RingElem:
        return RingElem(self.ctx, self.det_value())

    def adjugate(self) -> "Mat":
        n = self.nrows
        ctx = self.ctx
        if n == 1:
            return Mat.identity(ctx, 1)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = self.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
                d = minor.det_value()
                row.append(d if (i + j) % 2 == 0 else ctx.neg(d))
            out.append(row)
        return Mat(ctx, out)

    def inverse(self) -> "Mat":
        d_inv = self.ctx.inverse(self.det_value())
        if d_inv is None:
            raise RingError("matrix is not invertible (determinant is not a unit)")
        return self.adjugate().scale(d_inv)

    # -- text ------------------------------------------------------------------------
    def format(self) -> str:
        f = self.ctx.format
        return ";".join(",".join(f(a) for a in r) for r in self.rows)

    def pretty(self) -> str:
        f = self.ctx.format
        cells = [[f(a) for a in r] for r in self.rows]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"Mat({self.ctx.spec()}, {self.format()})"


def parse_matrix(ctx: RingCtx, text: str) -> Mat:
    """Parse ``a,b;c,d``; newlines also separate rows."""
    body = text.strip().replace("\n", ";")
    rows = [r for r in split_top(body, ";") if r.strip()]
    return Mat(ctx, [[ctx.parse(e) for e in split_top(r, ",")] for r in rows])


class Vector:
    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: RingCtx, entries: Iterable):
        self.ctx = ctx
        self.entries = tuple(entries)
        if not self.entries:
            raise DimensionError("vectors need positive dimension")

    @classmethod
    def from_values(cls, ctx: RingCtx, values) -> "Vector":
        return cls(ctx, [ctx.elem(v).value for v in values])

    @classmethod
    def basis(cls, ctx: RingCtx, n: int, i: int) -> "Vector":
        return cls(ctx, [ctx.one() if k == i else ctx.zero() for k in range(n)])

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i) -> RingElem:
        return RingElem(self.ctx, self.entries[i])

    def __add__(self, other: "Vector") -> "Vector":
        add = self.ctx.add
        return Vector(self.ctx, [add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Vector") -> "Vector":
        sub = self.ctx.sub
        return Vector(self.ctx, [sub(a, b) for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "Vector":
        mul = self.ctx.mul
        return Vector(self.ctx, [mul(c, a) for a in self.entries])

    def is_zero(self) -> bool:
        z = self.ctx.zero()
        return all(a == z for a in self.entries)

    def __eq__(self, other):
        return isinstance(other, Vector) and self.ctx == other.ctx and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def format(self) -> str:
        return ",".join(self.ctx.format(a) for a in self.entries)

    def __repr__(self):
        return f"Vector({self.ctx.spec()}, {self.format()})"


def parse_vector(ctx: RingCtx, text: str) -> Vector:
    return Vector(ctx, [ctx.parse(e) for e in split_top(text.strip(), ",")])
