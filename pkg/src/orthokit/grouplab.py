"""Finite matrix-group enumeration and series computations.

Matrices are packed into small-integer numpy arrays so that products can be
taken a whole BFS frontier at a time; each element is keyed by the raw bytes
of its packed form.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .matrix import Mat
from .ring import CapExceeded, Excision, RingCtx, UnsupportedError, Zmod

DEFAULT_CAP = 10_000_000
CAYLEY_LIMIT = 4096


# -- codecs ------------------------------------------------------------------------------

class _ZmodCodec:
    def __init__(self, ctx: Zmod, dim: int):
        self.ctx, self.dim, self.n = ctx, dim, ctx.n
        self.dtype = np.uint8 if ctx.n <= 256 else np.uint32
        self.shape = (dim, dim)

    def encode(self, M: Mat) -> np.ndarray:
        return np.array(M.rows, dtype=self.dtype)

    def decode(self, a: np.ndarray) -> Mat:
        return Mat(self.ctx, a.tolist())

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=self.dtype)

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return (np.matmul(X.astype(np.int64), Y.astype(np.int64)) % self.n).astype(self.dtype)


class _ExcisionCodec:
    """Pairs (r, i) over Zmod stored as a leading axis of length 2."""

    def __init__(self, ctx: Excision, dim: int):
        self.ctx, self.dim, self.n = ctx, dim, ctx.base.n
        self.dtype = np.uint8 if self.n <= 256 else np.uint32
        self.shape = (2, dim, dim)

    def encode(self, M: Mat) -> np.ndarray:
        r = [[a[0] for a in row] for row in M.rows]
        i = [[a[1] for a in row] for row in M.rows]
        return np.array([r, i], dtype=self.dtype)

    def decode(self, a: np.ndarray) -> Mat:
        r, i = a.tolist()
        return Mat(self.ctx, [list(zip(rr, ii)) for rr, ii in zip(r, i)])

    def identity(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=self.dtype)
        out[0] = np.eye(self.dim, dtype=self.dtype)
        return out

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X = X.astype(np.int64)
        Y = Y.astype(np.int64)
        R1, I1 = X[..., 0, :, :], X[..., 1, :, :]
        R2, I2 = Y[..., 0, :, :], Y[..., 1, :, :]
        R = np.matmul(R1, R2)
        I = np.matmul(R1, I2) + np.matmul(I1, R2) + np.matmul(I1, I2)
        return (np.stack([R, I], axis=-3) % self.n).astype(self.dtype)


def make_codec(ctx: RingCtx, dim: int):
    if isinstance(ctx, Zmod):
        return _ZmodCodec(ctx, dim)
    if isinstance(ctx, Excision) and isinstance(ctx.base, Zmod):
        return _ExcisionCodec(ctx, dim)
    raise UnsupportedError(f"no enumeration codec for {ctx.spec()}")


def _keys(batch: np.ndarray) -> list[bytes]:
    if not len(batch):
        return []
    flat = np.ascontiguousarray(batch).reshape(len(batch), -1)
    return [row.tobytes() for row in flat]


# -- tables ----------------------------------------------------------------------------

class GroupTable:
    """An enumerated finite matrix group."""

    def __init__(self, codec, data: np.ndarray, index: dict, generators: np.ndarray, complete: bool = True):
        self.codec = codec
        self.data = data
        self.index = index
        self.generators = generators
        self.complete = complete
        self._inv: np.ndarray | None = None

    @property
    def ctx(self) -> RingCtx:
        return self.codec.ctx

    @property
    def dim(self) -> int:
        return self.codec.dim

    def __len__(self) -> int:
        return len(self.data)

    order = property(__len__)

    def __contains__(self, M) -> bool:
        a = self.codec.encode(M) if isinstance(M, Mat) else M
        return a.tobytes() in self.index

    def lookup(self, batch: np.ndarray) -> np.ndarray:
        """Indices of the batch elements in this table (-1 if absent)."""
        get = self.index.get
        return np.array([get(k, -1) for k in _keys(batch)], dtype=np.int64)

    def element(self, k: int) -> Mat:
        return self.codec.decode(self.data[k])

    def elements(self) -> Iterable[Mat]:
        for a in self.data:
            yield self.codec.decode(a)

    def generator_mats(self) -> list[Mat]:
        return [self.codec.decode(g) for g in self.generators]

    def sample(self, rng: random.Random, k: int) -> list[int]:
        return [rng.randrange(len(self)) for _ in range(k)]

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return self.codec.mul(X, Y)

    def inverses(self) -> np.ndarray:
        """Packed inverse of every element, by powering until the identity."""
        if self._inv is None:
            self._inv = batch_inverse(self.codec, self.data)
        return self._inv

    def is_subset_of(self, other: "GroupTable") -> bool:
        return all(k in other.index for k in self.index)

    def describe(self) -> dict:
        return {"order": len(self), "dim": self.dim, "ctx": self.ctx.spec(), "generators": len(self.generators)}


def batch_inverse(codec, X: np.ndarray) -> np.ndarray:
    n = len(X)
    ident = codec.identity()
    out = np.empty_like(X)
    done = np.zeros(n, dtype=bool)
    prev = np.broadcast_to(ident, X.shape).copy()
    power = X.copy()
    # power = X^(t+1), prev = X^t; X^(t+1) = I means X^-1 = X^t
    while not done.all():
        hit = (~done) & np.all((power == ident).reshape(n, -1), axis=1)
        out[hit] = prev[hit]
        done |= hit
        if done.all():
            break
        prev = power
        power = codec.mul(power, X)
    return out


def _closure(codec, gens: np.ndarray, cap: int) -> GroupTable:
    id_key = codec.identity().tobytes()
    uniq = {}
    for g, k in zip(gens, _keys(gens)):
        if k != id_key:
            uniq.setdefault(k, g)
    ordered = [uniq[k] for k in sorted(uniq)]
    gens = np.array(ordered, dtype=codec.dtype).reshape((len(ordered),) + codec.shape)
    ident = codec.identity()[None]
    index = {ident[0].tobytes(): 0}
    chunks = [ident]
    frontier = ident
    count = 1
    while len(frontier) and len(gens):
        # frontier-major, generator-minor: row f*G + g holds frontier[f] @ gens[g]
        prod = codec.mul(frontier[:, None], gens[None, :])
        prod = prod.reshape((-1,) + codec.shape)
        new_rows = []
        for k, key in enumerate(_keys(prod)):
            if key not in index:
                index[key] = count
                count += 1
                new_rows.append(k)
                if count > cap:
                    raise CapExceeded(f"group exceeds cap {cap}", count)
        frontier = prod[new_rows]
        if len(frontier):
            chunks.append(frontier)
    data = np.concatenate(chunks)
    return GroupTable(codec, data, index, gens)


def bfs_closure(gens: Sequence[Mat], cap: int = DEFAULT_CAP, ctx: RingCtx | None = None, dim: int | None = None) -> GroupTable:
    """Subgroup generated by ``gens``, elements in breadth-first order."""
    if gens:
        ctx = gens[0].ctx
        dim = gens[0].nrows
        if any(g.ctx != ctx or g.shape != (dim, dim) for g in gens):
            raise ValueError("generators must share ring and size")
    elif ctx is None or dim is None:
        raise ValueError("an empty generator list needs ctx and dim")
    codec = make_codec(ctx, dim)
    arr = np.array([codec.encode(g) for g in gens], dtype=codec.dtype).reshape((len(gens),) + codec.shape)
    return _closure(codec, arr, cap)


def subgroup(G: GroupTable, gens: np.ndarray, cap: int = DEFAULT_CAP) -> GroupTable:
    return _closure(G.codec, gens, cap)


# -- series --------------------------------------------------------------------------------

def _commutators(codec, X: np.ndarray, Xi: np.ndarray, Y: np.ndarray, Yi: np.ndarray) -> np.ndarray:
    """All [x, y] = x y x^-1 y^-1 for x in X, y in Y."""
    a = codec.mul(X[:, None], Y[None, :])
    b = codec.mul(Xi[:, None], Yi[None, :])
    return codec.mul(a, b).reshape((-1,) + codec.shape)


def _normal_closure(G: GroupTable, seeds: np.ndarray, cap: int) -> GroupTable:
    """Smallest subgroup containing ``seeds`` and normalized by G's generators."""
    codec = G.codec
    ident_key = codec.identity().tobytes()
    chosen: list = []
    keys: set = set()
    for s, k in zip(seeds, _keys(seeds)):
        if k != ident_key and k not in keys:
            keys.add(k)
            chosen.append(s)
    gens = G.generators
    gens_inv = batch_inverse(codec, gens) if len(gens) else gens

    def build(sel):
        arr = np.array(sel, dtype=codec.dtype).reshape((len(sel),) + codec.shape)
        return _closure(codec, arr, cap)

    # grow greedily: only add seeds not already in the subgroup built so far
    K = build([])
    sel: list = []
    for s in chosen:
        if s.tobytes() not in K.index:
            sel.append(s)
            K = build(sel)
    while True:
        if not len(K.generators) or not len(gens):
            return K
        conj = codec.mul(codec.mul(gens[:, None], K.generators[None, :]), gens_inv[:, None])
        conj = conj.reshape((-1,) + codec.shape)
        missing = [c for c, k in zip(conj, _keys(conj)) if k not in K.index]
        if not missing:
            return K
        sel.append(missing[0])
        K = build(sel)


@dataclass
class SeriesResult:
    terms: list
    length: int | None  # None: never reaches the trivial group

    @property
    def orders(self) -> list[int]:
        return [len(t) for t in self.terms]


def _run_series(G: GroupTable, step, cap: int) -> SeriesResult:
    terms = [G]
    while True:
        cur = terms[-1]
        if len(cur) == 1:
            return SeriesResult(terms, len(terms) - 1)
        nxt = step(cur)
        if len(nxt) == len(cur):
            return SeriesResult(terms, None)
        terms.append(nxt)


def derived_series(G: GroupTable, cap: int = DEFAULT_CAP) -> SeriesResult:
    """G, [G,G], [[G,G],[G,G]], ... until trivial or stable."""
    codec = G.codec

    def step(H: GroupTable) -> GroupTable:
        g = H.generators
        seeds = _commutators(codec, g, batch_inverse(codec, g), g, batch_inverse(codec, g))
        return _normal_closure(H, seeds, cap)

    return _run_series(G, step, cap)


def lower_central_series(G: GroupTable, cap: int = DEFAULT_CAP) -> SeriesResult:
    """G, [G,G], [G,[G,G]], ... until trivial or stable."""
    codec = G.codec
    g = G.generators
    gi = batch_inverse(codec, g) if len(g) else g

    def step(H: GroupTable) -> GroupTable:
        h = H.generators
        seeds = _commutators(codec, g, gi, h, batch_inverse(codec, h))
        return _normal_closure(G, seeds, cap)

    return _run_series(G, step, cap)


# -- abstract groups given by a Cayley table ------------------------------------------------

class CayleyGroup:
    """Small abstract group: table[a][b] = index of a*b, element 0 is the identity."""

    def __init__(self, table: np.ndarray):
        self.table = table
        n = len(table)
        self.inv = np.empty(n, dtype=np.int64)
        for a in range(n):
            self.inv[a] = int(np.nonzero(table[a] == 0)[0][0])

    def __len__(self):
        return len(self.table)

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(len(self))))

    def closure(self, seeds: Iterable[int]) -> frozenset:
        found = {0}
        frontier = [0]
        seeds = sorted(set(seeds))
        while frontier:
            new = []
            for x in frontier:
                for s in seeds:
                    y = int(self.table[x, s])
                    if y not in found:
                        found.add(y)
                        new.append(y)
            frontier = new
        return frozenset(found)

    def comm(self, a: int, b: int) -> int:
        t = self.table
        return int(t[t[t[a, b], self.inv[a]], self.inv[b]])

    def commutator_subgroup(self, A: frozenset, B: frozenset) -> frozenset:
        seeds = {self.comm(a, b) for a in A for b in B}
        K = self.closure(seeds)
        # normal closure inside <A, B>
        amb = A | B
        while True:
            extra = {int(self.table[self.table[g, k], self.inv[g]]) for g in amb for k in K} - K
            if not extra:
                return K
            K = self.closure(K | extra)

    def derived_length(self) -> int | None:
        H = frozenset(range(len(self)))
        k = 0
        while len(H) > 1:
            nxt = self.commutator_subgroup(H, H)
            if nxt == H:
                return None
            H, k = nxt, k + 1
        return k

    def nilpotency_class(self) -> int | None:
        G = frozenset(range(len(self)))
        H, k = G, 0
        while len(H) > 1:
            nxt = self.commutator_subgroup(G, H)
            if nxt == H:
                return None
            H, k = nxt, k + 1
        return k


# -- quotients and products -------------------------------------------------------------------

class NotNormal(ValueError):
    def __init__(self, g: Mat, n: Mat):
        super().__init__("subgroup is not normal: g n g^-1 falls outside it")
        self.g = g
        self.n = n


@dataclass
class QuotientReport:
    order: int
    abelian: bool | None
    exponent: int | None
    derived_length: int | None = None
    nilpotency_class: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "exponent": self.exponent,
            "derived_length": self.derived_length,
            "nilpotency_class": self.nilpotency_class,
        }


def coset_labels(G: GroupTable, N: GroupTable) -> tuple[np.ndarray, list[int]]:
    """Left-coset label of every element of G and one representative per coset."""
    labels = np.full(len(G), -1, dtype=np.int64)
    reps: list[int] = []
    for k in range(len(G)):
        if labels[k] >= 0:
            continue
        coset = G.lookup(G.codec.mul(G.data[k][None], N.data))
        labels[coset] = len(reps)
        reps.append(k)
    return labels, reps


def quotient_structure(G: GroupTable, N: GroupTable) -> QuotientReport:
    """Structure of G/N; raises NotNormal with a witness when N is not normal."""
    codec = G.codec
    if not N.is_subset_of(G):
        raise ValueError("N is not contained in G")
    if len(G.generators) and len(N.generators):
        gi = batch_inverse(codec, G.generators)
        conj = codec.mul(codec.mul(G.generators[:, None], N.generators[None, :]), gi[:, None])
        conj = conj.reshape(len(G.generators), len(N.generators), *codec.shape)
        for a in range(len(G.generators)):
            hits = N.lookup(conj[a])
            bad = np.nonzero(hits < 0)[0]
            if len(bad):
                raise NotNormal(codec.decode(G.generators[a]), codec.decode(N.generators[bad[0]]))
    labels, reps = coset_labels(G, N)
    k = len(reps)
    if k > CAYLEY_LIMIT:
        return QuotientReport(k, None, None)
    rep_data = G.data[reps]
    table = np.empty((k, k), dtype=np.int64)
    for a in range(k):
        table[a] = labels[G.lookup(codec.mul(rep_data[a][None], rep_data))]
    ident = labels[G.index[codec.identity().tobytes()]]
    if ident != 0:
        raise AssertionError("identity coset must come first")
    Q = CayleyGroup(table)
    return QuotientReport(k, Q.is_abelian(), Q.exponent(), Q.derived_length(), Q.nilpotency_class())


def product_covering(G: GroupTable, A: GroupTable, B: GroupTable) -> tuple[bool, bool]:
    """Whether G = A.B and whether G = B.A (as sets of products)."""
    codec = G.codec

    def covers(left: GroupTable, right: GroupTable) -> bool:
        hit = np.zeros(len(G), dtype=bool)
        if len(left) <= len(right):
            for x in left.data:
                idx = G.lookup(codec.mul(x[None], right.data))
                if (idx < 0).any():
                    return False
                hit[idx] = True
        else:
            for y in right.data:
                idx = G.lookup(codec.mul(left.data, y[None]))
                if (idx < 0).any():
                    return False
                hit[idx] = True
        return bool(hit.all())

    return covers(A, B), covers(B, A)


def verify_product_splitting(G: GroupTable, A: GroupTable, B: GroupTable) -> bool:
    ab, ba = product_covering(G, A, B)
    return ab and ba
