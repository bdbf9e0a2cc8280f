"""Exact relation algebra on finite carriers.

A relation ``E`` on a carrier of ``n`` points is stored as ``n`` bit rows:
bit ``j`` of ``rows[i]`` is set iff ``(i, j) in E``.  Composition follows the
order ``E o F = {(x, z) | (x, y) in E, (y, z) in F}``, so ``(E o F)[x] =
F[E[x]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, NamedTuple, Sequence

from .errors import CarrierMismatch, EntourageError, ResourceCap, UnknownLabel

MAX_POINTS = 4096


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Carrier:
    labels: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) > MAX_POINTS:
            raise ResourceCap(f"carrier of {len(labels)} points exceeds cap {MAX_POINTS}")
        index = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise EntourageError(f"duplicate point label {lab!r}")
            index[lab] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def range(cls, n: int) -> "Carrier":
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown point {label!r}") from None

    def mask(self, labels: Iterable[Hashable]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> list:
        return [self.labels[i] for i in bits(mask)]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1


class Flags(NamedTuple):
    reflexive: bool
    symmetric: bool
    transitive: bool


@dataclass(frozen=True)
class Entourage:
    carrier: Carrier
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.carrier.size:
            raise EntourageError("row count does not match carrier size")
        full = self.carrier.full_mask
        if any(r & ~full for r in rows):
            raise EntourageError("relation leaves the carrier")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_pairs(cls, carrier: Carrier, pairs: Iterable[tuple]) -> "Entourage":
        rows = [0] * carrier.size
        for x, y in pairs:
            rows[carrier.index(x)] |= 1 << carrier.index(y)
        return cls(carrier, tuple(rows))

    @classmethod
    def from_index_pairs(cls, carrier: Carrier, pairs: Iterable[tuple]) -> "Entourage":
        rows = [0] * carrier.size
        for i, j in pairs:
            rows[i] |= 1 << j
        return cls(carrier, tuple(rows))

    @classmethod
    def diagonal(cls, carrier: Carrier) -> "Entourage":
        return cls(carrier, tuple(1 << i for i in range(carrier.size)))

    @classmethod
    def full(cls, carrier: Carrier) -> "Entourage":
        return cls(carrier, (carrier.full_mask,) * carrier.size)

    @classmethod
    def empty(cls, carrier: Carrier) -> "Entourage":
        return cls(carrier, (0,) * carrier.size)

    # -- queries ------------------------------------------------------------

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.rows[self.carrier.index(x)] >> self.carrier.index(y) & 1)

    def has(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def index_pairs(self) -> Iterator[tuple]:
        for i, r in enumerate(self.rows):
            for j in bits(r):
                yield i, j

    def pairs(self) -> list:
        labs = self.carrier.labels
        return [(labs[i], labs[j]) for i, j in self.index_pairs()]

    def __len__(self):
        return sum(r.bit_count() for r in self.rows)

    def row(self, label) -> set:
        return set(self.carrier.labels_of(self.rows[self.carrier.index(label)]))

    def image_mask(self, mask: int) -> int:
        out = 0
        rows = self.rows
        for i in bits(mask):
            out |= rows[i]
        return out

    def issubset(self, other: "Entourage") -> bool:
        _same(self, other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    __le__ = issubset

    def is_reflexive(self) -> bool:
        return all(r >> i & 1 for i, r in enumerate(self.rows))

    def is_symmetric(self) -> bool:
        return self.rows == inverse(self).rows

    def is_transitive(self) -> bool:
        return compose(self, self).issubset(self)

    # -- lattice operations ---------------------------------------------------

    def __or__(self, other: "Entourage") -> "Entourage":
        _same(self, other)
        return Entourage(self.carrier, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "Entourage") -> "Entourage":
        _same(self, other)
        return Entourage(self.carrier, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "Entourage") -> "Entourage":
        _same(self, other)
        return Entourage(self.carrier, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def __repr__(self):
        return f"Entourage({self.pairs()!r})"


def _same(e: Entourage, f: Entourage) -> None:
    if e.carrier != f.carrier:
        raise CarrierMismatch("relations live on different carriers")


def compose(e: Entourage, f: Entourage) -> Entourage:
    """``{(x, z) | exists y: (x, y) in e and (y, z) in f}``."""
    _same(e, f)
    frows = f.rows
    out = []
    for r in e.rows:
        acc = 0
        for y in bits(r):
            acc |= frows[y]
        out.append(acc)
    return Entourage(e.carrier, tuple(out))


def inverse(e: Entourage) -> Entourage:
    n = e.carrier.size
    out = [0] * n
    for i, r in enumerate(e.rows):
        bit = 1 << i
        for j in bits(r):
            out[j] |= bit
    return Entourage(e.carrier, tuple(out))


def image(e: Entourage, points: Iterable[Hashable]) -> set:
    mask = e.carrier.mask(points)
    return set(e.carrier.labels_of(e.image_mask(mask)))


def power(e: Entourage, n: int) -> Entourage:
    if n < 1:
        raise EntourageError("power(E, n) needs n >= 1; pass the diagonal explicitly for n = 0")
    out = e
    for _ in range(n - 1):
        out = compose(out, e)
    return out


def transitive_closure(e: Entourage) -> Entourage:
    """Least transitive relation containing ``e`` (no diagonal added)."""
    rows = list(e.rows)
    n = len(rows)
    # Warshall on bit rows
    for k in range(n):
        kb = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & kb:
                rows[i] |= rk
    return Entourage(e.carrier, tuple(rows))


def classify_relation(e: Entourage) -> Flags:
    return Flags(e.is_reflexive(), e.is_symmetric(), e.is_transitive())


def pushforward(e: Entourage, table: Sequence[int], target: Carrier) -> Entourage:
    """``(f x f)(e)`` for the index map ``table`` into ``target``."""
    rows = [0] * target.size
    for i, r in enumerate(e.rows):
        fi = table[i]
        acc = 0
        for j in bits(r):
            acc |= 1 << table[j]
        rows[fi] |= acc
    return Entourage(target, tuple(rows))


def pullback(e: Entourage, table: Sequence[int], source: Carrier) -> Entourage:
    """``(f x f)^{-1}(e)`` for the index map ``table`` from ``source``."""
    n = source.size
    # fibre masks: which source points land on each target point
    fibres = [0] * e.carrier.size
    for i, t in enumerate(table):
        fibres[t] |= 1 << i
    rows = []
    for i in range(n):
        acc = 0
        for t in bits(e.rows[table[i]]):
            acc |= fibres[t]
        rows.append(acc)
    return Entourage(source, tuple(rows))


def kernel(table: Sequence[int], source: Carrier) -> Entourage:
    """``R_f = {(x, y) | f(x) = f(y)}``."""
    fibres: dict = {}
    for i, t in enumerate(table):
        fibres[t] = fibres.get(t, 0) | 1 << i
    return Entourage(source, tuple(fibres[t] for t in table))
