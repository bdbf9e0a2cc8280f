"""Entourage spaces on finite carriers, stored in principal form.

On a finite carrier every entourage structure is the family of all subsets
of its largest member ``M`` (the union of the structure is itself an
entourage).  A space is therefore just ``(carrier, M)`` with ``M``
reflexive, and ``E`` belongs to the structure iff ``E <= M``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Iterator, NamedTuple

from .errors import CarrierMismatch, EntourageError
from .rel_core import Carrier, Entourage, bits, inverse, transitive_closure


class StructureClass(enum.Enum):
    ENTOURAGE = "entourage"
    SEMI_COARSE = "semi-coarse"
    QUASI_COARSE = "quasi-coarse"
    COARSE = "coarse"

    @property
    def is_semi(self) -> bool:
        return self in (StructureClass.SEMI_COARSE, StructureClass.COARSE)

    @property
    def is_quasi(self) -> bool:
        return self in (StructureClass.QUASI_COARSE, StructureClass.COARSE)

    def satisfies(self, required: "StructureClass") -> bool:
        """True when every axiom of ``required`` holds for this class."""
        return (self.is_semi or not required.is_semi) and (self.is_quasi or not required.is_quasi)

    @classmethod
    def of(cls, semi: bool, quasi: bool) -> "StructureClass":
        if semi and quasi:
            return cls.COARSE
        if semi:
            return cls.SEMI_COARSE
        if quasi:
            return cls.QUASI_COARSE
        return cls.ENTOURAGE

    @classmethod
    def parse(cls, text: str) -> "StructureClass":
        key = text.strip().lower().replace("_", "-")
        aliases = {"semi": "semi-coarse", "quasi": "quasi-coarse", "semicoarse": "semi-coarse",
                   "quasicoarse": "quasi-coarse"}
        key = aliases.get(key, key)
        for member in cls:
            if member.value == key:
                return member
        raise EntourageError(f"unknown structure class {text!r}")


@dataclass(frozen=True)
class FiniteEntourageSpace:
    carrier: Carrier
    max_ent: Entourage
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.max_ent.carrier != self.carrier:
            raise CarrierMismatch("principal entourage lives on another carrier")
        if not self.max_ent.is_reflexive():
            raise EntourageError("an entourage structure must contain the diagonal")

    def contains(self, e: Entourage) -> bool:
        return e.issubset(self.max_ent)

    def named(self, name: str) -> "FiniteEntourageSpace":
        return FiniteEntourageSpace(self.carrier, self.max_ent, name)

    def ball(self, label) -> set:
        return self.max_ent.row(label)

    def __repr__(self):
        off = [p for p in self.max_ent.pairs() if p[0] != p[1]]
        return f"FiniteEntourageSpace({list(self.carrier.labels)!r}, {off!r})"


def from_generators(carrier: Carrier, gens: Iterable[Entourage] = (), name: str = "") -> FiniteEntourageSpace:
    m = Entourage.diagonal(carrier)
    for g in gens:
        if g.carrier != carrier:
            raise CarrierMismatch("generator lives on another carrier")
        m = m | g
    return FiniteEntourageSpace(carrier, m, name)


def from_pairs(labels: Iterable[Hashable], pairs: Iterable[tuple] = (), name: str = "") -> FiniteEntourageSpace:
    """Convenience: principal space on ``labels`` generated by ``pairs``."""
    carrier = Carrier(tuple(labels))
    return from_generators(carrier, [Entourage.from_pairs(carrier, pairs)], name)


def discrete(carrier: Carrier) -> FiniteEntourageSpace:
    return FiniteEntourageSpace(carrier, Entourage.diagonal(carrier))


def indiscrete(carrier: Carrier) -> FiniteEntourageSpace:
    return FiniteEntourageSpace(carrier, Entourage.full(carrier))


def classify(space: FiniteEntourageSpace) -> StructureClass:
    m = space.max_ent
    return StructureClass.of(m.is_symmetric(), m.is_transitive())


def restrict(space: FiniteEntourageSpace, points: Iterable[Hashable]) -> FiniteEntourageSpace:
    keep = set(points)
    for p in keep:
        space.carrier.index(p)
    idx = [i for i, lab in enumerate(space.carrier.labels) if lab in keep]
    sub = Carrier(tuple(space.carrier.labels[i] for i in idx))
    rows = []
    for i in idx:
        r = space.max_ent.rows[i]
        rows.append(sum(1 << k for k, j in enumerate(idx) if r >> j & 1))
    return FiniteEntourageSpace(sub, Entourage(sub, tuple(rows)))


class Boundedness(NamedTuple):
    b1: bool
    b2: bool
    b3: bool


def boundedness(space: FiniteEntourageSpace, points: Iterable[Hashable]) -> Boundedness:
    a = space.carrier.mask(points)
    if not a:
        raise EntourageError("boundedness is not defined for the empty set")
    rows = space.max_ent.rows
    covering = [a & ~rows[x] == 0 for x in bits(a)]
    # on a principal structure (B2) and (B3) both reduce to A <= M[x] for every x in A
    b2 = all(covering)
    return Boundedness(any(covering), b2, b2)


def uniformly_bounded(space: FiniteEntourageSpace, family: Iterable[Iterable[Hashable]]) -> bool:
    rows = space.max_ent.rows
    for member in family:
        a = space.carrier.mask(member)
        if any(a & ~rows[x] for x in bits(a)):
            return False
    return True


class Connectivity(NamedTuple):
    connected: bool
    strongly_connected: bool
    uniformly_connected: bool
    components: list


def connectivity(space: FiniteEntourageSpace) -> Connectivity:
    m = space.max_ent
    closure = transitive_closure(m | inverse(m))
    seen = 0
    comps = []
    for i, r in enumerate(closure.rows):
        if seen >> i & 1:
            continue
        comps.append(space.carrier.labels_of(r))
        seen |= r
    connected = len(comps) <= 1
    strong = m == Entourage.full(space.carrier)
    return Connectivity(connected, strong, connected, comps)


class Geometry(NamedTuple):
    locally_finite: bool
    phi: int


def geometry(space: FiniteEntourageSpace) -> Geometry:
    phi = max((r.bit_count() for r in space.max_ent.rows), default=0)
    return Geometry(True, phi)


def all_spaces(carrier: Carrier) -> Iterator[FiniteEntourageSpace]:
    """Every entourage structure on ``carrier`` (one per reflexive relation)."""
    n = carrier.size
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = [1 << i for i in range(n)]
    for mask in range(1 << len(off)):
        rows = list(diag)
        for k in bits(mask):
            i, j = off[k]
            rows[i] |= 1 << j
        yield FiniteEntourageSpace(carrier, Entourage(carrier, tuple(rows)))


def subsets(labels: Iterable[Hashable]) -> Iterator[tuple]:
    items = list(labels)
    for k in range(len(items) + 1):
        yield from combinations(items, k)
