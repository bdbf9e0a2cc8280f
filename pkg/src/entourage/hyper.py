"""Hyperstructures on the powerset of a small space.

A subset ``A`` of the base is the point with index ``A``'s bitmask, so the
powerset carrier lists subsets in binary counting order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, ResourceCap
from .morphisms import SpaceMap
from .rel_core import Carrier, Entourage, inverse
from .spaces import FiniteEntourageSpace

MAX_BASE = 12


def subset_label(base: Carrier, mask: int) -> str:
    return "{" + ",".join(str(x) for x in base.labels_of(mask)) + "}"


@dataclass(frozen=True)
class PowersetCarrier:
    base: Carrier

    def __post_init__(self):
        if self.base.size > MAX_BASE:
            raise ResourceCap(f"powerset of {self.base.size} points exceeds the {MAX_BASE}-point cap")

    @property
    def carrier(self) -> Carrier:
        return _powerset_carrier(self.base)

    def index(self, subset) -> int:
        return self.base.mask(subset)

    def subset(self, index: int) -> list:
        return self.base.labels_of(index)


_CACHE: dict = {}


def _powerset_carrier(base: Carrier) -> Carrier:
    hit = _CACHE.get(base)
    if hit is None:
        hit = Carrier(tuple(subset_label(base, m) for m in range(1 << base.size)))
        _CACHE[base] = hit
    return hit


def hyper_entourage(e: Entourage) -> Entourage:
    """``H(E) = {(A, B) | B <= E[A]}`` as a relation on the powerset."""
    ps = PowersetCarrier(e.carrier)
    if not e.is_reflexive():
        raise HypothesisError("hyper entourages need a reflexive base relation")
    n = e.carrier.size
    size = 1 << n
    # images via lowest set bit recursion: E[A] = E[A - {i}] | E[{i}]
    img = [0] * size
    for a in range(1, size):
        low = a & -a
        img[a] = img[a ^ low] | e.rows[low.bit_length() - 1]
    rows = []
    for a in range(size):
        ea = img[a]
        # every subset of ea: enumerate submasks
        r = 0
        sub = ea
        while True:
            r |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & ea
        rows.append(r)
    return Entourage(ps.carrier, tuple(rows))


def hyper_space(space: FiniteEntourageSpace) -> FiniteEntourageSpace:
    h = hyper_entourage(space.max_ent)
    return FiniteEntourageSpace(h.carrier, h, f"H({space.name})" if space.name else "")


def exp_space(space: FiniteEntourageSpace) -> FiniteEntourageSpace:
    h = hyper_entourage(space.max_ent)
    return FiniteEntourageSpace(h.carrier, h & inverse(h), f"exp({space.name})" if space.name else "")


def nonempty(space: FiniteEntourageSpace) -> FiniteEntourageSpace:
    """Restriction of a powerset space to the non-empty subsets."""
    keep = list(range(1, space.carrier.size))
    sub = Carrier(tuple(space.carrier.labels[i] for i in keep))
    rows = [space.max_ent.rows[i] >> 1 for i in keep]
    return FiniteEntourageSpace(sub, Entourage(sub, tuple(rows)))


def lift_table(f: SpaceMap) -> tuple:
    tab = f.table
    size = 1 << f.src.carrier.size
    out = [0] * size
    for a in range(1, size):
        low = a & -a
        out[a] = out[a ^ low] | 1 << tab[low.bit_length() - 1]
    return tuple(out)


def lift_map(f: SpaceMap) -> SpaceMap:
    """``A -> f(A)`` between the hyper spaces of source and target."""
    for s in (f.src, f.dst):
        if s.carrier.size > MAX_BASE:
            raise ResourceCap("lifted map exceeds the powerset cap")
    return SpaceMap(hyper_space(f.src), hyper_space(f.dst), lift_table(f))


def singleton_pairs(e: Entourage) -> list:
    """Pairs ``(x, y)`` with ``({x}, {y})`` in ``H(E)``, read back on the base."""
    h = hyper_entourage(e)
    labs = e.carrier.labels
    n = e.carrier.size
    return [(labs[i], labs[j]) for i in range(n) for j in range(n) if h.rows[1 << i] >> (1 << j) & 1]
