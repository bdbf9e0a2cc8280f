"""Maps between finite entourage spaces and Sym-coarse equivalence."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Mapping, NamedTuple, Optional, Sequence

from .errors import CarrierMismatch, EntourageError, HypothesisError, ResourceCap
from .rel_core import bits, inverse, kernel, pullback, pushforward
from .spaces import FiniteEntourageSpace, classify

ORACLE_LIMIT = 10**6


@dataclass(frozen=True)
class SpaceMap:
    src: FiniteEntourageSpace
    dst: FiniteEntourageSpace
    table: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.src.carrier.size:
            raise EntourageError("map table must be total on the source carrier")
        n = self.dst.carrier.size
        if any(not 0 <= t < n for t in table):
            raise EntourageError("map table leaves the target carrier")

    @classmethod
    def from_dict(cls, src, dst, mapping: Mapping[Hashable, Hashable], name: str = "") -> "SpaceMap":
        missing = [x for x in src.carrier.labels if x not in mapping]
        if missing:
            raise EntourageError(f"map is not total: no image for {missing[0]!r}")
        for x in mapping:
            src.carrier.index(x)
        return cls(src, dst, tuple(dst.carrier.index(mapping[x]) for x in src.carrier.labels), name)

    @classmethod
    def identity(cls, space: FiniteEntourageSpace) -> "SpaceMap":
        return cls(space, space, tuple(range(space.carrier.size)))

    def __call__(self, label):
        return self.dst.carrier.labels[self.table[self.src.carrier.index(label)]]

    def as_dict(self) -> dict:
        labs = self.dst.carrier.labels
        return {x: labs[t] for x, t in zip(self.src.carrier.labels, self.table)}

    @property
    def image_mask(self) -> int:
        m = 0
        for t in self.table:
            m |= 1 << t
        return m

    def is_bijective(self) -> bool:
        return self.src.carrier.size == self.dst.carrier.size and len(set(self.table)) == len(self.table)

    def then(self, other: "SpaceMap") -> "SpaceMap":
        """``other o self``."""
        if self.dst.carrier != other.src.carrier:
            raise CarrierMismatch("maps do not compose")
        return SpaceMap(self.src, other.dst, tuple(other.table[t] for t in self.table))

    def with_spaces(self, src: FiniteEntourageSpace, dst: FiniteEntourageSpace) -> "SpaceMap":
        """Same underlying function between other structures on the same carriers."""
        if src.carrier != self.src.carrier or dst.carrier != self.dst.carrier:
            raise CarrierMismatch("re-typing a map needs the same carriers")
        return SpaceMap(src, dst, self.table, self.name)


class MapProfile(NamedTuple):
    bornologous: bool
    weakly_ubc: bool
    ubc: bool
    effectively_proper: bool
    ls_injective: bool
    ls_surjective: bool
    asymorphism: bool


def is_bornologous(f: SpaceMap) -> bool:
    return pushforward(f.src.max_ent, f.table, f.dst.carrier).issubset(f.dst.max_ent)


def is_effectively_proper(f: SpaceMap) -> bool:
    return pullback(f.dst.max_ent, f.table, f.src.carrier).issubset(f.src.max_ent)


def profile(f: SpaceMap) -> MapProfile:
    mx, my = f.src.max_ent, f.dst.max_ent
    tab = f.table
    fx = f.image_mask
    pushed = pushforward(mx, tab, f.dst.carrier)
    bornologous = pushed.issubset(my)
    # weakly ubc: M_Y restricted to f(X) x f(X) is hit by (f x f)(M_X)
    weakly = all((r & fx) & ~p == 0 for i, (r, p) in enumerate(zip(my.rows, pushed.rows)) if fx >> i & 1)
    ubc = True
    for x, fxi in enumerate(tab):
        reach = 0
        for y in bits(mx.rows[x]):
            reach |= 1 << tab[y]
        if my.rows[fxi] & fx & ~reach:
            ubc = False
            break
    eff = pullback(my, tab, f.src.carrier).issubset(mx)
    ls_inj = kernel(tab, f.src.carrier).issubset(mx)
    sym = my & inverse(my)
    ls_sur = sym.image_mask(fx) == f.dst.carrier.full_mask
    asym = f.is_bijective() and bornologous and eff
    return MapProfile(bornologous, weakly, ubc, eff, ls_inj, ls_sur, asym)


class Closeness(enum.Enum):
    PLAIN = "plain"
    SYM = "sym"


def are_close(f: SpaceMap, g: SpaceMap, mode: Closeness = Closeness.PLAIN) -> bool:
    if f.src.carrier != g.src.carrier or f.dst.carrier != g.dst.carrier:
        raise CarrierMismatch("closeness compares maps with a common source and target")
    m = f.dst.max_ent
    if mode is Closeness.SYM:
        m = m & inverse(m)
    return all(m.rows[a] >> b & 1 for a, b in zip(f.table, g.table))


def _close_to_identity_sym(table: Sequence[int], space: FiniteEntourageSpace) -> bool:
    m = space.max_ent
    return all(m.rows[i] >> t & 1 and m.rows[t] >> i & 1 for i, t in enumerate(table))


class EquivalenceVerdict(NamedTuple):
    equivalent: bool
    inverse: Optional[SpaceMap]
    failed: tuple

    def __bool__(self):
        return self.equivalent


def _require_quasi(space: FiniteEntourageSpace, role: str) -> None:
    if not classify(space).is_quasi:
        who = f"{role} space {space.name}" if space.name else f"{role} space"
        raise HypothesisError(f"{who} is not quasi-coarse")


def sym_coarse_equivalence(f: SpaceMap) -> EquivalenceVerdict:
    """Decide whether ``f`` is a Sym-coarse equivalence and build an inverse.

    Both spaces must be quasi-coarse.  ``f`` is an equivalence exactly when
    it is large-scale surjective, bornologous and effectively proper.  The
    inverse sends ``y`` to its least preimage, or failing that to the least
    ``x`` with ``(y, f(x))`` in ``M_Y & M_Y^-1``.
    """
    _require_quasi(f.src, "source")
    _require_quasi(f.dst, "target")
    p = profile(f)
    failed = tuple(name for name in ("ls_surjective", "bornologous", "effectively_proper")
                   if not getattr(p, name))
    if failed:
        return EquivalenceVerdict(False, None, failed)
    my = f.dst.max_ent
    sym = my & inverse(my)
    preimage: dict = {}
    for x, t in enumerate(f.table):
        preimage.setdefault(t, x)
    g = []
    for y in range(f.dst.carrier.size):
        if y in preimage:
            g.append(preimage[y])
            continue
        g.append(next(x for x, t in enumerate(f.table) if sym.rows[y] >> t & 1))
    return EquivalenceVerdict(True, SpaceMap(f.dst, f.src, tuple(g)), ())


def _bornologous_tables(src: FiniteEntourageSpace, dst: FiniteEntourageSpace) -> list:
    n, k = src.carrier.size, dst.carrier.size
    mx, my = src.max_ent.rows, dst.max_ent.rows
    pairs = [(i, j) for i in range(n) for j in bits(mx[i])]
    out = []
    for tab in product(range(k), repeat=n):
        if all(my[tab[i]] >> tab[j] & 1 for i, j in pairs):
            out.append(tab)
    return out


def equivalence_oracle(x: FiniteEntourageSpace, y: FiniteEntourageSpace) -> bool:
    """Definition-level search for a Sym-coarse equivalence between ``x`` and ``y``.

    Looks for bornologous ``f: x -> y`` and ``g: y -> x`` with ``g o f`` and
    ``f o g`` Sym-close to the identities.  Enumerates every map both ways.
    """
    n, k = x.carrier.size, y.carrier.size
    if k**n * n**k > ORACLE_LIMIT:
        raise ResourceCap(f"{k**n * n**k} map pairs exceed the oracle limit {ORACLE_LIMIT}")
    fs = _bornologous_tables(x, y)
    gs = _bornologous_tables(y, x)
    for f in fs:
        for g in gs:
            if _close_to_identity_sym([g[t] for t in f], x) and _close_to_identity_sym([f[s] for s in g], y):
                return True
    return False


def all_maps(src: FiniteEntourageSpace, dst: FiniteEntourageSpace):
    for tab in product(range(dst.carrier.size), repeat=src.carrier.size):
        yield SpaceMap(src, dst, tab)
