"""Extended semi-positive-definite maps, metric structures and window probes.

Values are exact: ints or :class:`fractions.Fraction`, with ``INF`` for the
extended value.  Balls are closed, ``B(x, R) = {y | d(x, y) <= R}``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .errors import CarrierMismatch, EntourageError, HypothesisError
from .rel_core import Carrier, Entourage, compose, inverse
from .spaces import FiniteEntourageSpace, classify

INF = math.inf


def as_value(v):
    if v == INF:
        return INF
    if isinstance(v, float):
        return Fraction(v).limit_denominator()
    v = Fraction(v)
    if v < 0:
        raise EntourageError(f"negative weight {v}")
    return v.numerator if v.denominator == 1 else v


def format_value(v) -> str:
    return "inf" if v == INF else str(v)


@dataclass(frozen=True)
class WeightTable:
    carrier: Carrier
    d: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.carrier.size
        d = tuple(tuple(as_value(v) for v in row) for row in self.d)
        if len(d) != n or any(len(row) != n for row in d):
            raise EntourageError("weight table must be square over the carrier")
        for i in range(n):
            if d[i][i] != 0:
                raise EntourageError(f"d(x, x) must be 0, got {d[i][i]} at {self.carrier.labels[i]!r}")
        object.__setattr__(self, "d", d)

    @classmethod
    def from_function(cls, carrier: Carrier, fn: Callable, name: str = "") -> "WeightTable":
        labs = carrier.labels
        return cls(carrier, tuple(tuple(fn(x, y) for y in labs) for x in labs), name)

    def __call__(self, x, y):
        return self.d[self.carrier.index(x)][self.carrier.index(y)]

    def finite_values(self) -> list:
        return sorted({v for row in self.d for v in row if v != INF})


class WeightFlags(NamedTuple):
    symmetric: bool
    triangle: bool
    separated: bool
    extended: bool

    @property
    def kind(self) -> str:
        if self.symmetric and self.triangle:
            base = "pseudometric"
        elif self.triangle:
            base = "quasi-pseudometric"
        elif self.symmetric:
            base = "semi-pseudometric"
        else:
            base = "semi-positive-definite map"
        if self.separated and base.endswith("pseudometric"):
            base = base.replace("pseudometric", "metric")
        return ("extended " if self.extended else "") + base


def classify_weight(w: WeightTable) -> WeightFlags:
    d = w.d
    n = len(d)
    symmetric = all(d[i][j] == d[j][i] for i in range(n) for j in range(i))
    triangle = all(d[i][j] <= d[i][k] + d[k][j] for i in range(n) for j in range(n) for k in range(n))
    separated = all(d[i][j] != 0 for i in range(n) for j in range(n) if i != j)
    extended = any(v == INF for row in d for v in row)
    return WeightFlags(symmetric, triangle, separated, extended)


def entourage_at(w: WeightTable, radius) -> Entourage:
    """``E_R``: pairs at distance at most ``radius``."""
    rows = []
    for row in w.d:
        r = 0
        for j, v in enumerate(row):
            if v <= radius:
                r |= 1 << j
        rows.append(r)
    return Entourage(w.carrier, tuple(rows))


@dataclass(frozen=True)
class Chain:
    carrier: Carrier
    levels: tuple

    def __post_init__(self):
        levels = tuple(self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise EntourageError("a chain needs at least the diagonal level")
        if levels[0] != Entourage.diagonal(self.carrier):
            raise EntourageError("a chain starts at the diagonal")
        for a, b in zip(levels, levels[1:]):
            if b.carrier != self.carrier:
                raise CarrierMismatch("chain level on another carrier")
            if not a.issubset(b):
                raise EntourageError("chain levels must increase")

    @property
    def top(self) -> Entourage:
        return self.levels[-1]

    def at(self, n: int) -> Entourage:
        return self.levels[min(n, len(self.levels) - 1)]


class MetricStructure(NamedTuple):
    space: FiniteEntourageSpace
    chain: Chain
    radii: tuple


def structure_from_weight(w: WeightTable) -> MetricStructure:
    """The metric structure of ``w`` with its chain of closed-ball entourages.

    ``chain.levels[k + 1] == E_{radii[k]}`` for the ascending distinct finite
    values ``radii`` of ``w``; ``levels[0]`` is the diagonal.
    """
    radii = tuple(w.finite_values())
    levels = [Entourage.diagonal(w.carrier)] + [entourage_at(w, r) for r in radii]
    chain = Chain(w.carrier, tuple(levels))
    return MetricStructure(FiniteEntourageSpace(w.carrier, chain.top, w.name), chain, radii)


def weight_from_chain(c: Chain, name: str = "") -> WeightTable:
    n = c.carrier.size
    d = [[INF] * n for _ in range(n)]
    for level, e in enumerate(c.levels):
        for i, j in e.index_pairs():
            if d[i][j] == INF:
                d[i][j] = level
    return WeightTable(c.carrier, tuple(map(tuple, d)), name)


def subadditive_chain(space: FiniteEntourageSpace) -> Chain:
    """Chain ``(diagonal, M)``; ``F_m o F_n <= F_{m+n}`` because ``M`` is transitive."""
    if not classify(space).is_quasi:
        raise HypothesisError("subadditive chains need a quasi-coarse space")
    return Chain(space.carrier, (Entourage.diagonal(space.carrier), space.max_ent))


class ChainFlags(NamedTuple):
    weakly_upper_multiplicative: bool
    upper_multiplicative: bool
    upper_symmetric: bool
    symmetric_witness: dict

    @property
    def kind(self) -> str:
        semi = self.weakly_upper_multiplicative and self.upper_symmetric
        quasi = self.upper_multiplicative
        if semi and quasi:
            return "ballean"
        if quasi:
            return "quasi-ballean"
        if semi:
            return "semi-ballean"
        return "ball structure"


def _least_level(levels: Sequence[Entourage], target: Entourage) -> Optional[int]:
    for t, e in enumerate(levels):
        if target.issubset(e):
            return t
    return None


def classify_chain(c: Chain) -> ChainFlags:
    """Ball-structure predicates with ``B(x, n) = F_n[x]`` over the chain's radii.

    ``symmetric_witness[r]`` is the least ``r'`` with ``B*(x, r) <= B(x, r')``.
    """
    levels = c.levels
    k = len(levels)
    weakly = all(_least_level(levels, levels[r] | levels[s]) is not None
                 for r in range(k) for s in range(r, k))
    upper = all(_least_level(levels, compose(levels[r], levels[s])) is not None
                for r in range(k) for s in range(k))
    witness = {}
    for r in range(k):
        t = _least_level(levels, inverse(levels[r]))
        if t is not None:
            witness[r] = t
    return ChainFlags(weakly, upper, len(witness) == k, witness)


# -- windowed families over the integers ------------------------------------------


def _quasi_sym_z(m, n):
    return n - m if m <= n else 2 * (m - n)


def _cubic_skew(x, y):
    base = abs(x - y)
    lift = y**3 - x**3
    return base + lift if lift >= 0 else base


def _min_semi(m, n):
    return 0 if m == n else min(m, n)


def _drop_quasi(m, n):
    return 0 if n > m else m - n


def _zsq_semi(p, q):
    (x, y), (z, w) = p, q
    if y == w:
        return abs(x - z)
    if x == z:
        return abs(y - w)
    return INF


def _zsq_d1(p, q):
    (x, y), (z, w) = p, q
    return abs(x - z) if y == w else INF


def _zsq_d2(p, q):
    (x, y), (z, w) = p, q
    return abs(y - w) if x == z else INF


# name -> (formula, planar, natural-numbers-only)
FAMILIES = {
    "quasi_sym_Z": (_quasi_sym_z, False, False),
    "cubic_skew": (_cubic_skew, False, False),
    "min_semi": (_min_semi, False, True),
    "drop_quasi": (_drop_quasi, False, True),
    "zsq_semi": (_zsq_semi, True, False),
    "zsq_d1": (_zsq_d1, True, False),
    "zsq_d2": (_zsq_d2, True, False),
    "euclidean": (lambda m, n: abs(m - n), False, False),
    "unit": (lambda m, n: 0 if m == n else 1, False, False),
}


@dataclass(frozen=True)
class WeightFamily:
    name: str
    lo: int
    hi: int

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise EntourageError(f"unknown weight family {self.name!r}; known: {', '.join(sorted(FAMILIES))}")
        if self.lo > self.hi:
            raise EntourageError("window must satisfy lo <= hi")
        if FAMILIES[self.name][2] and self.lo < 0:
            raise EntourageError(f"{self.name} lives on the natural numbers; window must start at 0 or above")

    @property
    def formula(self) -> Callable:
        return FAMILIES[self.name][0]

    def points(self) -> list:
        line = range(self.lo, self.hi + 1)
        if FAMILIES[self.name][1]:
            return [(x, y) for x in line for y in line]
        return list(line)

    def distance(self, a, b):
        return as_value(self.formula(a, b))

    def table(self) -> WeightTable:
        pts = self.points()
        labels = tuple(f"{p[0]}:{p[1]}" if isinstance(p, tuple) else str(p) for p in pts)
        f = self.formula
        d = tuple(tuple(f(a, b) for b in pts) for a in pts)
        return WeightTable(Carrier(labels), d, f"{self.name}[{self.lo},{self.hi}]")


class Outcome(enum.Enum):
    HOLDS_UP_TO_BOUND = "holds-up-to-bound"
    COUNTEREXAMPLE = "counterexample"


class Verdict(NamedTuple):
    outcome: Outcome
    bound: object = None
    witness: Optional[tuple] = None
    value: object = None
    required: object = None

    def __bool__(self):
        return self.outcome is Outcome.HOLDS_UP_TO_BOUND


def probe_inverse_bound(fam: WeightFamily, radius, s_max) -> Verdict:
    """Smallest ``S <= s_max`` with ``E_R^{-1} <= E_S`` on the window.

    On failure the witness is the lexicographically least ``(x, y)`` in
    ``E_R`` whose reverse distance ``d(y, x)`` exceeds ``s_max``.
    """
    radius, s_max = as_value(radius), as_value(s_max)
    if s_max < radius:
        raise EntourageError("s_max must be at least the radius")
    pts = fam.points()
    dist = fam.distance
    required = 0
    witness = None
    found_pair = False
    for x in pts:
        for y in pts:
            if x == y or dist(x, y) > radius:
                continue
            found_pair = True
            back = dist(y, x)
            required = max(required, back)
            if back > s_max and witness is None:
                witness = (x, y, back)
    if not found_pair:
        raise EntourageError(f"window [{fam.lo}, {fam.hi}] has no pair at distance <= {radius}")
    if witness is None:
        return Verdict(Outcome.HOLDS_UP_TO_BOUND, bound=required, required=required)
    x, y, back = witness
    return Verdict(Outcome.COUNTEREXAMPLE, bound=s_max, witness=(x, y), value=back, required=required)


def probe_b3_radius(name: str, windows: Sequence[tuple]) -> list:
    """Least ``R`` with ``X_w x X_w <= E_R`` for each window ``(lo, hi)``."""
    out = []
    prev = None
    for lo, hi in windows:
        if prev is not None and (lo > prev[0] or hi < prev[1]):
            raise EntourageError("windows must be ascending (nested, growing)")
        fam = WeightFamily(name, lo, hi)
        pts = fam.points()
        worst = max((fam.distance(a, b) for a in pts for b in pts), default=0)
        out.append(((lo, hi), worst))
        prev = (lo, hi)
    return out
