"""Directed graphs, path quasi-metrics, Cayley digraphs and word quasi-metrics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

from .algebra import MagmaTable, classify_magma
from .errors import EntourageError, HypothesisError
from .morphisms import SpaceMap, is_bornologous
from .rel_core import Carrier, Entourage, bits
from .spaces import FiniteEntourageSpace, classify, connectivity
from .weights import INF, MetricStructure, WeightTable, classify_weight, structure_from_weight


@dataclass(frozen=True)
class DiGraph:
    vertices: Carrier
    succ: tuple  # bit row of out-neighbours per vertex
    name: str = field(default="", compare=False)

    def __post_init__(self):
        succ = tuple(self.succ)
        if len(succ) != self.vertices.size:
            raise EntourageError("one successor row per vertex")
        full = self.vertices.full_mask
        if any(r & ~full for r in succ):
            raise EntourageError("edge leaves the vertex set")
        object.__setattr__(self, "succ", succ)

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable[tuple], name: str = "") -> "DiGraph":
        carrier = vertices if isinstance(vertices, Carrier) else Carrier(tuple(vertices))
        rows = [0] * carrier.size
        for a, b in edges:
            rows[carrier.index(a)] |= 1 << carrier.index(b)
        return cls(carrier, tuple(rows), name)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.succ[i] >> j & 1)

    def edges(self) -> list:
        labs = self.vertices.labels
        return [(labs[i], labs[j]) for i, r in enumerate(self.succ) for j in bits(r)]

    def to_dot(self) -> str:
        labs = self.vertices.labels
        out = [f'digraph "{self.name or "G"}" {{']
        out += [f'  "{v}";' for v in labs]
        out += [f'  "{labs[i]}" -> "{labs[j]}";' for i, r in enumerate(self.succ) for j in bits(r)]
        out.append("}")
        return "\n".join(out) + "\n"


def _bfs(succ: Sequence[int], start: int) -> list:
    dist = [INF] * len(succ)
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in bits(succ[v]):
            if dist[w] == INF:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def path_weight(g: DiGraph) -> WeightTable:
    d = tuple(tuple(_bfs(g.succ, v)) for v in range(g.vertices.size))
    return WeightTable(g.vertices, d, g.name)


def graphic_structure(g: DiGraph) -> MetricStructure:
    return structure_from_weight(path_weight(g))


class HomCheck(NamedTuple):
    homomorphism: bool
    non_expanding: bool | None
    bornologous: bool | None


def is_graph_homomorphism(f: Sequence[int] | Mapping, g1: DiGraph, g2: DiGraph) -> HomCheck:
    if isinstance(f, Mapping):
        f = tuple(g2.vertices.index(f[v]) for v in g1.vertices.labels)
    f = tuple(f)
    if len(f) != g1.vertices.size:
        raise EntourageError("vertex map must be total")
    hom = all(f[i] == f[j] or g2.has_edge(f[i], f[j])
              for i, r in enumerate(g1.succ) for j in bits(r))
    if not hom:
        return HomCheck(False, None, None)
    d1, d2 = path_weight(g1).d, path_weight(g2).d
    n = g1.vertices.size
    non_exp = all(d2[f[x]][f[y]] <= d1[x][y] for x in range(n) for y in range(n))
    s1, s2 = graphic_structure(g1).space, graphic_structure(g2).space
    return HomCheck(True, non_exp, is_bornologous(SpaceMap(s1, s2, f)))


def graphic_realization(space: FiniteEntourageSpace) -> DiGraph:
    """Graph on the carrier with edge set ``M`` minus the diagonal."""
    if not classify(space).is_quasi:
        raise HypothesisError("graphic realization needs a quasi-coarse space")
    if not connectivity(space).connected:
        raise HypothesisError("graphic realization needs a connected space")
    rows = tuple(r & ~(1 << i) for i, r in enumerate(space.max_ent.rows))
    return DiGraph(space.carrier, rows, space.name)


def _require_monoid(m: MagmaTable) -> None:
    if not classify_magma(m).monoid:
        raise HypothesisError(f"{m.name or 'table'} is not a monoid")


def _sides(side: str) -> None:
    if side not in ("left", "right"):
        raise EntourageError(f"side must be 'left' or 'right', got {side!r}")


def cayley(m: MagmaTable, sigma: Iterable[Hashable], side: str = "left") -> DiGraph:
    _require_monoid(m)
    _sides(side)
    gens = sorted(m.elements.index(s) for s in sigma)
    rows = []
    for x in range(m.size):
        r = 0
        for s in gens:
            r |= 1 << (m.op[x][s] if side == "left" else m.op[s][x])
        rows.append(r)
    return DiGraph(m.elements, tuple(rows), f"Cay_{side}({m.name})")


class WordMetric(NamedTuple):
    weight: WeightTable
    non_expanding: bool
    invariant: bool | None


def word_weight(m: MagmaTable, sigma: Iterable[Hashable], side: str = "left") -> WordMetric:
    """Word quasi-metric plus the shift checks.

    For the left metric the shifts are ``y -> z*y``; for the right one
    ``y -> y*z``.  ``invariant`` is only decided for groups.
    """
    w = path_weight(cayley(m, sigma, side))
    d = w.d
    n = m.size

    def shift(z, x):
        return m.op[z][x] if side == "left" else m.op[x][z]

    non_exp = all(d[shift(z, x)][shift(z, y)] <= d[x][y] for z in range(n) for x in range(n) for y in range(n))
    invariant = None
    if classify_magma(m).group:
        invariant = all(d[shift(z, x)][shift(z, y)] == d[x][y]
                        for z in range(n) for x in range(n) for y in range(n))
    return WordMetric(w, non_exp, invariant)


def generates(m: MagmaTable, sigma: Iterable[Hashable]) -> bool:
    e = m.identity
    return INF not in _bfs(cayley(m, sigma, "left").succ, e)


class GenInvariance(NamedTuple):
    equal_structures: bool
    k: int
    l: int
    lipschitz: bool


def gen_invariance(m: MagmaTable, sigma: Iterable[Hashable], delta: Iterable[Hashable]) -> GenInvariance:
    sigma, delta = list(sigma), list(delta)
    _require_monoid(m)
    for name, gens in (("sigma", sigma), ("delta", delta)):
        if not generates(m, gens):
            raise HypothesisError(f"{name} does not generate the monoid")
    ds = word_weight(m, sigma).weight
    dd = word_weight(m, delta).weight
    e = m.identity
    idx = m.elements.index
    k = max(dd.d[e][idx(s)] for s in sigma)
    l_ = max(ds.d[e][idx(t)] for t in delta)
    n = m.size
    lip = all(dd.d[x][y] <= k * ds.d[x][y] and ds.d[x][y] <= l_ * dd.d[x][y]
              for x in range(n) for y in range(n))
    equal = structure_from_weight(ds).space == structure_from_weight(dd).space
    return GenInvariance(equal, k, l_, lip)


def is_extended_quasi_metric(w: WeightTable) -> bool:
    return classify_weight(w).triangle


def edge_entourage(g: DiGraph) -> Entourage:
    return Entourage(g.vertices, tuple(r | 1 << i for i, r in enumerate(g.succ)))
