"""The functor tower Sym / USym / W / J and constructions on structures."""

from __future__ import annotations

import enum
from itertools import product as cartesian
from typing import Hashable, Mapping, NamedTuple, Sequence

from .errors import CarrierMismatch, EntourageError, ResourceCap
from .morphisms import SpaceMap
from .rel_core import (MAX_POINTS, Carrier, Entourage, compose, inverse, kernel,
                       pullback, pushforward, transitive_closure)
from .spaces import FiniteEntourageSpace, StructureClass


class FunctorTag(enum.Enum):
    SYM = "sym"
    USYM = "usym"
    W = "w"
    WSEMI = "wsemi"
    J = "j"

    @classmethod
    def parse(cls, text: str) -> "FunctorTag":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise EntourageError(f"unknown functor {text!r}") from None


def _closure(m: Entourage) -> Entourage:
    return transitive_closure(m)


def apply_functor(tag: FunctorTag, space: FiniteEntourageSpace) -> FiniteEntourageSpace:
    m = space.max_ent
    if tag is FunctorTag.SYM:
        out = m & inverse(m)
    elif tag is FunctorTag.USYM:
        out = m | inverse(m)
    elif tag is FunctorTag.W:
        out = _closure(m)
    elif tag is FunctorTag.WSEMI:
        out = _closure(m | inverse(m))
    elif tag is FunctorTag.J:
        out = inverse(m)
    else:  # pragma: no cover
        raise EntourageError(f"unhandled functor {tag}")
    return FiniteEntourageSpace(space.carrier, out, space.name)


def _closure_for(m: Entourage, cls: StructureClass) -> Entourage:
    if cls.is_semi:
        m = m | inverse(m)
    if cls.is_quasi:
        m = _closure(m)
    return m


def meet(s1: FiniteEntourageSpace, s2: FiniteEntourageSpace) -> FiniteEntourageSpace:
    if s1.carrier != s2.carrier:
        raise CarrierMismatch("meet needs a shared carrier")
    return FiniteEntourageSpace(s1.carrier, s1.max_ent & s2.max_ent)


def join(s1: FiniteEntourageSpace, s2: FiniteEntourageSpace,
         cls: StructureClass = StructureClass.ENTOURAGE) -> FiniteEntourageSpace:
    """Finest structure of class ``cls`` containing both inputs."""
    if s1.carrier != s2.carrier:
        raise CarrierMismatch("join needs a shared carrier")
    return FiniteEntourageSpace(s1.carrier, _closure_for(s1.max_ent | s2.max_ent, cls))


def initial(carrier: Carrier, table: Sequence[int] | Mapping[Hashable, Hashable],
            target: FiniteEntourageSpace) -> FiniteEntourageSpace:
    """Initial structure on ``carrier`` for a function into ``target``."""
    if isinstance(table, Mapping):
        table = tuple(target.carrier.index(table[x]) for x in carrier.labels)
    return FiniteEntourageSpace(carrier, pullback(target.max_ent, table, carrier))


class Product(NamedTuple):
    space: FiniteEntourageSpace
    projections: list


def _check_size(n: int) -> None:
    if n > MAX_POINTS:
        raise ResourceCap(f"construction needs {n} points, cap is {MAX_POINTS}")


def product(spaces: Sequence[FiniteEntourageSpace]) -> Product:
    if not spaces:
        raise EntourageError("product of an empty family")
    total = 1
    for s in spaces:
        total *= s.carrier.size
    _check_size(total)
    idx_tuples = list(cartesian(*[range(s.carrier.size) for s in spaces]))
    labels = tuple(",".join(str(s.carrier.labels[i]) for s, i in zip(spaces, t)) for t in idx_tuples)
    carrier = Carrier(labels)
    rows = []
    for a in idx_tuples:
        r = 0
        for k, b in enumerate(idx_tuples):
            if all(s.max_ent.rows[i] >> j & 1 for s, i, j in zip(spaces, a, b)):
                r |= 1 << k
        rows.append(r)
    space = FiniteEntourageSpace(carrier, Entourage(carrier, tuple(rows)))
    projections = [SpaceMap(space, s, tuple(t[c] for t in idx_tuples)) for c, s in enumerate(spaces)]
    return Product(space, projections)


class Coproduct(NamedTuple):
    space: FiniteEntourageSpace
    injections: list


def coproduct(spaces: Sequence[FiniteEntourageSpace]) -> Coproduct:
    if not spaces:
        raise EntourageError("coproduct of an empty family")
    _check_size(sum(s.carrier.size for s in spaces))
    labels, rows, injections_tabs = [], [], []
    offset = 0
    for k, s in enumerate(spaces):
        labels.extend(f"{k}.{lab}" for lab in s.carrier.labels)
        rows.extend(r << offset for r in s.max_ent.rows)
        injections_tabs.append(tuple(range(offset, offset + s.carrier.size)))
        offset += s.carrier.size
    carrier = Carrier(tuple(labels))
    space = FiniteEntourageSpace(carrier, Entourage(carrier, tuple(rows)))
    return Coproduct(space, [SpaceMap(s, space, tab) for s, tab in zip(spaces, injections_tabs)])


def _surjection(space: FiniteEntourageSpace, q, codomain: Carrier) -> tuple:
    if isinstance(q, Mapping):
        q = tuple(codomain.index(q[x]) for x in space.carrier.labels)
    q = tuple(q)
    if len(q) != space.carrier.size:
        raise EntourageError("quotient map must be total")
    if set(q) != set(range(codomain.size)):
        raise EntourageError("quotient map is not surjective")
    return q


def quotient(space: FiniteEntourageSpace, q, codomain: Carrier,
             cls: StructureClass = StructureClass.ENTOURAGE) -> FiniteEntourageSpace:
    """Quotient structure in the category of spaces of class ``cls``.

    The image structure ``(q x q)(M)`` is closed under the axioms of ``cls``
    (symmetric closure for semi-coarse, transitive closure for quasi-coarse),
    which leaves it unchanged whenever the image already has them.
    """
    q = _surjection(space, q, codomain)
    base = pushforward(space.max_ent, q, codomain)
    return FiniteEntourageSpace(codomain, _closure_for(base, cls))


def is_weakly_soft(space: FiniteEntourageSpace, q, codomain: Carrier) -> bool:
    q = _surjection(space, q, codomain)
    m = space.max_ent
    rq = kernel(q, space.carrier)
    return compose(compose(m, rq), m).issubset(compose(compose(rq, m), rq))


def quotient_is_transitive(space: FiniteEntourageSpace, q, codomain: Carrier) -> bool:
    q = _surjection(space, q, codomain)
    return pushforward(space.max_ent, q, codomain).is_transitive()


def partition_map(space: FiniteEntourageSpace, blocks: Sequence[Sequence[Hashable]]):
    """Surjection onto a partition; block ``k`` is labelled by its first member."""
    seen: dict = {}
    for k, block in enumerate(blocks):
        if not block:
            raise EntourageError("empty block in partition")
        for x in block:
            space.carrier.index(x)
            if x in seen:
                raise EntourageError(f"point {x!r} appears in two blocks")
            seen[x] = k
    missing = [x for x in space.carrier.labels if x not in seen]
    if missing:
        raise EntourageError(f"partition misses point {missing[0]!r}")
    codomain = Carrier(tuple(str(b[0]) if len(b) == 1 else "{" + ",".join(map(str, b)) + "}"
                             for b in blocks))
    return tuple(seen[x] for x in space.carrier.labels), codomain


def surjections(n: int, k: int):
    """All surjections ``range(n) -> range(k)`` as tuples."""
    for tab in cartesian(range(k), repeat=n):
        if len(set(tab)) == k:
            yield tab
