"""Finite magmas from multiplication tables, ideals and the induced structures.

Ideals on a finite magma are principal: an ideal is all subsets of its
union ``U``, so every ideal-kind condition becomes a closure condition on
``U``.  ``side_structure(t, U, "left")`` has principal entourage
``{(x, x*k) | k in U}`` and the right one ``{(x, k*x) | k in U}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterable, NamedTuple, Optional, Sequence

from .errors import EntourageError, HypothesisError
from .morphisms import SpaceMap, is_bornologous, is_effectively_proper
from .rel_core import Carrier, Entourage
from .spaces import FiniteEntourageSpace, StructureClass, classify

SIDES = ("left", "right")


@dataclass(frozen=True)
class MagmaTable:
    elements: Carrier
    op: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.elements.size
        op = tuple(tuple(row) for row in self.op)
        if len(op) != n or any(len(row) != n for row in op):
            raise EntourageError("multiplication table must be n x n")
        if any(not 0 <= v < n for row in op for v in row):
            raise EntourageError("multiplication table leaves the element set")
        object.__setattr__(self, "op", op)

    @classmethod
    def from_function(cls, labels: Sequence[Hashable], mul, name: str = "") -> "MagmaTable":
        carrier = Carrier(tuple(labels))
        idx = carrier.index
        return cls(carrier, tuple(tuple(idx(mul(a, b)) for b in carrier.labels) for a in carrier.labels), name)

    @classmethod
    def from_rows(cls, labels: Sequence[Hashable], rows: Sequence[Sequence[Hashable]], name: str = "") -> "MagmaTable":
        carrier = Carrier(tuple(labels))
        return cls(carrier, tuple(tuple(carrier.index(v) for v in row) for row in rows), name)

    @property
    def size(self) -> int:
        return self.elements.size

    def mul(self, a: int, b: int) -> int:
        return self.op[a][b]

    def __call__(self, a, b):
        labs = self.elements.labels
        return labs[self.op[self.elements.index(a)][self.elements.index(b)]]

    @property
    def identity(self) -> Optional[int]:
        n = self.size
        for e in range(n):
            if all(self.op[e][g] == g and self.op[g][e] == g for g in range(n)):
                return e
        return None

    def mask(self, labels: Iterable[Hashable]) -> int:
        return self.elements.mask(labels)

    def product_set(self, u: int, v: int) -> int:
        out = 0
        for a in range(self.size):
            if u >> a & 1:
                for b in range(self.size):
                    if v >> b & 1:
                        out |= 1 << self.op[a][b]
        return out


class AlgebraProfile(NamedTuple):
    unitary: bool
    associative: bool
    loop: bool
    group: bool
    abelian: bool
    right_ip: bool
    left_ip: bool
    two_sided_inverses: bool

    @property
    def monoid(self) -> bool:
        return self.unitary and self.associative


def _is_latin(t: MagmaTable) -> bool:
    n = t.size
    full = set(range(n))
    return all(set(row) == full for row in t.op) and all({t.op[a][b] for a in range(n)} == full for b in range(n))


def classify_magma(t: MagmaTable) -> AlgebraProfile:
    n = t.size
    op = t.op
    e = t.identity
    unitary = e is not None
    associative = all(op[op[a][b]][c] == op[a][op[b][c]] for a in range(n) for b in range(n) for c in range(n))
    abelian = all(op[a][b] == op[b][a] for a in range(n) for b in range(a))
    loop = unitary and _is_latin(t)
    right_ip = left_ip = two_sided = False
    if loop:
        lam, rho = _inverse_tables(t)
        right_ip = all(op[op[g][h]][rho[h]] == g for g in range(n) for h in range(n))
        left_ip = all(op[lam[g]][op[g][h]] == h for g in range(n) for h in range(n))
        two_sided = lam == rho
    return AlgebraProfile(unitary, associative, loop, loop and associative, abelian, right_ip, left_ip, two_sided)


def _inverse_tables(t: MagmaTable) -> tuple:
    e = t.identity
    n = t.size
    rho = tuple(next(x for x in range(n) if t.op[g][x] == e) for g in range(n))
    lam = tuple(next(y for y in range(n) if t.op[y][g] == e) for g in range(n))
    return lam, rho


def loop_inverses(t: MagmaTable) -> tuple:
    """``(lambda, rho)`` as label dicts: ``lambda(g) * g = e = g * rho(g)``."""
    if not classify_magma(t).loop:
        raise HypothesisError(f"{t.name or 'table'} is not a loop")
    lam, rho = _inverse_tables(t)
    labs = t.elements.labels
    for g in range(t.size):
        assert lam[rho[g]] == g and rho[lam[g]] == g
    return ({labs[g]: labs[lam[g]] for g in range(t.size)},
            {labs[g]: labs[rho[g]] for g in range(t.size)})


def is_monoid(t: MagmaTable) -> bool:
    return classify_magma(t).monoid


class IdealFlags(NamedTuple):
    magmatic: bool
    monoid_ideal: bool
    left_loop: bool
    right_loop: bool
    loop_ideal: bool
    group_ideal: bool


def _check_unit(t: MagmaTable, u: int) -> int:
    e = t.identity
    if e is None:
        raise HypothesisError("ideals are defined on unitary magmas")
    if not u >> e & 1:
        raise HypothesisError("the ideal must contain the identity")
    return e


def _map_mask(table: Sequence[int], u: int) -> int:
    out = 0
    for a, b in enumerate(table):
        if u >> a & 1:
            out |= 1 << b
    return out


def classify_ideal(t: MagmaTable, u: Iterable[Hashable]) -> IdealFlags:
    u = t.mask(u)
    _check_unit(t, u)
    prof = classify_magma(t)
    closed = t.product_set(u, u) & ~u == 0
    left = right = False
    if prof.loop:
        lam, rho = _inverse_tables(t)
        left = _map_mask(lam, u) & ~u == 0
        right = _map_mask(rho, u) & ~u == 0
    loop_ideal = left and right
    # on a principal ideal the magmatic and monoid conditions are both U*U <= U
    return IdealFlags(closed, closed, left, right, loop_ideal, prof.group and closed and loop_ideal)


def side_entourage(t: MagmaTable, u: int, side: str) -> Entourage:
    if side not in SIDES:
        raise EntourageError(f"side must be 'left' or 'right', got {side!r}")
    n = t.size
    rows = []
    for x in range(n):
        r = 1 << x
        for k in range(n):
            if u >> k & 1:
                r |= 1 << (t.op[x][k] if side == "left" else t.op[k][x])
        rows.append(r)
    return Entourage(t.elements, tuple(rows))


def side_structure(t: MagmaTable, u: Iterable[Hashable], side: str = "left") -> FiniteEntourageSpace:
    u = t.mask(u)
    _check_unit(t, u)
    return FiniteEntourageSpace(t.elements, side_entourage(t, u, side), t.name)


def promised_class(t: MagmaTable, u: Iterable[Hashable], side: str = "left") -> StructureClass:
    """Weakest class the algebraic hypotheses guarantee for ``side_structure``."""
    prof = classify_magma(t)
    flags = classify_ideal(t, u)
    if side == "left":
        semi = prof.loop and prof.right_ip and flags.right_loop
    else:
        semi = prof.loop and prof.left_ip and flags.left_loop
    quasi = prof.monoid and flags.monoid_ideal
    return StructureClass.of(semi, quasi)


def shifts(t: MagmaTable, space: FiniteEntourageSpace, side: str = "left") -> list:
    n = t.size
    if side == "left":
        tabs = [tuple(t.op[x][y] for y in range(n)) for x in range(n)]
    else:
        tabs = [tuple(t.op[y][x] for y in range(n)) for x in range(n)]
    return [SpaceMap(space, space, tab) for tab in tabs]


def equi_bornologous(maps: Sequence[SpaceMap]) -> bool:
    if not maps:
        return True
    src, dst = maps[0].src, maps[0].dst
    for f in maps:
        if f.src != src or f.dst != dst or f.src.carrier != src.carrier:
            raise EntourageError("equi-bornologous families need a shared source and target")
    # the union of bounded images is bounded iff each image sits inside M_dst
    return all(is_bornologous(f) for f in maps)


class IdealRecovery(NamedTuple):
    ideal: frozenset
    magmatic: bool
    contained: bool
    equal: bool
    case: str
    claim_holds: bool


def recover_ideal(space: FiniteEntourageSpace, t: MagmaTable) -> IdealRecovery:
    """Recover ``U = M[e]`` from a structure whose left shifts are equi-bornologous.

    ``case`` names the strongest applicable clause: ``"d"`` (group, coarse:
    equality), ``"c"`` (monoid, quasi-coarse: monoid ideal and containment),
    ``"b"`` (inverse-property loop with two-sided inverses, semi-coarse:
    equality) or ``"a"`` (containment only).
    """
    if space.carrier != t.elements:
        raise EntourageError("space and table live on different carriers")
    e = t.identity
    if e is None:
        raise HypothesisError("recovery needs a unitary magma")
    if not equi_bornologous(shifts(t, space, "left")):
        raise HypothesisError("left shifts are not equi-bornologous for this structure")
    u = space.max_ent.rows[e]
    induced = side_entourage(t, u, "left")
    contained = induced.issubset(space.max_ent)
    equal = induced == space.max_ent
    magmatic = t.product_set(u, u) & ~u == 0
    prof = classify_magma(t)
    cls = classify(space)
    if prof.group and cls is StructureClass.COARSE:
        case, claim = "d", equal and magmatic
    elif prof.monoid and cls.is_quasi:
        case, claim = "c", contained and magmatic
    elif prof.loop and prof.left_ip and prof.right_ip and prof.two_sided_inverses and cls.is_semi:
        case, claim = "b", equal
    else:
        case, claim = "a", contained
    return IdealRecovery(frozenset(t.elements.labels_of(u)), magmatic, contained, equal, case, claim)


class HomProfile(NamedTuple):
    forward_ideal: bool
    left_bornologous: bool
    right_bornologous: bool
    bornologous_consistent: bool
    preimage_ideal: Optional[bool]
    left_effectively_proper: Optional[bool]
    proper_consistent: Optional[bool]
    preserves_inverses: Optional[bool]
    image_subloop: Optional[bool]
    image_two_sided: Optional[bool]


def is_homomorphism(table: Sequence[int], tm: MagmaTable, tn: MagmaTable) -> bool:
    em, en = tm.identity, tn.identity
    if em is None or en is None or table[em] != en:
        return False
    n = tm.size
    return all(table[tm.op[g][h]] == tn.op[table[g]][table[h]] for g in range(n) for h in range(n))


def _is_subloop(tn: MagmaTable, s: int) -> bool:
    n = tn.size
    members = [a for a in range(n) if s >> a & 1]
    if tn.product_set(s, s) & ~s:
        return False
    for a in members:
        for b in members:
            x = next(x for x in range(n) if tn.op[a][x] == b)
            y = next(y for y in range(n) if tn.op[y][a] == b)
            if not (s >> x & 1 and s >> y & 1):
                return False
    return True


def hom_profile(f, tm: MagmaTable, tn: MagmaTable, u_m: Iterable[Hashable], u_n: Iterable[Hashable]) -> HomProfile:
    if isinstance(f, dict):
        f = tuple(tn.elements.index(f[x]) for x in tm.elements.labels)
    f = tuple(f)
    if not is_homomorphism(f, tm, tn):
        raise HypothesisError("map is not a homomorphism of unitary magmas")
    um, un = tm.mask(u_m), tn.mask(u_n)
    _check_unit(tm, um)
    _check_unit(tn, un)
    forward = _map_mask(f, um) & ~un == 0
    bl = is_bornologous(SpaceMap(side_structure(tm, tm.elements.labels_of(um), "left"),
                                 side_structure(tn, tn.elements.labels_of(un), "left"), f))
    br = is_bornologous(SpaceMap(side_structure(tm, tm.elements.labels_of(um), "right"),
                                 side_structure(tn, tn.elements.labels_of(un), "right"), f))
    pm, pn = classify_magma(tm), classify_magma(tn)
    pre = eff = proper_ok = inv = sub = two = None
    if pm.loop and pn.loop:
        lm, rm = _inverse_tables(tm)
        ln, rn = _inverse_tables(tn)
        inv = all(f[lm[x]] == ln[f[x]] and f[rm[x]] == rn[f[x]] for x in range(tm.size))
        image = _map_mask(f, tm.elements.full_mask)
        sub = _is_subloop(tn, image)
        if pm.two_sided_inverses:
            two = all(ln[y] == rn[y] for y in range(tn.size) if image >> y & 1)
        ip = pm.left_ip and pm.right_ip and pn.left_ip and pn.right_ip
        if ip and pm.two_sided_inverses:
            preimage = sum(1 << x for x in range(tm.size) if un >> f[x] & 1)
            pre = preimage & ~um == 0
            eff = is_effectively_proper(SpaceMap(side_structure(tm, tm.elements.labels_of(um), "left"),
                                                 side_structure(tn, tn.elements.labels_of(un), "left"), f))
            proper_ok = pre == eff
    return HomProfile(forward, bl, br, forward == bl == br, pre, eff, proper_ok, inv, sub, two)


def inversion_map(t: MagmaTable, space_src: FiniteEntourageSpace, space_dst: FiniteEntourageSpace) -> SpaceMap:
    if not classify_magma(t).group:
        raise HypothesisError("inversion needs a group")
    lam, _ = _inverse_tables(t)
    return SpaceMap(space_src, space_dst, lam)


def inverse_set(t: MagmaTable, u: Iterable[Hashable]) -> list:
    lam, _ = _inverse_tables(t)
    return t.elements.labels_of(_map_mask(lam, t.mask(u)))


# -- catalog -------------------------------------------------------------------------


def cyclic(n: int) -> MagmaTable:
    return MagmaTable.from_function([str(i) for i in range(n)], lambda a, b: str((int(a) + int(b)) % n), f"Z{n}")


def _s3() -> MagmaTable:
    perms = sorted(permutations(range(3)))
    names = {p: "".join(map(str, p)) for p in perms}
    # element "012" is the identity; product is composition (p*q)(i) = p(q(i))
    return MagmaTable.from_function([names[p] for p in perms],
                                    lambda a, b: "".join(a[int(b[i])] for i in range(3)), "S3")


def _idempotent_monoid() -> MagmaTable:
    return MagmaTable.from_rows(["e", "a"], [["e", "a"], ["a", "a"]], "idem2")


def _loop5() -> MagmaTable:
    rows = [
        "e a b c d",
        "a e c d b",
        "b d a e c",
        "c b d a e",
        "d c e b a",
    ]
    return MagmaTable.from_rows(list("eabcd"), [r.split() for r in rows], "loop5")


def _steiner10() -> MagmaTable:
    pts = [(a, b) for a in range(3) for b in range(3)]
    labels = ["e"] + [f"p{a}{b}" for a, b in pts]

    def parse(s):
        return None if s == "e" else (int(s[1]), int(s[2]))

    def mul(x, y):
        px, py = parse(x), parse(y)
        if px is None:
            return y
        if py is None:
            return x
        if px == py:
            return "e"
        # third point on the affine line through x and y
        return "p{}{}".format((-px[0] - py[0]) % 3, (-px[1] - py[1]) % 3)

    return MagmaTable.from_function(labels, mul, "steiner10")


CATALOG = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z6": lambda: cyclic(6),
    "S3": _s3,
    "idem2": _idempotent_monoid,
    "loop5": _loop5,
    "steiner10": _steiner10,
}


def catalog(name: str) -> MagmaTable:
    try:
        return CATALOG[name]()
    except KeyError:
        raise EntourageError(f"unknown catalog table {name!r}") from None


def subsets_with(t: MagmaTable, element: int):
    """Every subset mask of ``t`` containing ``element``."""
    n = t.size
    for m in range(1 << n):
        if m >> element & 1:
            yield m

