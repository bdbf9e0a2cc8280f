"""One test per acceptance criterion; each records PASS/FAIL and its timing."""

import time
from contextlib import contextmanager
from pathlib import Path

import conftest
import oracle
from entourage.algebra import CATALOG, catalog, classify_magma, side_structure
from entourage.functors import FunctorTag, apply_functor, is_weakly_soft, quotient_is_transitive, surjections
from entourage.graphs import cayley, gen_invariance, graphic_realization, graphic_structure, path_weight, word_weight
from entourage.hyper import exp_space, hyper_space, lift_table, nonempty
from entourage.morphisms import SpaceMap, all_maps, equivalence_oracle, is_bornologous, profile, sym_coarse_equivalence
from entourage.rel_core import Carrier, Entourage
from entourage.spaces import FiniteEntourageSpace, all_spaces, boundedness, classify, connectivity
from entourage.weights import INF, WeightFamily, probe_inverse_bound, structure_from_weight, subadditive_chain, weight_from_chain


class Check:
    def __init__(self):
        self.ok = True
        self.notes = []

    def __call__(self, cond, note=""):
        if not cond:
            self.ok = False
            if len(self.notes) < 5:
                self.notes.append(note)


@contextmanager
def criterion(number, title, limit):
    chk = Check()
    start = time.perf_counter()
    yield chk
    seconds = time.perf_counter() - start
    ok = chk.ok and seconds <= limit
    conftest.ACCEPTANCE.append((number, title, ok, seconds, limit))
    assert chk.ok, chk.notes
    assert seconds <= limit, f"took {seconds:.3f}s, limit {limit}s"


def spaces_upto(n):
    return [s for k in range(1, n + 1) for s in all_spaces(Carrier.range(k))]


def test_criterion_01_worked_example():
    c = Carrier(("0", "1", "2"))
    diag = Entourage.diagonal(c)
    e1 = FiniteEntourageSpace(c, diag | Entourage.from_pairs(c, [("0", "1"), ("0", "2"), ("1", "0"), ("2", "0")]))
    e2 = FiniteEntourageSpace(c, diag | Entourage.from_pairs(c, [("0", "1"), ("0", "2")]))

    def run():
        return ([tuple(boundedness(s, c.labels)) for s in (e1, e2)], classify(e1), classify(e2))

    run()  # warm caches so the timing reflects the computation itself
    with criterion(1, "worked example boundedness and classes", 0.001) as chk:
        bounds, k1, k2 = run()
        chk(bounds == [(True, False, False)] * 2, bounds)
        chk(k1.is_semi and not k1.is_quasi, k1)
        chk(k2.is_quasi and not k2.is_semi, k2)


def test_criterion_02_census():
    with criterion(2, "three-point census against the axiom oracle", 1) as chk:
        pts = ["0", "1", "2"]
        c = Carrier(tuple(pts))
        lib = {"semi": 0, "quasi": 0, "coarse": 0}
        ref = {"semi": 0, "quasi": 0, "coarse": 0}
        for s in all_spaces(c):
            k = classify(s)
            lib["semi"] += k.is_semi
            lib["quasi"] += k.is_quasi
            lib["coarse"] += k.is_semi and k.is_quasi
            semi, quasi = oracle.structure_kind(pts, set(s.max_ent.pairs()))
            chk((semi, quasi) == (k.is_semi, k.is_quasi), s)
            ref["semi"] += semi
            ref["quasi"] += quasi
            ref["coarse"] += semi and quasi
        equivalences = {frozenset(oracle.equivalence_relation(p)) for p in oracle.set_partitions(pts)}
        chk(lib == ref, (lib, ref))
        chk(lib["coarse"] == len(equivalences) == 5, lib)
        chk((lib["semi"], lib["quasi"]) == (8, 29), lib)


def test_criterion_03_functor_extremality():
    with criterion(3, "functors are extremal among all 64 structures", 5) as chk:
        spaces = list(all_spaces(Carrier(("0", "1", "2"))))
        kinds = {s: classify(s) for s in spaces}

        def sub(a, b):
            return a.max_ent.issubset(b.max_ent)

        for s in spaces:
            sym = apply_functor(FunctorTag.SYM, s)
            below = [c for c in spaces if kinds[c].is_semi and sub(c, s)]
            chk(sym in below and all(sub(c, sym) for c in below), ("sym", s))
            for tag, pred in ((FunctorTag.USYM, lambda k: k.is_semi), (FunctorTag.W, lambda k: k.is_quasi),
                              (FunctorTag.WSEMI, lambda k: k.is_semi and k.is_quasi)):
                out = apply_functor(tag, s)
                above = [c for c in spaces if pred(kinds[c]) and sub(s, c)]
                chk(out in above and all(sub(out, c) for c in above), (tag, s))


def test_criterion_04_morphism_implications():
    with criterion(4, "morphism flag implications on all endomap pairs", 60) as chk:
        spaces = list(all_spaces(Carrier(("0", "1", "2"))))
        quasi = {s: classify(s).is_quasi for s in spaces}
        for x in spaces:
            for y in spaces:
                for f in all_maps(x, y):
                    p = profile(f)
                    chk(not p.effectively_proper or p.ubc, ("ep=>ubc", f))
                    chk(not p.ubc or p.weakly_ubc, ("ubc=>wubc", f))
                    if quasi[x]:
                        a = p.ls_injective and p.weakly_ubc
                        b = p.ls_injective and p.ubc
                        chk(a == b == p.effectively_proper, ("ls-inj", f))


def test_criterion_05_sym_equivalence():
    with criterion(5, "sym-coarse equivalence against the definition search", 300) as chk:
        quasi = [s for s in spaces_upto(3) if classify(s).is_quasi]
        for x in quasi:
            for y in quasi:
                via_flags = any(sym_coarse_equivalence(f) for f in all_maps(x, y))
                via_definition = equivalence_oracle(x, y)
                chk(via_flags == via_definition, (x, y))
                if via_definition:
                    kx, ky = classify(x), classify(y)
                    chk(not kx.is_semi or ky.is_semi, ("coarse preserved", x, y))
                    cx, cy = connectivity(x), connectivity(y)
                    chk(cx[:3] == cy[:3], ("connectivity", x, y))


def test_criterion_06_probes():
    with criterion(6, "quasi_sym_Z and cubic_skew probes", 1) as chk:
        fam = WeightFamily("quasi_sym_Z", -50, 50)
        for r in (1, 2, 3):
            v = probe_inverse_bound(fam, r, 2 * r)
            chk(bool(v) and v.bound <= 2 * r, (r, v))
        skew = WeightFamily("cubic_skew", -10, 10)
        v = probe_inverse_bound(skew, 1, 100)
        chk(not v and v.witness is not None, v)
        x, y = v.witness
        z, r = y, x - y
        chk(skew.distance(x, y) <= 1 and skew.distance(y, x) == v.value, v)
        chk(v.value == r * (1 + 3 * z * z + 3 * z * r + r * r) and v.value > 100, v)


def test_criterion_07_metrization_round_trip():
    with criterion(7, "metrization round trip on quasi-coarse spaces", 5) as chk:
        for s in spaces_upto(3):
            if not classify(s).is_quasi:
                continue
            w = weight_from_chain(subadditive_chain(s))
            chk(structure_from_weight(w).space == s, s)
            finite = all(v != INF for row in w.d for v in row)
            chk(finite == connectivity(s).strongly_connected, s)


def test_criterion_08_monoid_geometry():
    with criterion(8, "word metrics and Cayley structures on catalog monoids", 1) as chk:
        for name in CATALOG:
            t = catalog(name)
            if not classify_magma(t).monoid:
                continue
            labs = t.elements.labels
            for sigma in [[x] for x in labs] + [list(labs)]:
                for side in ("left", "right"):
                    d = word_weight(t, sigma, side).weight.d
                    n = t.size
                    chk(all(d[a][c] <= d[a][b] + d[b][c] for a in range(n) for b in range(n) for c in range(n)),
                        (name, sigma, side))
                    reach = path_weight(cayley(t, sigma, "left")).d[t.identity]
                    u = [labs[j] for j in range(n) if reach[j] != INF]
                    chk(graphic_structure(cayley(t, sigma, side)).space == side_structure(t, u, side),
                        (name, sigma, side))
        r = gen_invariance(catalog("Z6"), ["1"], ["2", "3"])
        chk(r.equal_structures and r.lipschitz and r.k < INF and r.l < INF, r)


def test_criterion_09_hyper_suite():
    with criterion(9, "hyperstructure identities on three points", 60) as chk:
        by_size = [list(all_spaces(Carrier.range(n))) for n in (1, 2, 3)]
        hyper = {}
        for group in by_size:
            for s in group:
                h = hyper_space(s)
                hyper[s] = h
                chk(apply_functor(FunctorTag.SYM, h) == exp_space(s), ("sym", s))
                chk(classify(nonempty(h)).is_semi == boundedness(s, s.carrier.labels).b3, ("b3", s))
        for xs in by_size:
            for ys in by_size:
                for x in xs:
                    for y in ys:
                        for f in all_maps(x, y):
                            lifted = SpaceMap(hyper[x], hyper[y], lift_table(f))
                            chk(is_bornologous(f) == is_bornologous(lifted), ("lift", f))


def test_criterion_10_weak_softness():
    with criterion(10, "weak softness decides transitivity of quotients", 300) as chk:
        for s in spaces_upto(4):
            if not classify(s).is_quasi:
                continue
            n = s.carrier.size
            for k in range(1, n + 1):
                cod = Carrier.range(k)
                for q in surjections(n, k):
                    chk(quotient_is_transitive(s, q, cod) == is_weakly_soft(s, q, cod), (s, q))


def test_criterion_11_graphic_realization():
    with criterion(11, "graphic realization round trip", 10) as chk:
        count = 0
        for s in spaces_upto(4):
            if classify(s).is_quasi and connectivity(s).connected:
                count += 1
                chk(graphic_structure(graphic_realization(s)).space == s, s)
        chk(count > 0)


def test_criterion_12_cli_determinism():
    import test_cli
    with criterion(12, "CLI golden files and byte-identical reruns", 120) as chk:
        for name, argv in sorted(test_cli.CASES.items()):
            first = test_cli.run(argv)
            second = test_cli.run(argv)
            golden = (Path(test_cli.GOLDEN) / f"{name}.out").read_text()
            chk(first == second, name)
            chk(first[0] == 0 and first[1] == golden, name)
