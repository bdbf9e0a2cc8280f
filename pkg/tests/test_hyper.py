import pytest

import oracle
from entourage.errors import HypothesisError, ResourceCap
from entourage.functors import FunctorTag, apply_functor
from entourage.hyper import (PowersetCarrier, exp_space, hyper_entourage, hyper_space, lift_map, lift_table,
                             nonempty, singleton_pairs, subset_label)
from entourage.morphisms import SpaceMap, all_maps, is_bornologous
from entourage.rel_core import Carrier, Entourage, compose
from entourage.spaces import all_spaces, boundedness, classify, discrete, indiscrete

TWO = Carrier(("0", "1"))


def _oracle_hyper(points, m):
    subs = [frozenset(s) for s in oracle.powerset(points)]
    img = {a: {y for (x, y) in m if x in a} for a in subs}
    return {(a, b) for a in subs for b in subs if b <= img[a]}


def _as_sets(h, base):
    ps = PowersetCarrier(base)
    return {(frozenset(ps.subset(i)), frozenset(ps.subset(j))) for i, j in h.index_pairs()}


def test_powerset_carrier():
    ps = PowersetCarrier(TWO)
    assert ps.carrier.labels == ("{}", "{0}", "{1}", "{0,1}")
    assert ps.index(["1"]) == 2 and ps.subset(3) == ["0", "1"]
    assert subset_label(TWO, 0) == "{}"
    with pytest.raises(ResourceCap):
        PowersetCarrier(Carrier.range(13))


def test_hyper_of_diagonal_is_reverse_inclusion():
    h = hyper_entourage(Entourage.diagonal(TWO))
    assert ("{0,1}", "{}") in h and ("{0}", "{0,1}") not in h
    assert set(h.index_pairs()) == {(a, b) for a in range(4) for b in range(4) if b & ~a == 0}


def test_hyper_of_full_relation():
    h = hyper_entourage(Entourage.full(TWO))
    assert set(h.index_pairs()) == {(a, b) for a in range(4) for b in range(4) if a or not b}


def test_hyper_requires_reflexive_base():
    with pytest.raises(HypothesisError):
        hyper_entourage(Entourage.from_pairs(TWO, [("0", "1")]))


def test_hyper_matches_set_oracle(spaces3, three):
    for s in spaces3:
        h = hyper_entourage(s.max_ent)
        assert _as_sets(h, three) == _oracle_hyper(three.labels, set(s.max_ent.pairs()))
        assert h.is_reflexive()


def test_discrete_base_classes(three):
    d = discrete(three)
    assert classify(hyper_space(d)).is_quasi
    assert exp_space(d).max_ent == Entourage.diagonal(exp_space(d).carrier)


def test_classes_of_hyper_and_exp(spaces3):
    for s in spaces3:
        h, x = classify(hyper_space(s)), classify(exp_space(s))
        assert x.is_semi and not h.is_semi
        if classify(s).is_quasi:
            assert h.is_quasi and x.is_quasi


def test_sym_of_hyper_is_exp():
    for n in (1, 2, 3):
        for s in all_spaces(Carrier.range(n)):
            assert apply_functor(FunctorTag.SYM, hyper_space(s)) == exp_space(s)


def test_quasi_closure_of_hyper(spaces3):
    for a in spaces3:
        ha = hyper_entourage(a.max_ent)
        for b in spaces3:
            hb = hyper_entourage(b.max_ent)
            assert compose(ha, hb).issubset(hyper_entourage(compose(a.max_ent, b.max_ent)))


def test_lift_examples(three):
    s = indiscrete(three)
    assert lift_map(SpaceMap.identity(s)) == SpaceMap.identity(hyper_space(s))
    tab = lift_table(SpaceMap(s, s, (1, 1, 1)))
    assert tab[0] == 0 and all(t == 0b010 for t in tab[1:])


def test_singletons_recover_base(spaces3):
    for s in spaces3:
        assert set(singleton_pairs(s.max_ent)) == set(s.max_ent.pairs())


def test_lift_bornologous_equivalence():
    spaces = [list(all_spaces(Carrier.range(n))) for n in (1, 2, 3)]
    for xs in spaces:
        for ys in spaces:
            for x in xs[::3] if len(xs) > 4 else xs:
                for y in ys[::3] if len(ys) > 4 else ys:
                    for f in all_maps(x, y):
                        assert is_bornologous(f) == is_bornologous(lift_map(f))


def test_nonempty_restriction_and_b3():
    for n in (1, 2, 3):
        for s in all_spaces(Carrier.range(n)):
            sub = nonempty(hyper_space(s))
            assert sub.carrier.size == 2 ** n - 1 and "{}" not in sub.carrier.labels
            assert classify(sub).is_semi == boundedness(s, s.carrier.labels).b3
