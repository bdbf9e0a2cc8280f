import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from entourage.errors import CarrierMismatch, EntourageError, UnknownLabel
from entourage.rel_core import (Carrier, Entourage, classify_relation, compose, image, inverse,
                                power, transitive_closure)


@st.composite
def relations(draw, n=None, count=1, reflexive=False):
    n = draw(st.integers(1, 5)) if n is None else n
    c = Carrier.range(n)
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    out = []
    for _ in range(count):
        e = Entourage.from_index_pairs(c, draw(st.sets(pair, max_size=n * n)))
        out.append(e | Entourage.diagonal(c) if reflexive else e)
    return out


def as_set(e):
    return set(e.index_pairs())


def test_carrier_rejects_duplicates():
    with pytest.raises(EntourageError):
        Carrier(("a", "a"))


def test_carrier_index_is_bijective():
    c = Carrier(("x", "y", "z"))
    assert [c.index(l) for l in c.labels] == [0, 1, 2]
    with pytest.raises(UnknownLabel):
        c.index("w")


def test_compose_single_witness(three):
    e = Entourage.from_pairs(three, [("0", "1")])
    f = Entourage.from_pairs(three, [("1", "2")])
    assert compose(e, f).pairs() == [("0", "2")]


def test_compose_with_diagonal_is_identity(e1):
    assert compose(Entourage.diagonal(e1.carrier), e1) == e1


def test_compose_carrier_mismatch(three):
    with pytest.raises(CarrierMismatch):
        compose(Entourage.diagonal(three), Entourage.diagonal(Carrier.range(2)))


@given(relations(n=5, count=2))
def test_compose_matches_triple_loop(rels):
    e, f = rels
    assert as_set(compose(e, f)) == oracle.compose(as_set(e), as_set(f))


def test_inverse_examples(three, e1):
    assert inverse(Entourage.from_pairs(three, [("0", "1")])).pairs() == [("1", "0")]
    assert inverse(Entourage.diagonal(three)) == Entourage.diagonal(three)
    assert inverse(e1) == e1


@given(relations())
def test_inverse_is_involution(rels):
    (e,) = rels
    assert inverse(inverse(e)) == e
    assert as_set(inverse(e)) == oracle.inverse(as_set(e))


def test_image_examples(e2):
    assert image(e2, ["0"]) == {"0", "1", "2"}
    assert image(e2, ["1"]) == {"1"}
    assert image(e2, []) == set()
    with pytest.raises(UnknownLabel):
        image(e2, ["9"])


def test_power_examples(three):
    e = Entourage.from_pairs(three, [("0", "1"), ("1", "2")]) | Entourage.diagonal(three)
    assert set(power(e, 2).pairs()) == set(e.pairs()) | {("0", "2")}
    d = Entourage.diagonal(three)
    assert all(power(d, n) == d for n in range(1, 5))
    assert power(e, 1) == e
    with pytest.raises(EntourageError):
        power(e, 0)


@given(relations(reflexive=True))
def test_power_is_monotone_for_reflexive(rels):
    (e,) = rels
    chain = [power(e, n) for n in range(1, 5)]
    assert all(a.issubset(b) for a, b in zip(chain, chain[1:]))


def test_classify_relation_examples(e1, e2):
    assert classify_relation(e2) == (True, False, True)
    assert classify_relation(e1) == (True, True, False)
    full = Entourage.full(Carrier.range(4))
    assert classify_relation(full) == (True, True, True)


@given(relations(n=4, count=3))
@settings(max_examples=60)
def test_associativity(rels):
    e, f, g = rels
    assert compose(compose(e, f), g) == compose(e, compose(f, g))


def test_associativity_exhaustive_on_two_points():
    c = Carrier.range(2)
    rels = [Entourage.from_index_pairs(c, s) for s in oracle.powerset([(0, 0), (0, 1), (1, 0), (1, 1)])]
    for e in rels:
        for f in rels:
            ef = compose(e, f)
            for g in rels:
                assert compose(ef, g) == compose(e, compose(f, g))


@given(relations(count=2))
def test_inverse_reverses_composition(rels):
    e, f = rels
    assert inverse(compose(e, f)) == compose(inverse(f), inverse(e))


@given(relations(count=2), st.data())
def test_image_pins_composition_direction(rels, data):
    e, f = rels
    a = data.draw(st.sets(st.sampled_from(e.carrier.labels)))
    assert image(compose(e, f), a) == image(f, image(e, a))


@given(relations(count=3))
def test_composition_is_monotone(rels):
    e, f, g = rels
    ef = e | f  # e <= ef
    assert compose(e, g).issubset(compose(ef, g))
    assert compose(g, e).issubset(compose(g, ef))


@given(relations())
def test_transitive_closure_matches_oracle(rels):
    (e,) = rels
    assert as_set(transitive_closure(e)) == oracle.closure(as_set(e))
