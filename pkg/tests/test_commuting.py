import json
import random
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings, strategies as st

from commaps.algebra import IncidenceElement, basis_element, center_basis, convolve, restrict_idx, unity
from commaps.circles import properness_guaranteed
from commaps.commuting import (
    BasisLinearMap,
    build_from_coefficients,
    coefficient_table,
    commuting_space,
    commuting_violation,
    component_split,
    decompose_proper,
    identity_map,
    improper_witness,
    is_commuting,
    map_from_json,
    proper_space,
    random_element,
    relation_space,
    relations_check,
    shape_check,
    witness_diagonal_gap,
)
from commaps.errors import (
    InputError,
    MissingCoefficient,
    NotAField,
    NotCommuting,
    NotConnected,
    ShapeViolation,
    UnknownBasisElement,
)
from commaps.preorder import (
    antichain,
    build_preorder,
    chain,
    disjoint_union,
    enumerate_preorders,
    full_preorder,
    random_preorder,
)
from commaps.ring import RATIONALS, make_ring

import oracles
from conftest import preorders

Q = RATIONALS
Z = make_ring("Z")


def e(p, x, y, r=Q):
    return basis_element(p, x, y, r)


def lmap(p, r, images):
    """Map from {(x, y): element} keyed by labels."""
    return BasisLinearMap(p, r, {(p.index(x), p.index(y)): v for (x, y), v in images.items()})


def integral(vec):
    den = 1
    for v in vec.values():
        den = lcm(den, Fraction(v).denominator)
    return {u: int(Fraction(v) * den) for u, v in vec.items()}


def random_relation_map(p, ring, rng):
    """Random integer combination of the R1..R5 solution space, as a coefficient table."""
    space = relation_space(p, Q)
    vec = {}
    for v in space.vectors:
        c = rng.randint(-4, 4)
        for u, a in integral(v).items():
            vec[u] = vec.get(u, 0) + c * a
    theta = BasisLinearMap.from_vector(p, Q, {u: a for u, a in vec.items() if a})
    return {k: int(v) for k, v in coefficient_table(theta).items()}


# -- is_commuting ---------------------------------------------------------------

def test_intro_map_commutes(intro_map):
    assert is_commuting(intro_map)
    f = random_element(intro_map.poset, Q, random.Random(0))
    # the map sends (a11, a13, a22, a23, a33) to (a11, a13, a33, 0, a33)
    out = intro_map(f)
    p = intro_map.poset
    i1, i2, i3 = p.index(1), p.index(2), p.index(3)
    assert out[i1, i1] == f[i1, i1] and out[i1, i3] == f[i1, i3]
    assert out[i2, i2] == f[i3, i3] and out[i2, i3] == 0 and out[i3, i3] == f[i3, i3]


def test_identity_commutes(ex24):
    assert is_commuting(identity_map(ex24))


def test_non_commuting_chain():
    p = chain(2)
    theta = lmap(p, Q, {("1", "1"): e(p, 1, 2)})
    from commaps.algebra import commutator

    assert commutator(theta.image(0, 0), e(p, 1, 1)) == e(p, 1, 2).scale(-1)
    assert not is_commuting(theta)
    assert commuting_violation(theta) == ((0, 0), (0, 0))


@given(preorders(max_size=4), st.integers(0, 10**6))
@settings(max_examples=40)
def test_is_commuting_agrees_with_dense_products(p, seed):
    rng = random.Random(seed)
    space = commuting_space(p)
    theta = BasisLinearMap.from_vector(p, Q, {})
    for v in space.vectors:
        theta = theta + BasisLinearMap.from_vector(p, Q, v).scale(rng.randint(-3, 3))
    if rng.random() < 0.5:
        # random perturbation, usually breaks it
        ij = rng.choice(p.pairs)
        xy = rng.choice(p.pairs)
        theta = theta + BasisLinearMap(p, Q, {ij: IncidenceElement(p, Q, {xy: 1})})
    samples = [random_element(p, Q, rng) for _ in range(3)] + [IncidenceElement(p, Q, {ij: 1}) for ij in p.pairs]
    pair_sums = [IncidenceElement(p, Q, {a: 1, b: 1}) for a in p.pairs for b in p.pairs if a < b]
    assert is_commuting(theta) == oracles.brute_commuting(theta, samples + pair_sums)


# -- shape and relations ----------------------------------------------------------

def test_shape(intro, intro_map):
    assert shape_check(intro_map)
    bad = lmap(intro, Q, {("1", "1"): e(intro, 1, 3)})
    assert not shape_check(bad)
    with pytest.raises(NotConnected):
        shape_check(identity_map(antichain(2)))
    with pytest.raises(ShapeViolation):
        relations_check(bad)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_commuting_basis_has_shape(n):
    for p in enumerate_preorders(n):
        if p.is_connected():
            for theta in commuting_space(p).maps:
                assert shape_check(theta)
                assert relations_check(theta).ok


def test_relations_intro(intro_map):
    rep = relations_check(intro_map)
    assert rep.ok


def test_relations_identity(ex24):
    theta = identity_map(ex24)
    assert relations_check(theta).ok
    assert theta.coeff((0, 1), (0, 1)) == 1
    assert [theta.coeff((2, 2), (x, x)) for x in range(4)] == [0, 0, 1, 0]


def test_relations_perturbed(intro, intro_map):
    perturbed = intro_map + lmap(intro, Q, {("1", "3"): e(intro, 1, 3)})
    assert perturbed.coeff((0, 2), (0, 2)) == 2
    rep = relations_check(perturbed)
    assert rep.violations["R1"] == [("1", "3")]
    assert not is_commuting(perturbed)


def test_r5_wraps_in_preorders():
    p = full_preorder(2)
    # e_12 -> e_12, e_21 -> 2 e_21 violates i < j < i
    theta = BasisLinearMap(p, Q, {(0, 1): e(p, 1, 2), (1, 0): e(p, 2, 1).scale(2)})
    assert ("1", "2", "1") in relations_check(theta).violations["R5"]


# -- coefficient tables ---------------------------------------------------------------

def test_build_zero_table(intro):
    table = {}
    for i, j in intro.pairs:
        a, b = intro.label(i), intro.label(j)
        for x in intro.elements:
            table[a, b, x, x] = 0
        if i != j:
            table[a, b, a, b] = 0
    theta = build_from_coefficients(intro, Q, table)
    assert theta.table == {} and is_commuting(theta)


def test_build_intro_table(intro, intro_map):
    table = coefficient_table(intro_map)
    assert build_from_coefficients(intro, Q, table) == intro_map
    del table["1", "3", "1", "3"]
    with pytest.raises(MissingCoefficient):
        build_from_coefficients(intro, Q, table)
    with pytest.raises(ShapeViolation):
        build_from_coefficients(intro, Q, {("1", "1", "1", "3"): 1})


@pytest.mark.parametrize("ring_name", ["Z", "Q", "Z/7", "Z/9"])
def test_random_consistent_tables(ex24, ring_name):
    ring = make_ring(ring_name)
    rng = random.Random(5)
    for _ in range(20):
        table = random_relation_map(ex24, ring, rng)
        theta = build_from_coefficients(ex24, ring, table)
        assert relations_check(theta).ok
        assert is_commuting(theta)


# -- solution spaces -------------------------------------------------------------------

def test_dimensions():
    assert commuting_space(chain(1)).dimension == 1
    intro = build_preorder([1, 2, 3], [(1, 3), (2, 3)])
    assert oracles.commuting_dimension(intro) == 7
    assert commuting_space(intro).dimension == 7
    assert proper_space(intro).dimension == oracles.proper_dimension(intro) == 6
    assert proper_space(chain(1)).dimension == 1
    c2 = chain(2)
    assert commuting_space(c2).dimension == oracles.commuting_dimension(c2) == relation_space(c2).dimension


@pytest.mark.parametrize("name", ["Z", "Z/9"])
def test_solver_needs_field(intro, name):
    with pytest.raises(NotAField):
        commuting_space(intro, make_ring(name))
    with pytest.raises(NotAField):
        improper_witness(intro, make_ring(name))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimensions_against_oracle(n):
    for p in enumerate_preorders(n):
        assert commuting_space(p).dimension == oracles.commuting_dimension(p)
        assert proper_space(p).dimension == oracles.proper_dimension(p)


def test_modular_dimensions_match():
    for p in enumerate_preorders(3):
        assert commuting_space(p, make_ring("Z/7")).dimension == commuting_space(p).dimension


def test_spaces_are_sound(ex24, intro):
    for p in (ex24, intro, disjoint_union(chain(2), antichain(1))):
        for theta in commuting_space(p).maps:
            assert is_commuting(theta)
        for theta in proper_space(p).maps:
            assert is_commuting(theta)


# -- decomposition and witnesses ------------------------------------------------------

def test_decompose_identity(ex24):
    dec = decompose_proper(identity_map(ex24))
    assert dec.lam.element == unity(ex24)
    assert all(m.is_zero() for m in dec.mu.values())


def test_decompose_intro_fails(intro_map):
    assert decompose_proper(intro_map) is None


def test_decompose_not_commuting():
    p = chain(2)
    with pytest.raises(NotCommuting):
        decompose_proper(lmap(p, Q, {("1", "1"): e(p, 1, 2)}))
    with pytest.raises(NotAField):
        decompose_proper(identity_map(p, Z))


@given(preorders(max_size=5), st.integers(0, 10**6))
@settings(max_examples=30)
def test_decompose_round_trip(p, seed):
    rng = random.Random(seed)
    deltas = [d.element for d in center_basis(p)]
    lam = IncidenceElement.zero(p, Q)
    for d in deltas:
        lam = lam + d.scale(rng.randint(-3, 3))
    table = {}
    for ij in p.pairs:
        img = convolve(lam, IncidenceElement(p, Q, {ij: 1}))
        for d in deltas:
            img = img + d.scale(rng.randint(-3, 3))
        table[ij] = img
    theta = BasisLinearMap(p, Q, table)
    dec = decompose_proper(theta)
    assert dec is not None and dec.reconstruct(p, Q) == theta


@given(preorders(max_size=4), st.integers(0, 10**6))
@settings(max_examples=30)
def test_decompose_iff_in_proper_space(p, seed):
    rng = random.Random(seed)
    cs, ps = commuting_space(p), proper_space(p)
    vec = {}
    for v in cs.vectors:
        c = rng.randint(-2, 2)
        for u, a in v.items():
            vec[u] = vec.get(u, 0) + c * a
    theta = BasisLinearMap.from_vector(p, Q, {u: a for u, a in vec.items() if a})
    assert (decompose_proper(theta) is not None) == ps.contains(theta)


def test_witness_intro(intro):
    w = improper_witness(intro)
    assert w is not None and is_commuting(w) and decompose_proper(w) is None
    assert witness_diagonal_gap(w) is not None
    # deterministic, smallest integral coefficients
    assert improper_witness(intro) == w
    assert all(Fraction(v).denominator == 1 for v in w.to_vector().values())


def test_witness_none(ex24):
    assert improper_witness(ex24) is None
    assert improper_witness(chain(2)) is None
    assert improper_witness(full_preorder(3)) is None


def test_witnesses_connected_show_diagonal_gap():
    for n in (3, 4):
        for p in enumerate_preorders(n):
            if p.is_connected() and not properness_guaranteed(p).guaranteed:
                w = improper_witness(p)
                assert w is not None and witness_diagonal_gap(w) is not None


def test_witness_over_prime_field(intro):
    w = improper_witness(intro, make_ring("Z/5"))
    assert w is not None and decompose_proper(w) is None


def test_guaranteed_implies_no_witness():
    rng = random.Random(2)
    for _ in range(40):
        p = random_preorder(rng.randint(2, 6), rng)
        if properness_guaranteed(p).guaranteed:
            assert improper_witness(p) is None


# -- components -------------------------------------------------------------------------

def test_component_split_connected(ex24):
    theta = identity_map(ex24)
    ((sub, part),) = component_split(theta)
    assert sub == ex24 and part == theta


def test_component_split_zero():
    p = disjoint_union(chain(2), chain(3))
    parts = component_split(BasisLinearMap(p, Q, {}))
    assert [sub.n for sub, _ in parts] == [2, 3]
    assert all(m.table == {} for _, m in parts)
    with pytest.raises(NotCommuting):
        component_split(BasisLinearMap(p, Q, {(0, 0): e(p, 1, 2)}))


def test_component_split_of_commuting_maps_commutes():
    p = disjoint_union(build_preorder([1, 2, 3], [(1, 3), (2, 3)]), chain(2))
    for theta in commuting_space(p).maps:
        for _, part in component_split(theta):
            assert is_commuting(part)


def test_direct_sum():
    rng = random.Random(4)
    for _ in range(10):
        a = random_preorder(rng.randint(1, 3), rng)
        b = random_preorder(rng.randint(1, 3), rng)
        gap = lambda p: commuting_space(p).dimension > proper_space(p).dimension  # noqa: E731
        assert gap(disjoint_union(a, b)) == (gap(a) or gap(b))


# -- restriction -------------------------------------------------------------------------

@given(preorders(max_size=4), st.integers(0, 10**6))
@settings(max_examples=30)
def test_restriction_lemma_for_commuting_maps(p, seed):
    rng = random.Random(seed)
    theta = BasisLinearMap.from_vector(p, Q, {})
    for v in commuting_space(p).vectors:
        theta = theta + BasisLinearMap.from_vector(p, Q, v).scale(rng.randint(-3, 3))
    f = random_element(p, Q, rng)
    for x, y in p.strict_pairs:
        assert theta(f)[x, y] == theta(restrict_idx(f, x, y))[x, y]


# -- map files -------------------------------------------------------------------------------

def test_map_json(intro, intro_map, data_dir):
    doc = intro_map.to_json()
    assert map_from_json(intro, json.loads(json.dumps(doc))) == intro_map
    with pytest.raises(InputError, match="ring mismatch"):
        map_from_json(intro, doc, make_ring("Z/7"))
    with pytest.raises(UnknownBasisElement):
        map_from_json(intro, {"entries": [{"on": ["3", "1"], "value": []}]})
    with pytest.raises(UnknownBasisElement):
        map_from_json(intro, {"entries": [{"on": ["9", "1"], "value": []}]})
    z = map_from_json(intro, {"ring": "Z", "entries": []})
    assert z.ring == Z and z.table == {}
