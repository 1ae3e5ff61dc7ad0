"""Commuting maps on I(X, R).

A linear map is stored as its values on the basis e_ij (i <= j).  Its
coefficient C^{ij}_{xy} is the (x, y) entry of theta(e_ij); as an unknown
of the linear systems below it gets the index ``a * |B| + b``, where a and b
are the positions of (i, j) and (x, y) in ``poset.pairs``.  That is the
lexicographic (i, j, x, y) ordering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .algebra import (
    CenterElement,
    IncidenceElement,
    basis_element_idx,
    center_basis,
    commutator,
    convolve,
    element_from_json,
    element_to_json,
)
from .errors import (
    InputError,
    MissingCoefficient,
    NotAField,
    NotCommuting,
    NotConnected,
    ShapeViolation,
    UnknownBasisElement,
)
from .linalg import RowReducer
from .preorder import PreOrder, connected_components_idx
from .ring import RATIONALS, Ring, make_ring


class BasisLinearMap:
    """theta given by ``table[(i, j)] = theta(e_ij)``; missing entries are zero."""

    def __init__(self, poset: PreOrder, ring: Ring, table=None):
        self.poset = poset
        self.ring = ring
        self.table = {}
        for ij, img in (table or {}).items():
            if ij not in poset.pairs_set:
                raise UnknownBasisElement(f"no basis element e_{ij}")
            if img.poset != poset or img.ring != ring:
                raise InputError("image lives in another incidence algebra")
            if not img.is_zero():
                self.table[ij] = img

    def image(self, i, j) -> IncidenceElement:
        return self.table.get((i, j)) or IncidenceElement.zero(self.poset, self.ring)

    def coeff(self, ij, xy):
        img = self.table.get(ij)
        return img[xy] if img is not None else self.ring.zero

    def __call__(self, f: IncidenceElement) -> IncidenceElement:
        out = IncidenceElement.zero(self.poset, self.ring)
        for ij, a in f.items():
            if ij in self.table:
                out = out + self.table[ij].scale(a)
        return out

    def __eq__(self, other):
        if not isinstance(other, BasisLinearMap):
            return NotImplemented
        return self.poset == other.poset and self.ring == other.ring and self.table == other.table

    def __add__(self, other):
        keys = set(self.table) | set(other.table)
        return BasisLinearMap(self.poset, self.ring, {k: self.image(*k) + other.image(*k) for k in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return BasisLinearMap(self.poset, self.ring, {k: v.scale(c) for k, v in self.table.items()})

    def __repr__(self):
        lab = self.poset.elements
        body = "; ".join(f"e[{lab[i]},{lab[j]}] -> {v!r}" for (i, j), v in sorted(self.table.items()))
        return f"BasisLinearMap({body})"

    def to_vector(self) -> dict:
        pos = self.poset.pair_pos
        nb = len(self.poset.pairs)
        vec = {}
        for ij, img in self.table.items():
            a = pos[ij]
            for xy, v in img.items():
                vec[a * nb + pos[xy]] = v
        return vec

    @classmethod
    def from_vector(cls, poset, ring, vec):
        pairs = poset.pairs
        nb = len(pairs)
        rows = {}
        for u, v in vec.items():
            a, b = divmod(u, nb)
            rows.setdefault(pairs[a], {})[pairs[b]] = v
        return cls(poset, ring, {ij: IncidenceElement(poset, ring, c) for ij, c in rows.items()})

    def to_json(self) -> dict:
        lab = self.poset.elements
        entries = [
            {"on": [lab[i], lab[j]], "value": element_to_json(self.table[i, j])}
            for i, j in self.poset.pairs
            if (i, j) in self.table
        ]
        return {"ring": self.ring.name, "entries": entries}


def identity_map(poset, ring=RATIONALS) -> BasisLinearMap:
    return BasisLinearMap(poset, ring, {ij: basis_element_idx(poset, *ij, ring) for ij in poset.pairs})


def map_from_json(poset: PreOrder, doc, ring: Ring | None = None) -> BasisLinearMap:
    """Parse ``{"ring": "Q", "entries": [{"on": [i, j], "value": [[x, y, c], ...]}]}``."""
    if not isinstance(doc, dict) or "entries" not in doc:
        raise InputError("map document must be an object with an 'entries' list")
    file_ring = make_ring(doc["ring"]) if "ring" in doc else None
    if ring is None:
        ring = file_ring or RATIONALS
    elif file_ring is not None and file_ring != ring:
        raise InputError(f"ring mismatch: map file is over {file_ring.name}, requested {ring.name}")
    table = {}
    for k, entry in enumerate(doc["entries"]):
        where = f"entries[{k}]"
        if not isinstance(entry, dict) or "on" not in entry or "value" not in entry:
            raise InputError(f"{where}: expected {{'on': [i, j], 'value': [...]}}")
        on = entry["on"]
        if not (isinstance(on, list) and len(on) == 2):
            raise InputError(f"{where}.on: expected a pair [i, j]")
        try:
            ij = (poset.index(on[0]), poset.index(on[1]))
        except InputError:
            raise UnknownBasisElement(f"{where}.on: {on} is not a basis element") from None
        if not poset.leq[ij[0]][ij[1]]:
            raise UnknownBasisElement(f"{where}.on: {on[0]} is not <= {on[1]}")
        img = element_from_json(poset, ring, entry["value"], where=f"{where}.value")
        table[ij] = table[ij] + img if ij in table else img
    return BasisLinearMap(poset, ring, table)


# -- verification ------------------------------------------------------------------

def commuting_violation(theta: BasisLinearMap):
    """First basis pair (e_a, e_b), a <= b, with [theta(e_a), e_b] != [e_a, theta(e_b)], or None."""
    p, ring = theta.poset, theta.ring
    basis = [basis_element_idx(p, i, j, ring) for i, j in p.pairs]
    images = [theta.image(i, j) for i, j in p.pairs]
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            if commutator(images[a], basis[b]) != commutator(basis[a], images[b]):
                return p.pairs[a], p.pairs[b]
    return None


def random_element(poset, ring, rng: random.Random, lo=-5, hi=5) -> IncidenceElement:
    return IncidenceElement(poset, ring, {ij: rng.randint(lo, hi) for ij in poset.pairs})


def is_commuting(theta: BasisLinearMap, spot_checks: int = 4, seed: int = 0) -> bool:
    """Basis-pair criterion, followed by [theta(f), f] = 0 on a few random f."""
    if commuting_violation(theta) is not None:
        return False
    rng = random.Random(seed)
    for _ in range(spot_checks):
        f = random_element(theta.poset, theta.ring, rng)
        if not commutator(theta(f), f).is_zero():
            # cannot happen over a 2-torsion-free ring once the pair test passed
            raise AssertionError("basis criterion passed but [theta(f), f] != 0")
    return True


def _require_connected(poset):
    if not poset.is_connected():
        raise NotConnected("this check is only defined for a connected pre-order")


def shape_violations(theta: BasisLinearMap) -> list:
    """Entries of theta(e_ij) outside the diagonal plus e_ij (diagonal only when i = j)."""
    bad = []
    for (i, j), img in sorted(theta.table.items()):
        for (x, y), _ in img.items():
            if x != y and (x, y) != (i, j):
                bad.append(((i, j), (x, y)))
    return bad


def shape_check(theta: BasisLinearMap) -> bool:
    _require_connected(theta.poset)
    return not shape_violations(theta)


@dataclass
class RelationsReport:
    violations: dict = field(default_factory=lambda: {f"R{k}": [] for k in range(1, 6)})

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def holds(self, name) -> bool:
        return not self.violations[name]


def relations_check(theta: BasisLinearMap) -> RelationsReport:
    """Evaluate relations R1..R5 on a shape-conforming map; list every violated instance.

    Instances are label tuples: R1 (i, l), R2 (k, i), R3 (i, k, l),
    R4 (i, j, x, y), R5 (i, j, l).
    """
    p = theta.poset
    _require_connected(p)
    if shape_violations(theta):
        raise ShapeViolation("map does not have the diagonal-plus-edge shape")
    C = theta.coeff
    sub = theta.ring.sub
    lab = p.elements
    rep = RelationsReport()
    v = rep.violations
    n = p.n
    for i, l in p.strict_pairs:
        if C((i, l), (i, l)) != sub(C((i, i), (i, i)), C((i, i), (l, l))):
            v["R1"].append((lab[i], lab[l]))
    for k, i in p.strict_pairs:
        if C((k, i), (k, i)) != sub(C((i, i), (i, i)), C((i, i), (k, k))):
            v["R2"].append((lab[k], lab[i]))
    for i in range(n):
        for k, l in p.strict_pairs:
            if k != i and l != i and C((i, i), (k, k)) != C((i, i), (l, l)):
                v["R3"].append((lab[i], lab[k], lab[l]))
    for i, j in p.strict_pairs:
        for x in range(n):
            for y in range(x + 1, n):
                if C((i, j), (x, x)) != C((i, j), (y, y)):
                    v["R4"].append((lab[i], lab[j], lab[x], lab[y]))
    for i, j in p.strict_pairs:
        for l in p.above[j]:
            # l == i is allowed: i < j < i in a pre-order
            if l != j and C((i, j), (i, j)) != C((j, l), (j, l)):
                v["R5"].append((lab[i], lab[j], lab[l]))
    return rep


def build_from_coefficients(poset: PreOrder, ring: Ring, table) -> BasisLinearMap:
    """Map with theta(e_ii) = sum_x C^{ii}_{xx} e_xx and theta(e_ij) = sum_x C^{ij}_{xx} e_xx + C^{ij}_{ij} e_ij.

    ``table`` maps label 4-tuples (i, j, x, y) to coefficients; it must hold
    every (i, j, x, x) and, for i != j, (i, j, i, j).  Other keys are rejected.
    """
    idx = poset.index
    given = {}
    for key, val in dict(table).items():
        i, j, x, y = (idx(t) for t in key)
        if not (x == y or (x, y) == (i, j)):
            raise ShapeViolation(f"coefficient {key} is outside the diagonal-plus-edge shape")
        given[i, j, x, y] = ring(val)
    out = {}
    for i, j in poset.pairs:
        c = {}
        for x in range(poset.n):
            try:
                c[x, x] = given[i, j, x, x]
            except KeyError:
                raise MissingCoefficient(f"missing C^{poset.label(i)}{poset.label(j)}_{poset.label(x)}{poset.label(x)}") from None
        if i != j:
            try:
                c[i, j] = given[i, j, i, j]
            except KeyError:
                raise MissingCoefficient(f"missing C^{poset.label(i)}{poset.label(j)}_{poset.label(i)}{poset.label(j)}") from None
        out[i, j] = IncidenceElement(poset, ring, c)
    return BasisLinearMap(poset, ring, out)


def coefficient_table(theta: BasisLinearMap) -> dict:
    """Inverse of :func:`build_from_coefficients` for shape-conforming maps."""
    p = theta.poset
    lab = p.elements
    t = {}
    for i, j in p.pairs:
        for x in range(p.n):
            t[lab[i], lab[j], lab[x], lab[x]] = theta.coeff((i, j), (x, x))
        if i != j:
            t[lab[i], lab[j], lab[i], lab[j]] = theta.coeff((i, j), (i, j))
    return t


# -- solution spaces -------------------------------------------------------------

@dataclass
class MapSpace:
    poset: PreOrder
    ring: Ring
    vectors: list  # sparse coefficient vectors, linearly independent

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def maps(self) -> list:
        return [BasisLinearMap.from_vector(self.poset, self.ring, v) for v in self.vectors]

    def reducer(self) -> RowReducer:
        nb = len(self.poset.pairs)
        return RowReducer(self.ring, nb * nb).extend(self.vectors)

    def contains(self, theta: BasisLinearMap) -> bool:
        return self.reducer().contains(theta.to_vector())


def _require_field(ring):
    if not ring.is_field:
        raise NotAField(f"{ring.name} is not a field; solving needs division")


def commuting_equations(poset: PreOrder, ring: Ring) -> list:
    """Rows of [theta(e_a), e_b] - [e_a, theta(e_b)] = 0 over all basis pairs a <= b.

    Entry by entry, with a = (i, j) and b = (k, l), C^a_{xk} lands at (x, l),
    -C^a_{ly} at (k, y), -C^b_{jy} at (i, y) and C^b_{xi} at (x, j).
    """
    pairs, pos = poset.pairs, poset.pair_pos
    nb = len(pairs)
    above, below = poset.above, poset.below
    one, neg = ring.one, ring.neg(ring.one)
    add = ring.add
    rows = []
    for a in range(nb):
        i, j = pairs[a]
        ua = a * nb
        for b in range(a, nb):
            k, l = pairs[b]
            ub = b * nb
            eq = {}

            def put(at, u, c):
                row = eq.setdefault(at, {})
                row[u] = add(row[u], c) if u in row else c

            for x in below[k]:
                put((x, l), ua + pos[x, k], one)
            for y in above[l]:
                put((k, y), ua + pos[l, y], neg)
            for y in above[j]:
                put((i, y), ub + pos[j, y], neg)
            for x in below[i]:
                put((x, j), ub + pos[x, i], one)
            for row in eq.values():
                row = {u: c for u, c in row.items() if c != 0}
                if row:
                    rows.append(row)
    return rows


def commuting_space(poset: PreOrder, ring: Ring = RATIONALS) -> MapSpace:
    """Exact basis of all commuting maps, as the nullspace of the basis-pair system."""
    _require_field(ring)
    nb = len(poset.pairs)
    red = RowReducer(ring, nb * nb).extend(commuting_equations(poset, ring))
    return MapSpace(poset, ring, red.nullspace())


def proper_generators(poset: PreOrder, ring: Ring = RATIONALS) -> list:
    """f -> delta_k f for each component, then e -> delta_k (other basis elements to 0), as vectors."""
    pairs, pos = poset.pairs, poset.pair_pos
    nb = len(pairs)
    comps = connected_components_idx(poset)
    where = {x: k for k, comp in enumerate(comps) for x in comp}
    gens = []
    for k in range(len(comps)):
        gens.append({pos[ij] * nb + pos[ij]: ring.one for ij in pairs if where[ij[0]] == k})
    for a in range(nb):
        for comp in comps:
            gens.append({a * nb + pos[x, x]: ring.one for x in comp})
    return gens


def proper_space(poset: PreOrder, ring: Ring = RATIONALS) -> MapSpace:
    _require_field(ring)
    nb = len(poset.pairs)
    red = RowReducer(ring, nb * nb)
    keep = [g for g in proper_generators(poset, ring) if red.add(g)]
    return MapSpace(poset, ring, keep)


def relation_equations(poset: PreOrder, ring: Ring) -> list:
    """Shape constraints plus R1..R5 as linear rows in the same unknowns (connected pre-orders)."""
    _require_connected(poset)
    pairs, pos = poset.pairs, poset.pair_pos
    nb = len(pairs)
    one, neg = ring.one, ring.neg(ring.one)

    def u(ij, xy):
        return pos[ij] * nb + pos[xy]

    rows = []
    for ij in pairs:
        for xy in pairs:
            if xy[0] != xy[1] and xy != ij:
                rows.append({u(ij, xy): one})

    def diff(*terms):
        row = {}
        for key, c in terms:
            row[key] = ring.add(row.get(key, ring.zero), c)
        row = {k: c for k, c in row.items() if c != 0}
        if row:
            rows.append(row)

    n = poset.n
    for i, l in poset.strict_pairs:
        diff((u((i, l), (i, l)), one), (u((i, i), (i, i)), neg), (u((i, i), (l, l)), one))
    for k, i in poset.strict_pairs:
        diff((u((k, i), (k, i)), one), (u((i, i), (i, i)), neg), (u((i, i), (k, k)), one))
    for i in range(n):
        for k, l in poset.strict_pairs:
            if k != i and l != i:
                diff((u((i, i), (k, k)), one), (u((i, i), (l, l)), neg))
    for i, j in poset.strict_pairs:
        for x in range(1, n):
            diff((u((i, j), (0, 0)), one), (u((i, j), (x, x)), neg))
    for i, j in poset.strict_pairs:
        for l in poset.above[j]:
            if l != j:
                diff((u((i, j), (i, j)), one), (u((j, l), (j, l)), neg))
    return rows


def relation_space(poset: PreOrder, ring: Ring = RATIONALS) -> MapSpace:
    """Maps of the diagonal-plus-edge shape satisfying R1..R5; equals the commuting space when connected."""
    _require_field(ring)
    nb = len(poset.pairs)
    red = RowReducer(ring, nb * nb).extend(relation_equations(poset, ring))
    return MapSpace(poset, ring, red.nullspace())


# -- decomposition and witnesses ----------------------------------------------------

@dataclass
class ProperDecomposition:
    lam: CenterElement
    mu: dict  # basis pair -> CenterElement

    def reconstruct(self, poset, ring) -> BasisLinearMap:
        lam = self.lam.element
        return BasisLinearMap(
            poset,
            ring,
            {ij: convolve(lam, basis_element_idx(poset, *ij, ring)) + self.mu[ij].element for ij in poset.pairs},
        )


def decompose_proper(theta: BasisLinearMap, ring: Ring | None = None):
    """Find central lambda and central-valued mu with theta(e) = lambda e + mu(e).

    Returns a :class:`ProperDecomposition`, or None when theta is improper.
    """
    ring = ring or theta.ring
    _require_field(ring)
    if ring != theta.ring:
        raise InputError("ring does not match the map")
    if commuting_violation(theta) is not None:
        raise NotCommuting("decomposition is only defined for commuting maps")
    p = theta.poset
    pairs = p.pairs
    comps = connected_components_idx(p)
    K = len(comps)
    where = {x: k for k, comp in enumerate(comps) for x in comp}
    nunk = K + len(pairs) * K
    rhs = nunk
    red = RowReducer(ring, nunk + 1)
    for a, (i, j) in enumerate(pairs):
        img = theta.image(i, j)
        for x, y in pairs:
            row = {}
            if (x, y) == (i, j):
                row[where[i]] = ring.one
            if x == y:
                row[K + a * K + where[x]] = ring.one
            val = img[x, y]
            if val != 0:
                row[rhs] = ring.neg(val)
            if row:
                red.add(row)
    sol = red.solution(rhs)
    if sol is None:
        return None
    # pivot rows read x_p + ... + (-b) = 0, so x_p = -(row entry at rhs)
    x = [ring.neg(sol.get(u, ring.zero)) for u in range(nunk)]
    lam = CenterElement(p, ring, tuple(x[:K]))
    mu = {ij: CenterElement(p, ring, tuple(x[K + a * K: K + (a + 1) * K])) for a, ij in enumerate(pairs)}
    dec = ProperDecomposition(lam, mu)
    assert dec.reconstruct(p, ring) == theta
    return dec


def _normalize(vec: dict, ring: Ring) -> dict:
    """Smallest integral multiple over Q (first entry positive); first entry 1 over Z/p."""
    first = vec[min(vec)]
    if ring.spec.kind == "rationals":
        den = 1
        for v in vec.values():
            den = lcm(den, Fraction(v).denominator)
        num = 0
        for v in vec.values():
            num = gcd(num, (Fraction(v) * den).numerator)
        s = Fraction(den, num) * (1 if first > 0 else -1)
        return {u: Fraction(v) * s for u, v in vec.items()}
    inv = ring.inv(first)
    return {u: ring.mul(inv, v) for u, v in vec.items()}


def improper_witness(poset: PreOrder, ring: Ring = RATIONALS):
    """A commuting map that is not proper, or None when every commuting map is proper.

    Picks the first commuting-space basis vector outside the proper space.
    """
    _require_field(ring)
    cs = commuting_space(poset, ring)
    ps = proper_space(poset, ring)
    if cs.dimension == ps.dimension:
        return None
    red = ps.reducer()
    for vec in cs.vectors:
        if not red.contains(vec):
            theta = BasisLinearMap.from_vector(poset, ring, _normalize(vec, ring))
            assert decompose_proper(theta) is None
            return theta
    raise AssertionError("dimension gap without a vector outside the proper space")


def witness_diagonal_gap(theta: BasisLinearMap):
    """Some (i, j, k), j != i != k, with C^{ii}_{jj} != C^{ii}_{kk}, or None."""
    p = theta.poset
    n = p.n
    for i in range(n):
        others = [x for x in range(n) if x != i]
        for j in others:
            for k in others:
                if j < k and theta.coeff((i, i), (j, j)) != theta.coeff((i, i), (k, k)):
                    return i, j, k
    return None


def component_split(theta: BasisLinearMap) -> list:
    """Compress theta onto each component: e -> delta_k theta(e) delta_k for e in component k.

    Returns ``(subposet, map)`` pairs, one per connected component.
    """
    if commuting_violation(theta) is not None:
        raise NotCommuting("component split is defined for commuting maps")
    p, ring = theta.poset, theta.ring
    out = []
    for comp, delta in zip(connected_components_idx(p), center_basis(p, ring)):
        d = delta.element
        sub = p.subposet(comp)
        local = {x: k for k, x in enumerate(comp)}
        table = {}
        for i, j in p.pairs:
            if i in local and j in local:
                img = convolve(d, convolve(theta.image(i, j), d))
                table[local[i], local[j]] = IncidenceElement(
                    sub, ring, {(local[x], local[y]): v for (x, y), v in img.items()}
                )
        out.append((sub, BasisLinearMap(sub, ring, table)))
    return out


def is_proper(theta: BasisLinearMap) -> bool:
    return decompose_proper(theta) is not None

