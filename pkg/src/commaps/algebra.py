"""The incidence algebra I(X, R) of a finite pre-order.

Elements are sparse tables ``(i, j) -> value`` over index pairs with
``i <= j``; zero entries are never stored, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, MixedAmbient, NotRelated
from .preorder import PreOrder, connected_components_idx
from .ring import RATIONALS, Ring


class IncidenceElement:
    __slots__ = ("poset", "ring", "_c", "_hash")

    def __init__(self, poset: PreOrder, ring: Ring, coeffs=None):
        self.poset = poset
        self.ring = ring
        c = {}
        if coeffs:
            leq = poset.leq
            for (i, j), v in dict(coeffs).items():
                if not leq[i][j]:
                    raise NotRelated(f"{poset.label(i)} is not <= {poset.label(j)}")
                v = ring(v)
                if v != 0:
                    c[i, j] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, poset, ring, c):
        # trusted constructor: c is already canonical
        obj = cls.__new__(cls)
        obj.poset, obj.ring, obj._c, obj._hash = poset, ring, c, None
        return obj

    @classmethod
    def zero(cls, poset, ring=RATIONALS):
        return cls._raw(poset, ring, {})

    def __getitem__(self, ij):
        return self._c.get(ij, self.ring.zero)

    def coeff(self, x, y):
        """Coefficient at a pair of labels."""
        p = self.poset
        return self[p.index(x), p.index(y)]

    def items(self):
        return sorted(self._c.items())

    @property
    def support(self):
        return sorted(self._c)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if not isinstance(other, IncidenceElement):
            return NotImplemented
        return self.poset == other.poset and self.ring == other.ring and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.poset, self.ring, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        if not self._c:
            return "0"
        lab = self.poset.elements
        return " + ".join(f"{v}*e[{lab[i]},{lab[j]}]" for (i, j), v in self.items())

    def _check(self, other):
        if self.poset != other.poset or self.ring != other.ring:
            raise MixedAmbient("elements live in different incidence algebras")

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        c = dict(self._c)
        for k, v in other._c.items():
            s = add(c[k], v) if k in c else v
            if s == 0:
                c.pop(k, None)
            else:
                c[k] = s
        return IncidenceElement._raw(self.poset, self.ring, c)

    def __neg__(self):
        neg = self.ring.neg
        return IncidenceElement._raw(self.poset, self.ring, {k: neg(v) for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        a = self.ring(a)
        mul = self.ring.mul
        c = {}
        for k, v in self._c.items():
            w = mul(a, v)
            if w != 0:
                c[k] = w
        return IncidenceElement._raw(self.poset, self.ring, c)

    def __mul__(self, other):
        if isinstance(other, IncidenceElement):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, a):
        return self.scale(a)


def _same(f, g):
    if f.poset != g.poset or f.ring != g.ring:
        raise MixedAmbient("elements live in different incidence algebras")


def element(poset, ring, coeffs) -> IncidenceElement:
    """Element from a mapping keyed by label pairs."""
    return IncidenceElement(poset, ring, {(poset.index(x), poset.index(y)): v for (x, y), v in dict(coeffs).items()})


def basis_element(poset: PreOrder, x, y, ring: Ring = RATIONALS) -> IncidenceElement:
    """e_xy, given labels."""
    i, j = poset.index(x), poset.index(y)
    return basis_element_idx(poset, i, j, ring)


def basis_element_idx(poset, i, j, ring=RATIONALS):
    if not poset.leq[i][j]:
        raise NotRelated(f"{poset.label(i)} is not <= {poset.label(j)}")
    return IncidenceElement._raw(poset, ring, {(i, j): ring.one})


def unity(poset: PreOrder, ring: Ring = RATIONALS) -> IncidenceElement:
    return IncidenceElement._raw(poset, ring, {(i, i): ring.one for i in range(poset.n)})


def convolve(f: IncidenceElement, g: IncidenceElement) -> IncidenceElement:
    """(fg)(x, y) = sum over x <= z <= y of f(x, z) g(z, y)."""
    _same(f, g)
    ring = f.ring
    add, mul = ring.add, ring.mul
    rows = {}
    for (z, y), v in g._c.items():
        rows.setdefault(z, []).append((y, v))
    out = {}
    for (x, z), a in f._c.items():
        for y, b in rows.get(z, ()):
            k = (x, y)
            out[k] = add(out[k], mul(a, b)) if k in out else mul(a, b)
    return IncidenceElement._raw(f.poset, ring, {k: v for k, v in out.items() if v != 0})


def commutator(f: IncidenceElement, g: IncidenceElement) -> IncidenceElement:
    return convolve(f, g) - convolve(g, f)


def restrict(f: IncidenceElement, x, y) -> IncidenceElement:
    """Keep f on pairs (u, v) with x <= u <= v <= y (labels)."""
    p = f.poset
    return restrict_idx(f, p.index(x), p.index(y))


def restrict_idx(f, i, j):
    leq = f.poset.leq
    if not leq[i][j]:
        raise NotRelated(f"{f.poset.label(i)} is not <= {f.poset.label(j)}")
    c = {(u, v): a for (u, v), a in f._c.items() if leq[i][u] and leq[v][j]}
    return IncidenceElement._raw(f.poset, f.ring, c)


def corner(f: IncidenceElement, x, y) -> IncidenceElement:
    """e_xx f e_yy, computed by convolution; equals f(x, y) e_xy."""
    p = f.poset
    i, j = p.index(x), p.index(y)
    if not p.leq[i][j]:
        raise NotRelated(f"{x} is not <= {y}")
    ring = f.ring
    return convolve(convolve(basis_element_idx(p, i, i, ring), f), basis_element_idx(p, j, j, ring))


@dataclass(frozen=True)
class CenterElement:
    """sum_k coeffs[k] * delta_k over the connected components of the poset."""

    poset: PreOrder
    ring: Ring
    coeffs: tuple

    @property
    def components(self):
        return connected_components_idx(self.poset)

    @property
    def element(self) -> IncidenceElement:
        c = {}
        for a, comp in zip(self.coeffs, self.components):
            a = self.ring(a)
            if a != 0:
                for x in comp:
                    c[x, x] = a
        return IncidenceElement._raw(self.poset, self.ring, c)

    def is_zero(self):
        return all(a == 0 for a in self.coeffs)


def center_basis(poset: PreOrder, ring: Ring = RATIONALS) -> list:
    """The component idempotents delta_k, one per connected component."""
    k = len(connected_components_idx(poset))
    return [CenterElement(poset, ring, tuple(ring.one if a == b else ring.zero for b in range(k))) for a in range(k)]


def is_central(f: IncidenceElement) -> bool:
    """Commutes with every basis element."""
    p, ring = f.poset, f.ring
    return all(commutator(f, basis_element_idx(p, i, j, ring)).is_zero() for i, j in p.pairs)


def as_center_element(f: IncidenceElement):
    """Express a central element on the delta_k, or return None if f is not central."""
    p = f.poset
    if any(i != j for i, j in f._c):
        return None
    coeffs = []
    for comp in connected_components_idx(p):
        vals = {f[x, x] for x in comp}
        if len(vals) != 1:
            return None
        coeffs.append(vals.pop())
    return CenterElement(p, f.ring, tuple(coeffs))


# -- serialization -------------------------------------------------------------

def element_to_json(f: IncidenceElement) -> list:
    lab = f.poset.elements
    return [[lab[i], lab[j], f.ring.format(v)] for (i, j), v in f.items()]


def element_from_json(poset, ring, triples, where="element") -> IncidenceElement:
    if not isinstance(triples, list):
        raise InputError(f"{where}: expected a list of [x, y, coeff] triples")
    c = {}
    for k, t in enumerate(triples):
        if not (isinstance(t, list) and len(t) == 3):
            raise InputError(f"{where}[{k}]: expected [x, y, coeff]")
        x, y, v = t
        i, j = poset.index(x), poset.index(y)
        if not poset.leq[i][j]:
            raise InputError(f"{where}[{k}]: {x} is not <= {y}")
        val = ring.parse(str(v))
        c[i, j] = ring.add(c[i, j], val) if (i, j) in c else val
    return IncidenceElement(poset, ring, c)
