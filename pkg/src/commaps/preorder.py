"""Finite pre-ordered sets.

A :class:`PreOrder` stores its labels in input order and the relation as a
dense boolean table over element indices.  Everything downstream works with
indices; labels only matter at the I/O boundary.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DuplicateElement, InputError, NotTransitive, OracleBoundExceeded, UnknownElement

DEFAULT_ORACLE_BOUND = 8


def transitive_closure(n, rel):
    """Warshall closure of a boolean n x n table given as nested lists."""
    rel = [list(row) for row in rel]
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


@dataclass(frozen=True, eq=False)
class PreOrder:
    elements: tuple
    leq: tuple  # leq[i][j] is True iff elements[i] <= elements[j]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    def __eq__(self, other):
        return isinstance(other, PreOrder) and self.elements == other.elements and self.leq == other.leq

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __repr__(self):
        rels = ", ".join(f"{self.elements[i]}<{self.elements[j]}" for i, j in self.strict_pairs)
        return f"PreOrder([{', '.join(self.elements)}]; {rels})"

    def __len__(self):
        return len(self.elements)

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def le(self, x, y) -> bool:
        """``x <= y`` on labels."""
        return self.leq[self.index(x)][self.index(y)]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq[i][j] or self.leq[j][i]

    @cached_property
    def pairs(self) -> tuple:
        """Index pairs (i, j) with i <= j, lexicographic: the basis of I(X, R)."""
        return tuple((i, j) for i in range(self.n) for j in range(self.n) if self.leq[i][j])

    @cached_property
    def pair_pos(self) -> dict:
        return {ij: k for k, ij in enumerate(self.pairs)}

    @cached_property
    def pairs_set(self) -> frozenset:
        return frozenset(self.pairs)

    @cached_property
    def strict_pairs(self) -> tuple:
        return tuple((i, j) for i, j in self.pairs if i != j)

    @cached_property
    def above(self) -> tuple:
        """above[i] = indices j with i <= j."""
        return tuple(tuple(j for j in range(self.n) if self.leq[i][j]) for i in range(self.n))

    @cached_property
    def below(self) -> tuple:
        return tuple(tuple(i for i in range(self.n) if self.leq[i][j]) for j in range(self.n))

    def interval(self, i: int, j: int) -> tuple:
        """Indices z with i <= z <= j."""
        return tuple(z for z in self.above[i] if self.leq[z][j])

    def is_connected(self) -> bool:
        return len(connected_components_idx(self)) <= 1

    def relabel(self, labels) -> "PreOrder":
        """Same relation with element i renamed to ``labels[i]``."""
        return PreOrder(tuple(str(x) for x in labels), self.leq)

    def permuted(self, perm) -> "PreOrder":
        """Reorder elements so the new element k is the old element ``perm[k]``."""
        n = self.n
        leq = tuple(tuple(self.leq[perm[a]][perm[b]] for b in range(n)) for a in range(n))
        return PreOrder(tuple(self.elements[p] for p in perm), leq)

    def subposet(self, idx) -> "PreOrder":
        idx = list(idx)
        return PreOrder(
            tuple(self.elements[i] for i in idx),
            tuple(tuple(self.leq[a][b] for b in idx) for a in idx),
        )

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "relations": [[self.elements[i], self.elements[j]] for i, j in self.strict_pairs],
            "transitive_close": False,
        }


def build_preorder(elements, strict_pairs=(), auto_close: bool = True) -> PreOrder:
    """Build a pre-order from labels and generating pairs ``(x, y)`` meaning x <= y.

    Reflexive pairs are always added.  With ``auto_close`` the transitive
    closure is taken, otherwise the pairs must already be transitive.
    """
    labels = tuple(str(x) for x in elements)
    index = {}
    for i, x in enumerate(labels):
        if x in index:
            raise DuplicateElement(f"duplicate element {x!r}")
        index[x] = i
    n = len(labels)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for pair in strict_pairs:
        x, y = (str(v) for v in pair)
        for v in (x, y):
            if v not in index:
                raise UnknownElement(f"relation {pair!r} references unknown element {v!r}")
        rel[index[x]][index[y]] = True
    closed = transitive_closure(n, rel)
    if not auto_close and closed != rel:
        missing = [(labels[i], labels[j]) for i in range(n) for j in range(n) if closed[i][j] and not rel[i][j]]
        raise NotTransitive(f"relation is not transitive; missing pairs {missing}")
    return PreOrder(labels, tuple(tuple(row) for row in closed))


def chain(n: int) -> PreOrder:
    """1 < 2 < ... < n, realizing the triangular algebra T_n."""
    return build_preorder(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def full_preorder(n: int) -> PreOrder:
    """Every pair comparable both ways, realizing the full matrix algebra M_n."""
    return PreOrder(tuple(str(i) for i in range(1, n + 1)), tuple((True,) * n for _ in range(n)))


def antichain(n: int) -> PreOrder:
    return build_preorder(range(1, n + 1), [])


def disjoint_union(p: PreOrder, q: PreOrder) -> PreOrder:
    """P followed by Q; labels of Q are primed when they clash with P."""
    labels = list(p.elements)
    taken = set(labels)
    for x in q.elements:
        while x in taken:
            x = x + "'"
        labels.append(x)
        taken.add(x)
    n, m = p.n, q.n
    leq = [[False] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            leq[i][j] = p.leq[i][j]
    for i in range(m):
        for j in range(m):
            leq[n + i][n + j] = q.leq[i][j]
    return PreOrder(tuple(labels), tuple(tuple(r) for r in leq))


# -- graph views -----------------------------------------------------------------

def connected_components_idx(p: PreOrder) -> list:
    seen = [False] * p.n
    comps = []
    for start in range(p.n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(p.n):
                if not seen[v] and p.comparable(u, v):
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def connected_components(p: PreOrder) -> list:
    """Components of the comparability graph, as label lists in input order."""
    return [[p.elements[i] for i in comp] for comp in connected_components_idx(p)]


def directed_edges(p: PreOrder) -> list:
    """The strict pairs (x, y), x <= y, x != y, as label tuples."""
    return [(p.elements[i], p.elements[j]) for i, j in p.strict_pairs]


@dataclass(frozen=True)
class ComparabilityGraph:
    vertices: tuple
    edges: tuple  # index pairs (a, b) with a < b

    def adjacency(self) -> list:
        adj = [[] for _ in self.vertices]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def labelled_edges(self) -> list:
        return [(self.vertices[a], self.vertices[b]) for a, b in self.edges]


def comparability_graph(p: PreOrder) -> ComparabilityGraph:
    edges = tuple((a, b) for a in range(p.n) for b in range(a + 1, p.n) if p.comparable(a, b))
    return ComparabilityGraph(p.elements, edges)


def _dot_id(label: str) -> str:
    return json.dumps(label)


def to_dot(p: PreOrder, directed: bool = False) -> str:
    """DOT text for the comparability graph, or for the directed edge set.

    Directed output draws e_xy as an arrow from y to x, matching the
    digraph-algebra picture.
    """
    lines = ["digraph D {" if directed else "graph G {"]
    for x in p.elements:
        lines.append(f"  {_dot_id(x)};")
    if directed:
        for i, j in p.strict_pairs:
            lines.append(f"  {_dot_id(p.elements[j])} -> {_dot_id(p.elements[i])};")
    else:
        for a, b in comparability_graph(p).edges:
            lines.append(f"  {_dot_id(p.elements[a])} -- {_dot_id(p.elements[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON input --------------------------------------------------------------------

def preorder_from_json(doc) -> PreOrder:
    """Build from ``{"elements": [...], "relations": [[x, y], ...], "transitive_close": bool}``."""
    if not isinstance(doc, dict):
        raise InputError("poset document must be a JSON object")
    if "elements" not in doc:
        raise InputError("poset document: missing field 'elements'")
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(x, (str, int)) for x in elements):
        raise InputError("poset document: field 'elements' must be a list of strings")
    relations = doc.get("relations", [])
    if not isinstance(relations, list):
        raise InputError("poset document: field 'relations' must be a list")
    for k, pair in enumerate(relations):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InputError(f"poset document: relations[{k}] must be a pair [x, y]")
    close = doc.get("transitive_close", True)
    if not isinstance(close, bool):
        raise InputError("poset document: field 'transitive_close' must be a boolean")
    return build_preorder(elements, relations, auto_close=close)


def load_preorder(path) -> PreOrder:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return preorder_from_json(doc)
    except InputError as exc:
        raise type(exc)(f"{path}: {exc}") from exc


# -- enumeration ---------------------------------------------------------------------

def check_bound(n: int, bound: int = DEFAULT_ORACLE_BOUND):
    if n > bound:
        raise OracleBoundExceeded(f"|X| = {n} exceeds the oracle bound {bound}")


def enumerate_preorders(n: int, bound: int = DEFAULT_ORACLE_BOUND):
    """Yield every labeled pre-order on elements "1".."n".

    Scans all 2^(n(n-1)) relations, so this is only meant for n <= 4 or so.
    """
    check_bound(n, bound)
    labels = tuple(str(i) for i in range(1, n + 1))
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(off)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(off):
            if mask >> k & 1:
                rel[i][j] = True
        if _is_transitive(n, rel):
            yield PreOrder(labels, tuple(tuple(r) for r in rel))


def _is_transitive(n, rel) -> bool:
    for i in range(n):
        ri = rel[i]
        for k in range(n):
            if ri[k] and i != k:
                rk = rel[k]
                for j in range(n):
                    if rk[j] and not ri[j]:
                        return False
    return True


def random_preorder(n: int, rng: random.Random, density: float | None = None) -> PreOrder:
    """Random pre-order: merge elements into random classes, then close a random DAG on the classes.

    ``density`` is the probability of each forward class pair before closure;
    drawn at random when not given so samples cover sparse and dense shapes.
    """
    if density is None:
        density = rng.choice([0.1, 0.2, 0.3, 0.45, 0.6])
    blocks = list(range(n))
    rng.shuffle(blocks)
    # each element picks an earlier representative with small probability
    cls = list(range(n))
    for k in range(1, n):
        if rng.random() < 0.15:
            cls[blocks[k]] = cls[blocks[rng.randrange(k)]]
    order = sorted(set(cls), key=lambda c: rng.random())
    rank = {c: r for r, c in enumerate(order)}
    rel = [[False] * n for _ in range(n)]
    up = {}
    for a in order:
        for b in order:
            up[a, b] = a == b or (rank[a] < rank[b] and rng.random() < density)
    for i in range(n):
        for j in range(n):
            rel[i][j] = up[cls[i], cls[j]]
    closed = transitive_closure(n, rel)
    return PreOrder(tuple(str(i) for i in range(1, n + 1)), tuple(tuple(r) for r in closed))
