"""Circles in the comparability graph and the equivalence they induce on directed edges.

Two directed edges are equivalent when some circle passes through both
underlying comparabilities.  A 2-circle is just one comparable pair, so
(x, y) and (y, x) always share a class.  :func:`equiv_classes` computes the
classes from the biconnected blocks of the comparability graph;
:func:`equiv_classes_bruteforce` enumerates circles explicitly and is kept
as the oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .preorder import (
    DEFAULT_ORACLE_BOUND,
    PreOrder,
    check_bound,
    comparability_graph,
    connected_components_idx,
)


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True)
class Circle:
    poset: PreOrder
    vertices: tuple  # element indices

    def __post_init__(self):
        if not is_circle(self.poset, self.vertices):
            raise ValueError(f"{self.labels} is not a circle")

    @property
    def labels(self):
        return [self.poset.label(v) for v in self.vertices]

    def comparabilities(self):
        """Undirected edges {a, b} (a < b as indices) traversed by the circle."""
        vs = self.vertices
        if len(vs) == 2:
            return {tuple(sorted(vs))}
        return {tuple(sorted((vs[k], vs[(k + 1) % len(vs)]))) for k in range(len(vs))}

    def contains(self, edge) -> bool:
        return tuple(sorted(edge)) in self.comparabilities()


def is_circle(poset: PreOrder, vertices) -> bool:
    vs = list(vertices)
    if len(vs) < 2 or len(set(vs)) != len(vs):
        return False
    if len(vs) == 2:
        return poset.comparable(vs[0], vs[1])
    return all(poset.comparable(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs)))


@dataclass(frozen=True)
class EdgePartition:
    poset: PreOrder
    classes: tuple  # tuple of tuples of directed index pairs, each sorted; classes sorted by first edge
    per_component: tuple  # number of classes in each connected component

    def class_of(self, edge) -> int:
        for k, cls in enumerate(self.classes):
            if edge in cls:
                return k
        raise KeyError(edge)

    def labelled(self):
        lab = self.poset.elements
        return [[(lab[i], lab[j]) for i, j in cls] for cls in self.classes]

    def classes_by_component(self):
        comps = connected_components_idx(self.poset)
        where = {x: k for k, comp in enumerate(comps) for x in comp}
        out = [[] for _ in comps]
        for cls in self.classes:
            out[where[cls[0][0]]].append(cls)
        return out


def _partition(poset: PreOrder, groups) -> EdgePartition:
    classes = tuple(sorted(tuple(sorted(g)) for g in groups))
    comps = connected_components_idx(poset)
    where = {x: k for k, comp in enumerate(comps) for x in comp}
    counts = [0] * len(comps)
    for cls in classes:
        counts[where[cls[0][0]]] += 1
    return EdgePartition(poset, classes, tuple(counts))


def _directed_over(poset, a, b):
    out = []
    if poset.leq[a][b]:
        out.append((a, b))
    if poset.leq[b][a]:
        out.append((b, a))
    return out


def biconnected_blocks(n: int, adj) -> list:
    """Edge sets of the biconnected blocks of an undirected simple graph.

    Iterative Hopcroft-Tarjan; edges are returned as (a, b) with a < b.
    """
    disc = [-1] * n
    low = [0] * n
    t = 0
    blocks = []
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        estack = []
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] == -1:
                    estack.append((u, v))
                    disc[v] = low[v] = t
                    t += 1
                    stack.append((v, u, iter(adj[v])))
                    advanced = True
                    break
                if v != parent and disc[v] < disc[u]:
                    estack.append((u, v))
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    block = []
                    while True:
                        a, b = estack.pop()
                        block.append((min(a, b), max(a, b)))
                        if (a, b) == (parent, u):
                            break
                    blocks.append(block)
    return blocks


def equiv_classes(poset: PreOrder) -> EdgePartition:
    """Classes of directed edges under the circle relation, via graph blocks."""
    g = comparability_graph(poset)
    groups = []
    for block in biconnected_blocks(poset.n, g.adjacency()):
        if len(block) >= 2:
            # a block with two or more edges of a simple graph is 2-connected, hence has a cycle through any two edges
            groups.append([d for a, b in block for d in _directed_over(poset, a, b)])
        else:
            (a, b), = block
            groups.append(_directed_over(poset, a, b))
    return _partition(poset, groups)


def simple_cycles(n: int, adj):
    """Yield each simple cycle (length >= 3) of an undirected graph once, as a vertex tuple."""
    nbrs = [sorted(a) for a in adj]
    for s in range(n):
        path = [s]
        on_path = [False] * n
        on_path[s] = True
        stack = [iter(v for v in nbrs[s] if v > s)]
        while stack:
            for v in stack[-1]:
                if on_path[v]:
                    continue
                path.append(v)
                on_path[v] = True
                if len(path) >= 3 and s in nbrs[v] and path[1] < v:
                    yield tuple(path)
                stack.append(iter(w for w in nbrs[v] if w > s))
                break
            else:
                stack.pop()
                on_path[path.pop()] = False


def equiv_classes_bruteforce(poset: PreOrder, bound: int = DEFAULT_ORACLE_BOUND) -> EdgePartition:
    """Same classes as :func:`equiv_classes`, by enumerating every circle."""
    check_bound(poset.n, bound)
    g = comparability_graph(poset)
    uf = UnionFind(g.edges)
    for cyc in simple_cycles(poset.n, g.adjacency()):
        edges = [tuple(sorted((cyc[k], cyc[(k + 1) % len(cyc)]))) for k in range(len(cyc))]
        for e in edges[1:]:
            uf.union(edges[0], e)
    # 2-circles: both orientations of one comparability
    groups = [[d for a, b in grp for d in _directed_over(poset, a, b)] for grp in uf.groups()]
    return _partition(poset, groups)


def circle_through(poset: PreOrder, e1, e2, bound: int = DEFAULT_ORACLE_BOUND):
    """A circle containing both directed edges, or None."""
    check_bound(poset.n, bound)
    u1, u2 = tuple(sorted(e1)), tuple(sorted(e2))
    if u1 == u2:
        return Circle(poset, u1)
    g = comparability_graph(poset)
    for cyc in simple_cycles(poset.n, g.adjacency()):
        c = Circle(poset, cyc)
        if c.contains(u1) and c.contains(u2):
            return c
    return None


@dataclass(frozen=True)
class PropernessReport:
    guaranteed: bool
    components: tuple  # element index lists
    per_component: tuple  # class counts
    partition: EdgePartition


def properness_guaranteed(poset: PreOrder) -> PropernessReport:
    """Whether every commuting map on I(X, R) is proper, for any 2-torsion-free R.

    True iff the directed edges of each connected component form at most
    one class.  No ring argument: the answer depends on the pre-order alone.
    """
    part = equiv_classes(poset)
    comps = tuple(tuple(c) for c in connected_components_idx(poset))
    return PropernessReport(all(k <= 1 for k in part.per_component), comps, part.per_component, part)
