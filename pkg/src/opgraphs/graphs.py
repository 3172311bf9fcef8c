"""Adjacency graphs of operator classes, plus small reference graphs.

The vertex set of a class graph is the set of eigen-flags; an edge
joins two flags exactly when their operators differ by a rank-two
perturbation with invariant image and kernel, which happens exactly
when the flags move two slots against each other.  Each edge carries
the pair of moved slots as its label.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from .spectral import adjacency_slots, contract, enumerate_class


class TypeMapError(RuntimeError):
    """A vertex permutation does not act coherently on edge labels."""


class BlockMapError(RuntimeError):
    """A vertex permutation does not act coherently on eigenspace blocks."""


class LabeledGraph:
    """Finite class graph with slot-pair edge labels."""

    def __init__(self, vertices, edges, edge_type):
        self.vertices = tuple(vertices)
        self.index = {flag.key(): v for v, flag in enumerate(self.vertices)}
        self.edges = tuple(sorted(edges))
        self.edge_type = dict(edge_type)
        self._adjlist = None

    @classmethod
    def build(cls, signature, flags=None):
        """Enumerate the class (unless flags are supplied) and connect it.

        Two flags can only be adjacent when they agree on every slot
        but two, so candidates are bucketed by the frozen slots before
        the adjacency test runs.
        """
        if flags is None:
            flags = enumerate_class(signature)
        flags = sorted(flags, key=lambda f: f.key())
        k = signature.k
        edges = []
        edge_type = {}
        for i, j in combinations(range(k), 2):
            buckets = {}
            for v, flag in enumerate(flags):
                frozen = tuple(flag.spaces[t].rows for t in range(k) if t not in (i, j))
                buckets.setdefault(frozen, []).append(v)
            for members in buckets.values():
                for a, b in combinations(members, 2):
                    slots = adjacency_slots(flags[a], flags[b])
                    if slots == (i, j):
                        edges.append((a, b))
                        edge_type[(a, b)] = slots
        return cls(flags, edges, edge_type)

    @property
    def n(self):
        return len(self.vertices)

    def adjacency(self):
        if self._adjlist is None:
            nbrs = [[] for _ in range(self.n)]
            for u, v in self.edges:
                nbrs[u].append(v)
                nbrs[v].append(u)
            self._adjlist = tuple(tuple(sorted(x)) for x in nbrs)
        return self._adjlist

    def degree_histogram(self):
        return Counter(len(nbrs) for nbrs in self.adjacency())

    def edges_of_type(self, slots):
        slots = tuple(sorted(slots))
        return tuple(e for e in self.edges if self.edge_type[e] == slots)

    def restricted_adjacency(self, keep):
        """Adjacency list using only edges whose label passes the filter."""
        nbrs = [[] for _ in range(self.n)]
        for e in self.edges:
            if keep(self.edge_type[e]):
                u, v = e
                nbrs[u].append(v)
                nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def components(self, keep=None):
        """Connected components, optionally restricted by edge label.

        Returns a sorted tuple of sorted vertex tuples.
        """
        adj = self.adjacency() if keep is None else self.restricted_adjacency(keep)
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            queue = [start]
            while queue:
                x = queue.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            out.append(tuple(sorted(comp)))
        return tuple(sorted(out))

    def ij_components(self, i, j):
        """Components of the subgraph keeping only (i, j)-labeled edges."""
        want = tuple(sorted((i, j)))
        return self.components(lambda t: t == want)

    def avoiding_components(self, i):
        """Components after deleting every edge whose label touches slot i."""
        return self.components(lambda t: i not in t)

    def eigenspace_blocks(self, i):
        """Group vertices by their slot-i space.

        Returns a dict mapping each space to the sorted tuple of
        vertices carrying it.
        """
        blocks = {}
        for v, flag in enumerate(self.vertices):
            blocks.setdefault(flag.spaces[i], []).append(v)
        return {s: tuple(vs) for s, vs in blocks.items()}

    def fiber_partition(self, i, j):
        """Vertices grouped by their (i, j)-contraction.

        Same shape as components(): a sorted tuple of sorted tuples.
        """
        groups = {}
        for v, flag in enumerate(self.vertices):
            groups.setdefault(contract(flag, i, j).key(), []).append(v)
        return tuple(sorted(tuple(sorted(g)) for g in groups.values()))

    def is_edge(self, u, v):
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_type


def induced_type_map(graph, perm):
    """How a vertex permutation moves edge labels.

    For an automorphism of the labeled graph the image of an edge is an
    edge, and the map on labels must not depend on which edge of a given
    label is examined.  Raises TypeMapError otherwise; returns the dict
    label -> label.
    """
    tau = {}
    for (u, v), t in graph.edge_type.items():
        a, b = perm[u], perm[v]
        if a > b:
            a, b = b, a
        t2 = graph.edge_type.get((a, b))
        if t2 is None:
            raise TypeMapError(
                f"image of edge {(u, v)} under the permutation is not an edge")
        if t in tau and tau[t] != t2:
            raise TypeMapError(
                f"label {t} maps to both {tau[t]} and {t2}")
        tau[t] = t2
    return tau


def classify_type_map(tau, k):
    """Recognize a label map as slot-permutation induced or not.

    Each label is an unordered slot pair.  The map is
    permutation-induced when some permutation d of the slots sends
    every pair {i, j} to {d(i), d(j)}; with four slots the complement
    map on pairs commutes with that action and gives a second family.
    Returns ("permutation", d), ("complement-composed", d) or
    ("other", None), taking the lexicographically least witness d.
    """
    from itertools import permutations

    def pair_image(d, t):
        return tuple(sorted((d[t[0]], d[t[1]])))

    def complement(t):
        return tuple(sorted(set(range(k)) - set(t)))

    for d in permutations(range(k)):
        if all(tau[t] == pair_image(d, t) for t in tau):
            return ("permutation", d)
    if k == 4:
        for d in permutations(range(k)):
            if all(tau[t] == complement(pair_image(d, t)) for t in tau):
                return ("complement-composed", d)
    return ("other", None)


def eigenspace_action(graph, perm, i, target):
    """The map on slot-i spaces carried by a vertex permutation.

    When the permutation sends every vertex with slot-i space S to a
    vertex whose slot-`target` space depends only on S, it induces a
    well-defined bijection on the eigenspace blocks; that map is
    returned as a dict.  Raises BlockMapError when the image space
    varies inside one block.
    """
    blocks = graph.eigenspace_blocks(i)
    mapping = {}
    for space, verts in blocks.items():
        images = {graph.vertices[perm[v]].spaces[target] for v in verts}
        if len(images) != 1:
            raise BlockMapError(
                f"slot {i} block of dimension {space.dim} maps to "
                f"{len(images)} distinct slot {target} spaces")
        mapping[space] = images.pop()
    return mapping


def orthogonality_compatible(map_i, map_j):
    """Whether two block maps preserve orthogonality across slots.

    Checks h-orthogonality both ways for every pair of spaces drawn
    from the two domains; returns the list of violating pairs (empty
    means compatible).
    """
    bad = []
    for s, s2 in map_i.items():
        for t, t2 in map_j.items():
            if s.is_orthogonal_to(t) != s2.is_orthogonal_to(t2):
                bad.append((s, t))
    return bad


# ---------------------------------------------------------------------------
# plain reference graphs


class SimpleGraph:
    """Unlabeled graph on 0..n-1 with optional vertex labels."""

    def __init__(self, adjlist, labels=None):
        self.adjlist = tuple(tuple(sorted(x)) for x in adjlist)
        self.labels = tuple(labels) if labels is not None else None

    @property
    def n(self):
        return len(self.adjlist)

    @property
    def edges(self):
        return tuple((u, v) for u in range(self.n)
                     for v in self.adjlist[u] if u < v)

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return cls([sorted(x) for x in nbrs], labels)


def johnson_graph(k):
    """Two-element subsets of a k-set, joined when they meet."""
    labels = list(combinations(range(k), 2))
    pos = {t: v for v, t in enumerate(labels)}
    edges = []
    for s, t in combinations(labels, 2):
        if set(s) & set(t):
            edges.append((pos[s], pos[t]))
    return SimpleGraph.from_edges(len(labels), edges, labels)


def petersen_graph():
    """Complement of the k=5 pair graph: pairs joined when disjoint."""
    labels = list(combinations(range(5), 2))
    pos = {t: v for v, t in enumerate(labels)}
    edges = []
    for s, t in combinations(labels, 2):
        if not set(s) & set(t):
            edges.append((pos[s], pos[t]))
    return SimpleGraph.from_edges(len(labels), edges, labels)


def complete_graph(n):
    return SimpleGraph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n):
    return SimpleGraph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n):
    return SimpleGraph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def pair_complement_map(k):
    """The complement permutation on 2-subsets of a 4-set, as vertex indices."""
    if k != 4:
        raise ValueError("pair complement needs exactly four points")
    labels = list(combinations(range(k), 2))
    pos = {t: v for v, t in enumerate(labels)}
    return tuple(pos[tuple(sorted(set(range(4)) - set(t)))] for t in labels)
