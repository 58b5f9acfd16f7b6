"""Core graph data model: labelled undirected graphs with optional loops.

Vertices carry structured printable labels; adjacency is kept both as an
edge set and as per-vertex bitset rows so that walk powers and solver
propagation run on machine words.  All values are immutable after
construction and every operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import LoopedGraphError, PreconditionError, UnknownVertexError

# ---------------------------------------------------------------------------
# Vertex labels


@dataclass(frozen=True)
class Atom:
    """A plain text label."""

    text: str

    def render(self) -> str:
        return self.text


@dataclass(frozen=True)
class Sub:
    """Inner vertex of a subdivided edge: the i-th vertex named from u toward v."""

    u: "VertexLabel"
    v: "VertexLabel"
    i: int

    def render(self) -> str:
        return f"({self.u.render()},{self.v.render()})_{self.i}"


@dataclass(frozen=True)
class SetTuple:
    """A tuple of integer sets, used for helical and negative-power vertices.

    Each component is stored as a sorted tuple of integers; the rendered
    form looks like ``{1}|{2,3}``.
    """

    sets: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(*sets: Iterable[int]) -> "SetTuple":
        return SetTuple(tuple(tuple(sorted(s)) for s in sets))

    def render(self) -> str:
        return "|".join("{" + ",".join(str(x) for x in s) + "}" for s in self.sets)


@dataclass(frozen=True)
class Pair:
    """Composition label with an outer and an inner part (reserved)."""

    outer: "VertexLabel"
    inner: "VertexLabel"

    def render(self) -> str:
        return f"[{self.outer.render()};{self.inner.render()}]"


VertexLabel = Union[Atom, Sub, SetTuple, Pair]

#: Anything accepted where a vertex is expected: a label or its rendered text.
VertexLike = Union[VertexLabel, str]


def render_of(v: VertexLike) -> str:
    return v if isinstance(v, str) else v.render()


# ---------------------------------------------------------------------------
# Graph


class Graph:
    """A finite undirected graph, loops permitted.

    Vertex order is preserved from construction.  Edges are stored in
    canonical form: each pair sorted by rendered label, the pair ``(v, v)``
    encoding a loop.  Two graphs compare equal when their rendered vertex
    sequences and rendered edge sets coincide, so a JSON round trip
    preserves equality.
    """

    def __init__(self, vertices: tuple[VertexLabel, ...], edges: tuple[tuple[VertexLabel, VertexLabel], ...]):
        self.vertices = vertices
        self.edges = edges
        renders = [v.render() for v in vertices]
        if len(set(renders)) != len(renders):
            raise PreconditionError("duplicate vertex labels")
        self._renders = tuple(renders)
        self._index = {r: i for i, r in enumerate(renders)}
        self._key = (self._renders, frozenset((a.render(), b.render()) for a, b in edges))

    @staticmethod
    def build(vertices: Sequence[VertexLabel], edges: Iterable[tuple[VertexLike, VertexLike]]) -> "Graph":
        """Canonicalize and validate vertex/edge data into a Graph."""
        verts = tuple(v if not isinstance(v, str) else Atom(v) for v in vertices)
        lookup = {v.render(): v for v in verts}
        if len(lookup) != len(verts):
            raise PreconditionError("duplicate vertex labels")
        canon: dict[tuple[str, str], tuple[VertexLabel, VertexLabel]] = {}
        for a, b in edges:
            ra, rb = render_of(a), render_of(b)
            if ra not in lookup or rb not in lookup:
                missing = ra if ra not in lookup else rb
                raise UnknownVertexError(f"edge endpoint {missing!r} is not a vertex")
            if rb < ra:
                ra, rb = rb, ra
            canon[(ra, rb)] = (lookup[ra], lookup[rb])
        ordered = tuple(canon[k] for k in sorted(canon))
        return Graph(verts, ordered)

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    def index_of(self, v: VertexLike) -> int:
        try:
            return self._index[render_of(v)]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {render_of(v)!r}") from None

    def has_vertex(self, v: VertexLike) -> bool:
        return render_of(v) in self._index

    def has_edge(self, a: VertexLike, b: VertexLike) -> bool:
        ia, ib = self.index_of(a), self.index_of(b)
        return bool(self.adj_bits[ia] >> ib & 1)

    # -- cached structure ---------------------------------------------------

    @cached_property
    def adj_bits(self) -> tuple[int, ...]:
        """Per-vertex adjacency bitmasks; a loop sets the vertex's own bit."""
        rows = [0] * self.n
        for a, b in self.edges:
            ia, ib = self._index[a.render()], self._index[b.render()]
            rows[ia] |= 1 << ib
            rows[ib] |= 1 << ia
        return tuple(rows)

    @cached_property
    def adj_matrix(self) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.edges:
            ia, ib = self._index[a.render()], self._index[b.render()]
            mat[ia, ib] = True
            mat[ib, ia] = True
        return mat

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        # A loop contributes 1 to the bitset popcount; that convention is
        # only used for deterministic orderings, not for handshake counts.
        return tuple(row.bit_count() for row in self.adj_bits)

    @cached_property
    def has_loop(self) -> bool:
        return any(a.render() == b.render() for a, b in self.edges)

    @cached_property
    def loop_vertices(self) -> tuple[int, ...]:
        return tuple(self._index[a.render()] for a, b in self.edges if a.render() == b.render())

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as index tuples, each sorted, in order of smallest index."""
        seen = 0
        comps = []
        adj = self.adj_bits
        for start in range(self.n):
            if seen >> start & 1:
                continue
            frontier = 1 << start
            reach = frontier
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= adj[low.bit_length() - 1]
                    m ^= low
                frontier = nxt & ~reach
                reach |= frontier
            seen |= reach
            comps.append(tuple(_bits(reach)))
        return tuple(comps)

    def neighbors(self, v: VertexLike) -> list[VertexLabel]:
        """Neighbors of v, sorted by rendered label."""
        mask = self.adj_bits[self.index_of(v)]
        out = [self.vertices[i] for i in _bits(mask)]
        return sorted(out, key=lambda x: x.render())

    # -- heuristic bounds used by the solver ---------------------------------

    @cached_property
    def greedy_clique_lb(self) -> int:
        """Size of a greedily grown clique (a sound lower bound on the clique number)."""
        if self.has_loop:
            raise LoopedGraphError("clique bound on a loopy graph")
        order = sorted(range(self.n), key=lambda i: (-self.degrees[i], self._renders[i]))
        clique_mask = 0
        size = 0
        for i in order:
            if clique_mask & ~self.adj_bits[i] == 0:
                clique_mask |= 1 << i
                size += 1
        return size

    @cached_property
    def greedy_coloring_ub(self) -> int:
        """Colors used by first-fit greedy coloring (an upper bound on chi)."""
        if self.has_loop:
            raise LoopedGraphError("coloring bound on a loopy graph")
        order = sorted(range(self.n), key=lambda i: (-self.degrees[i], self._renders[i]))
        color = [-1] * self.n
        used = 0
        for i in order:
            taken = 0
            m = self.adj_bits[i]
            while m:
                low = m & -m
                c = color[low.bit_length() - 1]
                if c >= 0:
                    taken |= 1 << c
                m ^= low
            free = ~taken & ((1 << (used + 1)) - 1)
            c = (free & -free).bit_length() - 1
            color[i] = c
            used = max(used, c + 1)
        return used

    @cached_property
    def _odd_girth_length(self) -> int:
        # Shortest odd k with a closed walk of length k, found by composing
        # exact-walk-length boolean relations: A, A*A2, A*A2*A2, ...
        # Only meaningful for loopless non-bipartite graphs.
        a = self.adj_matrix.astype(np.float32)
        a2f = ((a @ a) > 0.5).astype(np.float32)
        cur = a
        k = 1
        while k <= self.n:
            if np.any(np.diagonal(cur) > 0.5):
                return k
            cur = ((cur @ a2f) > 0.5).astype(np.float32)
            k += 2
        raise AssertionError("non-bipartite graph must have an odd cycle of length <= n")

    def __getstate__(self):
        return {"vertices": self.vertices, "edges": self.edges}

    def __setstate__(self, state):
        self.__init__(state["vertices"], state["edges"])


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Odd girth


@dataclass(frozen=True)
class OddGirthValue:
    """Length of the shortest odd closed walk.

    ``kind`` is one of ``finite`` (length is an odd integer >= 3),
    ``infinite`` (bipartite: no odd closed walk) or ``one`` (a loop is an
    odd closed walk of length 1).
    """

    kind: str
    length: int | None = None

    @staticmethod
    def finite(g: int) -> "OddGirthValue":
        return OddGirthValue("finite", g)

    @staticmethod
    def infinite() -> "OddGirthValue":
        return OddGirthValue("infinite")

    @staticmethod
    def one() -> "OddGirthValue":
        return OddGirthValue("one", 1)

    def exceeds(self, value) -> bool:
        """Whether the odd girth is strictly greater than ``value``.

        ``one`` fails every threshold >= 1, per the precondition convention
        for exponent bounds of the form ``ratio < og(G)``.
        """
        if self.kind == "infinite":
            return True
        if self.kind == "one":
            return 1 > value
        return self.length > value

    def as_comparable(self):
        """The value as an int, or None when infinite."""
        return None if self.kind == "infinite" else self.length


def is_bipartite(G: Graph) -> bool:
    """True iff G has no odd closed walk; a loop counts as one."""
    if G.has_loop:
        return False
    adj = G.adj_bits
    side0 = 0
    side1 = 0
    for comp in G.components:
        start = comp[0]
        cur = 1 << start
        side = 0
        seen = cur
        while cur:
            if side == 0:
                side0 |= cur
            else:
                side1 |= cur
            nxt = 0
            m = cur
            while m:
                low = m & -m
                nxt |= adj[low.bit_length() - 1]
                m ^= low
            cur = nxt & ~seen
            seen |= nxt
            side ^= 1
    for i in range(G.n):
        row = adj[i]
        if side0 >> i & 1 and row & side0:
            return False
        if side1 >> i & 1 and row & side1:
            return False
    return True


def odd_girth(G: Graph) -> OddGirthValue:
    """Length of the shortest odd closed walk in G.

    Returns ``one`` when G has a loop, ``infinite`` when G is bipartite,
    and otherwise the (odd) length of the shortest odd cycle.
    """
    if G.has_loop:
        return OddGirthValue.one()
    if G.n == 0 or is_bipartite(G):
        return OddGirthValue.infinite()
    return OddGirthValue.finite(G._odd_girth_length)


def walk_neighborhood(G: Graph, v: VertexLike, i: int) -> list[VertexLabel]:
    """All vertices joined to v by a walk of length exactly i, sorted by label.

    ``i = 0`` yields ``[v]``.  Walks may repeat vertices and edges, so for
    example any neighbor's neighbor is reachable at i = 2, including v
    itself when it has a neighbor.
    """
    if i < 0:
        raise PreconditionError("walk length must be nonnegative")
    idx = G.index_of(v)
    mask = 1 << idx
    adj = G.adj_bits
    for _ in range(i):
        nxt = 0
        m = mask
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        mask = nxt
    labels = [G.vertices[j] for j in _bits(mask)]
    return sorted(labels, key=lambda x: x.render())


def induced_subgraph(G: Graph, S: Iterable[VertexLike]) -> Graph:
    """The subgraph induced on S, vertex order inherited from G."""
    keep = set()
    for v in S:
        keep.add(G.index_of(v))
    verts = [G.vertices[i] for i in sorted(keep)]
    kept_renders = {v.render() for v in verts}
    edges = [(a, b) for a, b in G.edges if a.render() in kept_renders and b.render() in kept_renders]
    return Graph.build(verts, edges)


def laplacian_lambda_max(G: Graph) -> float:
    """Largest Laplacian eigenvalue of a simple graph, to 1e-9 accuracy."""
    if G.has_loop:
        raise LoopedGraphError("Laplacian spectrum requires a loopless graph")
    if G.n == 0:
        return 0.0
    a = G.adj_matrix.astype(np.float64)
    lap = np.diag(a.sum(axis=1)) - a
    return float(np.linalg.eigvalsh(lap)[-1])
