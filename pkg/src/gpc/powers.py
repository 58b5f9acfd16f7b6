"""Graph powers: subdivision, exact-walk powers, fractional powers, and
the exponential negative fractional powers.

The exponent of a fractional power is an odd fraction (2r+1)/(2s+1) kept
unreduced: reduced and unreduced variants are different graphs (with a
different number of vertices) even though they are hom-equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import config
from .errors import LoopedGraphError, PreconditionError, SizeCapExceededError
from .graphs import Graph, SetTuple, Sub, VertexLabel, walk_neighborhood


@dataclass(frozen=True)
class OddFraction:
    """The exponent (2r+1)/(2s+1), stored as the integer pair (r, s)."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise PreconditionError("OddFraction requires r, s >= 0")

    @property
    def num(self) -> int:
        return 2 * self.r + 1

    @property
    def den(self) -> int:
        return 2 * self.s + 1

    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def subdivide(G: Graph, t: int) -> Graph:
    """Replace each edge by a path of length t (t-1 inner vertices).

    For odd t = 2s+1 the inner vertices of the edge uv are labelled
    (uv)_1..(uv)_s and (vu)_1..(vu)_s with the path running
    u, (vu)_s, (uv)_1, (vu)_{s-1}, (uv)_2, ..., (uv)_s, v,
    i.e. the edges are (uv)_i(vu)_{s-i} for 0 <= i <= s and
    (vu)_{s-j+1}(uv)_j for 1 <= j <= s, where (uv)_0 = u and (vu)_0 = v.
    For even t the inner vertices are (uv)_1..(uv)_{t-1} in path order
    from the smaller-labelled endpoint.  S_1(G) = G.
    """
    if t < 1:
        raise PreconditionError("subdivide requires t >= 1")
    if G.has_loop:
        raise LoopedGraphError("subdivision requires a loopless graph")
    if t == 1:
        return G
    verts: list[VertexLabel] = list(G.vertices)
    edges: list[tuple[VertexLabel, VertexLabel]] = []
    for u, v in G.edges:
        if t % 2 == 1:
            s = (t - 1) // 2
            uv = {0: u}
            vu = {0: v}
            for i in range(1, s + 1):
                uv[i] = Sub(u, v, i)
                vu[i] = Sub(v, u, i)
                verts.append(uv[i])
                verts.append(vu[i])
            for i in range(s + 1):
                edges.append((uv[i], vu[s - i]))
            for j in range(1, s + 1):
                edges.append((vu[s - j + 1], uv[j]))
        else:
            inner = [Sub(u, v, i) for i in range(1, t)]
            verts.extend(inner)
            path = [u] + inner + [v]
            for a, b in zip(path, path[1:]):
                edges.append((a, b))
    return Graph.build(verts, edges)


def _bool_rows_multiply(a: list[int], b: list[int]) -> list[int]:
    out = []
    for row in a:
        acc = 0
        m = row
        while m:
            low = m & -m
            acc |= b[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return out


def _walk_relation(G: Graph, k: int) -> list[int]:
    """Bitset rows of the exact-walk-length-k relation, by binary exponentiation."""
    base = list(G.adj_bits)
    result: list[int] | None = None
    while k:
        if k & 1:
            result = base if result is None else _bool_rows_multiply(result, base)
        k >>= 1
        if k:
            base = _bool_rows_multiply(base, base)
    assert result is not None
    return result


def power(G: Graph, k: int) -> Graph:
    """The k-th power: same vertices, u ~ v iff a walk of length exactly k
    joins them.  Loops appear whenever a vertex has a closed walk of
    length k (always for even k >= 2 on non-isolated vertices)."""
    if k < 1:
        raise PreconditionError("power requires k >= 1")
    rows = _walk_relation(G, k)
    verts = G.vertices
    edges = []
    for i in range(G.n):
        row = rows[i] >> i
        j = i
        while row:
            if row & 1:
                edges.append((verts[i], verts[j]))
            row >>= 1
            j += 1
    return Graph.build(verts, edges)


def fractional_power(G: Graph, e: OddFraction) -> Graph:
    """G raised to (2r+1)/(2s+1): the (2r+1)-st power of the (2s+1)-subdivision."""
    if G.has_loop:
        raise LoopedGraphError("fractional powers require a loopless graph")
    return power(subdivide(G, e.den), e.num)


def negative_unit_power(G: Graph, s: int, *, cap: int | None = None) -> Graph:
    """The exponent -1/(2s+1) power of G.

    Vertices are tuples (A_1, ..., A_{s+1}) of subsets of V(G) with
    A_1 = {v} a singleton and each later A_i a nonempty subset of the
    exact-walk neighborhood N_{i-1}(v).  Tuples (A_*) and (B_*) are
    adjacent when A_i is contained in B_{i+1} and B_i in A_{i+1} for
    i <= s, and every A_j is completely joined to B_j in G.

    Labels are SetTuples of 0-based vertex indices of G.  Isolated
    vertices contribute no tuples (their later neighborhoods are empty);
    the construction targets graphs without isolated vertices.
    """
    if s < 0:
        raise PreconditionError("negative_unit_power requires s >= 0")
    if G.has_loop:
        raise LoopedGraphError("negative powers require a loopless graph")
    limit = config.vertex_cap(cap)
    adj = G.adj_bits

    # Per-start-vertex neighborhood chain N_0(v) .. N_s(v) as masks.
    chains: list[list[int]] = []
    total = 0
    for v in range(G.n):
        chain = [1 << v]
        for _ in range(s):
            nxt = 0
            m = chain[-1]
            while m:
                low = m & -m
                nxt |= adj[low.bit_length() - 1]
                m ^= low
            chain.append(nxt)
        count = 1
        for lvl in range(1, s + 1):
            count *= (1 << chain[lvl].bit_count()) - 1
        total += count
        chains.append(chain)
    if total > limit:
        raise SizeCapExceededError(f"negative power would have {total} vertices; cap is {limit}")

    tuples: list[tuple[int, ...]] = []
    for v in range(G.n):
        chain = chains[v]
        level_subsets: list[list[int]] = []
        empty = False
        for lvl in range(1, s + 1):
            subs = _nonempty_subsets(chain[lvl])
            if not subs:
                empty = True
                break
            level_subsets.append(subs)
        if empty:
            continue
        for rest in product(*level_subsets):
            tuples.append((1 << v, *rest))

    def label(tup: tuple[int, ...]) -> SetTuple:
        return SetTuple(tuple(tuple(i for i in range(G.n) if a >> i & 1) for a in tup))

    verts = [label(t) for t in tuples]
    edges = []
    for i, a in enumerate(tuples):
        for j in range(i + 1, len(tuples)):
            b = tuples[j]
            if _neg_power_adjacent(a, b, s, adj):
                edges.append((verts[i], verts[j]))
    return Graph.build(verts, edges)


def _nonempty_subsets(mask: int) -> list[int]:
    subs = []
    x = 0
    while True:
        x = (x - mask) & mask
        if x == 0:
            return subs
        subs.append(x)


def _neg_power_adjacent(a: tuple[int, ...], b: tuple[int, ...], s: int, adj: list[int]) -> bool:
    for i in range(s):
        if a[i] & ~b[i + 1] or b[i] & ~a[i + 1]:
            return False
    for j in range(s + 1):
        aj, bj = a[j], b[j]
        m = aj
        while m:
            low = m & -m
            if bj & ~adj[low.bit_length() - 1]:
                return False
            m ^= low
    return True


def negative_power(G: Graph, s: int, r: int, *, cap: int | None = None) -> Graph:
    """G raised to -(2s+1)/(2r+1): the (2s+1)-st power of the -1/(2r+1) power.

    Requires s <= r so the exponent magnitude is at most 1.
    """
    if s > r:
        raise PreconditionError("negative_power requires s <= r (exponent magnitude <= 1)")
    return power(negative_unit_power(G, r, cap=cap), 2 * s + 1)
