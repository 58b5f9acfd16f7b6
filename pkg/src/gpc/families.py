"""Named graph families: complete, cycles, circular complete, Kneser,
Schrijver, helical, and the hard-coded Petersen and Coxeter graphs.

Ground sets [m] are rendered 1-based in labels; bitmask work is 0-based.
"""

from __future__ import annotations

from itertools import combinations

from . import config
from .errors import PreconditionError, SizeCapExceededError
from .graphs import Atom, Graph, SetTuple, induced_subgraph


def complete(n: int) -> Graph:
    """K_n on atoms "0".."n-1"."""
    if n < 1:
        raise PreconditionError("complete(n) requires n >= 1")
    verts = [Atom(str(i)) for i in range(n)]
    edges = [(verts[i], verts[j]) for i in range(n) for j in range(i + 1, n)]
    return Graph.build(verts, edges)


def cycle(n: int) -> Graph:
    """The n-cycle on atoms "0".."n-1"."""
    if n < 3:
        raise PreconditionError("cycle(n) requires n >= 3")
    verts = [Atom(str(i)) for i in range(n)]
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    return Graph.build(verts, edges)


def circular_complete(n: int, d: int) -> Graph:
    """Vertices 0..n-1 with i ~ j iff d <= |i-j| <= n-d."""
    if d < 1 or n < 2 * d:
        raise PreconditionError("circular_complete(n, d) requires n >= 2d >= 2")
    verts = [Atom(str(i)) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if d <= j - i <= n - d:
                edges.append((verts[i], verts[j]))
    return Graph.build(verts, edges)


def kneser(m: int, n: int) -> Graph:
    """n-subsets of [m], adjacent when disjoint."""
    if n < 1 or m < 2 * n:
        raise PreconditionError("kneser(m, n) requires m >= 2n >= 2")
    subsets = list(combinations(range(1, m + 1), n))
    verts = [SetTuple((s,)) for s in subsets]
    edges = []
    for i, a in enumerate(subsets):
        sa = set(a)
        for j in range(i + 1, len(subsets)):
            if sa.isdisjoint(subsets[j]):
                edges.append((verts[i], verts[j]))
    return Graph.build(verts, edges)


def _is_two_stable(subset: tuple[int, ...], m: int) -> bool:
    s = set(subset)
    for x in subset:
        if (x % m) + 1 in s:
            return False
    return True


def schrijver(m: int, n: int) -> Graph:
    """Subgraph of kneser(m, n) induced by the 2-stable n-subsets.

    A subset is 2-stable when it contains no two cyclically adjacent
    elements of [m].
    """
    if n < 1 or m < 2 * n:
        raise PreconditionError("schrijver(m, n) requires m >= 2n")
    kg = kneser(m, n)
    keep = [v for v in kg.vertices if _is_two_stable(v.sets[0], m)]
    return induced_subgraph(kg, keep)


def helical(m: int, n: int, k: int, *, cap: int | None = None) -> Graph:
    """The helical graph on k-tuples of subsets of [m].

    Vertices are tuples (A_1, ..., A_k) with A_r subsets of [m], |A_1| = n,
    |A_r| >= n, consecutive components disjoint, and A_t contained in
    A_{t+2}.  Tuples (A_*) and (B_*) are adjacent when A_i and B_i are
    disjoint for all i and A_j is contained in B_{j+1} (and B_j in A_{j+1})
    for all j with j+1 <= k.

    Enumeration is depth-first with the nesting constraint applied during
    generation; instances whose vertex count would exceed the cap raise
    SizeCapExceededError.
    """
    if n < 1 or k < 1 or m < 2 * n:
        raise PreconditionError("helical(m, n, k) requires m >= 2n and k >= 1")
    limit = config.vertex_cap(cap)
    full = (1 << m) - 1
    tuples: list[tuple[int, ...]] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == k:
            tuples.append(tuple(prefix))
            if len(tuples) > limit:
                raise SizeCapExceededError(f"helical({m},{n},{k}) exceeds vertex cap {limit}")
            return
        prev = prefix[-1]
        base = prefix[-2] if len(prefix) >= 2 else 0
        free = full & ~prev & ~base
        # A_{r+1} = base | x for x a subset of the free positions.
        x = 0
        while True:
            cand = base | x
            if cand.bit_count() >= n:
                extend(prefix + [cand])
            if x == free:
                break
            x = (x - free) & free
        return

    for first in combinations(range(m), n):
        a1 = 0
        for b in first:
            a1 |= 1 << b
        if k == 1:
            tuples.append((a1,))
        else:
            extend([a1])
    if len(tuples) > limit:
        raise SizeCapExceededError(f"helical({m},{n},{k}) exceeds vertex cap {limit}")

    def label(tup: tuple[int, ...]) -> SetTuple:
        return SetTuple(tuple(tuple(i + 1 for i in range(m) if a >> i & 1) for a in tup))

    verts = [label(t) for t in tuples]
    edges = []
    for i, a in enumerate(tuples):
        for j in range(i + 1, len(tuples)):
            b = tuples[j]
            ok = True
            for r in range(k):
                if a[r] & b[r]:
                    ok = False
                    break
                if r + 1 < k and (a[r] & ~b[r + 1] or b[r] & ~a[r + 1]):
                    ok = False
                    break
            if ok:
                edges.append((verts[i], verts[j]))
    return Graph.build(verts, edges)


def petersen() -> Graph:
    """The Petersen graph: outer 5-cycle o0..o4, inner pentagram i0..i4, spokes."""
    outer = [Atom(f"o{j}") for j in range(5)]
    inner = [Atom(f"i{j}") for j in range(5)]
    edges = []
    for j in range(5):
        edges.append((outer[j], outer[(j + 1) % 5]))
        edges.append((inner[j], inner[(j + 2) % 5]))
        edges.append((outer[j], inner[j]))
    return Graph.build(outer + inner, edges)


def coxeter() -> Graph:
    """The Coxeter graph: 28 vertices, 3-regular, girth 7.

    Layout: three 7-point star polygons with steps 1, 2 and 3 (vertices
    a0..a6, b0..b6, c0..c6) plus hub vertices d0..d6, where dj is joined
    to aj, bj and cj.
    """
    a = [Atom(f"a{j}") for j in range(7)]
    b = [Atom(f"b{j}") for j in range(7)]
    c = [Atom(f"c{j}") for j in range(7)]
    d = [Atom(f"d{j}") for j in range(7)]
    edges = []
    for j in range(7):
        edges.append((a[j], a[(j + 1) % 7]))
        edges.append((b[j], b[(j + 2) % 7]))
        edges.append((c[j], c[(j + 3) % 7]))
        edges.append((d[j], a[j]))
        edges.append((d[j], b[j]))
        edges.append((d[j], c[j]))
    return Graph.build(a + b + c + d, edges)
