"""Exact graph isomorphism for small instances.

Iterated degree refinement (color refinement) narrows candidate classes,
then exhaustive backtracking over the refined classes searches for an
edge-preserving bijection.  Exact but exponential in the worst case;
intended for graphs up to a few dozen vertices per refinement class.
"""

from __future__ import annotations

from .graphs import Graph


def _refine(adj: list[int], colors: list[int]) -> list[int]:
    """Iterate neighbor-color-multiset refinement to a fixpoint.

    Colors are ints; the returned coloring is canonical in the sense that
    two vertices (possibly in different graphs) get equal colors only if
    their iterated signatures agree.
    """
    n = len(adj)
    while True:
        sigs = []
        for i in range(n):
            counts: dict[int, int] = {}
            m = adj[i]
            while m:
                low = m & -m
                c = colors[low.bit_length() - 1]
                counts[c] = counts.get(c, 0) + 1
                m ^= low
            sigs.append((colors[i], tuple(sorted(counts.items()))))
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _initial_colors(G: Graph) -> list[int]:
    loops = set(G.loop_vertices)
    raw = [(G.adj_bits[i].bit_count(), i in loops) for i in range(G.n)]
    table = {s: k for k, s in enumerate(sorted(set(raw)))}
    return [table[s] for s in raw]


def _class_histogram(colors: list[int]) -> dict[int, int]:
    hist: dict[int, int] = {}
    for c in colors:
        hist[c] = hist.get(c, 0) + 1
    return hist


def are_isomorphic(G: Graph, H: Graph) -> bool:
    """Whether an edge-preserving bijection of the vertex sets exists."""
    if G.n != H.n or G.edge_count != H.edge_count:
        return False
    if G.n == 0:
        return True
    adj_g = list(G.adj_bits)
    adj_h = list(H.adj_bits)
    cg = _refine(adj_g, _initial_colors(G))
    ch = _refine(adj_h, _initial_colors(H))
    if _class_histogram(cg) != _class_histogram(ch):
        return False

    n = G.n
    mapping = [-1] * n          # G index -> H index
    used = 0                    # bitmask of used H vertices

    # Static order: vertices of G by (class size, color, index) so that the
    # most constrained classes are matched first.
    hist = _class_histogram(cg)
    order = sorted(range(n), key=lambda i: (hist[cg[i]], cg[i], i))

    by_color_h: dict[int, list[int]] = {}
    for j in range(n):
        by_color_h.setdefault(ch[j], []).append(j)

    def place(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        want = cg[i]
        row = adj_g[i]
        for j in by_color_h.get(want, ()):
            if used >> j & 1:
                continue
            # consistency with already-mapped vertices
            ok = True
            for p in range(pos):
                ip = order[p]
                if (row >> ip & 1) != (adj_h[j] >> mapping[ip] & 1):
                    ok = False
                    break
            if (row >> i & 1) != (adj_h[j] >> j & 1):
                ok = False
            if ok:
                mapping[i] = j
                nonlocal_used = place_with(j, pos)
                if nonlocal_used:
                    return True
                mapping[i] = -1
        return False

    def place_with(j: int, pos: int) -> bool:
        nonlocal used
        used |= 1 << j
        result = place(pos + 1)
        used &= ~(1 << j)
        return result

    return place(0)
