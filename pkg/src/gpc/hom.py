"""Exact graph homomorphism decision with certificates.

The solver is a complete backtracking search maintaining arc consistency
over per-vertex candidate bitsets.  A positive answer carries an explicit
vertex map; a negative answer is an exhaustion proof (sound shortcut
refutations: odd-girth and clique-bound obstructions).  Exceeding the node
budget raises SearchBudgetExceededError, so a returned refutation is
always a proof.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .errors import PreconditionError, SearchBudgetExceededError
from .graphs import Graph, VertexLabel, VertexLike, is_bipartite, odd_girth
from .powers import OddFraction, fractional_power, negative_power

__all__ = [
    "HomCertificate",
    "exists_hom",
    "hom_equivalent",
    "strictly_below",
    "core_of",
    "verify_duality",
]


@dataclass(frozen=True)
class HomCertificate:
    """Outcome of a homomorphism search.

    When ``exists`` is true, ``mapping`` is an explicit vertex map that can
    be re-checked edge by edge with :meth:`verify`.  When false, the search
    was exhaustive (or a sound obstruction fired) and ``mapping`` is None.
    """

    exists: bool
    mapping: dict[VertexLabel, VertexLabel] | None
    nodes_explored: int

    def verify(self, G: Graph, H: Graph) -> bool:
        """Re-check the witness map edge by edge; vacuously true for refutations."""
        if not self.exists:
            return True
        assert self.mapping is not None
        try:
            img = {v.render(): self.mapping[v] for v in G.vertices}
        except KeyError:
            return False
        for a, b in G.edges:
            fa, fb = img[a.render()], img[b.render()]
            if not H.has_edge(fa, fb):
                return False
        return True


class _Search:
    """One homomorphism search instance (G -> H)."""

    def __init__(self, G: Graph, H: Graph, budget: int):
        self.G = G
        self.H = H
        self.budget = budget
        self.nodes = 0
        self.hn = H.n
        self.full = (1 << H.n) - 1
        self.adj_h = list(H.adj_bits)
        # G adjacency as neighbor index lists, self-loops excluded (handled
        # by masking loop vertices to loopy images up front).
        self.adj_g: list[list[int]] = []
        for i in range(G.n):
            row = G.adj_bits[i] & ~(1 << i)
            self.adj_g.append(list(_bits(row)))
        self.loop_mask_h = 0
        for j in H.loop_vertices:
            self.loop_mask_h |= 1 << j
        self.h_complete = not H.has_loop and all(
            self.adj_h[j] == self.full & ~(1 << j) for j in range(H.n)
        )
        # Preference order over image vertices: image degree descending,
        # rendered label as the deterministic tie-break.
        self.h_pref = sorted(range(H.n), key=lambda j: (-H.degrees[j], H._renders[j]))
        self._union_cache: dict[int, int] = {}

    # -- propagation ---------------------------------------------------------

    def union_nbrs(self, mask: int) -> int:
        """Union of H-neighborhoods over the vertices in ``mask``."""
        if self.h_complete:
            if mask & (mask - 1) == 0:
                return self.full & ~mask
            return self.full
        got = self._union_cache.get(mask)
        if got is None:
            acc = 0
            m = mask
            adj = self.adj_h
            while m:
                low = m & -m
                acc |= adj[low.bit_length() - 1]
                m ^= low
            if len(self._union_cache) > 300_000:
                self._union_cache.clear()
            self._union_cache[mask] = got = acc
        return got

    def propagate(self, queue: list[int], domains: list[int], trail: list[tuple[int, int]]) -> bool:
        """Arc consistency to a fixpoint from the queued changed variables."""
        adj_g = self.adj_g
        while queue:
            v = queue.pop()
            union = self.union_nbrs(domains[v])
            for u in adj_g[v]:
                du = domains[u]
                ndu = du & union
                if ndu != du:
                    if ndu == 0:
                        return False
                    trail.append((u, du))
                    domains[u] = ndu
                    queue.append(u)
        return True

    # -- search ----------------------------------------------------------------

    def solve_component(
        self,
        comp: tuple[int, ...],
        domains: list[int],
        *,
        dynamic_order: bool,
    ) -> dict[int, int] | None:
        order = sorted(comp, key=lambda i: (-len(self.adj_g[i]), self.G._renders[i]))
        rank = {v: p for p, v in enumerate(order)}
        trail: list[tuple[int, int]] = []
        if not self.propagate(list(order), domains, trail):
            return None

        nvars = len(order)
        # Each frame: [var, remaining values (preference order), trail mark].
        frames: list[list] = []
        assigned_set = 0

        def choose() -> int:
            if not dynamic_order:
                for v in order:
                    if not assigned_set >> v & 1:
                        return v
                raise AssertionError("all variables assigned")
            best = -1
            best_key = None
            for v in order:
                if assigned_set >> v & 1:
                    continue
                key = (domains[v].bit_count(), rank[v])
                if best_key is None or key < best_key:
                    best, best_key = v, key
            return best

        while True:
            if len(frames) == nvars:
                return {v: domains[v].bit_length() - 1 for v in comp}
            var = choose()
            dom = domains[var]
            frames.append([var, [b for b in self.h_pref if dom >> b & 1], len(trail)])
            assigned_set |= 1 << var
            while frames:
                var, values, mark = frames[-1]
                while len(trail) > mark:
                    u, old = trail.pop()
                    domains[u] = old
                if not values:
                    frames.pop()
                    assigned_set &= ~(1 << var)
                    if not frames:
                        return None
                    continue
                b = values.pop(0)
                self.nodes += 1
                if self.nodes > self.budget:
                    raise SearchBudgetExceededError(
                        f"homomorphism search exceeded node budget {self.budget}"
                    )
                trail.append((var, domains[var]))
                domains[var] = 1 << b
                if self.propagate([var], domains, trail):
                    break


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def exists_hom(
    G: Graph,
    H: Graph,
    *,
    node_budget: int | None = None,
    fixed: dict[VertexLike, VertexLike] | None = None,
    target_vertex_transitive: bool = False,
    break_color_symmetry: bool = False,
    dynamic_order: bool = False,
) -> HomCertificate:
    """Decide whether an edge-preserving map G -> H exists.

    The search is exhaustive: a negative certificate is a proof.  ``fixed``
    pins chosen source vertices to chosen image vertices (used for
    retraction tests).  ``target_vertex_transitive`` may only be passed
    when every vertex of H lies in one automorphism orbit (true for the
    constructed complete, cycle and circular complete families); it fixes
    the image of the first branching vertex per component.
    ``break_color_symmetry`` may only be passed when every permutation of
    V(H) is an automorphism (i.e. H is complete and loopless); it restricts
    the i-th vertex in static order to the first i+1 image candidates.
    Both are existence-preserving domain restrictions, not heuristics that
    could miss maps.
    """
    budget = config.node_budget(node_budget)
    fixed = fixed or {}
    if G.n == 0:
        return HomCertificate(True, {}, 0)
    if H.n == 0:
        return HomCertificate(False, None, 0)

    fixed_idx: dict[int, int] = {}
    for src, dst in fixed.items():
        fixed_idx[G.index_of(src)] = H.index_of(dst)

    h_pref = sorted(range(H.n), key=lambda j: (-H.degrees[j], H._renders[j]))

    if not fixed_idx:
        if H.has_loop:
            j = min(H.loop_vertices, key=lambda i: H._renders[i])
            target = H.vertices[j]
            return HomCertificate(True, {v: target for v in G.vertices}, 0)
        if G.has_loop:
            return HomCertificate(False, None, 0)
        if G.edge_count == 0:
            target = H.vertices[h_pref[0]]
            return HomCertificate(True, {v: target for v in G.vertices}, 0)
        if H.edge_count == 0:
            return HomCertificate(False, None, 0)
        # Sound global obstructions (H loopless from here on).
        og_g, og_h = odd_girth(G), odd_girth(H)
        if og_h.kind == "finite":
            if og_g.kind == "finite" and og_g.length < og_h.length:
                return HomCertificate(False, None, 0)
        else:
            # H bipartite: G must be bipartite too.
            if og_g.kind != "infinite":
                return HomCertificate(False, None, 0)
        if not G.has_loop and G.greedy_clique_lb > H.greedy_coloring_ub:
            return HomCertificate(False, None, 0)

    search = _Search(G, H, budget)
    full = search.full
    mapping_idx: dict[int, int] = {}

    for comp in G.components:
        comp_fixed = {v: fixed_idx[v] for v in comp if v in fixed_idx}
        if not comp_fixed:
            if len(comp) == 1 and not search.adj_g[comp[0]] and comp[0] not in G.loop_vertices:
                mapping_idx[comp[0]] = h_pref[0]
                continue
            if H.edge_count > 0 and _component_bipartite_map(G, H, comp, mapping_idx):
                continue
        domains = [full] * G.n
        for v in G.loop_vertices:
            domains[v] &= search.loop_mask_h
            if domains[v] == 0 and v in comp:
                return HomCertificate(False, None, search.nodes)
        for v, img in comp_fixed.items():
            domains[v] = 1 << img
        if not comp_fixed:
            order0 = sorted(comp, key=lambda i: (-len(search.adj_g[i]), G._renders[i]))
            if break_color_symmetry and search.h_complete:
                for p, v in enumerate(order0):
                    if p < H.n:
                        allowed = 0
                        for b in h_pref[: p + 1]:
                            allowed |= 1 << b
                        domains[v] &= allowed
            elif target_vertex_transitive:
                domains[order0[0]] = 1 << h_pref[0]
        result = search.solve_component(comp, domains, dynamic_order=dynamic_order)
        if result is None:
            return HomCertificate(False, None, search.nodes)
        mapping_idx.update(result)

    mapping = {G.vertices[i]: H.vertices[j] for i, j in sorted(mapping_idx.items())}
    return HomCertificate(True, mapping, search.nodes)


def _component_bipartite_map(G: Graph, H: Graph, comp: tuple[int, ...], out: dict[int, int]) -> bool:
    """Map a bipartite component onto the first canonical edge of H.

    Returns False (and writes nothing) when the component is not bipartite.
    """
    adj = G.adj_bits
    start = comp[0]
    side = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for u in _bits(adj[v] & ~(1 << v)):
                if u in side:
                    if side[u] == side[v]:
                        return False
                else:
                    side[u] = side[v] ^ 1
                    nxt.append(u)
        frontier = nxt
    if any(adj[v] >> v & 1 for v in comp):
        return False
    a, b = H.edges[0]
    ia, ib = H.index_of(a), H.index_of(b)
    for v in comp:
        out[v] = ia if side[v] == 0 else ib
    return True


def hom_equivalent(G: Graph, H: Graph, **kw) -> bool:
    """Whether homomorphisms exist in both directions."""
    return exists_hom(G, H, **kw).exists and exists_hom(H, G, **kw).exists


def strictly_below(G: Graph, H: Graph, **kw) -> bool:
    """Whether G -> H exists and H -> G does not."""
    return exists_hom(G, H, **kw).exists and not exists_hom(H, G, **kw).exists


def core_of(G: Graph, *, cap: int = 14, node_budget: int | None = None) -> Graph:
    """The core: a minimum-size induced subgraph admitting a retraction.

    Exhaustive over induced subgraphs by increasing size, so the instance
    cap keeps runtimes sane; the result is unique up to isomorphism.
    """
    from itertools import combinations

    from .graphs import induced_subgraph

    if G.n > cap:
        raise PreconditionError(f"core_of is capped at {cap} vertices (got {G.n})")
    if G.n == 0:
        return G
    if G.has_loop:
        j = min(G.loop_vertices, key=lambda i: G._renders[i])
        return induced_subgraph(G, [G.vertices[j]])
    if G.edge_count == 0:
        j = min(range(G.n), key=lambda i: G._renders[i])
        return induced_subgraph(G, [G.vertices[j]])
    if is_bipartite(G):
        a, b = G.edges[0]
        return induced_subgraph(G, [a, b])
    for k in range(3, G.n):
        for subset in combinations(range(G.n), k):
            sub = induced_subgraph(G, [G.vertices[i] for i in subset])
            if sub.edge_count == 0 or is_bipartite(sub):
                continue
            fixed = {G.vertices[i]: G.vertices[i] for i in subset}
            if exists_hom(G, sub, fixed=fixed, node_budget=node_budget).exists:
                return sub
    return G


def verify_duality(G: Graph, H: Graph, e: OddFraction, *, node_budget: int | None = None) -> bool:
    """Check the power/negative-power adjunction on one instance.

    Returns whether [G^e -> H] and [G -> H^{-1/e}] agree; expected True
    whenever the preconditions 1 <= e < og(G) hold and H is loopless.
    """
    if e.value() < 1:
        raise PreconditionError("exponent must be at least 1")
    if not odd_girth(G).exceeds(e.value()):
        raise PreconditionError("exponent must be below the odd girth of G")
    if H.has_loop:
        raise PreconditionError("duality target must be loopless")
    lhs = exists_hom(fractional_power(G, e), H, node_budget=node_budget).exists
    rhs = exists_hom(G, negative_power(H, e.s, e.r), node_budget=node_budget).exists
    return lhs == rhs
