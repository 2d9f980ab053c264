"""Structural analysis of weighted games.

SCC condensation in a canonical inverse topological order, two-player
attractors, per-vertex cycle weight bounds via double Floyd-Warshall, the
divergence decision, and per-SCC cycle signs.

Cycle analysis for the divergence decision runs on the *stopped* graph,
where outgoing edges of target vertices are ignored: plays end at the
first target visit, so cycles through targets (in particular the
conventional zero self-loop on targets) never influence any payoff.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

from .errors import InconsistencyError
from .games import NEG_INF, POS_INF, ExtValue, Owner, Play, WeightedGame, play_weight


class Sign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


# ---------------------------------------------------------------------------
# Generic digraph helpers (also used by the timed modules)
# ---------------------------------------------------------------------------

def strongly_connected_components(nodes, successors):
    """Tarjan's algorithm, iterative.  Components come out in reverse
    topological order of the condensation (sinks first)."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    components = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(successors(succ))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                components.append(frozenset(comp))
    return components


def canonical_scc_order(nodes, successors, key=None):
    """SCCs in inverse topological order with deterministic tie-breaking.

    Among components whose successors are all already emitted, the one
    containing the smallest node (under ``key``) is emitted first.
    """
    if key is None:
        key = lambda n: n
    comps = strongly_connected_components(nodes, successors)
    comp_of = {}
    for i, comp in enumerate(comps):
        for n in comp:
            comp_of[n] = i
    # Condensation edges point from a component to the components it reaches.
    out_deps = [set() for _ in comps]
    for n in nodes:
        for s in successors(n):
            if comp_of[s] != comp_of[n]:
                out_deps[comp_of[n]].add(comp_of[s])
    rev = [set() for _ in comps]
    for i, deps in enumerate(out_deps):
        for j in deps:
            rev[j].add(i)
    pending = [len(deps) for deps in out_deps]
    comp_key = [min(key(n) for n in comp) for comp in comps]
    heap = [(comp_key[i], i) for i in range(len(comps)) if pending[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(comps[i])
        for j in rev[i]:
            pending[j] -= 1
            if pending[j] == 0:
                heapq.heappush(heap, (comp_key[j], j))
    if len(order) != len(comps):
        raise InconsistencyError("condensation is cyclic")
    return order


def attractor_on_arena(nodes, owner, successors, player, targets, restriction=None):
    """Least set from which ``player`` forces reaching ``targets``.

    Backward fixed point within ``restriction`` (default: all nodes).  A
    node of the player joins when some restricted successor is in the set;
    an opponent node joins when it has at least one restricted successor
    and all of them are in the set.  Returns (attractor set, rank map).
    """
    if restriction is None:
        restriction = set(nodes)
    else:
        restriction = set(restriction)
    preds = {n: [] for n in restriction}
    out_deg = {n: 0 for n in restriction}
    for n in restriction:
        for s in successors(n):
            if s in restriction:
                out_deg[n] += 1
                preds[s].append(n)
    attr = set()
    rank = {}
    queue = []
    for t in targets:
        if t in restriction and t not in attr:
            attr.add(t)
            rank[t] = 0
            queue.append(t)
    remaining = dict(out_deg)
    qi = 0
    while qi < len(queue):
        node = queue[qi]
        qi += 1
        for p in preds[node]:
            if p in attr:
                continue
            if owner(p) is player:
                attr.add(p)
                rank[p] = rank[node] + 1
                queue.append(p)
            else:
                remaining[p] -= 1
                if remaining[p] == 0 and out_deg[p] > 0:
                    attr.add(p)
                    rank[p] = rank[node] + 1
                    queue.append(p)
    return attr, rank


# ---------------------------------------------------------------------------
# Spec-level operations on weighted games
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SccDecomposition:
    """Vertex sets in inverse topological order plus per-vertex index."""

    components: tuple
    component_of: dict

    def __iter__(self):
        return iter(self.components)


def _successor_map(game: WeightedGame, stopped: bool):
    succ = {v: [] for v in game.owner}
    for e in game.edges:
        if stopped and game.is_target(e.src):
            continue
        succ[e.src].append(e.dst)
    return succ


def scc_decompose(game: WeightedGame, stopped: bool = False) -> SccDecomposition:
    """SCCs of the game graph in canonical inverse topological order.

    With ``stopped=True`` outgoing edges of targets are ignored, which is
    how the solver and the divergence decision view the graph.
    """
    succ = _successor_map(game, stopped)
    order = canonical_scc_order(game.vertices, lambda v: succ[v])
    comp_of = {}
    for i, comp in enumerate(order):
        for v in comp:
            comp_of[v] = i
    return SccDecomposition(tuple(order), comp_of)


def attractor(game: WeightedGame, player: Owner, targets, restriction=None):
    """Classical attractor of ``targets`` for ``player`` within ``restriction``."""
    if restriction is None:
        restriction = set(game.owner)
    targets = set(targets)
    if not targets <= set(restriction):
        raise ValueError("targets must lie within the restriction")
    succ = _successor_map(game, stopped=False)
    attr, _ = attractor_on_arena(
        restriction, lambda v: game.owner[v], lambda v: succ[v],
        player, targets, restriction)
    return attr


def attractor_with_ranks(game: WeightedGame, player: Owner, targets, restriction=None):
    if restriction is None:
        restriction = set(game.owner)
    succ = _successor_map(game, stopped=False)
    return attractor_on_arena(
        restriction, lambda v: game.owner[v], lambda v: succ[v],
        player, set(targets), restriction)


@dataclass(frozen=True)
class CycleBounds:
    """Per vertex, the inf and sup of weights of cycles through it."""

    lo: dict
    hi: dict
    empty: frozenset  # vertices with no cycle through them

    def interval(self, v):
        return self.lo[v], self.hi[v]


def _floyd_warshall(indices, weight0, minimize: bool):
    """All-pairs best path weights with at least one edge.

    ``weight0[i][j]`` is the best direct edge weight or None.  Returns the
    matrix of best walk weights (None where no path); with cycles of the
    improving sign present the values are still realizable by actual walks,
    which is all the callers rely on.
    """
    n = len(indices)
    dist = [row[:] for row in weight0]
    better = (lambda a, b: a < b) if minimize else (lambda a, b: a > b)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is None:
                    continue
                cand = dik + dkj
                if di[j] is None or better(cand, di[j]):
                    di[j] = cand
    return dist


def cycle_weight_bounds(game: WeightedGame, stopped: bool = False) -> CycleBounds:
    """inf and sup over weights of cycles through each vertex.

    Cycles through v live entirely in v's SCC, so bounds are computed per
    SCC: if the SCC contains a negative (positive) cycle, pumping it drives
    the inf (sup) of every member vertex to -inf (+inf); otherwise the best
    closed walk through v is finite and Floyd-Warshall computes it exactly.
    """
    decomposition = scc_decompose(game, stopped=stopped)
    succ_edges = {v: [] for v in game.owner}
    for e in game.edges:
        if stopped and game.is_target(e.src):
            continue
        succ_edges[e.src].append(e)

    lo = {}
    hi = {}
    empty = set()
    for comp in decomposition:
        vs = sorted(comp)
        idx = {v: i for i, v in enumerate(vs)}
        n = len(vs)
        wmin = [[None] * n for _ in range(n)]
        wmax = [[None] * n for _ in range(n)]
        has_edge = False
        for v in vs:
            for e in succ_edges[v]:
                if e.dst in idx:
                    has_edge = True
                    i, j = idx[v], idx[e.dst]
                    if wmin[i][j] is None or e.weight < wmin[i][j]:
                        wmin[i][j] = e.weight
                    if wmax[i][j] is None or e.weight > wmax[i][j]:
                        wmax[i][j] = e.weight
        if not has_edge:
            # Trivial SCC without a self-loop: no cycle through its vertex.
            empty.update(vs)
            for v in vs:
                lo[v] = hi[v] = None
            continue
        dmin = _floyd_warshall(vs, wmin, minimize=True)
        dmax = _floyd_warshall(vs, wmax, minimize=False)
        has_neg = any(dmin[i][i] is not None and dmin[i][i] < 0 for i in range(n))
        has_pos = any(dmax[i][i] is not None and dmax[i][i] > 0 for i in range(n))
        for v in vs:
            i = idx[v]
            if dmin[i][i] is None:
                # v in a nontrivial SCC always lies on a cycle
                raise InconsistencyError(f"no cycle found through {v} inside its SCC")
            lo[v] = NEG_INF if has_neg else ExtValue.finite(dmin[i][i])
            hi[v] = POS_INF if has_pos else ExtValue.finite(dmax[i][i])
    return CycleBounds(lo, hi, frozenset(empty))


@dataclass(frozen=True)
class DivergenceWitness:
    vertex: str
    nonpos_cycle: Play
    nonneg_cycle: Play


@dataclass(frozen=True)
class DivergenceReport:
    divergent: bool
    witness: object = None  # DivergenceWitness when not divergent


def is_divergent_untimed(game: WeightedGame) -> DivergenceReport:
    """Divergence decision: no cycle of weight zero, equivalently per SCC
    all cycles share one strict sign.

    Evaluated on the stopped graph.  On failure returns the smallest
    witness vertex together with a non-positive and a non-negative cycle
    through it.
    """
    bounds = cycle_weight_bounds(game, stopped=True)
    for v in game.vertices:
        if v in bounds.empty:
            continue
        lo, hi = bounds.lo[v], bounds.hi[v]
        if lo <= ExtValue.finite(0) <= hi:
            witness = DivergenceWitness(
                vertex=v,
                nonpos_cycle=_witness_cycle(game, v, want_nonpos=True),
                nonneg_cycle=_witness_cycle(game, v, want_nonpos=False),
            )
            return DivergenceReport(False, witness)
    return DivergenceReport(True)


def _scc_edges_through(game, v):
    """Edges of v's stopped-graph SCC."""
    decomposition = scc_decompose(game, stopped=True)
    comp = decomposition.components[decomposition.component_of[v]]
    edges = [e for e in game.edges
             if e.src in comp and e.dst in comp and not game.is_target(e.src)]
    return comp, edges


def _witness_cycle(game, v, want_nonpos: bool) -> Play:
    """A cycle through v with weight <= 0 (or >= 0), built from
    length-indexed best-walk tables; pumped through a strict cycle
    elsewhere in the SCC when needed."""
    comp, edges = _scc_edges_through(game, v)
    out = {}
    for e in edges:
        out.setdefault(e.src, []).append(e)
    n = len(comp)
    best = _best_walk_table(out, v, 2 * n, minimize=want_nonpos)
    goal_ok = (lambda w: w <= 0) if want_nonpos else (lambda w: w >= 0)
    candidates = [(k, w) for k, row in enumerate(best) if k >= 1
                  for u, (w, _) in row.items() if u == v and goal_ok(w)]
    if candidates:
        k, _ = min(candidates, key=lambda kw: (kw[0], kw[1]))
        return _reconstruct_walk(best, v, v, k)
    # Need pumping: find a strict cycle of the right sign at some u, then
    # v -> u, enough turns around the cycle, u -> v.
    for u in sorted(comp):
        table_u = _best_walk_table(out, u, n, minimize=want_nonpos)
        loops = [(k, row[u][0]) for k, row in enumerate(table_u)
                 if k >= 1 and u in row]
        strict = [(k, w) for k, w in loops if (w < 0 if want_nonpos else w > 0)]
        if not strict:
            continue
        k_loop, w_loop = min(strict, key=lambda kw: (kw[0], kw[1]))
        loop = _reconstruct_walk(table_u, u, u, k_loop)
        to_u = _best_path(out, v, u, n, minimize=want_nonpos)
        back = _best_path(out, u, v, n, minimize=want_nonpos)
        detour = sum(e.weight for e in to_u) + sum(e.weight for e in back)
        pumps = 1
        while (detour + pumps * w_loop > 0 if want_nonpos
               else detour + pumps * w_loop < 0):
            pumps += 1
        steps = list(to_u) + list(loop.steps) * pumps + list(back)
        return Play.build(v, steps)
    raise InconsistencyError(f"no witness cycle through {v} despite bounds straddling 0")


def _best_walk_table(out, start, max_len, minimize):
    """best[k][u] = (weight, last_edge) of the best walk start -> u with
    exactly k edges, for k <= max_len."""
    better = (lambda a, b: a < b) if minimize else (lambda a, b: a > b)
    table = [{start: (0, None)}]
    for _ in range(max_len):
        prev = table[-1]
        cur = {}
        for u, (w, _) in prev.items():
            for e in out.get(u, ()):
                cand = w + e.weight
                if e.dst not in cur or better(cand, cur[e.dst][0]):
                    cur[e.dst] = (cand, e)
        table.append(cur)
    return table


def _reconstruct_walk(table, start, end, k) -> Play:
    steps = []
    at = end
    for i in range(k, 0, -1):
        _, edge = table[i][at]
        steps.append(edge)
        at = edge.src
    steps.reverse()
    return Play.build(start, steps)


def _best_path(out, src, dst, max_len, minimize):
    if src == dst:
        return ()
    table = _best_walk_table(out, src, max_len, minimize)
    hits = [(k, row[dst][0]) for k, row in enumerate(table) if dst in row and k >= 1]
    if not hits:
        raise InconsistencyError(f"{dst} unreachable from {src} inside SCC")
    k, _ = min(hits, key=lambda kw: (kw[1], kw[0]) if minimize else (-kw[1], kw[0]))
    return _reconstruct_walk(table, src, dst, k).steps


def sample_cycle(game: WeightedGame, component, stopped: bool = True) -> Play:
    """A deterministic simple cycle inside an SCC: the shortest cycle
    through the smallest member vertex, ties broken by action labels."""
    comp = set(component)
    root = min(comp)
    out = {}
    for e in game.edges:
        if stopped and game.is_target(e.src):
            continue
        if e.src in comp and e.dst in comp:
            out.setdefault(e.src, []).append(e)
    for es in out.values():
        es.sort(key=lambda e: e.action)
    # BFS from root back to root over edges
    parent = {}
    frontier = [root]
    found = None
    visited = {root}
    while frontier and found is None:
        nxt = []
        for u in frontier:
            for e in out.get(u, ()):
                if e.dst == root:
                    found = e
                    break
                if e.dst not in visited:
                    visited.add(e.dst)
                    parent[e.dst] = e
                    nxt.append(e.dst)
            if found:
                break
        frontier = nxt
    if found is None:
        raise InconsistencyError(f"no cycle inside component {sorted(comp)}")
    steps = [found]
    at = found.src
    while at != root:
        e = parent[at]
        steps.append(e)
        at = e.src
    steps.reverse()
    return Play.build(root, steps)


def scc_sign(game: WeightedGame, component) -> Sign:
    """Sign of an SCC of a divergent game: trivial SCCs are positive by
    convention, otherwise the sign of one sampled cycle decides."""
    comp = set(component)
    has_internal_edge = any(
        e.src in comp and e.dst in comp and not game.is_target(e.src)
        for e in game.edges)
    if not has_internal_edge:
        return Sign.POSITIVE
    cycle = sample_cycle(game, comp)
    w = play_weight(game, cycle)
    if w > 0:
        return Sign.POSITIVE
    if w < 0:
        return Sign.NEGATIVE
    raise InconsistencyError(
        f"cycle of weight 0 through {cycle.start}: game is not divergent")
