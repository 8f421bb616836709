"""Ground-truth machinery: finite quotients, balls, exact coloring.

Two strictly separated directions of evidence:

* quotient graphs on ``Z^m / (H + N Z^m)`` give *upper* bounds, because a
  proper coloring of a loop-free quotient pulls back along the quotient
  homomorphism;
* induced subgraphs of the infinite graph (balls around the identity, or
  odd cycles found inside them) give *lower* bounds.

Balls never prove upper bounds and quotients never prove lower bounds.
Every coloring reported as a witness is re-verified against adjacency
before being returned.
"""

from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .cayley import RelationMatrix, as_relation_matrix
from .errors import (
    InternalViolationError,
    NoProperColoringError,
    SearchBudgetError,
    ShapeError,
    SizeCapError,
)
from .intlat import (
    ColumnHNF,
    IntMatrix,
    column_hnf,
    solve_in_hnf,
    unit_vector,
)

ENV_BUDGET = "CAYLEY_ORACLE_BUDGET"

DEFAULT_NODE_BUDGET = 1_000_000
DEFAULT_VERTEX_CAP = 1_000_000


@dataclass(frozen=True)
class OracleConfig:
    """Caps for the oracle searches; all CLI-configurable."""

    r_max: int = 4
    n_max: int = 8
    node_budget: int = DEFAULT_NODE_BUDGET
    vertex_cap: int = DEFAULT_VERTEX_CAP

    @classmethod
    def from_env(cls, **overrides) -> "OracleConfig":
        budget = overrides.pop("node_budget", None)
        if budget is None:
            raw = os.environ.get(ENV_BUDGET)
            budget = int(raw) if raw else DEFAULT_NODE_BUDGET
        return cls(node_budget=budget, **overrides)


@dataclass(frozen=True)
class FiniteGraph:
    """Undirected simple graph with explicit self-loop flags.

    Vertex labels are canonical coset representatives in Z^m, so vertex
    identity is exact.
    """

    labels: tuple[tuple[int, ...], ...]
    adj: tuple[frozenset[int], ...]
    loops: frozenset[int] = field(default_factory=frozenset)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def has_loops(self) -> bool:
        return bool(self.loops)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if i < j:
                    yield (i, j)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2


def proper_coloring(graph: FiniteGraph, coloring: Sequence[int]) -> bool:
    """Exact check that ``coloring`` is proper for ``graph``."""
    if graph.loops or len(coloring) != graph.n:
        return False
    for i, nbrs in enumerate(graph.adj):
        ci = coloring[i]
        for j in nbrs:
            if coloring[j] == ci:
                return False
    return True


# --------------------------------------------------------------------------
# Coset canonicalization and graph construction.
# --------------------------------------------------------------------------


def _reducer(hnf: ColumnHNF):
    """Canonical coset representative map modulo the HNF lattice.

    Back-substitution down the pivot rows puts every pivot coordinate
    into ``[0, pivot)``; non-pivot coordinates are left as-is.  Two
    vectors reduce identically iff they differ by a lattice element.
    """
    cols = [hnf.h.col(c) for _, c in hnf.pivots]
    pivots = [(r - 1, col[r - 1]) for (r, _), col in zip(hnf.pivots, cols)]
    m = hnf.h.rows

    def canon(vec: tuple[int, ...]) -> tuple[int, ...]:
        w = None
        for (prow, piv), col in zip(pivots, cols):
            q = (w[prow] if w is not None else vec[prow]) // piv
            if q:
                if w is None:
                    w = list(vec)
                for t in range(m):
                    w[t] -= q * col[t]
        return vec if w is None else tuple(w)

    return canon


def _neighbor_steps(m: int) -> list[tuple[int, ...]]:
    steps = []
    for i in range(m):
        e = [0] * m
        e[i] = 1
        steps.append(tuple(e))
    return steps


def _build_graph(labels: list[tuple[int, ...]], canon, m: int) -> FiniteGraph:
    """Induced graph on ``labels`` (already canonical) under the 2m generators.

    Scanning only the +e_i direction from every vertex finds each edge
    once, because the -e_i edge at v is the +e_i edge at its neighbor.
    """
    index = {lab: i for i, lab in enumerate(labels)}
    adj: list[set[int]] = [set() for _ in labels]
    loops = set()
    for lab, i in index.items():
        for k in range(m):
            stepped = list(lab)
            stepped[k] += 1
            j = index.get(canon(tuple(stepped)))
            if j is None:
                continue
            if i == j:
                loops.add(i)
            else:
                adj[i].add(j)
                adj[j].add(i)
    return FiniteGraph(tuple(labels), tuple(frozenset(a) for a in adj), frozenset(loops))


def _full_rank_lattice(matrix: IntMatrix, modulus: int) -> ColumnHNF:
    scaled = IntMatrix(
        tuple(
            tuple(modulus if i == j else 0 for j in range(matrix.rows))
            for i in range(matrix.rows)
        )
    )
    return column_hnf(matrix.hstack(scaled))


def _box_labels(hnf: ColumnHNF, vertex_cap: int, what: str) -> list[tuple[int, ...]]:
    diag = [hnf.h.entry(i, i) for i in range(1, hnf.h.rows + 1)]
    order = 1
    for d in diag:
        order *= d
        if order > vertex_cap:
            raise SizeCapError(f"{what} would have more than {vertex_cap} vertices")
    return [tuple(reversed(v)) for v in itertools.product(*[range(d) for d in reversed(diag)])]


def quotient_graph(rm, modulus: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> FiniteGraph:
    """Cayley graph of ``Z^m / (H + N Z^m)`` with the 2m standard generators.

    Any proper coloring of this graph (when loop-free) pulls back to a
    proper coloring of the presented infinite graph, so its chromatic
    number is an upper bound.  Self-loops are flagged when some ``e_i``
    falls into ``H + N Z^m``.
    """
    if modulus < 1:
        raise ValueError("modulus must be at least 1")
    rm = as_relation_matrix(rm)
    matrix = rm.matrix
    lattice = _full_rank_lattice(matrix, modulus)
    labels = _box_labels(lattice, vertex_cap, f"quotient N={modulus}")
    return _build_graph(labels, _reducer(lattice), matrix.rows)


def finite_cayley_graph(rm, vertex_cap: int = DEFAULT_VERTEX_CAP) -> FiniteGraph:
    """The exact (finite) graph of a full-column-rank square presentation."""
    rm = as_relation_matrix(rm)
    matrix = rm.matrix
    hnf = column_hnf(matrix)
    if hnf.rank != matrix.rows:
        raise ShapeError("the presented group is infinite; use quotients and balls")
    labels = _box_labels(hnf, vertex_cap, "group")
    return _build_graph(labels, _reducer(hnf), matrix.rows)


def ball_subgraph(rm, radius: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> FiniteGraph:
    """Induced subgraph on all group elements within word distance ``radius``.

    chi(ball) <= chi of the presented graph, always.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    rm = as_relation_matrix(rm)
    matrix = rm.matrix
    m = matrix.rows
    canon = _reducer(column_hnf(matrix))
    start = canon((0,) * m)
    labels = [start]
    seen = {start}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for k in range(m):
                for delta in (1, -1):
                    stepped = list(v)
                    stepped[k] += delta
                    u = canon(tuple(stepped))
                    if u not in seen:
                        if len(seen) >= vertex_cap:
                            raise SizeCapError(f"ball r={radius} exceeds {vertex_cap} vertices")
                        seen.add(u)
                        labels.append(u)
                        nxt.append(u)
        frontier = nxt
    return _build_graph(labels, canon, m)


def _odd_walk_labels(rm: RelationMatrix):
    """Vertices of an odd closed walk built from an odd-sum relation, or None.

    A lattice vector ``z`` with odd coordinate sum yields a closed walk
    of odd length ``|z|_1`` through the identity: take ``|z_i|`` unit
    steps in direction ``sign(z_i) e_i``, coordinate by coordinate.  The
    induced subgraph on the visited vertices contains an odd cycle.
    Small combinations of the HNF basis are scanned for the shortest
    such ``z``; returns ``(labels, walk_length)``.
    """
    matrix = rm.matrix
    m = matrix.rows
    hnf = column_hnf(matrix)
    basis = [hnf.h.col(c) for _, c in hnf.pivots]
    if not basis:
        return None
    best = None
    coeff_span = range(-4, 5)
    for coeffs in itertools.product(coeff_span, repeat=len(basis)):
        z = tuple(sum(c * vec[i] for c, vec in zip(coeffs, basis)) for i in range(m))
        if sum(z) % 2 == 0:
            continue
        weight = sum(abs(v) for v in z)
        if best is None or weight < best[0]:
            best = (weight, z)
    if best is None:
        return None
    _, z = best
    canon = _reducer(hnf)
    labels = {canon((0,) * m)}
    current = [0] * m
    for i in range(m):
        step = 1 if z[i] > 0 else -1
        for _ in range(abs(z[i])):
            current[i] += step
            labels.add(canon(tuple(current)))
    return sorted(labels), best[0]


def _odd_cycle_bfs_labels(rm: RelationMatrix, r_max: int, vertex_cap: int):
    """BFS fallback: vertices of an odd closed walk within depth r_max, or None."""
    matrix = rm.matrix
    m = matrix.rows
    canon = _reducer(column_hnf(matrix))
    start = canon((0,) * m)
    parent = {start: None}
    depth = {start: 0}
    frontier = [start]
    for d in range(1, r_max + 1):
        nxt = []
        for v in frontier:
            for k in range(m):
                for delta in (1, -1):
                    stepped = list(v)
                    stepped[k] += delta
                    u = canon(tuple(stepped))
                    if u not in parent:
                        if len(parent) >= vertex_cap:
                            return None
                        parent[u] = v
                        depth[u] = d
                        nxt.append(u)
                    elif (depth[u] + d) % 2 == 1:
                        # odd closed walk through u and v: climb both to the root
                        cycle = set()
                        for w in (u, v):
                            while w is not None:
                                cycle.add(w)
                                w = parent[w]
                        return sorted(cycle), d
        frontier = nxt
    return None


# --------------------------------------------------------------------------
# Exact chromatic number search.
# --------------------------------------------------------------------------


def _two_coloring(graph: FiniteGraph) -> Optional[list[int]]:
    colors = [-1] * graph.n
    for s in range(graph.n):
        if colors[s] >= 0:
            continue
        colors[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for u in graph.adj[v]:
                if colors[u] < 0:
                    colors[u] = 1 - colors[v]
                    queue.append(u)
                elif colors[u] == colors[v]:
                    return None
    return colors


def _greedy_clique(graph: FiniteGraph) -> tuple[int, ...]:
    """A deterministic greedy clique; only used for lower bounds and seeding."""
    n = graph.n
    if n == 0:
        return ()
    order = sorted(range(n), key=lambda v: (-len(graph.adj[v]), v))
    best: tuple[int, ...] = (order[0],)
    for start in order[: min(n, 8)]:
        clique = [start]
        cand = set(graph.adj[start])
        while cand:
            u = min(cand, key=lambda v: (-len(graph.adj[v]), v))
            clique.append(u)
            cand &= graph.adj[u]
        if len(clique) > len(best):
            best = tuple(clique)
    return best


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: Optional[int]):
        self.remaining = limit

    def tick(self):
        if self.remaining is not None:
            self.remaining -= 1
            if self.remaining < 0:
                raise SearchBudgetError("exact coloring search exceeded its node budget")


def _decide_colorable(
    graph: FiniteGraph, k: int, preassigned: Sequence[tuple[int, int]], budget: _Budget
) -> Optional[list[int]]:
    """Complete backtracking decision of k-colorability.

    Saturation-ordered (DSATUR): always branch on an uncolored vertex
    with the most distinctly colored neighbors, ties by degree then
    index.  ``preassigned`` fixes a clique up front, which breaks color
    symmetry soundly.
    """
    n = graph.n
    adj = graph.adj
    deg = [len(a) for a in adj]
    colors = [-1] * n
    masks = [0] * n
    satc = [0] * n
    heap: list[tuple[int, int, int]] = []
    for v in range(n):
        heap.append((0, -deg[v], v))
    heapq.heapify(heap)

    def place(v: int, c: int) -> list[int]:
        colors[v] = c
        bit = 1 << c
        changed = []
        for u in adj[v]:
            if colors[u] < 0 and not masks[u] & bit:
                masks[u] |= bit
                satc[u] += 1
                heapq.heappush(heap, (-satc[u], -deg[u], u))
                changed.append(u)
        return changed

    def lift(v: int, c: int, changed: list[int]):
        bit = 1 << c
        for u in changed:
            masks[u] ^= bit
            satc[u] -= 1
            heapq.heappush(heap, (-satc[u], -deg[u], u))
        colors[v] = -1
        heapq.heappush(heap, (-satc[v], -deg[v], v))

    uncolored = n
    for v, c in preassigned:
        if masks[v] >> c & 1:
            return None
        place(v, c)
        uncolored -= 1
    if uncolored == 0:
        return colors

    full = (1 << k) - 1
    stack: list[list] = []
    while uncolored:
        v = None
        while heap:
            s, _, w = heapq.heappop(heap)
            if colors[w] < 0 and satc[w] == -s:
                v = w
                break
        if v is None:
            raise InternalViolationError("selection heap drained with vertices uncolored")
        frame = [v, full & ~masks[v], -1, None]
        while True:
            v, rem = frame[0], frame[1]
            if frame[2] >= 0:
                lift(v, frame[2], frame[3])
                uncolored += 1
                frame[2], frame[3] = -1, None
            if rem == 0:
                # abandoning v's frame: make it selectable again before
                # resuming the parent, or it could vanish from the heap
                heapq.heappush(heap, (-satc[v], -deg[v], v))
                if not stack:
                    return None
                frame = stack.pop()
                continue
            c = (rem & -rem).bit_length() - 1
            frame[1] = rem & (rem - 1)
            budget.tick()
            frame[3] = place(v, c)
            frame[2] = c
            uncolored -= 1
            stack.append(frame)
            break
    return colors


def exact_chromatic(
    graph: FiniteGraph,
    k_max: Optional[int] = None,
    budget: Optional[int] = None,
    candidates: Sequence[Sequence[int]] = (),
) -> Optional[tuple[int, tuple[int, ...]]]:
    """Exact chromatic number with a verified coloring witness.

    Tries k = clique size, clique size + 1, ... in order; the first
    satisfiable k is exact.  With ``k_max`` set, returns None when
    chi > k_max.  ``candidates`` are optional colorings to try before
    searching; each is verified and only ever shortcuts a *successful*
    level, so exactness is unaffected.

    Raises NoProperColoringError on self-loops and SearchBudgetError
    when the node budget runs out.
    """
    if graph.has_loops:
        raise NoProperColoringError("the graph has self-loops")
    n = graph.n
    if n == 0:
        return (0, ())
    if all(not a for a in graph.adj):
        return (1, (0,) * n)
    verified = []
    for cand in candidates:
        cand = tuple(cand)
        if len(cand) == n and proper_coloring(graph, cand):
            verified.append((max(cand) + 1, cand))
    clique = _greedy_clique(graph)
    lo = max(2, len(clique))
    cap = k_max if k_max is not None else graph.max_degree + 1
    bud = _Budget(budget)
    for k in range(lo, cap + 1):
        for used, cand in verified:
            if used <= k:
                return (k, cand)
        if k == 2:
            col = _two_coloring(graph)
        else:
            col = _decide_colorable(graph, k, list(zip(clique, range(len(clique)))), bud)
        if col is not None:
            witness = tuple(col)
            if not proper_coloring(graph, witness):
                raise InternalViolationError("search returned an improper coloring")
            return (k, witness)
    return None


# --------------------------------------------------------------------------
# Bounds and cross-checking.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundWitness:
    kind: str  # "ball" | "quotient" | "exact-graph" | "odd-cycle"
    param: int  # radius, modulus, or 0 for the exact graph
    vertices: int
    chi: int
    coloring: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class ChiBounds:
    """Proven bounds: lower from induced subgraphs, upper from quotients."""

    lower: Optional[int]
    upper: Optional[int]
    lower_witness: Optional[BoundWitness] = None
    upper_witness: Optional[BoundWitness] = None
    loops: bool = False
    partial: bool = False
    notes: tuple[str, ...] = ()

    @property
    def pinned(self) -> bool:
        return self.lower is not None and self.lower == self.upper


def _linear_candidates(lattice: ColumnHNF, labels, ks=(3, 4)) -> list[tuple[int, ...]]:
    """Colorings (w . x) mod k that vanish on the lattice, one per k.

    The functional is well defined on cosets and proper by construction
    (each w_i is a unit step change, nonzero mod k); the caller still
    re-verifies on the actual graph.
    """
    if not labels:
        return []
    m = len(labels[0])
    cols = [lattice.h.col(c) for c in range(1, lattice.h.cols + 1)]
    out = []
    for k in ks:
        for w in itertools.product(range(1, k), repeat=m):
            if all(sum(wi * ci for wi, ci in zip(w, col)) % k == 0 for col in cols):
                out.append(tuple(sum(wi * xi for wi, xi in zip(w, lab)) % k for lab in labels))
                break
    return out


def _radius_schedule(r_max: int) -> list[int]:
    # Dense early, then even radii: a bigger ball always dominates a
    # smaller one, so skipping radii never weakens the final bound.
    return [r for r in (1, 2, 3, 4) if r <= r_max] + list(range(6, r_max + 1, 2))


def chi_bounds(rm, config: Optional[OracleConfig] = None) -> ChiBounds:
    """Best proven bounds within the configured caps.

    The two directions stop early once they meet: further quotients
    cannot drop the minimum below the true chi and further balls cannot
    raise the maximum above it, so early exit never changes the values.
    Cap or budget overruns mark the result partial instead of failing.
    """
    cfg = config if config is not None else OracleConfig.from_env()
    rm = as_relation_matrix(rm)
    matrix = rm.matrix
    m = matrix.rows
    hnf = column_hnf(matrix)
    if any(solve_in_hnf(hnf, unit_vector(m, j)) is not None for j in range(1, m + 1)):
        return ChiBounds(None, None, loops=True)

    if hnf.rank == m:
        graph = finite_cayley_graph(rm, vertex_cap=cfg.vertex_cap)
        found = exact_chromatic(graph, budget=cfg.node_budget)
        chi, coloring = found
        witness = BoundWitness("exact-graph", 0, graph.n, chi, coloring)
        return ChiBounds(chi, chi, witness, witness)

    notes: list[str] = []
    partial = False
    lower: Optional[int] = None
    lower_witness: Optional[BoundWitness] = None
    upper: Optional[int] = None
    upper_witness: Optional[BoundWitness] = None
    cycle_tried = False

    try:
        ball1 = ball_subgraph(rm, 1, vertex_cap=cfg.vertex_cap)
        found = exact_chromatic(ball1, k_max=2 * m + 1, budget=cfg.node_budget)
        lower = found[0]
        lower_witness = BoundWitness("ball", 1, ball1.n, found[0], found[1])
    except (SizeCapError, SearchBudgetError) as exc:
        partial = True
        notes.append(f"ball r=1: {exc}")

    def try_odd_cycle():
        """Raise the lower bound to 3 via an explicit odd closed walk."""
        nonlocal lower, lower_witness, cycle_tried
        cycle_tried = True
        found_cycle = _odd_walk_labels(rm)
        if found_cycle is None:
            found_cycle = _odd_cycle_bfs_labels(rm, cfg.r_max, cfg.vertex_cap)
        if found_cycle is None:
            return
        labels, weight = found_cycle
        subgraph = _build_graph(list(labels), _reducer(hnf), m)
        found = exact_chromatic(subgraph, budget=cfg.node_budget)
        if found is not None and (lower is None or found[0] > lower):
            lower = found[0]
            lower_witness = BoundWitness("odd-cycle", weight, subgraph.n, found[0], found[1])

    # quotients, smallest modulus first; stop the moment the bounds meet
    for n_mod in range(1, cfg.n_max + 1):
        if upper is not None and upper == lower:
            break
        try:
            lattice = _full_rank_lattice(matrix, n_mod)
            labels = _box_labels(lattice, cfg.vertex_cap, f"quotient N={n_mod}")
            graph = _build_graph(labels, _reducer(lattice), m)
        except SizeCapError as exc:
            partial = True
            notes.append(str(exc))
            continue
        if graph.has_loops:
            continue
        cap = (upper - 1) if upper is not None else graph.max_degree + 1
        if cap < 2:
            break
        cands = _linear_candidates(lattice, labels, ks=(3, 4) if graph.n >= 300 else (3,))
        try:
            found = exact_chromatic(graph, k_max=cap, budget=cfg.node_budget, candidates=cands)
        except SearchBudgetError as exc:
            partial = True
            notes.append(f"quotient N={n_mod}: {exc}")
            continue
        if found is not None:
            chi_n, coloring = found
            upper = chi_n
            upper_witness = BoundWitness("quotient", n_mod, graph.n, chi_n, coloring)
        if upper is not None and lower == 2 and upper >= 3 and not cycle_tried:
            try_odd_cycle()

    if lower is not None and lower == upper:
        return ChiBounds(lower, upper, lower_witness, upper_witness, partial=partial, notes=tuple(notes))

    if lower == 2 and (upper is None or upper >= 3) and not cycle_tried:
        try_odd_cycle()

    if lower is not None and lower == upper:
        return ChiBounds(lower, upper, lower_witness, upper_witness, partial=partial, notes=tuple(notes))

    ball_cap = upper if upper is not None else 2 * m + 1
    for radius in _radius_schedule(cfg.r_max):
        if radius < 2:
            continue
        try:
            ball = ball_subgraph(rm, radius, vertex_cap=cfg.vertex_cap)
            found = exact_chromatic(ball, k_max=ball_cap, budget=cfg.node_budget)
        except (SizeCapError, SearchBudgetError) as exc:
            partial = True
            notes.append(f"ball r={radius}: {exc}")
            break
        if found is None:
            raise InternalViolationError("ball chi exceeded a proven upper bound")
        if lower is None or found[0] > lower:
            lower = found[0]
            lower_witness = BoundWitness("ball", radius, ball.n, found[0], found[1])
        if lower == upper:
            break

    return ChiBounds(lower, upper, lower_witness, upper_witness, partial=partial, notes=tuple(notes))


@dataclass(frozen=True)
class CrossCheck:
    """Comparison of the classifier against the oracle bounds."""

    result: Optional[object]  # ChromaticResult, None when unsupported
    bounds: Optional[ChiBounds]
    status: str  # CONSISTENT | PINNED | VIOLATION | UNSUPPORTED
    detail: str = ""


def cross_check(rm, config: Optional[OracleConfig] = None) -> CrossCheck:
    """Classify, bound, and compare.

    PINNED: oracle bounds meet exactly at the classifier's answer.
    CONSISTENT: classifier answer lies within the (possibly open) bounds.
    VIOLATION: classifier answer falls outside a proven bound, or a
    certificate fails to re-verify.  UNSUPPORTED: shape out of scope.
    """
    from .classify import chromatic_number, normalize  # deferred: avoids an import cycle
    from .errors import UnsupportedShapeError

    rm = as_relation_matrix(rm)
    cfg = config if config is not None else OracleConfig.from_env()
    try:
        result = chromatic_number(rm, config=cfg)
    except UnsupportedShapeError as exc:
        return CrossCheck(None, None, "UNSUPPORTED", str(exc))

    normalized = normalize(rm)
    cert_ok = True
    check = getattr(result.certificate, "check", None)
    if check is not None:
        cert_ok = bool(check(normalized.matrix))

    bounds = chi_bounds(rm, cfg)
    if result.has_loops:
        if bounds.loops and cert_ok:
            return CrossCheck(result, bounds, "PINNED", "loop witness re-verified")
        return CrossCheck(result, bounds, "VIOLATION", "loop claim did not re-verify")
    if bounds.loops:
        return CrossCheck(result, bounds, "VIOLATION", "oracle found loops, classifier did not")
    if not cert_ok:
        return CrossCheck(result, bounds, "VIOLATION", "certificate failed to re-verify")

    chi = result.chi
    if bounds.lower is not None and chi < bounds.lower:
        return CrossCheck(result, bounds, "VIOLATION", f"chi={chi} below proven lower bound {bounds.lower}")
    if bounds.upper is not None and chi > bounds.upper:
        return CrossCheck(result, bounds, "VIOLATION", f"chi={chi} above proven upper bound {bounds.upper}")
    if bounds.pinned and bounds.lower == chi:
        return CrossCheck(result, bounds, "PINNED")
    detail = "bounds partial" if bounds.partial else ""
    return CrossCheck(result, bounds, "CONSISTENT", detail)
