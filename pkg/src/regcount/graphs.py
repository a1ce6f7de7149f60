"""Graph representation, structural predicates, and named constructions.

Vertices are 0-indexed contiguous integers.  Edges are unordered pairs stored
as (u, v) tuples with u <= v; a loop is the pair (v, v) and is legal only when
the graph was built with allow_loops set.  Loops appear only on homomorphism
target graphs; every counting routine works on simple graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisibilityError, DomainError, GraphError


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph; safe to share across workers."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    allow_loops: bool = False

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        # A loop contributes 1 to the degree here; only used on hom targets,
        # where degrees never feed a formula.
        return sum(1 for e in self.edges if v in e)

    def degree_sequence(self) -> list[int]:
        degs = [0] * self.vertex_count
        for u, v in self.edges:
            degs[u] += 1
            if v != u:
                degs[v] += 1
        return degs

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Bipartition:
    """A two-coloring witness: every edge crosses between the classes."""

    class_a: frozenset[int]
    class_b: frozenset[int]


def build_graph(n: int, edges, allow_loops: bool = False) -> Graph:
    """Validate and build a Graph on vertices 0..n-1.

    Raises GraphError on an out-of-range endpoint, a duplicate edge, or a
    loop when allow_loops is false.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge endpoint out of range: ({u}, {v}) with n={n}")
        if u == v and not allow_loops:
            raise GraphError(f"loop on vertex {u} but allow_loops is false")
        e = _normalize_edge(u, v)
        if e in seen:
            raise GraphError(f"duplicate edge ({e[0]}, {e[1]})")
        seen.add(e)
    return Graph(n, frozenset(seen), allow_loops)


@lru_cache(maxsize=4096)
def adjacency_masks(g: Graph) -> tuple[int, ...]:
    """Per-vertex neighbor bitmasks (loops excluded)."""
    masks = [0] * g.vertex_count
    for u, v in g.edges:
        if u != v:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
    return tuple(masks)


def regular_degree(g: Graph) -> int | None:
    """The common degree d if g is regular, else None."""
    degs = g.degree_sequence()
    if not degs:
        return 0
    d = degs[0]
    return d if all(x == d for x in degs) else None


def bipartition(g: Graph) -> Bipartition | None:
    """Two-color g by BFS; None if an odd cycle exists.

    Deterministic: components are rooted at their smallest vertex, the root
    goes to class_a.  The empty graph puts every vertex in class_a.
    """
    if any(u == v for u, v in g.edges):
        raise GraphError("bipartition requires a loop-free graph")
    n = g.vertex_count
    adj = adjacency_masks(g)
    color = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop()
            mask = adj[u]
            while mask:
                v = (mask & -mask).bit_length() - 1
                mask &= mask - 1
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return Bipartition(
        frozenset(v for v in range(n) if color[v] == 0),
        frozenset(v for v in range(n) if color[v] == 1),
    )


def max_matching_size(g: Graph) -> int:
    """Maximum matching cardinality, by branching on the lowest covered vertex.

    Independent of the matching-polynomial recursion so the two can
    cross-check each other.
    """
    if any(u == v for u, v in g.edges):
        raise GraphError("max_matching_size requires a loop-free graph")
    adj = adjacency_masks(g)
    memo: dict[int, int] = {}

    def best(active: int) -> int:
        if active == 0:
            return 0
        cached = memo.get(active)
        if cached is not None:
            return cached
        # Lowest active vertex with an active neighbor; vertices without one
        # cannot be matched and are dropped.
        mask = active
        v = -1
        while mask:
            cand = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            if adj[cand] & active:
                v = cand
                break
            active &= ~(1 << cand)
        if v == -1:
            memo[active] = 0
            return 0
        rest = active & ~(1 << v)
        result = best(rest)  # v stays unmatched
        nbrs = adj[v] & active
        while nbrs:
            u = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            result = max(result, 1 + best(rest & ~(1 << u)))
        memo[active] = result
        return result

    return best((1 << g.vertex_count) - 1)


def has_perfect_matching(g: Graph) -> bool:
    return g.vertex_count % 2 == 0 and max_matching_size(g) == g.vertex_count // 2


def build_kdd(d: int) -> Graph:
    """Complete bipartite graph K_{d,d}: classes {0..d-1} and {d..2d-1}."""
    if d < 1:
        raise DomainError(f"K_dd needs d >= 1, got {d}")
    return Graph(2 * d, frozenset((a, d + b) for a in range(d) for b in range(d)))


def build_kdd_union(n: int, d: int) -> Graph:
    """Disjoint union of n/2d copies of K_{d,d} (requires 2d | n)."""
    if d < 1 or n % (2 * d) != 0:
        raise DivisibilityError(f"need 2d | n with d >= 1, got n={n}, d={d}")
    edges = set()
    for copy in range(n // (2 * d)):
        base = copy * 2 * d
        edges.update((base + a, base + d + b) for a in range(d) for b in range(d))
    return Graph(n, frozenset(edges))


def build_hardcore_target(clique_size: int, independent_size: int) -> Graph:
    """Hom target encoding the hard-core model: an independent set completely
    joined to a complete looped clique.

    Vertices 0..independent_size-1 form the independent group; the clique with
    loops follows.  Counting maps into this target recovers the weighted
    independent-set partition function.
    """
    if clique_size < 1:
        raise DomainError(f"clique size must be >= 1, got {clique_size}")
    if independent_size < 0:
        raise DomainError(f"independent size must be >= 0, got {independent_size}")
    k = independent_size
    edges = set()
    clique = range(k, k + clique_size)
    for w in clique:
        edges.add((w, w))
        edges.update(_normalize_edge(w, x) for x in clique if x != w)
        edges.update((v, w) for v in range(k))
    return Graph(k + clique_size, frozenset(edges), allow_loops=True)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Side-by-side union; the second operand's labels shift by g1.vertex_count."""
    shift = g1.vertex_count
    edges = set(g1.edges)
    edges.update((u + shift, v + shift) for u, v in g2.edges)
    return Graph(
        g1.vertex_count + g2.vertex_count,
        frozenset(edges),
        g1.allow_loops or g2.allow_loops,
    )


def graph_to_text(g: Graph) -> str:
    """Bit-exact text form: 'N M L' then M lines 'u v' (u <= v), sorted, LF."""
    lines = [f"{g.vertex_count} {g.edge_count} {1 if g.allow_loops else 0}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    """Parse the text form; raises GraphError on any malformation."""
    lines = text.strip("\n").split("\n") if text.strip() else []
    if not lines:
        raise GraphError("empty graph text")
    head = lines[0].split()
    if len(head) != 3:
        raise GraphError(f"header must be 'N M L', got {lines[0]!r}")
    try:
        n, m, loops_flag = (int(x) for x in head)
    except ValueError as exc:
        raise GraphError(f"non-integer header field in {lines[0]!r}") from exc
    if loops_flag not in (0, 1):
        raise GraphError(f"loops flag must be 0 or 1, got {loops_flag}")
    if len(lines) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(lines) - 1} lines")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"edge line must be 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphError(f"non-integer edge endpoint in {line!r}") from exc
        if u > v:
            raise GraphError(f"edge line not normalized (u <= v): {line!r}")
        edges.append((u, v))
    if edges != sorted(edges):
        raise GraphError("edge lines not sorted lexicographically")
    return build_graph(n, edges, allow_loops=bool(loops_flag))
