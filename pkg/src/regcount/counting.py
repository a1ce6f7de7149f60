"""Exact matching/independence polynomials, partition-function evaluation,
brute-force oracles, and homomorphism counting.

Every count is an arbitrary-precision integer; no floating point enters this
module.  The polynomial routines use deletion recursions with
connected-component factorization; components small enough to canonicalize
cheaply are memoized across calls, which pays off heavily on graph corpora
sharing fragments (paths, cycles, trees).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._canon import induced_masks, min_code
from .errors import DomainError, GraphError, ScaleError
from .graphs import Graph, adjacency_masks

MEMO_VERTEX_LIMIT = 10
# Guard for the subset-enumeration oracle: number of subsets actually walked.
BRUTE_FORCE_SUBSET_LIMIT = 40_000_000
HOM_SEARCH_LIMIT = 10**12

MATCHING = "matching"
INDEPENDENT_SET = "independent-set"


@dataclass(frozen=True)
class CountPolynomial:
    """coefficients[k] = exact number of size-k objects; trailing zeros trimmed."""

    coefficients: tuple[int, ...]
    kind: str

    def coefficient(self, k: int) -> int:
        if k < 0:
            raise DomainError(f"size must be nonnegative, got {k}")
        return self.coefficients[k] if k < len(self.coefficients) else 0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def to_json_strings(self) -> list[str]:
        return [str(c) for c in self.coefficients]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    last = 0
    for i, c in enumerate(coeffs):
        if c:
            last = i
    return tuple(coeffs[: last + 1])


def _components(adj: tuple[int, ...], skip_isolated: bool) -> list[tuple[int, ...]]:
    n = len(adj)
    seen = 0
    comps = []
    for root in range(n):
        if seen >> root & 1 or (skip_isolated and adj[root] == 0):
            continue
        frontier = 1 << root
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= adj[v]
            frontier = nxt & ~comp
        seen |= comp
        comps.append(tuple(v for v in range(n) if comp >> v & 1))
    return comps


_match_memo: dict[tuple[int, ...], tuple[int, ...]] = {}
_ind_memo: dict[tuple[int, ...], tuple[int, ...]] = {}


def _match_rec(adj: tuple[int, ...]) -> tuple[int, ...]:
    comps = _components(adj, skip_isolated=True)
    if not comps:
        return (1,)
    result = (1,)
    for verts in comps:
        sub = induced_masks(adj, verts) if len(verts) < len(adj) else adj
        result = _poly_mul(result, _match_component(sub))
    return result


def _match_component(adj: tuple[int, ...]) -> tuple[int, ...]:
    k = len(adj)
    key = None
    if k <= MEMO_VERTEX_LIMIT:
        key = min_code(k, adj)
        hit = _match_memo.get(key)
        if hit is not None:
            return hit
    degs = [m.bit_count() for m in adj]
    v = max(range(k), key=lambda i: (degs[i], -i))
    u = max(
        (w for w in range(k) if adj[v] >> w & 1),
        key=lambda w: (degs[w], -w),
    )
    # Matchings avoiding edge uv, plus x * matchings using it.
    without_edge = list(adj)
    without_edge[v] &= ~(1 << u)
    without_edge[u] &= ~(1 << v)
    p_skip = _match_rec(tuple(without_edge))
    pair = (1 << u) | (1 << v)
    without_ends = [0 if w in (u, v) else m & ~pair for w, m in enumerate(adj)]
    p_use = _match_rec(tuple(without_ends))
    out = [0] * max(len(p_skip), len(p_use) + 1)
    for i, c in enumerate(p_skip):
        out[i] += c
    for i, c in enumerate(p_use):
        out[i + 1] += c
    coeffs = tuple(out)
    if key is not None:
        _match_memo[key] = coeffs
    return coeffs


def matching_polynomial(g: Graph) -> CountPolynomial:
    """coefficients[k] = number of k-edge matchings of g."""
    if any(u == v for u, v in g.edges):
        raise GraphError("matching_polynomial requires a loop-free graph")
    coeffs = _match_rec(adjacency_masks(g))
    return CountPolynomial(_trim(list(coeffs)), MATCHING)


def _ind_rec(adj: tuple[int, ...]) -> tuple[int, ...]:
    if not adj:
        return (1,)
    comps = _components(adj, skip_isolated=False)
    result = (1,)
    for verts in comps:
        if len(verts) == 1:
            result = _poly_mul(result, (1, 1))
            continue
        sub = induced_masks(adj, verts) if len(verts) < len(adj) else adj
        result = _poly_mul(result, _ind_component(sub))
    return result


def _ind_component(adj: tuple[int, ...]) -> tuple[int, ...]:
    k = len(adj)
    key = None
    if k <= MEMO_VERTEX_LIMIT:
        key = min_code(k, adj)
        hit = _ind_memo.get(key)
        if hit is not None:
            return hit
    degs = [m.bit_count() for m in adj]
    v = max(range(k), key=lambda i: (degs[i], -i))
    # Sets avoiding v, plus x * sets containing v (drop its closed neighborhood).
    rest = tuple(w for w in range(k) if w != v)
    p_skip = _ind_rec(induced_masks(adj, rest))
    closed = adj[v] | (1 << v)
    kept = tuple(w for w in range(k) if not closed >> w & 1)
    p_use = _ind_rec(induced_masks(adj, kept))
    out = [0] * max(len(p_skip), len(p_use) + 1)
    for i, c in enumerate(p_skip):
        out[i] += c
    for i, c in enumerate(p_use):
        out[i + 1] += c
    coeffs = tuple(out)
    if key is not None:
        _ind_memo[key] = coeffs
    return coeffs


def independence_polynomial(g: Graph) -> CountPolynomial:
    """coefficients[t] = number of independent vertex sets of size t."""
    if any(u == v for u, v in g.edges):
        raise GraphError("independence_polynomial requires a loop-free graph")
    coeffs = _ind_rec(adjacency_masks(g))
    return CountPolynomial(_trim(list(coeffs)), INDEPENDENT_SET)


def eval_partition(p: CountPolynomial, lam) -> Fraction:
    """Exact partition-function value sum_k coeff_k * lam^k at rational lam >= 0."""
    lam = Fraction(lam)
    if lam < 0:
        raise DomainError(f"lambda must be nonnegative, got {lam}")
    total = Fraction(0)
    power = Fraction(1)
    for c in p.coefficients:
        total += c * power
        power *= lam
    return total


def brute_force_count(g: Graph, kind: str, size: int) -> int:
    """Independent oracle: enumerate all size-subsets and test the property.

    Deliberately ignorant of the recursion machinery above.  The feasibility
    guard caps the number of enumerated subsets rather than raw edge/vertex
    counts, so dense-but-small instances (K_10 and friends) stay in reach.
    """
    if size < 0:
        raise DomainError(f"size must be nonnegative, got {size}")
    if any(u == v for u, v in g.edges):
        raise GraphError("brute_force_count requires a loop-free graph")
    if kind == MATCHING:
        pool = [((1 << u) | (1 << v)) for u, v in g.sorted_edges()]
    elif kind == INDEPENDENT_SET:
        pool = list(range(g.vertex_count))
    else:
        raise DomainError(f"unknown kind {kind!r}")
    if size > len(pool):
        return 0
    if math.comb(len(pool), size) > BRUTE_FORCE_SUBSET_LIMIT:
        raise ScaleError(
            f"instance too large: C({len(pool)}, {size}) subsets exceed "
            f"the enumeration limit"
        )
    count = 0
    if kind == MATCHING:
        for combo in combinations(pool, size):
            acc = 0
            for mask in combo:
                if acc & mask:
                    break
                acc |= mask
            else:
                count += 1
    else:
        adj = adjacency_masks(g)
        for combo in combinations(pool, size):
            acc = 0
            for v in combo:
                if adj[v] & acc:
                    break
                acc |= 1 << v
            else:
                count += 1
    return count


def count_homomorphisms(g: Graph, h: Graph) -> int:
    """Number of adjacency-preserving maps V(g) -> V(h).

    A loop on w in h permits mapping adjacent source vertices to w.  The
    source must be loop-free.  Counts factor over source components;
    within a component a BFS order keeps the backtracking pruned.
    """
    if any(u == v for u, v in g.edges):
        raise GraphError("count_homomorphisms requires a loop-free source graph")
    nh = h.vertex_count
    if nh ** max(g.vertex_count, 1) > HOM_SEARCH_LIMIT:
        raise ScaleError(
            f"instance too large: {nh}^{g.vertex_count} assignments exceed "
            f"the search limit"
        )
    if g.vertex_count == 0:
        return 1
    if nh == 0:
        return 0
    gadj = adjacency_masks(g)
    # Target adjacency with loops folded in as self-bits.
    hadj = [0] * nh
    for u, v in h.edges:
        hadj[u] |= 1 << v
        hadj[v] |= 1 << u
    full = (1 << nh) - 1

    total = 1
    for verts in _components(gadj, skip_isolated=False):
        if len(verts) == 1:
            total *= nh
            continue
        sub = induced_masks(gadj, verts)
        k = len(sub)
        # BFS order: after the root, every vertex has an assigned neighbor.
        order = [0]
        placed = 1
        while len(order) < k:
            frontier = [
                w
                for w in range(k)
                if not placed >> w & 1 and any(sub[w] >> x & 1 for x in order)
            ]
            order.extend(frontier)
            for w in frontier:
                placed |= 1 << w
        assigned_images = [0] * k

        def walk(pos: int) -> int:
            if pos == k:
                return 1
            v = order[pos]
            cand = full
            for u in order[:pos]:
                if sub[v] >> u & 1:
                    cand &= hadj[assigned_images[u]]
            found = 0
            m = cand
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                assigned_images[v] = w
                found += walk(pos + 1)
            return found

        total *= walk(0)
        if total == 0:
            return 0
    return total
