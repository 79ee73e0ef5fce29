"""Graphical parking functions: membership, primality, decompositions.

A parking candidate assigns a positive integer to every non-sink vertex
(tuples in declaration order, like configurations).  Membership has two
independent routes: the subset definition (every non-empty set of non-sink
vertices contains a vertex that could park using only edges leaving the
set) and the degree-complement duality with recurrent sandpile
configurations.  Primality likewise has a partition brute force and a fast
boost test; the test suite holds the pairs equal.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import SizeCapError, UnknownVertexError
from .graph import RootedMultigraph
from .sandpile import is_recurrent

NAIVE_MAX_NONSINK = 20
PARTITION_MAX_NONSINK = 10

Parking = tuple[int, ...]


def _check_candidate(g: RootedMultigraph, p: Sequence[int]) -> Parking:
    p = tuple(p)
    if len(p) != len(g.nonsink):
        raise ValueError(
            f"candidate has {len(p)} values, graph has {len(g.nonsink)} "
            "non-sink vertices")
    if any(x < 1 for x in p):
        raise ValueError("parking candidates must be positive everywhere")
    return p


def parking_from_dict(g: RootedMultigraph, data: dict) -> Parking:
    from .sandpile import config_from_dict

    return _check_candidate(g, config_from_dict(g, data))


def load_parking(g: RootedMultigraph, path) -> Parking:
    with open(path, "r", encoding="utf-8") as fh:
        return parking_from_dict(g, json.load(fh))


# ----------------------------------------------------------------------
# membership


def parking_violation(g: RootedMultigraph, p: Sequence[int], *,
                      max_nonsink: int = NAIVE_MAX_NONSINK
                      ) -> Optional[tuple[str, ...]]:
    """First vertex set witnessing failure of the subset condition, or None.

    A set violates when every member needs more grains than its edges
    leaving the set (towards the complement, sink included) provide.
    """
    p = _check_candidate(g, p)
    k = len(p)
    if k > max_nonsink:
        raise SizeCapError(
            f"subset test capped at {max_nonsink} non-sink vertices, graph has {k}")
    adj = g.nonsink_adj
    degs = g.nonsink_degrees
    for mask in range(1, 1 << k):
        members = [i for i in range(k) if mask >> i & 1]
        ok = False
        for i in members:
            row = adj[i]
            outward = degs[i] - sum(row[j] for j in members)
            if p[i] <= outward:
                ok = True
                break
        if not ok:
            return tuple(g.nonsink[i] for i in members)
    return None


def is_g_parking_naive(g: RootedMultigraph, p: Sequence[int], *,
                       max_nonsink: int = NAIVE_MAX_NONSINK) -> bool:
    return parking_violation(g, p, max_nonsink=max_nonsink) is None


def is_g_parking(g: RootedMultigraph, p: Sequence[int]) -> bool:
    """Fast membership: the degree complement must be recurrent."""
    p = _check_candidate(g, p)
    degs = g.nonsink_degrees
    if any(x > d for x, d in zip(p, degs)):
        return False
    return is_recurrent(g, tuple(d - x for x, d in zip(p, degs)))


def pf_from_config(g: RootedMultigraph, c: Sequence[int]) -> Parking:
    """Degree complement of a recurrent configuration."""
    c = tuple(c)
    if not is_recurrent(g, c) or any(x < 0 for x in c):
        raise ValueError("configuration is not recurrent")
    return tuple(d - x for x, d in zip(c, g.nonsink_degrees))


def config_from_pf(g: RootedMultigraph, p: Sequence[int]) -> tuple[int, ...]:
    """Degree complement of a parking function (always recurrent)."""
    p = _check_candidate(g, p)
    if not is_g_parking(g, p):
        raise ValueError("candidate is not a parking function")
    return tuple(d - x for x, d in zip(p, g.nonsink_degrees))


# ----------------------------------------------------------------------
# partitions and decomposability


@lru_cache(maxsize=None)
def _induced(g: RootedMultigraph, keep: tuple[str, ...]) -> RootedMultigraph:
    return g.induced_with_sink(keep)


def _normalize_block(g: RootedMultigraph, block: Iterable[str]) -> tuple[str, ...]:
    block = set(block)
    for v in block:
        if v not in g.nonsink_pos:
            if v not in g.index:
                raise UnknownVertexError(f"unknown vertex {v!r}")
            raise ValueError("partition blocks contain non-sink vertices only")
    return tuple(v for v in g.nonsink if v in block)


def _check_partition(g: RootedMultigraph, a: Iterable[str], b: Iterable[str]
                     ) -> tuple[tuple[str, ...], tuple[str, ...]]:
    a = _normalize_block(g, a)
    b = _normalize_block(g, b)
    if not a or not b:
        raise ValueError("both blocks must be non-empty")
    if set(a) & set(b):
        raise ValueError("blocks must be disjoint")
    if len(a) + len(b) != len(g.nonsink):
        raise ValueError("blocks must cover all non-sink vertices")
    return a, b


def restrict_partition(g: RootedMultigraph, p: Sequence[int],
                       a: Iterable[str], b: Iterable[str]
                       ) -> tuple[Parking, tuple[int, ...]]:
    """Split ``p`` along an ordered two-block partition of non-sink vertices.

    The first block keeps its values; the second is reduced by the edges
    each vertex sends into the first block.  Both outputs follow declaration
    order of their blocks; the second may contain non-positive values.
    """
    p = _check_candidate(g, p)
    a, b = _check_partition(g, a, b)
    pos = g.nonsink_pos
    p_a = tuple(p[pos[v]] for v in a)
    p_b = tuple(p[pos[v]] - g.deg_within(v, a) for v in b)
    return p_a, p_b


def _connected_with_sink(g: RootedMultigraph, block: tuple[str, ...]) -> bool:
    members = {g.index[v] for v in block}
    members.add(g.sink_index)
    start = g.sink_index
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        row = g.mult[i]
        for j in members:
            if row[j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(members)


def _decomposable(g: RootedMultigraph, p: Parking,
                  a: tuple[str, ...], b: tuple[str, ...]) -> bool:
    pos = g.nonsink_pos
    for v in b:
        if p[pos[v]] - g.deg_within(v, a) <= 0:
            return False
    if not (_connected_with_sink(g, a) and _connected_with_sink(g, b)):
        return False
    sub = _induced(g, a)
    p_a = tuple(p[pos[v]] for v in a)
    return is_g_parking(sub, p_a)


def is_decomposable(g: RootedMultigraph, p: Sequence[int],
                    a: Iterable[str], b: Iterable[str]) -> bool:
    """Does the ordered partition (a, b) split ``p`` into two parking parts?

    Equivalent to: the restriction to ``a`` parks on the induced subgraph
    and the reduced values on ``b`` stay positive.  Partitions whose induced
    subgraphs are disconnected never decompose.
    """
    p = _check_candidate(g, p)
    if not is_g_parking(g, p):
        raise ValueError("candidate is not a parking function")
    a, b = _check_partition(g, a, b)
    return _decomposable(g, p, a, b)


def decomposing_partition(g: RootedMultigraph, p: Sequence[int], *,
                          max_nonsink: int = PARTITION_MAX_NONSINK
                          ) -> Optional[tuple[tuple[str, ...], tuple[str, ...]]]:
    """First ordered partition that decomposes ``p``, or None (prime)."""
    p = _check_candidate(g, p)
    if not is_g_parking(g, p):
        raise ValueError("candidate is not a parking function")
    k = len(g.nonsink)
    if k > max_nonsink:
        raise SizeCapError(
            f"partition search capped at {max_nonsink} non-sink vertices, "
            f"graph has {k}")
    names = g.nonsink
    for mask in range(1, (1 << k) - 1):
        a = tuple(names[i] for i in range(k) if mask >> i & 1)
        b = tuple(names[i] for i in range(k) if not mask >> i & 1)
        if _decomposable(g, p, a, b):
            return a, b
    return None


def is_prime_bruteforce(g: RootedMultigraph, p: Sequence[int], *,
                        max_nonsink: int = PARTITION_MAX_NONSINK) -> bool:
    return decomposing_partition(g, p, max_nonsink=max_nonsink) is None


def burning_starts_pf(g: RootedMultigraph, p: Sequence[int]) -> tuple[str, ...]:
    """Vertices whose value is within their sink multiplicity.

    Under the degree complement these are exactly the burning starts of the
    dual configuration.
    """
    p = _check_candidate(g, p)
    return tuple(v for v, x, m in zip(g.nonsink, p, g.sink_mults) if x <= m)


def boost_except(g: RootedMultigraph, p: Sequence[int], v: str) -> Parking:
    """Raise every value except at ``v`` by its sink multiplicity."""
    p = _check_candidate(g, p)
    if v not in g.nonsink_pos:
        raise UnknownVertexError(f"unknown or sink vertex {v!r}")
    pos = g.nonsink_pos[v]
    return tuple(x if i == pos else x + m
                 for i, (x, m) in enumerate(zip(p, g.sink_mults)))


def failing_boost_vertex(g: RootedMultigraph, p: Sequence[int]) -> Optional[str]:
    """Witness for non-primality under the boost test, or None when prime."""
    p = _check_candidate(g, p)
    if not is_g_parking(g, p):
        raise ValueError("candidate is not a parking function")
    for v in burning_starts_pf(g, p):
        if not is_g_parking(g, boost_except(g, p, v)):
            return v
    return None


def is_prime(g: RootedMultigraph, p: Sequence[int]) -> bool:
    """Primality via the boost test: every burning start, when every other
    vertex is raised by its sink multiplicity, must still leave a parking
    function."""
    return failing_boost_vertex(g, p) is None


# ----------------------------------------------------------------------
# prime decompositions


def prime_decompositions(g: RootedMultigraph, p: Sequence[int], *,
                         max_nonsink: int = PARTITION_MAX_NONSINK
                         ) -> list[tuple[tuple[str, ...], ...]]:
    """All ordered partitions splitting ``p`` into prime parking parts.

    Block i keeps its values minus the edges into earlier blocks; each
    reduced part must be a prime parking function on its induced subgraph
    (blocks inducing disconnected subgraphs are skipped).  Every parking
    function has at least one such partition; a single-block entry appears
    exactly when ``p`` itself is prime.  Output order is deterministic:
    blocks are explored lexicographically by declaration-order bitmask.
    """
    p = _check_candidate(g, p)
    if not is_g_parking(g, p):
        raise ValueError("candidate is not a parking function")
    k = len(g.nonsink)
    if k > max_nonsink:
        raise SizeCapError(
            f"partition search capped at {max_nonsink} non-sink vertices, "
            f"graph has {k}")
    names = g.nonsink
    pos = g.nonsink_pos
    results: list[tuple[tuple[str, ...], ...]] = []

    def explore(remaining: tuple[int, ...], prefix_names: tuple[str, ...],
                chosen: tuple[tuple[str, ...], ...]) -> None:
        if not remaining:
            results.append(chosen)
            return
        rem = list(remaining)
        for mask in range(1, 1 << len(rem)):
            block = tuple(names[rem[i]] for i in range(len(rem)) if mask >> i & 1)
            reduced = tuple(p[pos[v]] - g.deg_within(v, prefix_names)
                            for v in block)
            if any(x < 1 for x in reduced):
                continue
            if not _connected_with_sink(g, block):
                continue
            sub = _induced(g, block)
            if not is_g_parking(sub, reduced):
                continue
            if not is_prime(sub, reduced):
                continue
            rest = tuple(i for i in rem if names[i] not in block)
            explore(rest, prefix_names + block, chosen + (block,))

    explore(tuple(range(k)), (), ())
    return results


# ----------------------------------------------------------------------
# vertex deletion


def is_sink_twin(g: RootedMultigraph, v: str) -> bool:
    """Can deleting ``v`` preserve parking for prime functions low at ``v``?

    Requires ``v`` to neighbour the sink (otherwise its value can never be
    within its sink multiplicity) and every other vertex to see the sink
    and ``v`` with equal multiplicity.
    """
    if v not in g.nonsink_pos:
        raise UnknownVertexError(f"unknown or sink vertex {v!r}")
    if g.multiplicity(v, g.sink) < 1:
        return False
    return all(g.multiplicity(w, g.sink) == g.multiplicity(w, v)
               for w in g.nonsink if w != v)


def delete_one_vertex(g: RootedMultigraph, p: Sequence[int], v: str
                      ) -> tuple[RootedMultigraph, Parking]:
    """Drop ``v`` from graph and candidate; values are kept as they are."""
    p = _check_candidate(g, p)
    if v not in g.nonsink_pos:
        raise UnknownVertexError(f"unknown or sink vertex {v!r}")
    g2 = g.delete_vertex(v)
    pos = g.nonsink_pos
    p2 = tuple(p[pos[w]] for w in g2.nonsink)
    return g2, p2
