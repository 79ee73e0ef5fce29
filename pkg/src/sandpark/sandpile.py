"""Chip-firing dynamics on rooted multigraphs.

Configurations are plain integer tuples aligned with ``graph.nonsink``
(declaration order).  The sink absorbs grains and never topples.

Three independent recurrence oracles live here: the burning test (drop one
grain per sink edge and watch for a full round of topplings), the maximal
forbidden-subconfiguration fixpoint, and an exhaustive search over rooted
acyclic orientations.  They are proved equivalent by the test suite; fast
paths use the forbidden-set fixpoint.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping, Optional, Sequence

from .errors import SizeCapError, ToppleLimitError, UnknownVertexError
from .graph import RootedMultigraph

Config = tuple[int, ...]

DEFAULT_MAX_TOPPLINGS = 10_000_000
ORIENTATION_MAX_NONSINK = 8


def _check_config(g: RootedMultigraph, c: Sequence[int]) -> Config:
    c = tuple(c)
    if len(c) != len(g.nonsink):
        raise ValueError(
            f"configuration has {len(c)} values, graph has {len(g.nonsink)} "
            "non-sink vertices")
    return c


# ----------------------------------------------------------------------
# JSON interchange: {"values": {"v1": 2, "v2": 0}}


def config_from_dict(g: RootedMultigraph, data: dict) -> Config:
    if not isinstance(data, dict) or "values" not in data:
        raise ValueError("configuration document must be {\"values\": {...}}")
    values = data["values"]
    if not isinstance(values, dict):
        raise ValueError("'values' must be an object mapping vertex to integer")
    extra = set(values) - set(g.nonsink)
    if extra:
        raise UnknownVertexError(
            f"values given for unknown or sink vertices: {sorted(extra)}")
    missing = set(g.nonsink) - set(values)
    if missing:
        raise ValueError(f"values missing for vertices: {sorted(missing)}")
    out = []
    for v in g.nonsink:
        x = values[v]
        if isinstance(x, bool) or not isinstance(x, int):
            raise ValueError(f"value for {v!r} must be an integer, got {x!r}")
        out.append(x)
    return tuple(out)


def config_to_dict(g: RootedMultigraph, c: Sequence[int]) -> dict:
    c = _check_config(g, c)
    return {"values": {v: x for v, x in zip(g.nonsink, c)}}


def load_config(g: RootedMultigraph, path) -> Config:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(g, json.load(fh))


# ----------------------------------------------------------------------
# single steps


def is_stable(g: RootedMultigraph, c: Sequence[int]) -> bool:
    c = _check_config(g, c)
    return all(x < d for x, d in zip(c, g.nonsink_degrees))


def topple(g: RootedMultigraph, c: Sequence[int], v: str) -> Config:
    """Fire ``v`` once: it loses deg(v) grains, neighbours gain per edge."""
    c = _check_config(g, c)
    pos = g.nonsink_pos.get(v)
    if pos is None:
        if v not in g.index:
            raise UnknownVertexError(f"unknown vertex {v!r}")
        raise ValueError("the sink does not topple")
    deg = g.nonsink_degrees[pos]
    if c[pos] < deg:
        raise ValueError(f"vertex {v!r} is stable (value {c[pos]} < degree {deg})")
    row = g.nonsink_adj[pos]
    out = list(c)
    out[pos] -= deg
    for j, m in enumerate(row):
        if m:
            out[j] += m
    return tuple(out)


@dataclass(frozen=True)
class StabilisationTrace:
    """Result of driving a configuration to stability.

    ``log`` records toppled vertices in firing order; ``odometer`` counts
    topplings per non-sink vertex.  Replaying ``log`` with ``topple``
    reproduces ``final``.
    """

    final: Config
    odometer: tuple[int, ...]
    log: tuple[str, ...]


def stabilize(g: RootedMultigraph, c: Sequence[int], *,
              rng: Optional[random.Random] = None,
              max_topplings: int = DEFAULT_MAX_TOPPLINGS) -> StabilisationTrace:
    """Topple until stable.

    The default order fires the first unstable vertex in declaration order;
    passing ``rng`` picks uniformly among unstable vertices instead.  The
    final configuration and odometer do not depend on the order.  A budget
    of ``max_topplings`` firings guards against runaway input.
    """
    c = _check_config(g, c)
    degs = g.nonsink_degrees
    adj = g.nonsink_adj
    k = len(degs)
    cur = list(c)
    odometer = [0] * k
    log: list[str] = []
    fired = 0
    while True:
        unstable = [i for i in range(k) if cur[i] >= degs[i]]
        if not unstable:
            break
        i = unstable[0] if rng is None else rng.choice(unstable)
        fired += 1
        if fired > max_topplings:
            raise ToppleLimitError(
                f"stabilisation exceeded {max_topplings} topplings")
        cur[i] -= degs[i]
        row = adj[i]
        for j in range(k):
            if row[j]:
                cur[j] += row[j]
        odometer[i] += 1
        log.append(g.nonsink[i])
    return StabilisationTrace(tuple(cur), tuple(odometer), tuple(log))


def add_sink_grains(g: RootedMultigraph, c: Sequence[int]) -> Config:
    """Send one grain along every sink edge (the sink fires once)."""
    c = _check_config(g, c)
    return tuple(x + m for x, m in zip(c, g.sink_mults))


# ----------------------------------------------------------------------
# recurrence oracles


def burning_sequence(g: RootedMultigraph, c: Sequence[int]) -> Optional[tuple[str, ...]]:
    """Burning test witness, or None when ``c`` is not recurrent.

    Fires the sink once and stabilises; ``c`` is recurrent exactly when the
    result is ``c`` again with every vertex having toppled exactly once.
    The returned sequence starts at the sink and lists the firing order.
    """
    c = _check_config(g, c)
    if not is_stable(g, c):
        raise ValueError("burning test needs a stable configuration")
    if any(x < 0 for x in c):
        raise ValueError("burning test needs a non-negative configuration")
    trace = stabilize(g, add_sink_grains(g, c))
    if trace.final == c and all(t == 1 for t in trace.odometer):
        return (g.sink,) + trace.log
    return None


def is_recurrent_burning(g: RootedMultigraph, c: Sequence[int]) -> bool:
    return burning_sequence(g, c) is not None


def max_forbidden_set(g: RootedMultigraph, c: Sequence[int], *,
                      rng: Optional[random.Random] = None) -> tuple[str, ...]:
    """Largest vertex set on which ``c`` is everywhere below internal degree.

    Starts from all non-sink vertices and repeatedly discards any vertex
    holding at least as many grains as it has edges into the remaining set.
    The fixpoint is independent of the discard order (``rng`` shuffles it,
    for testing).  Stable configurations are recurrent exactly when the
    result is empty.  Negative values never get discarded, so configurations
    with negative entries are never recurrent.
    """
    c = _check_config(g, c)
    adj = g.nonsink_adj
    k = len(c)
    alive = [True] * k
    deg_in = [sum(adj[i][j] for j in range(k) if adj[i][j]) for i in range(k)]
    order = list(range(k))
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(order)
        for i in order:
            if alive[i] and c[i] >= deg_in[i]:
                alive[i] = False
                changed = True
                row = adj[i]
                for j in range(k):
                    if row[j]:
                        deg_in[j] -= row[j]
    return tuple(g.nonsink[i] for i in range(k) if alive[i])


def is_recurrent(g: RootedMultigraph, c: Sequence[int]) -> bool:
    """Recurrence via the forbidden-set fixpoint (fast path, total)."""
    c = _check_config(g, c)
    if not is_stable(g, c):
        return False
    return not max_forbidden_set(g, c)


@lru_cache(maxsize=None)
def _orientation_indegrees(g: RootedMultigraph) -> tuple[tuple[int, ...], ...]:
    """In-degree vectors of rooted acyclic orientations, minimal ones only.

    Every acyclic orientation arises from a vertex order with all edges
    pointing towards earlier vertices, and the first vertex is forcibly a
    target, so orders starting at the sink enumerate exactly the acyclic
    orientations in which the sink is a target.  Uniqueness of the target
    amounts to every other vertex having some earlier neighbour.  Vectors
    dominated by another vector are dropped, since only the lower envelope
    matters for the recurrence test.
    """
    k = len(g.nonsink)
    adj = g.nonsink_adj
    sink_m = g.sink_mults
    seen: set[tuple[int, ...]] = set()
    for perm in permutations(range(k)):
        ok = True
        placed: list[int] = []
        indeg = [0] * k
        for i in perm:
            if not (sink_m[i] or any(adj[i][j] for j in placed)):
                ok = False
                break
            row = adj[i]
            for j in placed:
                if row[j]:
                    indeg[j] += row[j]
            placed.append(i)
        if ok:
            seen.add(tuple(indeg))
    minimal = [d for d in seen
               if not any(e != d and all(x <= y for x, y in zip(e, d)) for e in seen)]
    minimal.sort()
    return tuple(minimal)


def orientation_indegrees(g: RootedMultigraph, *,
                          max_nonsink: int = ORIENTATION_MAX_NONSINK
                          ) -> tuple[tuple[int, ...], ...]:
    if len(g.nonsink) > max_nonsink:
        raise SizeCapError(
            f"orientation oracle capped at {max_nonsink} non-sink vertices, "
            f"graph has {len(g.nonsink)}")
    return _orientation_indegrees(g)


def is_recurrent_orientation(g: RootedMultigraph, c: Sequence[int], *,
                             max_nonsink: int = ORIENTATION_MAX_NONSINK) -> bool:
    """Recurrence via acyclic orientations rooted at the sink.

    ``c`` is recurrent exactly when it dominates, pointwise, the in-degree
    vector of some acyclic orientation whose unique target is the sink.
    Exponential oracle for small instances only.
    """
    c = _check_config(g, c)
    if not is_stable(g, c):
        raise ValueError("orientation test needs a stable configuration")
    if any(x < 0 for x in c):
        raise ValueError("orientation test needs a non-negative configuration")
    vectors = orientation_indegrees(g, max_nonsink=max_nonsink)
    return any(all(x >= d for x, d in zip(c, vec)) for vec in vectors)


def orientation_recurrent_set(g: RootedMultigraph, *,
                              max_nonsink: int = ORIENTATION_MAX_NONSINK
                              ) -> frozenset[Config]:
    """All stable configurations accepted by the orientation oracle."""
    vectors = orientation_indegrees(g, max_nonsink=max_nonsink)
    degs = g.nonsink_degrees
    out: set[Config] = set()
    for vec in vectors:
        for c in product(*(range(d, deg) for d, deg in zip(vec, degs))):
            out.add(c)
    return frozenset(out)


# ----------------------------------------------------------------------
# strong recurrence


def burning_starts(g: RootedMultigraph, c: Sequence[int]) -> tuple[str, ...]:
    """Sink neighbours that go unstable when the sink fires once.

    Exactly the vertices that can lead a burning sequence of ``c``.
    """
    c = _check_config(g, c)
    return tuple(v for v, x, d, m in zip(g.nonsink, c, g.nonsink_degrees,
                                         g.sink_mults)
                 if m >= 1 and x >= d - m)


def drain_except(g: RootedMultigraph, c: Sequence[int], v: str) -> Config:
    """Remove the sink-edge grains everywhere except at ``v``.

    Models the state just before ``v`` leads a burning round: every other
    vertex gives back the grains the sink would send it.  ``v`` must be a
    burning start of ``c``.
    """
    c = _check_config(g, c)
    starts = burning_starts(g, c)
    if v not in starts:
        raise ValueError(f"vertex {v!r} is not a burning start of this configuration")
    pos = g.nonsink_pos[v]
    return tuple(x if i == pos else x - m
                 for i, (x, m) in enumerate(zip(c, g.sink_mults)))


def is_strongly_recurrent(g: RootedMultigraph, c: Sequence[int],
                          quantifier: str = "forall") -> bool:
    """Recurrence that survives draining the sink edges.

    With ``forall`` every burning start must leave a recurrent drained
    configuration; ``exists`` asks for at least one.  Non-recurrent input
    returns False.
    """
    if quantifier not in ("forall", "exists"):
        raise ValueError("quantifier must be 'forall' or 'exists'")
    c = _check_config(g, c)
    if not is_recurrent(g, c) or any(x < 0 for x in c):
        return False
    checks = (is_recurrent(g, drain_except(g, c, v)) for v in burning_starts(g, c))
    return all(checks) if quantifier == "forall" else any(checks)


def is_minimal_recurrent(g: RootedMultigraph, c: Sequence[int]) -> bool:
    """Recurrent, and removing any single grain breaks recurrence."""
    c = _check_config(g, c)
    if any(x < 0 for x in c) or not is_recurrent(g, c):
        return False
    for i in range(len(c)):
        lowered = c[:i] + (c[i] - 1,) + c[i + 1:]
        if lowered[i] >= 0 and is_recurrent(g, lowered):
            return False
    return True


# ----------------------------------------------------------------------
# grain-dropping Markov chain


@dataclass
class MarkovRun:
    """Trajectory of the single-grain-drop chain over stable configurations."""

    start: Config
    steps: int
    seed: int
    visit_counts: dict[Config, int] = field(default_factory=dict)
    trace: list[tuple[int, str, Config]] = field(default_factory=list)


def markov_run(g: RootedMultigraph, start: Sequence[int], steps: int, seed: int,
               mu: Optional[Mapping[str, float] | Sequence[float]] = None
               ) -> MarkovRun:
    """Drop ``steps`` grains at vertices sampled from ``mu`` and stabilise.

    ``mu`` defaults to uniform over non-sink vertices; explicit weights must
    be strictly positive and sum to 1 within 1e-9 (then renormalised).  The
    run is a pure function of its arguments.
    """
    start = _check_config(g, start)
    if not is_stable(g, start):
        raise ValueError("start configuration must be stable")
    k = len(g.nonsink)
    if mu is None:
        weights = [1.0 / k] * k
    else:
        if isinstance(mu, Mapping):
            extra = set(mu) - set(g.nonsink)
            if extra:
                raise UnknownVertexError(
                    f"mu names unknown or sink vertices: {sorted(extra)}")
            missing = set(g.nonsink) - set(mu)
            if missing:
                raise ValueError(f"mu missing vertices: {sorted(missing)}")
            weights = [float(mu[v]) for v in g.nonsink]
        else:
            weights = [float(x) for x in mu]
            if len(weights) != k:
                raise ValueError("mu length does not match non-sink vertex count")
        if any(w <= 0 for w in weights):
            raise ValueError("mu weights must be strictly positive")
        total = sum(weights)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"mu weights must sum to 1, got {total}")
        weights = [w / total for w in weights]
    rng = random.Random(seed)
    run = MarkovRun(start=start, steps=steps, seed=seed)
    run.visit_counts[start] = 1
    positions = list(range(k))
    current = start
    for step in range(1, steps + 1):
        i = rng.choices(positions, weights=weights)[0]
        bumped = current[:i] + (current[i] + 1,) + current[i + 1:]
        current = stabilize(g, bumped).final
        run.visit_counts[current] = run.visit_counts.get(current, 0) + 1
        run.trace.append((step, g.nonsink[i], current))
    return run


def trace_to_csv(g: RootedMultigraph, run: MarkovRun) -> str:
    """Serialise a run trace; configuration values are comma-joined in
    declaration order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "dropped_vertex", "config"])
    writer.writerow([0, "", ",".join(str(x) for x in run.start)])
    for step, vertex, cfg in run.trace:
        writer.writerow([step, vertex, ",".join(str(x) for x in cfg)])
    return buf.getvalue()


def write_trace_csv(g: RootedMultigraph, run: MarkovRun, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trace_to_csv(g, run))
