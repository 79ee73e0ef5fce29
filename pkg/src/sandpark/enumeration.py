"""Exhaustive enumeration, count verification and oracle cross-validation.

Enumeration classes (lexicographic in declaration order):

* stable / recurrent / sr-forall / sr-exists / min-recurrent over
  configurations with values 0..deg(v)-1;
* pf / ppf over parking candidates with values 1..deg(v);
* pf-inc / ppf-inc restrict to candidates non-decreasing inside each
  interchangeable part, so they need a family, not a bare graph.

Counting can split the search space by the first coordinate across worker
processes; results do not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass, field
from itertools import product
from multiprocessing import get_context
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import SizeCapError
from .families import FamilySpec, catalan, closed_form_count, family_parts, make_family
from .graph import RootedMultigraph, build_graph, graph_from_dict, graph_to_dict
from .parking import is_g_parking, is_g_parking_naive, is_prime, is_prime_bruteforce
from .sandpile import (
    Config,
    is_recurrent,
    is_recurrent_burning,
    is_minimal_recurrent,
    is_stable,
    is_strongly_recurrent,
    orientation_recurrent_set,
)

CLASSES = ("stable", "recurrent", "sr-forall", "sr-exists", "min-recurrent",
           "pf", "ppf", "pf-inc", "ppf-inc")
DEFAULT_SPACE_CAP = 100_000_000

Target = Union[RootedMultigraph, FamilySpec]


def _resolve(target: Target) -> tuple[RootedMultigraph, Optional[FamilySpec]]:
    if isinstance(target, FamilySpec):
        return make_family(target), target
    return target, None


def _space_guard(sizes: Iterable[int], cap: int) -> None:
    space = 1
    for s in sizes:
        space *= s
    if space > cap:
        raise SizeCapError(f"search space of {space} exceeds cap {cap}")


def _nondecreasing_tuples(bounds: Sequence[tuple[int, int]]
                          ) -> Iterator[tuple[int, ...]]:
    """All non-decreasing tuples with slot i in [lo_i, hi_i]."""
    k = len(bounds)

    def rec(i: int, floor: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield acc
            return
        lo, hi = bounds[i]
        for x in range(max(lo, floor), hi + 1):
            yield from rec(i + 1, x, acc + (x,))

    return rec(0, 1, ())


def _iter_inc_candidates(spec: FamilySpec) -> Iterator[tuple[int, ...]]:
    g = make_family(spec)
    parts = family_parts(spec)
    flat_order = tuple(v for part in parts for v in part)
    if flat_order != g.nonsink:
        raise AssertionError("family parts must tile the non-sink vertices in order")
    per_part = []
    for part in parts:
        per_part.append([(1, g.deg(v)) for v in part])
    for combo in product(*(_nondecreasing_tuples(b) for b in per_part)):
        yield tuple(x for chunk in combo for x in chunk)


def iter_class(target: Target, cls: str, *,
               cap: int = DEFAULT_SPACE_CAP) -> Iterator[tuple[int, ...]]:
    """Stream all members of an enumeration class, lexicographically."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; choose from {CLASSES}")
    g, spec = _resolve(target)
    degs = g.nonsink_degrees
    if cls in ("pf-inc", "ppf-inc"):
        if spec is None:
            raise ValueError(
                "increasing classes need a graph family with declared parts")
        test = is_g_parking if cls == "pf-inc" else _is_ppf
        for cand in _iter_inc_candidates(spec):
            if test(g, cand):
                yield cand
        return
    if cls in ("pf", "ppf"):
        _space_guard(degs, cap)
        test = is_g_parking if cls == "pf" else _is_ppf
        for cand in product(*(range(1, d + 1) for d in degs)):
            if test(g, cand):
                yield cand
        return
    _space_guard(degs, cap)
    test = {
        "stable": lambda g_, c: True,
        "recurrent": is_recurrent,
        "sr-forall": lambda g_, c: is_strongly_recurrent(g_, c, "forall"),
        "sr-exists": lambda g_, c: is_strongly_recurrent(g_, c, "exists"),
        "min-recurrent": is_minimal_recurrent,
    }[cls]
    for c in product(*(range(d) for d in degs)):
        if test(g, c):
            yield c


def _is_ppf(g: RootedMultigraph, cand: tuple[int, ...]) -> bool:
    return is_g_parking(g, cand) and is_prime(g, cand)


# ----------------------------------------------------------------------
# counting, optionally across worker processes


def _count_first_fixed(args) -> int:
    target, cls, first, cap = args
    return sum(1 for item in iter_class(target, cls, cap=cap)
               if item[0] == first)


def count_class(target: Target, cls: str, *, jobs: int = 1,
                cap: int = DEFAULT_SPACE_CAP) -> int:
    g, spec = _resolve(target)
    if jobs <= 1 or cls in ("pf-inc", "ppf-inc") or len(g.nonsink) == 0:
        return sum(1 for _ in iter_class(target, cls, cap=cap))
    d0 = g.nonsink_degrees[0]
    firsts = range(d0) if cls not in ("pf", "ppf") else range(1, d0 + 1)
    tasks = [(target, cls, first, cap) for first in firsts]
    with get_context("fork").Pool(processes=jobs) as pool:
        return sum(pool.map(_count_first_fixed, tasks))


@dataclass
class EnumerationReport:
    family: str
    params: str
    cls: str
    count: int
    expected: Optional[int]
    expected_source: Optional[str]
    millis: float

    @property
    def match(self) -> bool:
        return self.expected is None or self.count == self.expected


def expected_count(target: Target, cls: str) -> Optional[tuple[int, str]]:
    """Known exact prediction for a class count, when one exists."""
    g, spec = _resolve(target)
    if cls == "stable":
        space = 1
        for d in g.nonsink_degrees:
            space *= d
        return space, "degree-product"
    if cls in ("recurrent", "pf"):
        return g.spanning_tree_count(), "matrix-tree"
    if spec is None:
        return None
    f = spec.family
    try:
        if cls in ("ppf", "sr-forall"):
            return closed_form_count(spec, "ppf"), "closed-form"
        if cls == "ppf-inc":
            return closed_form_count(spec, "ppf-inc"), "closed-form"
        if cls == "pf-inc":
            if f == "complete":
                return catalan(spec.n), "closed-form"
            if f == "bipartite":
                bigger = FamilySpec("bipartite", p=spec.p + 1, q=spec.q)
                return closed_form_count(bigger, "ppf-inc"), "closed-form"
            if f == "split":
                bigger = FamilySpec("split", m=spec.m + 1, n=spec.n)
                return closed_form_count(bigger, "ppf-inc"), "closed-form"
    except ValueError:
        return None
    return None


def class_count(target: Target, cls: str, *, jobs: int = 1,
                cap: int = DEFAULT_SPACE_CAP, with_expected: bool = True,
                label: Optional[str] = None) -> EnumerationReport:
    g, spec = _resolve(target)
    if spec is not None:
        family, params = spec.family, spec.params()
    else:
        family, params = "custom", label or f"|V|={len(g.vertices)},sink={g.sink}"
    exp = expected_count(target, cls) if with_expected else None
    start = time.perf_counter()
    count = count_class(target, cls, jobs=jobs, cap=cap)
    millis = (time.perf_counter() - start) * 1000.0
    return EnumerationReport(family=family, params=params, cls=cls, count=count,
                             expected=exp[0] if exp else None,
                             expected_source=exp[1] if exp else None,
                             millis=millis)


def verify_counts(suite: Iterable[tuple[Target, str]], *,
                  jobs: int = 1) -> list[EnumerationReport]:
    return [class_count(target, cls, jobs=jobs) for target, cls in suite]


def default_suite() -> list[tuple[FamilySpec, str]]:
    """The standard closed-form verification battery."""
    suite: list[tuple[FamilySpec, str]] = []
    for n in range(2, 6):
        suite.append((FamilySpec("complete", n=n), "ppf"))
    for n in range(2, 9):
        suite.append((FamilySpec("complete", n=n), "ppf-inc"))
    for n in range(3, 8):
        suite.append((FamilySpec("wheel", n=n), "sr-forall"))
    for p, q in ((2, 2), (2, 3), (3, 2), (3, 3)):
        suite.append((FamilySpec("tripartite", p=p, q=q), "ppf"))
    for p, q in ((2, 2), (3, 2), (2, 3), (3, 3)):
        suite.append((FamilySpec("bipartite", p=p, q=q), "ppf-inc"))
    for m, n in ((2, 1), (2, 2), (3, 2)):
        suite.append((FamilySpec("split", m=m, n=n), "ppf-inc"))
    for n in range(2, 6):
        suite.append((FamilySpec("complete", n=n), "recurrent"))
    for n in range(3, 8):
        suite.append((FamilySpec("wheel", n=n), "recurrent"))
    return suite


def reports_to_csv(reports: Iterable[EnumerationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "params", "class", "count", "expected",
                     "match", "millis"])
    for r in reports:
        writer.writerow([r.family, r.params, r.cls, r.count,
                         "" if r.expected is None else r.expected,
                         str(r.match).lower(), f"{r.millis:.3f}"])
    return buf.getvalue()


def reports_to_json(reports: Iterable[EnumerationReport]) -> str:
    rows = [{"family": r.family, "params": r.params, "class": r.cls,
             "count": r.count, "expected": r.expected,
             "expected_source": r.expected_source, "match": r.match,
             "millis": round(r.millis, 3)} for r in reports]
    return json.dumps(rows, indent=2)


# ----------------------------------------------------------------------
# oracle cross-validation


@dataclass
class OracleReport:
    """Outcome of playing the independent membership routes off each other."""

    label: str
    stable_checked: int = 0
    candidates_checked: int = 0
    recurrent_count: int = 0
    pf_count: int = 0
    ppf_count: int = 0
    sr_count: int = 0
    orientation_checked: bool = False
    naive_checked: bool = False
    discrepancies: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def cross_validate_oracles(g: RootedMultigraph, *, label: str = "",
                           include_orientation: bool = True,
                           include_naive: bool = True,
                           orientation_max_nonsink: int = 8) -> OracleReport:
    """Exhaustively compare every independent route on one graph.

    Checks, over the full stable space and the full candidate space:
    burning vs forbidden-set recurrence (vs orientations when feasible),
    subset-definition vs degree-complement parking membership, partition
    vs boost primality, and the degree-complement bijection between
    strongly recurrent configurations and prime parking functions.
    """
    report = OracleReport(label=label or f"graph(|V|={len(g.vertices)})")
    degs = g.nonsink_degrees
    rec_set: set[Config] = set()
    sr_set: set[Config] = set()
    for c in product(*(range(d) for d in degs)):
        report.stable_checked += 1
        by_burning = is_recurrent_burning(g, c)
        by_forbidden = is_recurrent(g, c)
        if by_burning != by_forbidden:
            report.discrepancies.append(
                f"recurrence mismatch at {c}: burning={by_burning} "
                f"forbidden={by_forbidden}")
        if by_forbidden:
            rec_set.add(c)
            if is_strongly_recurrent(g, c, "forall"):
                sr_set.add(c)
    report.recurrent_count = len(rec_set)
    report.sr_count = len(sr_set)

    if include_orientation and len(g.nonsink) <= orientation_max_nonsink:
        report.orientation_checked = True
        by_orientation = orientation_recurrent_set(
            g, max_nonsink=orientation_max_nonsink)
        if set(by_orientation) != rec_set:
            extra = sorted(set(by_orientation) - rec_set)[:3]
            missing = sorted(rec_set - set(by_orientation))[:3]
            report.discrepancies.append(
                f"orientation set mismatch: extra={extra} missing={missing}")

    ppf_set: set[tuple[int, ...]] = set()
    for cand in product(*(range(1, d + 1) for d in degs)):
        report.candidates_checked += 1
        fast = is_g_parking(g, cand)
        if include_naive:
            report.naive_checked = True
            naive = is_g_parking_naive(g, cand)
            if naive != fast:
                report.discrepancies.append(
                    f"parking mismatch at {cand}: naive={naive} fast={fast}")
        if not fast:
            continue
        report.pf_count += 1
        brute = is_prime_bruteforce(g, cand)
        boost = is_prime(g, cand)
        if brute != boost:
            report.discrepancies.append(
                f"primality mismatch at {cand}: partitions={brute} boost={boost}")
        if brute:
            ppf_set.add(cand)
    report.ppf_count = len(ppf_set)

    dual = {tuple(d - x for x, d in zip(c, degs)) for c in sr_set}
    if dual != ppf_set:
        extra = sorted(dual - ppf_set)[:3]
        missing = sorted(ppf_set - dual)[:3]
        report.discrepancies.append(
            f"strong-recurrence/prime bijection mismatch: "
            f"dual-not-prime={extra} prime-not-dual={missing}")
    return report


# ----------------------------------------------------------------------
# seeded random multigraphs and witness searches


def random_connected_multigraph(rng: random.Random, n_vertices: int, *,
                                max_mult: int = 2,
                                extra_edges: int = 2) -> RootedMultigraph:
    """Random connected loop-free multigraph with sink "0".

    A random attachment tree guarantees connectivity; a few extra random
    pairs (merged into existing edges) add cycles and parallel edges.
    """
    if n_vertices < 2:
        raise ValueError("need at least 2 vertices")
    names = ["0"] + [f"v{i}" for i in range(1, n_vertices)]
    edges = []
    for i in range(1, n_vertices):
        j = rng.randrange(i)
        edges.append((names[i], names[j], rng.randint(1, max_mult)))
    for _ in range(rng.randint(0, extra_edges)):
        i = rng.randrange(n_vertices)
        j = rng.randrange(n_vertices)
        if i == j:
            continue
        edges.append((names[i], names[j], rng.randint(1, max_mult)))
    return build_graph(names, "0", edges)


@dataclass(frozen=True)
class GapWitness:
    """A graph and configuration separating the two strong-recurrence
    quantifiers."""

    graph: RootedMultigraph
    config: Config
    seed: int
    graph_index: int

    def to_dict(self) -> dict:
        return {"graph": graph_to_dict(self.graph),
                "config": {"values": dict(zip(self.graph.nonsink, self.config))},
                "seed": self.seed,
                "graph_index": self.graph_index}


def gap_witness_from_dict(data: dict) -> GapWitness:
    g = graph_from_dict(data["graph"])
    values = data["config"]["values"]
    config = tuple(values[v] for v in g.nonsink)
    return GapWitness(g, config, data["seed"], data["graph_index"])


def find_quantifier_gap_witness(seed: int, *, max_graphs: int = 2000,
                                max_vertices: int = 5
                                ) -> Optional[GapWitness]:
    """Search seeded random multigraphs for an exists-but-not-forall
    strongly recurrent configuration."""
    rng = random.Random(seed)
    for idx in range(max_graphs):
        n = rng.randint(3, max_vertices)
        g = random_connected_multigraph(rng, n, max_mult=2, extra_edges=3)
        space = 1
        for d in g.nonsink_degrees:
            space *= d
        if space > 20000:
            continue
        for c in product(*(range(d) for d in g.nonsink_degrees)):
            if (is_strongly_recurrent(g, c, "exists")
                    and not is_strongly_recurrent(g, c, "forall")):
                return GapWitness(g, c, seed, idx)
    return None


def find_nonunique_decomposition_witness(seed: int, *, max_graphs: int = 300
                                         ) -> Optional[tuple[RootedMultigraph,
                                                             tuple[int, ...],
                                                             list]]:
    """Search for a parking function admitting two prime decompositions
    whose block-size multisets differ."""
    from .parking import prime_decompositions

    rng = random.Random(seed)
    for _ in range(max_graphs):
        g = random_connected_multigraph(rng, rng.randint(4, 5),
                                        max_mult=1, extra_edges=3)
        space = 1
        for d in g.nonsink_degrees:
            space *= d
        if space > 5000:
            continue
        for cand in iter_class(g, "pf"):
            decs = prime_decompositions(g, cand)
            shapes = {tuple(sorted(len(b) for b in d)) for d in decs}
            if len(shapes) >= 2:
                return g, cand, decs
    return None
