"""Injective homomorphism search, isomorphism testing, and coverage counting.

A homomorphism here is an injective, label-preserving, edge-preserving map
from pattern vertices to target vertices (i.e. a subgraph monomorphism).
Mappings are represented as tuples indexed by pattern vertex id.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .graphs import Dataset, ExampleClass, LabeledGraph, VertexId

Mapping = tuple[VertexId, ...]

BRUTE_FORCE_MAX_PATTERN = 8


class PatternTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CoverageReport:
    """Per-class coverage counts plus per-example verdicts.

    ``per_example`` holds (graph_id, has_homomorphism) pairs in graph_id
    order for the queried class; examples skipped by an early stop carry
    None instead of a boolean.
    """

    positive_covered: int
    negative_covered: int
    per_example: tuple[tuple[int, bool | None], ...]


def _search_order(pattern: LabeledGraph) -> list[int]:
    """Connectivity-first vertex order: max-degree start, then BFS.

    Ties break toward the smaller vertex id; repeated per component.
    """
    n = pattern.n
    visited: list[bool] = [False] * n
    order: list[int] = []
    deg = [len(pattern.sym_adj[v]) for v in range(n)]
    while len(order) < n:
        start = max(
            (v for v in range(n) if not visited[v]),
            key=lambda v: (deg[v], -v),
        )
        visited[start] = True
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in pattern.sym_adj[v]:
                if not visited[w]:
                    visited[w] = True
                    queue.append(w)
    return order


def _checks_against_earlier(
    pattern: LabeledGraph, order: list[int]
) -> list[list[tuple[int, bool]]]:
    """For each position i, the pattern edges linking order[i] to order[<i].

    Entries are (earlier_position, outgoing) where outgoing means the edge
    runs order[i] -> order[j].
    """
    pos_of = {v: i for i, v in enumerate(order)}
    checks: list[list[tuple[int, bool]]] = [[] for _ in order]
    for u, v in pattern.edges:
        iu, iv = pos_of[u], pos_of[v]
        if iu > iv:
            checks[iu].append((iv, True))
        elif iv > iu:
            checks[iv].append((iu, False))
        # Self-loops (iu == iv) are handled via candidate filtering below.
    return checks


def find_homomorphism(pattern: LabeledGraph, target: LabeledGraph) -> Mapping | None:
    """First injective label/edge-preserving mapping, or None if none exists.

    The search is complete: None means no homomorphism exists. The result is
    deterministic: pattern vertices are tried in connectivity-first order
    and target candidates in ascending id, so the first solution under that
    order is returned.
    """
    np, nt = pattern.n, target.n
    if np == 0:
        return ()
    if np > nt:
        return None

    by_label: dict[str, list[int]] = {}
    for t in range(nt):
        by_label.setdefault(target.labels[t], []).append(t)

    order = _search_order(pattern)
    checks = _checks_against_earlier(pattern, order)

    candidates: list[list[int]] = []
    for v in order:
        lab = pattern.labels[v]
        self_loop = (v, v) in pattern.edges
        cand = [
            t
            for t in by_label.get(lab, [])
            if target.out_degree[t] >= pattern.out_degree[v]
            and target.in_degree[t] >= pattern.in_degree[v]
            and (not self_loop or (t, t) in target.edges)
        ]
        if not cand:
            return None
        candidates.append(cand)

    assigned: list[int] = []
    used = [False] * nt
    edges_t = target.edges

    def extend(i: int) -> bool:
        if i == np:
            return True
        for t in candidates[i]:
            if used[t]:
                continue
            ok = True
            for j, outgoing in checks[i]:
                s = assigned[j]
                if outgoing:
                    if (t, s) not in edges_t:
                        ok = False
                        break
                elif (s, t) not in edges_t:
                    ok = False
                    break
            if ok:
                used[t] = True
                assigned.append(t)
                if extend(i + 1):
                    return True
                assigned.pop()
                used[t] = False
        return False

    if not extend(0):
        return None
    result = [0] * np
    for i, v in enumerate(order):
        result[v] = assigned[i]
    return tuple(result)


def iter_homomorphisms(pattern: LabeledGraph, target: LabeledGraph):
    """Yield every injective homomorphism, lazily, in find_homomorphism's
    search order (the first yield equals find_homomorphism's result).

    This is the witness stream consumed by the monolithic strategy's
    chronological search, which resumes it to enumerate alternatives.
    """
    np, nt = pattern.n, target.n
    if np == 0:
        yield ()
        return
    if np > nt:
        return

    by_label: dict[str, list[int]] = {}
    for t in range(nt):
        by_label.setdefault(target.labels[t], []).append(t)

    order = _search_order(pattern)
    checks = _checks_against_earlier(pattern, order)
    candidates: list[list[int]] = []
    for v in order:
        lab = pattern.labels[v]
        self_loop = (v, v) in pattern.edges
        cand = [
            t
            for t in by_label.get(lab, [])
            if target.out_degree[t] >= pattern.out_degree[v]
            and target.in_degree[t] >= pattern.in_degree[v]
            and (not self_loop or (t, t) in target.edges)
        ]
        if not cand:
            return
        candidates.append(cand)

    assigned: list[int] = []
    used = [False] * nt
    edges_t = target.edges

    def extend(i: int):
        if i == np:
            result = [0] * np
            for k, v in enumerate(order):
                result[v] = assigned[k]
            yield tuple(result)
            return
        for t in candidates[i]:
            if used[t]:
                continue
            ok = True
            for j, outgoing in checks[i]:
                s = assigned[j]
                if outgoing:
                    if (t, s) not in edges_t:
                        ok = False
                        break
                elif (s, t) not in edges_t:
                    ok = False
                    break
            if ok:
                used[t] = True
                assigned.append(t)
                yield from extend(i + 1)
                assigned.pop()
                used[t] = False

    yield from extend(0)


def is_homomorphism(pattern: LabeledGraph, target: LabeledGraph, m: Mapping) -> bool:
    """Re-check that m is a total injective label/edge-preserving mapping."""
    if len(m) != pattern.n or len(set(m)) != pattern.n:
        return False
    if any(not (0 <= t < target.n) for t in m):
        return False
    if any(pattern.labels[v] != target.labels[m[v]] for v in range(pattern.n)):
        return False
    return all((m[u], m[v]) in target.edges for u, v in pattern.edges)


def brute_force_homomorphisms(
    pattern: LabeledGraph, target: LabeledGraph
) -> list[Mapping]:
    """All injective homomorphisms, in lexicographic order of the mapping tuple.

    Exhaustive enumeration over injective assignments; intended as the
    independent oracle for :func:`find_homomorphism` at small sizes.
    """
    if pattern.n > BRUTE_FORCE_MAX_PATTERN:
        raise PatternTooLarge(
            f"pattern has {pattern.n} vertices, oracle limit is {BRUTE_FORCE_MAX_PATTERN}"
        )
    if pattern.n > target.n:
        return []
    out = []
    for perm in itertools.permutations(range(target.n), pattern.n):
        if is_homomorphism(pattern, target, perm):
            out.append(perm)
    return out


def is_isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """True iff a label-preserving bijection maps the edge sets onto each other.

    Fast rejections (vertex count, label multiset, edge count, degree
    profiles) precede the backtracking search and never change the answer.
    """
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    if sorted(g1.labels) != sorted(g2.labels):
        return False
    prof1 = sorted((g1.labels[v], g1.out_degree[v], g1.in_degree[v]) for v in range(g1.n))
    prof2 = sorted((g2.labels[v], g2.out_degree[v], g2.in_degree[v]) for v in range(g2.n))
    if prof1 != prof2:
        return False

    n = g1.n
    candidates = [
        [
            t
            for t in range(n)
            if g2.labels[t] == g1.labels[v]
            and g2.out_degree[t] == g1.out_degree[v]
            and g2.in_degree[t] == g1.in_degree[v]
        ]
        for v in range(n)
    ]
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for t in candidates[v]:
            if used[t]:
                continue
            ok = True
            for w in range(v):
                if ((v, w) in g1.edges) != ((t, mapping[w]) in g2.edges):
                    ok = False
                    break
                if ((w, v) in g1.edges) != ((mapping[w], t) in g2.edges):
                    ok = False
                    break
            if ok and ((v, v) in g1.edges) == ((t, t) in g2.edges):
                mapping[v] = t
                used[t] = True
                if extend(v + 1):
                    return True
                used[t] = False
                mapping[v] = -1
        return False

    return extend(0)


def coverage(
    pattern: LabeledGraph,
    dataset: Dataset,
    cls: ExampleClass,
    stop_at: int | None = None,
    jobs: int = 1,
) -> CoverageReport:
    """Count examples of ``cls`` admitting a homomorphism from ``pattern``.

    Examples are scanned in graph_id order. With ``stop_at=k`` the scan stops
    as soon as the covered count reaches k and the remaining examples are
    reported as None (untested); ``stop_at=None`` tests all. ``jobs > 1``
    evaluates examples in concurrent waves, with results aggregated in the
    sequential prefix order so counts and None-marking are identical.
    """
    if stop_at is not None and stop_at < 0:
        raise ValueError("stop_at must be non-negative")
    examples = dataset.of_class(cls)
    per_example: list[tuple[int, bool | None]] = []
    covered = 0

    def stopped() -> bool:
        return stop_at is not None and covered >= stop_at

    if jobs <= 1 or len(examples) <= 1:
        for ex in examples:
            if stopped():
                per_example.append((ex.graph_id, None))
                continue
            hit = find_homomorphism(pattern, ex.graph) is not None
            per_example.append((ex.graph_id, hit))
            covered += int(hit)
    else:
        with ThreadPoolExecutor(max_workers=min(jobs, len(examples))) as pool:
            idx = 0
            while idx < len(examples):
                wave = examples[idx : idx + jobs]
                if stopped():
                    per_example.extend((ex.graph_id, None) for ex in wave)
                else:
                    futures = [
                        pool.submit(find_homomorphism, pattern, ex.graph)
                        for ex in wave
                    ]
                    for ex, fut in zip(wave, futures):
                        if stopped():
                            per_example.append((ex.graph_id, None))
                        else:
                            hit = fut.result() is not None
                            per_example.append((ex.graph_id, hit))
                            covered += int(hit)
                idx += len(wave)

    pos = covered if cls is ExampleClass.POSITIVE else 0
    neg = covered if cls is ExampleClass.NEGATIVE else 0
    return CoverageReport(
        positive_covered=pos,
        negative_covered=neg,
        per_example=tuple(per_example),
    )
