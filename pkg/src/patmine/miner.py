"""Level-wise enumeration of canonical frequent patterns over the template.

Patterns are connected induced subgraphs of the template, identified by
template-vertex subsets. Candidates are scanned size by size in
lexicographic subset order; accepted patterns block all their isomorphic
occurrences in the template via no-goods, which are cleared when the size
level is exhausted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator

from .graphs import Dataset, ExampleClass, LabeledGraph, induced_subgraph
from .morphism import coverage, is_isomorphic, iter_homomorphisms


class Strategy(Enum):
    DECOMPOSED = "decomposed"
    MONOLITHIC = "monolithic"


@dataclass(frozen=True)
class MiningConfig:
    n_pos_threshold: int
    n_neg_threshold: int
    min_pattern_size: int = 2
    max_pattern_size: int | None = None
    max_patterns: int | None = None
    strategy: Strategy = Strategy.DECOMPOSED

    def __post_init__(self) -> None:
        if self.min_pattern_size < 1:
            raise ValueError("min_pattern_size must be >= 1")
        if self.n_pos_threshold < 0 or self.n_neg_threshold < 0:
            raise ValueError("thresholds must be non-negative")
        if (
            self.max_pattern_size is not None
            and self.max_pattern_size < self.min_pattern_size
        ):
            raise ValueError("max_pattern_size must be >= min_pattern_size")
        if self.max_patterns is not None and self.max_patterns < 0:
            raise ValueError("max_patterns must be non-negative")


@dataclass
class NoGoodStore:
    """Blocked template-vertex subsets, keyed by subset size."""

    blocked: dict[int, set[tuple[int, ...]]] = field(default_factory=dict)

    def add(self, subset: Iterable[int]) -> None:
        key = tuple(sorted(subset))
        self.blocked.setdefault(len(key), set()).add(key)

    def __contains__(self, subset: tuple[int, ...]) -> bool:
        return subset in self.blocked.get(len(subset), ())

    def clear(self) -> None:
        self.blocked.clear()

    def size(self) -> int:
        return sum(len(s) for s in self.blocked.values())


@dataclass(frozen=True)
class MineResult:
    index: int
    subset: tuple[int, ...]
    pattern: LabeledGraph
    positive_covered: int
    negative_covered: int
    elapsed_ms: float


def _connected_subsets_from(
    g: LabeledGraph, k: int, root: int
) -> list[tuple[int, ...]]:
    """Connected k-subsets whose minimum vertex is ``root`` (ESU scheme)."""
    adj = g.sym_adj
    out: list[tuple[int, ...]] = []

    def extend(sub: tuple[int, ...], ext: list[int], seen: set[int]) -> None:
        if len(sub) == k:
            out.append(tuple(sorted(sub)))
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            fresh = [u for u in adj[w] if u > root and u not in seen]
            extend(sub + (w,), ext + fresh, seen | set(fresh))

    start_ext = [u for u in adj[root] if u > root]
    extend((root,), start_ext, {root, *start_ext})
    return out


@lru_cache(maxsize=32)
def _connected_ksubsets(template: LabeledGraph, size: int) -> tuple[tuple[int, ...], ...]:
    """All connected size-k subsets in lexicographic order.

    Cached: the mining loop and the occurrence scan walk the same level of
    the same immutable template repeatedly.
    """
    out: list[tuple[int, ...]] = []
    for root in range(template.n):
        out.extend(sorted(_connected_subsets_from(template, size, root)))
    return tuple(out)


@lru_cache(maxsize=32)
def _subsets_by_signature(
    template: LabeledGraph, size: int
) -> dict[tuple, tuple[tuple[int, ...], ...]]:
    """Connected k-subsets grouped by (sorted label multiset, induced edge
    count), the invariants any isomorphic occurrence must share."""
    groups: dict[tuple, list[tuple[int, ...]]] = {}
    for subset in _connected_ksubsets(template, size):
        members = set(subset)
        edge_count = sum(
            1 for u in subset for w in template.out_adj[u] if w in members
        )
        sig = (tuple(sorted(template.labels[v] for v in subset)), edge_count)
        groups.setdefault(sig, []).append(subset)
    return {sig: tuple(subs) for sig, subs in groups.items()}


def candidate_subsets(
    template: LabeledGraph, size: int, nogoods: NoGoodStore | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield the size-``size`` vertex subsets inducing connected subgraphs.

    Order is lexicographic on the sorted subset tuple; subsets blocked in
    ``nogoods`` are skipped (membership is checked lazily at yield time, so
    no-goods added during iteration take effect).
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    for subset in _connected_ksubsets(template, size):
        if nogoods is not None and subset in nogoods:
            continue
        yield subset


def is_valid_pattern(
    pattern: LabeledGraph, dataset: Dataset, config: MiningConfig, jobs: int = 1
) -> tuple[bool, int, int]:
    """Coverage check with early termination (the decomposed evaluation).

    Positives are scanned until the count reaches the threshold; the
    negative scan aborts and rejects as soon as the count exceeds its
    threshold. Returns (valid, positive_covered, negative_covered) with the
    counts actually established.
    """
    pos_rep = coverage(
        pattern,
        dataset,
        ExampleClass.POSITIVE,
        stop_at=config.n_pos_threshold,
        jobs=jobs,
    )
    pos = pos_rep.positive_covered
    if pos < config.n_pos_threshold:
        return False, pos, 0
    neg_rep = coverage(
        pattern,
        dataset,
        ExampleClass.NEGATIVE,
        stop_at=config.n_neg_threshold + 1,
        jobs=jobs,
    )
    neg = neg_rep.negative_covered
    return neg <= config.n_neg_threshold, pos, neg


@dataclass
class _Frame:
    """Chronological state of one example's (homowith_g, f_g) block."""

    witnesses: Iterator[tuple[int, ...]]
    homowith: bool
    mapping: tuple[int, ...] | None


def _chronological_search(
    pattern: LabeledGraph, targets: list[LabeledGraph], threshold: int
) -> tuple[bool, int]:
    """Complete chronological backtracking over the concatenated vector
    [homowith_g, f_g-assignments] with examples in graph-id order.

    homowith_g is decided true before false; the true branch materializes a
    homomorphism witness from the example's lazily enumerated stream, and a
    conflict resumes the most recent stream for an alternative witness
    before flipping that decision to false. The only propagation is the
    cardinality bound (a prefix whose remaining examples cannot reach the
    threshold is abandoned), so no per-example independence is exploited
    and no early stop occurs: a model is a complete assignment of every
    example. Returns (model_found, count_established).
    """
    m = len(targets)
    frames: list[_Frame] = []
    t = 0
    max_t = 0
    while True:
        depth = len(frames)
        if t + (m - depth) < threshold:
            moved = False
            while frames:
                frame = frames[-1]
                if frame.homowith:
                    alt = next(frame.witnesses, None)
                    if alt is not None:
                        frame.mapping = alt
                        moved = True
                        break
                    frame.homowith = False
                    frame.mapping = None
                    t -= 1
                    moved = True
                    break
                frames.pop()
            if not moved:
                return False, max_t
            continue
        if depth == m:
            return True, t
        witnesses = iter_homomorphisms(pattern, targets[depth])
        first = next(witnesses, None)
        if first is not None:
            frames.append(_Frame(witnesses, True, first))
            t += 1
            max_t = max(max_t, t)
        else:
            frames.append(_Frame(witnesses, False, None))


def _evaluate_monolithic(
    pattern: LabeledGraph, dataset: Dataset, config: MiningConfig
) -> tuple[bool, int, int]:
    """Two-phase check over a single combined variable space.

    The positive phase searches for an assignment covering at least
    n_pos_threshold positives; the dual phase then tries to exhibit more
    than n_neg_threshold negative homomorphisms and rejects on success.
    """
    found, pos = _chronological_search(
        pattern, [ex.graph for ex in dataset.positives()], config.n_pos_threshold
    )
    if not found:
        return False, pos, 0
    exceeded, neg = _chronological_search(
        pattern, [ex.graph for ex in dataset.negatives()], config.n_neg_threshold + 1
    )
    return not exceeded, pos, neg


def evaluate_strategy(
    pattern: LabeledGraph, dataset: Dataset, config: MiningConfig, jobs: int = 1
) -> tuple[bool, int, int]:
    """Dispatch the validity check to the configured strategy.

    Both strategies return identical verdicts; the established counts may
    differ (the decomposed check stops early, the monolithic one assigns
    every example).
    """
    if config.strategy is Strategy.MONOLITHIC:
        return _evaluate_monolithic(pattern, dataset, config)
    return is_valid_pattern(pattern, dataset, config, jobs=jobs)


def template_occurrences(
    pattern: LabeledGraph, template: LabeledGraph
) -> list[tuple[int, ...]]:
    """All template-vertex subsets inducing a subgraph isomorphic to pattern.

    Includes the pattern's own subset. The pattern must be connected (as all
    mined patterns are).
    """
    if pattern.n > template.n:
        return []
    sig = (tuple(sorted(pattern.labels)), len(pattern.edges))
    group = _subsets_by_signature(template, pattern.n).get(sig, ())
    return [
        subset
        for subset in group
        if is_isomorphic(induced_subgraph(template, subset), pattern)
    ]


def mine(dataset: Dataset, config: MiningConfig, jobs: int = 1) -> list[MineResult]:
    """Enumerate canonical valid patterns, smallest size first.

    Within a size level, candidates are scanned in lexicographic subset
    order; an accepted pattern's template occurrences become no-goods. When
    a level is exhausted the no-goods are cleared and the size advances. The
    sequence of emitted patterns is deterministic for fixed inputs; only the
    elapsed_ms fields vary between runs.
    """
    results: list[MineResult] = []
    if config.max_patterns is not None and config.max_patterns <= 0:
        return results
    template = dataset.template
    top = template.n
    if config.max_pattern_size is not None:
        top = min(top, config.max_pattern_size)
    nogoods = NoGoodStore()
    t_prev = time.perf_counter()
    for size in range(config.min_pattern_size, top + 1):
        nogoods.clear()
        accepted: list[LabeledGraph] = []
        for subset in candidate_subsets(template, size, nogoods):
            pattern = induced_subgraph(template, subset)
            ok, pos, neg = evaluate_strategy(pattern, dataset, config, jobs=jobs)
            if not ok:
                continue
            if any(is_isomorphic(pattern, seen) for seen in accepted):
                continue
            now = time.perf_counter()
            results.append(
                MineResult(
                    index=len(results) + 1,
                    subset=subset,
                    pattern=pattern,
                    positive_covered=pos,
                    negative_covered=neg,
                    elapsed_ms=(now - t_prev) * 1000.0,
                )
            )
            t_prev = now
            accepted.append(pattern)
            for occ in template_occurrences(pattern, template):
                nogoods.add(occ)
            if config.max_patterns is not None and len(results) >= config.max_patterns:
                return results
    return results
