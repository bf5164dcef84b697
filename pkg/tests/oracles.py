"""Independent brute-force oracles used to certify the implementation.

Everything here is deliberately naive: transitive closure by iteration,
union-find connectivity, permutation-based bijection search, and exhaustive
pattern enumeration with brute-force coverage. None of it shares code with
the search paths it checks.
"""

from __future__ import annotations

import itertools
import random

from patmine import (
    Dataset,
    LabeledGraph,
    brute_force_homomorphisms,
    build_graph,
    induced_subgraph,
)


def closure_reachable(g: LabeledGraph, x: int, y: int) -> bool:
    """Nonempty-path reachability via iterated composition over the
    symmetrized edge relation."""
    pairs = set(g.edges) | {(v, u) for u, v in g.edges}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(pairs), repeat=2):
            if b == c and (a, d) not in pairs:
                pairs.add((a, d))
                changed = True
    return (x, y) in pairs


def unionfind_connected(g: LabeledGraph) -> bool:
    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        parent[ru] = rv
    return g.n <= 1 or len({find(v) for v in range(g.n)}) == 1


def bijection_isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Try every bijection; check labels and edge preservation both ways."""
    if g1.n != g2.n:
        return False
    for perm in itertools.permutations(range(g2.n)):
        if any(g1.labels[v] != g2.labels[perm[v]] for v in range(g1.n)):
            continue
        fwd = all((perm[u], perm[v]) in g2.edges for u, v in g1.edges)
        if not fwd:
            continue
        inv = {t: s for s, t in enumerate(perm)}
        if all((inv[u], inv[v]) in g1.edges for u, v in g2.edges):
            return True
    return False


def random_graph(
    rng: random.Random,
    n: int,
    labels: tuple[str, ...] = ("a", "b"),
    edge_prob: float = 0.4,
    undirected: bool = True,
) -> LabeledGraph:
    edges = []
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < edge_prob:
                if undirected and u > v:
                    continue
                edges.append((u, v))
    vlabels = [rng.choice(labels) for _ in range(n)]
    return build_graph(n, edges, vlabels, undirected=undirected)


def covered(pattern: LabeledGraph, examples) -> int:
    return sum(bool(brute_force_homomorphisms(pattern, ex.graph)) for ex in examples)


def exhaustive_pattern_classes(
    dataset: Dataset, min_size: int, max_size: int
) -> dict[int, list[LabeledGraph]]:
    """One representative per isomorphism class of valid patterns, per size.

    Enumerates every vertex subset of the template, keeps connected induced
    subgraphs meeting both coverage thresholds (coverage via the
    brute-force homomorphism lists), and dedupes with the permutation-based
    isomorphism oracle.
    """
    template = dataset.template
    out: dict[int, list[LabeledGraph]] = {}
    for size in range(min_size, min(max_size, template.n) + 1):
        classes: list[LabeledGraph] = []
        for subset in itertools.combinations(range(template.n), size):
            g = induced_subgraph(template, subset)
            if not unionfind_connected(g):
                continue
            if covered(g, dataset.positives()) < dataset.n_pos_threshold:
                continue
            if covered(g, dataset.negatives()) > dataset.n_neg_threshold:
                continue
            if not any(bijection_isomorphic(g, c) for c in classes):
                classes.append(g)
        out[size] = classes
    return out
