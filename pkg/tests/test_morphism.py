from __future__ import annotations

import random

import pytest

from patmine import (
    ExampleClass,
    PatternTooLarge,
    brute_force_homomorphisms,
    build_graph,
    coverage,
    find_homomorphism,
    induced_subgraph,
    is_homomorphism,
    is_isomorphic,
)
from patmine.demo import HEXCHORD_SUBSET, TAILPATH_SUBSET, hexagon_with_chord

from oracles import bijection_isomorphic, random_graph


def path_graph(n, label="a"):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], [label] * n, True)


def cycle_graph(n, label="a"):
    edges = [(i, (i + 1) % n) for i in range(n)]
    return build_graph(n, edges, [label] * n, True)


class TestFindHomomorphism:
    def test_hexchord_maps_into_positive(self, template, positive):
        pattern = induced_subgraph(template, HEXCHORD_SUBSET)
        m = find_homomorphism(pattern, positive)
        assert m is not None
        assert is_homomorphism(pattern, positive, m)

    def test_hexchord_cannot_map_into_negative(self, template, negative):
        pattern = induced_subgraph(template, HEXCHORD_SUBSET)
        assert find_homomorphism(pattern, negative) is None

    def test_three_path_into_four_path(self):
        m = find_homomorphism(path_graph(3), path_graph(4))
        assert m is not None
        assert len(brute_force_homomorphisms(path_graph(3), path_graph(4))) == 4

    def test_label_mismatch_blocks(self):
        p = build_graph(1, [], ["b"], True)
        t = build_graph(2, [(0, 1)], ["a", "a"], True)
        assert find_homomorphism(p, t) is None

    def test_empty_pattern(self):
        assert find_homomorphism(
            build_graph(0, [], [], True), path_graph(2)
        ) == ()

    def test_directed_edge_orientation_respected(self):
        p = build_graph(2, [(0, 1)], ["a", "a"], False)
        t = build_graph(2, [(1, 0)], ["a", "a"], False)
        m = find_homomorphism(p, t)
        assert m == (1, 0)


class TestBruteForce:
    def test_single_vertex_counts_label_matches(self):
        p = build_graph(1, [], ["a"], True)
        t = build_graph(4, [(0, 1), (1, 2), (2, 3)], ["a", "b", "a", "a"], True)
        assert len(brute_force_homomorphisms(p, t)) == 3

    def test_forced_assignment(self):
        p = build_graph(2, [(0, 1)], ["a", "a"], False)
        t = build_graph(2, [(0, 1)], ["a", "a"], False)
        assert brute_force_homomorphisms(p, t) == [(0, 1)]

    def test_lexicographic_order(self):
        homs = brute_force_homomorphisms(path_graph(3), path_graph(4))
        assert homs == sorted(homs)

    def test_oversized_pattern_rejected(self):
        with pytest.raises(PatternTooLarge):
            brute_force_homomorphisms(path_graph(9), path_graph(9))


class TestIsIsomorphic:
    def test_two_chord_placements_isomorphic(self):
        assert is_isomorphic(hexagon_with_chord((1, 4)), hexagon_with_chord((0, 3)))

    def test_reflexive(self, template):
        assert is_isomorphic(template, template)

    def test_cycle_vs_path(self):
        assert not is_isomorphic(cycle_graph(6), path_graph(6))

    def test_labels_matter(self):
        g1 = build_graph(2, [(0, 1)], ["a", "b"], True)
        g2 = build_graph(2, [(0, 1)], ["a", "a"], True)
        assert not is_isomorphic(g1, g2)

    def test_equivalence_relation_on_pool(self):
        rng = random.Random(23)
        pool = [random_graph(rng, rng.randrange(2, 6)) for _ in range(12)]
        for g in pool:
            assert is_isomorphic(g, g)
        for g1 in pool:
            for g2 in pool:
                assert is_isomorphic(g1, g2) == is_isomorphic(g2, g1)
        for g1 in pool:
            for g2 in pool:
                for g3 in pool:
                    if is_isomorphic(g1, g2) and is_isomorphic(g2, g3):
                        assert is_isomorphic(g1, g3)

    def test_matches_bijection_oracle(self):
        rng = random.Random(29)
        agree = 0
        for _ in range(60):
            n = rng.randrange(1, 6)
            g1 = random_graph(rng, n)
            if rng.random() < 0.5:
                perm = list(range(n))
                rng.shuffle(perm)
                edges = [(perm[u], perm[v]) for u, v in g1.edges]
                labels = [None] * n
                for v in range(n):
                    labels[perm[v]] = g1.labels[v]
                g2 = build_graph(n, edges, labels, undirected=True)
            else:
                g2 = random_graph(rng, n)
            assert is_isomorphic(g1, g2) == bijection_isomorphic(g1, g2)
            agree += 1
        assert agree == 60


class TestIterHomomorphisms:
    def test_first_yield_matches_find(self):
        from patmine.morphism import iter_homomorphisms

        rng = random.Random(61)
        for _ in range(40):
            pattern = random_graph(rng, rng.randrange(1, 6))
            target = random_graph(rng, rng.randrange(1, 8))
            first = next(iter_homomorphisms(pattern, target), None)
            assert first == find_homomorphism(pattern, target)

    def test_enumerates_same_set_as_brute_force(self):
        from patmine.morphism import iter_homomorphisms

        rng = random.Random(67)
        for _ in range(30):
            pattern = random_graph(rng, rng.randrange(1, 5))
            target = random_graph(rng, rng.randrange(1, 7))
            lazy = sorted(iter_homomorphisms(pattern, target))
            assert lazy == brute_force_homomorphisms(pattern, target)


class TestOracleEquivalence:
    def test_find_matches_brute_force_on_random_pairs(self):
        rng = random.Random(101)
        for _ in range(100):
            pattern = random_graph(rng, rng.randrange(1, 7))
            target = random_graph(rng, rng.randrange(1, 9))
            homs = brute_force_homomorphisms(pattern, target)
            found = find_homomorphism(pattern, target)
            assert (found is None) == (len(homs) == 0)
            if found is not None:
                assert found in homs
                assert is_homomorphism(pattern, target, found)

    def test_isomorphic_targets_interchangeable(self):
        rng = random.Random(37)
        for _ in range(25):
            n = rng.randrange(2, 6)
            t1 = random_graph(rng, n)
            perm = list(range(n))
            rng.shuffle(perm)
            labels = [None] * n
            for v in range(n):
                labels[perm[v]] = t1.labels[v]
            t2 = build_graph(
                n, [(perm[u], perm[v]) for u, v in t1.edges], labels, True
            )
            assert is_isomorphic(t1, t2)
            p = random_graph(rng, rng.randrange(1, n + 1))
            assert (find_homomorphism(p, t1) is None) == (
                find_homomorphism(p, t2) is None
            )


class TestCoverage:
    def test_hexchord_covers_positive(self, template, dataset):
        pattern = induced_subgraph(template, HEXCHORD_SUBSET)
        rep = coverage(pattern, dataset, ExampleClass.POSITIVE)
        assert rep.positive_covered == 1
        assert rep.per_example == ((0, True),)

    def test_tailpath_covers_negative(self, template, dataset):
        pattern = induced_subgraph(template, TAILPATH_SUBSET)
        rep = coverage(pattern, dataset, ExampleClass.NEGATIVE)
        assert rep.negative_covered == 1

    def test_empty_class_scan(self, template, dataset):
        pattern = induced_subgraph(template, TAILPATH_SUBSET)
        pos_only = type(dataset)(
            template=dataset.template,
            examples=tuple(ex for ex in dataset.examples if ex.graph_id == 0),
            n_pos_threshold=0,
            n_neg_threshold=0,
        )
        rep = coverage(pattern, pos_only, ExampleClass.NEGATIVE)
        assert rep.negative_covered == 0 and rep.per_example == ()

    def test_early_stop_marks_unknown(self, template, dataset):
        pattern = induced_subgraph(template, TAILPATH_SUBSET)
        rep = coverage(pattern, dataset, ExampleClass.POSITIVE, stop_at=0)
        assert rep.positive_covered == 0
        assert rep.per_example == ((0, None),)

    def test_full_counts_match_brute_force(self, dataset):
        rng = random.Random(41)
        for _ in range(15):
            pattern = random_graph(rng, rng.randrange(1, 5), labels=("a",))
            rep = coverage(pattern, dataset, ExampleClass.POSITIVE)
            expected = sum(
                bool(brute_force_homomorphisms(pattern, ex.graph))
                for ex in dataset.positives()
            )
            assert rep.positive_covered == expected

    def test_threaded_waves_equal_sequential(self, dataset):
        rng = random.Random(43)
        for _ in range(10):
            pattern = random_graph(rng, rng.randrange(1, 5), labels=("a",))
            for stop in (None, 0, 1, 2):
                seq = coverage(pattern, dataset, ExampleClass.POSITIVE, stop_at=stop)
                par = coverage(
                    pattern, dataset, ExampleClass.POSITIVE, stop_at=stop, jobs=4
                )
                assert seq == par
