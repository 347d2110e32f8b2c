"""
Propiedades sobre sistemas generados al azar con semilla fija: la ecuación
de estado, los semiflujos y la alcanzabilidad deben coincidir con el
disparo explícito.
"""
import random
from itertools import combinations

import pytest
from django.test import SimpleTestCase

from core.budgets import AnalysisBudget
from nets.corpus import fixtures
from nets.firing import fire_sequence
from nets.sequences import parikh
from nets.testing import (
    bounded_circuit,
    choice_free,
    h1s_system,
    random_sequence,
    weighted_circuit,
    weighted_marked_graph,
)
from nets.transform import reverse_net

from algebra.matrices import incidence
from algebra.potential import enumerate_pr
from algebra.semiflows import (
    conservativeness,
    is_p_semiflow,
    is_t_semiflow,
    minimal_p_semiflows,
    minimal_t_semiflows,
    structurally_bounded,
)
from algebra.state_equation import solve_state_equation
from structure.classes import is_circuit
from structure.pcmg import build_pcmg
from structure.siphons import is_siphon, max_siphon_in
from structure.testing import pcmg_tree
from behavior.graph import build_rg
from behavior.liveness import live, live_circuit_ilp, live_h1s, live_pcmg_acyclic, live_wmg
from behavior.sequences import keller_check, realize_tvector_wmg

from .certificates import certificate_ladder
from .decide import is_reachable

SEEDS = range(12)
BUDGET = AnalysisBudget().with_overrides(max_states=300, y_bound=16)
ORACLE_BUDGET = AnalysisBudget().with_overrides(max_states=5000)
CERTIFICATE_BUDGET = AnalysisBudget().with_overrides(max_states=5000, y_bound=16)


@pytest.mark.slow
class RandomSystemTests(SimpleTestCase):
    def test_state_equation_matches_firing(self):
        for seed in SEEDS:
            system = choice_free(seed)
            sequence = random_sequence(system, seed)
            with self.subTest(seed=seed):
                matrix = incidence(system.net)
                self.assertEqual(
                    matrix.apply(system.m0, parikh(system.net, sequence)),
                    fire_sequence(system.net, system.m0, sequence),
                )

    def test_reverse_is_involution(self):
        for seed in SEEDS:
            net = weighted_marked_graph(seed).net
            with self.subTest(seed=seed):
                self.assertEqual(reverse_net(reverse_net(net)), net)

    def test_semiflows_annul_incidence(self):
        for seed in SEEDS:
            net = h1s_system(seed).net
            with self.subTest(seed=seed):
                for vector in minimal_p_semiflows(net).vectors():
                    self.assertTrue(is_p_semiflow(net, vector))
                for vector in minimal_t_semiflows(net).vectors():
                    self.assertTrue(is_t_semiflow(net, vector))

    def test_pr_generators_solve_state_equation(self):
        for seed in SEEDS:
            system = weighted_circuit(seed)
            pr = enumerate_pr(system, bound=3)
            matrix = incidence(system.net)
            with self.subTest(seed=seed):
                for marking in pr:
                    self.assertEqual(matrix.apply(system.m0, pr.generator[marking]), marking)

    def test_reachable_markings_are_potentially_reachable(self):
        for seed in SEEDS:
            system = weighted_circuit(seed)
            rg = build_rg(system, BUDGET)
            with self.subTest(seed=seed):
                for marking in rg.vertices:
                    self.assertFalse(solve_state_equation(system, marking, BUDGET).is_no)

    def test_reachability_witness_fires_to_target(self):
        for seed in SEEDS:
            system = choice_free(seed)
            target = fire_sequence(system.net, system.m0, random_sequence(system, seed, length=5))
            verdict = is_reachable(system, target, BUDGET)
            with self.subTest(seed=seed):
                self.assertFalse(verdict.is_no)
                if verdict.is_yes and verdict.witness is not None:
                    self.assertEqual(fire_sequence(system.net, system.m0, verdict.witness), target)

    def test_bounded_circuits_are_conservative(self):
        for seed in SEEDS:
            net = bounded_circuit(seed, length=2 + seed % 3).net
            with self.subTest(seed=seed):
                self.assertTrue(conservativeness(net).is_yes)
                self.assertTrue(is_circuit(net))

    def test_reverse_negates_incidence(self):
        for seed in SEEDS:
            net = choice_free(seed).net
            with self.subTest(seed=seed):
                forward = incidence(net).as_rows()
                backward = incidence(reverse_net(net)).as_rows()
                self.assertEqual(backward, [[-v for v in row] for row in forward])

    def test_max_siphon_is_union_of_contained_siphons(self):
        for seed in range(100):
            net = choice_free(seed, places=4 + seed % 6, transitions=3 + seed % 3).net
            rng = random.Random(seed)
            places = [p for p in net.places if rng.random() < 0.8]
            with self.subTest(seed=seed):
                union = set()
                for size in range(1, len(places) + 1):
                    for subset in combinations(places, size):
                        if is_siphon(net, subset):
                            union.update(subset)
                self.assertEqual(max_siphon_in(net, places), frozenset(union))


@pytest.mark.slow
class FixtureInvariantTests(SimpleTestCase):
    def test_conservative_nets_are_structurally_bounded(self):
        for item in fixtures():
            net = item.document.net
            if conservativeness(net).is_yes:
                with self.subTest(fixture=item.key):
                    self.assertTrue(structurally_bounded(net).is_yes)


@pytest.mark.slow
class OracleTests(SimpleTestCase):
    def test_circuit_ilp_agrees_with_graph_on_bounded_circuits(self):
        compared = 0
        for seed in range(200):
            system = bounded_circuit(seed, length=2 + seed % 3)
            explicit = live(system, ORACLE_BUDGET)
            self.assertFalse(explicit.is_unknown, seed)
            structural = live_circuit_ilp(system, ORACLE_BUDGET)
            if structural.is_unknown:
                continue
            compared += 1
            with self.subTest(seed=seed):
                self.assertEqual(explicit.outcome, structural.outcome)
        self.assertGreaterEqual(compared, 180)

    def test_weighted_marked_graph_liveness_agrees_with_graph(self):
        compared = 0
        for seed in range(400):
            system = weighted_marked_graph(seed, max_weight=1 + seed % 2)
            explicit = live(system, ORACLE_BUDGET)
            structural = live_wmg(system, ORACLE_BUDGET)
            if explicit.is_unknown or structural.is_unknown:
                continue
            compared += 1
            with self.subTest(seed=seed):
                self.assertEqual(explicit.outcome, structural.outcome)
        self.assertGreaterEqual(compared, 200)

    def test_h1s_liveness_agrees_with_graph(self):
        compared = 0
        for seed in range(200):
            system = h1s_system(seed)
            explicit = live(system, ORACLE_BUDGET)
            by_siphons = live_h1s(system, ORACLE_BUDGET)
            if explicit.is_unknown or by_siphons.is_unknown:
                continue
            compared += 1
            with self.subTest(seed=seed):
                self.assertEqual(explicit.outcome, by_siphons.outcome)
        self.assertGreaterEqual(compared, 100)

    def test_acyclic_pcmg_liveness_agrees_with_graph(self):
        for seed in range(200):
            spec = pcmg_tree(seed)
            system = build_pcmg(spec).system
            explicit = live(system, ORACLE_BUDGET)
            with self.subTest(seed=seed):
                self.assertFalse(explicit.is_unknown)
                self.assertEqual(explicit.outcome, live_pcmg_acyclic(system, spec).outcome)

    def test_keller_confluence_on_choice_free_pairs(self):
        for seed in range(1000):
            system = choice_free(seed)
            tau = random_sequence(system, seed, length=6)
            sigma = random_sequence(system, seed + 1000, length=6)
            with self.subTest(seed=seed):
                self.assertTrue(keller_check(system, tau, sigma))

    def test_greedy_realization_contract(self):
        for seed in range(500):
            system = weighted_marked_graph(seed)
            hint = random_sequence(system, seed)
            vector = parikh(system.net, hint)
            verdict = realize_tvector_wmg(system, vector, hint)
            with self.subTest(seed=seed):
                self.assertEqual(parikh(system.net, verdict.witness), vector)
                self.assertEqual(
                    fire_sequence(system.net, system.m0, verdict.witness),
                    fire_sequence(system.net, system.m0, hint),
                )


def _certificate_instances():
    for seed in range(200):
        yield 'mg', seed, weighted_marked_graph(seed, max_weight=1, max_tokens=1), None
    for seed in range(200, 300):
        yield 'wmg', seed, weighted_marked_graph(seed, max_tokens=2), None
    for seed in range(300, 400):
        yield 'h1s', seed, h1s_system(seed, max_tokens=2), None
    for seed in range(400, 450):
        yield 'cf', seed, choice_free(seed, max_tokens=2), None
    for seed in range(450, 550):
        spec = pcmg_tree(seed, edges=2)
        yield 'pcmg', seed, build_pcmg(spec).system, spec


@pytest.mark.slow
class CertificateSoundnessTests(SimpleTestCase):
    def test_certificates_agree_with_exhaustive_comparison(self):
        instances = emitted = confirmed = 0
        for family, seed, system, spec in _certificate_instances():
            instances += 1
            ladder = certificate_ladder(system, CERTIFICATE_BUDGET, spec)
            if not ladder.is_yes:
                continue
            emitted += 1
            rg = build_rg(system, CERTIFICATE_BUDGET)
            pr = enumerate_pr(system, budget=CERTIFICATE_BUDGET)
            if not (rg.complete and pr.complete):
                continue
            confirmed += 1
            with self.subTest(family=family, seed=seed, rule=ladder.witness.rule.value):
                self.assertEqual([m for m in pr if m not in rg], [])
        self.assertGreaterEqual(instances, 500)
        self.assertGreaterEqual(confirmed, 25, f"{emitted} certificados, {confirmed} comparados")
