from django.test import SimpleTestCase

from core.budgets import AnalysisBudget
from nets.corpus import fixture
from nets.exceptions import PreconditionError
from nets.firing import fire_sequence
from nets.sequences import parikh
from nets.transform import p_subsystem

from algebra.verdict import Outcome
from structure.pcmg import load_pcmg

from .directedness import directedness, h1s_common_successor_check, initial_directedness, strongly_live
from .graph import build_rg, dead_transitions, deadlocks, rg_to_dot
from .liveness import elementary_circuits, live, live_cf, live_circuit_ilp, live_h1s, live_pcmg_acyclic, live_wmg
from .properties import (
    bounded,
    deadlock_free,
    is_home_state,
    lrb_report,
    property_E_check,
    reversible,
    wmg_deadlock_vector,
)
from .sequences import (
    ReversibilityScope,
    find_t_sequence,
    greedy_realization,
    keller_check,
    realize_tvector_wmg,
    reversible_by_tsequence,
)


class ReachabilityGraphTests(SimpleTestCase):
    def setUp(self):
        self.system = fixture('fig1').system

    def test_six_states(self):
        rg = build_rg(self.system)
        self.assertTrue(rg.complete)
        self.assertEqual(len(rg), 6)
        self.assertEqual(rg.vertices[1], (2, 1, 0, 0))
        self.assertEqual(rg.bound(), 4)
        self.assertEqual(rg.path_to((1, 0, 2, 3)), ('t2', 't1', 't3'))
        self.assertEqual(deadlocks(rg), [])
        self.assertEqual(dead_transitions(rg), ())

    def test_state_budget(self):
        budget = AnalysisBudget().with_overrides(max_states=3)
        rg = build_rg(self.system, budget)
        self.assertFalse(rg.complete)
        self.assertEqual(len(rg), 3)
        self.assertIn('estados', rg.reason)

    def test_unbounded_pump(self):
        system = fixture('deadwmg').system.with_marking((1, 0))
        budget = AnalysisBudget().with_overrides(max_states=20)
        verdict = bounded(system, budget)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness.loop, ('t',))

    def test_dot(self):
        text = rg_to_dot(build_rg(self.system))
        self.assertTrue(text.startswith('digraph "fig1"'))
        self.assertIn('label="t2"', text)


class PropertyTests(SimpleTestCase):
    def test_fig1(self):
        system = fixture('fig1').system
        self.assertEqual(bounded(system).witness, 4)
        self.assertTrue(reversible(system).is_yes)
        self.assertTrue(deadlock_free(system).is_yes)
        self.assertTrue(is_home_state(system, system.m0).is_yes)
        self.assertTrue(is_home_state(system, (0, 0, 0, 0)).is_no)
        self.assertTrue(property_E_check(system).is_yes)

    def test_dead_system(self):
        system = fixture('deadwmg').system
        verdict = deadlock_free(system)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness, ())
        report = lrb_report(system)
        self.assertEqual(report.code(), '¬LRB')
        self.assertEqual(report.property_L, Outcome.NO)
        self.assertEqual(report.as_dict()['property_R'], 'yes')

    def test_wmg_deadlock_vector(self):
        report = wmg_deadlock_vector(fixture('deadwmg').system).witness
        self.assertEqual(report.m_d, (0, 0))
        self.assertEqual(report.sigma_d, ())


class LivenessTests(SimpleTestCase):
    def test_generic(self):
        self.assertTrue(live(fixture('fig1').system).is_yes)
        verdict = live(fixture('deadwmg').system)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness, ('t', (0, 0)))

    def test_weighted_marked_graph(self):
        system = fixture('fig1').system
        circuits, complete = elementary_circuits(system)
        self.assertTrue(complete)
        self.assertEqual(circuits, [('p1', 'p3'), ('p2', 'p4')])
        self.assertTrue(live_circuit_ilp(p_subsystem(system, ['p1', 'p3'])).is_yes)
        self.assertTrue(live_wmg(system).is_yes)
        verdict = live_wmg(fixture('deadwmg').system)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness, ('p0',))

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            live_wmg(fixture('onechoicewmg').system)
        with self.assertRaises(PreconditionError):
            live_circuit_ilp(fixture('fig1').system)

    def test_choice_free(self):
        self.assertTrue(live_cf(fixture('fig1').system).is_yes)
        self.assertTrue(live_cf(fixture('deadwmg').system).is_no)


class SequenceTests(SimpleTestCase):
    def setUp(self):
        self.system = fixture('fig1').system

    def test_t_sequence(self):
        verdict = find_t_sequence(self.system)
        self.assertTrue(verdict.is_yes)
        self.assertEqual(verdict.witness, ('t2', 't1', 't1', 't3'))

    def test_no_t_sequence_without_consistency(self):
        self.assertTrue(find_t_sequence(fixture('deadwmg').system).is_no)

    def test_keller(self):
        self.assertTrue(keller_check(self.system, ['t2', 't1'], ['t2', 't3']))

    def test_greedy_realization(self):
        verdict = realize_tvector_wmg(self.system, (1, 1, 1), ['t2', 't1', 't3'])
        self.assertEqual(verdict.witness, ('t2', 't1', 't3'))
        with self.assertRaises(PreconditionError):
            realize_tvector_wmg(self.system, (1, 1, 1), ['t2', 't1'])


class DirectednessTests(SimpleTestCase):
    def test_reversible_system(self):
        system = fixture('fig1').system
        self.assertTrue(directedness(system).is_yes)
        self.assertTrue(initial_directedness(system).is_yes)
        self.assertTrue(strongly_live(system).is_yes)

    def test_incomplete_enumeration(self):
        verdict = directedness(fixture('deadwmg').system)
        self.assertTrue(verdict.is_unknown)
        self.assertIn('PR', verdict.reason)


class ClassLivenessTests(SimpleTestCase):
    def test_acyclic_pcmg(self):
        item = fixture('fig_pcmg_left')
        spec = load_pcmg(item.pcmg_path)
        self.assertTrue(live_pcmg_acyclic(item.system, spec).is_yes)
        verdict = live_pcmg_acyclic(item.system.with_marking((0, 0)), spec)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness, ('p0', 'p1'))
        self.assertEqual(verdict.details['kind'], 'siphon')

    def test_acyclic_pcmg_tree_agrees_with_graph(self):
        item = fixture('pcmg_tree')
        verdict = live_pcmg_acyclic(item.system, load_pcmg(item.pcmg_path))
        self.assertEqual(verdict.outcome, live(item.system).outcome)

    def test_acyclic_pcmg_requires_acyclic_graph(self):
        item = fixture('nonrev_triangle')
        with self.assertRaises(PreconditionError):
            live_pcmg_acyclic(item.system, load_pcmg(item.pcmg_path))

    def test_h1s(self):
        system = fixture('onechoicewmg').system
        self.assertEqual(live_h1s(system).outcome, live(system).outcome)
        self.assertTrue(live_h1s(fixture('cepramg_left').system).is_yes)

    def test_h1s_dead_siphon(self):
        verdict = live_h1s(fixture('deadwmg').system)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness, (('p0',), (0, 0)))

    def test_h1s_precondition(self):
        with self.assertRaises(PreconditionError):
            live_h1s(fixture('ce2choice').system)


class TSequenceReversibilityTests(SimpleTestCase):
    def test_live_h1s_system_enables_t_sequence(self):
        system = fixture('fig1').system
        verdict = reversible_by_tsequence(system, ReversibilityScope.LIVE_H1S)
        self.assertTrue(verdict.is_yes)
        self.assertEqual(fire_sequence(system.net, system.m0, verdict.witness), system.m0)

    def test_weighted_system_without_return(self):
        verdict = reversible_by_tsequence(fixture('ssystem_nonrev').system, 'live_h1s')
        self.assertTrue(verdict.is_no)

    def test_live_pcmg_scope(self):
        item = fixture('pcmg_tree')
        spec = load_pcmg(item.pcmg_path)
        verdict = reversible_by_tsequence(item.system, ReversibilityScope.LIVE_PCMG, spec=spec)
        self.assertEqual(verdict.outcome, reversible(item.system).outcome)

    def test_scope_preconditions(self):
        system = fixture('fig1').system
        with self.assertRaises(PreconditionError):
            reversible_by_tsequence(system, 'otro')
        with self.assertRaises(PreconditionError):
            reversible_by_tsequence(system, ReversibilityScope.LIVE_PCMG)
        with self.assertRaises(PreconditionError):
            reversible_by_tsequence(fixture('ce2choice').system, ReversibilityScope.LIVE_H1S)


class CommonSuccessorTests(SimpleTestCase):
    def setUp(self):
        self.system = fixture('fig1').system

    def test_common_successor(self):
        verdict = h1s_common_successor_check(self.system, (1, 0, 2, 3), (1, 1, 1))
        self.assertTrue(verdict.is_yes)
        successor, sequence = verdict.witness
        self.assertEqual(fire_sequence(self.system.net, self.system.m0, sequence), successor)
        self.assertTrue(all(h >= y for h, y in zip(parikh(self.system.net, sequence), (1, 1, 1))))
        self.assertIn(successor, build_rg(self.system.with_marking((1, 0, 2, 3))))

    def test_marking_must_solve_state_equation(self):
        with self.assertRaises(PreconditionError):
            h1s_common_successor_check(self.system, (1, 0, 2, 3), (1, 0, 0))
        with self.assertRaises(PreconditionError):
            h1s_common_successor_check(fixture('ce2choice').system, fixture('ce2choice').system.m0, (0,) * 5)


class GreedyRealizationTests(SimpleTestCase):
    def test_first_enabled_with_demand(self):
        system = fixture('fig1').system
        self.assertEqual(greedy_realization(system, (2, 1, 1)), ('t2', 't1', 't1', 't3'))
        self.assertEqual(greedy_realization(system, (0, 0, 0)), ())

    def test_blocked(self):
        self.assertIsNone(greedy_realization(fixture('deadwmg').system, (1,)))
