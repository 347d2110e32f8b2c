import json
import tempfile
from io import StringIO
from pathlib import Path

import pytest
from django.test import SimpleTestCase
from rest_framework.test import APIClient

from core.budgets import AnalysisBudget
from nets.corpus import fixture
from nets.exceptions import PreconditionError
from nets.firing import fire, fire_sequence
from nets.parser import parse

from algebra.matrices import incidence
from algebra.state_equation import solve_state_equation
from algebra.verdict import Verdict
from structure.siphons import is_deadlocked_siphon
from behavior.properties import lrb_report
from behavior.sequences import greedy_realization

from .amg_checks import amg_home_state_check, amg_resource_invariant_check, reversible_live_amg
from .certificates import CertificateRule, certificate_ladder
from .cli import cli_main
from .decide import PrrOutcome, is_reachable, prr_decide
from .services import AnalysisRequest, AnalysisRequestError, AnalysisService, jsonable, verify_fixture

FIG1 = """
net fig1
pl p1 0
pl p2 0
pl p3 4
pl p4 3
tr t1 : p1 -> p3*2
tr t2 : p3*4 p4*3 -> p1*2 p2
tr t3 : p2 -> p4*3
"""


class PrrDecisionTests(SimpleTestCase):
    def test_live_weighted_marked_graph_is_equal(self):
        verdict = prr_decide(fixture('fig1').system)
        self.assertEqual(verdict.outcome, PrrOutcome.EQUAL)
        self.assertEqual(verdict.certificate.rule, CertificateRule.LIVE_WMG)
        self.assertEqual(verdict.as_dict()['certificate']['rule'], 'LiveWMG')

    def test_growing_net_has_witness(self):
        verdict = prr_decide(fixture('deadwmg').system)
        self.assertTrue(verdict.is_not_equal)
        self.assertEqual(verdict.marking, (0, 1))
        self.assertEqual(verdict.vector, (1,))
        self.assertIn((0, 1), verdict.missing)

    def test_ladder_reports_attempts(self):
        verdict = certificate_ladder(fixture('deadwmg').system, AnalysisBudget())
        self.assertTrue(verdict.is_no)
        self.assertTrue(verdict.details['attempts'])


class ReachabilityTests(SimpleTestCase):
    def setUp(self):
        self.system = fixture('fig1').system

    def test_initial_marking_is_trivial(self):
        verdict = is_reachable(self.system, self.system.m0)
        self.assertEqual(verdict.witness, ())
        self.assertEqual(verdict.details['method'], 'trivial')

    def test_realized_state_equation_solution(self):
        verdict = is_reachable(self.system, (1, 0, 2, 3))
        self.assertTrue(verdict.is_yes)
        self.assertEqual(verdict.details['method'], 'state_equation')
        self.assertEqual(verdict.witness, ('t2', 't1', 't3'))
        self.assertEqual(fire_sequence(self.system.net, self.system.m0, verdict.witness), (1, 0, 2, 3))

    def test_weighted_marked_graph_realized_greedily(self):
        target = (0, 1, 4, 0)
        verdict = is_reachable(self.system, target)
        self.assertTrue(verdict.is_yes)
        self.assertEqual(verdict.details['method'], 'state_equation')
        self.assertEqual(verdict.witness, greedy_realization(self.system, verdict.details['vector']))
        self.assertEqual(fire_sequence(self.system.net, self.system.m0, verdict.witness), target)

    def test_refuted_by_state_equation(self):
        verdict = is_reachable(self.system, (0, 0, 0, 0))
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.details['method'], 'state_equation')

    def test_potentially_reachable_but_unreachable(self):
        verdict = is_reachable(fixture('deadwmg').system, (0, 1))
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.details['method'], 'rg')


class AmgCheckTests(SimpleTestCase):
    def test_resource_invariant(self):
        verdict = amg_resource_invariant_check(fixture('examg_left').system)
        self.assertTrue(verdict.is_yes)
        self.assertEqual(verdict.witness, {'p5': 2})

    def test_requires_amg(self):
        system = fixture('fig1').system
        with self.assertRaises(PreconditionError):
            amg_resource_invariant_check(system)
        with self.assertRaises(PreconditionError):
            reversible_live_amg(system)

    def test_home_state_rejects_marked_paths(self):
        system = fixture('examg_left').system
        with self.assertRaises(PreconditionError):
            amg_home_state_check(system, (1, 2, 1, 2, 1, 0))


class AcceptanceCaseTests(SimpleTestCase):
    def test_cepramg_potential_marking_is_unreachable(self):
        system = fixture('cepramg_left').system
        target = (0, 0, 2, 0, 0, 1, 0)
        self.assertEqual(incidence(system.net).apply(system.m0, (2, 0, 2, 2, 2)), target)
        self.assertTrue(solve_state_equation(system, target).is_yes)
        verdict = is_reachable(system, target)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.details['method'], 'rg')

    def test_cepramg_reverse_is_not_live(self):
        report = lrb_report(fixture('cepramg_left').system)
        self.assertEqual(report.code(), 'LRB')
        self.assertTrue(report.reverse_live.is_no)
        self.assertTrue(report.code(reverse=True).startswith('¬L'))

    def test_extra_token_empties_siphon(self):
        system = fixture('ce2choice').system
        net = system.net
        marking = list(system.m0)
        marking[net.place_index('p3')] += 1
        reached = fire_sequence(net, tuple(marking), ['t3', 't1', 't5', 't3', 't2', 't1'])
        self.assertEqual(reached, (1, 0, 1, 0, 1, 0, 2, 1, 0, 0, 1))
        self.assertTrue(is_deadlocked_siphon(net, reached, ['p9', 'p10']))

    @pytest.mark.slow
    def test_siphon_emptying_marking_is_unreachable(self):
        system = fixture('ce2choice').system
        target = incidence(system.net).apply(system.m0, (2, 1, 2, 0, 1))
        self.assertEqual(target, (1, 0, 0, 0, 1, 0, 2, 1, 0, 0, 1))
        self.assertTrue(is_reachable(system, target).is_no)

    def test_initial_marking_lost_after_t2(self):
        system = fixture('ssystem_nonrev').system
        after = system.with_marking(fire(system.net, system.m0, 't2'))
        self.assertEqual(after.m0, (0, 1, 1))
        self.assertTrue(solve_state_equation(after, system.m0).is_yes)
        self.assertTrue(is_reachable(after, system.m0).is_no)
        verdict = prr_decide(after)
        self.assertTrue(verdict.is_not_equal)
        self.assertIn(system.m0, verdict.missing)

class ServiceTests(SimpleTestCase):
    def setUp(self):
        self.service = AnalysisService(use_cache=False)
        self.document = parse(FIG1)

    def test_live_picks_structural_method(self):
        report = self.service.run(AnalysisRequest('live', self.document))
        self.assertEqual(report.outcome, 'yes')
        self.assertEqual(report.summary, 'LIVE (wmg)')
        self.assertEqual(report.result['method'], 'wmg')

    def test_prr_witness_summary(self):
        report = self.service.run(AnalysisRequest('prr', fixture('deadwmg').document))
        self.assertEqual(report.outcome, 'NOT_EQUAL')
        self.assertEqual(report.summary, 'NOT EQUAL, witness (0,1), Y=(1)')

    def test_marking_overrides_initial_marking(self):
        report = self.service.run(AnalysisRequest('rg', self.document, marking='p1=0'))
        self.assertEqual(report.result['states'], 1)
        self.assertEqual(report.result['deadlocks'], [[0, 0, 0, 0]])

    def test_reach_summary(self):
        report = self.service.run(AnalysisRequest('reach', self.document, marking='p1=1,p3=2,p4=3'))
        self.assertEqual(report.summary, 'REACHABLE via t2 t1 t3')
        self.assertEqual(report.result['method'], 'state_equation')

    def test_invalid_requests(self):
        with self.assertRaises(AnalysisRequestError):
            self.service.run(AnalysisRequest('reach', self.document))
        with self.assertRaises(AnalysisRequestError):
            self.service.run(AnalysisRequest('nope', self.document))
        with self.assertRaises(AnalysisRequestError):
            self.service.run(AnalysisRequest('live', self.document, method='pcmg'))

    def test_cached_report(self):
        service = AnalysisService()
        request = AnalysisRequest('bounded', self.document)
        first = service.run(request, force_refresh=True)
        second = service.run(request)
        self.assertTrue(second.cached)
        self.assertEqual(first.as_dict(), second.as_dict())

    def test_jsonable(self):
        value = jsonable(Verdict.yes((1, 2), reason='ok', tags={'b', 'a'}))
        self.assertEqual(value['outcome'], 'yes')
        self.assertEqual(value['witness'], [1, 2])
        self.assertEqual(value['details']['tags'], ['a', 'b'])
        self.assertEqual(jsonable({(1, 2): 3}), {'1,2': 3})

    def test_verify_fixture(self):
        checks = verify_fixture(fixture('fig1'))
        self.assertTrue(all(check.ok for check in checks))
        self.assertIn('prr_rule', [check.name for check in checks])


class CliTests(SimpleTestCase):
    def setUp(self):
        self.path = str(fixture('fig1').path)

    def _run(self, *argv):
        out, err = StringIO(), StringIO()
        code = cli_main(list(argv) + ['--no-cache'], out, err)
        return code, out.getvalue(), err.getvalue()

    def test_live(self):
        code, out, _ = self._run('live', self.path)
        self.assertEqual(code, 0)
        self.assertEqual(out, 'fig1: LIVE (wmg)\n')

    def test_json_envelope(self):
        code, out, _ = self._run('bounded', self.path, '--json')
        self.assertEqual(code, 0)
        body = json.loads(out)
        self.assertEqual(body['schema_version'], 1)
        self.assertEqual(body['summary'], 'BOUNDED (k=4)')

    def test_usage_errors(self):
        self.assertEqual(self._run('live', '/no/existe.pnet')[0], 2)
        self.assertEqual(self._run('live', self.path, '--max-states', '0')[0], 2)
        self.assertEqual(self._run('volar', self.path)[0], 2)
        code, _, err = self._run('reach', self.path)
        self.assertEqual(code, 2)
        self.assertIn('error:', err)

    def test_unreadable_inputs_exit_with_usage_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            digits = Path(tmp) / 'digits.pnet'
            digits.write_text('net x\npl p \u00b2\ntr t : p -> p\n', encoding='utf-8')
            latin = Path(tmp) / 'latin.pnet'
            latin.write_bytes(b'# caf\xe9\npl p\ntr t : p -> p\n')
            for path in (digits, latin):
                code, _, err = self._run('validate', str(path))
                self.assertEqual(code, 2)
                self.assertIn('error:', err)

    def test_strict_unknown(self):
        path = str(fixture('deadwmg').path)
        code, _, _ = self._run('rg', path, '--marking', 'p0=1', '--max-states', '5', '--strict')
        self.assertEqual(code, 1)

    def test_fixture_listing(self):
        code, out, _ = self._run('fixtures')
        self.assertEqual(code, 0)
        self.assertIn('fig1', out)

    def test_fixture_check(self):
        code, out, _ = self._run('fixtures', 'fig1', '--check')
        self.assertEqual(code, 0)
        self.assertIn('0 discrepancias', out)


class AnalysisApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_live(self):
        res = self.client.post('/api/analysis/live/', {'net': FIG1}, format='json')
        self.assertEqual(res.status_code, 200)
        self.assertEqual(res.json()['summary'], 'LIVE (wmg)')

    def test_unknown_command(self):
        res = self.client.post('/api/analysis/volar/', {'net': FIG1}, format='json')
        self.assertEqual(res.status_code, 404)

    def test_parse_error(self):
        res = self.client.post('/api/analysis/live/', {'net': 'pl p\ntr t : p'}, format='json')
        self.assertEqual(res.status_code, 400)
        self.assertEqual(res.json()['type'], 'NetSyntaxError')

    def test_non_ascii_token_count(self):
        res = self.client.post('/api/analysis/validate/', {'net': 'pl p \u00b2\ntr t : p -> p'}, format='json')
        self.assertEqual(res.status_code, 400)
        self.assertEqual(res.json()['type'], 'NetSyntaxError')
