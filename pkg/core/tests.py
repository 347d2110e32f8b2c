from django.test import SimpleTestCase, override_settings
from rest_framework.test import APIClient

from nets.exceptions import PreconditionError

from .budgets import AnalysisBudget, ExplorationBudget, FeasibilityBudget, resolve_budget
from .cache import ReportCache, report_cache_key
from .monitoring import metrics_collector, monitor_function


class BudgetTests(SimpleTestCase):
    def test_defaults_without_settings_block(self):
        budget = AnalysisBudget()
        self.assertEqual(budget.feasibility.max_component, 64)
        self.assertEqual(budget.pr_bound, 8)
        self.assertIsNone(budget.exploration.max_token_bound)

    def test_overrides(self):
        budget = AnalysisBudget().with_overrides(max_states=50, y_bound=5, token_bound=3)
        self.assertEqual(budget.exploration.max_states, 50)
        self.assertEqual(budget.exploration.max_token_bound, 3)
        self.assertEqual(budget.feasibility.max_component, 5)
        self.assertEqual(budget.pr_bound, 5)
        self.assertEqual(budget.as_dict()['y_bound'], 5)

    def test_invalid_budgets(self):
        with self.assertRaises(ValueError):
            ExplorationBudget(max_states=0)
        with self.assertRaises(ValueError):
            FeasibilityBudget(max_component=-1)

    @override_settings(ANALYSIS={'EXPLORATION': {'MAX_STATES': 7}, 'PR_BOUND': 3})
    def test_from_settings(self):
        budget = resolve_budget(None)
        self.assertEqual(budget.exploration.max_states, 7)
        self.assertEqual(budget.pr_bound, 3)
        self.assertEqual(budget.feasibility.max_nodes, 20000)


class CacheTests(SimpleTestCase):
    def test_key_is_deterministic(self):
        first = report_cache_key('live', {'net': 'x', 'method': 'auto'})
        second = report_cache_key('live', {'method': 'auto', 'net': 'x'})
        self.assertEqual(first, second)
        self.assertTrue(first.startswith('report_live_'))
        self.assertNotEqual(first, report_cache_key('live', {'net': 'y', 'method': 'auto'}))

    def test_report_cache(self):
        key = report_cache_key('test', {'n': 1})
        ReportCache.set(key, {'outcome': 'yes'})
        self.assertEqual(ReportCache.get(key), {'outcome': 'yes'})
        ReportCache.delete(key)
        self.assertIsNone(ReportCache.get(key))


class MonitoringTests(SimpleTestCase):
    def test_decorator_records_outcome(self):
        @monitor_function('doble')
        def doble(x):
            return 2 * x

        before = metrics_collector.analyses_total.labels(operation='doble', outcome='done')._value.get()
        self.assertEqual(doble(2), 4)
        after = metrics_collector.analyses_total.labels(operation='doble', outcome='done')._value.get()
        self.assertEqual(after, before + 1)

    def test_decorator_reraises(self):
        @monitor_function('falla')
        def falla():
            raise KeyError('x')

        with self.assertLogs('monitoring', level='WARNING') as logs, self.assertRaises(KeyError):
            falla()
        self.assertEqual(logs.records[-1].levelname, 'ERROR')

    def test_domain_errors_log_as_warning(self):
        @monitor_function('precondicion')
        def precondicion():
            raise PreconditionError('precondicion', 'la red no es WMG≤')

        with self.assertLogs('monitoring', level='WARNING') as logs, self.assertRaises(PreconditionError):
            precondicion()
        self.assertEqual([r.levelname for r in logs.records], ['WARNING'])


class HealthTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_health(self):
        res = self.client.get('/api/health/')
        self.assertEqual(res.status_code, 200)
        body = res.json()
        self.assertEqual(body['status'], 'healthy')
        self.assertEqual(body['budgets']['max_states'], AnalysisBudget.from_settings().exploration.max_states)

    def test_metrics(self):
        res = self.client.get('/metrics')
        self.assertEqual(res.status_code, 200)
        self.assertIn(b'pnet_analyses_total', res.content)

    @override_settings(MONITORING={'ENABLED': False})
    def test_metrics_disabled(self):
        self.assertEqual(self.client.get('/metrics').status_code, 404)
