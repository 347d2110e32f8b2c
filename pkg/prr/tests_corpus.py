import pytest
from django.test import SimpleTestCase

from core.budgets import AnalysisBudget
from nets.corpus import fixtures
from structure.amg import check_amg

from .amg_checks import reversible_live_amg
from .services import verify_fixture

# ce2choice enumera PR sobre cinco transiciones
HEAVY = ('ce2choice',)


def _check(test, items, budget=None):
    for item in items:
        for check in verify_fixture(item, budget):
            with test.subTest(fixture=item.key, claim=check.name):
                test.assertEqual(check.actual, check.expected)
                test.assertTrue(check.ok)


class CorpusClaimTests(SimpleTestCase):
    def test_light_fixtures(self):
        _check(self, [item for item in fixtures() if item.key not in HEAVY], AnalysisBudget.from_settings())


@pytest.mark.slow
class HeavyCorpusClaimTests(SimpleTestCase):
    def test_heavy_fixtures(self):
        _check(self, [item for item in fixtures() if item.key in HEAVY])


@pytest.mark.slow
class LiveAmgReversibilityTests(SimpleTestCase):
    def test_live_amg_fixtures_are_reversible(self):
        for item in fixtures():
            if item.key in HEAVY or not check_amg(item.system).is_yes:
                continue
            verdict = reversible_live_amg(item.system)
            with self.subTest(fixture=item.key):
                self.assertFalse(verdict.is_no)
