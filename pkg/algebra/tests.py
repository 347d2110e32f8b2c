from fractions import Fraction

from django.test import SimpleTestCase

from core.budgets import AnalysisBudget, FeasibilityBudget
from nets.corpus import fixture
from nets.exceptions import MalformedSystemError
from nets.firing import fire_sequence

from .feasibility import integer_feasibility, rational_feasibility
from .matrices import incidence, integer_direction, nullspace
from .potential import enumerate_pr
from .semiflows import (
    conservativeness,
    consistency,
    is_p_semiflow,
    is_t_semiflow,
    minimal_p_semiflows,
    minimal_t_semiflows,
    one_conservative,
    structurally_bounded,
)
from .simplex import Constraint, ConstraintSystem, LpStatus, Sense, Variable, lp_solve, satisfies
from .state_equation import solve_state_equation
from .verdict import Outcome, Verdict


def _system(variables, constraints=(), objective=None):
    return ConstraintSystem(tuple(variables), tuple(constraints), objective)


class VerdictTests(SimpleTestCase):
    def test_constructors(self):
        self.assertTrue(Verdict.yes((1,)).is_yes)
        self.assertEqual(Verdict.no(reason='x').outcome, Outcome.NO)
        verdict = Verdict.unknown('presupuesto agotado', states=3)
        self.assertTrue(verdict.is_unknown)
        self.assertIsNone(verdict.witness)
        self.assertEqual(verdict.details['states'], 3)

    def test_negate(self):
        self.assertTrue(Verdict.yes().negate().is_no)
        self.assertTrue(Verdict.unknown('x').negate().is_unknown)


class IncidenceTests(SimpleTestCase):
    def setUp(self):
        self.net = fixture('fig1').document.net
        self.matrix = incidence(self.net)

    def test_entries(self):
        self.assertEqual(self.matrix.shape, (4, 3))
        self.assertEqual(self.matrix.column('t2'), (2, 1, -4, -3))
        self.assertEqual(self.matrix.row('p1'), (-1, 2, 0))
        self.assertEqual(self.matrix.entry('p4', 't3'), 3)

    def test_state_equation_agrees_with_firing(self):
        m0 = (0, 0, 4, 3)
        self.assertEqual(
            self.matrix.apply(m0, (1, 1, 1)),
            fire_sequence(self.net, m0, ['t2', 't1', 't3']),
        )
        self.assertEqual(self.matrix.weigh((2, 3, 1, 1)), (0, 0, 0))

    def test_exact_nullspace(self):
        basis = nullspace([[1, -2]], 2)
        self.assertEqual(basis, [(Fraction(2), Fraction(1))])
        self.assertEqual(integer_direction((Fraction(1, 2), Fraction(3, 4))), (2, 3))


class SemiflowTests(SimpleTestCase):
    def setUp(self):
        self.net = fixture('fig1').document.net

    def test_minimal_p_semiflows(self):
        search = minimal_p_semiflows(self.net)
        self.assertTrue(search.complete)
        self.assertEqual(search.vectors(), [(2, 0, 1, 0), (0, 3, 0, 1)])
        for vector in search.vectors():
            self.assertTrue(is_p_semiflow(self.net, vector))

    def test_minimal_t_semiflows(self):
        search = minimal_t_semiflows(self.net)
        self.assertEqual(search.vectors(), [(2, 1, 1)])
        self.assertTrue(is_t_semiflow(self.net, (2, 1, 1)))
        self.assertFalse(is_t_semiflow(self.net, (1, 1, 1)))

    def test_conservative_and_consistent(self):
        verdict = conservativeness(self.net)
        self.assertTrue(verdict.is_yes)
        self.assertEqual(verdict.witness, (2, 3, 1, 1))
        self.assertFalse(verdict.details['one_conservative'])
        self.assertFalse(one_conservative(self.net))
        self.assertEqual(consistency(self.net).witness, (2, 1, 1))
        self.assertTrue(structurally_bounded(self.net).is_yes)

    def test_growing_net(self):
        net = fixture('deadwmg').document.net
        self.assertTrue(conservativeness(net).is_no)
        self.assertTrue(consistency(net).is_no)
        verdict = structurally_bounded(net)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.witness, (1,))


class SimplexTests(SimpleTestCase):
    def test_optimum_is_exact(self):
        system = _system(
            [Variable('x', integer=False), Variable('y', integer=False)],
            [Constraint((Fraction(1), Fraction(1)), Sense.GE, Fraction(3, 2))],
            (Fraction(1), Fraction(1)),
        )
        result = lp_solve(system)
        self.assertEqual(result.status, LpStatus.OPTIMAL)
        self.assertEqual(result.objective_value, Fraction(3, 2))
        self.assertTrue(satisfies(system, result.values))

    def test_infeasible(self):
        system = _system([Variable('x')], [Constraint((Fraction(1),), Sense.LE, Fraction(-1))])
        self.assertEqual(lp_solve(system).status, LpStatus.INFEASIBLE)
        self.assertTrue(rational_feasibility(system).is_no)

    def test_unbounded(self):
        system = _system([Variable('x')], objective=(Fraction(-1),))
        self.assertEqual(lp_solve(system).status, LpStatus.UNBOUNDED)

    def test_malformed(self):
        system = _system([Variable('x')], [Constraint((Fraction(1), Fraction(1)), Sense.EQ, Fraction(0))])
        with self.assertRaises(MalformedSystemError):
            lp_solve(system)


class IntegerFeasibilityTests(SimpleTestCase):
    def test_parity_certified_no(self):
        system = _system([Variable('x')], [Constraint((Fraction(2),), Sense.EQ, Fraction(1))])
        verdict = integer_feasibility(system)
        self.assertTrue(verdict.is_no)

    def test_integer_point(self):
        system = _system(
            [Variable('x'), Variable('y')],
            [Constraint((Fraction(1), Fraction(1)), Sense.EQ, Fraction(3))],
        )
        verdict = integer_feasibility(system)
        self.assertTrue(verdict.is_yes)
        self.assertEqual(sum(verdict.witness), 3)
        self.assertTrue(all(isinstance(v, int) for v in verdict.witness))

    def test_artificial_bound_is_unknown(self):
        system = _system(
            [Variable('x'), Variable('y')],
            [Constraint((Fraction(2), Fraction(-2)), Sense.EQ, Fraction(1))],
        )
        verdict = integer_feasibility(system, FeasibilityBudget(max_component=4))
        self.assertTrue(verdict.is_unknown)
        self.assertIn('cota', verdict.reason)
        self.assertEqual(verdict.details['bound'], 4)


class StateEquationTests(SimpleTestCase):
    def setUp(self):
        self.system = fixture('fig1').system

    def test_minimal_vector(self):
        verdict = solve_state_equation(self.system, (1, 0, 2, 3))
        self.assertTrue(verdict.is_yes)
        self.assertEqual(verdict.witness, (1, 1, 1))

    def test_initial_marking(self):
        self.assertEqual(solve_state_equation(self.system, self.system.m0).witness, (0, 0, 0))

    def test_invariant_violation(self):
        self.assertTrue(solve_state_equation(self.system, (0, 0, 0, 0)).is_no)


class PotentialReachabilityTests(SimpleTestCase):
    def test_conservative_net_is_complete(self):
        system = fixture('fig1').system
        pr = enumerate_pr(system, budget=AnalysisBudget())
        self.assertTrue(pr.complete)
        self.assertEqual(len(pr), 6)
        self.assertIn((1, 0, 2, 3), pr)
        matrix = incidence(system.net)
        for marking in pr:
            self.assertEqual(matrix.apply(system.m0, pr.generator[marking]), marking)

    def test_growing_net_is_incomplete(self):
        pr = enumerate_pr(fixture('deadwmg').system, bound=3)
        self.assertFalse(pr.complete)
        self.assertIn((0, 3), pr)
        self.assertEqual(pr.generator[(0, 2)], (2,))
