from django.test import SimpleTestCase

from nets.corpus import fixture
from nets.exceptions import PcmgSpecError
from nets.parser import parse

from .amg import check_amg, verify_amg_witness
from .classes import classify, has_source_places, is_circuit, is_mg_le, shared_places
from .pcmg import (
    build_pcmg,
    graph_acyclic,
    load_pcmg,
    matches_spec,
    parse_pcmg,
    siphon_structure_check,
    validate_spec,
    well_structured,
)
from .siphons import (
    is_deadlocked_siphon,
    is_siphon,
    is_trap,
    max_siphon_in,
    minimal_siphons,
    minimal_traps,
)

COMPONENTS = {
    'left.pnet': "pl a 1\npl b 0\ntr x : a -> b\ntr y : b -> a\n",
    'right.pnet': "pl c 0\npl d 1\ntr z : c -> d\ntr q : d -> c\n",
}

PATH_SPEC = """
graph
v u
v v
v w
e e1 u v
e e2 v w
component e1 left.pnet a b
component e2 right.pnet c d
"""


def _load(name):
    return parse(COMPONENTS[name])


class ClassTests(SimpleTestCase):
    def test_fig1_is_weighted_marked_graph(self):
        report = classify(fixture('fig1').document.net)
        self.assertTrue(report.wmg_le)
        self.assertTrue(report.homogeneous)
        self.assertTrue(report.choice_free)
        self.assertFalse(report.ordinary)
        self.assertFalse(report.state_machine)
        self.assertEqual(report.k, 0)
        self.assertFalse(is_mg_le(fixture('fig1').document.net))
        self.assertTrue(is_mg_le(parse(COMPONENTS['left.pnet']).net))

    def test_shared_place(self):
        net = fixture('onechoicewmg').document.net
        report = classify(net)
        self.assertEqual(report.k, 1)
        self.assertTrue(report.h1s_wmg_le)
        self.assertEqual(shared_places(net), frozenset(report.shared_places))

    def test_choice_subclasses(self):
        report = classify(fixture('exsubclasses1_left').document.net)
        self.assertTrue(report.asymmetric_choice)
        self.assertFalse(report.free_choice)
        self.assertFalse(has_source_places(fixture('deadwmg').document.net))

    def test_circuit(self):
        self.assertTrue(is_circuit(parse(COMPONENTS['left.pnet']).net))
        self.assertFalse(is_circuit(fixture('fig1').document.net))


class SiphonTests(SimpleTestCase):
    def setUp(self):
        self.net = fixture('fig1').document.net

    def test_minimal_siphons_and_traps(self):
        expected = [frozenset({'p1', 'p3'}), frozenset({'p2', 'p4'})]
        self.assertEqual(minimal_siphons(self.net).sets(), expected)
        self.assertEqual(minimal_traps(self.net).sets(), expected)
        self.assertTrue(is_siphon(self.net, []))
        self.assertFalse(is_trap(self.net, ['p1']))

    def test_max_siphon(self):
        self.assertEqual(max_siphon_in(self.net, ['p1', 'p2', 'p3']), frozenset({'p1', 'p2', 'p3'}))
        self.assertEqual(max_siphon_in(self.net, ['p2', 'p3']), frozenset())
        self.assertEqual(max_siphon_in(self.net, ['p1']), frozenset())

    def test_deadlocked_siphon(self):
        self.assertFalse(is_deadlocked_siphon(self.net, (0, 0, 4, 3), ['p1', 'p3']))
        self.assertTrue(is_deadlocked_siphon(self.net, (0, 0, 3, 3), ['p1', 'p3']))


class AmgTests(SimpleTestCase):
    def test_witness(self):
        system = fixture('examg_left').system
        verdict = check_amg(system)
        self.assertTrue(verdict.is_yes)
        witness = verdict.witness
        self.assertEqual(witness.resources, ('p5',))
        self.assertEqual(witness.pairings['p5'], (('t1', 't3'), ('t2', 't4')))
        self.assertTrue(verify_amg_witness(system, witness))

    def test_marked_path_breaks_pairing(self):
        verdict = check_amg(fixture('examg_right').system)
        self.assertTrue(verdict.is_no)
        self.assertEqual(verdict.details['condition'], 'unmarked_paths')

    def test_weighted_net_is_not_amg(self):
        verdict = check_amg(fixture('fig1').system)
        self.assertEqual(verdict.details['condition'], 'ordinary')


class PcmgTests(SimpleTestCase):
    def setUp(self):
        self.spec = parse_pcmg(PATH_SPEC, _load)

    def test_build_merges_vertices(self):
        build = build_pcmg(self.spec)
        net = build.system.net
        self.assertEqual(net.places, ('u', 'v', 'w'))
        self.assertEqual(build.system.m0, (1, 0, 1))
        self.assertEqual(net.preset('v'), frozenset({'x', 'q'}))
        self.assertEqual(net.postset('v'), frozenset({'y', 'z'}))
        self.assertTrue(matches_spec(net, self.spec))

    def test_well_structured_path(self):
        report = well_structured(self.spec)
        self.assertTrue(report.well_structured)
        self.assertTrue(report.acyclic)

    def test_parallel_edges_are_cyclic(self):
        text = PATH_SPEC.replace("component e1", "e e3 u v\ncomponent e3 left.pnet a b\ncomponent e1")
        spec = parse_pcmg(text, _load)
        self.assertFalse(graph_acyclic(spec))

    def test_invalid_specs(self):
        with self.assertRaises(PcmgSpecError):
            validate_spec(parse_pcmg("graph\nv u\ne e1 u u\ncomponent e1 left.pnet a b\n", _load))
        with self.assertRaises(PcmgSpecError):
            parse_pcmg("graph\nv u\nv w\ne e1 u w\n", _load)
        with self.assertRaises(PcmgSpecError):
            validate_spec(parse_pcmg("graph\nv u\nv w\ne e1 u w\ncomponent e1 left.pnet a a\n", _load))

    def test_fixture_tree(self):
        item = fixture('pcmg_tree')
        spec = load_pcmg(item.pcmg_path)
        self.assertTrue(graph_acyclic(spec))
        self.assertTrue(matches_spec(item.document.net, spec))

    def test_cyclic_composition_breaks_siphon_structure(self):
        item = fixture('nonstruclive_triangle')
        verdict = siphon_structure_check(item.system, load_pcmg(item.pcmg_path))
        self.assertTrue(verdict.is_no)
        self.assertFalse(verdict.details['acyclic'])
