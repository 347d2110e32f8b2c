import tempfile
from pathlib import Path

from django.test import SimpleTestCase
from rest_framework.test import APIClient

from .corpus import fixture, fixtures
from .exceptions import (
    DimensionError,
    DuplicateIdError,
    InvalidNetError,
    NetSyntaxError,
    NotEnabledAtStepError,
    NotEnabledError,
    OverlappingMergeError,
    UnknownFixtureError,
    UnknownIdError,
    UnknownNodeError,
    ZeroWeightError,
)
from .firing import enabled_transitions, fire, fire_sequence, is_deadlock, is_feasible, trace
from .net import Net, System, format_marking, marking_from_mapping
from .parser import load, parse, parse_marking, serialize
from .sequences import format_sequence, parikh, residue, residue_tvector, reverse_sequence
from .testing import choice_free, random_sequence, weighted_circuit, weighted_marked_graph
from .transform import merge_places, merge_system, p_subnet, reverse_net, reverse_system, t_subnet, t_subsystem

FIG1 = """
# sistema vivo, 4-acotado y reversible
net fig1
pl p1 0
pl p2 0
pl p3 4
pl p4 3
tr t1 : p1 -> p3*2
tr t2 : p3*4 p4*3 -> p1*2 p2
tr t3 : p2 -> p4*3
"""


class NetTests(SimpleTestCase):
    def setUp(self):
        self.net = parse(FIG1).net

    def test_presets_and_weights(self):
        self.assertEqual(self.net.places, ('p1', 'p2', 'p3', 'p4'))
        self.assertEqual(self.net.weight('p3', 't2'), 4)
        self.assertEqual(self.net.weight('t2', 'p3'), 0)
        self.assertEqual(self.net.preset('t2'), frozenset({'p3', 'p4'}))
        self.assertEqual(self.net.postset('p1'), frozenset({'t1'}))

    def test_unknown_node(self):
        with self.assertRaises(UnknownNodeError):
            self.net.preset('x')

    def test_invalid_arcs_rejected(self):
        with self.assertRaises(InvalidNetError):
            Net(['p'], ['t'], {('p', 'p'): 1})
        with self.assertRaises(InvalidNetError):
            Net(['p'], ['t'], {('p', 't'): 0})
        with self.assertRaises(InvalidNetError):
            Net(['x'], ['x'], {})

    def test_equality_ignores_name(self):
        self.assertEqual(self.net, self.net.renamed('otra'))
        self.assertEqual(hash(self.net), hash(self.net.renamed('otra')))

    def test_system_checks_marking(self):
        with self.assertRaises(DimensionError):
            System(self.net, (0, 0))
        with self.assertRaises(InvalidNetError):
            System(self.net, (0, 0, -1, 0))

    def test_sparse_markings(self):
        marking = marking_from_mapping(self.net, {'p3': 2, 'p1': 1})
        self.assertEqual(marking, (1, 0, 2, 0))
        self.assertEqual(format_marking(self.net, marking), 'p1=1,p3=2')
        self.assertEqual(parse_marking(self.net, 'p1=1, p3=2'), marking)


class ParserTests(SimpleTestCase):
    def test_parse_document(self):
        document = parse(FIG1)
        self.assertEqual(document.name, 'fig1')
        self.assertEqual(document.m0, (0, 0, 4, 3))
        self.assertEqual(document.net.transitions, ('t1', 't2', 't3'))

    def test_serialize_is_reparsable(self):
        document = parse(FIG1)
        text = serialize(document)
        self.assertIn('tr t2 : p3*4 p4*3 -> p1*2 p2', text)
        self.assertEqual(parse(text).net, document.net)
        self.assertEqual(parse(text).m0, document.m0)

    def test_zero_weight_position(self):
        with self.assertRaises(ZeroWeightError) as ctx:
            parse("pl p\npl q\ntr t : p*0 -> q")
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.column, 8)

    def test_undeclared_place(self):
        with self.assertRaises(UnknownIdError) as ctx:
            parse("pl p\ntr t : p -> q")
        self.assertEqual(ctx.exception.line, 2)

    def test_duplicate_identifier(self):
        with self.assertRaises(DuplicateIdError):
            parse("pl p\npl p\ntr t : p -> p")

    def test_missing_arrow(self):
        with self.assertRaises(NetSyntaxError):
            parse("pl p\ntr t : p")

    def test_no_transitions(self):
        with self.assertRaises(NetSyntaxError):
            parse("pl p 1")

    def test_bad_marking_text(self):
        net = parse(FIG1).net
        with self.assertRaises(UnknownIdError):
            parse_marking(net, 'px=1')
        with self.assertRaises(NetSyntaxError):
            parse_marking(net, 'p1')

    def test_non_ascii_digits_are_syntax_errors(self):
        with self.assertRaises(NetSyntaxError) as ctx:
            parse("net x\npl p \u00b2\ntr t : p -> p\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 6))
        with self.assertRaises(NetSyntaxError):
            parse_marking(parse(FIG1).net, 'p1=\u00b2')

    def test_invalid_utf8_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'cafe.pnet'
            path.write_bytes(b'pl p 1\n# caf\xe9\ntr t : p -> p\n')
            with self.assertRaises(NetSyntaxError) as ctx:
                load(path)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 6))
        self.assertIn('0xe9', ctx.exception.message)


class FiringTests(SimpleTestCase):
    def setUp(self):
        self.system = parse(FIG1).system
        self.net = self.system.net

    def test_only_t2_enabled_initially(self):
        self.assertEqual(enabled_transitions(self.net, self.system.m0), ('t2',))
        self.assertEqual(fire(self.net, self.system.m0, 't2'), (2, 1, 0, 0))

    def test_not_enabled_reports_place(self):
        with self.assertRaises(NotEnabledError) as ctx:
            fire(self.net, self.system.m0, 't1')
        self.assertEqual(ctx.exception.place, 'p1')

    def test_sequence_returns_to_initial_marking(self):
        sequence = ['t2', 't1', 't1', 't3']
        self.assertEqual(fire_sequence(self.net, self.system.m0, sequence), self.system.m0)
        self.assertEqual(trace(self.net, self.system.m0, sequence)[2], (1, 1, 2, 0))

    def test_failing_step(self):
        with self.assertRaises(NotEnabledAtStepError) as ctx:
            fire_sequence(self.net, self.system.m0, ['t2', 't2'])
        self.assertEqual(ctx.exception.step, 1)
        self.assertFalse(is_feasible(self.net, self.system.m0, ['t3']))

    def test_deadlock(self):
        self.assertTrue(is_deadlock(self.net, (0, 0, 0, 0)))
        self.assertFalse(is_deadlock(self.net, self.system.m0))


class SequenceTests(SimpleTestCase):
    def test_residues(self):
        self.assertEqual(''.join(residue('acbcacbc', 'abbcb')), 'cacc')
        self.assertEqual(''.join(residue('abbcb', 'acbcacbc')), 'b')
        self.assertEqual(residue((), 'abc'), ())

    def test_residue_by_vector(self):
        net = parse(FIG1).net
        self.assertEqual(residue_tvector(net, ['t2', 't1', 't1', 't3'], (1, 1, 0)), ('t1', 't3'))

    def test_parikh_and_formatting(self):
        net = parse(FIG1).net
        self.assertEqual(parikh(net, ['t2', 't1', 't1', 't3']), (2, 1, 1))
        self.assertEqual(reverse_sequence(['t1', 't2']), ('t2', 't1'))
        self.assertEqual(format_sequence(()), 'ε')
        self.assertEqual(format_sequence(('t1', 't2')), 't1 t2')


class TransformTests(SimpleTestCase):
    def setUp(self):
        self.system = parse(FIG1).system
        self.net = self.system.net

    def test_reverse_is_involution(self):
        reversed_net = reverse_net(self.net)
        self.assertEqual(reversed_net.weight('t2', 'p3'), 4)
        self.assertEqual(reversed_net.name, '-fig1')
        self.assertEqual(reverse_net(reversed_net), self.net)
        self.assertEqual(reverse_system(self.system).m0, self.system.m0)

    def test_subnets(self):
        sub = p_subnet(self.net, ['p1'])
        self.assertEqual(sub.places, ('p1',))
        self.assertEqual(set(sub.transitions), {'t1', 't2'})
        sub = t_subnet(self.net, ['t3'])
        self.assertEqual(set(sub.places), {'p2', 'p4'})

    def test_t_subsystem_keeps_marking(self):
        system = t_subsystem(fixture('fig2_left').system, ['t2'])
        expected = fixture('fig2_mid').system
        self.assertEqual(system.net.transitions, ('t2',))
        self.assertEqual(set(system.net.places), set(expected.net.places))
        self.assertEqual(system.m0, expected.m0)

    def test_merge_sums_weights_and_tokens(self):
        merged, mapping = merge_system(self.system, [['p1', 'p3']])
        self.assertEqual(merged.net.places, ('p1+p3', 'p2', 'p4'))
        self.assertEqual(merged.m0, (4, 0, 3))
        self.assertEqual(merged.net.weight('p1+p3', 't2'), 4)
        self.assertEqual(merged.net.weight('t2', 'p1+p3'), 2)
        self.assertEqual(mapping['p3'], 'p1+p3')

    def test_overlapping_merge(self):
        with self.assertRaises(OverlappingMergeError):
            merge_places(self.net, [['p1', 'p2'], ['p2', 'p3']])


class GeneratorTests(SimpleTestCase):
    def test_generators_are_deterministic(self):
        self.assertEqual(weighted_circuit(7).net, weighted_circuit(7).net)
        self.assertEqual(weighted_marked_graph(3).m0, weighted_marked_graph(3).m0)

    def test_random_sequences_are_feasible(self):
        for seed in range(10):
            system = choice_free(seed)
            sequence = random_sequence(system, seed)
            self.assertTrue(is_feasible(system.net, system.m0, sequence))


class CorpusTests(SimpleTestCase):
    def test_every_claimed_fixture_exists(self):
        keys = {item.key for item in fixtures()}
        self.assertIn('fig1', keys)
        self.assertIn('pcmg_tree', keys)

    def test_fixture_claims(self):
        item = fixture('fig1')
        self.assertEqual(item.expected.states, 6)
        self.assertEqual(item.system.m0, (0, 0, 4, 3))
        self.assertIsNone(item.pcmg_path)
        self.assertTrue(fixture('pcmg_tree').pcmg_path.exists())

    def test_unknown_claim_and_fixture(self):
        with self.assertRaises(AttributeError):
            fixture('fig1').expected.nonexistent
        with self.assertRaises(UnknownFixtureError):
            fixture('nope')


class FixtureApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_list(self):
        res = self.client.get('/api/fixtures/')
        self.assertEqual(res.status_code, 200)
        self.assertIn('fig1', [row['key'] for row in res.json()])

    def test_detail(self):
        res = self.client.get('/api/fixtures/fig1/')
        self.assertEqual(res.status_code, 200)
        body = res.json()
        self.assertEqual(body['claims']['states']['value'], 6)
        self.assertIn('net fig1', body['text'])

    def test_unknown(self):
        res = self.client.get('/api/fixtures/nope/')
        self.assertEqual(res.status_code, 404)
        self.assertEqual(res.json()['type'], 'UnknownFixtureError')
