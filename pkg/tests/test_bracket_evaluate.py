import pathlib
import shutil
from unittest import TestCase

import numpy as np
from numpy.testing import assert_allclose

from pbnkit.engine import save_yaml
from pbnkit.exceptions import InvalidBracket, ImpossibleEvidence, SchemaError, NameResolutionError
from pbnkit.distribution import Variable, StateFunction
from pbnkit.network import BayesianNetwork, student_network, random_network
from pbnkit.bracket import (
    query,
    parse_query,
    evaluate,
    load_functions,
    INVALID_INSERTION,
    MEANINGLESS,
)

score = {"score": StateFunction(["I"], {("i0",): 2.0, ("i1",): 5.0})}
sat = {"sat": StateFunction(["S"], {("s0",): 0.0, ("s1",): 1.0})}


def numeric_sat_network():
    """N -> S, where the states of N are the numbers 0 and 1."""
    n = Variable("N", ["0", "1"])
    s = Variable("S", ["s0", "s1"])
    return BayesianNetwork.build(
        [n, s], parents={"S": ["N"]}, cpts={"N": [0.7, 0.3], "S": [0.95, 0.05, 0.2, 0.8]}, name="numeric_sat"
    )


class TestProbabilities(TestCase):
    def setUp(self):
        self.net = student_network()

    def test_marginal(self):
        result = query("P(G=g1)", self.net)

        self.assertTrue(result.is_scalar)
        self.assertAlmostEqual(float(result), 0.362, delta=1e-12)

    def test_intelligence_given_sat(self):
        self.assertAlmostEqual(query("P(I=i0 | S=s0)", self.net).value, 0.9172, delta=1e-4)
        self.assertAlmostEqual(query("P(I=i0 | S=s1)", self.net).value, 0.127, delta=5e-4)

    def test_conditional_table_is_normalized(self):
        result = query("P(G | I=i1, D=d0)", self.net)

        self.assertEqual(result.table.names, ("G",))
        assert_allclose(result.table.flat, [0.9, 0.08, 0.02], atol=1e-12)
        self.assertAlmostEqual(result.table.total(), 1.0, delta=1e-12)

        with self.assertRaises(TypeError):
            float(result)

    def test_omega(self):
        self.assertEqual(query("P(Omega | I=i1)", self.net).value, 1.0)
        self.assertEqual(query("P(Omega)", self.net).value, 1.0)

    def test_orthonormality(self):
        for variable in self.net.variables:
            for a in variable.states:
                for b in variable.states:
                    value = query(f"P({variable.name}={a} | {variable.name}={b})", self.net).value
                    self.assertAlmostEqual(value, 1.0 if a == b else 0.0, delta=1e-12)

    def test_impossible_evidence(self):
        net = self.net.with_cpt("D", [1.0, 0.0])

        with self.assertRaises(ImpossibleEvidence):
            query("P(L=l1 | D=d1)", net)
        with self.assertRaises(ImpossibleEvidence):
            query("P(Omega | D=d1)", net)


class TestInsertions(TestCase):
    def setUp(self):
        self.net = student_network()

    def test_sat_through_intelligence(self):
        self.assertAlmostEqual(query("P(S=s1 | [I] | Omega)", self.net).value, 0.275, delta=1e-12)

    def test_insertion_changes_nothing(self):
        direct = query("P(L=l1)", self.net).value
        conditional = query("P(L | I=i1)", self.net).table

        for name in self.net.names:
            with self.subTest(inserted=name):
                value = query(f"P(L=l1 | [{name}] | Omega)", self.net).value
                self.assertAlmostEqual(value, direct, delta=1e-12)

                table = query(f"P(L | [{name}] | I=i1)", self.net).table
                self.assertTrue(table.allclose(conditional, atol=1e-12))

    def test_insertion_changes_nothing_on_random_networks(self):
        rng = np.random.default_rng(3)

        for seed in range(25):
            net = random_network(4, seed=seed)
            target = net.names[int(rng.integers(len(net.names)))]
            state = net.variable(target).states[0]
            other = next(n for n in net.names if n != target)
            given = net.variable(other).states[-1]

            direct = query(f"P({target}={state})", net).value
            conditional = query(f"P({target} | {other}={given})", net).table

            for name in net.names:
                with self.subTest(net=net.name, target=target, inserted=name):
                    value = query(f"P({target}={state} | [{name}] | Omega)", net).value
                    self.assertAlmostEqual(value, direct, delta=1e-9)

                    table = query(f"P({target} | [{name}] | {other}={given})", net).table
                    self.assertTrue(table.allclose(conditional, atol=1e-9))

    def test_chains_and_blocks(self):
        direct = query("P(S=s1)", self.net).value

        for text in [
            "P(S=s1 | [G] | [I, D] | Omega)",
            "P(S=s1 | [I, D] | Omega)",
            "P(S=s1 | [L] | [G] | [I] | Omega)",
        ]:
            with self.subTest(text=text):
                self.assertAlmostEqual(query(text, self.net).value, direct, delta=1e-12)

    def test_invalid_is_refused(self):
        with self.assertRaises(InvalidBracket) as cm:
            query("P(I=i0 | [S] | I=i0)", self.net)
        self.assertEqual(cm.exception.report.classification, INVALID_INSERTION)

    def test_forced_chain_is_conditioned_on_its_neighbour(self):
        result = query("P(I=i0 | [S] | I=i0)", self.net, force=True)

        self.assertEqual(result.report.classification, INVALID_INSERTION)
        self.assertAlmostEqual(result.value, 0.8775, delta=1e-3)

        expected = 0.95 * (0.665 / 0.725) + 0.05 * (0.035 / 0.275)
        self.assertAlmostEqual(result.value, expected, delta=1e-12)

    def test_forced_invalid_differs_from_direct(self):
        forced = query("P(I=i0 | [S] | I=i1)", self.net, force=True).value
        direct = query("P(I=i0 | I=i1)", self.net).value

        self.assertEqual(direct, 0.0)
        self.assertGreater(abs(forced - direct), 0.01)


class TestOperators(TestCase):
    def setUp(self):
        self.net = student_network()

    def test_fixed_operator(self):
        self.assertAlmostEqual(query("P(S=s1 | score | I=i1)", self.net, score).value, 4.0, delta=1e-12)

    def test_free_targets(self):
        result = query("P(S | score | I=i1)", self.net, score)
        assert_allclose(result.table.flat, [1.0, 4.0], atol=1e-12)

    def test_omega_ket_sums_over_the_observable(self):
        value = query("P(S=s1 | score | Omega)", self.net, score).value
        self.assertAlmostEqual(value, 2 * 0.035 + 5 * 0.24, delta=1e-12)

    def test_variable_as_its_own_observable(self):
        net = numeric_sat_network()

        self.assertAlmostEqual(query("P(S=s1 | N | Omega)", net).value, 0.24, delta=1e-12)
        self.assertAlmostEqual(query("E[N]", net).value, 0.3, delta=1e-12)
        self.assertAlmostEqual(query("E[N | S=s1]", net).value, 0.24 / 0.275, delta=1e-12)

    def test_states_that_are_not_numbers_need_a_table(self):
        for text in ["P(I=i0 | S | S=s0)", "P(S=s1 | I | Omega)", "E[L | G=g1]"]:
            with self.subTest(text=text):
                with self.assertRaises(NameResolutionError):
                    query(text, self.net)

        self.assertAlmostEqual(query("P(I=i0 | sat | S=s1)", self.net, sat).value, 0.035 / 0.275, delta=1e-12)
        self.assertAlmostEqual(query("P(I=i0 | sat | S=s0)", self.net, sat).value, 0.0, delta=1e-12)

    def test_function_of_two_variables(self):
        gpa = {
            "gpa": StateFunction(
                ["G", "I"], {(g, i): float(k + 2 * j) for k, g in enumerate(["g1", "g2", "g3"]) for j, i in enumerate(["i0", "i1"])}
            )
        }
        value = query("P(L=l1 | gpa | G=g1, I=i1)", self.net, gpa).value
        self.assertAlmostEqual(value, 2.0 * 0.9, delta=1e-12)

    def test_meaningless(self):
        with self.assertRaises(InvalidBracket) as cm:
            query("P(I=i0 | sat | I=i1)", self.net, sat)
        self.assertEqual(cm.exception.report.classification, MEANINGLESS)

        forced = query("P(I=i0 | sat | I=i1)", self.net, sat, force=True)
        self.assertAlmostEqual(forced.value, 0.8 * 0.035 / 0.275, delta=1e-12)


class TestExpectation(TestCase):
    def setUp(self):
        self.net = student_network()

    def test_expectation(self):
        self.assertAlmostEqual(query("E[score]", self.net, score).value, 2.9, delta=1e-12)

        given = query("E[score | S=s1]", self.net, score).value
        self.assertAlmostEqual(given, 2 * 0.035 / 0.275 + 5 * 0.24 / 0.275, delta=1e-12)

    def test_expectation_over_a_subset(self):
        self.assertAlmostEqual(query("E[score | I in {i1}]", self.net, score).value, 5.0, delta=1e-12)

    def test_load_functions(self):
        tmpdir = (pathlib.Path(__file__) / "..").resolve() / "tmp_test_bracket_functions"
        tmpdir.mkdir(exist_ok=True)
        try:
            save_yaml(tmpdir / "functions.yml", {"score": score["score"].to_dict()})
            functions = load_functions(tmpdir / "functions.yml")
            self.assertAlmostEqual(query("E[score]", self.net, functions).value, 2.9, delta=1e-12)

            save_yaml(tmpdir / "broken.yml", {"score": {"table": []}})
            with self.assertRaises(SchemaError):
                load_functions(tmpdir / "broken.yml")
        finally:
            shutil.rmtree(tmpdir)


class TestMethods(TestCase):
    def test_engines_agree_with_the_joint(self):
        net = student_network()
        for text in ["P(I=i1 | G=g3)", "P(G)", "P(L | I=i0, D in {d0, d1})", "P(L=l1, G | S=s1)"]:
            reference = evaluate(parse_query(text), net)
            for method in ("enum", "ve"):
                with self.subTest(text=text, method=method):
                    result = evaluate(parse_query(text), net, method=method)
                    if reference.is_scalar:
                        self.assertAlmostEqual(result.value, reference.value, delta=1e-12)
                    else:
                        self.assertTrue(result.table.allclose(reference.table, atol=1e-12))

    def test_trace(self):
        trace = []
        result = evaluate(parse_query("P(L=l1)"), student_network(), method="ve", trace=trace)

        self.assertAlmostEqual(result.value, 0.502336, delta=1e-12)
        self.assertEqual([step.variable for step in trace], ["D", "I", "G"])

    def test_engines_skip_brackets_they_cannot_answer(self):
        result = query("P(S=s1 | [I] | Omega)", student_network(), method="ve")
        self.assertAlmostEqual(result.value, 0.275, delta=1e-12)


class TestFormatting(TestCase):
    def test_scalar(self):
        result = query("P(G=g1)", student_network())

        self.assertEqual(result.format(), "0.3620")
        self.assertEqual(result.format(precision=2), "0.36")
        self.assertEqual(result.to_rows(), (["value"], [["0.3620"]]))

    def test_table(self):
        result = query("P(G)", student_network())

        self.assertEqual(result.format(style="tsv"), "G\tP\ng1\t0.3620\ng2\t0.2884\ng3\t0.3496")
        self.assertEqual(result.format().splitlines()[0], "G   P")
        self.assertEqual(result.format().splitlines()[1], "g1  0.3620")
        self.assertTrue(np.isclose(result.table.total(), 1.0))
