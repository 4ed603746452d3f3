import logging
from unittest import TestCase

import numpy as np

import pbnkit
from pbnkit.exceptions import FormatError
from pbnkit.network import student_network, random_network, joint_distribution
from pbnkit.formats.elvira import parse_elvira, write_elvira, fixed_point_rows

two_nodes = """
// a small network
bnet "tiny" {

node A (finite-states) {
states = ("a0" "a1");
}

node B (finite-states) {
states = ("b0" "b1");
}

link A B;

relation A {
values = table (0.5 0.5);
}

relation B A {
values = table (0.9 0.1 0.3 0.7);
}

}
"""


def replace(text, old, new):
    assert old in text
    return text.replace(old, new)


class TestRead(TestCase):
    def test_minimal(self):
        net = parse_elvira(two_nodes)

        self.assertEqual(net.name, "tiny")
        self.assertEqual(net.names, ("A", "B"))
        self.assertEqual(net.edges, (("A", "B"),))
        self.assertEqual(net.cpd("B", {"A": "a1"}), {"b0": 0.3, "b1": 0.7})

    def test_bytes(self):
        self.assertEqual(parse_elvira(two_nodes.encode("utf-8")).names, ("A", "B"))

        with self.assertRaises(FormatError):
            parse_elvira(b"bnet \xff {}")

    def test_comments_and_cosmetic_entries(self):
        text = """
        /* written by hand,
           over several lines */
        bnet tiny {
        title = "A tiny network";
        default node states = (present absent);
        visualprecision = "0.00";

        node A (finite-states) {
          kind-of-node = chance;
          type-of-variable = finite-states;
          pos_x = 120; pos_y = 80;
          comment = "first";
          states = (a0 a1);  // bare states
        }
        node B (finite-states) { states = ("b0", "b1"); }

        link A B;

        relation A { comment = ""; values = table (0.5 0.5); }
        relation B A {
          kind-of-relation = potential;
          deterministic = false;
          values = table (0.9 0.1
                          0.3 0.7);
        }
        }
        """
        with self.assertLogs("pbnkit", level="WARNING") as cm:
            net = parse_elvira(text)

        self.assertEqual(net.get_config(), parse_elvira(two_nodes).get_config())
        self.assertTrue(any("default node states" in line for line in cm.output))
        self.assertTrue(any("pos_y" in line for line in cm.output))

    def test_renormalizes_small_defects(self):
        text = replace(two_nodes, "0.9 0.1 0.3 0.7", "0.9 0.1000003 0.3 0.7")

        with self.assertLogs("pbnkit", level="WARNING"):
            net = parse_elvira(text)
        self.assertAlmostEqual(sum(net.cpd("B", {"A": "a0"}).values()), 1.0, delta=1e-12)

    def test_rejects_large_defects(self):
        text = replace(two_nodes, "0.9 0.1 0.3 0.7", "0.9 0.1 0.3 0.8")

        with self.assertRaises(FormatError) as cm:
            parse_elvira(text)
        self.assertEqual(cm.exception.node, "B")
        self.assertIn("Row 1", str(cm.exception))


class TestErrors(TestCase):
    def check(self, text, node=None, line=None, fragment=None):
        with self.assertRaises(FormatError) as cm:
            parse_elvira(text)
        if node is not None:
            self.assertEqual(cm.exception.node, node, msg=str(cm.exception))
        if line is not None:
            self.assertEqual(cm.exception.line, line, msg=str(cm.exception))
        if fragment is not None:
            self.assertIn(fragment, str(cm.exception))
        return cm.exception

    def test_wrong_number_of_values(self):
        text = write_elvira(student_network())
        lines = text.splitlines()
        i = lines.index("relation G {")
        lines[i + 1] = "values = table (0.3 0.4 0.3 0.05 0.25);"

        error = self.check("\n".join(lines), node="G", line=i + 1, fragment="5 values")
        self.assertIn("expected 12", str(error))

    def test_missing_relation(self):
        text = replace(two_nodes, "relation A {\nvalues = table (0.5 0.5);\n}\n", "")
        self.check(text, node="A", fragment="no relation")

    def test_relation_parents_must_match_links(self):
        text = replace(two_nodes, "link A B;", "")
        self.check(text, node="B", fragment="lists parents")

    def test_link_to_undeclared_node(self):
        self.check(replace(two_nodes, "link A B;", "link A C;"), node="C", line=13)

    def test_relation_for_undeclared_node(self):
        text = replace(two_nodes, "}\n\n}", "}\n\nrelation C {\nvalues = table (1.0);\n}\n\n}")
        self.check(text, node="C")

    def test_cycle(self):
        text = replace(two_nodes, "link A B;", "link A B;\nlink B A;")
        text = replace(text, "relation A {", "relation A B {")
        text = replace(text, "values = table (0.5 0.5);", "values = table (0.5 0.5 0.5 0.5);")
        self.check(text, fragment="cycle")

    def test_syntax(self):
        self.check(replace(two_nodes, "link A B;", "link A B @"), line=13, fragment="'@'")
        self.check(replace(two_nodes, "link A B;", "/* link A B;"), line=13, fragment="Unterminated comment")
        self.check(replace(two_nodes, '"tiny"', '"tiny'), line=3, fragment="Unterminated string")
        self.check(replace(two_nodes, "0.9 0.1", "0.9 x"), node="B", fragment="Expected a number")
        self.check(two_nodes + "bnet", fragment="end of file")
        self.check("", line=1)

    def test_nodes(self):
        self.check(replace(two_nodes, '("b0" "b1")', '("b0" "b0")'), node="B", fragment="duplicate")
        self.check(replace(two_nodes, "node B (finite-states)", "node B (continuous)"), node="B")
        self.check(replace(two_nodes, '"a0" "a1"', ""), node="A", fragment="no states")
        self.check(replace(two_nodes, "node B", "node A"), node="A", fragment="twice")

    def test_invalid_numbers(self):
        self.check(replace(two_nodes, "0.5 0.5", "1e999 0.5"), node="A", fragment="invalid")
        self.check(replace(two_nodes, "0.5 0.5", "1.5 -0.5"), node="A", fragment="invalid")


class TestWrite(TestCase):
    def test_student_roundtrip_is_exact(self):
        net = student_network()
        again = parse_elvira(write_elvira(net))

        self.assertEqual(again.get_config(), net.get_config())

    def test_random_networks(self):
        for seed in range(100):
            net = random_network(5, max_card=3, seed=seed)
            again = parse_elvira(write_elvira(net))

            self.assertEqual(again.names, net.names)
            self.assertEqual(again.edges, net.edges)
            self.assertTrue(
                joint_distribution(again).allclose(joint_distribution(net), atol=1e-6),
                msg=net.name,
            )

    def test_fixed_point_rows_sum_to_one(self):
        units = fixed_point_rows([1 / 3, 1 / 3, 1 / 3, 0.1, 0.2, 0.7], 3)

        self.assertEqual(units.sum(axis=1).tolist(), [10 ** 6, 10 ** 6])
        self.assertEqual(units[0].tolist(), [333334, 333333, 333333])

    def test_quoting(self):
        net = student_network().subnetwork(["I", "S"], name="intelligence and sat")
        text = write_elvira(net)

        self.assertIn('bnet "intelligence and sat" {', text)
        self.assertIn('states = ("i0" "i1");', text)
        self.assertIn("link I S;", text)
        self.assertEqual(parse_elvira(text).name, "intelligence and sat")

        with self.assertRaises(FormatError):
            write_elvira(student_network().subnetwork(["I"], name='say "hi"'))


class TestFuzz(TestCase):
    """Mangled files must fail with FormatError and nothing else."""

    def setUp(self):
        pbnkit.logger.setLevel(logging.ERROR)

    def tearDown(self):
        pbnkit.logger.setLevel(logging.INFO)

    def mutations(self, rng, n):
        seeds = [two_nodes, write_elvira(student_network())]
        alphabet = list(b'{}()=;,"/*\n abcdefgh0123456789.-e') + [0xFF, 0xC3]

        for _ in range(n):
            data = bytearray(seeds[int(rng.integers(len(seeds)))].encode("utf-8"))
            for _ in range(int(rng.integers(1, 8))):
                op = int(rng.integers(4))
                at = int(rng.integers(len(data) + 1))
                if op == 0 and data:
                    del data[min(at, len(data) - 1)]
                elif op == 1:
                    data.insert(at, alphabet[int(rng.integers(len(alphabet)))])
                elif op == 2:
                    data = data[:at]
                elif data:
                    at = min(at, len(data) - 1)
                    data[at] = alphabet[int(rng.integers(len(alphabet)))]
            yield bytes(data[:4096])

    def test_mutations(self):
        rng = np.random.default_rng(0)
        parsed = 0

        for data in self.mutations(rng, 9000):
            try:
                parse_elvira(data)
                parsed += 1
            except FormatError:
                pass

        self.assertGreater(parsed, 0)

    def test_random_bytes(self):
        rng = np.random.default_rng(1)

        for _ in range(1000):
            data = rng.integers(0, 256, size=int(rng.integers(0, 4097)), dtype=np.uint8).tobytes()
            with self.assertRaises(FormatError):
                parse_elvira(data)
