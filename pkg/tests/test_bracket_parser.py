from unittest import TestCase

from pbnkit.exceptions import QuerySyntaxError, DuplicateVariable
from pbnkit.distribution import EventSet
from pbnkit.bracket import (
    parse_query,
    to_text,
    BracketExpression,
    Term,
    PROBABILITY,
    EXPECTATION,
    OPERATOR,
)


class TestParse(TestCase):
    def test_conditional(self):
        expr = parse_query("P(I=i1 | G=g3)")

        self.assertEqual(expr.kind, PROBABILITY)
        self.assertEqual(expr.targets, (Term("I", "i1"),))
        self.assertEqual(expr.evidence, (EventSet.point("G", "g3"),))
        self.assertEqual(expr.free_names, ())

    def test_free_targets_and_sets(self):
        expr = parse_query("P(L, G | I=i0, D in {d0, d1})")

        self.assertEqual(expr.free_names, ("L", "G"))
        self.assertEqual(expr.evidence[1], EventSet("D", ("d0", "d1")))

    def test_whitespace_is_insignificant(self):
        self.assertEqual(parse_query("P(I=i0|[S]|I=i1)"), parse_query(" P( I = i0 | [ S ] | I = i1 ) "))

    def test_insertions(self):
        expr = parse_query("P(S=s1 | [I] | [D, G] | Omega)")

        self.assertEqual(expr.insertions, (("I",), ("D", "G")))
        self.assertEqual(expr.inserted_names, ("I", "D", "G"))
        self.assertTrue(expr.is_omega_ket)

    def test_omega(self):
        self.assertEqual(parse_query("P(Omega | I=i1)").targets, ())
        self.assertEqual(parse_query("P(Omega)"), BracketExpression(PROBABILITY))
        self.assertTrue(parse_query("P(G | Omega)").is_omega_ket)

    def test_operator(self):
        expr = parse_query("P(I=i0 | S | S=s1)")

        self.assertEqual(expr.kind, OPERATOR)
        self.assertEqual(expr.operator, "S")
        self.assertEqual(expr.evidence, (EventSet.point("S", "s1"),))

        self.assertTrue(parse_query("P(I=i0 | S | Omega)").is_omega_ket)

    def test_expectation(self):
        expr = parse_query("E[score | S in {s1}]")

        self.assertEqual(expr.kind, EXPECTATION)
        self.assertEqual(expr.operator, "score")
        self.assertEqual(expr.evidence, (EventSet("S", ("s1",)),))
        self.assertEqual(parse_query("E[score | Omega]"), parse_query("E[score]"))

    def test_bound_target_may_meet_the_ket(self):
        expr = parse_query("P(I=i0 | I=i1)")
        self.assertEqual(expr.bound, {"I": "i0"})


class TestErrors(TestCase):
    def check_offset(self, text, offset, error=QuerySyntaxError):
        with self.assertRaises(error) as cm:
            parse_query(text)
        self.assertEqual(cm.exception.offset, offset, msg=str(cm.exception))

    def test_offsets(self):
        self.check_offset("Q(I)", 0)
        self.check_offset("P(I=i0 | )", 9)
        self.check_offset("P(I=i0 $)", 7)
        self.check_offset("P(I=i0", 6)
        self.check_offset("P(I=i0) extra", 8)
        self.check_offset("P(L | G in g1)", 8)
        self.check_offset("P(L | [S])", 9)

    def test_offsets_are_bytes(self):
        self.check_offset("P(\u00a0Ä)", 4)
        self.check_offset("P(I=i0 | Ä)", 9)

    def test_omega_stands_alone(self):
        self.check_offset("P(I, Omega)", 5)

    def test_operator_ket_not_in_expectation(self):
        self.check_offset("E[F | S | S=s1]", 8)

    def test_duplicates(self):
        for text in [
            "P(I, I)",
            "P(L | I=i0, I=i1)",
            "P(I | I=i0)",
            "P(L | [S, S] | I=i0)",
            "P(L | D in {d0, d0})",
        ]:
            with self.subTest(text=text):
                with self.assertRaises(DuplicateVariable):
                    parse_query(text)

    def test_not_text(self):
        with self.assertRaises(QuerySyntaxError):
            parse_query(b"P(I)")


class TestPrint(TestCase):
    def test_canonical_text(self):
        cases = {
            "P(I=i0|[S]|I=i1)": "P(I=i0 | [S] | I=i1)",
            "P(S=s1|[I])": None,
            "P(S=s1|[I]|Omega)": "P(S=s1 | [I] | Omega)",
            "P(Omega)": "P(Omega)",
            "P(G|Omega)": "P(G)",
            "P(A|Y|Omega)": "P(A | Y | Omega)",
            "P(L|G in {g1,g2})": "P(L | G in {g1, g2})",
            "E[F|Omega]": "E[F]",
        }
        for text, expected in cases.items():
            with self.subTest(text=text):
                if expected is None:
                    with self.assertRaises(QuerySyntaxError):
                        parse_query(text)
                else:
                    self.assertEqual(to_text(parse_query(text)), expected)

    def test_roundtrip(self):
        for text in [
            "P(I=i1 | G=g3)",
            "P(L, G | I=i0, D in {d0, d1})",
            "P(S=s1 | [I] | [D, G] | Omega)",
            "P(I=i0 | S | S=s1)",
            "P(Omega | I=i1)",
            "E[score | S in {s0, s1}]",
        ]:
            with self.subTest(text=text):
                expr = parse_query(text)
                self.assertEqual(str(expr), text)
                self.assertEqual(parse_query(str(expr)), expr)
