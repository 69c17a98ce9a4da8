"""Tests for qh_alcove.qh and qh_alcove.qclass against the G2 tables."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from qh_alcove.errors import NotDivisorGenerated
from qh_alcove.grassmann import GrassmannEngine
from qh_alcove.qclass import QClass
from qh_alcove.qh import QhEngine, build_engine, format_poly, q, y
from qh_alcove.rootsys import build_root_system
from qh_alcove.weyl import min_coset_reps


def _cls(*terms: tuple[int, int, int]) -> QClass:
    """QClass from (index, q-degree, coefficient) triples."""
    return QClass({(i, d): c for i, d, c in terms})


# Upper triangles, keyed by (i, j) with i <= j; y_k has index k.
G2_P1 = {
    (1, 1): _cls((2, 0, 1)),
    (1, 2): _cls((3, 0, 2)),
    (1, 3): _cls((4, 0, 1)),
    (1, 4): _cls((5, 0, 1), (0, 1, 1)),
    (1, 5): _cls((1, 1, 1)),
    (2, 2): _cls((4, 0, 2)),
    (2, 3): _cls((5, 0, 1), (0, 1, 1)),
    (2, 4): _cls((1, 1, 2)),
    (2, 5): _cls((2, 1, 1)),
    (3, 3): _cls((1, 1, 1)),
    (3, 4): _cls((2, 1, 1)),
    (3, 5): _cls((3, 1, 1)),
    (4, 4): _cls((3, 1, 2)),
    (4, 5): _cls((4, 1, 1)),
    (5, 5): _cls((0, 2, 1)),
}

G2_P2 = {
    (1, 1): _cls((2, 0, 3)),
    (1, 2): _cls((3, 0, 2), (0, 1, 1)),
    (1, 3): _cls((4, 0, 3), (1, 1, 1)),
    (1, 4): _cls((5, 0, 1), (2, 1, 1)),
    (1, 5): _cls((3, 1, 1), (0, 2, 2)),
    (2, 2): _cls((4, 0, 2), (1, 1, 1)),
    (2, 3): _cls((5, 0, 1), (2, 1, 2)),
    (2, 4): _cls((3, 1, 1), (0, 2, 1)),
    (2, 5): _cls((4, 1, 1), (1, 2, 1)),
    (3, 3): _cls((3, 1, 2), (0, 2, 2)),
    (3, 4): _cls((4, 1, 1), (1, 2, 1)),
    (3, 5): _cls((2, 2, 2)),
    (4, 4): _cls((2, 2, 1)),
    (4, 5): _cls((3, 2, 1)),
    (5, 5): _cls((4, 2, 2)),
}


class TestQClass:
    def test_zero_terms_dropped(self):
        assert not QClass({(1, 0): 0})
        assert QClass({(1, 0): 1}) - QClass.basis(1) == QClass.zero()

    def test_pretty(self):
        assert _cls((5, 0, 1), (0, 1, 1)).pretty() == "y_5 + q"
        assert _cls((3, 1, 1), (0, 2, 2)).pretty() == "qy_3 + 2q^2"
        assert _cls((2, 0, -1)).pretty() == "-y_2"
        assert QClass.zero().pretty() == "0"

    def test_classical_part(self):
        assert _cls((5, 0, 1), (0, 1, 1)).classical() == QClass.basis(5)

    def test_to_json(self):
        assert QClass.basis(2, 1).scale(Fraction(1, 2)).to_json(["1", "a", "b"]) == [
            {"class": "b", "q_degree": 1, "coefficient": "1/2"}
        ]


class TestG2Tables:
    def test_c1(self, g2_p1, g2_p2):
        assert (g2_p1.c1, g2_p2.c1) == (5, 3)
        assert isinstance(g2_p1, QhEngine) and isinstance(g2_p2, QhEngine)

    def test_unit_row(self, g2_p1):
        for j in range(6):
            assert g2_p1.basis_product(0, j) == QClass.basis(j)

    @pytest.mark.parametrize("pair", sorted(G2_P1))
    def test_p1_table(self, g2_p1, pair):
        assert g2_p1.basis_product(*pair) == G2_P1[pair]

    @pytest.mark.parametrize("pair", sorted(G2_P2))
    def test_p2_table(self, g2_p2, pair):
        assert g2_p2.basis_product(*pair) == G2_P2[pair]

    def test_commutative(self, g2_p2):
        assert g2_p2.basis_product(2, 4) == g2_p2.basis_product(4, 2)

    def test_associative(self, g2_p2):
        a, b, c = (QClass.basis(i) for i in (1, 2, 4))
        assert g2_p2.star(g2_p2.star(a, b), c) == g2_p2.star(a, g2_p2.star(b, c))

    def test_full_table_upper_triangle(self, g2_p1):
        table = g2_p1.full_table()
        assert len(table) == 21
        assert table[(5, 5)] == G2_P1[(5, 5)]


class TestGiambelli:
    def test_p1(self, g2_p1):
        polys = g2_p1.giambelli_polynomials()
        expected = [1, y, y**2, y**3 / 2, y**4 / 2, y**5 / 2 - q]
        for k, poly in enumerate(expected):
            assert sympy.expand(polys[k] - poly) == 0

    def test_p2(self, g2_p2):
        polys = g2_p2.giambelli_polynomials()
        expected = [
            1,
            y,
            y**2 / 3,
            (y**3 - 3 * q) / 6,
            (y**4 - 9 * q * y) / 18,
            (y**5 - 15 * q * y**2) / 18,
        ]
        for k, poly in enumerate(expected):
            assert sympy.expand(polys[k] - poly) == 0

    def test_evaluate_reproduces_basis(self, g2_p2):
        for k, poly in g2_p2.giambelli_polynomials().items():
            assert g2_p2.evaluate(poly) == QClass.basis(k)


class TestPresentation:
    def test_p1(self, g2_p1):
        pres = g2_p1.presentation()
        assert pres.degree == 6
        assert sympy.expand(pres.rhs - 4 * q * y) == 0
        assert pres.text() == "y_1^6 = 4qy_1"
        assert pres.complete and pres.semisimple_at_q1

    def test_p2(self, g2_p2):
        # y_1 * y_5 = qy_3 + 2q^2 with the Giambelli forms gives 27q^2, not 9q^2
        pres = g2_p2.presentation()
        assert sympy.expand(pres.rhs - (18 * q * y**3 + 27 * q**2)) == 0
        assert pres.text() == "y_1^6 = 18qy_1^3 + 27q^2"
        assert pres.semisimple_at_q1

    def test_projective_plane(self, a2):
        pres = QhEngine(a2, min_coset_reps(a2, 0)).presentation()
        assert pres.text() == "y_1^3 = q"

    def test_format_poly_fraction(self):
        assert format_poly(y**2 / 3 - q) == "(1/3)y_1^2 - q"


class TestEngineSelection:
    def test_gr24_not_divisor_generated(self):
        rs = build_root_system("A", 3)
        with pytest.raises(NotDivisorGenerated):
            QhEngine(rs, min_coset_reps(rs, 1))

    def test_gr24_routes_to_grassmann(self):
        engine = build_engine(build_root_system("A", 3), 1)
        assert isinstance(engine, GrassmannEngine)
        assert engine.label == "Gr(2,4)"

    def test_projective_space_stays_divisor(self):
        assert isinstance(build_engine(build_root_system("A", 3), 0), QhEngine)

    def test_b3_grading(self):
        rs = build_root_system("B", 3)
        engine = build_engine(rs, 0)
        table = engine.full_table()
        assert len(table) == engine.size * (engine.size + 1) // 2


RINGS = {
    "G2/P_1": ("G", 2, 0),
    "G2/P_2": ("G", 2, 1),
    "Gr(2,4)": ("A", 3, 1),
    "Gr(2,5)": ("A", 4, 1),
}


@pytest.fixture(scope="module", params=sorted(RINGS))
def ring(request):
    family, rank, node = RINGS[request.param]
    engine = build_engine(build_root_system(family, rank), node)
    assert engine.label == request.param
    return engine, engine.full_table()


def _times(table: dict[tuple[int, int], QClass], cls: QClass, j: int) -> QClass:
    """cls * y_j read off the upper-triangle table."""
    result = QClass.zero()
    for (index, degree), coeff in cls:
        result = result + table[min(index, j), max(index, j)].scale(coeff, degree)
    return result


class TestProperties:
    def test_commutative(self, ring):
        engine, table = ring
        for i in range(engine.size):
            for j in range(i + 1, engine.size):
                assert engine.basis_product(j, i) == table[i, j]

    def test_associative(self, ring):
        engine, table = ring
        rng = random.Random(7)
        for _ in range(200):
            i, j, k = (rng.randrange(engine.size) for _ in range(3))
            left = _times(table, table[min(i, j), max(i, j)], k)
            right = _times(table, table[min(j, k), max(j, k)], i)
            assert left == right, (i, j, k)

    def test_nonnegative_integer_coefficients(self, ring):
        _, table = ring
        for product in table.values():
            for _, coeff in product:
                assert coeff > 0 and coeff.denominator == 1

    def test_poincare_pairing(self, ring):
        engine, table = ring
        point = engine.dual(0)
        assert engine.length(point) == engine.dim
        for i in range(engine.size):
            for j in range(engine.size):
                dual = engine.dual(j)
                product = table[min(i, dual), max(i, dual)]
                assert product.coefficient(point) == (1 if i == j else 0), (i, j)

    def test_grading_on_every_term(self, ring):
        engine, table = ring
        for (i, j), product in table.items():
            for (index, degree), _ in product:
                assert engine.length(index) + degree * engine.c1 == (
                    engine.length(i) + engine.length(j)
                )
