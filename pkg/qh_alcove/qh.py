"""Small quantum cohomology of G/P (P maximal) through the quantum Chevalley rule.

The divisor table is computed once per engine. Every other Schubert class is
written as a polynomial in the divisor class y and q (Giambelli expressions),
solved codegree by codegree; products then reduce to repeated divisor
multiplication.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from qh_alcove.errors import InternalAssertion, NotDivisorGenerated
from qh_alcove.grassmann import GrassmannEngine
from qh_alcove.qclass import QClass, SchubertRing
from qh_alcove.rational import format_rational
from qh_alcove.rootsys import RootSystem, c1_of_parabolic, omega_pairing
from qh_alcove.weyl import DEFAULT_GROUP_LIMIT, CosetBasis, CosetRep, coset_of, min_coset_reps
from qh_alcove.weyl import reflection as weyl_reflection

logger = logging.getLogger(__name__)

y, q = sympy.symbols("y q")


@dataclass(frozen=True)
class Presentation:
    """Relation y^degree = rhs(y, q) closing the divisor powers."""

    degree: int
    rhs: sympy.Expr
    discriminant: Fraction
    complete: bool

    @property
    def semisimple_at_q1(self) -> bool:
        """Diagnostic only: the relation at q = 1 has no repeated roots."""
        return self.discriminant != 0

    def text(self) -> str:
        return f"{format_poly(y**self.degree)} = {format_poly(self.rhs)}"


def chevalley_table(
    rs: RootSystem, basis: CosetBasis, c1: int | None = None
) -> tuple[QClass, ...]:
    """y * [Y^u] for every basis class u.

    Sums over positive roots beta with p = <omega_P, h_beta> > 0. The term
    [Y^{u s_beta}] enters classically when its length is l(u) + 1 and with
    q^p when its length is l(u) + 1 - c1 * p.
    """
    node = basis.node
    c1 = c1_of_parabolic(rs, node) if c1 is None else c1
    moves = []
    for k in range(len(rs.positive_roots)):
        p = omega_pairing(rs, node, k)
        if p > 0:
            if p.denominator != 1:
                raise InternalAssertion(f"non-integral <omega_P, h_beta> = {p}")
            moves.append((weyl_reflection(rs, k).matrix(), int(p)))

    table = []
    for u in basis:
        umat = u.element.matrix()
        acc: dict[tuple[int, int], Fraction] = {}
        for smat, p in moves:
            v = coset_of(umat @ smat, basis)
            if v.length == u.length + 1:
                key = (v.index, 0)
            elif v.length == u.length + 1 - c1 * p:
                key = (v.index, p)
            else:
                continue
            acc[key] = acc.get(key, Fraction(0)) + p
        table.append(QClass(acc))
    return tuple(table)


class QhEngine(SchubertRing):
    """Divisor-generated quantum cohomology ring of G/P."""

    def __init__(self, rs: RootSystem, basis: CosetBasis) -> None:
        super().__init__(rs, basis)
        self.chevalley = chevalley_table(rs, basis, self.c1)
        self.giambelli = self._solve_giambelli()
        logger.info("Built QH*(%s): %d classes, c1 = %d", self.label, self.size, self.c1)

    # ── Quantum Chevalley ────────────────────────────────────────────────

    def divisor_multiply(self, u: CosetRep | int) -> QClass:
        index = u if isinstance(u, int) else u.index
        return self.chevalley[index]

    def times_divisor(self, cls: QClass) -> QClass:
        """y * cls by linearity over the divisor table."""
        items: list[tuple[tuple[int, int], Fraction]] = []
        for (index, degree), coeff in cls:
            for (j, d), c in self.chevalley[index]:
                items.append(((j, d + degree), coeff * c))
        return QClass.from_items(items)

    def divisor_powers(self, cls: QClass, top: int) -> list[QClass]:
        """[cls, y*cls, ..., y^top*cls]."""
        powers = [cls]
        for _ in range(top):
            powers.append(self.times_divisor(powers[-1]))
        return powers

    # ── Giambelli ────────────────────────────────────────────────────────

    def giambelli_polynomials(self) -> dict[int, sympy.Expr]:
        return dict(enumerate(self.giambelli))

    def evaluate(self, poly: sympy.Expr, cls: QClass | None = None) -> QClass:
        """poly(y, q) * cls computed by repeated divisor multiplication."""
        target = self.one() if cls is None else cls
        terms = sympy.Poly(sympy.expand(poly), y, q).terms()
        if not terms:
            return QClass.zero()
        top = max(a for (a, _), _ in terms)
        powers = self.divisor_powers(target, top)
        result = QClass.zero()
        for (a, b), coeff in terms:
            result = result + powers[a].scale(_to_fraction(coeff), degree_shift=b)
        return result

    def _solve_giambelli(self) -> tuple[sympy.Expr, ...]:
        by_length: dict[int, list[int]] = {}
        for rep in self.basis:
            by_length.setdefault(rep.length, []).append(rep.index)
        polys: list[sympy.Expr | None] = [None] * self.size
        polys[0] = sympy.Integer(1)

        for k in range(1, self.dim + 1):
            rows, cols = by_length[k - 1], by_length[k]
            col_pos = {c: n for n, c in enumerate(cols)}
            matrix = sympy.zeros(len(rows), len(cols))
            rhs = []
            for r, v in enumerate(rows):
                expr = y * polys[v]
                for (index, degree), coeff in self.chevalley[v]:
                    if degree == 0:
                        matrix[r, col_pos[index]] = _sym(coeff)
                    else:
                        expr -= _sym(coeff) * q**degree * polys[index]
                rhs.append(sympy.expand(expr))

            _, pivots = matrix.T.rref()
            if len(pivots) < len(cols):
                raise NotDivisorGenerated(self.label, k)
            square = matrix.extract(list(pivots), list(range(len(cols))))
            solution = square.inv() * sympy.Matrix([rhs[p] for p in pivots])
            for c, index in enumerate(cols):
                polys[index] = sympy.expand(solution[c])
            for r in range(len(rows)):
                if r in pivots:
                    continue
                check = sum(matrix[r, c] * polys[cols[c]] for c in range(len(cols))) - rhs[r]
                if sympy.expand(check) != 0:
                    raise InternalAssertion(f"{self.label}: inconsistent Giambelli row at {k}")
            logger.debug("Giambelli codegree %d solved with %d/%d rows", k, len(pivots), len(rows))
        return tuple(p for p in polys if p is not None)

    # ── Products ─────────────────────────────────────────────────────────

    def star(self, a: QClass, b: QClass) -> QClass:
        result = QClass.zero()
        for (index, degree), coeff in a:
            result = result + self.evaluate(self.giambelli[index], b).scale(coeff, degree)
        return result

    def presentation(self) -> Presentation:
        degree = self.dim + 1
        power = self.divisor_powers(self.one(), degree)[-1]
        rhs = sympy.Integer(0)
        for (index, d), coeff in power:
            rhs += _sym(coeff) * q**d * self.giambelli[index]
        rhs = sympy.expand(rhs)
        at_one = sympy.Poly(sympy.expand((y**degree - rhs).subs(q, 1)), y)
        disc = _to_fraction(sympy.discriminant(at_one, y))
        complete = all(
            sum(1 for r in self.basis if r.length == k) == 1 for k in range(self.dim + 1)
        )
        return Presentation(degree=degree, rhs=rhs, discriminant=disc, complete=complete)


def build_engine(rs: RootSystem, node: int, limit: int = DEFAULT_GROUP_LIMIT) -> SchubertRing:
    """Divisor engine, or the rim-hook engine for type A when H^2 does not generate."""
    basis = min_coset_reps(rs, node, limit)
    try:
        return QhEngine(rs, basis)
    except NotDivisorGenerated:
        if rs.family != "A":
            raise
        logger.info("Routing %s node %d to the Grassmannian engine", rs.type_label, node + 1)
        return GrassmannEngine(rs, basis)


def format_poly(expr: sympy.Expr) -> str:
    """Render a polynomial in y and q as ``18qy_1^3 + 27q^2``."""
    poly = sympy.Poly(sympy.expand(expr), y, q)
    terms = sorted(poly.terms(), key=lambda t: (-t[0][0], t[0][1]))
    if not terms:
        return "0"
    out: list[str] = []
    for (a, b), coeff in terms:
        frac = _to_fraction(coeff)
        mono = ("" if b == 0 else ("q" if b == 1 else f"q^{b}")) + (
            "" if a == 0 else ("y_1" if a == 1 else f"y_1^{a}")
        )
        mag = abs(frac)
        if not mono:
            text = format_rational(mag)
        elif mag == 1:
            text = mono
        elif mag.denominator == 1:
            text = f"{mag.numerator}{mono}"
        else:
            text = f"({format_rational(mag)}){mono}"
        if not out:
            out.append(text if frac > 0 else f"-{text}")
        else:
            out.append(("+ " if frac > 0 else "- ") + text)
    return " ".join(out)


def _sym(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _to_fraction(value: sympy.Basic) -> Fraction:
    rat = sympy.Rational(value)
    return Fraction(int(rat.p), int(rat.q))
