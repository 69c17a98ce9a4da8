"""Sparse quantum cohomology classes and the shared Schubert-ring interface."""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from qh_alcove.errors import InternalAssertion
from qh_alcove.rational import format_rational
from qh_alcove.rootsys import RootSystem, c1_of_parabolic
from qh_alcove.weyl import CosetBasis

Key = tuple[int, int]  # (basis index, q-degree)


class QClass:
    """Element of QH*(G/P): rational coefficients keyed by (basis index, q-degree).

    Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Key, Fraction | int] | None = None) -> None:
        self._terms: dict[Key, Fraction] = {}
        for key, value in (terms or {}).items():
            if value:
                self._terms[key] = Fraction(value)

    @classmethod
    def basis(cls, index: int, degree: int = 0) -> QClass:
        return cls({(index, degree): 1})

    @classmethod
    def zero(cls) -> QClass:
        return cls()

    @classmethod
    def from_items(cls, items: Iterable[tuple[Key, Fraction | int]]) -> QClass:
        acc: dict[Key, Fraction] = {}
        for key, value in items:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(value)
        return cls(acc)

    def __iter__(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QClass):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: QClass) -> QClass:
        return QClass.from_items([*self._terms.items(), *other._terms.items()])

    def __sub__(self, other: QClass) -> QClass:
        return self + other.scale(-1)

    def __repr__(self) -> str:
        return f"QClass({self.pretty()})"

    def coefficient(self, index: int, degree: int = 0) -> Fraction:
        return self._terms.get((index, degree), Fraction(0))

    def scale(self, factor: Fraction | int, degree_shift: int = 0) -> QClass:
        return QClass({(i, d + degree_shift): c * factor for (i, d), c in self._terms.items()})

    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def classical(self) -> QClass:
        """Specialization q -> 0."""
        return QClass({k: v for k, v in self._terms.items() if k[1] == 0})

    def pretty(self, labels: list[str] | None = None) -> str:
        """Render like ``qy_3 + 2q^2``; basis index 0 is the unit class."""
        if not self._terms:
            return "0"
        out: list[str] = []
        for (index, degree), coeff in self:
            q = "" if degree == 0 else ("q" if degree == 1 else f"q^{degree}")
            y = "" if index == 0 else (labels[index] if labels else f"y_{index}")
            body = q + y
            mag = abs(coeff)
            if not body:
                text = format_rational(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{format_rational(mag)}{body}"
            if not out:
                out.append(text if coeff > 0 else f"-{text}")
            else:
                out.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(out)

    def to_json(self, labels: list[str] | None = None) -> list[dict[str, object]]:
        return [
            {
                "class": labels[i] if labels else i,
                "q_degree": d,
                "coefficient": format_rational(c),
            }
            for (i, d), c in self
        ]


class SchubertRing(ABC):
    """Schubert basis of QH*(G/P) for a maximal parabolic, indexed by a CosetBasis."""

    def __init__(self, rs: RootSystem, basis: CosetBasis) -> None:
        self.rs = rs
        self.basis = basis
        self.node = basis.node
        self.dim = basis.dim
        self.c1 = c1_of_parabolic(rs, basis.node)

    @property
    def label(self) -> str:
        return f"{self.rs.type_label}/P_{self.node + 1}"

    @property
    def size(self) -> int:
        return len(self.basis)

    def length(self, index: int) -> int:
        return self.basis[index].length

    def labels(self) -> list[str]:
        return self.basis.labels()

    def one(self) -> QClass:
        return QClass.basis(0)

    def divisor_index(self) -> int:
        return next(r.index for r in self.basis if r.length == 1)

    def dual(self, index: int) -> int:
        return self.basis.dual(index)

    @abstractmethod
    def star(self, a: QClass, b: QClass) -> QClass:
        """Quantum product."""

    def basis_product(self, i: int, j: int) -> QClass:
        product = self.star(QClass.basis(i), QClass.basis(j))
        self.check_grading(product, self.length(i) + self.length(j))
        return product

    def full_table(self) -> dict[tuple[int, int], QClass]:
        """Upper triangle of the multiplication table of basis classes."""
        return {
            (i, j): self.basis_product(i, j) for i in range(self.size) for j in range(i, self.size)
        }

    def check_grading(self, cls: QClass, codegree: int) -> None:
        for (index, degree), _ in cls:
            if self.length(index) + degree * self.c1 != codegree:
                raise InternalAssertion(
                    f"{self.label}: term (y_{index}, q^{degree}) breaks grading {codegree}"
                )
