"""Quantum Schubert calculus of Gr(k, n) by Littlewood-Richardson and rim-hook reduction.

Classical products are expanded with at most k rows and then reduced into the
k x (n-k) box by removing n-rim hooks; each removal contributes q and the sign
(-1)^(k - r), r the number of rows the hook occupies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from qh_alcove.errors import InputError, InternalAssertion
from qh_alcove.qclass import QClass, SchubertRing
from qh_alcove.rootsys import RootSystem
from qh_alcove.weyl import CosetBasis, CosetRep

logger = logging.getLogger(__name__)

Reduced = tuple["Partition", int, int]  # (partition, q-degree, sign)


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(p < 0 for p in parts):
            raise InputError(f"Negative part in partition {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InputError(f"Parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def padded(self, k: int) -> tuple[int, ...]:
        return self.parts + (0,) * (k - len(self.parts))

    def contains(self, other: Partition) -> bool:
        return other.rows <= self.rows and all(
            self.part(i) >= other.part(i) for i in range(other.rows)
        )

    def fits(self, k: int, n: int) -> bool:
        return self.rows <= k and self.part(0) <= n - k

    def complement(self, k: int, n: int) -> Partition:
        padded = self.padded(k)
        return Partition(tuple(n - k - padded[k - 1 - i] for i in range(k)))

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        return "(" + ",".join(str(p) for p in self.parts) + ")"


# ── Littlewood-Richardson ────────────────────────────────────────────────────


def lr_coefficient(lam: Partition, nu: Partition, target: Partition) -> int:
    """Number of LR tableaux of shape target/lam and content nu.

    Cells are filled in reading order (rows top to bottom, right to left); rows
    weakly increase, columns strictly increase and the reading word is a lattice
    word.
    """
    if target.size != lam.size + nu.size or not target.contains(lam):
        return 0
    cells = [
        (r, c)
        for r in range(target.rows)
        for c in range(target.part(r) - 1, lam.part(r) - 1, -1)
    ]
    content = nu.parts
    counts = [0] * (len(content) + 1)
    filling: dict[tuple[int, int], int] = {}

    def place(pos: int) -> int:
        if pos == len(cells):
            return 1
        r, c = cells[pos]
        low = filling.get((r - 1, c), 0) + 1
        high = min(len(content), filling.get((r, c + 1), len(content)))
        total = 0
        for v in range(low, high + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += place(pos + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return place(0)


def lr_expand(lam: Partition, nu: Partition, max_rows: int | None = None) -> dict[Partition, int]:
    """Classical product s_lam * s_nu, truncated to at most ``max_rows`` rows."""
    rows = lam.rows + nu.rows
    if max_rows is not None:
        rows = min(rows, max_rows)
    total = lam.size + nu.size
    out: dict[Partition, int] = {}
    for target in _shapes_between(lam, nu.part(0), rows, total):
        coeff = lr_coefficient(lam, nu, target)
        if coeff:
            out[target] = coeff
    return out


def _shapes_between(lam: Partition, width: int, rows: int, total: int) -> Iterator[Partition]:
    def grow(i: int, prev: int, remaining: int, acc: list[int]) -> Iterator[Partition]:
        if i == rows:
            if remaining == 0:
                yield Partition(tuple(acc))
            return
        low = lam.part(i)
        high = min(prev, lam.part(i) + width, remaining + low)
        for value in range(high, low - 1, -1):
            acc.append(value)
            yield from grow(i + 1, value, remaining - (value - low), acc)
            acc.pop()

    if lam.rows > rows:
        return iter(())
    return grow(0, lam.part(0) + width, total - lam.size, [])


# ── Rim hooks ────────────────────────────────────────────────────────────────


def rimhook_reduce(nu: Partition, k: int, n: int) -> Reduced | None:
    """Reduce nu into the k x (n-k) box; None when the class vanishes.

    Works on beta numbers b_i = nu_i + k - i: removing an n-rim hook moves one
    bead from b to b - n.
    """
    if nu.rows > k:
        raise InputError(f"Partition {nu} has more than {k} rows")
    betas = [p + k - 1 - i for i, p in enumerate(nu.padded(k))]
    degree, sign = 0, 1
    while betas[0] >= n:
        top = betas[0]
        target = top - n
        if target in betas:
            return None
        rows = 1 + sum(1 for b in betas if target < b < top)
        sign *= (-1) ** (k - rows)
        betas = sorted(betas[1:] + [target], reverse=True)
        degree += 1
    parts = tuple(b - (k - 1 - i) for i, b in enumerate(betas))
    return Partition(parts), degree, sign


def rimhook_outcomes(nu: Partition, k: int, n: int) -> set[Reduced | None]:
    """Every result reachable by removing n-rim hooks in any order."""
    start = tuple(p + k - 1 - i for i, p in enumerate(nu.padded(k)))
    outcomes: set[Reduced | None] = set()

    def walk(betas: tuple[int, ...], degree: int, sign: int) -> None:
        if max(betas) < n:
            parts = tuple(b - (k - 1 - i) for i, b in enumerate(sorted(betas, reverse=True)))
            outcomes.add((Partition(parts), degree, sign))
            return
        moved = False
        for b in betas:
            if b >= n and (b - n) not in betas:
                moved = True
                rows = 1 + sum(1 for x in betas if b - n < x < b)
                rest = tuple(x for x in betas if x != b) + (b - n,)
                walk(rest, degree + 1, sign * (-1) ** (k - rows))
        if not moved:
            outcomes.add(None)

    walk(start, 0, 1)
    return outcomes


# ── Quantum products ─────────────────────────────────────────────────────────


def box_partitions(k: int, n: int) -> list[Partition]:
    """All partitions in the k x (n-k) box, ordered by size then parts."""
    found: list[Partition] = []

    def grow(i: int, prev: int, acc: list[int]) -> None:
        if i == k:
            found.append(Partition(tuple(acc)))
            return
        for value in range(prev + 1):
            acc.append(value)
            grow(i + 1, value, acc)
            acc.pop()

    grow(0, n - k, [])
    return sorted(found, key=lambda p: (p.size, p.parts))


def grass_star(
    k: int,
    n: int,
    lam: Partition,
    mu: Partition,
    index: Mapping[Partition, int] | None = None,
) -> QClass:
    """sigma_lam * sigma_mu in QH*(Gr(k, n)) over the partition basis ``index``."""
    if not (lam.fits(k, n) and mu.fits(k, n)):
        raise InputError(f"{lam} or {mu} does not fit the {k}x{n - k} box")
    if index is None:
        index = {p: i for i, p in enumerate(box_partitions(k, n))}
    acc: dict[tuple[int, int], Fraction] = {}
    for target, coeff in lr_expand(lam, mu, max_rows=k).items():
        reduced = rimhook_reduce(target, k, n)
        if reduced is None:
            continue
        part, degree, sign = reduced
        key = (index[part], degree)
        acc[key] = acc.get(key, Fraction(0)) + sign * coeff
    return QClass(acc)


def partition_of_coset(basis: CosetBasis, rep: CosetRep) -> Partition:
    """Partition of a minimal coset representative of S_n / (S_k x S_{n-k}).

    The epsilon-coordinates of u omega_k are positive exactly on u({1..k}) = S;
    then lam = (s_k - k, ..., s_1 - 1).
    """
    rs = basis.rs
    coords = (Fraction(0),) + basis.weight(rep.index) + (Fraction(0),)
    eps = [coords[i] - coords[i - 1] for i in range(1, rs.rank + 2)]
    chosen = [i + 1 for i, e in enumerate(eps) if e > 0]
    k = basis.node + 1
    if len(chosen) != k:
        raise InternalAssertion(f"coset {rep.element.word_label()} gave {len(chosen)} positions")
    return Partition(tuple(chosen[k - 1 - j] - (k - j) for j in range(k)))


class GrassmannEngine(SchubertRing):
    """QH*(Gr(k, n)) over the coset basis of A_{n-1} at node k."""

    def __init__(self, rs: RootSystem, basis: CosetBasis) -> None:
        if rs.family != "A":
            raise InputError(f"Grassmannian engine needs type A, got {rs.type_label}")
        super().__init__(rs, basis)
        self.k = basis.node + 1
        self.n = rs.rank + 1
        self.partitions = tuple(partition_of_coset(basis, rep) for rep in basis)
        self.index = {p: i for i, p in enumerate(self.partitions)}
        if len(self.index) != len(self.partitions):
            raise InternalAssertion("coset to partition map is not injective")
        for rep, part in zip(basis, self.partitions):
            if part.size != rep.length:
                raise InternalAssertion(f"{part} has size != length {rep.length}")
        # read-only after construction
        self._pairs: dict[tuple[int, int], QClass] = {
            (i, j): grass_star(self.k, self.n, self.partitions[i], self.partitions[j], self.index)
            for i in range(self.size)
            for j in range(i, self.size)
        }
        logger.info("Built QH*(Gr(%d,%d)) with %d classes", self.k, self.n, self.size)

    @property
    def label(self) -> str:
        return f"Gr({self.k},{self.n})"

    def labels(self) -> list[str]:
        return [f"s{p}" for p in self.partitions]

    def divisor_multiply(self, u: CosetRep | int) -> QClass:
        index = u if isinstance(u, int) else u.index
        return self._pair(self.divisor_index(), index)

    def _pair(self, i: int, j: int) -> QClass:
        return self._pairs[(min(i, j), max(i, j))]

    def star(self, a: QClass, b: QClass) -> QClass:
        items = []
        for (i, da), ca in a:
            for (j, db), cb in b:
                for (m, d), c in self._pair(i, j):
                    items.append(((m, d + da + db), ca * cb * c))
        return QClass.from_items(items)
