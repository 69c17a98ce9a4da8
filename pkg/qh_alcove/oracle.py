"""Numeric membership oracle for Delta_b in SU(n).

Searches unitaries U_1, ..., U_b with prod_i U_i D_i U_i^dagger = I, where D_i
is the diagonal representative of the class with alcove coordinates a^(i).
Riemannian steepest descent on U(n)^(b-1) with exponential retraction and
Armijo backtracking; U_b is fixed to the identity. Verdicts are one-sided:
``member`` carries a witness, everything else is ``unresolved``.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence

import numpy as np
from scipy.linalg import eigh

from qh_alcove.errors import DimensionMismatch, InputError, NonUnitaryInput
from qh_alcove.polytope import AlcovePoint, validate_point
from qh_alcove.rootsys import build_root_system

logger = logging.getLogger(__name__)

SUPPORTED_N = (2, 3, 4)
UNITARY_DRIFT = 1e-10
ARMIJO = 1e-4
MIN_STEP = 1e-12
STATIONARY = 1e-20
STATIONARY_REL = 1e-10
STALL = 1e-15
STALL_REL = 1e-12
SETTLE_RTOL = 1e-6
MAX_STALLS = 25


@dataclass(frozen=True)
class OracleConfig:
    """Multistart search settings.

    ``settle`` > 0 ends the search once that many restarts stop on the same
    positive minimum; 0 spends every restart.
    """

    restarts: int = 64
    max_iterations: int = 2000
    tolerance: float = 1e-8
    rng_seed: int = 0
    threads: int = 1
    settle: int = 0

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0.")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1.")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1.")
        if self.threads < 1:
            raise ValueError("threads must be >= 1.")
        if self.settle < 0:
            raise ValueError("settle must be >= 0.")


@dataclass(frozen=True)
class OracleVerdict:
    member: bool
    residual: float
    witness: tuple[np.ndarray, ...]
    restarts_used: int

    @property
    def status(self) -> str:
        return "member" if self.member else "unresolved"

    def to_json(self) -> dict[str, Any]:
        return {
            "verdict": self.status,
            "residual": self.residual,
            "restarts_used": self.restarts_used,
            "witness": [matrix_to_json(u) for u in self.witness],
        }


# ── Conjugacy classes ────────────────────────────────────────────────────────


def eigenvalue_logs(n: int, point: AlcovePoint) -> np.ndarray:
    """lambda_k = sum_{j>=k} a_j - (1/n) sum_j j a_j.

    The logs sum to zero and a_j = lambda_j - lambda_{j+1}.
    """
    if point.rank != n - 1:
        raise DimensionMismatch(n - 1, point.rank, "SU(n) alcove point")
    a = [Fraction(0)] + list(point.coords)
    shift = sum((j * a[j] for j in range(1, n)), Fraction(0)) / n
    logs = [sum(a[k:], Fraction(0)) - shift for k in range(1, n + 1)]
    return np.array([float(v) for v in logs])


def class_representative(n: int, point: AlcovePoint) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * eigenvalue_logs(n, point)))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    qmat, rmat = np.linalg.qr(z)
    phases = np.diag(rmat) / np.abs(np.diag(rmat))
    return qmat * phases


# ── Residual ─────────────────────────────────────────────────────────────────


def residual(n: int, points: Sequence[AlcovePoint], unitaries: Sequence[np.ndarray]) -> float:
    """||prod_i U_i D_i U_i^dagger - I||_F^2."""
    if len(points) != len(unitaries):
        raise DimensionMismatch(len(points), len(unitaries), "unitaries")
    eye = np.eye(n)
    for i, u in enumerate(unitaries):
        drift = float(np.max(np.abs(u @ u.conj().T - eye)))
        if drift > UNITARY_DRIFT:
            raise NonUnitaryInput(i, drift)
    diags = [class_representative(n, p) for p in points]
    return _objective(_conjugates(unitaries, diags), n)


def _conjugates(unitaries: Sequence[np.ndarray], diags: Sequence[np.ndarray]) -> list[np.ndarray]:
    return [u @ d @ u.conj().T for u, d in zip(unitaries, diags)]


def _product(mats: Sequence[np.ndarray], n: int) -> np.ndarray:
    out = np.eye(n, dtype=complex)
    for m in mats:
        out = out @ m
    return out


def _objective(conj: Sequence[np.ndarray], n: int) -> float:
    err = _product(conj, n) - np.eye(n)
    return float(np.real(np.vdot(err, err)))


def _gradient(conj: list[np.ndarray], n: int, free: int) -> tuple[float, list[np.ndarray]]:
    """Value and skew-Hermitian gradients Xi_i = G_i^dagger - G_i for the first ``free`` factors.

    With P = L_i K_i R_i and E = P - I, the derivative along U_i -> exp(t Omega) U_i
    is <Omega, Xi_i>, G_i = K_i R_i E^dagger L_i - R_i E^dagger L_i K_i.
    """
    prefix = [np.eye(n, dtype=complex)]
    for k in conj:
        prefix.append(prefix[-1] @ k)
    suffix = [np.eye(n, dtype=complex)]
    for k in reversed(conj):
        suffix.append(k @ suffix[-1])
    suffix.reverse()
    err = prefix[-1] - np.eye(n)
    value = float(np.real(np.vdot(err, err)))
    err_h = err.conj().T
    grads = []
    for i in range(free):
        left, k, right = prefix[i], conj[i], suffix[i + 1]
        g = k @ right @ err_h @ left - right @ err_h @ left @ k
        grads.append(g.conj().T - g)
    return value, grads


def _retract(w: np.ndarray, v: np.ndarray, t: float) -> np.ndarray:
    """exp(-t Xi) from the eigendecomposition i Xi = V diag(w) V^dagger."""
    return (v * np.exp(1j * t * w)) @ v.conj().T


def _descend(
    n: int, diags: list[np.ndarray], seed: np.random.SeedSequence, cfg: OracleConfig
) -> tuple[float, list[np.ndarray]]:
    rng = np.random.default_rng(seed)
    b = len(diags)
    free = b - 1
    us = [haar_unitary(n, rng) for _ in range(free)] + [np.eye(n, dtype=complex)]
    step = 1.0
    stalls = 0
    for _ in range(cfg.max_iterations):
        value, grads = _gradient(_conjugates(us, diags), n, free)
        if value < cfg.tolerance:
            break
        slope = sum(float(np.real(np.vdot(g, g))) for g in grads)
        if slope < STATIONARY or slope < STATIONARY_REL * value:
            break
        spectra = [eigh(1j * g) for g in grads]
        t = min(2.0 * step, 1.0)
        while t >= MIN_STEP:
            trial = [_retract(w, v, t) @ u for (w, v), u in zip(spectra, us[:free])] + us[free:]
            trial_value = _objective(_conjugates(trial, diags), n)
            if trial_value <= value - ARMIJO * t * slope:
                stalls = stalls + 1 if value - trial_value < max(STALL, STALL_REL * value) else 0
                us = trial
                step = t
                break
            t /= 2
        else:
            break
        if stalls >= MAX_STALLS:
            break
    return _objective(_conjugates(us, diags), n), us


# ── Decision ─────────────────────────────────────────────────────────────────


def decide(
    n: int, points: Sequence[AlcovePoint], cfg: OracleConfig | None = None
) -> OracleVerdict:
    """Multistart search for a product-identity witness.

    Restarts run in batches of ``cfg.threads``; the first restart (in index
    order) below tolerance wins, so the verdict does not depend on scheduling.
    """
    cfg = cfg or OracleConfig()
    if n not in SUPPORTED_N:
        raise InputError(f"Oracle supports SU(n) for n in {SUPPORTED_N}, got n = {n}")
    if not points:
        raise InputError("At least one marking is needed")
    rs = build_root_system("A", n - 1)
    for i, p in enumerate(points):
        validate_point(rs, p, i)

    eye = np.eye(n, dtype=complex)
    identity_witness = tuple(eye.copy() for _ in points)
    start = residual(n, points, identity_witness)
    if start < cfg.tolerance or len(points) == 1:
        return OracleVerdict(start < cfg.tolerance, start, identity_witness, 0)

    diags = [class_representative(n, p) for p in points]
    best_value, best_us, used = start, list(identity_witness), 0
    level, settled = math.inf, 0
    for value, us in _restarts(n, diags, cfg):
        used += 1
        if value < cfg.tolerance:
            witness = tuple(us)
            certified = residual(n, points, witness)
            logger.debug("Witness after %d restarts, residual %.3e", used, certified)
            return OracleVerdict(True, certified, witness, used)
        if level < math.inf and abs(value - level) <= SETTLE_RTOL * level:
            settled += 1
        elif value < level:
            level, settled = value, 1
        if value < best_value:
            best_value, best_us = value, us
        if cfg.settle and settled >= cfg.settle:
            break
    witness = tuple(best_us)
    logger.debug("Unresolved after %d restarts, best residual %.3e", used, best_value)
    return OracleVerdict(False, residual(n, points, witness), witness, used)


def _restarts(
    n: int, diags: list[np.ndarray], cfg: OracleConfig
) -> Iterator[tuple[float, list[np.ndarray]]]:
    """Descent results in restart order, computed in batches of ``cfg.threads``."""
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.restarts)
    for offset in range(0, cfg.restarts, cfg.threads):
        batch = seeds[offset : offset + cfg.threads]
        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                yield from pool.map(lambda s: _descend(n, diags, s, cfg), batch)
        else:
            yield from (_descend(n, diags, s, cfg) for s in batch)


def su2_closed_form(a1: Fraction, a2: Fraction, a3: Fraction) -> bool:
    """|a1 - a2| <= a3 <= min(a1 + a2, 2 - a1 - a2)."""
    return abs(a1 - a2) <= a3 <= min(a1 + a2, 2 - a1 - a2)


def matrix_to_json(mat: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]
