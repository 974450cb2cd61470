"""Operator scaling for the completely positive map T(X) = sum A^T X A.

The capacity is inf { det T(X) : X positive definite, det X = 1 }.  Operator
Sinkhorn alternately normalises T(I) and T*(I) to the identity; the log of
every normalising determinant is accumulated so that the capacity of the
input equals cap(current) * exp(-log_cap_acc).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .datum import BlockMatrixFamily
from .errors import DimensionMismatch, RankCollapse

POSITIVE, ZERO, INCONCLUSIVE, RUNNING = "POSITIVE", "ZERO", "INCONCLUSIVE", "RUNNING"

CLAMP = 1e-14
ZERO_BOUND = 1e-30
MONOTONE_SLACK = 1e-9
REFINE_TOL = 1e-24
REFINE_ITERS = 5000


class CPOperator:
    """Kraus operators as a (k, N, N) float64 stack."""

    def __init__(self, kraus, N: int | None = None, bits: int = 1):
        kraus = [np.asarray(A) for A in kraus]
        if any(np.iscomplexobj(A) for A in kraus):
            raise TypeError("complex Kraus operators are not supported")
        if N is None:
            if not kraus:
                raise DimensionMismatch("N must be given for an empty Kraus list")
            N = kraus[0].shape[0]
        for A in kraus:
            if A.shape != (N, N):
                raise DimensionMismatch(f"Kraus operator of shape {A.shape}, expected {(N, N)}")
        self.N = N
        self.bits = bits
        self.kraus = np.array(kraus, dtype=float).reshape(len(kraus), N, N)

    @classmethod
    def from_family(cls, F: BlockMatrixFamily) -> CPOperator:
        return cls([m.to_numpy() for m in F.matrices()], F.N, max(F.max_bit_length(), 1))

    def __len__(self):
        return self.kraus.shape[0]


def _check_square(T: CPOperator, X):
    X = np.asarray(X, dtype=float)
    if X.shape != (T.N, T.N):
        raise DimensionMismatch(f"X has shape {X.shape}, expected {(T.N, T.N)}")
    return X


def _symmetrize(Y):
    scale = max(1.0, float(np.abs(Y).max(initial=0.0)))
    assert np.abs(Y - Y.T).max(initial=0.0) <= 1e-10 * scale, "result is not symmetric"
    return (Y + Y.T) / 2


def apply(T: CPOperator, X) -> np.ndarray:
    """T(X) = sum_k A_k^T X A_k."""
    X = _check_square(T, X)
    A = T.kraus
    return _symmetrize((A.transpose(0, 2, 1) @ X @ A).sum(axis=0))


def apply_dual(T: CPOperator, X) -> np.ndarray:
    """T*(X) = sum_k A_k X A_k^T."""
    X = _check_square(T, X)
    A = T.kraus
    return _symmetrize((A @ X @ A.transpose(0, 2, 1)).sum(axis=0))


def distance_to_doubly_stochastic(T: CPOperator) -> float:
    I = np.eye(T.N)
    return float(np.sum((apply(T, I) - I) ** 2) + np.sum((apply_dual(T, I) - I) ** 2))


@dataclass
class ScalingState:
    op: CPOperator
    iteration: int = 0
    ds: float = math.inf
    log_cap_acc: float = 0.0
    status: str = RUNNING
    # log of the capacity upper bound of the first row-normalised operator
    log_bound_ref: float | None = None
    min_eig_ratio: float = math.inf
    clamp_events: list = field(default_factory=list)
    history: list = field(default_factory=list)

    @classmethod
    def start(cls, op: CPOperator) -> ScalingState:
        s = cls(op)
        s.ds = distance_to_doubly_stochastic(op)
        s.history.append(s.ds)
        return s

    @property
    def log_upper_bound(self) -> float:
        """log of an upper bound on cap of the input (valid right after a row step)."""
        return -self.log_cap_acc


def _inv_sqrt(M, side, state):
    w, V = np.linalg.eigh(M)
    top = float(w.max(initial=0.0))
    ratio = float(w.min() / top) if top > 0 else 0.0
    state.min_eig_ratio = min(state.min_eig_ratio, ratio)
    if top <= 0 or ratio < CLAMP:
        state.clamp_events.append({"iteration": state.iteration, "side": side, "ratio": ratio})
        state.status = ZERO
        raise RankCollapse(side, ratio)
    return (V / np.sqrt(w)) @ V.T, float(np.sum(np.log(w)))


def sinkhorn_step(s: ScalingState) -> ScalingState:
    """One full step: normalise T(I) to I, then T*(I) to I.

    Raises ``RankCollapse`` (after recording it on the state, status ZERO)
    when either normaliser is numerically singular.
    """
    T = s.op
    I = np.eye(T.N)
    R = apply(T, I)
    Rm, logdet_R = _inv_sqrt(R, "T(I)", s)
    T.kraus = T.kraus @ Rm
    s.log_cap_acc -= logdet_R
    if s.log_bound_ref is None:
        s.log_bound_ref = s.log_upper_bound
    C = apply_dual(T, I)
    Cm, logdet_C = _inv_sqrt(C, "T*(I)", s)
    T.kraus = Cm @ T.kraus
    s.log_cap_acc -= logdet_C
    s.iteration += 1
    s.ds = distance_to_doubly_stochastic(T)
    s.history.append(s.ds)
    return s


@dataclass
class CapacityReport:
    decision: str
    iterations: int
    ds: float
    capacity: float | None
    log_capacity: float | None
    N: int
    threshold: float
    max_iters: int
    min_eig_ratio: float | None = None
    clamp_events: list = field(default_factory=list)
    reason: str = ""
    ds_history: list = field(default_factory=list)

    def to_dict(self, history: bool = True) -> dict:
        d = {
            "decision": self.decision,
            "iterations": self.iterations,
            "ds": self.ds,
            "capacity": self.capacity,
            "log_capacity": self.log_capacity,
            "N": self.N,
            "threshold": self.threshold,
            "max_iters": self.max_iters,
            "reason": self.reason,
            "diagnostics": {
                "min_eig_ratio": self.min_eig_ratio,
                "clamp_events": self.clamp_events,
            },
        }
        if history:
            d["diagnostics"]["ds_history"] = self.ds_history
        return d


def default_max_iters(N: int, bits: int) -> int:
    return 100 * N * N * (bits + N)


def decide_capacity(F, max_iters: int | None = None, threshold: float | None = None,
                    zero_bound: float = ZERO_BOUND, refine_tol: float = REFINE_TOL,
                    refine_iters: int = REFINE_ITERS) -> CapacityReport:
    """Decide cap > 0 for a BlockMatrixFamily or CPOperator.

    POSITIVE the first time ds < threshold (default 1/(N+1)); ZERO on rank
    collapse or when the capacity upper bound, relative to the first
    row-normalised operator, drops below ``zero_bound``; INCONCLUSIVE when
    the iteration budget runs out or ds rises beyond the monotonicity slack.
    After a POSITIVE decision the scaling continues (up to ``refine_iters``
    steps or ds < refine_tol) to sharpen the capacity estimate.
    """
    op = CPOperator.from_family(F) if isinstance(F, BlockMatrixFamily) else F
    op = CPOperator(op.kraus.copy(), op.N, op.bits)
    N = op.N
    thr = 1.0 / (N + 1) if threshold is None else threshold
    budget = default_max_iters(N, op.bits) if max_iters is None else max_iters
    if N == 0:
        return CapacityReport(POSITIVE, 0, 0.0, 1.0, 0.0, 0, thr, budget, reason="N = 0")
    if len(op) == 0:
        return CapacityReport(ZERO, 0, float(2 * N), 0.0, None, N, thr, budget,
                              reason="empty Kraus list")

    s = ScalingState.start(op)

    def report(decision, reason):
        cap = logc = None
        if decision == POSITIVE:
            logc = s.log_upper_bound
            cap = math.exp(logc) if logc < 700 else math.inf
        return CapacityReport(decision, s.iteration, s.ds, cap, logc, N, thr, budget,
                              None if math.isinf(s.min_eig_ratio) else s.min_eig_ratio,
                              s.clamp_events, reason, s.history)

    log_zero = math.log(zero_bound)
    while s.ds >= thr:
        if s.iteration >= budget:
            return report(INCONCLUSIVE, "iteration budget exhausted")
        prev = s.ds
        try:
            sinkhorn_step(s)
        except RankCollapse as exc:
            return report(ZERO, str(exc))
        if s.log_upper_bound - s.log_bound_ref < log_zero:
            s.status = ZERO
            return report(ZERO, "capacity upper bound below zero threshold")
        if s.iteration > 1 and s.ds > prev + MONOTONE_SLACK:
            return report(INCONCLUSIVE, f"ds increased from {prev:.3e} to {s.ds:.3e}")

    decided_at = s.iteration
    s.status = POSITIVE
    for _ in range(refine_iters):
        if s.ds < refine_tol:
            break
        try:
            sinkhorn_step(s)
        except RankCollapse:
            break
    rep = report(POSITIVE, f"ds < {thr:.4g} after {decided_at} steps")
    rep.iterations = decided_at
    return rep


def capacity_scaling_law_check(F, g, h, **kw) -> float | None:
    """Relative error of cap({g A h}) against |det g|^2 |det h|^2 cap({A}).

    Returns None when either decision is not POSITIVE.
    """
    op = CPOperator.from_family(F) if isinstance(F, BlockMatrixFamily) else F
    g, h = np.asarray(g, dtype=float), np.asarray(h, dtype=float)
    moved = CPOperator(g @ op.kraus @ h, op.N, op.bits)
    base, other = decide_capacity(op, **kw), decide_capacity(moved, **kw)
    if base.decision != POSITIVE or other.decision != POSITIVE:
        return None
    log_factor = 2 * (math.log(abs(np.linalg.det(g))) + math.log(abs(np.linalg.det(h))))
    return abs(math.expm1(other.log_capacity - base.log_capacity - log_factor))
