"""Orbit-semigroup membership, weight-semigroup membership and saturation probes."""
from __future__ import annotations

from dataclasses import dataclass, field

from .capacity import ZERO, decide_capacity
from .datum import QuiverDatum, build_block_matrices
from .errors import InconsistencyAlarm
from .oracle import DEFAULT_SIZE_CAP, NO, YES, SpanDecision, decide_family
from .quiver import Quiver, as_vector, euler_matrix

UNSUPPORTED = "UNSUPPORTED"
CONSISTENT_ERP = "CONSISTENT_ERP"
WITNESSED_NON_SATURATED = "WITNESSED_NON_SATURATED"
INCONCLUSIVE = "INCONCLUSIVE"

DEFAULT_N_MAX = 4


@dataclass
class WeightSemigroupResult:
    answer: str
    alpha: dict | None = None

    def to_dict(self):
        return {"answer": self.answer, "alpha": self.alpha}


def weight_semigroup_member(q: Quiver, beta, sigma, relations=()) -> WeightSemigroupResult:
    """Solve sigma|supp(beta) = <alpha, ->  on the full subquiver of supp(beta).

    The Euler matrix is unipotent triangular in topological order, so the
    integer solution is unique; membership holds iff alpha >= 0.  Path algebras
    are hereditary, so every alpha carries modules of projective dimension <= 1.
    """
    if relations:
        return WeightSemigroupResult(UNSUPPORTED)
    beta = as_vector(q, beta, "beta")
    sigma = as_vector(q, sigma, "sigma")
    sub = q.full_subquiver(x for x in q.vertices if beta[x] != 0)
    order, E = euler_matrix(sub)
    alpha = {}
    # sigma(y) = sum_x alpha(x) E[x, y]; E[y, y] = 1 and E[x, y] = 0 for x after y
    for k, y in enumerate(order):
        alpha[y] = sigma[y] - sum(alpha[order[t]] * int(E[t, k]) for t in range(k))
    alpha = {x: alpha[x] for x in sub.vertices}
    return WeightSemigroupResult(YES if all(a >= 0 for a in alpha.values()) else NO, alpha)


@dataclass
class MembershipReport:
    weight: dict
    sigma_in_S: str
    span: SpanDecision
    semistable: str
    capacity: object
    in_weight_semigroup: str
    alpha: dict | None

    def to_dict(self):
        return {
            "weight": self.weight,
            "sigma_in_S": self.sigma_in_S,
            "span_decision": self.span.to_dict(),
            "semistable": self.semistable,
            "capacity": self.capacity.to_dict(history=False),
            "in_weight_semigroup": self.in_weight_semigroup,
            "alpha": self.alpha,
        }


def orbit_membership(d: QuiverDatum, mode: str = "auto", *, capacity_kw=None, **oracle_kw) -> MembershipReport:
    """Exact membership of sigma, capacity positivity and the weight-semigroup test.

    Raises ``InconsistencyAlarm`` when an exact YES meets capacity ZERO or a
    negative Euler solve.
    """
    F = build_block_matrices(d)
    span = decide_family(F, mode, **oracle_kw)
    span.weight = dict(d.weight)
    cap = decide_capacity(F, **(capacity_kw or {}))
    ws = weight_semigroup_member(d.quiver, d.beta, d.weight, d.relations)
    if span.answer == YES and cap.decision == ZERO:
        raise InconsistencyAlarm("sigma is in the orbit semigroup but capacity was decided ZERO")
    if span.answer == YES and ws.answer == NO:
        raise InconsistencyAlarm("sigma is in the orbit semigroup but not in the weight semigroup")
    return MembershipReport(dict(d.weight), span.answer, span, cap.decision, cap,
                            ws.answer, ws.alpha)


@dataclass
class SaturationReport:
    weight: dict
    erp_status: str
    witness: int | None
    capacity: str
    decisions: list = field(default_factory=list)  # SpanDecision per n = 1..n_max

    def to_dict(self):
        return {
            "weight": self.weight,
            "erp_status": self.erp_status,
            "witness": self.witness,
            "capacity": self.capacity,
            "per_n": [
                {"n": k + 1, "answer": dec.answer, "method": dec.method, "N": dec.N,
                 "family_size": dec.family_size}
                for k, dec in enumerate(self.decisions)
            ],
        }


def saturation_probe(d: QuiverDatum, n_max: int = DEFAULT_N_MAX, mode: str = "symbolic", *,
                     size_cap: int | None = DEFAULT_SIZE_CAP, capacity_kw=None,
                     **oracle_kw) -> SaturationReport:
    """Probe whether sigma is W-saturated using n*sigma for n = 1..n_max.

    In symbolic mode a multiple whose family exceeds the size caps is tested
    with the randomized oracle instead.  A missing witness never proves
    saturation by itself; the verdict is CONSISTENT_ERP only when capacity
    and exact membership agree.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    sub_mode = "auto" if mode == "symbolic" else mode
    decisions = []
    for n in range(1, n_max + 1):
        F = build_block_matrices(d.scaled(n))
        dec = decide_family(F, sub_mode, size_cap=size_cap, **oracle_kw)
        dec.multiple = n
        decisions.append(dec)
    cap = decide_capacity(build_block_matrices(d), **(capacity_kw or {})).decision
    witness = next((k + 1 for k, dec in enumerate(decisions) if dec.answer == YES), None)
    if witness is not None and cap == ZERO:
        raise InconsistencyAlarm(f"{witness}*sigma is in the orbit semigroup but capacity is ZERO")
    first = decisions[0]
    if first.answer == YES:
        status = CONSISTENT_ERP
    elif witness is not None:
        status = WITNESSED_NON_SATURATED if first.method == "symbolic" else INCONCLUSIVE
    elif cap == ZERO:
        status = CONSISTENT_ERP
    else:
        status = INCONCLUSIVE
    return SaturationReport(dict(d.weight), status, witness, cap, decisions)
