"""Exact decision of whether the span of a block-matrix family contains a
non-singular matrix, i.e. whether det(sum t_k A_k) is a nonzero polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .datum import BlockMatrixFamily, QuiverDatum, build_block_matrices
from .errors import SizeCapExceeded
from .kernels import det_int

YES, NO = "YES", "NO"

DEFAULT_TRIALS = 40
DEFAULT_SIZE_CAP = 8
DEFAULT_COEFF_CAP = 12

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (next_state, output)."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def trial_seeds(master: int, k: int) -> list[int]:
    """Seed of trial i is the generator output after advancing the master i+1 times."""
    state, out = master & _MASK64, []
    for _ in range(k):
        state, z = splitmix64(state)
        out.append(z)
    return out


@dataclass
class SpanDecision:
    answer: str
    method: str
    N: int
    family_size: int
    coefficients: list | None = None    # YES certificate
    determinant: Fraction | None = None  # exact det of the certified combination
    proof_zero: bool = False             # symbolic NO: polynomial is identically zero
    failure_probability: float = 0.0     # randomized NO only
    trials: int = 0
    seed: int | None = None
    sample_bound: int | None = None
    monomials: int | None = None
    weight: dict | None = None
    multiple: int = 1
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "method": self.method,
            "N": self.N,
            "family_size": self.family_size,
            "certificate": None if self.coefficients is None else {
                "coefficients": list(self.coefficients),
                "determinant": str(self.determinant),
            },
            "proof_zero": self.proof_zero,
            "failure_probability": self.failure_probability,
            "trials": self.trials,
            "seed": self.seed,
            "sample_bound": self.sample_bound,
            "monomials": self.monomials,
            "weight": self.weight,
            "multiple": self.multiple,
            "notes": list(self.notes),
        }


class _IntegerFamily:
    """Family blocks rescaled by a common denominator L; combinations are integral."""

    def __init__(self, F: BlockMatrixFamily):
        self.F = F
        self.L, self.blocks = F.integer_blocks()

    def combine(self, coeffs) -> list[list[int]]:
        N = self.F.N
        acc = [[0] * N for _ in range(N)]
        for c, mem, blk in zip(coeffs, self.F.members, self.blocks):
            if not c:
                continue
            ro, co = mem.row_offset, mem.col_offset
            for a, brow in enumerate(blk):
                row = acc[ro + a]
                for b, x in enumerate(brow):
                    if x:
                        row[co + b] += c * x
        return acc

    def det(self, coeffs) -> Fraction:
        return Fraction(det_int(self.combine(coeffs)), self.L ** self.F.N)


def verify_certificate(F: BlockMatrixFamily, coeffs) -> Fraction:
    """Exact determinant of ``sum(c_k A_k)`` through the rational path."""
    return F.combination(coeffs).det()


def _trivial(F: BlockMatrixFamily, method: str) -> SpanDecision | None:
    if F.N == 0:
        return SpanDecision(YES, method, 0, len(F), coefficients=[0] * len(F),
                            determinant=Fraction(1), notes=["empty determinant is 1"])
    if len(F) == 0:
        return SpanDecision(NO, method, F.N, 0, proof_zero=True, notes=["empty family"])
    return None


def randomized_span_test(F: BlockMatrixFamily, trials: int = DEFAULT_TRIALS,
                         sample_bound: int | None = None, seed: int = 0) -> SpanDecision:
    """Schwartz-Zippel test: one-sided, YES answers carry an exact certificate."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    S = 2 * max(F.N, 1) if sample_bound is None else int(sample_bound)
    if S < 2 * F.N or S < 2:
        raise ValueError(f"sample bound {S} is below 2N = {2 * F.N}")
    trivial = _trivial(F, "randomized")
    if trivial is not None:
        trivial.seed, trivial.sample_bound = seed, S
        return trivial
    IF = _IntegerFamily(F)
    for t, ts in enumerate(trial_seeds(seed, trials)):
        rng = np.random.Generator(np.random.PCG64(ts))
        coeffs = [int(c) for c in rng.integers(0, S, size=len(F))]
        det = IF.det(coeffs)
        if det != 0:
            return SpanDecision(YES, "randomized", F.N, len(F), coefficients=coeffs,
                                determinant=det, trials=t + 1, seed=seed, sample_bound=S)
    return SpanDecision(NO, "randomized", F.N, len(F), trials=trials, seed=seed,
                        sample_bound=S, failure_probability=(F.N / S) ** trials)


def determinant_polynomial(F: BlockMatrixFamily) -> dict:
    """det(sum t_k A_k) as {sorted tuple of variable indices: Fraction}.

    Laplace expansion row by row with memoisation over the set of used
    columns, visiting only structurally nonzero cells.
    """
    N = F.N
    L, blocks = F.integer_blocks()
    cells = [[{} for _ in range(N)] for _ in range(N)]
    for k, (mem, blk) in enumerate(zip(F.members, blocks)):
        for a, brow in enumerate(blk):
            for b, x in enumerate(brow):
                if x:
                    cell = cells[mem.row_offset + a][mem.col_offset + b]
                    cell[k] = cell.get(k, 0) + x
    nz = [[(c, cells[r][c]) for c in range(N) if cells[r][c]] for r in range(N)]
    full = (1 << N) - 1

    @lru_cache(maxsize=None)
    def expand(mask: int):
        if mask == full:
            return {(): 1}
        r = bin(mask).count("1")
        out = {}
        for c, form in nz[r]:
            if mask >> c & 1:
                continue
            # sign from the number of still-free columns left of c
            free_left = c - bin(mask & ((1 << c) - 1)).count("1")
            sign = -1 if free_left & 1 else 1
            sub = expand(mask | (1 << c))
            if not sub:
                continue
            for mono, coef in sub.items():
                for k, x in form.items():
                    key = tuple(sorted(mono + (k,)))
                    v = out.get(key, 0) + sign * x * coef
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    poly = expand(0)
    expand.cache_clear()
    scale = L ** N
    return {m: Fraction(c, scale) for m, c in poly.items()}


def _nonvanishing_point(F: BlockMatrixFamily, seed: int, tries: int = 256):
    IF = _IntegerFamily(F)
    S = 2 * F.N
    for ts in trial_seeds(seed, tries):
        rng = np.random.Generator(np.random.PCG64(ts))
        coeffs = [int(c) for c in rng.integers(0, S, size=len(F))]
        det = IF.det(coeffs)
        if det != 0:
            return coeffs, det
    raise RuntimeError("no nonvanishing point found for a nonzero polynomial")


def symbolic_span_test(F: BlockMatrixFamily, size_cap: int | None = DEFAULT_SIZE_CAP,
                       coeff_cap: int | None = DEFAULT_COEFF_CAP, seed: int = 0) -> SpanDecision:
    """Deterministic exact test by expanding the determinant polynomial."""
    if size_cap is not None and F.N > size_cap:
        raise SizeCapExceeded(f"N = {F.N} exceeds the symbolic size cap {size_cap}")
    if coeff_cap is not None and len(F) > coeff_cap:
        raise SizeCapExceeded(f"|family| = {len(F)} exceeds the coefficient cap {coeff_cap}")
    trivial = _trivial(F, "symbolic")
    if trivial is not None:
        trivial.monomials = 1 if F.N == 0 else 0
        return trivial
    poly = determinant_polynomial(F)
    if not poly:
        return SpanDecision(NO, "symbolic", F.N, len(F), proof_zero=True, monomials=0)
    coeffs, det = _nonvanishing_point(F, seed)
    return SpanDecision(YES, "symbolic", F.N, len(F), coefficients=coeffs, determinant=det,
                        monomials=len(poly), seed=seed)


def decide_family(F: BlockMatrixFamily, mode: str = "auto", *, trials: int = DEFAULT_TRIALS,
                  sample_bound: int | None = None, seed: int = 0,
                  size_cap: int | None = DEFAULT_SIZE_CAP,
                  coeff_cap: int | None = DEFAULT_COEFF_CAP) -> SpanDecision:
    """``mode`` is "symbolic", "randomized" or "auto" (symbolic when within caps)."""
    if mode == "randomized":
        return randomized_span_test(F, trials, sample_bound, seed)
    if mode == "symbolic":
        return symbolic_span_test(F, size_cap, coeff_cap, seed)
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    try:
        return symbolic_span_test(F, size_cap, coeff_cap, seed)
    except SizeCapExceeded as exc:
        dec = randomized_span_test(F, trials, sample_bound, seed)
        dec.notes.append(f"symbolic skipped: {exc}")
        return dec


def decide_membership(d: QuiverDatum, mode: str = "auto", multiple: int = 1, **kw) -> SpanDecision:
    """Is ``multiple * sigma`` in the orbit semigroup of W?"""
    if multiple < 1:
        raise ValueError("multiple must be a positive integer")
    dd = d.scaled(multiple) if multiple != 1 else d
    dec = decide_family(build_block_matrices(dd), mode, **kw)
    dec.weight = dict(dd.weight)
    dec.multiple = multiple
    return dec
