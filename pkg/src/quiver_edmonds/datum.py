"""Quiver data (W, sigma) and the block-matrix family they define.

All indices are 0-based.  For a datum with positive vertices v_0..v_{n-1}
and negative vertices w_0..w_{m-1}, block rows q run over ``range(M)`` and
block columns r over ``range(M')``; row block q belongs to the negative
vertex j with ``q in I_minus[j]`` and column block r to the positive vertex
i with ``r in I_plus[i]``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DisconnectedQuiverWarning, ShapeError, WeightDimensionMismatch
from .quiver import (
    Path,
    Quiver,
    Representation,
    as_vector,
    enumerate_paths,
    evaluate_combination,
    evaluate_path,
    pairing,
)
from .rational import RationalMatrix, to_fraction


@dataclass(frozen=True, eq=False)
class QuiverDatum:
    rep: Representation
    weight: Mapping
    relations: tuple = ()

    def __post_init__(self):
        sigma = as_vector(self.rep.quiver, self.weight, "weight")
        object.__setattr__(self, "weight", sigma)
        object.__setattr__(self, "relations", tuple(self.relations))
        if pairing(sigma, self.rep.dim) != 0:
            raise WeightDimensionMismatch(
                f"weight-dimension pairing nonzero: sigma.beta = {pairing(sigma, self.rep.dim)}"
            )

    @property
    def quiver(self) -> Quiver:
        return self.rep.quiver

    @property
    def beta(self) -> dict:
        return self.rep.dim

    def scaled(self, n: int) -> QuiverDatum:
        return QuiverDatum(self.rep, {x: n * s for x, s in self.weight.items()}, self.relations)

    def with_rep(self, rep: Representation) -> QuiverDatum:
        return QuiverDatum(rep, self.weight, self.relations)


@dataclass(frozen=True)
class SigmaSplit:
    positives: tuple      # v_i
    sigma_plus: tuple     # sigma_+(v_i) > 0
    negatives: tuple      # w_j
    sigma_minus: tuple    # sigma_-(w_j) > 0
    I_plus: tuple         # range of column blocks per v_i
    I_minus: tuple        # range of row blocks per w_j
    M: int
    M_prime: int
    N: int
    row_heights: tuple    # height of row block q
    col_widths: tuple     # width of column block r
    row_offsets: tuple
    col_offsets: tuple
    row_owner: tuple      # j for row block q
    col_owner: tuple      # i for column block r

    @property
    def n(self):
        return len(self.positives)

    @property
    def m(self):
        return len(self.negatives)

    def summary(self) -> dict:
        return {"n": self.n, "m": self.m, "M": self.M, "M_prime": self.M_prime, "N": self.N}


def _intervals(values):
    out, start = [], 0
    for v in values:
        out.append(range(start, start + v))
        start += v
    return tuple(out), start


def _offsets(sizes):
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return tuple(out)


def split_weight(d: QuiverDatum) -> SigmaSplit:
    sigma, beta = d.weight, d.beta
    if pairing(sigma, beta) != 0:
        raise WeightDimensionMismatch("weight-dimension pairing nonzero")
    verts = d.quiver.vertices
    pos = tuple(x for x in verts if sigma[x] > 0)
    neg = tuple(x for x in verts if sigma[x] < 0)
    sp = tuple(sigma[x] for x in pos)
    sm = tuple(-sigma[x] for x in neg)
    I_plus, M_prime = _intervals(sp)
    I_minus, M = _intervals(sm)
    N_plus = sum(s * beta[x] for s, x in zip(sp, pos))
    N_minus = sum(s * beta[x] for s, x in zip(sm, neg))
    if N_plus != N_minus:
        raise WeightDimensionMismatch(f"block sizes disagree: {N_plus} != {N_minus}")
    row_owner = tuple(j for j, rng in enumerate(I_minus) for _ in rng)
    col_owner = tuple(i for i, rng in enumerate(I_plus) for _ in rng)
    heights = tuple(beta[neg[j]] for j in row_owner)
    widths = tuple(beta[pos[i]] for i in col_owner)
    return SigmaSplit(pos, sp, neg, sm, I_plus, I_minus, M, M_prime, N_plus,
                      heights, widths, _offsets(heights), _offsets(widths),
                      row_owner, col_owner)


@dataclass(frozen=True)
class FamilyMember:
    index: tuple          # (i, j, path, q, r)
    block: RationalMatrix
    row_offset: int
    col_offset: int

    @property
    def path(self) -> Path:
        return self.index[2]


@dataclass(frozen=True)
class BlockMatrixFamily:
    """The Kraus set {W^{i,j,p}_{q,r}} stored as single nonzero blocks."""

    N: int
    members: tuple
    row_heights: tuple
    col_widths: tuple
    split: SigmaSplit | None = field(default=None, compare=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def dense(self, k: int) -> RationalMatrix:
        mem = self.members[k]
        rows = [[Fraction(0)] * self.N for _ in range(self.N)]
        for a in range(mem.block.rows):
            for b in range(mem.block.cols):
                rows[mem.row_offset + a][mem.col_offset + b] = mem.block[a, b]
        return RationalMatrix.from_rows(rows, self.N)

    def matrices(self) -> list[RationalMatrix]:
        return [self.dense(k) for k in range(len(self.members))]

    def combination(self, coeffs: Sequence) -> RationalMatrix:
        """Exact ``sum(c_k A_k)``."""
        if len(coeffs) != len(self.members):
            raise ShapeError("coefficient vector length differs from family size")
        acc = [[Fraction(0)] * self.N for _ in range(self.N)]
        for c, mem in zip(coeffs, self.members):
            c = to_fraction(c)
            if not c:
                continue
            blk = mem.block
            for a in range(blk.rows):
                row = acc[mem.row_offset + a]
                for b in range(blk.cols):
                    x = blk[a, b]
                    if x:
                        row[mem.col_offset + b] += c * x
        return RationalMatrix.from_rows(acc, self.N)

    def integer_blocks(self) -> tuple[int, list[list[list[int]]]]:
        """Common denominator L and every block scaled by L to integers."""
        L = math.lcm(1, *(m.block.denominator_lcm() for m in self.members))
        blocks = [[[int(x * L) for x in row] for row in m.block.to_rows()] for m in self.members]
        return L, blocks

    def max_bit_length(self) -> int:
        return max((m.block.max_bit_length() for m in self.members), default=0)

    def key(self) -> tuple:
        """Path-free fingerprint in enumeration order, so paths of different quivers compare."""
        return tuple((m.index[0], m.index[1], m.index[3], m.index[4], m.row_offset,
                      m.col_offset, m.block) for m in self.members)


def paths_between_parts(d: QuiverDatum, split: SigmaSplit) -> dict:
    q = d.quiver
    return {(i, j): enumerate_paths(q, v, w)
            for i, v in enumerate(split.positives)
            for j, w in enumerate(split.negatives)}


def build_block_matrices(d: QuiverDatum) -> BlockMatrixFamily:
    split = split_weight(d)
    P = paths_between_parts(d, split)
    members = []
    for i in range(split.n):
        for j in range(split.m):
            for p in P[i, j]:
                Wp = evaluate_path(d.rep, p)
                for q in split.I_minus[j]:
                    for r in split.I_plus[i]:
                        members.append(FamilyMember((i, j, p, q, r), Wp,
                                                    split.row_offsets[q], split.col_offsets[r]))
    expected = sum(len(P[i, j]) * split.sigma_minus[j] * split.sigma_plus[i] for i, j in P)
    assert len(members) == expected, "family size disagrees with the index-set formula"
    return BlockMatrixFamily(split.N, tuple(members), split.row_heights, split.col_widths, split)


@dataclass(frozen=True, eq=False)
class BipartiteReduction:
    quiver: Quiver
    rep: Representation
    weight: dict
    arrow_paths: dict  # new arrow id -> original Path

    def datum(self) -> QuiverDatum:
        return QuiverDatum(self.rep, self.weight)


def build_bipartite(d: QuiverDatum) -> BipartiteReduction:
    """Collapse every path v_i -> w_j into a single arrow a_p of a bipartite quiver."""
    split = split_weight(d)
    P = paths_between_parts(d, split)
    flat = [(i, j, p) for i in range(split.n) for j in range(split.m) for p in P[i, j]]
    width = len(str(len(flat)))
    arrows, maps, arrow_paths = [], {}, {}
    for k, (i, j, p) in enumerate(flat):
        # zero-padded rank keeps lexicographic arrow order equal to path order
        aid = f"p{k:0{width}d}:{'.'.join(p.arrows)}"
        arrows.append((aid, split.positives[i], split.negatives[j]))
        maps[aid] = evaluate_path(d.rep, p)
        arrow_paths[aid] = p
    verts = split.positives + split.negatives
    # Q^sigma need not be connected
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DisconnectedQuiverWarning)
        qs = Quiver(verts, tuple(arrows))
    rep = Representation(qs, {x: d.beta[x] for x in verts}, maps)
    return BipartiteReduction(qs, rep, {x: d.weight[x] for x in verts}, arrow_paths)


def schofield_matrix(f, d: QuiverDatum) -> tuple[RationalMatrix, Fraction]:
    """Substitute W into a block matrix of path combinations; return (W^f, det W^f).

    ``f[j][i]`` is a sigma_-(w_j) x sigma_+(v_i) array whose entries are lists of
    ``(coeff, path)`` pairs (``path`` a Path or a list of arrow ids) running from
    v_i to w_j; an empty list is the zero combination.
    """
    split = split_weight(d)
    q, W = d.quiver, d.rep
    if len(f) != split.m or any(len(row) != split.n for row in f):
        raise ShapeError(f"f must be a {split.m} x {split.n} block array")
    out = [[Fraction(0)] * split.N for _ in range(split.N)]
    for j in range(split.m):
        for i in range(split.n):
            blk = f[j][i]
            if len(blk) != split.sigma_minus[j] or any(len(r) != split.sigma_plus[i] for r in blk):
                raise ShapeError(
                    f"block ({j},{i}) must be {split.sigma_minus[j]} x {split.sigma_plus[i]}"
                )
            v, w = split.positives[i], split.negatives[j]
            for s, row in enumerate(blk):
                qb = split.I_minus[j][s]
                for t, comb in enumerate(row):
                    if not comb:
                        continue
                    rb = split.I_plus[i][t]
                    terms = []
                    for c, p in comb:
                        if not isinstance(p, Path):
                            p = q.path(p)
                        if (p.source, p.target) != (v, w):
                            raise ShapeError(f"path {p.arrows} does not run from {v} to {w}")
                        terms.append((c, p))
                    val = evaluate_combination(W, terms)
                    for a in range(val.rows):
                        for b in range(val.cols):
                            out[split.row_offsets[qb] + a][split.col_offsets[rb] + b] += val[a, b]
    Wf = RationalMatrix.from_rows(out, split.N)
    return Wf, Wf.det()
