"""Small named quivers and deterministic random data used by tests and benchmarks."""
from __future__ import annotations

import itertools
import random
import warnings

from .datum import QuiverDatum, build_block_matrices, split_weight
from .errors import DisconnectedQuiverWarning
from .quiver import Quiver, Relation, Representation
from .rational import RationalMatrix
from .semigroup import weight_semigroup_member


def kronecker(l: int) -> Quiver:
    return Quiver(("1", "2"), tuple((f"a{k}", "1", "2") for k in range(1, l + 1)))


def a_n(n: int, orientation: str | None = None) -> Quiver:
    """Type A_n; orientation[k] is '>' for k+1 -> k+2 and '<' for the reverse."""
    orientation = orientation or ">" * (n - 1)
    arrows = []
    for k, o in enumerate(orientation):
        name = chr(ord("a") + k)
        u, v = str(k + 1), str(k + 2)
        arrows.append((name, u, v) if o == ">" else (name, v, u))
    return Quiver(tuple(str(k) for k in range(1, n + 1)), tuple(arrows))


def d4(orientation: str = ">>>") -> Quiver:
    """D_4 with centre 4 and legs 1, 2, 3; '>' points a leg into the centre."""
    arrows = []
    for k, o in enumerate(orientation):
        leg, name = str(k + 1), chr(ord("a") + k)
        arrows.append((name, leg, "4") if o == ">" else (name, "4", leg))
    return Quiver(("1", "2", "3", "4"), tuple(arrows))


def five_vertex() -> Quiver:
    """Five-vertex wild quiver with a: 2->1, b: 3->2, c: 3->1, d: 5->3, e: 4->3."""
    return Quiver(("1", "2", "3", "4", "5"),
                  (("a", "2", "1"), ("b", "3", "2"), ("c", "3", "1"),
                   ("d", "5", "3"), ("e", "4", "3")))


def five_vertex_relation(q: Quiver) -> Relation:
    return Relation.from_arrow_lists(q, [(1, ["b", "a"])])


def unit(n: int, i: int, j: int) -> RationalMatrix:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    return RationalMatrix.from_rows(rows, n)


def kronecker_datum(mats, sigma=(1, -1)) -> QuiverDatum:
    mats = [m if isinstance(m, RationalMatrix) else RationalMatrix.from_rows(m) for m in mats]
    N = mats[0].rows
    q = kronecker(len(mats))
    rep = Representation(q, {"1": N, "2": N}, {f"a{k + 1}": m for k, m in enumerate(mats)})
    return QuiverDatum(rep, dict(zip(q.vertices, sigma)))


def skew3_datum() -> QuiverDatum:
    """K_3 with the basis of 3x3 skew-symmetric matrices: sigma not in S, 2*sigma in S."""
    def skew(i, j):
        rows = [[0] * 3 for _ in range(3)]
        rows[i][j], rows[j][i] = 1, -1
        return rows
    return kronecker_datum([skew(0, 1), skew(0, 2), skew(1, 2)])


def random_acyclic_quiver(rng: random.Random, n_vertices: int, max_mult: int = 2,
                          density: float = 0.5) -> Quiver:
    """Random acyclic multigraph on vertices "0".."n-1" (possibly disconnected)."""
    rank = list(range(n_vertices))
    rng.shuffle(rank)
    arrows = []
    for i in range(n_vertices):
        for j in range(i + 1, n_vertices):
            if rng.random() < density:
                u, v = (i, j) if rank[i] < rank[j] else (j, i)
                arrows += [(f"x{i}{j}{k}", str(u), str(v)) for k in range(rng.randint(1, max_mult))]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DisconnectedQuiverWarning)
        return Quiver(tuple(str(v) for v in range(n_vertices)), tuple(arrows))


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3,
                  rank: int | None = None) -> RationalMatrix:
    if rank is None:
        return RationalMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)]
                                         for _ in range(rows)], cols)
    left = random_matrix(rng, rows, rank, lo, hi)
    right = random_matrix(rng, rank, cols, lo, hi)
    return left @ right if rank else RationalMatrix.zeros(rows, cols)


def random_representation(q: Quiver, beta, rng: random.Random, degenerate: float = 0.3,
                          lo: int = -3, hi: int = 3) -> Representation:
    """Integer entries; with probability ``degenerate`` an arrow gets a low-rank map."""
    beta = dict(zip(q.vertices, beta)) if not isinstance(beta, dict) else beta
    maps = {}
    for a in q.arrows:
        r, c = beta[a.head], beta[a.tail]
        rank = None
        if rng.random() < degenerate and min(r, c) > 0:
            rank = rng.randint(0, min(r, c) - 1)
        maps[a.id] = random_matrix(rng, r, c, lo, hi, rank)
    return Representation(q, beta, maps)


def random_invertible(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> RationalMatrix:
    while True:
        m = random_matrix(rng, n, n, lo, hi)
        if m.det() != 0:
            return m


def weights(q: Quiver, beta, bound: int = 2, max_N: int = 6):
    """All nonzero sigma with entries in [-bound, bound], sigma.beta = 0 and N <= max_N."""
    beta = dict(zip(q.vertices, beta)) if not isinstance(beta, dict) else beta
    out = []
    for sig in itertools.product(range(-bound, bound + 1), repeat=len(q.vertices)):
        if not any(sig):
            continue
        sigma = dict(zip(q.vertices, sig))
        if sum(sigma[x] * beta[x] for x in q.vertices) != 0:
            continue
        N = sum(s * beta[x] for x, s in sigma.items() if s > 0)
        if 0 < N <= max_N:
            out.append(sigma)
    return out


def dynkin_quivers() -> list[Quiver]:
    return [a_n(2), a_n(3, ">>"), a_n(3, "<>"), a_n(3, "><"), a_n(4, ">><"),
            d4(">>>"), d4("<<<"), d4("><>")]


def saturated_suite(size: int = 36, seed: int = 2024, max_N: int = 6,
                    coeff_cap: int = 12) -> list[QuiverDatum]:
    """Deterministic Dynkin and Kronecker data (saturated by representation type)."""
    rng = random.Random(seed)
    quivers = dynkin_quivers() + [kronecker(2)]
    out = []
    while len(out) < size:
        q = rng.choice(quivers)
        beta = [rng.randint(0, 2) for _ in q.vertices]
        cands = weights(q, beta, 2, max_N)
        if not cands:
            continue
        # favour weights in the weight semigroup so both answers occur often
        good = [s for s in cands if weight_semigroup_member(q, beta, s).answer == "YES"]
        pool = good if good and rng.random() < 0.75 else cands
        W = random_representation(q, beta, rng)
        d = QuiverDatum(W, rng.choice(pool))
        k = len(build_block_matrices(d))
        if k == 0 or k > coeff_cap or split_weight(d).N == 0:
            continue
        out.append(d)
    return out
