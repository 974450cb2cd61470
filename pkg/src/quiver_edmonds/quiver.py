"""Acyclic quivers, their representations, and hereditary homological data.

Paths are stored in traversal order: the first arrow leaves the source.
Evaluating a path multiplies the arrow matrices in reverse list order, so
``evaluate_path(W, [a, b]) == W(b) @ W(a)``.
"""
from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BoundAlgebraUnsupported,
    CycleError,
    DanglingIdError,
    DisconnectedQuiverWarning,
    InvalidPathError,
    ShapeError,
    SingularBaseChange,
)
from .rational import RationalMatrix, block_sum, to_fraction


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str


def _topological_order(vertices, arrows):
    out = defaultdict(list)
    indeg = {v: 0 for v in vertices}
    for a in arrows:
        out[a.tail].append(a)
        indeg[a.head] += 1
    order = []
    ready = [v for v in vertices if indeg[v] == 0]
    position = {v: k for k, v in enumerate(vertices)}
    while ready:
        ready.sort(key=position.__getitem__, reverse=True)
        v = ready.pop()
        order.append(v)
        for a in out[v]:
            indeg[a.head] -= 1
            if indeg[a.head] == 0:
                ready.append(a.head)
    if len(order) == len(vertices):
        return order
    raise CycleError(_find_cycle(vertices, out))


def _find_cycle(vertices, out):
    color = dict.fromkeys(vertices, 0)
    stack = []

    def visit(v):
        color[v] = 1
        stack.append(v)
        for a in out[v]:
            if color[a.head] == 1:
                return stack[stack.index(a.head):] + [a.head]
            if color[a.head] == 0:
                found = visit(a.head)
                if found:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in vertices:
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return []


def _is_connected(vertices, arrows):
    if not vertices:
        return True
    nbrs = defaultdict(set)
    for a in arrows:
        nbrs[a.tail].add(a.head)
        nbrs[a.head].add(a.tail)
    seen = {vertices[0]}
    todo = [vertices[0]]
    while todo:
        v = todo.pop()
        for u in nbrs[v] - seen:
            seen.add(u)
            todo.append(u)
    return len(seen) == len(vertices)


@dataclass(frozen=True)
class Quiver:
    """Acyclic directed multigraph with string vertex and arrow ids.

    ``arrows`` accepts ``Arrow`` objects or ``(id, tail, head)`` triples.
    Construction fails with ``CycleError`` on a directed cycle and warns
    (``DisconnectedQuiverWarning``) when the underlying graph is disconnected.
    """

    vertices: tuple
    arrows: tuple
    order: tuple = field(init=False, compare=False)
    connected: bool = field(init=False, compare=False)

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        arrows = tuple(
            a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
            for a in self.arrows
        )
        if len(set(vertices)) != len(vertices):
            raise DanglingIdError("duplicate vertex id")
        if len({a.id for a in arrows}) != len(arrows):
            raise DanglingIdError("duplicate arrow id")
        vset = set(vertices)
        for a in arrows:
            if a.tail not in vset or a.head not in vset:
                raise DanglingIdError(f"arrow {a.id!r} references an unknown vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "order", tuple(_topological_order(vertices, arrows)))
        connected = _is_connected(vertices, arrows)
        object.__setattr__(self, "connected", connected)
        if not connected:
            warnings.warn("quiver is not connected", DisconnectedQuiverWarning, stacklevel=3)

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrow_index[arrow_id]
        except KeyError:
            raise DanglingIdError(f"unknown arrow {arrow_id!r}") from None

    @property
    def _arrow_index(self):
        idx = self.__dict__.get("_arrow_cache")
        if idx is None:
            idx = {a.id: a for a in self.arrows}
            object.__setattr__(self, "_arrow_cache", idx)
        return idx

    def check_vertex(self, v) -> str:
        v = str(v)
        if v not in self.vertices:
            raise DanglingIdError(f"unknown vertex {v!r}")
        return v

    def path(self, arrow_ids: Sequence[str]) -> Path:
        arrows = [self.arrow(str(a)) for a in arrow_ids]
        if not arrows:
            raise InvalidPathError("paths have length at least one")
        for first, second in zip(arrows, arrows[1:]):
            if first.head != second.tail:
                raise InvalidPathError(f"arrows {first.id!r} and {second.id!r} do not compose")
        return Path(tuple(a.id for a in arrows), arrows[0].tail, arrows[-1].head)

    def adjacency(self) -> np.ndarray:
        """Arrow-count matrix in ``self.vertices`` order."""
        pos = {v: k for k, v in enumerate(self.vertices)}
        A = np.zeros((len(self.vertices),) * 2, dtype=np.int64)
        for a in self.arrows:
            A[pos[a.tail], pos[a.head]] += 1
        return A

    def full_subquiver(self, keep: Iterable) -> Quiver:
        keep = {str(v) for v in keep}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DisconnectedQuiverWarning)
            return Quiver(
                tuple(v for v in self.vertices if v in keep),
                tuple(a for a in self.arrows if a.tail in keep and a.head in keep),
            )


@dataclass(frozen=True)
class Path:
    arrows: tuple
    source: str
    target: str

    def __len__(self):
        return len(self.arrows)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of length >= 2."""

    terms: tuple  # of (Fraction, Path)

    def __post_init__(self):
        terms = tuple((to_fraction(c), p) for c, p in self.terms)
        if not terms:
            raise InvalidPathError("empty relation")
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise InvalidPathError("relation paths are not parallel")
        if any(len(p) < 2 for _, p in terms):
            raise InvalidPathError("relation paths must have length >= 2")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_arrow_lists(cls, quiver: Quiver, terms) -> Relation:
        return cls(tuple((c, quiver.path(p)) for c, p in terms))


def as_vector(q: Quiver, v, name="vector") -> dict:
    """Normalise a per-vertex integer vector (mapping or sequence) to a dict."""
    if isinstance(v, Mapping):
        out = {q.check_vertex(k): int(x) for k, x in v.items()}
        missing = [x for x in q.vertices if x not in out]
        if missing:
            raise ShapeError(f"{name} has no entry for vertices {missing}")
        return {x: out[x] for x in q.vertices}
    v = list(v)
    if len(v) != len(q.vertices):
        raise ShapeError(f"{name} has {len(v)} entries for {len(q.vertices)} vertices")
    return {x: int(y) for x, y in zip(q.vertices, v)}


def pairing(sigma: Mapping, beta: Mapping) -> int:
    return sum(sigma[x] * beta[x] for x in beta)


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    dim: Mapping
    maps: Mapping  # arrow id -> RationalMatrix of shape dim(head) x dim(tail)

    def __post_init__(self):
        q = self.quiver
        dim = as_vector(q, self.dim, "dimension vector")
        if any(d < 0 for d in dim.values()):
            raise ShapeError("dimension vector has a negative entry")
        maps = {}
        given = {str(k): v for k, v in self.maps.items()}
        for k in given:
            q.arrow(k)
        for a in q.arrows:
            m = given.get(a.id)
            if m is None:
                m = RationalMatrix.zeros(dim[a.head], dim[a.tail])
            elif not isinstance(m, RationalMatrix):
                m = RationalMatrix.from_rows(m, dim[a.tail])
            if m.shape != (dim[a.head], dim[a.tail]):
                raise ShapeError(
                    f"arrow {a.id!r}: matrix is {m.rows}x{m.cols}, "
                    f"expected {dim[a.head]}x{dim[a.tail]}"
                )
            maps[a.id] = m
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "maps", maps)

    def __getitem__(self, arrow_id):
        return self.maps[arrow_id]

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.quiver == other.quiver and self.dim == other.dim and self.maps == other.maps

    __hash__ = None


def validate_quiver(q: Quiver) -> list:
    """Topological order of ``q``; warns when ``q`` is disconnected."""
    if not q.connected:
        warnings.warn("quiver is not connected", DisconnectedQuiverWarning, stacklevel=2)
    return list(q.order)


def enumerate_paths(q: Quiver, source, target) -> list[Path]:
    """All directed paths of length >= 1 from source to target, lexicographic by arrow ids."""
    source, target = q.check_vertex(source), q.check_vertex(target)
    out = defaultdict(list)
    for a in q.arrows:
        out[a.tail].append(a)
    for v in out:
        out[v].sort(key=lambda a: a.id)
    found = []

    def walk(v, trail):
        for a in out[v]:
            trail.append(a.id)
            if a.head == target:
                found.append(tuple(trail))
            else:
                walk(a.head, trail)
            trail.pop()

    walk(source, [])
    found.sort()
    return [Path(p, source, target) for p in found]


def evaluate_path(W: Representation, p: Path) -> RationalMatrix:
    m = W[p.arrows[0]]
    for a in p.arrows[1:]:
        m = W[a] @ m
    return m


def evaluate_combination(W: Representation, terms) -> RationalMatrix:
    """``sum(c * W(p))`` over ``(c, Path)`` terms sharing source and target."""
    terms = list(terms)
    p0 = terms[0][1]
    rows, cols = W.dim[p0.target], W.dim[p0.source]
    return block_sum(((to_fraction(c), evaluate_path(W, p)) for c, p in terms), rows, cols)


@dataclass(frozen=True)
class RelationCheck:
    relation: Relation
    passed: bool
    residual: RationalMatrix


def check_relations(W: Representation, rels: Iterable[Relation]) -> list[RelationCheck]:
    results = []
    for r in rels:
        res = evaluate_combination(W, r.terms)
        results.append(RelationCheck(r, res.is_zero(), res))
    return results


def euler_matrix(q: Quiver) -> tuple[list, np.ndarray]:
    """``(order, E)`` with E[x][y] = delta_xy - #arrows x->y, rows in topological order."""
    order = list(q.order)
    pos = {v: k for k, v in enumerate(order)}
    E = np.eye(len(order), dtype=np.int64)
    for a in q.arrows:
        E[pos[a.tail], pos[a.head]] -= 1
    return order, E


def euler_form(q: Quiver, alpha, beta, relations=()) -> tuple[int, np.ndarray]:
    """Euler form of the path algebra KQ and its matrix (topological order)."""
    if relations:
        raise BoundAlgebraUnsupported("Euler form of a bound quiver algebra is not computed")
    alpha, beta = as_vector(q, alpha, "alpha"), as_vector(q, beta, "beta")
    value = sum(alpha[x] * beta[x] for x in q.vertices)
    value -= sum(alpha[a.tail] * beta[a.head] for a in q.arrows)
    return value, euler_matrix(q)[1]


def hom_ext_dims(V: Representation, W: Representation, relations=()) -> tuple[int, int]:
    """``(dim Hom(V, W), dim Ext^1(V, W))`` over the path algebra, by exact rank."""
    if relations:
        raise BoundAlgebraUnsupported("Hom/Ext over a bound quiver algebra is not computed")
    if V.quiver != W.quiver:
        raise ShapeError("representations of different quivers")
    q = V.quiver
    dv, dw = V.dim, W.dim
    # f(x) is a dw[x] x dv[x] block, vectorised row-major
    col_off, n_dom = {}, 0
    for x in q.vertices:
        col_off[x] = n_dom
        n_dom += dw[x] * dv[x]
    rows = []
    for a in q.arrows:
        t, h = a.tail, a.head
        Wa, Va = W[a.id], V[a.id]
        for r in range(dw[h]):
            for c in range(dv[t]):
                row = [Fraction(0)] * n_dom
                # (W(a) f(t))[r, c]
                for k in range(dw[t]):
                    row[col_off[t] + k * dv[t] + c] += Wa[r, k]
                # -(f(h) V(a))[r, c]
                for k in range(dv[h]):
                    row[col_off[h] + r * dv[h] + k] -= Va[k, c]
                rows.append(row)
    n_cod = len(rows)
    rank = RationalMatrix.from_rows(rows, n_dom).rank() if rows and n_dom else 0
    return n_dom - rank, n_cod - rank


def apply_base_change(g: Mapping, W: Representation) -> Representation:
    """``(g.W)(a) = g(head) W(a) g(tail)^-1``; ``g`` maps vertex -> square matrix."""
    q = W.quiver
    gm, ginv = {}, {}
    for x in q.vertices:
        m = g[x]
        if not isinstance(m, RationalMatrix):
            m = RationalMatrix.from_rows(m, W.dim[x])
        if m.shape != (W.dim[x], W.dim[x]):
            raise ShapeError(f"base change at {x!r} has shape {m.shape}")
        try:
            ginv[x] = m.inverse()
        except ZeroDivisionError:
            raise SingularBaseChange(f"base change at vertex {x!r} is singular") from None
        gm[x] = m
    maps = {a.id: gm[a.head] @ W[a.id] @ ginv[a.tail] for a in q.arrows}
    return Representation(q, W.dim, maps)
