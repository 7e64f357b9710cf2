"""Finite abstract simplicial complexes and their combinatorial topology.

Simplices are stored as sorted tuples of non-negative integers; a complex is an
immutable set of such tuples, closed under taking non-empty subsets.  All
arithmetic is exact (integers and :class:`fractions.Fraction`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

import networkx as nx

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed simplices, complexes or graphs."""


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical form of a vertex set; rejects empty and duplicate input."""
    vs = tuple(vertices)
    if not vs:
        raise ComplexError("empty simplex")
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ComplexError(f"vertex labels must be non-negative integers, got {v!r}")
    out = tuple(sorted(vs))
    if len(set(out)) != len(out):
        raise ComplexError(f"duplicate vertex in {vs}")
    return out


class SimplicialComplex:
    """An immutable finite abstract simplicial complex.

    Construct with :func:`closure_of` or :func:`whitney`; the constructor
    itself only checks closure, it does not complete the input.
    """

    def __init__(self, simplices: Iterable[Iterable[int]] = ()):
        sset = frozenset(simplex(s) for s in simplices)
        for s in sset:
            if len(s) > 1:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1:]
                    if face not in sset:
                        raise ComplexError(f"not closed: {face} missing below {s}")
        self.simplices: frozenset[Simplex] = sset

    @classmethod
    def _trusted(cls, sset: frozenset[Simplex]) -> SimplicialComplex:
        obj = cls.__new__(cls)
        obj.simplices = sset
        return obj

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, x):
        return tuple(sorted(x)) in self.simplices

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector}, facets={list(self.facets)[:4]}{'...' if len(self.facets) > 4 else ''})"

    def sorted(self) -> list[Simplex]:
        """Simplices ordered by dimension, then lexicographically."""
        return sorted(self.simplices, key=lambda s: (len(s), s))

    @cached_property
    def dim(self) -> int:
        """Maximal dimension; -1 for the empty complex."""
        return max((len(s) for s in self.simplices), default=0) - 1

    @property
    def q(self) -> int:
        return self.dim

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(s[0] for s in self.simplices if len(s) == 1))

    @cached_property
    def maximal(self) -> tuple[Simplex, ...]:
        """Inclusion-maximal simplices, sorted."""
        out = []
        for s in self.simplices:
            n = len(s)
            if not any(len(t) == n + 1 and set(s) <= set(t) for t in self._by_size.get(n + 1, ())):
                out.append(s)
        return tuple(sorted(out))

    @cached_property
    def facets(self) -> tuple[Simplex, ...]:
        """The simplices of top dimension q, sorted."""
        return tuple(sorted(self._by_size.get(self.dim + 1, ())))

    @cached_property
    def _by_size(self) -> dict[int, list[Simplex]]:
        by: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            by.setdefault(len(s), []).append(s)
        return by

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._by_size.get(k + 1, ())) for k in range(self.dim + 1))

    @property
    def is_pure(self) -> bool:
        return all(len(s) == self.dim + 1 for s in self.maximal)

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def f_polynomial(self) -> tuple[int, ...]:
        """Coefficients c_0..c_{q+1} of 1 + sum over simplices of t^|x|."""
        return (1,) + self.f_vector


EMPTY = SimplicialComplex._trusted(frozenset())


def closure_of(facet_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Smallest complex containing every listed vertex set."""
    out: set[Simplex] = set()
    for f in facet_list:
        s = simplex(f)
        if s in out:
            continue
        for k in range(1, len(s) + 1):
            out.update(itertools.combinations(s, k))
    return SimplicialComplex._trusted(frozenset(out))


def parse_edges(edge_list: Iterable[Iterable[int]]) -> list[tuple[int, int]]:
    edges = []
    seen = set()
    for e in edge_list:
        e = tuple(e)
        if len(e) != 2:
            raise ComplexError(f"edge must have two endpoints: {e}")
        a, b = e
        if a == b:
            raise ComplexError(f"self-loop at {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ComplexError(f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return edges


def whitney(edge_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Clique (Whitney) complex of a simple undirected graph."""
    edges = parse_edges(edge_list)
    g = nx.Graph()
    g.add_edges_from(edges)
    return closure_of(nx.find_cliques(g))


# -- summaries ---------------------------------------------------------------

def poly_eval(coeffs: Iterable[int], t):
    return sum(c * t**k for k, c in enumerate(coeffs))


def poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_add(a, b) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n))


def poly_derivative(a) -> tuple[int, ...]:
    return tuple(k * c for k, c in enumerate(a))[1:] or (0,)


def _trim(p) -> tuple[int, ...]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class CombinatorialSummary:
    f_vector: tuple[int, ...]
    f_polynomial: tuple[int, ...]
    euler_characteristic: int


def combinatorial_summary(c: SimplicialComplex) -> CombinatorialSummary:
    fpoly = c.f_polynomial()
    chi = c.euler_characteristic
    chi_poly = 1 - poly_eval(fpoly, -1)
    assert chi == chi_poly, (chi, chi_poly)
    return CombinatorialSummary(c.f_vector, fpoly, chi)


# -- local structure ---------------------------------------------------------

def star(c: SimplicialComplex, x: Iterable[int]) -> frozenset[Simplex]:
    """U(x): every simplex containing x, x included."""
    xs = set(x)
    return frozenset(y for y in c.simplices if xs <= set(y))


def unit_sphere(c: SimplicialComplex, x: Iterable[int]) -> SimplicialComplex:
    x = simplex(x)
    if x not in c.simplices:
        raise ComplexError(f"{x} is not a simplex of the complex")
    st = star(c, x)
    closed = set()
    for y in st:
        for k in range(1, len(y) + 1):
            closed.update(itertools.combinations(y, k))
    return SimplicialComplex._trusted(frozenset(closed - st))


@dataclass(frozen=True)
class SphereDecomposition:
    star: frozenset[Simplex]
    closed_star: SimplicialComplex
    unit_sphere: SimplicialComplex
    sub_sphere: SimplicialComplex
    link: SimplicialComplex


def sphere_decomposition(c: SimplicialComplex, x: Iterable[int]) -> SphereDecomposition:
    x = simplex(x)
    if x not in c.simplices:
        raise ComplexError(f"{x} is not a simplex of the complex")
    st = star(c, x)
    closed = closure_of(st)
    sphere = SimplicialComplex._trusted(closed.simplices - st)
    sub = SimplicialComplex._trusted(frozenset(
        s for k in range(1, len(x)) for s in itertools.combinations(x, k)))
    xs = set(x)
    link = SimplicialComplex._trusted(frozenset(
        tuple(v for v in y if v not in xs) for y in st if len(y) > len(x)))
    return SphereDecomposition(st, closed, sphere, sub, link)


def relabel(c: SimplicialComplex, mapping: dict[int, int]) -> SimplicialComplex:
    return SimplicialComplex._trusted(frozenset(tuple(sorted(mapping[v] for v in s)) for s in c.simplices))


def join(a: SimplicialComplex, b: SimplicialComplex, relabel_b: bool = False) -> SimplicialComplex:
    """A ⊕ B = A ∪ B ∪ {a ∪ b}.

    With ``relabel_b`` the vertices of ``b`` are shifted above those of ``a``
    (order preserving) before joining; otherwise overlapping labels raise.
    """
    if relabel_b and a.vertices and b.vertices:
        base = a.vertices[-1] + 1
        b = relabel(b, {v: base + i for i, v in enumerate(b.vertices)})
    if set(a.vertices) & set(b.vertices):
        raise ComplexError("join needs disjoint vertex sets (pass relabel_b=True)")
    out = set(a.simplices) | set(b.simplices)
    for x in a.simplices:
        for y in b.simplices:
            out.add(tuple(sorted(x + y)))
    result = SimplicialComplex._trusted(frozenset(out))
    expected = _trim(poly_mul(a.f_polynomial(), b.f_polynomial()))
    assert _trim(result.f_polynomial()) == expected, "join f-polynomial mismatch"
    return result


# -- walls and admissibility -------------------------------------------------

@dataclass(frozen=True)
class WallReport:
    interior: frozenset[Simplex]
    boundary: frozenset[Simplex]
    violations: frozenset[Simplex]
    # (q-1)-simplices lying in no facet; only possible for impure complexes
    uncovered: frozenset[Simplex] = field(default=frozenset())
    pure: bool = True
    q: int = 0

    @property
    def admissible(self) -> bool:
        return self.pure and self.q >= 1 and not self.violations


def wall_map(c: SimplicialComplex) -> dict[Simplex, list[Simplex]]:
    """(q-1)-simplex -> facets containing it."""
    out: dict[Simplex, list[Simplex]] = {w: [] for w in c._by_size.get(c.dim, ())}
    for f in c.facets:
        for i in range(len(f)):
            out[f[:i] + f[i + 1:]].append(f)
    return out


def classify_walls(c: SimplicialComplex) -> WallReport:
    interior, boundary, bad, uncovered = set(), set(), set(), set()
    if c.dim >= 1:
        for w, fs in wall_map(c).items():
            n = len(fs)
            (uncovered if n == 0 else boundary if n == 1 else interior if n == 2 else bad).add(w)
    return WallReport(frozenset(interior), frozenset(boundary), frozenset(bad),
                      frozenset(uncovered), c.is_pure, c.dim)


# -- Dehn-Sommerville recognition -------------------------------------------

def _shape_key(c: SimplicialComplex) -> frozenset[Simplex]:
    rank = {v: i for i, v in enumerate(c.vertices)}
    return frozenset(tuple(rank[v] for v in s) for s in c.simplices)


@lru_cache(maxsize=None)
def _ds_sphere_dim(key: frozenset[Simplex]) -> int | None:
    c = SimplicialComplex._trusted(key)
    d = c.dim
    if d == -1:
        return -1
    if c.euler_characteristic != 1 + (-1) ** d:
        return None
    for x in c.simplices:
        if _ds_sphere_dim(_shape_key(unit_sphere(c, x))) != d - 1:
            return None
    return d


def is_ds_sphere(c: SimplicialComplex) -> tuple[bool, int]:
    """Recursive Dehn-Sommerville sphere test; returns ``(is_sphere, dim)``."""
    d = _ds_sphere_dim(_shape_key(c))
    return (d is not None, c.dim)


def is_ds_manifold(c: SimplicialComplex) -> bool:
    q = c.dim
    if q < 0:
        return False
    return all(_ds_sphere_dim(_shape_key(unit_sphere(c, x))) == q - 1 for x in c.simplices)


# -- dual graph --------------------------------------------------------------

def dual_graph(c: SimplicialComplex) -> nx.Graph:
    """Facets as nodes, joined when they share a wall.

    Graph attributes ``regular_degree`` (or None) and ``triangle_free`` are
    filled in for reporting.
    """
    g = nx.Graph()
    g.add_nodes_from(c.facets)
    for fs in wall_map(c).values():
        for a, b in itertools.combinations(fs, 2):
            g.add_edge(a, b)
    degrees = {d for _, d in g.degree()}
    g.graph["regular_degree"] = degrees.pop() if len(degrees) == 1 else None
    g.graph["triangle_free"] = sum(nx.triangles(g).values()) == 0
    return g


def dual_distances(c: SimplicialComplex) -> dict[Simplex, dict[Simplex, int]]:
    return dict(nx.all_pairs_shortest_path_length(dual_graph(c)))


# -- curvature ---------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureReport:
    curvature: dict[int, Fraction]
    total: Fraction
    euler_characteristic: int
    derivative: tuple[int, ...]
    sphere_sum: tuple[int, ...]

    @property
    def gauss_bonnet(self) -> bool:
        return self.total == self.euler_characteristic

    @property
    def generating_function_identity(self) -> bool:
        return _trim(self.derivative) == _trim(self.sphere_sum)


def levitt_curvature(sphere_f: tuple[int, ...]) -> Fraction:
    # dimension-k term carries denominator k+2
    return 1 + sum(Fraction((-1) ** (k + 1) * n, k + 2) for k, n in enumerate(sphere_f))


def curvature_report(c: SimplicialComplex) -> CurvatureReport:
    curv = {}
    ssum: tuple[int, ...] = (0,)
    for v in c.vertices:
        s = unit_sphere(c, (v,))
        curv[v] = levitt_curvature(s.f_vector)
        ssum = poly_add(ssum, s.f_polynomial())
    total = sum(curv.values(), Fraction(0))
    return CurvatureReport(curv, total, c.euler_characteristic,
                           poly_derivative(c.f_polynomial()), ssum)
