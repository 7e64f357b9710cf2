"""Named test spaces: cross-polytopes, cycles, paths and simplices."""

from __future__ import annotations

import itertools

from .complex import ComplexError, SimplicialComplex, closure_of, whitney


def cross_polytope(dim: int, labeling: str = "antipodal") -> SimplicialComplex:
    """Boundary of the (dim+1)-dimensional cross-polytope, a dim-sphere.

    It is the join of dim+1 zero-spheres, i.e. the Whitney complex of
    K_{2,...,2}.  With ``labeling="antipodal"`` the antipodal pairs are
    {i, i+dim+1} (so the octahedron has facets (1,2,3) and (2,3,4)); with
    ``"parts"`` they are {1,2}, {3,4}, ... as in CompleteGraph[{2,...,2}].
    """
    if dim < 0:
        raise ComplexError("dim must be >= 0")
    k = dim + 1
    if labeling == "antipodal":
        parts = [(i, i + k) for i in range(1, k + 1)]
    elif labeling == "parts":
        parts = [(2 * i + 1, 2 * i + 2) for i in range(k)]
    else:
        raise ComplexError(f"unknown labeling {labeling!r}")
    return closure_of(itertools.product(*parts))


def complete_multipartite_edges(sizes: list[int]) -> list[tuple[int, int]]:
    """Edges of K_{n1,n2,...} with consecutive labels from 1."""
    parts, start = [], 1
    for n in sizes:
        parts.append(range(start, start + n))
        start += n
    return [(a, b) for p, r in itertools.combinations(parts, 2) for a in p for b in r]


def cycle(n: int) -> SimplicialComplex:
    if n < 4:
        # C_3 as a graph would give a filled triangle under Whitney
        if n == 3:
            return closure_of([(1, 2), (2, 3), (1, 3)])
        raise ComplexError("cycle needs n >= 3")
    return whitney([(i, i % n + 1) for i in range(1, n + 1)])


def path(n: int) -> SimplicialComplex:
    """Path complex 1-2-...-n."""
    if n < 2:
        raise ComplexError("path needs n >= 2")
    return closure_of([(i, i + 1) for i in range(1, n)])


def full_simplex(n: int) -> SimplicialComplex:
    """A single n-simplex on vertices 1..n+1."""
    if n < 0:
        raise ComplexError("simplex dimension must be >= 0")
    return closure_of([tuple(range(1, n + 2))])


def icosahedron() -> SimplicialComplex:
    top, bottom = 1, 12
    upper = [2, 3, 4, 5, 6]
    lower = [7, 8, 9, 10, 11]
    facets = []
    for i in range(5):
        j = (i + 1) % 5
        facets.append((top, upper[i], upper[j]))
        facets.append((bottom, lower[i], lower[j]))
        facets.append((upper[i], upper[j], lower[i]))
        facets.append((upper[j], lower[i], lower[j]))
    return closure_of(facets)


GENERATORS = {
    "cross-polytope": "dim",
    "cycle": "n",
    "path": "n",
    "simplex": "dim",
    "icosahedron": None,
}


def generate(name: str, dim: int | None = None, n: int | None = None,
             labeling: str = "antipodal") -> SimplicialComplex:
    if name == "cross-polytope":
        return cross_polytope(2 if dim is None else dim, labeling)
    if name == "cycle":
        return cycle(n if n is not None else 4)
    if name == "path":
        return path(n if n is not None else 4)
    if name == "simplex":
        return full_simplex(dim if dim is not None else (n if n is not None else 2))
    if name == "icosahedron":
        return icosahedron()
    raise ComplexError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
