"""The discrete frame bundle over the facets of an admissible complex.

A frame is an ordered facet ``(x0, x1, ..., xq)``; ``x0`` is its base vertex
and ``(x1, ..., xq)`` its wall.  Frames are plain tuples.  :class:`Bundle`
also carries integer lookup tables (frame index, partner, rotation, facet)
consumed by the compiled kernels.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

from .complex import ComplexError, SimplicialComplex, classify_walls, wall_map

Frame = tuple[int, ...]


class BundleError(ComplexError):
    pass


def rotate_left(p: Frame, m: int) -> Frame:
    """``result[i] = p[(i + m) mod len(p)]``; m may be any integer."""
    n = len(p)
    m %= n
    return p[m:] + p[:m]


def reverse(p: Frame) -> Frame:
    return p[::-1]


class Bundle:
    """All orderings of all facets of ``complex``.

    Frames are listed facet by facet (facets sorted) with each fiber in
    lexicographic permutation order, so ``frames[0]`` is the sorted first
    facet.
    """

    def __init__(self, complex: SimplicialComplex):
        report = classify_walls(complex)
        if not report.admissible:
            raise BundleError(
                f"complex is not admissible (pure={report.pure}, q={report.q}, "
                f"walls in >=3 facets: {sorted(report.violations)[:5]})")
        self.complex = complex
        self.q = complex.dim
        self.facets = complex.facets
        self.frames: list[Frame] = [p for f in self.facets for p in itertools.permutations(f)]
        self.index: dict[Frame, int] = {p: i for i, p in enumerate(self.frames)}
        self.facet_index: dict[Frame, int] = {f: i for i, f in enumerate(self.facets)}
        self._walls = wall_map(complex)

    def __len__(self):
        return len(self.frames)

    def __contains__(self, p):
        return tuple(p) in self.index

    def fiber(self, facet) -> list[Frame]:
        return list(itertools.permutations(tuple(sorted(facet))))

    def position(self, p: Frame) -> Frame:
        """pi(p): the underlying facet."""
        return tuple(sorted(p))

    def partner(self, p: Frame) -> Frame:
        """Swap the base vertex for the apex across the wall ``p[1:]``."""
        p = tuple(p)
        if p not in self.index:
            raise BundleError(f"{p} is not a frame of this bundle")
        fs = self._walls[tuple(sorted(p[1:]))]
        if len(fs) == 1:
            return p
        if len(fs) != 2:
            raise BundleError(f"wall {p[1:]} lies in {len(fs)} facets")
        other = fs[1] if set(fs[0]) == set(p) else fs[0]
        (apex,) = set(other) - set(p[1:])
        return (apex,) + p[1:]

    # -- integer tables -----------------------------------------------------

    @cached_property
    def partner_table(self) -> np.ndarray:
        return np.array([self.index[self.partner(p)] for p in self.frames], dtype=np.int64)

    @cached_property
    def rotation_table(self) -> np.ndarray:
        """Flat table: ``rot[i * (q+1) + m]`` is the index of rotate_left(frame i, m)."""
        q1 = self.q + 1
        return np.array([self.index[rotate_left(p, m)] for p in self.frames for m in range(q1)],
                        dtype=np.int64)

    @cached_property
    def reverse_table(self) -> np.ndarray:
        return np.array([self.index[reverse(p)] for p in self.frames], dtype=np.int64)

    @cached_property
    def facet_table(self) -> np.ndarray:
        return np.array([self.facet_index[self.position(p)] for p in self.frames], dtype=np.int64)


@lru_cache(maxsize=32)
def bundle_of(complex: SimplicialComplex) -> Bundle:
    return Bundle(complex)


def as_bundle(c) -> Bundle:
    return c if isinstance(c, Bundle) else bundle_of(c)


def partner(c, p: Frame) -> Frame:
    return as_bundle(c).partner(p)
