"""Signed particles on the frame bundle and their reversible evolution.

A particle is a pair ``(sign, frame)`` with sign +1 or -1.  The evolution is
``step = involution_b ∘ involution_a``:

* ``involution_a`` flips every sign and moves each frame to its partner
  across the wall ``frame[1:]``;
* ``involution_b`` flips every sign and rotates each frame left by ``k - l``,
  where ``k``/``l`` count the positive/negative particles sitting on the same
  facet (counts taken from the input of ``involution_b``).

Both maps are involutions, so ``step_inverse = involution_a ∘ involution_b``.
This module is the readable reference path; :mod:`framegas.kernel` runs the
same rules on integer frame indices for long orbits and censuses.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .bundle import Bundle, BundleError, Frame, as_bundle, reverse, rotate_left

Particle = tuple[int, Frame]


class DynamicsError(RuntimeError):
    """Internal consistency check failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class Configuration:
    """A pair of frame multisets (positive, negative), kept sorted."""

    positives: tuple[Frame, ...] = ()
    negatives: tuple[Frame, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(sorted(tuple(p) for p in self.positives)))
        object.__setattr__(self, "negatives", tuple(sorted(tuple(p) for p in self.negatives)))

    @classmethod
    def from_particles(cls, particles: Iterable[Particle]) -> Configuration:
        pos, neg = [], []
        for s, p in particles:
            (pos if s > 0 else neg).append(p)
        return cls(tuple(pos), tuple(neg))

    def particles(self) -> list[Particle]:
        return [(1, p) for p in self.positives] + [(-1, p) for p in self.negatives]

    def __len__(self):
        return len(self.positives) + len(self.negatives)

    @property
    def degree(self) -> int:
        return len(self.positives) - len(self.negatives)

    def __add__(self, other: Configuration) -> Configuration:
        return Configuration(self.positives + other.positives, self.negatives + other.negatives)

    def position_counts(self) -> dict[Frame, tuple[int, int]]:
        """facet -> (positives there, negatives there)."""
        return position_counts(self.particles())

    def at_facet(self, facet) -> Configuration:
        f = tuple(sorted(facet))
        return Configuration(tuple(p for p in self.positives if tuple(sorted(p)) == f),
                             tuple(p for p in self.negatives if tuple(sorted(p)) == f))

    def validate(self, bundle) -> None:
        b = as_bundle(bundle)
        for p in self.positives + self.negatives:
            if p not in b.index:
                raise BundleError(f"{p} is not a frame of the complex")

    def to_dict(self) -> dict:
        return {"positive": [list(p) for p in self.positives],
                "negative": [list(p) for p in self.negatives]}

    @classmethod
    def from_dict(cls, d: dict) -> Configuration:
        unknown = set(d) - {"positive", "negative"}
        if unknown:
            raise ValueError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(tuple(tuple(int(v) for v in p) for p in d.get("positive", [])),
                   tuple(tuple(int(v) for v in p) for p in d.get("negative", [])))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Configuration:
        return cls.from_dict(json.loads(text))


EMPTY_CONFIGURATION = Configuration()


def position_counts(particles: Iterable[Particle]) -> dict[Frame, tuple[int, int]]:
    counts: dict[Frame, list[int]] = {}
    for s, p in particles:
        c = counts.setdefault(tuple(sorted(p)), [0, 0])
        c[0 if s > 0 else 1] += 1
    return {f: (k, l) for f, (k, l) in counts.items()}


# -- order-preserving particle maps -----------------------------------------

def a_particles(bundle: Bundle, particles: Sequence[Particle]) -> list[Particle]:
    return [(-s, bundle.partner(p)) for s, p in particles]


def b_particles(particles: Sequence[Particle]) -> list[Particle]:
    counts = position_counts(particles)
    out = []
    for s, p in particles:
        k, l = counts[tuple(sorted(p))]
        out.append((-s, rotate_left(p, k - l)))
    return out


def c_particles(particles: Sequence[Particle]) -> list[Particle]:
    """Reflect (reverse) every frame whose facet holds an odd number of particles."""
    counts = position_counts(particles)
    out = []
    for s, p in particles:
        k, l = counts[tuple(sorted(p))]
        out.append((s, reverse(p) if (k + l) % 2 else p))
    return out


def step_particles(bundle: Bundle, particles: Sequence[Particle]) -> list[Particle]:
    return b_particles(a_particles(bundle, particles))


def step_inverse_particles(bundle: Bundle, particles: Sequence[Particle]) -> list[Particle]:
    return a_particles(bundle, b_particles(particles))


def fermion_step_particles(bundle: Bundle, particles: Sequence[Particle]) -> list[Particle]:
    return a_particles(bundle, c_particles(particles))


def fermion_step_inverse_particles(bundle: Bundle, particles: Sequence[Particle]) -> list[Particle]:
    return c_particles(a_particles(bundle, particles))


# -- configuration maps ------------------------------------------------------

def involution_a(c, cfg: Configuration) -> Configuration:
    return Configuration.from_particles(a_particles(as_bundle(c), cfg.particles()))


def involution_b(cfg: Configuration) -> Configuration:
    return Configuration.from_particles(b_particles(cfg.particles()))


def reflection_c(cfg: Configuration) -> Configuration:
    return Configuration.from_particles(c_particles(cfg.particles()))


def step(c, cfg: Configuration) -> Configuration:
    return involution_b(involution_a(c, cfg))


def step_inverse(c, cfg: Configuration) -> Configuration:
    return involution_a(c, involution_b(cfg))


def fermion_step(c, cfg: Configuration) -> Configuration:
    return involution_a(c, reflection_c(cfg))


def fermion_step_inverse(c, cfg: Configuration) -> Configuration:
    return reflection_c(involution_a(c, cfg))


MODES = {"rotation": step, "fermion": fermion_step}


def evolve(c, cfg: Configuration, steps: int | None = None, mode: str = "rotation") -> Iterator[Configuration]:
    """Yield cfg, T(cfg), T^2(cfg), ...  (``steps + 1`` states, or forever)."""
    f = MODES[mode]
    b = as_bundle(c)
    t = 0
    while steps is None or t <= steps:
        yield cfg
        cfg = f(b, cfg)
        t += 1


@dataclass
class OrbitRecord:
    states: list[Configuration]
    period: int | None
    preperiod: int = 0
    truncated: bool = False


def orbit(c, cfg: Configuration, cap: int = 10_000, mode: str = "rotation") -> OrbitRecord:
    """Iterate until the first repeated state or until ``cap`` steps."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    f = MODES[mode]
    b = as_bundle(c)
    cfg.validate(b)
    seen = {cfg: 0}
    states = [cfg]
    cur = cfg
    for t in range(1, cap + 1):
        cur = f(b, cur)
        j = seen.get(cur)
        if j is not None:
            if j != 0:
                raise DynamicsError(f"orbit has preperiod {j}; the step map is not invertible")
            return OrbitRecord(states, t - j, j)
        seen[cur] = t
        states.append(cur)
    return OrbitRecord(states, None, 0, truncated=True)


# -- eddies ------------------------------------------------------------------

def reduce_eddies(cfg: Configuration, q: int, rewrite: bool = False) -> tuple[Configuration, Configuration]:
    """Strip groups of q+1 same-sign particles sharing a frame.

    Returns ``(reduced, removed)``.  With ``rewrite`` a remaining group of q
    same-sign particles on one frame becomes one particle of opposite sign
    (only for q >= 2; at q = 1 that would be a bare sign flip).
    """
    q1 = q + 1
    kept = {1: Counter(cfg.positives), -1: Counter(cfg.negatives)}
    removed: list[Particle] = []
    out: list[Particle] = []
    for s in (1, -1):
        for p, n in sorted(kept[s].items()):
            gone = (n // q1) * q1
            removed += [(s, p)] * gone
            n -= gone
            if rewrite and q >= 2 and n == q:
                out.append((-s, p))
            else:
                out += [(s, p)] * n
    return Configuration.from_particles(out), Configuration.from_particles(removed)


def eddie(start: Frame, q: int, sign: int = 1) -> Configuration:
    return Configuration.from_particles([(sign, tuple(start))] * (q + 1))


def tracer_orbit(c, background: Configuration, start: Frame, steps: int) -> list[Frame]:
    """Frames visited by an eddie (q+1 positives) dropped at ``start``.

    The background is evolved alone and together with the eddie; every step
    checks that the eddie stays in one piece and leaves the background
    untouched.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    b = as_bundle(c)
    start = tuple(start)
    if start not in b.index:
        raise BundleError(f"{start} is not a frame of the complex")
    q1 = b.q + 1
    bg = background.particles()
    joint = bg + [(1, start)] * q1
    n = len(bg)
    path = [start]
    for _ in range(steps):
        bg = step_particles(b, bg)
        joint = step_particles(b, joint)
        if joint[:n] != bg:
            raise DynamicsError("eddie altered the background trajectory")
        tail = set(joint[n:])
        if len(tail) != 1:
            raise DynamicsError(f"eddie split apart: {sorted(tail)}")
        (s, p), = tail
        path.append(p)
    return path
