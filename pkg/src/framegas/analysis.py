"""Batch experiments: orbit censuses, light-cone probes and eddie transitivity.

Work is sharded over independent configurations (or trials) only; every
orbit runs serially.  Results are merged in index order, so output does not
depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bundle import Bundle, as_bundle, rotate_left
from .complex import SimplicialComplex, dual_distances
from .dynamics import Configuration, orbit, step, step_particles
from .kernel import BACKEND, Tables, batch_periods, eddie_sweep, encode, pad

FAMILIES = ("pinned-pairs", "singles", "random", "explicit", "fill-frames", "fill-facets")


def counter_rng(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator; ``stream`` selects a disjoint counter block."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, stream, 0]))


# -- census ------------------------------------------------------------------

@dataclass
class CensusSpec:
    complex: SimplicialComplex
    family: str = "pinned-pairs"
    sample: int | None = None
    seed: int = 0
    cap: int = 10_000
    n_pos: int = 1
    n_neg: int = 0
    explicit: list[Configuration] = field(default_factory=list)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.cap < 1:
            raise ValueError("cap must be >= 1")
        if self.family == "random" and not self.sample:
            raise ValueError("the random family needs a sample size")
        if self.sample is not None and self.sample > self.family_size():
            raise ValueError(f"sample {self.sample} exceeds family size {self.family_size()}")

    @property
    def bundle(self) -> Bundle:
        return as_bundle(self.complex)

    def family_size(self) -> int:
        P = len(self.bundle)
        return {"pinned-pairs": P * P, "singles": P, "explicit": len(self.explicit),
                "random": self.sample or 0, "fill-frames": 1, "fill-facets": 1}[self.family]

    def indices(self) -> np.ndarray:
        n = self.family_size()
        if self.family == "random" or self.sample is None or self.sample == n:
            return np.arange(n, dtype=np.int64)
        rng = np.random.Generator(np.random.PCG64(self.seed))
        return np.sort(rng.choice(n, size=self.sample, replace=False)).astype(np.int64)

    def member(self, k: int) -> Configuration:
        b = self.bundle
        fr = b.frames
        P = len(fr)
        if self.family == "pinned-pairs":
            # Tuples[P,2] order with P[[1]] pinned as the first positive
            return Configuration((fr[0], fr[k // P]), (fr[k % P],))
        if self.family == "singles":
            return Configuration((fr[k],))
        if self.family == "explicit":
            return self.explicit[k]
        if self.family in FILLINGS:
            return FILLINGS[self.family](b)
        rng = counter_rng(self.seed, k)
        picks = rng.integers(0, P, size=self.n_pos + self.n_neg)
        return Configuration(tuple(fr[i] for i in picks[:self.n_pos]),
                             tuple(fr[i] for i in picks[self.n_pos:]))


@dataclass
class CensusTable:
    ids: list[int]
    periods: list[int | None]
    cap: int
    exemplar: Configuration | None = None
    runtime: dict = field(default_factory=dict)

    @property
    def truncated(self) -> list[bool]:
        return [p is None for p in self.periods]

    @property
    def n_truncated(self) -> int:
        return sum(self.truncated)

    @property
    def histogram(self) -> dict[int, int]:
        h: dict[int, int] = {}
        for p in self.periods:
            if p is not None:
                h[p] = h.get(p, 0) + 1
        return dict(sorted(h.items()))

    @property
    def max_period(self) -> int | None:
        return max((p for p in self.periods if p is not None), default=None)

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["config_id", "period", "truncated"])
        for i, p in zip(self.ids, self.periods):
            w.writerow([i, "" if p is None else p, int(p is None)])
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "configurations": len(self.ids),
            "cap": self.cap,
            "truncated": self.n_truncated,
            "max_period": self.max_period,
            "exemplar": None if self.exemplar is None else self.exemplar.to_dict(),
            "histogram": {str(k): v for k, v in self.histogram.items()},
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"

    def write(self, out: str | Path) -> None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "census.csv").write_text(self.csv_text())
        (out / "summary.json").write_text(self.summary_json())
        (out / "runtime.json").write_text(json.dumps(self.runtime, indent=2, sort_keys=True) + "\n")


def _periods_shard(args):
    tables, rows, cap = args
    return batch_periods(tables, rows, cap)


def _shards(n: int, k: int) -> list[slice]:
    k = max(1, min(k, n)) if n else 1
    bounds = np.linspace(0, n, k + 1).astype(int)
    return [slice(bounds[i], bounds[i + 1]) for i in range(k)]


def census(spec: CensusSpec, workers: int = 1) -> CensusTable:
    """Orbit period of every (sampled) member of the family."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t0 = time.perf_counter()
    b = spec.bundle
    tables = Tables.of(b)
    ids = spec.indices().tolist()
    rows = pad([encode(b, spec.member(k)) for k in ids])
    jobs = [(tables, rows[s], spec.cap) for s in _shards(len(ids), workers)]
    if workers == 1 or len(jobs) == 1:
        parts = [_periods_shard(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_periods_shard, jobs))
    raw = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
    periods = [None if p < 0 else int(p) for p in raw.tolist()]
    table = CensusTable(ids, periods, spec.cap)
    best = table.max_period
    if best is not None:
        table.exemplar = spec.member(ids[periods.index(best)])
    table.runtime = {"backend": BACKEND, "workers": workers,
                     "seconds": round(time.perf_counter() - t0, 3)}
    return table


def verify_census(spec: CensusSpec, table: CensusTable, fraction: float = 0.01, seed: int = 0) -> list[int]:
    """Re-derive a sample of periods with the reference dynamics.

    Returns the config ids checked; raises AssertionError on a mismatch.
    """
    done = [k for k, p in zip(table.ids, table.periods) if p is not None]
    if not done:
        return []
    n = max(1, math.ceil(fraction * len(done)))
    rng = np.random.Generator(np.random.PCG64(seed))
    picks = sorted(rng.choice(len(done), size=min(n, len(done)), replace=False).tolist())
    lookup = dict(zip(table.ids, table.periods))
    checked = []
    b = spec.bundle
    for i in picks:
        k = done[i]
        cfg = spec.member(k)
        p = lookup[k]
        cur = cfg
        for _ in range(p):
            cur = step(b, cur)
        assert cur == cfg, f"config {k}: step^{p} does not return"
        rec = orbit(b, cfg, cap=p)
        assert rec.period == p, f"config {k}: reference period {rec.period} != {p}"
        checked.append(k)
    return checked


# -- uniform fillings -------------------------------------------------------

def fill_frames(bundle: Bundle) -> Configuration:
    """One positive particle on every frame."""
    return Configuration(tuple(bundle.frames))


def fill_facets(bundle: Bundle) -> Configuration:
    """One positive particle per facet, on its sorted frame."""
    return Configuration(tuple(bundle.facets))


FILLINGS = {"fill-frames": fill_frames, "fill-facets": fill_facets}


def filling_report(c, steps: int = 20, cap: int = 10_000) -> dict:
    """Period of each uniform filling and how often its particles move like a lone particle.

    ``geodesic_fraction`` is the share of (particle, step) pairs over ``steps``
    steps whose move equals the move of the same particle alone.
    """
    b = as_bundle(c)
    out = {}
    for name, fill in FILLINGS.items():
        cfg = fill(b)
        cur = cfg.particles()
        agree = total = 0
        for _ in range(steps):
            nxt = step_particles(b, cur)
            lone = [step_particles(b, [x])[0] for x in cur]
            agree += sum(u == v for u, v in zip(nxt, lone))
            total += len(cur)
            cur = nxt
        rec = orbit(b, cfg, cap=cap)
        out[name] = {"particles": len(cfg), "period": rec.period,
                     "geodesic_fraction": round(agree / total, 6) if total else None}
    return out


# -- light cone --------------------------------------------------------------

class CausalityViolation(AssertionError):
    def __init__(self, report: ProbeReport):
        super().__init__(f"influence outside the light cone: {report.violations}")
        self.report = report


PERTURBATIONS = ("add", "remove", "rotate", "flip", "identity")


def perturb(bundle: Bundle, cfg: Configuration, facet, kind: str = "add") -> Configuration:
    f = tuple(sorted(facet))
    if f not in bundle.facet_index:
        raise ValueError(f"{f} is not a facet")
    inside = [(s, p) for s, p in cfg.particles() if tuple(sorted(p)) == f]
    outside = [(s, p) for s, p in cfg.particles() if tuple(sorted(p)) != f]
    if kind == "add":
        inside = inside + [(1, f)]
    elif kind == "remove":
        inside = []
    elif kind == "rotate":
        inside = [(s, rotate_left(p, 1)) for s, p in inside]
    elif kind == "flip":
        inside = [(-s, p) for s, p in inside]
    elif kind != "identity":
        raise ValueError(f"unknown perturbation {kind!r}; choose from {PERTURBATIONS}")
    return Configuration.from_particles(outside + inside)


@dataclass
class ProbeReport:
    facet: tuple[int, ...]
    steps: int
    perturbation: str
    distance: dict[tuple[int, ...], int]
    earliest: dict[tuple[int, ...], int]
    cone: list[list[tuple[int, ...]]]
    violations: list[tuple[tuple[int, ...], int, int]]
    original: Configuration | None = None
    perturbed: Configuration | None = None

    def to_dict(self) -> dict:
        return {
            "facet": list(self.facet),
            "steps": self.steps,
            "perturbation": self.perturbation,
            "earliest": [{"facet": list(f), "time": t, "distance": self.distance[f]}
                         for f, t in sorted(self.earliest.items())],
            "cone": [[list(f) for f in c] for c in self.cone],
            "violations": [{"facet": list(f), "time": t, "distance": d} for f, t, d in self.violations],
            "original": None if self.original is None else self.original.to_dict(),
            "perturbed": None if self.perturbed is None else self.perturbed.to_dict(),
        }


def causality_probe(c, cfg: Configuration, facet, steps: int, perturbation: str = "add",
                    check: bool = True) -> ProbeReport:
    """Co-evolve cfg and a copy perturbed at ``facet``; record where they differ.

    ``cone[t]`` lists facets other than ``facet`` whose particle content
    differs at time t (so a zero-step probe has an empty cone).  With
    ``check`` a difference outside the dual-graph ball of radius t raises
    :class:`CausalityViolation` carrying the full report.
    """
    b = as_bundle(c)
    x = tuple(sorted(facet))
    dist = dual_distances(b.complex)[x]
    diameter = max(max(d.values()) for d in dual_distances(b.complex).values())
    if not 0 <= steps <= diameter:
        raise ValueError(f"steps must lie in [0, {diameter}] (dual graph diameter)")
    cfg.validate(b)
    other = perturb(b, cfg, x, perturbation)
    u, v = cfg, other
    earliest: dict[tuple[int, ...], int] = {}
    cone = []
    violations = []
    for t in range(steps + 1):
        if t:
            u, v = step(b, u), step(b, v)
        diff = [f for f in b.facets if u.at_facet(f) != v.at_facet(f)]
        cone.append([f for f in diff if f != x])
        for f in diff:
            earliest.setdefault(f, t)
            if dist.get(f, math.inf) > t:
                violations.append((f, t, dist.get(f, -1)))
    report = ProbeReport(x, steps, perturbation, dict(dist), earliest, cone, violations, cfg, other)
    if check and violations:
        raise CausalityViolation(report)
    return report


# -- transitivity ------------------------------------------------------------

def random_background(bundle: Bundle, density: float, seed: int, trial: int) -> Configuration:
    """Each frame independently holds one particle with probability ``density``; sign is a fair coin."""
    P = len(bundle)
    u = counter_rng(seed, trial).random(2 * P)
    pos, neg = [], []
    for i, p in enumerate(bundle.frames):
        if u[i] < density:
            (pos if u[P + i] < 0.5 else neg).append(p)
    return Configuration(tuple(pos), tuple(neg))


QUANTILES = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


def _quantiles(values) -> dict[str, float | None]:
    if len(values) == 0:
        return {str(q): None for q in QUANTILES}
    qs = np.quantile(np.asarray(values, dtype=float), QUANTILES)
    return {str(q): round(float(v), 6) for q, v in zip(QUANTILES, qs)}


def _sweep_trial(args):
    tables, codes, horizon = args
    return eddie_sweep(tables, codes, horizon)


@dataclass
class TransitivityReport:
    density: float
    horizon: int
    trials: int
    seed: int
    frames: int
    log_horizon: int
    per_trial: list[dict]
    pair_hits: np.ndarray
    first_hit: np.ndarray
    hit_time_quantiles: dict
    ratio_quantiles: dict
    facet_fraction: float

    @property
    def fraction_hit(self) -> float:
        return float(np.mean([t["fraction_hit"] for t in self.per_trial]))

    @property
    def fraction_hit_log(self) -> float:
        return float(np.mean([t["fraction_hit_log"] for t in self.per_trial]))

    def to_dict(self) -> dict:
        return {
            "density": self.density,
            "horizon": self.horizon,
            "trials": self.trials,
            "seed": self.seed,
            "frames": self.frames,
            "log_horizon": self.log_horizon,
            "fraction_hit": round(self.fraction_hit, 6),
            "fraction_hit_log": round(self.fraction_hit_log, 6),
            "facet_fraction": round(self.facet_fraction, 6),
            "hit_time_quantiles": self.hit_time_quantiles,
            "time_over_distance_quantiles": self.ratio_quantiles,
            "per_trial": self.per_trial,
            "pair_hits": self.pair_hits.tolist(),
            "first_hit": self.first_hit.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"


def transitivity_experiment(c, density: float, horizon: int, trials: int, seed: int,
                            workers: int = 1) -> TransitivityReport:
    """Reachability of the eddie motion over random backgrounds.

    For every trial all |P| eddie starts are swept at once against one
    background.  Observational only: nothing here passes or fails.
    """
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    if horizon < 0 or trials < 1:
        raise ValueError("need horizon >= 0 and trials >= 1")
    b = as_bundle(c)
    P = len(b)
    tables = Tables.of(b)
    log_h = math.ceil(math.log(P))
    backgrounds = [random_background(b, density, seed, k) for k in range(trials)]
    jobs = [(tables, encode(b, bg), horizon) for bg in backgrounds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            sweeps = list(ex.map(_sweep_trial, jobs))
    else:
        sweeps = [_sweep_trial(j) for j in jobs]

    dist = dual_distances(b.complex)
    fidx = b.facet_table
    fdist = np.array([[dist[b.facets[i]][b.facets[j]] for j in range(len(b.facets))]
                      for i in range(len(b.facets))])
    pair_d = fdist[np.ix_(fidx, fidx)]
    off = ~np.eye(P, dtype=bool)
    pair_hits = np.zeros((P, P), dtype=np.int64)
    first = np.full((P, P), -1, dtype=np.int64)
    times, ratios, per_trial = [], [], []
    facet_hit = 0.0
    for bg, hits in zip(backgrounds, sweeps):
        hit = hits >= 0
        pair_hits += hit
        better = hit & ((first < 0) | (hits < first))
        first[better] = hits[better]
        sel = hit & off
        times.extend(hits[sel].tolist())
        far = sel & (pair_d > 0)
        ratios.extend((hits[far] / pair_d[far]).tolist())
        by_facet = np.zeros((P, len(b.facets)), dtype=bool)
        for j in range(P):
            by_facet[:, fidx[j]] |= hit[:, j]
        facet_hit += by_facet.mean()
        per_trial.append({
            "particles": len(bg),
            "fraction_hit": round(float(hit.mean()), 6),
            "fraction_hit_log": round(float((hit & (hits <= log_h)).mean()), 6),
        })
    return TransitivityReport(density, horizon, trials, seed, P, log_h, per_trial, pair_hits, first,
                              _quantiles(times), _quantiles(ratios), facet_hit / trials)
