import os
import random
import subprocess
import sys

import numpy as np
import pytest

from framegas import _kernel_py, kernel
from framegas.bundle import bundle_of
from framegas.dynamics import Configuration, orbit, step, tracer_orbit
from framegas.generators import cross_polytope, cycle, path

import oracles

try:
    from framegas import _kernel as _cy
except ImportError:  # extension not built
    _cy = None

IMPLS = [pytest.param(_kernel_py, id="python"),
         pytest.param(_cy, id="cython", marks=pytest.mark.skipif(_cy is None, reason="extension not built"))]

COMPLEXES = [path(4), cycle(5), cross_polytope(2), cross_polytope(3)]


@pytest.mark.parametrize("impl", IMPLS)
def test_step_codes_match_reference(impl):
    rng = random.Random(0)
    for c in COMPLEXES:
        b = bundle_of(c)
        t = kernel.Tables.of(b)
        for _ in range(100):
            cfg = oracles.random_configuration(rng, b.frames, 7)
            out = kernel.step_codes(t, kernel.encode(b, cfg), impl)
            assert kernel.decode(b, out) == step(b, cfg)


@pytest.mark.parametrize("impl", IMPLS)
def test_periods_match_reference_orbits(impl):
    rng = random.Random(1)
    for c in COMPLEXES:
        b = bundle_of(c)
        cfgs = [oracles.random_configuration(rng, b.frames, 4) for _ in range(30)]
        got = kernel.batch_periods(kernel.Tables.of(b), kernel.pad([kernel.encode(b, x) for x in cfgs]),
                                   5000, impl)
        want = [orbit(b, x, cap=5000).period for x in cfgs]
        assert [None if p < 0 else int(p) for p in got] == want


@pytest.mark.parametrize("impl", IMPLS)
def test_truncation_and_empty_rows(impl):
    b = bundle_of(cross_polytope(2))
    t = kernel.Tables.of(b)
    rows = kernel.pad([kernel.encode(b, Configuration(((1, 2, 3),))), np.array([], dtype=np.int64)])
    assert rows[1].tolist() == [-1]
    single = orbit(b, Configuration(((1, 2, 3),))).period
    out = kernel.batch_periods(t, rows, single - 1, impl)
    assert out.tolist() == [-1, 1]


@pytest.mark.parametrize("impl", IMPLS)
def test_eddie_sweep_matches_tracer(impl):
    rng = random.Random(2)
    for c in (cycle(6), cross_polytope(2)):
        b = bundle_of(c)
        t = kernel.Tables.of(b)
        bg = oracles.random_configuration(rng, b.frames, 8, 3)
        hits = kernel.eddie_sweep(t, kernel.encode(b, bg), 12, impl)
        assert hits.shape == (len(b), len(b))
        for s in range(0, len(b), 5):
            path_ = tracer_orbit(b, bg, b.frames[s], 12)
            first = {}
            for time, p in enumerate(path_):
                first.setdefault(b.index[p], time)
            row = {j: int(h) for j, h in enumerate(hits[s]) if h >= 0}
            assert row == first


def test_backends_agree_on_census_rows():
    if _cy is None:
        pytest.skip("extension not built")
    b = bundle_of(cross_polytope(3))
    t = kernel.Tables.of(b)
    P = len(b)
    rng = np.random.default_rng(3)
    ks = rng.choice(P * P, 200, replace=False)
    rows = np.array([[0, 2 * (k // P), 2 * (k % P) + 1] for k in ks])
    assert (kernel.batch_periods(t, rows, 10_000, _cy) == kernel.batch_periods(t, rows, 10_000, _kernel_py)).all()


def test_pure_python_switch():
    env = dict(os.environ, FRAMEGAS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import framegas.kernel as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_get_backend():
    assert kernel.get_backend("python") is _kernel_py
    with pytest.raises(ValueError):
        kernel.get_backend("fortran")


def test_period_helper():
    b = bundle_of(cross_polytope(2))
    assert kernel.period(b, Configuration(((1, 2, 3),), ((1, 3, 2),)), 100) == 2
    assert kernel.period(b, Configuration(((1, 2, 3),)), 1) is None
