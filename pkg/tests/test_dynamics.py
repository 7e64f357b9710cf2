import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from framegas.bundle import BundleError, bundle_of, rotate_left
from framegas.complex import dual_distances
from framegas.dynamics import (Configuration, DynamicsError, a_particles, eddie, fermion_step,
                               fermion_step_inverse, fermion_step_particles, involution_a, involution_b,
                               orbit, reduce_eddies, step, step_inverse, step_particles, tracer_orbit)
from framegas.generators import cross_polytope, cycle, path

import oracles

C = Configuration
OCTA = cross_polytope(2)


# -- involution A -------------------------------------------------------------

def test_a_crosses_and_flips():
    assert involution_a(path(4), C(((1, 2),))) == C((), ((3, 2),))


def test_a_boundary_fixed_point():
    assert involution_a(path(4), C(((2, 1),))) == C((), ((2, 1),))


def test_a_pair_on_octahedron():
    assert involution_a(OCTA, C(((1, 2, 3),), ((1, 3, 2),))) == C(((4, 3, 2),), ((4, 2, 3),))


def test_a_rejects_foreign_frame():
    with pytest.raises(BundleError):
        involution_a(path(4), C(((1, 3),)))


# -- involution B -------------------------------------------------------------

def test_b_single():
    assert involution_b(C(((1, 2, 3),))) == C((), ((2, 3, 1),))


def test_b_balanced_pair_only_swaps_signs():
    assert involution_b(C(((1, 2, 3),), ((1, 3, 2),))) == C(((1, 3, 2),), ((1, 2, 3),))


def test_b_full_turn():
    assert involution_b(C(((1, 2, 3),) * 3)) == C((), ((1, 2, 3),) * 3)


def test_b_counts_per_facet_not_per_frame():
    # two positives on different frames of one facet rotate by 2
    out = involution_b(C(((1, 2, 3), (2, 1, 3))))
    assert out == C((), (rotate_left((1, 2, 3), 2), rotate_left((2, 1, 3), 2)))


# -- step ---------------------------------------------------------------------

def test_step_single_on_octahedron():
    # cross wall (2,3) to facet {2,3,4}, then rotate by -1
    out = step(OCTA, C(((1, 2, 3),)))
    assert out == C(((3, 4, 2),))
    assert set(out.positives[0]) == {2, 3, 4}


def test_step_pass_through_on_path():
    assert step(path(5), C(((2, 3), (4, 3)))) == C(((3, 4), (3, 2)))


def test_step_head_on_pair_on_path():
    # both particles land on separate edges; each rotates by -1 alone
    trace = step(path(5), C(((1, 2), (3, 2))))
    assert trace == C(((2, 1), (2, 3)))
    assert trace != C(((2, 3), (2, 3)))


def test_blinker():
    bl = C(((1, 2, 3),), ((1, 3, 2),))
    nxt = step(OCTA, bl)
    assert nxt == C(((4, 2, 3),), ((4, 3, 2),))
    assert step(OCTA, nxt) == bl
    assert step_inverse(OCTA, bl) == nxt


# -- orbits -------------------------------------------------------------------

def test_orbit_blinker():
    rec = orbit(OCTA, C(((1, 2, 3),), ((1, 3, 2),)))
    assert rec.period == 2 and rec.preperiod == 0 and not rec.truncated
    assert len(rec.states) == 2


def test_orbit_single_particle_matches_permutation_oracle():
    b = bundle_of(OCTA)
    perm = oracles.single_particle_map(OCTA.facets, b.frames)
    cyc_of = {p: len(c) for c in oracles.cycles(perm) for p in c}
    order = oracles.order(perm)
    for p in b.frames:
        rec = orbit(b, C((p,)))
        assert rec.period == cyc_of[p]
        assert order % rec.period == 0
        assert all(len(s.positives) == 1 and not s.negatives for s in rec.states)


def test_orbit_empty_is_fixed():
    assert orbit(OCTA, C()).period == 1


def test_orbit_truncation():
    rec = orbit(OCTA, C(((1, 2, 3),)), cap=2)
    assert rec.truncated and rec.period is None and len(rec.states) == 3


def test_orbit_cap_must_be_positive():
    with pytest.raises(ValueError):
        orbit(OCTA, C(), cap=0)


def test_single_particle_oracle_matches_step_everywhere():
    for c in (path(5), cycle(6), OCTA, cross_polytope(3)):
        b = bundle_of(c)
        perm = oracles.single_particle_map(c.facets, b.frames)
        for p in b.frames:
            assert step(b, C((p,))) == C((perm[p],))
            assert step(b, C((), (p,))) == C((), (rotate_left(b.partner(p), 1),))


# -- eddies -------------------------------------------------------------------

def test_reduce_eddies_strips_groups():
    cfg = C(((1, 2, 3),) * 3 + ((4, 5, 6),))
    reduced, removed = reduce_eddies(cfg, 2)
    assert reduced == C(((4, 5, 6),))
    assert removed == C(((1, 2, 3),) * 3)


def test_reduce_eddies_rewrite():
    reduced, removed = reduce_eddies(C(((1, 2, 3),) * 2), 2, rewrite=True)
    assert reduced == C((), ((1, 2, 3),)) and removed == C()


def test_reduce_eddies_idempotent():
    cfg = C(((1, 2, 3), (2, 3, 1)), ((1, 3, 2),))
    assert reduce_eddies(cfg, 2) == (cfg, C())
    r1, _ = reduce_eddies(C(((1, 2, 3),) * 7, ((4, 2, 3),) * 4), 2)
    assert reduce_eddies(r1, 2)[0] == r1


def test_reduction_does_not_change_other_trajectories(corpus):
    rng = random.Random(11)
    for b in corpus.values():
        q = b.q
        for _ in range(20):
            p = rng.choice(b.frames)
            s = rng.choice((1, -1))
            base = [(rng.choice((1, -1)), rng.choice([f for f in b.frames if f != p])) for _ in range(4)]
            group = [(s, p)] * (2 * q + 1)
            reduced, removed = reduce_eddies(Configuration.from_particles(base + group), q, rewrite=True)
            left = [(-s, p)] if q >= 2 else [(s, p)] * q
            base_reduced, base_removed = reduce_eddies(Configuration.from_particles(base), q, rewrite=True)
            assert reduced == base_reduced + Configuration.from_particles(left)
            assert len(removed) == len(base_removed) + q + 1
            heavy, light = base + group, base + left
            for _ in range(15):
                heavy, light = step_particles(b, heavy), step_particles(b, light)
                assert heavy[:len(base)] == light[:len(base)]


def test_tracer_empty_background_bounces():
    b = bundle_of(OCTA)
    path_ = tracer_orbit(b, C(), (1, 2, 3), 6)
    assert path_ == [(1, 2, 3), (4, 2, 3)] * 3 + [(1, 2, 3)]


def test_tracer_steps_zero():
    assert tracer_orbit(OCTA, C(((1, 2, 3),)), (2, 1, 3), 0) == [(2, 1, 3)]
    with pytest.raises(ValueError):
        tracer_orbit(OCTA, C(), (1, 2, 3), -1)


def test_tracer_ignores_distant_blinker():
    c = cycle(12)
    b = bundle_of(c)
    start = (1, 2)
    d = dual_distances(c)[(1, 2)][(7, 8)]
    blinker = C(((7, 8),), ((7, 8),))
    assert orbit(b, blinker).period == 2
    assert tracer_orbit(b, blinker, start, d - 1) == tracer_orbit(b, C(), start, d - 1)
    # a lone particle needs to cover the gap together with the eddie
    walker = C(((8, 7),))
    steps = (d - 1) // 2
    assert tracer_orbit(b, walker, start, steps) == tracer_orbit(b, C(), start, steps)


def test_tracer_follows_background_rotation():
    b = bundle_of(OCTA)
    # a lone positive waiting on the facet the eddie enters turns the eddie
    path_ = tracer_orbit(b, C(((5, 1, 3),)), (4, 2, 3), 1)
    assert b.position(path_[1]) == (1, 2, 3)
    assert path_[1] == rotate_left((1, 2, 3), -1)


# -- fermions -----------------------------------------------------------------

def test_fermion_pair_moves_together(corpus):
    b = corpus["octahedron"]
    cfg = C(((1, 2, 3),) * 2)
    for _ in range(20):
        nxt = fermion_step(b, cfg)
        assert len(set(nxt.positives + nxt.negatives)) == 1
        assert nxt == involution_a(b, cfg)
        cfg = nxt


def test_fermion_single_on_two_edge_path():
    c = path(3)
    states = [C(((1, 2),))]
    for _ in range(4):
        states.append(fermion_step(c, states[-1]))
    assert states == [C(((1, 2),)), C((), ((2, 1),)), C(((3, 2),)), C((), ((2, 3),)), C(((1, 2),))]
    assert orbit(c, states[0], mode="fermion").period == 4


def test_fermion_empty():
    assert fermion_step(OCTA, C()) == C()


def test_fermion_step_inverse(corpus):
    rng = random.Random(3)
    for b in corpus.values():
        for _ in range(50):
            cfg = oracles.random_configuration(rng, b.frames, 5)
            assert fermion_step_inverse(b, fermion_step(b, cfg)) == cfg


# -- invariants ---------------------------------------------------------------

def test_step_injective_on_small_corpus():
    b = bundle_of(path(4))
    frames = b.frames
    seen = {}
    for n in range(3):
        for parts in itertools.combinations_with_replacement([(s, p) for s in (1, -1) for p in frames], n):
            cfg = Configuration.from_particles(parts)
            out = step(b, cfg)
            assert seen.setdefault(out, cfg) == cfg
    assert len(seen) == 1 + 12 + 78


def test_per_frame_balanced_configs_are_period_two(corpus):
    """Net count on every frame divisible by q+1 forces step∘step = id."""
    rng = random.Random(5)
    for b in corpus.values():
        q1 = b.q + 1
        for _ in range(25):
            parts = []
            for p in rng.sample(b.frames, 3):
                k = rng.randint(0, 3)
                l = k + q1 * rng.randint(0, 1)
                parts += [(1, p)] * k + [(-1, p)] * l
            cfg = Configuration.from_particles(parts)
            assert step(b, step(b, cfg)) == cfg


def test_single_particle_moves_to_adjacent_facet_every_step():
    c = cross_polytope(3)
    b = bundle_of(c)
    dist = dual_distances(c)
    for p in b.frames[::7]:
        cfg = C((p,))
        for _ in range(30):
            nxt = step(b, cfg)
            assert len(nxt.positives) == 1
            assert dist[b.position(cfg.positives[0])][b.position(nxt.positives[0])] == 1
            cfg = nxt


def test_single_particle_stalls_only_at_boundary():
    b = bundle_of(path(4))
    for p in b.frames:
        nxt = step(b, C((p,))).positives[0]
        if b.position(nxt) == b.position(p):
            assert b.partner(p) == p


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["path4", "c5", "octahedron", "cross3"]))
def test_order_independence(rng, name):
    from conftest import corpus as _c  # noqa: F401
    b = _CORPUS[name]
    parts = [(rng.choice((1, -1)), rng.choice(b.frames)) for _ in range(rng.randint(0, 7))]
    shuffled = parts[:]
    rng.shuffle(shuffled)
    a = Configuration.from_particles(step_particles(b, parts))
    z = Configuration.from_particles(step_particles(b, shuffled))
    assert a == z == step(b, Configuration.from_particles(parts))


_CORPUS = {"path4": bundle_of(path(4)), "c5": bundle_of(cycle(5)),
           "octahedron": bundle_of(OCTA), "cross3": bundle_of(cross_polytope(3))}


def test_labeled_step_keeps_order():
    b = _CORPUS["octahedron"]
    parts = [(1, (1, 2, 3)), (-1, (5, 6, 1)), (1, (1, 2, 3))]
    out = step_particles(b, parts)
    assert [s for s, _ in out] == [1, -1, 1]
    assert out[0] == out[2]
    assert a_particles(b, a_particles(b, parts)) == parts


def test_configuration_json_round_trip():
    cfg = C(((1, 2, 3), (3, 2, 1)), ((4, 2, 3),))
    assert Configuration.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        Configuration.from_dict({"positive": [], "bogus": []})


def test_eddie_helper():
    assert eddie((1, 2, 3), 2) == C(((1, 2, 3),) * 3)
