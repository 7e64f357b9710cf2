"""Pure-Python twin of ``_kernel.pyx``; same signatures and results.

Particles are coded ``2 * frame_index + is_negative``; ``-1`` pads batch rows.
"""

from __future__ import annotations

import numpy as np


def _step(partner, rot, facet_of, q1, src):
    net = {}
    moved = []
    for c in src:
        f = partner[c >> 1]
        moved.append(f)
        x = facet_of[f]
        net[x] = net.get(x, 0) + (1 if c & 1 else -1)
    return [2 * rot[f * q1 + net[facet_of[f]] % q1] + (c & 1) for c, f in zip(src, moved)]


def step_codes(partner, rot, facet_of, nfacets, q1, codes):
    partner, rot, facet_of = partner.tolist(), rot.tolist(), facet_of.tolist()
    return np.array(_step(partner, rot, facet_of, int(q1), [int(c) for c in codes]), dtype=np.int64)


def _period(partner, rot, facet_of, q1, init, cap):
    init = sorted(init)
    cur = init
    for t in range(1, cap + 1):
        cur = sorted(_step(partner, rot, facet_of, q1, cur))
        if cur == init:
            return t
    return -1


def batch_periods(partner, rot, facet_of, nfacets, q1, codes2d, cap):
    rows = np.asarray(codes2d, dtype=np.int64)
    if rows.ndim != 2:
        raise ValueError("codes2d must be 2-D")
    partner, rot, facet_of = partner.tolist(), rot.tolist(), facet_of.tolist()
    out = np.empty(len(rows), dtype=np.int64)
    for k, row in enumerate(rows.tolist()):
        init = [c for c in row if c >= 0]
        out[k] = _period(partner, rot, facet_of, int(q1), init, int(cap)) if init else 1
    return out


def eddie_sweep(partner, rot, facet_of, nfacets, q1, bg_codes, horizon):
    """First time each eddie start reaches each frame; -1 if never within horizon."""
    P = len(partner)
    partner, rot, facet_of = partner.tolist(), rot.tolist(), facet_of.tolist()
    q1 = int(q1)
    hits = np.full((P, P), -1, dtype=np.int32)
    np.fill_diagonal(hits, 0)
    pos = list(range(P))
    bg = [int(c) for c in bg_codes]
    for t in range(1, horizon + 1):
        net = {}
        for c in bg:
            x = facet_of[partner[c >> 1]]
            net[x] = net.get(x, 0) + (1 if c & 1 else -1)
        for s in range(P):
            f = partner[pos[s]]
            pos[s] = rot[f * q1 + net.get(facet_of[f], 0) % q1]
            if hits[s, pos[s]] < 0:
                hits[s, pos[s]] = t
        if bg:
            bg = _step(partner, rot, facet_of, q1, bg)
    return hits
