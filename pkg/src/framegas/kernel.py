"""Integer-coded evolution for long orbits, censuses and eddie sweeps.

The compiled extension ``framegas._kernel`` is used when it imports;
otherwise (or with ``FRAMEGAS_PURE_PYTHON=1``) the pure-Python
``framegas._kernel_py`` runs instead.  Both give identical results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from types import ModuleType

import numpy as np

from . import _kernel_py
from .bundle import Bundle, as_bundle
from .dynamics import Configuration


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("FRAMEGAS_PURE_PYTHON", "") not in ("", "0"):
        return _kernel_py, "python"
    try:
        from . import _kernel
    except ImportError:
        return _kernel_py, "python"
    return _kernel, "cython"


backend, BACKEND = _load()


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return backend
    if name == "python":
        return _kernel_py
    if name == "cython":
        from . import _kernel
        return _kernel
    raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class Tables:
    partner: np.ndarray
    rotation: np.ndarray
    facet: np.ndarray
    nfacets: int
    q1: int

    @classmethod
    def of(cls, c) -> Tables:
        b = as_bundle(c)
        return cls(b.partner_table, b.rotation_table, b.facet_table, len(b.facets), b.q + 1)

    @property
    def args(self):
        return (self.partner, self.rotation, self.facet, self.nfacets, self.q1)


def encode(bundle: Bundle, cfg: Configuration) -> np.ndarray:
    idx = bundle.index
    return np.array([2 * idx[p] for p in cfg.positives] + [2 * idx[p] + 1 for p in cfg.negatives],
                    dtype=np.int64)


def decode(bundle: Bundle, codes) -> Configuration:
    fr = bundle.frames
    return Configuration(tuple(fr[c >> 1] for c in codes if c >= 0 and not c & 1),
                         tuple(fr[c >> 1] for c in codes if c >= 0 and c & 1))


def pad(rows: list[np.ndarray]) -> np.ndarray:
    width = max((len(r) for r in rows), default=0)
    out = np.full((len(rows), width), -1, dtype=np.int64)
    for i, r in enumerate(rows):
        out[i, :len(r)] = r
    return out


def step_codes(tables: Tables, codes, impl: ModuleType | None = None) -> np.ndarray:
    return (impl or backend).step_codes(*tables.args, np.asarray(codes, dtype=np.int64))


def batch_periods(tables: Tables, codes2d, cap: int, impl: ModuleType | None = None) -> np.ndarray:
    """Period of each row's orbit, or -1 when ``cap`` steps pass without return."""
    return (impl or backend).batch_periods(*tables.args, np.asarray(codes2d, dtype=np.int64), int(cap))


def period(c, cfg: Configuration, cap: int, impl: ModuleType | None = None) -> int | None:
    b = as_bundle(c)
    p = int(batch_periods(Tables.of(b), pad([encode(b, cfg)]), cap, impl)[0])
    return None if p < 0 else p


def eddie_sweep(tables: Tables, background_codes, horizon: int, impl: ModuleType | None = None) -> np.ndarray:
    """``hits[s, y]``: first time an eddie started at frame s sits on frame y."""
    return (impl or backend).eddie_sweep(*tables.args, np.asarray(background_codes, dtype=np.int64),
                                         int(horizon))
