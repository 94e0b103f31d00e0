"""Sampling of SMT formula solutions by model-guided approximation."""

import json

try:
    from . import _megasample as _core
except ImportError:  # in-tree build: the extension sits on PYTHONPATH
    import _megasample as _core

Error = _core.Error
Unsat = _core.Unsat
UnsupportedFeature = _core.UnsupportedFeature

__all__ = [
    "Error",
    "Unsat",
    "UnsupportedFeature",
    "approximate",
    "coverage",
    "holds",
    "portion",
    "sample",
    "signed_floor_div",
]


def signed_floor_div(x, y):
    """Largest q with y*q <= x (for y != 0)."""
    return int(_core.signed_floor_div(str(x), str(y)))


def portion(n, k, i):
    return int(_core.portion(str(n), str(k), str(i)))


def holds(problem, model):
    """True when `model` (symbol -> value) satisfies the SMT-LIB text."""
    return _core.holds(problem, json.dumps(model))


def approximate(problem, seed, rng_seed=0):
    """Interval approximation of `problem` around a satisfying `seed`."""
    return json.loads(_core.approximate(problem, json.dumps(seed), rng_seed))


def sample(problem, solver_cmd="z3 -in", *, solver_timeout=60.0, max_samples=1000,
           max_epochs=0, time_limit=60.0, rng_seed=0, strategy="random", seed=None):
    """Returns (samples, stats)."""
    out = json.loads(_core.sample(problem, solver_cmd, solver_timeout, max_samples, max_epochs,
                                  time_limit, rng_seed, strategy,
                                  None if seed is None else json.dumps(seed)))
    return out["samples"], out["stats"]


def coverage(problem, samples):
    return json.loads(_core.coverage(problem, [json.dumps(s) for s in samples]))
