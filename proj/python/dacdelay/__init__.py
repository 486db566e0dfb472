"""Delay bounds and simulation for dynamic average consensus."""

import json

from ._core import (
    DacError,
    InadmissibleError,
    InputError,
    ModelError,
    NumericalError,
    analyze as _analyze,
    ct_admissible_delay,
    ct_decay_rate,
    ct_envelope,
    delayed_exponential,
    disagreement_basis,
    dt_admissible_delay,
    dt_envelope,
    eigenvalues,
    lambert_w,
    laplacian,
    read_graph,
    simulate as _simulate,
    validate,
    verify,
)

__all__ = [
    "DacError",
    "InadmissibleError",
    "InputError",
    "ModelError",
    "NumericalError",
    "analyze",
    "ct_admissible_delay",
    "ct_decay_rate",
    "ct_envelope",
    "delayed_exponential",
    "disagreement_basis",
    "dt_admissible_delay",
    "dt_envelope",
    "eigenvalues",
    "lambert_w",
    "laplacian",
    "read_graph",
    "simulate",
    "validate",
    "verify",
]


def _as_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def analyze(config):
    """Analysis report for a config dict (or JSON text), as a dict."""
    return json.loads(_analyze(_as_text(config)))


def simulate(config):
    """Run one simulation; returns times, x, errors, classification and summary."""
    out = _simulate(_as_text(config))
    out["summary"] = json.loads(out["summary"])
    return out
