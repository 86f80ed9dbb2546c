"""Stability analysis and simulation of cascaded one-bit sigma-delta modulators."""

import json

from ._core import (
    __version__,
    all_roots,
    b_from_g,
    binom_power,
    bisect_boundary,
    char_poly,
    cheb_expand,
    d_coeffs,
    g_from_b,
    i_max_order3,
    i_min,
    jury_stable,
    linearized_impulse,
    ntf_series,
    real_roots_open,
    winding_oracle,
)
from . import _core


def characteristic_points(coeffs):
    return json.loads(_core._characteristic_points(list(coeffs)))


def count_inside_e1(coeffs):
    return json.loads(_core._count_inside_e1(list(coeffs)))


def zero_point_candidates(b):
    return json.loads(_core._zero_point_candidates(list(b)))


def crossing_param(b, phi_grid=2048):
    return json.loads(_core._crossing_param(list(b), phi_grid))


def classify_intervals(b):
    """Stability intervals in |I|; an unbounded upper end is reported as None."""
    return json.loads(_core._classify_intervals(list(b)))


def simulate(g, dc=None, sine_amp=None, sine_period=64.0, samples=100000, threshold=1e6, initial_state=()):
    return json.loads(
        _core._simulate(list(g), dc, sine_amp, sine_period, samples, threshold, list(initial_state))
    )


def sweep(g, amp_lo=0.0, amp_hi=1.0, steps=64, samples=100000, threshold=1e6, workers=0):
    return json.loads(_core._sweep(list(g), amp_lo, amp_hi, steps, samples, threshold, workers))


def cli(*args):
    """Runs the command-line front end in-process; returns (exit_code, stdout, stderr)."""
    return _core._cli_run([str(a) for a in args])


__all__ = [
    "__version__",
    "all_roots",
    "b_from_g",
    "binom_power",
    "bisect_boundary",
    "char_poly",
    "characteristic_points",
    "cheb_expand",
    "classify_intervals",
    "cli",
    "count_inside_e1",
    "crossing_param",
    "d_coeffs",
    "g_from_b",
    "i_max_order3",
    "i_min",
    "jury_stable",
    "linearized_impulse",
    "ntf_series",
    "real_roots_open",
    "simulate",
    "sweep",
    "winding_oracle",
    "zero_point_candidates",
]
