import math

import pytest

import sdmstab


def test_worked_boundary():
    rep = sdmstab.classify_intervals([3, -3, 1])
    assert rep["a_min"] == 0.875
    assert [iv["stable"] for iv in rep["intervals"]] == [False, True, False]
    assert rep["intervals"][1]["hi"] == pytest.approx(2.0, abs=1e-12)
    assert rep["intervals"][2]["hi"] is None


def test_root_counting():
    r = sdmstab.count_inside_e1([0.75, 0.5, 1.0])
    assert r["inside"] == 2 and r["method"] == "e1"
    assert sdmstab.winding_oracle([-2.0, 1.0]) == -1
    assert sdmstab.jury_stable([1.0, -2.5, 1.0]) == "unstable"
    roots = sdmstab.all_roots([0.75, 0.5, 1.0])
    assert all(abs(abs(z) - math.sqrt(0.75)) < 1e-12 for z in roots)


def test_transfer_and_polynomials():
    assert sdmstab.b_from_g([1, 2, 3]) == [3, -4, 2]
    assert sdmstab.char_poly([3, -3, 1], 1.0) == [0, 0, 0, 1]
    assert sdmstab.ntf_series(sdmstab.b_from_g([1, 2]), 4) == [1, -2, 1, 0]
    assert sdmstab.cheb_expand([0, 0, 1], 0.0, "sine") == [-1, 0, 4]
    assert sdmstab.i_max_order3([3, -3, 1]) == (2.0, 0.5, True)


def test_simulation():
    r = sdmstab.simulate([1], dc=0.25)
    assert not r["diverged"] and abs(r["mean_v"] - 0.25) <= 1e-3
    w = sdmstab.sweep([1], amp_hi=0.9, steps=10, samples=10000)
    assert w["windows"] == []


def test_cli_in_process():
    code, out, err = sdmstab.cli("check", "--b", "3,-3,1", "--i-abs", "1.0")
    assert code == 0 and "inside: 3" in out
    code, out, err = sdmstab.cli("bounds")
    assert code == 2 and err


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        sdmstab.b_from_g([])
