import json
import math

import numpy as np
import pytest

from stretchcount.curves import (CurveDomainError, curve_for_exponent, diamond,
                                 from_spec, pcircle, quadrant_area)

from conftest import central_diff, romberg


def test_pythagorean_point():
    assert pcircle(2).f(0.6) == pytest.approx(0.8, abs=1e-15)


def test_corner_is_symmetry_point():
    c = pcircle(2)
    assert c.corner == pytest.approx((2 ** -0.5, 2 ** -0.5), abs=1e-15)
    c3 = pcircle(3)
    assert c3.corner[0] == pytest.approx(2 ** (-1 / 3), abs=1e-15)
    assert c3.f(c3.corner[0]) == pytest.approx(c3.corner[1], abs=1e-12)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0])
def test_derivatives_match_finite_differences(p):
    c = pcircle(p)
    for x in np.linspace(0.05, 0.95, 19):
        fd1 = central_diff(c.f, x)
        assert c.fp(x) == pytest.approx(fd1, rel=1e-6)
        fd2 = central_diff(c.fp, x)
        assert c.fpp(x) == pytest.approx(fd2, rel=1e-6)


def test_fpp_oracle_value_p3():
    # independent finite-difference oracle on (1-x^3)^(1/3) at x = 0.5
    f = lambda x: (1 - x ** 3) ** (1 / 3)
    h = 1e-5
    fd2 = (f(0.5 + h) - 2 * f(0.5) + f(0.5 - h)) / h ** 2
    assert pcircle(3).fpp(0.5) == pytest.approx(fd2, rel=1e-6)


@pytest.mark.parametrize("p", [1.3, 1.5, 2.0, 2.7, 4.0])
def test_strictly_decreasing_and_concave(p):
    c = pcircle(p)
    xs = np.linspace(1e-6, 1 - 1e-6, 400)
    ys = np.array([c.f(x) for x in xs])
    assert np.all(np.diff(ys) < 0)
    mids = np.array([c.f(0.5 * (a + b)) for a, b in zip(xs, xs[2:])])
    assert np.all(mids >= 0.5 * (ys[:-2] + ys[2:]) - 1e-12)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_inverse_identity(p):
    c = pcircle(p)
    for x in np.linspace(0.05, 0.95, 17):
        assert c.g(c.f(x)) == pytest.approx(x, abs=1e-10)


def test_curvature_negative_at_corner():
    for p in (1.2, 1.5, 2.0, 3.0, 6.0):
        c = pcircle(p)
        assert c.fpp(c.corner[0]) < 0


def test_partition_marks_curvature_inflection():
    # closed form for the interior inflection of the curvature, p < 2
    for p in (1.2, 1.5, 1.9):
        c = pcircle(p)
        assert len(c.partition_f) == 3
        x_star = ((2 - p) / (1 + p)) ** (1 / p)
        assert c.partition_f[1] == pytest.approx(x_star, abs=1e-10)
    for p in (2.0, 3.0, 10.0):
        assert len(pcircle(p).partition_f) == 2


def test_endpoint_queries_raise():
    c = pcircle(1.5)
    for bad in (0.0, 1.0, -0.1, 1.7):
        with pytest.raises(CurveDomainError):
            c.f(bad)
        with pytest.raises(CurveDomainError):
            c.fpp(bad)


def test_rejects_out_of_range_exponents():
    for bad in (1.0, 0.5, -2.0, math.nan):
        with pytest.raises(ValueError):
            pcircle(bad)


def test_quadrant_area_exact_members():
    assert quadrant_area(pcircle(2)) == pytest.approx(math.pi / 4, abs=1e-10)
    assert quadrant_area(diamond()) == 0.5
    assert quadrant_area(pcircle(math.inf)) == 1.0


def test_quadrant_area_p3_vs_romberg():
    val = romberg(lambda x: (1 - x ** 3) ** (1 / 3) if x < 1 else 0.0, 0.0, 1.0)
    # cross-check the extrapolation against the beta-function closed form
    exact = math.gamma(4 / 3) ** 2 / math.gamma(5 / 3)
    assert val == pytest.approx(exact, abs=1e-9)
    assert quadrant_area(pcircle(3)) == pytest.approx(val, rel=1e-8)


def test_curve_for_exponent_mapping():
    assert curve_for_exponent(1.0).label == "diamond"
    assert curve_for_exponent(2.0).pnorm == 2.0
    assert curve_for_exponent(math.inf).label == "square"


def test_pcircle_symmetry_f_equals_g():
    c = pcircle(2.5)
    for x in np.linspace(0.1, 0.9, 9):
        assert c.f(x) == c.g(x)


def test_spec_roundtrip_pcircle(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps({"kind": "pcircle", "p": 2.0}))
    from stretchcount.curves import load_spec

    c = load_spec(path)
    assert c.pnorm == 2.0
    assert c.f(0.6) == pytest.approx(0.8)
    inf_c = from_spec({"kind": "pcircle", "p": "inf"})
    assert inf_c.pnorm == math.inf


def test_spec_custom_curve_tables():
    ref = pcircle(2)
    xs = np.linspace(1e-4, 1 - 1e-4, 4001)
    spec = {
        "kind": "custom",
        "L": 1.0,
        "M": 1.0,
        "symmetric": True,
        "x": list(xs),
        "f": [ref.f(x) for x in xs],
        "fp": [ref.fp(x) for x in xs],
        "fpp": [ref.fpp(x) for x in xs],
        "partition_f": [0.0, 2 ** -0.5],
        "partition_g": [0.0, 2 ** -0.5],
        "corner": [2 ** -0.5, 2 ** -0.5],
    }
    c = from_spec(spec)
    assert c.pnorm is None
    for x in (0.2, 0.5, 0.8):
        assert c.f(x) == pytest.approx(ref.f(x), abs=1e-6)
        assert c.fp(x) == pytest.approx(ref.fp(x), abs=1e-5)
    assert quadrant_area(c, rel_tol=1e-6) == pytest.approx(math.pi / 4, abs=1e-4)


def test_spec_custom_default_corner_is_midpoint():
    xs = np.linspace(1e-4, 2 - 1e-4, 2001)
    spec = {
        "kind": "custom",
        "L": 2.0,
        "M": 2.0,
        "symmetric": True,
        "x": list(xs),
        "f": [2.0 - x for x in xs],
        "fp": [-1.0] * len(xs),
        "fpp": [0.0] * len(xs),
        "partition_f": [0.0, 1.0],
        "partition_g": [0.0, 1.0],
    }
    c = from_spec(spec)
    assert c.corner[0] == pytest.approx(1.0)
    assert c.corner[1] == pytest.approx(1.0, abs=1e-9)


def test_spec_unknown_kind_rejected():
    with pytest.raises(ValueError):
        from_spec({"kind": "pentagon"})
