import math

import pytest

import simlaw as sl


def grid(n=12, s_lo=0.0, s_hi=1.0):
    pos = sl.Interval.positive()
    return sl.Grid(sl.Axis.uniform(0.5, 2.0, n, pos), sl.Axis.uniform(0.5, 2.0, n, pos),
                   sl.Axis.uniform(s_lo, s_hi, n, sl.Interval.real_line()))


def test_scales_round_trip():
    f = sl.ScaleFunction.exp(1.0, 1.0, -1.0)
    assert f(1.0) == pytest.approx(math.e - 1.0)
    assert f.invert(f(0.3)) == pytest.approx(0.3)
    with pytest.raises(sl.Error):
        sl.ScaleFunction.affine(0.0, 1.0)


def test_family_and_companions():
    fam = sl.make_family("rem3")
    assert fam(1.5, 0.25) == pytest.approx(1.75)
    gamma, eta = sl.canonical_companions(fam)
    report = sl.iverson_residual(fam, gamma, eta, grid(), 1e-10)
    assert report.passed
    assert report.to_dict()["maxAbs"] <= 1e-10


def test_scale_params_in_families():
    fam = sl.make_family("weber", {"k": sl.ScaleFunction.affine(1.0, 1.0)})
    assert fam(2.0, 0.5) == pytest.approx(3.0)
    assert sl.weber_residual(fam, grid(), 1e-12).passed


def test_translational_and_affine_shift():
    nonneg = sl.Interval(0.0, math.inf, False, True)
    g = sl.Grid(sl.Axis.uniform(0.5, 2.0, 4, sl.Interval.positive()),
                sl.Axis.uniform(1.0, 4.0, 16, sl.Interval.positive()),
                sl.Axis.uniform(0.0, 2.0, 16, nonneg))
    assert sl.check_mult_translational(sl.EtaMap.power_scale(2.0), g, 1e-10).passed
    bad = sl.check_mult_translational(sl.EtaMap.affine_shift(1.0, 0.5), g, 1e-10)
    assert not bad.passed
    assert not bad.component("boundary_zero").passed


def test_classifier():
    fam = sl.make_family("homogeneous", {"phi": sl.ScaleFunction.affine(1.0, 1.0), "c": 1.0})
    c = sl.classify_laws(fam, grid(16), 1e-8)
    assert c.labels == ["SHIFT"]
    assert abs(c.theta_hat - 1.0) <= 1e-3


def test_fit_round_trip():
    truth = sl.make_family("subCaseI", {"a": 1.0, "b": 1.0, "rho": 1.0, "r": 1.0})
    data = sl.sample_family(truth, grid(10))
    fit = sl.fit_family(data, "subCaseI", [("a", 1.2), ("b", 0.8), ("rho", 1.2), ("r", 0.8)])
    assert fit.converged
    assert fit.residual.max_abs <= 1e-7


def test_power_per_s():
    data = sl.sample_family(sl.make_family("power", {"kappa": 2.0, "rho": 1.5}), grid(8))
    pf = sl.fit_power_per_s(data, 1e-9)
    assert all(abs(k - 2.0) <= 1e-9 for k in pf.kappa)
    assert all(abs(r - 1.5) <= 1e-9 for r in pf.rho)


def test_psychometric_round_trip():
    ident = sl.ScaleFunction.identity()
    pf = sl.make_psychometric(sl.Representation.subtractive(ident, ident),
                              sl.ScaleFunction.logistic_table(), sl.Interval.real_line())
    x = sl.sensitivity_from_psychometric(pf, 1.0, 0.8)
    assert pf.p(1.0, x) == pytest.approx(0.8, abs=1e-9)


def test_run_check(tmp_path):
    config = {
        "family": {"kind": "rem3"},
        "gamma": {"kind": "lambdaOnly"},
        "eta": {"kind": "powerScale", "theta": -1},
        "tol": 1e-10,
    }
    status, report = sl.run("check", config, str(tmp_path), grid="20,20,20")
    assert status == 0
    assert report["pass"] is True
    assert (tmp_path / "check.json").exists()
