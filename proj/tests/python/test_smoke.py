import json
import math

import pytest

import seqderiv as sd


def test_weierstrass_closed_forms():
    f = sd.make_function("weierstrass:a=0.5,b=13")
    assert f(0.0) == 2.0
    assert f(1.0) == -2.0
    assert abs(f(0.5)) < 1e-15
    assert f.continuous


def test_gallery_round_trip():
    for entry in sd.gallery():
        f = sd.make_function(entry["spec"])
        assert f.name == entry["name"]
        assert sd.make_function(f.spec).spec == f.spec


def test_quotients():
    sq = sd.make_function("square")
    assert sd.newton_quotient(sq, 1.0, 0.1) == pytest.approx(2.1)
    absf = sd.make_function("abs")
    assert sd.cord_quotient(absf, 0.0, 0.1, 0.01) == pytest.approx(9 / 11)
    assert sd.newton_quotient(sd.make_function("sqrt"), 0.0, 1e-30) == math.inf
    d = sd.decompose(absf, 0.1, 0.05)
    assert d["r"] == pytest.approx(2 / 3)
    assert d["reconstructed"] == pytest.approx(d["cord"])


def test_trace():
    t = sd.trace(sd.make_function("square"), 1.0, "harmonic:0,1", n=3)
    assert [e["value"] for e in t["entries"]] == pytest.approx([3, 2.5, 7 / 3])


def test_cord_set_of_abs():
    est = sd.estimate_cord_set(sd.make_function("abs"), 0.0)
    assert est["classification"] == "closed_interval"
    assert sd.hausdorff(est["set"], {"intervals": [[-1, 1]], "points": []}) <= 0.02


def test_secant_set_of_sine_envelope():
    est = sd.estimate_secant_set(sd.make_function("sine_envelope:a=-1,b=2"), 0.0, side="right", budget=20000)
    assert sd.hausdorff(est["set"], {"intervals": [[-1, 2]], "points": []}) <= 0.05


def test_solve_target():
    p = sd.solve_target(sd.make_function("abs"), 0.0, 1 / 3)
    assert abs(p["value"] - 1 / 3) <= 1e-9


def test_predictions():
    assert sd.predict_poly(1, 3, 2, i_max=1, j_max=1)["weights"][0]["r"] == 0.75
    e = sd.predict_exp(2, 4, t_min=-3, t_max=3)
    assert e["classification"] == "discrete_with_accumulation"
    assert 0.5 in e["set"]["points"]


def test_dioph():
    assert sd.log_ratio_quotients(2, 3, 9) == [0, 1, 1, 1, 2, 2, 3, 1, 5]
    assert sd.continued_fraction(0.5) == [0, 2]
    w = sd.approx_target(math.sqrt(2), 0.0, 1e-3)
    assert (w["i"], w["j"]) == (408, 577)
    assert sd.approx_target(0.5, 0.25, 1e-2) is None
    assert sd.rational_check(2, 4)["text"] == "rational(1, 2)"
    assert not sd.rational_check(2, 3)["found"]


def test_errors_are_typed():
    with pytest.raises(sd.Error, match="param"):
        sd.make_function("nosuch")
    with pytest.raises(sd.Error, match="domain"):
        sd.make_function("sqrt")(-1.0)
    with pytest.raises(ValueError):
        sd.subsequential_limits([1.0] * 10)


def test_cli_run_is_reproducible():
    args = ["verify", "--suite", "kernel"]
    code, out, err = sd.run(args)
    assert code == 0
    assert json.loads(out)["schema"] == "seqderiv/1"
    assert sd.run(args) == (code, out, err)
    assert sd.run(["eval", "--fn", "nosuch", "--x", "0"])[0] == 2


def test_verify_suites():
    reports = sd.verify("kernel")
    assert reports[0]["suite"] == "kernel"
    assert all(c["passed"] for c in reports[0]["checks"])
