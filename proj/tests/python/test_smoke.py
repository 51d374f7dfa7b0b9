import math

import pytest

import lqfa


def test_mell_event_engines_agree():
    sim = lqfa.mell_event(3, 3, 10, engine="simulate")
    rec = lqfa.mell_event(3, 3, 10, engine="recurrence")
    cf = lqfa.mell_event(3, 3, 10, engine="closed-form")
    assert len(sim) == 11
    assert sim[3] == pytest.approx(8.0 / 27.0, abs=1e-10)
    for a, b, c in zip(sim, rec, cf):
        assert a == pytest.approx(b, abs=1e-9)
        assert a == pytest.approx(c, abs=1e-9)


def test_membership_and_choose_n():
    assert lqfa.membership(2, 3, [0, 3], 0)
    assert not lqfa.membership(2, 3, [0, 3], 1)
    assert lqfa.membership(2, 3, [0, 3], 6)
    assert lqfa.choose_n(1) == 4


def test_synthesize_manifest():
    m = lqfa.synthesize(1, 2, [0, 2])
    assert m["mode"] == "full"
    assert m["n"] == 4
    assert m["lambda"] == 0.5
    assert m["rho"] == pytest.approx((3 / 4) ** 2 - 0.5)
    per = lqfa.synthesize(0, 3, [1])
    assert per["mode"] == "periodic-only"


def test_verify_randomized_case():
    rep = lqfa.verify(1, 2, [0, 2], k_max=12)
    assert rep["violations"] == []
    assert rep["lambda"] == 0.5
    assert rep["min_accept"] >= (3 / 4) ** 2 - 1e-9


def test_recognizer_event_matches_membership_bounds():
    bound = (3 / 4) ** 2
    values = lqfa.recognizer_event(1, 2, [0, 2], k_max=12)
    for k, p in enumerate(values):
        member = lqfa.membership(1, 2, [0, 2], k)
        if member:
            assert p >= bound - 1e-9
        else:
            assert p <= 1 - bound + 1e-9


def test_csv_round_trip():
    values = [0.0, 0.5, 8.0 / 27.0]
    csv = lqfa.format_event_csv(values)
    assert csv.startswith("k,probability\n")
    back = lqfa.parse_event_csv(csv)
    for a, b in zip(values, back):
        assert a == pytest.approx(b, abs=1e-12)
    with pytest.raises(ValueError):
        lqfa.parse_event_csv("bogus")


def test_capacity_error_surfaces():
    with pytest.raises(lqfa.CapacityError):
        lqfa.synthesize(2, 3, [0, 3], dim_cap=1000)
