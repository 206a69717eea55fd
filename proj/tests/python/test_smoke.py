"""Smoke tests for the python bindings: a thin pass over every exported
operation, with the worked values pinned exactly."""

import json

import pytest

import ldmcache as lc


def rat(text):
    return lc.Rational.parse(text)


def test_rational():
    assert rat("6/8") == lc.Rational(3, 4)
    assert str(lc.Rational(2) - rat("1/3")) == "5/3"
    with pytest.raises(ValueError):
        rat("0.5")


def test_level_words():
    assert lc.downshift("1011", 3) == "0101"
    assert lc.downshift("1011", 4) == "1011"
    assert lc.superpose("101", "001") == "100"
    assert lc.solve_gf2([[1, 1], [0, 1]], [1, 1]) == [0, 1]
    assert lc.solve_gf2([[1, 1], [1, 1]], [1, 0]) is None


def test_quantize_and_regimes():
    assert lc.quantize_channel(1.0, 100.0) == 7
    label = lc.classify_regime(lc.ChannelTriple(4, 3, 2))
    assert label.fine == "R1"
    assert label.coarse == "C1"
    assert label.in_i0 and not label.in_i1
    assert lc.classify_regime(lc.ChannelTriple(2, 4, 3)).fine == "R31"


def test_dtb_and_bounds():
    n = lc.ChannelTriple(2, 4, 3)
    report = lc.dtb_optimal(rat("3/4"), n)
    assert report.optimal == rat("1/4")
    assert report.active == ["B2", "B5"]
    assert lc.dtb_lower_bound(rat("3/4"), n) == rat("1/4")
    b4 = next(b for b in lc.converse_bounds(rat("1/2"), lc.ChannelTriple(4, 3, 2)) if b.id == "B4")
    assert b4.applicable and b4.value == rat("3/8")


def test_corners_and_curve():
    n = lc.ChannelTriple(2, 4, 3)
    corners = [(str(mu), str(v)) for mu, v in lc.corner_points(n)]
    assert corners == [("0", "2/3"), ("4/7", "2/7"), ("3/4", "1/4"), ("1", "1/4")]
    curve = lc.dtb_curve(n, 4)
    assert (str(curve[1][0]), str(curve[1][1])) == ("1/4", "1/2")


def test_schemes_and_simulation():
    n = lc.ChannelTriple(2, 4, 3)
    point = lc.scheme_for(rat("3/5"), n)
    assert point is not None
    assert point.dtb == rat("7/25")
    report = lc.check_decodability(point.scheme)
    assert report.all_ok
    assert report.achieved_dtb == report.optimal
    assert report.recursion_ok is True

    corner = lc.build_corner_scheme_c(n)
    files = [[1, 0, 1, 0], [0, 1, 1, 0]]
    transcript = lc.simulate_delivery(corner.scheme, files, (0, 1))
    assert transcript.consistent()
    assert transcript.y_u == ["1100"]
    decoded = lc.decode_transcript(corner.scheme, transcript)
    assert decoded.ue_file == files[1] and decoded.rn_file == files[0]
    assert lc.recursive_reconstruct(corner.scheme, files, (0, 1)).success

    parsed = lc.LinearScheme.from_json(corner.scheme.to_json())
    assert parsed.dtb == corner.scheme.dtb
    assert json.loads(corner.scheme.to_json())["L"] == 4

    assert lc.scheme_for(rat("1/2"), lc.ChannelTriple(3, 1, 4)) is None


def test_oracle():
    found = lc.brute_force_search(lc.ChannelTriple(2, 4, 3), rat("3/4"), 8, 1)
    assert found is not None
    assert found.dtb == rat("1/4")
    with pytest.raises(RuntimeError):
        lc.brute_force_search(lc.ChannelTriple(6, 6, 6), rat("0"), 8, 2)


def test_invariant_suite_small():
    results = lc.run_invariant_suite(max_n=3, grid=8, trials=10)
    assert results and all(r.pass_ for r in results)
