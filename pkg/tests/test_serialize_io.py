"""Exact JSON conventions, complex (de)serialization, report envelopes."""

import json
from fractions import Fraction

import pytest

from gitwin._version import __version__
from gitwin.errors import InputError
from gitwin.gitcore import kn_stratification
from gitwin.gradedmod.io import complex_from_payload, complex_to_payload
from gitwin.gradedmod.koszul import koszul_skyscraper
from gitwin.gradedmod.complexes import free_module
from gitwin.report import build_report, stratification_payload
from gitwin.serialize import (
    canonical_json,
    fraction_repr,
    parse_fraction,
    payload_digest,
)


def test_fraction_repr():
    assert fraction_repr(Fraction(3, 4)) == "3/4"
    assert fraction_repr(Fraction(5)) == "5"
    assert fraction_repr(Fraction(-2, 6)) == "-1/3"
    assert fraction_repr(Fraction(0)) == "0"


def test_parse_fraction_accepts_ints_and_strings():
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction("-7") == Fraction(-7)
    assert parse_fraction(12) == Fraction(12)
    assert parse_fraction("-2/6") == Fraction(-1, 3)


def test_parse_fraction_rejects_garbage():
    with pytest.raises(InputError, match="window: .*boolean"):
        parse_fraction(True, where="window")
    with pytest.raises(InputError, match="not a rational number"):
        parse_fraction("abc")
    with pytest.raises(InputError, match="not a rational number"):
        parse_fraction("1/0")
    with pytest.raises(InputError, match="expected an integer or a 'p/q'"):
        parse_fraction(1.5)


def test_canonical_json_is_deterministic():
    a = canonical_json({"b": 1, "a": [1, 2]})
    b = canonical_json({"a": (1, 2), "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert a == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_canonical_json_rejects_floats():
    with pytest.raises(InputError, match="no floating point"):
        canonical_json({"x": 1.0})
    with pytest.raises(InputError, match="no floating point"):
        canonical_json([{"deep": [[0.5]]}])


def test_payload_digest_tracks_content():
    base = payload_digest({"n": 3, "weights": [1, 1, 1]})
    assert base == payload_digest({"weights": [1, 1, 1], "n": 3})
    assert base != payload_digest({"n": 3, "weights": [1, 1, 2]})
    assert len(base) == 64 and all(c in "0123456789abcdef" for c in base)


def test_complex_round_trip(ring11):
    K = koszul_skyscraper(ring11, -1)
    payload = complex_to_payload(K)
    # the payload survives a real serialization pass
    text = canonical_json(payload)
    assert complex_from_payload(json.loads(text)) == K


def test_free_module_payload_omits_differentials(ring11):
    payload = complex_to_payload(free_module(ring11, [0, 2], degree=-1))
    assert "differentials" not in payload
    assert payload["terms"] == {"-1": [0, 2]}
    assert payload["ring"] == {"n": 2, "weights": [1, 1]}


def test_complex_payload_diagnostics_name_the_field():
    good = {
        "ring": {"n": 1, "weights": [1]},
        "terms": {"0": [0], "1": [-1]},
        "differentials": {"0": [[[["1", [1]]]]]},
    }
    complex_from_payload(good)  # sanity

    bad = dict(good, junk=1)
    with pytest.raises(InputError, match=r"unknown fields \['junk'\]"):
        complex_from_payload(bad)

    with pytest.raises(InputError, match="complex.ring: missing"):
        complex_from_payload({"terms": {}})

    bad = dict(good, ring={"n": 2, "weights": [1]})
    with pytest.raises(InputError, match="does not match 1 weights"):
        complex_from_payload(bad)

    bad = dict(good, terms={"zero": [0]})
    with pytest.raises(InputError, match="degree keys must be integers"):
        complex_from_payload(bad)

    bad = dict(good, differentials={"0": [[[["1", [1, 0]]]]]})
    with pytest.raises(InputError, match="expected 1 exponents, got 2"):
        complex_from_payload(bad)

    bad = dict(good, differentials={"0": [[[["1", [-1]]]]]})
    with pytest.raises(InputError, match="exponents must be nonnegative"):
        complex_from_payload(bad)

    bad = dict(good, differentials={"0": [[[["1"]]]]})
    with pytest.raises(InputError, match=r"\[coefficient, exponents\] pair"):
        complex_from_payload(bad)

    bad = dict(good, differentials={"0": [[[[1.5, [1]]]]]})
    with pytest.raises(InputError, match="differentials.0\\[0\\]\\[0\\]\\[0\\]\\[0\\]"):
        complex_from_payload(bad)


def test_duplicate_monomials_are_merged():
    payload = {
        "ring": {"weights": [1]},
        "terms": {"0": [0], "1": [-1]},
        "differentials": {"0": [[[["1", [1]], ["-1", [1]]]]]},
    }
    F = complex_from_payload(payload)
    assert F.differential(0) == (({},),)


def test_report_envelope(pv):
    strat = kn_stratification(pv)
    result = stratification_payload(strat)
    input_payload = {"k": 1, "n": 3, "weights": [[1], [1], [1]]}
    report = build_report("stratify", input_payload, result)
    assert report["command"] == "stratify"
    assert report["version"] == __version__
    assert report["input_digest"] == payload_digest(input_payload)
    assert report["result"]["semistable"] == {
        "count": 7,
        "strictly_semistable": 0,
    }
    assert len(report["result"]["strata"]) == 1
    assert report["result"]["strata"][0]["destabilizer"] == [-1]
    assert report["result"]["strata"][0]["mu_squared"] == "1"


def test_empty_stratification_payload(pv):
    strat = kn_stratification(pv.with_linearization((0,)))
    assert stratification_payload(strat) == {"strata": [], "semistable": "all"}
