"""JSON (de)serialization of graded free complexes.

The payload shape::

    {
      "ring": {"n": 2, "weights": [1, 2]},
      "terms": {"0": [0, -1], "1": [3]},
      "differentials": {
        "0": [ [ [["1", [1, 0]], ["-2/3", [0, 1]]] ] ]
      }
    }

``terms`` maps a cohomological degree (as a string key) to the list of
generator weights; ``differentials`` maps a degree d to the matrix of the
map from degree d to degree d+1, with rows indexed by the target
generators.  Each matrix entry is a list of monomial terms, each term a
pair [coefficient, exponent list]; coefficients are exact fraction
strings.  Zero entries are empty lists, and all-zero matrices may be
omitted entirely.

Loading validates shapes, coefficient syntax, homogeneity and d^2 = 0, and
names the offending field in every diagnostic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from ..errors import InputError
from ..serialize import fraction_repr, parse_fraction
from .complexes import GradedFreeComplex
from .ring import Polynomial, WeightedRing

__all__ = ["complex_to_payload", "complex_from_payload"]


def complex_to_payload(F: GradedFreeComplex) -> dict:
    terms = {str(d): list(F.weights(d)) for d in F.degrees()}
    differentials = {}
    for d, matrix in sorted(F.differentials().items()):
        differentials[str(d)] = [
            [
                [
                    [fraction_repr(coeff), list(expo)]
                    for expo, coeff in sorted(entry.items())
                ]
                for entry in row
            ]
            for row in matrix
        ]
    payload = {
        "ring": {"n": F.ring.n, "weights": list(F.ring.weights)},
        "terms": terms,
    }
    if differentials:
        payload["differentials"] = differentials
    return payload


def _expect_dict(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise InputError(f"{where}: expected an object, got {type(value).__name__}")
    return value


def _expect_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list, got {type(value).__name__}")
    return value


def _expect_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def _parse_degree(key, where: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise InputError(f"{where}: degree keys must be integers, got {key!r}")


def _parse_entry(value, n: int, where: str) -> Polynomial:
    entry = _expect_list(value, where)
    poly: Dict[tuple, Fraction] = {}
    for i, term in enumerate(entry):
        term_where = f"{where}[{i}]"
        term = _expect_list(term, term_where)
        if len(term) != 2:
            raise InputError(
                f"{term_where}: a term is a [coefficient, exponents] pair"
            )
        coeff = parse_fraction(term[0], f"{term_where}[0]")
        expo_list = _expect_list(term[1], f"{term_where}[1]")
        if len(expo_list) != n:
            raise InputError(
                f"{term_where}[1]: expected {n} exponents, got {len(expo_list)}"
            )
        expo = tuple(
            _expect_int(e, f"{term_where}[1][{j}]") for j, e in enumerate(expo_list)
        )
        if any(e < 0 for e in expo):
            raise InputError(f"{term_where}[1]: exponents must be nonnegative")
        poly[expo] = poly.get(expo, Fraction(0)) + coeff
    return {expo: coeff for expo, coeff in poly.items() if coeff != 0}


def complex_from_payload(data) -> GradedFreeComplex:
    data = _expect_dict(data, "complex")
    known = {"ring", "terms", "differentials"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise InputError(f"complex: unknown fields {unknown}")
    if "ring" not in data:
        raise InputError("complex.ring: missing")
    ring_data = _expect_dict(data["ring"], "complex.ring")
    if set(ring_data) - {"n", "weights"}:
        raise InputError(
            f"complex.ring: unknown fields {sorted(set(ring_data) - {'n', 'weights'})}"
        )
    if "weights" not in ring_data:
        raise InputError("complex.ring.weights: missing")
    weights_list = _expect_list(ring_data["weights"], "complex.ring.weights")
    weights = tuple(
        _expect_int(w, f"complex.ring.weights[{i}]")
        for i, w in enumerate(weights_list)
    )
    if "n" in ring_data:
        n = _expect_int(ring_data["n"], "complex.ring.n")
        if n != len(weights):
            raise InputError(
                f"complex.ring.n: {n} does not match {len(weights)} weights"
            )
    ring = WeightedRing(weights)

    terms_data = _expect_dict(data.get("terms", {}), "complex.terms")
    terms: Dict[int, List[int]] = {}
    for key, value in terms_data.items():
        where = f"complex.terms.{key}"
        degree = _parse_degree(key, where)
        weights_here = _expect_list(value, where)
        terms[degree] = [
            _expect_int(w, f"{where}[{i}]") for i, w in enumerate(weights_here)
        ]

    diff_data = _expect_dict(data.get("differentials", {}), "complex.differentials")
    differentials: Dict[int, List[List[Polynomial]]] = {}
    for key, value in diff_data.items():
        where = f"complex.differentials.{key}"
        degree = _parse_degree(key, where)
        matrix = _expect_list(value, where)
        differentials[degree] = [
            [
                _parse_entry(entry, ring.n, f"{where}[{r}][{c}]")
                for c, entry in enumerate(_expect_list(row, f"{where}[{r}]"))
            ]
            for r, row in enumerate(matrix)
        ]

    return GradedFreeComplex(ring, terms, differentials)
