import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quatspec.errors import DimensionError
from quatspec.serialize import (
    dumps, fmt_float, matrix_from_json, matrix_to_json, scan_csv, vector_from_json, vector_to_json,
)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip(x):
    assert float(fmt_float(x)) == x or (x == 0.0 and float(fmt_float(x)) == 0.0)


def test_special_values():
    assert fmt_float(-0.0) == "0"
    assert fmt_float(math.inf) == '"inf"'
    assert fmt_float(0.1) == "0.10000000000000001"


def test_dumps_keeps_field_order():
    text = dumps({"b": 1, "a": [0.5, 2], "c": {"z": None, "y": True}})
    assert list(json.loads(text)) == ["b", "a", "c"]
    assert '"a": [0.5, 2]' in text


def test_matrix_round_trip(rng):
    a = rng.standard_normal((3, 3, 4))
    back = matrix_from_json(dumps(matrix_to_json(a)))
    assert np.array_equal(a, back)
    v = rng.standard_normal((4, 4))
    assert np.array_equal(vector_from_json(dumps(vector_to_json(v))), v)


def test_matrix_errors():
    with pytest.raises(DimensionError):
        matrix_from_json({"n": 2, "entries": [[[1, 0, 0, 0]]]})
    with pytest.raises(DimensionError):
        matrix_from_json({"entries": []})
    with pytest.raises(json.JSONDecodeError):
        matrix_from_json('{"n": 1, "entries": [[[1, 0, 0')


def test_scan_csv_order():
    text = scan_csv(np.array([0.0, 1.0]), np.array([0.0, 0.5]), np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert text.splitlines() == ["re,rad,mu", "0,0,1", "0,0.5,2", "1,0,3", "1,0.5,4"]
