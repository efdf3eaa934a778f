import json
import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from dprime_pair.formatting import csv_text, format_csv_value, json_text, parse_csv_value
from dprime_pair.model import Energy


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_csv_float_round_trip(x):
    text = format_csv_value(x)
    assert float(text) == x
    mantissa = text.split("e")[0].lstrip("-")
    assert len(mantissa.replace(".", "")) == 17


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_json_float_round_trip(x):
    assert json.loads(json_text([x]))[0] == x


def test_special_values():
    assert format_csv_value(math.inf) == "inf"
    assert format_csv_value(-math.inf) == "-inf"
    assert format_csv_value(math.nan) == "nan"
    assert json.loads(json_text({"a": math.inf})) == {"a": "inf"}
    assert format_csv_value(3) == "3" and format_csv_value(True) == "true"


def test_plain_conversion():
    payload = {"e": Energy(-2.5), "n": np.int64(4), "x": np.float64(0.1)}
    assert json_text(payload) == '{"e":-2.5,"n":4,"x":0.1}\n'


def test_csv_layout():
    text = csv_text(("a", "b"), [{"a": 1, "b": 0.5, "c": "ignored"}])
    assert text == "a,b\n1,5.0000000000000000e-01\n"
    assert parse_csv_value("1") == 1 and parse_csv_value("5e-1") == 0.5 and parse_csv_value("ground") == "ground"
