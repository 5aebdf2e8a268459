"""Relaxed JSON configs and CSV artifacts."""

import math

import numpy as np
import pytest

from pcenters.utils.csvx import fmt, write_rows
from pcenters.utils.jsonx import as_float, dumps, loads, strip_comments_and_trailing_commas


class TestRelaxedJson:
    def test_comments_and_trailing_commas(self):
        text = """
        # experiment header
        {
          "shape": "ball", // the unit disc
          /* block
             comment */
          "points": [[0, 0], [1, 0],],
        }
        """
        assert loads(text) == {"shape": "ball", "points": [[0, 0], [1, 0]]}

    def test_strings_are_untouched(self):
        text = '{"name": "a // b, #c /* d */", "q": "say \\"hi\\","}'
        assert strip_comments_and_trailing_commas(text) == text

    def test_hash_inside_a_line_is_kept(self):
        with pytest.raises(ValueError):
            loads('{"a": 1 # no\n}')

    def test_top_level_must_be_an_object(self):
        with pytest.raises(ValueError, match="object"):
            loads("[1, 2]")

    @pytest.mark.parametrize("raw", ["inf", "Infinity", " +inf "])
    def test_infinite_heights(self, raw):
        assert as_float(raw) == math.inf

    def test_numbers_as_strings(self):
        assert as_float("0.25") == 0.25
        with pytest.raises(ValueError):
            as_float("tall")


class TestDumps:
    def test_infinities_and_arrays(self):
        out = dumps({"delta": math.inf, "low": -math.inf, "pts": np.array([[1.0, 2.0]]), "n": np.int64(3)})
        assert '"delta": "inf"' in out
        assert '"low": "-inf"' in out
        assert '"n": 3' in out
        assert out.endswith("\n")

    def test_sorted_keys(self):
        assert dumps({"b": 1, "a": 2}).index('"a"') < dumps({"b": 1, "a": 2}).index('"b"')


class TestCsv:
    def test_fmt(self):
        assert fmt(True) == "true"
        assert fmt(7) == "7"
        assert fmt(0.1) == "0.10000000000000001"
        assert fmt("exterior") == "exterior"

    def test_write_rows(self, tmp_path):
        path = write_rows(tmp_path / "sub" / "t.csv", ["x", "ok"], [(0.5, False), (2, True)])
        assert path.read_text(encoding="utf-8") == "x,ok\n0.5,false\n2,true\n"
