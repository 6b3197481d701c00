"""Unit tests for glft.utils.parsing module."""
import pytest

from glft.utils.exceptions import UsageError
from glft.utils.parsing import (
    format_function_spec,
    parse_function_spec,
    parse_json_literal,
    split_top_level,
)


class TestSplitTopLevel:
    def test_respects_brackets(self):
        assert split_top_level("a=[1,2],b=3") == ["a=[1,2]", "b=3"]

    def test_nested(self):
        assert split_top_level("Q=[[2,0],[0,1]],s=1") == ["Q=[[2,0],[0,1]]", "s=1"]

    def test_unbalanced(self):
        with pytest.raises(UsageError):
            split_top_level("a=[1,2")
        with pytest.raises(UsageError):
            split_top_level("a=1]")


class TestParseFunctionSpec:
    def test_bare_name(self):
        assert parse_function_spec("exp") == ("exp", {})

    def test_numeric_and_list_params(self):
        assert parse_function_spec("affine{a=[3],b=2}") == ("affine", {'a': [3], 'b': 2})

    def test_bare_word_value(self):
        assert parse_function_spec("exp-abs{restrict=positive}") == (
            "exp-abs", {'restrict': 'positive'})

    def test_empty_braces(self):
        assert parse_function_spec("exp{}") == ("exp", {})

    @pytest.mark.parametrize("text", ["", "exp{p=1", "{p=1}", "exp{p}", "exp{=1}"])
    def test_malformed(self, text):
        with pytest.raises(UsageError):
            parse_function_spec(text)

    def test_format_roundtrip(self):
        name, params = parse_function_spec("quadratic-form{Q=[[2,0],[0,1]],s=1}")
        assert parse_function_spec(format_function_spec(name, params)) == (name, params)


class TestParseJsonLiteral:
    def test_object(self):
        assert parse_json_literal('{"lambda": 2}')["lambda"] == 2

    def test_invalid(self):
        with pytest.raises(UsageError, match="P literal"):
            parse_json_literal("{lambda: 2}", "P literal")
