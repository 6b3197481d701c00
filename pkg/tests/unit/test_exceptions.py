"""Unit tests for glft.utils.exceptions module."""
import pytest

from glft.utils.exceptions import (
    CatalogError,
    ConfigError,
    ConvergenceError,
    DimensionError,
    DomainError,
    EngineError,
    ExtendedArithmeticError,
    FileOperationError,
    GlftError,
    GridWindowError,
    HessianNotSPDError,
    NoClosedFormError,
    NumericError,
    OutOfRangeError,
    ParameterError,
    UsageError,
)


class TestExceptionHierarchy:
    """Tests for exception class hierarchy."""

    def test_glft_error_is_exception(self):
        assert issubclass(GlftError, Exception)

    @pytest.mark.parametrize("cls", [UsageError, ConfigError, FileOperationError, NumericError])
    def test_top_level_errors_inherit_from_glft_error(self, cls):
        assert issubclass(cls, GlftError)

    @pytest.mark.parametrize("cls", [
        ExtendedArithmeticError, DimensionError, DomainError, ParameterError, EngineError,
    ])
    def test_numeric_family(self, cls):
        """Numeric failures share one base class."""
        assert issubclass(cls, NumericError)

    @pytest.mark.parametrize("cls", [
        NoClosedFormError, ConvergenceError, OutOfRangeError, HessianNotSPDError, GridWindowError,
    ])
    def test_engine_family(self, cls):
        assert issubclass(cls, EngineError)

    def test_catalog_error_is_parameter_error(self):
        assert issubclass(CatalogError, ParameterError)


class TestExitCodes:
    """Each exception class carries the CLI exit code."""

    @pytest.mark.parametrize("cls", [UsageError, ConfigError, FileOperationError, CatalogError])
    def test_usage_family_exits_2(self, cls):
        assert cls.exit_code == 2

    @pytest.mark.parametrize("cls", [
        NumericError, DimensionError, DomainError, ParameterError, OutOfRangeError, GridWindowError,
    ])
    def test_numeric_family_exits_3(self, cls):
        assert cls.exit_code == 3

    def test_base_error_exits_1(self):
        assert GlftError.exit_code == 1

    def test_exit_code_on_instance(self):
        assert DomainError("outside").exit_code == 3


class TestExceptionRaising:
    """Tests for raising exceptions."""

    def test_raise_with_message(self):
        with pytest.raises(GlftError) as exc_info:
            raise OutOfRangeError("eta outside the gradient range")

        assert "gradient range" in str(exc_info.value)

    def test_catch_as_engine_error(self):
        with pytest.raises(EngineError):
            raise NoClosedFormError("no rule for custom")
