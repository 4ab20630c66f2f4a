"""Tests for the exceptions module."""

import pytest

from ecslab.coherent_algebra import coherent, inner_product, make_family_state, make_h
from ecslab.exceptions import (
    ConstraintViolatedError,
    EcslabError,
    ModeError,
    NormTooSmallError,
    ParameterRangeError,
    SpectrumError,
    ValidationFailedError,
)


class TestExceptionHierarchy:
    """Tests for the exception class hierarchy."""

    def test_base_exception_is_exception(self) -> None:
        """Test that EcslabError inherits from Exception."""
        assert issubclass(EcslabError, Exception)

    @pytest.mark.parametrize(
        "exc_type",
        [
            NormTooSmallError,
            ConstraintViolatedError,
            ModeError,
            ParameterRangeError,
            SpectrumError,
            ValidationFailedError,
        ],
    )
    def test_every_error_inherits_base(self, exc_type: type[Exception]) -> None:
        """Test that each specific error is an EcslabError."""
        assert issubclass(exc_type, EcslabError)

    def test_argument_errors_are_value_errors(self) -> None:
        """Test that mode and range errors can be caught as ValueError."""
        assert issubclass(ModeError, ValueError)
        assert issubclass(ParameterRangeError, ValueError)


class TestExceptionCatching:
    """Tests for catching exceptions raised by the package."""

    def test_catch_all_with_base_exception(self) -> None:
        """Test that the base exception catches errors from real operations."""
        with pytest.raises(EcslabError):
            make_h(0.0)
        with pytest.raises(EcslabError):
            inner_product(coherent(1.0), coherent(1.0, 2.0))
        with pytest.raises(EcslabError):
            make_family_state(0.0, 0.0, 1.0, 3.0)

    def test_catch_specific_exception(self) -> None:
        """Test that specific exceptions can be caught individually."""
        with pytest.raises(NormTooSmallError):
            make_h(0.0)
        with pytest.raises(ModeError):
            inner_product(coherent(1.0), coherent(1.0, 2.0))
        with pytest.raises(ConstraintViolatedError):
            make_family_state(0.0, 0.0, 1.0, 3.0)

    def test_exception_message(self) -> None:
        """Test that exception messages carry the offending value."""
        with pytest.raises(NormTooSmallError, match="alpha=0"):
            make_h(0.0)
