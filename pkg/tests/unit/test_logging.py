"""Unit tests for glft.utils.logging module."""


class TestLogFunctions:
    """Tests for logging functions. Everything goes to stderr."""

    def test_log_info(self, capsys):
        """log_info prints info message with blue prefix."""
        from glft.utils.logging import log_info, BLUE, NC

        log_info("Test message")
        captured = capsys.readouterr()
        assert "Test message" in captured.err
        assert "[INFO]" in captured.err
        assert BLUE in captured.err
        assert NC in captured.err
        assert captured.out == ""

    def test_log_success(self, capsys):
        """log_success prints success message with green prefix."""
        from glft.utils.logging import log_success, GREEN

        log_success("Success message")
        captured = capsys.readouterr()
        assert "[SUCCESS]" in captured.err
        assert GREEN in captured.err

    def test_log_warning(self, capsys):
        """log_warning prints warning message with yellow prefix."""
        from glft.utils.logging import log_warning, YELLOW

        log_warning("Warning message")
        captured = capsys.readouterr()
        assert "Warning message" in captured.err
        assert YELLOW in captured.err

    def test_log_error(self, capsys):
        """log_error prints error message to stderr with red prefix."""
        from glft.utils.logging import log_error, RED

        log_error("Error message")
        captured = capsys.readouterr()
        assert "[ERROR]" in captured.err
        assert RED in captured.err


class TestVerbosity:
    """log_debug is silent unless verbose mode is on."""

    def test_debug_silent_by_default(self, capsys):
        from glft.utils.logging import log_debug

        log_debug("hidden")
        assert capsys.readouterr().err == ""

    def test_debug_when_verbose(self, capsys):
        from glft.utils.logging import log_debug, set_verbose, CYAN

        set_verbose(True)
        log_debug("seed=7")
        captured = capsys.readouterr()
        assert "[DEBUG]" in captured.err
        assert "seed=7" in captured.err
        assert CYAN in captured.err
