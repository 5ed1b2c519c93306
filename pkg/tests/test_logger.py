"""Tests for loguru logger configuration."""

import io
import os
import tempfile
from unittest.mock import patch

import pytest

from whittaker_zeta.config import settings
from whittaker_zeta.logger import FILE_FORMAT, logger, run_context, setup_logger


class TestLogger:
    """Test logger configuration."""

    def test_console_goes_to_stderr(self):
        """Test that log messages never reach standard output."""
        out, err = io.StringIO(), io.StringIO()
        try:
            with patch("sys.stdout", out), patch("sys.stderr", err):
                setup_logger()
                logger.info("contour placed")
        finally:
            setup_logger()

        assert out.getvalue() == ""
        assert "contour placed" in err.getvalue()

    def test_file_format_carries_command(self):
        """Test that run-log lines name the CLI subcommand."""
        assert "{extra[command]}" in FILE_FORMAT
        assert "{message}" in FILE_FORMAT

    def test_console_format(self):
        """Test that the console uses the configured format."""
        assert "{time:" in settings.log_format
        assert "{level:" in settings.log_format
        assert "{message}" in settings.log_format

    def test_log_file_configuration(self):
        """Test log file configuration."""
        assert settings.log_file is not None
        assert "logs/whittaker_zeta.log" in settings.log_file

    def test_run_context_restores_default(self):
        """Test that the subcommand tag is dropped when the run ends."""
        seen = []
        handler = logger.add(lambda m: seen.append(m.record["extra"]["command"]))
        try:
            with run_context("gamma"):
                logger.info("inside")
            logger.info("after")
        finally:
            logger.remove(handler)

        assert seen[-2:] == ["gamma", "library"]


class TestLoggerFileOutput:
    """Test logger file output functionality."""

    @pytest.fixture
    def temp_log_file(self):
        """Create a temporary log file for testing."""
        with tempfile.NamedTemporaryFile(mode="w", suffix=".log", delete=False) as f:
            temp_log_path = f.name

        try:
            yield temp_log_path
        finally:
            if os.path.exists(temp_log_path):
                os.unlink(temp_log_path)

    def test_logger_file_output(self, temp_log_file):
        """Test that logger can write to file."""
        original_log_file = settings.log_file
        settings.log_file = temp_log_file

        try:
            setup_logger()

            test_message = "Test log message for file output"
            logger.info(test_message)

            with open(temp_log_file, "r") as f:
                log_content = f.read()

            assert test_message in log_content

        finally:
            settings.log_file = original_log_file
            setup_logger()

    def test_numerical_errors_are_logged(self, temp_log_file):
        """Test that a pole in a Gamma factor is logged at ERROR before raising."""
        from whittaker_zeta.errors import PoleError
        from whittaker_zeta.gammakernel import gamma_c

        original_log_file = settings.log_file
        settings.log_file = temp_log_file

        try:
            setup_logger()
            with pytest.raises(PoleError):
                gamma_c(0)

            with open(temp_log_file, "r") as f:
                log_content = f.read()

            assert "ERROR" in log_content
            assert "pole" in log_content

        finally:
            settings.log_file = original_log_file
            setup_logger()

    def test_run_context_tags_messages(self, temp_log_file):
        """Test that messages inside a run carry the subcommand name."""
        original_log_file = settings.log_file
        settings.log_file = temp_log_file

        try:
            setup_logger()
            logger.info("outside any run")
            with run_context("zeta-verify"):
                logger.info("inside a run")

            with open(temp_log_file, "r") as f:
                lines = f.read().splitlines()

            assert any("| library |" in x and "outside any run" in x for x in lines)
            assert any("| zeta-verify |" in x and "inside a run" in x for x in lines)

        finally:
            settings.log_file = original_log_file
            setup_logger()

    def test_file_sink_records_debug(self, temp_log_file):
        """Test that the run log keeps DEBUG messages whatever LOG_LEVEL says."""
        original_log_file = settings.log_file
        settings.log_file = temp_log_file

        try:
            setup_logger()
            logger.debug("contour doubled")

            with open(temp_log_file, "r") as f:
                assert "contour doubled" in f.read()

        finally:
            settings.log_file = original_log_file
            setup_logger()
