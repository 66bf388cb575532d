import json
import sys

import pytest
from loguru import logger

from stableplace.core.constants import TOOL_VERSION
from stableplace.core.logging import bind_run, setup_logging


@pytest.fixture
def restore_logging():
    yield
    logger.remove()
    logger.configure(extra={})
    logger.add(sys.stderr, level="WARNING")


def test_json_records_carry_run_context(restore_logging, capsys):
    setup_logging("INFO")
    bind_run(3, "ab" * 32)
    logger.bind(error_code="NO_PLANE_FOUND").info("placed")

    lines = capsys.readouterr().err.strip().splitlines()
    record = json.loads(lines[-1])["record"]
    assert record["message"] == "placed"
    assert record["extra"]["seed"] == 3
    assert record["extra"]["config_hash"] == "ab" * 32
    assert record["extra"]["version"] == TOOL_VERSION
    assert record["extra"]["error_code"] == "NO_PLANE_FOUND"


def test_level_filters_records(restore_logging, capsys):
    setup_logging("warning")
    logger.info("quiet")
    logger.warning("loud")
    err = capsys.readouterr().err
    assert "quiet" not in err
    assert "loud" in err


def test_text_mode_and_log_file(restore_logging, capsys, tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    setup_logging("INFO", str(log_file), json_lines=False)
    logger.info("annotated")
    logger.remove()

    assert not capsys.readouterr().err.lstrip().startswith("{")
    assert "annotated" in log_file.read_text(encoding="utf-8")
