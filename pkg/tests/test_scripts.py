"""
Тесты скрипта запуска проверки
"""
import importlib.util
import subprocess
from pathlib import Path

import pytest

SCRIPT = Path(__file__).parent.parent / "scripts" / "run_verification.py"


@pytest.fixture
def script():
    spec = importlib.util.spec_from_file_location("run_verification", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.mark.parametrize("returncode", [0, 1])
def test_passes_exit_code_through(script, monkeypatch, capsys, returncode):
    calls = []

    def fake_run(cmd, check):
        calls.append(cmd)
        return subprocess.CompletedProcess(cmd, returncode)

    monkeypatch.setattr(script.subprocess, "run", fake_run)
    assert script.run_verification(["--format", "csv"]) == returncode
    assert calls[0][1].endswith("main.py")
    assert calls[0][2:] == ["verify", "--format", "csv"]
    out = capsys.readouterr().out
    assert ("✅" in out) == (returncode == 0)


def test_interrupt_returns_130(script, monkeypatch):
    def interrupted(cmd, check):
        raise KeyboardInterrupt

    monkeypatch.setattr(script.subprocess, "run", interrupted)
    assert script.run_verification() == 130
