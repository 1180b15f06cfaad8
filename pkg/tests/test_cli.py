"""The layoutforge executable: run, solve, serve."""
import json
import sys
import types

import pytest
from click.testing import CliRunner

from layoutforge.cli import DEFAULT_PORT, main

ROOM_ENV = "plane w1 vertical 0 0 0 1 0 0 2 2\ngrid 1.0\n"


@pytest.fixture
def runner():
    return CliRunner()


class TestRun:
    def test_runs_a_script_to_completion(self, runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "scene.txt").write_text(
            "add_plane vertical 0 0 0 1 0 0 8 3\nadd_object clock 2 2 0.1\nexport\n"
        )
        result = runner.invoke(main, ["run", "scene.txt"])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "constraints.csv").read_bytes() == (
            b"constraint_type,subject,target\nattach_vertical,c1,\n"
        )

    def test_failing_line_reports_and_exits_nonzero(self, runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "bad.txt").write_text("scale c9 5.0\n")
        result = runner.invoke(main, ["run", "bad.txt"])
        assert result.exit_code == 1
        assert "line 1" in result.output
        assert "ScaleOutOfRange" in result.output

    def test_missing_script_is_a_usage_error(self, runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        result = runner.invoke(main, ["run", "absent.txt"])
        assert result.exit_code == 2


class TestSolve:
    def test_writes_report_and_summary(self, runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "room.env").write_text(ROOM_ENV)
        (tmp_path / "constraints.csv").write_bytes(
            b"constraint_type,subject,target\nattach_vertical,c1,\n"
        )
        result = runner.invoke(
            main,
            ["solve", "--constraints", "constraints.csv", "--env", "room.env", "--out", "report.json"],
        )
        assert result.exit_code == 0, result.output
        assert "9 candidate layout(s) (exhausted)" in result.output
        report = json.loads((tmp_path / "report.json").read_text())
        assert len(report["candidates"]) == 9

    def test_cap_flag_truncates(self, runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "room.env").write_text(ROOM_ENV)
        (tmp_path / "constraints.csv").write_bytes(
            b"constraint_type,subject,target\nattach_vertical,c1,\n"
        )
        result = runner.invoke(
            main, ["solve", "--constraints", "constraints.csv", "--env", "room.env", "--cap", "3"]
        )
        assert result.exit_code == 0
        assert "3 candidate layout(s) (capped)" in result.output

    def test_malformed_csv_fails_with_its_code(self, runner, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "room.env").write_text(ROOM_ENV)
        (tmp_path / "constraints.csv").write_bytes(b"wrong,header,here\n")
        result = runner.invoke(
            main, ["solve", "--constraints", "constraints.csv", "--env", "room.env"]
        )
        assert result.exit_code == 1
        assert "MalformedHeader" in result.output


class TestServe:
    @pytest.fixture
    def uvicorn_stub(self, monkeypatch):
        calls = {}

        def fake_run(app, host, port):
            calls["host"], calls["port"] = host, port

        monkeypatch.setitem(sys.modules, "uvicorn", types.SimpleNamespace(run=fake_run))
        return calls

    def test_default_port(self, runner, uvicorn_stub):
        result = runner.invoke(main, ["serve"])
        assert result.exit_code == 0
        assert uvicorn_stub["port"] == DEFAULT_PORT
        assert uvicorn_stub["host"] == "127.0.0.1"

    def test_port_flag(self, runner, uvicorn_stub):
        runner.invoke(main, ["serve", "--port", "9001"])
        assert uvicorn_stub["port"] == 9001

    def test_port_env_var(self, runner, uvicorn_stub):
        runner.invoke(main, ["serve"], env={"LAYOUTFORGE_PORT": "9002"})
        assert uvicorn_stub["port"] == 9002

    def test_flag_beats_env_var(self, runner, uvicorn_stub):
        runner.invoke(main, ["serve", "--port", "9003"], env={"LAYOUTFORGE_PORT": "9002"})
        assert uvicorn_stub["port"] == 9003


def test_version_flag(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "layoutforge" in result.output
