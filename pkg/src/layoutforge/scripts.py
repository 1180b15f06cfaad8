"""Line-oriented command scripts: the batch face of the session protocol.

One command per line, ``#`` starts a comment, blank lines are skipped::

    add_plane <vertical|horizontal> <ox> <oy> <oz> <ux> <uy> <uz> <extent_u> <extent_v>
    add_object <clock|window|desk_chair> <x> <y> <z>
    move <id> <x> <y> <z>
    scale <id> <factor>
    remove <id>
    generate
    export [path]                      # default constraints.csv
    solve <envfile> [cap] [path]       # default report path solve_report.json
    snapshot

Every line is translated into the same Command objects the service
applies, so a script and the equivalent live session produce identical
output.  The first failing line aborts the run with its line number.
"""
from __future__ import annotations

import json
from pathlib import Path

from .errors import ScriptError
from .protocol import (
    AddObjectCommand,
    AddPlaneCommand,
    Command,
    ExportCommand,
    Feedback,
    GenerateCommand,
    MoveObjectCommand,
    RemoveObjectCommand,
    ScaleObjectCommand,
    SnapshotSceneCommand,
    SolveCommand,
)
from .session import Session
from .solver import DEFAULT_CANDIDATE_CAP

DEFAULT_EXPORT_NAME = "constraints.csv"
DEFAULT_REPORT_NAME = "solve_report.json"


def _number(token: str, line_no: int, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ScriptError(line_no, f"{what} must be a number, got {token!r}") from None


def _arity(fields: list[str], line_no: int, minimum: int, maximum: int | None = None) -> None:
    maximum = minimum if maximum is None else maximum
    count = len(fields) - 1
    if not (minimum <= count <= maximum):
        wanted = str(minimum) if minimum == maximum else f"{minimum}..{maximum}"
        raise ScriptError(line_no, f"{fields[0]} takes {wanted} arguments, got {count}")


def parse_script_line(line: str, line_no: int) -> tuple[Command, str | None] | None:
    """One script line to (Command, output path); None for blanks/comments.

    The output path is only meaningful for export and solve lines; other
    commands never write files.
    """
    stripped = line.split("#", 1)[0].strip()
    if not stripped:
        return None
    fields = stripped.split()
    keyword = fields[0]
    request_id = f"line-{line_no}"

    if keyword == "add_plane":
        _arity(fields, line_no, 9)
        if fields[1] not in ("vertical", "horizontal"):
            raise ScriptError(line_no, f"orientation must be vertical or horizontal, got {fields[1]!r}")
        numbers = [_number(token, line_no, "add_plane argument") for token in fields[2:]]
        return (
            AddPlaneCommand(
                request_id=request_id,
                orientation=fields[1],
                origin=(numbers[0], numbers[1], numbers[2]),
                u_axis=(numbers[3], numbers[4], numbers[5]),
                extent_u=numbers[6],
                extent_v=numbers[7],
            ),
            None,
        )
    if keyword == "add_object":
        _arity(fields, line_no, 4)
        if fields[1] not in ("clock", "window", "desk_chair"):
            raise ScriptError(line_no, f"unknown object kind {fields[1]!r}")
        x, y, z = (_number(token, line_no, "coordinate") for token in fields[2:])
        return AddObjectCommand(request_id=request_id, kind=fields[1], position=(x, y, z)), None
    if keyword == "move":
        _arity(fields, line_no, 4)
        x, y, z = (_number(token, line_no, "coordinate") for token in fields[2:])
        return MoveObjectCommand(request_id=request_id, id=fields[1], position=(x, y, z)), None
    if keyword == "scale":
        _arity(fields, line_no, 2)
        factor = _number(fields[2], line_no, "scale factor")
        return ScaleObjectCommand(request_id=request_id, id=fields[1], factor=factor), None
    if keyword == "remove":
        _arity(fields, line_no, 1)
        return RemoveObjectCommand(request_id=request_id, id=fields[1]), None
    if keyword == "generate":
        _arity(fields, line_no, 0)
        return GenerateCommand(request_id=request_id), None
    if keyword == "export":
        _arity(fields, line_no, 0, 1)
        path = fields[1] if len(fields) > 1 else DEFAULT_EXPORT_NAME
        return ExportCommand(request_id=request_id), path
    if keyword == "solve":
        _arity(fields, line_no, 1, 3)
        cap: int | None = DEFAULT_CANDIDATE_CAP
        if len(fields) > 2:
            try:
                cap = int(fields[2])
            except ValueError:
                raise ScriptError(line_no, f"candidate cap must be an integer, got {fields[2]!r}") from None
        path = fields[3] if len(fields) > 3 else DEFAULT_REPORT_NAME
        return SolveCommand(request_id=request_id, environment_ref=fields[1], cap=cap), path
    if keyword == "snapshot":
        _arity(fields, line_no, 0)
        return SnapshotSceneCommand(request_id=request_id), None
    raise ScriptError(line_no, f"unknown command {keyword!r}")


def run_script(script_path: str | Path, base_dir: str | Path | None = None) -> Session:
    """Execute a script in a fresh session; returns it for inspection.

    Relative file references (export targets, solve reports, environment
    files) resolve against ``base_dir``, defaulting to the working
    directory.  Raises ScriptError at the first failing line.
    """
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    try:
        text = Path(script_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScriptError(0, f"cannot read script: {exc}") from None

    session = Session("script")
    for line_no, line in enumerate(text.splitlines(), start=1):
        parsed = parse_script_line(line, line_no)
        if parsed is None:
            continue
        command, out_path = parsed
        if isinstance(command, SolveCommand):
            command = command.model_copy(update={"environment_ref": str(base / command.environment_ref)})
        feedback = session.apply(command)
        if feedback.outcome == "error":
            assert feedback.error is not None
            raise ScriptError(line_no, f"{feedback.error.code}: {feedback.error.message}")
        _write_outputs(feedback, command, out_path, base)
    return session


def _write_outputs(feedback: Feedback, command: Command, out_path: str | None, base: Path) -> None:
    payload = feedback.payload
    if payload is None:
        return
    if isinstance(command, ExportCommand):
        assert payload.csv is not None and out_path is not None
        (base / out_path).write_bytes(payload.csv.encode("utf-8"))
    elif isinstance(command, SolveCommand):
        assert payload.report is not None and out_path is not None
        (base / out_path).write_text(payload.report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    elif isinstance(command, SnapshotSceneCommand):
        assert payload.scene is not None
        print(payload.scene.model_dump_json(indent=2))
