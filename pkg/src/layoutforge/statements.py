"""Canonical constraint statements and their CSV interchange format.

A statement is a flattened, deduplicated constraint fact: a type tag, a
subject object id, and (for pairwise tags) a target object id.  Canonical
form fixes one representative per fact: pairwise statements put the
lexicographically smaller id first, and lists are sorted by
(tag order, subject, target) with no duplicates.

The CSV schema is fixed bit-exactly: UTF-8, LF line endings, header
``constraint_type,subject,target``, one row per statement, and an empty
third field for the unary attach tags.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DuplicateStatement,
    MalformedHeader,
    MalformedRow,
    NonCanonicalInput,
    SelfReference,
)

CSV_HEADER = "constraint_type,subject,target"

_ID_PATTERN = re.compile(r"[a-z0-9_]+\Z")


class ConstraintType(Enum):
    """The seven constraint tags, in canonical output order."""

    ATTACH_VERTICAL = "attach_vertical"
    ATTACH_HORIZONTAL = "attach_horizontal"
    SAME_VERTICAL_PLANE = "same_vertical_plane"
    SAME_HORIZONTAL_PLANE = "same_horizontal_plane"
    ALIGN_X = "align_x"
    ALIGN_Y = "align_y"
    ALIGN_Z = "align_z"

    @property
    def is_symmetric(self) -> bool:
        """Pairwise tags take a target; the two attach tags do not."""
        return self not in (ConstraintType.ATTACH_VERTICAL, ConstraintType.ATTACH_HORIZONTAL)


_TYPE_ORDER = {tag: index for index, tag in enumerate(ConstraintType)}


@dataclass(frozen=True)
class ConstraintStatement:
    type_tag: ConstraintType
    subject: str
    target: str | None = None

    def __post_init__(self) -> None:
        if self.type_tag.is_symmetric:
            if self.target is None:
                raise ValueError(f"{self.type_tag.value} requires a target")
            if self.target == self.subject:
                raise SelfReference(f"{self.type_tag.value}({self.subject}, {self.target})")
        elif self.target is not None:
            raise ValueError(f"{self.type_tag.value} takes no target")

    @property
    def is_canonical_pair(self) -> bool:
        return self.target is None or self.subject < self.target

    def sort_key(self) -> tuple[int, str, str]:
        return (_TYPE_ORDER[self.type_tag], self.subject, self.target or "")


def attach(orientation_tag: ConstraintType, subject: str) -> ConstraintStatement:
    return ConstraintStatement(orientation_tag, subject)


def pair(type_tag: ConstraintType, a: str, b: str) -> ConstraintStatement:
    """Pairwise statement in canonical order regardless of argument order."""
    if a == b:
        raise SelfReference(f"{type_tag.value}({a}, {b})")
    if b < a:
        a, b = b, a
    return ConstraintStatement(type_tag, a, b)


def canonicalize(statements: list[ConstraintStatement]) -> list[ConstraintStatement]:
    """Reorder pairs, collapse duplicates, and sort; idempotent."""
    seen: set[ConstraintStatement] = set()
    out: list[ConstraintStatement] = []
    for statement in statements:
        if not statement.is_canonical_pair:
            statement = ConstraintStatement(statement.type_tag, statement.target, statement.subject)  # type: ignore[arg-type]
        if statement not in seen:
            seen.add(statement)
            out.append(statement)
    out.sort(key=ConstraintStatement.sort_key)
    return out


def export_csv(statements: list[ConstraintStatement]) -> bytes:
    """Serialize a canonical, sorted statement list; rejects anything else."""
    lines = [CSV_HEADER]
    previous_key: tuple[int, str, str] | None = None
    for statement in statements:
        if not statement.is_canonical_pair:
            raise NonCanonicalInput(
                f"{statement.type_tag.value}({statement.subject}, {statement.target}) is not in canonical order"
            )
        key = statement.sort_key()
        if previous_key is not None and key <= previous_key:
            raise NonCanonicalInput("statement list is not strictly sorted")
        previous_key = key
        lines.append(f"{statement.type_tag.value},{statement.subject},{statement.target or ''}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_row(line_no: int, row: str) -> ConstraintStatement:
    fields = row.split(",")
    if len(fields) != 3:
        raise MalformedRow(f"row {line_no}: expected 3 fields, got {len(fields)}")
    tag_text, subject, target = fields
    try:
        tag = ConstraintType(tag_text)
    except ValueError:
        raise MalformedRow(f"row {line_no}: unknown constraint type {tag_text!r}") from None
    if not _ID_PATTERN.match(subject):
        raise MalformedRow(f"row {line_no}: bad subject id {subject!r}")
    if tag.is_symmetric:
        if not target:
            raise MalformedRow(f"row {line_no}: {tag.value} requires a target")
        if not _ID_PATTERN.match(target):
            raise MalformedRow(f"row {line_no}: bad target id {target!r}")
        if not subject < target:
            raise MalformedRow(f"row {line_no}: pair ({subject}, {target}) is not canonical")
        return ConstraintStatement(tag, subject, target)
    if target:
        raise MalformedRow(f"row {line_no}: {tag.value} takes no target")
    return ConstraintStatement(tag, subject)


def import_csv(data: bytes) -> list[ConstraintStatement]:
    """Parse exported CSV back into statements; inverse of export_csv on its image.

    CRLF input is tolerated (never emitted); rows keep file order.
    """
    text = data.decode("utf-8").replace("\r\n", "\n")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != CSV_HEADER:
        found = lines[0] if lines else "<empty file>"
        raise MalformedHeader(f"expected header {CSV_HEADER!r}, found {found!r}")

    statements: list[ConstraintStatement] = []
    seen: set[ConstraintStatement] = set()
    for line_no, row in enumerate(lines[1:], start=2):
        statement = _parse_row(line_no, row)
        if statement in seen:
            raise DuplicateStatement(f"row {line_no}: duplicate statement {row!r}")
        seen.add(statement)
        statements.append(statement)
    return statements
