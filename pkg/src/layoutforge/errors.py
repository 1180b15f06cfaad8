"""Exception hierarchy shared by every layoutforge layer.

Error classes double as protocol error codes: ``exc.code`` is the class
name and is what sessions echo back to clients.
"""
from __future__ import annotations


class LayoutForgeError(Exception):
    """Base class for all engine, serialization, solver, and protocol errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class InvalidGeometry(LayoutForgeError):
    """Plane or environment geometry violates an invariant."""


class UnknownObject(LayoutForgeError):
    """Referenced object id is not a live key of the scene."""


class NoCompatiblePlane(LayoutForgeError):
    """No plane of the required orientation lies within snap distance."""


class ScaleOutOfRange(LayoutForgeError):
    """Requested scale factor is outside the supported slider range."""


class NonCanonicalInput(LayoutForgeError):
    """Statement list handed to the exporter is unsorted or not canonical."""


class SelfReference(LayoutForgeError):
    """A pairwise statement names the same object on both sides."""


class MalformedHeader(LayoutForgeError):
    """CSV header line does not match the constraint schema."""


class MalformedRow(LayoutForgeError):
    """CSV row has wrong arity, an unknown tag, or a non-canonical pair."""


class DuplicateStatement(LayoutForgeError):
    """The same statement appears more than once in an imported file."""


class ContradictoryStatements(LayoutForgeError):
    """Statement set is unsatisfiable on logical grounds alone."""


class UnplacedObject(LayoutForgeError):
    """A layout candidate omits an object mentioned by the statements."""


class SearchSpaceTooLarge(LayoutForgeError):
    """Brute-force enumeration would exceed its assignment guard."""


class ProtocolError(LayoutForgeError):
    """Malformed or out-of-contract session command."""


class ScriptError(LayoutForgeError):
    """Command script failure, annotated with its 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
