"""layoutforge: spatial constraint inference, CSV interchange, and layout solving."""

from .errors import (
    ContradictoryStatements,
    DuplicateStatement,
    InvalidGeometry,
    LayoutForgeError,
    MalformedHeader,
    MalformedRow,
    NoCompatiblePlane,
    NonCanonicalInput,
    ProtocolError,
    ScaleOutOfRange,
    ScriptError,
    SearchSpaceTooLarge,
    SelfReference,
    UnknownObject,
    UnplacedObject,
)
from .geometry import ObjectCategory, ObjectKind, Plane, PlaneOrientation, Vec3
from .inference import (
    DEFAULT_TOLERANCES,
    PlacementResolution,
    Tolerances,
    add_object,
    generate_constraints,
    move_object,
    remove_object,
    resolve_placement,
    scale_object,
)
from .scene import ConstraintRecord, Scene, SceneObject, new_scene, validate_scene
from .scripts import run_script
from .session import Session, SessionManager
from .solver import (
    Environment,
    LayoutCandidate,
    SolveReport,
    brute_force_enumerate,
    load_environment,
    mentioned_objects,
    parse_environment,
    solve,
    verify,
)
from .statements import ConstraintStatement, ConstraintType, canonicalize, export_csv, import_csv

__version__ = "0.1.0"

__all__ = [
    "ConstraintRecord",
    "ConstraintStatement",
    "ConstraintType",
    "ContradictoryStatements",
    "DEFAULT_TOLERANCES",
    "DuplicateStatement",
    "Environment",
    "InvalidGeometry",
    "LayoutCandidate",
    "LayoutForgeError",
    "MalformedHeader",
    "MalformedRow",
    "NoCompatiblePlane",
    "NonCanonicalInput",
    "ObjectCategory",
    "ObjectKind",
    "Plane",
    "PlaneOrientation",
    "PlacementResolution",
    "ProtocolError",
    "ScaleOutOfRange",
    "Scene",
    "SceneObject",
    "Session",
    "SessionManager",
    "ScriptError",
    "SearchSpaceTooLarge",
    "SelfReference",
    "SolveReport",
    "Tolerances",
    "UnknownObject",
    "UnplacedObject",
    "Vec3",
    "add_object",
    "brute_force_enumerate",
    "canonicalize",
    "export_csv",
    "generate_constraints",
    "import_csv",
    "load_environment",
    "mentioned_objects",
    "move_object",
    "new_scene",
    "parse_environment",
    "remove_object",
    "resolve_placement",
    "run_script",
    "scale_object",
    "solve",
    "validate_scene",
    "verify",
]
