"""Reconfiguration of pivoting hexagonal modules on the triangular-lattice grid."""

from .configuration import Configuration, canonical_path, is_canonical_path, normalize
from .hexgrid import Cell, Direction
from .move_model import HexMonkey, HexRestricted, ModelId, Move, MovePlan, legal_moves, verify_plan
from .planner import plan_to_canonical, reconfigure

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "Configuration",
    "Direction",
    "HexMonkey",
    "HexRestricted",
    "ModelId",
    "Move",
    "MovePlan",
    "canonical_path",
    "is_canonical_path",
    "legal_moves",
    "normalize",
    "plan_to_canonical",
    "reconfigure",
    "verify_plan",
]
