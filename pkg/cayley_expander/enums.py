"""
Enums
=====
"""
from enum import Enum, IntEnum


class ExpanderEnum(str, Enum):
    """String enum with helpers used for CLI choices"""

    @classmethod
    def values(cls):
        """Returns list of enum string values e.g. [ 'exact', 'iterative', ... ]"""
        return [member.value for member in cls.__members__.values()]


class GeneratorSlot(IntEnum):
    """Canonical slot order of the generating set. BFS expansion follows this order."""

    S1 = 0
    S2 = 1
    S1_INV = 2
    S2_INV = 3

    @property
    def inverse(self) -> "GeneratorSlot":
        return GeneratorSlot((self.value + 2) % 4)

    @property
    def label(self) -> str:
        return ("s1", "s2", "s1^-1", "s2^-1")[self.value]


class GraphFormat(ExpanderEnum):
    EDGELIST = "edgelist"
    JSON = "json"


class EigenMode(ExpanderEnum):
    AUTO = "auto"
    EXACT = "exact"
    ITERATIVE = "iterative"
    POWER = "power"


class LayerTag(ExpanderEnum):
    INPUT_GRAPH = "input_graph"
    CAYLEY_GRAPH = "cayley_graph"


class ScheduleKind(ExpanderEnum):
    ALTERNATING = "alternating"
    INPUT_ONLY = "input_only"
    TAIL = "tail"


class SyntheticGraph(ExpanderEnum):
    BARBELL = "barbell"
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    TREE = "tree"


class ExitCode(IntEnum):
    SUCCESS = 0
    USAGE = 1
    IO = 2
    CONSISTENCY = 3
