from enum import Enum


class DomainKind(str, Enum):
    WHOLE = "WHOLE"
    SUBSPACE = "SUBSPACE"
    COSET = "COSET"


class ForbiddenKind(str, Enum):
    CYCLE = "CYCLE"
    D22 = "D22"
    DIAMOND = "DIAMOND"


class ClassFamily(str, Enum):
    A1 = "A1"
    D_TYPE = "D_TYPE"
    TREE_A = "TREE_A"
    TREE_B = "TREE_B"
    TREE_C = "TREE_C"


class OrbitKind(str, Enum):
    FIXED = "FIXED"
    MOVING = "MOVING"


class CosetBranch(str, Enum):
    FIXED_POINT_TRANSLATION = "FIXED_POINT_TRANSLATION"
    TWO_ORBITS = "TWO_ORBITS"
    EXTENDED_REDUCTION = "EXTENDED_REDUCTION"


class VerifyLevel(str, Enum):
    QUICK = "quick"
    FULL = "full"


class V000Method(str, Enum):
    BRUTE = "brute"
    SUBGRAPHS = "subgraphs"
