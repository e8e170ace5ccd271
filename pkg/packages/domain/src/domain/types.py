from enum import IntEnum
from typing import Literal, TypeGuard, get_args

Side = Literal["lambda", "rho"]
Cluster = Literal["plus", "minus"]
LimitLaw = Literal["X", "N"]
Engine = Literal["direct", "interface"]
OutputFormat = Literal["csv", "json"]
Kernel = Literal["gue", "goe"]

SIDES = set(get_args(Side))
ENGINES = set(get_args(Engine))

# TASEP species marks; a jump x -> x+1 happens iff occ[x] > occ[x+1]
HOLE = 0
SECOND_CLASS = 1
FIRST_CLASS = 2


class Stream(IntEnum):
    """Independent random streams sharing one master seed."""

    BULK = 0
    BOUNDARY_P = 1
    BOUNDARY_Q = 2
    CLOCKS = 3


def is_side(value: str) -> TypeGuard[Side]:
    """Check if a string names a side of the shock."""
    return value in SIDES


def is_engine(value: str) -> TypeGuard[Engine]:
    """Check if a string names a simulation engine."""
    return value in ENGINES


def parse_stream(value: str) -> Stream:
    """Parse a stream given by name ("bulk", "boundary-p", ...) or by integer tag."""
    key = value.strip().upper().replace("-", "_")
    if key in Stream.__members__:
        return Stream[key]
    try:
        return Stream(int(value))
    except ValueError as e:
        raise ValueError(f"Unknown stream: {value}") from e
