"""Built-in grid diagrams used by the fixtures and the test suite.

Columns are 1-based, listed row by row from the top.
"""

from __future__ import annotations

from .grid import GridDiagram, disjoint_union

_GRIDS: dict[str, tuple[list[int], list[int]]] = {
    "unknot2": ([1, 2], [2, 1]),
    # two stabilizations of unknot2
    "unknot3": ([1, 2, 3], [2, 3, 1]),
    "unknot4": ([1, 2, 3, 4], [2, 4, 1, 3]),
    "hopf": ([1, 2, 3, 4], [3, 4, 1, 2]),
    "trefoil": ([1, 5, 4, 3, 2], [4, 3, 2, 1, 5]),
    # found by random search over 6x6 knot grids
    "figure8": ([4, 3, 1, 2, 5, 6], [2, 5, 4, 6, 1, 3]),
}


def get(name: str) -> GridDiagram:
    if name == "unknot+unknot":
        return disjoint_union(get("unknot2"), get("unknot2"))
    if name == "hopf+unknot":
        return disjoint_union(get("hopf"), get("unknot2"))
    try:
        xs, os = _GRIDS[name]
    except KeyError:
        raise KeyError(f"no corpus grid named {name!r}; known: {', '.join(NAMES)}") from None
    return GridDiagram.from_one_based(xs, os)


# the order used by reports
NAMES = (
    "unknot2",
    "unknot4",
    "hopf",
    "trefoil",
    "figure8",
    "unknot+unknot",
    "hopf+unknot",
)
EXTRA_NAMES = ("unknot3",)


def corpus(names=NAMES) -> dict[str, GridDiagram]:
    return {name: get(name) for name in names}


def is_split(name: str) -> bool:
    return "+" in name
