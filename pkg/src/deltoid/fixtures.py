"""Named fixture catalog: the small delta-matroids, graphs, and matroids the
verification suites and the documentation keep referring to."""

from __future__ import annotations

from .deltamatroid import (
    DeltaMatroid,
    Matroid,
    enumerate_deltamatroids,
    from_bases,
    from_independents,
    graphic_matroid,
    uniform_matroid,
)
from .envelope import duchamp_family
from .errors import InvalidArgumentError
from .represent import Graph, circ_uniform


def dplus() -> DeltaMatroid:
    return DeltaMatroid.from_feasible_sets(1, [(1,)])


def dminus() -> DeltaMatroid:
    return DeltaMatroid.from_feasible_sets(1, [(-1,)])


def dplusminus() -> DeltaMatroid:
    return DeltaMatroid.from_feasible_sets(1, [(1,), (-1,)])


def circle() -> DeltaMatroid:
    return DeltaMatroid.from_feasible_sets(2, [(1, 2), (-1, -2)])


_GRAPHS = {
    "single_edge": (2, [(1, 2)]),
    "edgeless2": (2, []),
    "path3": (3, [(1, 2), (2, 3)]),
    "triangle": (3, [(1, 2), (2, 3), (1, 3)]),
    "path4": (4, [(1, 2), (2, 3), (3, 4)]),
    "cycle4": (4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
}

_MATROIDS = {
    "u_1_2": (1, 2),
    "u_1_3": (1, 3),
    "u_2_3": (2, 3),
    "u_2_4": (2, 4),
}


def catalog() -> dict[str, str]:
    """Names and one-line descriptions of every available fixture."""
    out = {
        "dplus": "single feasible set {1}",
        "dminus": "single feasible set {1-bar}",
        "dplusminus": "both feasible sets on one element",
        "circle": "even two-element delta-matroid {12, 1-bar 2-bar}",
        "duchamp": "the 9-set family with no enveloping matroid",
        "u_circ_R_N": "parity-filtered independence family (substitute R, N)",
        "graph_NAME": "adjacency input; names: " + ", ".join(sorted(_GRAPHS)),
        "matroid_u_R_K": "uniform matroid (substitute R, K)",
        "graphic_triangle": "graphic matroid of the 3-cycle",
        "all_n1": "every delta-matroid on one element",
        "all_n2": "every delta-matroid on two elements",
    }
    return out


def get_deltamatroid(name: str) -> DeltaMatroid:
    simple = {
        "dplus": dplus,
        "dminus": dminus,
        "dplusminus": dplusminus,
        "circle": circle,
        "duchamp": duchamp_family,
    }
    if name in simple:
        return simple[name]()
    if name.startswith("u_circ_"):
        parts = name.split("_")
        if len(parts) == 4:
            return circ_uniform(int(parts[2]), int(parts[3]))
    if name.startswith("ip_u_") or name.startswith("p_u_"):
        parts = name.split("_")
        r, k = int(parts[-2]), int(parts[-1])
        m = uniform_matroid(r, k)
        return from_independents(m) if name.startswith("ip") else from_bases(m)
    raise InvalidArgumentError(f"unknown delta-matroid fixture {name!r}")


def get_graph(name: str) -> Graph:
    key = name.removeprefix("graph_")
    if key in _GRAPHS:
        n, pairs = _GRAPHS[key]
        return Graph.from_pairs(n, pairs)
    raise InvalidArgumentError(f"unknown graph fixture {name!r}")


def get_matroid(name: str) -> Matroid:
    key = name.removeprefix("matroid_")
    if key in _MATROIDS:
        return uniform_matroid(*_MATROIDS[key])
    if key == "graphic_triangle":
        return graphic_matroid(3, [(1, 2), (2, 3), (1, 3)])
    raise InvalidArgumentError(f"unknown matroid fixture {name!r}")


def get_family(name: str) -> list[DeltaMatroid]:
    if name == "all_n1":
        return enumerate_deltamatroids(1)
    if name == "all_n2":
        return enumerate_deltamatroids(2)
    raise InvalidArgumentError(f"unknown family fixture {name!r}")
