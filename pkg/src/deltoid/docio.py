"""Versioned JSON document formats for every object the CLI exchanges.

Admissible sets serialize as sorted arrays of signed integers (negative k
means k-bar); rationals serialize as "p/q" strings; every document carries
a "format": 1 field.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import AdmissibleSet
from .deltamatroid import DeltaMatroid, Matroid
from .errors import InvalidArgumentError
from .polyhedra import BnPolytope, DeltaDecomposition
from .polyring import MPoly
from .represent import FqMatrix, Graph
from .schubert import IndicatorCombination, IndicatorTerm

FORMAT = 1


def _check_format(doc, kind):
    if not isinstance(doc, dict):
        raise InvalidArgumentError(f"{kind} document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise InvalidArgumentError(
            f"{kind} document must carry \"format\": {FORMAT}"
        )


def fraction_to_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fraction_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s)


# -- delta-matroids -----------------------------------------------------------


def deltamatroid_to_doc(d: DeltaMatroid) -> dict:
    return {
        "format": FORMAT,
        "n": d.n,
        "feasible": [list(s.letters()) for s in d.feasible_sets()],
    }


def deltamatroid_from_doc(doc) -> DeltaMatroid:
    _check_format(doc, "delta-matroid")
    return DeltaMatroid.from_feasible_sets(int(doc["n"]), doc["feasible"])


# -- matroids -------------------------------------------------------------------


def matroid_to_doc(m: Matroid) -> dict:
    return {
        "format": FORMAT,
        "ground": list(m.ground),
        "bases": sorted(sorted(b, key=repr) for b in m.bases),
    }


def matroid_from_doc(doc) -> Matroid:
    _check_format(doc, "matroid")
    ground = tuple(doc["ground"])
    return Matroid(ground, frozenset(frozenset(b) for b in doc["bases"]))


# -- polytopes --------------------------------------------------------------------


def polytope_to_doc(p: BnPolytope) -> dict:
    from .core import nonempty_ads

    return {
        "format": FORMAT,
        "n": p.n,
        "support": [
            {"ray": list(s.letters()), "value": fraction_to_str(v)}
            for s, v in zip(nonempty_ads(p.n), p.h)
            if v != 0
        ],
    }


def polytope_from_doc(doc, validate=True) -> BnPolytope:
    _check_format(doc, "polytope")
    n = int(doc["n"])
    mapping = {}
    for entry in doc["support"]:
        s = AdmissibleSet.from_letters(n, entry["ray"])
        mapping[s] = fraction_from_str(entry["value"])
    return BnPolytope.from_support_map(n, mapping, validate=validate)


def decomposition_to_doc(d: DeltaDecomposition) -> dict:
    return {
        "format": FORMAT,
        "n": d.n,
        "coefficients": [
            {"ray": list(s.letters()), "value": c} for s, c in d.support()
        ],
        "translation": list(d.translation),
    }


def decomposition_from_doc(doc) -> DeltaDecomposition:
    _check_format(doc, "decomposition")
    n = int(doc["n"])
    coeffs = {
        AdmissibleSet.from_letters(n, e["ray"]): int(e["value"])
        for e in doc["coefficients"]
    }
    return DeltaDecomposition(
        n, coeffs, tuple(doc.get("translation", [0] * n))
    )


# -- polynomials -----------------------------------------------------------------------


def poly_to_doc(f: MPoly) -> dict:
    f = f.canonical()
    return {
        "format": FORMAT,
        "variables": list(f.vars),
        "terms": [
            {"exponents": list(expo), "coeff": fraction_to_str(c)}
            for expo, c in sorted(f.terms.items())
        ],
    }


def poly_from_doc(doc) -> MPoly:
    _check_format(doc, "polynomial")
    names = tuple(doc["variables"])
    terms = {
        tuple(t["exponents"]): fraction_from_str(t["coeff"])
        for t in doc["terms"]
    }
    laurent = any(e < 0 for expo in terms for e in expo)
    return MPoly(names, terms, laurent)


# -- graphs and matrices -------------------------------------------------------------------


def graph_from_doc(doc) -> Graph:
    _check_format(doc, "graph")
    return Graph.from_pairs(int(doc["n"]), [tuple(e) for e in doc["edges"]])


def graph_to_doc(g: Graph) -> dict:
    return {
        "format": FORMAT,
        "n": g.n,
        "edges": sorted(sorted(e) for e in g.edges),
    }


def matrix_from_doc(doc) -> FqMatrix:
    _check_format(doc, "matrix")
    return FqMatrix(int(doc["p"]), tuple(tuple(r) for r in doc["rows"]))


def matrix_to_doc(m: FqMatrix) -> dict:
    return {"format": FORMAT, "p": m.p, "rows": [list(r) for r in m.rows]}


# -- indicator combinations ---------------------------------------------------------------------


def combination_to_doc(comb: IndicatorCombination) -> dict:
    from .polyhedra import deltamatroid_of_01_polytope

    terms = []
    for t in comb.terms:
        dm = deltamatroid_of_01_polytope(t.polytope)
        terms.append(
            {
                "coeff": t.coeff,
                "translation": list(t.translation),
                "feasible": [list(s.letters()) for s in dm.feasible_sets()],
            }
        )
    return {"format": FORMAT, "n": comb.n, "terms": terms}


def combination_from_doc(doc) -> IndicatorCombination:
    _check_format(doc, "indicator-combination")
    n = int(doc["n"])
    terms = []
    for t in doc["terms"]:
        dm = DeltaMatroid.from_feasible_sets(n, t["feasible"])
        terms.append(
            IndicatorTerm(
                int(t["coeff"]),
                tuple(int(x) for x in t["translation"]),
                BnPolytope.of_deltamatroid(dm),
            )
        )
    return IndicatorCombination(n, terms)


def load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
