"""deltoid: exact delta-matroid / type-B permutohedron toolkit.

Exit codes: 0 = all checks pass, 1 = a mathematical violation was found
(with a witness in the report), 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import docio, fixtures, report
from .core import max_n
from .deltamatroid import DeltaMatroid, enumerate_deltamatroids
from .envelope import (
    EnvelopeWitness,
    envelope_base,
    envelope_from_rep,
    envelope_indep,
    find_envelope,
    is_enveloping,
)
from .errors import DeltoidError, NotADeltaMatroidError
from .identities import (
    dual_hrr_for_polytope,
    enveloping_identity,
    hrr_for_polytope,
    interlace_identity,
    isotropic_identity,
    u_poly_identity,
    verify_identities,
)
from .invariants import interlace, u_poly_explicit, u_poly_multi, u_poly_recursive
from .localization import (
    box_class,
    env_quot,
    env_sub,
    iso_class,
    validate_class,
)
from .logconc import (
    corollary_checks,
    flawless_scan,
    homogenize_u,
    is_denormalized_lorentzian,
    is_log_concave_unbroken,
)
from .polyhedra import (
    BnPolytope,
    delta_decompose,
    incidence_nonsingular,
    lattice_count_formula,
    lattice_count_oracle,
    lattice_points,
    volume,
    volume_oracle,
)
from .represent import adjacency_delta, delta_from_isotropic
from .schubert import (
    coloop_free_schubert_census,
    eulerian_numbers,
    schubert_decompose,
    verify_indicator,
)


def _read_json(path: str):
    try:
        return docio.load(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


class UsageError(Exception):
    pass


def _load_deltamatroid(spec: str) -> DeltaMatroid:
    if spec.startswith("fixture:"):
        return fixtures.get_deltamatroid(spec.removeprefix("fixture:"))
    return docio.deltamatroid_from_doc(_read_json(spec))


def _load_polytope(spec: str) -> BnPolytope:
    if spec.startswith("fixture:"):
        return BnPolytope.of_deltamatroid(
            fixtures.get_deltamatroid(spec.removeprefix("fixture:"))
        )
    doc = _read_json(spec)
    if "support" in doc:
        return docio.polytope_from_doc(doc)
    return BnPolytope.of_deltamatroid(docio.deltamatroid_from_doc(doc))


def _emit(args, payload: dict, human_lines=None):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in human_lines or [json.dumps(payload, default=str)]:
            print(line)


def _poly_human(f) -> str:
    return repr(f.canonical())


# -- simple commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        d = _load_deltamatroid(args.input)
    except NotADeltaMatroidError as exc:
        _emit(
            args,
            {"format": 1, "valid": False, "witness": list(exc.witness or ())},
            [f"NOT a delta-matroid: {exc}"],
        )
        return 1
    _emit(
        args,
        {"format": 1, "valid": True, "n": d.n, "feasible_count": len(d.feasible)},
        [f"valid delta-matroid on {d.n} elements, {len(d.feasible)} feasible sets"],
    )
    return 0


def cmd_upoly(args) -> int:
    d = _load_deltamatroid(args.input)
    poly = u_poly_explicit(d)
    if u_poly_recursive(d) != poly:
        _emit(args, {"format": 1, "error": "recursion mismatch"}, ["VIOLATION"])
        return 1
    payload = {"format": 1, "u_polynomial": docio.poly_to_doc(poly)}
    if args.multivariable:
        payload["multivariable"] = docio.poly_to_doc(u_poly_multi(d))
    _emit(args, payload, [f"U = {_poly_human(poly)}"])
    return 0


def cmd_interlace(args) -> int:
    d = _load_deltamatroid(args.input)
    poly = interlace(d)
    _emit(
        args,
        {"format": 1, "interlace": docio.poly_to_doc(poly)},
        [f"Int = {_poly_human(poly)}"],
    )
    return 0


def cmd_volume(args) -> int:
    p = _load_polytope(args.input)
    decomp = delta_decompose(p)
    vol = volume(decomp)
    oracle = volume_oracle(p)
    payload = {
        "format": 1,
        "volume": docio.fraction_to_str(vol),
        "ehrhart_oracle": docio.fraction_to_str(oracle),
        "agrees": vol == oracle,
    }
    _emit(args, payload, [f"volume = {vol} (oracle {oracle})"])
    return 0 if vol == oracle else 1


def cmd_decompose(args) -> int:
    p = _load_polytope(args.input)
    decomp = delta_decompose(p)
    if decomp.to_polytope() != p:
        _emit(args, {"format": 1, "error": "reconstruction failed"}, ["VIOLATION"])
        return 1
    _emit(
        args,
        docio.decomposition_to_doc(decomp),
        [
            f"{len(decomp.support())} nonzero coefficients; "
            + ", ".join(f"c{s} = {c}" for s, c in decomp.support())
        ],
    )
    return 0


def cmd_lattice_count(args) -> int:
    p = _load_polytope(args.input)
    decomp = delta_decompose(p)
    count = lattice_count_formula(decomp, args.convention)
    oracle = lattice_count_oracle(p)
    payload = {
        "format": 1,
        "convention": args.convention,
        "count": count,
        "oracle": oracle,
        "agrees": count == oracle,
    }
    _emit(
        args,
        payload,
        [f"lattice points of P - cube: {count} (oracle {oracle}, {args.convention})"],
    )
    return 0 if count == oracle else 1


def cmd_from_graph(args) -> int:
    if args.input.startswith("fixture:"):
        g = fixtures.get_graph(args.input.removeprefix("fixture:"))
    else:
        g = docio.graph_from_doc(_read_json(args.input))
    d = adjacency_delta(g)
    _emit(
        args,
        docio.deltamatroid_to_doc(d),
        [f"adjacency delta-matroid: {d}"],
    )
    return 0


def cmd_from_matrix(args) -> int:
    mat = docio.matrix_from_doc(_read_json(args.input))
    d = delta_from_isotropic(mat)
    _emit(args, docio.deltamatroid_to_doc(d), [f"represented delta-matroid: {d}"])
    return 0


def cmd_envelope(args) -> int:
    d = _load_deltamatroid(args.input)
    witness = None
    if args.construction == "auto":
        witness = find_envelope(d)
    elif args.construction in ("base", "indep"):
        maker = envelope_base if args.construction == "base" else envelope_indep
        auto = find_envelope(d)
        if auto is not None and (
            (args.construction == "base" and auto.construction == "direct-sum")
            or (args.construction == "indep" and auto.construction == "free-product")
        ):
            witness = auto
    elif args.construction == "rep":
        if not args.matrix:
            raise UsageError("--construction rep requires --matrix")
        mat = docio.matrix_from_doc(_read_json(args.matrix))
        m = envelope_from_rep(mat)
        if is_enveloping(m, d):
            witness = EnvelopeWitness(d, m, "from-representation")
    if witness is None:
        _emit(
            args,
            {"format": 1, "found": False},
            ["no enveloping matroid found by the requested construction"],
        )
        return 1
    payload = {
        "format": 1,
        "found": True,
        "construction": witness.construction,
        "matroid": docio.matroid_to_doc(witness.matroid),
    }
    _emit(args, payload, [f"envelope found via {witness.construction}"])
    return 0


def cmd_schubert(args) -> int:
    if args.action == "census":
        n = int(args.arg)
        hist = coloop_free_schubert_census(n)
        reference = eulerian_numbers(n)
        payload = {
            "format": 1,
            "census": {str(k): v for k, v in sorted(hist.items())},
            "eulerian": {str(k): v for k, v in sorted(reference.items())},
            "agrees": hist == reference,
        }
        if args.plot:
            payload["artifacts"] = report.render_histogram(
                args.plot, f"census_n{n}", hist, f"coloop-free Schubert census, n={n}"
            )
        _emit(
            args,
            payload,
            [
                "rank histogram: "
                + " ".join(f"{k}:{v}" for k, v in sorted(hist.items())),
                f"matches type-B Eulerian numbers: {hist == reference}",
            ],
        )
        return 0 if hist == reference else 1
    # decompose
    p = _load_polytope(args.arg)
    comb = schubert_decompose(p)
    ok = verify_indicator(comb, p, seed=args.seed)
    payload = docio.combination_to_doc(comb)
    payload["verified"] = ok
    _emit(
        args,
        payload,
        [f"{len(comb.terms)} Schubert pieces; indicator verified: {ok}"],
    )
    return 0 if ok else 1


def cmd_logconc(args) -> int:
    d = _load_deltamatroid(args.input)
    payload: dict = {"format": 1, "suite": args.suite}
    verdicts: dict[str, bool] = {}
    sequences: dict[str, list] = {}
    if args.suite == "lorentzian":
        for target in ("isotropic", "enveloping", "multivariable"):
            f = homogenize_u(d, target)
            lorentzian = is_denormalized_lorentzian(f)
            unbroken, witness = is_log_concave_unbroken(f)
            verdicts[f"{target}_lorentzian"] = lorentzian
            verdicts[f"{target}_unbroken"] = unbroken
            if witness is not None:
                payload.setdefault("witnesses", {})[target] = {
                    "pair": witness.pair,
                    "sequence": [str(x) for x in witness.sequence],
                    "reason": witness.reason,
                }
    elif args.suite == "corollaries":
        if d.n > 12:
            # the 2^n sweep is infeasible; use the closed binomial form for
            # the parity-filtered uniform family and report interlace-based
            # sequences only
            from .logconc import interlace_transform_sequence, sequence_verdict
            from .represent import circ_uniform_interlace, recognize_circ_uniform

            rec = recognize_circ_uniform(d)
            if rec is None:
                raise UsageError(
                    f"n = {d.n} exceeds the exhaustive-sweep cap and the "
                    "family is not of circ-uniform shape"
                )
            coeffs = circ_uniform_interlace(*rec).univariate_coeffs("v")
            sequences["interlace"] = [str(x) for x in coeffs]
            transform = interlace_transform_sequence(coeffs, d.n)
            ok, _ = sequence_verdict(transform)
            verdicts["interlace_transform"] = ok
            sequences["interlace_transform"] = [str(x) for x in transform]
            payload["skipped"] = "U-polynomial sequences (ground set too large)"
        else:
            rep = corollary_checks(d)
            for name, entry in rep.results.items():
                verdicts[name] = entry[0]
                sequences[name] = [str(x) for x in entry[2]]
        payload["sequences"] = sequences
    elif args.suite == "flawless":
        bad = flawless_scan([d])
        verdicts["flawless"] = not bad
        if bad:
            payload["counterexample"] = [str(x) for x in bad[0][1]]
    payload["verdicts"] = verdicts
    payload["pass"] = all(verdicts.values())
    if args.plot:
        artifacts = []
        if sequences:
            artifacts += report.render_sequences(
                args.plot, f"logconc_{args.suite}", sequences
            )
        artifacts += report.render_verdicts(
            args.plot, f"logconc_{args.suite}_verdicts", verdicts
        )
        payload["artifacts"] = artifacts
    _emit(
        args,
        payload,
        [f"{k}: {'pass' if v else 'FAIL'}" for k, v in sorted(verdicts.items())],
    )
    return 0 if payload["pass"] else 1


def cmd_fixtures(args) -> int:
    if args.name:
        d = fixtures.get_deltamatroid(args.name)
        _emit(args, docio.deltamatroid_to_doc(d), [str(d)])
        return 0
    cat = fixtures.catalog()
    if args.write:
        import os

        os.makedirs(args.write, exist_ok=True)
        names = ["dplus", "dminus", "dplusminus", "circle", "duchamp", "u_circ_7_20"]
        for name in names:
            docio.dump(
                docio.deltamatroid_to_doc(fixtures.get_deltamatroid(name)),
                os.path.join(args.write, f"{name}.json"),
            )
        _emit(
            args,
            {"format": 1, "written": names, "directory": args.write},
            [f"wrote {len(names)} fixtures to {args.write}"],
        )
        return 0
    _emit(
        args,
        {"format": 1, "fixtures": cat},
        [f"{name}: {desc}" for name, desc in sorted(cat.items())],
    )
    return 0


# -- the verification suites ----------------------------------------------------------------


def _suite_classes(n_cap, rng, results):
    ok = True
    for n in range(1, min(n_cap, 3) + 1):
        for d in enumerate_deltamatroids(n):
            box = box_class(d.n)
            s, q = env_sub(d), env_quot(d)
            good = (
                validate_class(iso_class(d))
                and validate_class(s)
                and validate_class(q)
                and all(
                    s.values[w] + q.values[w] == box.values[w] for w in box.values
                )
            )
            ok = ok and good
    results["classes"] = ok


def _suite_hrr(n_cap, rng, results):
    from .schubert import all_schubert_deltamatroids

    ok = True
    for n in range(1, min(n_cap, 3) + 1):
        for d in all_schubert_deltamatroids(n):
            p = BnPolytope.of_deltamatroid(d)
            chi, integral, count = hrr_for_polytope(p, seed=rng.randrange(10**6))
            chi2, dual_integral = dual_hrr_for_polytope(p, seed=rng.randrange(10**6))
            from .polyring import MPoly

            good = (
                chi == count
                and integral == MPoly.const(chi)
                and chi2 == chi
                and dual_integral == MPoly.const(chi)
            )
            ok = ok and good
    results["hrr"] = ok


def _identity_suite(name, pair_fn, n_cap, rng, results, sample3=25):
    ok = True
    for n in range(1, min(n_cap, 2) + 1):
        for d in enumerate_deltamatroids(n):
            lhs, rhs = pair_fn(d, rng.randrange(10**6))
            ok = ok and (lhs == rhs)
    if n_cap >= 3:
        pool = enumerate_deltamatroids(3)
        for d in rng.sample(pool, min(sample3, len(pool))):
            lhs, rhs = pair_fn(d, rng.randrange(10**6))
            ok = ok and (lhs == rhs)
    results[name] = ok


def _suite_decompose_impl(n_cap, rng, results):
    from .core import nonempty_ads
    from .errors import InvalidCombinationError
    from .polyhedra import minkowski_combine

    ok = True
    for n in range(1, min(n_cap, 4) + 1):
        for _ in range(20):
            rays = nonempty_ads(n)
            while True:
                support_rays = rng.sample(rays, rng.randint(1, min(5, len(rays))))
                terms = [
                    (rng.randint(1, 2), BnPolytope.simplex(s))
                    for s in support_rays
                ]
                try:
                    p = minkowski_combine(terms)
                    break
                except InvalidCombinationError:
                    continue
            decomp = delta_decompose(p)
            ok = ok and decomp.to_polytope() == p
            ok = ok and volume(decomp) == volume_oracle(p)
            ok = ok and lattice_count_formula(decomp) == lattice_count_oracle(p)
    for n in range(1, min(n_cap, 6) + 1):
        ok = ok and incidence_nonsingular(n)
    results["decompose"] = ok


def _suite_schubert(n_cap, rng, results):
    ok = True
    for n in range(1, min(n_cap, 2) + 1):
        for d in enumerate_deltamatroids(n):
            p = BnPolytope.of_deltamatroid(d)
            ok = ok and verify_indicator(schubert_decompose(p), p)
    if n_cap >= 3:
        pool = enumerate_deltamatroids(3)
        for d in rng.sample(pool, 10):
            p = BnPolytope.of_deltamatroid(d)
            ok = ok and verify_indicator(schubert_decompose(p), p)
    for n in range(1, min(n_cap, 3) + 1):
        ok = ok and coloop_free_schubert_census(n) == eulerian_numbers(n)
    results["schubert"] = ok


def _suite_logconc(n_cap, rng, results):
    ok = True
    for n in range(1, min(n_cap, 2) + 1):
        for d in enumerate_deltamatroids(n):
            if find_envelope(d) is None:
                continue
            for target in ("isotropic", "enveloping", "multivariable"):
                f = homogenize_u(d, target)
                ok = ok and is_denormalized_lorentzian(f)
                ok = ok and is_log_concave_unbroken(f)[0]
            ok = ok and corollary_checks(d).all_pass
    results["logconc"] = ok


SUITES = {
    "classes": _suite_classes,
    "hrr": _suite_hrr,
    "interlace": lambda n, r, out: _identity_suite(
        "interlace", interlace_identity, n, r, out
    ),
    "upoly": lambda n, r, out: _identity_suite(
        "upoly", u_poly_identity, n, r, out
    ),
    "enveloping": lambda n, r, out: _identity_suite(
        "enveloping", enveloping_identity, n, r, out
    ),
    "isotropic": lambda n, r, out: _identity_suite(
        "isotropic", isotropic_identity, n, r, out
    ),
    "decompose": _suite_decompose_impl,
    "schubert": _suite_schubert,
    "logconc": _suite_logconc,
}


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    n_cap = min(args.n, max_n())
    if args.input is not None:
        d = _load_deltamatroid(args.input)
        rep = verify_identities(d, seed=args.seed)
        verdicts = {k: v[0] for k, v in rep.results.items()}
        payload = {"format": 1, "input": args.input, "verdicts": verdicts,
                   "pass": rep.all_pass}
        _emit(args, payload,
              [f"{k}: {'pass' if v else 'FAIL'}" for k, v in sorted(verdicts.items())])
        return 0 if rep.all_pass else 1
    chosen = list(SUITES) if args.all else args.suites
    if not chosen:
        raise UsageError("select suites or pass --all")
    bad = [s for s in chosen if s not in SUITES]
    if bad:
        raise UsageError(f"unknown suites: {', '.join(bad)}")
    results: dict[str, bool] = {}
    for name in chosen:
        SUITES[name](n_cap, rng, results)
    payload = {
        "format": 1,
        "n": n_cap,
        "seed": args.seed,
        "suites": results,
        "pass": all(results.values()),
    }
    if args.plot:
        payload["artifacts"] = report.render_verdicts(
            args.plot, f"verify_n{n_cap}", results
        )
    _emit(
        args,
        payload,
        [f"{k}: {'pass' if v else 'FAIL'}" for k, v in sorted(results.items())]
        + [f"overall: {'pass' if payload['pass'] else 'FAIL'}"],
    )
    return 0 if payload["pass"] else 1


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltoid",
        description="exact delta-matroid and type-B permutohedron calculations",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="machine-readable output"
    )
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the exchange axiom")
    p.add_argument("input")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("upoly", parents=[common], help="U-polynomial of a delta-matroid")
    p.add_argument("input")
    p.add_argument("--multivariable", action="store_true")
    p.set_defaults(fn=cmd_upoly)

    p = sub.add_parser("interlace", parents=[common], help="interlace polynomial")
    p.add_argument("input")
    p.set_defaults(fn=cmd_interlace)

    p = sub.add_parser("volume", parents=[common], help="volume by signed transversals + oracle")
    p.add_argument("input")
    p.set_defaults(fn=cmd_volume)

    p = sub.add_parser("decompose", parents=[common], help="signed Minkowski decomposition")
    p.add_argument("input")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("lattice-count", parents=[common], help="lattice points of P - cube")
    p.add_argument("input")
    p.add_argument(
        "--convention", choices=["multiset", "ordered-psi"], default="multiset"
    )
    p.set_defaults(fn=cmd_lattice_count)

    p = sub.add_parser("schubert", parents=[common], help="decompose | census")
    p.add_argument("action", choices=["decompose", "census"])
    p.add_argument("arg")
    p.add_argument("--plot")
    p.set_defaults(fn=cmd_schubert)

    p = sub.add_parser("from-graph", parents=[common], help="adjacency delta-matroid")
    p.add_argument("input")
    p.set_defaults(fn=cmd_from_graph)

    p = sub.add_parser("from-matrix", parents=[common], help="delta-matroid of an isotropic matrix")
    p.add_argument("input")
    p.set_defaults(fn=cmd_from_matrix)

    p = sub.add_parser("envelope", parents=[common], help="find an enveloping matroid")
    p.add_argument("input")
    p.add_argument(
        "--construction", choices=["auto", "base", "indep", "rep"], default="auto"
    )
    p.add_argument("--matrix")
    p.set_defaults(fn=cmd_envelope)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suites", nargs="*", help=f"any of: {', '.join(SUITES)}")
    p.add_argument("--all", action="store_true")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--input", default=None)
    p.add_argument("--plot")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("logconc", parents=[common], help="log-concavity checks")
    p.add_argument("input")
    p.add_argument(
        "--suite", choices=["lorentzian", "corollaries", "flawless"],
        default="lorentzian",
    )
    p.add_argument("--plot")
    p.set_defaults(fn=cmd_logconc)

    p = sub.add_parser("fixtures", parents=[common], help="fixture catalog")
    p.add_argument("name", nargs="?")
    p.add_argument("--write")
    p.set_defaults(fn=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotADeltaMatroidError as exc:
        print(f"mathematical violation: {exc}", file=sys.stderr)
        return 1
    except DeltoidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
