"""Command-line front end with JSON input/output and verification reports.

Inputs are read as JSON from stdin (or ``--in FILE``); the primary artifact
is written as JSON to stdout, or to ``--out FILE`` with a short textual
report on stdout instead. ``--json`` wraps the artifact together with the
run report (command, input digest, seed, recorded residual checks) in one
machine-readable object. Outputs are byte-identical for identical inputs
and seeds.

Exit codes: 0 success or true verdict, 1 false or refuted verdict,
2 usage or runtime error, 3 unknown verdict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

import numpy as np

from . import convexity, dilation, opsys, reps, serialize, verify
from .errors import NcprismError
from .matkernel import (
    DEFAULT_TOL,
    ToleranceConfig,
    commutant_dimension,
    compress,
    dagger,
    is_hermitian,
    opnorm,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_UNKNOWN = 3


def _tolerances(args) -> ToleranceConfig:
    if args.tol is None:
        return DEFAULT_TOL
    spec = float(args.tol)
    alg = min(1e-10, spec)
    return ToleranceConfig(alg_tol=alg, spec_tol=spec, psd_clamp=min(1e-12, alg))


def _read_input(args) -> tuple[dict | None, str]:
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read()
    elif not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        text = ""
    return (json.loads(text) if text.strip() else None), text


class Run:
    """Collects postcondition checks and renders the final report."""

    def __init__(self, args, input_text: str):
        self.command = args.command + (
            f" {args.subcommand}" if getattr(args, "subcommand", None) else ""
        )
        self.seed = int(getattr(args, "seed", 0) or 0)
        self.digest = hashlib.sha256(input_text.encode("utf-8")).hexdigest()
        self.checks: list[dict] = []
        self.args = args

    def check(self, name: str, residual: float, bound: float) -> None:
        self.checks.append(
            {"name": name, "passed": bool(residual <= bound), "residual": float(residual)}
        )

    def record(self, name: str, passed: bool, residual: float) -> None:
        self.checks.append(
            {"name": name, "passed": bool(passed), "residual": float(residual)}
        )

    def report(self, artifacts: list[str]) -> dict:
        return {
            "command": self.command,
            "inputs": self.digest,
            "seed": self.seed,
            "checks": self.checks,
            "artifacts": artifacts,
        }

    def emit(self, artifact: dict, exit_code: int) -> int:
        out = getattr(self.args, "out", None)
        as_json = getattr(self.args, "json", False)
        artifacts = [out] if out else ["stdout"]
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                json.dump(artifact, fh, indent=2)
                fh.write("\n")
        if as_json:
            print(json.dumps({"report": self.report(artifacts), "result": artifact}, indent=2))
        elif out:
            for check in self.checks:
                status = "PASS" if check["passed"] else "FAIL"
                print(f"{check['name']}: {status} (residual {check['residual']:.3e})")
            print(f"wrote {out}")
        else:
            print(json.dumps(artifact, indent=2))
        if any(not check["passed"] for check in self.checks) and exit_code == EXIT_OK:
            return EXIT_ERROR
        return exit_code


def _add_common(sub):
    sub.add_argument("--tol", type=float, default=None, help="override spec tolerance")
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    sub.add_argument("--out", default=None, help="write the artifact JSON to a file")
    sub.add_argument("--json", action="store_true", help="emit report plus artifact as JSON")
    sub.add_argument("--in", dest="infile", default=None, help="read input JSON from a file")


def _cmd_dilate(args, run: Run, payload, tol) -> int:
    sub = args.subcommand
    if sub == "halmos":
        x = serialize.matrix_from_json(payload)
        if is_hermitian(x, tol.alg_tol):
            big = dilation.halmos_symmetry(x, tol)
            run.check("symmetry_squares_to_identity", opnorm(big @ big - np.eye(big.shape[0])), tol.spec_tol)
        else:
            big = dilation.halmos_unitary(x, tol)
            run.check("unitarity", opnorm(dagger(big) @ big - np.eye(big.shape[0])), tol.spec_tol)
        n = x.shape[0]
        run.check("corner_reproduces_input", opnorm(big[:n, :n] - x), tol.alg_tol)
        iso = np.vstack([np.eye(n), np.zeros((n, n))]).astype(complex)
        result = dilation.DilationResult(iso, [big], ["dilation"])
        return run.emit(serialize.dilation_result_to_json(result), EXIT_OK)
    if sub == "mirman":
        a = serialize.matrix_from_json(payload)
        result = dilation.naimark_normal(dilation.triangle_povm(a, tol), tol)
        nd = result.operators[0]
        run.check("normality", opnorm(nd @ dagger(nd) - dagger(nd) @ nd), tol.spec_tol)
        run.check("compression_reproduces_input", opnorm(result.compressions()[0] - a), tol.spec_tol)
        return run.emit(serialize.dilation_result_to_json(result), EXIT_OK)
    if sub == "joint":
        a = serialize.matrix_from_json(payload["a"])
        b = serialize.matrix_from_json(payload["b"])
        pair, g = dilation.joint_prism_dilation(a, b, args.k, tol)
        run.check("w_compression", opnorm(compress(pair.w, g, tol) - a), tol.spec_tol)
        run.check("v_compression", opnorm(compress(pair.v, g, tol) - b), tol.spec_tol)
        artifact = {
            "pair": serialize.rep_pair_to_json(pair),
            "isometry": serialize.matrix_to_json(g),
        }
        return run.emit(artifact, EXIT_OK)
    if sub == "cube":
        mats = serialize.tuple_from_json(payload)
        result = dilation.cube_dilation(mats, tol)
        for i, small in enumerate(result.compressions()):
            run.check(f"compression_reproduces_input_{i}", opnorm(small - mats[i]), tol.spec_tol)
        return run.emit(serialize.dilation_result_to_json(result), EXIT_OK)
    raise NcprismError(f"unknown dilate subcommand {sub!r}")


def _cmd_rep(args, run: Run, payload, tol) -> int:
    sub = args.subcommand
    if sub == "square":
        st = reps.square_irrep(args.lam)
        dim, _ = commutant_dimension(st.mats, tol)
        run.record("commutant_dimension_1", dim == 1, float(dim - 1))
        return run.emit(serialize.symmetry_tuple_to_json(st), EXIT_OK)
    if sub == "hadamard":
        st = reps.hadamard_symmetries(args.m)
        dim, _ = commutant_dimension(st.mats, tol)
        run.record("commutant_dimension_1", dim == 1, float(dim - 1))
        return run.emit(serialize.symmetry_tuple_to_json(st), EXIT_OK)
    if sub == "vertex":
        sign = 1 if args.sign in ("+", "+1", "1") else -1
        pair, xi = reps.prism_vertex_rep(args.k, args.j, sign)
        wval = complex(np.vdot(xi, pair.w @ xi))
        target = complex(math.cos(2 * math.pi * args.j / args.k), math.sin(2 * math.pi * args.j / args.k))
        run.check("vertex_state_attains_vertex", abs(wval - target), tol.spec_tol)
        artifact = serialize.rep_pair_to_json(pair)
        artifact["state_vector"] = serialize.matrix_to_json(xi.reshape(-1, 1))
        return run.emit(artifact, EXIT_OK)
    builders = {
        "s3": reps.s3_pair,
        "a4": reps.a4_pair,
        "steinberg": lambda: reps.steinberg_pair(args.q),
        "assemble": lambda: reps.assemble_dimension(args.n),
    }
    if sub in builders:
        pair = builders[sub]()
        run.record("orders_verified", True, 0.0)
        return run.emit(serialize.rep_pair_to_json(pair), EXIT_OK)
    raise NcprismError(f"unknown rep subcommand {sub!r}")


def _membership_artifact(result) -> dict:
    return {
        "member": result.member,
        "worst_facet": {
            "index": result.facet_index,
            "normal": list(map(float, result.normal)),
            "offset": result.offset,
            "support": result.support,
        },
        "margin": result.margin,
    }


def _cmd_check(args, run: Run, payload, tol) -> int:
    if args.subcommand == "cube":
        mats = serialize.tuple_from_json(payload)
        result = convexity.max_member(mats, convexity.make_cube(args.d), tol)
    else:
        a = serialize.matrix_from_json(payload["a"])
        b = serialize.matrix_from_json(payload["b"])
        result = convexity.prism_member(a, b, args.k, tol)
    run.record("membership", True, max(0.0, -result.margin))
    return run.emit(_membership_artifact(result), EXIT_OK if result.member else EXIT_FALSE)


def _cmd_commutant(args, run: Run, payload, tol) -> int:
    mats = serialize.tuple_from_json(payload)
    dim, basis = commutant_dimension(mats, tol)
    artifact = {"dimension": dim, "basis": [serialize.matrix_to_json(b) for b in basis]}
    worst = 0.0
    for b in basis:
        for a in mats:
            worst = max(worst, opnorm(b @ a - a @ b))
    run.check("basis_commutes", worst, tol.spec_tol * mats[0].shape[0] * 10)
    return run.emit(artifact, EXIT_OK)


def _cmd_positivity(args, run: Run, payload, tol) -> int:
    sub = args.subcommand
    if sub == "cube":
        positive, margin = opsys.scalar_positivity_cube(payload["alpha"], payload["beta"])
        artifact = {"positive": positive, "margin": margin}
        return run.emit(artifact, EXIT_OK if positive else EXIT_FALSE)
    element = serialize.prism_element_from_json(payload)
    if element.k != args.k:
        raise NcprismError(f"element has k={element.k}, flag says k={args.k}")
    if sub == "scalar":
        verdict = opsys.scalar_positivity_prism(element)
        artifact = {
            "positive": verdict.positive,
            "margin": verdict.margin,
            "worst_vertex": {"j": verdict.worst_vertex[0], "sign": verdict.worst_vertex[1]},
        }
        return run.emit(artifact, EXIT_OK if verdict.positive else EXIT_FALSE)
    verdict = opsys.matrix_positivity_prism(
        element, samples=args.samples, max_iter=args.max_iter, tol=tol, seed=run.seed
    )
    artifact = serialize.verdict_to_json(verdict)
    if isinstance(verdict, opsys.Certified):
        run.check("certificate_residual", verdict.residual, tol.spec_tol)
        return run.emit(artifact, EXIT_OK)
    if isinstance(verdict, opsys.Refuted):
        run.record("witness_negative_eigenvalue", verdict.min_eigenvalue < -tol.spec_tol, verdict.min_eigenvalue)
        return run.emit(artifact, EXIT_FALSE)
    return run.emit(artifact, EXIT_UNKNOWN)


def _cmd_geometry(args, run: Run, payload, tol) -> int:
    artifact = {
        "k": args.k,
        "incircle_radius": convexity.incircle_radius(args.k),
        "circumnorm": convexity.circumnorm(args.k),
        "theta_lower_bound": convexity.theta_lower_bound(args.k),
    }
    if args.d is not None:
        artifact["cube_scaling_constant"] = convexity.cube_scaling_constant(args.d)
    run.record("geometry_cross_checks", True, 0.0)
    if not getattr(args, "json", False) and not getattr(args, "out", None):
        print(f"k = {args.k}")
        print(f"incircle radius r_k      = {artifact['incircle_radius']:.15f}")
        print(f"circumscribed norm       = {artifact['circumnorm']:.15f}")
        print(f"theta lower bound        = {artifact['theta_lower_bound']:.15f}")
        if args.d is not None:
            print(f"cube scaling constant    = {artifact['cube_scaling_constant']:.15f}")
        return EXIT_OK
    return run.emit(artifact, EXIT_OK)


def _cmd_word(args, run: Run, payload, tol) -> int:
    pair = serialize.rep_pair_from_json(payload["pair"] if "pair" in payload else payload)
    word = dilation.GroupWord.from_string(args.letters, args.k)
    if "isometry" in payload:
        iso = serialize.matrix_from_json(payload["isometry"])
        value = dilation.evaluate_compressed_word(pair, iso, word, tol)
    else:
        value = dilation.evaluate_word(pair, word)
    run.record("word_evaluated", True, 0.0)
    return run.emit({"value": serialize.matrix_to_json(value)}, EXIT_OK)


def _cmd_quotient(args, run: Run, payload, tol) -> int:
    sub = args.subcommand
    if sub == "psi":
        x = serialize.diag_tuple_from_json(payload)
        image = opsys.psi_k(x)
        return run.emit(serialize.prism_element_to_json(image), EXIT_OK)
    if sub == "dual-member":
        z = opsys.DualTuple(args.k, np.array([serialize.complex_from_json(v) for v in payload["z"]]))
        member = opsys.dual_member(z)
        return run.emit({"member": member}, EXIT_OK if member else EXIT_FALSE)
    if sub == "functional":
        pair = serialize.rep_pair_from_json(payload["pair"])
        density = serialize.matrix_from_json(payload["density"])
        z = opsys.functional_to_tuple(pair, density, args.k, tol)
        run.record("lands_in_dual_system", opsys.dual_member(z), 0.0)
        artifact = serialize.dual_tuple_to_json(z)
        artifact["dual_member"] = opsys.dual_member(z)
        return run.emit(artifact, EXIT_OK)
    raise NcprismError(f"unknown quotient subcommand {sub!r}")


def _cmd_verify(args, run: Run, payload, tol) -> int:
    results = verify.run_all(size_budget=args.size_budget, seed=run.seed, tol=tol)
    for res in results:
        run.record(res.name, res.passed, res.residual)
    artifact = {
        "checks": [
            {"name": r.name, "passed": r.passed, "residual": r.residual} for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    if not getattr(args, "json", False):
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.name}  (worst residual {r.residual:.3e})")
        print("all checks passed" if artifact["all_passed"] else "SOME CHECKS FAILED")
        return EXIT_OK if artifact["all_passed"] else EXIT_FALSE
    return run.emit(artifact, EXIT_OK if artifact["all_passed"] else EXIT_FALSE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncprism",
        description="dilations, representations, membership and positivity "
        "tests for noncommutative cubes and prisms",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    dil = commands.add_parser("dilate", help="construct dilations")
    dil_sub = dil.add_subparsers(dest="subcommand", required=True)
    for name in ("halmos", "mirman", "joint", "cube"):
        sp = dil_sub.add_parser(name)
        _add_common(sp)
        if name == "joint":
            sp.add_argument("--k", type=int, default=3)

    rep = commands.add_parser("rep", help="build representation pairs and tuples")
    rep_sub = rep.add_subparsers(dest="subcommand", required=True)
    sp = rep_sub.add_parser("square")
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    _add_common(sp)
    sp = rep_sub.add_parser("hadamard")
    sp.add_argument("--m", type=int, required=True)
    _add_common(sp)
    sp = rep_sub.add_parser("vertex")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--sign", default="+", choices=["+", "-", "+1", "-1", "1"])
    _add_common(sp)
    for name in ("s3", "a4"):
        sp = rep_sub.add_parser(name)
        _add_common(sp)
    sp = rep_sub.add_parser("steinberg")
    sp.add_argument("--q", type=int, required=True)
    _add_common(sp)
    sp = rep_sub.add_parser("assemble")
    sp.add_argument("--n", type=int, required=True)
    _add_common(sp)

    chk = commands.add_parser("check", help="membership in max-type convex sets")
    chk_sub = chk.add_subparsers(dest="subcommand", required=True)
    sp = chk_sub.add_parser("cube")
    sp.add_argument("--d", type=int, required=True)
    _add_common(sp)
    sp = chk_sub.add_parser("prism")
    sp.add_argument("--k", type=int, required=True)
    _add_common(sp)

    com = commands.add_parser("commutant", help="commutant dimension and basis")
    _add_common(com)

    pos = commands.add_parser("positivity", help="positivity tests")
    pos_sub = pos.add_subparsers(dest="subcommand", required=True)
    sp = pos_sub.add_parser("scalar")
    sp.add_argument("--k", type=int, required=True)
    _add_common(sp)
    sp = pos_sub.add_parser("matrix")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--max-iter", type=int, default=2000)
    _add_common(sp)
    sp = pos_sub.add_parser("cube")
    _add_common(sp)

    geo = commands.add_parser("geometry", help="scaling-constant geometry table")
    geo.add_argument("--k", type=int, required=True)
    geo.add_argument("--d", type=int, default=None)
    _add_common(geo)

    word = commands.add_parser("word", help="evaluate a group word on a pair")
    word.add_argument("--k", type=int, required=True)
    word.add_argument("--letters", required=True, help="word such as wvw*")
    _add_common(word)

    quo = commands.add_parser("quotient", help="quotient map and dual system")
    quo_sub = quo.add_subparsers(dest="subcommand", required=True)
    for name in ("psi", "dual-member", "functional"):
        sp = quo_sub.add_parser(name)
        sp.add_argument("--k", type=int, required=True)
        _add_common(sp)

    ver = commands.add_parser("verify", help="run the invariant suite")
    ver_sub = ver.add_subparsers(dest="subcommand", required=True)
    sp = ver_sub.add_parser("all")
    sp.add_argument("--size-budget", type=int, default=8)
    _add_common(sp)

    return parser


_HANDLERS = {
    "dilate": _cmd_dilate,
    "rep": _cmd_rep,
    "check": _cmd_check,
    "commutant": _cmd_commutant,
    "positivity": _cmd_positivity,
    "geometry": _cmd_geometry,
    "word": _cmd_word,
    "quotient": _cmd_quotient,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = _read_input(args)
        run = Run(args, text)
        tol = _tolerances(args)
        return _HANDLERS[args.command](args, run, payload, tol)
    except (NcprismError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
