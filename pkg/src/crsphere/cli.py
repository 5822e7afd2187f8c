"""Command-line entry point: construct embeddings, check the exact identity,
verify regularity by sampling, and hunt degeneracies by minimization.

Exit codes: 0 success/verified, 1 identity failure, 2 regularity failure (or
marginal verdict), 3 internal criterion disagreement, 64 usage errors,
65 unreadable or malformed input files.

Human-readable summaries go to standard output; machine artifacts (embedding
files, reports, histograms) go to files.  Every output file has a sidecar
``<name>.manifest.json`` recording the command, config echo, input hashes,
tool version and wall time; the report itself stays byte-reproducible for
identical flags, whatever the worker count.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import (
    GraphEmbedding,
    NEGATIVE_CONTROL_KINDS,
    ar_embedding,
    block_sum_embedding,
    make_negative_control,
    verify_ar_identity,
)
from .certify import (
    MinimizeOptions,
    OBJECTIVE_DET_SQ,
    OBJECTIVE_SIGMA_MIN_SQ,
    SweepConfig,
    VERDICT_ALL_REGULAR,
    ar_determinant_profile,
    is_ar_embedding,
    multistart_minimize,
    sample_sphere,
    sigma_histogram,
    sweep,
    write_histogram_csv,
)
from .verifier import equivalence_check_many
from .wirtinger import WPolynomial

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_REGULARITY_FAILURE = 2
EXIT_CRITERION_DISAGREEMENT = 3
EXIT_USAGE = 64
EXIT_DATA = 65


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors in the 64 class."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    """Reproducibility record written next to every output file."""

    command: str
    config: dict
    inputs: dict = field(default_factory=dict)
    tool_version: str = __version__
    wall_time_s: float = 0.0

    def write(self, out_path: Path) -> Path:
        manifest_path = manifest_path_for(out_path)
        payload = {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "tool_version": self.tool_version,
            "wall_time_s": self.wall_time_s,
            "for": out_path.name,
        }
        manifest_path.write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        return manifest_path


def manifest_path_for(out_path: Path) -> Path:
    return out_path.with_name(out_path.name + ".manifest.json")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_embedding(path: str) -> GraphEmbedding:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit_(EXIT_DATA, f"cannot read embedding file {path}: {exc}")
    try:
        return GraphEmbedding.loads(text)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise SystemExit_(EXIT_DATA, f"malformed embedding file {path}: {exc}")


class SystemExit_(Exception):
    """Internal control-flow error carrying an exit code and message."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


# -- construct ---------------------------------------------------------------------

def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    if args.preset == "ar":
        E = ar_embedding()
    elif args.preset == "q-block":
        if args.n is None or args.n < 1:
            raise SystemExit_(EXIT_USAGE, "--preset q-block needs --n >= 1")
        E = block_sum_embedding(args.n)
    elif args.preset in NEGATIVE_CONTROL_KINDS:
        if args.m is None or args.m < 2:
            raise SystemExit_(EXIT_USAGE, f"--preset {args.preset} needs --m >= 2")
        E = make_negative_control(args.preset, args.m)
    else:  # unreachable behind argparse choices
        raise SystemExit_(EXIT_USAGE, f"unknown preset {args.preset!r}")
    out = Path(args.out)
    out.write_text(E.dumps() + "\n", encoding="utf-8")
    RunManifest(
        command="construct",
        config={"preset": args.preset, "n": args.n, "m": args.m, "out": str(out)},
        wall_time_s=time.perf_counter() - t0,
    ).write(out)
    print(f"wrote {E.label}: S^{2 * E.m - 1} -> C^{E.m + E.q} ({out})")
    return EXIT_OK


# -- identity-check -----------------------------------------------------------------

def cmd_identity_check(args) -> int:
    t0 = time.perf_counter()
    perturbation = None
    if args.inject_fault:
        # nudge one coefficient of the closed form; the check must catch it
        perturbation = WPolynomial.monomial(
            2, (0, 2), (0, 2), Fraction(1, 1_000_000)
        )
    result = verify_ar_identity(rhs_perturbation=perturbation)
    wall = time.perf_counter() - t0
    print(f"lhs ({len(result.lhs)} terms):      {result.lhs}")
    print(f"rhs ({len(result.rhs)} terms):      {result.rhs}")
    print(f"residual ({len(result.residual)} terms): {result.residual}")
    print("identity holds" if result.holds else "IDENTITY FAILED")
    if args.report:
        out = Path(args.report)
        payload = {
            "holds": result.holds,
            "lhs": result.lhs.to_json_dict(),
            "rhs": result.rhs.to_json_dict(),
            "residual": result.residual.to_json_dict(),
        }
        out.write_text(
            json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        RunManifest(
            command="identity-check",
            config={"inject_fault": bool(args.inject_fault), "report": str(out)},
            wall_time_s=wall,
        ).write(out)
    return EXIT_OK if result.holds else EXIT_IDENTITY_FAILURE


# -- verify --------------------------------------------------------------------------

def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    E = _load_embedding(args.embedding)
    cfg = SweepConfig(
        samples=args.samples, seed=args.seed, tol=args.tol, workers=args.workers
    )
    Z = sample_sphere(E.m, cfg.samples, cfg.seed)
    report = sweep(E, cfg, points=Z)

    spot = max(1, cfg.samples // 100)
    eq_results = equivalence_check_many(E, Z[:spot], cfg.tol)
    disagreements = [r for r in eq_results if not r.agree]
    report.extras["equivalence"] = {
        "spot_checks": spot,
        "disagreements": [r.to_json_dict() for r in disagreements],
    }

    out = Path(args.report)
    report.extras["manifest_file"] = manifest_path_for(out).name
    out.write_text(report.dumps() + "\n", encoding="utf-8")
    if args.hist:
        edges, counts = sigma_histogram(report.sigma_min_samples)
        write_histogram_csv(args.hist, edges, counts)
    RunManifest(
        command="verify",
        config={
            "embedding": args.embedding,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "tol": cfg.tol,
            "workers": args.workers,
            "report": str(out),
            "hist": args.hist,
        },
        inputs={args.embedding: _sha256(Path(args.embedding))},
        wall_time_s=time.perf_counter() - t0,
    ).write(out)

    print(
        f"{E.label}: verdict {report.verdict}; min sigma_min "
        f"{report.min_sigma:.6e} over {cfg.samples} samples; "
        f"{spot} equivalence spot checks, {len(disagreements)} disagreements"
    )
    if disagreements:
        print(f"INTERNAL INCONSISTENCY at z = {disagreements[0].z}")
        return EXIT_CRITERION_DISAGREEMENT
    if report.verdict != VERDICT_ALL_REGULAR:
        print(f"witness point: {list(report.argmin_z)}")
        return EXIT_REGULARITY_FAILURE
    return EXIT_OK


# -- minimize -------------------------------------------------------------------------

def cmd_minimize(args) -> int:
    t0 = time.perf_counter()
    if args.restarts < 1:
        raise SystemExit_(EXIT_USAGE, "--restarts must be >= 1")
    E = _load_embedding(args.embedding)
    objective = (
        OBJECTIVE_DET_SQ if args.objective == "det" else OBJECTIVE_SIGMA_MIN_SQ
    )
    opts = MinimizeOptions(
        objective=objective,
        max_iter=args.max_iter,
        step_tol=args.step_tol,
        tol=args.tol,
    )
    report = multistart_minimize(E, args.restarts, args.seed, opts)

    if is_ar_embedding(E):
        det_report = (
            report
            if objective == OBJECTIVE_DET_SQ
            else multistart_minimize(
                E,
                args.restarts,
                args.seed,
                MinimizeOptions(
                    objective=OBJECTIVE_DET_SQ,
                    max_iter=args.max_iter,
                    step_tol=args.step_tol,
                    tol=args.tol,
                ),
            )
        )
        t_star, profile_min = ar_determinant_profile()
        report.extras["ar_cross_check"] = {
            "best_det_sq": det_report.best_value,
            "profile_min": profile_min,
            "profile_argmin_t": t_star,
            "gap": abs(det_report.best_value - profile_min),
        }

    out = Path(args.report)
    report.extras["manifest_file"] = manifest_path_for(out).name
    out.write_text(report.dumps() + "\n", encoding="utf-8")
    RunManifest(
        command="minimize",
        config={
            "embedding": args.embedding,
            "restarts": args.restarts,
            "seed": args.seed,
            "tol": args.tol,
            "objective": args.objective,
            "max_iter": args.max_iter,
            "step_tol": args.step_tol,
            "report": str(out),
        },
        inputs={args.embedding: _sha256(Path(args.embedding))},
        wall_time_s=time.perf_counter() - t0,
    ).write(out)

    print(
        f"{E.label}: best {objective} = {report.best_value:.6e} at "
        f"{list(report.argmin_z)}; verdict {report.verdict}"
    )
    unconverged = report.extras.get("unconverged_restarts", 0)
    if unconverged:
        print(f"warning: {unconverged} restart(s) hit the iteration cap")
    if "ar_cross_check" in report.extras:
        cc = report.extras["ar_cross_check"]
        print(
            f"1-D profile cross-check: best |det|^2 {cc['best_det_sq']:.9e} vs "
            f"profile {cc['profile_min']:.9e} (gap {cc['gap']:.3e})"
        )
    return EXIT_OK


# -- wiring ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="crsphere",
        description="Construct and certify CR regular sphere graph embeddings.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a preset embedding to a JSON file")
    p.add_argument(
        "--preset",
        required=True,
        choices=("ar", "q-block") + NEGATIVE_CONTROL_KINDS,
    )
    p.add_argument("--n", type=int, default=None, help="block count for q-block")
    p.add_argument("--m", type=int, default=None, help="dimension for controls")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser(
        "identity-check", help="exact determinant identity self-check"
    )
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="perturb one coefficient of the closed form (detection self-test)",
    )
    p.add_argument("--report", default=None, help="optional JSON report path")
    p.set_defaults(func=cmd_identity_check)

    p = sub.add_parser("verify", help="sampling sweep plus criterion spot checks")
    p.add_argument("embedding", help="embedding JSON file")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--report", required=True)
    p.add_argument("--hist", default=None, help="optional sigma_min histogram CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minimize", help="multistart degeneracy minimization")
    p.add_argument("embedding", help="embedding JSON file")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument(
        "--objective", choices=("sigma", "det"), default="sigma",
        help="sigma: smallest singular value squared; det: |det|^2 (square case)",
    )
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--step-tol", type=float, default=1e-10)
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_minimize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit_ as exc:
        print(exc.message, file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
