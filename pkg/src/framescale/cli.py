"""Command-line front end.

Reads a frame file (and optionally a scaling file), runs one analysis, and
prints a deterministic report: JSON with sorted keys and 17-significant-digit
floats, CSV for the flat minimal-scalings table, or DOT for poset diagrams.
Exit codes: 0 success, 2 validation failure, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import structure
from .errors import CapExceeded, FramescaleError, TooLarge, ValidationError
from .frames import (
    Frame,
    load_frame,
    promote_to_rational,
    realize_vectors,
    weighted_operator_deviation,
)
from .scaling import (
    check_mbound,
    coerce_weights,
    enumerate_minimal_scalings,
    is_scalable,
    parse_weights,
    scaling_payload,
    weights_payload,
)

COMMANDS = ("scalable", "minimal-scalings", "factor-poset", "empty-cover",
            "decompose", "prime", "affine-report", "john-check", "poset-dot")
NEEDS_SCALING = ("decompose", "prime", "john-check")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    scaling_path: Optional[str]
    mode_override: Optional[str]
    tol: float
    fmt: str
    max_k: int
    max_vertices: int
    out_path: Optional[str]
    timing: bool

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ValidationError("tol must be positive")
        if self.max_k < 1 or self.max_vertices < 1:
            raise ValidationError("caps must be at least 1")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits,
    fractions rendered as "p/q" strings."""
    out = []
    _emit(obj, out)
    return "".join(out)


def _emit(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format(obj, ".17g"))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(str(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError("JSON object keys must be strings")
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(key))
            out.append(":")
            _emit(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framescale",
        description="Scalability analysis for unit-norm frames.")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "scalable": "decide whether the frame admits a Parseval scaling",
        "minimal-scalings": "enumerate polytope vertices with the binomial bound certificate",
        "factor-poset": "tight index subsets of the (optionally scaled) frame",
        "empty-cover": "minimal nonempty tight subsets",
        "decompose": "orthogonal block decomposition of a scaling",
        "prime": "test a scaling for proper tight subframes",
        "affine-report": "affine dependence of the minimal scalings with witnesses",
        "john-check": "verify the identity decomposition for given weights",
        "poset-dot": "factor poset Hasse diagram in DOT format",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=descriptions[name])
        p.add_argument("frame", help="path to a frame JSON file")
        p.add_argument("--scaling", help="path to a scaling JSON file",
                       required=name in NEEDS_SCALING)
        p.add_argument("--mode", choices=("float", "rational"),
                       help="convert the frame to this arithmetic lane")
        p.add_argument("--tol", type=float, default=1e-9,
                       help="float-lane tolerance (default 1e-9)")
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "dot"),
                       default="dot" if name == "poset-dot" else "json")
        p.add_argument("--max-k", type=int, default=20,
                       help="refuse frames with more vectors than this (default 20)")
        p.add_argument("--max-vertices", type=int, default=12,
                       help="witness-search cap for affine-report (default 12)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock seconds (breaks byte-for-byte determinism)")
    return parser


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=args.frame,
        scaling_path=args.scaling,
        mode_override=args.mode,
        tol=args.tol,
        fmt=args.fmt,
        max_k=args.max_k,
        max_vertices=args.max_vertices,
        out_path=args.out,
        timing=args.timing,
    )


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None


def _load_input_frame(cfg: RunConfig) -> Frame:
    frame = load_frame(_read_json(cfg.input_path), tol=cfg.tol)
    if cfg.mode_override == "float" and frame.mode.exact:
        frame = realize_vectors(frame, tol=cfg.tol)
    elif cfg.mode_override == "rational" and not frame.mode.exact:
        frame = promote_to_rational(frame)
    if frame.k > cfg.max_k:
        raise TooLarge(f"frame has {frame.k} vectors, --max-k is {cfg.max_k}")
    return frame


def _load_weights(cfg: RunConfig, frame: Frame) -> list:
    return parse_weights(_read_json(cfg.scaling_path), frame)


def _commands(cfg: RunConfig, frame: Frame, warnings: list) -> dict:
    mode = frame.mode
    if cfg.command == "scalable":
        return {"scalable": is_scalable(frame)}
    if cfg.command == "minimal-scalings":
        scalings = enumerate_minimal_scalings(frame)
        bound = check_mbound(frame, scalings)
        return {
            "count": len(scalings),
            "scalings": [scaling_payload(sv) for sv in scalings],
            "mbound": {"bound": bound.bound, "size": bound.size,
                       "holds": bound.holds, "equality": bound.equality},
        }
    if cfg.command in ("factor-poset", "empty-cover", "poset-dot"):
        weights = _load_weights(cfg, frame) if cfg.scaling_path else None
        poset = structure.factor_poset(frame, weights, cap=cfg.max_k)
        if cfg.command == "factor-poset":
            if cfg.fmt == "dot":
                return {"dot": structure.poset_to_dot(poset)}
            return structure.poset_payload(poset)
        if cfg.command == "empty-cover":
            return {"ec": structure.ec_payload(structure.empty_cover(poset))["members"]}
        return {"dot": structure.poset_to_dot(poset)}
    if cfg.command == "decompose":
        weights = _load_weights(cfg, frame)
        scalings = enumerate_minimal_scalings(frame)
        blocks = structure.orthogonal_decompose_scaling(frame, weights, scalings,
                                                        cap=cfg.max_k)
        cover = structure.empty_cover(structure.factor_poset(frame, weights,
                                                             cap=cfg.max_k))
        return {
            "blocks": [{
                "support": [i + 1 for i in b.support],
                "constant": b.constant if mode.exact else float(b.constant),
                "coefficients": [[j + 1, a] for j, a in b.coefficients],
            } for b in blocks],
            "unique": structure.ec_pairwise_disjoint(cover),
            "scalings": [scaling_payload(sv) for sv in scalings],
        }
    if cfg.command == "prime":
        weights = _load_weights(cfg, frame)
        return {"prime": structure.is_prime_scaling(frame, weights, cap=cfg.max_k)}
    if cfg.command == "affine-report":
        scalings = enumerate_minimal_scalings(frame)
        report = structure.affine_dependence_report(scalings,
                                                    witness_cap=cfg.max_vertices)
        cond3 = None
        if report.condition3_witness is not None:
            j1, j2, point = report.condition3_witness
            cond3 = {"j1": [i + 1 for i in j1], "j2": [i + 1 for i in j2],
                     "point": weights_payload(point, mode)}
        cond4 = None
        if report.condition4_witness is not None:
            j1, j2 = report.condition4_witness
            cond4 = {"j1": [i + 1 for i in j1], "j2": [i + 1 for i in j2]}
        return {
            "dependent": report.dependent,
            "condition2": None if report.condition2_witness is None
            else report.condition2_witness + 1,
            "condition3": cond3,
            "condition4": cond4,
            "witnesses_skipped": report.witnesses_skipped,
            "count": len(scalings),
        }
    if cfg.command == "john-check":
        weights = _load_weights(cfg, frame)
        vals = coerce_weights(frame, weights)
        if any(v < 0 for v in vals):
            raise ValidationError("weights must be nonnegative")
        dev = weighted_operator_deviation(frame, vals)
        if mode.exact:
            passed = dev == 0
        else:
            passed = dev <= mode.tol
            if passed and dev > mode.tol / 10:
                warnings.append(
                    f"deviation {format(float(dev), '.3g')} is within 10x of tolerance")
        return {"parseval": passed,
                "deviation": dev if mode.exact else float(dev)}
    raise ValidationError(f"unknown command {cfg.command!r}")


def _render_csv(results: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = results.get("scalings")
    if rows is None:
        raise ValidationError("csv output is only available for minimal-scalings")
    width = max((len(r["weights"]) for r in rows), default=0)
    writer.writerow(["index", "support"] + [f"w{i + 1}" for i in range(width)])
    for t, r in enumerate(rows, start=1):
        cells = [w if isinstance(w, str) else format(w, ".17g") for w in r["weights"]]
        writer.writerow([t, " ".join(str(i) for i in r["support"])] + cells)
    return buf.getvalue()


def _render(cfg: RunConfig, frame: Frame, results: dict, warnings: list,
            elapsed: Optional[float]) -> str:
    if cfg.fmt == "dot":
        if "dot" not in results:
            raise ValidationError("dot output is only available for poset commands")
        return results["dot"]
    if cfg.fmt == "csv":
        if cfg.command != "minimal-scalings":
            raise ValidationError("csv output is only available for minimal-scalings")
        return _render_csv(results)
    report = {
        "command": cfg.command,
        "frame": {"n": frame.n, "k": frame.k, "mode": frame.mode.kind},
        "results": results,
        "timing": elapsed,
        "warnings": warnings,
    }
    return canonical_json(report) + "\n"


def run(argv) -> int:
    """Parse argv, run one subcommand, print the report; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    started = time.monotonic()
    try:
        cfg = _config_from_args(args)
        frame = _load_input_frame(cfg)
        warnings: list = []
        results = _commands(cfg, frame, warnings)
        elapsed = round(time.monotonic() - started, 6) if cfg.timing else None
        text = _render(cfg, frame, results, warnings, elapsed)
    except CapExceeded as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except FramescaleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.out_path:
        try:
            with open(cfg.out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: ValidationError: cannot write {cfg.out_path}: "
                  f"{exc.strerror or exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
