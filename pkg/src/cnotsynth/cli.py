"""Command-line front end.

stdout carries exactly one document per command (JSON by default); progress
and human-readable notes go to stderr. Exit codes: 0 success, 1 verification
failed, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import circuit as circ
from .errors import CnotSynthError, VerificationFailed
from .kak import classify, kak_decompose
from .linalg import haar_su4, su4_normalize
from .synth import optimize, synth

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


@dataclass
class CliConfig:
    tolerance: float = 1e-9
    classify_tolerance: float = 1e-8
    seed: Optional[int] = None
    output_path: Optional[str] = None
    format: str = "json"
    force_class: Optional[int] = None

    def __post_init__(self):
        if not (self.tolerance > 0 and self.classify_tolerance > 0):
            raise ValueError("tolerances must be positive")


class InputError(CnotSynthError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _read_unitary(path: str) -> np.ndarray:
    m = circ.parse_matrix(_read(path))
    su4_normalize(m)  # raises NotUnitary
    return m


def _emit(cfg: CliConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _matrix_text(m: np.ndarray) -> str:
    return "\n".join(
        "  ".join(f"{float(z.real)!r}{float(z.imag):+.17g}j" for z in row) for row in m
    )


def cmd_decompose(args, cfg: CliConfig) -> int:
    u = _read_unitary(args.matrix)
    k = kak_decompose(u)
    p = k.params
    if cfg.format == "text":
        lines = [f"h = ({p.hx!r}, {p.hy!r}, {p.hz!r})", f"global_phase = {k.global_phase!r}"]
        for name in ("pre_a", "pre_b", "post_a", "post_b"):
            lines.append(f"{name}:\n{_matrix_text(getattr(k, name))}")
        _emit(cfg, "\n".join(lines))
    else:
        doc = {"params": {"hx": p.hx, "hy": p.hy, "hz": p.hz}, "global_phase": k.global_phase}
        for name in ("pre_a", "pre_b", "post_a", "post_b"):
            doc[name] = circ._mat_to_json(getattr(k, name))
        _emit(cfg, json.dumps(doc))
    return EXIT_OK


def cmd_classify(args, cfg: CliConfig) -> int:
    u = _read_unitary(args.matrix)
    cls = classify(kak_decompose(u).params, cfg.classify_tolerance)
    if cfg.format == "text":
        _emit(cfg, f"{cls.label} {cls.cnot_count}")
    else:
        _emit(cfg, json.dumps({"class": cls.label, "cnot_count": cls.cnot_count}))
    return EXIT_OK


def _emit_circuit(cfg: CliConfig, c: circ.Circuit) -> None:
    _emit(cfg, circ.render_text(c) if cfg.format == "text" else circ.serialize_circuit(c))


def cmd_synth(args, cfg: CliConfig) -> int:
    u = _read_unitary(args.matrix)
    try:
        res = synth(u, cfg.tolerance, cfg.classify_tolerance, cfg.force_class)
    except VerificationFailed as exc:
        _note(f"verification failed: {exc}")
        return EXIT_FAILED
    _emit_circuit(cfg, res.circuit)
    _note(f"class {res.class_used.label}, cnots {circ.cnot_count(res.circuit)}, "
          f"verification_distance {res.verification_distance!r}")
    return EXIT_OK


def cmd_verify(args, cfg: CliConfig) -> int:
    c = circ.parse_circuit(_read(args.circuit))
    target = _read_unitary(args.matrix)
    rep = circ.verify(c, target, cfg.tolerance)
    if cfg.format == "text":
        _emit(cfg, f"{'passed' if rep.passed else 'FAILED'} distance={rep.distance!r} "
                   f"relative_phase={rep.relative_phase!r} tolerance={rep.tolerance!r}")
    else:
        _emit(cfg, json.dumps({
            "distance": rep.distance,
            "relative_phase": rep.relative_phase,
            "passed": rep.passed,
            "tolerance": rep.tolerance,
        }))
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_optimize(args, cfg: CliConfig) -> int:
    c = circ.parse_circuit(_read(args.circuit))
    before = circ.cnot_count(c)
    try:
        res = optimize(c, cfg.tolerance, cfg.classify_tolerance)
    except VerificationFailed as exc:
        _note(f"verification failed: {exc}")
        return EXIT_FAILED
    _emit_circuit(cfg, res.circuit)
    _note(f"cnots {before} -> {circ.cnot_count(res.circuit)}, "
          f"verification_distance {res.verification_distance!r}")
    return EXIT_OK


def _emit_matrix(cfg: CliConfig, m: np.ndarray) -> None:
    _emit(cfg, _matrix_text(m) if cfg.format == "text" else circ.serialize_matrix(m))


def cmd_gate(args, cfg: CliConfig) -> int:
    if not all(math.isfinite(a) for a in args.args):
        raise InputError("gate arguments must be finite")
    _emit_matrix(cfg, circ.named_gate(args.name, args.args))
    return EXIT_OK


def cmd_random(args, cfg: CliConfig) -> int:
    seed = cfg.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % 2**64)
        _note(f"seed {seed}")
    _emit_matrix(cfg, haar_su4(seed))
    return EXIT_OK


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("tolerance must be positive and finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive, default=1e-9, help="verification tolerance")
    common.add_argument("--class-tol", type=_positive, default=1e-8, help="classification tolerance (radians)")
    common.add_argument("--seed", type=_u64, default=None)
    common.add_argument("-o", dest="output", default=None, help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--force-class", type=int, choices=(0, 1, 2, 3), default=None,
                        help="use this construction instead of the minimal one")

    parser = argparse.ArgumentParser(prog="cnotsynth", description="Two-qubit CNOT synthesis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="canonical decomposition of a gate")
    p.add_argument("matrix", help="matrix JSON file or - for stdin")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", parents=[common], help="minimal CNOT count of a gate")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synth", parents=[common], help="synthesize a minimal CNOT circuit")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", parents=[common], help="check a circuit against a matrix")
    p.add_argument("circuit")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("optimize", parents=[common], help="resynthesize a circuit")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("gate", parents=[common], help="emit a named gate matrix")
    p.add_argument("name", help=", ".join(circ.NAMED_GATES))
    p.add_argument("args", nargs="*", type=float)
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("random", parents=[common], help="emit a Haar-random SU(4) matrix")
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(
        tolerance=args.tol,
        classify_tolerance=args.class_tol,
        seed=args.seed,
        output_path=args.output,
        format=args.format,
        force_class=args.force_class,
    )
    try:
        return args.func(args, cfg)
    except (CnotSynthError, ValueError, OSError, np.linalg.LinAlgError) as exc:
        _note(f"error: {exc}")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
