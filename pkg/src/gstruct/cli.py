"""Command-line front end.

    gstruct run <file.gman> [--format text|machine] [--backend exact|float]
                            [--eps <float>] [--out <path>]
    gstruct run --examples  [--format ...]

Exit codes: 0 success, 1 usage or manifest error, 2 geometric inconsistency.
The built-in example suite re-runs the bundled manifests and compares the
machine reports byte-for-byte against the stored golden files.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from .backend import EXACT, FloatBackend, default_eps
from .errors import GStructError, ManifestError
from .manifest import parse_manifest
from .report import build_report, emit_machine, emit_text
from .runner import param_stability, run_manifest

EXAMPLES = ("heisenberg", "mk", "s6", "s5s1")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gstruct")
    sub = parser.add_subparsers(dest="command")
    run_p = sub.add_parser("run", help="classify the manifold in a .gman file")
    run_p.add_argument("file", nargs="?", help="manifest file")
    run_p.add_argument("--examples", action="store_true",
                       help="run the built-in example manifests against goldens")
    run_p.add_argument("--format", choices=("text", "machine"), default="text")
    run_p.add_argument("--backend", choices=("exact", "float"), default="exact")
    run_p.add_argument("--eps", type=float, default=None,
                       help="comparison tolerance for the float backend")
    run_p.add_argument("--out", default=None, help="write the report here")
    return parser


def _backend_from_args(args):
    if args.backend == "float":
        return FloatBackend(args.eps if args.eps is not None else default_eps())
    return EXACT


def example_manifest_text(name: str) -> str:
    return (resources.files("gstruct.data") / f"{name}.gman").read_text("utf-8")


def example_golden_bytes(name: str) -> bytes:
    return (resources.files("gstruct.data") / f"{name}.golden.json").read_bytes()


def run_file(text: str, name: str, backend) -> dict:
    mf = parse_manifest(text)
    run = run_manifest(mf, backend)
    report = build_report(mf.name or name, run, backend.name)
    if mf.params:
        report["ambient"]["param_stability"] = param_stability(mf, backend)
    return report


def _run_examples(args) -> int:
    backend = _backend_from_args(args)
    failures = 0
    for name in EXAMPLES:
        report = run_file(example_manifest_text(name), name, backend)
        got = emit_machine(report)
        want = example_golden_bytes(name)
        if got == want:
            print(f"{name}: OK")
        else:
            print(f"{name}: MISMATCH against golden report")
            failures += 1
    return 0 if failures == 0 else 2


def main(argv=None) -> int:
    args = _make_parser().parse_args(argv)
    if args.command != "run":
        _make_parser().print_help()
        return 1
    try:
        if args.examples:
            return _run_examples(args)
        if not args.file:
            print("error: a manifest file (or --examples) is required",
                  file=sys.stderr)
            return 1
        backend = _backend_from_args(args)
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
        report = run_file(text, args.file, backend)
        payload = (emit_machine(report) if args.format == "machine"
                   else emit_text(report).encode("utf-8"))
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
        return 0
    except ManifestError as exc:
        print(f"manifest error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GStructError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
