"""Command-line front end: generate ensembles, certify designs, run attacks, print bounds.

Exit codes: 0 success / certification pass, 1 certification fail,
2 usage or validation error, 3 I/O failure. Reports go to stdout (or
--out); diagnostics go to stderr. The environment variable QNM_TOL
overrides the default certification tolerance of 1e-9.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import construct, files
from .channels import constant_channel, identity_channel, unitary_channel
from .design import certify_design, entropy_bound, rank_bound
from .linalg import maximally_mixed
from .nmes import EncryptionScheme, attack_report
from .weyl import pauli_ensemble, weyl

EXIT_OK = 0
EXIT_CERT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_TOL = 1e-9


def _default_tol() -> float:
    raw = os.environ.get("QNM_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"QNM_TOL is not a number: {raw!r}")


def _write_json(obj: dict, out_path: str | None):
    text = json.dumps(obj, indent=1)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_gen(args) -> int:
    if args.kind == "pauli":
        if args.p is None:
            raise ValueError("gen pauli requires --p")
        ensemble = pauli_ensemble(args.p, args.n or 1)
        meta = {"source": "pauli", "p": args.p, "n": args.n or 1}
    elif args.kind == "clifford":
        if args.p is None:
            raise ValueError("gen clifford requires --p")
        ensemble = construct.clifford_prime(args.p)
        meta = {"source": "clifford", "p": args.p}
    else:
        if args.d is None or args.n is None:
            raise ValueError("gen sampled requires --d and --n")
        cfg = construct.SamplerConfig(
            d=args.d, n_samples=args.n, seed=args.seed, source=args.source
        )
        ensemble = construct.sample_design(cfg)
        meta = {"source": args.source, "seed": args.seed, "n": args.n}
    try:
        files.save_ensemble(args.out, ensemble, meta)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {ensemble.size} unitaries (d={ensemble.d}) to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_certify(args) -> int:
    tol = args.tol if args.tol is not None else _default_tol()
    ensemble = files.load_ensemble(args.input)
    report = certify_design(ensemble, tol=tol)
    try:
        _write_json(
            files.certification_report_to_dict(report, files.file_digest(args.input)), args.out
        )
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.mode in ("trace", "both") and not report.passes_two_design:
        return EXIT_CERT_FAIL
    if args.mode in ("multiplicative", "both") and not report.passes_multiplicative:
        return EXIT_CERT_FAIL
    return EXIT_OK


def _parse_adversary(selector: str, d: int):
    if selector == "identity":
        return identity_channel(d)
    if selector.startswith("replace:"):
        arg = selector.split(":", 1)[1]
        if arg == "tau":
            return constant_channel(maximally_mixed(d))
        if arg.isdigit():
            j = int(arg)
            if j >= d:
                raise ValueError(f"replacement basis state {j} out of range for d={d}")
            state = np.zeros((d, d), dtype=complex)
            state[j, j] = 1.0
            return constant_channel(state)
        return constant_channel(files.load_matrix(arg, "state"))
    if selector.startswith("weyl:"):
        try:
            a, b = (int(x) for x in selector.split(":", 1)[1].split(","))
        except ValueError:
            raise ValueError(f"weyl adversary needs 'weyl:<a>,<b>', got {selector!r}")
        return unitary_channel(weyl(d, a, b))
    if selector.startswith("unitary:"):
        return unitary_channel(files.load_matrix(selector.split(":", 1)[1], "matrix"))
    return files.load_kraus_channel(selector)


def cmd_attack(args) -> int:
    scheme = EncryptionScheme(files.load_ensemble(args.scheme))
    adversary = _parse_adversary(args.adv, scheme.d)
    report = attack_report(scheme, adversary)
    try:
        _write_json(files.attack_report_to_dict(report, files.file_digest(args.scheme)), args.out)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_bounds(args) -> int:
    d, theta = args.d, args.theta
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if theta < 0:
        raise ValueError(f"theta must be nonnegative, got {theta}")
    status = EXIT_OK
    print(f"dimension d = {d}, theta = {theta}")
    print(f"minimum unitaries for an exact 2-design: {rank_bound(d)}")
    print(f"reference key lengths: 4*log2(d) = {4 * math.log2(d):.4f} bits, "
          f"5*log2(d) = {5 * math.log2(d):.4f} bits")
    if 0 < theta <= 0.5:
        n = construct.recommended_n(d, theta, args.delta)
        print(f"recommended sample count at delta = {args.delta}: N = {n}")
    else:
        print("recommended sample count: n/a (needs 0 < theta <= 1/2)")
    if theta <= 1 / math.e:
        print(f"key entropy bound: {entropy_bound(d, theta):.4f} bits")
    else:
        print(f"error: entropy bound needs theta <= 1/e, got {theta}", file=sys.stderr)
        status = EXIT_USAGE
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnm",
        description="Build, certify and attack non-malleable quantum encryption schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an ensemble file")
    gen.add_argument("kind", choices=["pauli", "clifford", "sampled"])
    gen.add_argument("--p", type=int, help="prime (pauli, clifford)")
    gen.add_argument("--n", type=int, help="qudit count (pauli) or sample count (sampled)")
    gen.add_argument("--d", type=int, help="dimension (sampled)")
    gen.add_argument("--seed", type=int, default=0, help="sampler seed (sampled)")
    gen.add_argument("--from", dest="source", choices=["clifford", "haar"],
                     default="clifford", help="sampling source (sampled)")
    gen.add_argument("-o", "--out", required=True, help="output ensemble file")

    cert = sub.add_parser("certify", help="certify an ensemble file as a 2-design")
    cert.add_argument("input", help="ensemble file")
    cert.add_argument("--tol", type=float, default=None,
                      help="pass/fail tolerance (default QNM_TOL or 1e-9)")
    cert.add_argument("--mode", choices=["trace", "multiplicative", "both"], default="trace")
    cert.add_argument("--out", default=None, help="write report here instead of stdout")

    atk = sub.add_parser("attack", help="simulate an adversary against a scheme")
    atk.add_argument("--scheme", required=True, help="ensemble file holding the keys")
    atk.add_argument("--adv", required=True,
                     help="identity | replace:<tau|j|file> | weyl:<a>,<b> | "
                          "unitary:<file> | <kraus file>")
    atk.add_argument("--out", default=None, help="write report here instead of stdout")

    bnd = sub.add_parser("bounds", help="print size and entropy bounds")
    bnd.add_argument("--d", type=int, required=True)
    bnd.add_argument("--theta", type=float, default=0.0)
    bnd.add_argument("--delta", type=float, default=0.01)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "gen": cmd_gen,
        "certify": cmd_certify,
        "attack": cmd_attack,
        "bounds": cmd_bounds,
    }[args.command]
    try:
        return handler(args)
    except ValueError as exc:  # includes JSON decode errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
