"""Command-line entry point: ``sunisb <command> --N ... --irrep ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import checks
from .coherent import coherent_state, euler_cross_check, identity_resolution, irrep_rep
from .fock import to_csv, to_json
from .isb import (
    ConstructionError,
    InvalidIrrepError,
    IrrepLabel,
    basis_to_json,
    irrep_basis,
    weyl_dimension,
)
from .manifold import frame_from_csv, frame_to_csv, haar_sample

log = logging.getLogger("sunisb")

EXIT_OK, EXIT_CONFIG, EXIT_FAIL = 0, 1, 2


def _write(out, text):
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _irrep(args) -> IrrepLabel:
    return IrrepLabel.parse(args.irrep, args.N)


def cmd_basis(args) -> int:
    irrep = _irrep(args)
    expected = weyl_dimension(irrep)
    try:
        states = irrep_basis(irrep)
    except ConstructionError as exc:
        print(f"dim=? weyl={expected} MISMATCH ({exc})")
        return EXIT_FAIL
    out = args.out or f"basis_su{irrep.N}_{'-'.join(map(str, irrep.rows))}.json"
    _write(out, basis_to_json(irrep, states))
    ok = len(states) == expected
    print(f"dim={len(states)} weyl={expected} {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.all:
        labels = checks.default_sweep()
    else:
        labels = [_irrep(args)]
    reports = []
    for lab in labels:
        log.info("verifying SU(%d) %s", lab.N, lab)
        reports.extend(checks.verify_irrep(lab))
    for r in reports:
        status = "PASS" if r["pass"] else "FAIL"
        extra = ""
        if r["check"] == "quadratic_casimir":
            extra = f" value={r['value']:g}"
        elif r.get("exact"):
            extra = " exact"
        print(f"SU({r['N']}) {r['irrep']} {r['check']}: {status} max_residual={r['max_residual']:.3g}{extra}")
    if args.out:
        _write(args.out, _dump(reports))
    return EXIT_OK if all(r["pass"] for r in reports) else EXIT_FAIL


def cmd_coherent(args) -> int:
    irrep = _irrep(args)
    point = frame_from_csv(Path(args.frame).read_text()) if args.frame else haar_sample(irrep.N, args.seed)
    st = coherent_state(irrep, point, normalize=args.normalize)
    comps = st.components(irrep_rep(irrep))
    if args.format == "csv":
        text = to_csv(st.vector)
    else:
        doc = {
            "irrep": list(irrep.rows),
            "seed": None if args.frame else args.seed,
            "normalized": st.normalized,
            "frame": [[[float(x.real), float(x.imag)] for x in vec] for vec in point.z],
            "state": to_json(st.vector),
            "components": [[float(c.real), float(c.imag)] for c in comps],
        }
        text = _dump(doc)
    _write(args.out, text)
    if args.frame_out:
        Path(args.frame_out).write_text(frame_to_csv(point))
    return EXIT_OK


def cmd_resolve_id(args) -> int:
    irrep = _irrep(args)
    rep = identity_resolution(irrep, args.samples, args.seed, threads=args.threads)
    rep.pop("estimate")
    text = _dump(rep)
    _write(args.out, text)
    if args.out:
        print(f"c={rep['c']:.6g} max_offdiag={rep['max_offdiag']:.3g} "
              f"max_diag_dev={rep['max_diag_dev']:.3g} {'PASS' if rep['pass'] else 'FAIL'}")
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_euler_check(args) -> int:
    if args.N != 2:
        raise InvalidIrrepError("euler-check is defined for SU(2) only")
    irrep = _irrep(args)
    j = irrep.rows[0] / 2
    rng = np.random.default_rng(args.seed)
    trials = []
    for _ in range(args.samples):
        theta, phi, psi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi)
        dev, phase = euler_cross_check(j, theta, phi, psi)
        trials.append({"theta": theta, "phi": phi, "psi": psi, "max_dev": dev,
                       "phase": [phase.real, phase.imag]})
    worst = max(t["max_dev"] for t in trials)
    doc = {"j": j, "trials": trials, "max_dev": worst, "pass": worst < 1e-10, "seed": args.seed}
    _write(args.out, _dump(doc))
    return EXIT_OK if doc["pass"] else EXIT_FAIL


COMMANDS = {
    "basis": cmd_basis,
    "verify": cmd_verify,
    "coherent": cmd_coherent,
    "resolve-id": cmd_resolve_id,
    "euler-check": cmd_euler_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=2, help="rank parameter of SU(N)")
    common.add_argument("--irrep", default="1", help="comma-separated row lengths, e.g. 2,1")
    common.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed")
    common.add_argument("--out", default=None, help="output file ('-' for stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=1, help="advisory worker count")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="sunisb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common], help="build and save an irrep basis")
    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--all", action="store_true", help="sweep N in {2,3,4}, sum n_i <= 4")
    p = sub.add_parser("coherent", parents=[common], help="evaluate a coherent state")
    p.add_argument("--frame", help="frame CSV (i, alpha, re, im); default: Haar sample from --seed")
    p.add_argument("--frame-out", help="write the frame used as CSV")
    p.add_argument("--normalize", action="store_true")
    p = sub.add_parser("resolve-id", parents=[common], help="Monte Carlo resolution of identity")
    p.add_argument("--samples", type=int, default=20000)
    p = sub.add_parser("euler-check", parents=[common], help="SU(2) Euler-angle cross-check")
    p.add_argument("--samples", type=int, default=10, help="number of random angle triples")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be a 64-bit unsigned integer", file=sys.stderr)
        return EXIT_CONFIG
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except (InvalidIrrepError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
