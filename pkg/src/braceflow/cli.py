"""Command-line interface.

Exit codes: 0 on success, 1 on usage or parse errors, 2 on mathematical
violations.  Output is byte-identical for identical inputs and flags:
all randomness is seeded (--seed), scalars print canonically, and files
are written with sorted keys.
"""

import argparse
import json
import sys

from . import bch as bch_mod
from . import fileio, flows, limits
from .brace import (GradedBrace, check_fbrace, check_group, check_left_brace,
                    radical_chains)
from .errors import AlgebraError, AlgebraFileError, ValidationFailure
from .free_expansion import doubling_matrix
from .prelie import PreLieAlgebra, check_prelie_identity, nilpotency_index
from .sampling import DEFAULT_SEED
from .scalars import Q


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _field_spec(text):
    if text == "Q":
        return "Q"
    try:
        return {"p": int(text)}
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected Q or a prime, got {text!r}")


def _load(path, field_override, validate=True):
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from None
    if field_override is not None:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraFileError(f"not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise AlgebraFileError("top level must be an object")
        doc["field"] = field_override
        text = json.dumps(doc)
    return fileio.loads(text, validate=validate)


def _fail(violation):
    print(f"FAIL: {violation}")
    return 2


def cmd_validate(args):
    obj = _load(args.path, args.field, validate=False)
    print(f"kind: {'prelie' if isinstance(obj, PreLieAlgebra) else 'brace'}")
    print(f"field: {obj.field}")
    print(f"dim: {obj.dim}")
    if isinstance(obj, PreLieAlgebra):
        viol = check_prelie_identity(obj)
        if viol is not None:
            return _fail(viol)
        print("pre-Lie identity: PASS")
        s = nilpotency_index(obj)
        if s is None:
            print("FAIL: algebra is not nilpotent")
            return 2
        print(f"nilpotent: class {s}")
        p = obj.field.characteristic
        if p and p <= s:
            print(f"FAIL: characteristic {p} does not exceed the class {s}")
            return 2
    else:
        for name, checker in (("left-brace laws", check_left_brace),
                              ("group laws", check_group),
                              ("F-linearity", check_fbrace)):
            viol = checker(obj, trials=args.trials, seed=args.seed)
            if viol is not None:
                return _fail(viol)
            print(f"{name}: PASS")
        report = radical_chains(obj)
        _print_chains(report)
        if not report.strongly_nilpotent:
            print("FAIL: brace is not strongly nilpotent")
            return 2
    print("VALID")
    return 0


def cmd_to_brace(args):
    alg = _load(args.path, args.field)
    if not isinstance(alg, PreLieAlgebra):
        raise AlgebraFileError("to-brace expects a prelie file")
    B = flows.to_brace(alg, trials=args.trials, seed=args.seed)
    fileio.write_file(B, args.out)
    print(f"wrote {args.out} (brace, dim {B.dim}, class {B.class_bound})")
    return 0


def cmd_to_prelie(args):
    B = _load(args.path, args.field)
    if not isinstance(B, GradedBrace):
        raise AlgebraFileError("to-prelie expects a brace file")
    alg = limits.to_prelie(B)
    fileio.write_file(alg, args.out)
    print(f"wrote {args.out} (prelie, dim {alg.dim}, class {alg.nilpotency_class})")
    return 0


def cmd_roundtrip(args):
    obj = _load(args.path, args.field)
    if isinstance(obj, PreLieAlgebra):
        viol = limits.roundtrip_prelie(obj, trials=args.trials, seed=args.seed)
        label = "pre-Lie round trip"
    else:
        viol = limits.roundtrip_brace(obj, trials=args.trials, seed=args.seed)
        label = "brace round trip"
    if viol is not None:
        return _fail(viol)
    print(f"{label}: PASS")
    return 0


def _print_chains(report):
    rows = (("left", report.left, report.left_index, "nilpotent"),
            ("right", report.right, report.right_index, "nilpotent"),
            ("strong", report.strong, report.strong_index, "strongly nilpotent"))
    for name, chain, index, label in rows:
        dims = ",".join(str(d) for d in report.dims(chain))
        verdict = f"{label} index {index}" if index else f"not {label}"
        print(f"{name}: {dims} {verdict}")


def cmd_chains(args):
    obj = _load(args.path, args.field)
    if isinstance(obj, PreLieAlgebra):
        obj = flows.to_brace(obj, seed=args.seed)
    _print_chains(radical_chains(obj))
    return 0


def cmd_bch(args):
    alg = _load(args.path, args.field)
    if not isinstance(alg, PreLieAlgebra):
        raise AlgebraFileError("bch expects a prelie file")
    viol = bch_mod.verify_flows_bch(alg, trials=args.trials, seed=args.seed)
    if viol is not None:
        return _fail(viol)
    print(f"flows-BCH identity: PASS (class {alg.nilpotency_class}, "
          f"trials {args.trials})")
    return 0


def cmd_doubling_matrix(args):
    m, words = doubling_matrix(args.degree)
    field = Q
    print(f"degree bound: {args.degree}")
    print("words: " + " ".join(str(w) for w in words))
    for i, row in enumerate(m.rows):
        print(f"row {i}: " + " ".join(field.to_str(e) for e in row))
    print(f"upper triangular: {'yes' if m.is_upper_triangular() else 'NO'}")
    diag = m.diagonal()
    print("diagonal: " + " ".join(field.to_str(e) for e in diag))
    print(f"diagonal entries equal to 2: {sum(1 for e in diag if e == 2)}")
    expected = all(e == 2 ** w.count('x') for e, w in zip(diag, words))
    print(f"diagonal matches 2^(x count): {'yes' if expected else 'NO'}")
    if not (m.is_upper_triangular() and expected):
        return 2
    return 0


def build_parser():
    parser = _Parser(prog="braceflow",
                     description="exact pre-Lie algebra / brace correspondence")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *, path=True, out=False, degree=False):
        p = sub.add_parser(name)
        if path:
            p.add_argument("path", help="algebra or brace file")
        if out:
            p.add_argument("--out", required=True, help="output file")
        if degree:
            p.add_argument("--degree", type=int, required=True,
                           help="degree bound (>= 2)")
        p.add_argument("--field", type=_field_spec, default=None,
                       help="reinterpret scalars over Q or GF(p)")
        p.add_argument("--trials", type=int, default=20,
                       help="seeded random trials for checks")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate)
    add("to-brace", cmd_to_brace, out=True)
    add("to-prelie", cmd_to_prelie, out=True)
    add("roundtrip", cmd_roundtrip)
    add("chains", cmd_chains)
    add("bch", cmd_bch)
    add("doubling-matrix", cmd_doubling_matrix, path=False, degree=True)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        return args.func(args)
    except AlgebraFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationFailure as exc:
        print(f"FAIL: {exc}")
        return 2
    except AlgebraError as exc:
        print(f"FAIL: {exc}")
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
