"""Command-line front end.

Subcommands: classify, enumerate, act, bracket, conjugator, selfcheck.
Elements travel as JSON documents whose leaves are Laurent literals:

    {"n": 2, "matrix": [["0", "t"], ["0", "0"]], "c": "0", "d": "0"}
    {"z": "1", "matrix": [["1", "0"], ["t^-1", "1"]]}

Exit codes: 0 success, 1 selfcheck failure, 2 parse/validation error,
3 not nilpotent, 4 precision exhausted, 5 not conjugate.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from .affine import AffineElement, GroupElement, adjoint_act, bracket
from .errors import (
    AffnilError,
    LaurentSyntaxError,
    NotConjugate,
    NotNilpotent,
    NotTraceless,
    NotUnimodular,
    PrecisionExhausted,
    ShapeMismatch,
)
from .gaussian import GaussianRational, gr
from .laurent import (
    DEFAULT_WORKING_PREC,
    LaurentElement,
    format_laurent,
    format_scalar,
    parse_laurent,
    parse_scalar,
)
from .matk import MatK
from .normalform import OrbitLabel, read_quasi_jordan
from .orbits import classify, conjugator_quasi_jordan, enumerate_orbits
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_SELFCHECK = 1
EXIT_PARSE = 2
EXIT_NOT_NILPOTENT = 3
EXIT_PRECISION = 4
EXIT_NOT_CONJUGATE = 5


class DocumentError(ValueError):
    """Malformed input document."""


# -- documents ----------------------------------------------------------------


def _load_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError(f"{path}: document must be a JSON object")
    return doc


def _parse_matrix(doc: Dict[str, Any], path: str) -> MatK:
    matrix = doc.get("matrix")
    if not isinstance(matrix, list) or not matrix:
        raise DocumentError(f"{path}: missing matrix")
    n = doc.get("n", len(matrix))
    if n != len(matrix) or any(not isinstance(r, list) or len(r) != n for r in matrix):
        raise DocumentError(f"{path}: matrix must be {n}x{n}")
    rows: List[List[LaurentElement]] = []
    for i, row in enumerate(matrix):
        out = []
        for j, lit in enumerate(row):
            try:
                out.append(parse_laurent(str(lit)))
            except LaurentSyntaxError as exc:
                raise DocumentError(f"{path}: entry ({i},{j}): {exc}") from exc
        rows.append(out)
    return MatK(rows)


def load_element(path: str) -> AffineElement:
    doc = _load_json(path)
    mat = _parse_matrix(doc, path)
    try:
        c = parse_scalar(str(doc.get("c", "0")))
        d = parse_scalar(str(doc.get("d", "0")))
    except LaurentSyntaxError as exc:
        raise DocumentError(f"{path}: scalar field: {exc}") from exc
    try:
        return AffineElement(mat, c, d)
    except NotTraceless as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def load_group(path: str, working_prec: int) -> GroupElement:
    doc = _load_json(path)
    mat = _parse_matrix(doc, path)
    try:
        z = parse_scalar(str(doc.get("z", "1")))
    except LaurentSyntaxError as exc:
        raise DocumentError(f"{path}: scalar field: {exc}") from exc
    try:
        return GroupElement.checked(mat, z, working_prec)
    except NotUnimodular as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def matrix_doc(mat: MatK) -> List[List[str]]:
    return [[format_laurent(e) for e in row] for row in mat.rows]


def element_doc(elem: AffineElement) -> Dict[str, Any]:
    return {
        "n": elem.n,
        "matrix": matrix_doc(elem.mat),
        "c": format_scalar(elem.c_coef),
        "d": format_scalar(elem.d_coef),
    }


def group_doc(g: GroupElement) -> Dict[str, Any]:
    return {"z": format_scalar(g.z), "matrix": matrix_doc(g.g)}


def _label_text(label: OrbitLabel) -> str:
    parts = ",".join(str(p) for p in label.partition)
    return f"partition=[{parts}] k={label.k} level={format_scalar(label.level)}"


def _label_json(label: OrbitLabel) -> Dict[str, Any]:
    return {
        "partition": list(label.partition),
        "k": label.k,
        "level": format_scalar(label.level),
    }


def _kappa(args) -> Optional[GaussianRational]:
    return gr(1) if args.form == "trace" else None


# -- subcommands ----------------------------------------------------------------


def _cmd_classify(args) -> int:
    elem = load_element(args.file)
    label = classify(elem, args.prec, _kappa(args))
    if args.json:
        print(json.dumps(_label_json(label)))
    else:
        print(_label_text(label))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    try:
        level = parse_scalar(args.level)
    except LaurentSyntaxError as exc:
        raise DocumentError(f"--level: {exc}") from exc
    orbits = enumerate_orbits(args.n, level)
    fmt = "json" if args.json else args.format
    if fmt == "json":
        payload = {
            "n": args.n,
            "level": format_scalar(level),
            "orbits": [
                {**_label_json(label), "rep": matrix_doc(rep)}
                for label, rep in orbits
            ],
        }
        print(json.dumps(payload))
    else:
        for label, rep in orbits:
            rows = ",".join(
                "[" + ",".join(format_laurent(e) for e in row) + "]"
                for row in rep.rows
            )
            print(f"{_label_text(label)} rep=[{rows}]")
    return EXIT_OK


def _cmd_act(args) -> int:
    g = load_group(args.group_file, args.prec)
    elem = load_element(args.elem_file)
    result = adjoint_act(g, elem, args.prec, _kappa(args))
    print(json.dumps(element_doc(result), indent=None if args.json else 2))
    return EXIT_OK


def _cmd_bracket(args) -> int:
    a = load_element(args.a_file)
    b = load_element(args.b_file)
    result = bracket(a, b, _kappa(args))
    print(json.dumps(element_doc(result), indent=None if args.json else 2))
    return EXIT_OK


def _cmd_conjugator(args) -> int:
    forms = []
    for path in (args.from_file, args.to_file):
        elem = load_element(path)
        form = read_quasi_jordan(elem.mat)
        if form is None:
            raise DocumentError(f"{path}: matrix is not quasi-Jordan")
        forms.append(form)
    g = conjugator_quasi_jordan(forms[0], forms[1], args.prec)
    print(json.dumps(group_doc(g), indent=None if args.json else 2))
    return EXIT_OK


def _cmd_selfcheck(args) -> int:
    report, ok = run_selfcheck(args.seed, args.cases, args.prec)
    total_failures = 0
    for name, (count, failures) in report.items():
        status = "ok" if not failures else f"FAILED ({len(failures)})"
        print(f"{name:>24}: {count:4d} cases  {status}")
        total_failures += len(failures)
        for line in failures[:3]:
            print(f"{'':>26}counterexample: {line}")
    print(f"selfcheck: {'all suites passed' if ok else f'{total_failures} failures'}")
    return EXIT_OK if ok else EXIT_SELFCHECK


# -- argument parsing ----------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--prec",
        type=int,
        default=argparse.SUPPRESS,
        help=f"working precision for truncated series (default {DEFAULT_WORKING_PREC})",
    )
    parser.add_argument(
        "--form",
        choices=("killing", "trace"),
        default=argparse.SUPPRESS,
        help="bilinear form normalization (default killing, i.e. 2n*tr)",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="machine-readable output",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affnil",
        description="Classify nilpotent orbits of affine sl_n over exact Laurent series.",
    )
    parser.set_defaults(prec=DEFAULT_WORKING_PREC, form="killing", json=False)
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="orbit label of an element document")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("enumerate", help="canonical representatives for a given n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--level", default="0", help="level attached to each label")
    p.add_argument("--format", choices=("table", "json"), default="table")
    _add_common(p)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("act", help="adjoint action of a group document on an element")
    p.add_argument("group_file")
    p.add_argument("elem_file")
    _add_common(p)
    p.set_defaults(fn=_cmd_act)

    p = sub.add_parser("bracket", help="Lie bracket of two element documents")
    p.add_argument("a_file")
    p.add_argument("b_file")
    _add_common(p)
    p.set_defaults(fn=_cmd_bracket)

    p = sub.add_parser("conjugator", help="explicit conjugator between quasi-Jordan documents")
    p.add_argument("from_file")
    p.add_argument("to_file")
    _add_common(p)
    p.set_defaults(fn=_cmd_conjugator)

    p = sub.add_parser("selfcheck", help="run the bundled invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    _add_common(p)
    p.set_defaults(fn=_cmd_selfcheck)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (DocumentError, LaurentSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotNilpotent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_NILPOTENT
    except PrecisionExhausted as exc:
        print(
            f"error: {exc}; retry with a larger --prec (current {args.prec})",
            file=sys.stderr,
        )
        return EXIT_PRECISION
    except (NotConjugate, ShapeMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONJUGATE
    except AffnilError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
