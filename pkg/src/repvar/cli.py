"""Command-line front end: compute invariants, verify a backend against
its independent oracle, and inspect conjugacy classes.

Exit codes are a stable contract: 0 success, 2 input validation failure,
3 datum inconsistency (non-exact normalization division), 4 verification
mismatch.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Sequence

from .affc import affc_closed_form, affc_datum, xk_epoly
from .finite_group import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    GroupTooLarge,
    NotAGroup,
    NotConjugationClosed,
    brute_force_count,
    conjugacy_classes,
    conjugacy_closure,
    load_group,
    to_tqft_datum,
)
from .poly import LaurentPoly, NonExactDivision, PolyParseError
from .tqft import (
    InvalidDatum,
    SurfaceSpec,
    UnknownPunctureLabel,
    assemble_word,
    epoly_from_word,
    epoly_rep_variety,
    insert_identity_tubes,
    load_datum,
)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVISION = 3
EXIT_VERIFY = 4

_INPUT_ERRORS = (
    NotAGroup,
    GroupTooLarge,
    NotConjugationClosed,
    InvalidDatum,
    PolyParseError,
    UnknownPunctureLabel,
    ValueError,
    OSError,
    json.JSONDecodeError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repvar",
        description="E-polynomials of surface-group representation varieties "
        "by exact transfer-matrix evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser(
        "compute", help="compute the E-polynomial of one decorated surface"
    )
    _add_backend_options(compute)
    compute.add_argument("--genus", type=int, required=True, help="genus, >= 0")
    compute.add_argument(
        "--puncture",
        action="append",
        default=[],
        metavar="SPEC",
        help="add one puncture; finite backend: rep=INDEX or elements=i,j,k "
        "(rep= closes the class automatically); custom backend: a tube label "
        "from the datum file; repeatable, order preserved",
    )
    compute.add_argument(
        "--format",
        choices=["q-text", "uv-text", "json"],
        default="q-text",
        help="output form (default: q form when the result is diagonal)",
    )

    verify = sub.add_parser(
        "verify", help="cross-check a backend against its independent oracle"
    )
    _add_backend_options(verify)
    verify.add_argument("--max-genus", type=int, default=2)
    verify.add_argument(
        "--max-punctures", type=int, default=2, help="finite backend only"
    )
    verify.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="brute-force operation budget; exceeding it marks a check SKIP",
    )

    classes = sub.add_parser(
        "classes", help="print the conjugacy classes of a finite group"
    )
    classes.add_argument("--group", required=True, help="group JSON file")

    return parser


def _add_backend_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--backend", choices=["finite", "affc", "custom"], required=True
    )
    sub.add_argument("--group", help="group JSON file (finite backend)")
    sub.add_argument("--datum", help="datum JSON file (custom backend)")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "compute": _cmd_compute,
        "verify": _cmd_verify,
        "classes": _cmd_classes,
    }[args.command]
    try:
        return handler(args)
    except NonExactDivision as exc:
        print(f"error: datum is inconsistent: {exc}", file=sys.stderr)
        return EXIT_DIVISION
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


# ----------------------------------------------------------------------
# compute
# ----------------------------------------------------------------------


def _parse_puncture_spec(spec: str) -> tuple[str, object]:
    if spec.startswith("rep="):
        return ("rep", int(spec[4:]))
    if spec.startswith("elements="):
        items = [int(x) for x in spec[len("elements="):].split(",") if x != ""]
        if not items:
            raise ValueError(f"empty element list in puncture spec {spec!r}")
        return ("elements", items)
    if "=" in spec:
        raise ValueError(f"unknown puncture spec {spec!r}; use rep=, elements= or a label")
    return ("label", spec)


def _build_datum_and_spec(args) -> tuple:
    puncture_specs = [_parse_puncture_spec(s) for s in args.puncture]

    if args.backend == "finite":
        if not args.group:
            raise ValueError("--backend finite requires --group")
        group = load_group(args.group)
        subsets = {}
        labels = []
        for i, (kind, value) in enumerate(puncture_specs, start=1):
            if kind == "rep":
                subset = conjugacy_closure(group, [value])
            elif kind == "elements":
                subset = tuple(sorted(set(value)))
            else:
                raise ValueError(
                    "finite backend punctures must use rep= or elements="
                )
            label = f"p{i}"
            subsets[label] = subset
            labels.append(label)
        datum = to_tqft_datum(group, subsets)
        return datum, SurfaceSpec(args.genus, tuple(labels))

    if any(kind != "label" for kind, _ in puncture_specs):
        raise ValueError("rep= and elements= punctures require --backend finite")
    labels = tuple(value for _, value in puncture_specs)

    if args.backend == "affc":
        return affc_datum(), SurfaceSpec(args.genus, labels)

    if not args.datum:
        raise ValueError("--backend custom requires --datum")
    return load_datum(args.datum), SurfaceSpec(args.genus, labels)


def _format_poly(poly: LaurentPoly, fmt: str) -> str:
    if fmt == "uv-text":
        return poly.to_text(force_uv=True)
    if fmt == "json":
        return json.dumps(poly.to_json_terms())
    return poly.to_text()


def _cmd_compute(args) -> int:
    if args.genus < 0:
        raise ValueError("--genus must be >= 0")
    datum, spec = _build_datum_and_spec(args)
    result = epoly_rep_variety(datum, spec)
    print(_format_poly(result, args.format))
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


class _Report:
    def __init__(self):
        self.passed = 0
        self.failed = 0
        self.skipped = 0

    def record(self, description: str, status: str, detail: str | None = None) -> None:
        print(f"CHECK {description} ... {status}")
        if detail:
            print(f"  {detail}")
        if status == "PASS":
            self.passed += 1
        elif status == "SKIP":
            self.skipped += 1
        else:
            self.failed += 1

    def finish(self) -> int:
        print(
            f"SUMMARY: {self.passed} passed, {self.failed} failed, "
            f"{self.skipped} skipped"
        )
        return EXIT_OK if self.failed == 0 else EXIT_VERIFY


def _cmd_verify(args) -> int:
    if args.max_genus < 0:
        raise ValueError("--max-genus must be >= 0")
    report = _Report()
    if args.backend == "affc":
        _verify_affc(args, report)
    elif args.backend == "finite":
        _verify_finite(args, report)
    else:
        _verify_custom(args, report)
    return report.finish()


def _verify_affc(args, report: _Report) -> None:
    datum = affc_datum()
    for genus in range(1, max(args.max_genus, 1) + 1):
        engine = epoly_rep_variety(datum, SurfaceSpec(genus))
        expected = affc_closed_form(genus)
        desc = f"affc closed-form genus={genus}"
        if engine == expected:
            report.record(desc, "PASS")
        else:
            report.record(
                desc, "FAIL", f"counterexample: engine={engine} closed-form={expected}"
            )
        recursion = xk_epoly(2 * genus)
        desc = f"affc recursion genus={genus}"
        if engine == recursion:
            report.record(desc, "PASS")
        else:
            report.record(
                desc, "FAIL", f"counterexample: engine={engine} recursion={recursion}"
            )


def _verify_finite(args, report: _Report) -> None:
    if not args.group:
        raise ValueError("--backend finite requires --group")
    group = load_group(args.group)
    classes = conjugacy_classes(group)
    class_labels = {i: f"c{i}" for i in range(len(classes))}
    datum = to_tqft_datum(
        group, {class_labels[i]: classes.members[i] for i in range(len(classes))}
    )
    for genus in range(args.max_genus + 1):
        for s in range(args.max_punctures + 1):
            for combo in itertools.combinations_with_replacement(
                range(len(classes)), s
            ):
                spec = SurfaceSpec(genus, tuple(class_labels[i] for i in combo))
                desc = (
                    f"finite genus={genus} punctures="
                    f"[{', '.join(f'class {i}' for i in combo)}]"
                )
                try:
                    expected = brute_force_count(
                        group,
                        genus,
                        [classes.members[i] for i in combo],
                        budget=args.budget,
                    )
                except BudgetExceeded as exc:
                    report.record(desc, "SKIP", str(exc))
                    continue
                try:
                    engine = epoly_rep_variety(datum, spec)
                except NonExactDivision as exc:
                    report.record(desc, "FAIL", f"counterexample: {exc}")
                    continue
                if engine == LaurentPoly.const(expected):
                    report.record(desc, "PASS")
                else:
                    report.record(
                        desc,
                        "FAIL",
                        f"counterexample: engine={engine} brute-force={expected}",
                    )


def _verify_custom(args, report: _Report) -> None:
    if not args.datum:
        raise ValueError("--backend custom requires --datum")
    datum = load_datum(args.datum)
    for genus in range(args.max_genus + 1):
        spec = SurfaceSpec(genus)
        desc = f"custom normalization genus={genus}"
        try:
            result = epoly_rep_variety(datum, spec)
        except NonExactDivision as exc:
            report.record(desc, "FAIL", f"counterexample: genus={genus}: {exc}")
            continue
        if genus == 0 and result != LaurentPoly.one():
            report.record(desc, "FAIL", f"counterexample: sphere value {result} != 1")
            continue
        report.record(desc, "PASS")
        if datum.identity_tube is not None:
            word = insert_identity_tubes(assemble_word(spec), 1)
            desc = f"custom cylinder-insertion genus={genus}"
            try:
                padded = epoly_from_word(datum, word)
            except NonExactDivision as exc:
                report.record(desc, "FAIL", f"counterexample: genus={genus}: {exc}")
                continue
            if padded == result:
                report.record(desc, "PASS")
            else:
                report.record(
                    desc,
                    "FAIL",
                    f"counterexample: padded={padded} unpadded={result}",
                )


# ----------------------------------------------------------------------
# classes
# ----------------------------------------------------------------------


def _cmd_classes(args) -> int:
    group = load_group(args.group)
    classes = conjugacy_classes(group)
    print(f"group of order {group.order} with {len(classes)} conjugacy classes")
    for i, members in enumerate(classes.members):
        print(
            f"class {i}: size {len(members)}, "
            f"centralizer {classes.centralizer_orders[i]}, "
            f"representative {members[0]}, "
            f"elements [{', '.join(str(m) for m in members)}]"
        )
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
