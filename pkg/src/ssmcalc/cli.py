"""Command-line interface.

    ssmcalc weyl    --type B2
    ssmcalc table   --type A2 --parabolic 2
    ssmcalc csm     --type A2 --cells s1s2
    ssmcalc chi     --type A1 --cells s1,s1,s1
    ssmcalc constants --type A1 --cells s1,s1
    ssmcalc verify  --type A2 --parabolic ""
    ssmcalc oracle-check --n 3

Exit status: 0 on success, 1 when a verification finds a violation, 2 on
bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cache import Cache, default_cache_dir, fingerprint
from .classes import Space, SpaceError, make_space, space_from_group
from .euler import (MatrixReport, TripleReport, TupleReport, chi_multi_intersection,
                    default_jobs, expected_dim, structure_constants, verify_nfold_sign,
                    verify_orthogonality, verify_positivity)
from .oracle import CrossCheckReport, proj_cross_check
from .poly import fraction_text
from .weyl import WeylError, WeylGroup, build_root_system, parse_cartan_json

log = logging.getLogger("ssmcalc")

COMMANDS = ("weyl", "table", "csm", "ssm", "chi", "constants", "verify", "oracle-check")


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# report emission
# --------------------------------------------------------------------------

def _num(x) -> int | str:
    """Integers bare, other rationals as "num/den"."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else fraction_text(x)
    return x


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_num(x) for x in row])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


TRIPLE_COLUMNS = ("lambda", "mu", "nuprime", "a", "d", "E", "status")


def triple_rows(report: TripleReport) -> list[tuple]:
    w = report.words
    return [(w[e.lam], w[e.mu], w[e.nuprime], e.a, e.d, e.E, e.status) for e in report.entries]


def report_emit(report, fmt: str = "json") -> str:
    """Render a report deterministically as JSON or CSV."""
    if fmt not in ("json", "csv"):
        raise InputError(f"unknown format {fmt!r}")
    if report is None:
        return _json([]) if fmt == "json" else ""
    if isinstance(report, TripleReport):
        rows = triple_rows(report)
        if fmt == "csv":
            return _csv(TRIPLE_COLUMNS, rows)
        return _json({"space": report.space, "triples": len(rows),
                      "violations": len(report.violations),
                      "entries": [dict(zip(TRIPLE_COLUMNS, map(_num, r))) for r in rows]})
    if isinstance(report, MatrixReport):
        if fmt == "csv":
            return _csv(["lambda\\nu", *report.labels],
                        [[lab, *row] for lab, row in zip(report.labels, report.matrix)])
        return _json({"space": report.space, "labels": report.labels, "matrix": report.matrix,
                      "violations": [list(v) for v in report.violations]})
    if isinstance(report, TupleReport):
        w = report.words
        rows = [("|".join(w[c] for c in e.cells), e.chi, e.d, e.signed, e.status)
                for e in report.entries]
        cols = ("cells", "chi", "d", "signed", "status")
        if fmt == "csv":
            return _csv(cols, rows)
        return _json({"space": report.space, "n": report.n, "sampled": report.sampled,
                      "tuples": len(rows), "violations": len(report.violations),
                      "entries": [dict(zip(cols, r)) for r in rows]})
    if isinstance(report, CrossCheckReport):
        if fmt == "csv":
            return _csv(("cells", "pipeline", "oracle"),
                        [("|".join(c), got, exp) for c, got, exp in report.mismatches])
        return _json({"n": report.n, "checked": report.checked,
                      "mismatches": [{"cells": list(c), "pipeline": g, "oracle": e}
                                     for c, g, e in report.mismatches]})
    if isinstance(report, list):
        if fmt == "json":
            return _json(report)
        if not report:
            return ""
        header = list(report[0])
        return _csv(header, [[r[k] for k in header] for r in report])
    raise TypeError(f"cannot emit {type(report).__name__}")


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

def _parse_parabolic(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(sorted({int(x) for x in text.replace(" ", "").split(",") if x}))
    except ValueError as exc:
        raise InputError(f"bad --parabolic {text!r}") from exc


def _space(args) -> Space:
    parabolic = _parse_parabolic(args.parabolic)
    if args.cartan:
        text = args.cartan
        if Path(text).exists():
            text = Path(text).read_text(encoding="utf-8")
        group = WeylGroup(build_root_system(parse_cartan_json(text), label="custom"))
        return space_from_group(group, parabolic)
    if not args.type:
        raise InputError("--type (or --cartan) is required")
    return make_space(args.type, parabolic)


def _cells(space: Space, text: str | None, *, required: bool = False) -> list[int]:
    if not text:
        if required:
            raise InputError("--cells is required")
        return list(space.basis)
    return [space.cell(word) for word in text.split(",")]


def _class_doc(space: Space, kind: str, classes: dict[int, object], fmt: str) -> str:
    if fmt == "csv":
        rows = [(space.word(w), space.word(u), c) for w, cls in classes.items() for u, c in cls.items()]
        return _csv(("cell", "basis", "coefficient"), rows)
    return _json({"space": space.describe(), "kind": kind, "fingerprint": fingerprint(space),
                  "classes": {space.word(w): [[space.word(u), fraction_text(c)] for u, c in cls.items()]
                              for w, cls in classes.items()}})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssmcalc", description="CSM/SSM classes of Schubert cells")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", help="Lie type such as A3, B2, G2")
        p.add_argument("--cartan", help="Cartan matrix as a JSON integer array (or a file containing one)")
        p.add_argument("--parabolic", default="", help="comma list of simple roots generating W_P")
        p.add_argument("--cells", help="comma-separated reduced words, e.g. s1s2,s1,e")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--out", choices=("json", "csv"), default="json")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--max-tuples", type=int, default=None, help="sampling bound for n-fold sweeps")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args, stdout)
    except (InputError, WeylError, SpaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


def _dispatch(args, stdout) -> int:
    if args.command == "oracle-check":
        if args.n is None or args.n < 1:
            raise InputError("oracle-check needs --n >= 1")
        report = proj_cross_check(args.n)
        stdout.write(report_emit(report, args.out))
        return 0 if report.ok else 1

    space = _space(args)
    cache_dir = args.cache_dir or default_cache_dir()
    cache = Cache(cache_dir) if cache_dir else None
    if cache:
        cache.warm(space)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    if jobs < 1:
        raise InputError("--jobs must be positive")
    status = 0
    fmt = args.out

    if args.command == "weyl":
        g = space.group
        rows = [{"index": w.id, "word": str(w), "length": w.length,
                 "min_rep": w.id in space.basis} for w in g]
        if fmt == "json":
            out = _json({"type": space.rs.label, "rank": space.rs.rank, "order": len(g),
                         "positive_roots": [list(r) for r in space.rs.positive_roots],
                         "parabolic": list(space.parabolic), "dim": space.dim,
                         "elements": rows})
        else:
            out = report_emit(rows, "csv")
    elif args.command == "table":
        space.table.build_all()
        rows = []
        for u in space.basis:
            for v in space.basis:
                for w, c in sorted(space.table.product(u, v).items()):
                    rows.append({"u": space.word(u), "v": space.word(v), "w": space.word(w), "c": c})
        if fmt == "json":
            out = _json({"space": space.describe(), "fingerprint": fingerprint(space), "constants": rows})
        else:
            out = report_emit(rows, "csv") or "u,v,w,c\n"
    elif args.command in ("csm", "ssm"):
        cells = _cells(space, args.cells)
        get = space.csm_cell if args.command == "csm" else space.ssm_cell
        classes = {w: dict(get(w).items()) for w in cells}
        out = _class_doc(space, args.command, classes, fmt)
    elif args.command == "chi":
        cells = _cells(space, args.cells, required=True)
        chi = chi_multi_intersection(space, cells)
        d = expected_dim(space, cells)
        words = [space.word(c) for c in cells]
        out = _json({"space": space.describe(), "cells": words, "d": d, "chi": chi}) if fmt == "json" \
            else _csv(("cells", "d", "chi"), [("|".join(words), d, chi)])
    elif args.command == "constants":
        cells = _cells(space, args.cells, required=True)
        if len(cells) != 2:
            raise InputError("constants needs exactly two cells")
        lam, mu = cells
        consts = structure_constants(space, lam, mu)
        rows = [{"nu": space.word(nu), "nuprime": space.word(space.opposite_class_index(nu)),
                 "a": consts.get(nu, 0)} for nu in space.basis]
        out = _json({"space": space.describe(), "lambda": space.word(lam), "mu": space.word(mu),
                     "constants": rows}) if fmt == "json" else report_emit(rows, "csv")
    elif args.command == "verify":
        n = args.n if args.n is not None else 3
        ortho = verify_orthogonality(space)
        triples = verify_positivity(space, jobs=jobs)
        nfold = verify_nfold_sign(space, n, jobs=jobs, max_tuples=args.max_tuples)
        bad = len(ortho.violations) + len(triples.violations) + len(nfold.violations)
        status = 1 if bad else 0
        if fmt == "csv":
            out = report_emit(triples, "csv")
        else:
            out = _json({
                "space": space.describe(),
                "fingerprint": fingerprint(space),
                "orthogonality": json.loads(report_emit(ortho, "json")),
                "positivity": json.loads(report_emit(triples, "json")),
                "nfold": json.loads(report_emit(nfold, "json")),
                "violations": bad,
            })
        if cache:
            cache.save_report(f"verify.{fmt}", space, out)
    else:  # pragma: no cover - argparse restricts commands
        raise InputError(f"unknown command {args.command}")

    stdout.write(out)
    if cache:
        cache.persist(space)
    return status


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
