"""Command-line front end.

Exit status: 0 when every check passes, 1 on a mathematical disagreement,
2 on a usage or configuration error. Every flag can also be supplied as an
environment variable ``LINSET_<FLAG>`` (e.g. ``LINSET_P=3``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .classifier import (
    census,
    classify_case,
    norm_invariant,
    pgammal_equivalent,
    pgl_equivalent,
    predicted_spectrum,
)
from .errors import BadElementCode, FieldTooLarge
from .field_tower import FieldSpec, field_from_config
from .linear_sets import build_U, is_scattered, linear_set_of_b
from .oracle import bf_pgammal_equivalent, bf_pgl_equivalent
from .verify import SUITES

CSV_COLUMNS = ["q", "b_code", "case", "size", "w1", "w2", "norm_invariant_code", "class_rep_code"]
GROUP_NAMES = {"pgl": "PGL", "pgammal": "PGammaL"}


def _env(name: str, default=None, cast=str):
    v = os.environ.get(f"LINSET_{name.upper()}")
    return default if v is None else cast(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=_env("p", 2, int))
    common.add_argument("--e", type=int, default=_env("e", 1, int))
    common.add_argument("--modulus", default=_env("modulus"), help="ascending coefficients, comma-separated")
    common.add_argument("--format", choices=["json", "csv", "text"], default=_env("format", "json"))
    common.add_argument("--max-oracle-q", type=int, default=_env("max_oracle_q", None, int))
    common.add_argument("--jobs", type=int, default=_env("jobs", 1, int))

    parser = argparse.ArgumentParser(prog="linset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="case, spectra and size of L_U(b)")
    p.add_argument("--b", type=int, default=_env("b", None, int), help="element code; all b if omitted")

    p = sub.add_parser("census", parents=[common], help="equivalence classes of all L_U(b)")
    p.add_argument("--group", choices=list(GROUP_NAMES), default=_env("group", "pgl"))

    p = sub.add_parser("equiv", parents=[common], help="compare L_U(b) and L_U(c)")
    p.add_argument("--b", type=int, required=_env("b") is None, default=_env("b", None, int))
    p.add_argument("--c", type=int, required=_env("c") is None, default=_env("c", None, int))
    p.add_argument("--group", choices=list(GROUP_NAMES), default=_env("group", "pgl"))

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=[*SUITES, "all"])
    return parser


def _header(F: FieldSpec) -> dict:
    return {"p": F.p, "e": F.e, "q": F.q, "modulus": list(F.modulus)}


def _code(F: FieldSpec, v: int) -> int:
    if not 0 <= v < F.order:
        raise BadElementCode(f"element code {v} outside [0, {F.order})")
    return v


def _classify_row(F: FieldSpec, b: int, reps: dict[int, int]) -> dict:
    L = linear_set_of_b(F, b)
    label = classify_case(F, b)
    spec = L.spectrum()
    return {
        "q": F.q,
        "b_code": b,
        "case": int(label),
        "size": L.size,
        "w1": spec.get(1, 0),
        "w2": spec.get(2, 0),
        "norm_invariant_code": norm_invariant(F, b),
        "class_rep_code": reps[b],
        "scattered": is_scattered(F, build_U(F, b)),
        "predicted_spectrum": {str(k): v for k, v in predicted_spectrum(F, label).items()},
        "spectrum": {str(k): v for k, v in spec.items()},
    }


def _rep_map(F: FieldSpec, group: str = "PGL") -> dict[int, int]:
    return {b: cl.rep for cl in census(F, group).classes for b in cl.members}


def _emit(rows: list[dict], fmt: str, header: dict, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        lines = [f"# field p={header['p']} e={header['e']} q={header['q']} modulus={header['modulus']}"]
        for k, v in (extra or {}).items():
            lines.append(f"{k}: {v}")
        for r in rows:
            lines.append(" ".join(f"{k}={r[k]}" for k in CSV_COLUMNS if k in r))
        return "\n".join(lines)
    return json.dumps({"field": header, **(extra or {}), "rows": rows}, indent=2)


def cmd_classify(F: FieldSpec, args) -> int:
    reps = _rep_map(F)
    bs = [_code(F, args.b)] if args.b is not None else list(F.elements())
    rows = [_classify_row(F, b, reps) for b in bs]
    print(_emit(rows, args.format, _header(F)))
    return 0


def cmd_census(F: FieldSpec, args) -> int:
    group = GROUP_NAMES[args.group]
    cen = census(F, group)
    counts = {f"case{int(k)}_classes": v for k, v in cen.counts().items()}
    if args.format == "json":
        print(json.dumps({"field": _header(F), **cen.to_dict(), **counts}, indent=2))
        return 0
    reps = {b: cl.rep for cl in cen.classes for b in cl.members}
    rows = [_classify_row(F, b, reps) for b in F.elements()]
    print(_emit(rows, args.format, _header(F), {"group": group, **counts}))
    return 0


def cmd_equiv(F: FieldSpec, args) -> int:
    b, c = _code(F, args.b), _code(F, args.c)
    group = GROUP_NAMES[args.group]
    closed = (pgl_equivalent if group == "PGL" else pgammal_equivalent)(F, b, c)
    out = {"field": _header(F), "group": group, "b": b, "c": c, "closed_form": closed}
    status = 0
    try:
        oracle = bf_pgl_equivalent if group == "PGL" else bf_pgammal_equivalent
        W = oracle(F, b, c, args.max_oracle_q)
        out["oracle"] = W is not None
        out["witness"] = None if W is None else [W.A, W.B, W.C, W.D, W.k]
        status = 0 if out["oracle"] == closed else 1
    except FieldTooLarge as exc:
        out["oracle"] = None
        out["oracle_skipped"] = str(exc)
    print(json.dumps(out, indent=2) if args.format == "json" else
          " ".join(f"{k}={v}" for k, v in out.items() if k != "field"))
    return status


def cmd_verify(F: FieldSpec, args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        try:
            reports.append(SUITES[name](F, args).to_dict())
        except FieldTooLarge as exc:
            print(json.dumps({"field": _header(F), "check": name, "error": str(exc)}), file=sys.stderr)
            return 2
    ok = all(r["passed"] for r in reports)
    if args.format == "json":
        print(json.dumps({"field": _header(F), "passed": ok, "reports": reports}, indent=2, default=str))
    else:
        print(f"# field p={F.p} e={F.e} q={F.q} modulus={list(F.modulus)}")
        for r in reports:
            status = "PASS" if r["passed"] else "FAIL"
            print(f"{status} {r['check']}: {r['agreements']}/{r['pairs_tested']}")
            for fail in r["failures"][:10]:
                print(f"  failure: {fail}")
    return 0 if ok else 1


COMMANDS = {"classify": cmd_classify, "census": cmd_census, "equiv": cmd_equiv, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        F = field_from_config(args.p, args.e, args.modulus)
        return COMMANDS[args.command](F, args)
    except (BadElementCode, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
