"""noether command line.

Exit codes: 0 when every requested verification passes (or a classification
produced a verdict), 1 on a failed verification, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import NoetherError


class InputError(Exception):
    pass


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _field(path):
    from .rationality import FieldDescriptor
    return FieldDescriptor.from_json(_load_json(path)) if path else None


def _n_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad --n list {text!r}") from exc


def _dump(obj, path=None):
    text = json.dumps(obj, indent=2, default=str)
    if path:
        Path(path).write_text(text + "\n")
    return text


def _report_json(rep, fid, n, field):
    out = rep.to_json()
    out["input"] = {"group": {"family": fid, "n": n}, "field": field.to_json() if field else None}
    return out


# ----------------------------------------------------------------------------
# commands

def cmd_groups_list(args):
    from .groups import GroupSpec, build_group, families_at, family_class
    for fid in families_at(args.n):
        G = build_group(GroupSpec.Family(fid, args.n))
        print(f"G{fid:<3d} family {family_class(fid):<4s} order {G.order:<5d} exponent {G.exponent}")
    return 0


def cmd_groups_info(args):
    from .groups import GroupSpec, build_group, certify_family, parse_family_id, structural_profile
    fid = parse_family_id(args.family)
    G = build_group(GroupSpec.Family(fid, args.n))
    certify_family(G)
    info = {"family": f"G{fid}", "n": args.n, "relations": list(G.family.relations),
            "profile": structural_profile(G).to_json()}
    print(_dump(info))
    return 0


def cmd_verify_case(args):
    from .cases import run_case
    from .groups import parse_family_id
    from .rationality import field_policy
    field = _field(args.field) or field_policy(args.n)
    fid = parse_family_id(args.family)
    rep = run_case(fid, args.n, field)
    print(rep.summary())
    if args.report:
        _dump(_report_json(rep, fid, args.n, field), args.report)
    return 0 if rep.passed else 1


def cmd_verify_all(args):
    from .cases import run_all
    from .rationality import field_policy
    reports = run_all(_n_list(args.n), workers=args.jobs)
    if args.report:
        out = Path(args.report)
        out.mkdir(parents=True, exist_ok=True)
    for rep in reports:
        fid, n = rep.case[1:].split("@n=")
        counts = {}
        for s in rep.steps:
            counts[s.status] = counts.get(s.status, 0) + 1
        extra = ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))
        print(f"{rep.case:10s} {rep.status:7s} ({extra})")
        if args.report:
            n = int(n)
            _dump(_report_json(rep, int(fid), n, field_policy(n)), out / f"{rep.case.replace('@', '_')}.json")
    bad = [r.case for r in reports if not r.passed]
    print(f"{len(reports) - len(bad)}/{len(reports)} cases passed")
    return 1 if bad else 0


def cmd_verify_theorem18(args):
    from .cases import run_theorem18_subcase
    rep = run_theorem18_subcase(args.subcase, args.m, _field(args.field))
    print(rep.summary())
    if args.report:
        _dump(rep.to_json(), args.report)
    return 0 if rep.passed else 1


def cmd_classify_group(args):
    from .groups import GroupSpec, build_group
    from .rationality import classify_group
    grp = build_group(GroupSpec.from_json(_load_json(args.spec)))
    v = classify_group(grp, _field(args.field))
    print(_dump(v.to_json()))
    return 0


def cmd_classify_action(args):
    from .monomial import ActionAssignment
    from .rationality import classify_monomial_action
    asg = ActionAssignment.from_json(_load_json(args.action))
    v = classify_monomial_action(asg, _field(args.field))
    print(_dump(v.to_json()))
    return 0


def cmd_reduce_action(args):
    from .monomial import ActionAssignment
    from .reduction import reduce_to_injective
    asg = ActionAssignment.from_json(_load_json(args.action))
    cur, steps = reduce_to_injective(asg)
    chain = [{"kind": s.kind, "justification": s.justification,
              "kernel_size": s.detail["kernel_size"], "basis": s.detail["basis"],
              "names": list(s.after.names)} for s in steps]
    print(_dump({"steps": chain, "terminal": cur.to_json()}))
    return 0


def cmd_m_group(args):
    from .monomial import MonomialMatrix
    from .rationality import classify_m_group
    obj = _load_json(args.matrices)
    mats = obj["matrices"] if isinstance(obj, dict) else obj
    v = classify_m_group([MonomialMatrix.from_json(m) for m in mats], _field(args.field))
    print(_dump(v.to_json()))
    return 0


# ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="noether", description="Verify rationality constructions for k(G).")
    sub = p.add_subparsers(dest="area", required=True)

    g = sub.add_parser("groups").add_subparsers(dest="cmd", required=True)
    q = g.add_parser("list")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_groups_list)
    q = g.add_parser("info")
    q.add_argument("--family", required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_groups_info)

    v = sub.add_parser("verify").add_subparsers(dest="cmd", required=True)
    q = v.add_parser("case")
    q.add_argument("--family", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--field")
    q.add_argument("--report")
    q.set_defaults(func=cmd_verify_case)
    q = v.add_parser("all")
    q.add_argument("--n", default="5,6")
    q.add_argument("--report")
    q.add_argument("--jobs", type=int, default=None)
    q.set_defaults(func=cmd_verify_all)
    q = v.add_parser("theorem18")
    q.add_argument("--subcase", type=int, choices=(1, 2, 3), required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--field")
    q.add_argument("--report")
    q.set_defaults(func=cmd_verify_theorem18)

    c = sub.add_parser("classify").add_subparsers(dest="cmd", required=True)
    q = c.add_parser("group")
    q.add_argument("--spec", required=True)
    q.add_argument("--field", required=True)
    q.set_defaults(func=cmd_classify_group)
    q = c.add_parser("action")
    q.add_argument("--action", required=True)
    q.add_argument("--field", required=True)
    q.set_defaults(func=cmd_classify_action)

    r = sub.add_parser("reduce").add_subparsers(dest="cmd", required=True)
    q = r.add_parser("action")
    q.add_argument("--action", required=True)
    q.set_defaults(func=cmd_reduce_action)

    m = sub.add_parser("m-group").add_subparsers(dest="cmd", required=True)
    q = m.add_parser("classify")
    q.add_argument("--matrices", required=True)
    q.add_argument("--field", required=True)
    q.set_defaults(func=cmd_m_group)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, NoetherError, KeyError, ValueError, TypeError) as exc:
        print(f"noether: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
