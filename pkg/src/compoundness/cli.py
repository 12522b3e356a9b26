"""Command-line front door.

One binary with subcommands per subsystem plus ``verify`` for the seeded
law-check suites and ``convert`` for file format conversion. Exit codes:
0 when all requested laws hold, 1 when a violation or invalid structure
was found, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cascade as cascade_mod
from . import jsonio
from .errors import CompoundnessError, ParseError, UnknownSuite
from .galois import classify_map, enumerate_Q, galois_dual
from .hilbert import DEFAULT_TOL, join_s, meet_s, ortho_s, sasaki_s, span
from .lattice import OrthoLattice
from .operators import atomicity_probe, quadruple, schmidt_tensor
from .quantale import check_quantale_laws, enumerate_members, epimorphism_check
from .suites import SUITE_NAMES, run_suite

USAGE_ERROR = 2
VIOLATION = 1
OK = 0


def _print(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif not args.quiet:
        print(text)


# -- lattice ------------------------------------------------------------------

def _cmd_lattice_check(args) -> int:
    lat = jsonio.parse_lattice(jsonio.load_json(args.file))
    base = lat.base if isinstance(lat, OrthoLattice) else lat
    payload = {
        "elements": len(base),
        "bottom": base.elements[base.bottom],
        "top": base.elements[base.top],
        "atoms": [base.elements[a] for a in base.atoms()],
        "ortho": isinstance(lat, OrthoLattice),
    }
    _print(args, payload,
           f"valid lattice: {len(base)} elements, bottom={payload['bottom']!r}, "
           f"top={payload['top']!r}, atoms={payload['atoms']}, "
           f"orthocomplemented={payload['ortho']}")
    return OK


def _cmd_lattice_sasaki(args) -> int:
    lat = jsonio.parse_lattice(jsonio.load_json(args.file))
    if not isinstance(lat, OrthoLattice):
        print("lattice file has no orthocomplement", file=sys.stderr)
        return USAGE_ERROR
    a = lat.base.index(args.a)
    b = lat.base.index(args.b)
    result = lat.sasaki(a, b)
    _print(args, {"result": lat.base.elements[result]},
           lat.base.elements[result])
    return OK


# -- galois -------------------------------------------------------------------

def _cmd_galois_dual(args) -> int:
    f = jsonio.parse_join_map(jsonio.load_json(args.file))
    dual = galois_dual(f)
    payload = {"table": list(dual.table)}
    _print(args, payload, f"dual table: {list(dual.table)}")
    return OK


def _cmd_galois_enumerate(args) -> int:
    l1 = jsonio.parse_lattice(jsonio.load_json(args.source))
    l2 = jsonio.parse_lattice(jsonio.load_json(args.target))
    if isinstance(l1, OrthoLattice):
        l1 = l1.base
    if isinstance(l2, OrthoLattice):
        l2 = l2.base
    q = enumerate_Q(l1, l2)
    payload = {"count": len(q), "tables": [list(f.table) for f in q.maps]}
    _print(args, payload,
           f"{len(q)} join-preserving maps; top={list(q.top_map.table)}, "
           f"bottom={list(q.bottom_map.table)}")
    return OK


def _cmd_galois_classify(args) -> int:
    f = jsonio.parse_join_map(jsonio.load_json(args.file))
    flags = classify_map(f)
    _print(args, {"flags": list(flags)}, " ".join(flags))
    return OK


# -- hilbert ------------------------------------------------------------------

def _cmd_hilbert(args) -> int:
    a = span(jsonio.parse_matrix(jsonio.load_json(args.a)), args.tol)
    if args.op == "ortho":
        result = ortho_s(a)
    else:
        if args.b is None:
            print(f"error: hilbert {args.op} needs two subspace files",
                  file=sys.stderr)
            return USAGE_ERROR
        b = span(jsonio.parse_matrix(jsonio.load_json(args.b)), args.tol)
        result = {"meet": meet_s, "join": join_s, "sasaki": sasaki_s}[args.op](a, b)
    payload = jsonio.dump_matrix(result.frame)
    _print(args, payload,
           f"dim {result.dim} subspace of C^{result.ambient_dim}; frame:\n"
           + json.dumps(payload))
    return OK


# -- compound -----------------------------------------------------------------

def _cmd_compound_quadruple(args) -> int:
    op = jsonio.parse_operator(jsonio.load_json(args.file))
    quad = quadruple(op)
    payload = {
        "rho1": jsonio.dump_matrix(quad.rho1.matrix),
        "rho2": jsonio.dump_matrix(quad.rho2.matrix),
        "adjoint": jsonio.dump_operator(quad.f21),
    }
    _print(args, payload,
           "rho1:\n" + json.dumps(payload["rho1"]) + "\nrho2:\n"
           + json.dumps(payload["rho2"]))
    return OK


def _cmd_compound_tensor(args) -> int:
    op = jsonio.parse_operator(jsonio.load_json(args.file))
    tv = schmidt_tensor(op)
    payload = jsonio.dump_tensor_vector(tv)
    _print(args, payload,
           f"{tv.terms} terms, coefficients "
           f"{[round(abs(c), 9) for c in tv.coefficients]}")
    return OK


def _cmd_compound_probe(args) -> int:
    f_op = jsonio.parse_operator(jsonio.load_json(args.f))
    g_op = jsonio.parse_operator(jsonio.load_json(args.g))
    rng = np.random.default_rng(args.seed)
    report = atomicity_probe(f_op, g_op, args.samples, rng=rng)
    payload = {
        "samples": report.samples,
        "ordered_on_samples": report.ordered_on_samples,
        "equal_on_samples": report.equal_on_samples,
        "consistent": report.consistent,
        "witness": None if report.witness is None
        else jsonio.dump_matrix(report.witness),
    }
    _print(args, payload,
           f"ordered={report.ordered_on_samples} equal={report.equal_on_samples} "
           f"consistent={report.consistent}")
    return OK if report.consistent else VIOLATION


# -- cascade ------------------------------------------------------------------

def _cmd_cascade_run(args) -> int:
    tv = jsonio.parse_tensor_vector(jsonio.load_json(args.state))
    psi = jsonio.parse_vector(jsonio.load_json(args.left))
    phi = jsonio.parse_vector(jsonio.load_json(args.right))
    from .operators import ANTILINEAR, from_tensor

    op = from_tensor(tv, ANTILINEAR)
    trace = cascade_mod.run_cascade(op, span(psi), span(phi), order=args.order)
    born = cascade_mod.born_probability(tv, psi, phi)
    steps = [
        {
            "side": s.side,
            "kind": s.kind,
            "probability": s.probability,
            "carrier_dims": [s.carrier_pre.dim, s.carrier_post.dim],
        }
        for s in trace.steps
    ]
    payload = {
        "joint_probability": trace.joint_probability,
        "born_probability": born,
        "steps": steps,
    }
    lines = [
        f"step side={s['side']} {s['kind']:<8} p={s['probability']:.9f} "
        f"carrier {s['carrier_dims'][0]}->{s['carrier_dims'][1]}"
        for s in steps
    ]
    lines.append(f"joint probability: {trace.joint_probability:.12f}")
    lines.append(f"born probability:  {born:.12f}")
    _print(args, payload, "\n".join(lines))
    return OK if abs(trace.joint_probability - born) <= 1e-9 else VIOLATION


def _cmd_cascade_verify(args) -> int:
    laws = cascade_mod.check_prop2(
        args.dim, args.trials, rng=np.random.default_rng(args.seed), tol=args.tol
    )
    born = run_suite("cascade-born", args.seed, args.trials, tol=args.tol)
    if args.json:
        payload = {
            "update_laws": {
                "dim": laws.dim,
                "trials": laws.trials,
                "max_discrepancy": laws.max_discrepancy,
                "failures": [f.to_dict() for f in laws.failures],
            },
            "cascade_born": born.to_dict(),
        }
        print(json.dumps(payload, sort_keys=True))
    elif not args.quiet:
        for name, ok, disc, failures in (
            ("update-laws", laws.ok, laws.max_discrepancy, laws.failures),
            ("cascade-born", born.ok, born.max_discrepancy, born.failures),
        ):
            status = "ok" if ok else f"{len(failures)} FAILURES"
            print(f"{name:<14} trials={args.trials:<6} "
                  f"max_discrepancy={disc:.3e}  {status}")
            for failure in failures[:10]:
                print(f"  violated {failure.law}: {failure.inputs} "
                      f"(discrepancy {failure.discrepancy:.3e})")
    return OK if laws.ok and born.ok else VIOLATION


# -- quantale -----------------------------------------------------------------

def _cmd_quantale_check(args) -> int:
    space = jsonio.parse_space(jsonio.load_json(args.file))
    members = enumerate_members(space)
    report = check_quantale_laws(space, members)
    payload = {
        "members": report.members,
        "associative": report.associative,
        "left_distributive": report.left_distributive,
        "right_distributive": report.right_distributive,
        "union_closed": report.union_closed,
    }
    text = (f"{report.members} members; associative={report.associative}, "
            f"left-distributive={report.left_distributive}, "
            f"right-distributive={report.right_distributive}, "
            f"union-closed={report.union_closed}")
    _print(args, payload, text)
    ok = (report.associative and report.left_distributive
          and report.union_closed and report.bottom_is_empty)
    return OK if ok else VIOLATION


def _cmd_quantale_epi(args) -> int:
    space = jsonio.parse_space(jsonio.load_json(args.file))
    members = enumerate_members(space)
    report = epimorphism_check(space, members)
    payload = {
        "pairs": report.pairs,
        "failures": [
            {"law": f.law, "left": f.left, "right": f.right}
            for f in report.failures
        ],
    }
    _print(args, payload,
           f"{report.pairs} pairs checked, {len(report.failures)} failures")
    return OK if report.ok else VIOLATION


# -- verify / convert -----------------------------------------------------------

def _run_suites(args, names) -> int:
    reports = []
    for name in names:
        reports.append(run_suite(name, args.seed, args.trials, tol=args.tol))
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True))
    elif not args.quiet:
        for r in reports:
            status = "ok" if r.ok else f"{len(r.failures)} FAILURES"
            print(f"{r.suite:<14} trials={r.trials:<6} "
                  f"max_discrepancy={r.max_discrepancy:.3e} "
                  f"elapsed={r.elapsed_s:.2f}s  {status}")
            for failure in r.failures[:10]:
                print(f"  violated {failure.law}: {failure.inputs} "
                      f"(discrepancy {failure.discrepancy:.3e})")
    return OK if all(r.ok for r in reports) else VIOLATION


def _cmd_verify(args) -> int:
    names = args.suites or list(SUITE_NAMES)
    for name in names:
        if name not in SUITE_NAMES:
            raise UnknownSuite(
                f"unknown suite {name!r}; expected one of {SUITE_NAMES}"
            )
    return _run_suites(args, names)


def _cmd_convert(args) -> int:
    data = jsonio.load_json(args.input)
    result = jsonio.convert(data, args.source_format, args.target_format)
    text = json.dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text)
    return OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compoundness",
        description="Order-theoretic toolkit for two-part quantum systems.",
    )
    parser.add_argument("--json", action="store_true", help="machine output")
    parser.add_argument("--quiet", action="store_true", help="suppress text output")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sub = parser.add_subparsers(dest="command", required=True)

    lattice = sub.add_parser("lattice").add_subparsers(dest="sub", required=True)
    p = lattice.add_parser("check")
    p.add_argument("file")
    p.set_defaults(func=_cmd_lattice_check)
    p = lattice.add_parser("sasaki")
    p.add_argument("file")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_lattice_sasaki)

    galois = sub.add_parser("galois").add_subparsers(dest="sub", required=True)
    p = galois.add_parser("dual")
    p.add_argument("file")
    p.set_defaults(func=_cmd_galois_dual)
    p = galois.add_parser("enumerate")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=_cmd_galois_enumerate)
    p = galois.add_parser("classify")
    p.add_argument("file")
    p.set_defaults(func=_cmd_galois_classify)

    hilbert = sub.add_parser("hilbert")
    hilbert.add_argument("op", choices=["meet", "join", "ortho", "sasaki"])
    hilbert.add_argument("a")
    hilbert.add_argument("b", nargs="?")
    hilbert.add_argument("--tol", type=float, default=DEFAULT_TOL)
    hilbert.set_defaults(func=_cmd_hilbert)

    compound = sub.add_parser("compound").add_subparsers(dest="sub", required=True)
    p = compound.add_parser("quadruple")
    p.add_argument("file")
    p.set_defaults(func=_cmd_compound_quadruple)
    p = compound.add_parser("tensor")
    p.add_argument("file")
    p.set_defaults(func=_cmd_compound_tensor)
    p = compound.add_parser("probe")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_compound_probe)

    cascade = sub.add_parser("cascade").add_subparsers(dest="sub", required=True)
    p = cascade.add_parser("run")
    p.add_argument("--state", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--order", default=cascade_mod.LEFT_FIRST,
                   choices=[cascade_mod.LEFT_FIRST, cascade_mod.RIGHT_FIRST])
    p.set_defaults(func=_cmd_cascade_run)
    p = cascade.add_parser("verify")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_cascade_verify)

    quantale = sub.add_parser("quantale").add_subparsers(dest="sub", required=True)
    p = quantale.add_parser("check")
    p.add_argument("file")
    p.set_defaults(func=_cmd_quantale_check)
    p = quantale.add_parser("epi")
    p.add_argument("file")
    p.set_defaults(func=_cmd_quantale_epi)

    verify = sub.add_parser("verify")
    verify.add_argument("suites", nargs="*",
                        help=f"suites to run (default: all of {SUITE_NAMES})")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--trials", type=int, default=100)
    verify.set_defaults(func=_cmd_verify)

    convert = sub.add_parser("convert")
    convert.add_argument("input")
    convert.add_argument("output", nargs="?")
    convert.add_argument("--from", dest="source_format", required=True,
                         choices=list(jsonio.FORMATS))
    convert.add_argument("--to", dest="target_format", required=True,
                         choices=list(jsonio.FORMATS))
    convert.set_defaults(func=_cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except (ParseError, UnknownSuite, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except CompoundnessError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
