"""Command-line front end: ``weyl-hom <subcommand> ...``.

Exit codes:
  0  success (for verify-family: both homomorphisms are members)
  1  verify-family found a constraint that does not vanish
  2  malformed input or invalid parameters
  3  engine failure (straightening budget exhausted, undetermined tableau)
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from .families import (
    FamilyParams,
    ParameterError,
    family_partitions,
    glue,
    phi_element,
    theta_element,
)
from .homcalc import (
    DEFAULT_BUDGET,
    HomElement,
    Straightener,
    StraighteningError,
    hom_dim,
    straighten_once,
    verify_membership,
)
from .scalars import Cyclotomic, FieldError, QParams, format_poly, gauss_poly
from .tableaux import check_composition, check_partition, dominates, parse_tableau

EXIT_OK, EXIT_NONMEMBER, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3
DEFAULT_FIELD = "cyclotomic,e=2"

log = logging.getLogger("weylhom")


class InputError(ValueError):
    pass


def parse_parts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _partition(text):
    try:
        return check_partition(parse_parts(text))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _params(args, default=DEFAULT_FIELD) -> QParams:
    try:
        return QParams(args.field or default)
    except (FieldError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _emit(args, data: dict, text: str):
    if args.output == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _fmt(parts):
    return "(" + ",".join(map(str, parts)) + ")"


# ---------------------------------------------------------------------------
# subcommands

def cmd_dim(args) -> int:
    mu, lam = _partition(args.mu), _partition(args.lam)
    if sum(mu) != sum(lam):
        raise InputError(f"|mu| = {sum(mu)} differs from |lambda| = {sum(lam)}")
    params = _params(args)
    K = hom_dim(mu, lam, params, Straightener(params, budget=args.budget))
    data = {"mu": list(mu), "lambda": list(lam), "field": str(params.field), "e": params.e,
            "dominates": dominates(lam, mu), "dimension": K.dimension}
    if args.basis:
        data["kernel"] = K.to_json()
    text = f"dim Psi({_fmt(mu)}, {_fmt(lam)}) over {params.field} (e={params.e}) = {K.dimension}"
    if args.basis and args.output != "json":
        text += "\n" + json.dumps(K.to_json(), indent=2)
    _emit(args, data, text)
    return EXIT_OK


def cmd_verify_family(args) -> int:
    try:
        fam = FamilyParams(args.a, args.b, args.c, args.e)
    except ParameterError as exc:
        raise InputError(str(exc)) from None
    params = _params(args, default=f"cyclotomic,e={fam.e}")
    if params.e != fam.e:
        raise InputError(f"field {params.field} has quantum characteristic {params.e}, not e={fam.e}")
    mu, lam = family_partitions(fam)
    st = Straightener(params, budget=args.budget)
    elements = {"Theta": theta_element(fam, params), "Phi": phi_element(fam, params)}
    reports = {name: verify_membership(H, mu, lam, params, st) for name, H in elements.items()}
    disjoint = not (elements["Theta"].support & elements["Phi"].support)
    members = all(r.member for r in reports.values())
    data = {"a": fam.a, "b": fam.b, "c": fam.c, "e": fam.e, "mu": list(mu), "lambda": list(lam),
            "field": str(params.field), "disjoint_supports": disjoint,
            "homomorphisms": {name: {"member": r.member, "support_size": len(elements[name]),
                                     "failures": [list(dt) for dt in r.failures],
                                     "constraints": {f"{d},{t}": v for (d, t), v in r.vanishing.items()}}
                              for name, r in reports.items()}}
    lines = [f"family a={fam.a} b={fam.b} c={fam.c} e={fam.e}: mu={_fmt(mu)} lambda={_fmt(lam)} over {params.field}"]
    for name, r in reports.items():
        status = "member" if r.member else "NOT a member, failing (d,t): " + ", ".join(map(str, r.failures))
        lines.append(f"  {name}: {len(elements[name])} tableaux, {len(r.images)} constraints, {status}")
    lines.append(f"  supports disjoint: {'yes' if disjoint else 'no'}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if members else EXIT_NONMEMBER


def _tableau(args):
    try:
        length = len(parse_parts(args.type)) if args.type else None
        T = parse_tableau(args.tableau, length)
        if args.shape and T.shape != check_partition(parse_parts(args.shape)):
            raise InputError(f"tableau has shape {T.shape}, expected {args.shape}")
        if args.type and T.type != check_composition(parse_parts(args.type)):
            raise InputError(f"tableau has type {T.type}, expected {args.type}")
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return T


def _print_element(args, H: HomElement):
    if args.output == "json":
        print(json.dumps(H.to_json(), sort_keys=True))
    else:
        print(json.dumps(H.to_json(), indent=2))


def cmd_straighten(args) -> int:
    params = _params(args)
    T = _tableau(args)
    try:
        H = straighten_once(T, args.r, args.d, params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _print_element(args, H)
    return EXIT_OK


def cmd_normalize(args) -> int:
    params = _params(args)
    try:
        if args.homelement_file == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.homelement_file) as fh:
                data = json.load(fh)
        H = HomElement.from_json(data, params)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot read HomElement: {exc}") from None
    _print_element(args, Straightener(params, args.strategy, args.budget).normalize(H))
    return EXIT_OK


def cmd_gauss(args) -> int:
    params = _params(args)
    value = params.gauss(args.m, args.j)
    poly = format_poly(gauss_poly(args.m, args.j))
    data = {"m": args.m, "j": args.j, "field": str(params.field), "value": str(value), "polynomial": poly}
    _emit(args, data, f"gauss({args.m},{args.j}) = {value} in {params.field}\n  integer polynomial: {poly}")
    return EXIT_OK


def cmd_glue(args) -> int:
    mu, lam = _partition(args.mu), _partition(args.lam)
    try:
        alpha, beta = glue(mu, lam)
    except ParameterError as exc:
        raise InputError(str(exc)) from None
    n = 2 * sum(mu) + len(mu) * lam[0]
    note = None
    if len(mu) > len(lam):
        note = ("l(mu) > l(lambda): beta places lambda_i in position l(mu)+i "
                "(lambda stacked below the widened block), which keeps |alpha| = |beta|")
    data = {"mu": list(mu), "lambda": list(lam), "alpha": list(alpha), "beta": list(beta),
            "size_alpha": sum(alpha), "size_beta": sum(beta), "expected_size": n}
    if note:
        data["note"] = note
    lines = [f"alpha = {_fmt(alpha)}", f"beta  = {_fmt(beta)}",
             f"|alpha| = {sum(alpha)}, |beta| = {sum(beta)}, 2|mu| + l(mu)*lambda_1 = {n}"]
    if note:
        lines.append("note: " + note)
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


_RANGE_RE = re.compile(r"^\s*([abce])\s*=\s*(\d+)(?:\s*\.\.\s*(\d+))?\s*$")


def parse_grid(text: str) -> list[tuple[int, int, int, int]]:
    """``a=4..5,b=4..5,c=3..4,e=2..3`` -> sorted valid (a, b, c, e) tuples."""
    ranges = {}
    for item in text.split(","):
        m = _RANGE_RE.match(item)
        if not m:
            raise InputError(f"bad grid item {item!r}; expected e.g. a=4..5")
        lo = int(m.group(2))
        hi = int(m.group(3)) if m.group(3) else lo
        if hi < lo:
            raise InputError(f"empty range in {item!r}")
        ranges[m.group(1)] = range(lo, hi + 1)
    missing = [k for k in "abce" if k not in ranges]
    if missing:
        raise InputError(f"grid needs ranges for {', '.join(missing)}")
    return [(a, b, c, e) for a, b, c, e in product(*(ranges[k] for k in "abce"))
            if a >= b >= c + 1 >= 4 and e >= 2]


def scan_instance(inst: tuple[int, int, int, int], budget: int = DEFAULT_BUDGET) -> dict:
    a, b, c, e = inst
    rec = {"a": a, "b": b, "c": c, "e": e, "field": str(Cyclotomic(e))}
    try:
        fam = FamilyParams(a, b, c, e)
        params = QParams(Cyclotomic(e))
        mu, lam = family_partitions(fam)
        rec.update(mu=list(mu), **{"lambda": list(lam)})
        K = hom_dim(mu, lam, params, Straightener(params, budget=budget))
        rec.update(status="ok", dimension=K.dimension, semistandard=len(K.index))
    except Exception as exc:  # recorded, the sweep goes on
        rec.update(status="error", error=f"{type(exc).__name__}: {exc}")
    return rec


def cmd_scan(args) -> int:
    grid = parse_grid(args.grid_spec)
    log.info("scan: %d valid instances, %d workers", len(grid), args.jobs)
    if args.jobs <= 1:
        records = [scan_instance(inst, args.budget) for inst in grid]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(scan_instance, grid, [args.budget] * len(grid)))
    records.sort(key=lambda r: (r["a"], r["b"], r["c"], r["e"]))
    for rec in records:
        print(json.dumps(rec, sort_keys=True), flush=True)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # flags accepted both before and after the subcommand; the copy attached to
    # the subcommands must not overwrite values given before it
    def default(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=default(None),
                        help=f"'p=<prime>,q=<int>' or 'cyclotomic,e=<int>' (default {DEFAULT_FIELD})")
    common.add_argument("--output", choices=("text", "json"), default=default("text"))
    common.add_argument("--budget", type=int, default=default(DEFAULT_BUDGET),
                        help="straightening steps per normalization")
    common.add_argument("-v", "--verbose", action="store_true", default=default(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="weyl-hom", parents=[_global_flags(suppress=False)],
                                     description="Homomorphisms between Weyl modules of q-Schur algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="dimension of Psi(mu, lambda)")
    p.add_argument("--mu", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--basis", action="store_true", help="also print the kernel basis")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify-family", parents=[common], help="check Theta and Phi of the two-parameter family")
    for name in "abce":
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_verify_family)

    p = sub.add_parser("straighten", parents=[common], help="one straightening step")
    p.add_argument("--tableau", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--shape", help="expected shape, checked against the tableau")
    p.add_argument("--type", help="expected type, checked against the tableau")
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("normalize", parents=[common], help="rewrite a HomElement in the semistandard basis")
    p.add_argument("--homelement-file", required=True, help="HomElement JSON file, or - for stdin")
    p.add_argument("--strategy", choices=("top", "bottom"), default="top")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("gauss", parents=[common], help="evaluate a Gaussian binomial")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("glue", parents=[common], help="glue a pair (mu, lambda)")
    p.add_argument("--mu", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("scan", parents=[common], help="hom_dim over a grid of family parameters (NDJSON)")
    p.add_argument("--grid-spec", required=True, help="e.g. a=4..5,b=4..5,c=3..4,e=2..3")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StraighteningError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
