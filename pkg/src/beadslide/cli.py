"""JSON-in, JSON-out command line.

Exit codes: 0 when the operation succeeds or the property holds, 1 when the
property fails (or no certificate was found), 2 for malformed input or a
violated precondition. Errors are printed as ``{"error": ..., "message": ...}``.

Every ``--input``/``--target``/``--plan`` argument is a file path, ``-`` for
stdin, or inline JSON (anything starting with ``{`` or ``[``).
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import jsonio
from .core import gaps, from_gaps, is_slideable_target, leq
from .errors import BeadError, MalformedInput, NoCertificate, NotMonotone
from .majorization import (
    EQUAL_TOTALS,
    MajorizationInstance,
    ShapeWarning,
    catalog,
    check_concave_schur,
    check_concave_sum_inequality,
    check_schur_convex,
)
from .oracle import LatticeSpec, lattice_reachable, random_pair
from .planner import (
    approx_plan,
    converse_counterexample,
    epsilon_sleeve,
    has_predecessor,
    one_step_predecessor_interval,
    plan,
    try_plan,
    verify_plan,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read_json(source: str):
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {source}: {exc.strerror}") from exc
    return jsonio.loads(text)


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise MalformedInput(f"--{name} is required for this command")
    return value


def _pair(args):
    """Source and target, either from --input/--target or from one {"source", "target"} doc."""
    doc = _read_json(_need(args, "input"))
    if args.target is None:
        if isinstance(doc, dict) and "source" in doc and "target" in doc:
            return jsonio.config_from_obj(doc["source"]), jsonio.config_from_obj(doc["target"])
        raise MalformedInput("--target is required (or pass a {source, target} document)")
    return jsonio.config_from_obj(doc), jsonio.config_from_obj(_read_json(args.target))


def _config(args):
    return jsonio.config_from_obj(_read_json(_need(args, "input")))


# -- subcommands -------------------------------------------------------------------
# each returns (exit code, JSON object)

def cmd_validate(args):
    doc = _read_json(_need(args, "input"))
    try:
        x = jsonio.config_from_obj(doc)
    except NotMonotone as exc:
        return 1, {"valid": False, "error": "NotMonotone", "message": str(exc),
                   "index": exc.index}
    return 0, {"valid": True, "config": jsonio.config_to_obj(x)}


def cmd_gaps(args):
    doc = _read_json(_need(args, "input"))
    if isinstance(doc, dict) and "gaps" in doc:
        return 0, jsonio.config_to_obj(from_gaps(jsonio.gaps_from_obj(doc)))
    return 0, jsonio.gaps_to_obj(gaps(jsonio.config_from_obj(doc)))


def cmd_order(args):
    a, b = _pair(args)
    ok = leq(a, b)
    return (0 if ok else 1), {"leq": ok}


def cmd_slideable(args):
    ok = is_slideable_target(_config(args))
    return (0 if ok else 1), {"slideable": ok}


def cmd_plan(args):
    a, b = _pair(args)
    if args.epsilon is not None and args.budget is not None:
        raise MalformedInput("--epsilon and --budget are mutually exclusive")
    try:
        if args.epsilon is not None:
            eps = jsonio.parse_rational(args.epsilon)
            res = approx_plan(a, b, eps)
            out = res.to_obj()
            out["target"] = jsonio.config_to_obj(epsilon_sleeve(b, eps))
            return 0, out
        if args.budget is not None:
            return 0, try_plan(a, b, args.budget).to_obj()
        return 0, plan(a, b).to_obj()
    except NoCertificate as exc:
        return 1, {"error": "NoCertificate", "message": str(exc),
                   "sweeps_used": exc.sweeps_used}


def cmd_verify(args):
    a, b = _pair(args)
    p = jsonio.plan_from_obj(_read_json(args.plan))
    rep = verify_plan(a, p, b)
    return (0 if rep.ok else 1), rep.to_obj()


def cmd_perturb(args):
    eps = jsonio.parse_rational(_need(args, "epsilon"))
    return 0, jsonio.config_to_obj(epsilon_sleeve(_config(args), eps))


def cmd_counterexample(args):
    b = _config(args)
    c = converse_counterexample(b)
    return 0, {"counterexample": jsonio.config_to_obj(c), "has_predecessor": has_predecessor(b)}


def cmd_predecessors(args):
    b = _config(args)
    intervals = [one_step_predecessor_interval(b, k) for k in range(1, b.n + 1)]
    found = any(not iv.empty for iv in intervals)
    return (0 if found else 1), {"intervals": [iv.to_obj() for iv in intervals],
                                 "has_predecessor": found}


def cmd_schur(args):
    doc = _read_json(_need(args, "input"))
    if not isinstance(doc, dict):
        raise MalformedInput("instance must be a JSON object")
    f = catalog(_need(args, "fn"))

    def seq(*names):
        for name in names:
            if name in doc:
                if not isinstance(doc[name], list):
                    raise MalformedInput(f"{name!r} must be an array")
                return doc[name]
        raise MalformedInput(f"instance needs one of {names}")

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ShapeWarning)
        if args.convex_schur:
            rep = check_schur_convex(seq("a", "x"), seq("b", "y"), f)
        elif args.concave_schur:
            rep = check_concave_schur(
                MajorizationInstance(seq("x", "a"), seq("y", "b"), EQUAL_TOTALS), f)
        else:
            mu = args.mu if args.mu is not None else doc.get("mu", "0")
            rep = check_concave_sum_inequality(
                MajorizationInstance(seq("x", "a"), seq("y", "b")), f, mu)
    out = rep.to_obj()
    notes = [str(w.message) for w in caught if issubclass(w.category, ShapeWarning)]
    if notes:
        out["warnings"] = notes
    return (0 if rep.holds else 1), out


def cmd_oracle(args):
    a, b = _pair(args)
    verdict = lattice_reachable(a, b, LatticeSpec(args.denominator, args.max_states))
    return (0 if verdict.reachable else 1), verdict.to_obj()


def cmd_sample(args):
    a, b = random_pair(args.beads, args.seed, slideable_only=not args.any_target)
    return 0, {"source": jsonio.config_to_obj(a), "target": jsonio.config_to_obj(b)}


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    io = _Parser(add_help=False)
    io.add_argument("--input", help="JSON path, '-' for stdin, or inline JSON")
    io.add_argument("--target", help="target configuration (same forms as --input)")

    parser = _Parser(prog="beadslide", description="Bead sliding toolkit (JSON in, JSON out).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, parents=(io,)):
        p = sub.add_parser(name, parents=list(parents), help=help_text)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check that a configuration is monotone")
    add("gaps", cmd_gaps, "configuration -> gaps (or gaps -> configuration)")
    add("order", cmd_order, "componentwise order of --input against --target")
    add("slideable", cmd_slideable, "is --input reachable from everything below it")
    p = add("plan", cmd_plan, "slide certificate from --input to --target")
    p.add_argument("--epsilon", help="plan to the perturbed target instead (p/q)")
    p.add_argument("--budget", type=int, help="best-effort mode with this many sweeps per level")
    p = add("verify", cmd_verify, "replay a plan")
    p.add_argument("--plan", default="-", help="plan JSON (default: stdin)")
    p = add("perturb", cmd_perturb, "epsilon-perturbed slideable target")
    p.add_argument("--epsilon")
    add("counterexample", cmd_counterexample, "C < B that cannot slide to B")
    add("predecessors", cmd_predecessors, "one-step predecessor intervals")
    p = add("schur", cmd_schur, "majorization inequalities")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--concave-sum", action="store_true")
    mode.add_argument("--concave-schur", action="store_true")
    mode.add_argument("--convex-schur", action="store_true")
    p.add_argument("--fn", help="sqrt, log1p, square, exp, identity, neg_square or pwl:x0,y0;x1,y1;...")
    p.add_argument("--mu", help="base point for --concave-sum (default 0)")
    p = add("oracle", cmd_oracle, "lattice breadth-first reachability")
    p.add_argument("--denominator", type=int, default=1)
    p.add_argument("--max-states", type=int, default=1_000_000)
    p = add("sample", cmd_sample, "seeded random pair source <= target", parents=())
    p.add_argument("--beads", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--any-target", action="store_true",
                   help="do not force the target to be slideable")
    return parser


def run(argv=None, stdout=None) -> int:
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        code, obj = args.func(args)
    except _UsageError as exc:
        code, obj = 2, {"error": "Usage", "message": str(exc)}
    except BeadError as exc:
        code, obj = 2, {"error": type(exc).__name__, "message": str(exc)}
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        code, obj = 2, {"error": "MalformedInput", "message": str(exc)}
    out.write(jsonio.dumps(obj) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
