"""Command-line entry point.

Subcommands compute cohomology of a chosen complex shape, the group of
multiplicative classes with the truncation map, the closed-form degree-3
triple of a bar cocycle and its multiplicative class, twisted fusion rings,
and a self-verification suite.  Groups and actions are given as JSON files
or inline builder strings; reports are deterministic JSON (stable key order,
version, config echo and seeds included) or aligned text.

Exit codes: 0 ok, 2 usage, 3 resource ceiling, 4 numerical failure,
5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from . import complexes
from . import fusion
from . import groups
from . import shuffle
from . import structures
from .cohomology import t_cohomology
from .config import LIMITS
from .errors import (EquikError, NumericalError, ResourceLimitError,
                     UsageError, VerificationError)

EXIT_CODES = {
    UsageError: 2,
    ResourceLimitError: 3,
    NumericalError: 4,
    VerificationError: 5,
}


# -- input parsing -----------------------------------------------------------

def build_group(desc):
    """A FiniteGroup from a builder string or a parsed JSON object.

    Builder strings: ``cyclic:N``, ``dihedral:N``, ``quaternion8``,
    ``symmetric:N``, ``product:<builder>,<builder>``.  JSON objects use
    {"kind": ..., "n": ...} or {"kind": "table", "mul": [[...]]}.
    """
    if isinstance(desc, str):
        if desc.startswith("product:"):
            parts = desc[len("product:"):].split(",")
            if len(parts) != 2:
                raise UsageError("product builder takes two factors")
            return groups.direct_product(build_group(parts[0]),
                                         build_group(parts[1]))
        name, _, arg = desc.partition(":")
        if name == "cyclic":
            return groups.cyclic(_positive(arg, "cyclic order"))
        if name == "dihedral":
            return groups.dihedral(_positive(arg, "dihedral parameter"))
        if name == "quaternion8":
            return groups.quaternion8()
        if name == "symmetric":
            return groups.symmetric(_positive(arg, "symmetric degree"))
        raise UsageError("unknown group builder %r" % desc)
    if not isinstance(desc, dict) or "kind" not in desc:
        raise UsageError("group JSON must be an object with a 'kind' field")
    kind = desc["kind"]
    if kind == "table":
        if "mul" not in desc:
            raise UsageError("table group needs a 'mul' field")
        return groups.FiniteGroup(desc["mul"])
    if kind == "quaternion8":
        return groups.quaternion8()
    if kind in ("cyclic", "dihedral", "symmetric"):
        if "n" not in desc:
            raise UsageError("%s group needs an 'n' field" % kind)
        return getattr(groups, kind)(_positive(desc["n"], "group parameter"))
    raise UsageError("unknown group kind %r" % kind)


def _positive(arg, what):
    try:
        n = int(arg)
    except (TypeError, ValueError):
        raise UsageError("%s must be an integer, got %r" % (what, arg))
    if n <= 0:
        raise UsageError("%s must be positive" % what)
    return n


def build_action(desc, target):
    """A GroupAction on ``target`` from a string or parsed JSON object.

    Strings: ``conjugation``, ``inversion``, ``trivial:<group builder>``.
    JSON objects: {"kind": "conjugation"|"inversion"} or
    {"kind": "trivial", "group": <group>} or
    {"kind": "explicit", "group": <group>, "perms": [[...], ...]}.
    """
    if isinstance(desc, str):
        if desc == "conjugation":
            return groups.conjugation_action(target)
        if desc == "inversion":
            return groups.inversion_action(target)
        if desc.startswith("trivial:"):
            return groups.trivial_action(build_group(desc[len("trivial:"):]),
                                         target)
        raise UsageError("unknown action %r" % desc)
    if not isinstance(desc, dict) or "kind" not in desc:
        raise UsageError("action JSON must be an object with a 'kind' field")
    kind = desc["kind"]
    if kind == "conjugation":
        return groups.conjugation_action(target)
    if kind == "inversion":
        return groups.inversion_action(target)
    if kind == "trivial":
        if "group" not in desc:
            raise UsageError("trivial action needs a 'group' field")
        return groups.trivial_action(build_group(desc["group"]), target)
    if kind == "explicit":
        if "group" not in desc or "perms" not in desc:
            raise UsageError("explicit action needs 'group' and 'perms'")
        return groups.GroupAction(build_group(desc["group"]), target,
                                  desc["perms"])
    raise UsageError("unknown action kind %r" % kind)


def _load_desc(value):
    """Interpret an argument as a JSON file path or an inline string."""
    if value is None:
        return None
    if os.path.exists(value):
        try:
            with open(value) as fh:
                return json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError("bad JSON in %s: %s" % (value, exc))
    return value


def resolve(args):
    if args.group is None:
        raise UsageError("a --group is required")
    target = build_group(_load_desc(args.group))
    action = build_action(_load_desc(args.action), target)
    return target, action


def parse_coords(text):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError("coordinates must be comma-separated integers")


SHAPES = {
    "full": complexes.full_spec,
    "rows": complexes.rows_spec,
    "block": complexes.block_spec,
}


def build_spec(action, shape):
    if shape in SHAPES:
        return SHAPES[shape](action)
    name, _, arg = shape.partition(":")
    if name == "rows-trunc":
        return complexes.rows_trunc_spec(action, _positive(arg, "truncation"))
    if name == "row":
        return complexes.row_spec(action, _positive(arg, "row"))
    if name == "single":
        return complexes.single_group_spec(action.target)
    raise UsageError("unknown complex shape %r" % shape)


# -- report plumbing ---------------------------------------------------------

def frac_str(v):
    return str(Fraction(v))


def base_report(args, command):
    cfg = {k: v for k, v in sorted(vars(args).items())
           if k not in ("func", "format", "out") and v is not None}
    return {
        "version": __version__,
        "command": command,
        "config": cfg,
        "limits": {
            "max_group_order": LIMITS.max_group_order,
            "max_matrix_nnz": LIMITS.max_matrix_nnz,
        },
    }


def emit(report, args):
    if args.format == "text":
        text = render_text(report)
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render_text(report, indent=0):
    lines = []
    width = max((len(str(k)) for k in report), default=0)
    for k in sorted(report):
        v = report[k]
        pad = " " * indent + str(k).ljust(width)
        if isinstance(v, dict):
            lines.append(pad)
            lines.append(render_text(v, indent + 2).rstrip("\n"))
        else:
            lines.append("%s  %s" % (pad, v))
    return "\n".join(lines) + "\n"


# -- subcommands -------------------------------------------------------------

def cmd_cohomology(args):
    _, action = resolve(args)
    spec = build_spec(action, args.shape)
    pres = t_cohomology(spec, args.degree)
    report = base_report(args, "cohomology")
    report["invariant_factors"] = list(pres.orders)
    return report


def cmd_ms(args):
    _, action = resolve(args)
    ms = structures.MultiplicativeStructures(action)
    tm = structures.TruncationMap(action, ms)
    inv_orders = structures.invariant_image(action)
    report = base_report(args, "ms")
    report["multiplicative_structures"] = list(ms.orders)
    report["degree3_rows"] = list(tm.source.orders)
    report["kernel"] = list(tm.kernel_orders)
    report["cokernel"] = list(tm.cokernel_orders)
    report["invariant_image"] = list(inv_orders)
    return report


def cmd_dpr(args):
    target, action = resolve(args)
    if action.group is not target or not groups.conjugation_action(
            target).perms == action.perms:
        raise UsageError("the closed-form triple needs the conjugation action")
    w, pres = structures.bar_three_cocycle(target, parse_coords(args.coords))
    rows = complexes.rows_spec(action)
    alpha, beta, theta = shuffle.dpr_cocycle(w, rows)
    ms, cls = structures.dpr_multiplicative_class(action, w)
    report = base_report(args, "dpr")
    report["bar_h3"] = list(pres.orders)
    report["multiplicative_structures"] = list(ms.orders)
    report["multiplicative_class"] = list(cls)
    report["cocycle"] = {
        "alpha_2_1": [frac_str(v) for v in alpha.values],
        "beta_1_2": [frac_str(v) for v in beta.values],
        "theta_0_3": [frac_str(v) for v in theta.values],
    }
    return report


def _twist_triple(action, twist_arg):
    if twist_arg in (None, "none"):
        return None
    name, _, arg = twist_arg.partition(":")
    if name != "dpr":
        raise UsageError("unknown twist %r (use none or dpr:<coords>)" % twist_arg)
    w, _ = structures.bar_three_cocycle(action.target, parse_coords(arg))
    return shuffle.dpr_cocycle(w, complexes.rows_spec(action))


def cmd_fusion(args):
    _, action = resolve(args)
    triple = _twist_triple(action, args.twist)
    ring = fusion.fusion_ring(action, triple, seed=args.seed)
    report = base_report(args, "fusion")
    report["seed"] = args.seed
    report["rank"] = ring.rank
    report["unit"] = ring.unit
    report["labels"] = [{"orbit": o, "irrep": t, "dim": d}
                        for (o, t), d in zip(ring.labels, ring.dims)]
    sparse = []
    for i in range(ring.rank):
        for j in range(ring.rank):
            for k in range(ring.rank):
                if ring.n[i][j][k]:
                    sparse.append([i, j, k, ring.n[i][j][k]])
    report["structure_constants"] = sparse
    return report


def _random_cochain(spec, p, q, rnd):
    c = complexes.Cochain(spec, p, q)
    for i in range(len(c.values)):
        c.values[i] = Fraction(rnd.randrange(12), 12)
    return c


def cmd_verify(args):
    _, action = resolve(args)
    rnd = random.Random(args.seed)
    checks = {}

    # the differentials square to zero on random cochains
    spec = complexes.full_spec(action)
    ok = True
    for _ in range(20):
        p = rnd.randrange(0, 3)
        q = rnd.randrange(0, 3)
        c = _random_cochain(spec, p, q, rnd)
        if not complexes.delta_g(complexes.delta_g(c)).is_zero():
            ok = False
        if not complexes.delta_k(complexes.delta_k(c)).is_zero():
            ok = False
        dgk = complexes.delta_g(complexes.delta_k(c))
        dkg = complexes.delta_k(complexes.delta_g(c))
        if not (dgk - dkg).is_zero():
            ok = False
    checks["differentials_square_to_zero"] = ok

    conj = groups.conjugation_action(action.target)
    fullc = complexes.full_spec(conj)
    barc = complexes.single_group_spec(action.target)

    # shuffle pullback is a chain map
    ok = True
    for _ in range(20):
        w = _random_cochain(barc, 0, 2, rnd)
        lhs = shuffle.tau_dual(complexes.delta_k(w), fullc, 3)
        rhs = complexes.total_differential(shuffle.tau_dual(w, fullc, 2))
        if not (lhs - rhs).is_zero():
            ok = False
    checks["shuffle_pullback_chain_map"] = ok

    # the closed-form triple equals the shuffle pullback entrywise
    ok = True
    rows = complexes.rows_spec(conj)
    pres = t_cohomology(barc, 3, want_reps=True)
    for rep in pres.reps:
        w = rep.comp(0, 3)
        alpha, beta, theta = shuffle.dpr_cocycle(w, rows)
        tot = shuffle.tau1_dual(w, rows, 3)
        if tot.comp(2, 1) != alpha or tot.comp(1, 2) != beta \
                or tot.comp(0, 3) != theta:
            ok = False
    checks["closed_form_triple_matches_pullback"] = ok

    # coquasi axioms for the first degree-3 generator (or the trivial twist)
    if pres.orders:
        w = pres.reps[0].comp(0, 3)
        triple = shuffle.dpr_cocycle(w, rows)
    else:
        triple = (None, None, None)
    h = fusion.coquasi_bialgebra(conj, triple)
    rep = fusion.verify_coquasi_axioms(h)
    checks["coquasi_axioms"] = bool(rep["max_residual"] < 1e-9)
    checks["coquasi_max_residual"] = rep["max_residual"]

    report = base_report(args, "verify")
    report["seed"] = args.seed
    report["checks"] = checks
    report["ok"] = all(v for k, v in checks.items()
                       if isinstance(v, bool))
    if not report["ok"]:
        emit(report, args)
        raise VerificationError("verification suite failed")
    return report


# -- argument parsing --------------------------------------------------------

def make_parser():
    parser = argparse.ArgumentParser(
        prog="equik",
        description="Equivariant cohomology of finite group actions, "
                    "multiplicative structures and twisted fusion rings.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", required=True,
                       help="group JSON file or builder (e.g. cyclic:4)")
        p.add_argument("--action", default="conjugation",
                       help="action JSON file, 'conjugation', 'inversion' "
                            "or 'trivial:<builder>'")
        p.add_argument("--out", help="write the report to this file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-nnz", type=int, default=None,
                       help="override the sparse elimination ceiling")

    p = sub.add_parser("cohomology", help="invariant factors of a complex")
    common(p)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--shape", default="rows",
                   help="full, rows, block, single, rows-trunc:R or row:R")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("ms", help="multiplicative classes and the "
                                  "truncation map")
    common(p)
    p.set_defaults(func=cmd_ms)

    p = sub.add_parser("dpr", help="closed-form triple of a bar 3-cocycle "
                                   "and its multiplicative class")
    common(p)
    p.add_argument("--coords", default="1",
                   help="class coordinates of w in H^3 (comma-separated)")
    p.set_defaults(func=cmd_dpr)

    p = sub.add_parser("fusion", help="twisted fusion ring")
    common(p)
    p.add_argument("--twist", default="none",
                   help="'none' or 'dpr:<coords>'")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("verify", help="run the self-check property suite")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_nnz", None):
        LIMITS.max_matrix_nnz = args.max_nnz
    try:
        report = args.func(args)
    except EquikError as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        for cls, code in EXIT_CODES.items():
            if isinstance(exc, cls):
                return code
        return 1
    emit(report, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
