"""Command-line front end.  Exit status: 0 ok, 1 axiom violation, 2 bad input."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .core import InputError

OK, VIOLATION, BAD_INPUT = 0, 1, 2


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise InputError("%s: invalid JSON at line %d column %d" % (path, e.lineno, e.colno))


def load_algebra(path):
    from .lie import LieAlgebra

    return LieAlgebra.from_dict(_read_json(path))


def _algebra_ref(data, path):
    ref = data.get("algebra")
    if isinstance(ref, dict):
        from .lie import LieAlgebra

        return LieAlgebra.from_dict(ref)
    if not isinstance(ref, str):
        raise InputError("%s: missing 'algebra' (file name or inline definition)" % path)
    return load_algebra(os.path.join(os.path.dirname(path), ref))


def load_pair_spec(path):
    """{"algebra": file or inline, "h": [labels], "order": N (informational)}."""
    data = _read_json(path)
    g = _algebra_ref(data, path)
    h = data.get("h", [])
    if not isinstance(h, list) or not all(isinstance(x, str) for x in h):
        raise InputError("%s: 'h' must be a list of generator labels" % path)
    for l in h:
        if l not in g.labels:
            raise InputError("%s: h generator %r is not in %s" % (path, l, g.name))
    return g, h


def load_action(path, check=True):
    """{"algebra": ..., "base": ["z"], "anchor": {"x": "d/dz"} or ["x: d/dz", ...]}."""
    from .algebroid import LieRinehartPair
    from .poly import PolyRing, Var

    data = _read_json(path)
    g = _algebra_ref(data, path)
    base = data.get("base")
    if not isinstance(base, list) or not base:
        raise InputError("%s: 'base' must be a non-empty list of coordinate names" % path)
    ring = PolyRing([Var(n) for n in base])
    anchor = data.get("anchor", {})
    if isinstance(anchor, list):
        parsed = {}
        for item in anchor:
            if not isinstance(item, str) or ":" not in item:
                raise InputError("%s: anchor entries look like 'x: d/dz'" % path)
            k, v = item.split(":", 1)
            parsed[k.strip()] = v.strip()
        anchor = parsed
    for k in h_or(data.get("h")):
        if k not in g.labels:
            raise InputError("%s: h generator %r is not in %s" % (path, k, g.name))
    return LieRinehartPair(g, ring, anchor, check=check), h_or(data.get("h"))


def h_or(h):
    return h if isinstance(h, list) else []


def _report_out(rep, args):
    print((rep.to_json() if args.json else rep.text()).rstrip("\n"))
    return OK if rep.passed else VIOLATION


# -- subcommands ----------------------------------------------------------------


def cmd_check_jacobi(args):
    from .lie import check_jacobi

    rep = check_jacobi(load_algebra(args.algfile))
    print("\n".join(rep.lines()))
    return OK if rep.passed else VIOLATION


def cmd_pbw(args):
    from .expr import parse_and_eval

    alg = load_algebra(args.algebra)
    print(parse_and_eval(args.expr, alg))
    return OK


def cmd_hopf_check(args):
    from .verify import run_axiom_suite, ue_dossier

    alg = load_algebra(args.algebra)
    rep = run_axiom_suite(ue_dossier(alg, args.max_len), title="U(%s) <= %d" % (alg.name, args.max_len))
    return _report_out(rep, args)


def cmd_bch(args):
    from .bch import bch_oracle, dynkin_bch
    from .expr import LieSemantics, evaluate, parse

    if args.order < 1:
        raise InputError("--order must be >= 1")
    if args.free:
        free = dynkin_bch(N=args.order)
        print(free)
        match = free.expand() == bch_oracle(args.order)
        print("oracle: %s" % ("match" if match else "mismatch"))
        return OK if match else VIOLATION
    if args.algebra is None or args.x is None or args.y is None:
        raise InputError("bch needs --algebra and two Lie algebra expressions (or --free)")
    alg = load_algebra(args.algebra)
    sem = LieSemantics(alg)
    vals = []
    for src in (args.x, args.y):
        v = evaluate(parse(src, sem.names), sem)
        vals.append(sem._vec(v))
    print(dynkin_bch(vals[0], vals[1], args.order))
    return OK


def cmd_hc_build(args):
    from .hc import HCPair

    g, h = load_pair_spec(args.pairfile)
    pair = HCPair(g, h, args.order)
    print("g = %s, h = span(%s), order %d" % (g.name, ", ".join(h), args.order))
    print("group law of H:")
    print(pair.H.components_text())
    print("Sym(m) monomials:")
    print("  " + ", ".join(str(x) for x in _sym_names(pair, args.order)))
    basis = pair.functional_basis(args.order)
    print("functional basis (%d elements):" % len(basis))
    for name, _ in basis:
        print("  " + name)
    return OK


def _sym_names(pair, N):
    from .ue import mono_text

    return [mono_text(pair.alg, s) or "1" for s in pair.sym_monomials(N)]


def cmd_hc_check(args):
    from .hc import HCPair, equivariance_report, hc_check

    g, h = load_pair_spec(args.pairfile)
    pair = HCPair(g, h, args.order)
    rep = hc_check(pair, args.order)
    code = _report_out(rep, args)
    if not args.json:
        eq = {k: v for k, v in equivariance_report(pair, args.order).items() if v is not None}
        if eq:
            for k, v in eq.items():
                print("  equivariance %s: %s" % (k, v))
            code = VIOLATION
        else:
            print("equivariance of Delta and S: pass")
    return code


def cmd_algebroid_check(args):
    from .algebroid import ActionHCStructure, action_hopf_maps
    from .verify import run_axiom_suite

    pair, h = load_action(args.actionfile)
    if args.h is not None:
        h = [x for x in args.h.split(",") if x]
    if h:
        S = ActionHCStructure(pair, h, args.order)
        title = "A(%s acting, h=%s) order %d" % (pair.g.name, ",".join(h), args.order)
    else:
        S = action_hopf_maps(pair, args.order)
        title = "H(%s acting) order %d" % (pair.g.name, args.order)
    return _report_out(run_axiom_suite(S, title=title), args)


def cmd_jets(args):
    from .algebroid import ActionHopfAlgebroid, jet_antipode, parse_jet, tangent_pair

    if args.dim < 1:
        raise InputError("--dim must be >= 1")
    pair = tangent_pair(args.dim)
    phi = parse_jet(pair, args.expr)
    H = ActionHopfAlgebroid(pair, args.order)
    t = phi.table(args.order)
    s = jet_antipode(phi)
    st = s.table(args.order)
    print("jet: %s" % phi)
    print("pairing: %s" % t)
    print("antipode: %s" % s)
    print("antipode pairing: %s" % st)
    ok = H.antipode(t) == st and jet_antipode(s).table(args.order) == t
    print("antipode agrees with the algebroid antipode and is an involution: %s" % ("yes" if ok else "NO"))
    return OK if ok else VIOLATION


def build_parser():
    p = argparse.ArgumentParser(prog="gradedhopf", description="Exact graded Lie/Hopf computations.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("check-jacobi", help="super Jacobi identity on all basis triples")
    s.add_argument("algfile")
    s.set_defaults(fn=cmd_check_jacobi)

    s = sub.add_parser("pbw", help="PBW normal form of an expression in U(g)")
    s.add_argument("expr")
    s.add_argument("--algebra", required=True)
    s.set_defaults(fn=cmd_pbw)

    s = sub.add_parser("hopf-check", help="Hopf axioms of U(g) up to a filtration degree")
    s.add_argument("--algebra", required=True)
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_hopf_check)

    s = sub.add_parser("bch", help="BCH series Z(X, Y)")
    s.add_argument("x", nargs="?")
    s.add_argument("y", nargs="?")
    s.add_argument("--algebra")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--free", action="store_true", help="free series with an oracle cross-check")
    s.set_defaults(fn=cmd_bch)

    for name, fn, helptext in (("hc-build", cmd_hc_build, "show the semi-formal group data"),
                               ("hc-check", cmd_hc_check, "Hopf axioms of the semi-formal integration")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("pairfile")
        s.add_argument("--order", type=int, required=True)
        if name == "hc-check":
            s.add_argument("--json", action="store_true")
        s.set_defaults(fn=fn)

    s = sub.add_parser("algebroid-check", help="Hopf algebroid axioms for an action algebroid")
    s.add_argument("actionfile")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--h", help="comma-separated subalgebra labels integrated to a formal group")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_algebroid_check)

    s = sub.add_parser("jets", help="jet pairing and antipode on affine space")
    s.add_argument("expr")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(fn=cmd_jets)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", 1) is not None and getattr(args, "order", 1) < 0:
        print("error: --order must be non-negative", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.fn(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
