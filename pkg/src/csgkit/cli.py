"""Command-line front end: `csg <subcommand> ...`.

Exit codes: 0 success, 1 a verification found violations, 2 bad usage or input.
"""

import argparse
import csv
import io
import json
import os
import random
import sys

from . import barhom, csg, envelope, gpar, twalg
from .ordmap import OrdMapError


class UsageError(Exception):
    pass


BUILTIN_GROUPS = {
    "trivial": gpar.trivial,
    "C2": lambda: gpar.cyclic(2),
    "C2id": gpar.c2_id,
    "C4q": gpar.c4_q,
    "S3": lambda: gpar.symmetric_group(3),
}

BUILTIN_ALGEBRAS = {
    "Q": lambda: twalg.ground_field(twalg.QQ),
    "Q-C2": lambda: twalg.ground_field(twalg.QQ, gpar.c2_id()),
    "Q-C4q": lambda: twalg.ground_field(twalg.QQ, gpar.c4_q()),
    "H": lambda: twalg.quaternions(twalg.QQ),
    "Q[x]/x^2": lambda: twalg.truncated_polynomial(twalg.QQ, 2),
    "Q[C2]": lambda: twalg.group_algebra_with_inversion(twalg.QQ, 2),
    "Q[C2]-trivial": lambda: twalg.monoid_algebra(twalg.QQ, twalg.FiniteMonoid.cyclic_group(2), gpar.trivial(), {}),
    "Q[C3]": lambda: twalg.group_algebra_with_inversion(twalg.QQ, 3),
}


# input helpers -------------------------------------------------------------------

def _read_json(source):
    """A path to a JSON file, or inline JSON."""
    s = source.strip()
    if s.startswith("{") or s.startswith("["):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise UsageError(f"inline JSON does not parse: {exc}") from None
    try:
        with open(source) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source} is not valid JSON: {exc}") from None


def load_group(source):
    if source is None:
        return None
    if source in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[source]()
    return gpar.from_json(_read_json(source))


def load_algebra(source):
    if source.startswith("builtin:"):
        key = source[len("builtin:"):]
        if key not in BUILTIN_ALGEBRAS:
            raise UsageError(f"unknown builtin algebra {key!r}; choose from {', '.join(BUILTIN_ALGEBRAS)}")
        return BUILTIN_ALGEBRAS[key]()
    return twalg.algebra_from_json(_read_json(source))


def make_instance(args):
    group = load_group(getattr(args, "group", None))
    product = load_group(getattr(args, "product", None))
    if args.family == "twisted-symmetric" and group is None:
        raise UsageError("--family twisted-symmetric needs --group")
    return csg.make_instance(args.family, group=group, product=product)


def _env_arg(source, G):
    s = source.strip()
    if s.startswith("("):
        return envelope.parse_env(s, G)
    return envelope.env_from_json(_read_json(source), G)


# output ------------------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    elif isinstance(obj, list):
        yield prefix, " ".join(str(v) for v in obj)
    else:
        yield prefix, obj


def render(result, fmt, text=None):
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(result):
            w.writerow([k, v])
        return buf.getvalue()
    if text is not None:
        return text.rstrip("\n") + "\n"
    return "\n".join(f"{k}: {v}" for k, v in _flatten(result)) + "\n"


# subcommands ---------------------------------------------------------------------------

def cmd_axioms(args):
    inst = make_instance(args)
    rep = csg.verify_axioms(inst, args.max_level, bound=args.bound, samples=args.samples, seed=args.seed,
                            max_violations=args.max_violations, backend=args.backend)
    res = rep.to_json()
    lines = [f"{inst.family} through level {args.max_level}: " + ("ok" if rep.ok else "VIOLATIONS")]
    for v in rep.violations:
        lines.append(f"  ({v.identity}) level {v.level}: {v.witness}")
    return res, "\n".join(lines), 0 if rep.ok else 1


def cmd_compose(args):
    if args.family == "env":
        return cmd_env_compose(args)
    lhs, rhs = args.lhs or (args.morphisms[0] if args.morphisms else None), \
        args.rhs or (args.morphisms[1] if len(args.morphisms) > 1 else None)
    if lhs is None or rhs is None:
        raise UsageError("compose needs two morphisms: f2 f1 (or --lhs/--rhs)")
    inst = make_instance(args)
    f2, f1 = csg.parse_morphism(inst, lhs), csg.parse_morphism(inst, rhs)
    h = csg.compose(inst, f2, f1)
    out = csg.format_morphism(inst, h)
    return {"result": out, "src": h.src, "dst": h.dst, "values": list(h.ord.values)}, out, 0


def cmd_env_compose(args):
    G = load_group(args.group) or envelope.SymbolicLabels()
    lhs = args.lhs or (args.morphisms[0] if getattr(args, "morphisms", None) else None)
    rhs = args.rhs or (args.morphisms[1] if len(getattr(args, "morphisms", []) or []) > 1 else None)
    if lhs is None or rhs is None:
        raise UsageError("env composition needs --lhs and --rhs")
    f2, f1 = _env_arg(lhs, G), _env_arg(rhs, G)
    h = envelope.env_compose(G, f2, f1)
    text = envelope.format_env(h, G)
    res = envelope.env_to_json(h, G)
    res["literal"] = text
    return res, text, 0


def cmd_theta(args):
    inst = make_instance(args)
    f = csg.parse_morphism(inst, args.element)
    p = csg.theta(inst, f.g)
    return {"element": inst.format_elem(f.g), "theta": list(p.images), "sign": gpar.sign(p)}, \
        f"theta({inst.format_elem(f.g)}) = {list(p.images)}", 0


def cmd_lambda(args):
    inst = make_instance(args)
    f = csg.parse_morphism(inst, args.morphism)
    target = csg.lambda_target(inst)
    w = csg.lambda_tilde(inst, f)
    out = csg.format_morphism(target, w)
    par = csg.canonical_parity(inst)
    res = {"input": csg.format_morphism(inst, f), "lambda": out,
           "canonicalParity": {par.name(g): par.parity(g) for g in par.elements()}}
    return res, out, 0


def cmd_duality(args):
    inst = make_instance(args)
    f = csg.parse_morphism(inst, args.morphism)
    d = csg.duality(inst, f)
    out = csg.format_morphism(inst, d)
    return {"input": csg.format_morphism(inst, f), "dual": out}, out, 0


def cmd_fiso(args):
    G = load_group(args.group) or envelope.SymbolicLabels()
    f = _env_arg(args.env, G)
    w = envelope.F(f)
    back = envelope.F_inv(w)
    ok = back == f
    text = envelope.format_whiskered(w, G)
    return {"F": text, "roundtrip": ok}, text, 0 if ok else 1


def cmd_validate(args):
    A = load_algebra(args.algebra)
    rep = twalg.validate(A)
    res = rep.to_json()
    lines = [f"{A.name or 'algebra'}: " + ("ok" if rep.ok else "FAILED")]
    lines += [f"  {f.check}: {f.witness}" for f in rep.findings]
    if rep.ok:
        res["elements"] = twalg.element_checks(A)
        for name, row in res["elements"].items():
            kind = "hom" if row["homomorphism"] else ""
            kind += ("+" if kind and row["antihomomorphism"] else "") + ("anti" if row["antihomomorphism"] else "")
            lines.append(f"  {name}: order {row['order']}, {kind or 'neither'}")
    return res, "\n".join(lines), 0 if rep.ok else 1


def cmd_bar_matrix(args):
    inst = make_instance(args)
    A = load_algebra(args.algebra)
    B = barhom.BarFunctor(inst, A, args.variance)
    f = csg.parse_morphism(inst, args.morphism)
    M = barhom.bar_matrix(B, f).to_dense()
    F = A.field
    rows = [[F.fmt(x) for x in r] for r in M]
    text = "\n".join(" ".join(f"{x:>4}" for x in r) for r in rows)
    return {"morphism": csg.format_morphism(inst, f), "variance": args.variance, "matrix": rows}, text, 0


def cmd_homology(args):
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1 (degrees 0..D-1 are reported)")
    inst = make_instance(args)
    A = load_algebra(args.algebra)
    D = args.max_degree
    if args.variant == "positive":
        C = barhom.coinvariant_complex(inst, A, D)
    else:
        B = barhom.BarFunctor(inst, A, "contravariant")
        C = barhom.moore_complex(B, D, normalized=args.normalized)
    dims = barhom.homology_of_complex(C)[:D]
    res = {"dims": dims, "complexDims": C.dims, "field": A.field.name, "instance": inst.family}
    return res, f"{args.variant} homology of {A.name or 'A'} over {inst.family}: {dims}", 0


def cmd_oracle(args):
    if args.max_degree < 1:
        raise UsageError("--max-degree must be at least 1")
    A = load_algebra(args.algebra)
    dims = barhom.connes_oracle(A, args.max_degree - 1)
    return {"dims": dims, "field": A.field.name, "oracle": "connes"}, f"HC of {A.name or 'A'}: {dims}", 0


# parser ------------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="also write the JSON result to this file")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", required=True,
                     help="cyclic, dihedral, quaternionic, reflexive, symmetric, hyperoctahedral, twisted-symmetric")
    fam.add_argument("--group", help="group JSON file, inline JSON or one of " + ", ".join(BUILTIN_GROUPS))
    fam.add_argument("--product", help="form the product instance with this group")

    p = argparse.ArgumentParser(prog="csg", description="Crossed simplicial groups and twisted homology.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("axioms", parents=[common, fam], help="check the crossed simplicial group identities")
    a.add_argument("--max-level", type=int, default=3)
    a.add_argument("--bound", type=int, default=5000)
    a.add_argument("--samples", type=int, default=10_000)
    a.add_argument("--max-violations", type=int, default=20)
    a.add_argument("--backend", choices=("compiled", "python"))
    a.set_defaults(fn=cmd_axioms)

    c = sub.add_parser("compose", parents=[common], help="compose two morphisms f2 o f1")
    c.add_argument("--family", required=True, help="an instance family, or env")
    c.add_argument("--group")
    c.add_argument("--product")
    c.add_argument("--lhs")
    c.add_argument("--rhs")
    c.add_argument("morphisms", nargs="*")
    c.set_defaults(fn=cmd_compose)

    e = sub.add_parser("env-compose", parents=[common], help="compose in the envelope")
    e.add_argument("--group")
    e.add_argument("--lhs", required=True)
    e.add_argument("--rhs", required=True)
    e.set_defaults(fn=cmd_env_compose, morphisms=[])

    t = sub.add_parser("theta", parents=[common, fam], help="underlying permutation of an automorphism")
    t.add_argument("element")
    t.set_defaults(fn=cmd_theta)

    lam = sub.add_parser("lambda", parents=[common, fam], help="the functor lambda-tilde on a morphism")
    lam.add_argument("morphism")
    lam.set_defaults(fn=cmd_lambda)

    d = sub.add_parser("duality", parents=[common, fam], help="the self-duality on a morphism")
    d.add_argument("morphism")
    d.set_defaults(fn=cmd_duality)

    fi = sub.add_parser("fiso", parents=[common], help="the isomorphism F on an envelope morphism")
    fi.add_argument("--group")
    fi.add_argument("--env", required=True)
    fi.set_defaults(fn=cmd_fiso)

    v = sub.add_parser("validate-algebra", parents=[common], help="validate a twisted algebra")
    v.add_argument("--algebra", required=True)
    v.set_defaults(fn=cmd_validate)

    b = sub.add_parser("bar-matrix", parents=[common, fam], help="matrix of a morphism under the bar construction")
    b.add_argument("--algebra", required=True)
    b.add_argument("--variance", choices=("covariant", "contravariant"), default="contravariant")
    b.add_argument("morphism")
    b.set_defaults(fn=cmd_bar_matrix)

    h = sub.add_parser("homology", parents=[common, fam], help="Hochschild-type or positive homology")
    h.add_argument("--algebra", required=True)
    h.add_argument("--variant", choices=("positive", "hochschild"), default="positive")
    h.add_argument("--max-degree", type=int, required=True, help="build through D, report degrees 0..D-1")
    h.add_argument("--normalized", action="store_true")
    h.set_defaults(fn=cmd_homology)

    o = sub.add_parser("oracle", parents=[common], help="cyclic homology from the Connes bicomplex")
    o.add_argument("--algebra", required=True)
    o.add_argument("--max-degree", type=int, required=True)
    o.set_defaults(fn=cmd_oracle)
    return p


_INPUT_ERRORS = (UsageError, csg.CsgError, envelope.EnvError, twalg.AlgebraError, gpar.GroupError,
                 barhom.GroupOrderError, OrdMapError, KeyError)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    random.seed(args.seed)
    try:
        result, text, code = args.fn(args)
    except barhom.DescentError as exc:
        print(f"csg: descent check failed: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"csg {args.command}: {msg}", file=sys.stderr)
        return 2
    except barhom.BarError as exc:
        print(f"csg {args.command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(result, args.format, text if args.format == "pretty" else None))
    if args.out:
        try:
            with open(args.out, "w") as fh:
                json.dump(result, fh, sort_keys=True, indent=2, ensure_ascii=False)
                fh.write("\n")
        except OSError as exc:
            print(f"csg: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 2
    return code


if __name__ == "__main__" and not os.environ.get("CSG_NO_MAIN"):
    sys.exit(main())
