"""Command-line interface: ``tensorgf <command> ...``.

Exit status is 0 on success, 1 on a usage error (bad weight, expression,
algebra or option) and 2 when ``validate`` finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .algebra import DivergentExpansionError, UsageError
from .cache import Cache
from .diophantine import LinearSystem
from .grobner import sorted_text
from .omega import OmegaExpr, omega_eq, omega_ge
from .pipeline import (
    DEFAULT_DEGREE_BOUND,
    AlgebraSpec,
    ValidationError,
    cached_hilbert_basis,
    cross_validate,
    elementary_couplings,
    generating_function,
    instance,
    relation_check,
    tensor_coefficient,
)
from .rules import Weight, decompose, multiplicity, parse_weight
from .textio import parse_summands

ROUTE_NAMES = {"hilbert": "hilbert-grobner", "omega": "vector-omega"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND,
                   help="largest total degree a series expansion may reach")
    p.add_argument("--route", choices=tuple(ROUTE_NAMES), default="hilbert")
    p.add_argument("--order", default=None,
                   help="term order on coupling labels, e.g. 'grevlex' or 'lex:E7>E8'")
    p.add_argument("--forbidden-set", default="published",
                   help="published forbidden set to realise when no --order is given")
    p.add_argument("--free", default=None, help="comma-separated free variables (omega route)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cache-dir", default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="tensorgf", description="Tensor-product multiplicities and generating functions.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("multiplicity", parents=[common], help="multiplicity of nu in lam x mu")
    p.add_argument("algebra")
    p.add_argument("lam")
    p.add_argument("mu")
    p.add_argument("nu")

    p = sub.add_parser("decompose", parents=[common], help="all nu in lam x mu with multiplicities")
    p.add_argument("algebra")
    p.add_argument("lam")
    p.add_argument("mu")

    for name, text in (("couplings", "elementary couplings"), ("relations", "reduced basis of relations"),
                       ("genfun", "generating function")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("algebra")

    p = sub.add_parser("coefficient", parents=[common], help="GF coefficient at given labels")
    p.add_argument("algebra")
    p.add_argument("weights", nargs="+", help="one weight per grading block, e.g. 1,1 1,1 1,1")

    p = sub.add_parser("omega", parents=[common], help="apply Omega_>= or Omega_= to an expression")
    p.add_argument("mode", choices=("ge", "eq"))
    p.add_argument("variable")
    p.add_argument("expression")

    p = sub.add_parser("hilbert-basis", parents=[common], help="Hilbert basis of a coupling system")
    p.add_argument("target", help="algebra name or path to a JSON linear system")

    p = sub.add_parser("validate", parents=[common], help="cross-validate GF coefficients")
    p.add_argument("algebra")
    p.add_argument("--bound", type=int, default=2, help="largest Dynkin label checked")
    return ap


# -- commands ------------------------------------------------------------


def _weights(algebra: str, texts) -> list[Weight]:
    return [parse_weight(t, algebra) for t in texts]


def _spec(args, algebra: str) -> AlgebraSpec:
    free = tuple(s.strip() for s in args.free.split(",")) if args.free else None
    return AlgebraSpec(algebra, route=ROUTE_NAMES[args.route], order=args.order,
                       forbidden=args.forbidden_set, free=free)


def _labels(w) -> str:
    return ",".join(map(str, w))


def cmd_multiplicity(args, cache):
    lam, mu, nu = _weights(args.algebra, (args.lam, args.mu, args.nu))
    m = multiplicity(lam, mu, nu)
    doc = {"algebra": args.algebra, "lam": list(lam.labels), "mu": list(mu.labels),
           "nu": list(nu.labels), "multiplicity": m}
    return doc, str(m)


def cmd_decompose(args, cache):
    lam, mu = _weights(args.algebra, (args.lam, args.mu))
    parts = decompose(lam, mu)
    items = sorted(parts.items(), key=lambda kv: kv[0].labels)
    doc = {"algebra": args.algebra, "lam": list(lam.labels), "mu": list(mu.labels),
           "terms": [{"nu": list(w.labels), "multiplicity": m} for w, m in items]}
    text = " + ".join(f"{m if m > 1 else ''}({_labels(w.labels)})" for w, m in items)
    return doc, text


def _split(inst, exp) -> list[tuple]:
    out, k = [], 0
    for b in inst.weight_blocks:
        out.append(tuple(exp[k:k + len(b)]))
        k += len(b)
    return out


def cmd_couplings(args, cache):
    cat = elementary_couplings(_spec(args, args.algebra), cache)
    doc = cat.to_dict()
    lines = []
    for c in cat.couplings:
        line = f"{c.label}: {c.monomial(cat.grading)}"
        if cat.instance.name != "magic-square-3":
            line += "  " + " ".join(f"({_labels(w)})" for w in _split(cat.instance, c.grading))
        if c.extra_name:
            line += f"  [{_labels(c.extra)}]"
        lines.append(line)
    return doc, "\n".join(lines)


def cmd_relations(args, cache):
    cat = elementary_couplings(_spec(args, args.algebra), cache)
    gb = cat.relations
    doc = {"algebra": args.algebra, **gb.to_dict(), "forbidden": cat.forbidden_text()}
    if cat.instance.relations:
        doc["published_relations_reduce_to_zero"] = all(v == "0" for v in relation_check(cat).values())
    lines = [f"order: {gb.order.describe(gb.table)}"]
    lines += [sorted_text(g, gb.order) for g in gb.generators] or ["(no relations)"]
    lines.append("forbidden: " + (", ".join(cat.forbidden_text()) or "none"))
    return doc, "\n".join(lines)


def cmd_genfun(args, cache):
    spec = _spec(args, args.algebra)
    g = generating_function(spec, cache)
    doc = {"algebra": args.algebra, "route": spec.route, "variables": list(g.table.names),
           "generating_function": g.to_compact()}
    return doc, g.to_compact()


def cmd_coefficient(args, cache):
    inst = instance(args.algebra)
    blocks = inst.weight_blocks
    if len(args.weights) != len(blocks):
        raise UsageError(f"{args.algebra} needs {len(blocks)} weights, got {len(args.weights)}")
    parts = []
    for text, b in zip(args.weights, blocks):
        try:
            labels = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise UsageError(f"malformed weight {text!r}; expected comma-separated integers") from None
        if len(labels) != len(b):
            raise UsageError(f"weight {text!r} needs {len(b)} labels")
        parts.append(labels)
    g = generating_function(_spec(args, args.algebra), cache)
    c = tensor_coefficient(g, *parts, bound=args.degree_bound)
    return {"algebra": args.algebra, "labels": [list(p) for p in parts], "coefficient": c}, str(c)


def cmd_omega(args, cache):
    parts = parse_summands(args.expression)
    table = parts[0].table
    if args.variable not in table.names:
        raise UsageError(f"variable {args.variable!r} does not occur in the expression")
    op = omega_ge if args.mode == "ge" else omega_eq
    out = op(OmegaExpr(parts), args.variable)
    g = out.to_gf()
    return {"mode": args.mode, "variable": args.variable, "input": args.expression,
            "result": g.to_compact()}, g.to_compact()


def cmd_hilbert_basis(args, cache):
    path = Path(args.target)
    if path.suffix == ".json" or path.exists():
        try:
            system = LinearSystem.from_dict(json.loads(path.read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read linear system from {path}: {exc}") from exc
    else:
        system = instance(args.target).system
    hb = cached_hilbert_basis(system, cache)
    doc = hb.to_dict()
    lines = [" ".join(system.names)] + [" ".join(map(str, s)) for s in hb.solutions]
    return doc, "\n".join(lines)


def cmd_validate(args, cache):
    if args.bound < 0:
        raise UsageError("--bound must be non-negative")
    rep = cross_validate(_spec(args, args.algebra), args.bound, cache)
    doc = rep.to_dict()
    text = f"{args.algebra}: {rep.checked} checked, {len(rep.mismatches)} mismatches"
    for m in rep.mismatches[:20]:
        text += "\n  " + json.dumps(m)
    return doc, text


COMMANDS = {
    "multiplicity": cmd_multiplicity,
    "decompose": cmd_decompose,
    "couplings": cmd_couplings,
    "relations": cmd_relations,
    "genfun": cmd_genfun,
    "coefficient": cmd_coefficient,
    "omega": cmd_omega,
    "hilbert-basis": cmd_hilbert_basis,
    "validate": cmd_validate,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help and on bad options; hand back the code
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    if args.degree_bound < 0:
        print("tensorgf: error: --degree-bound must be non-negative", file=sys.stderr)
        return 1
    cache = Cache(args.cache_dir, enabled=not args.no_cache)
    try:
        doc, text = COMMANDS[args.command](args, cache)
    except (UsageError, DivergentExpansionError) as exc:
        print(f"tensorgf: error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"tensorgf: validation failed: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        out.write(json.dumps({"command": args.command, "result": doc}, indent=2) + "\n")
    else:
        out.write(text + "\n")
    if args.command == "validate" and doc["mismatches"]:
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
