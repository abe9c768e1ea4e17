"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (singular input where a regular
one is required, missing principal-block data, failed verification), 2 on
usage errors (bad flags, malformed expressions).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .affweyl import AlcoveError, EllContext
from .charlib import CharacterError
from .expr import Atom, ParseError, parse
from .fusion import (FusionError, check_nonvanishing, check_omega_equivariance, check_ring_axioms,
                     check_two_formulas, fusion_row, get_table)
from .regquot import (Kind, LinkageError, PrincipalFusionRule, RegObject, RegQuotError, linkage_class_of,
                      make_label, omega_mul, omega_twist, regpart_objects, regpart_tensor, rules_for)
from .rootsys import RootSystemError, build, format_weight, parse_weight
from .tiltprofile import ProfileError, gfd_tensor, simple_profile, weyl_profile


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


DOMAIN_ERRORS = (AlcoveError, CharacterError, FusionError, RegQuotError, ProfileError, DomainError)


# ---------------------------------------------------------------------------
# output


class Output:
    """Rows of flat records, rendered as text, JSON or CSV with identical content."""

    def __init__(self, fields: Sequence[str], text: Callable[[dict], str]):
        self.fields = list(fields)
        self.text = text
        self.rows: List[dict] = []

    def add(self, **row) -> None:
        self.rows.append(row)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.rows, ensure_ascii=False, indent=None, separators=(",", ":"))
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=self.fields, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow(row)
            return buf.getvalue().rstrip("\n")
        return "\n".join(self.text(row) for row in self.rows)


def _w(weight) -> str:
    return format_weight(weight)


# ---------------------------------------------------------------------------
# shared helpers


def _context(args) -> EllContext:
    if args.family is None or args.rank is None or args.ell is None:
        raise UsageError("--family, --rank and --ell are required")
    try:
        rs = build(args.family.upper(), args.rank)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from exc
    return EllContext(rs, args.ell)


def _weight(ctx: EllContext, text: str, flag: str):
    try:
        return parse_weight(text, ctx.rank)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _rules(ctx: EllContext, args) -> PrincipalFusionRule:
    extra = PrincipalFusionRule.load(args.rules) if args.rules else None
    return rules_for(ctx, extra)


def _atoms(ctx: EllContext, text: str) -> List[Atom]:
    try:
        return list(parse(text, ctx.rank).atoms)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc


def _label(ctx: EllContext, atom: Atom):
    kind = {"Simple": Kind.SIMPLE, "Weyl": Kind.WEYL, "Tilting": Kind.TILTING, "Custom": Kind.CUSTOM}[atom.kind]
    return make_label(ctx, kind, atom.word, atom.weight, atom.name)


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(ctx: EllContext, args) -> Output:
    rs = ctx.rs
    out = Output(["key", "value"], lambda r: f"{r['key']}: {r['value']}")
    out.add(key="type", value=rs.name)
    out.add(key="ell", value=ctx.ell)
    out.add(key="coxeter_number", value=rs.coxeter_number)
    out.add(key="positive_roots", value=rs.num_positive_roots)
    out.add(key="fundamental_group_order", value=rs.fundamental_group_order)
    out.add(key="alcove_weights", value=" ".join(_w(w) for w in ctx.fundamental_weights_in_alcove))
    for om in ctx.omega_group:
        out.add(key=f"omega {om.name}", value=_w(om.zero_image))
    return out


def cmd_reduce(ctx: EllContext, args) -> Output:
    tau = _weight(ctx, args.weight, "--weight")
    red = ctx.reduce(tau)
    if not red.is_regular:
        out = Output(["singular", "root", "m"],
                     lambda r: f"singular root={r['root']} m={r['m']}")
        out.add(singular=True, root=_w(ctx.rs.positive_roots[red.beta]), m=red.m)
        return out
    out = Output(["x", "lambda", "sign", "len"],
                 lambda r: f"x={r['x']} lambda={r['lambda']} sign={r['sign']} len={r['len']}")
    out.add(x=ctx.reduced_word(red.x), **{"lambda": _w(red.lam)}, sign=red.sign, len=red.length)
    return out


def cmd_fuse(ctx: EllContext, args) -> Output:
    lam = _weight(ctx, args.lhs, "--lhs")
    mu = _weight(ctx, args.rhs, "--rhs")
    out = Output(["nu", "c"], lambda r: f"nu={r['nu']} c={r['c']}")
    for nu, c in fusion_row(ctx, lam, mu).items():
        out.add(nu=_w(nu), c=c)
    return out


def cmd_fusion_table(ctx: EllContext, args) -> Output:
    table = get_table(ctx, args.cache)
    if args.format == "json":
        out = Output([], lambda r: "")
        out.render = lambda fmt: table.to_json()  # the canonical cache serialization
        return out
    out = Output(["l", "m", "nu", "c"], lambda r: f"l={r['l']} m={r['m']} nu={r['nu']} c={r['c']}")
    for (lam, mu), row in table.entries.items():
        for nu, c in row.items():
            out.add(l=_w(lam), m=_w(mu), nu=_w(nu), c=c)
    return out


def cmd_regpart(ctx: EllContext, args) -> Output:
    atoms = _atoms(ctx, args.expr)
    if len(atoms) < 2:
        raise UsageError("regpart needs a tensor product of at least two objects")
    rules = _rules(ctx, args)
    table = get_table(ctx, args.cache)
    obj = RegObject.of([_label(ctx, atoms[0])])
    for atom in atoms[1:]:
        obj = regpart_objects(ctx, obj, RegObject.of([_label(ctx, atom)]), rules, table)
    out = Output(["label", "mult"], lambda r: r["text"])
    if args.format == "text":
        out.add(text=obj.render(ctx))
    else:
        for label, m in obj.items:
            out.add(label=label.render(ctx), mult=m)
    return out


def cmd_gfd(ctx: EllContext, args) -> Output:
    labels = [_label(ctx, a) for a in _atoms(ctx, args.expr)]
    total, strong = gfd_tensor(ctx, labels)
    out = Output(["gfd", "strongly_regular"],
                 lambda r: f"gfd={r['gfd']} strongly_regular={str(r['strongly_regular']).lower()}")
    out.add(gfd=total, strongly_regular=strong)
    return out


def cmd_profile(ctx: EllContext, args) -> Output:
    atoms = _atoms(ctx, args.expr)
    if len(atoms) != 1 or atoms[0].kind not in ("Simple", "Weyl"):
        raise UsageError("profile takes a single L(...) or Delta(...) object")
    atom = atoms[0]
    lam = atom.weight or (0,) * ctx.rank
    prof = (simple_profile if atom.kind == "Simple" else weyl_profile)(ctx, atom.word, lam)
    out = Output(["degree", "constraints"], lambda r: f"{r['degree']}: {r['constraints']}")
    for i in prof.support:
        out.add(degree=i, constraints="; ".join(c.describe() for c in prof.constraint(i)))
    return out


def _verify_reduce(ctx: EllContext) -> Optional[str]:
    for x in ctx.enumerate_dominant(3):
        length = ctx.length(x)
        if ctx.sign(x) != (-1) ** length:
            return f"sign of {ctx.reduced_word(x)} is not (-1)^{length}"
        for lam in ctx.fundamental_weights_in_alcove:
            red = ctx.reduce(ctx.dot_act(x, lam))
            if not red.is_regular or red.x != x or red.lam != lam or red.length != length:
                return f"reduce(x·λ) != (x, λ) for x={ctx.reduced_word(x)}, λ={lam}"
    return None


def _verify_rules(ctx: EllContext, rules: PrincipalFusionRule, table) -> Optional[str]:
    weights = ctx.fundamental_weights_in_alcove
    for entry in rules.entries:
        if ctx.ell < entry.min_ell:
            continue
        for lam in weights:
            for mu in weights:
                base = regpart_tensor(ctx, (entry.x, lam, None), (entry.y, mu, None), rules, table)
                swapped = regpart_tensor(ctx, (entry.y, mu, None), (entry.x, lam, None), rules, table)
                if base != swapped:
                    return f"({entry.x},{entry.y}) at {lam},{mu}: not symmetric"
                for nu in table.row(lam, mu):
                    block = RegObject.of([(lb, m) for lb, m in base.items if lb.lam == nu])
                    try:
                        if linkage_class_of(ctx, block) != nu:
                            return f"({entry.x},{entry.y}) at {lam},{mu}: block {nu} in wrong class"
                    except LinkageError as exc:
                        return f"({entry.x},{entry.y}) at {lam},{mu}: {exc}"
                for a in ctx.omega_group:
                    for b in ctx.omega_group:
                        twisted = regpart_tensor(ctx, (entry.x, lam, a), (entry.y, mu, b), rules, table)
                        if twisted != omega_twist(ctx, base, omega_mul(ctx, a, b)):
                            return f"Ω-twist coherence fails for ({entry.x},{entry.y}) with {a.name},{b.name}"
    return None


def cmd_verify(ctx: EllContext, args) -> Output:
    table = get_table(ctx, args.cache)
    rules = _rules(ctx, args)
    checks = [
        ("two-formula agreement", lambda: check_two_formulas(ctx)),
        ("fusion ring axioms", lambda: check_ring_axioms(table)),
        ("omega equivariance", lambda: check_omega_equivariance(ctx, table)),
        ("nonvanishing", lambda: check_nonvanishing(ctx, table)),
        ("reduce round trip and sign", lambda: _verify_reduce(ctx)),
        ("regular-part rules", lambda: _verify_rules(ctx, rules, table)),
    ]
    out = Output(["check", "status", "detail"],
                 lambda r: f"{r['status']} {r['check']}" + (f": {r['detail']}" if r["detail"] else ""))
    for name, run in checks:
        failure = run()
        out.add(check=name, status="FAIL" if failure else "PASS", detail=failure or "")
        if failure:
            out.failed = True
            break
    return out


COMMANDS: Dict[str, Callable] = {
    "info": cmd_info,
    "reduce": cmd_reduce,
    "fuse": cmd_fuse,
    "fusion-table": cmd_fusion_table,
    "regpart": cmd_regpart,
    "gfd": cmd_gfd,
    "profile": cmd_profile,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--family", default=default, help="root system family (A-G)")
    p.add_argument("--rank", type=int, default=default, help="rank")
    p.add_argument("--ell", type=int, default=default, help="dilation parameter ℓ (at least h)")
    p.add_argument("--format", choices=["text", "json", "csv"],
                   default=argparse.SUPPRESS if suppress else "text")
    p.add_argument("--cache", default=default, metavar="DIR",
                   help="fusion table cache directory (default: $ALCOVE_CACHE)")
    p.add_argument("--rules", default=default, metavar="FILE", help="extra principal-block rule file (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alcove", description="Alcove combinatorics and fusion rules.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _add_common(p, suppress=True)
        return p

    add("info", "root system and alcove data")
    add("reduce", "factor a weight as x·λ").add_argument("--weight", required=True)
    p = add("fuse", "one fusion row λ ⊗ μ")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    add("fusion-table", "full fusion table (cached)")
    add("regpart", "regular part of a tensor product").add_argument("expr")
    add("gfd", "good filtration dimension of a tensor product").add_argument("expr")
    add("profile", "minimal tilting complex constraints").add_argument("expr")
    add("verify", "run the structural checks")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ctx = _context(args)
        out = COMMANDS[args.command](ctx, args)
    except UsageError as exc:
        print(f"alcove: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"alcove: {exc}", file=sys.stderr)
        return 1
    text = out.render(args.format)
    if text:
        try:
            print(text)
            sys.stdout.flush()
        except BrokenPipeError:  # downstream closed early, e.g. `| head`
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 1 if getattr(out, "failed", False) else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
