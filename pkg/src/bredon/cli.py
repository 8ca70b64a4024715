"""Command-line front end: ``bredon {cohomology,ring,oracle,properties,freeness}``.

Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .abelian import FgAbelianGroup
from .acoeff import REPRESENTATION_DEPENDENT, CoeffSystem, a_expr, a_group
from .cellular import assemble_functor, coefficient_table, sphere_complex
from .mackey import MackeyExpr, MackeyTable, concretize, signature
from .repring import GradingSyntaxError, GroupSpec, VirtualRep, classify, fixed_dims, format_grading, parse_grading

SCHEMA = "bredon-report/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# JSON helpers


def emit(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def parse_report(text: str) -> dict:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    return data


def decode_answer(entry: dict, n: int) -> tuple[FgAbelianGroup, MackeyExpr | None]:
    """Rebuild the group and functor of one cohomology result."""
    grp = FgAbelianGroup.parse(entry["group"])
    m = entry["mackey"]
    return grp, (None if m is None else MackeyExpr.from_json(n, m))


# ---------------------------------------------------------------------------
# coefficient handling


def _group(n: int) -> GroupSpec:
    try:
        return GroupSpec(n)
    except ValueError as e:
        raise UsageError(str(e))


def _coeff(spec: str, n: int) -> CoeffSystem:
    """``Z``, ``A`` or ``A:i,j`` (Burnside at prime indices i, j)."""
    if spec == "Z":
        return CoeffSystem.constant(n)
    if spec == "A":
        return CoeffSystem.burnside(n)
    if spec.startswith("A:"):
        try:
            I = frozenset(int(x) for x in spec[2:].split(",") if x.strip())
            return CoeffSystem(n, I)
        except ValueError as e:
            raise UsageError(f"bad coefficient spec {spec!r}: {e}")
    raise UsageError(f"unknown coefficients {spec!r}; use Z, A or A:i,j")


def sphere_form(alpha: VirtualRep) -> tuple[VirtualRep, int, str] | None:
    """Write ``alpha`` as ``V - k`` (homology) or ``k - V`` (cohomology) with
    ``V`` a sum of non-trivial irreducibles, if possible."""
    g = alpha.group
    coeffs = dict(alpha.coeffs)
    if all(c >= 0 for c in coeffs.values()) and alpha.trivial <= 0:
        return VirtualRep.build(g, 0, coeffs), -alpha.trivial, "homology"
    if all(c <= 0 for c in coeffs.values()) and alpha.trivial >= 0:
        return VirtualRep.build(g, 0, {r: -c for r, c in coeffs.items()}), alpha.trivial, "cohomology"
    return None


def _oracle_table(alpha: VirtualRep, M: MackeyTable) -> MackeyTable | None:
    form = sphere_form(alpha)
    if form is None:
        return None
    V, k, variance = form
    return assemble_functor(sphere_complex(V), M, k - 1, variance).table


# ---------------------------------------------------------------------------
# commands


def _gradings(args, g: GroupSpec) -> list[VirtualRep]:
    out = [parse_grading(a, g) for a in args.alpha or []]
    if args.sphere:
        V = parse_grading(args.sphere, g)
        lo, _, hi = args.degrees.partition(":")
        for k in range(int(lo), int(hi or lo) + 1):
            out.append(k - V if args.cohomological else V - k)
    if not out:
        raise UsageError("give at least one --alpha or a --sphere range")
    return out


def cmd_cohomology(args) -> tuple[dict, int]:
    g = _group(args.n)
    custom = None
    if args.coeff_file:
        with open(args.coeff_file) as fh:
            custom = MackeyTable.from_text(fh.read())
        if custom.n != g.n:
            raise UsageError(f"coefficient table is over C_{custom.n}, not C_{g.n}")
        coeff = None
    else:
        coeff = _coeff(args.coeff, g.n)
    results = []
    status = 0
    for alpha in _gradings(args, g):
        fd = fixed_dims(alpha)
        entry: dict[str, Any] = {
            "alpha": format_grading(alpha),
            "fixed_dims": {str(d): v for d, v in fd.dims},
            "case": classify(fd).value,
        }
        if custom is not None:
            t = _oracle_table(alpha, custom)
            if t is None:
                raise UsageError(f"{format_grading(alpha)} is not reachable by a representation sphere")
            entry["group"] = str(t.value(g.n))
            entry["levels"] = {str(d): str(t.value(d)) for d in g.divisors}
            entry["mackey"] = None
            entry["summary"] = f"{t.value(g.n)}; oracle table"
        else:
            grp = a_group(fd, coeff.I)
            expr = a_expr(fd, coeff.I)
            entry["group"] = str(grp)
            entry["mackey"] = None if expr is None else expr.to_json()
            entry["summary"] = f"{grp}; " + (f"Mackey: {REPRESENTATION_DEPENDENT}" if expr is None else str(expr))
            if args.oracle:
                M = coefficient_table(g.n, concretize(coeff.expr()))
                t = _oracle_table(alpha, M)
                if t is None:
                    entry["oracle"] = "UNREACHABLE"
                else:
                    same = t.value(g.n) == grp
                    if expr is not None:
                        same = same and signature(t) == signature(concretize(expr))
                    entry["oracle"] = "MATCH" if same else "MISMATCH"
                    if not same:
                        status = 2
        results.append(entry)
    label = "custom" if custom is not None else coeff.label()
    return {"schema": SCHEMA, "command": "cohomology", "n": g.n, "coeff": label, "results": results}, status


def _render_cohomology(rep: dict) -> str:
    lines = []
    for e in rep["results"]:
        dims = " ".join(f"{d}:{v}" for d, v in e["fixed_dims"].items())
        lines.append(f"alpha = {e['alpha']}")
        lines.append(f"  fixed dims: {dims}")
        lines.append(f"  case: {e['case']}")
        lines.append(f"  {e['summary']}")
        if "oracle" in e:
            lines.append(f"  oracle: {e['oracle']}")
    return "\n".join(lines)


def _ring_operand(text: str, n: int):
    from .ringz import RingClass, class_of_monomial, parse_monomial

    if "@" in text:
        value, _, grading = text.partition("@")
        return RingClass(parse_grading(grading, GroupSpec(n)), int(value))
    return class_of_monomial(parse_monomial(text, n))


def _class_dict(c) -> dict:
    return {"grading": format_grading(c.grading), "order": c.order, "value": c.value, "text": str(c)}


def cmd_ring(args) -> tuple[dict, int]:
    from .ringz import multiply, relations_suite

    g = _group(args.n)
    rep: dict[str, Any] = {"schema": SCHEMA, "command": f"ring {args.op}", "n": g.n}
    if args.op == "relations":
        r = relations_suite(g.n, samples=args.samples, seed=args.seed)
        rep.update(checked=r.checked, violations=r.violations)
        return rep, 0 if r.ok else 2
    operands = [_ring_operand(t, g.n) for t in args.operands]
    if args.op == "class":
        if len(operands) != 1:
            raise UsageError("ring class takes one operand")
        rep["result"] = _class_dict(operands[0])
        return rep, 0
    if len(operands) != 2:
        raise UsageError(f"ring {args.op} takes two operands")
    x, y = operands
    if args.op == "add":
        if x.grading.key() != y.grading.key():
            raise UsageError(f"cannot add classes in gradings {format_grading(x.grading)} and {format_grading(y.grading)}")
        rep["result"] = _class_dict(x + y)
    else:
        rep["result"] = _class_dict(multiply(x, y))
    return rep, 0


def _coeff_or_label(spec: str, n: int):
    c = _coeff(spec, n)
    if not c.I:
        return "Z"
    if c.I == CoeffSystem.burnside(n).I:
        return "A"
    return c


def cmd_oracle(args) -> tuple[dict, int]:
    from .verify import SweepReport, oracle_sweep, sphere_grid

    g = _group(args.n)
    coeff = _coeff_or_label(args.coeff, g.n)
    r = oracle_sweep(sphere_grid(g.n, args.max_factors), coeff, SweepReport("oracle"))
    rep = {
        "schema": SCHEMA,
        "command": "oracle",
        "n": g.n,
        "coeff": args.coeff,
        "comparisons": r.checked,
        "mackey_comparisons": r.extra["mackey_comparisons"],
        "mismatches": r.failures,
    }
    return rep, 0 if r.ok else 2


def cmd_properties(args) -> tuple[dict, int]:
    from .verify import property_sweep

    g = _group(args.n)
    r = property_sweep(g.n, args.samples, args.seed)
    rep = {"schema": SCHEMA, "command": "properties", "n": g.n, "seed": args.seed, "samples": args.samples,
           "checked": r.checked, "failures": r.failures}
    return rep, 0 if r.ok else 2


def cmd_freeness(args) -> tuple[dict, int]:
    from .freeness import check_even_type, cp_cells, cp_floor_dims, grassmann_cells

    g = _group(args.n)
    rows = []
    if args.kind == "cp":
        cells = cp_cells(args.m, g.n)
        for r, c in enumerate(cells):
            rows.append({"cell": c.label, "grading": format_grading(c.rep), "isotropy": c.isotropy,
                         "dims_direct": list(c.fixed.as_tuple()), "dims_floor": list(cp_floor_dims(r, g.n).as_tuple())})
    else:
        if args.l is None:
            raise UsageError("grassmann needs --l")
        gc = grassmann_cells(args.l, args.m, g.n)
        cells = [c.cell for c in gc]
        for c in gc:
            rows.append({"cell": str(c.symbol), "grading": format_grading(c.cell.rep), "isotropy": c.cell.isotropy,
                         "dims_direct": list(c.dims_direct.as_tuple()), "dims_floor": list(c.dims_floor.as_tuple())})
    report = check_even_type(cells)
    bad_cells = {j for _, j in report.offending}
    for i, row in enumerate(rows):
        row["mismatch"] = row["dims_direct"] != row["dims_floor"]
        row["ll_ok"] = i not in bad_cells
    rep = {"schema": SCHEMA, "command": f"freeness {args.kind}", "n": g.n, "even_type": report.ok,
           "generators": len(report.basis), "offending": [list(p) for p in report.offending], "rows": rows}
    return rep, 0 if report.ok else 2


def _render_freeness(rep: dict) -> str:
    cols = [
        [r["cell"], r["grading"], str(tuple(r["dims_direct"])), str(tuple(r["dims_floor"])),
         "yes" if r["mismatch"] else "", "ok" if r["ll_ok"] else "FAIL"]
        for r in rep["rows"]
    ]
    head = ["cell", "grading", "dims (direct)", "dims (floor)", "mismatch", "<<"]
    widths = [max(len(x) for x in col) for col in zip(head, *cols)]
    lines = ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in [head, *cols]]
    lines.append(f"even type: {'yes' if rep['even_type'] else 'no'}; free generators: {rep['generators']}")
    return "\n".join(lines)


def _render(rep: dict) -> str:
    cmd = rep["command"]
    if cmd == "cohomology":
        return _render_cohomology(rep)
    if cmd.startswith("ring"):
        if "result" in rep:
            return rep["result"]["text"]
        return f"{rep['checked']} relations checked, {len(rep['violations'])} violations" + "".join(
            f"\n  {v}" for v in rep["violations"]
        )
    if cmd == "oracle":
        return f"{rep['comparisons']} comparisons, {len(rep['mismatches'])} mismatches" + "".join(
            f"\n  {v}" for v in rep["mismatches"]
        )
    if cmd == "properties":
        return f"{rep['checked']} gradings checked, {len(rep['failures'])} failures" + "".join(
            f"\n  {v}" for v in rep["failures"]
        )
    if cmd.startswith("freeness"):
        return _render_freeness(rep)
    return emit(rep)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bredon", description="RO(C_n)-graded Bredon cohomology of a point")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--n", type=int, required=True, help="group order (odd, squarefree)")
        sp.add_argument("--format", choices=["table", "json"], default="table")

    c = sub.add_parser("cohomology", help="closed-form cohomology of S^0")
    common(c)
    c.add_argument("--coeff", default="Z", help="Z, A, or A:i,j for Burnside at prime indices i, j")
    c.add_argument("--coeff-file", help="custom Mackey table (structured text); oracle only")
    c.add_argument("--alpha", action="append", help="grading expression (repeatable)")
    c.add_argument("--sphere", help="representation V for a degree range")
    c.add_argument("--degrees", default="0:0", help="k range LO:HI used with --sphere")
    c.add_argument("--cohomological", action="store_true", help="use k - V instead of V - k")
    c.add_argument("--oracle", action="store_true", help="compare with the cellular oracle")

    r = sub.add_parser("ring", help="products of classes")
    common(r)
    r.add_argument("op", choices=["mul", "add", "class", "relations"])
    r.add_argument("operands", nargs="*", help='monomials like "u(3)^2 a(1)" or "value @ grading"')
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--samples", type=int, default=50)

    o = sub.add_parser("oracle", help="sweep the cellular oracle against the engines")
    common(o)
    o.add_argument("--max-factors", type=int, default=2)
    o.add_argument("--coeff", default="Z")

    pr = sub.add_parser("properties", help="randomized structural checks")
    common(pr)
    pr.add_argument("--samples", type=int, default=5000)
    pr.add_argument("--seed", type=int, default=0)

    f = sub.add_parser("freeness", help="even-type checks for CP and Grassmannians")
    f.add_argument("kind", choices=["cp", "grassmann"])
    common(f)
    f.add_argument("--m", type=int, required=True)
    f.add_argument("--l", type=int)
    return p


_COMMANDS = {
    "cohomology": cmd_cohomology,
    "ring": cmd_ring,
    "oracle": cmd_oracle,
    "properties": cmd_properties,
    "freeness": cmd_freeness,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        rep, status = _COMMANDS[args.command](args)
    except (UsageError, GradingSyntaxError, ValueError, ArithmeticError, OSError) as e:
        print(f"bredon: error: {e}", file=sys.stderr)
        return 1
    print(emit(rep) if args.format == "json" else _render(rep))
    return status


if __name__ == "__main__":
    sys.exit(main())
