"""Command-line front end.

    homvar <command> <Series><rank>/P{...} [--k N] [--class j] [--json] [--seed N]

Exit status: 0 ok, 1 a verification failed, 2 parse error,
3 request outside the covered catalogue, 4 guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import dynkin
from .dynkin import DiagramError, DiagramSpec, GuardExceeded
from .linspaces import (ExposedShortError, KOutOfRange, RecipeStuck, UncoveredCatalog,
                        ambient_module, cone_of_lines, exposed_planes_catalog, line_classes, max_linear_space,
                        planes, reconstruct_diagram, tits_shadow)
from .parabolic import (MarkedDiagram, ParabolicSpec, closed_orbit_Y1, dimension, grading,
                        is_cominuscule, is_exposed_short, is_minuscule_weight, levi_factors)
from .prolong import (POLY_GUARD, UncoveredSystem, family_for, parse_family,
                      strict_prolongation_report)
from .reps import (DIM_GUARD, UncoveredFamily, parse_weight, restrict_to_levi,
                   verify_normal_space, weights_with_mults, weyl_dim)

SCHEMA = 1
DEFAULT_SEED = 20240601
COMMANDS = ("info", "grading", "classify", "lines", "planes", "shadow", "reconstruct",
            "rep", "prolong", "octonion-verify")

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_BONDS = {1: ("—", "—"), 2: ("⇒", "⇐"), 3: ("⇛", "⇚")}


class ParseFailure(ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


# ---------------------------------------------------------------- rendering

def _glyph(mark: int) -> str:
    if not mark:
        return "○"
    return "●" if mark == 1 else "●" + str(mark).translate(_SUP)


def _bond(d, a: int, b: int) -> str:
    e = d.edge(a, b)
    right, left = _BONDS[e.bond]
    if e.bond == 1:
        return right
    return right if e.arrow == b else left


def _longest_path(d, comp: tuple[int, ...]) -> list[int]:
    best: list[int] = []
    ends = sorted(n for n in comp if len(d.neighbors(n)) <= 1)
    for start in ends:
        stack = [[start]]
        while stack:
            path = stack.pop()
            if len(path) > len(best) or (len(path) == len(best) and path < best):
                best = path
            for nb in sorted(d.neighbors(path[-1]), reverse=True):
                if nb not in path:
                    stack.append(path + [nb])
    return best


def _render_component(d, comp, marks) -> list[str]:
    main = _longest_path(d, comp)
    cols, line = {}, ""
    for k, n in enumerate(main):
        if k:
            line += _bond(d, main[k - 1], n)
        cols[n] = len(line)
        line += _glyph(marks.get(n, 0))
    lines = [line]
    rest = [n for n in comp if n not in main]
    while rest:
        attach = next(n for n in main if any(nb in rest for nb in d.neighbors(n)))
        hang, cur = [], attach
        while True:
            nxt = [nb for nb in d.neighbors(cur) if nb in rest and nb not in hang]
            if not nxt:
                break
            cur = nxt[0]
            hang.append(cur)
        for n in hang:
            pad = " " * cols[attach]
            lines.append(pad + "│")
            lines.append(pad + _glyph(marks.get(n, 0)))
        rest = [n for n in rest if n not in hang]
    return lines


def render_marked_diagram(md: MarkedDiagram) -> str:
    """Marked Dynkin diagram as text; branches hang below their fork."""
    d = md.diagram
    if not d.nodes:
        return "·"
    blocks = [_render_component(d, comp, md.marks) for comp in d.components()]
    height = max(len(b) for b in blocks)
    widths = [max(len(l) for l in b) for b in blocks]
    rows = []
    for r in range(height):
        parts = [(b[r] if r < len(b) else "").ljust(w) for b, w in zip(blocks, widths)]
        rows.append("   ".join(parts).rstrip())
    return "\n".join(rows)


def render_space(ps: ParabolicSpec) -> str:
    return render_marked_diagram(MarkedDiagram(ps.diagram, {n: 1 for n in ps.S}))


# ------------------------------------------------------------------ parsing

@dataclass
class Query:
    command: str
    target: Optional[str] = None
    args: list = field(default_factory=list)
    k: Optional[int] = None
    cls: Optional[int] = None
    onto: Optional[str] = None
    json: bool = False
    seed: int = DEFAULT_SEED
    samples: int = 500
    method: str = "gradient"
    orbit_guard: int = dynkin.ORBIT_GUARD
    dim_guard: int = DIM_GUARD
    poly_guard: int = POLY_GUARD


@dataclass
class Report:
    text: str
    data: Optional[dict] = None
    status: int = 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homvar",
                                description="Invariants of rational homogeneous varieties G/P.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target", nargs="?", help="space such as F4/P4 or D6/P{3,5}")
    p.add_argument("args", nargs="*", help="extra operands (rep: group and weight)")
    p.add_argument("--k", type=int)
    p.add_argument("--class", dest="cls", type=int, help="node of S labelling a family")
    p.add_argument("--onto", help="target nodes of a shadow, e.g. {1,3}")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--method", choices=("gradient", "direct"), default="gradient")
    p.add_argument("--orbit-guard", type=int, default=dynkin.ORBIT_GUARD)
    p.add_argument("--dim-guard", type=int, default=DIM_GUARD)
    p.add_argument("--poly-guard", type=int, default=POLY_GUARD)
    return p


def parse(argv: list[str]) -> Query:
    ns = _parser().parse_args(argv)
    q = Query(ns.command, ns.target, ns.args, ns.k, ns.cls, ns.onto, ns.json, ns.seed,
              ns.samples, ns.method, ns.orbit_guard, ns.dim_guard, ns.poly_guard)
    if q.command != "octonion-verify" and not q.target:
        raise ParseFailure(f"{q.command} needs a space such as F4/P4", len(argv))
    if q.command != "rep" and q.args:
        raise ParseFailure(f"unexpected operand {q.args[0]!r} (quote braces: 'D6/P{{3,5}}')",
                           _position(argv, q.args[0]))
    return q


def _space(text: str, argv: list[str]) -> ParabolicSpec:
    try:
        return ParabolicSpec.parse(text)
    except DiagramError as e:
        raise ParseFailure(str(e), _position(argv, text)) from None


def _space_or_family(text: str, argv: list[str]) -> ParabolicSpec:
    """E6/P1 style, or a family name such as G(2,5), LG(3,6), S6, Q4."""
    if "/" in text:
        return _space(text, argv)
    try:
        return parse_family(text).parabolic()
    except UncoveredSystem as e:
        raise ParseFailure(str(e), _position(argv, text)) from None


def _diagram_spec(text: str, argv: list[str]) -> DiagramSpec:
    try:
        return DiagramSpec.parse(text.split("/")[0])
    except DiagramError as e:
        raise ParseFailure(str(e), _position(argv, text)) from None


def _position(argv: list[str], token: str) -> Optional[int]:
    return argv.index(token) if token in argv else None


def _nodes(text: str) -> frozenset[int]:
    t = text.strip().strip("{}")
    try:
        return frozenset(int(x) for x in t.split(",") if x.strip())
    except ValueError:
        raise ParseFailure(f"cannot parse node set {text!r}") from None


def _single(ps: ParabolicSpec, cls: Optional[int]) -> int:
    if cls is not None:
        if cls not in ps.S:
            raise ParseFailure(f"--class {cls} is not a node of S = {sorted(ps.S)}")
        return cls
    if len(ps.S) != 1:
        raise ParseFailure(f"{ps} has several marked nodes; pick one with --class")
    return next(iter(ps.S))


# ------------------------------------------------------------------ commands

def _weight_text(spec: DiagramSpec, marks: dict) -> str:
    terms = []
    for n in sorted(marks):
        c = marks[n]
        if c:
            terms.append(f"ω{n}" if c == 1 else f"{c}ω{n}")
    return "+".join(terms) or "0"


def _levi_weight(ps: ParabolicSpec, marks: dict) -> str:
    parts = []
    for spec, _, local in levi_factors(ps, marks):
        parts.append(f"{spec} {_weight_text(spec, local)}")
    return " ⊗ ".join(parts) or "trivial"


def cmd_info(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    R = ps.roots
    g = grading(ps)
    exposed = {j: is_exposed_short(R, ps.S, j) for j in sorted(ps.S)}
    yn = lambda b: "yes" if b else "no"
    ex_text = yn(exposed[next(iter(ps.S))]) if len(ps.S) == 1 else \
        ", ".join(f"{j}: {yn(v)}" for j, v in exposed.items())
    dims = g.dims
    text = (f"{ps}\n{render_space(ps)}\n"
            f"dim {dimension(ps)}; exposed short: {ex_text}; T: {' ⊕ '.join(map(str, dims))}")
    data = {"space": str(ps), "dim": dimension(ps),
            "exposed_short": {str(j): v for j, v in exposed.items()},
            "grading": list(dims), "diagram": render_space(ps)}
    return Report(text, data)


def cmd_grading(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    g = grading(ps)
    levi = " × ".join(str(s) for s, _, _ in levi_factors(ps, {})) or "torus"
    lines = [f"{ps}: Levi {levi}"]
    pieces = []
    for p in g.pieces:
        deg = p.degree[0] if len(p.degree) == 1 else p.degree
        hw = _levi_weight(ps, p.h_highest_weight)
        lines.append(f"T_{deg}: dim {p.dim}; highest weight {hw}")
        pieces.append({"degree": list(p.degree), "dim": p.dim, "highest_weight": hw,
                       "marks": {str(n): m for n, m in sorted(p.h_highest_weight.items())},
                       "lowest_root": list(p.lowest_root)})
    return Report("\n".join(lines), {"space": str(ps), "levi": levi, "pieces": pieces})


def cmd_classify(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    R = ps.roots
    lines, nodes = [f"{ps}"], []
    for j in sorted(ps.S):
        ex = is_exposed_short(R, ps.S, j)
        Y1 = closed_orbit_Y1(R, ps.S, j)
        entry = {"node": j, "cominuscule": is_cominuscule(R, j),
                 "minuscule_weight": is_minuscule_weight(R, j), "exposed_short": ex,
                 "Y1": Y1.describe(), "Y1_dim": Y1.dimension(), "Y1_minuscule": Y1.minuscule}
        nodes.append(entry)
        lines.append(f"node {j}: cominuscule {'yes' if entry['cominuscule'] else 'no'}; "
                     f"minuscule weight {'yes' if entry['minuscule_weight'] else 'no'}; "
                     f"exposed short {'yes' if ex else 'no'}; "
                     f"Y1 = {entry['Y1']} (dim {entry['Y1_dim']})")
    return Report("\n".join(lines), {"space": str(ps), "nodes": nodes})


def cmd_lines(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    fams = line_classes(ps)
    if q.cls is not None:
        fams = [fams.family(_single(ps, q.cls))]
    lines, out = [f"{ps}"], []
    for f in fams:
        cone = cone_of_lines(ps, f.class_node)
        item = dict(f.to_json(), removed_nodes=[], cone=cone.to_json())
        out.append(item)
        tail = f"; open orbit dim {f.open_dim} (exposed short)" if f.exposed_short else ""
        lines.append(f"class {f.class_node}: closed orbit {item['closed_orbit']} "
                     f"dim {f.closed_dim}{tail}; lines through a point: {cone.describe()}")
    return Report("\n".join(lines), {"space": str(ps), "families": out})


def cmd_planes(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    a = _single(ps, q.cls)
    if is_exposed_short(ps.roots, ps.S, a):
        entry = exposed_planes_catalog(ps, a)
        lines = [f"{ps} class {a} (exposed short)"]
        for f in entry.maximal:
            comp = f"; {f.components} components" if f.components > 1 else ""
            lines.append(f"maximal {f.kind}: parameter {f.parameter}{comp}")
        if entry.notes:
            lines.append(entry.notes)
        return Report("\n".join(lines), dict(entry.to_json(), exposed_short=True))
    top = max_linear_space(ps, a)
    ks = [q.k] if q.k is not None else list(range(1, top + 1))
    lines, out = [f"{ps} class {a}: maximal linear spaces P^{top}"], []
    for k in ks:
        fams = planes(ps, a, k)
        for f in fams:
            out.append(f.to_json())
            lines.append(f"P^{k}: removed {sorted(f.removed_nodes)}; "
                         f"parameter {f.parameter.describe()} (dim {f.parameter.dimension()})")
        if not fams:
            lines.append(f"P^{k}: none")
    return Report("\n".join(lines), {"space": str(ps), "class": a, "max_k": top,
                                     "families": out})


def cmd_shadow(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    if q.onto is None:
        raise ParseFailure("shadow needs --onto, e.g. --onto {1,3}")
    Sp = _nodes(q.onto)
    md = tits_shadow(ps.spec, ps.S, Sp)
    src = ParabolicSpec(ps.spec, Sp)
    text = f"shadow of a point of {src} on {ps}: {md.describe()} (dim {md.dimension()})"
    if not md.is_point:
        text += "\n" + render_marked_diagram(md)
    return Report(text, {"space": str(ps), "onto": sorted(Sp), "shadow": md.to_json()})


def cmd_reconstruct(q: Query, argv) -> Report:
    ps = _space(q.target, argv)
    i = _single(ps, q.cls)
    tr = reconstruct_diagram(ps.spec, i)
    lines = [f"{ps}: chain {' → '.join(tr.chain)}"]
    for st in tr.steps:
        lines.append(f"level {st.level}: {st.variety} with base {st.base}")
    iso = ", ".join(f"{a}↦{b}" for a, b in sorted(tr.isomorphism.items()))
    lines.append(f"result ≅ {ps.spec} ({iso})")
    lines.append(render_marked_diagram(MarkedDiagram(tr.result, {tr.root_node: 1})))
    return Report("\n".join(lines), dict(tr.to_json(), space=str(ps)))


def cmd_rep(q: Query, argv) -> Report:
    action = q.target
    rest = list(q.args)
    if action == "dim":
        if len(rest) != 2:
            raise ParseFailure("usage: rep dim <G> <weight>, e.g. rep dim E7 w7")
        spec = _diagram_spec(rest[0], argv)
        lam = _weight(rest[1], spec, argv)
        d = weyl_dim(spec, lam)
        return Report(str(d), {"group": str(spec), "weight": list(lam), "dim": d})
    if action == "weights":
        spec = _diagram_spec(rest[0], argv)
        lam = _weight(rest[1], spec, argv)
        wm = weights_with_mults(spec, lam, q.dim_guard)
        items = sorted(wm.items(), key=lambda kv: (-sum(kv[0]), kv[0]))
        text = "\n".join(f"{list(w)} ×{m}" for w, m in items)
        return Report(text, {"group": str(spec), "weight": list(lam),
                             "weights": [[list(w), m] for w, m in items]})
    if action == "restrict":
        ps = _space(rest[0], argv)
        lam = _weight(rest[1], ps.spec, argv)
        res = restrict_to_levi(ps.spec, lam, ps.S, q.dim_guard)
        lines, out = [], []
        for grade, w, mult, dim in res.dims():
            marks = dict(zip(res.levi.nodes, w))
            lines.append(f"grade {grade}: {_levi_weight(ps, marks)} dim {dim} ×{mult}")
            out.append({"grade": list(grade), "weight": list(w), "dim": dim, "mult": mult})
        return Report("\n".join(lines), {"space": str(ps), "weight": list(lam), "pieces": out})
    if action == "normal":
        ps = _space_or_family(rest[0], argv)
        js = [q.k] if q.k is not None else [1, 2, 3]
        lines, out = [], []
        for j in js:
            rep = verify_normal_space(ps, j, q.dim_guard)
            lines.append(("ok   " if rep.ok else "FAIL ") + rep.summary())
            out.append({"j": j, "ok": rep.ok, "expected_dim": rep.expected_dim,
                        "common": [[{str(n): m for n, m in w.items()}, d] for w, d in rep.common]})
        bad = any(not o["ok"] for o in out)
        return Report("\n".join(lines), {"space": str(ps), "rows": out}, 1 if bad else 0)
    if action == "ambient":
        spec = _diagram_spec(rest[0], argv)
        if q.cls is None or q.k is None:
            raise ParseFailure("rep ambient needs --class <end node> and --k")
        am = ambient_module(spec, q.cls, q.k)
        marks = {n + 1: c for n, c in enumerate(am.weight)}
        text = f"{spec} end {q.cls}, k={q.k}: V_{_weight_text(spec, marks)} ({am.tag})"
        return Report(text, am.to_json())
    raise ParseFailure(f"unknown rep action {action!r}; expected dim, weights, restrict, "
                       "normal or ambient", _position(argv, action))


def _weight(text: str, spec: DiagramSpec, argv):
    try:
        return parse_weight(text, spec.rank)
    except ValueError as e:
        raise ParseFailure(str(e), _position(argv, text)) from None


def cmd_prolong(q: Query, argv) -> Report:
    if "/" in q.target:
        fam = family_for(_space(q.target, argv))
    else:
        fam = parse_family(q.target)
    kmax = q.k if q.k is not None else 2
    rep = strict_prolongation_report(fam, kmax, q.poly_guard)
    lines = [f"{fam}:"]
    for r in rep.rows:
        lines.append(f"dim A^({r.l}) = {r.dim}, expected {r.expected} "
                     f"{'ok' if r.ok else 'MISMATCH'}")
    return Report("\n".join(lines), rep.to_json(), 0 if rep.ok else 1)


def cmd_octonion(q: Query, argv) -> Report:
    from .octonion import verify_suite
    checks = verify_suite(q.seed, q.samples)
    text = "\n".join(f"{'ok  ' if c.ok else 'FAIL'} {c.name}: {c.detail}" for c in checks)
    ok = all(c.ok for c in checks)
    return Report(text, {"seed": q.seed, "ok": ok, "checks": [c.to_json() for c in checks]},
                  0 if ok else 1)


_DISPATCH = {"info": cmd_info, "grading": cmd_grading, "classify": cmd_classify,
             "lines": cmd_lines, "planes": cmd_planes, "shadow": cmd_shadow,
             "reconstruct": cmd_reconstruct, "rep": cmd_rep, "prolong": cmd_prolong,
             "octonion-verify": cmd_octonion}


def run(q: Query, argv: Optional[list[str]] = None) -> Report:
    dynkin.ORBIT_GUARD = q.orbit_guard
    return _DISPATCH[q.command](q, argv or [])


def _annotate(argv: list[str], e: ParseFailure) -> str:
    line = "homvar " + " ".join(argv)
    if e.position is None or e.position >= len(argv):
        return f"error: {e}\n  {line}"
    col = len("homvar ") + sum(len(a) + 1 for a in argv[:e.position])
    return f"error: {e}\n  {line}\n  {' ' * col}^ argument {e.position + 1}"


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        q = parse(argv)
        rep = run(q, argv)
    except ParseFailure as e:
        print(_annotate(argv, e), file=sys.stderr)
        return 2
    except (UncoveredCatalog, UncoveredFamily, UncoveredSystem, ExposedShortError,
            RecipeStuck) as e:
        print(f"not covered: {e}", file=sys.stderr)
        return 3
    except GuardExceeded as e:
        print(f"guard exceeded: {e}; raise the matching --*-guard flag", file=sys.stderr)
        return 4
    except (KOutOfRange, DiagramError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if q.json:
        doc = {"schema": SCHEMA, "command": q.command}
        doc.update(rep.data or {})
        print(json.dumps(doc, ensure_ascii=False, indent=2, default=str))
    else:
        print(rep.text)
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
