"""Command-line front end.

Subcommands: check, accommodating, gv, ideals, quotient, merge, simple,
cofinal, disagreeable, term.  Exit codes: 0 success / positive verdict,
1 negative verdict, 2 parse or usage error, 3 precondition violation
(sinks, membership, weak left-resolving where required), 4 undecided.

Output is deterministic for fixed input and flags; wall-clock timings are
collected but only rendered with --timings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from lgca.accommodating import (
    NotWeaklyLeftResolvingError,
    bar_accommodating,
    is_receiver_set_finite,
    is_set_finite,
    is_weakly_left_resolving,
    minimal_accommodating,
)
from lgca.dynamics import (
    Verdict,
    is_disagreeable,
    is_simple,
    is_strongly_cofinal,
)
from lgca.graph import (
    GraphSyntaxError,
    LabelledGraphError,
    SinkVertexError,
    parse_graph_file,
)
from lgca.ideals import (
    HereditarySaturatedSet,
    enumerate_hs,
    hasse_edges,
    hs_closure,
    ideal_descriptor,
    quotient_space,
)
from lgca.merged import merge, verify_merge
from lgca.terms import QQi, TermAlgebra, TermSum, quotient_map

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_UNKNOWN = 4


@dataclass
class AnalysisReport:
    command: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def say(self, text=""):
        self.lines.append(text)

    def to_text(self, include_timings=False) -> str:
        out = list(self.lines)
        if include_timings:
            for k in sorted(self.timings):
                out.append(f"time {k}: {self.timings[k]:.3f}s")
        return "\n".join(out) + "\n"

    def to_json_dict(self, include_timings=False) -> dict:
        data = {
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
        }
        if include_timings:
            data["timings"] = self.timings
        return data


def _set_str(vs) -> str:
    return "{" + ",".join(vs) + "}"


def _parse_vertex_list(g, text):
    names = [t for t in text.split(",") if t]
    return g.vertex_set(names)


def _write_artifacts(args, report, dot_text=None):
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(args.timings), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if getattr(args, "dot", None) and dot_text is not None:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_text)


# -- subcommands -----------------------------------------------------------


def cmd_check(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("check", {"file": args.file})
    t0 = time.perf_counter()
    bar = bar_accommodating(g)
    wlr, witness = is_weakly_left_resolving(g, bar)
    report.timings["analysis"] = time.perf_counter() - t0
    report.say(
        f"graph: {len(g.vertices)} vertices, {len(g.edges)} edges, "
        f"alphabet {_set_str(g.alphabet)}"
    )
    report.say(f"vertices: {' '.join(g.vertices)}")
    report.say("no sinks: ok")
    report.say("set-finite: yes, receiver set-finite: yes")
    report.say(f"weakly left-resolving (complement-closed family): {'yes' if wlr else 'no'}")
    if not wlr:
        A, B, a = witness
        report.say(f"  witness: r({A!r},{a}) meets r({B!r},{a}) outside r({(A & B)!r},{a})")
    report.verdicts["wlr"] = wlr
    report.verdicts["set_finite"] = is_set_finite(g, bar)
    report.verdicts["receiver_set_finite"] = is_receiver_set_finite(g, bar)
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report, g.to_dot())
    return EXIT_OK


def cmd_accommodating(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("accommodating", {"file": args.file, "kind": args.kind})
    t0 = time.perf_counter()
    acc = minimal_accommodating(g) if args.kind == "minimal" else bar_accommodating(g)
    report.timings["analysis"] = time.perf_counter() - t0
    report.say(f"kind: {acc.kind}")
    if acc.fallback:
        report.say("construction: generic closure (stable classes were cut)")
    if acc.atoms is not None:
        report.say("atoms: " + " ".join(_set_str(a) for a in acc.atoms))
    report.say(f"members: {len(acc)}")
    if args.list:
        for A in acc.family:
            report.say("  " + _set_str(A))
    report.verdicts["size"] = len(acc)
    report.witnesses["family"] = [sorted(A) for A in acc.family] if args.list else None
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(acc.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


def cmd_gv(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("gv", {"file": args.file})
    stable, lstar = g.stable_partition()
    levels = [args.level] if args.level else list(range(1, lstar + 1))
    for level in levels:
        part = g.level_partition(level)
        classes = " ".join(_set_str(c) for c in part.classes)
        report.say(f"level {level}: {classes}")
    report.say(f"stabilizes at level {lstar}")
    report.verdicts["stabilization_level"] = lstar
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    return EXIT_OK


def _hasse_dot(lattice, edges) -> str:
    lines = ["digraph ideal_lattice {", "  rankdir=BT;"]
    for i, h in enumerate(lattice):
        label = _set_str(h.max_element) if h.max_element else "0"
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_ideals(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("ideals", {"file": args.file})
    t0 = time.perf_counter()
    bar = bar_accommodating(g)
    lattice = enumerate_hs(bar)
    covers = hasse_edges(lattice)
    report.timings["analysis"] = time.perf_counter() - t0
    nonzero = [h for h in lattice if not h.is_trivial]
    report.say(
        f"{len(lattice)} hereditary saturated sets "
        f"({len(nonzero)} nonzero gauge-invariant ideals)"
    )
    for i, h in enumerate(lattice):
        d = ideal_descriptor(h)
        tags = []
        if d.is_zero:
            tags.append("zero ideal")
        if d.is_whole:
            tags.append("whole algebra")
        tag = f" ({', '.join(tags)})" if tags else ""
        report.say(
            f"  [{i}] max {_set_str(h.max_element)}"
            f" restricted alphabet {_set_str(d.restricted_alphabet)}{tag}"
        )
    report.say("covers: " + (", ".join(f"{i}<{j}" for i, j in covers) or "none"))
    report.verdicts["count"] = len(lattice)
    report.verdicts["nonzero"] = len(nonzero)
    report.witnesses["max_elements"] = [sorted(h.max_element) for h in lattice]
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report, _hasse_dot(lattice, covers))
    return EXIT_OK


def cmd_quotient(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("quotient", {"file": args.file, "max": args.max})
    bar = bar_accommodating(g)
    M = _parse_vertex_list(g, args.max)
    if M not in bar:
        print(f"error: {_set_str(M)} is not a member of the family", file=sys.stderr)
        return EXIT_PRECONDITION
    H = HereditarySaturatedSet(base=bar, max_element=M)
    closed = hs_closure(bar, [M])
    if closed.max_element != M:
        print(
            f"error: {_set_str(M)} is not hereditary saturated "
            f"(closure is {_set_str(closed.max_element)})",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION
    Q = quotient_space(bar, H)
    report.say(f"classes: {len(Q.classes)}")
    for X in Q.classes:
        tag = " (zero class)" if not X else ""
        report.say(f"  [{_set_str(X)}]{tag}")
    report.say(f"restricted alphabet: {_set_str(Q.restricted_alphabet)}")
    report.verdicts["classes"] = len(Q.classes)
    report.verdicts["restricted_alphabet"] = list(Q.restricted_alphabet)
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    return EXIT_OK


def cmd_merge(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("merge", {"file": args.file, "verify": args.verify})
    m = merge(g)
    report.say("# merged graph")
    for line in m.graph.to_dsl().splitlines():
        report.say(line)
    report.say("# vertex map")
    for v in g.vertices:
        report.say(f"#   {v} -> {m.vertex_map[v]}")
    report.say("# edge map")
    for e in g.edges:
        me = m.edge_map[e]
        report.say(f"#   {e.src} {e.dst} {e.label} -> {me.src} {me.dst} {me.label}")
    exit_code = EXIT_OK
    if args.verify:
        result = verify_merge(m)
        report.say("# verification")
        for check in result.checks:
            status = "pass" if check.ok else f"FAIL ({check.witness})"
            report.say(f"#   {check.name}: {status}")
        report.verdicts["verified"] = result.all_pass
        if not result.all_pass:
            exit_code = EXIT_NEGATIVE
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report, m.graph.to_dot())
    return exit_code


def _verdict_exit(verdict: Verdict) -> int:
    if verdict is Verdict.CONFIRMED:
        return EXIT_OK
    if verdict is Verdict.REFUTED:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_cofinal(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("cofinal", {"file": args.file})
    result = is_strongly_cofinal(g)
    report.say(result.summary())
    report.verdicts["cofinal"] = str(result.verdict)
    if result.witness:
        report.witnesses["lasso"] = str(result.witness)
        report.witnesses["vertex"] = result.witness_vertex
        report.witnesses["class"] = sorted(result.witness_class)
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    return _verdict_exit(result.verdict)


def cmd_disagreeable(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("disagreeable", {"file": args.file, "lmax": args.lmax})
    result = is_disagreeable(g, level_bound=args.lmax)
    report.say(result.summary())
    report.verdicts["disagreeable"] = str(result.verdict)
    if result.refuted_class is not None:
        report.witnesses["class"] = sorted(result.refuted_class)
        report.witnesses["level"] = result.refuted_level
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    return _verdict_exit(result.verdict)


def cmd_simple(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport("simple", {"file": args.file, "lmax": args.lmax})
    result = is_simple(g, level_bound=args.lmax)
    report.say(result.summary())
    report.say(f"strongly cofinal: {result.cofinality.verdict}")
    report.say(f"disagreeable: {result.disagreeability.verdict}")
    report.verdicts["simple"] = str(result.verdict)
    report.verdicts["cofinal"] = str(result.cofinality.verdict)
    report.verdicts["disagreeable"] = str(result.disagreeability.verdict)
    if result.cofinality.witness:
        report.witnesses["cofinality_lasso"] = str(result.cofinality.witness)
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    return _verdict_exit(result.verdict)


# -- term expression evaluation ---------------------------------------------


class ExprError(ValueError):
    pass


def _tokenize(text):
    tokens = []
    i = 0
    punct = set("()*+-/{},")
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in punct:
            tokens.append(ch)
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in punct:
            j += 1
        tokens.append(text[i:j])
        i = j
    return tokens


class _ExprParser:
    """expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := scalar | s(SYM) | p({v,...}) | adj(expr) | (expr) | '-' factor
    """

    def __init__(self, tokens, algebra: TermAlgebra):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise ExprError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> TermSum:
        value = self.expr()
        if self.peek() is not None:
            raise ExprError(f"trailing input at {self.peek()!r}")
        if isinstance(value, QQi):
            raise ExprError("expression must contain a monomial, not only scalars")
        return value

    @staticmethod
    def _combine(left, right):
        # values are TermSum or QQi scalars
        if isinstance(left, QQi) and isinstance(right, QQi):
            return left * right
        if isinstance(left, QQi):
            return right.scale(left)
        if isinstance(right, QQi):
            return left.scale(right)
        return left * right

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            if isinstance(value, QQi) or isinstance(rhs, QQi):
                raise ExprError("scalars can only multiply terms")
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() == "*":
            self.take("*")
            value = self._combine(value, self.factor())
        return value

    def factor(self):
        tok = self.peek()
        if tok == "-":
            self.take()
            inner = self.factor()
            return -inner
        if tok == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok == "s":
            self.take()
            self.take("(")
            sym = self.take()
            self.take(")")
            return self.algebra.s(sym)
        if tok == "p":
            self.take()
            self.take("(")
            self.take("{")
            names = []
            while self.peek() != "}":
                names.append(self.take())
                if self.peek() == ",":
                    self.take(",")
            self.take("}")
            self.take(")")
            return self.algebra.p(self.algebra.graph.vertex_set(names))
        if tok == "adj":
            self.take()
            self.take("(")
            value = self.expr()
            self.take(")")
            if isinstance(value, QQi):
                return value.conjugate()
            return value.adjoint()
        # scalar: integer or rational
        self.take()
        try:
            num = int(tok)
        except ValueError:
            raise ExprError(f"unknown token {tok!r}") from None
        scalar = Fraction(num)
        if self.peek() == "/":
            self.take("/")
            den = int(self.take())
            scalar = Fraction(num, den)
        return QQi.of(scalar)


def cmd_term(args) -> int:
    g = parse_graph_file(args.file)
    report = AnalysisReport(
        "term", {"file": args.file, "eval": args.eval, "mode": args.mode}
    )
    bar = bar_accommodating(g)
    if args.mode == "quotient":
        if not args.max:
            print("error: --mode quotient needs --max", file=sys.stderr)
            return EXIT_PARSE
        M = _parse_vertex_list(g, args.max)
        if M not in bar:
            print(f"error: {_set_str(M)} is not a member of the family", file=sys.stderr)
            return EXIT_PRECONDITION
        H = HereditarySaturatedSet(base=bar, max_element=M)
        if hs_closure(bar, [M]).max_element != M:
            print(f"error: {_set_str(M)} is not hereditary saturated", file=sys.stderr)
            return EXIT_PRECONDITION
        algebra = TermAlgebra(g, quotient=quotient_space(bar, H))
    else:
        algebra = TermAlgebra(g, family=bar)
    try:
        value = _ExprParser(_tokenize(args.eval), algebra).parse()
    except ExprError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    report.say(str(value))
    report.say("# note: equality of printed forms is sound but not complete")
    report.verdicts["zero"] = not value
    report.witnesses["canonical"] = str(value.canonical()) if value else "0"
    print(report.to_text(args.timings), end="")
    _write_artifacts(args, report)
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lgca",
        description=(
            "Combinatorial invariants of labelled graph algebras: "
            "families, ideal lattices, merged graphs, simplicity. "
            "Decision procedures are exponential in the vertex count in "
            "the worst case; intended for graphs up to a dozen vertices."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dot=True):
        p.add_argument("file", help="labelled graph in the edge-list DSL")
        p.add_argument("--json", help="write a JSON report to this path")
        if dot:
            p.add_argument("--dot", help="write DOT output to this path")
        p.add_argument(
            "--timings", action="store_true", help="include wall-clock timings"
        )

    p = sub.add_parser("check", help="parse and validate a graph")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("accommodating", help="compute a vertex-set family")
    common(p, dot=False)
    p.add_argument("--kind", choices=["minimal", "bar"], default="bar")
    p.add_argument("--list", action="store_true", help="print every member")
    p.set_defaults(func=cmd_accommodating)

    p = sub.add_parser("gv", help="generalized-vertex level partitions")
    common(p, dot=False)
    p.add_argument("--level", type=int, help="print one level only")
    p.set_defaults(func=cmd_gv)

    p = sub.add_parser("ideals", help="gauge-invariant ideal lattice")
    common(p)
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("quotient", help="quotient labelled space")
    common(p, dot=False)
    p.add_argument(
        "--max", required=True, help="maximal vertex set (comma-separated)"
    )
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("merge", help="merged labelled graph")
    common(p)
    p.add_argument("--verify", action="store_true", help="check transport identities")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("simple", help="simplicity verdict")
    common(p, dot=False)
    p.add_argument("--lmax", type=int, default=8)
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("cofinal", help="strong cofinality verdict")
    common(p, dot=False)
    p.set_defaults(func=cmd_cofinal)

    p = sub.add_parser("disagreeable", help="disagreeability verdict")
    common(p, dot=False)
    p.add_argument("--lmax", type=int, default=8)
    p.set_defaults(func=cmd_disagreeable)

    p = sub.add_parser("term", help="evaluate a monomial expression")
    common(p, dot=False)
    p.add_argument("--eval", required=True, help="expression, e.g. 's(a) * adj(s(a))'")
    p.add_argument("--mode", choices=["base", "quotient"], default="base")
    p.add_argument("--max", help="maximal vertex set for quotient mode")
    p.set_defaults(func=cmd_term)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphSyntaxError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except SinkVertexError as err:
        print(f"precondition violation: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NotWeaklyLeftResolvingError as err:
        print(f"precondition violation: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except LabelledGraphError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except KeyError as err:
        print(f"error: unknown vertex {err}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
