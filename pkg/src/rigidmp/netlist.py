"""Plain-text netlists: one statement per line, ``#`` starts a comment.

Grammar (EBNF)::

    netlist   = { line } ;
    line      = [ statement ] [ "#" { any } ] newline ;
    statement = "edge" name node node
              | ( "resistor" | "vsource" | "isource" ) name rational
              | ( "ccvs" | "vccs" | "cccs" | "vcvs" ) control output [ rational ]
              | "port" name { name }
              | "coupling" term { term } "=" rational ;
    term      = rational "*" column ;          (* column is name' or name" *)
    rational  = [ "+" | "-" ] digits [ "/" digits ] ;
    name      = letter { letter | digit | "_" } ;

Controlled sources without a gain get fresh distinct primes, in line order,
skipping primes already used as explicit parameter values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .colspace import AffineSpace, Label, VOID, fmt, parse_rational
from .graph import Graph
from .multiport import (CONTROLLED, Multiport, Resistor, VSource, ISource, _Controlled, controlled, isource,
                        resistor, vsource)

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_NODE = re.compile(r"[A-Za-z0-9_]+")
_ONE_PARAM = ("resistor", "vsource", "isource")


class NetlistError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message, self.line, self.col = message, line, col


@dataclass(frozen=True)
class Netlist:
    multiport: Multiport
    defaulted: dict = field(default_factory=dict)
    coupling: tuple = ()

    def coupling_space(self) -> AffineSpace | None:
        """Affine space of the coupling rows, or None when there are none."""
        if not self.coupling:
            return None
        cols = sorted({c for coeffs, _ in self.coupling for c, _ in coeffs})
        rows = [[dict(coeffs).get(c, 0) for c in cols] for coeffs, _ in self.coupling]
        out = AffineSpace.from_equations(cols, rows, [b for _, b in self.coupling])
        if out is VOID:
            raise ValueError("coupling rows are inconsistent")
        return out


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _primes():
    n = 2
    while True:
        if all(n % p for p in range(2, int(n ** 0.5) + 1)):
            yield n
        n += 1


def read_netlist(text: str) -> Netlist:
    """Parse and validate; errors carry line and column."""
    edges: dict[Label, tuple[str, str, int]] = {}
    devices: list[tuple[str, tuple, Fraction | None, int, int]] = []
    ports: dict[Label, tuple[int, int]] = {}
    coupling = []

    def num(tok, col, ln):
        try:
            return parse_rational(tok)
        except ValueError:
            raise NetlistError(f"bad rational {tok!r} (use an integer or p/q)", ln, col) from None

    def name(tok, col, ln):
        if not _NAME.fullmatch(tok):
            raise NetlistError(f"bad label {tok!r}", ln, col)
        return Label(tok)

    for ln, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        (kw, kc), args = toks[0], toks[1:]
        kw = kw.lower()

        def need(lo, hi):
            if not lo <= len(args) <= hi:
                want = str(lo) if lo == hi else f"{lo} to {hi}"
                col = args[hi][1] if len(args) > hi else len(raw) + 1
                raise NetlistError(f"'{kw}' takes {want} arguments, got {len(args)}", ln, col)

        if kw == "edge":
            need(3, 3)
            e = name(*args[0], ln)
            for tok, col in args[1:]:
                if not _NODE.fullmatch(tok):
                    raise NetlistError(f"bad node name {tok!r}", ln, col)
            if e in edges:
                raise NetlistError(f"edge {e} defined twice (first on line {edges[e][2]})", ln, args[0][1])
            edges[e] = (args[1][0], args[2][0], ln)
        elif kw in _ONE_PARAM:
            need(2, 2)
            devices.append((kw, (name(*args[0], ln),), num(*args[1], ln), ln, args[0][1]))
        elif kw in CONTROLLED:
            need(2, 3)
            y, z = name(*args[0], ln), name(*args[1], ln)
            if y == z:
                raise NetlistError(f"{kw} control and output must differ", ln, args[1][1])
            gain = num(*args[2], ln) if len(args) == 3 else None
            devices.append((kw, (y, z), gain, ln, args[0][1]))
        elif kw == "port":
            need(1, 10 ** 6)
            for tok, col in args:
                p = name(tok, col, ln)
                if p in ports:
                    raise NetlistError(f"port {p} declared twice", ln, col)
                ports[p] = (ln, col)
        elif kw == "coupling":
            eq = [i for i, (t, _) in enumerate(args) if t == "="]
            if len(eq) != 1 or eq[0] != len(args) - 2 or eq[0] == 0:
                raise NetlistError("coupling needs terms c*col, then '=', then a rational", ln, kc)
            coeffs = {}
            for tok, col in args[:eq[0]]:
                if "*" not in tok:
                    raise NetlistError(f"coupling term {tok!r} must look like c*p'", ln, col)
                c, x = tok.split("*", 1)
                lbl = Label.parse(x)
                if lbl.decoration not in (1, 2) or not _NAME.fullmatch(lbl.name):
                    raise NetlistError(f"coupling column {x!r} must be a primed or double primed port", ln, col)
                coeffs[lbl] = coeffs.get(lbl, Fraction(0)) + num(c, col, ln)
            coupling.append((tuple(sorted(coeffs.items())), num(*args[-1], ln), ln, kc))
        else:
            raise NetlistError(f"unknown statement {kw!r}", ln, kc)

    # coverage: every edge is a port or carries exactly one device
    owner: dict[Label, int] = {}
    for kind, es, _, ln, col in devices:
        for e in es:
            if e not in edges:
                raise NetlistError(f"{kind} uses undefined edge {e}", ln, col)
            if e in owner:
                raise NetlistError(f"edge {e} already carries a device (line {owner[e]})", ln, col)
            if e in ports:
                raise NetlistError(f"edge {e} is a port and cannot carry a device", ln, col)
            owner[e] = ln
    for p, (ln, col) in ports.items():
        if p not in edges:
            raise NetlistError(f"port {p} is not a defined edge", ln, col)
    for e, (_, _, ln) in sorted(edges.items(), key=lambda x: x[1][2]):
        if e not in owner and e not in ports:
            raise NetlistError(f"edge {e} has no device and is not a port", ln, 1)
    for coeffs, _, ln, col in coupling:
        for c, _ in coeffs:
            if c.plain() not in ports:
                raise NetlistError(f"coupling column {c} is not a port column", ln, col)

    used = {g for kind, _, g, _, _ in devices if g is not None and kind not in ("vsource", "isource")}
    fresh = (p for p in _primes() if Fraction(p) not in used)
    built, defaulted = [], {}
    for kind, es, g, _, _ in devices:
        if kind == "resistor":
            built.append(resistor(es[0], g))
        elif kind == "vsource":
            built.append(vsource(es[0], g))
        elif kind == "isource":
            built.append(isource(es[0], g))
        else:
            if g is None:
                g = Fraction(next(fresh))
                defaulted[f"{kind}:{es[0]}:{es[1]}"] = g
            built.append(controlled(kind, es[0], es[1], g))
    built.sort(key=lambda d: d.edges)
    g = Graph.build([(e, t, h) for e, (t, h, _) in edges.items()])
    mp = Multiport.build(g, ports, built)
    out = Netlist(mp, defaulted, tuple((c, b) for c, b, _, _ in coupling))
    if out.coupling:
        try:
            out.coupling_space()
        except ValueError as ex:
            raise NetlistError(str(ex), coupling[0][2], coupling[0][3]) from None
    return out


def parse_netlist(text: str) -> Multiport:
    return read_netlist(text).multiport


def emit_netlist(n: Multiport | Netlist) -> str:
    """Canonical text; parameters are always written out."""
    nl = n if isinstance(n, Netlist) else Netlist(n)
    mp = nl.multiport
    out = []
    for e, t, h in mp.graph.edges:
        out.append(f"edge {e} {t} {h}")
    for d in sorted(mp.devices, key=lambda d: d.edges):
        if isinstance(d, (Resistor, VSource, ISource)):
            out.append(f"{d.kind} {d.edge} {fmt(d.value)}")
        elif isinstance(d, _Controlled):
            out.append(f"{d.kind} {d.control} {d.out} {fmt(d.gain)}")
    if mp.ports:
        out.append("port " + " ".join(str(p) for p in sorted(mp.ports)))
    for coeffs, b in nl.coupling:
        terms = " ".join(f"{fmt(c)}*{x}" for x, c in coeffs)
        out.append(f"coupling {terms} = {fmt(b)}")
    return "\n".join(out) + "\n"
