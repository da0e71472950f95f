"""Command line front end: read a netlist, run one analysis, print JSON.

Exit codes: 0 when the analysis ran (whatever its verdict), 2 for bad input
(unreadable file, netlist error, bad option), 1 for an internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .colspace import Label, VOID, fmt, parse_rational
from .matroid import Cographic, Graphic, Union, linking, linking_base, union_max_distant
from .multiport import (InconsistentSystem, MultiportError, Underdetermined, Unique, analyse, hybrid_rep,
                        port_behaviour, solve, sufficiency_check)
from .netlist import Netlist, NetlistError, emit_netlist, parse_netlist, read_netlist
from .rigidity import pair_rigid
from .portxform import lift_blocks, min_port_count, minimize_ports, port_independence, port_independence_brute

__all__ = ["main", "parse_netlist", "emit_netlist", "read_netlist"]


class InputError(Exception):
    pass


def _names(xs) -> list[str]:
    return [str(x) for x in sorted(xs)]


def _vec(v: dict) -> dict:
    return {str(k): fmt(x) for k, x in sorted(v.items())}


def _mat(m) -> list[list[str]]:
    return [[fmt(x) for x in r] for r in m]


def _block(d: dict, rows, cols) -> dict:
    rows, cols = sorted(rows), sorted(cols)
    return {"rows": _names(rows), "cols": _names(cols), "matrix": [[fmt(d[a, b]) for b in cols] for a in rows]}


# --- commands ----------------------------------------------------------------------


def cmd_rigidity(nl: Netlist, args) -> dict:
    n = nl.multiport
    a = analyse(n, surrogate_parameters=bool(nl.defaulted))
    out = {
        "verdict": a.verdict,
        "necessity": "pass" if a.necessity else "fail",
        "sufficiency": "pass" if a.sufficiency else "fail",
        "exact": {"rigid": a.exact.rigid, "full_sum": a.exact.full_sum_holds,
                  "zero_intersection": a.exact.zero_intersection_holds},
        "generic": {"rigid": a.generic.rigid, "hypotheses_hold": a.generic.hypotheses_hold,
                    "reason": a.generic.reason},
        "witness": {},
    }
    if a.generic.witness is not None:
        b1, b2 = a.generic.witness
        out["generic"]["bases"] = {"b1": _names(b1), "b2": _names(b2)}
    if not a.necessity:
        out["witness"] = a.necessity.witness()
    elif a.exact.witness:
        out["witness"] = {k: _vec(v) for k, v in a.exact.witness.items()}
    if not a.sufficiency:
        out["sufficiency_witness"] = a.sufficiency.witness()
    if nl.coupling:
        # port behaviour terminated by the coupling rows
        beh = port_behaviour(n)
        if beh is VOID:
            out["termination"] = {"rigid": False, "reason": "port behaviour is void"}
        else:
            t = pair_rigid(beh, nl.coupling_space())
            out["termination"] = {"rigid": t.rigid, "full_sum": t.full_sum_holds,
                                  "zero_intersection": t.zero_intersection_holds}
    return out


def cmd_hybrid(nl: Netlist, args) -> dict:
    n = nl.multiport
    suf = sufficiency_check(n)
    if not suf:
        return {"result": "unavailable", "reason": "sufficiency check failed", "witness": suf.witness()}
    try:
        h = hybrid_rep(n)
    except MultiportError as ex:
        return {"result": "unavailable", "reason": str(ex)}
    return {"result": "ok", "P1": _names(h.p1), "P2": _names(h.p2), "tree": _names(h.tree),
            "g11": _mat(h.g11), "h12": _mat(h.h12), "h21": _mat(h.h21), "r22": _mat(h.r22),
            "s1": [fmt(x) for x in h.s1], "s2": [fmt(x) for x in h.s2],
            "column_base": _names(h.column_base())}


def _port_pairs(items: Sequence[str]) -> dict:
    out = {}
    for it in items:
        if "=" not in it:
            raise InputError(f"--port expects key=value, got {it!r}")
        k, v = it.split("=", 1)
        k = k.strip()
        if k.startswith(("v:", "i:")):
            k = k[2:] + ("'" if k[0] == "v" else '"')
        try:
            out[Label.parse(k)] = parse_rational(v.strip())
        except ValueError as ex:
            raise InputError(str(ex)) from None
    return out


def cmd_solve(nl: Netlist, args) -> dict:
    try:
        res = solve(nl.multiport, _port_pairs(args.port or []))
    except MultiportError as ex:
        raise InputError(str(ex)) from None
    if isinstance(res, Unique):
        return {"result": "unique", "values": _vec(res.values)}
    if isinstance(res, Underdetermined):
        return {"result": "underdetermined", "point": _vec(res.point), "kernel": [_vec(k) for k in res.kernel]}
    assert isinstance(res, InconsistentSystem)
    return {"result": "inconsistent", "certificate": {k: fmt(v) for k, v in sorted(res.certificate.items())}}


def cmd_behaviour(nl: Netlist, args) -> dict:
    b = port_behaviour(nl.multiport)
    if b is VOID:
        return {"result": "void"}
    return {"result": "affine", "rank": b.rank, **b.to_json()}


def cmd_minports(nl: Netlist, args) -> dict:
    n = nl.multiport
    m = minimize_ports(n)
    gm = m.trees
    k = lift_blocks(gm)
    lifted, direct = m.lifted_behaviour(), port_behaviour(n)
    assert lifted == direct
    t2, pt, pd = gm.t2, gm.p_tilde, gm.deleted
    return {
        "ports": _names(n.ports), "minimized_ports": _names(pt),
        "lower_bound": min_port_count(n.graph.kvl_space(), n.internal),
        "trees": {"t1": _names(gm.t1), "t2": _names(t2), "t2_hat": _names(gm.t2_hat)},
        "deleted": _names(pd), "contracted": _names(t2),
        "blocks": {"K_t2_Pt": _block(k.k_t2_pt, t2, pt), "K_t2_Pd": _block(k.k_t2_pd, t2, pd),
                   "K_Pt_Pd": _block(k.k_pt_pd, pt, pd), "M_Pt_t2": _block(k.m_pt_t2, pt, t2),
                   "M_Pd_t2": _block(k.m_pd_t2, pd, t2), "M_Pd_Pt": _block(k.m_pd_pt, pd, pt)},
        "lift_matches_behaviour": True,
        "netlist": emit_netlist(m.reduced),
    }


def cmd_independence(nl: Netlist, args) -> dict:
    n = nl.multiport
    p1 = [Label.parse(x) for x in (args.ports or "").split(",") if x.strip()]
    bad = [str(p) for p in p1 if p not in n.ports]
    if bad:
        raise InputError(f"not ports: {', '.join(bad)}")
    fast = port_independence(n, p1)
    slow = port_independence_brute(n, p1)
    return {"ports": _names(p1), **fast.as_dict(), "brute_force_agrees": fast == slow}


def cmd_matroid_union(nl: Netlist, args) -> dict:
    g = nl.multiport.graph
    m1 = Graphic(g)
    m2 = Cographic(g) if args.second == "cographic" else Graphic(g)
    b1, b2 = union_max_distant(m1, m2)
    out = {"first": "graphic", "second": args.second, "rank_first": m1.rank(), "rank_second": m2.rank(),
           "union_rank": Union(m1, m2).rank(), "b1": _names(b1), "b2": _names(b2)}
    if args.link:
        try:
            with open(args.link, encoding="utf-8") as fh:
                other = parse_netlist(fh.read()).graph
        except OSError as ex:
            raise InputError(str(ex)) from None
        mo = Graphic(other)
        shared = m1.ground & mo.ground
        lk = linking(m1, mo)
        out["linking"] = {"shared": _names(shared), "rank": lk.rank(), "base": _names(linking_base(m1, mo))}
    return out


COMMANDS = {
    "rigidity": (cmd_rigidity, "exact and generic rigidity with topological witnesses"),
    "hybrid": (cmd_hybrid, "hybrid representation of the port behaviour"),
    "solve": (cmd_solve, "solve the network for given port values"),
    "behaviour": (cmd_behaviour, "port behaviour as an affine space"),
    "minports": (cmd_minports, "port-minimized multiport and lift blocks"),
    "independence": (cmd_independence, "independence of port voltage/current columns"),
    "matroid-union": (cmd_matroid_union, "union (and linking) of graphic matroids of the netlist graph"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rigidmp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="netlist file ('-' for stdin)")
        if name == "solve":
            sp.add_argument("--port", action="append", metavar="K=V",
                            help="port value: p1'=5 / v:p1=5 for a voltage, p1\"=2 / i:p1=2 for a current")
        if name == "independence":
            sp.add_argument("--ports", required=True, help="comma separated port labels")
        if name == "matroid-union":
            sp.add_argument("--second", choices=["graphic", "cographic"], default="graphic")
            sp.add_argument("--link", metavar="FILE", help="also link with the graphic matroid of FILE")
    return ap


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Execute one command; returns (exit code, text for stdout). Errors go to stderr."""
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as ex:
        print(f"rigidmp: {ex}", file=sys.stderr)
        return 2, ""
    try:
        nl = read_netlist(text)
        fn, _ = COMMANDS[args.command]
        body = fn(nl, args)
    except NetlistError as ex:
        print(f"{args.file}:{ex.line}:{ex.col}: {ex.message}", file=sys.stderr)
        return 2, ""
    except (InputError, MultiportError) as ex:
        print(f"rigidmp: {ex}", file=sys.stderr)
        return 2, ""
    report = {"command": args.command}
    if nl.defaulted:
        report["defaulted_parameters"] = {k: fmt(v) for k, v in sorted(nl.defaulted.items())}
    report.update(body)
    return 0, json.dumps(report, indent=2, sort_keys=True) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
