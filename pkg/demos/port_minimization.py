"""Remove redundant ports from the bridge fixture and lift the behaviour back.

Run with ``python3 demos/port_minimization.py`` after installing the package.
"""

from pathlib import Path

from rigidmp.multiport import port_behaviour
from rigidmp.netlist import emit_netlist, parse_netlist
from rigidmp.portxform import min_port_count, minimize_ports, port_independence

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    n = parse_netlist((FIX / "bridge.net").read_text())
    bound = min_port_count(n.graph.kvl_space(), n.internal)
    m = minimize_ports(n)
    print(f"ports {len(n.ports)} -> {len(m.trees.p_tilde)} (lower bound {bound})")
    print("kept:", ", ".join(sorted(map(str, m.trees.p_tilde))))
    print("lifted behaviour equals the direct one:", m.lifted_behaviour() == port_behaviour(n))
    print()
    print(emit_netlist(m.reduced))
    for p1 in (["p1"], ["p4", "p5"], ["p1", "p2", "p4"]):
        print(p1, port_independence(n, p1).as_dict())


if __name__ == "__main__":
    main()
