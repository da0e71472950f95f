"""Walk through the rigidity analysis of a few small circuits.

Run with ``python3 demos/circuit_rigidity.py`` after installing the package.
"""

from pathlib import Path

from rigidmp.multiport import analyse, hybrid_rep, solve, sufficiency_check
from rigidmp.netlist import parse_netlist

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_netlist((FIX / f"{name}.net").read_text())


def main():
    # a source behind a resistor: rigid, and its port law is v = 6 - 3 i with our port signs
    n = load("thevenin")
    a = analyse(n)
    print("thevenin:", a.verdict)
    h = hybrid_rep(n)
    print("  port", h.p2[0], "r22 =", h.r22[0][0], "offset =", h.s2[0])

    # two voltage sources in parallel: the loop makes the network inconsistent
    n = load("parallel_vsources")
    a = analyse(n)
    print("parallel sources:", a.verdict, a.necessity.witness())
    print("  solve says", solve(n).kind)

    # the loop test is only sufficient: this CCVS still has a unique solution
    n = load("ccvs_parallel")
    print("ccvs in parallel: sufficiency", bool(sufficiency_check(n)), "| solve", solve(n).kind,
          "| verdict", analyse(n).verdict)


if __name__ == "__main__":
    main()
