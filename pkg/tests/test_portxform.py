import itertools
import random
from pathlib import Path

from helpers import cols, rand_space, with_redundant_ports
from rigidmp.colspace import AffineSpace, Label, VectorSpace, labels
from rigidmp.graph import Graph
from rigidmp.multiport import Multiport, device_space, port_behaviour, resistor, topo_space, vsource
from rigidmp.netlist import parse_netlist
from rigidmp.portxform import (graph_port_minimize, internal_model, is_port_transformation, lift_behaviour,
                               lift_blocks, min_port_count, minimize_ports, port_independence,
                               port_independence_brute, port_reduce_matrix, visible_minor_form)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
BRIDGE = parse_netlist((FIXTURES / "bridge.net").read_text())


# --- visible minor form ---------------------------------------------------------------


def test_visible_form_full_space():
    t, r = cols("t", 2), cols("r", 2)
    f = visible_minor_form(VectorSpace.full(t + r), t)
    assert len(f.b2) == 0 and len(f.b1) == 2 and len(f.b3) == 2


def test_visible_form_single_row():
    v = VectorSpace.from_rows(["t", "r"], [[1, 1]])
    f = visible_minor_form(v, ["t"])
    assert not f.b1 and not f.b3 and len(f.b2) == 1
    assert f.b2[0] == {Label("t"): 1, Label("r"): 1}


def test_visible_form_block_identities():
    rng = random.Random(0)
    t, r = cols("t", 3), cols("r", 3)
    for _ in range(100):
        v = rand_space(rng, t + r)
        f = visible_minor_form(v, t)
        on = lambda rows, cs: VectorSpace.from_vectors(cs, [{c: x[c] for c in cs} for x in rows])
        assert on(f.b1, t) == v.contract(t)
        assert on(f.b1 + f.b2, t) == v.restrict(t)
        assert on(f.b3, r) == v.contract(r)
        assert on(f.b2 + f.b3, r) == v.restrict(r)
        assert len(f.b2) == v.restrict(t).rank - v.contract(t).rank


# --- matrix port reduction ------------------------------------------------------------


def test_reduce_keeps_minimal_ports():
    v = VectorSpace.from_rows(["s", "p"], [[1, 1]])
    red = port_reduce_matrix(v, ["s"])
    assert red.kept == (Label("p"),)


def test_reduce_decoupled():
    s, p = cols("s", 2), cols("p", 2)
    red = port_reduce_matrix(VectorSpace.full(s + p), s)
    assert red.kept == ()


def test_reduce_parallel_ports():
    # two parallel port edges across one resistor edge
    g = Graph.build([("s", 1, 2), ("p1", 1, 2), ("p2", 1, 2)])
    red = port_reduce_matrix(g.kvl_space(), ["s"])
    assert len(red.kept) == 1


def test_reduce_meets_bound_and_preserves_minors():
    rng = random.Random(1)
    s, p = cols("s", 3), cols("p", 4)
    for _ in range(100):
        v = rand_space(rng, s + p)
        red = port_reduce_matrix(v, s)
        assert len(red.kept) == min_port_count(v, s)
        assert red.space.restrict(s) == v.restrict(s) and red.space.contract(s) == v.contract(s)
        assert is_port_transformation(v, red.space, s).holds


# --- graph port minimization ----------------------------------------------------------


def test_graph_minimal_ports_kept():
    g = Graph.build([("s", 1, 2), ("t", 2, 0), ("p1", 1, 0), ("p2", 2, 0)])
    gm = graph_port_minimize(g, ["s", "t"])
    assert gm.p_tilde == gm.p


def test_graph_parallel_ports():
    g = Graph.build([("s", 1, 2), ("p1", 1, 2), ("p2", 2, 1)])
    gm = graph_port_minimize(g, ["s"])
    assert len(gm.p_tilde) == 1


def test_bridge_fixture_minimization():
    g, s = BRIDGE.graph, BRIDGE.internal
    gm = graph_port_minimize(g, s)
    vv = g.kvl_space()
    assert len(gm.p_tilde) == min_port_count(vv, s) == 3
    small = gm.minimized.kvl_space()
    assert small.restrict(s) == vv.restrict(s) and small.contract(s) == vv.contract(s)


def test_minimization_facts():
    rng = random.Random(2)
    for _ in range(100):
        n = with_redundant_ports(rng)
        g, s = n.graph, sorted(n.internal)
        gm = graph_port_minimize(g, s)
        vv = g.kvl_space()
        # contracting t2 and deleting outside t2_hat do not change the internal minors
        assert g.minor(contract=gm.t2).kvl_space().restrict(s) == vv.restrict(s)
        assert g.minor(delete=gm.p - gm.t2_hat).kvl_space().contract(s) == vv.contract(s)
        small = gm.minimized.kvl_space()
        assert small.restrict(s) == vv.restrict(s) and small.contract(s) == vv.contract(s)
        assert len(gm.p_tilde) == min_port_count(vv, s)


def test_graph_and_matrix_minimizers_agree():
    rng = random.Random(3)
    for _ in range(60):
        n = with_redundant_ports(rng)
        s = sorted(n.internal)
        v = n.graph.kvl_space()
        small = graph_port_minimize(n.graph, s).minimized.kvl_space()
        red = port_reduce_matrix(v, s).space
        assert is_port_transformation(small, red, s).holds
        assert is_port_transformation(v, small, s).holds


def test_port_transformation_examples():
    rng = random.Random(4)
    s, p = cols("s", 2), cols("p", 2)
    v = rand_space(rng, s + p, 2)
    w = v.relabel({Label("p0"): Label("q0"), Label("p1"): Label("q1")})
    assert is_port_transformation(v, w, s).holds
    # changing the contraction breaks it
    x = VectorSpace.full(s + p)
    y = VectorSpace.from_rows(s + p, [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
    r = is_port_transformation(x, y, s)
    assert r.restriction_equal and not r.contraction_equal and not r.holds


# --- internal models -------------------------------------------------------------------


def test_internal_model_examples():
    rng = random.Random(5)
    a, b = cols("a", 2), cols("b", 3)
    for _ in range(30):
        v = rand_space(rng, a + b)
        assert internal_model(v, VectorSpace.full(b)).translate == v.restrict(b)
        assert internal_model(v, v.contract(b)).translate == v.contract(b)


def test_bridge_internal_models_equal():
    m = minimize_ports(BRIDGE)
    before = internal_model(topo_space(BRIDGE), device_space(BRIDGE))
    after = internal_model(topo_space(m.reduced), device_space(m.reduced))
    assert before == after


# --- lifting -----------------------------------------------------------------------------


def test_lift_identity_when_minimal():
    n = parse_netlist((FIXTURES / "thevenin.net").read_text())
    m = minimize_ports(n)
    assert m.trees.p_tilde == n.ports and not m.trees.t2 and not m.trees.deleted
    assert m.lifted_behaviour() == port_behaviour(n)


def test_lift_parallel_duplicate():
    g = Graph.build([("e", "a", "b"), ("r", "b", "g"), ("p1", "a", "g"), ("p2", "a", "g")])
    n = Multiport.build(g, ["p1", "p2"], [vsource("e", 3), resistor("r", 2)])
    m = minimize_ports(n)
    lifted = m.lifted_behaviour()
    assert lifted == port_behaviour(n)
    # both ports see the same voltage; only the total current is constrained
    assert all(x[Label("p1", 1)] == x[Label("p2", 1)] for x in lifted.translate.vectors())
    assert lifted.translate.contains({"p1'": 0, "p2'": 0, 'p1"': 1, 'p2"': -1})


def test_lift_bridge():
    m = minimize_ports(BRIDGE)
    assert m.lifted_behaviour() == port_behaviour(BRIDGE)
    assert sorted(map(str, m.trees.p_tilde)) == ["p1", "p2", "p3"]


def test_lift_blocks_orthogonality():
    rng = random.Random(6)
    for _ in range(50):
        gm = graph_port_minimize(*(lambda n: (n.graph, n.internal))(with_redundant_ports(rng)))
        k = lift_blocks(gm)
        for (a, b), x in k.m_pt_t2.items():
            assert x == -k.k_t2_pt[b, a]
        for (a, b), x in k.k_pt_pd.items():
            assert x == -k.m_pd_pt[b, a]


def test_lift_random_with_controlled_sources():
    rng = random.Random(7)
    kinds = set()
    for _ in range(80):
        n = with_redundant_ports(rng)
        kinds |= {d.kind for d in n.devices}
        m = minimize_ports(n)
        assert m.lifted_behaviour() == port_behaviour(n)
        assert lift_behaviour(port_behaviour(m.reduced), m.trees) == port_behaviour(n)
    assert {"ccvs", "vccs", "cccs", "vcvs"} & kinds


def test_lift_void_passes_through():
    g = Graph.build([("e1", 1, 2), ("e2", 1, 2), ("p1", 1, 2), ("p2", 1, 2)])
    n = Multiport.build(g, ["p1", "p2"], [vsource("e1", 1), vsource("e2", 2)])
    m = minimize_ports(n)
    assert port_behaviour(n) == m.lifted_behaviour()


# --- port independence ---------------------------------------------------------------------


def test_independence_empty_set():
    r = port_independence(BRIDGE, [])
    assert all(r.as_dict().values())


def test_independence_parallel_ports():
    g = Graph.build([("r", 1, 2), ("p1", 1, 2), ("p2", 1, 2)])
    n = Multiport.build(g, ["p1", "p2"], [resistor("r", 3)])
    r = port_independence(n, ["p1", "p2"])
    assert not r.voltage_restriction and not r.voltage_contraction
    assert r == port_independence_brute(n, ["p1", "p2"])


def test_independence_bridge_diagonal():
    for p in ["p4", "p5"]:
        assert port_independence(BRIDGE, [p]) == port_independence_brute(BRIDGE, [p])


def test_independence_all_subsets_random():
    rng = random.Random(8)
    for _ in range(40):
        n = with_redundant_ports(rng, k=rng.randint(2, 4))
        ports = sorted(n.ports)
        for k in range(len(ports) + 1):
            for sub in itertools.combinations(ports, k):
                assert port_independence(n, sub) == port_independence_brute(n, sub)


def test_bridge_behaviour_nonvoid():
    assert isinstance(port_behaviour(BRIDGE), AffineSpace)
    assert labels(["p1", "p2", "p3", "p4", "p5"]) == sorted(BRIDGE.ports)
