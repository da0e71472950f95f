"""Random instance generators and brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from rigidmp.colspace import AffineSpace, Label, VectorSpace, labels
from rigidmp.graph import Graph
from rigidmp.multiport import Multiport, controlled, isource, necessity_check, resistor, vsource

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def cols(prefix: str, n: int) -> list[Label]:
    return labels(f"{prefix}{i}" for i in range(n))


def rand_space(rng: random.Random, columns, rank: int | None = None, lo: int = -2, hi: int = 2) -> VectorSpace:
    columns = list(columns)
    if rank is None:
        rank = rng.randint(0, len(columns))
    rows = [[Fraction(rng.randint(lo, hi), rng.choice([1, 1, 1, 2, 3])) for _ in columns] for _ in range(rank)]
    return VectorSpace.from_rows(columns, rows)


def rand_affine(rng: random.Random, columns, rank: int | None = None) -> AffineSpace:
    v = rand_space(rng, columns, rank)
    return AffineSpace.make(v, {c: Fraction(rng.randint(-3, 3)) for c in v.columns})


def rand_graph(rng: random.Random, nv: int, ne: int, prefix: str = "e", loops: bool = True) -> Graph:
    edges = []
    for k in range(ne):
        a = rng.randrange(nv)
        b = rng.randrange(nv)
        if not loops:
            while b == a and nv > 1:
                b = rng.randrange(nv)
        edges.append((f"{prefix}{k}", f"n{a}", f"n{b}"))
    return Graph.build(edges)


def connected_graph(rng: random.Random, nv: int, extra: int, prefix: str = "e") -> Graph:
    """Random spanning tree plus ``extra`` random edges, no self loops."""
    edges = []
    for v in range(1, nv):
        u = rng.randrange(v)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    for _ in range(extra):
        a, b = rng.sample(range(nv), 2)
        edges.append((a, b))
    rng.shuffle(edges)
    return Graph.build([(f"{prefix}{k}", f"n{a}", f"n{b}") for k, (a, b) in enumerate(edges)])


def rand_multiport(rng: random.Random, nv: int | None = None, extra: int | None = None, nports: int | None = None,
                   controlled_sources: bool = True) -> Multiport:
    """Arbitrary multiport: random roles, random small parameters (not necessarily rigid)."""
    nv = nv or rng.randint(2, 5)
    extra = rng.randint(1, 4) if extra is None else extra
    g = connected_graph(rng, nv, extra)
    es = list(g.edge_labels)
    k = nports if nports is not None else rng.randint(0, min(3, len(es) - 1))
    ports = set(rng.sample(es, k))
    free = [e for e in es if e not in ports]
    rng.shuffle(free)
    devs = []
    while free:
        e = free.pop()
        x = rng.random()
        if controlled_sources and free and x < 0.25:
            z = free.pop()
            devs.append(controlled(rng.choice(["ccvs", "vccs", "cccs", "vcvs"]), e, z, rng.choice(PRIMES)))
        elif x < 0.7:
            devs.append(resistor(e, rng.choice(PRIMES)))
        elif x < 0.85:
            devs.append(vsource(e, rng.randint(-4, 4)))
        else:
            devs.append(isource(e, rng.randint(-4, 4)))
    return Multiport.build(g, ports, devs)


def sufficient_multiport(rng: random.Random, nv: int | None = None, extra: int | None = None,
                         nports: int | None = None) -> Multiport:
    """Multiport built to pass the loop/cutset sufficiency test.

    A random tree t is drawn first; E, Z1, Y1 edges are taken from t and
    J, Z2, Y2 edges from its complement, so Z1 u Y1 u E is loop free and
    Z2 u Y2 u J is cutset free. Parameters are distinct primes.
    """
    nv = nv or rng.randint(3, 6)
    extra = rng.randint(2, 5) if extra is None else extra
    g = connected_graph(rng, nv, extra)
    es = list(g.edge_labels)
    order = es[:]
    rng.shuffle(order)
    tree = g.constrained_forest(prefer=order)
    k = nports if nports is not None else rng.randint(1, min(3, len(es) - 2))
    ports = set(rng.sample(es, k))
    tin = [e for e in es if e in tree and e not in ports]
    tout = [e for e in es if e not in tree and e not in ports]
    rng.shuffle(tin)
    rng.shuffle(tout)
    primes = iter(rng.sample(PRIMES, len(PRIMES)))
    devs = []
    # controlled source kinds by where control and output must sit
    where = {"ccvs": (tin, tin), "vccs": (tout, tout), "cccs": (tin, tout), "vcvs": (tout, tin)}
    for _ in range(rng.randint(0, 2)):
        kind = rng.choice(sorted(where))
        a, b = where[kind]
        if a is b and len(a) < 2 or not a or not b:
            continue
        y = a.pop()
        z = b.pop()
        devs.append(controlled(kind, y, z, next(primes)))
    for e in tin:
        devs.append(vsource(e, rng.randint(-5, 5)) if rng.random() < 0.3 else resistor(e, next(primes)))
    for e in tout:
        devs.append(isource(e, rng.randint(-5, 5)) if rng.random() < 0.3 else resistor(e, next(primes)))
    return Multiport.build(g, ports, devs)


def with_redundant_ports(rng: random.Random, n: Multiport | None = None, k: int | None = None) -> Multiport:
    """Sufficient multiport plus k extra ports between random nodes (parallel ports likely)."""
    n = n or sufficient_multiport(rng, nports=0)
    nodes = sorted(n.graph.vertices, key=str)
    edges = list(n.graph.edges)
    k = rng.randint(2, 5) if k is None else k
    ports = []
    for j in range(k):
        a, b = rng.sample(nodes, 2)
        edges.append((Label(f"p{j}"), a, b))
        ports.append(f"p{j}")
    return Multiport.build(Graph.build(edges), ports, n.devices)


def violating_sources(n: Multiport) -> dict:
    """Source values that make the loop/cutset of a necessity witness contradictory."""
    w = necessity_check(n).witness()
    members = [Label(e) for e in w.get("loop", w.get("cutset", []))]
    values = {e: 0 for e in n.sources()}
    src = [e for e in members if e in values]
    if src:
        values[src[0]] = 1
    return values


# brute-force matroid oracles


def bases(rank_fn, ground) -> list[frozenset]:
    ground = sorted(ground)
    r = rank_fn(frozenset(ground))
    return [frozenset(c) for c in itertools.combinations(ground, r) if rank_fn(frozenset(c)) == r]


def brute_union_rank(m1, m2) -> int:
    b1s, b2s = bases(m1.rank, m1.ground), bases(m2.rank, m2.ground)
    return max(len(a | b) for a in b1s for b in b2s)


def graph_rank_oracle(g: Graph):
    """Forest rank computed with networkx (independent of the package union-find)."""
    import networkx as nx

    def rank(es):
        h = nx.MultiGraph()
        h.add_nodes_from(g.vertices)
        for e, t, hd in g.edges:
            if e in es:
                h.add_edge(t, hd)
        used = {x for e, t, hd in g.edges if e in es for x in (t, hd)}
        return len(used) - sum(1 for c in nx.connected_components(h.subgraph(used)))
    return rank


# hypothesis strategies

small_rational = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def spaces(draw, columns, max_rank: int | None = None):
    columns = list(columns)
    hi = len(columns) if max_rank is None else min(max_rank, len(columns))
    k = draw(st.integers(0, hi))
    rows = draw(st.lists(st.lists(small_rational, min_size=len(columns), max_size=len(columns)),
                         min_size=k, max_size=k))
    return VectorSpace.from_rows(columns, rows)


@st.composite
def graphs(draw, max_vertices: int = 5, max_edges: int = 8, prefix: str = "e"):
    nv = draw(st.integers(1, max_vertices))
    ne = draw(st.integers(0, max_edges))
    ends = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), min_size=ne, max_size=ne))
    return Graph.build([(f"{prefix}{k}", f"n{a}", f"n{b}") for k, (a, b) in enumerate(ends)],
                       vertices=[f"n{i}" for i in range(nv)])
