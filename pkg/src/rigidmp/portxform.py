"""Port minimization: replacing the port set of a multiport by a smaller one.

A space V_SQ is a port transformation of V_SP (relative to the internal
columns S) when both have the same restriction and contraction on S. Any
such pair determines each other through a matched composition, so the
internal behaviour is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .colspace import (AffineSpace, Label, LabelLike, Space, VectorSpace, VOID, Void, affine_intersect, labels,
                       matched, vsum)
from .graph import Graph
from .multiport import Multiport, behaviour_space, port_behaviour
from .rigidity import translate


def _v(e: Label) -> Label:
    return e.prime()


def _i(e: Label) -> Label:
    return e.dprime()


# --- representative matrices -------------------------------------------------


@dataclass(frozen=True)
class VisibleMinorForm:
    """Rows (B1_T 0), (B2_T B2_R), (0 B3_R) of V; B1 spans V x T, B3 spans V x R."""

    t: tuple[Label, ...]
    r: tuple[Label, ...]
    b1: tuple[dict, ...]
    b2: tuple[dict, ...]
    b3: tuple[dict, ...]

    def space(self) -> VectorSpace:
        return VectorSpace.from_vectors(self.t + self.r, self.b1 + self.b2 + self.b3)


def visible_minor_form(v: VectorSpace, t: Iterable[LabelLike]) -> VisibleMinorForm:
    t = sorted(set(labels(t)))
    r = sorted(v.colset - set(t))
    cols = t + r
    zero = {c: Fraction(0) for c in cols}
    b1 = [{**zero, **x} for x in v.contract(t).vectors()]
    b3 = [{**zero, **x} for x in v.contract(r).vectors()]
    # extend span(B1 on T) to V o T with rows of V
    seen = VectorSpace.from_vectors(t, [{c: x[c] for c in t} for x in b1])
    b2 = []
    for x in v.vectors():
        xt = {c: x[c] for c in t}
        if not seen.contains(xt):
            b2.append({**zero, **x})
            seen = VectorSpace.from_vectors(t, seen.vectors() + [xt])
    out = VisibleMinorForm(tuple(t), tuple(r), tuple(b1), tuple(b2), tuple(b3))
    assert out.space() == v.restrict(cols)
    return out


@dataclass(frozen=True)
class PortReduction:
    space: VectorSpace
    kept: tuple[Label, ...]
    form: VisibleMinorForm


def port_reduce_matrix(v: VectorSpace, t: Iterable[LabelLike]) -> PortReduction:
    """Keep a column base of the B2_R block as the new ports; drop B3 and the rest of R."""
    f = visible_minor_form(v, t)
    block = VectorSpace.from_vectors(f.r, [{c: x[c] for c in f.r} for x in f.b2])
    kept = []
    for c in f.r:
        if block.is_independent(kept + [c]):
            kept.append(c)
    cols = list(f.t) + kept
    out = VectorSpace.from_vectors(cols, [{c: x[c] for c in cols} for x in f.b1 + f.b2])
    assert len(kept) == len(f.b2)
    return PortReduction(out, tuple(kept), f)


def min_port_count(v: VectorSpace, s: Iterable[LabelLike]) -> int:
    """Lower bound on the number of ports of any port transformation: r(V o S) - r(V x S)."""
    s = labels(s)
    return v.restrict(s).rank - v.contract(s).rank


# --- port transformations ---------------------------------------------------------


@dataclass(frozen=True)
class PortTransformation:
    holds: bool
    restriction_equal: bool
    contraction_equal: bool
    round_trip: bool | None


def is_port_transformation(v_sp: Space, v_sq: Space, s: Iterable[LabelLike]) -> PortTransformation:
    """Same restriction and contraction on S, plus the round trip V_SP <-> (V_SP <-> V_SQ) = V_SQ."""
    v_sp, v_sq = translate(v_sp), translate(v_sq)
    s = sorted(set(labels(s)))
    if not (set(s) <= v_sp.colset and set(s) <= v_sq.colset):
        raise ValueError("S must be columns of both spaces")
    re = v_sp.restrict(s) == v_sq.restrict(s)
    ce = v_sp.contract(s) == v_sq.contract(s)
    rt = None
    if re and ce:
        # Q may reuse labels of P; move Q to tagged copies first
        clash = (v_sq.colset - set(s)) & v_sp.colset
        mp = {c: Label(c.name + ("'" if c.decoration == 1 else '"' if c.decoration == 2 else ""), 3, "q")
              for c in clash}
        w = v_sq.relabel(mp)
        v_pq = matched(v_sp, w)
        rt = matched(v_sp, v_pq) == w
        if not rt:
            raise AssertionError("port transformation failed to round trip")
    return PortTransformation(bool(re and ce and rt), re, ce, rt)


def internal_model(v_ab: Space, k_b: Space) -> AffineSpace | Void:
    """(K_B n V_AB o B) + V_AB x B: what the ports let the internal columns do."""
    v = translate(v_ab)
    k = AffineSpace.of(k_b)
    b = sorted(k.colset)
    x = affine_intersect(k, v.restrict(b))
    if x is VOID:
        return VOID
    return AffineSpace.make(vsum(x.translate, v.contract(b)), x.point())


# --- graph based minimization ------------------------------------------------------


@dataclass(frozen=True)
class GraphMinimization:
    """Trees t1 (of G o S), t1 u t2 (of G), t2 u P~ (of G o P) and the minimized graph.

    The minimized graph is G with P - (t2 u P~) deleted and t2 contracted; its
    ports are P~. Labels and orientations of the kept edges are unchanged.
    """

    graph: Graph
    s: frozenset
    p: frozenset
    t1: frozenset
    t2: frozenset
    t2_hat: frozenset
    p_tilde: frozenset
    minimized: Graph

    @property
    def deleted(self) -> frozenset:
        return self.p - self.t2_hat


def graph_port_minimize(g: Graph, s: Iterable[LabelLike], grow_first: Sequence[LabelLike] = (),
                        hat_first: Sequence[LabelLike] = (), hat_within: Iterable[LabelLike] | None = None
                        ) -> GraphMinimization:
    """Choose trees and build the minimized graph.

    ``grow_first`` orders the edges used to grow t1 into a tree of G;
    ``hat_first`` orders the growth of t2 into a tree of G o P. When
    ``hat_within`` is given, t2_hat is fixed first (a tree of G o P built
    from those edges in that order) and t2 is taken inside it.
    """
    s = frozenset(labels(s))
    p = g.edgeset - s
    t1 = g.restrict(s).spanning_forest()
    gp = g.restrict(p)
    if hat_within is None:
        t = g.constrained_forest(must_include=t1, prefer=labels(grow_first))
        t2 = t - t1
        t2_hat = gp.constrained_forest(must_include=t2, prefer=labels(hat_first))
    else:
        t2_hat = gp.constrained_forest(prefer=labels(hat_within))
        t = g.constrained_forest(must_include=t1, must_avoid=p - t2_hat, prefer=labels(grow_first))
        t2 = t - t1
    assert t2 <= t2_hat
    mini = g.minor(delete=p - t2_hat, contract=t2)
    return GraphMinimization(g, s, p, t1, t2, t2_hat, t2_hat - t2, mini)


@dataclass(frozen=True)
class LiftBlocks:
    """Entries K (voltage side) and M (current side) linking t2, P~ and P - t2_hat."""

    k_t2_pt: dict
    k_t2_pd: dict
    k_pt_pd: dict
    m_pt_t2: dict
    m_pd_t2: dict
    m_pd_pt: dict


def lift_blocks(gm: GraphMinimization) -> LiftBlocks:
    g = gm.graph
    p = sorted(gm.p)
    t2, pt, pd = sorted(gm.t2), sorted(gm.p_tilde), sorted(gm.deleted)
    vv = g.kvl_space()
    vi = g.kcl_space()
    q2 = vv.contract(p).standard_rep(t2)
    q1 = vv.restrict(p).standard_rep(gm.t2_hat)
    m3 = vi.contract(p).standard_rep(pd)
    m1 = vi.restrict(p).standard_rep(gm.p - gm.t2)
    sub = lambda rep, rows, cols: {(a, b): rep[a][b] for a in rows for b in cols}
    blocks = LiftBlocks(sub(q2, t2, pt), sub(q2, t2, pd), sub(q1, pt, pd), sub(m1, pt, t2), sub(m3, pd, t2),
                        sub(m3, pd, pt))
    for a in pt:
        for b in t2:
            assert blocks.m_pt_t2[a, b] == -blocks.k_t2_pt[b, a]
        for b in pd:
            assert blocks.k_pt_pd[a, b] == -blocks.m_pd_pt[b, a]
        for b in t2:
            assert q1[a][b] == 0
    for a in pt:
        for b in pd:
            assert m1[a][b] == 0
    return blocks


def lift_behaviour(small: Space | Void, gm: GraphMinimization) -> AffineSpace | Void:
    """Port behaviour on P' u P'' rebuilt from the behaviour on P~' u P~''."""
    if small is VOID:
        return VOID
    small = AffineSpace.of(small)
    k = lift_blocks(gm)
    t2, pt, pd = sorted(gm.t2), sorted(gm.p_tilde), sorted(gm.deleted)
    ports = sorted(gm.p)
    cols = [_v(x) for x in ports] + [_i(x) for x in ports]

    def lift(x: dict) -> dict:
        out = {c: Fraction(0) for c in cols}
        for a in pt:
            out[_v(a)] = x[_v(a)]
            out[_i(a)] = x[_i(a)]
        for b in pd:
            out[_v(b)] = sum((x[_v(a)] * k.k_pt_pd[a, b] for a in pt), Fraction(0))
        for b in t2:
            out[_i(b)] = sum((x[_i(a)] * k.m_pt_t2[a, b] for a in pt), Fraction(0))
        return out

    rows = [lift(x) for x in small.translate.vectors()]
    for a in t2:
        r = {c: Fraction(0) for c in cols}
        r[_v(a)] = Fraction(1)
        for b in pt:
            r[_v(b)] = k.k_t2_pt[a, b]
        for b in pd:
            r[_v(b)] = k.k_t2_pd[a, b]
        rows.append(r)
    for a in pd:
        r = {c: Fraction(0) for c in cols}
        r[_i(a)] = Fraction(1)
        for b in t2:
            r[_i(b)] = k.m_pd_t2[a, b]
        for b in pt:
            r[_i(b)] = k.m_pd_pt[a, b]
        rows.append(r)
    return AffineSpace.make(VectorSpace.from_vectors(cols, rows), lift(small.point()))


@dataclass(frozen=True)
class MinimizedMultiport:
    original: Multiport
    reduced: Multiport
    trees: GraphMinimization

    def lifted_behaviour(self) -> AffineSpace | Void:
        return lift_behaviour(port_behaviour(self.reduced), self.trees)


def minimize_ports(n: Multiport, **kw) -> MinimizedMultiport:
    """Port-minimal multiport with the same internal behaviour, together with its lift data."""
    gm = graph_port_minimize(n.graph, n.internal, **kw)
    return MinimizedMultiport(n, n.with_graph(gm.minimized, gm.p_tilde), gm)


# --- independence of port subsets ----------------------------------------------------


@dataclass(frozen=True)
class PortIndependence:
    """Independence of P1' and P1'' in the restriction (o) and contraction (x) of the behaviour."""

    voltage_restriction: bool
    voltage_contraction: bool
    current_restriction: bool
    current_contraction: bool

    def as_dict(self) -> dict:
        return {"v_restriction": self.voltage_restriction, "v_contraction": self.voltage_contraction,
                "i_restriction": self.current_restriction, "i_contraction": self.current_contraction}


def port_independence_brute(n: Multiport, p1: Iterable[LabelLike]) -> PortIndependence:
    """Same question answered on the full behaviour space."""
    p1 = labels(p1)
    v = behaviour_space(n)
    ports = sorted(n.ports)
    pv, pi = [_v(p) for p in ports], [_i(p) for p in ports]
    a, b = [_v(p) for p in p1], [_i(p) for p in p1]
    return PortIndependence(v.restrict(pv).is_independent(a), v.contract(pv).is_independent(a),
                            v.restrict(pi).is_independent(b), v.contract(pi).is_independent(b))


def port_independence(n: Multiport, p1: Iterable[LabelLike]) -> PortIndependence:
    """Decide independence of P1' and P1'' using port-minimized multiports.

    Trees are chosen so that P1 meets t2 as much as possible (voltage side) or
    t2_hat as little as possible (current side); then only P1 n P~ needs to be
    examined in the small behaviour.
    """
    p1 = frozenset(labels(p1))
    if not p1 <= n.ports:
        raise ValueError("P1 must be a set of ports")
    g, ports = n.graph, sorted(n.ports)
    first = sorted(p1)

    vr = vc = False
    if g.is_loop_free(p1):
        m = minimize_ports(n, grow_first=first, hat_first=first)
        assert p1 <= m.trees.t2_hat
        small = behaviour_space(m.reduced)
        pt = sorted(m.trees.p_tilde)
        cols = [_v(p) for p in sorted(p1 & m.trees.p_tilde)]
        vr = small.restrict([_v(p) for p in pt]).is_independent(cols)
        vc = small.contract([_v(p) for p in pt]).is_independent(cols)

    ir = ic = False
    if g.is_cutset_free(p1):
        rest = [p for p in ports if p not in p1]
        gp = g.restrict(n.ports)
        hat = gp.constrained_forest(prefer=rest + first)
        inside = sorted(hat - p1) + sorted(hat & p1)
        m = minimize_ports(n, grow_first=inside, hat_within=rest + first)
        assert m.trees.t2_hat == hat
        small = behaviour_space(m.reduced)
        pt = sorted(m.trees.p_tilde)
        cols = [_i(p) for p in sorted(p1 & m.trees.p_tilde)]
        ir = small.restrict([_i(p) for p in pt]).is_independent(cols)
        ic = small.contract([_i(p) for p in pt]).is_independent(cols)
    return PortIndependence(vr, vc, ir, ic)
