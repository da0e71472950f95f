"""Electrical multiports built from resistors, sources and controlled sources.

Voltages live on primed copies of the edge labels and currents on double
primed copies. Port currents are not negated: the port behaviour is the
matched composition of the topology space with the device space. With this
convention a 1-port resistor R has behaviour v = -R i.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .colspace import (AffineSpace, Inconsistent, Label, LabelLike, VectorSpace, VOID, Void, affine_matched,
                       direct_sum, frac, lab, labels, linsolve, matched)
from .graph import CutsetInAvoid, Graph, LoopInInclude
from .matroid import Cographic, DirectSum, Free, Graphic, Matroid, Partition, Zero, matroid_pair_rigid
from .rigidity import Connection, GeneralizedMultiport, RigidVerdict, connect_generalized, pair_rigid


# --- devices ----------------------------------------------------------------


@dataclass(frozen=True)
class Resistor:
    edge: Label
    value: Fraction

    kind = "resistor"

    @property
    def edges(self) -> tuple[Label, ...]:
        return (self.edge,)


@dataclass(frozen=True)
class VSource:
    edge: Label
    value: Fraction

    kind = "vsource"

    @property
    def edges(self) -> tuple[Label, ...]:
        return (self.edge,)


@dataclass(frozen=True)
class ISource:
    edge: Label
    value: Fraction

    kind = "isource"

    @property
    def edges(self) -> tuple[Label, ...]:
        return (self.edge,)


@dataclass(frozen=True)
class _Controlled:
    control: Label
    out: Label
    gain: Fraction

    @property
    def edges(self) -> tuple[Label, ...]:
        return (self.control, self.out)


class CCVS(_Controlled):
    """v_ctl = 0, v_out = r i_ctl."""

    kind = "ccvs"


class VCCS(_Controlled):
    """i_ctl = 0, i_out = g v_ctl."""

    kind = "vccs"


class CCCS(_Controlled):
    """v_ctl = 0, i_out = alpha i_ctl."""

    kind = "cccs"


class VCVS(_Controlled):
    """i_ctl = 0, v_out = beta v_ctl."""

    kind = "vcvs"


Device = Union[Resistor, VSource, ISource, CCVS, VCCS, CCCS, VCVS]
CONTROLLED = {"ccvs": CCVS, "vccs": VCCS, "cccs": CCCS, "vcvs": VCVS}


def resistor(e: LabelLike, r) -> Resistor:
    return Resistor(lab(e), frac(r))


def vsource(e: LabelLike, s) -> VSource:
    return VSource(lab(e), frac(s))


def isource(e: LabelLike, s) -> ISource:
    return ISource(lab(e), frac(s))


def controlled(kind: str, ctl: LabelLike, out: LabelLike, gain) -> _Controlled:
    return CONTROLLED[kind](lab(ctl), lab(out), frac(gain))


def _v(e: Label) -> Label:
    return e.prime()


def _i(e: Label) -> Label:
    return e.dprime()


class MultiportError(ValueError):
    pass


@dataclass(frozen=True)
class Roles:
    """Edge sets by role: E, J, R and the control/output sets Y1, Z1, Y2, Z2."""

    E: frozenset
    J: frozenset
    R: frozenset
    Y1: frozenset
    Z1: frozenset
    Y2: frozenset
    Z2: frozenset


@dataclass(frozen=True)
class Multiport:
    graph: Graph
    ports: frozenset
    devices: tuple

    def __post_init__(self):
        edges = self.graph.edgeset
        if not self.ports <= edges:
            raise MultiportError(f"ports {sorted(map(str, self.ports - edges))} are not edges")
        seen: dict = {}
        for d in self.devices:
            if isinstance(d, _Controlled) and d.control == d.out:
                raise MultiportError(f"{d.kind} on {d.control}: control and output must be distinct edges")
            for e in d.edges:
                if e not in edges:
                    raise MultiportError(f"device {d.kind} uses unknown edge {e}")
                if e in self.ports:
                    raise MultiportError(f"port edge {e} carries a device")
                if e in seen:
                    raise MultiportError(f"edge {e} carries two devices ({seen[e]} and {d.kind})")
                seen[e] = d.kind
        missing = edges - self.ports - set(seen)
        if missing:
            raise MultiportError(f"edges {sorted(map(str, missing))} carry no device")

    @classmethod
    def build(cls, graph: Graph, ports: Iterable[LabelLike], devices: Iterable[Device]) -> "Multiport":
        return cls(graph, frozenset(labels(ports)), tuple(devices))

    @property
    def internal(self) -> frozenset:
        return self.graph.edgeset - self.ports

    def roles(self) -> Roles:
        r = {k: set() for k in ("E", "J", "R", "Y1", "Z1", "Y2", "Z2")}
        for d in self.devices:
            if isinstance(d, Resistor):
                r["R"].add(d.edge)
            elif isinstance(d, VSource):
                r["E"].add(d.edge)
            elif isinstance(d, ISource):
                r["J"].add(d.edge)
            elif isinstance(d, CCVS):
                r["Y1"].add(d.control)
                r["Z1"].add(d.out)
            elif isinstance(d, VCCS):
                r["Y2"].add(d.control)
                r["Z2"].add(d.out)
            elif isinstance(d, CCCS):
                r["Y1"].add(d.control)
                r["Z2"].add(d.out)
            elif isinstance(d, VCVS):
                r["Y2"].add(d.control)
                r["Z1"].add(d.out)
        return Roles(**{k: frozenset(v) for k, v in r.items()})

    def sources(self) -> dict[Label, Fraction]:
        return {d.edge: d.value for d in self.devices if isinstance(d, (VSource, ISource))}

    def with_sources(self, values: Mapping) -> "Multiport":
        values = {lab(k): frac(v) for k, v in values.items()}
        devs = []
        for d in self.devices:
            if isinstance(d, (VSource, ISource)) and d.edge in values:
                d = replace(d, value=values[d.edge])
            devs.append(d)
        return replace(self, devices=tuple(devs))

    def homogeneous(self) -> "Multiport":
        return self.with_sources({e: 0 for e in self.sources()})

    def with_graph(self, graph: Graph, ports: Iterable[LabelLike]) -> "Multiport":
        return Multiport.build(graph, ports, self.devices)


# --- spaces -------------------------------------------------------------------


def topo_space(n: Multiport | Graph) -> VectorSpace:
    """KVL space on primed labels plus KCL space on double primed labels."""
    g = n.graph if isinstance(n, Multiport) else n
    vv = g.kvl_space().relabel({e: _v(e) for e in g.edge_labels})
    vi = g.kcl_space().relabel({e: _i(e) for e in g.edge_labels})
    return direct_sum(vv, vi)


def device_equations(n: Multiport) -> tuple[list[dict[Label, Fraction]], list[Fraction], list[str]]:
    """One equation per internal edge: (coefficients, right hand side, row name)."""
    rows, rhs, names = [], [], []

    def add(coeffs, b, name):
        rows.append(coeffs)
        rhs.append(Fraction(b))
        names.append(name)

    one = Fraction(1)
    for d in n.devices:
        if isinstance(d, Resistor):
            add({_v(d.edge): one, _i(d.edge): -d.value}, 0, f"dev:{d.edge}")
        elif isinstance(d, VSource):
            add({_v(d.edge): one}, d.value, f"dev:{d.edge}")
        elif isinstance(d, ISource):
            add({_i(d.edge): one}, d.value, f"dev:{d.edge}")
        else:
            y, z, k = d.control, d.out, d.gain
            if isinstance(d, CCVS):
                add({_v(y): one}, 0, f"dev:{y}")
                add({_v(z): one, _i(y): -k}, 0, f"dev:{z}")
            elif isinstance(d, VCCS):
                add({_i(y): one}, 0, f"dev:{y}")
                add({_i(z): one, _v(y): -k}, 0, f"dev:{z}")
            elif isinstance(d, CCCS):
                add({_v(y): one}, 0, f"dev:{y}")
                add({_i(z): one, _i(y): -k}, 0, f"dev:{z}")
            elif isinstance(d, VCVS):
                add({_i(y): one}, 0, f"dev:{y}")
                add({_v(z): one, _v(y): -k}, 0, f"dev:{z}")
    return rows, rhs, names


def device_space(n: Multiport) -> AffineSpace:
    """Affine solution set of the device equations on S' u S''."""
    s = sorted(n.internal)
    cols = [_v(e) for e in s] + [_i(e) for e in s]
    rows, rhs, _ = device_equations(n)
    a = AffineSpace.from_equations(cols, [[r.get(c, 0) for c in cols] for r in rows], rhs)
    assert a is not VOID and a.rank == len(s), "device space must be proper"
    return a


def generalized(n: Multiport) -> GeneralizedMultiport:
    return GeneralizedMultiport(topo_space(n), device_space(n))


def port_behaviour(n: Multiport) -> AffineSpace | Void:
    """Matched composition of the topology space with the device space, on P' u P''."""
    return affine_matched(topo_space(n), device_space(n))


def behaviour_space(n: Multiport) -> VectorSpace:
    """Translate of the port behaviour (taken from the source-free multiport, never void)."""
    b = port_behaviour(n.homogeneous())
    assert b is not VOID
    return b.translate


def exact_rigidity(n: Multiport) -> RigidVerdict:
    return pair_rigid(topo_space(n), device_space(n))


# --- topological checks -----------------------------------------------------------


@dataclass(frozen=True)
class TopoCheck:
    passed: bool
    loop: tuple[Label, ...] | None = None
    cutset: tuple[Label, ...] | None = None

    def __bool__(self) -> bool:
        return self.passed

    def witness(self) -> dict:
        w = {}
        if self.loop is not None:
            w["loop"] = [str(e) for e in self.loop]
        if self.cutset is not None:
            w["cutset"] = [str(e) for e in self.cutset]
        return w


def _loop_cut(g: Graph, no_loop: Iterable[Label], no_cut: Iterable[Label]) -> TopoCheck:
    loop = cut = None
    try:
        g.constrained_forest(must_include=no_loop)
    except LoopInInclude as ex:
        loop = tuple(ex.loop)
    try:
        g.constrained_forest(must_avoid=no_cut)
    except CutsetInAvoid as ex:
        cut = tuple(ex.cut)
    return TopoCheck(loop is None and cut is None, loop, cut)


def necessity_check(n: Multiport) -> TopoCheck:
    """Y1 u E loop free and Y2 u J cutset free."""
    r = n.roles()
    return _loop_cut(n.graph, r.Y1 | r.E, r.Y2 | r.J)


def sufficiency_check(n: Multiport) -> TopoCheck:
    """Z1 u Y1 u E loop free and Z2 u Y2 u J cutset free."""
    r = n.roles()
    return _loop_cut(n.graph, r.Z1 | r.Y1 | r.E, r.Z2 | r.Y2 | r.J)


def hybrid_tree(n: Multiport) -> frozenset:
    """Tree containing Z1 u Y1 u E, avoiding Z2 u Y2 u J, keeping ports out when possible."""
    r = n.roles()
    prefer = sorted(n.internal)
    return n.graph.constrained_forest(r.Z1 | r.Y1 | r.E, r.Z2 | r.Y2 | r.J, prefer)


# --- matroidal test ---------------------------------------------------------------


def topo_matroid(n: Multiport) -> Matroid:
    g = n.graph
    return DirectSum(Graphic(g, {e: _v(e) for e in g.edge_labels}),
                     Cographic(g, {e: _i(e) for e in g.edge_labels}))


def device_matroid(n: Multiport) -> Matroid:
    """Free on E'' Z1'' Z2' J', zero on E' Y1' Y2'' J'', one-of-two on each parameter pair.

    Parameter values are never inspected: this is the matroid of the device
    space for generic (algebraically independent) parameters.
    """
    r = n.roles()
    free = [_i(e) for e in r.E | r.Z1] + [_v(e) for e in r.Z2 | r.J]
    zero = [_v(e) for e in r.E | r.Y1] + [_i(e) for e in r.Y2 | r.J]
    pairs = []
    for d in n.devices:
        if isinstance(d, Resistor):
            pairs.append(((_v(d.edge), _i(d.edge)), 1))
        elif isinstance(d, CCVS):
            pairs.append(((_i(d.control), _v(d.out)), 1))
        elif isinstance(d, VCCS):
            pairs.append(((_v(d.control), _i(d.out)), 1))
        elif isinstance(d, CCCS):
            pairs.append(((_i(d.control), _i(d.out)), 1))
        elif isinstance(d, VCVS):
            pairs.append(((_v(d.control), _v(d.out)), 1))
    return DirectSum(Free(free), Zero(zero), Partition(pairs))


@dataclass(frozen=True)
class MatroidalVerdict:
    rigid: bool
    hypotheses_hold: bool
    witness: tuple[frozenset, frozenset] | None
    reason: str = ""
    topo_witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.rigid

    ports: frozenset = frozenset()

    def port_base(self) -> frozenset | None:
        """The part of b1 on port columns."""
        return None if self.witness is None else self.witness[0] & _port_cols(self.ports)


def _port_cols(ports: Iterable[Label]) -> frozenset:
    return frozenset([_v(p) for p in ports] + [_i(p) for p in ports])


def matroidal_rigidity(n: Multiport) -> MatroidalVerdict:
    """Rigidity for generic parameters via disjoint bases of the two matroids.

    The reduction needs the topology space to be full on the zero device
    columns (the necessity conditions) and zero on the free device columns
    (E u Z1 loop free, Z2 u J cutset free); failures are reported as not rigid.
    """
    nec = necessity_check(n)
    r = n.roles()
    free_ok = _loop_cut(n.graph, r.E | r.Z1, r.Z2 | r.J)
    if not nec or not free_ok:
        w = {**free_ok.witness(), **nec.witness()}
        return MatroidalVerdict(False, False, None, "topological hypotheses fail", w, n.ports)
    res = matroid_pair_rigid(topo_matroid(n), device_matroid(n))
    x = _port_cols(n.internal)
    if res.rigid:
        b1, b2 = res.witness
        assert not (b1 & b2) and x <= (b1 | b2)
    return MatroidalVerdict(res.rigid, True, res.witness, res.reason, {}, n.ports)


# --- exact solve --------------------------------------------------------------------


@dataclass(frozen=True)
class Unique:
    values: dict

    kind = "unique"


@dataclass(frozen=True)
class Underdetermined:
    point: dict
    kernel: tuple

    kind = "underdetermined"


@dataclass(frozen=True)
class InconsistentSystem:
    certificate: dict

    kind = "inconsistent"


def _parse_port_key(k: LabelLike, ports: frozenset) -> Label:
    k = lab(k)
    if k.plain() not in ports or k.decoration == 0 or k.decoration == 3:
        raise MultiportError(f"{k} is not a port voltage (p') or port current (p\")")
    return k


def solve(n: Multiport, port_assignment: Mapping | None = None) -> Unique | Underdetermined | InconsistentSystem:
    """Exact network solve with fundamental circuit (KVL) and cutset (KCL) rows.

    ``port_assignment`` fixes one of p' (voltage) or p'' (current) for every port.
    """
    assign = {_parse_port_key(k, n.ports): frac(v) for k, v in (port_assignment or {}).items()}
    for p in n.ports:
        k = (_v(p) in assign) + (_i(p) in assign)
        if k != 1:
            raise MultiportError(f"port {p} needs exactly one of its voltage or current fixed")
    g = n.graph
    es = g.edge_labels
    cols = [_v(e) for e in es] + [_i(e) for e in es]
    idx = {c: i for i, c in enumerate(cols)}
    rows, rhs, names = [], [], []

    def add(coeffs, b, name):
        r = [Fraction(0)] * len(cols)
        for c, x in coeffs.items():
            r[idx[c]] = Fraction(x)
        rows.append(r)
        rhs.append(Fraction(b))
        names.append(name)

    tree = g.spanning_forest()
    for e in es:
        if e in tree:
            add({_i(f): s for f, s in g.fundamental_cutset(tree, e).items()}, 0, f"kcl:{e}")
        else:
            add({_v(f): s for f, s in g.fundamental_circuit(tree, e).items()}, 0, f"kvl:{e}")
    drows, drhs, dnames = device_equations(n)
    for r, b, nm in zip(drows, drhs, dnames):
        add(r, b, nm)
    for c in sorted(assign):
        add({c: 1}, assign[c], f"port:{c}")
    res = linsolve(rows, rhs, len(cols))
    if isinstance(res, Inconsistent):
        cert = {nm: y for nm, y in zip(names, res.certificate) if y}
        return InconsistentSystem(cert)
    point = dict(zip(cols, res.point))
    if res.kernel:
        return Underdetermined(point, tuple(dict(zip(cols, k)) for k in res.kernel))
    return Unique(point)


# --- hybrid representation -----------------------------------------------------------


@dataclass(frozen=True)
class HybridRep:
    """i_P1'' = g11 v_P1' + h12 i_P2'' + s1 and v_P2' = h21 v_P1' + r22 i_P2'' + s2."""

    p1: tuple[Label, ...]
    p2: tuple[Label, ...]
    g11: tuple[tuple[Fraction, ...], ...]
    h12: tuple[tuple[Fraction, ...], ...]
    h21: tuple[tuple[Fraction, ...], ...]
    r22: tuple[tuple[Fraction, ...], ...]
    s1: tuple[Fraction, ...]
    s2: tuple[Fraction, ...]
    tree: frozenset = frozenset()

    def column_base(self) -> frozenset:
        return frozenset([_v(p) for p in self.p1] + [_i(p) for p in self.p2])

    def to_affine(self) -> AffineSpace:
        ports = sorted(self.p1 + self.p2)
        cols = [_v(p) for p in ports] + [_i(p) for p in ports]
        rows, rhs = [], []
        for a, p in enumerate(self.p1):
            r = {_i(p): Fraction(1)}
            for b, q in enumerate(self.p1):
                r[_v(q)] = r.get(_v(q), 0) - self.g11[a][b]
            for b, q in enumerate(self.p2):
                r[_i(q)] = r.get(_i(q), 0) - self.h12[a][b]
            rows.append(r)
            rhs.append(self.s1[a])
        for a, p in enumerate(self.p2):
            r = {_v(p): Fraction(1)}
            for b, q in enumerate(self.p1):
                r[_v(q)] = r.get(_v(q), 0) - self.h21[a][b]
            for b, q in enumerate(self.p2):
                r[_i(q)] = r.get(_i(q), 0) - self.r22[a][b]
            rows.append(r)
            rhs.append(self.s2[a])
        out = AffineSpace.from_equations(cols, [[r.get(c, 0) for c in cols] for r in rows], rhs)
        assert out is not VOID
        return out


def _unique(res) -> dict:
    if not isinstance(res, Unique):
        raise MultiportError(f"network solve is {res.kind}; hybrid construction needs a unique solution")
    return res.values


def hybrid_rep(n: Multiport, tree: frozenset | None = None) -> HybridRep:
    """Hybrid representation by unit excitations (sources off) and one source-only solve."""
    if tree is None:
        tree = hybrid_tree(n)
    p1 = tuple(sorted(n.ports & tree))
    p2 = tuple(sorted(n.ports - tree))
    hom = n.homogeneous()

    def excite(on: Label | None, net: Multiport) -> dict:
        a = {_v(p): int(p == on) for p in p1}
        a.update({_i(p): int(p == on) for p in p2})
        return _unique(solve(net, a))

    g11 = [[Fraction(0)] * len(p1) for _ in p1]
    h21 = [[Fraction(0)] * len(p1) for _ in p2]
    h12 = [[Fraction(0)] * len(p2) for _ in p1]
    r22 = [[Fraction(0)] * len(p2) for _ in p2]
    for b, q in enumerate(p1):
        x = excite(q, hom)
        for a, p in enumerate(p1):
            g11[a][b] = x[_i(p)]
        for a, p in enumerate(p2):
            h21[a][b] = x[_v(p)]
    for b, q in enumerate(p2):
        x = excite(q, hom)
        for a, p in enumerate(p1):
            h12[a][b] = x[_i(p)]
        for a, p in enumerate(p2):
            r22[a][b] = x[_v(p)]
    x = excite(None, n)
    s1 = tuple(x[_i(p)] for p in p1)
    s2 = tuple(x[_v(p)] for p in p2)
    t = lambda m: tuple(tuple(r) for r in m)
    rep = HybridRep(p1, p2, t(g11), t(h12), t(h21), t(r22), s1, s2, frozenset(tree))
    if rep.to_affine() != port_behaviour(n):
        raise AssertionError("hybrid reconstruction differs from the port behaviour")
    return rep


# --- connections and Dirac devices ------------------------------------------------------


def connect(n1: Multiport | GeneralizedMultiport, n2: Multiport | GeneralizedMultiport, coupling) -> Connection:
    g1 = generalized(n1) if isinstance(n1, Multiport) else n1
    g2 = generalized(n2) if isinstance(n2, Multiport) else n2
    return connect_generalized(g1, g2, coupling)


class NotDirac(ValueError):
    def __init__(self, vector: dict):
        super().__init__(f"space is not Dirac; offending vector {({str(k): str(v) for k, v in vector.items()})}")
        self.vector = vector


def swap_copies(v: VectorSpace) -> VectorSpace:
    """Exchange each primed column with its double primed partner."""
    mp = {}
    for c in v.columns:
        if c.decoration == 1:
            mp[c] = c.plain().dprime()
        elif c.decoration == 2:
            mp[c] = c.plain().prime()
        else:
            raise ValueError(f"column {c} is neither primed nor double primed")
    if set(mp.values()) != v.colset:
        raise ValueError("primed and double primed columns do not pair up")
    return v.relabel(mp)


def dirac_violation(v: VectorSpace) -> dict | None:
    sw, pp = swap_copies(v), v.perp()
    for a, b in ((sw, pp), (pp, sw)):
        for vec in a.vectors():
            if not b.contains(vec):
                return vec
    return None


def dirac_check(v: VectorSpace) -> bool:
    return dirac_violation(v) is None


@dataclass(frozen=True)
class DiracSufficiency:
    necessity: bool
    condition_a: bool
    condition_b: bool

    @property
    def sufficient(self) -> bool:
        return self.condition_a or self.condition_b


def dirac_sufficiency_check(v1: VectorSpace, devices: Multiport | Roles) -> DiracSufficiency:
    """Column conditions on a Dirac topology-plus-coupling space for rigidity with the devices."""
    bad = dirac_violation(v1)
    if bad is not None:
        raise NotDirac(bad)
    r = devices.roles() if isinstance(devices, Multiport) else devices
    prim = [c for c in v1.columns if c.decoration == 1]
    dprim = [c for c in v1.columns if c.decoration == 2]
    vol = {_v(e) for e in r.Z1 | r.Y1 | r.E}
    cur = {_i(e) for e in r.Z2 | r.Y2 | r.J}
    nec = v1.is_independent({_v(e) for e in r.Y1 | r.E}) and v1.is_independent({_i(e) for e in r.Y2 | r.J})
    a = v1.restrict(prim).is_independent(vol) and v1.contract(dprim).is_independent(cur)
    b = v1.restrict(dprim).is_independent(cur) and v1.contract(prim).is_independent(vol)
    return DiracSufficiency(nec, a, b)




def gyrator(e1: LabelLike, e2: LabelLike, k) -> VectorSpace:
    """v1 = -k i2, v2 = k i1."""
    e1, e2, k = lab(e1), lab(e2), frac(k)
    cols = [_v(e1), _v(e2), _i(e1), _i(e2)]
    return VectorSpace.from_rows(cols, [[0, k, 1, 0], [-k, 0, 0, 1]])


def ideal_transformer(e1: LabelLike, e2: LabelLike, ratio) -> VectorSpace:
    """v1 = n v2, i2 = -n i1."""
    e1, e2, n = lab(e1), lab(e2), frac(ratio)
    cols = [_v(e1), _v(e2), _i(e1), _i(e2)]
    return VectorSpace.from_rows(cols, [[n, 1, 0, 0], [0, 0, 1, -n]])


def dirac_closed_space(g: Graph, dirac: VectorSpace) -> VectorSpace:
    """Topology space of g composed with a Dirac device space on some of its edges."""
    return matched(topo_space(g), dirac)


# --- combined verdict --------------------------------------------------------------------


@dataclass(frozen=True)
class Analysis:
    verdict: str
    necessity: TopoCheck
    sufficiency: TopoCheck
    exact: RigidVerdict
    generic: MatroidalVerdict


def analyse(n: Multiport, surrogate_parameters: bool = False) -> Analysis:
    """Exact verdict on the given values, generic verdict from the matroids.

    ``surrogate_parameters`` says that some parameter values were invented
    (distinct primes) rather than supplied; then a generic-rigid multiport
    whose exact test fails is reported as ``generic_rigid_exact_unknown``.
    """
    nec, suf = necessity_check(n), sufficiency_check(n)
    exact = exact_rigidity(n)
    gen = matroidal_rigidity(n)
    if not nec:
        assert not exact.rigid and not gen.rigid
    if exact.rigid:
        verdict = "rigid"
    elif gen.rigid and surrogate_parameters:
        verdict = "generic_rigid_exact_unknown"
    else:
        verdict = "not_rigid"
    return Analysis(verdict, nec, suf, exact, gen)
