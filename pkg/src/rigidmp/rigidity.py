"""Rigidity of pairs and associative families of spaces.

A pair of spaces sharing the columns B is rigid when their restrictions to B
add up to the full space on B and their contractions to B meet only in zero.
Affine inputs are reduced to their vector space translates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .colspace import (AffineSpace, Label, Space, VectorSpace, affine_direct_sum, affine_matched, direct_sum,
                       intersect, matched, vsum)
from .matroid import Linear, Union, matroid_pair_rigid


def translate(x: Space) -> VectorSpace:
    return x.translate if isinstance(x, AffineSpace) else x


def shared(v: Space, w: Space) -> list[Label]:
    return sorted(translate(v).colset & translate(w).colset)


def full_sum(v: Space, w: Space) -> bool:
    v, w = translate(v), translate(w)
    b = shared(v, w)
    return vsum(v.restrict(b), w.restrict(b)).rank == len(b)


def zero_intersection(v: Space, w: Space) -> bool:
    v, w = translate(v), translate(w)
    b = shared(v, w)
    return intersect(v.contract(b), w.contract(b)).rank == 0


@dataclass(frozen=True)
class RigidVerdict:
    rigid: bool
    full_sum_holds: bool
    zero_intersection_holds: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.rigid


def pair_rigid(a1: Space, a2: Space) -> RigidVerdict:
    """Rigidity of a pair, checked through minors and again through rank additivity."""
    v, w = translate(a1), translate(a2)
    b = shared(v, w)
    fs_space = vsum(v.restrict(b), w.restrict(b))
    zi_space = intersect(v.contract(b), w.contract(b))
    fs = fs_space.rank == len(b)
    zi = zi_space.rank == 0
    primal = vsum(v, w).rank == v.rank + w.rank
    dual = vsum(v.perp(), w.perp()).rank == len(v.columns) + len(w.columns) - v.rank - w.rank
    if (primal, dual) != (zi, fs):
        raise AssertionError("minor test and rank-additivity test disagree")
    witness = None
    if not zi:
        witness = {"common_contraction_vector": zi_space.vectors()[0]}
    elif not fs:
        # over the rationals a nonzero vector orthogonal to the sum lies outside it
        witness = {"outside_sum_vector": fs_space.perp().vectors()[0]}
    return RigidVerdict(fs and zi, fs, zi, witness)


def rigid_pair_rank(v: Space, w: Space) -> int:
    """r(V <-> W) predicted for a rigid pair: r(V) + r(W) - |B|."""
    return translate(v).rank + translate(w).rank - len(shared(v, w))


@dataclass(frozen=True)
class DerivedSplit:
    pair1: RigidVerdict
    pair2: RigidVerdict
    combined: RigidVerdict


def derived_rigidity_split(v_wtv: VectorSpace, v_t: VectorSpace, v_v: VectorSpace) -> DerivedSplit:
    """{V_WTV, V_T + V_V} against {V_WTV, V_V} and {V_WTV <-> V_V, V_T}."""
    p1 = pair_rigid(v_wtv, v_v)
    p2 = pair_rigid(matched(v_wtv, v_v), v_t)
    comb = pair_rigid(v_wtv, direct_sum(v_t, v_v))
    if comb.rigid != (p1.rigid and p2.rigid):
        raise AssertionError("combined verdict differs from the split verdicts")
    return DerivedSplit(p1, p2, comb)


def dual_pair_generator(v_ab: Space, a_b: Space) -> tuple[VectorSpace, VectorSpace]:
    """The dual generalized multiport (V_AB perp, V_B perp)."""
    return translate(v_ab).perp(), translate(a_b).perp()


# --- generalized multiports -------------------------------------------------


@dataclass(frozen=True)
class GeneralizedMultiport:
    """A topology space on A u B with an affine device set on B; ports are A."""

    topo: VectorSpace
    device: AffineSpace

    @property
    def ports(self) -> frozenset:
        return self.topo.colset - self.device.colset

    def verdict(self) -> RigidVerdict:
        return pair_rigid(self.topo, self.device)

    def behaviour(self):
        return affine_matched(self.topo, self.device)

    def hom(self) -> "GeneralizedMultiport":
        return GeneralizedMultiport(self.topo, AffineSpace.make(self.device.translate))

    def dual(self) -> "GeneralizedMultiport":
        return GeneralizedMultiport(self.topo.perp(), AffineSpace.make(self.device.translate.perp()))

    def relabel(self, mapping: dict) -> "GeneralizedMultiport":
        return GeneralizedMultiport(self.topo.relabel(mapping), self.device.relabel(mapping))


@dataclass(frozen=True)
class Connection:
    composite: GeneralizedMultiport
    direct: RigidVerdict
    first: RigidVerdict
    second: RigidVerdict
    reduced: RigidVerdict

    @property
    def rigid(self) -> bool:
        return self.direct.rigid


def connect_generalized(n1: GeneralizedMultiport, n2: GeneralizedMultiport, coupling: Space) -> Connection:
    """Join two generalized multiports through a coupling on some of their ports."""
    if n1.topo.colset & n2.topo.colset:
        raise ValueError("the two multiports share labels")
    coupling = AffineSpace.of(coupling)
    if not coupling.colset <= (n1.ports | n2.ports):
        raise ValueError("coupling columns must be ports of the two multiports")
    topo = direct_sum(n1.topo, n2.topo)
    dev = affine_direct_sum(affine_direct_sum(n1.device, n2.device), coupling)
    comp = GeneralizedMultiport(topo, dev)
    direct = comp.verdict()
    r1, r2 = n1.verdict(), n2.verdict()
    reduced_topo = direct_sum(matched(n1.topo, n1.device.translate), matched(n2.topo, n2.device.translate))
    red = pair_rigid(reduced_topo, coupling)
    if direct.rigid != (r1.rigid and r2.rigid and red.rigid):
        raise AssertionError("connection verdict differs from the decomposed verdicts")
    return Connection(comp, direct, r1, r2, red)


# --- associative families ---------------------------------------------------


@dataclass(frozen=True)
class AssocFamily:
    members: tuple[Space, ...]

    def __post_init__(self):
        count: dict = {}
        for m in self.members:
            for c in translate(m).colset:
                count[c] = count.get(c, 0) + 1
        bad = sorted(c for c, k in count.items() if k > 2)
        if bad:
            raise ValueError(f"not associative: {[str(c) for c in bad]} lie in more than two members")

    @classmethod
    def of(cls, members: Sequence[Space]) -> "AssocFamily":
        return cls(tuple(members))

    @property
    def spaces(self) -> list[VectorSpace]:
        return [translate(m) for m in self.members]

    def counts(self) -> dict:
        count: dict = {}
        for v in self.spaces:
            for c in v.colset:
                count[c] = count.get(c, 0) + 1
        return count

    @property
    def outer(self) -> list[Label]:
        """Z: labels lying in exactly one member."""
        return sorted(c for c, k in self.counts().items() if k == 1)

    def sub(self, idx: Sequence[int]) -> "AssocFamily":
        return AssocFamily(tuple(self.members[i] for i in idx))

    def linked(self) -> VectorSpace:
        """<->(H) = (intersection of the members) o Z."""
        acc = VectorSpace.full([])
        for v in self.spaces:
            acc = intersect(acc, v)
        return acc.restrict(self.outer)

    def skew_linked(self) -> VectorSpace:
        """The skewed family composition (sum of the members) x Z."""
        acc = VectorSpace.zero([])
        for v in self.spaces:
            acc = vsum(acc, v)
        return acc.contract(self.outer)

    def skewed_pair(self) -> "AssocFamily":
        """Negate, in each member, the labels it shares with a later member."""
        vs = self.spaces
        out = []
        for i, v in enumerate(vs):
            later = set()
            for w in vs[i + 1:]:
                later |= w.colset
            out.append(v.negate(v.colset & later))
        return AssocFamily(tuple(out))

    def perp(self) -> "AssocFamily":
        return AssocFamily(tuple(v.perp() for v in self.spaces))

    def components(self) -> list[list[int]]:
        """Connected components of the family graph (members joined by shared labels)."""
        n = len(self.members)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        vs = self.spaces
        for i, j in itertools.combinations(range(n), 2):
            if vs[i].colset & vs[j].colset:
                parent[find(j)] = find(i)
        groups: dict = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def has_edges(self) -> bool:
        return any(v.columns for v in self.spaces)


@dataclass(frozen=True)
class FamilyVerdict:
    rigid: bool
    primal: bool
    dual: bool

    def __bool__(self) -> bool:
        return self.rigid


def family_rigid(h: AssocFamily | Sequence[Space]) -> FamilyVerdict:
    """Direct test: rank additivity of the sum for the members and for their complements."""
    if not isinstance(h, AssocFamily):
        h = AssocFamily.of(h)
    vs = h.spaces
    acc = VectorSpace.zero([])
    for v in vs:
        acc = vsum(acc, v)
    primal = acc.rank == sum(v.rank for v in vs)
    acc = VectorSpace.zero([])
    for v in vs:
        acc = vsum(acc, v.perp())
    dual = acc.rank == sum(len(v.columns) - v.rank for v in vs)
    return FamilyVerdict(primal and dual, primal, dual)


@dataclass(frozen=True)
class RecursiveVerdict:
    rigid: bool
    hypothesis_ok: bool
    blocks: tuple[FamilyVerdict, ...]
    top: tuple[FamilyVerdict, ...]
    note: str = ""

    def __bool__(self) -> bool:
        return self.rigid


def family_rigid_recursive(h: AssocFamily | Sequence[Space], blocks: Sequence[Sequence[int]],
                           skewed_form: bool = False) -> RecursiveVerdict:
    """Rigidity from the blocks of a partition and the family of their compositions.

    The decomposition needs a connected family graph with at least one edge.
    When that fails the check runs per connected component (a disconnected
    family is rigid iff each component is), and ``hypothesis_ok`` is False.
    """
    if not isinstance(h, AssocFamily):
        h = AssocFamily.of(h)
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(len(h.members))):
        raise ValueError("blocks must partition the member indices")
    comps = h.components()
    ok = len(comps) == 1 and h.has_edges()
    block_vs: list[FamilyVerdict] = []
    top_vs: list[FamilyVerdict] = []
    rigid = True
    for comp in comps:
        cs = set(comp)
        sub_blocks = [[i for i in b if i in cs] for b in blocks]
        sub_blocks = [b for b in sub_blocks if b]
        if not any(translate(h.members[i]).columns for i in comp):
            continue
        parts = [h.sub(b) for b in sub_blocks]
        bv = [family_rigid(p) for p in parts]
        comps_of = [p.skew_linked() if skewed_form else p.linked() for p in parts]
        tv = family_rigid(comps_of)
        block_vs += bv
        top_vs.append(tv)
        rigid = rigid and all(bv) and tv.rigid
    note = "" if ok else "family graph disconnected or edgeless: decomposed per component"
    return RecursiveVerdict(rigid, ok, tuple(block_vs), tuple(top_vs), note)


# --- vector rigidity against matroid rigidity -------------------------------


@dataclass(frozen=True)
class CrossCheck:
    vector_rigid: bool
    matroid_rigid: bool
    hypotheses_hold: bool
    exhaustive: bool

    @property
    def agree(self) -> bool:
        return self.vector_rigid == self.matroid_rigid


def _union_matches(v: VectorSpace, w: VectorSpace, probes) -> bool:
    lin = Linear(vsum(v, w))
    un = Union(Linear(v), Linear(w))
    return all(lin.rank(x) == un.rank(x) for x in probes)


def matroid_vector_cross_check(v_ab: Space, v_bc: Space, samples: int = 300, seed: int = 0) -> CrossCheck:
    """Compare the vector verdict with the verdict on the column matroids.

    The matroid verdict coincides with the vector one when the column matroid
    of each sum (primal and dual) equals the union of the column matroids; that
    hypothesis is probed on every subset for up to 10 columns, else on samples.
    """
    v, w = translate(v_ab), translate(v_bc)
    vec = pair_rigid(v, w).rigid
    mat = matroid_pair_rigid(Linear(v), Linear(w)).rigid
    cols = sorted(v.colset | w.colset)
    exhaustive = len(cols) <= 10
    if exhaustive:
        probes = [frozenset(c) for k in range(len(cols) + 1) for c in itertools.combinations(cols, k)]
    else:
        rng = random.Random(seed)
        probes = [frozenset(x for x in cols if rng.random() < 0.5) for _ in range(samples)]
    hyp = _union_matches(v, w, probes) and _union_matches(v.perp(), w.perp(), probes)
    return CrossCheck(vec, mat, hyp, exhaustive)

