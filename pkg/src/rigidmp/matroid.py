"""Matroids given by rank oracles, with union, intersection and linking.

The union of two matroids on different ground sets pads each one with the
zero matroid on the other's extra elements; intersection pads with the free
matroid and is computed as the dual of the union of duals.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .colspace import Label, LabelLike, VectorSpace, labels
from .graph import Graph


def _fs(xs: Iterable[LabelLike]) -> frozenset:
    return frozenset(labels(xs))


class Matroid:
    """Abstract rank oracle. Subclasses implement ``_rank`` on subsets of the ground set."""

    def __init__(self, ground: Iterable[LabelLike]):
        self.ground = _fs(ground)
        self._cache: dict[frozenset, int] = {}
        self._lock = threading.Lock()

    def _rank(self, x: frozenset) -> int:
        raise NotImplementedError

    def rank(self, x: Iterable[LabelLike] | None = None) -> int:
        x = self.ground if x is None else _fs(x)
        if not x <= self.ground:
            raise ValueError(f"{sorted(map(str, x - self.ground))} not in ground set")
        with self._lock:
            hit = self._cache.get(x)
        if hit is None:
            hit = self._rank(x)
            with self._lock:
                self._cache[x] = hit
        return hit

    def is_independent(self, x: Iterable[LabelLike]) -> bool:
        x = _fs(x)
        return self.rank(x) == len(x)

    def a_base(self, order: Sequence[Label] | None = None, start: Iterable[Label] = ()) -> frozenset:
        """Greedy base extending the independent set ``start``."""
        b = set(start)
        for e in (sorted(self.ground) if order is None else order):
            if e not in b and self.is_independent(b | {e}):
                b.add(e)
        return frozenset(b)

    def dual(self) -> "Matroid":
        return Dual(self)

    def restrict(self, x: Iterable[LabelLike]) -> "Matroid":
        x = _fs(x)
        return Minor(self, x, x)

    def contract(self, x: Iterable[LabelLike]) -> "Matroid":
        return Minor(self, self.ground, _fs(x))


class Free(Matroid):
    def _rank(self, x):
        return len(x)


class Zero(Matroid):
    def _rank(self, x):
        return 0


class Graphic(Matroid):
    """Forests of a graph; optionally with ground labels renamed through ``rename``."""

    def __init__(self, g: Graph, rename: dict | None = None):
        self.graph = g
        self.rename = {e: e for e in g.edge_labels} if rename is None else dict(rename)
        self.back = {v: k for k, v in self.rename.items()}
        super().__init__(self.rename.values())

    def _rank(self, x):
        return self.graph.forest_rank(self.back[e] for e in x)


def Cographic(g: Graph, rename: dict | None = None) -> Matroid:
    return Dual(Graphic(g, rename))


class Linear(Matroid):
    """Column matroid of a vector space."""

    def __init__(self, v: VectorSpace):
        self.space = v
        super().__init__(v.columns)

    def _rank(self, x):
        return self.space.column_rank(x)


class Partition(Matroid):
    """Blocks with rank caps; elements of the ground set outside every block are free."""

    def __init__(self, blocks: Iterable[tuple[Iterable[LabelLike], int]], ground: Iterable[LabelLike] = ()):
        self.blocks = [(_fs(b), cap) for b, cap in blocks]
        seen: set = set()
        for b, _ in self.blocks:
            if b & seen:
                raise ValueError("partition blocks overlap")
            seen |= b
        super().__init__(seen | _fs(ground))
        self._loose = self.ground - seen

    def _rank(self, x):
        return len(x & self._loose) + sum(min(len(x & b), cap) for b, cap in self.blocks)


class Dual(Matroid):
    def __init__(self, m: Matroid):
        self.inner = m
        super().__init__(m.ground)

    def _rank(self, x):
        m = self.inner
        return len(x) - m.rank() + m.rank(m.ground - x)

    def dual(self) -> Matroid:
        return self.inner


class Minor(Matroid):
    """M restricted to ``keep`` then contracted to ``to``."""

    def __init__(self, m: Matroid, keep: frozenset, to: frozenset):
        if not to <= keep <= m.ground:
            raise ValueError("minor sets must be nested inside the ground set")
        self.inner = m
        self.gone = keep - to
        self._base_rank = m.rank(self.gone)
        super().__init__(to)

    def _rank(self, x):
        return self.inner.rank(x | self.gone) - self._base_rank


class DirectSum(Matroid):
    def __init__(self, *parts: Matroid):
        g: set = set()
        for p in parts:
            if p.ground & g:
                raise ValueError("direct sum needs disjoint ground sets")
            g |= p.ground
        self.parts = parts
        super().__init__(g)

    def _rank(self, x):
        return sum(p.rank(x & p.ground) for p in self.parts)


# --- matroid union by augmenting paths -------------------------------------


@dataclass(frozen=True)
class Partitioned:
    """Disjoint independent sets of the two operands, found by the union algorithm."""

    first: frozenset
    second: frozenset

    @property
    def union(self) -> frozenset:
        return self.first | self.second


def partition(m1: Matroid, m2: Matroid, order: Sequence[Label]) -> Partitioned:
    """Greedy matroid partition over ``order``.

    Each element is inserted if an augmenting path exists in the exchange
    digraph (breadth first, neighbours in Label order), so the result is the
    greedy base of the union matroid for that order.
    O(r * n * n) oracle calls.
    """
    ms = (m1, m2)
    parts = [set(), set()]
    for s in order:
        if s in parts[0] or s in parts[1]:
            continue
        _augment(ms, parts, s)
    return Partitioned(frozenset(parts[0]), frozenset(parts[1]))


def _augment(ms, parts, s) -> bool:
    owner = {}
    for k in (0, 1):
        for x in parts[k]:
            owner[x] = k
    prev = {s: None}
    q = deque([s])
    while q:
        y = q.popleft()
        for k in (0, 1):
            if owner.get(y) == k or y not in ms[k].ground:
                continue
            if ms[k].is_independent(parts[k] | {y}):
                # apply exchanges along the path back to s
                parts[k].add(y)
                cur = y
                while prev[cur] is not None:
                    p, kk = prev[cur]
                    parts[kk].discard(cur)
                    parts[kk].add(p)
                    cur = p
                return True
        for k in (0, 1):
            if owner.get(y) == k or y not in ms[k].ground:
                continue
            for x in sorted(parts[k]):
                if x in prev:
                    continue
                if ms[k].is_independent((parts[k] - {x}) | {y}):
                    prev[x] = (y, k)
                    q.append(x)
    return False


class Union(Matroid):
    """M1 v M2 on the union of the ground sets."""

    def __init__(self, m1: Matroid, m2: Matroid):
        self.m1, self.m2 = m1, m2
        super().__init__(m1.ground | m2.ground)

    def _rank(self, x):
        r1 = Minor(self.m1, x & self.m1.ground, x & self.m1.ground)
        r2 = Minor(self.m2, x & self.m2.ground, x & self.m2.ground)
        return len(partition(r1, r2, sorted(x)).union)


def meet(m1: Matroid, m2: Matroid) -> Matroid:
    """M1 ^ M2 = (M1* v M2*)*, free-padded."""
    return Dual(Union(Dual(m1), Dual(m2)))


def linking(m_sp: Matroid, m_pq: Matroid) -> Matroid:
    """(M_SP v M_PQ) x (S u Q)."""
    u = Union(m_sp, m_pq)
    return u.contract(m_sp.ground ^ m_pq.ground)


def union_max_distant(m1: Matroid, m2: Matroid) -> tuple[frozenset, frozenset]:
    """Bases b1, b2 with |b1 u b2| = r(M1 v M2)."""
    return _extend(m1, m2, partition(m1, m2, sorted(m1.ground | m2.ground)))


def _extend(m1: Matroid, m2: Matroid, p: Partitioned) -> tuple[frozenset, frozenset]:
    return m1.a_base(start=p.first), m2.a_base(start=p.second)


def union_base_through(m1: Matroid, m2: Matroid, priority: Iterable[LabelLike]) -> Partitioned:
    """Base of M1 v M2 whose intersection with ``priority`` is a base of (M1 v M2) o priority."""
    pr = _fs(priority)
    g = m1.ground | m2.ground
    order = sorted(pr & g) + sorted(g - pr)
    return partition(m1, m2, order)


def linking_base(m_sp: Matroid, m_pq: Matroid) -> frozenset:
    """A base of M_SP <-> M_PQ: union base through P with P removed."""
    p = m_sp.ground & m_pq.ground
    b = union_base_through(m_sp, m_pq, p).union
    # contraction of P keeps the elements outside a base of the P part
    return b - p


def dual_rank_identity_check(m: Matroid) -> bool:
    return m.rank() + m.dual().rank() == len(m.ground)


# --- rigidity of matroid pairs ---------------------------------------------


@dataclass(frozen=True)
class MatroidRigidity:
    rigid: bool
    primal_additive: bool
    dual_additive: bool
    witness: tuple[frozenset, frozenset] | None
    reason: str = ""


def matroid_pair_rigid(m_ab: Matroid, m_bc: Matroid) -> MatroidRigidity:
    """Rigid iff disjoint bases b1, b2 exist with b1 u b2 covering the shared set B."""
    b = m_ab.ground & m_bc.ground
    primal = Union(m_ab, m_bc).rank() == m_ab.rank() + m_bc.rank()
    dual = Union(m_ab.dual(), m_bc.dual()).rank() == m_ab.dual().rank() + m_bc.dual().rank()
    p = union_base_through(m_ab, m_bc, b)
    ok = len(p.first) == m_ab.rank() and len(p.second) == m_bc.rank() and b <= p.union
    if ok != (primal and dual):
        raise AssertionError("disjoint-base test and rank-additivity test disagree")
    if ok:
        return MatroidRigidity(True, True, True, (p.first, p.second))
    reason = []
    if not primal:
        reason.append("r(M1 v M2) < r(M1) + r(M2)")
    if not dual:
        reason.append("r(M1* v M2*) < r(M1*) + r(M2*)")
    return MatroidRigidity(False, primal, dual, None, "; ".join(reason))


def assoc_check(grounds: Sequence[frozenset]) -> None:
    count: dict = {}
    for g in grounds:
        for e in g:
            count[e] = count.get(e, 0) + 1
    bad = sorted(e for e, c in count.items() if c > 2)
    if bad:
        raise ValueError(f"not associative: {[str(e) for e in bad]} lie in more than two members")


def family_union(ms: Sequence[Matroid]) -> Matroid:
    out: Matroid = Zero(())
    for m in ms:
        out = Union(out, m)
    return out


def family_linking(ms: Sequence[Matroid]) -> Matroid:
    """(v_i M_i) x Z with Z the elements lying in exactly one member."""
    assoc_check([m.ground for m in ms])
    count: dict = {}
    for m in ms:
        for e in m.ground:
            count[e] = count.get(e, 0) + 1
    z = frozenset(e for e, c in count.items() if c == 1)
    return family_union(ms).contract(z)


def matroid_family_rigid(ms: Sequence[Matroid]) -> bool:
    assoc_check([m.ground for m in ms])
    primal = family_union(ms).rank() == sum(m.rank() for m in ms)
    duals = [m.dual() for m in ms]
    dual = family_union(duals).rank() == sum(m.rank() for m in duals)
    return primal and dual
