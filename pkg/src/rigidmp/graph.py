"""Directed multigraphs with labelled edges and their Kirchhoff spaces.

Sign convention: the voltage of edge e = (tail, head) is
potential(tail) - potential(head). A loop vector carries +1 on an edge
traversed from tail to head and -1 otherwise; a cutset vector carries +1 on
an edge leaving the chosen side.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .colspace import Label, LabelLike, VectorSpace, lab, labels


class GraphError(ValueError):
    pass


class LoopInInclude(GraphError):
    def __init__(self, loop: list[Label]):
        super().__init__(f"edges to include contain the loop {[str(e) for e in loop]}")
        self.loop = loop


class CutsetInAvoid(GraphError):
    def __init__(self, cut: list[Label]):
        super().__init__(f"edges to avoid contain the cutset {[str(e) for e in cut]}")
        self.cut = cut


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: tuple[tuple[Label, Hashable, Hashable], ...]

    @classmethod
    def build(cls, edges: Iterable[tuple[LabelLike, Hashable, Hashable]], vertices: Iterable = ()) -> "Graph":
        es = tuple(sorted(((lab(e), t, h) for e, t, h in edges), key=lambda x: x[0]))
        names = [e for e, _, _ in es]
        if len(set(names)) != len(names):
            raise GraphError("edge labels must be unique")
        vs = set(vertices)
        for _, t, h in es:
            vs.update((t, h))
        return cls(frozenset(vs), es)

    @property
    def edge_labels(self) -> list[Label]:
        return [e for e, _, _ in self.edges]

    @property
    def edgeset(self) -> frozenset:
        return frozenset(self.edge_labels)

    def ends(self, e: LabelLike) -> tuple[Hashable, Hashable]:
        e = lab(e)
        for f, t, h in self.edges:
            if f == e:
                return t, h
        raise GraphError(f"unknown edge {e}")

    def _sub(self, keep: Iterable[LabelLike]) -> list[tuple[Label, Hashable, Hashable]]:
        keep = set(labels(keep))
        unknown = keep - self.edgeset
        if unknown:
            raise GraphError(f"unknown edges {sorted(map(str, unknown))}")
        return [x for x in self.edges if x[0] in keep]

    # forests

    def forest_rank(self, es: Iterable[LabelLike] | None = None) -> int:
        sub = self.edges if es is None else self._sub(es)
        d = _DSU()
        return sum(1 for _, t, h in sub if d.union(t, h))

    def is_loop_free(self, es: Iterable[LabelLike]) -> bool:
        es = set(labels(es))
        return self.forest_rank(es) == len(es)

    def is_cutset_free(self, es: Iterable[LabelLike]) -> bool:
        es = set(labels(es))
        return self.forest_rank(self.edgeset - es) == self.forest_rank()

    def _tree_path(self, forest: Iterable[Label], a, b) -> list[tuple[Label, int]]:
        """Edges of the forest path from a to b with +1 if traversed tail to head."""
        adj = defaultdict(list)
        for e, t, h in self._sub(forest):
            adj[t].append((h, e, 1))
            adj[h].append((t, e, -1))
        prev = {a: None}
        q = deque([a])
        while q:
            x = q.popleft()
            if x == b:
                break
            for y, e, s in adj[x]:
                if y not in prev:
                    prev[y] = (x, e, s)
                    q.append(y)
        if b not in prev:
            raise GraphError("no path in forest")
        path = []
        x = b
        while prev[x] is not None:
            px, e, s = prev[x]
            path.append((e, s))
            x = px
        return path[::-1]

    def fundamental_circuit(self, forest: Iterable[Label], e: LabelLike) -> dict[Label, int]:
        """Signed loop made of e and the forest path closing it; +1 on e."""
        e = lab(e)
        t, h = self.ends(e)
        loop = {e: 1}
        if t == h:
            return loop
        for f, s in self._tree_path(forest, h, t):
            loop[f] = s
        return loop

    def fundamental_cutset(self, forest: Iterable[Label], e: LabelLike) -> dict[Label, int]:
        """Signed cutset of forest edge e; +1 on e."""
        e = lab(e)
        forest = set(forest)
        d = _DSU()
        for f, t, h in self.edges:
            if f in forest and f != e:
                d.union(t, h)
        t, _ = self.ends(e)
        side = d.find(t)
        cut = {}
        for f, a, b in self.edges:
            ina, inb = d.find(a) == side, d.find(b) == side
            if ina != inb:
                cut[f] = 1 if ina else -1
        return cut

    def constrained_forest(self, must_include: Iterable[LabelLike] = (), must_avoid: Iterable[LabelLike] = (),
                           prefer: Sequence[LabelLike] = ()) -> frozenset:
        """Maximal forest containing ``must_include`` and missing ``must_avoid``.

        Growth order: ``must_include``, then ``prefer``, then Label order.
        """
        inc = sorted(set(labels(must_include)))
        avd = set(labels(must_avoid))
        self._sub(inc)
        self._sub(avd)
        if avd & set(inc):
            raise GraphError("must_include and must_avoid overlap")
        d = _DSU()
        forest: list[Label] = []
        for e in inc:
            t, h = self.ends(e)
            if not d.union(t, h):
                raise LoopInInclude(sorted(self.fundamental_circuit(forest, e)))
            forest.append(e)
        order = [lab(x) for x in prefer] + self.edge_labels
        seen = set(inc)
        for e in order:
            if e in seen or e in avd:
                continue
            seen.add(e)
            t, h = self.ends(e)
            if d.union(t, h):
                forest.append(e)
        if len(forest) < self.forest_rank():
            # extend through avoided edges; any avoided tree edge has a cutset inside avoid
            for e in sorted(avd):
                t, h = self.ends(e)
                if d.union(t, h):
                    full = forest + [e]
                    raise CutsetInAvoid(sorted(self.fundamental_cutset(full, e)))
        return frozenset(forest)

    def spanning_forest(self) -> frozenset:
        return self.constrained_forest()

    # Kirchhoff spaces

    def kvl_space(self) -> VectorSpace:
        """Voltages satisfying KVL: row space of the vertex incidence rows."""
        cols = self.edge_labels
        rows = []
        for v in sorted(self.vertices, key=repr):
            r = []
            for _, t, h in self.edges:
                r.append(int(t == v) - int(h == v))
            rows.append(r)
        return VectorSpace.from_rows(cols, rows)

    def kcl_space(self) -> VectorSpace:
        """Currents satisfying KCL, spanned by fundamental circuits of a spanning forest."""
        forest = self.spanning_forest()
        rows = []
        for e in self.edge_labels:
            if e in forest:
                continue
            c = self.fundamental_circuit(forest, e)
            rows.append([c.get(f, 0) for f in self.edge_labels])
        return VectorSpace.from_rows(self.edge_labels, rows)

    def cutset_space(self) -> VectorSpace:
        """KVL space again, this time spanned by fundamental cutsets."""
        forest = self.spanning_forest()
        rows = []
        for e in sorted(forest):
            c = self.fundamental_cutset(forest, e)
            rows.append([c.get(f, 0) for f in self.edge_labels])
        return VectorSpace.from_rows(self.edge_labels, rows)

    # minors

    def minor(self, delete: Iterable[LabelLike] = (), contract: Iterable[LabelLike] = ()) -> "Graph":
        """Open circuit ``delete``, short circuit ``contract``, drop isolated vertices."""
        dl, ct = set(labels(delete)), set(labels(contract))
        self._sub(dl | ct)
        if dl & ct:
            raise GraphError("delete and contract overlap")
        d = _DSU()
        for v in self.vertices:
            d.find(v)
        for e, t, h in self.edges:
            if e in ct:
                d.union(t, h)
        kept = [(e, d.find(t), d.find(h)) for e, t, h in self.edges if e not in dl and e not in ct]
        return Graph.build(kept)

    def restrict(self, keep: Iterable[LabelLike]) -> "Graph":
        keep = set(labels(keep))
        return self.minor(delete=self.edgeset - keep)

    def contract_to(self, keep: Iterable[LabelLike]) -> "Graph":
        keep = set(labels(keep))
        return self.minor(contract=self.edgeset - keep)

    def relabel_vertices(self) -> "Graph":
        """Vertices renamed 0..n-1 by first appearance in edge order."""
        names: dict = {}
        for _, t, h in self.edges:
            for x in (t, h):
                names.setdefault(x, len(names))
        for v in sorted(self.vertices - set(names), key=repr):
            names[v] = len(names)
        return Graph.build([(e, names[t], names[h]) for e, t, h in self.edges], names.values())


def kvl_space(g: Graph) -> VectorSpace:
    return g.kvl_space()


def kcl_space(g: Graph) -> VectorSpace:
    return g.kcl_space()

