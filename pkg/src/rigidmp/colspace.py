"""Exact rational vector and affine spaces over labelled column sets.

Every space stores its columns in sorted ``Label`` order together with the
reduced row echelon form of a basis, so two spaces are equal as sets of
vectors exactly when their stored fields are equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

PLAIN, PRIME, DPRIME, COPY = 0, 1, 2, 3
_SUFFIX = {PLAIN: "", PRIME: "'", DPRIME: '"'}


@dataclass(frozen=True, order=True)
class Label:
    """A column name with a decoration (plain, primed, double primed or tagged copy)."""

    name: str
    decoration: int = PLAIN
    tag: str = ""

    def __post_init__(self):
        if self.decoration not in (PLAIN, PRIME, DPRIME, COPY):
            raise ValueError(f"bad decoration {self.decoration!r}")
        if (self.decoration == COPY) != bool(self.tag):
            raise ValueError("a copy label needs a tag and only a copy label has one")

    @classmethod
    def parse(cls, text: str) -> "Label":
        text = text.strip()
        if text.endswith('"'):
            return cls(text[:-1], DPRIME)
        if text.endswith("'"):
            return cls(text[:-1], PRIME)
        if "~" in text:
            name, tag = text.split("~", 1)
            return cls(name, COPY, tag)
        return cls(text)

    def plain(self) -> "Label":
        return Label(self.name)

    def prime(self) -> "Label":
        if self.decoration != PLAIN:
            raise ValueError(f"{self} is already decorated")
        return Label(self.name, PRIME)

    def dprime(self) -> "Label":
        if self.decoration != PLAIN:
            raise ValueError(f"{self} is already decorated")
        return Label(self.name, DPRIME)

    def copy(self, tag: str) -> "Label":
        if self.decoration != PLAIN:
            raise ValueError(f"{self} is already decorated")
        return Label(self.name, COPY, tag)

    def __str__(self) -> str:
        if self.decoration == COPY:
            return f"{self.name}~{self.tag}"
        return self.name + _SUFFIX[self.decoration]

    def __repr__(self) -> str:
        return f"L({self})"


LabelLike = Union[Label, str]


def lab(x: LabelLike) -> Label:
    return x if isinstance(x, Label) else Label.parse(x)


def labels(xs: Iterable[LabelLike]) -> list[Label]:
    return [lab(x) for x in xs]


def primed(xs: Iterable[LabelLike]) -> list[Label]:
    return [lab(x).prime() for x in xs]


def dprimed(xs: Iterable[LabelLike]) -> list[Label]:
    return [lab(x).dprime() for x in xs]


def frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use integers, Fractions or 'p/q' strings")
    return Fraction(x)


_RATIONAL = re.compile(r"[+-]?\d+(/[0-9]*[1-9][0-9]*)?")


def parse_rational(tok: str) -> Fraction:
    """Integer or p/q literal; decimals and exponents are rejected."""
    if not _RATIONAL.fullmatch(tok):
        raise ValueError(f"{tok!r} is not an integer or p/q rational")
    return Fraction(tok)


def fmt(x: Fraction) -> str:
    """Rational as a 'p/q' string (denominator always written)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# --- matrix primitives -----------------------------------------------------


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows dropped. Pivots are leftmost."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    for j in range(c, ncols):
                        if pr[j]:
                            mi[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


@dataclass(frozen=True)
class Solution:
    point: tuple[Fraction, ...]
    kernel: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Inconsistent:
    """``certificate`` is a row combination y with yA = 0 and y.b != 0."""

    certificate: tuple[Fraction, ...]


def linsolve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction], ncols: int) -> Solution | Inconsistent:
    """Solve a x = b exactly. Returns a particular point and a kernel basis."""
    nrows = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i])] + [Fraction(int(i == k)) for k in range(nrows)]
           for i in range(nrows)]
    width = ncols + 1 + nrows
    m, piv = rref(aug, width)
    for row, p in zip(m, piv):
        if p == ncols:
            return Inconsistent(tuple(row[ncols + 1:]))
        if p > ncols:
            break
    coeffs = [(row, p) for row, p in zip(m, piv) if p < ncols]
    point = [Fraction(0)] * ncols
    for row, p in coeffs:
        point[p] = row[ncols]
    pivset = {p for _, p in coeffs}
    kernel = []
    for j in range(ncols):
        if j in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, p in coeffs:
            v[p] = -row[j]
        kernel.append(tuple(v))
    return Solution(tuple(point), tuple(kernel))


# --- vector spaces ---------------------------------------------------------


class ColumnError(ValueError):
    pass


def _check_subset(t: Iterable[Label], cols: frozenset, what: str = "columns") -> None:
    extra = [x for x in t if x not in cols]
    if extra:
        raise ColumnError(f"{what} {sorted(map(str, extra))} are not columns of the space")


@dataclass(frozen=True)
class VectorSpace:
    """Row space of an exact rational matrix with labelled columns.

    Build with :meth:`from_rows`; the constructor assumes canonical input.
    """

    columns: tuple[Label, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    # construction

    @classmethod
    def from_rows(cls, cols: Sequence[LabelLike], rows: Iterable[Sequence]) -> "VectorSpace":
        cols = labels(cols)
        if len(set(cols)) != len(cols):
            raise ColumnError("duplicate column labels")
        order = sorted(range(len(cols)), key=lambda i: cols[i])
        perm = []
        for r in rows:
            r = list(r)
            if len(r) != len(cols):
                raise ColumnError(f"row width {len(r)} does not match {len(cols)} labels")
            perm.append([frac(r[i]) for i in order])
        m, _ = rref(perm, len(cols))
        return cls(tuple(cols[i] for i in order), tuple(tuple(r) for r in m))

    @classmethod
    def from_vectors(cls, cols: Iterable[LabelLike], vectors: Iterable[Mapping]) -> "VectorSpace":
        cols = labels(cols)
        rows = []
        for v in vectors:
            v = {lab(k): x for k, x in v.items()}
            _check_subset(v, frozenset(cols))
            rows.append([v.get(c, 0) for c in cols])
        return cls.from_rows(cols, rows)

    @classmethod
    def zero(cls, cols: Iterable[LabelLike]) -> "VectorSpace":
        return cls.from_rows(list(cols), [])

    @classmethod
    def full(cls, cols: Iterable[LabelLike]) -> "VectorSpace":
        cols = list(cols)
        return cls.from_rows(cols, [[int(i == j) for j in range(len(cols))] for i in range(len(cols))])

    # basic queries

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def colset(self) -> frozenset:
        return frozenset(self.columns)

    @property
    def pivots(self) -> tuple[Label, ...]:
        out = []
        for row in self.basis:
            j = next(i for i, x in enumerate(row) if x)
            out.append(self.columns[j])
        return tuple(out)

    def index(self, c: LabelLike) -> int:
        return self.columns.index(lab(c))

    def vectors(self) -> list[dict[Label, Fraction]]:
        return [dict(zip(self.columns, r)) for r in self.basis]

    def _vec(self, v: Mapping | Sequence) -> list[Fraction]:
        if isinstance(v, Mapping):
            v = {lab(k): frac(x) for k, x in v.items()}
            _check_subset(v, self.colset)
            return [v.get(c, Fraction(0)) for c in self.columns]
        if len(v) != len(self.columns):
            raise ColumnError("vector length mismatch")
        return [frac(x) for x in v]

    def reduce(self, v: Mapping | Sequence) -> list[Fraction]:
        """Residue of v after removing basis components (zero on pivots)."""
        x = self._vec(v)
        for row in self.basis:
            j = next(i for i, y in enumerate(row) if y)
            f = x[j]
            if f:
                x = [a - f * b for a, b in zip(x, row)]
        return x

    def contains(self, v: Mapping | Sequence) -> bool:
        return not any(self.reduce(v))

    def issubspace(self, other: "VectorSpace") -> bool:
        if self.colset != other.colset:
            raise ColumnError("subspace test needs identical column sets")
        return all(other.contains(dict(zip(self.columns, r))) for r in self.basis)

    def __le__(self, other: "VectorSpace") -> bool:
        return self.issubspace(other)

    def __str__(self) -> str:
        head = " ".join(map(str, self.columns))
        body = "\n".join(" ".join(fmt(x) for x in r) for r in self.basis)
        return f"labels: {head}\n{body}".rstrip()

    # column operations

    def _project(self, t: Sequence[Label]) -> list[list[Fraction]]:
        idx = [self.columns.index(c) for c in t]
        return [[r[i] for i in idx] for r in self.basis]

    def restrict(self, t: Iterable[LabelLike]) -> "VectorSpace":
        t = sorted(set(labels(t)))
        _check_subset(t, self.colset)
        return VectorSpace.from_rows(t, self._project(t))

    def contract(self, t: Iterable[LabelLike]) -> "VectorSpace":
        t = sorted(set(labels(t)))
        _check_subset(t, self.colset)
        ts = set(t)
        rest = [c for c in self.columns if c not in ts]
        m, piv = rref(self._project(rest + t), len(self.columns))
        rows = [r[len(rest):] for r, p in zip(m, piv) if p >= len(rest)]
        return VectorSpace.from_rows(t, rows)

    def minor(self, restrict_to: Iterable[LabelLike], contract_to: Iterable[LabelLike]) -> "VectorSpace":
        return self.restrict(restrict_to).contract(contract_to)

    def perp(self) -> "VectorSpace":
        n = len(self.columns)
        piv = [next(i for i, x in enumerate(r) if x) for r in self.basis]
        pset = set(piv)
        rows = []
        for j in range(n):
            if j in pset:
                continue
            v = [Fraction(0)] * n
            v[j] = Fraction(1)
            for r, p in zip(self.basis, piv):
                v[p] = -r[j]
            rows.append(v)
        return VectorSpace.from_rows(self.columns, rows)

    def extend_zero(self, cols: Iterable[LabelLike]) -> "VectorSpace":
        """Direct sum with the zero space on new columns."""
        new = [c for c in sorted(set(labels(cols))) if c not in self.colset]
        return VectorSpace.from_rows(list(self.columns) + new, [list(r) + [0] * len(new) for r in self.basis])

    def extend_full(self, cols: Iterable[LabelLike]) -> "VectorSpace":
        """Direct sum with the full space on new columns."""
        new = [c for c in sorted(set(labels(cols))) if c not in self.colset]
        k = len(self.columns)
        rows = [list(r) + [0] * len(new) for r in self.basis]
        rows += [[0] * k + [int(i == j) for j in range(len(new))] for i in range(len(new))]
        return VectorSpace.from_rows(list(self.columns) + new, rows)

    def relabel(self, mapping: Mapping) -> "VectorSpace":
        mp = {lab(k): lab(v) for k, v in mapping.items()}
        new = [mp.get(c, c) for c in self.columns]
        if len(set(new)) != len(new):
            raise ColumnError("relabelling is not injective on the columns")
        return VectorSpace.from_rows(new, self.basis)

    def negate(self, cols: Iterable[LabelLike]) -> "VectorSpace":
        neg = set(labels(cols))
        _check_subset(neg, self.colset)
        sign = [-1 if c in neg else 1 for c in self.columns]
        return VectorSpace.from_rows(self.columns, [[s * x for s, x in zip(sign, r)] for r in self.basis])

    def __add__(self, other: "VectorSpace") -> "VectorSpace":
        return vsum(self, other)

    def __and__(self, other: "VectorSpace") -> "VectorSpace":
        return intersect(self, other)

    # column independence

    def column_rank(self, cols: Iterable[LabelLike]) -> int:
        cols = sorted(set(labels(cols)))
        _check_subset(cols, self.colset)
        return matrix_rank(self._project(cols), len(cols))

    def is_independent(self, cols: Iterable[LabelLike]) -> bool:
        cols = set(labels(cols))
        return self.column_rank(cols) == len(cols)

    def column_base(self) -> frozenset:
        return frozenset(self.pivots)

    def base_extension(self, include: Iterable[LabelLike] = (), avoid: Iterable[LabelLike] = ()) -> frozenset:
        """Column base containing ``include`` and missing ``avoid``; greedy in Label order."""
        inc = sorted(set(labels(include)))
        avd = set(labels(avoid))
        _check_subset(inc, self.colset)
        _check_subset(avd, self.colset)
        if avd & set(inc):
            raise BaseExtensionError("include and avoid overlap", sorted(avd & set(inc)))
        if self.column_rank(inc) < len(inc):
            raise BaseExtensionError("include is dependent", _dependent_witness(self, inc))
        rest = [c for c in self.columns if c not in avd]
        if self.column_rank(rest) < self.rank:
            raise BaseExtensionError("avoid contains a cobase violation: the other columns do not span",
                                     sorted(avd))
        base = list(inc)
        r = len(base)
        for c in rest:
            if c in base:
                continue
            if self.column_rank(base + [c]) > r:
                base.append(c)
                r += 1
                if r == self.rank:
                    break
        return frozenset(base)

    def standard_rep(self, base: Iterable[LabelLike]) -> dict[Label, dict[Label, Fraction]]:
        """Rows with identity on the column base ``base``, keyed by base label."""
        base = sorted(set(labels(base)))
        if len(base) != self.rank or not self.is_independent(base):
            raise ColumnError("not a column base")
        others = [c for c in self.columns if c not in set(base)]
        m, piv = rref(self._project(base + others), len(self.columns))
        order = base + others
        return {base[p]: dict(zip(order, r)) for r, p in zip(m, piv)}

    def to_json(self) -> dict:
        return {"labels": [str(c) for c in self.columns],
                "basis": [[fmt(x) for x in r] for r in self.basis]}


class BaseExtensionError(ValueError):
    def __init__(self, msg: str, witness):
        super().__init__(f"{msg}: {[str(w) for w in witness]}")
        self.witness = witness


def _dependent_witness(v: VectorSpace, cols: list[Label]) -> list[Label]:
    kept: list[Label] = []
    for c in cols:
        if v.column_rank(kept + [c]) == len(kept) + 1:
            kept.append(c)
        else:
            return kept + [c]
    return kept


# --- space-level operations ------------------------------------------------


def direct_sum(v: VectorSpace, w: VectorSpace) -> VectorSpace:
    if v.colset & w.colset:
        raise ColumnError("direct sum needs disjoint column sets")
    return vsum(v, w)


def vsum(v: VectorSpace, w: VectorSpace) -> VectorSpace:
    """Sum extended by zero padding on the columns the other space lacks."""
    cols = sorted(v.colset | w.colset)
    rows = []
    for s in (v, w):
        for vec in s.vectors():
            rows.append([vec.get(c, 0) for c in cols])
    return VectorSpace.from_rows(cols, rows)


def intersect(v: VectorSpace, w: VectorSpace) -> VectorSpace:
    """Intersection extended by full-space padding."""
    cols = v.colset | w.colset
    return vsum(v.extend_full(cols).perp(), w.extend_full(cols).perp()).perp()


def _split(v: VectorSpace, w: VectorSpace) -> tuple[list[Label], list[Label]]:
    common = sorted(v.colset & w.colset)
    outer = sorted(v.colset ^ w.colset)
    return common, outer


def matched(v_sp: VectorSpace, v_pq: VectorSpace) -> VectorSpace:
    """Matched composition through the shared columns P: (V_SP + V_(-P)Q) x SQ."""
    p, sq = _split(v_sp, v_pq)
    return vsum(v_sp, v_pq.negate(p)).contract(sq)


def skewed(v_sp: VectorSpace, v_pq: VectorSpace) -> VectorSpace:
    """Skewed composition: (V_SP + V_PQ) x SQ."""
    _, sq = _split(v_sp, v_pq)
    return vsum(v_sp, v_pq).contract(sq)


# --- affine spaces ---------------------------------------------------------


class Void:
    """The empty affine space. A value, not an error."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "VOID"

    def __bool__(self) -> bool:
        return False


VOID = Void()


@dataclass(frozen=True)
class AffineSpace:
    """offset + translate, with the offset zero on the translate's pivot columns."""

    offset: tuple[Fraction, ...]
    translate: VectorSpace

    @classmethod
    def make(cls, translate: VectorSpace, offset: Mapping | Sequence | None = None) -> "AffineSpace":
        if offset is None:
            return cls(tuple(Fraction(0) for _ in translate.columns), translate)
        return cls(tuple(translate.reduce(offset)), translate)

    @classmethod
    def of(cls, v: "VectorSpace | AffineSpace") -> "AffineSpace":
        return v if isinstance(v, AffineSpace) else cls.make(v)

    @classmethod
    def from_equations(cls, cols: Sequence[LabelLike], a: Sequence[Sequence], b: Sequence) -> "AffineSpace | Void":
        """Solution set of a x = b."""
        cols = labels(cols)
        res = linsolve([[frac(x) for x in r] for r in a], [frac(x) for x in b], len(cols))
        if isinstance(res, Inconsistent):
            return VOID
        t = VectorSpace.from_rows(cols, res.kernel)
        return cls.make(t, dict(zip(cols, res.point)))

    @property
    def columns(self) -> tuple[Label, ...]:
        return self.translate.columns

    @property
    def colset(self) -> frozenset:
        return self.translate.colset

    @property
    def rank(self) -> int:
        return self.translate.rank

    def point(self) -> dict[Label, Fraction]:
        return dict(zip(self.columns, self.offset))

    def contains(self, v: Mapping | Sequence) -> bool:
        x = self.translate._vec(v)
        return self.translate.contains([a - b for a, b in zip(x, self.offset)])

    def equations(self) -> tuple[list[dict[Label, Fraction]], list[Fraction]]:
        """Rows c with c.x = d describing the space."""
        rows = self.translate.perp().vectors()
        rhs = [sum(r[c] * x for c, x in zip(self.columns, self.offset)) for r in rows]
        return rows, rhs

    def restrict(self, t: Iterable[LabelLike]) -> "AffineSpace":
        tr = self.translate.restrict(t)
        pt = self.point()
        return AffineSpace.make(tr, {c: pt[c] for c in tr.columns})

    def relabel(self, mapping: Mapping) -> "AffineSpace":
        mp = {lab(k): lab(v) for k, v in mapping.items()}
        tr = self.translate.relabel(mp)
        return AffineSpace.make(tr, {mp.get(c, c): x for c, x in self.point().items()})

    def negate(self, cols: Iterable[LabelLike]) -> "AffineSpace":
        neg = set(labels(cols))
        return AffineSpace.make(self.translate.negate(neg),
                                {c: (-x if c in neg else x) for c, x in self.point().items()})

    def to_json(self) -> dict:
        d = self.translate.to_json()
        d["offset"] = [fmt(x) for x in self.offset]
        return d


Space = Union[VectorSpace, AffineSpace]


def affine_intersect(a1: Space, a2: Space) -> AffineSpace | Void:
    """Extended intersection of affine spaces (full padding on missing columns)."""
    a1, a2 = AffineSpace.of(a1), AffineSpace.of(a2)
    cols = sorted(a1.colset | a2.colset)
    rows, rhs = [], []
    for a in (a1, a2):
        eqs, d = a.equations()
        rows += [[e.get(c, 0) for c in cols] for e in eqs]
        rhs += d
    return AffineSpace.from_equations(cols, rows, rhs)


def affine_direct_sum(a1: Space, a2: Space) -> AffineSpace:
    a1, a2 = AffineSpace.of(a1), AffineSpace.of(a2)
    t = direct_sum(a1.translate, a2.translate)
    return AffineSpace.make(t, {**a1.point(), **a2.point()})


def affine_matched(a_sp: Space, a_pq: Space) -> AffineSpace | Void:
    """Matched composition of affine spaces; VOID when no common P-value exists."""
    a_sp, a_pq = AffineSpace.of(a_sp), AffineSpace.of(a_pq)
    _, sq = _split(a_sp.translate, a_pq.translate)
    x = affine_intersect(a_sp, a_pq)
    if x is VOID:
        return VOID
    return x.restrict(sq)


def offsets_compatible(a_sp: Space, a_pq: Space) -> bool:
    """Nonvoidness test through offsets: alpha_P - beta_P in V_SP o P + V_PQ o P."""
    a_sp, a_pq = AffineSpace.of(a_sp), AffineSpace.of(a_pq)
    p, _ = _split(a_sp.translate, a_pq.translate)
    if not p:
        return True
    room = vsum(a_sp.translate.restrict(p), a_pq.translate.restrict(p))
    x, y = a_sp.point(), a_pq.point()
    return room.contains({c: x[c] - y[c] for c in p})


# --- implicit inversion ----------------------------------------------------


@dataclass(frozen=True)
class InverseCheck:
    exists: bool
    candidate: VectorSpace | None
    failed: tuple[str, ...]


def implicit_inverse_check(v_sp: VectorSpace, v_sq: VectorSpace) -> InverseCheck:
    """Decide whether V_SP <-> V_PQ = V_SQ has a solution V_PQ and build one."""
    s, _ = _split(v_sp, v_sq)
    failed = []
    if not v_sq.restrict(s).issubspace(v_sp.restrict(s)):
        failed.append("restriction: V_SP o S does not contain V_SQ o S")
    if not v_sp.contract(s).issubspace(v_sq.contract(s)):
        failed.append("contraction: V_SP x S is not inside V_SQ x S")
    if failed:
        return InverseCheck(False, None, tuple(failed))
    cand = matched(v_sp, v_sq)
    if matched(v_sp, cand) != v_sq:
        raise AssertionError("implicit inversion candidate does not reproduce V_SQ")
    return InverseCheck(True, cand, ())


# --- text format -------------------------------------------------------------


def parse_space(text: str) -> VectorSpace | AffineSpace:
    """Read the ``labels:`` format: a label line, rational rows, optional ``offset:`` line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("labels:"):
        raise ValueError("first line must start with 'labels:'")
    cols = labels(lines[0][len("labels:"):].split())
    rows, offset = [], None
    for ln in lines[1:]:
        if ln.startswith("offset:"):
            offset = [parse_rational(x) for x in ln[len("offset:"):].split()]
            if len(offset) != len(cols):
                raise ColumnError("offset width does not match the labels")
            continue
        rows.append([parse_rational(x) for x in ln.split()])
    v = VectorSpace.from_rows(cols, rows)
    if offset is None:
        return v
    return AffineSpace.make(v, dict(zip(cols, offset)))


def format_space(x: VectorSpace | AffineSpace) -> str:
    if isinstance(x, AffineSpace):
        return f"{x.translate}\noffset: {' '.join(fmt(a) for a in x.offset)}"
    return str(x)
