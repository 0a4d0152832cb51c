"""Tableau points, the shift lattice, row permutations, and point taxonomy.

A point assigns a rational to every position (k, i).  Shifts move points by
integer offsets on rows 1..n-1; row permutations rearrange entries within
each row.  Points are classified by their within-row integer-difference
structure: generic, singular with one coincidence cluster, or unsupported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from gmpy2 import mpq

from .polyalg import PointAssignment, Polynomial, RationalFunction, var_table

TableauPoint = PointAssignment


class Shift:
    """Integer offset vector m with m[k,i] = 0 on row n.

    Acts on points by adding offsets, and on functions by the pullback
    x[k,i] -> x[k,i] - m[k,i].
    """

    __slots__ = ("n", "offsets")

    def __init__(self, n: int, offsets: Mapping = ()):
        self.n = n
        tab = var_table(n)
        out = {}
        for v, m in dict(offsets).items():
            tab.check(v)
            m = int(m)
            if not m:
                continue
            if v[0] == n:
                raise ValueError(f"shift offset on row {n} is not allowed")
            out[v] = m
        self.offsets = out

    @staticmethod
    def unit(n: int, k: int, i: int, amount: int = 1) -> "Shift":
        return Shift(n, {(k, i): amount})

    @staticmethod
    def identity(n: int) -> "Shift":
        return Shift(n, {})

    def __getitem__(self, v) -> int:
        return self.offsets.get(v, 0)

    def compose(self, other: "Shift") -> "Shift":
        assert self.n == other.n
        out = dict(self.offsets)
        for v, m in other.offsets.items():
            out[v] = out.get(v, 0) + m
        return Shift(self.n, out)

    def inverse(self) -> "Shift":
        return Shift(self.n, {v: -m for v, m in self.offsets.items()})

    @property
    def is_identity(self) -> bool:
        return not self.offsets

    def key(self) -> tuple:
        return tuple(sorted(self.offsets.items()))

    def __eq__(self, other):
        return isinstance(other, Shift) and self.n == other.n and self.offsets == other.offsets

    def __hash__(self):
        return hash((self.n, self.key()))

    def apply_to_point(self, pt: TableauPoint) -> TableauPoint:
        vals = dict(pt.values)
        for v, m in self.offsets.items():
            vals[v] = vals[v] + m
        return PointAssignment(pt.n, vals)

    def apply_to_poly(self, p: Polynomial) -> Polynomial:
        return p.shift_subst(self.offsets)

    def apply_to_rf(self, f: RationalFunction) -> RationalFunction:
        return f.shifted(self.offsets)

    def __str__(self):
        if not self.offsets:
            return "id"
        return " ".join(f"({k},{i}):{m:+d}" for (k, i), m in sorted(self.offsets.items()))

    __repr__ = __str__


class RowPermutation:
    """One permutation of {1..k} per row k, in one-line notation."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows):
        rows = tuple(tuple(r) for r in rows)
        assert len(rows) == n
        for k, r in enumerate(rows, start=1):
            if sorted(r) != list(range(1, k + 1)):
                raise ValueError(f"row {k} component {r} is not a permutation of 1..{k}")
        self.n = n
        self.rows = rows

    @staticmethod
    def identity(n: int) -> "RowPermutation":
        return RowPermutation(n, [tuple(range(1, k + 1)) for k in range(1, n + 1)])

    @staticmethod
    def single_row(n: int, k: int, perm) -> "RowPermutation":
        rows = [tuple(range(1, j + 1)) for j in range(1, n + 1)]
        rows[k - 1] = tuple(perm)
        return RowPermutation(n, rows)

    def image(self, k: int, i: int) -> int:
        return self.rows[k - 1][i - 1]

    def compose(self, other: "RowPermutation") -> "RowPermutation":
        """self after other: result(k,i) = self(k, other(k,i))."""
        assert self.n == other.n
        rows = []
        for k in range(1, self.n + 1):
            rows.append(tuple(self.rows[k - 1][other.rows[k - 1][i - 1] - 1]
                              for i in range(1, k + 1)))
        return RowPermutation(self.n, rows)

    def inverse(self) -> "RowPermutation":
        rows = []
        for r in self.rows:
            inv = [0] * len(r)
            for i, j in enumerate(r, start=1):
                inv[j - 1] = i
            rows.append(tuple(inv))
        return RowPermutation(self.n, rows)

    def sign(self) -> int:
        total = 0
        for r in self.rows:
            for a in range(len(r)):
                for b in range(a + 1, len(r)):
                    if r[a] > r[b]:
                        total += 1
        return -1 if total % 2 else 1

    @property
    def is_identity(self) -> bool:
        return all(r == tuple(range(1, len(r) + 1)) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, RowPermutation) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def varmap(self) -> dict:
        """Substitution map of the function pullback: x[k,i] -> x[k, s_k^{-1}(i)]."""
        inv = self.inverse()
        out = {}
        for k in range(1, self.n + 1):
            for i in range(1, k + 1):
                j = inv.image(k, i)
                if j != i:
                    out[(k, i)] = (k, j)
        return out

    def apply_to_poly(self, p: Polynomial) -> Polynomial:
        return p.permute_vars(self.varmap())

    def apply_to_rf(self, f: RationalFunction) -> RationalFunction:
        return f.permuted(self.varmap())

    def apply_to_point(self, pt: TableauPoint) -> TableauPoint:
        # (s(x))[k,i] = x[k, s_k(i)]
        vals = {}
        for (k, i), c in pt.values.items():
            vals[(k, i)] = pt.values[(k, self.image(k, i))]
        return PointAssignment(pt.n, vals)

    def __str__(self):
        return " | ".join(",".join(map(str, r)) for r in self.rows)

    __repr__ = __str__


def conjugate_shift(s: RowPermutation, m: Shift) -> Shift:
    """The shift s o m o s^{-1}: offset at (k,i) is m at (k, s_k(i)).

    This is the unique choice making permute(subst(m, p), s) equal to
    subst(conjugate_shift(s, m), permute(p, s)) for all p.
    """
    assert s.n == m.n
    out = {}
    for (k, i), off in m.offsets.items():
        si = s.inverse().image(k, i)
        out[(k, si)] = off
    return Shift(m.n, out)


# -- point taxonomy -----------------------------------------------------------


@dataclass(frozen=True)
class Generic:
    point: TableauPoint


@dataclass(frozen=True)
class Unsupported:
    reason: str


@dataclass(frozen=True)
class SingularSpec:
    """A base point with exactly one within-row coincidence cluster.

    cluster lists the p >= 2 columns of `row` sharing one value; every other
    same-row difference at the point is a non-integer.
    """

    n: int
    row: int
    cluster: tuple
    base_point: TableauPoint

    def __post_init__(self):
        assert 2 <= self.row <= self.n - 1
        assert len(self.cluster) >= 2
        assert tuple(sorted(self.cluster)) == self.cluster

    @property
    def p(self) -> int:
        return len(self.cluster)

    def pairs(self) -> list:
        return z_pairs(self.p)

    @property
    def cluster_value(self) -> mpq:
        return self.base_point[(self.row, self.cluster[0])]

    def cluster_vars(self) -> tuple:
        return tuple((self.row, i) for i in self.cluster)


def classify_point(pt: TableauPoint, n: int | None = None):
    """Sort a point into Generic, SingularSpec, or Unsupported.

    Within each row: a repeated value forms a cluster; a nonzero integer
    difference is outside scope.  Exactly one cluster on a row 2..n-1 is the
    singular case.
    """
    if n is None:
        n = pt.n
    clusters = []  # (row, columns)
    for k in range(1, n + 1):
        vals = [pt[(k, i)] for i in range(1, k + 1)]
        by_value: dict = {}
        for i, c in enumerate(vals, start=1):
            by_value.setdefault(c, []).append(i)
        for c, cols in by_value.items():
            if len(cols) > 1:
                clusters.append((k, tuple(cols)))
        for a in range(k):
            for b in range(a + 1, k):
                d = vals[a] - vals[b]
                if d and d.denominator == 1:
                    return Unsupported(
                        f"row {k} entries ({k},{a + 1}) and ({k},{b + 1}) differ "
                        f"by the nonzero integer {d}")
    if not clusters:
        return Generic(pt)
    if len(clusters) > 1:
        where = ", ".join(f"row {k} columns {cols}" for k, cols in clusters)
        return Unsupported(f"multiple coincidence clusters: {where}")
    row, cols = clusters[0]
    if row == n:
        return Unsupported(
            f"cluster in row {n} creates no singularity (top-row entries never "
            f"enter a denominator); treat the point with the generic machinery")
    return SingularSpec(n=n, row=row, cluster=cols, base_point=pt)


def z_pairs(p: int) -> list:
    """All pairs (r,t), r < t <= p, ordered (1,2),(1,3),..,(1,p),(2,3),..."""
    return [(r, t) for r in range(1, p + 1) for t in range(r + 1, p + 1)]
