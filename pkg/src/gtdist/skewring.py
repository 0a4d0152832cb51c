"""The skew ring of shift operators with rational-function coefficients.

Elements are finite sums sum_i f_i s_i with f_i a rational function and s_i a
shift.  Composition twists coefficients through the shift pullback; the star
product is composition in the opposite order.  Elements act on functions and
carry the row-permutation action; singularity accounting counts how often a
cluster difference survives in a denominator.
"""

from __future__ import annotations

from itertools import permutations

from .polyalg import RationalFunction, var_table
from .tableaux import RowPermutation, Shift, SingularSpec, conjugate_shift


class SkewElement:
    """Finite sum of shift terms, keyed by Shift, zero coefficients dropped."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=()):
        self.n = n
        out = {}
        for m, f in dict(terms).items():
            assert m.n == n
            if not f.is_zero:
                out[m] = f
        self.terms = out

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(n: int) -> "SkewElement":
        return SkewElement(n, {})

    @staticmethod
    def identity(n: int) -> "SkewElement":
        tab = var_table(n)
        return SkewElement(n, {Shift.identity(n): RationalFunction.one(tab)})

    @staticmethod
    def single(shift: Shift, coeff: RationalFunction) -> "SkewElement":
        return SkewElement(shift.n, {shift: coeff})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "SkewElement") -> "SkewElement":
        assert self.n == other.n
        out = dict(self.terms)
        for m, f in other.terms.items():
            g = out.get(m)
            out[m] = f if g is None else g + f
        return SkewElement(self.n, out)

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.n, {m: -f for m, f in self.terms.items()})

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        return self + (-other)

    def scaled(self, c) -> "SkewElement":
        return SkewElement(self.n, {m: f * c for m, f in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SkewElement) and self.n == other.n and self.terms == other.terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # -- the two products ---------------------------------------------------

    def compose(self, other: "SkewElement") -> "SkewElement":
        """self after other: (f s) o (g t) = f * s(g) * (s o t)."""
        assert self.n == other.n
        out: dict = {}
        for ma, fa in self.terms.items():
            for mb, fb in other.terms.items():
                m = ma.compose(mb)
                term = fa * fb.shifted(ma.offsets)
                g = out.get(m)
                out[m] = term if g is None else g + term
        return SkewElement(self.n, out)

    def star(self, other: "SkewElement") -> "SkewElement":
        """a * b := b o a."""
        return other.compose(self)

    # -- actions -------------------------------------------------------------

    def act(self, F: RationalFunction) -> RationalFunction:
        """(f s)(F) = f * (F pulled back along s)."""
        tab = var_table(self.n)
        total = RationalFunction.zero(tab)
        for m, f in self.terms.items():
            total = total + f * F.shifted(m.offsets)
        return total

    def permuted(self, s: RowPermutation) -> "SkewElement":
        out = {}
        for m, f in self.terms.items():
            out[conjugate_shift(s, m)] = s.apply_to_rf(f)
        return SkewElement(self.n, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [f"[{f}]·({m})" for m, f in sorted(self.terms.items(), key=lambda t: t[0].key())]
        return " + ".join(parts)

    __repr__ = __str__


# -- cluster machinery ---------------------------------------------------------


def embed_cluster_permutation(spec: SingularSpec, tau) -> RowPermutation:
    """Embed tau in S_p as a row permutation of the cluster columns.

    tau is one-line notation on 1..p; the embedding sends the cluster column
    i_j to i_{tau^{-1}(j)}, so that the function pullback renames the cluster
    variable at slot m to slot tau(m) and z_{rt} maps to z_{tau(r)tau(t)}.
    """
    tau = tuple(tau)
    p = spec.p
    assert sorted(tau) == list(range(1, p + 1))
    inv = [0] * p
    for j, image in enumerate(tau, start=1):
        inv[image - 1] = j
    k = spec.row
    row = list(range(1, k + 1))
    for j in range(1, p + 1):
        row[spec.cluster[j - 1] - 1] = spec.cluster[inv[j - 1] - 1]
    return RowPermutation.single_row(spec.n, k, row)


def cluster_transpositions(spec: SingularSpec) -> list:
    """Embedded adjacent transpositions generating the cluster S_p."""
    out = []
    for j in range(1, spec.p):
        tau = list(range(1, spec.p + 1))
        tau[j - 1], tau[j] = tau[j], tau[j - 1]
        out.append(embed_cluster_permutation(spec, tau))
    return out


def cluster_group(spec: SingularSpec) -> list:
    """All p! embedded cluster permutations, paired with their signs."""
    out = []
    for tau in permutations(range(1, spec.p + 1)):
        s = embed_cluster_permutation(spec, tau)
        out.append((tau, s, s.sign()))
    return out


def is_invariant(a: SkewElement, spec: SingularSpec) -> bool:
    """Invariance under the cluster S_p, decided on transposition generators."""
    return all(a.permuted(t) == a for t in cluster_transpositions(spec))


def cluster_difference_factors(spec: SingularSpec):
    """The canonical factors x[k,i_r] - x[k,i_t], r < t, of the cluster."""
    from .polyalg import LinearFactor

    tab = var_table(spec.n)
    k = spec.row
    out = set()
    for a in range(spec.p):
        for b in range(a + 1, spec.p):
            f, _ = LinearFactor.build(
                tab, 0, {(k, spec.cluster[a]): 1, (k, spec.cluster[b]): -1})
            out.add(f)
    return out


def cluster_singularity_order(a: SkewElement, spec: SingularSpec) -> int:
    """Largest multiplicity of a single vanishing cluster-difference factor.

    Only exact differences (zero constant part) vanish at the base point: all
    other same-row differences are non-integral there, so integer-offset
    factors stay away from zero.  Order <= 1 is the "at most one Vandermonde"
    condition under which composition stays controlled.
    """
    singular = cluster_difference_factors(spec)
    order = 0
    for f in a.terms.values():
        for factor, mult in f.den:
            if factor in singular and mult > order:
                order = mult
    return order
