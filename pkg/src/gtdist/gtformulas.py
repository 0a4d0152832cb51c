"""Tableau formulas for gl_n generators inside the skew ring.

phi sends a matrix unit E_st to a shift operator with rational-function
coefficients; products of generators go through phi_word so that the induced
action on distributions below is a left module action.  The commutator
identity holds in the reversed-bracket form

    phi(Y) o phi(X) - phi(X) o phi(Y) = phi([X, Y]),

which is the convention every verifier in this module pins down.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .polyalg import LinearFactor, Polynomial, RationalFunction, var_table
from .skewring import SkewElement
from .tableaux import RowPermutation, Shift


def _row_product(tab, k: int, i: int, other_row: int, upto: int) -> Polynomial:
    """prod_{j=1..upto} (x[k,i] - x[other_row,j]); empty product is 1."""
    acc = Polynomial.const(tab, 1)
    for j in range(1, upto + 1):
        acc = acc * Polynomial.linear(tab, 0, {(k, i): 1, (other_row, j): -1})
    return acc


def _same_row_denominator(tab, k: int, i: int):
    """1/prod_{j != i} (x[k,i] - x[k,j]) as (factors, scalar)."""
    den = []
    scalar = 1
    for j in range(1, k + 1):
        if j == i:
            continue
        f, scale = LinearFactor.build(tab, 0, {(k, i): 1, (k, j): -1})
        den.append((f, 1))
        scalar = scalar * scale
    return den, scalar


@lru_cache(maxsize=None)
def phi_chevalley(kind: str, k: int, n: int) -> SkewElement:
    """Image of E_{k,k+1} (raising), E_{k+1,k} (lowering), or E_{kk} (cartan)."""
    tab = var_table(n)
    if kind == "raising":
        if not 1 <= k <= n - 1:
            raise ValueError(f"raising index {k} out of range for n={n}")
        terms = {}
        for i in range(1, k + 1):
            num = _row_product(tab, k, i, k + 1, k + 1)
            den, scalar = _same_row_denominator(tab, k, i)
            terms[Shift.unit(n, k, i, -1)] = RationalFunction.build(num, den, -scalar)
        return SkewElement(n, terms)
    if kind == "lowering":
        if not 1 <= k <= n - 1:
            raise ValueError(f"lowering index {k} out of range for n={n}")
        terms = {}
        for i in range(1, k + 1):
            num = _row_product(tab, k, i, k - 1, k - 1)
            den, scalar = _same_row_denominator(tab, k, i)
            terms[Shift.unit(n, k, i, +1)] = RationalFunction.build(num, den, scalar)
        return SkewElement(n, terms)
    if kind == "cartan":
        if not 1 <= k <= n:
            raise ValueError(f"cartan index {k} out of range for n={n}")
        coeff = Polynomial.zero(tab)
        for i in range(1, k + 1):
            coeff = coeff + Polynomial.linear(tab, i - 1, {(k, i): 1})
        for i in range(1, k):
            coeff = coeff - Polynomial.linear(tab, i - 1, {(k - 1, i): 1})
        return SkewElement(n, {Shift.identity(n): RationalFunction.build(coeff)})
    raise ValueError(f"unknown generator kind {kind!r}")


def phi_matrix_unit_via(s: int, t: int, n: int, r: int) -> SkewElement:
    """E_st = [E_sr, E_rt]; image via phi(Y) o phi(X) - phi(X) o phi(Y)."""
    assert r != s and r != t and s != t
    x = phi_matrix_unit(s, r, n)
    y = phi_matrix_unit(r, t, n)
    return y.compose(x) - x.compose(y)


@lru_cache(maxsize=None)
def phi_matrix_unit(s: int, t: int, n: int) -> SkewElement:
    if not (1 <= s <= n and 1 <= t <= n):
        raise ValueError(f"matrix unit E{s}{t} out of range for n={n}")
    if s == t:
        return phi_chevalley("cartan", s, n)
    if t == s + 1:
        return phi_chevalley("raising", s, n)
    if t == s - 1:
        return phi_chevalley("lowering", t, n)
    r = s + 1 if s < t else s - 1
    return phi_matrix_unit_via(s, t, n, r)


def phi_word(word, n: int) -> SkewElement:
    """Image of the product X_1 ... X_m: phi(X_m) o ... o phi(X_1).

    word is a sequence of (s, t) pairs; the empty word maps to the unit.
    """
    acc = SkewElement.identity(n)
    for s, t in word:
        acc = phi_matrix_unit(s, t, n).compose(acc)
    return acc


def bracket(a, b):
    """[E_a, E_b] as a list of (sign, matrix unit), using
    [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb."""
    (a1, a2), (b1, b2) = a, b
    out = []
    if a2 == b1:
        out.append((1, (a1, b2)))
    if b2 == a1:
        out.append((-1, (b1, a2)))
    # [E_ab, E_ba] contributes both terms; equal units cancel exactly when
    # the bracket is zero, e.g. [E_aa, E_aa]
    return out


def verify_commutator_identity(a, b, n: int, flip_sign: bool = False) -> bool:
    """Check phi(b) o phi(a) - phi(a) o phi(b) == phi([a, b]) exactly.

    flip_sign swaps the operand order on the left side; it exists as a
    negative control and must fail whenever [a, b] != 0.
    """
    pa, pb = phi_matrix_unit(*a, n), phi_matrix_unit(*b, n)
    lhs = pa.compose(pb) - pb.compose(pa) if flip_sign else pb.compose(pa) - pa.compose(pb)
    rhs = SkewElement.zero(n)
    for sign, unit in bracket(a, b):
        img = phi_matrix_unit(*unit, n)
        rhs = rhs + (img if sign > 0 else -img)
    return (lhs - rhs).is_zero


def all_matrix_units(n: int):
    return [(s, t) for s in range(1, n + 1) for t in range(1, n + 1)]


def gt_subalgebra_generator(i: int, j: int, n: int) -> SkewElement:
    """Image of c_ij = sum over (s_1..s_j) in {1..i}^j of E_{s1 s2} ... E_{sj s1}."""
    if not 1 <= j <= i <= n:
        raise ValueError(f"c[{i},{j}] needs 1 <= j <= i <= n")
    total = SkewElement.zero(n)
    for tup in product(range(1, i + 1), repeat=j):
        word = [(tup[m], tup[(m + 1) % j]) for m in range(j)]
        total = total + phi_word(word, n)
    return total


def verify_central_character(i: int, j: int, n: int):
    """Theorem-level shape check for phi(c_ij): a G-invariant polynomial
    multiple of the identity shift.  Returns (ok, polynomial or None)."""
    c = gt_subalgebra_generator(i, j, n)
    tab = var_table(n)
    if c.is_zero:
        return True, Polynomial.zero(tab)
    if set(c.terms) != {Shift.identity(n)}:
        return False, None
    coeff = c.terms[Shift.identity(n)]
    poly = coeff.as_polynomial()
    if poly is None:
        return False, None
    for k in range(2, n + 1):
        for pos in range(1, k):
            perm = list(range(1, k + 1))
            perm[pos - 1], perm[pos] = perm[pos], perm[pos - 1]
            s = RowPermutation.single_row(n, k, perm)
            if s.apply_to_poly(poly) != poly:
                return False, poly
    return True, poly
