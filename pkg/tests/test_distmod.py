"""Distribution modules: labels, the action, and the definitional oracles."""

from functools import lru_cache

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from gtdist.distmod import (
    DistVector,
    ModuleContext,
    NotAlternating,
    ZERO_LABEL,
    act,
    alternating_quotient,
    build_symmetrized_element,
    canonical_label,
    direct_action_table,
    dist_as_local_distributions,
    eval_table_on_monomial,
    literal_pairing,
    local_table,
    monomials_upto,
    oracle_apply,
    oracle_apply_raw,
    oracle_cross_check,
    p2_correspondence,
    unit_vector,
    verify_module_axiom,
    z_derive,
)
from gtdist.gtformulas import phi_chevalley
from gtdist.polyalg import PointAssignment, Polynomial, RationalFunction
from gtdist.skewring import SkewElement
from gtdist.tableaux import Shift, conjugate_shift


@lru_cache(maxsize=None)
def ctx_p2() -> ModuleContext:
    pt = PointAssignment(3, {(1, 1): mpq(1, 3), (2, 1): 0, (2, 2): 0,
                             (3, 1): 5, (3, 2): mpq(7, 2), (3, 3): mpq(26, 3)})
    return ModuleContext.at_point(pt)


@lru_cache(maxsize=None)
def ctx_p3() -> ModuleContext:
    pt = PointAssignment(4, {(1, 1): mpq(1, 3), (2, 1): mpq(1, 2), (2, 2): 0,
                             (3, 1): 0, (3, 2): 0, (3, 3): 0,
                             (4, 1): 5, (4, 2): mpq(7, 2), (4, 3): mpq(26, 3),
                             (4, 4): mpq(9, 4)})
    return ModuleContext.at_point(pt)


@lru_cache(maxsize=None)
def ctx_generic() -> ModuleContext:
    pt = PointAssignment(3, {(1, 1): mpq(1, 3), (2, 1): mpq(1, 2), (2, 2): 0,
                             (3, 1): 5, (3, 2): mpq(7, 2), (3, 3): mpq(26, 3)})
    return ModuleContext.generic(pt)


def monomial(ctx, key):
    return Polynomial(ctx.tab, {key: mpq(1)})


rationals = st.builds(lambda a, b: mpq(a, b), st.integers(-6, 6), st.integers(1, 4))


@st.composite
def cluster_polys(draw, ctx, max_terms=3, max_exp=2):
    """Random polynomial supported on the cluster variables."""
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        exps = {v: draw(st.integers(0, max_exp)) for v in ctx.cluster_vars}
        key = ctx.tab.encode(exps)
        c = draw(rationals)
        terms[key] = terms.get(key, mpq(0)) + c
    return Polynomial(ctx.tab, {k: c for k, c in terms.items() if c})


@st.composite
def small_shifts(draw, ctx):
    offs = {v: draw(st.integers(-1, 1)) for v in ctx.cluster_vars}
    offs[(1, 1)] = draw(st.integers(-1, 1))
    return Shift(ctx.n, offs)


@st.composite
def pair_subsets(draw, ctx):
    return tuple(pr for pr in ctx.pairs if draw(st.booleans()))


# -- Vandermonde and alternating quotients ---------------------------------------


def test_vandermonde_quotient_is_one():
    ctx = ctx_p3()
    assert alternating_quotient(ctx.vandermonde, ctx.spec) == Polynomial.const(ctx.tab, 1)


def test_alternating_quotient_p2_example():
    ctx = ctx_p2()
    x1 = Polynomial.variable(ctx.tab, (2, 1))
    x2 = Polynomial.variable(ctx.tab, (2, 2))
    assert alternating_quotient(x1 * x1 - x2 * x2, ctx.spec) == x1 + x2


def test_symmetric_input_rejected():
    ctx = ctx_p2()
    x1 = Polynomial.variable(ctx.tab, (2, 1))
    x2 = Polynomial.variable(ctx.tab, (2, 2))
    with pytest.raises(NotAlternating):
        alternating_quotient(x1 * x1 + x2 * x2, ctx.spec)


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_antisymmetrization_factors(data):
    # antisymmetrize a random cluster polynomial, divide by the Vandermonde,
    # and multiply back
    ctx = ctx_p3()
    f = data.draw(cluster_polys(ctx))
    alt = Polynomial.zero(ctx.tab)
    for _tau, s, sgn in ctx.group:
        alt = alt + sgn * s.apply_to_poly(f)
    q = alternating_quotient(alt, ctx.spec)
    assert q * ctx.vandermonde == alt


# -- pair derivations -------------------------------------------------------------


def test_z_derive_examples():
    ctx = ctx_p2()
    pair = ctx.pairs[0]
    z = ctx.z_poly(pair)
    assert z_derive(z, pair, ctx) == Polynomial.const(ctx.tab, 1)
    x1 = Polynomial.variable(ctx.tab, ctx.cluster_vars[0])
    assert z_derive(x1, pair, ctx) == Polynomial.const(ctx.tab, mpq(1, 2))
    off = Polynomial.variable(ctx.tab, (1, 1))
    assert z_derive(off, pair, ctx).is_zero


def test_z_derive_commutes():
    ctx = ctx_p3()
    f = ctx.vandermonde * ctx.zI_poly(ctx.pairs[:2])
    a, b = ctx.pairs[0], ctx.pairs[2]
    assert z_derive(z_derive(f, a, ctx), b, ctx) == z_derive(z_derive(f, b, ctx), a, ctx)


# -- canonical labels -------------------------------------------------------------


def test_canonical_p2_examples():
    ctx = ctx_p2()
    pair = ctx.pairs[0]
    v1, v2 = ctx.cluster_vars
    # I empty, offsets (1,0): the swap image (0,1) carries sign -1
    lab, sign = canonical_label((), Shift(3, {v1: 1}), ctx)
    lab2, sign2 = canonical_label((), Shift(3, {v2: 1}), ctx)
    assert lab == lab2 and sign == -sign2
    # I = {pair}, symmetric shift: canonical with sign +1
    lab, sign = canonical_label((pair,), Shift.identity(3), ctx)
    assert sign == 1 and lab.pairs == (pair,) and lab.shift.is_identity
    # I empty, symmetric shift: the zero distribution
    assert canonical_label((), Shift.identity(3), ctx) is ZERO_LABEL


def test_zero_label_from_antisymmetrized_linear_form():
    # at p=3 a single pair over a full-stabilizer shift antisymmetrizes to 0
    # even though no single relabeling produces a sign conflict
    ctx = ctx_p3()
    assert canonical_label(((1, 2),), Shift.identity(4), ctx) is ZERO_LABEL


@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_zero_labels_evaluate_to_zero(data):
    ctx = data.draw(st.sampled_from([ctx_p2(), ctx_p3()]))
    pairs = data.draw(pair_subsets(ctx))
    m = data.draw(small_shifts(ctx))
    if canonical_label(pairs, m, ctx) is not ZERO_LABEL:
        return
    bound = 3 if ctx.p == 2 else 2
    for key in monomials_upto(ctx.tab, bound)[::3]:
        assert oracle_apply_raw(pairs, m, monomial(ctx, key), ctx) == 0


@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_basis_well_definedness(data):
    # the raw (I, m) functional equals sign times its canonical representative
    ctx = data.draw(st.sampled_from([ctx_p2(), ctx_p3()]))
    pairs = data.draw(pair_subsets(ctx))
    m = data.draw(small_shifts(ctx))
    got = canonical_label(pairs, m, ctx)
    if got is ZERO_LABEL:
        return
    rep, sign = got
    bound = 3 if ctx.p == 2 else 2
    for key in monomials_upto(ctx.tab, bound)[::5]:
        F = monomial(ctx, key)
        assert oracle_apply_raw(pairs, m, F, ctx) == \
            sign * oracle_apply_raw(rep.pairs, rep.shift, F, ctx)


@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_symmetrized_element_respects_relabeling(data):
    # B_{I,m} = sign * B_{rep} as skew elements, the strong form of the
    # relabeling relation
    ctx = data.draw(st.sampled_from([ctx_p2(), ctx_p3()]))
    pairs = data.draw(pair_subsets(ctx))
    m = data.draw(small_shifts(ctx))
    got = canonical_label(pairs, m, ctx)
    B = build_symmetrized_element(pairs, m, ctx)
    if got is ZERO_LABEL:
        assert B.is_zero
        return
    rep, sign = got
    Brep = build_symmetrized_element(rep.pairs, rep.shift, ctx)
    assert B == (Brep if sign == 1 else -Brep)


# -- symmetrized elements ----------------------------------------------------------


def test_symmetrized_p2_forms():
    ctx = ctx_p2()
    pair = ctx.pairs[0]
    m = Shift(3, {ctx.cluster_vars[0]: 1})
    mt = conjugate_shift(next(g[1] for g in ctx.group if g[2] == -1), m)
    one = RationalFunction.one(ctx.tab)
    # I = {pair}: the cluster difference cancels, leaving sigma + tau(sigma)
    B = build_symmetrized_element((pair,), m, ctx)
    assert B == SkewElement.single(m, one) + SkewElement.single(mt, one)
    # I = empty: (sigma - tau(sigma)) / z
    B2 = build_symmetrized_element((), m, ctx)
    z = ctx.z_poly(pair)
    assert set(B2.terms) == {m, mt}
    assert B2.terms[m] * z == one
    assert B2.terms[mt] * z == -one


def test_symmetrized_full_subset_is_group_size():
    for ctx in (ctx_p2(), ctx_p3()):
        B = build_symmetrized_element(ctx.pairs, Shift.identity(ctx.n), ctx)
        assert B == SkewElement.identity(ctx.n).scaled(ctx.group_size)


# -- the seed functional -----------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_seed_functional_is_invariant(data):
    # L(tau(F)) = L(F): the alternating signs of the derivative chain and of
    # the Vandermonde cancel
    ctx = data.draw(st.sampled_from([ctx_p2(), ctx_p3()]))
    F = data.draw(cluster_polys(ctx))

    def L(G):
        H = ctx.vandermonde * G
        for pr in ctx.pairs:
            H = z_derive(H, pr, ctx)
        return H.eval_at(ctx.point.values)

    for _tau, s, _sgn in ctx.group:
        assert L(s.apply_to_poly(F)) == L(F)


# -- oracle evaluations ------------------------------------------------------------


def test_oracle_p2_examples():
    ctx = ctx_p2()
    tab = ctx.tab
    m = Shift(3, {(2, 1): 1})
    x21 = Polynomial.variable(tab, (2, 1))
    x22 = Polynomial.variable(tab, (2, 2))
    assert oracle_apply_raw((), m, x21 * x22, ctx) == 1
    assert oracle_apply_raw((), m, x21, ctx) == 0
    assert oracle_apply_raw((), m, Polynomial.const(tab, 1), ctx) == 0


def test_oracle_full_subset_on_constant():
    # p! * (d_T z_T)(o): 2 at p=2 but 9 at p=3 (cross pairings contribute)
    one2 = Polynomial.const(ctx_p2().tab, 1)
    one3 = Polynomial.const(ctx_p3().tab, 1)
    assert oracle_apply_raw(ctx_p2().pairs, Shift.identity(3), one2, ctx_p2()) == 2
    assert oracle_apply_raw(ctx_p3().pairs, Shift.identity(4), one3, ctx_p3()) == 9


def test_d1_identity_is_twice_evaluation():
    ctx = ctx_p2()
    lab, sign = canonical_label((ctx.pairs[0],), Shift.identity(3), ctx)
    assert sign == 1
    lds = dist_as_local_distributions(lab, ctx)
    merged = {}
    for ld in lds:
        for c, alpha in ld.terms:
            merged[(ld.base_point, alpha)] = merged.get((ld.base_point, alpha), 0) + c
    assert merged == {(ctx.point, 0): mpq(2)}


@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_local_distributions_match_oracle(data):
    # the Leibniz rows evaluate identically to the defining formula
    ctx = data.draw(st.sampled_from([ctx_p2(), ctx_p3()]))
    pairs = data.draw(pair_subsets(ctx))
    m = data.draw(small_shifts(ctx))
    got = canonical_label(pairs, m, ctx)
    if got is ZERO_LABEL:
        return
    rep, _sign = got
    lds = dist_as_local_distributions(rep, ctx)
    bound = 3 if ctx.p == 2 else 2
    for key in monomials_upto(ctx.tab, bound)[::7]:
        F = monomial(ctx, key)
        assert sum((ld.evaluate(F) for ld in lds), mpq(0)) == \
            oracle_apply_raw(rep.pairs, rep.shift, F, ctx)


def test_table_monomial_evaluator_agrees_with_rows():
    ctx = ctx_p2()
    lab, _ = canonical_label((), Shift(3, {(2, 1): 1}), ctx)
    table = local_table(DistVector({lab: mpq(1)}), ctx)
    for key in monomials_upto(ctx.tab, 3)[::5]:
        F = monomial(ctx, key)
        assert eval_table_on_monomial(table, key, ctx.tab) == oracle_apply(
            DistVector({lab: mpq(1)}), F, ctx)


# -- the module action -------------------------------------------------------------


def test_act_empty_word_is_identity():
    for ctx in (ctx_p2(), ctx_p3()):
        D = unit_vector(ctx.pairs, Shift.identity(ctx.n), ctx)
        assert act((), D, ctx) == D


def test_act_cartan_is_scalar():
    # E_11 multiplies by the (1,1) coordinate of the translated support point
    ctx = ctx_p2()
    m = Shift(3, {(1, 1): 1, (2, 1): 1})
    D = unit_vector((ctx.pairs[0],), m, ctx)
    out = act(((1, 1),), D, ctx)
    expected = D.scaled(ctx.point[(1, 1)] - 1)
    assert out == expected


def test_act_linearity():
    ctx = ctx_p2()
    D1 = unit_vector((ctx.pairs[0],), Shift.identity(3), ctx)
    D2 = unit_vector((), Shift(3, {(2, 1): 1}), ctx)
    w = ((2, 3),)
    lhs = act(w, D1.scaled(3) + D2.scaled(-2), ctx)
    assert lhs == act(w, D1, ctx).scaled(3) + act(w, D2, ctx).scaled(-2)


def test_act_against_literal_pairing_two_letter_word():
    ctx = ctx_p2()
    D = unit_vector((ctx.pairs[0],), Shift.identity(3), ctx)
    w = ((1, 2), (2, 1))
    out = act(w, D, ctx)
    lab = next(iter(D.coeffs))
    for key in monomials_upto(ctx.tab, 2)[::4]:
        F = monomial(ctx, key)
        assert oracle_apply(out, F, ctx) == literal_pairing(w, lab, F, ctx)


def test_direct_table_matches_act_output_tables():
    # the solver's residual is zero: the expansion reproduces the composite's
    # own table exactly
    ctx = ctx_p3()
    D = unit_vector(ctx.pairs, Shift.identity(4), ctx)
    lab = next(iter(D.coeffs))
    w = ((3, 4),)
    out = act(w, D, ctx)
    assert local_table(out, ctx) == direct_action_table(w, lab, ctx)


def test_cross_check_single_generators():
    ctx = ctx_p2()
    lab, _ = canonical_label((ctx.pairs[0],), Shift.identity(3), ctx)
    for w in (((2, 3),), ((3, 2),), ((2, 2),)):
        rep = oracle_cross_check(w, lab, ctx, degree_bound=3)
        assert rep.ok, rep


def test_cross_check_p3():
    ctx = ctx_p3()
    lab, _ = canonical_label(ctx.pairs, Shift.identity(4), ctx)
    rep = oracle_cross_check(((3, 4),), lab, ctx, degree_bound=2)
    assert rep.ok and rep.n_monomials == len(monomials_upto(ctx.tab, 2))


def test_module_axiom_samples():
    ctx = ctx_p2()
    D = unit_vector((ctx.pairs[0],), Shift.identity(3), ctx)
    assert verify_module_axiom((1, 2), (2, 1), D, ctx).ok
    assert verify_module_axiom((1, 1), (2, 2), D, ctx).ok
    ctx3 = ctx_p3()
    D3 = unit_vector(ctx3.pairs, Shift.identity(4), ctx3)
    assert verify_module_axiom((3, 4), (4, 3), D3, ctx3).ok
    assert verify_module_axiom((2, 3), (3, 4), D3, ctx3).ok


def test_module_axiom_swapped_order_fails():
    # negative control: the transposed commutator convention must not hold
    ctx = ctx_p2()
    D = unit_vector((ctx.pairs[0],), Shift.identity(3), ctx)
    a, b = (1, 2), (2, 1)
    lhs = act((b,), act((a,), D, ctx), ctx) - act((a,), act((b,), D, ctx), ctx)
    rhs = act(((1, 1),), D, ctx) - act(((2, 2),), D, ctx)
    assert local_table(lhs, ctx) != local_table(rhs, ctx)


# -- degeneration and the p=2 dictionary -------------------------------------------


def test_generic_context_reproduces_classical_action():
    # at a generic point the action coefficients are exactly the generator
    # images evaluated at the base point
    ctx = ctx_generic()
    D = unit_vector((), Shift.identity(3), ctx)
    for kind, k, w in (("raising", 1, (1, 2)), ("raising", 2, (2, 3)),
                       ("lowering", 1, (2, 1)), ("lowering", 2, (3, 2)),
                       ("cartan", 2, (2, 2))):
        phi = phi_chevalley(kind, k, 3)
        out = act((w,), D, ctx)
        expected = {}
        for step, rf in phi.terms.items():
            v = rf.eval_at(ctx.point.values)
            if v:
                expected[step] = v
        assert {lab.shift: c for lab, c in out.coeffs.items()} == expected


def test_generic_translated_label_matches_literal_pairing():
    ctx = ctx_generic()
    m = Shift(3, {(2, 1): 2})
    D = unit_vector((), m, ctx)
    w = ((2, 3), (3, 2))
    out = act(w, D, ctx)
    lab = next(iter(D.coeffs))
    for key in monomials_upto(ctx.tab, 2)[::3]:
        F = monomial(ctx, key)
        assert oracle_apply(out, F, ctx) == literal_pairing(w, lab, F, ctx)


def test_p2_correspondence_report():
    report = p2_correspondence(ctx_p2(), degree_bound=3)
    assert report["ok"], report
    assert all(c["ok"] for c in report["checks"])
    assert "D1_m" in report["dictionary"] and "D2_m" in report["dictionary"]
