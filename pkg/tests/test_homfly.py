"""Truncated HOMFLY generating series and its consistency checks."""

import random

import pytest

from moyeval.diagram import Coloring, DiagramError, builtin
from moyeval.homfly import (
    TruncatedTorusSeries,
    check_fphi,
    check_shift,
    homfly_series,
    pochhammer_inf,
    series_invert,
    specialization_check,
    specialize_to_N,
)
from moyeval.qexact import QLaurent, TruncatedRSeries, qbinom
from moyeval.qtorus import CycleAlgebra, TorusElement
from moyeval.statesum import eval_table


def unknot_algebra():
    return CycleAlgebra(builtin("unknot"))


def tts(ca, x_degree, q_order, coeffs):
    """Series with the given {exps: {(v, b): int}} coefficient table."""
    element = TorusElement.zero(ca.signature)
    for exps, terms in coeffs.items():
        element = element + TorusElement.monomial(
            ca.signature, exps, TruncatedRSeries(q_order, terms))
    return TruncatedTorusSeries(x_degree, q_order, element)


# -- the truncated series ring ------------------------------------------------


def test_series_construction_enforces_bounds():
    ca = unknot_algebra()
    el = TorusElement.monomial(ca.signature, (0,), TruncatedRSeries.one(4))
    with pytest.raises(ValueError, match="coefficient bound 4 does not match series bound 8"):
        TruncatedTorusSeries(2, 8, el)
    # terms beyond the x-degree bound are dropped on construction
    s = tts(ca, 1, 8, {(0,): {(0, 0): 1}, (2,): {(0, 0): 5}})
    assert s.coefficient((2,)) == TruncatedRSeries.zero(8)
    assert s.constant_term() == TruncatedRSeries.one(8)


def test_series_arithmetic_and_bound_mismatches():
    ca = unknot_algebra()
    one = TruncatedTorusSeries.one(ca, 2, 8)
    x = tts(ca, 2, 8, {(1,): {(0, 0): 1}})
    s = one + x
    assert (s - x) == one
    assert (s * s).coefficient((1,)) == TruncatedRSeries(8, {(0, 0): 2})
    assert (s * s).coefficient((2,)) == TruncatedRSeries.one(8)
    assert s.times_v(2).constant_term() == TruncatedRSeries(8, {(2, 0): 1})
    with pytest.raises(ValueError, match="x-degree bound mismatch"):
        one * TruncatedTorusSeries.one(ca, 3, 8)
    with pytest.raises(ValueError, match="truncation bound mismatch"):
        one * TruncatedTorusSeries.one(ca, 2, 12)
    with pytest.raises(ValueError, match="cannot raise a truncation bound"):
        one.retruncate(12)


def test_series_invert_geometric():
    ca = unknot_algebra()
    s = tts(ca, 3, 8, {(0,): {(0, 0): 1}, (1,): {(0, 0): 1}})
    inv = series_invert(s)
    for k, sign in enumerate((1, -1, 1, -1)):
        assert inv.coefficient((k,)) == TruncatedRSeries(8, {(0, 0): sign})
    assert s * inv == TruncatedTorusSeries.one(ca, 3, 8)
    assert inv * s == TruncatedTorusSeries.one(ca, 3, 8)


def test_series_invert_random_units():
    ca = CycleAlgebra(builtin("theta"))
    rng = random.Random(4207)
    one = TruncatedTorusSeries.one(ca, 2, 6)
    for _ in range(10):
        coeffs = {(0, 0): {(0, 0): 1}}
        for _ in range(4):
            exps = (rng.randrange(0, 3), rng.randrange(0, 3))
            if exps == (0, 0):
                continue
            coeffs.setdefault(exps, {})[(rng.randrange(0, 7), rng.randrange(-2, 3))] = \
                rng.randrange(-3, 4)
        s = tts(ca, 2, 6, coeffs)
        inv = series_invert(s)
        assert s * inv == one and inv * s == one


def test_series_invert_requires_unit_constant_term():
    ca = unknot_algebra()
    with pytest.raises(ValueError, match="constant term must be exactly 1"):
        series_invert(TruncatedTorusSeries.zero(ca, 2, 8))
    with pytest.raises(ValueError, match="constant term must be exactly 1"):
        series_invert(TruncatedTorusSeries.one(ca, 2, 8).times_v(2))


# -- infinite twisted products ------------------------------------------------


def test_pochhammer_inf_unknot_frozen():
    p = pochhammer_inf(unknot_algebra(), False, 2, 8)
    assert dict(p.coefficient((0,)).terms) == {(0, 0): 1}
    assert dict(p.coefficient((1,)).terms) == {(2, -2): 1, (6, -2): 1}
    assert dict(p.coefficient((2,)).terms) == {(8, -4): 1}


def test_pochhammer_inf_b_exponent_signs():
    for name in ("unknot", "theta"):
        ca = CycleAlgebra(builtin(name))
        plain = pochhammer_inf(ca, False, 3, 8)
        inverted = pochhammer_inf(ca, True, 3, 8)
        for series, sign in ((plain, -1), (inverted, 1)):
            for coeff in series.element.terms.values():
                assert all(sign * b >= 0 for _, b in coeff.terms)


def test_pochhammer_inf_needs_positive_diagram():
    with pytest.raises(DiagramError, match="positive diagram"):
        pochhammer_inf(CycleAlgebra(builtin("tetrahedron")), False, 2, 8)
    with pytest.raises(DiagramError, match="positive diagram"):
        homfly_series(builtin("tetrahedron"), 2, 8)


# -- the assembled series and its checks --------------------------------------


def test_homfly_series_unknot_table_frozen():
    hs = homfly_series(builtin("unknot"), 2, 8)
    table = {tuple(c.circles): dict(v.terms) for c, v in hs.table.items()}
    assert table == {
        (): {(0, 0): 1},
        ((0, 1),): {(2, -2): 1, (6, -2): 1, (2, 2): -1, (6, 2): -1},
        ((0, 2),): {(8, -4): 1, (4, 4): 1, (8, 4): 1, (4, 0): -1, (8, 0): -2},
    }


def test_truncation_bounds_are_coherent():
    # recomputing with a looser bound and truncating back changes nothing
    tight = homfly_series(builtin("theta"), 3, 8)
    loose = homfly_series(builtin("theta"), 3, 12)
    assert loose.series.retruncate(8) == tight.series
    assert set(loose.table) == set(tight.table)
    for coloring, value in tight.table.items():
        assert loose.table[coloring].retruncate(8) == value


def test_defining_equation_residual_vanishes():
    for name, x_degree in (("unknot", 2), ("theta", 3)):
        report = check_fphi(homfly_series(builtin(name), x_degree, 8))
        assert report.name == "defining-equation"
        assert report.ok, report.detail
        assert f"x-degree <= {x_degree}" in report.detail


def test_shift_property_holds():
    for name, x_degree in (("unknot", 2), ("theta", 3)):
        report = check_shift(homfly_series(builtin(name), x_degree, 8))
        assert report.name == "shift"
        assert report.ok, report.detail
        assert [s.name for s in report.sub] == ["reindex-q", "reindex-a", "conjugate"]
        assert all(s.ok for s in report.sub)
        assert "single linear polynomials" in report.detail


def test_specialize_to_finite_level():
    hs = homfly_series(builtin("unknot"), 2, 16)
    spec = specialize_to_N(hs, 2)
    table = eval_table(builtin("unknot"), 2)
    assert set(spec) == set(table)
    for coloring, sc in spec.items():
        # within the window the specialization equals the exact state sum
        expected = QLaurent({e: c for e, c in table[coloring].terms.items()
                             if e <= sc.window})
        assert sc.value == expected
    assert spec[Coloring(circles={0: 1})].value == qbinom(2, 1)
    report = specialization_check(hs, 2)
    assert report.ok and report.detail == "matches the level-2 state sum on 3 colorings"


def test_specialization_window_cuts_off_when_bound_is_small():
    hs = homfly_series(builtin("unknot"), 2, 8)
    spec = specialize_to_N(hs, 2)
    one_color = Coloring(circles={0: 1})
    assert spec[one_color].window == 0
    assert spec[one_color].value == QLaurent.monomial(-2)  # v^2 lies past the window


def test_specialization_diagnostics():
    # the level-2 state sum needs x-degree 2; D = 1 cannot see it
    report = specialization_check(homfly_series(builtin("unknot"), 1, 16), 2)
    assert not report.ok
    assert "absent from the series table; the x-degree bound 1 is too small" in report.detail
    # at Q = 8 the window shrinks to zero and the exact value pokes out
    report = specialization_check(homfly_series(builtin("unknot"), 2, 8), 2)
    assert not report.ok
    assert "beyond the window 0; the truncation bound 8 is too small" in report.detail
