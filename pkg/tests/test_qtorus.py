"""Quantum-torus elements, flag algebras, and the cycle-to-flag map mu."""

import random

import pytest

from moyeval.diagram import Coloring, Flag, builtin
from moyeval.qexact import QLaurent, TruncatedRSeries
from moyeval.qtorus import (
    CycleAlgebra,
    FlagAlgebra,
    TorusElement,
    TorusSignature,
    torus_mul,
)

FIXTURES = ("unknot", "theta", "tetrahedron")


def small_signature():
    # two variables with u_1 u_0 = v^(-2) u_0 u_1
    return TorusSignature.from_entries(("u_0", "u_1"), {(0, 1): 2})


# -- signatures ---------------------------------------------------------------


def test_signature_validation():
    sig = small_signature()
    assert sig.skew == ((0, 2), (-2, 0))
    with pytest.raises(ValueError, match="skew matrix shape"):
        TorusSignature(("a", "b"), ((0, 1),))
    with pytest.raises(ValueError, match="not antisymmetric"):
        TorusSignature(("a", "b"), ((0, 1), (1, 0)))
    with pytest.raises(ValueError, match="diagonal skew entries must vanish"):
        TorusSignature.from_entries(("a",), {(0, 0): 1})


# -- elements and multiplication ----------------------------------------------


def test_element_basics():
    sig = small_signature()
    zero = TorusElement.zero(sig)
    a = TorusElement.monomial(sig, (1, 0), QLaurent.one())
    b = TorusElement.monomial(sig, (0, 1), QLaurent.monomial(2))
    assert zero.terms == {}
    assert (a - a) == zero
    assert a + b - b == a
    assert a.coefficient((1, 0)) == QLaurent.one()
    assert a.coefficient((9, 9)) is None  # ring zero is not known here
    assert a.scale(QLaurent.zero()) == zero
    assert a.times_v(3).coefficient((1, 0)) == QLaurent.monomial(3)


def test_skew_commutation():
    sig = small_signature()
    a = TorusElement.monomial(sig, (1, 0), QLaurent.one())
    b = TorusElement.monomial(sig, (0, 1), QLaurent.one())
    ab = torus_mul(a, b)
    ba = torus_mul(b, a)
    # u_0 u_1 is already normally ordered; the reversal picks up v^(-2)
    assert ab == TorusElement.monomial(sig, (1, 1), QLaurent.one())
    assert ba == ab.times_v(-2)


def test_powers():
    sig = small_signature()
    a = TorusElement.monomial(sig, (1, 0), QLaurent.one())
    b = TorusElement.monomial(sig, (0, 1), QLaurent.one())
    s = a + b
    assert s ** 3 == torus_mul(torus_mul(s, s), s)
    assert s ** 0 == TorusElement.monomial(sig, (0, 0), QLaurent.one())
    with pytest.raises(ValueError, match="negative powers"):
        s ** -1
    with pytest.raises(ValueError, match="zero element to the power 0"):
        TorusElement.zero(sig) ** 0


def test_associativity_against_commutative_shadow():
    # Random products in the tetrahedron cycle algebra, checked two ways:
    # associativity exactly, and the v = 1 image against plain convolution.
    ca = CycleAlgebra(builtin("tetrahedron"))
    sig = ca.signature
    rng = random.Random(20240819)

    def rand_element():
        e = TorusElement.zero(sig)
        for _ in range(rng.randrange(1, 4)):
            exps = tuple(rng.randrange(0, 3) for _ in sig.names)
            coeff = QLaurent({rng.randrange(-4, 5): rng.randrange(-3, 4)})
            e = e + TorusElement.monomial(sig, exps, coeff)
        return e

    def shadow(e):
        out = {}
        for exps, coeff in e.terms.items():
            out[exps] = out.get(exps, 0) + coeff.evaluate_one()
        return {k: c for k, c in out.items() if c}

    def shadow_mul(s1, s2):
        out = {}
        for e1, c1 in s1.items():
            for e2, c2 in s2.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return {k: c for k, c in out.items() if c}

    for _ in range(40):
        a, b, c = rand_element(), rand_element(), rand_element()
        assert torus_mul(torus_mul(a, b), c) == torus_mul(a, torus_mul(b, c))
        assert shadow(torus_mul(a, b)) == shadow_mul(shadow(a), shadow(b))


# -- flag algebras ------------------------------------------------------------


def test_flag_variable_order_and_names():
    fa = FlagAlgebra(builtin("theta"))
    assert fa.signature.names[:6] == (
        "z[0,l]", "z[0,m]", "z[0,r]", "Z[0,r]", "Z[0,m]", "Z[0,l]")
    assert fa.z_index[Flag(0, "l")] == 0
    assert fa.Z_index[Flag(0, "l")] == 5
    fa_u = FlagAlgebra(builtin("unknot"))
    assert fa_u.signature.names == ("z[circle 0]", "Z[circle 0]")
    assert fa_u.z_circle[0] == 0 and fa_u.Z_circle[0] == 1


def test_flag_commutation_relations():
    fa = FlagAlgebra(builtin("theta"))
    sig = fa.signature

    def var(index):
        exps = [0] * len(sig.names)
        exps[index] = 1
        return TorusElement.monomial(sig, tuple(exps), QLaurent.one())

    z_l, z_r = var(fa.z_index[Flag(0, "l")]), var(fa.z_index[Flag(0, "r")])
    Z_l, Z_r = var(fa.Z_index[Flag(0, "l")]), var(fa.Z_index[Flag(0, "r")])
    # within a vertex block: z_r z_l = v^(-1) z_l z_r, Z_l Z_r = v Z_r Z_l
    assert torus_mul(z_r, z_l) == torus_mul(z_l, z_r).times_v(-1)
    assert torus_mul(Z_l, Z_r) == torus_mul(Z_r, Z_l).times_v(1)
    # middle flags and cross-block pairs commute
    z_m = var(fa.z_index[Flag(0, "m")])
    for other in (z_l, z_r, Z_l, Z_r):
        assert torus_mul(z_m, other) == torus_mul(other, z_m)
    assert torus_mul(z_l, Z_r) == torus_mul(Z_r, z_l)
    # variables at different vertices commute
    w = var(fa.z_index[Flag(1, "r")])
    assert torus_mul(z_r, w) == torus_mul(w, z_r)


def test_cycle_monomial_and_flow():
    d = builtin("theta")
    fa = FlagAlgebra(d)
    ca = CycleAlgebra(d)
    for i, cycle in enumerate(ca.variables):
        img = ca.mu(ca.variable(i))
        assert img == fa.cycle_monomial(cycle, QLaurent.one())
        (exps,) = img.terms
        assert img.terms[exps] == QLaurent.one()
        assert fa.flow_of_monomial(exps) == cycle.indicator_coloring()
        # both variables of every flag on the cycle appear exactly once
        for flag in cycle.halfedges:
            assert exps[fa.z_index[flag]] == 1
            assert exps[fa.Z_index[flag]] == 1


def test_flow_of_monomial_circle():
    fa = FlagAlgebra(builtin("unknot"))
    assert fa.flow_of_monomial((3, 3)) == Coloring(circles={0: 3})
    assert fa.flow_of_monomial((2, 3)) is None
    assert fa.flow_of_monomial((0, 0)) == Coloring()


def test_flow_of_monomial_rejects_unbalanced_edges():
    d = builtin("theta")
    fa = FlagAlgebra(d)
    ca = CycleAlgebra(d)
    (exps,) = ca.mu(ca.variable(0)).terms
    bumped = list(exps)
    bumped[fa.z_index[Flag(0, "l")]] += 1
    assert fa.flow_of_monomial(tuple(bumped)) is None


def test_flow_of_product_adds_indicators():
    ca = CycleAlgebra(builtin("tetrahedron"))
    keys = [tuple(sorted(c.edge_ids)) for c in ca.variables]
    r, g = keys.index((0, 1, 4, 5)), keys.index((0, 1, 3))
    product = torus_mul(ca.mu(ca.variable(r)), ca.mu(ca.variable(g)))
    (exps,) = product.terms
    flow = ca.flag_algebra.flow_of_monomial(exps)
    assert flow == Coloring(edges={0: 2, 1: 2, 3: 1, 4: 1, 5: 1})


# -- the map mu ---------------------------------------------------------------


def test_mu_is_multiplicative():
    for name in FIXTURES:
        ca = CycleAlgebra(builtin(name))
        n = len(ca.variables)
        for i in range(n):
            for j in range(n):
                inside = ca.mu(torus_mul(ca.variable(i), ca.variable(j)))
                outside = torus_mul(ca.mu(ca.variable(i)), ca.mu(ca.variable(j)))
                assert inside == outside


def test_mu_exchange_follows_skew():
    for name in FIXTURES:
        ca = CycleAlgebra(builtin(name))
        images = [ca.mu(ca.variable(i)) for i in range(len(ca.variables))]
        for i, a in enumerate(images):
            for j, b in enumerate(images):
                assert torus_mul(a, b) == torus_mul(b, a).times_v(ca.signature.skew[i][j])


def test_mu_respects_linearity_and_units():
    ca = CycleAlgebra(builtin("theta"))
    fa_sig = ca.flag_algebra.signature
    unit = TorusElement.monomial(fa_sig, (0,) * len(fa_sig.names), QLaurent.one())
    assert ca.mu(ca.one()) == unit
    e = ca.variable(0, QLaurent.monomial(2)) + ca.variable(1)
    assert ca.mu(e) == ca.mu(ca.variable(0)).times_v(2) + ca.mu(ca.variable(1))


def test_mu_rejects_foreign_elements():
    ca_theta = CycleAlgebra(builtin("theta"))
    ca_tet = CycleAlgebra(builtin("tetrahedron"))
    with pytest.raises(ValueError, match="does not belong to this cycle algebra"):
        ca_theta.mu(ca_tet.variable(0))


def test_mu_image_cache_keeps_coefficient_rings_apart():
    # the same algebra serves exact Laurent and truncated coefficients in turn
    ca = CycleAlgebra(builtin("theta"))
    plain = ca.mu(ca.variable(0))
    truncated = ca.mu(ca.variable(0, TruncatedRSeries.one(6)))
    again = ca.mu(ca.variable(0))
    (exps,) = plain.terms
    assert plain.terms[exps] == QLaurent.one()
    assert truncated.terms[exps] == TruncatedRSeries.one(6)
    assert isinstance(truncated.terms[exps], TruncatedRSeries)
    assert again == plain
    other = ca.mu(ca.variable(0, TruncatedRSeries.one(4)))
    assert other.terms[exps].q_order == 4
