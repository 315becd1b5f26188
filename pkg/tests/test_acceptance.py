"""End-to-end acceptance suite.

Each test states one headline property of the package in its name, checks
it with exact arithmetic (no tolerances anywhere), and prints a PASS line.
Runtime limits guard against accidental blow-ups in the state enumeration
and the truncated series pipeline.
"""

import time
from itertools import product

from moyeval.cycles import CycleSet
from moyeval.diagram import Coloring, builtin
from moyeval.genseries import classical_series, generating_series_N
from moyeval.homfly import (
    check_fphi,
    check_shift,
    homfly_series,
    specialization_check,
    specialize_to_N,
)
from moyeval.qexact import QLaurent, qbinom, qmultinom
from moyeval.qtorus import CycleAlgebra, torus_mul
from moyeval.statesum import classical_eval, eval_table, moy_eval, moy_eval_alt

FIXTURES = ("unknot", "theta", "tetrahedron")


def tetra_coloring(a, b, c):
    """The tetrahedron coloring with thin colors a, b, c on its three paths."""
    return Coloring(edges={0: a + b + c, 1: a + b, 2: c, 3: a, 4: b + c, 5: b})


def test_unknot_evaluations_are_quantum_binomials():
    started = time.perf_counter()
    d = builtin("unknot")
    cs = CycleSet(d)
    for n in range(1, 7):
        for gamma in range(n + 1):
            value = moy_eval(d, Coloring(circles={0: gamma}), n, cycle_set=cs)
            assert value == qbinom(n, gamma), (n, gamma)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    print("PASS: unknot state sums equal quantum binomial coefficients (N <= 6)")


def test_tetrahedron_evaluations_are_quantum_multinomials():
    started = time.perf_counter()
    d = builtin("tetrahedron")
    cs = CycleSet(d)
    for n in range(1, 5):
        for a, b, c in product(range(n + 1), repeat=3):
            if a + b + c > n:
                continue
            value = moy_eval(d, tetra_coloring(a, b, c), n, cycle_set=cs)
            assert value == qmultinom(n, (a, b, c)), (n, a, b, c)
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    print("PASS: tetrahedron state sums equal quantum multinomial coefficients (N <= 4)")


def test_classical_convolution_counts_states_on_every_fixture():
    started = time.perf_counter()
    for name in FIXTURES:
        d = builtin(name)
        cs = CycleSet(d)
        for n in range(6):
            by_state_count = {
                coloring: classical_eval(d, coloring, n, cycle_set=cs)
                for coloring in eval_table(d, n, cycle_set=cs)
            }
            assert classical_series(d, n, cycle_set=cs) == by_state_count, (name, n)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    print("PASS: convolution of cycle indicators counts states exactly (N <= 5)")


def test_twisted_product_series_reproduces_the_state_sum_tables():
    started = time.perf_counter()
    for name in FIXTURES:
        d = builtin(name)
        ca = CycleAlgebra(d)
        for n in range(1, 5):
            series = generating_series_N(d, n, cycle_algebra=ca)
            assert series == eval_table(d, n, cycle_set=ca.cycle_set), (name, n)
            at_one = {coloring: p.evaluate_one() for coloring, p in series.items()}
            assert at_one == classical_series(d, n), (name, n)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"took {elapsed:.2f}s"
    print("PASS: finite twisted products reproduce every state-sum table (N <= 4)")


def test_both_vertex_weight_formulas_agree_on_all_colorings():
    for name in FIXTURES:
        d = builtin(name)
        cs = CycleSet(d)
        for n in range(1, 4):
            for coloring in eval_table(d, n, cycle_set=cs):
                plain = moy_eval(d, coloring, n, cycle_set=cs)
                alt = moy_eval_alt(d, coloring, n, cycle_set=cs)
                assert plain == alt, (name, n, coloring)
    print("PASS: ordered-pair and product-count vertex weights agree everywhere (N <= 3)")


def test_cycle_exchange_follows_the_computed_pairing_and_flags_flipped_signs():
    for name in FIXTURES:
        ca = CycleAlgebra(builtin(name))
        images = [ca.mu(ca.variable(i)) for i in range(len(ca.variables))]
        for i, a in enumerate(images):
            for j, b in enumerate(images):
                assert torus_mul(a, b) == torus_mul(b, a).times_v(ca.signature.skew[i][j]), \
                    (name, i, j)

    # The three nonempty tetrahedron cycles: the square and two triangles.
    ca = CycleAlgebra(builtin("tetrahedron"))
    by_edges = {tuple(sorted(c.edge_ids)): i for i, c in enumerate(ca.variables)}
    r = by_edges[(0, 1, 4, 5)]
    g = by_edges[(0, 1, 3)]
    b = by_edges[(0, 2, 4)]
    signs = tuple(ca.signature.skew[i][j] // 4 for i, j in ((r, g), (r, b), (g, b)))
    assert signs == (1, -1, -1)
    # Flipping every sign must break the exchange identity for each pair:
    # the pairing is determined, not a convention that can be negated.
    images = {k: ca.mu(ca.variable(k)) for k in (r, g, b)}
    for i, j in ((r, g), (r, b), (g, b)):
        wrong = -ca.signature.skew[i][j]
        assert torus_mul(images[i], images[j]) != \
            torus_mul(images[j], images[i]).times_v(wrong), (i, j)
    print("PASS: exchanging cycle variables costs exactly v^(4<C,C'>), and "
          "flipped pairing signs are detected")


def _commutative_closed_form(x_degree, q_order):
    """Independent model of the unknot series: plain dict arithmetic.

    Series are ``{x_power: {(v_exp, b_exp): coeff}}`` with everything past
    the two bounds dropped; all v-exponents in play are nonnegative, so
    dropping during multiplication is exact.
    """

    def normalized(series):
        out = {}
        for xd, terms in series.items():
            kept = {k: c for k, c in terms.items() if c}
            if kept:
                out[xd] = kept
        return out

    def mul(s1, s2):
        out = {}
        for x1, t1 in s1.items():
            for x2, t2 in s2.items():
                if x1 + x2 > x_degree:
                    continue
                bucket = out.setdefault(x1 + x2, {})
                for (v1, b1), c1 in t1.items():
                    for (v2, b2), c2 in t2.items():
                        if v1 + v2 > q_order:
                            continue
                        key = (v1 + v2, b1 + b2)
                        bucket[key] = bucket.get(key, 0) + c1 * c2
        return normalized(out)

    def add(s1, s2):
        out = {xd: dict(terms) for xd, terms in s1.items()}
        for xd, terms in s2.items():
            bucket = out.setdefault(xd, {})
            for key, c in terms.items():
                bucket[key] = bucket.get(key, 0) + c
        return normalized(out)

    one = {0: {(0, 0): 1}}

    def infinite_product(b_exp):
        result = one
        k = 0
        while 4 * k + 2 <= q_order:
            result = mul(result, add(one, {1: {(4 * k + 2, b_exp): 1}}))
            k += 1
        return result

    def invert(series):
        # geometric series in (1 - series), which starts at x-degree 1
        minus = {xd: {k: -c for k, c in t.items()} for xd, t in series.items()}
        difference = add(one, minus)  # 1 - series
        total, power = one, one
        for _ in range(x_degree):
            power = mul(power, difference)
            total = add(total, power)
        return total

    return mul(infinite_product(-2), invert(infinite_product(2)))


def test_defining_equation_holds_and_unknot_matches_its_closed_form():
    started = time.perf_counter()
    hs_unknot = homfly_series(builtin("unknot"), 4, 12)
    report = check_fphi(hs_unknot)
    assert report.ok, report.detail
    report = check_fphi(homfly_series(builtin("theta"), 3, 8))
    assert report.ok, report.detail

    expected = _commutative_closed_form(4, 12)
    actual = {}
    for xd in range(5):
        coeff = hs_unknot.series.coefficient((xd,))
        terms = {k: c for k, c in coeff.terms.items() if c}
        if terms:
            actual[xd] = terms
    assert actual == expected
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    print("PASS: the defining functional equation holds at truncation, and the "
          "unknot series equals its quotient-of-products closed form")


def test_shift_identity_holds_including_sub_checks():
    started = time.perf_counter()
    for name in ("unknot", "theta"):
        report = check_shift(homfly_series(builtin(name), 3, 8))
        assert report.ok, (name, report.detail)
        assert len(report.sub) == 3
        for sub in report.sub:
            assert sub.ok, (name, sub.name, sub.detail)
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    print("PASS: reindexing a by q^2 matches conjugation by the linear factors, "
          "including both reindexing sub-identities")


def test_specializing_a_recovers_every_finite_level_table():
    for name in ("unknot", "theta"):
        hs = homfly_series(builtin(name), 3, 36)
        for n in range(1, 4):
            specialized = specialize_to_N(hs, n)
            table = eval_table(builtin(name), n)
            # colorings past level n still occur in the series; they
            # specialize to the zero polynomial
            assert set(table) <= set(specialized), (name, n)
            for coloring, sc in specialized.items():
                exact = table.get(coloring, QLaurent.zero())
                # the window must cover these small polynomials entirely
                if exact != QLaurent.zero():
                    assert exact.max_exponent() <= sc.window, (name, n, coloring)
                within = QLaurent({e: c for e, c in exact.terms.items() if e <= sc.window})
                assert sc.value == within, (name, n, coloring)
            assert specialization_check(hs, n).ok, (name, n)
    print("PASS: substituting a = q^N recovers the level-N tables inside the "
          "truncation window (N <= 3)")


def test_every_evaluation_is_symmetric_nonnegative_and_counts_states():
    expected_cycle_count = {"unknot": 2, "theta": 3, "tetrahedron": 4}
    for name in FIXTURES:
        d = builtin(name)
        cs = CycleSet(d)
        assert len(cs) == expected_cycle_count[name]
        for n in range(6):
            table = eval_table(d, n, cycle_set=cs)
            for coloring, value in table.items():
                assert value.is_symmetric(), (name, n, coloring)
                assert value.is_nonnegative(), (name, n, coloring)
                assert value.in_half_powers(), (name, n, coloring)
            total = sum(classical_eval(d, c, n, cycle_set=cs) for c in table)
            assert total == len(cs) ** n, (name, n)
    print("PASS: every evaluation is symmetric, nonnegative, lives in half-integer "
          "q-powers, and state counts total |cycles|^N (N <= 5)")
