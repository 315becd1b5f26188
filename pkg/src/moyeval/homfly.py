"""Truncated HOMFLY generating series of positive diagrams.

For a diagram whose circuits all have rotation +1, the full (infinite)
twisted product of cycle polynomials makes sense as a series: the twist-k
factor

    1 + sum_C v**((e_v + 4k) rot C) * b**(e_b rot C) * x_C

differs from 1 only in v-exponents that grow with ``k``, so modulo
``v**(Q+1)`` only finitely many factors matter.  All series arithmetic here
happens in the cycle algebra truncated in two directions at once: total
x-degree at most ``x_degree`` and v-exponent at most ``q_order``.

The HOMFLY series of the diagram is

    G = poch(a) * poch(a^{-1})^{-1}

with ``poch(a)`` the slope-(2, -2) product and ``poch(a^{-1})`` the
slope-(2, 2) one.  Its image ``mu(G)`` in the flag algebra collects, per
flow coloring, a truncated two-variable series in ``q`` and ``a``; setting
``a = q**n`` recovers the level-``n`` evaluations within an explicit
window.  ``check_fphi`` and ``check_shift`` verify the defining equation
and the ``a -> q**2 a`` shift identity on the truncated data.

Truncation caveats are handled explicitly: products of series whose
coefficients carry negative v-exponents, and the ``shift_a`` substitution,
can move discarded terms back below the bound, so the shift identity is
checked at an enlarged internal bound and only then re-truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .diagram import Coloring, DiagramError, PlanarDiagram
from .qexact import QLaurent, TruncatedRSeries
from .qtorus import CycleAlgebra, TorusElement
from .statesum import eval_table

__all__ = [
    "TruncatedTorusSeries",
    "pochhammer_inf",
    "series_invert",
    "HomflySeries",
    "homfly_series",
    "CheckReport",
    "check_fphi",
    "check_shift",
    "SpecializedCoefficient",
    "specialize_to_N",
    "specialization_check",
]


class TruncatedTorusSeries:
    """A cycle-algebra element with truncated-series coefficients.

    Terms of total x-degree above ``x_degree`` are discarded, and every
    coefficient is a ``TruncatedRSeries`` at the common bound ``q_order``.
    """

    __slots__ = ("x_degree", "q_order", "element")

    def __init__(self, x_degree: int, q_order: int, element: TorusElement):
        kept = {}
        for exps, coeff in element.terms.items():
            if sum(exps) > x_degree:
                continue
            if coeff.q_order != q_order:
                raise ValueError(
                    f"coefficient bound {coeff.q_order} does not match series bound {q_order}"
                )
            kept[exps] = coeff
        self.x_degree = x_degree
        self.q_order = q_order
        self.element = TorusElement(element.signature, kept)

    @classmethod
    def zero(cls, ca: CycleAlgebra, x_degree: int, q_order: int) -> "TruncatedTorusSeries":
        return cls(x_degree, q_order, TorusElement.zero(ca.signature))

    @classmethod
    def one(cls, ca: CycleAlgebra, x_degree: int, q_order: int) -> "TruncatedTorusSeries":
        exps = (0,) * len(ca.signature)
        return cls(
            x_degree,
            q_order,
            TorusElement.monomial(ca.signature, exps, TruncatedRSeries.one(q_order)),
        )

    def _check_compatible(self, other: "TruncatedTorusSeries") -> None:
        if self.x_degree != other.x_degree:
            raise ValueError(f"x-degree bound mismatch: {self.x_degree} != {other.x_degree}")
        if self.q_order != other.q_order:
            raise ValueError(f"truncation bound mismatch: {self.q_order} != {other.q_order}")

    def _wrap(self, element: TorusElement) -> "TruncatedTorusSeries":
        return TruncatedTorusSeries(self.x_degree, self.q_order, element)

    def __bool__(self) -> bool:
        return bool(self.element)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedTorusSeries):
            return NotImplemented
        return (
            self.x_degree == other.x_degree
            and self.q_order == other.q_order
            and self.element == other.element
        )

    def __add__(self, other: "TruncatedTorusSeries") -> "TruncatedTorusSeries":
        if not isinstance(other, TruncatedTorusSeries):
            return NotImplemented
        self._check_compatible(other)
        return self._wrap(self.element + other.element)

    def __neg__(self) -> "TruncatedTorusSeries":
        return self._wrap(-self.element)

    def __sub__(self, other: "TruncatedTorusSeries") -> "TruncatedTorusSeries":
        if not isinstance(other, TruncatedTorusSeries):
            return NotImplemented
        self._check_compatible(other)
        return self._wrap(self.element - other.element)

    def __mul__(self, other: "TruncatedTorusSeries") -> "TruncatedTorusSeries":
        if not isinstance(other, TruncatedTorusSeries):
            return NotImplemented
        self._check_compatible(other)
        return self._wrap(self.element * other.element)

    def times_v(self, k: int) -> "TruncatedTorusSeries":
        return self._wrap(self.element.times_v(k))

    def shift_a(self, delta: int) -> "TruncatedTorusSeries":
        """Apply ``a -> q**delta * a`` to every coefficient.

        Only trustworthy when computed with enough headroom above the
        target bound; see ``check_shift``.
        """
        return self._wrap(
            TorusElement(
                self.element.signature,
                {e: c.shift_a(delta) for e, c in self.element.terms.items()},
            )
        )

    def retruncate(self, q_order: int) -> "TruncatedTorusSeries":
        element = TorusElement(
            self.element.signature,
            {e: c.retruncate(q_order) for e, c in self.element.terms.items()},
        )
        return TruncatedTorusSeries(self.x_degree, q_order, element)

    def constant_term(self) -> TruncatedRSeries:
        exps = (0,) * len(self.element.signature)
        found = self.element.terms.get(exps)
        return found if found is not None else TruncatedRSeries.zero(self.q_order)

    def coefficient(self, exps: Sequence[int]) -> TruncatedRSeries:
        found = self.element.terms.get(tuple(exps))
        return found if found is not None else TruncatedRSeries.zero(self.q_order)

    def __repr__(self) -> str:
        return (
            f"TruncatedTorusSeries(x_degree={self.x_degree}, q_order={self.q_order}, "
            f"{len(self.element.terms)} terms)"
        )


def _linear_factor(
    ca: CycleAlgebra, e_v: int, e_b: int, k: int, x_degree: int, q_order: int
) -> TruncatedTorusSeries:
    """``1 + sum_C v**((e_v+4k) rot) b**(e_b rot) x_C`` at the given bounds."""
    zero_exps = (0,) * len(ca.signature)
    terms = {zero_exps: TruncatedRSeries.one(q_order)}
    if x_degree >= 1:
        for index, rot in enumerate(ca.rots):
            coeff = TruncatedRSeries.monomial(q_order, (e_v + 4 * k) * rot, e_b * rot)
            if coeff:
                exps = [0] * len(ca.signature)
                exps[index] = 1
                terms[tuple(exps)] = coeff
    return TruncatedTorusSeries(x_degree, q_order, TorusElement(ca.signature, terms))


def _skew_margin(ca: CycleAlgebra, x_degree: int) -> int:
    """Extra v-headroom needed against normal-ordering downshifts.

    Coefficient truncation by v-exponent is only a quotient when every
    multiplication can raise v-exponents; the skew shifts of the cycle (and
    flag) algebra can lower them.  Assembling a monomial of x-degree at
    most ``x_degree`` from linear pieces applies at most ``d(d-1)/2`` pair
    shifts of at most the largest skew entry each, on the cycle and flag
    sides combined, so twice that bound (plus slack) guarantees that no
    term contributing below the target bound is ever dropped early.
    """
    s_max = max((abs(e) for row in ca.signature.skew for e in row), default=0)
    return 2 * s_max * x_degree * max(0, x_degree - 1) + 4


def _poch_inf(ca: CycleAlgebra, e_v: int, e_b: int, x_degree: int, q_order: int) -> TruncatedTorusSeries:
    """The infinite twisted product with the given slopes, mod truncation.

    Requires a positive diagram: with every rotation +1 the twist-k factor
    is congruent to 1 once ``e_v + 4k`` exceeds the bound, so the product
    stops at ``k = (q_order - e_v) // 4``.  The result is raw: callers who
    need exactness at the bound must build in margin (see ``_skew_margin``).
    """
    if not ca.cycle_set.is_positive:
        raise DiagramError(
            "infinite twisted products need a positive diagram "
            "(every circuit must have rotation +1)"
        )
    cutoff = max(0, (q_order - e_v) // 4 + 1)
    acc = TruncatedTorusSeries.one(ca, x_degree, q_order)
    for k in range(cutoff):
        acc = acc * _linear_factor(ca, e_v, e_b, k, x_degree, q_order)
    return acc


def pochhammer_inf(
    ca: CycleAlgebra, a_inverted: bool, x_degree: int, q_order: int
) -> TruncatedTorusSeries:
    """The twisted product ``poch(a)`` (or ``poch(a^{-1})`` when inverted).

    Computed with internal headroom, so every returned coefficient term is
    the true one.
    """
    work = q_order + _skew_margin(ca, x_degree)
    return _poch_inf(ca, 2, 2 if a_inverted else -2, x_degree, work).retruncate(q_order)


def series_invert(s: TruncatedTorusSeries) -> TruncatedTorusSeries:
    """Invert a series with constant term 1, modulo both truncations."""
    if s.constant_term() != TruncatedRSeries.one(s.q_order):
        raise ValueError("series is not invertible here: constant term must be exactly 1")
    signature = s.element.signature
    exps = (0,) * len(signature)
    one = TruncatedTorusSeries(
        s.x_degree,
        s.q_order,
        TorusElement.monomial(signature, exps, TruncatedRSeries.one(s.q_order)),
    )
    rest = one - s  # no constant term, so each power raises the x-degree
    out = one
    for _ in range(s.x_degree):
        out = one + rest * out
    return out


@dataclass(frozen=True)
class HomflySeries:
    """The truncated HOMFLY data of a positive diagram."""

    diagram: PlanarDiagram
    cycle_algebra: CycleAlgebra
    x_degree: int
    q_order: int
    series: TruncatedTorusSeries  # cycle side: poch(a) * poch(a^-1)^-1
    flag_series: TorusElement  # mu of the above
    table: dict  # Coloring -> TruncatedRSeries


def homfly_series(d: PlanarDiagram, x_degree: int, q_order: int) -> HomflySeries:
    """Compute the truncated HOMFLY series and its flow table.

    The whole pipeline (products, inversion, the flag substitution) runs at
    an internally enlarged v-bound and is re-truncated at the end, so every
    stored term is the true series coefficient.
    """
    ca = CycleAlgebra(d)
    work = q_order + _skew_margin(ca, x_degree)
    poch_a = _poch_inf(ca, 2, -2, x_degree, work)
    poch_ainv = _poch_inf(ca, 2, 2, x_degree, work)
    series_work = poch_a * series_invert(poch_ainv)
    flag_work = ca.mu(series_work.element)
    series = series_work.retruncate(q_order)
    flag_terms = {}
    table: dict[Coloring, TruncatedRSeries] = {}
    for exps, coeff in flag_work.terms.items():
        tight = coeff.retruncate(q_order)
        if not tight:
            continue
        flag_terms[exps] = tight
        coloring = ca.flag_algebra.flow_of_monomial(exps)
        assert coloring is not None, "cycle-algebra product produced a non-flow monomial"
        if coloring in table:
            table[coloring] = table[coloring] + tight
        else:
            table[coloring] = tight
    table = {coloring: coeff for coloring, coeff in table.items() if coeff}
    flag_series = TorusElement(flag_work.signature, flag_terms)
    return HomflySeries(d, ca, x_degree, q_order, series, flag_series, table)


@dataclass(frozen=True)
class CheckReport:
    name: str
    ok: bool
    detail: str = ""
    sub: tuple = ()

    def all_ok(self) -> bool:
        return self.ok and all(r.all_ok() for r in self.sub)


def check_fphi(hs: HomflySeries) -> CheckReport:
    """Verify ``G * poch(a^{-1}) == poch(a)`` at the stored bounds.

    Both sides are recomputed with headroom and compared after truncating
    back, so the comparison is between true coefficients.
    """
    ca = hs.cycle_algebra
    work = hs.q_order + _skew_margin(ca, hs.x_degree)
    poch_a = _poch_inf(ca, 2, -2, hs.x_degree, work)
    poch_ainv = _poch_inf(ca, 2, 2, hs.x_degree, work)
    series = poch_a * series_invert(poch_ainv)
    residual = (series * poch_ainv).retruncate(hs.q_order) - poch_a.retruncate(hs.q_order)
    ok = not residual
    if ok:
        detail = (
            f"residual vanishes at x-degree <= {hs.x_degree}, v-exponent <= {hs.q_order}"
        )
    else:
        detail = f"residual has {len(residual.element.terms)} monomials"
    return CheckReport("defining-equation", ok, detail)


def check_shift(hs: HomflySeries) -> CheckReport:
    """Verify the ``a -> q**2 a`` shift identity on the truncated series.

    Everything is recomputed at an enlarged internal bound: the shift moves
    v-exponents by twice the b-exponent (down to ``-4 * x_degree * R`` for
    maximal rotation ``R``), and the two single linear factors involved
    carry negative v-slopes, so comparisons at the target bound are only
    meaningful with that much headroom.  The two auxiliary identities peel
    one linear factor off an infinite product after re-indexing its twists.
    """
    ca = hs.cycle_algebra
    deg, bound = hs.x_degree, hs.q_order
    r_max = max((abs(r) for r in ca.rots), default=0)
    margin = 4 * deg * r_max + 2 * r_max + _skew_margin(ca, deg)
    work = bound + margin

    poch_a = _poch_inf(ca, 2, -2, deg, work)
    poch_ainv = _poch_inf(ca, 2, 2, deg, work)
    series = poch_a * series_invert(poch_ainv)
    factor_qinv = _linear_factor(ca, -2, -2, 0, deg, work)
    factor_ainv = _linear_factor(ca, 2, 2, 0, deg, work)

    sq_q_lhs = _poch_inf(ca, -2, -2, deg, work).retruncate(bound)
    sq_q_rhs = (factor_qinv * poch_a).retruncate(bound)
    sq_q = CheckReport(
        "reindex-q",
        sq_q_lhs == sq_q_rhs,
        "q-inverse product equals its first factor times the plain product",
    )

    sq_a_lhs = (factor_ainv * _poch_inf(ca, 6, 2, deg, work)).retruncate(bound)
    sq_a_rhs = poch_ainv.retruncate(bound)
    sq_a = CheckReport(
        "reindex-a",
        sq_a_lhs == sq_a_rhs,
        "a-inverse product equals its first factor times the tail product",
    )

    main_lhs = series.shift_a(2).retruncate(bound)
    main_rhs = (factor_qinv * series * factor_ainv).retruncate(bound)
    main = CheckReport(
        "conjugate",
        main_lhs == main_rhs,
        "shifted series equals the two-sided linear-factor conjugation",
    )

    ok = sq_q.ok and sq_a.ok and main.ok
    return CheckReport(
        "shift",
        ok,
        "conjugating factors are the two single linear polynomials, not their "
        f"infinite products; computed at internal bound {work} "
        f"(headroom {margin} over {bound})",
        (sq_q, sq_a, main),
    )


class SpecializedCoefficient(NamedTuple):
    value: QLaurent
    window: int  # the substitution is exact for v-exponents <= window


def specialize_to_N(hs: HomflySeries, n: int) -> dict:
    """Set ``a = q**n`` in every table entry, restricted to its safe window.

    Coefficients of the series carry b-exponents no lower than
    ``-2 * x_degree * R``; a term discarded above the v-bound can therefore
    land at most ``2 n x_degree R`` below it after substitution, which
    bounds the window where the substituted values are exact.
    """
    r_max = max((abs(r) for r in hs.cycle_algebra.rots), default=0)
    floor = -2 * hs.x_degree * r_max
    window = hs.q_order + n * min(0, floor)
    out = {}
    for coloring, coeff in hs.table.items():
        substituted = coeff.substitute_a(n)
        value = QLaurent({e: c for e, c in substituted.terms.items() if e <= window})
        out[coloring] = SpecializedCoefficient(value, window)
    return out


def _describe_coloring(coloring: Coloring) -> str:
    parts = []
    if coloring.edges:
        parts.append("edges " + ",".join(f"{k}={v}" for k, v in coloring.edges))
    if coloring.circles:
        parts.append("circles " + ",".join(f"{k}={v}" for k, v in coloring.circles))
    return " ".join(parts) or "empty"


def specialization_check(hs: HomflySeries, n: int) -> CheckReport:
    """Compare the specialized series with the level-``n`` state sum.

    Every coloring realized by the state sum must appear in the series
    table with a window wide enough to contain the exact value; every
    series coloring the state sum does not realize must specialize to zero
    within its window.
    """
    reference = eval_table(hs.diagram, n)
    specialized = specialize_to_N(hs, n)
    problems = []
    for coloring in sorted(set(reference) | set(specialized), key=Coloring.sort_key):
        exact = reference.get(coloring, QLaurent.zero())
        if coloring not in specialized:
            if exact:
                problems.append(
                    f"{_describe_coloring(coloring)}: absent from the series table; "
                    f"the x-degree bound {hs.x_degree} is too small"
                )
            continue
        value, window = specialized[coloring]
        if exact and exact.max_exponent() > window:
            problems.append(
                f"{_describe_coloring(coloring)}: exact value reaches v-exponent "
                f"{exact.max_exponent()} beyond the window {window}; "
                f"the truncation bound {hs.q_order} is too small"
            )
            continue
        if value != exact:
            problems.append(
                f"{_describe_coloring(coloring)}: series specializes to {value!r}, "
                f"state sum gives {exact!r}"
            )
    if problems:
        return CheckReport("specialize", False, "; ".join(problems))
    return CheckReport(
        "specialize",
        True,
        f"matches the level-{n} state sum on {len(reference)} colorings",
    )
