"""State-sum evaluation of colored MOY graphs.

Fix a level ``N``.  The ``N`` strand labels are the half-integers
``-(N-1)/2, ..., (N-1)/2``; internally they are doubled so that everything
stays an integer.  A *state* assigns one cycle of the diagram to each
label.  A state contributes the monomial ``v**E`` where

    E = 2 * sum_labels (doubled label) * rot(assigned cycle)
        + sum_vertices (R - L),

and at a vertex ``L`` counts pairs of labels ``(s, t)`` with ``s`` on the
left flag, ``t`` on the right flag and ``s > t``, while ``R`` counts those
with ``s < t``.  Summing over all states whose accumulated edge/circle
multiplicities match a given coloring yields the evaluation of that
colored diagram; it is always a Laurent polynomial in ``v**2``, i.e. in
half-integer powers of ``q``.

``moy_eval_alt`` uses the equivalent vertex exponent
``|left| * |right| - 2L`` instead of ``R - L``; the two agree because no
label can sit on both flags of one vertex.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .cycles import CycleSet
from .diagram import Coloring, DiagramError, PlanarDiagram, validate_coloring
from .qexact import QLaurent

__all__ = [
    "doubled_labels",
    "state_flow",
    "state_exponent",
    "vertex_weight_exponent",
    "moy_eval",
    "moy_eval_alt",
    "classical_eval",
    "eval_table",
]


def doubled_labels(n: int) -> list[int]:
    """Twice the strand labels at level ``n``: ``[-(n-1), -(n-3), ..., n-1]``."""
    return [2 * i - (n - 1) for i in range(n)]


class _Space:
    """Per-diagram tables that make state enumeration cheap."""

    def __init__(self, d: PlanarDiagram, cycle_set: CycleSet | None = None):
        self.diagram = d
        self.cycles = cycle_set or CycleSet(d)
        self.edge_ids = [e.id for e in d.edges]
        self.circle_ids = [c.id for c in d.circles]
        self.edge_sets = [cycle.edge_ids for cycle in self.cycles]
        self.circle_sets = [cycle.circle_ids for cycle in self.cycles]
        self.rots = [cycle.rot for cycle in self.cycles]
        self.left_at = []  # per cycle: vertices whose l flag the cycle holds
        self.right_at = []
        for cycle in self.cycles:
            self.left_at.append(frozenset(v for v, role in cycle.halfedges if role == "l"))
            self.right_at.append(frozenset(v for v, role in cycle.halfedges if role == "r"))
        self.vertex_ids = [v.id for v in d.vertices]


def state_flow(cycle_set: CycleSet, state: Sequence[int]) -> Coloring:
    """The coloring accumulated by a state (edge and circle multiplicities)."""
    edges: dict[int, int] = {}
    circles: dict[int, int] = {}
    for index in state:
        cycle = cycle_set.cycles[index]
        for e in cycle.edge_ids:
            edges[e] = edges.get(e, 0) + 1
        for c in cycle.circle_ids:
            circles[c] = circles.get(c, 0) + 1
    return Coloring(edges=edges, circles=circles)


def _vertex_exponent(space: _Space, vertex_id: int, state: Sequence[int], labels: Sequence[int], alt: bool) -> int:
    left = [labels[pos] for pos, ci in enumerate(state) if vertex_id in space.left_at[ci]]
    right = [labels[pos] for pos, ci in enumerate(state) if vertex_id in space.right_at[ci]]
    lower = sum(1 for s in left for t in right if s > t)
    if alt:
        return len(left) * len(right) - 2 * lower
    upper = sum(1 for s in left for t in right if s < t)
    return upper - lower


def vertex_weight_exponent(
    d: PlanarDiagram,
    vertex_id: int,
    state: Sequence[int],
    n: int,
    *,
    alt: bool = False,
    cycle_set: CycleSet | None = None,
) -> int:
    """The v-exponent a single vertex contributes to a state's weight."""
    space = _Space(d, cycle_set)
    if vertex_id not in d.vertex_by_id:
        raise DiagramError(f"no vertex with id {vertex_id}")
    return _vertex_exponent(space, vertex_id, state, doubled_labels(n), alt)


def state_exponent(
    d: PlanarDiagram,
    state: Sequence[int],
    n: int,
    *,
    alt: bool = False,
    cycle_set: CycleSet | None = None,
) -> int:
    """Total v-exponent of one state: rotation part plus vertex parts."""
    space = _Space(d, cycle_set)
    labels = doubled_labels(n)
    return _state_exponent(space, state, labels, alt)


def _state_exponent(space: _Space, state: Sequence[int], labels: Sequence[int], alt: bool) -> int:
    total = 2 * sum(labels[pos] * space.rots[ci] for pos, ci in enumerate(state))
    for vertex_id in space.vertex_ids:
        total += _vertex_exponent(space, vertex_id, state, labels, alt)
    return total


def eval_table(
    d: PlanarDiagram,
    n: int,
    *,
    alt: bool = False,
    cycle_set: CycleSet | None = None,
) -> dict[Coloring, QLaurent]:
    """Evaluations of all colorings realized at level ``n``, by state sum."""
    space = _Space(d, cycle_set)
    labels = doubled_labels(n)
    table: dict[Coloring, dict[int, int]] = {}
    for state in itertools.product(range(len(space.cycles)), repeat=n):
        coloring = state_flow(space.cycles, state)
        exponent = _state_exponent(space, state, labels, alt)
        bucket = table.setdefault(coloring, {})
        bucket[exponent] = bucket.get(exponent, 0) + 1
    return {coloring: QLaurent(counts) for coloring, counts in table.items()}


def moy_eval(
    d: PlanarDiagram,
    coloring: Coloring,
    n: int,
    *,
    alt: bool = False,
    cycle_set: CycleSet | None = None,
) -> QLaurent:
    """Evaluate one colored diagram at level ``n``.

    The coloring must satisfy flow conservation; violations raise
    ``DiagramError``.  Conserved colorings that no state realizes (for
    instance colors larger than ``n``) evaluate to zero.
    """
    violations = validate_coloring(d, coloring)
    if violations:
        where = ", ".join(
            f"vertex {v.vertex} ({v.side_sum} != {v.middle})" for v in violations
        )
        raise DiagramError(f"coloring violates flow conservation at {where}")
    space = _Space(d, cycle_set)
    labels = doubled_labels(n)
    counts: dict[int, int] = {}
    for state in itertools.product(range(len(space.cycles)), repeat=n):
        if state_flow(space.cycles, state) != coloring:
            continue
        exponent = _state_exponent(space, state, labels, alt)
        counts[exponent] = counts.get(exponent, 0) + 1
    return QLaurent(counts)


def moy_eval_alt(
    d: PlanarDiagram,
    coloring: Coloring,
    n: int,
    *,
    cycle_set: CycleSet | None = None,
) -> QLaurent:
    """Evaluate with the product-count vertex exponent ``|l||r| - 2L``."""
    return moy_eval(d, coloring, n, alt=True, cycle_set=cycle_set)


def classical_eval(d: PlanarDiagram, coloring: Coloring, n: int, *, cycle_set: CycleSet | None = None) -> int:
    """The number of states realizing a coloring (the ``q = 1`` evaluation)."""
    return moy_eval(d, coloring, n, cycle_set=cycle_set).evaluate_one()
