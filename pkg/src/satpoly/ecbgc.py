"""2-3 edge-constrained bipartite graph coloring.

An instance is a bipartite graph with side U colored from {1, 2} and side
V from {1, 2, 3}; each edge carries a table of permitted color pairs.
Colorings biject with integral vertices of the block polytope on the
``|U| x |V|`` grid (``color(u_i) = row_i + 1``, ``color(v_j) = col_j + 1``),
so the permitted tables become a 0/1 objective whose maximum hits the edge
count exactly when a valid coloring exists.

The polynomial subclass: every V-vertex owns a pair of its colors whose
permitted/forbidden pattern is linked across the two U-colors on all
incident edges (a biconditional per edge).  Instances in the subclass
yield column-balanced objectives, after inserting a ``-1`` next to any
edge that permits exactly one of the four linked combinations (zero
balancing), and are solved by integer recognition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from satpoly.blockpoint import BlockPoint, ObjectiveVector
from satpoly.errors import BudgetError, InputError, SubclassError
from satpoly.rational import Rational
from satpoly.recognition import pair_balances_column, recognize_satp
from satpoly.reductions import Cnf3Formula, objective_x3sat
from satpoly.vertices import DEFAULT_CODE_BUDGET

#: pc tables are indexed [u_color][v_color], 0-based: pc[s][k] for
#: s in {0,1} (U side) and k in {0,1,2} (V side); True means permitted.
PcTable = tuple[tuple[bool, bool, bool], tuple[bool, bool, bool]]


@dataclass(frozen=True)
class EcbgcInstance:
    u_count: int
    v_count: int
    edges: tuple[tuple[int, int, PcTable], ...]  # (i, j) 1-based

    def __post_init__(self):
        seen = set()
        for i, j, _ in self.edges:
            if not (1 <= i <= self.u_count and 1 <= j <= self.v_count):
                raise InputError(f"edge ({i},{j}) out of range")
            if (i, j) in seen:
                raise InputError(f"duplicate edge ({i},{j})")
            seen.add((i, j))

    def edge_map(self) -> dict[tuple[int, int], PcTable]:
        return {(i, j): pc for i, j, pc in self.edges}


@dataclass(frozen=True)
class Coloring:
    u_colors: tuple[int, ...]  # values in {1, 2}
    v_colors: tuple[int, ...]  # values in {1, 2, 3}


def coloring_is_valid(inst: EcbgcInstance, coloring: Coloring) -> bool:
    if len(coloring.u_colors) != inst.u_count or len(coloring.v_colors) != inst.v_count:
        raise InputError("coloring has wrong lengths")
    for i, j, pc in inst.edges:
        if not pc[coloring.u_colors[i - 1] - 1][coloring.v_colors[j - 1] - 1]:
            return False
    return True


def parse_ecbgc(text: str) -> EcbgcInstance:
    """Parse the instance format: header ``ecbgc m n`` then ``edge i j : <6 flags>``.

    The six +/- flags run over the U color first, V color second:
    positions 1..3 are (u=1, v=1..3), positions 4..6 are (u=2, v=1..3).
    """
    header = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "ecbgc":
            if len(tokens) != 3:
                raise InputError(f"bad header: {line!r}")
            header = (int(tokens[1]), int(tokens[2]))
        elif tokens[0] == "edge":
            if header is None:
                raise InputError("edge line before the header")
            if len(tokens) != 5 or tokens[3] != ":":
                raise InputError(f"bad edge line: {line!r}")
            i, j = int(tokens[1]), int(tokens[2])
            flags = tokens[4]
            if len(flags) != 6 or any(ch not in "+-" for ch in flags):
                raise InputError(f"expected six +/- flags: {line!r}")
            pc = (
                tuple(ch == "+" for ch in flags[:3]),
                tuple(ch == "+" for ch in flags[3:]),
            )
            edges.append((i, j, pc))
        else:
            raise InputError(f"unknown line kind {tokens[0]!r}")
    if header is None:
        raise InputError("missing 'ecbgc' header")
    return EcbgcInstance(header[0], header[1], tuple(edges))


def format_ecbgc(inst: EcbgcInstance) -> str:
    lines = [f"ecbgc {inst.u_count} {inst.v_count}"]
    for i, j, pc in inst.edges:
        flags = "".join("+" if pc[s][k] else "-" for s in range(2) for k in range(3))
        lines.append(f"edge {i} {j} : {flags}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConditionCheck:
    """Outcome of the subclass test: pairs per V-vertex, or a violator."""

    pairs: Optional[tuple[tuple[int, int], ...]]  # (a_j, b_j), 1-based colors
    violating: Optional[int]  # 1-based V index when the test fails

    @property
    def ok(self) -> bool:
        return self.pairs is not None


_VPAIRS = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))


def _pair_ok_for_edge(pc: PcTable, a: int, b: int) -> bool:
    left = pc[0][a - 1] and pc[1][b - 1]
    right = pc[1][a - 1] and pc[0][b - 1]
    return left == right


def check_condition(inst: EcbgcInstance) -> ConditionCheck:
    """Find, per V-vertex, a color pair linking both U-colors on all edges.

    For each ``j`` the lexicographically smallest pair ``(a_j, b_j)`` with
    ``pc(i,j,a_j,1) = pc(i,j,b_j,2) = '+'  <=>  pc(i,j,a_j,2) = pc(i,j,b_j,1) = '+'``
    on every incident edge; failure names the first vertex without one.
    """
    by_vertex: dict[int, list[PcTable]] = {}
    for i, j, pc in inst.edges:
        by_vertex.setdefault(j, []).append(pc)
    pairs = []
    for j in range(1, inst.v_count + 1):
        tables = by_vertex.get(j, [])
        for a, b in _VPAIRS:
            if all(_pair_ok_for_edge(pc, a, b) for pc in tables):
                pairs.append((a, b))
                break
        else:
            return ConditionCheck(pairs=None, violating=j)
    return ConditionCheck(pairs=tuple(pairs), violating=None)


def objective_from_instance(
    inst: EcbgcInstance, pairs: tuple[tuple[int, int], ...]
) -> ObjectiveVector:
    """0/1 objective from the permitted tables, with zero balancing.

    Cell ``(k, s)`` of block ``(i, j)`` is 1 when edge (i, j) permits
    U-color s with V-color k.  When an edge permits exactly one of the
    four combinations built from ``(a_j, b_j)``, the diagonally opposite
    cell gets -1 so the column stays balanced.  Non-edges contribute
    zero blocks, which are balanced vacuously.
    """
    if len(pairs) != inst.v_count:
        raise InputError("one pair per V-vertex required")
    one = Fraction(1)
    c = BlockPoint.zeros(inst.u_count, inst.v_count)
    for i, j, pc in inst.edges:
        if not _pair_ok_for_edge(pc, *pairs[j - 1]):
            raise InputError(f"edge ({i},{j}) violates the subclass condition")
        blk = c.cells[i - 1][j - 1]
        for s in range(2):
            for k in range(3):
                if pc[s][k]:
                    blk[k][s] = one
        a, b = pairs[j - 1]
        quad = [(a - 1, 0), (a - 1, 1), (b - 1, 0), (b - 1, 1)]
        permitted = [(k, s) for k, s in quad if pc[s][k]]
        if len(permitted) == 1:
            k, s = permitted[0]
            partner_k = (b - 1) if k == a - 1 else (a - 1)
            blk[partner_k][1 - s] = -one
    for j in range(inst.v_count):
        a, b = pairs[j]
        if not pair_balances_column(c, j, a, b):  # pragma: no cover
            raise InputError("zero balancing failed to balance a column")
    return c


def solve_ecbgc(inst: EcbgcInstance) -> Optional[Coloring]:
    """Polynomial solver for subclass instances, via integer recognition.

    A coloring exists iff the recognition answer is positive with optimum
    equal to the edge count; the witness vertex decodes to the coloring,
    which is validated against every edge table before being returned.
    Instances outside the subclass are refused.
    """
    cond = check_condition(inst)
    if not cond.ok:
        raise SubclassError(
            f"V-vertex {cond.violating} admits no linked color pair"
        )
    c = objective_from_instance(inst, cond.pairs)
    outcome = recognize_satp(c, inst.u_count, inst.v_count)
    if not outcome.answer or outcome.lp_value != len(inst.edges):
        return None
    code = outcome.witness
    coloring = Coloring(
        tuple(r + 1 for r in code.row), tuple(col + 1 for col in code.col)
    )
    if not coloring_is_valid(inst, coloring):  # pragma: no cover - theory guard
        raise InputError("witness decoded to an invalid coloring")
    return coloring


def brute_force_coloring(
    inst: EcbgcInstance, budget: int = DEFAULT_CODE_BUDGET
) -> Optional[Coloring]:
    """First valid coloring in lexicographic order, or None."""
    count = (2**inst.u_count) * (3**inst.v_count)
    if count > budget:
        raise BudgetError(f"{count} colorings exceed budget {budget}")
    emap = inst.edge_map()
    for u in itertools.product((1, 2), repeat=inst.u_count):
        for v in itertools.product((1, 2, 3), repeat=inst.v_count):
            if all(pc[u[i - 1] - 1][v[j - 1] - 1] for (i, j), pc in emap.items()):
                return Coloring(u, v)
    return None


def reduce_x3sat_to_ecbgc(formula: Cnf3Formula) -> EcbgcInstance:
    """Exactly-one 3-SAT as edge-constrained coloring.

    One edge per variable/clause incidence; the permitted table of edge
    (i, j) marks the cells where the exactly-one objective scores, so
    colorability coincides with exactly-one satisfiability.  A clause
    repeating a variable yields a single edge whose table is the union of
    the per-place patterns.
    """
    w = objective_x3sat(formula)
    edges = []
    for i in range(formula.var_count):
        for j in range(formula.clause_count):
            blk = w.cells[i][j]
            if all(blk[k][l] == 0 for k in range(3) for l in range(2)):
                continue
            pc = (
                tuple(blk[k][0] == 1 for k in range(3)),
                tuple(blk[k][1] == 1 for k in range(3)),
            )
            edges.append((i + 1, j + 1, pc))
    return EcbgcInstance(formula.var_count, formula.clause_count, tuple(edges))


def scale_edge_weights(
    c: ObjectiveVector, inst: EcbgcInstance, weights: dict[tuple[int, int], Rational]
) -> ObjectiveVector:
    """Scale each edge's objective block by a positive weight.

    Uniform positive scaling of a block preserves the balance identity, so
    weighted instances stay inside the tractable objective class.
    """
    out = c.copy()
    for (i, j), weight in weights.items():
        weight = Fraction(weight)
        if weight <= 0:
            raise InputError("edge weights must be positive")
        blk = out.cells[i - 1][j - 1]
        for k in range(3):
            for l in range(2):
                if blk[k][l]:
                    blk[k][l] *= weight
    return out
