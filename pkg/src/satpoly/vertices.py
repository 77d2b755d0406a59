"""Integral vertices, 1-skeleton analysis, and vertex machinery.

Integral vertices of the block polytope are zero-one points with exactly
one unit per block; they biject with codes ``(row, col)`` where ``row`` is
a 0/1 vector of length m and ``col`` a 0/1/2 vector of length n.  The unit
of block ``(i, j)`` sits at cell ``(col_j + 1, row_i + 1)`` (1-based).

Vertex verification is algebraic: a feasible point is a vertex exactly
when the constraints tight at it pin it down uniquely (tight-row rank
equals the variable count).  Edges are faces of dimension one.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from satpoly.blockpoint import BlockPoint
from satpoly.builders import build_satp_lp
from satpoly.errors import BudgetError, InputError, InternalInvariantError, NotAVertexError
from satpoly.linsys import LinearSystem, _solve_equalities, rank, rank_at_most
from satpoly.rational import Rational

DEFAULT_CODE_BUDGET = 10**6
DEFAULT_LP_VERTEX_BUDGET = 24


@dataclass(frozen=True, order=True)
class VertexCode:
    """Integral-vertex code: ``row`` over {0,1}, ``col`` over {0,1,2}."""

    row: tuple[int, ...]
    col: tuple[int, ...]

    def __post_init__(self):
        if not all(r in (0, 1) for r in self.row):
            raise InputError("row entries must be 0 or 1")
        if not all(c in (0, 1, 2) for c in self.col):
            raise InputError("col entries must be 0, 1 or 2")

    @property
    def m(self) -> int:
        return len(self.row)

    @property
    def n(self) -> int:
        return len(self.col)

    def __str__(self) -> str:
        return "".join(map(str, self.row)) + ":" + "".join(map(str, self.col))

    @staticmethod
    def parse(text: str) -> "VertexCode":
        parts = text.strip().split(":")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise InputError(f"bad vertex code {text!r}; expected ROW:COL digits")
        try:
            row = tuple(int(ch) for ch in parts[0])
            col = tuple(int(ch) for ch in parts[1])
        except ValueError as exc:
            raise InputError(f"bad vertex code {text!r}") from exc
        return VertexCode(row, col)


def code_to_point(code: VertexCode) -> BlockPoint:
    """Zero-one point with one unit per block, at cell (col_j+1, row_i+1)."""
    p = BlockPoint.zeros(code.m, code.n)
    one = Fraction(1)
    for i, r in enumerate(code.row):
        for j, c in enumerate(code.col):
            p.cells[i][j][c][r] = one
    return p


def point_to_code(p: BlockPoint) -> VertexCode:
    """Inverse of :func:`code_to_point`; rejects non-vertex points."""
    units: list[list[tuple[int, int]]] = []
    for i in range(p.m):
        row_units = []
        for j in range(p.n):
            found = None
            for k in range(3):
                for l in range(2):
                    v = p.cells[i][j][k][l]
                    if v == 0:
                        continue
                    if v != 1 or found is not None:
                        raise NotAVertexError(
                            f"block ({i + 1},{j + 1}) is not a unit block"
                        )
                    found = (k, l)
            if found is None:
                raise NotAVertexError(f"block ({i + 1},{j + 1}) is all zero")
            row_units.append(found)
        units.append(row_units)
    row = tuple(units[i][0][1] for i in range(p.m))
    col = tuple(units[0][j][0] for j in range(p.n))
    for i in range(p.m):
        for j in range(p.n):
            if units[i][j] != (col[j], row[i]):
                raise NotAVertexError(
                    f"block ({i + 1},{j + 1}) is inconsistent with row/col codes"
                )
    return VertexCode(row, col)


def enumerate_integral_vertices(
    m: int, n: int, budget: int = DEFAULT_CODE_BUDGET
) -> list[VertexCode]:
    """All ``2^m 3^n`` codes in lexicographic order, guarded by a budget."""
    count = (2**m) * (3**n)
    if count > budget:
        raise BudgetError(f"{count} codes exceed budget {budget}")
    out = []
    for row in itertools.product((0, 1), repeat=m):
        for col in itertools.product((0, 1, 2), repeat=n):
            out.append(VertexCode(row, col))
    return out


def adjacent(u: VertexCode, v: VertexCode) -> bool:
    """1-skeleton adjacency of two integral vertices.

    Adjacent iff the codes differ in both vectors, or in exactly one
    coordinate of one vector while the other vector agrees.
    """
    if (u.m, u.n) != (v.m, v.n):
        raise InputError("codes have different grid shapes")
    if u == v:
        raise InputError("adjacency is defined for distinct vertices")
    row_diff = sum(1 for a, b in zip(u.row, v.row) if a != b)
    col_diff = sum(1 for a, b in zip(u.col, v.col) if a != b)
    if row_diff and col_diff:
        return True
    if col_diff == 0 and row_diff == 1:
        return True
    if row_diff == 0 and col_diff == 1:
        return True
    return False


@dataclass
class SkeletonGraph:
    """Vertex codes plus a symmetric adjacency matrix (no self-loops)."""

    codes: list[VertexCode]
    adjacency: list[list[bool]]

    def degree(self, idx: int) -> int:
        return sum(self.adjacency[idx])

    def diameter(self) -> int:
        """Exact diameter by BFS from every vertex."""
        size = len(self.codes)
        best = 0
        for start in range(size):
            dist = [-1] * size
            dist[start] = 0
            queue = deque([start])
            while queue:
                cur = queue.popleft()
                for nxt, edge in enumerate(self.adjacency[cur]):
                    if edge and dist[nxt] < 0:
                        dist[nxt] = dist[cur] + 1
                        queue.append(nxt)
            ecc = max(dist)
            if min(dist) < 0:
                raise InternalInvariantError("skeleton graph is disconnected")
            best = max(best, ecc)
        return best


def skeleton(m: int, n: int, budget: int = DEFAULT_CODE_BUDGET) -> SkeletonGraph:
    """Full 1-skeleton over all integral vertices."""
    codes = enumerate_integral_vertices(m, n, budget=budget)
    size = len(codes)
    adj = [[False] * size for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            if adjacent(codes[a], codes[b]):
                adj[a][b] = adj[b][a] = True
    return SkeletonGraph(codes, adj)


def construct_clique(m: int, n: int) -> list[VertexCode]:
    """A clique of size ``2^min(m,n)`` in the 1-skeleton.

    Codes agree between row and col on the first ``min(m, n)`` coordinates
    (cols restricted to {0,1}) and are zero elsewhere; any two of them
    differ in both vectors, hence are pairwise adjacent.
    """
    p = min(m, n)
    out = []
    for bits in itertools.product((0, 1), repeat=p):
        row = tuple(bits) + (0,) * (m - p)
        col = tuple(bits) + (0,) * (n - p)
        out.append(VertexCode(row, col))
    return out


# ---------------------------------------------------------------------------
# Fractional vertex with denominator n+1
# ---------------------------------------------------------------------------


def fractional_vertex(n: int) -> BlockPoint:
    """A fractional vertex of the square relaxation with denominator n+1.

    Every coordinate is an integer multiple of ``1/(n+1)`` and the minimum
    positive coordinate equals exactly ``1/(n+1)``.  The support pattern:
    diagonal blocks load cells (1,1),(2,1),(3,2); superdiagonal blocks load
    (1,1),(2,2),(3,1); column j additionally hosts two compact blocks in
    rows 2j-1 and 2j loading (1,1),(2,2),(3,2); the first column's last two
    rows carry their own closing patterns; every remaining block is a
    filler whose values are fixed by the row/column sum profiles.

    The result is validated (feasibility plus uniqueness of the tight
    system) before being returned.  Requires ``n >= 4``: the closing
    patterns need the last two block rows to differ from the first two.
    """
    if n < 4:
        raise InputError("fractional vertex construction needs n >= 4")
    x = Fraction(1, n + 1)

    def r1(j: int) -> Fraction:  # 1-based column, top-row sum
        return (n // 2) * x if j == 1 else (n + 1 - j) * x

    def r2(j: int) -> Fraction:
        return ((n + 1) // 2) * x if j == 1 else (j // 2) * x

    def r3(j: int) -> Fraction:
        return x if j == 1 else ((j + 1) // 2) * x

    p = BlockPoint.zeros(n, n)
    for i1 in range(1, n + 1):
        for j1 in range(1, n + 1):
            blk = p.cells[i1 - 1][j1 - 1]
            if j1 == 1 and i1 == n - 1:
                blk[0][1] = r1(j1)
                blk[1][0] = r2(j1)
                blk[2][0] = r3(j1)
            elif j1 == 1 and i1 == n:
                blk[0][0] = r1(j1)
                blk[1][1] = r2(j1)
                blk[2][0] = r3(j1)
            elif i1 == j1:
                blk[0][0] = r1(j1)
                blk[1][0] = r2(j1)
                blk[2][1] = r3(j1)
            elif j1 == i1 + 1:
                blk[0][0] = r1(j1)
                blk[1][1] = r2(j1)
                blk[2][0] = r3(j1)
            elif j1 >= 2 and i1 in (2 * j1 - 1, 2 * j1):
                blk[0][0] = r1(j1)
                blk[1][1] = r2(j1)
                blk[2][1] = r3(j1)
            elif i1 < j1:
                v = ((i1 + 1) // 2) * x
                blk[0][0] = r1(j1)
                blk[1][0] = r2(j1)
                blk[2][0] = r3(j1) - v
                blk[2][1] = v
            else:
                y = ((i1 + 1) // 2) * x - r3(j1)
                blk[0][0] = r1(j1) - y
                blk[0][1] = y
                blk[1][0] = r2(j1)
                blk[2][1] = r3(j1)

    sys = build_satp_lp(n, n)
    flat = p.flat()
    if not sys.is_feasible(flat):
        raise InternalInvariantError("constructed fractional point is infeasible")
    if not verify_vertex(p, sys):
        raise InternalInvariantError("constructed fractional point is not a vertex")
    return p


# ---------------------------------------------------------------------------
# Algebraic vertex and edge tests
# ---------------------------------------------------------------------------


def verify_vertex(p: BlockPoint | list[Rational], sys: LinearSystem) -> bool:
    """True iff the constraints tight at ``p`` determine it uniquely.

    ``p`` must be feasible.  The tight subsystem collects all equality
    rows, the inequality rows met with equality, and the nonnegativities
    active at zero; ``p`` is a vertex exactly when that subsystem has rank
    equal to the variable count.
    """
    flat = p.flat() if isinstance(p, BlockPoint) else list(p)
    if not sys.is_feasible(flat):
        raise InputError("point is not feasible for the system")
    tight = sys.tight_rows(flat)
    rows = [coeffs for coeffs, _ in tight.eq_rows]
    return rank(rows) == sys.var_count


def is_edge(
    sys: LinearSystem, p: BlockPoint | list[Rational], q: BlockPoint | list[Rational]
) -> bool:
    """True iff the minimal face containing two vertices is a segment.

    Both points must be distinct vertices of ``sys``.  The constraints
    tight at both span a solution space containing the line through them;
    the pair is an edge exactly when that space has dimension one.
    """
    pf = p.flat() if isinstance(p, BlockPoint) else list(p)
    qf = q.flat() if isinstance(q, BlockPoint) else list(q)
    if pf == qf:
        raise InputError("edge test needs two distinct vertices")
    if not verify_vertex(p, sys) or not verify_vertex(q, sys):
        raise InputError("edge test inputs must be vertices")
    rows: list[list[Rational]] = [list(c) for c, _ in sys.eq_rows]
    for coeffs, rhs in sys.ineq_rows:
        if _dot(coeffs, pf) == rhs and _dot(coeffs, qf) == rhs:
            rows.append(list(coeffs))
    zero = Fraction(0)
    for v, flag in enumerate(sys.nonneg):
        if flag and pf[v] == 0 and qf[v] == 0:
            unit = [zero] * sys.var_count
            unit[v] = Fraction(1)
            rows.append(unit)
    # Both vertices satisfy every collected row, so the rank is at most
    # var_count - 1; equality means the face is one-dimensional.
    return rank_at_most(rows, sys.var_count - 1) == sys.var_count - 1


def _dot(coeffs, point):
    total = Fraction(0)
    for c, x in zip(coeffs, point):
        if c:
            total += c * x
    return total


# ---------------------------------------------------------------------------
# Exhaustive LP-vertex enumeration (tiny systems)
# ---------------------------------------------------------------------------


_UNDECIDED, _EXCLUDED, _INCLUDED = 0, 1, 2


def enumerate_lp_vertices(
    sys: LinearSystem, budget: int = DEFAULT_LP_VERTEX_BUDGET
) -> list[list[Rational]]:
    """All vertices of the polyhedron, by exhaustive tight-set search.

    Inequalities get slack columns so the search runs over a standard-form
    system, then a depth-first scan decides each sign-constrained column
    as zero or in the support.  Branches die early three ways: support
    columns must stay linearly independent (a dependent support never
    defines a vertex); a row whose support is entirely zeroed with a
    nonzero right side is infeasible; and a row with a single undecided
    support column left forces that column's value, which propagates as a
    forced decision (with a sign check) instead of a branch.  Surviving
    leaves are solved exactly; feasible unique solutions are vertices.
    Results are deduplicated and sorted.

    Gated by ``budget`` on the structural variable count.
    """
    if sys.var_count > budget:
        raise BudgetError(
            f"{sys.var_count} variables exceed enumeration budget {budget}"
        )

    n_struct = sys.var_count
    n_slack = len(sys.ineq_rows)
    total = n_struct + n_slack
    zero = Fraction(0)

    aug: list[list[int]] = []
    for coeffs, r in sys.eq_rows:
        aug.append(list(coeffs) + [zero] * n_slack + [r])
    for idx, (coeffs, r) in enumerate(sys.ineq_rows):
        row = list(coeffs) + [zero] * n_slack + [r]
        row[n_struct + idx] = Fraction(1)
        aug.append(row)
    from satpoly.linsys import _rows_to_int_matrix

    aug = _rows_to_int_matrix(aug)
    rows = [r[:total] for r in aug]
    rhs = [r[total] for r in aug]
    n_rows = len(rows)

    sign_constrained = list(sys.nonneg) + [True] * n_slack

    col_rows: list[list[tuple[int, int]]] = [
        [(r, rows[r][v]) for r in range(n_rows) if rows[r][v]] for v in range(total)
    ]
    row_cols: list[list[int]] = [
        [v for v in range(total) if rows[r][v]] for r in range(n_rows)
    ]
    support_left = [len(row_cols[r]) for r in range(n_rows)]
    incl_count = [0] * n_rows
    status = [_UNDECIDED] * total

    # Independence basis over included columns: integer vectors reduced
    # against earlier pivots, fraction-free.
    basis: list[tuple[int, list[int]]] = []

    def reduce_column(v: int):
        vec = [0] * n_rows
        for r, coef in col_rows[v]:
            vec[r] = coef
        for piv, bvec in basis:
            f = vec[piv]
            if f:
                pb = bvec[piv]
                vec = [a * pb - f * b for a, b in zip(vec, bvec)]
                g = 0
                for a in vec:
                    g = gcd(g, a)
                if g > 1:
                    vec = [a // g for a in vec]
        piv = next((r for r in range(n_rows) if vec[r]), None)
        return (piv, vec) if piv is not None else None

    # Undo log: ("status", v, old), ("support", r), ("incl", r), ("basis",)
    trail: list[tuple] = []

    def set_status(v: int, new: int) -> None:
        trail.append(("status", v, status[v]))
        status[v] = new

    def apply_exclude(v: int, queue: list) -> bool:
        set_status(v, _EXCLUDED)
        for r, _ in col_rows[v]:
            support_left[r] -= 1
            trail.append(("support", r))
            if incl_count[r] == 0:
                if support_left[r] == 0:
                    if rhs[r] != 0:
                        return False
                elif support_left[r] == 1:
                    u = next(
                        w for w in row_cols[r] if status[w] != _EXCLUDED
                    )
                    coef = rows[r][u]
                    value = Fraction(rhs[r], coef)
                    if value == 0:
                        queue.append((u, _EXCLUDED))
                    else:
                        if sign_constrained[u] and value < 0:
                            return False
                        queue.append((u, _INCLUDED))
        return True

    def apply_include(v: int) -> bool:
        red = reduce_column(v)
        if red is None:
            return False
        basis.append(red)
        trail.append(("basis",))
        set_status(v, _INCLUDED)
        for r, _ in col_rows[v]:
            incl_count[r] += 1
            trail.append(("incl", r))
        return True

    def process(queue: list) -> bool:
        while queue:
            v, want = queue.pop()
            if status[v] == want:
                continue
            if status[v] != _UNDECIDED:
                return False
            if want == _EXCLUDED:
                if not apply_exclude(v, queue):
                    return False
            else:
                if not apply_include(v):
                    return False
        return True

    def rewind(mark: int) -> None:
        while len(trail) > mark:
            op = trail.pop()
            if op[0] == "status":
                status[op[1]] = op[2]
            elif op[0] == "support":
                support_left[op[1]] += 1
            elif op[0] == "incl":
                incl_count[op[1]] -= 1
            else:
                basis.pop()

    free_ok = process([(v, _INCLUDED) for v in range(total) if not sign_constrained[v]])
    if not free_ok:
        return []  # lineality direction: no vertices at all

    found: dict[tuple, list[Rational]] = {}

    def solve_leaf() -> None:
        cols = [v for v in range(total) if status[v] == _INCLUDED]
        small = [
            ([Fraction(rows[r][v]) for v in cols], Fraction(rhs[r]))
            for r in range(n_rows)
        ]
        result, sol = _solve_equalities(small, len(cols))
        if result != "unique":
            if result == "underdetermined":  # pragma: no cover - independence bug
                raise InternalInvariantError("dependent support reached a leaf")
            return
        point = [zero] * total
        for v, val in zip(cols, sol):
            if sign_constrained[v] and val < 0:
                return
            point[v] = val
        key = tuple(point[:n_struct])
        found.setdefault(key, list(key))

    def dfs(pos: int) -> None:
        while pos < total and status[pos] != _UNDECIDED:
            pos += 1
        if pos == total:
            solve_leaf()
            return
        for want in (_EXCLUDED, _INCLUDED):
            mark = len(trail)
            if process([(pos, want)]):
                dfs(pos + 1)
            rewind(mark)

    dfs(0)
    return sorted(found.values())
