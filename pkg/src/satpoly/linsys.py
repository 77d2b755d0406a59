"""Exact rational linear systems, linear algebra, and a simplex LP maximizer.

A :class:`LinearSystem` holds equality rows, ``<=`` inequality rows, and a
per-variable nonnegativity flag.  All arithmetic is over ``Fraction``;
results satisfy their constraints exactly, with no tolerance anywhere.

Rank computations use a certified fast path: rank over a prime field never
exceeds the rational rank, so a full-rank answer mod p is already exact.
Deficient answers fall back to fraction-free integer elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

from satpoly.errors import InputError, InternalInvariantError
from satpoly.rational import Rational, format_rational, parse_rational

#: Primes below 2**31 so numpy int64 products never overflow.
_RANK_PRIMES = (2147483647, 2147483629)


@dataclass
class LinearSystem:
    """Equalities, ``<=`` inequalities, and nonnegativity flags over named columns.

    ``eq_rows`` and ``ineq_rows`` are lists of ``(coeffs, rhs)`` pairs with
    ``len(coeffs) == var_count``; an inequality row means ``coeffs . x <= rhs``.
    ``nonneg[v]`` marks ``x_v >= 0``.  Instances are treated as immutable
    after construction and are safe to share across workers.
    """

    var_count: int
    eq_rows: list[tuple[list[Rational], Rational]] = field(default_factory=list)
    ineq_rows: list[tuple[list[Rational], Rational]] = field(default_factory=list)
    nonneg: list[bool] = field(default_factory=list)

    def __post_init__(self):
        if self.var_count < 0:
            raise InputError("negative variable count")
        if not self.nonneg:
            self.nonneg = [True] * self.var_count
        if len(self.nonneg) != self.var_count:
            raise InputError("nonneg flag list has wrong length")
        for coeffs, _ in list(self.eq_rows) + list(self.ineq_rows):
            if len(coeffs) != self.var_count:
                raise InputError("constraint row has wrong length")

    # -- feasibility -------------------------------------------------------

    def is_feasible(self, point: Sequence[Rational]) -> bool:
        """Exact membership test."""
        if len(point) != self.var_count:
            raise InputError("point has wrong dimension")
        for coeffs, rhs in self.eq_rows:
            if _dot(coeffs, point) != rhs:
                return False
        for coeffs, rhs in self.ineq_rows:
            if _dot(coeffs, point) > rhs:
                return False
        for v, flag in enumerate(self.nonneg):
            if flag and point[v] < 0:
                return False
        return True

    def tight_rows(self, point: Sequence[Rational]) -> "LinearSystem":
        """Equality system of all constraints active at ``point``.

        Includes every equality row, every inequality row met with equality,
        and a unit row for every nonnegative variable sitting at zero.
        """
        rows = [(list(c), r) for c, r in self.eq_rows]
        for coeffs, rhs in self.ineq_rows:
            if _dot(coeffs, point) == rhs:
                rows.append((list(coeffs), rhs))
        zero = Fraction(0)
        for v, flag in enumerate(self.nonneg):
            if flag and point[v] == 0:
                unit = [zero] * self.var_count
                unit[v] = Fraction(1)
                rows.append((unit, zero))
        return LinearSystem(self.var_count, eq_rows=rows, nonneg=[False] * self.var_count)

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vars {self.var_count}"]
        if not all(self.nonneg):
            lines.append("nonneg " + " ".join("1" if f else "0" for f in self.nonneg))
        for coeffs, rhs in self.eq_rows:
            lines.append("eq " + _row_text(coeffs, rhs))
        for coeffs, rhs in self.ineq_rows:
            lines.append("le " + _row_text(coeffs, rhs))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "LinearSystem":
        var_count = None
        nonneg = None
        eq_rows: list[tuple[list[Rational], Rational]] = []
        ineq_rows: list[tuple[list[Rational], Rational]] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            kind = tokens[0]
            if kind == "vars":
                var_count = int(tokens[1])
            elif kind == "nonneg":
                nonneg = [t == "1" for t in tokens[1:]]
            elif kind in ("eq", "le"):
                if var_count is None:
                    raise InputError("constraint row before 'vars' header")
                coeffs, rhs = _parse_row(tokens[1:], var_count)
                (eq_rows if kind == "eq" else ineq_rows).append((coeffs, rhs))
            else:
                raise InputError(f"unknown line kind {kind!r}")
        if var_count is None:
            raise InputError("missing 'vars' header")
        if nonneg is None:
            nonneg = [True] * var_count
        return LinearSystem(var_count, eq_rows=eq_rows, ineq_rows=ineq_rows, nonneg=nonneg)


def _row_text(coeffs, rhs) -> str:
    return " ".join(format_rational(c) for c in coeffs) + " | " + format_rational(rhs)


def _parse_row(tokens: list[str], var_count: int):
    if "|" not in tokens:
        raise InputError("constraint row missing '|' separator")
    bar = tokens.index("|")
    coeffs = [parse_rational(t) for t in tokens[:bar]]
    rest = tokens[bar + 1 :]
    if len(coeffs) != var_count or len(rest) != 1:
        raise InputError("constraint row has wrong shape")
    return coeffs, parse_rational(rest[0])


def _dot(coeffs: Sequence[Rational], point: Sequence[Rational]) -> Rational:
    total = Fraction(0)
    for c, x in zip(coeffs, point):
        if c:
            total += c * x
    return total


# ---------------------------------------------------------------------------
# Rank and unique solutions
# ---------------------------------------------------------------------------


def _rows_to_int_matrix(rows: Sequence[Sequence[Rational]]) -> list[list[int]]:
    """Clear denominators row by row; rank is unchanged by row scaling."""
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        ints = [int(f * scale) for f in fracs]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _mod_rank(int_rows: list[list[int]], prime: int) -> int:
    """Rank of an integer matrix over GF(prime), vectorized elimination."""
    if not int_rows:
        return 0
    mat = np.array([[x % prime for x in row] for row in int_rows], dtype=np.int64)
    n_rows, n_cols = mat.shape
    r = 0
    for col in range(n_cols):
        if r == n_rows:
            break
        pivots = np.nonzero(mat[r:, col])[0]
        if pivots.size == 0:
            continue
        p = r + int(pivots[0])
        if p != r:
            mat[[r, p]] = mat[[p, r]]
        inv = pow(int(mat[r, col]), prime - 2, prime)
        mat[r, col:] = (mat[r, col:] * inv) % prime
        rest = np.nonzero(mat[r + 1 :, col])[0]
        if rest.size:
            idx = rest + r + 1
            factors = mat[idx, col][:, None]
            mat[idx, col:] = (mat[idx, col:] - factors * mat[r, col:]) % prime
        r += 1
    return r


def _bareiss_rank(int_rows: list[list[int]]) -> int:
    """Exact rank by fraction-free Gaussian elimination."""
    mat = [list(row) for row in int_rows if any(row)]
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    rank_ = 0
    prev = 1
    row = 0
    for col in range(n_cols):
        piv = None
        for i in range(row, n_rows):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            mat[row], mat[piv] = mat[piv], mat[row]
        pv = mat[row][col]
        for i in range(row + 1, n_rows):
            ci = mat[i][col]
            ri, rp = mat[i], mat[row]
            for j in range(col, n_cols):
                ri[j] = (ri[j] * pv - ci * rp[j]) // prev
        prev = pv
        row += 1
        rank_ += 1
        if row == n_rows:
            break
    return rank_


def rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Exact rank of a list of rational row vectors.

    Fast path: a full rank over GF(p) certifies the rational rank (the
    modular rank is a lower bound).  Otherwise falls back to exact
    fraction-free elimination.
    """
    rows = [r for r in rows]
    if not rows:
        return 0
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise InputError("rank: rows of unequal length")
    int_rows = _rows_to_int_matrix(rows)
    bound = min(len(rows), width)
    for prime in _RANK_PRIMES:
        r_p = _mod_rank(int_rows, prime)
        if r_p == bound:
            return r_p
    return _bareiss_rank(int_rows)


def rank_at_most(rows: Sequence[Sequence[Rational]], cap: int) -> int:
    """Exact rank when it is known a priori that rank <= cap.

    A modular rank equal to ``cap`` is then already the exact answer; used
    by vertex/edge verification where geometry supplies the cap.
    """
    rows = list(rows)
    if not rows:
        return 0
    int_rows = _rows_to_int_matrix(rows)
    for prime in _RANK_PRIMES:
        r_p = _mod_rank(int_rows, prime)
        if r_p == cap or r_p == min(len(rows), len(rows[0])):
            return r_p
    return _bareiss_rank(int_rows)


def _solve_equalities(
    rows: list[tuple[list[Rational], Rational]], var_count: int
) -> tuple[str, Optional[list[Rational]]]:
    """Gaussian elimination over the rationals.

    Returns ("unique", x), ("underdetermined", None), or ("inconsistent", None).
    """
    aug = [[Fraction(c) for c in coeffs] + [Fraction(rhs)] for coeffs, rhs in rows]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(var_count):
        piv = None
        for i in range(row, len(aug)):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][col]
        if pv != 1:
            aug[row] = [x / pv for x in aug[row]]
        for i in range(len(aug)):
            if i != row and aug[i][col]:
                f = aug[i][col]
                ri, rr = aug[i], aug[row]
                for j in range(col, var_count + 1):
                    if rr[j]:
                        ri[j] -= f * rr[j]
        pivots.append((row, col))
        row += 1
        if row == len(aug):
            break
    for i in range(row, len(aug)):
        if aug[i][var_count] != 0:
            return "inconsistent", None
    if len(pivots) < var_count:
        return "underdetermined", None
    solution = [Fraction(0)] * var_count
    for r, c in pivots:
        solution[c] = aug[r][var_count]
    return "unique", solution


def unique_solution(sys: LinearSystem) -> Optional[list[Rational]]:
    """Solve the equality rows of ``sys``; None unless exactly one solution.

    Inequality rows and nonnegativity flags are ignored.  Single-variable
    rows are substituted out first (tight vertex systems consist largely
    of pinned coordinates), then the remaining core is eliminated densely.
    """
    n = sys.var_count
    rows = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in sys.eq_rows]
    pinned: dict[int, Fraction] = {}
    changed = True
    while changed:
        changed = False
        for coeffs, rhs in rows:
            support = [v for v, c in enumerate(coeffs) if c]
            if len(support) == 1:
                v = support[0]
                value = rhs / coeffs[v]
                if v in pinned:
                    if pinned[v] != value:
                        return None
                else:
                    pinned[v] = value
                    changed = True
        if changed:
            new_rows = []
            for coeffs, rhs in rows:
                for v, c in enumerate(coeffs):
                    if c and v in pinned:
                        rhs -= c * pinned[v]
                        coeffs[v] = Fraction(0)
                new_rows.append((coeffs, rhs))
            rows = new_rows
    live = sorted(set(range(n)) - set(pinned))
    core = []
    for coeffs, rhs in rows:
        reduced = [coeffs[v] for v in live]
        if any(reduced):
            core.append((reduced, rhs))
        elif rhs != 0:
            return None
    if live:
        status, sol = _solve_equalities(core, len(live))
        if status != "unique":
            return None
        for v, value in zip(live, sol):
            pinned[v] = value
    return [pinned[v] for v in range(n)]


# ---------------------------------------------------------------------------
# Exact simplex
# ---------------------------------------------------------------------------


@dataclass
class LpResult:
    """Outcome of :func:`lp_maximize`.

    When ``status == "Optimal"``, ``point`` is a basic feasible solution (a
    vertex of the feasible polyhedron), ``value == objective . point``
    exactly, and ``tight_set`` lists the active constraint rows: equality
    rows are indexed ``0 .. E-1`` and inequality rows ``E .. E+I-1``.
    """

    status: str  # "Optimal" | "Infeasible" | "Unbounded"
    value: Optional[Rational] = None
    point: Optional[list[Rational]] = None
    tight_set: Optional[set[int]] = None


class _Tableau:
    """Dense rational simplex tableau with Bland's anti-cycling rule.

    Row operations run in place and skip zero entries of the pivot row,
    which dominates the cost on the sparse systems built here.
    """

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows  # each row: coefficients + rhs in last slot
        self.basis = basis
        self.ncols = len(rows[0]) - 1 if rows else 0

    def pivot(self, row: int, col: int) -> None:
        pivrow = self.rows[row]
        pv = pivrow[col]
        if pv != 1:
            inv = Fraction(1) / pv
            for j, x in enumerate(pivrow):
                if x:
                    pivrow[j] = x * inv
        nz = [(j, x) for j, x in enumerate(pivrow) if x]
        for i, ri in enumerate(self.rows):
            if i == row:
                continue
            f = ri[col]
            if f:
                for j, x in nz:
                    ri[j] -= f * x
        self.basis[row] = col

    def run(self, cost: list[Fraction], allowed: int) -> tuple[str, list[Fraction]]:
        """Maximize over columns [0, allowed); returns status and final z-row.

        ``cost`` is the objective over all columns; the z-row is kept in
        reduced form (entry j = z_j - c_j, optimal when all >= 0).
        """
        rows, basis = self.rows, self.basis
        zrow = [-c for c in cost] + [Fraction(0)]
        for i, b in enumerate(basis):
            f = zrow[b]
            if f:
                for j, x in enumerate(rows[i]):
                    if x:
                        zrow[j] -= f * x
        zero = Fraction(0)
        while True:
            enter = -1
            for j in range(allowed):
                if zrow[j] < zero:
                    enter = j
                    break
            if enter < 0:
                return "optimal", zrow
            leave = -1
            best: Optional[Fraction] = None
            for i, ri in enumerate(rows):
                a = ri[enter]
                if a > zero:
                    ratio = ri[-1] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded", zrow
            self.pivot(leave, enter)
            f = zrow[enter]
            if f:
                for j, x in enumerate(rows[leave]):
                    if x:
                        zrow[j] -= f * x


def lp_maximize(sys: LinearSystem, objective: Sequence[Rational]) -> LpResult:
    """Maximize ``objective . x`` over ``sys`` with exact rational arithmetic.

    Two-phase simplex: phase 1 drives auxiliary variables out of the basis
    (uniform handling of equality rows), phase 2 optimizes with Bland's
    smallest-index rule, which guarantees termination.  Infeasible and
    unbounded inputs are reported as statuses, never exceptions.
    """
    objective = [Fraction(c) for c in objective]
    if len(objective) != sys.var_count:
        raise InputError("objective length does not match variable count")

    # Column layout: one column per nonnegative variable, a (+,-) pair per
    # free variable, then one slack per inequality row, then artificials.
    col_of_var: list[tuple[int, Optional[int]]] = []
    ncols = 0
    for flag in sys.nonneg:
        if flag:
            col_of_var.append((ncols, None))
            ncols += 1
        else:
            col_of_var.append((ncols, ncols + 1))
            ncols += 2
    slack0 = ncols
    ncols += len(sys.ineq_rows)
    struct_cols = ncols

    def expand(coeffs: Sequence[Rational]) -> list[Fraction]:
        row = [Fraction(0)] * ncols
        for v, c in enumerate(coeffs):
            if c:
                pos, neg = col_of_var[v]
                row[pos] += Fraction(c)
                if neg is not None:
                    row[neg] -= Fraction(c)
        return row

    rows: list[list[Fraction]] = []
    needs_artificial: list[bool] = []
    for coeffs, rhs in sys.eq_rows:
        row = expand(coeffs) + [Fraction(rhs)]
        if row[-1] < 0:
            row = [-x for x in row]
        rows.append(row)
        needs_artificial.append(True)
    for k, (coeffs, rhs) in enumerate(sys.ineq_rows):
        row = expand(coeffs) + [Fraction(rhs)]
        row[slack0 + k] = Fraction(1)
        if row[-1] < 0:
            row = [-x for x in row]
            needs_artificial.append(True)  # slack coefficient became -1
        else:
            needs_artificial.append(False)
        rows.append(row)

    basis: list[int] = []
    art_cols: list[int] = []
    for i, row in enumerate(rows):
        if needs_artificial[i]:
            col = ncols + len(art_cols)
            art_cols.append(col)
            basis.append(col)
        else:
            basis.append(slack0 + i - len(sys.eq_rows))
    total_cols = ncols + len(art_cols)
    for i, row in enumerate(rows):
        row[-1:-1] = [Fraction(0)] * len(art_cols)
        if needs_artificial[i]:
            row[basis[i]] = Fraction(1)

    tab = _Tableau(rows, basis)

    if art_cols:
        phase1_cost = [Fraction(0)] * total_cols
        for c in art_cols:
            phase1_cost[c] = Fraction(-1)
        status, zrow = tab.run(phase1_cost, allowed=struct_cols)
        if status != "optimal" or zrow[-1] != 0:
            return LpResult(status="Infeasible")
        # Pivot remaining zero-level artificials out; drop redundant rows.
        for i in list(range(len(tab.rows) - 1, -1, -1)):
            if tab.basis[i] in art_cols:
                entry = next(
                    (j for j in range(struct_cols) if tab.rows[i][j] != 0), None
                )
                if entry is None:
                    del tab.rows[i]
                    del tab.basis[i]
                else:
                    tab.pivot(i, entry)

    phase2_cost = [Fraction(0)] * total_cols
    for v, c in enumerate(objective):
        if c:
            pos, neg = col_of_var[v]
            phase2_cost[pos] += c
            if neg is not None:
                phase2_cost[neg] -= c
    status, zrow = tab.run(phase2_cost, allowed=struct_cols)
    if status == "unbounded":
        return LpResult(status="Unbounded")

    col_values = [Fraction(0)] * total_cols
    for i, b in enumerate(tab.basis):
        col_values[b] = tab.rows[i][-1]
    point = []
    for v in range(sys.var_count):
        pos, neg = col_of_var[v]
        point.append(col_values[pos] - (col_values[neg] if neg is not None else 0))
    value = _dot(objective, point)

    if not sys.is_feasible(point):  # pragma: no cover - exactness guard
        raise InternalInvariantError("simplex returned an infeasible point")
    tight = set(range(len(sys.eq_rows)))
    base = len(sys.eq_rows)
    for k, (coeffs, rhs) in enumerate(sys.ineq_rows):
        if _dot(coeffs, point) == rhs:
            tight.add(base + k)
    return LpResult(status="Optimal", value=value, point=point, tight_set=tight)
