"""Exact rational linear algebra and a small exact LP solver.

Kernel and solve go through fraction-free (Bareiss-style) elimination
over the integers after clearing row denominators, which keeps
intermediate entries at minor size instead of letting rational
numerators and denominators feed on each other.  Back substitution
returns to rationals.

The LP side is a dense two-phase primal simplex over rationals with
Bland's rule, so it terminates and every run of it is deterministic.
`strict_feasible` is the entry point the sign-certificate search
uses; the general `simplex` core also backs the convex-position
queries elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidArgument
from .rat import R0, R1, Rat, rat


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix with optional row/column labels."""

    entries: tuple
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    @staticmethod
    def from_rows(rows, row_labels=None, col_labels=None) -> "RatMatrix":
        ent = tuple(tuple(rat(x) for x in row) for row in rows)
        widths = {len(r) for r in ent}
        if len(widths) > 1:
            raise InvalidArgument("ragged rows")
        return RatMatrix(entries=ent, row_labels=row_labels, col_labels=col_labels)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0


def _rows_of(A) -> list[list]:
    if isinstance(A, RatMatrix):
        return [list(r) for r in A.entries]
    return [[rat(x) for x in row] for row in A]


def _integerize(row):
    """Scale a rational row to integers (clears denominators)."""
    den = 1
    for x in row:
        d = x.denominator
        if d != 1:
            den = den * d // _gcd(den, d)
    if den == 1:
        return [x.numerator for x in row]
    return [x.numerator * (den // x.denominator) for x in row]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bareiss_echelon(int_rows: list[list[int]], ncols: int, pivot_cols_limit: int | None = None):
    """Fraction-free forward elimination.

    Returns (rows, pivots) where pivots is a list of (row, col) in
    elimination order.  Only columns < pivot_cols_limit are eligible
    as pivots, which is how augmented solves keep the rhs passive.
    """
    rows = int_rows
    m = len(rows)
    limit = ncols if pivot_cols_limit is None else pivot_cols_limit
    pivots: list[tuple[int, int]] = []
    prev = 1
    r = 0
    for col in range(limit):
        pr = None
        for i in range(r, m):
            if rows[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, m):
            head = rows[i][col]
            ri, rr = rows[i], rows[r]
            for c in range(col, ncols):
                num = ri[c] * piv - head * rr[c]
                q, rem = divmod(num, prev)
                if rem != 0:  # would mean the one-step divisibility broke
                    raise ArithmeticError("inexact division in fraction-free elimination")
                ri[c] = q
        pivots.append((r, col))
        prev = piv
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(A) -> int:
    rows = _rows_of(A)
    if not rows or not rows[0]:
        return 0
    int_rows = [_integerize(r) for r in rows]
    _, pivots = _bareiss_echelon(int_rows, len(rows[0]))
    return len(pivots)


def kernel_basis(A) -> tuple[int, list[list]]:
    """Rank and a deterministic kernel basis of A.

    One basis vector per free column, ordered by free column index;
    the free coordinate is set to 1 and pivot coordinates are filled
    by back substitution.
    """
    rows = _rows_of(A)
    m = len(rows)
    n = len(rows[0]) if m else 0
    if n == 0:
        return 0, []
    if m == 0:
        return 0, [[R1 if j == i else R0 for j in range(n)] for i in range(n)]
    int_rows = [_integerize(r) for r in rows]
    ech, pivots = _bareiss_echelon(int_rows, n)
    rnk = len(pivots)
    pivot_cols = [c for _, c in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free_cols:
        x = [R0] * n
        x[f] = R1
        for r in range(rnk - 1, -1, -1):
            pc = pivot_cols[r]
            if pc > f:
                continue
            acc = R0
            row = ech[r]
            for c in range(pc + 1, n):
                xc = x[c]
                if xc:
                    acc += rat(row[c]) * xc
            x[pc] = -acc / rat(row[pc])
        basis.append(x)
    return rnk, basis


def solve_linear(A, b) -> list | None:
    """One exact solution of A x = b, or None when inconsistent.

    Free variables are set to zero, so a unique solution is returned
    verbatim and an underdetermined system yields a particular one.
    """
    rows = _rows_of(A)
    m = len(rows)
    n = len(rows[0]) if m else 0
    bvec = [rat(x) for x in b]
    if len(bvec) != m:
        raise InvalidArgument("rhs length mismatch")
    if n == 0:
        return [] if all(x == 0 for x in bvec) else None
    aug = [_integerize(list(rows[i]) + [bvec[i]]) for i in range(m)]
    ech, pivots = _bareiss_echelon(aug, n + 1, pivot_cols_limit=n)
    rnk = len(pivots)
    for r in range(rnk, m):
        if ech[r][n] != 0:
            return None
    pivot_cols = [c for _, c in pivots]
    x = [R0] * n
    for r in range(rnk - 1, -1, -1):
        pc = pivot_cols[r]
        row = ech[r]
        acc = rat(row[n])
        for c in range(pc + 1, n):
            if x[c]:
                acc -= rat(row[c]) * x[c]
        x[pc] = acc / rat(row[pc])
    return x


def rref(rows) -> tuple[tuple[int, ...], tuple]:
    """Reduced row echelon form over the rationals.

    Returns (pivot columns, nonzero rows); two row collections span
    the same space iff their rrefs are equal, which is what the
    span-comparison tests rely on.
    """
    work = [[rat(x) for x in row] for row in rows]
    m = len(work)
    if m == 0:
        return (), ()
    n = len(work[0])
    pivots = []
    r = 0
    for col in range(n):
        pr = None
        for i in range(r, m):
            if work[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        piv = work[r][col]
        work[r] = [x / piv for x in work[r]]
        for i in range(m):
            if i != r and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    keep = tuple(tuple(row) for row in work[:r])
    return tuple(pivots), keep


def dot(u, v):
    acc = R0
    for a, b in zip(u, v):
        if a and b:
            acc += a * b
    return acc


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_scale(s, u):
    return [s * a for a in u]


def is_zero_vec(u) -> bool:
    return all(x == 0 for x in u)


# ---------------------------------------------------------------------------
# exact simplex


class _Tableau:
    """Dense simplex tableau over rationals, Bland pivoting throughout."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: list[list] = []  # each length nvars + 1, rhs last
        self.basis: list[int] = []

    def pivot(self, r: int, col: int) -> None:
        piv = self.rows[r][col]
        inv = R1 / piv
        self.rows[r] = [x * inv for x in self.rows[r]]
        prow = self.rows[r]
        for i, row in enumerate(self.rows):
            if i != r and row[col] != 0:
                f = row[col]
                self.rows[i] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = col

    def run(self, obj: list, allowed: int) -> list:
        """Maximize obj (length nvars) over columns < allowed.

        Returns the final reduced-cost row; raises on unboundedness,
        which callers here never trigger by construction.
        """
        z = list(obj) + [R0]
        for r, bv in enumerate(self.basis):
            if z[bv] != 0:
                f = z[bv]
                z = [a - f * b for a, b in zip(z, self.rows[r])]
        while True:
            enter = None
            for j in range(allowed):
                if z[j] > 0:  # increasing x_j improves the objective
                    enter = j
                    break
            if enter is None:
                return z
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                raise ArithmeticError("unbounded LP")
            self.pivot(leave, enter)
            f = z[enter]
            if f != 0:
                z = [a - f * b for a, b in zip(z, self.rows[leave])]


def simplex(obj, A_ub=None, b_ub=None, A_eq=None, b_eq=None):
    """Maximize obj . x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.

    Returns (status, x, value) with status in {"optimal",
    "infeasible"}.  The feasible problems this package builds are all
    bounded; an unbounded one raises ArithmeticError.
    """
    A_ub = [] if A_ub is None else A_ub
    b_ub = [] if b_ub is None else b_ub
    A_eq = [] if A_eq is None else A_eq
    b_eq = [] if b_eq is None else b_eq
    n = len(obj)
    n_slack = len(A_ub)
    rows_raw = []
    # (coeffs over structural vars, slack sign, rhs); slack sign 0 for eq rows
    for arow, rhs in zip(A_ub, b_ub):
        rows_raw.append(([rat(x) for x in arow], 1, rat(rhs)))
    for arow, rhs in zip(A_eq, b_eq):
        rows_raw.append(([rat(x) for x in arow], 0, rat(rhs)))

    art_rows = []
    for i, (arow, slk, rhs) in enumerate(rows_raw):
        if rhs < 0:
            rows_raw[i] = ([-x for x in arow], -slk, -rhs)
    for i, (arow, slk, rhs) in enumerate(rows_raw):
        if slk != 1:
            art_rows.append(i)

    n_art = len(art_rows)
    nvars = n + n_slack + n_art
    T = _Tableau(nvars)
    art_of = {ri: n + n_slack + k for k, ri in enumerate(art_rows)}
    slack_idx = 0
    for i, (arow, slk, rhs) in enumerate(rows_raw):
        full = list(arow) + [R0] * (n_slack + n_art) + [rhs]
        if i < n_slack:
            full[n + slack_idx] = rat(slk)
            slack_idx += 1
        if i in art_of:
            full[art_of[i]] = R1
            T.basis.append(art_of[i])
        else:
            T.basis.append(n + i)  # the slack, coefficient +1, rhs >= 0
        T.rows.append(full)

    if n_art:
        phase1 = [R0] * nvars
        for ri in art_rows:
            phase1[art_of[ri]] = -R1
        z = T.run(phase1, allowed=nvars)
        if z[-1] != 0:  # leftover artificial mass
            return "infeasible", None, None
        # drive artificials out of the basis or drop redundant rows
        for r in range(len(T.rows) - 1, -1, -1):
            if T.basis[r] >= n + n_slack:
                col = next((c for c in range(n + n_slack) if T.rows[r][c] != 0), None)
                if col is None:
                    del T.rows[r]
                    del T.basis[r]
                else:
                    T.pivot(r, col)

    obj_full = [rat(x) for x in obj] + [R0] * (n_slack + n_art)
    z = T.run(obj_full, allowed=n + n_slack)
    x = [R0] * n
    for r, bv in enumerate(T.basis):
        if bv < n:
            x[bv] = T.rows[r][-1]
    value = dot([rat(c) for c in obj], x)
    return "optimal", x, value


def strict_feasible(basis, strict_coords, weak_coords):
    """Search span(basis) for x with x_i > 0 on strict and x_j <= 0 on weak.

    Maximizes t subject to x_i >= t on strict coordinates, x_j <= 0 on
    weak ones, and t <= 1; a witness exists iff the optimum is
    positive.  Returns the witness vector (not normalized) or None.
    An empty strict set is vacuous and yields the zero vector.
    """
    strict = sorted(set(strict_coords))
    weak = sorted(set(weak_coords))
    if not strict:
        return [R0] * (len(basis[0]) if basis else 0)
    if not basis:
        return None
    g = len(basis)
    ncoords = len(basis[0])
    for i in strict + weak:
        if not 0 <= i < ncoords:
            raise InvalidArgument(f"coordinate {i} out of range")
    # vars: u_0..u_{g-1}, v_0..v_{g-1}, t; coefficients c_j = u_j - v_j
    nv = 2 * g + 1
    A_ub = []
    b_ub = []
    for i in strict:
        row = [-B[i] for B in basis] + [B[i] for B in basis] + [R1]
        A_ub.append(row)
        b_ub.append(R0)
    for i in weak:
        row = [B[i] for B in basis] + [-B[i] for B in basis] + [R0]
        A_ub.append(row)
        b_ub.append(R0)
    A_ub.append([R0] * (2 * g) + [R1])
    b_ub.append(R1)
    obj = [R0] * (2 * g) + [R1]
    status, xvars, value = simplex(obj, A_ub=A_ub, b_ub=b_ub)
    if status != "optimal" or value <= 0:
        return None
    coeffs = [xvars[j] - xvars[g + j] for j in range(g)]
    out = [R0] * ncoords
    for cj, B in zip(coeffs, basis):
        if cj:
            for i, val in enumerate(B):
                if val:
                    out[i] += cj * val
    return out
