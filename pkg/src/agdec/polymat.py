"""Polynomial matrices over F_q[x]: shifted degrees, Popov forms, and the
simultaneous congruence (Hermite-Pade style) solver.

Shifts may take values in (1/mu)Z; they are stored as integer numerators over
a common denominator, and every degree comparison happens on the scaled
integers mu*deg(v_k) + num_k, which keeps the arithmetic exact.

Pivot convention: the pivot of a nonzero row is the LARGEST column index
attaining the maximal shifted degree (0-based).
"""

from __future__ import annotations

import numpy as np

from .fields import Field
from .poly import (NEG_INF, Poly, padd, pdeg, pdivmod, pmul, pneg, pscale,
                   pshift, psub, ptrim)


class Shift:
    """A shift vector s with s_i = nums[i] / den."""

    __slots__ = ("nums", "den")

    def __init__(self, nums, den: int = 1):
        if den < 1:
            raise ValueError("shift denominator must be >= 1")
        self.nums = tuple(int(v) for v in nums)
        self.den = den

    def __len__(self):
        return len(self.nums)

    def __neg__(self) -> "Shift":
        return Shift(tuple(-v for v in self.nums), self.den)

    def concat(self, other: "Shift") -> "Shift":
        if other.den != self.den:
            raise ValueError("shift denominators differ")
        return Shift(self.nums + other.nums, self.den)

    @classmethod
    def zero(cls, n: int, den: int = 1) -> "Shift":
        return cls((0,) * n, den)

    def __repr__(self):
        return f"Shift({self.nums}, den={self.den})"


class PolyMat:
    """Rectangular matrix with Poly-compatible rows (raw coefficient arrays)."""

    __slots__ = ("f", "rows", "width")

    def __init__(self, f: Field, rows, width: int):
        self.f = f
        self.rows = rows
        self.width = width

    @classmethod
    def from_polys(cls, f: Field, grid) -> "PolyMat":
        rows = [[np.asarray(p.c if isinstance(p, Poly) else ptrim(np.asarray(p, dtype=np.int64)), dtype=np.int64)
                 for p in row] for row in grid]
        width = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged matrix")
        return cls(f, rows, width)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def poly(self, i: int, j: int) -> Poly:
        return Poly._raw(self.f, self.rows[i][j])

    def copy(self) -> "PolyMat":
        return PolyMat(self.f, [[c for c in row] for row in self.rows], self.width)

    def __repr__(self):
        return f"PolyMat({self.nrows}x{self.width} over {self.f})"


def sdeg(row, shift: Shift):
    """Scaled shifted degree den*deg(v_k) + num_k, maximized; -inf if zero."""
    best = NEG_INF
    den = shift.den
    for k, c in enumerate(row):
        d = pdeg(c)
        if d is not NEG_INF:
            v = den * d + shift.nums[k]
            if v >= best:
                best = v
    return best


def spivot(row, shift: Shift) -> int:
    """Pivot index: largest k attaining the shifted degree."""
    best = NEG_INF
    piv = -1
    den = shift.den
    for k, c in enumerate(row):
        d = pdeg(c)
        if d is not NEG_INF:
            v = den * d + shift.nums[k]
            if v >= best:
                best = v
                piv = k
    if piv < 0:
        raise ValueError("zero row has no pivot")
    return piv


def _pivot_or_none(row, nums, den):
    best = None
    piv = -1
    for k in range(len(row)):
        c = row[k]
        if c.size:
            v = den * (c.size - 1) + nums[k]
            if best is None or v >= best:
                best = v
                piv = k
    return (piv, best) if piv >= 0 else (None, None)


def is_popov(P: PolyMat, shift: Shift) -> bool:
    """Check the shifted Popov conditions: diagonal monic pivots that
    strictly dominate their columns."""
    m = P.width
    if P.nrows != m:
        return False
    nums, den = shift.nums, shift.den
    for i in range(m):
        row = P.rows[i]
        piv, _ = _pivot_or_none(row, nums, den)
        if piv != i:
            return False
        if int(row[i][-1]) != 1:
            return False
    for k in range(m):
        dk = pdeg(P.rows[k][k])
        for i in range(m):
            if i != k and pdeg(P.rows[i][k]) >= dk:
                return False
    return True


def weak_popov_rows(f: Field, rows, shift: Shift):
    """Row-space-preserving reduction to weak Popov form (distinct pivots).

    Zero rows are dropped.  Returns the surviving rows sorted by pivot index.
    """
    nums, den = shift.nums, shift.den
    stored: dict[int, list] = {}
    for row in rows:
        cur = [c for c in row]
        while True:
            piv, _ = _pivot_or_none(cur, nums, den)
            if piv is None:
                break
            other = stored.get(piv)
            if other is None:
                stored[piv] = cur
                break
            dc = cur[piv].size - 1
            do = other[piv].size - 1
            if dc < do:
                stored[piv] = cur
                cur = other
                continue
            c = f.mul(int(cur[piv][-1]), f.inv(int(other[piv][-1])))
            e = dc - do
            for j in range(len(cur)):
                oj = other[j]
                if oj.size:
                    cur[j] = psub(f, cur[j], pshift(pscale(f, c, oj), e))
        # loop exits when cur found a free pivot slot or became zero
    return [stored[p] for p in sorted(stored)]


def popov(M: PolyMat, shift: Shift) -> PolyMat:
    """The unique shift-Popov basis of the row space of M.

    M must have full column rank (square nonsingular, or r x m with rank m).
    """
    f = M.f
    m = M.width
    rows = weak_popov_rows(f, M.rows, shift)
    if len(rows) != m:
        raise ValueError(f"popov: matrix has rank {len(rows)} < {m}")
    nums, den = shift.nums, shift.den
    by_piv = {}
    for r in rows:
        piv, _ = _pivot_or_none(r, nums, den)
        if piv in by_piv:
            raise AssertionError("weak Popov produced colliding pivots")
        by_piv[piv] = r
    if sorted(by_piv) != list(range(m)):
        raise ValueError("popov: matrix is rank deficient")
    rows = [by_piv[k] for k in range(m)]
    # make pivots monic
    for k in range(m):
        lc = int(rows[k][k][-1])
        if lc != 1:
            c = f.inv(lc)
            rows[k] = [pscale(f, c, col) for col in rows[k]]
    # reduce off-pivot column entries by full quotients until dominant
    guard = 0
    limit = 1000 + 20 * m * m * (2 + max(
        (c.size for row in rows for c in row if c.size), default=1))
    changed = True
    while changed:
        changed = False
        for j in range(m):
            dj = rows[j][j].size - 1
            pj = rows[j]
            for i in range(m):
                if i == j:
                    continue
                cij = rows[i][j]
                if cij.size - 1 >= dj:
                    ri = rows[i]
                    q = pdivmod(f, cij, pj[j])[0]
                    qneg = pneg(f, q)
                    rows[i] = [_add_mul(f, ri[t], qneg, pj[t]) for t in range(m)]
                    changed = True
                    guard += 1
                    if guard > limit:
                        raise RuntimeError("popov normalization did not converge")
    return PolyMat(f, rows, m)


def _add_mul(f: Field, a, q, b):
    """a + q*b on raw coefficient arrays."""
    if q.size == 0 or b.size == 0:
        return a
    return padd(f, a, pmul(f, q, b))


def frac_shift_permutation(d: Shift):
    """Column order and x-power scalings that turn fractional-shift Popov
    checking into plain integer-shift Popov checking.

    Returns (perm, exps): new column i takes old column perm[i], scaled by
    x**exps[i] (exps may be negative).  Ordering key: (num mod den, index).
    """
    den = d.den
    perm = sorted(range(len(d.nums)), key=lambda i: (d.nums[i] % den, i))
    exps = [d.nums[i] // den for i in perm]
    return perm, exps


def minimal_row(P: PolyMat, shift: Shift):
    """Index and row of minimal shifted degree; ties go to the least index."""
    if P.nrows == 0:
        raise ValueError("minimal_row of an empty matrix")
    best_i = -1
    best = None
    for i, row in enumerate(P.rows):
        v = sdeg(row, shift)
        if best is None or v < best:
            best = v
            best_i = i
    return best_i, P.rows[best_i]


def hp_basis(f: Field, amat, moduli, shift: Shift) -> PolyMat:
    """Shift-Popov basis of {v : v . A_k == 0 (mod u_k) for all k}.

    amat: phi x theta grid of coefficient arrays (columns A_k);
    moduli: theta nonzero coefficient arrays u_k;
    shift: length-phi Shift; the returned phi x phi basis is in shift-Popov
    form.

    Realized by reducing the block matrix [[I, A], [0, diag(u)]] under a
    shift whose right block is so large that the top rows of the Popov form
    must have vanishing right blocks; their left halves are then exactly the
    sought basis.
    """
    phi = len(amat)
    theta = len(moduli)
    den = shift.den
    empty = np.zeros(0, dtype=np.int64)
    one = np.ones(1, dtype=np.int64)
    for u in moduli:
        if u.size == 0:
            raise ZeroDivisionError("hp_basis: zero modulus")
    if phi == 0:
        return PolyMat(f, [], 0)
    # pre-reduce the A entries modulo their column's u (keeps degrees small)
    red = []
    for i in range(phi):
        row = []
        for k in range(theta):
            c = amat[i][k]
            if c.size and moduli[k].size and c.size - 1 >= moduli[k].size - 1 and moduli[k].size > 1:
                _, c = pdivmod(f, c, moduli[k])
            elif moduli[k].size == 1:
                c = empty
            row.append(c)
        red.append(row)
    sum_du = sum(u.size - 1 for u in moduli)
    w_scaled = den * sum_du + max(max(shift.nums, default=0), 0) + 1
    big_rows = []
    for i in range(phi):
        left = [one if j == i else empty for j in range(phi)]
        big_rows.append(left + red[i])
    for k in range(theta):
        right = [moduli[k] if j == k else empty for j in range(theta)]
        big_rows.append([empty] * phi + right)
    big_shift = Shift(shift.nums + (w_scaled,) * theta, den)
    P = popov(PolyMat(f, big_rows, phi + theta), big_shift)
    out_rows = []
    for i in range(phi):
        row = P.rows[i]
        for k in range(theta):
            if row[phi + k].size:
                raise AssertionError("hp_basis: top row has nonzero residue block")
        out_rows.append(row[:phi])
    return PolyMat(f, out_rows, phi)


def hp_residues(f: Field, row, amat, moduli):
    """v . A_k mod u_k for each column k (verification helper)."""
    phi = len(amat)
    out = []
    for k in range(len(moduli)):
        acc = np.zeros(0, dtype=np.int64)
        for i in range(phi):
            acc = padd(f, acc, pmul(f, row[i], amat[i][k]))
        if moduli[k].size == 1:
            out.append(np.zeros(0, dtype=np.int64))
        else:
            _, r = pdivmod(f, acc, moduli[k]) if acc.size >= moduli[k].size else (None, acc)
            out.append(r)
    return out
