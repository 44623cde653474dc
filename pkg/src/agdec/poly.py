"""Dense univariate polynomials over a Field, plus truncated power series.

Coefficients are stored low-to-high in small numpy int arrays; the zero
polynomial is the empty array and has degree -inf.  The raw-array helpers
(padd, pmul, ...) are the hot path shared with the matrix code; Poly is a
thin value wrapper around them.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .fields import Field

NEG_INF = float("-inf")

_EMPTY = np.zeros(0, dtype=np.int32)


def _arr(c) -> np.ndarray:
    a = np.asarray(c, dtype=np.int64)
    return a


def ptrim(c: np.ndarray) -> np.ndarray:
    if c.size == 0 or c[-1] != 0:
        return c
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else c[:0]


def pdeg(c: np.ndarray):
    return c.size - 1 if c.size else NEG_INF


def padd(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size < b.size:
        a, b = b, a
    if b.size == 0:
        return a
    out = a.copy()
    out[: b.size] = f.vadd(a[: b.size], b)
    return ptrim(out)


def pneg(f: Field, a: np.ndarray) -> np.ndarray:
    return f.vneg(a) if a.size else a


def psub(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return padd(f, a, pneg(f, b))


def pscale(f: Field, s: int, a: np.ndarray) -> np.ndarray:
    if s == 0 or a.size == 0:
        return _EMPTY
    if s == 1:
        return a
    return ptrim(f.vmul(s, a))


def pshift(a: np.ndarray, m: int) -> np.ndarray:
    """Multiply by x^m, m >= 0."""
    if a.size == 0 or m == 0:
        return a
    return np.concatenate([np.zeros(m, dtype=a.dtype), a])


def pmul(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return _EMPTY
    if a.size < b.size:
        a, b = b, a
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in range(b.size):
        s = int(b[i])
        if s:
            out[i: i + a.size] = f.vadd(out[i: i + a.size], f.vmul(s, a))
    return ptrim(out)


def ptrunc(c: np.ndarray, n: int) -> np.ndarray:
    if n <= 0:
        return _EMPTY
    return ptrim(c[:n]) if c.size > n else c


def peval_many(f: Field, c: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Horner evaluation of one polynomial at many points."""
    xs = np.asarray(xs)
    acc = np.zeros(xs.shape, dtype=np.int64)
    for k in range(c.size - 1, -1, -1):
        acc = f.vadd(f.vmul(acc, xs), int(c[k]))
    return acc


def peval(f: Field, c: np.ndarray, x: int) -> int:
    acc = 0
    for k in range(c.size - 1, -1, -1):
        acc = f.add(f.mul(acc, x), int(c[k]))
    return acc


def pdivmod(f: Field, a: np.ndarray, b: np.ndarray):
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if a.size < b.size:
        return _EMPTY, a
    r = a.astype(np.int64).copy()
    db = b.size - 1
    inv_lb = f.inv(int(b[-1]))
    q = np.zeros(a.size - db, dtype=np.int64)
    for k in range(a.size - 1, db - 1, -1):
        lead = int(r[k])
        if lead:
            t = f.mul(lead, inv_lb)
            q[k - db] = t
            r[k - db: k + 1] = f.vadd(r[k - db: k + 1], f.vneg(f.vmul(t, b)))
    return ptrim(q), ptrim(r[:db])


def pgcd(f: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = ptrim(a.copy()), ptrim(b.copy())
    while b.size:
        _, r = pdivmod(f, a, b)
        a, b = b, r
    if a.size and a[-1] != 1:
        a = pscale(f, f.inv(int(a[-1])), a)
    return a


class Poly:
    """Immutable dense polynomial over an explicit Field."""

    __slots__ = ("f", "c")

    def __init__(self, f: Field, coeffs=()):
        self.f = f
        self.c = ptrim(_arr(coeffs))

    @classmethod
    def _raw(cls, f: Field, c: np.ndarray) -> "Poly":
        p = object.__new__(cls)
        p.f = f
        p.c = c
        return p

    @classmethod
    def zero(cls, f: Field) -> "Poly":
        return cls._raw(f, _EMPTY)

    @classmethod
    def one(cls, f: Field) -> "Poly":
        return cls(f, [1])

    @classmethod
    def x(cls, f: Field) -> "Poly":
        return cls(f, [0, 1])

    @classmethod
    def const(cls, f: Field, v: int) -> "Poly":
        return cls(f, [v])

    @property
    def deg(self):
        return pdeg(self.c)

    def is_zero(self) -> bool:
        return self.c.size == 0

    def is_one(self) -> bool:
        return self.c.size == 1 and self.c[0] == 1

    def lc(self) -> int:
        if self.c.size == 0:
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.c[-1])

    def monic(self) -> "Poly":
        if self.is_zero() or self.lc() == 1:
            return self
        return self._raw(self.f, pscale(self.f, self.f.inv(self.lc()), self.c))

    def __add__(self, o: "Poly") -> "Poly":
        return self._raw(self.f, padd(self.f, self.c, o.c))

    def __sub__(self, o: "Poly") -> "Poly":
        return self._raw(self.f, psub(self.f, self.c, o.c))

    def __neg__(self) -> "Poly":
        return self._raw(self.f, pneg(self.f, self.c))

    def __mul__(self, o: "Poly") -> "Poly":
        return self._raw(self.f, pmul(self.f, self.c, o.c))

    def scale(self, s: int) -> "Poly":
        return self._raw(self.f, pscale(self.f, s, self.c))

    def shift(self, m: int) -> "Poly":
        return self._raw(self.f, pshift(self.c, m))

    def trunc(self, n: int) -> "Poly":
        return self._raw(self.f, ptrunc(self.c, n))

    def divmod(self, o: "Poly"):
        q, r = pdivmod(self.f, self.c, o.c)
        return self._raw(self.f, q), self._raw(self.f, r)

    def __floordiv__(self, o: "Poly") -> "Poly":
        return self.divmod(o)[0]

    def __mod__(self, o: "Poly") -> "Poly":
        return self.divmod(o)[1]

    def gcd(self, o: "Poly") -> "Poly":
        return self._raw(self.f, pgcd(self.f, self.c, o.c))

    def __call__(self, x: int) -> int:
        return peval(self.f, self.c, x)

    def coeff(self, i: int) -> int:
        return int(self.c[i]) if 0 <= i < self.c.size else 0

    def coeffs(self) -> list[int]:
        return [int(v) for v in self.c]

    def __eq__(self, o) -> bool:
        return (isinstance(o, Poly) and self.f is o.f
                and self.c.size == o.c.size and bool(np.all(self.c == o.c)))

    def __hash__(self):
        return hash((id(self.f), tuple(int(v) for v in self.c)))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, v in enumerate(self.c):
            if v:
                t = f"{int(v)}" if i == 0 else (f"{int(v)}*x^{i}" if v != 1 else f"x^{i}")
                terms.append(t)
        return " + ".join(terms)


def vanishing_poly(f: Field, points) -> Poly:
    """Monic product of (x - a) over the given distinct points."""
    pts = [int(a) for a in points]
    if len(set(pts)) != len(pts):
        raise ValueError("vanishing_poly: duplicate points")
    leaves = [np.array([f.neg(a), 1], dtype=np.int64) for a in pts]
    if not leaves:
        return Poly.one(f)
    while len(leaves) > 1:
        nxt = [pmul(f, leaves[i], leaves[i + 1]) if i + 1 < len(leaves) else leaves[i]
               for i in range(0, len(leaves), 2)]
        leaves = nxt
    return Poly._raw(f, leaves[0])


def multipoint_eval(a: Poly, points) -> list[int]:
    xs = np.asarray([int(v) for v in points], dtype=np.int64)
    return [int(v) for v in peval_many(a.f, a.c, xs)]


def lagrange_interpolate(f: Field, points, values) -> Poly:
    """Unique polynomial of degree < N through the given pairs."""
    pts = [int(a) for a in points]
    vals = [int(v) for v in values]
    if len(pts) != len(vals):
        raise ValueError("points and values differ in length")
    if len(set(pts)) != len(pts):
        raise ValueError("lagrange_interpolate: duplicate points")
    n = len(pts)
    if n == 0:
        return Poly.zero(f)
    xs = np.asarray(pts, dtype=np.int64)
    vv = vanishing_poly(f, pts).c  # degree n
    # per-node quotients V/(x - x_i), all nodes at once (rows = nodes)
    Q = np.zeros((n, n), dtype=np.int64)
    Q[:, n - 1] = int(vv[n])
    for k in range(n - 2, -1, -1):
        Q[:, k] = f.vadd(f.vmul(xs, Q[:, k + 1]), int(vv[k + 1]))
    dens = np.zeros(n, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        dens = f.vadd(f.vmul(dens, xs), Q[:, k])
    if f._inv is not None:
        wi = f._inv[dens]
    else:
        wi = np.array([f.inv(int(d)) for d in dens], dtype=np.int64)
    scale = f.vmul(np.asarray(vals, dtype=np.int64), wi)
    rows = f.vmul(scale[:, None], Q)
    acc = reduce(lambda u, v: f.vadd(u, v), rows)
    return Poly._raw(f, ptrim(acc))


def roots_in_field(a: Poly) -> list[tuple[int, int]]:
    """All roots in the base field with multiplicities, by exhaustive scan."""
    if a.is_zero():
        raise ValueError("roots_in_field: zero polynomial")
    f = a.f
    xs = np.arange(f.q, dtype=np.int64)
    vals = peval_many(f, a.c, xs)
    cand = [int(x) for x in xs[vals == 0]]
    out = []
    work = a.c
    for r in cand:
        m = 0
        while work.size > 0 and peval(f, work, r) == 0:
            # synthetic division by (x - r)
            nr = np.zeros(work.size - 1, dtype=np.int64)
            carry = 0
            for k in range(work.size - 1, 0, -1):
                carry = f.add(int(work[k]), f.mul(carry, r)) if k < work.size - 1 else int(work[k])
                nr[k - 1] = carry
            work = ptrim(nr)
            m += 1
        if m:
            out.append((r, m))
    return out


class SeriesTrunc:
    """A power series known modulo x^prec."""

    __slots__ = ("value", "prec")

    def __init__(self, value: Poly, prec: int):
        if prec < 0:
            raise ValueError("negative precision")
        self.value = value.trunc(prec)
        self.prec = prec

    def __add__(self, o: "SeriesTrunc") -> "SeriesTrunc":
        prec = min(self.prec, o.prec)
        return SeriesTrunc(self.value + o.value, prec)

    def __mul__(self, o: "SeriesTrunc") -> "SeriesTrunc":
        prec = min(self.prec, o.prec)
        return SeriesTrunc(self.value * o.value, prec)

    def __eq__(self, o) -> bool:
        return (isinstance(o, SeriesTrunc) and self.prec == o.prec
                and self.value == o.value)

    def __repr__(self):
        return f"{self.value!r} + O(x^{self.prec})"


def series_inv(f: Field, a: np.ndarray, prec: int) -> np.ndarray:
    """Inverse of a unit power series modulo x^prec."""
    if a.size == 0 or a[0] == 0:
        raise ZeroDivisionError("series_inv of a non-unit")
    inv0 = f.inv(int(a[0]))
    out = np.zeros(prec, dtype=np.int64)
    out[0] = inv0
    for k in range(1, prec):
        s = 0
        top = min(k, a.size - 1)
        for i in range(1, top + 1):
            s = f.add(s, f.mul(int(a[i]), int(out[k - i])))
        out[k] = f.mul(f.neg(s), inv0)
    return ptrim(out)
