"""Function-field layer: places, divisors, coordinate representation of
ring elements, and the two shipped curve backends.

Every backend fixes a constant field K, a distinguished place at infinity,
a function x of minimal pole order mu there, and a rational place P0 where
x is a local parameter.  Elements of the pole-only-at-infinity ring (and of
its fractional ideals tagged by a divisor A) are stored as mu polynomial
coordinates over the canonical basis of minimal pole orders; the backend
supplies those basis functions in closed form per supported divisor shape.
"""

from __future__ import annotations

import numpy as np

from .fields import Field, embed_map, field_make
from .poly import (NEG_INF, Poly, padd, pmul, pneg, pscale, pshift, ptrim,
                   ptrunc, series_inv)

INF = "inf"


class Place:
    """A rational place: 'inf', ('x', a) on the line, ('pt', a, b) on a curve."""

    __slots__ = ("kind", "coords", "_key")

    def __init__(self, kind: str, coords: tuple[int, ...] = ()):
        self.kind = kind
        self.coords = tuple(int(c) for c in coords)
        self._key = (1,) if kind == INF else (0,) + self.coords

    @classmethod
    def infinity(cls) -> "Place":
        return cls(INF)

    def is_infinity(self) -> bool:
        return self.kind == INF

    @property
    def key(self):
        return self._key

    def __eq__(self, o):
        return isinstance(o, Place) and self.kind == o.kind and self.coords == o.coords

    def __hash__(self):
        return hash((self.kind, self.coords))

    def __lt__(self, o: "Place"):
        return self._key < o._key

    def text(self) -> str:
        if self.kind == INF:
            return "inf"
        if self.kind == "x":
            return f"x={self.coords[0]}"
        return f"({self.coords[0]},{self.coords[1]})"

    @classmethod
    def parse(cls, s: str) -> "Place":
        s = s.strip()
        if s == "inf":
            return cls.infinity()
        if s.startswith("x="):
            return cls("x", (int(s[2:]),))
        if s.startswith("(") and s.endswith(")"):
            a, b = s[1:-1].split(",")
            return cls("pt", (int(a), int(b)))
        raise ValueError(f"bad place descriptor: {s!r}")

    def __repr__(self):
        return self.text()


class Divisor:
    """Finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("backend", "items", "_map")

    def __init__(self, backend, mults: dict[Place, int] | None = None):
        self.backend = backend
        m = {p: int(v) for p, v in (mults or {}).items() if v != 0}
        self._map = m
        self.items = tuple(sorted(m.items(), key=lambda kv: kv[0].key))

    @classmethod
    def of_places(cls, backend, places, mult: int = 1) -> "Divisor":
        m: dict[Place, int] = {}
        for p in places:
            m[p] = m.get(p, 0) + mult
        return cls(backend, m)

    def mult(self, p: Place) -> int:
        return self._map.get(p, 0)

    def support(self) -> list[Place]:
        return [p for p, _ in self.items]

    def finite_items(self):
        return [(p, v) for p, v in self.items if not p.is_infinity()]

    def inf_mult(self) -> int:
        for p, v in self.items:
            if p.is_infinity():
                return v
        return 0

    def degree(self) -> int:
        return sum(v for _, v in self.items)

    def is_effective(self) -> bool:
        return all(v >= 0 for _, v in self.items)

    def _check(self, o: "Divisor"):
        if o.backend is not self.backend:
            raise ValueError("divisors belong to different backends")

    def __add__(self, o: "Divisor") -> "Divisor":
        self._check(o)
        m = dict(self._map)
        for p, v in o.items:
            m[p] = m.get(p, 0) + v
        return Divisor(self.backend, m)

    def __neg__(self) -> "Divisor":
        return Divisor(self.backend, {p: -v for p, v in self.items})

    def __sub__(self, o: "Divisor") -> "Divisor":
        return self + (-o)

    def scale(self, c: int) -> "Divisor":
        return Divisor(self.backend, {p: c * v for p, v in self.items})

    def disjoint_from(self, o: "Divisor") -> bool:
        self._check(o)
        mine = set(self._map)
        return not any(p in mine for p, _ in o.items)

    def key(self):
        return tuple((p.key, v) for p, v in self.items)

    def __eq__(self, o):
        return isinstance(o, Divisor) and self.backend is o.backend and self.items == o.items

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.items:
            return "0"
        return " + ".join(f"{v}*{p.text()}" for p, v in self.items)


class FuncElem:
    """Element of the fractional ideal tagged by divisor A, as coordinates
    (a_0,...,a_{mu-1}) over the backend's canonical basis for A."""

    __slots__ = ("backend", "A", "coords")

    def __init__(self, backend, A: Divisor, coords):
        self.backend = backend
        self.A = A
        mu = backend.mu()
        cs = list(coords)
        if len(cs) != mu:
            raise ValueError(f"expected {mu} coordinates, got {len(cs)}")
        self.coords = tuple(c if isinstance(c, Poly) else Poly(backend.field, c)
                            for c in cs)

    @classmethod
    def zero(cls, backend, A: Divisor) -> "FuncElem":
        z = Poly.zero(backend.field)
        return cls(backend, A, [z] * backend.mu())

    @classmethod
    def one(cls, backend) -> "FuncElem":
        A = Divisor(backend)
        cs = [Poly.zero(backend.field)] * backend.mu()
        cs[0] = Poly.one(backend.field)
        return cls(backend, A, cs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def delta(self):
        """Pole order at infinity relative to A; -inf for zero."""
        mu = self.backend.mu()
        best = NEG_INF
        for i, c in enumerate(self.coords):
            if not c.is_zero():
                v = mu * c.deg + self.backend.apery_delta(self.A, i)
                if v > best:
                    best = v
        return best

    def __add__(self, o: "FuncElem") -> "FuncElem":
        if o.A != self.A:
            raise ValueError("cannot add elements tagged by different divisors")
        return FuncElem(self.backend, self.A,
                        [a + b for a, b in zip(self.coords, o.coords)])

    def __neg__(self) -> "FuncElem":
        return FuncElem(self.backend, self.A, [-c for c in self.coords])

    def __sub__(self, o: "FuncElem") -> "FuncElem":
        return self + (-o)

    def scale(self, s: int) -> "FuncElem":
        return FuncElem(self.backend, self.A, [c.scale(s) for c in self.coords])

    def __mul__(self, o: "FuncElem") -> "FuncElem":
        return self.backend.mul_elems(self, o)

    def pow(self, e: int) -> "FuncElem":
        if e < 0:
            raise ValueError("negative powers not supported")
        r = FuncElem.one(self.backend)
        for _ in range(e):
            r = r * self
        return r

    def eval_at(self, place: Place) -> int:
        b = self.backend
        xv = b.x_eval(place)
        acc = 0
        for i, c in enumerate(self.coords):
            acc = b.field.add(acc, b.field.mul(c(xv), b.apery_eval(self.A, i, place)))
        return acc

    def series(self, prec: int) -> np.ndarray:
        """Expansion at P0 in powers of x, as a coefficient array mod x^prec."""
        b = self.backend
        acc = np.zeros(0, dtype=np.int64)
        for i, c in enumerate(self.coords):
            if not c.is_zero():
                acc = padd(b.field, acc,
                           ptrunc(pmul(b.field, c.c, b.apery_series(self.A, i, prec)), prec))
        return acc

    def key(self):
        return tuple(tuple(c.coeffs()) for c in self.coords)

    def __eq__(self, o):
        return (isinstance(o, FuncElem) and self.backend is o.backend
                and self.A == o.A and self.coords == o.coords)

    def __hash__(self):
        return hash((self.A.key(), self.key()))

    def __repr__(self):
        return f"FuncElem(A={self.A!r}, coords={[c.coeffs() for c in self.coords]})"


def x_partition(backend, places) -> list[list[Place]]:
    """Split distinct affine places into mu parts, balanced in size and
    injective under x within each part (greedy insert with a swap step)."""
    mu = backend.mu()
    parts: list[list[Place]] = [[] for _ in range(mu)]
    xvals: list[set[int]] = [set() for _ in range(mu)]
    seen = set()
    for pl in places:
        if pl.is_infinity():
            raise ValueError("x_partition: place at infinity not allowed")
        if pl in seen:
            raise ValueError("x_partition: repeated place")
        seen.add(pl)
        xv = backend.x_eval(pl)
        valid = [k for k in range(mu) if xv not in xvals[k]]
        if not valid:
            raise ValueError("x_partition: more than mu places share one x value")
        a = min(range(mu), key=lambda k: (len(parts[k]), k))
        b = min(valid, key=lambda k: (len(parts[k]), k))
        if len(parts[a]) == len(parts[b]):
            parts[b].append(pl)
            xvals[b].add(xv)
        else:
            # the globally smallest part holds an x-collision; swap one of its
            # places with a fresh-x place from the smallest valid part
            ea = next(p for p in parts[a] if backend.x_eval(p) == xv)
            eb = next(p for p in parts[b]
                      if backend.x_eval(p) not in xvals[a])
            parts[a].remove(ea)
            xvals[a].discard(xv)
            parts[a].extend([eb, pl])
            xvals[a].add(backend.x_eval(eb))
            xvals[a].add(xv)
            parts[b].remove(eb)
            xvals[b].discard(backend.x_eval(eb))
            parts[b].append(ea)
            xvals[b].add(xv)
    return parts


class Backend:
    """Shared interface of the curve backends."""

    field: Field

    def mu(self) -> int:
        raise NotImplementedError

    def genus(self) -> int:
        raise NotImplementedError

    def p_infinity(self) -> Place:
        return Place.infinity()

    def p0(self) -> Place:
        raise NotImplementedError

    def x_eval(self, place: Place) -> int:
        raise NotImplementedError

    def enumerate_places(self, e: int = 1) -> list[Place]:
        """All affine rational places after extending constants by degree e."""
        raise NotImplementedError

    def extended(self, e: int) -> "Backend":
        raise NotImplementedError

    def apery_delta(self, A: Divisor, i: int) -> int:
        raise NotImplementedError

    def apery_eval(self, A: Divisor, i: int, place: Place) -> int:
        raise NotImplementedError

    def apery_series(self, A: Divisor, i: int, prec: int) -> np.ndarray:
        raise NotImplementedError

    def ideal_generators(self, A: Divisor) -> list[FuncElem]:
        raise NotImplementedError

    def mul_elems(self, a: FuncElem, b: FuncElem) -> FuncElem:
        raise NotImplementedError

    def divisor(self, mults: dict[Place, int]) -> Divisor:
        return Divisor(self, mults)

    def zero_divisor(self) -> Divisor:
        return Divisor(self)

    def lg_basis(self, G: Divisor) -> list[FuncElem]:
        """Basis of L(G): x^j * y_i^(G) with mu*j + delta_i <= 0."""
        mu = self.mu()
        out = []
        for i in range(mu):
            d = self.apery_delta(G, i)
            jmax = (-d) // mu if d <= 0 else -1
            for j in range(jmax + 1):
                cs = [Poly.zero(self.field)] * mu
                cs[i] = Poly(self.field, [0] * j + [1])
                out.append(FuncElem(self, G, cs))
        return out

    def local_expansion(self, a: FuncElem, place: Place, prec: int) -> np.ndarray:
        """Expansion of `a` at an affine place in its local parameter
        (test oracle; P0 gives the same result as FuncElem.series)."""
        raise NotImplementedError


class RationalBackend(Backend):
    """The rational function field over `field`: genus 0, mu 1.

    The module variable is x - offset, where the offset is the least field
    element whose place is outside `avoid_x` (keeps P0 clear of the code
    divisor G).  Place descriptors keep the raw x coordinate.
    """

    def __init__(self, field: Field, avoid_x=frozenset(), offset: int | None = None):
        self.field = field
        if offset is None:
            avoid = {int(a) for a in avoid_x}
            offset = next((a for a in range(field.q) if a not in avoid), None)
            if offset is None:
                raise ValueError("no place left to host P0")
        self.offset = int(offset)
        self._apery: dict = {}

    def mu(self) -> int:
        return 1

    def genus(self) -> int:
        return 0

    def p0(self) -> Place:
        return Place("x", (self.offset,))

    def x_eval(self, place: Place) -> int:
        if place.is_infinity():
            raise ValueError("x has a pole at infinity")
        return self.field.sub(place.coords[0], self.offset)

    def enumerate_places(self, e: int = 1) -> list[Place]:
        if e == 1:
            return [Place("x", (a,)) for a in range(self.field.q)]
        return self.extended(e).enumerate_places(1)

    def extended(self, e: int) -> "RationalBackend":
        """Same curve over the degree-e constant extension; P0 keeps the
        embedded descriptor so base-field elements keep base-field coords."""
        if e == 1:
            return self
        big = field_make(self.field.p, self.field.k * e)
        emb = embed_map(self.field, big)
        return RationalBackend(big, offset=int(emb[self.offset]))

    # -- canonical ideal basis --------------------------------------------

    def _data(self, A: Divisor):
        key = A.key()
        d = self._apery.get(key)
        if d is None:
            if A.backend is not self:
                raise ValueError("divisor belongs to another backend")
            num = Poly.one(self.field)
            den = Poly.one(self.field)
            xs = Poly.x(self.field)
            for p, v in A.finite_items():
                fac = Poly(self.field, [self.field.neg(p.coords[0]), 1])
                for _ in range(abs(v)):
                    if v < 0:
                        num = num * fac
                    else:
                        den = den * fac
            d = (num, den, -A.degree())
            self._apery[key] = d
        return d

    def apery_delta(self, A: Divisor, i: int) -> int:
        if i != 0:
            raise IndexError("mu = 1")
        return self._data(A)[2]

    def apery_eval(self, A: Divisor, i: int, place: Place) -> int:
        num, den, _ = self._data(A)
        xv = place.coords[0]
        dv = den(xv)
        if dv == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.field.div(num(xv), dv)

    def apery_series(self, A: Divisor, i: int, prec: int) -> np.ndarray:
        num, den, _ = self._data(A)
        nt = _compose_linear(self.field, num.c, self.offset)
        dt = _compose_linear(self.field, den.c, self.offset)
        if dt.size == 0 or dt[0] == 0:
            raise ZeroDivisionError("P0 lies in the support of the divisor")
        return ptrunc(pmul(self.field, ptrunc(nt, prec), series_inv(self.field, dt, prec)), prec)

    def ideal_generators(self, A: Divisor) -> list[FuncElem]:
        return [FuncElem(self, A, [Poly.one(self.field)])]

    def mul_elems(self, a: FuncElem, b: FuncElem) -> FuncElem:
        if a.backend is not self or b.backend is not self:
            raise ValueError("element from another backend")
        return FuncElem(self, a.A + b.A, [a.coords[0] * b.coords[0]])

    def local_expansion(self, a: FuncElem, place: Place, prec: int) -> np.ndarray:
        f = self.field
        alpha = place.coords[0]
        num, den, _ = self._data(a.A)
        nt = _compose_linear(f, num.c, alpha)
        dt = _compose_linear(f, den.c, alpha)
        if dt.size == 0 or dt[0] == 0:
            raise ZeroDivisionError("expansion at a pole")
        base = ptrunc(pmul(f, ptrunc(nt, prec), series_inv(f, dt, prec)), prec)
        # module variable in the local parameter: x - offset = t + (alpha - offset)
        coord = _compose_linear(f, a.coords[0].c, f.sub(alpha, self.offset))
        return ptrunc(pmul(f, ptrunc(coord, prec), base), prec)


def _compose_linear(f: Field, c: np.ndarray, offset: int) -> np.ndarray:
    """p(t + offset) for a coefficient array p (Horner in (t + offset))."""
    acc = np.zeros(0, dtype=np.int64)
    shift_poly = np.array([offset, 1], dtype=np.int64)
    for k in range(c.size - 1, -1, -1):
        acc = padd(f, pmul(f, acc, shift_poly), np.array([int(c[k])], dtype=np.int64))
    return acc


class HermitianBackend(Backend):
    """The Hermitian curve x2^q0 + x2 = x1^(q0+1) over an extension of
    F_{q0^2}; mu = q0, genus = q0(q0-1)/2, x := x1, P0 = (0,0).

    Supported divisors: c*Pinf plus any fiber-aligned finite part, i.e. for
    each x1 value in the support all q0 places of that fiber occur with one
    common multiplicity.
    """

    def __init__(self, q0: int, field: Field | None = None):
        pr, m = _prime_power(q0)
        self.q0 = q0
        base = field_make(pr, 2 * m)
        self.base_field = base
        self.field = field if field is not None else base
        if self.field.p != pr or self.field.k % (2 * m) != 0:
            raise ValueError("field must extend F_{q0^2}")
        self._apery: dict = {}
        self._x2_series: np.ndarray = np.zeros(0, dtype=np.int64)
        self._x2_prec = 0
        self._places: dict[int, list[Place]] = {}

    def mu(self) -> int:
        return self.q0

    def genus(self) -> int:
        return self.q0 * (self.q0 - 1) // 2

    def p0(self) -> Place:
        return Place("pt", (0, 0))

    def x_eval(self, place: Place) -> int:
        if place.is_infinity():
            raise ValueError("x has a pole at infinity")
        return place.coords[0]

    def on_curve(self, a: int, b: int) -> bool:
        f = self.field
        return f.add(f.pow(b, self.q0), b) == f.pow(a, self.q0 + 1)

    def enumerate_places(self, e: int = 1) -> list[Place]:
        if e != 1:
            return self.extended(e).enumerate_places(1)
        got = self._places.get(1)
        if got is None:
            f = self.field
            buckets: dict[int, list[int]] = {}
            for b in range(f.q):
                buckets.setdefault(f.add(f.pow(b, self.q0), b), []).append(b)
            got = [Place("pt", (a, b))
                   for a in range(f.q)
                   for b in buckets.get(f.pow(a, self.q0 + 1), [])]
            got.sort()
            self._places[1] = got
        return got

    def extended(self, e: int) -> "HermitianBackend":
        if e == 1:
            return self
        big = field_make(self.field.p, self.field.k * e)
        return HermitianBackend(self.q0, big)

    # -- canonical ideal basis --------------------------------------------

    def _fibers(self, A: Divisor) -> tuple[int, tuple[tuple[int, int], ...]]:
        """(infinity multiplicity c, ((x1 value, r), ...)) with the finite
        part equal to -sum_r r * (full fiber)."""
        c = A.inf_mult()
        fin = A.finite_items()
        by_x: dict[int, list[tuple[Place, int]]] = {}
        for p, v in fin:
            by_x.setdefault(p.coords[0], []).append((p, v))
        fibers = []
        for xv in sorted(by_x):
            entries = by_x[xv]
            mults = {v for _, v in entries}
            if len(mults) != 1 or len(entries) != self.q0:
                raise ValueError(
                    "unsupported divisor shape: finite part must consist of "
                    "full x1 fibers with one multiplicity per fiber")
            fibers.append((xv, -entries[0][1]))
        return c, tuple(fibers)

    def _data(self, A: Divisor):
        key = A.key()
        d = self._apery.get(key)
        if d is None:
            if A.backend is not self:
                raise ValueError("divisor belongs to another backend")
            c, fibers = self._fibers(A)
            h_num = Poly.one(self.field)
            h_den = Poly.one(self.field)
            deg_h = 0
            for xv, r in fibers:
                fac = Poly(self.field, [self.field.neg(xv), 1])
                deg_h += r
                for _ in range(abs(r)):
                    if r > 0:
                        h_num = h_num * fac
                    else:
                        h_den = h_den * fac
            d = (c, fibers, h_num, h_den, deg_h)
            self._apery[key] = d
        return d

    def _sigma(self, A: Divisor, i: int) -> int:
        c, _, _, _, _ = self._data(A)
        return (i + c) % self.q0

    def apery_delta(self, A: Divisor, i: int) -> int:
        if not 0 <= i < self.q0:
            raise IndexError("index out of range")
        c, _, _, _, deg_h = self._data(A)
        return self._sigma(A, i) * (self.q0 + 1) + self.q0 * deg_h - c

    def apery_eval(self, A: Divisor, i: int, place: Place) -> int:
        f = self.field
        _, _, h_num, h_den, _ = self._data(A)
        a, b = place.coords
        dv = h_den(a)
        if dv == 0:
            raise ZeroDivisionError("evaluation at a pole")
        hval = f.div(h_num(a), dv)
        return f.mul(f.pow(b, self._sigma(A, i)), hval)

    def x2_series(self, prec: int) -> np.ndarray:
        """Expansion of x2 at P0 = (0,0) in powers of x1 (valuation q0+1).

        Newton iteration on the curve equation; the x2-derivative is the
        constant 1, so each step maps phi to x1^(q0+1) - phi^q0 and the error
        valuation multiplies by q0.
        """
        if self._x2_prec < prec:
            f = self.field
            target = pshift(np.ones(1, dtype=np.int64), self.q0 + 1)
            phi = np.zeros(0, dtype=np.int64)
            for _ in range(prec + 2):
                nxt = ptrunc(_series_pow(f, phi, self.q0, prec), prec)
                nxt = padd(f, pneg(f, nxt), ptrunc(target, prec))
                if nxt.size == phi.size and bool(np.all(nxt == phi)):
                    break
                phi = nxt
            self._x2_series = phi
            self._x2_prec = prec
        return ptrunc(self._x2_series, prec)

    def apery_series(self, A: Divisor, i: int, prec: int) -> np.ndarray:
        f = self.field
        _, fibers, h_num, h_den, _ = self._data(A)
        if any(xv == 0 and r < 0 for xv, r in fibers):
            raise ZeroDivisionError("basis function has a pole at P0")
        x2s = self.x2_series(prec)
        res = _series_pow(f, x2s, self._sigma(A, i), prec)
        res = ptrunc(pmul(f, res, ptrunc(h_num.c, prec)), prec) if not h_num.is_one() else res
        if not h_den.is_one():
            res = ptrunc(pmul(f, res, series_inv(f, h_den.c, prec)), prec)
        return res

    def ideal_generators(self, A: Divisor) -> list[FuncElem]:
        c, _, _, _, _ = self._data(A)
        i_star = (-c) % self.q0
        cs = [Poly.zero(self.field)] * self.q0
        cs[i_star] = Poly.one(self.field)
        return [FuncElem(self, A, cs)]

    def mul_elems(self, a: FuncElem, b: FuncElem) -> FuncElem:
        if a.backend is not self or b.backend is not self:
            raise ValueError("element from another backend")
        f = self.field
        q0 = self.q0
        AB = a.A + b.A
        # convolve in powers of x2, then reduce with x2^q0 = x^(q0+1) - x2
        res = [np.zeros(0, dtype=np.int64) for _ in range(2 * q0 - 1)]
        for i, ca in enumerate(a.coords):
            if ca.is_zero():
                continue
            ja = self._sigma(a.A, i)
            for j, cb in enumerate(b.coords):
                if cb.is_zero():
                    continue
                jb = self._sigma(b.A, j)
                res[ja + jb] = padd(f, res[ja + jb], pmul(f, ca.c, cb.c))
        xq1 = pshift(np.ones(1, dtype=np.int64), q0 + 1)
        for m in range(2 * q0 - 2, q0 - 1, -1):
            top = res[m]
            if top.size:
                res[m - q0] = padd(f, res[m - q0], pmul(f, xq1, top))
                res[m - q0 + 1] = padd(f, res[m - q0 + 1], pneg(f, top))
                res[m] = np.zeros(0, dtype=np.int64)
        coords = [Poly._raw(f, res[self._sigma(AB, i)]) for i in range(q0)]
        return FuncElem(self, AB, coords)

    def local_expansion(self, a: FuncElem, place: Place, prec: int) -> np.ndarray:
        """Expansion at any affine place in the local parameter x1 - x1(P)."""
        f = self.field
        av, bv = place.coords
        # x2 as a series in t with constant term bv: Newton on the curve
        x1s = np.array([av, 1], dtype=np.int64)  # x1 = t + av
        target = ptrunc(_series_pow(f, x1s, self.q0 + 1, prec), prec)
        phi = np.array([bv], dtype=np.int64) if bv else np.zeros(0, dtype=np.int64)
        for _ in range(prec + 2):
            nxt = padd(f, pneg(f, ptrunc(_series_pow(f, phi, self.q0, prec), prec)), target)
            if nxt.size == phi.size and bool(np.all(nxt == phi)):
                break
            phi = nxt
        x2s = phi
        _, fibers, h_num, h_den, _ = self._data(a.A)
        if any(xv == av and r < 0 for xv, r in fibers):
            raise ZeroDivisionError("expansion at a pole")
        hn = _compose_linear(f, h_num.c, av)
        hd = _compose_linear(f, h_den.c, av)
        hval = ptrunc(pmul(f, ptrunc(hn, prec), series_inv(f, hd, prec)), prec) \
            if not (h_num.is_one() and h_den.is_one()) else np.ones(1, dtype=np.int64)
        acc = np.zeros(0, dtype=np.int64)
        for i, c in enumerate(a.coords):
            if c.is_zero():
                continue
            coord_t = ptrunc(_compose_linear(f, c.c, av), prec)
            term = ptrunc(pmul(f, coord_t, _series_pow(f, x2s, self._sigma(a.A, i), prec)), prec)
            acc = padd(f, acc, ptrunc(pmul(f, term, hval), prec))
        return acc


def _series_pow(f: Field, base: np.ndarray, e: int, prec: int) -> np.ndarray:
    r = np.ones(1, dtype=np.int64)
    b = ptrunc(base, prec)
    while e:
        if e & 1:
            r = ptrunc(pmul(f, r, b), prec)
        b = ptrunc(pmul(f, b, b), prec)
        e >>= 1
    return r


def _prime_power(q0: int):
    if q0 < 2:
        raise ValueError("q0 must be a prime power >= 2")
    for p in range(2, q0 + 1):
        if q0 % p == 0:
            m = 0
            t = q0
            while t % p == 0:
                t //= p
                m += 1
            if t != 1:
                raise ValueError(f"{q0} is not a prime power")
            return p, m
    raise ValueError(f"{q0} is not a prime power")


def backend_rational(field: Field, avoid_x=frozenset()) -> RationalBackend:
    """Rational function field backend (GRS codes)."""
    return RationalBackend(field, avoid_x)


def backend_hermitian(q0: int, field: Field | None = None) -> HermitianBackend:
    """Hermitian curve backend over F_{q0^2} (or the given extension)."""
    return HermitianBackend(q0, field)
