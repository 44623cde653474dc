"""Finite fields F_{p^k} with packed-integer element encoding.

An element is the integer sum(c_i * p**i) for its coefficient vector
(c_0,...,c_{k-1}) over F_p, little-endian digit order.  The same encoding is
used by every file format.  Fields with q <= _TABLE_CAP carry dense add/mul
tables (numpy) so that polynomial code can run vectorized.
"""

from __future__ import annotations

import numpy as np

_TABLE_CAP = 4096
_FIELD_CACHE: dict[tuple[int, int], "Field"] = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- minimal F_p[x] arithmetic on coefficient lists, used only to pick and
#    test the modulus and to bootstrap multiplication tables --

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    _fp_trim(res)
    # reduce modulo the monic polynomial `mod`
    dm = len(mod) - 1
    while len(res) - 1 >= dm:
        lead = res[-1]
        shift = len(res) - 1 - dm
        for i, mi in enumerate(mod):
            res[shift + i] = (res[shift + i] - lead * mi) % p
        _fp_trim(res)
    return res


def _fp_pow_xq(mod, p, e):
    """x^(p^e) mod `mod` by repeated p-th powering."""
    r = [0, 1]
    for _ in range(e):
        acc = [1]
        base = r
        n = p
        while n:
            if n & 1:
                acc = _fp_mulmod(acc, base, mod, p)
            base = _fp_mulmod(base, base, mod, p)
            n >>= 1
        r = acc
    return r


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while _fp_trim(b):
        # a mod b
        db = len(b) - 1
        inv_lb = pow(b[-1], p - 2, p)
        while len(_fp_trim(a)) - 1 >= db and a:
            lead = a[-1] * inv_lb % p
            shift = len(a) - 1 - db
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * bi) % p
            _fp_trim(a)
        a, b = b, a
    return a


def _is_irreducible(mod, p):
    """Rabin test for a monic polynomial over F_p."""
    k = len(mod) - 1
    if k == 1:
        return True
    xq = _fp_pow_xq(mod, p, k)
    if _fp_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(xq + [0, 0])]):
        return False
    r = 2
    kk = k
    primes = []
    while r * r <= kk:
        if kk % r == 0:
            primes.append(r)
            while kk % r == 0:
                kk //= r
        r += 1
    if kk > 1:
        primes.append(kk)
    for r in primes:
        xqd = _fp_pow_xq(mod, p, k // r)
        diff = [(c - (1 if i == 1 else 0)) % p for i, c in enumerate(xqd + [0, 0])]
        g = _fp_gcd(diff, mod, p)
        if len(g) - 1 != 0:
            return False
    return True


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over F_p with least packed encoding."""
    if k == 1:
        return (0, 1)
    for code in range(p ** k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        mod = coeffs + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")


class Field:
    """Immutable F_{p^k}; elements are ints in [0, q)."""

    __slots__ = ("p", "k", "q", "modulus", "_add", "_mul", "_neg", "_inv",
                 "_exp", "_log", "_embeds")

    def __init__(self, p: int, k: int):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** k > 2 ** 32:
            raise ValueError("field cardinality exceeds 2^32")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = _least_irreducible(p, k)
        self._embeds: dict[tuple[int, int], np.ndarray] = {}
        if self.q <= _TABLE_CAP:
            self._build_tables()
        else:
            self._add = self._mul = self._neg = self._inv = None
            self._exp = self._log = None

    # -- construction of dense tables ------------------------------------

    def _scalar_mul_boot(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        av = [(a // p ** i) % p for i in range(k)]
        bv = [(b // p ** i) % p for i in range(k)]
        cv = _fp_mulmod(av, bv, list(self.modulus), p)
        return sum(c * p ** i for i, c in enumerate(cv))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        dtype = np.int16 if q <= 2 ** 14 else np.int32
        idx = np.arange(q)
        if k == 1:
            self._add = ((idx[:, None] + idx[None, :]) % p).astype(dtype)
            self._neg = ((-idx) % p).astype(dtype)
        else:
            digits = np.zeros((q, k), dtype=np.int64)
            t = idx.copy()
            for i in range(k):
                digits[:, i] = t % p
                t //= p
            weights = p ** np.arange(k)
            s = (digits[:, None, :] + digits[None, :, :]) % p
            self._add = (s @ weights).astype(dtype)
            self._neg = (((-digits) % p) @ weights).astype(dtype)
        # multiplicative structure via a generator
        exp = np.zeros(2 * (q - 1), dtype=dtype)
        log = np.zeros(q, dtype=np.int64)
        g = None
        for cand in range(2, q):
            seen = set()
            t = 1
            ok = True
            for _ in range(q - 1):
                if t in seen:
                    ok = False
                    break
                seen.add(t)
                t = self._scalar_mul_boot(t, cand)
            if ok and t == 1 and len(seen) == q - 1:
                g = cand
                break
        if g is None:
            raise AssertionError("no multiplicative generator found")
        t = 1
        for i in range(q - 1):
            exp[i] = t
            log[t] = i
            t = self._scalar_mul_boot(t, g)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log
        la = log[idx]
        mul = exp[(la[:, None] + la[None, :]) % (q - 1)].astype(dtype)
        mul[0, :] = 0
        mul[:, 0] = 0
        self._mul = mul
        inv = np.zeros(q, dtype=dtype)
        inv[1:] = exp[(q - 1 - log[idx[1:]]) % (q - 1)]
        self._inv = inv

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is not None:
            return int(self._add[a, b])
        return self._slow_add(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return int(self._neg[a])
        return self._slow_neg(a)

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return int(self._mul[a, b])
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._inv is not None:
            return int(self._inv[a])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        e = int(e)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def _slow_add(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return (a + b) % p
        r = 0
        for i in range(k):
            r += ((a // p ** i + b // p ** i) % p) * p ** i
        return r

    def _slow_neg(self, a):
        p, k = self.p, self.k
        if k == 1:
            return (-a) % p
        r = 0
        for i in range(k):
            r += ((-(a // p ** i)) % p) * p ** i
        return r

    def _slow_mul(self, a, b):
        return self._scalar_mul_boot(a, b)

    # -- vectorized operations over numpy int arrays ----------------------

    def vadd(self, a, b):
        if self._add is not None:
            return self._add[a, b]
        if self.k == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return np.vectorize(self._slow_add)(a, b)

    def vneg(self, a):
        if self._neg is not None:
            return self._neg[a]
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return np.vectorize(self._slow_neg)(a)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self._mul is not None:
            return self._mul[a, b]
        if self.k == 1:
            return (np.asarray(a).astype(object) * np.asarray(b)) % self.p
        return np.vectorize(self._slow_mul)(a, b)

    # -- element utilities -------------------------------------------------

    def elements(self):
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p ** i) % p for i in range(self.k))

    def from_coeffs(self, cs) -> int:
        return sum((c % self.p) * self.p ** i for i, c in enumerate(cs))

    def frob(self, a: int) -> int:
        """a^p (Frobenius)."""
        return self.pow(a, self.p)

    def __repr__(self):
        return f"F_{self.q}" if self.k == 1 else f"F_{self.p}^{self.k}"

    def __reduce__(self):
        return (field_make, (self.p, self.k))


def field_make(p: int, k: int) -> Field:
    """The field F_{p^k} with the canonical (least) irreducible modulus."""
    key = (p, k)
    f = _FIELD_CACHE.get(key)
    if f is None:
        f = Field(p, k)
        _FIELD_CACHE[key] = f
    return f


def embed_map(src: Field, dst: Field) -> np.ndarray:
    """Encoding table of the canonical embedding src -> dst.

    The image of the source generator is the root of the source modulus in
    dst with least encoding, which makes the map a fixed ring homomorphism.
    """
    key = (src.p, src.k)
    cached = dst._embeds.get(key)
    if cached is not None:
        return cached
    if src.p != dst.p or dst.k % src.k != 0:
        raise ValueError(f"{src} does not embed into {dst}")
    if src is dst or (src.p == dst.p and src.k == dst.k):
        table = np.arange(src.q, dtype=np.int64)
        dst._embeds[key] = table
        return table
    root = None
    for cand in range(dst.q):
        acc = 0
        for c in reversed(src.modulus):
            acc = dst.add(dst.mul(acc, cand), c % dst.p)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise AssertionError("modulus has no root in the target field")
    table = np.zeros(src.q, dtype=np.int64)
    for a in range(src.q):
        acc = 0
        for c in reversed(src.coeffs(a)):
            acc = dst.add(dst.mul(acc, root), c)
        table[a] = acc
    dst._embeds[key] = table
    return table


def field_embed(a: int, src: Field, dst: Field) -> int:
    """Image of a single element under the canonical embedding."""
    return int(embed_map(src, dst)[a])
