"""Core decoding algebra: fast evaluation and interpolation of ring elements
over many places, construction of the interpolation-module generators for a
received word, and extraction of a minimal z-polynomial Q from the assembled
coefficient matrix.

Everything here works over one fixed backend (already extended to the
working constant field) through a Tables bundle that holds the precomputed
evaluation data.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .fields import Field
from .funcfield import Backend, Divisor, FuncElem, Place, x_partition
from .poly import (NEG_INF, Poly, padd, pdeg, peval_many, pmul, pneg, pscale,
                   ptrim, ptrunc, vanishing_poly)
from .polymat import PolyMat, Shift, hp_basis, minimal_row, popov, sdeg


class InterpolationError(ValueError):
    """No interpolant satisfied the degree constraints (bad preconditions)."""


def binom_mod_p(u: int, r: int, p: int) -> int:
    """Binomial coefficient C(u, r) mod p via base-p digits (Lucas)."""
    if r < 0 or r > u:
        return 0
    out = 1
    while u or r:
        du, dr = u % p, r % p
        if dr > du:
            return 0
        num = den = 1
        for i in range(dr):
            num = num * (du - i) % p
            den = den * (i + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        u //= p
        r //= p
    return out


class NodeSet:
    """Evaluation places with their x-partition and per-part Lagrange data."""

    __slots__ = ("f", "backend", "places", "xs", "parts_idx", "umoduli", "lag")

    def __init__(self, backend: Backend, places: list[Place]):
        self.backend = backend
        self.f = backend.field
        self.places = list(places)
        self.xs = np.array([backend.x_eval(p) for p in places], dtype=np.int64)
        parts = x_partition(backend, places)
        pos = {p: j for j, p in enumerate(places)}
        self.parts_idx = [np.array(sorted(pos[p] for p in part), dtype=np.int64)
                          for part in parts]
        self.umoduli = []
        self.lag = []
        for idx in self.parts_idx:
            nodes = self.xs[idx]
            self.umoduli.append(vanishing_poly(self.f, nodes.tolist()).c)
            self.lag.append(_lagrange_data(self.f, nodes))

    @property
    def n(self) -> int:
        return len(self.places)

    def part_interp(self, k: int, vals: np.ndarray) -> np.ndarray:
        """Coefficients of the poly through (nodes of part k, vals)."""
        return _lagrange_apply(self.f, self.lag[k], vals)

    def interp_rows(self, vals: np.ndarray) -> list[np.ndarray]:
        """One interpolant per part for a full-length value vector."""
        return [self.part_interp(k, vals[idx]) for k, idx in enumerate(self.parts_idx)]


def _lagrange_data(f: Field, xs: np.ndarray):
    n = xs.size
    if n == 0:
        return (xs, None, None)
    vv = vanishing_poly(f, xs.tolist()).c
    Q = np.zeros((n, n), dtype=np.int64)
    Q[:, n - 1] = int(vv[n])
    for k in range(n - 2, -1, -1):
        Q[:, k] = f.vadd(f.vmul(xs, Q[:, k + 1]), int(vv[k + 1]))
    dens = np.zeros(n, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        dens = f.vadd(f.vmul(dens, xs), Q[:, k])
    if f._inv is not None:
        wi = f._inv[dens].astype(np.int64)
    else:
        wi = np.array([f.inv(int(d)) for d in dens], dtype=np.int64)
    return (xs, Q, wi)


def _lagrange_apply(f: Field, data, vals: np.ndarray) -> np.ndarray:
    xs, Q, wi = data
    if Q is None:
        return np.zeros(0, dtype=np.int64)
    scale = f.vmul(np.asarray(vals, dtype=np.int64), wi)
    rows = f.vmul(scale[:, None], Q)
    acc = reduce(lambda u, v: f.vadd(u, v), rows)
    return ptrim(np.asarray(acc, dtype=np.int64))


class Tables:
    """Precomputed evaluation data the decoding pipeline consumes.

    Divisor keys: integers t = 0..ell stand for -t*G; the string "G" stands
    for G itself.
    """

    __slots__ = ("backend", "f", "s", "ell", "G", "degG", "genus", "mu",
                 "E", "D", "divisors", "deltas", "ytab_E", "ytab_D",
                 "g_evals", "g_deltas", "S_E", "S_D",
                 "yhat", "beta_max", "n", "N")

    def __init__(self, backend: Backend, G: Divisor, D_places: list[Place],
                 E_places: list[Place], s: int, ell: int):
        self.backend = backend
        self.f = backend.field
        self.s, self.ell = s, ell
        self.G = G
        self.degG = G.degree()
        self.genus = backend.genus()
        self.mu = backend.mu()
        self.n = len(D_places)
        self.N = len(E_places)
        self.E = NodeSet(backend, E_places)
        self.D = NodeSet(backend, D_places)
        self.divisors: dict = {"G": G}
        for t in range(ell + 1):
            self.divisors[t] = G.scale(-t)
        self.deltas = {key: [backend.apery_delta(A, i) for i in range(self.mu)]
                       for key, A in self.divisors.items()}
        self.ytab_E = {key: _eval_basis(backend, A, E_places)
                       for key, A in self.divisors.items()}
        self.ytab_D = {"G": _eval_basis(backend, G, D_places)}
        self.S_E = {key: _interp_basis(self.E, tab)
                    for key, tab in self.ytab_E.items()}
        self.S_D = {"G": _interp_basis(self.D, self.ytab_D["G"])}
        self.g_evals = []
        self.g_deltas = []
        self.yhat = None
        self.beta_max = 0

    def div_deg(self, key) -> int:
        return self.divisors[key].degree()

    def attach_generators(self, g_elems: list[FuncElem]):
        """Evaluations over E of one ideal generator per z-degree u.

        The generators live in ideals outside the tabled family, so they are
        evaluated place by place (precompute-time cost only).
        """
        self.g_evals = [np.array([g.eval_at(p) for p in self.E.places],
                                 dtype=np.int64) for g in g_elems]
        self.g_deltas = [g.delta() for g in g_elems]

    def attach_series(self, beta_max: int):
        """Basis expansions at P0 for every needed divisor, mod x^beta_max."""
        b = self.backend
        self.beta_max = beta_max
        self.yhat = {key: [b.apery_series(A, i, beta_max) for i in range(self.mu)]
                     for key, A in self.divisors.items()}


def _eval_basis(backend: Backend, A: Divisor, places) -> np.ndarray:
    mu = backend.mu()
    out = np.zeros((mu, len(places)), dtype=np.int64)
    for i in range(mu):
        for j, p in enumerate(places):
            out[i, j] = backend.apery_eval(A, i, p)
    return out


def _interp_basis(nodes: NodeSet, ytab: np.ndarray) -> list[list[np.ndarray]]:
    """S[i][k]: the part-k interpolant of the i-th basis function's values."""
    mu = ytab.shape[0]
    return [nodes.interp_rows(ytab[i]) for i in range(mu)]


def evaluate_elem(tables: Tables, a: FuncElem, over: str = "E") -> np.ndarray:
    """Values of `a` at the node set, by univariate evaluation per coordinate
    and a pointwise basis combination."""
    nodes = tables.E if over == "E" else tables.D
    key = _divkey(tables, a.A)
    ytab = (tables.ytab_E if over == "E" else tables.ytab_D)[key]
    f = tables.f
    acc = np.zeros(nodes.n, dtype=np.int64)
    for i, c in enumerate(a.coords):
        if not c.is_zero():
            acc = f.vadd(acc, f.vmul(peval_many(f, c.c, nodes.xs), ytab[i]))
    return acc


def _divkey(tables: Tables, A: Divisor):
    for key, B in tables.divisors.items():
        if A == B:
            return key
    raise KeyError(f"no tables for divisor {A!r}")


def interpolate(tables: Tables, w: np.ndarray, divkey, over: str = "E") -> FuncElem:
    """Interpolant in the ideal of `divkey` through (node_j, w_j), with the
    minimal pole order at infinity among all interpolants.

    Raises InterpolationError when no basis row satisfies the degree bounds
    (which signals violated preconditions).
    """
    nodes = tables.E if over == "E" else tables.D
    f = tables.f
    mu = tables.mu
    A = tables.divisors[divkey]
    degA = A.degree()
    deltas = tables.deltas[divkey]
    S = (tables.S_E if over == "E" else tables.S_D)[divkey]
    w = np.asarray(w, dtype=np.int64)
    neg_w = f.vneg(w)
    T = nodes.interp_rows(neg_w)
    amat = [[S[i][k] for k in range(mu)] for i in range(mu)]
    amat.append([T[k] for k in range(mu)])
    d_scaled = [nodes.n + 2 * tables.genus - degA - deltas[i] for i in range(mu)]
    shift = Shift(tuple(-v for v in d_scaled) + (0,), mu)
    P = hp_basis(f, amat, nodes.umoduli, shift)
    for row in P.rows:
        last = row[mu]
        if last.size == 1 and int(last[0]) == 1:
            if all(mu * pdeg(row[i]) < d_scaled[i] if row[i].size else True
                   for i in range(mu)):
                return FuncElem(tables.backend, A, [Poly._raw(f, row[i]) for i in range(mu)])
    raise InterpolationError("no interpolant within the degree bounds")


class ZPoly:
    """Polynomial in z whose t-th coefficient lives in the ideal of -t*G."""

    __slots__ = ("tables", "coeffs")

    def __init__(self, tables: Tables, coeffs: list[FuncElem]):
        if len(coeffs) != tables.ell + 1:
            raise ValueError("need ell + 1 coefficients")
        self.tables = tables
        self.coeffs = list(coeffs)

    @classmethod
    def from_dict(cls, tables: Tables, by_t: dict[int, FuncElem]) -> "ZPoly":
        cs = [by_t.get(t) or FuncElem.zero(tables.backend, tables.divisors[t])
              for t in range(tables.ell + 1)]
        return cls(tables, cs)

    def delta_G(self):
        return max((c.delta() for c in self.coeffs), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def z_degree(self):
        for t in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[t].is_zero():
                return t
        return NEG_INF

    def eval_elem(self, fel: FuncElem) -> FuncElem:
        """Q(f) as a ring element (exact coordinate arithmetic)."""
        b = self.tables.backend
        acc = FuncElem.zero(b, b.zero_divisor())
        fpow = FuncElem.one(b)
        for t, c in enumerate(self.coeffs):
            if t:
                fpow = fpow * fel
            if not c.is_zero():
                acc = acc + (fpow * c)
        return acc

    def key(self):
        return tuple(c.key() for c in self.coeffs)

    def __repr__(self):
        return f"ZPoly({[c.key() for c in self.coeffs]})"


class GenSet:
    """Generating set of the interpolation module, as ZPolys with their
    (v, u[, i]) labels."""

    __slots__ = ("tables", "alternative", "expanded", "items")

    def __init__(self, tables: Tables, alternative: bool, expanded: bool,
                 items: list[tuple]):
        self.tables = tables
        self.alternative = alternative
        self.expanded = expanded
        self.items = items  # [(label tuple, ZPoly)]

    def zpolys(self) -> list[ZPoly]:
        return [z for _, z in self.items]


def generators_ring(tables: Tables, word: np.ndarray, alternative: bool) -> GenSet:
    """The 2(ell+1) module generators for a received word.

    Built from the interpolant R of the word over the code places: powers of
    (-R) are formed pointwise on the auxiliary places and each z-coefficient
    is recovered by minimal interpolation, so the products never materialize
    as explicit function products.
    """
    f = tables.f
    s, ell = tables.s, tables.ell
    n, N = tables.n, tables.N
    g = tables.genus
    degG = tables.degG
    if len(word) != n:
        raise ValueError("received word has wrong length")
    R = interpolate(tables, np.asarray(word, dtype=np.int64), "G", over="D")
    neg_R_E = f.vneg(evaluate_elem(tables, R, over="E"))
    pmax = min(s, ell) if alternative else ell
    powers = [np.ones(N, dtype=np.int64)]
    for _ in range(pmax):
        powers.append(f.vmul(powers[-1], neg_R_E))
    out = []
    p = f.p
    for u in range(ell + 1):
        gev = tables.g_evals[u]
        coeffs: dict[int, FuncElem] = {}
        if alternative and u > s:
            terms = [(u - s + j, s - j, binom_mod_p(s, j, p)) for j in range(s + 1)]
        else:
            terms = [(t, u - t, binom_mod_p(u, t, p)) for t in range(u + 1)]
        for t, pw, bin_p in terms:
            if bin_p == 0:
                continue
            vals = f.vmul(powers[pw], gev)
            c = interpolate(tables, vals, t, over="E")
            bound = (t + 1) * degG + (u - t + 2) * (2 * g - 1) + 1 + (s + 1) * n
            if c.delta() is not NEG_INF and c.delta() > bound:
                raise AssertionError("generator coefficient exceeds its size bound")
            if bin_p != 1:
                c = c.scale(bin_p)
            coeffs[t] = c
        z = ZPoly.from_dict(tables, coeffs)
        out.append(((1, u), z))
    out = out + [((2, u), z) for (_, u), z in out]
    return GenSet(tables, alternative, False, out)


def basis_products(tables: Tables, a: FuncElem, divkey) -> list[FuncElem]:
    """(a*y_0, ..., a*y_{mu-1}) over the basis of a's divisor, via one
    simultaneous congruence solve on the auxiliary places."""
    f = tables.f
    mu = tables.mu
    b = tables.backend
    A = tables.divisors[divkey]
    if a.A != A:
        raise ValueError("divisor key does not match the element")
    if a.is_zero():
        return [FuncElem.zero(b, A) for _ in range(mu)]
    if mu == 1:
        return [a]  # y_0 = 1
    degA = A.degree()
    da = a.delta()
    N = tables.N
    if N < degA + da + 2 * tables.genus + mu:
        raise ValueError("auxiliary place count too small for basis products")
    aE = evaluate_elem(tables, a, over="E")
    S = tables.S_E[divkey]
    y0tab = tables.ytab_E[0]
    nodes = tables.E
    amat = [[S[i][k] for k in range(mu)] for i in range(mu)]
    for i in range(mu):
        vals = f.vmul(aE, y0tab[i])
        amat.append(nodes.interp_rows(vals))
    deltasA = tables.deltas[divkey]
    deltas0 = tables.deltas[0]
    d_nums = tuple(deltasA[i] for i in range(mu)) + \
        tuple(deltas0[i] + da for i in range(mu))
    shift = Shift(d_nums, mu)
    P = hp_basis(f, amat, nodes.umoduli, shift)
    threshold = N - degA
    picked = [k for k in range(2 * mu) if sdeg(P.rows[k], shift) < threshold]
    if picked != list(range(mu, 2 * mu)):
        raise AssertionError("basis-product rows not in the expected position")
    out = []
    for k in range(mu):
        row = P.rows[mu + k]
        for j in range(mu):
            expect = 1 if j == k else None
            e = row[mu + j]
            ok = (e.size == 1 and int(e[0]) == 1) if expect else e.size == 0
            if not ok:
                raise AssertionError("basis-product right block is not the identity")
        out.append(FuncElem(b, A, [Poly._raw(f, pneg(f, row[i])) for i in range(mu)]))
    return out


def generators_polyring(tables: Tables, word: np.ndarray, alternative: bool) -> GenSet:
    """Expanded generating set: the 2*mu*(ell+1) products of the ring basis
    with the module generators, ready to flatten into a matrix."""
    ring = generators_ring(tables, word, alternative)
    mu = tables.mu
    N, g = tables.N, tables.genus
    items = []
    for (v, u), z in ring.items:
        if v != 1:
            continue
        prods_by_t: list[list[FuncElem] | None] = [None] * (tables.ell + 1)
        for t in range(tables.ell + 1):
            c = z.coeffs[t]
            if c.is_zero():
                continue
            if N < -t * tables.degG + c.delta() + 2 * g + mu:
                raise ValueError("auxiliary place count violates the product bound")
            prods_by_t[t] = basis_products(tables, c, t)
        for i in range(mu):
            coeffs = {t: prods[i] for t, prods in enumerate(prods_by_t) if prods}
            items.append(((1, u, i), ZPoly.from_dict(tables, coeffs)))
    items = items + [((2, u, i), z) for (v, u, i), z in items]
    return GenSet(tables, alternative, True, items)


class InterpMatrix:
    """Flattened generator matrix together with its degree shift."""

    __slots__ = ("tables", "mat", "shift")

    def __init__(self, tables: Tables, mat: PolyMat, shift: Shift):
        self.tables = tables
        self.mat = mat
        self.shift = shift


def flatten_zpoly(z: ZPoly) -> list[np.ndarray]:
    return [c.c for fel in z.coeffs for c in fel.coords]


def unflatten_row(tables: Tables, row) -> ZPoly:
    mu = tables.mu
    f = tables.f
    coeffs = []
    for t in range(tables.ell + 1):
        cs = [Poly._raw(f, row[t * mu + i]) for i in range(mu)]
        coeffs.append(FuncElem(tables.backend, tables.divisors[t], cs))
    return ZPoly(tables, coeffs)


def assemble(gens: GenSet) -> InterpMatrix:
    """Rows are the flattened generators; the shift makes mu*(shifted degree)
    equal the pole order delta_G of the unflattened z-polynomial."""
    tables = gens.tables
    mu = tables.mu
    if not gens.expanded:
        raise ValueError("assemble needs the expanded generating set")
    rows = [flatten_zpoly(z) for z in gens.zpolys()]
    width = mu * (tables.ell + 1)
    nums = tuple(tables.deltas[t][i] for t in range(tables.ell + 1) for i in range(mu))
    return InterpMatrix(tables, PolyMat(tables.f, rows, width), Shift(nums, mu))


def find_Q(im: InterpMatrix, bound: int):
    """Minimal-degree nonzero module element if small enough, else None.

    `bound` is the strict cap s*(n - tau) on the pole order at infinity.
    """
    tables = im.tables
    seen = set()
    rows = []
    for row in im.mat.rows:
        key = tuple(tuple(int(v) for v in c) for c in row)
        if key not in seen:
            seen.add(key)
            rows.append(row)
    M = PolyMat(im.mat.f, rows, im.mat.width)
    B = popov(M, Shift.zero(M.width))
    V = popov(B, im.shift)
    _, row = minimal_row(V, im.shift)
    if sdeg(row, im.shift) >= bound:
        return None
    return unflatten_row(tables, row)
