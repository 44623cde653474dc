"""Code specification, precomputation, encoder, decoder, and test oracles.

Decoding may run over a constant-field extension of the code's field when
the backend cannot supply enough auxiliary places; received words are
embedded, the algebra runs in the extension, and results are pulled back by
keeping exactly the base-rational elements.
"""

from __future__ import annotations

import random

import numpy as np

from .fields import Field, embed_map, field_make
from .funcfield import (Backend, Divisor, FuncElem, HermitianBackend, Place,
                        RationalBackend, backend_hermitian, backend_rational)
from .interpolation import (GenSet, InterpMatrix, Tables, ZPoly, assemble,
                            evaluate_elem, find_Q, generators_polyring)
from .poly import NEG_INF, Poly, ptrunc
from .rootfind import root_finding


class _Fail:
    __slots__ = ()

    def __repr__(self):
        return "FAIL"

    def __bool__(self):
        return False


FAIL = _Fail()

_BRUTE_FORCE_CAP = 10 ** 7
_MAX_EXTENSION = 16


def choose_radius(n: int, g: int, degG: int, s: int, ell: int) -> int:
    """Largest radius tau for which a dimension count guarantees a nonzero
    interpolation polynomial below the decoding threshold; 0 if none does."""
    goal = n * s * (s + 1) // 2
    for tau in range(n, -1, -1):
        total = 0
        for t in range(ell + 1):
            total += max(0, s * (n - tau) - t * degG - g)
        if total > goal:
            return tau
    return 0


class CodeSpec:
    """An evaluation code plus decoding parameters.

    backend_kind is "rational" or "hermitian"; D is the ordered list of
    evaluation places; G is effective with support disjoint from D and
    0 <= deg G <= n + 2g - 1; 1 <= s <= ell; tau defaults to choose_radius
    and any explicit value is clamped by it.
    """

    def __init__(self, backend_kind: str, field_params: tuple,
                 D_places: list[Place], G_mults: dict[Place, int],
                 s: int, ell: int, tau: int | None = None):
        self.backend_kind = backend_kind
        self.field_params = tuple(field_params)
        if backend_kind == "rational":
            p, k = self.field_params
            base_field = field_make(p, k)
            avoid = {pl.coords[0] for pl in G_mults if not pl.is_infinity()}
            self.backend: Backend = backend_rational(base_field, avoid_x=avoid)
        elif backend_kind == "hermitian":
            (q0,) = self.field_params
            self.backend = backend_hermitian(q0)
        else:
            raise ValueError(f"unknown backend kind {backend_kind!r}")
        self.field = self.backend.field
        self.D = list(D_places)
        self.n = len(self.D)
        if self.n == 0:
            raise ValueError("empty evaluation place list")
        if len(set(self.D)) != self.n:
            raise ValueError("evaluation places must be distinct")
        if any(p.is_infinity() for p in self.D):
            raise ValueError("the infinite place cannot carry code positions")
        known = set(self.backend.enumerate_places(1))
        for p in self.D:
            if p not in known:
                raise ValueError(f"place {p.text()} is not on the curve")
        self.G = Divisor(self.backend, dict(G_mults))
        for p in self.G.support():
            if not p.is_infinity() and p not in known:
                raise ValueError(f"place {p.text()} is not on the curve")
        if not self.G.is_effective():
            raise ValueError("the code divisor G must be effective")
        if not self.G.disjoint_from(Divisor.of_places(self.backend, self.D)):
            raise ValueError("supp(G) must avoid the evaluation places")
        g = self.backend.genus()
        if not 0 <= self.G.degree() <= self.n + 2 * g - 1:
            raise ValueError("deg(G) outside [0, n + 2g - 1]")
        if backend_kind == "hermitian":
            _check_fiber_aligned(self.backend, self.D)
            if any(not p.is_infinity() and p.coords[0] == 0 for p in self.G.support()):
                raise ValueError("supp(G) blocks P0 (the x=0 fiber)")
            self.backend._fibers(self.G)  # validates the divisor shape
        if not (1 <= s <= ell):
            raise ValueError("need 1 <= s <= ell")
        self.s, self.ell = s, ell
        self.tau_max = choose_radius(self.n, g, self.G.degree(), s, ell)
        self.tau = self.tau_max if tau is None else max(0, min(int(tau), self.tau_max))
        self._codebook = None

    @property
    def degG(self) -> int:
        return self.G.degree()

    def genus(self) -> int:
        return self.backend.genus()

    def dimension(self) -> int:
        return len(self.backend.lg_basis(self.G))

    def clamp_tau(self, tau) -> int:
        if tau is None:
            return self.tau
        return max(0, min(int(tau), self.tau_max))


def _check_fiber_aligned(backend: HermitianBackend, places: list[Place]):
    by_x: dict[int, int] = {}
    for p in places:
        by_x[p.coords[0]] = by_x.get(p.coords[0], 0) + 1
    for xv, cnt in by_x.items():
        if cnt != backend.mu():
            raise ValueError(
                "evaluation places must cover full x1 fibers "
                f"(fiber x1={xv} has {cnt} of {backend.mu()} places)")


class Precomp:
    """Extension choice, embedded divisors, and all evaluation/series tables."""

    def __init__(self, spec: CodeSpec, e: int, tables: Tables):
        self.spec = spec
        self.e = e
        self.tables = tables
        self.backend = tables.backend
        base_f = spec.field
        self.emb = embed_map(base_f, tables.f)
        self.inv_emb = {int(v): a for a, v in enumerate(self.emb)}

    def embed_word(self, word) -> np.ndarray:
        if len(word) != self.spec.n:
            raise ValueError("word length mismatch")
        return self.emb[np.asarray(word, dtype=np.int64)]

    def pullback_word(self, vals: np.ndarray) -> list[int]:
        out = []
        for v in vals:
            b = self.inv_emb.get(int(v))
            if b is None:
                raise ValueError("value outside the base field")
            out.append(b)
        return out

    def embed_elem(self, fel: FuncElem) -> FuncElem:
        if fel.backend is self.backend:
            return fel
        f = self.tables.f
        coords = [Poly(f, [int(self.emb[c]) for c in poly.coeffs()])
                  for poly in fel.coords]
        A = _embed_divisor(fel.A, self.backend, self.emb)
        return FuncElem(self.backend, A, coords)

    def pullback_elem(self, fel: FuncElem):
        """Base-field preimage of a working-field element, or None."""
        base_b = self.spec.backend
        coords = []
        for poly in fel.coords:
            cs = []
            for c in poly.coeffs():
                b = self.inv_emb.get(int(c))
                if b is None:
                    return None
                cs.append(b)
            coords.append(Poly(base_b.field, cs))
        return FuncElem(base_b, self.spec.G, coords)


def _embed_place(p: Place, emb) -> Place:
    if p.is_infinity():
        return p
    return Place(p.kind, tuple(int(emb[c]) for c in p.coords))


def _embed_divisor(A: Divisor, backend: Backend, emb) -> Divisor:
    return Divisor(backend, {_embed_place(p, emb): v for p, v in A.items})


def aux_place_count(spec: CodeSpec) -> int:
    g = spec.genus()
    mu = spec.backend.mu()
    s, ell, n, degG = spec.s, spec.ell, spec.n, spec.degG
    return max(degG + (ell + 3) * (2 * g - 1) + (s + 1) * n + 2 + mu,
               (ell + 1) * degG + 4 * g + (s + 1) * n)


def precompute(spec: CodeSpec) -> Precomp:
    """Choose the working extension, draw the auxiliary places, and build
    every evaluation and series table the decoder needs."""
    N = aux_place_count(spec)
    base_b = spec.backend
    base_places = base_b.enumerate_places(1)
    for e in range(1, _MAX_EXTENSION + 1):
        wb = base_b.extended(e)
        emb = embed_map(spec.field, wb.field)
        G_w = _embed_divisor(spec.G, wb, emb)
        D_w = [_embed_place(p, emb) for p in spec.D]
        blocked = set(D_w) | {p for p in G_w.support() if not p.is_infinity()}
        base_image = [_embed_place(p, emb) for p in base_places]
        base_set = set(base_image)
        avail_base = [pw for pb, pw in sorted(zip(base_places, base_image))
                      if pw not in blocked]
        avail_ext = sorted(p for p in wb.enumerate_places(1)
                           if p not in base_set and p not in blocked)
        if len(avail_base) + len(avail_ext) >= N:
            E = (avail_base + avail_ext)[:N]
            tables = Tables(wb, G_w, D_w, E, spec.s, spec.ell)
            _attach_decor(spec, tables)
            _precomp_selfcheck(tables)
            return Precomp(spec, e, tables)
    raise ValueError("no supported extension supplies enough places")


def _attach_decor(spec: CodeSpec, tables: Tables):
    wb = tables.backend
    D_div = Divisor.of_places(wb, tables.D.places)
    gens = []
    for u in range(spec.ell + 1):
        G_u = tables.G.scale(-u) - D_div.scale(max(0, spec.s - u))
        g_elem = wb.ideal_generators(G_u)[0]
        bound = (2 * wb.genus() - 1 + (u + 1) * spec.degG
                 + max(0, spec.s - u + 1) * spec.n)
        d = g_elem.delta()
        if d is not NEG_INF and d > bound:
            raise AssertionError("ideal generator exceeds its size bound")
        gens.append(g_elem)
    tables.attach_generators(gens)
    beta_max = 2 * spec.ell * spec.degG + spec.s * spec.n
    tables.attach_series(max(beta_max, spec.degG + 1))


def _precomp_selfcheck(tables: Tables):
    """Cross-check the tables: basis evaluations match element evaluation,
    and the cached series agree with a fresh expansion."""
    b = tables.backend
    f = tables.f
    mu = tables.mu
    for key, A in tables.divisors.items():
        for i in range(mu):
            cs = [Poly.zero(f)] * mu
            cs[i] = Poly.one(f)
            e_i = FuncElem(b, A, cs)
            got = evaluate_elem(tables, e_i, over="E")
            if not np.array_equal(np.asarray(got, dtype=np.int64),
                                  tables.ytab_E[key][i]):
                raise AssertionError(f"evaluation table mismatch for {key}/{i}")
            if tables.yhat is not None:
                prec = min(8, tables.beta_max)
                if not np.array_equal(ptrunc(np.asarray(tables.yhat[key][i], dtype=np.int64), prec),
                                      ptrunc(b.apery_series(A, i, prec), prec)):
                    raise AssertionError(f"series table mismatch for {key}/{i}")


def encode(spec: CodeSpec, pre: Precomp, f_elem: FuncElem) -> list[int]:
    """Codeword of a message function of nonpositive pole order."""
    d = f_elem.delta()
    if d is not NEG_INF and d > 0:
        raise ValueError("message function lies outside L(G)")
    fw = pre.embed_elem(f_elem)
    vals = evaluate_elem(pre.tables, fw, over="D")
    return pre.pullback_word(vals)


def decode(spec: CodeSpec, pre: Precomp, word, tau: int | None = None,
           return_codewords: bool = False, alternative: bool | None = None):
    """All message functions whose codewords lie within the radius, or FAIL.

    FAIL occurs only when no interpolation polynomial beats the threshold;
    within the guaranteed radius this cannot happen.
    """
    tables = pre.tables
    s, ell, n = spec.s, spec.ell, spec.n
    tau_use = spec.clamp_tau(tau)
    if alternative is None:
        alternative = s < ell
    w = pre.embed_word(word)
    gens = generators_polyring(tables, w, alternative)
    im = assemble(gens)
    Q = find_Q(im, s * (n - tau_use))
    if Q is None:
        return FAIL
    beta = 2 * ell * spec.degG + s * (n - tau_use)
    roots = root_finding(tables, Q, beta)
    out = []
    for fel in roots:
        cw = evaluate_elem(tables, fel, over="D")
        dist = int(np.count_nonzero(np.asarray(cw, dtype=np.int64) != w))
        if dist > tau_use:
            continue
        base = pre.pullback_elem(fel)
        if base is None:
            continue  # extension-field list entry, not a codeword of the base code
        out.append((base, cw))
    out.sort(key=lambda pair: pair[0].key())
    if return_codewords:
        return [pre.pullback_word(cw) for _, cw in out]
    return [fel for fel, _ in out]


def _codebook(spec: CodeSpec):
    """(basis, matrix of all codewords, dimension) for the brute-force oracle."""
    if spec._codebook is None:
        basis = spec.backend.lg_basis(spec.G)
        dim = len(basis)
        q = spec.field.q
        if q ** dim > _BRUTE_FORCE_CAP:
            raise ValueError("codebook enumeration exceeds the guard bound")
        f = spec.field
        rows = np.zeros((dim, spec.n), dtype=np.int64)
        for i, b in enumerate(basis):
            rows[i] = [b.eval_at(p) for p in spec.D]
        book = np.zeros((1, spec.n), dtype=np.int64)
        for i in range(dim):
            blocks = [book]
            for c in range(1, q):
                blocks.append(f.vadd(book, f.vmul(c, rows[i])[None, :]))
            book = np.concatenate(blocks, axis=0)
        spec._codebook = (basis, book, dim)
    return spec._codebook


def message_from_index(spec: CodeSpec, idx: int) -> FuncElem:
    """The idx-th message in codebook order (mixed-radix over the basis)."""
    basis, _, dim = _codebook(spec)
    q = spec.field.q
    acc = FuncElem.zero(spec.backend, spec.G)
    for i in range(dim):
        c = idx % q
        idx //= q
        if c:
            acc = acc + basis[i].scale(c)
    return acc


def brute_force_list_decode(spec: CodeSpec, word, tau: int) -> list[FuncElem]:
    """Exhaustive list decoding by scanning the entire codebook."""
    _, book, _ = _codebook(spec)
    w = np.asarray([int(v) for v in word], dtype=np.int64)
    if w.shape[0] != spec.n:
        raise ValueError("word length mismatch")
    dists = np.count_nonzero(book != w[None, :], axis=1)
    hits = np.nonzero(dists <= tau)[0]
    out = [message_from_index(spec, int(i)) for i in hits]
    out.sort(key=lambda e: e.key())
    return out


def channel(spec: CodeSpec, word, t: int, seed: int) -> list[int]:
    """Corrupt exactly t positions with seeded nonzero errors."""
    n = spec.n
    if not 0 <= t <= n:
        raise ValueError("error count out of range")
    rng = random.Random(seed)
    f = spec.field
    out = [int(v) for v in word]
    for j in sorted(rng.sample(range(n), t)):
        out[j] = f.add(out[j], rng.randrange(1, f.q))
    return out


def random_message(spec: CodeSpec, seed: int) -> FuncElem:
    rng = random.Random(seed)
    dim = _codebook(spec)[2]
    return message_from_index(spec, rng.randrange(spec.field.q ** dim))


def random_word(spec: CodeSpec, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(spec.field.q) for _ in range(spec.n)]
