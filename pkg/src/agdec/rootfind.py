"""Power-series root finding for the decoder's z-polynomial Q.

Q's coefficients are expanded at P0 into truncated series, all series roots
modulo x^beta are described by a basic root set (prefix, precision) pairs,
and each prefix is lifted back to a ring element of nonpositive pole order,
discarding spurious candidates by an exact series substitution check.
"""

from __future__ import annotations

import numpy as np

from .fields import Field
from .funcfield import FuncElem
from .interpolation import Tables, ZPoly, binom_mod_p
from .poly import (Poly, padd, pdeg, pmul, pneg, pscale, pshift, ptrim,
                   ptrunc, roots_in_field)
from .polymat import Shift, hp_basis, sdeg


def to_series(tables: Tables, Q: ZPoly, beta: int) -> list[np.ndarray]:
    """Coefficient-wise expansion of Q at P0, truncated at x^beta."""
    if tables.yhat is None or tables.beta_max < beta:
        raise ValueError("series tables missing or below the needed precision")
    f = tables.f
    out = []
    for t, c in enumerate(Q.coeffs):
        acc = np.zeros(0, dtype=np.int64)
        for i, coord in enumerate(c.coords):
            if not coord.is_zero():
                term = pmul(f, coord.c, ptrunc(tables.yhat[t][i], beta))
                acc = padd(f, acc, ptrunc(term, beta))
        out.append(ptrunc(acc, beta))
    return out


def _min_valuation(coeffs: list[np.ndarray]):
    v = None
    for c in coeffs:
        if c.size:
            nz = np.nonzero(c)[0]
            if nz.size:
                w = int(nz[0])
                if v is None or w < v:
                    v = w
    return v


def basic_root_set(f: Field, qhat: list[np.ndarray], beta: int):
    """Pairs (prefix polynomial, precision) covering exactly the series roots
    of qhat modulo x^beta, by branch-and-substitute recursion.

    The union of the cosets prefix + x^alpha * F_q[[x]] equals the root set,
    and substituting prefix + x^alpha * z into qhat kills it mod x^beta.
    """
    degz = max((t for t, c in enumerate(qhat) if c.size), default=None)
    if degz is None:
        raise ValueError("basic_root_set: zero input")
    if beta <= 0:
        return [(np.zeros(0, dtype=np.int64), 0)]
    p = f.p
    results: list[tuple[np.ndarray, int]] = []
    level_width: dict[int, int] = {}

    def rec(coeffs, prec, prefix, depth):
        v = _min_valuation(coeffs)
        if v is None or v >= prec:
            results.append((ptrim(np.array(prefix, dtype=np.int64)), depth))
            return
        if v:
            coeffs = [c[v:] if c.size > v else c[:0] for c in coeffs]
            coeffs = [ptrunc(c, prec - v) for c in coeffs]
            prec -= v
        else:
            coeffs = [ptrunc(c, prec) for c in coeffs]
        pz = Poly(f, [int(c[0]) if c.size else 0 for c in coeffs])
        if pz.is_zero():
            # constant z-coefficients all vanish but higher x-terms remain;
            # cannot happen after stripping
            raise AssertionError("stripped polynomial has zero constant part")
        roots = roots_in_field(pz) if pz.deg >= 1 else []
        live = [z0 for z0, _ in roots]
        level_width[depth] = level_width.get(depth, 0) + len(live)
        if level_width[depth] > degz:
            raise RuntimeError("root recursion exceeded its branch budget")
        for z0 in live:
            sub = _substitute(f, coeffs, z0, prec, p)
            rec(sub, prec, prefix + [z0], depth + 1)

    def _substitute(f, coeffs, z0, prec, p):
        ell = len(coeffs) - 1
        z0pows = [1]
        for _ in range(ell):
            z0pows.append(f.mul(z0pows[-1], z0))
        out = []
        for j in range(ell + 1):
            acc = np.zeros(0, dtype=np.int64)
            for t in range(j, ell + 1):
                b = binom_mod_p(t, j, p)
                if b == 0 or coeffs[t].size == 0:
                    continue
                scalar = f.mul(b, z0pows[t - j])
                if scalar:
                    acc = padd(f, acc, pscale(f, scalar, coeffs[t]))
            out.append(ptrunc(pshift(acc, j), prec))
        return out

    rec([ptrunc(c, beta) for c in qhat], beta, [], 0)
    # merge nested cosets: keep the larger one
    merged: list[tuple[np.ndarray, int]] = []
    for fh, al in sorted(results, key=lambda pa: (pa[1], _veckey(pa[0]))):
        contained = False
        for fh2, al2 in merged:
            if al2 <= al and np.array_equal(ptrunc(fh, al2), ptrunc(fh2, al2)):
                contained = True
                break
        if not contained:
            merged.append((fh, al))
    if len(merged) > degz:
        raise AssertionError("basic root set larger than the z-degree allows")
    merged.sort(key=lambda pa: (_veckey(pa[0]), pa[1]))
    return merged


def _veckey(c: np.ndarray):
    return tuple(int(v) for v in c)


def series_to_function(tables: Tables, fhat: np.ndarray):
    """The unique nonpositive-pole-order element matching fhat mod x^(degG+1),
    or None when the truncated series extends to no such element."""
    f = tables.f
    mu = tables.mu
    alpha = tables.degG + 1
    if tables.yhat is None or tables.beta_max < alpha:
        raise ValueError("series tables missing or below precision degG + 1")
    fh = ptrunc(np.asarray(fhat, dtype=np.int64), alpha)
    col = [ptrunc(tables.yhat["G"][i], alpha) for i in range(mu)] + [pneg(f, fh)]
    amat = [[col[i]] for i in range(mu + 1)]
    xmod = pshift(np.ones(1, dtype=np.int64), alpha)
    deltas = tables.deltas["G"]
    shift = Shift(tuple(deltas) + (0,), mu)
    P = hp_basis(f, amat, [xmod], shift)
    for row in P.rows:
        last = row[mu]
        if last.size == 1 and int(last[0]) == 1 and sdeg(row, shift) == 0:
            return FuncElem(tables.backend, tables.G,
                            [Poly._raw(f, row[i]) for i in range(mu)])
    return None


def root_finding(tables: Tables, Q: ZPoly, beta: int) -> list[FuncElem]:
    """All elements f of nonpositive pole order with Q(f) = 0, at most ell
    of them, sorted canonically."""
    f = tables.f
    qhat = to_series(tables, Q, beta)
    if all(c.size == 0 for c in qhat):
        raise ValueError("root_finding: Q vanishes modulo the working precision")
    pairs = basic_root_set(f, qhat, beta)
    out: dict = {}
    for fh, _alpha in pairs:
        cand = series_to_function(tables, fh)
        if cand is None:
            continue
        cs = np.zeros(0, dtype=np.int64)
        for i, coord in enumerate(cand.coords):
            if not coord.is_zero():
                cs = padd(f, cs, ptrunc(pmul(f, coord.c, ptrunc(tables.yhat["G"][i], beta)), beta))
        acc = np.zeros(0, dtype=np.int64)
        for t in range(len(qhat) - 1, -1, -1):
            acc = ptrunc(padd(f, pmul(f, acc, cs) if acc.size else acc, qhat[t]), beta)
        if acc.size:
            continue  # spurious: matched the prefix but is no series root
        out[cand.key()] = cand
    res = sorted(out.values(), key=lambda e: e.key())
    if len(res) > len(qhat) - 1:
        raise AssertionError("more roots than the z-degree allows")
    return res
