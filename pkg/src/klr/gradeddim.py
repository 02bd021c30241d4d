"""Degrees of cell words, Poincare series of ``e(nu_out) R(alpha) e(nu_in)``, and a
rank oracle that measures the same dimensions inside the fixed-point model.

The oracle evaluates word matrices at random points modulo a prime and computes
ranks there.  A rank mod p at random points never exceeds the true rank over the
rationals and equals it outside a proper algebraic subset, so agreement across
independent seeds is the acceptance signal.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import ceil, comb

import numpy as np

from . import perm as P
from .fixedpoint import FixedPointModel
from .linalg import PRIME, rank_mod_p
from .poly import monomials
from .presentation import GeneratorWord, chain, generator_degree
from .quiver import weyl_act


def tau_word(w: P.Perm, nu, word=None) -> GeneratorWord:
    """``tau_w e(nu)`` along ``word`` (default: the canonical reduced word of ``w``)."""
    word = P.canonical_reduced_word(w) if word is None else word
    return chain(nu, [("tau", j) for j in word])


def tau_degree(datum, w: P.Perm, nu, word=None) -> int:
    """Degree of ``tau_w e(nu)`` accumulated along a reduced word of ``w``."""
    word = P.canonical_reduced_word(w) if word is None else tuple(word)
    total = 0
    cur = tuple(nu)
    for j in reversed(word):
        g = tau_word(P.simple(j, len(nu)), cur).factors[0]
        total += generator_degree(g, datum)
        cur = g.left
    return total


def cell_words(model: FixedPointModel, nu_out, nu_in) -> list[tuple[P.Perm, int]]:
    """``(w, deg tau_w e(nu_in))`` for all ``w`` with ``w nu_in = nu_out``."""
    nu_in, nu_out = tuple(nu_in), tuple(nu_out)
    return [(w, tau_degree(model.datum, w, nu_in)) for w in model.perms if weyl_act(w, nu_in) == nu_out]


@dataclass
class GradedSeries:
    """``sum_w q^{deg_w} / (1 - q^2)^nvars``; ``numerator`` maps degree to multiplicity."""

    numerator: dict
    nvars: int
    truncation: int | None = None

    def coefficient(self, d: int) -> int:
        total = 0
        for d0, mult in self.numerator.items():
            k2 = d - d0
            if k2 >= 0 and k2 % 2 == 0:
                total += mult * comb(k2 // 2 + self.nvars - 1, self.nvars - 1)
        return total

    def coefficients(self, lo: int, hi: int) -> list[tuple[int, int]]:
        return [(d, self.coefficient(d)) for d in range(lo, hi + 1)]

    @property
    def min_degree(self):
        return min(self.numerator, default=None)

    def closed_form(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for d in sorted(self.numerator):
            c = self.numerator[d]
            mono = "1" if d == 0 else f"q^{d}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return f"({' + '.join(parts)})/(1-q^2)^{self.nvars}"


def poincare_series(model: FixedPointModel, nu_out, nu_in, N: int | None = None) -> GradedSeries:
    num: dict = {}
    for _, d in cell_words(model, nu_out, nu_in):
        num[d] = num.get(d, 0) + 1
    return GradedSeries(num, model.vt.nvars, N)


# numeric evaluation of word blocks

class PointBlocks:
    """Dense matrices of words at one point, in the normalized frame, modulo ``p``."""

    def __init__(self, model: FixedPointModel, values, p: int = PRIME):
        self.model = model
        self.sc = model.numeric(values, p)
        self.p = p
        self._tau: dict = {}
        self._mono: dict = {}
        self.index = {nu: {w: n for n, w in enumerate(ws)} for nu, ws in model.W.items()}

    def tau_block(self, w, nu_in, word=None) -> np.ndarray:
        """Block of ``tau_w e(nu_in)`` from ``W(nu_in)`` columns to ``W(w nu_in)`` rows."""
        key = (w, tuple(nu_in), word)
        if key not in self._tau:
            model = self.model
            nu_in = tuple(nu_in)
            nu_out = weyl_act(w, nu_in)
            gw = tau_word(w, nu_in, word)
            self._tau[key] = self.word_block(gw, nu_out, nu_in)
        return self._tau[key]

    def word_block(self, gw: GeneratorWord, nu_out, nu_in) -> np.ndarray:
        model = self.model
        rows, cols = self.index[tuple(nu_out)], model.W[tuple(nu_in)]
        B = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for n, c in enumerate(cols):
            for r, v in model.apply_word(gw, {c: 1}, self.sc, "normalized").items():
                B[rows[r], n] = v
        return B

    def mono_diag(self, exps, nu) -> np.ndarray:
        """Diagonal of the polynomial ``prod var^exps`` on ``W(nu)``."""
        key = (tuple(exps), tuple(nu))
        if key not in self._mono:
            p = self.p
            vals = []
            for w in self.model.W[tuple(nu)]:
                pv = self.sc.permuted(w)
                t = 1
                for v, k in zip(pv, exps):
                    if k:
                        t = t * pow(v, k, p) % p
                vals.append(t)
            self._mono[key] = np.array(vals, dtype=np.int64)
        return self._mono[key]


def _npoints(K: int, E: int) -> int:
    return 2 * ceil(K / max(E, 1)) + 3


def _sample(model, rng, p):
    return model.sample_point(rng, modulus=p)


def spanning_set(model: FixedPointModel, nu_out, nu_in, d: int, below=None, hbar: bool = True):
    """``(exps, w)`` for words ``x^a hbar^b tau_w e(nu_in)`` of degree ``d`` with left color ``nu_out``.

    ``below`` restricts ``w`` to a set of permutations; ``hbar=False`` drops hbar monomials.
    """
    nvars = model.vt.nvars if hbar else model.m
    pad = model.vt.nvars - nvars
    out = []
    for w, dw in cell_words(model, nu_out, nu_in):
        if below is not None and w not in below:
            continue
        k2 = d - dw
        if k2 < 0 or k2 % 2:
            continue
        for e in monomials(nvars, k2 // 2):
            out.append((e + (0,) * pad, w))
    return out


def _rows_for(pb: PointBlocks, items, nu_out, nu_in) -> np.ndarray:
    p = pb.p
    E = len(pb.model.W[tuple(nu_out)]) * len(pb.model.W[tuple(nu_in)])
    if not items:
        return np.zeros((0, E), dtype=np.int64)
    vecs = []
    for exps, w in items:
        T = pb.tau_block(w, nu_in)
        D = pb.mono_diag(exps, nu_out)
        vecs.append(((D[:, None] * T) % p).ravel())
    return np.array(vecs, dtype=np.int64)


def _eval_matrix(model, items, nu_out, nu_in, seed: int, extra=None, p: int = PRIME,
                 npoints: int | None = None) -> np.ndarray:
    """Rows are ``items`` (then ``extra`` if given) evaluated at shared random points mod ``p``.

    Without ``npoints`` the number of points grows until the rank stops increasing
    over a further batch (or reaches the number of rows).
    """
    K = len(items) + (1 if extra else 0)
    E = len(model.W[tuple(nu_out)]) * len(model.W[tuple(nu_in)])
    if K == 0:
        return np.zeros((0, E), dtype=np.int64)
    rng = random.Random(seed)

    def batch(n):
        out = []
        for _ in range(n):
            pb = PointBlocks(model, _sample(model, rng, p), p)
            rows = _rows_for(pb, items, nu_out, nu_in)
            if extra:
                rows = np.vstack([rows, extra(pb).reshape(1, -1) % p])
            out.append(rows)
        return out

    if npoints is not None:
        return np.hstack(batch(npoints))
    blocks = batch(_npoints(K, E))
    rank = rank_mod_p(np.hstack(blocks), p)
    while rank < K:
        blocks += batch(max(3, len(blocks) // 2))
        new = rank_mod_p(np.hstack(blocks), p)
        if new == rank:
            break
        rank = new
    return np.hstack(blocks)


def _rank_items(model, items, nu_out, nu_in, seed: int, p: int = PRIME) -> int:
    """Rank of the span of ``items`` as functions, mod ``p``."""
    if not items:
        return 0
    return rank_mod_p(_eval_matrix(model, items, nu_out, nu_in, seed, p=p), p)


def rank_oracle(model: FixedPointModel, nu_out, nu_in, d: int, seeds=(0, 1, 2)) -> tuple[int, list[int]]:
    """Rank of all degree-``d`` words ``x^a hbar^b tau_w e(nu_in)`` with left color ``nu_out``.

    Returns the maximum over seeds and the per-seed ranks.
    """
    items = spanning_set(model, nu_out, nu_in, d)
    ranks = [_rank_items(model, items, nu_out, nu_in, s) for s in seeds]
    return max(ranks), ranks


@dataclass
class SeriesReport:
    nu_out: tuple
    nu_in: tuple
    series: list
    oracle: list
    seed_ranks: dict = field(default_factory=dict)

    @property
    def spanning_ok(self) -> bool:
        return all(r <= s for (_, s), (_, r) in zip(self.series, self.oracle))

    @property
    def independence_ok(self) -> bool:
        return all(r >= s for (_, s), (_, r) in zip(self.series, self.oracle))

    @property
    def seeds_agree(self) -> bool:
        return all(len(set(v)) == 1 for v in self.seed_ranks.values())

    @property
    def match(self) -> bool:
        return self.spanning_ok and self.independence_ok and self.seeds_agree

    def to_json(self) -> dict:
        return {"nu_out": list(self.nu_out), "nu_in": list(self.nu_in),
                "series": [list(t) for t in self.series], "oracle": [list(t) for t in self.oracle],
                "match": self.match}


def verify_series(model: FixedPointModel, nu_out, nu_in, lo: int | None = None, hi: int | None = None,
                  width: int = 8, seeds=(0, 1, 2)) -> SeriesReport:
    """Compare series coefficients with oracle ranks for degrees ``lo..hi``.

    Defaults to the window ``[dmin, dmin + width]`` above the minimal cell degree.
    """
    nu_out, nu_in = tuple(nu_out), tuple(nu_in)
    s = poincare_series(model, nu_out, nu_in)
    if lo is None:
        lo = s.min_degree if s.min_degree is not None else 0
    if hi is None:
        hi = lo + width
    series, oracle, per_seed = [], [], {}
    for d in range(lo, hi + 1):
        series.append((d, s.coefficient(d)))
        best, ranks = rank_oracle(model, nu_out, nu_in, d, seeds)
        oracle.append((d, best))
        per_seed[d] = ranks
    return SeriesReport(nu_out, nu_in, series, oracle, per_seed)


def color_pair_shift(datum, nu_out, nu_in) -> int:
    """``D`` with ``coef(nu_in -> nu_out, d) == coef(nu_out -> nu_in, d + D)``.

    Swapping source and target replaces each crossing of colors ``(c, c')`` by a
    crossing of ``(c', c)``, which changes its degree by ``2(h_{c',c} - h_{c,c'})``.
    """
    def pairs(nu):
        cnt: dict = {}
        for a in range(len(nu)):
            for b in range(a + 1, len(nu)):
                if nu[a] != nu[b]:
                    cnt[(nu[a], nu[b])] = cnt.get((nu[a], nu[b]), 0) + 1
        return cnt

    # every crossing of a (c, c') pair turns one (c before c') pair into (c' before c),
    # so the net number of such crossings is fixed by nu_in and nu_out alone
    n_out, n_in = pairs(tuple(nu_out)), pairs(tuple(nu_in))
    shift = 0
    for (c, c2) in set(n_out) | set(n_in):
        if datum.vertices.index(c) < datum.vertices.index(c2):
            net = n_in.get((c, c2), 0) - n_out.get((c, c2), 0)
            shift += net * (datum.h(c2, c) - datum.h(c, c2))
    return 2 * shift


# triangularity of the cell filtration

@dataclass
class TriangularityCase:
    j: int
    w: P.Perm
    nu: tuple
    trivial: bool
    span_rank: int
    with_difference: int
    difference_nonzero: bool = False

    @property
    def ok(self) -> bool:
        return self.trivial or self.span_rank == self.with_difference


def check_triangularity(model: FixedPointModel, seed: int = 0) -> list[TriangularityCase]:
    """For reduced ``s_j w``: ``tau_j tau_w - tau_{s_j w}`` lies in the span of lower cells.

    The span uses ``x^a hbar^b tau_{w'} e(nu)`` with ``w' < s_j w`` in Bruhat order,
    the same left color, and total degree equal to ``deg tau_{s_j w} e(nu)``.
    """
    m = model.m
    out = []
    for nu in model.alg.sequences:
        for w in model.perms:
            descents = set(P.left_descents(w))
            for j in range(1, m):
                if j in descents:
                    continue
                sw = P.simple_times(j, w)
                word_a = (j,) + P.canonical_reduced_word(w)
                word_b = P.canonical_reduced_word(sw)
                nu_out = weyl_act(sw, nu)
                if word_a == word_b:
                    out.append(TriangularityCase(j, w, nu, True, 0, 0))
                    continue
                d = tau_degree(model.datum, sw, nu)
                lower = {u for u in model.perms if u != sw and P.bruhat_le(u, sw)}
                items = spanning_set(model, nu_out, nu, d, below=lower)

                def diff(pb, sw=sw, nu=nu, word_a=word_a, word_b=word_b):
                    return (pb.tau_block(sw, nu, word_a) - pb.tau_block(sw, nu, word_b)) % pb.p

                M = _eval_matrix(model, items, nu_out, nu, seed, extra=diff)
                r0, r1 = rank_mod_p(M[:-1]), rank_mod_p(M)
                out.append(TriangularityCase(j, w, nu, False, r0, r1, bool(M[-1].any())))
    return out
