"""Truncated dimensions of cyclotomic quotients ``R^lambda(alpha) = R(alpha) / R a^lambda(x) R``.

``hbar`` is specialized to random values, so the quotient is only filtered by
degree, not graded.  For each block ``e(nu_out) R e(nu_in)`` we compute, inside
the fixed-point model at random points:

* ``full(<= d)``: rank of spanning words ``x^a tau_w`` of degree ``<= d``;
* ``ideal(<= d)``: dimension of their span intersected with the span of the
  generators ``u a^lambda v`` with ``deg u + deg a^lambda + deg v <= D``;

and report per-degree differences.  These are dimensions of the generic fibre
over the ``hbar`` parameters and are only claimed to be stable across seeds.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .fixedpoint import FixedPointModel
from .gradeddim import PointBlocks, cell_words
from .linalg import PRIME, rank_mod_p
from .poly import MultiPoly, VarTable, monomials
from .presentation import KLRAlgebra
from .quiver import Quiver, QuiverParseError, RootVector

MAX_HEIGHT = 4
MAX_DEGREE = 10


@dataclass(frozen=True)
class DominantWeight:
    levels: tuple

    @classmethod
    def of(cls, q: Quiver, mapping: Mapping[str, int]) -> DominantWeight:
        for v, k in mapping.items():
            if v not in q.vertices:
                raise QuiverParseError(f"unknown vertex {v!r}", f"$.{v}")
            if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                raise QuiverParseError("level must be a nonnegative integer", f"$.{v}")
        return cls(tuple((v, int(mapping.get(v, 0))) for v in q.vertices))

    def level(self, i: str) -> int:
        return dict(self.levels)[i]

    def as_dict(self) -> dict:
        return dict(self.levels)


def a_lambda(i: str, lam: DominantWeight, vt: VarTable | None = None) -> MultiPoly:
    """``u^{lambda(h_i)}``: the monic choice with all lower coefficients zero."""
    vt = vt or VarTable(1, (), ("u",))
    return MultiPoly.x(vt, 1, lam.level(i))


@dataclass
class CycloReport:
    alpha: dict
    weight: dict
    max_degree: int
    seeds: tuple
    degrees: list = field(default_factory=list)   # (d, full, ideal, quotient), max over seeds
    seed_totals: dict = field(default_factory=dict)
    seed_tables: dict = field(default_factory=dict)
    blocks: dict = field(default_factory=dict)

    @property
    def stable(self) -> bool:
        tables = list(self.seed_tables.values())
        return all(t == tables[0] for t in tables)

    @property
    def total_quotient(self) -> int:
        return sum(q for _, _, _, q in self.degrees)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "lambda": self.weight,
            "max_degree": self.max_degree,
            "seeds": list(self.seeds),
            "degrees": [{"d": d, "full": f, "ideal": i, "quotient": q} for d, f, i, q in self.degrees],
            "total_quotient": self.total_quotient,
            "seed_totals": {str(k): v for k, v in self.seed_totals.items()},
            "stable": self.stable,
            "note": "generic-fiber dimensions with hbar specialized at random values",
        }


class _SpecializedPoints:
    """Random points sharing one specialization of the hbar variables."""

    def __init__(self, model: FixedPointModel, rng: random.Random, p: int):
        self.model, self.rng, self.p = model, rng, p
        self.hbars = [rng.randrange(1, p) for _ in model.vt.hbar_ids]

    def next(self) -> PointBlocks:
        m, p = self.model.m, self.p
        for _ in range(100):
            chis = [self.rng.randrange(p) for _ in range(m)]
            if any((chis[a] - chis[b]) % p == 0 for a in range(m) for b in range(m) if a != b):
                continue
            if any((chis[a] - chis[b] + h) % p == 0 for a in range(m) for b in range(m) for h in self.hbars):
                continue
            return PointBlocks(self.model, tuple(chis) + tuple(self.hbars), p)
        raise ArithmeticError("no nondegenerate point found")


def _words(model, nu_out, nu_in, D):
    """``(x-exponents, w, degree)`` of spanning words ``x^a tau_w e(nu_in)`` with degree ``<= D``."""
    pad = (0,) * len(model.vt.hbar_ids)
    out = []
    for w, dw in cell_words(model, nu_out, nu_in):
        k = 0
        while dw + 2 * k <= D:
            for e in monomials(model.m, k):
                out.append((e + pad, w, dw + 2 * k))
            k += 1
    return out


def _block_dims(model: FixedPointModel, lam: DominantWeight, nu_out, nu_in, D: int, seed: int,
                p: int = PRIME) -> dict[int, tuple[int, int]]:
    """``d -> (full(<= d), ideal(<= d))`` for one block."""
    words = _words(model, nu_out, nu_in, D)
    if not words:
        return {}
    # generator products u a^lambda v, grouped by the intermediate sequence
    groups = []
    for nu in model.alg.sequences:
        la = 2 * lam.level(nu[0])
        left = _words(model, nu_out, nu, D - la)
        right = _words(model, nu, nu_in, D - la)
        pairs = [(a, b) for a, u in enumerate(left) for b, v in enumerate(right) if u[2] + la + v[2] <= D]
        if pairs:
            groups.append((nu, left, right, np.array(pairs, dtype=np.int64)))
    ngens = sum(len(g[3]) for g in groups)
    rng = random.Random(seed)
    pts = _SpecializedPoints(model, rng, p)
    E = len(model.W[nu_out]) * len(model.W[nu_in])
    K = len(words) + ngens
    # generators lie in the span of the words, so the word count bounds the rank
    target = len(words)

    def stack(pb, items, a, b):
        return np.stack([(pb.mono_diag(e, a)[:, None] * pb.tau_block(w, b)) % p for e, w, _ in items])

    def rows(pb):
        out = [stack(pb, words, nu_out, nu_in).reshape(len(words), E)]
        for nu, left, right, pairs in groups:
            a = (lam.level(nu[0]),) + (0,) * (model.vt.nvars - 1)
            U = stack(pb, left, nu_out, nu) * pb.mono_diag(a, nu)[None, None, :] % p
            V = stack(pb, right, nu, nu_in)
            G = np.einsum("aij,bjk->abik", U, V) % p
            out.append(G[pairs[:, 0], pairs[:, 1]].reshape(len(pairs), E))
        return np.vstack(out)

    blocks = [rows(pts.next()) for _ in range(2 * -(-target // max(E, 1)) + 3)]
    rank_all = rank_mod_p(np.hstack(blocks), p)
    while rank_all < target:
        blocks += [rows(pts.next()) for _ in range(max(3, len(blocks) // 2))]
        new = rank_mod_p(np.hstack(blocks), p)
        if new == rank_all:
            break
        rank_all = new
    M = np.hstack(blocks)
    nW = len(words)
    rank_G = rank_mod_p(M[nW:], p) if ngens else 0
    out = {}
    degs = sorted({d for _, _, d in words})
    for d in range(degs[0], D + 1):
        idx = [n for n, (_, _, dd) in enumerate(words) if dd <= d]
        full = rank_mod_p(M[idx], p) if idx else 0
        if ngens:
            both = rank_mod_p(M[idx + list(range(nW, K))], p)
            ideal = full + rank_G - both
        else:
            ideal = 0
        out[d] = (full, ideal)
    return out


def cyclotomic_dims(quiver: Quiver, alpha: RootVector, lam: DominantWeight, D: int = MAX_DEGREE,
                    seeds=(0, 1, 2), cap: int = MAX_HEIGHT) -> CycloReport:
    if alpha.height > cap:
        raise ValueError(f"height {alpha.height} exceeds the cyclotomic cap {cap}")
    if D > MAX_DEGREE:
        raise ValueError(f"degree bound {D} exceeds the cap {MAX_DEGREE}")
    model = FixedPointModel(KLRAlgebra(quiver, alpha))
    report = CycloReport(alpha.as_dict(), lam.as_dict(), D, tuple(seeds))
    for s in seeds:
        cum: dict[int, list[int]] = {}
        for nu_out in model.alg.sequences:
            for nu_in in model.alg.sequences:
                bd = _block_dims(model, lam, nu_out, nu_in, D, s)
                if s == seeds[0]:
                    report.blocks[(nu_out, nu_in)] = _per_degree(bd, D)
                for d, (f, i) in bd.items():
                    acc = cum.setdefault(d, [0, 0])
                    acc[0] += f
                    acc[1] += i
        table = _per_degree({d: tuple(v) for d, v in cum.items()}, D)
        report.seed_tables[s] = table
        report.seed_totals[s] = sum(q for _, _, _, q in table)
    # random points can only lose rank, so the max over seeds is the better estimate
    merged = {}
    for table in report.seed_tables.values():
        for d, f, i, _ in table:
            f0, i0 = merged.get(d, (0, 0))
            merged[d] = (max(f0, f), max(i0, i))
    report.degrees = [(d, f, i, f - i) for d, (f, i) in sorted(merged.items())]
    return report


def _per_degree(cum: dict, D: int) -> list[tuple[int, int, int, int]]:
    """Cumulative ``(full, ideal)`` by degree, per-block minima filled, to per-degree rows."""
    if not cum:
        return []
    lo = min(cum)
    out = []
    prev_f = prev_i = 0
    for d in range(lo, D + 1):
        f, i = cum.get(d, (prev_f, prev_i))
        out.append((d, f - prev_f, i - prev_i, (f - i) - (prev_f - prev_i)))
        prev_f, prev_i = f, i
    return out
