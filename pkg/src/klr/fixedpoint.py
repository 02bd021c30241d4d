"""Torus fixed-point model of ``R(alpha)``.

Fixed points are indexed by ``w`` in ``S_m``; ``nu_w = (base_{w(1)}, ..., base_{w(m)})``
and ``W(nu) = {w : nu_w = nu}``.  Algebra elements act on the localized basis
``zeta_w`` by matrices over the fraction field of ``H[chi_1..chi_m]``; ``chi_k``
is identified with ``x_k``.

Two coordinate frames are supported:

* ``"zeta"``: the fixed-point classes ``zeta_w`` themselves;
* ``"normalized"``: the rescaled classes ``Lambda_w^{-1} zeta_w``.  Matrices in
  the two frames are conjugate by ``diag(Lambda_w)``, so identities hold in one
  iff they hold in the other.  In this frame the embedding of ``f(nu)`` is just
  ``w -> w f`` and ``r_j`` has entries ``Lambda^{s_j}_{u,w}^{-1} Lambda_u``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod

from . import perm as P
from .poly import MultiPoly, PoleError, RatFunc, monomials, product_ratio
from .polrep import PolVector, PolynomialRep
from .presentation import Combination, Generator, GeneratorWord, KLRAlgebra, RelationInstance
from .quiver import base_sequence, nu_of, stabilizer_classes

FRAMES = ("zeta", "normalized")
DEFAULT_WINDOW = 2**31


class InadmissibleError(ValueError):
    pass


# scalar backends

class ExactScalars:
    """Entries are :class:`RatFunc` (polynomial entries stay polynomials when possible)."""

    name = "exact"

    def __init__(self, model: FixedPointModel):
        self.model = model
        self.vt = model.vt
        self._lam = {}
        self._Lam = {}

    one = property(lambda self: RatFunc.from_poly(MultiPoly.one(self.vt)))

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def norm(self, a):
        return a

    def chi(self, w, k):
        return RatFunc.from_poly(MultiPoly.x(self.vt, w[k - 1] + 1))

    def coef(self, f: MultiPoly, w):
        return RatFunc.from_poly(f.permute(w))

    def lam(self, u, w, j):
        key = (u, w, j)
        if key not in self._lam:
            self._lam[key] = self.model.lambda_sj(u, w, j)
        return self._lam[key]

    def Lam(self, w):
        if w not in self._Lam:
            self._Lam[w] = RatFunc.from_poly(self.model.lambda_w(w))
        return self._Lam[w]

    def ratio(self, c, r):
        """``Lambda_c / Lambda_r`` with both kept factored."""
        m = self.model
        return product_ratio(self.vt, m.lambda_factors(c), m.lambda_factors(r))

    def psi_entry(self, f: MultiPoly, w, frame):
        if frame == "normalized":
            return RatFunc.from_poly(f.permute(w))
        return RatFunc(f.permute(w), [(g, 1) for g in self.model.lambda_factors(w)])


class NumericScalars:
    """Entries are values at one point: exact rationals, or residues mod ``modulus``."""

    def __init__(self, model: FixedPointModel, values, modulus: int | None = None):
        self.model = model
        self.values = tuple(values)
        self.p = modulus
        self.name = "randomized" if modulus is None else "modular"
        m = model.m
        self.chis = self.values[:m]
        self.hbars = {a: self.values[m + n] for n, a in enumerate(model.vt.hbar_ids)}
        self._lam = {}
        self._Lam = {}
        self._perm_vals = {}
        self.one = 1

    def _red(self, a):
        if self.p is None:
            return a
        if type(a) is Fraction:
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return a % self.p

    def norm(self, a):
        return a % self.p if self.p else a

    def inv(self, a):
        if a == 0:
            raise PoleError("division by zero at evaluation point")
        return Fraction(1) / a if self.p is None else pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def chi(self, w, k):
        return self.chis[w[k - 1]]

    def permuted(self, w):
        if w not in self._perm_vals:
            self._perm_vals[w] = tuple(self.chis[k] for k in w) + self.values[self.model.m:]
        return self._perm_vals[w]

    def coef(self, f: MultiPoly, w):
        return f.evaluate(self.permuted(w), self.p)

    def _lin(self, p, q, a=None):
        """Value of ``chi_q - chi_p (+ hbar_a)``, with 0-based ``p, q``."""
        v = self.chis[q] - self.chis[p]
        if a is not None:
            v += self.hbars[a]
        return self._red(v)

    def lam(self, u, w, j):
        key = (u, w, j)
        if key in self._lam:
            return self._lam[key]
        model = self.model
        nu = model.nu[u]
        a, b = u[j - 1], u[j]
        if nu[j - 1] != nu[j]:
            if w != P.times_simple(u, j):
                raise InadmissibleError((u, w, j))
            val = self._red(1)
            for e in model.datum.edges_between(nu[j], nu[j - 1]):
                val = self._red(val * self._lin(b, a, e))
        else:
            val = self._red(-1 if w == u else 1)
            for e in model.datum.edges_between(nu[j - 1], nu[j - 1]):
                val = self._red(val * self._lin(b, a, e))
            val = self._red(val * self.inv(self._lin(b, a)))
        self._lam[key] = val
        return val

    def Lam(self, w):
        if w not in self._Lam:
            self._Lam[w] = self._red(self.model.lambda_w(w).evaluate(self.values, self.p))
        return self._Lam[w]

    def ratio(self, c, r):
        return self._red(self.Lam(c) * self.inv(self.Lam(r)))

    def psi_entry(self, f: MultiPoly, w, frame):
        v = self.coef(f, w)
        if frame == "normalized":
            return v
        return self._red(v * self.inv(self.Lam(w)))


# matrices and vectors

@dataclass
class FixedPointMatrix:
    """Sparse block matrix ``(row w, column w) -> entry``."""

    entries: dict = field(default_factory=dict)
    frame: str = "zeta"
    degree: int | None = None

    def __matmul__(self, other: FixedPointMatrix) -> FixedPointMatrix:
        by_row: dict = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                t = a * b
                out[(r, c)] = out[(r, c)] + t if (r, c) in out else t
        out = {k: v for k, v in out.items() if not _is_zero(v)}
        deg = None if self.degree is None or other.degree is None else self.degree + other.degree
        return FixedPointMatrix(out, self.frame, deg)

    def __add__(self, other: FixedPointMatrix) -> FixedPointMatrix:
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return FixedPointMatrix({k: v for k, v in out.items() if not _is_zero(v)}, self.frame)

    def __neg__(self):
        return FixedPointMatrix({k: -v for k, v in self.entries.items()}, self.frame, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, FixedPointMatrix) and (self - other).is_zero()

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for (r, c), a in self.entries.items():
            if c in vec:
                t = a * vec[c]
                out[r] = out[r] + t if r in out else t
        return {k: v for k, v in out.items() if not _is_zero(v)}


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


@dataclass
class Certificate:
    check: str
    alpha: dict
    backend: str
    status: str
    points: int | None = None
    seed: int | None = None
    failure_bound: float | None = None
    failure: dict | None = None
    count: int = 0

    def to_json(self) -> dict:
        out = {"check": self.check, "alpha": self.alpha, "backend": self.backend}
        if self.points is not None:
            out["points"] = self.points
        out["status"] = self.status
        if self.seed is not None:
            out["seed"] = self.seed
        if self.failure_bound is not None:
            out["failure_bound"] = self.failure_bound
        if self.count:
            out["checked"] = self.count
        if self.failure:
            out["failure"] = self.failure
        return out

    @property
    def ok(self) -> bool:
        return self.status == "pass"


class FixedPointModel:
    def __init__(self, alg: KLRAlgebra):
        self.alg = alg
        self.datum = alg.datum
        self.m = alg.m
        self.vt = alg.vt
        self.base = base_sequence(alg.alpha)
        self.perms = P.all_perms(self.m)
        self.nu = {w: nu_of(w, self.base) for w in self.perms}
        self.W = stabilizer_classes(alg.alpha)
        self._factors: dict = {}
        self._exact = None

    # Euler classes
    def _x(self, p: int) -> MultiPoly:
        return MultiPoly.x(self.vt, p + 1)

    def _weight(self, p: int, q: int, a=None) -> MultiPoly:
        """``chi_q - chi_p (+ hbar_a)`` for 0-based ``p, q``."""
        f = self._x(q) - self._x(p)
        return f + MultiPoly.hbar(self.vt, a) if a is not None else f

    def flag_weights(self, w) -> list:
        base, m = self.base, self.m
        return [self._weight(w[k], w[k2]) for k in range(m) for k2 in range(k + 1, m) if base[w[k]] == base[w[k2]]]

    def fiber_weights(self, w) -> list:
        base, m = self.base, self.m
        out = []
        for k in range(m):
            for k2 in range(k):
                for a in self.datum.edges_between(base[w[k]], base[w[k2]]):
                    out.append(self._weight(w[k], w[k2], a))
        return out

    def lambda_factors(self, w) -> list:
        if w not in self._factors:
            self._factors[w] = self.flag_weights(w) + self.fiber_weights(w)
        return self._factors[w]

    def euler_flag(self, w) -> MultiPoly:
        return prod(self.flag_weights(w), start=MultiPoly.one(self.vt))

    def euler_fiber(self, w) -> MultiPoly:
        return prod(self.fiber_weights(w), start=MultiPoly.one(self.vt))

    def lambda_w(self, w) -> MultiPoly:
        return prod(self.lambda_factors(w), start=MultiPoly.one(self.vt))

    # Steinberg cells for s_j
    def admissible(self, w, w2, j) -> bool:
        if not 1 <= j < self.m:
            return False
        if w2 == P.times_simple(w, j):
            return True
        nu = self.nu[w]
        return w2 == w and nu[j - 1] == nu[j]

    def _check_admissible(self, w, w2, j):
        if not self.admissible(w, w2, j):
            raise InadmissibleError(f"(w={P.to_one_based(w)}, w'={P.to_one_based(w2)}, j={j}) is not admissible")

    def cell_weights(self, w, w2, j) -> list:
        """Tangent weights at the fixed point of the ``s_j`` Steinberg cell over ``(w, w2)``.

        Fixed-flag tangent space of ``w``, plus the line fibre when ``s_j nu = nu``,
        plus the common strictly stable weights of ``w`` and ``w s_j``.
        """
        self._check_admissible(w, w2, j)
        base, m = self.base, self.m
        ws = P.times_simple(w, j)

        def borel(u):
            return {(u[k], u[k2]) for k in range(m) for k2 in range(k + 1) if base[u[k]] == base[u[k2]]}

        def stable(u):
            return {(u[k], u[k2], a) for k in range(m) for k2 in range(k)
                    for a in self.datum.edges_between(base[u[k]], base[u[k2]])}

        b_w = borel(w)
        gl = {(p, q) for p in range(m) for q in range(m) if base[p] == base[q]}
        weights = [self._weight(p, q) for p, q in sorted(gl - b_w)]
        nu = self.nu[w]
        if nu[j - 1] == nu[j]:
            weights += [self._weight(p, q) for p, q in sorted((b_w | borel(ws)) - borel(w2))]
        common = stable(w) & stable(ws)
        weights += [self._weight(p, q, a) for p, q, a in sorted(common)]
        return weights

    def Lambda_sj(self, w, w2, j) -> MultiPoly:
        return prod(self.cell_weights(w, w2, j), start=MultiPoly.one(self.vt))

    def lambda_sj(self, w, w2, j, mode: str = "quotient") -> RatFunc:
        """``(Lambda^{s_j}_{w,w2})^{-1} Lambda_w``."""
        self._check_admissible(w, w2, j)
        if mode == "direct":
            return product_ratio(self.vt, self.lambda_factors(w), self.cell_weights(w, w2, j))
        if mode != "quotient":
            raise ValueError(f"unknown mode {mode!r}")
        nu = self.nu[w]
        a, b = w[j - 1], w[j]
        one = MultiPoly.one(self.vt)
        if nu[j - 1] != nu[j]:
            return RatFunc.from_poly(prod((self._weight(b, a, e) for e in self.datum.edges_between(nu[j], nu[j - 1])), start=one))
        num = prod((self._weight(b, a, e) for e in self.datum.edges_between(nu[j - 1], nu[j - 1])), start=one)
        if w2 == w:
            num = -num
        return RatFunc(num, self._weight(b, a))

    # scalar backends
    def exact(self) -> ExactScalars:
        if self._exact is None:
            self._exact = ExactScalars(self)
        return self._exact

    def sample_point(self, rng: random.Random, window: int = DEFAULT_WINDOW, modulus: int | None = None,
                     max_tries: int = 100):
        """A point where every ``chi_q - chi_p`` and ``chi_q - chi_p + hbar_a`` is nonzero."""
        n = self.vt.nvars
        m = self.m
        for _ in range(max_tries):
            if modulus is None:
                vals = [rng.randint(-window, window) for _ in range(n)]
            else:
                vals = [rng.randrange(modulus) for _ in range(n)]
            chis, hb = vals[:m], vals[m:]
            red = (lambda v: v % modulus) if modulus else (lambda v: v)
            if any(red(chis[q] - chis[p]) == 0 for p in range(m) for q in range(m) if p != q):
                continue
            if any(red(chis[q] - chis[p] + h) == 0 for p in range(m) for q in range(m) for h in hb):
                continue
            return tuple(vals)
        raise PoleError("could not find a nondegenerate evaluation point")

    def numeric(self, values, modulus: int | None = None) -> NumericScalars:
        return NumericScalars(self, values, modulus)

    # generator action on columns
    def apply_generator(self, g: Generator, vec: dict, sc, frame: str = "normalized") -> dict:
        """Multiply the sparse column ``vec`` (``w -> entry``) by the matrix of ``g``."""
        out: dict = {}
        if g.kind == "e":
            return {w: v for w, v in vec.items() if self.nu[w] == g.nu}
        if g.kind == "x":
            for w, v in vec.items():
                if self.nu[w] == g.nu:
                    t = sc.norm(sc.chi(w, g.index) * v)
                    if not sc.is_zero(t):
                        out[w] = t
            return out
        j = g.index
        for w, v in vec.items():
            if self.nu[w] != g.nu:
                continue
            targets = [P.times_simple(w, j)]
            if g.nu[j - 1] == g.nu[j]:
                targets.append(w)
            for r in targets:
                ent = sc.lam(r, w, j)
                if frame == "zeta":
                    ent = sc.norm(ent * sc.ratio(w, r))
                t = ent * v
                if r in out:
                    t = out[r] + t
                t = sc.norm(t)
                if sc.is_zero(t):
                    out.pop(r, None)
                else:
                    out[r] = t
        return out

    def apply_word(self, word: GeneratorWord, vec: dict, sc, frame: str = "normalized") -> dict:
        if word.is_zero:
            return {}
        for g in reversed(word.factors):
            vec = self.apply_generator(g, vec, sc, frame)
            if not vec:
                break
        return vec

    def apply_combination(self, comb: Combination, vec: dict, sc, frame: str = "normalized") -> dict:
        out: dict = {}
        for coef, word in comb.nonzero_terms():
            for w, v in self.apply_word(word, vec, sc, frame).items():
                t = sc.coef(coef, w) * v
                if w in out:
                    t = out[w] + t
                t = sc.norm(t)
                if sc.is_zero(t):
                    out.pop(w, None)
                else:
                    out[w] = t
        return out

    def unit_column(self, w, sc) -> dict:
        return {w: sc.one}

    # matrices
    def generator_matrix(self, g: Generator, frame: str = "zeta", sc=None) -> FixedPointMatrix:
        sc = sc or self.exact()
        entries = {}
        for c in self.W[g.nu]:
            for r, v in self.apply_generator(g, self.unit_column(c, sc), sc, frame).items():
                entries[(r, c)] = v
        deg = self.alg.degree(GeneratorWord.of(g))
        return FixedPointMatrix(entries, frame, deg)

    def identity_matrix(self, frame: str = "zeta", sc=None) -> FixedPointMatrix:
        sc = sc or self.exact()
        return FixedPointMatrix({(w, w): sc.one for w in self.perms}, frame, 0)

    def word_matrix(self, word: GeneratorWord, frame: str = "zeta", sc=None) -> FixedPointMatrix:
        sc = sc or self.exact()
        if word.is_zero:
            return FixedPointMatrix({}, frame)
        mat = self.identity_matrix(frame, sc)
        for g in word.factors:
            mat = mat @ self.generator_matrix(g, frame, sc)
        mat.degree = self.alg.degree(word)
        return mat

    def combination_matrix(self, comb: Combination, frame: str = "zeta", sc=None) -> FixedPointMatrix:
        sc = sc or self.exact()
        entries: dict = {}
        for c in self.perms:
            for r, v in self.apply_combination(comb, self.unit_column(c, sc), sc, frame).items():
                entries[(r, c)] = v
        return FixedPointMatrix(entries, frame)

    # embedding of the polynomial representation
    def psi(self, v: PolVector, frame: str = "zeta", sc=None) -> dict:
        """``f(nu) -> sum_{w in W(nu)} (w f) Lambda_w^{-1} zeta_w`` as ``w -> coordinate``."""
        sc = sc or self.exact()
        out = {}
        for nu, f in v.components.items():
            for w in self.W[nu]:
                val = sc.psi_entry(f, w, frame)
                if not sc.is_zero(val):
                    out[w] = val
        return out

    # equality of elements
    def _columns_for(self, insts_terms):
        colors = set()
        for comb in insts_terms:
            for _, word in comb.nonzero_terms():
                if not word.factors:
                    return list(self.perms)
                colors.add(word.right)
        return [w for nu in sorted(colors) for w in self.W[nu]]

    def degree_bound(self, comb: Combination) -> int:
        """Upper bound on the total degree of a cleared entry of ``comb``'s matrix."""
        hmax = max((len(v) for v in self.datum.edge_index.values()), default=0)
        best = 0
        for coef, word in comb.nonzero_terms():
            taus = sum(1 for g in word.factors if g.kind == "tau")
            xs = sum(1 for g in word.factors if g.kind == "x")
            best = max(best, coef.total_degree() + xs + taus * (hmax + 1))
        return best + self.m * self.m

    def elements_equal(self, lhs: Combination, rhs: Combination, backend: str = "exact", points: int = 3,
                       seed: int = 0, frame: str = "normalized", window: int = DEFAULT_WINDOW) -> Certificate:
        """Decide ``lhs == rhs`` by comparing matrices column by column."""
        cols = self._columns_for([lhs, rhs])
        diff = lhs - rhs
        alpha = self.alg.alpha.as_dict()
        if backend == "exact":
            sc = self.exact()
            for c in cols:
                res = self.apply_combination(diff, self.unit_column(c, sc), sc, frame)
                if res:
                    r, v = next(iter(sorted(res.items(), key=lambda t: t[0])))
                    return Certificate("element-equality", alpha, "exact", "fail",
                                       failure={"column": P.to_one_based(c), "row": P.to_one_based(r), "difference": str(v)})
            return Certificate("element-equality", alpha, "exact", "pass", count=len(cols))
        if backend != "randomized":
            raise ValueError(f"unknown backend {backend!r}")
        rng = random.Random(seed)
        for n in range(points):
            pt = self.sample_point(rng, window)
            sc = self.numeric(pt)
            for c in cols:
                res = self.apply_combination(diff, self.unit_column(c, sc), sc, frame)
                if res:
                    r, v = next(iter(sorted(res.items(), key=lambda t: t[0])))
                    return Certificate("element-equality", alpha, "randomized", "fail", points=points, seed=seed,
                                       failure={"column": P.to_one_based(c), "row": P.to_one_based(r),
                                                "difference": str(v), "point": [str(x) for x in pt]})
        bound = (self.degree_bound(diff) / (2 * window + 1)) ** points
        return Certificate("element-equality", alpha, "randomized", "pass", points=points, seed=seed,
                           failure_bound=bound, count=len(cols))

    def verify_relation(self, inst: RelationInstance, backend: str = "exact", **kw) -> Certificate:
        cert = self.elements_equal(inst.lhs, inst.rhs, backend=backend, **kw)
        cert.check = inst.relation
        return cert

    # commuting square between the two realizations
    def generators(self):
        m = self.m
        for nu in self.alg.sequences:
            yield Generator("e", nu)
            for k in range(1, m + 1):
                yield Generator("x", nu, k)
            for t in range(1, m):
                yield Generator("tau", nu, t)

    def cross_check_theorem(self, maxdeg: int = 6, backend: str = "exact", seed: int = 0, points: int = 3,
                            frame: str = "zeta", samples=None) -> Certificate:
        """Check ``psi(g . v) == M(g) psi(v)`` for every generator ``g`` and sample ``v``.

        Samples default to every x-monomial of degree ``<= maxdeg`` in every component.
        """
        rep = PolynomialRep(self.alg)
        vt = self.vt
        hz = (0,) * len(vt.hbar_ids)
        if samples is None:
            samples = [PolVector.single(nu, MultiPoly.monomial(vt, e + hz))
                       for nu in self.alg.sequences for d in range(maxdeg + 1) for e in monomials(self.m, d)]
        alpha = self.alg.alpha.as_dict()
        if backend == "exact":
            scs = [self.exact()]
        else:
            rng = random.Random(seed)
            scs = [self.numeric(self.sample_point(rng)) for _ in range(points)]
        gens = list(self.generators())
        count = 0
        for sc in scs:
            for v in samples:
                (nu_v,) = v.components
                pv = self.psi(v, frame, sc)
                for g in gens:
                    count += 1
                    if g.nu != nu_v:
                        # both sides vanish: the action is supported on one component
                        if not rep.act_generator(g, v).is_zero():
                            return self._cc_fail(alpha, backend, g, v, "nonzero off-component action")
                        continue
                    lhs = self.psi(rep.act_generator(g, v), frame, sc)
                    rhs = self.apply_generator(g, pv, sc, frame)
                    if not _vec_equal(lhs, rhs, sc):
                        return self._cc_fail(alpha, backend, g, v, f"psi(g.v)={_fmt(lhs)} but M(g)psi(v)={_fmt(rhs)}")
        cert = Certificate("localization-square", alpha, backend, "pass", count=count)
        if backend != "exact":
            cert.points, cert.seed = points, seed
        return cert

    def _cc_fail(self, alpha, backend, g, v, msg):
        return Certificate("localization-square", alpha, backend, "fail",
                           failure={"generator": str(g), "input": str(v), "detail": msg})


def _vec_equal(a: dict, b: dict, sc) -> bool:
    for k in set(a) | set(b):
        x = a.get(k)
        y = b.get(k)
        if x is None:
            x, y = y, None
        if y is None:
            if not sc.is_zero(x):
                return False
            continue
        if not sc.is_zero(sc.norm(x - y)):
            return False
    return True


def _fmt(vec: dict) -> str:
    return "{" + ", ".join(f"{P.to_one_based(w)}: {v}" for w, v in sorted(vec.items())) + "}"

