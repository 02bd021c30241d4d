"""The faithful polynomial representation ``Pol(alpha) = (+)_nu H[x_1(nu), ..., x_m(nu)]``."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .poly import MultiPoly, monomials, random_poly
from .presentation import ONE, Combination, Generator, GeneratorWord, KLRAlgebra, RelationInstance, swap_colors


@dataclass
class PolVector:
    """Components ``nu -> f(nu)``; absent components are zero."""

    components: dict = field(default_factory=dict)

    @classmethod
    def single(cls, nu, f: MultiPoly) -> PolVector:
        return cls({tuple(nu): f} if not f.is_zero() else {})

    def get(self, nu):
        return self.components.get(tuple(nu))

    def __add__(self, other: PolVector) -> PolVector:
        out = dict(self.components)
        for nu, f in other.components.items():
            g = out[nu] + f if nu in out else f
            if g.is_zero():
                out.pop(nu, None)
            else:
                out[nu] = g
        return PolVector(out)

    def __neg__(self):
        return PolVector({nu: -f for nu, f in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coef: MultiPoly) -> PolVector:
        out = {}
        for nu, f in self.components.items():
            g = coef * f
            if not g.is_zero():
                out[nu] = g
        return PolVector(out)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return isinstance(other, PolVector) and (self - other).is_zero()

    def __str__(self):
        return "{" + ", ".join(f"({','.join(nu)}): {f}" for nu, f in sorted(self.components.items())) + "}"


class PolynomialRep:
    def __init__(self, alg: KLRAlgebra):
        self.alg = alg
        self._factor = lru_cache(maxsize=None)(self._factor_uncached)

    def _factor_uncached(self, t: int, a: str, b: str) -> MultiPoly:
        vt = self.alg.vt
        lin = MultiPoly.x(vt, t) - MultiPoly.x(vt, t + 1)
        out = MultiPoly.one(vt)
        for e in self.alg.datum.edges_between(a, b):
            out = out * (lin + MultiPoly.hbar(vt, e))
        return out

    def act_generator(self, g: Generator, v: PolVector) -> PolVector:
        f = v.get(g.nu)
        if f is None:
            return PolVector()
        if g.kind == "e":
            return PolVector({g.nu: f})
        if g.kind == "x":
            return PolVector.single(g.nu, MultiPoly.x(self.alg.vt, g.index) * f)
        t = g.index
        a, b = g.nu[t - 1], g.nu[t]
        if a != b:
            return PolVector.single(swap_colors(g.nu, t), self._factor(t, a, b) * f.swap(t))
        d = f.demazure(t)
        if d.is_zero():
            return PolVector()
        return PolVector.single(g.nu, self._factor(t, a, a) * d)

    def act_word(self, word: GeneratorWord, v: PolVector) -> PolVector:
        if word.is_zero:
            return PolVector()
        for g in reversed(word.factors):
            v = self.act_generator(g, v)
            if v.is_zero():
                break
        return v

    def act(self, comb: Combination, v: PolVector) -> PolVector:
        out = PolVector()
        for coef, word in comb.nonzero_terms():
            out = out + self.act_word(word, v).scale(coef)
        return out

    # relation checking
    def _input_colors(self, inst: RelationInstance):
        colors = set()
        for comb in (inst.lhs, inst.rhs):
            for _, w in comb.nonzero_terms():
                if w == ONE:
                    return list(self.alg.sequences)
                colors.add(w.right)
        return sorted(colors)

    def _check_homogeneous(self, comb: Combination, v: PolVector, d: int):
        for coef, word in comb.nonzero_terms():
            out = self.act_word(word, v).scale(coef)
            want = d + coef.degree() + self.alg.degree(word)
            for f in out.components.values():
                if not f.is_homogeneous() or f.degree() != want:
                    return f"term {word} sends degree {d} to {f} (expected degree {want})"
        return None

    def verify_relation(self, inst: RelationInstance, maxdeg: int = 8, trials: int = 16,
                        seed: int = 0, rand_deg: int = 6, coeff: int = 9) -> RepReport:
        """Apply both sides to all x-monomials up to ``maxdeg`` and to random inputs."""
        vt = self.alg.vt
        rng = random.Random(seed)
        checked = 0
        colors = self._input_colors(inst)
        inputs = []
        for nu in colors:
            for d in range(maxdeg + 1):
                for e in monomials(vt.m, d):
                    inputs.append((PolVector.single(nu, MultiPoly.monomial(vt, e + (0,) * len(vt.hbar_ids))), 2 * d))
        for _ in range(trials):
            nu = rng.choice(colors) if colors else None
            if nu is None:
                break
            inputs.append((PolVector.single(nu, random_poly(vt, rng, rand_deg, coeff=coeff)), None))
        for v, d in inputs:
            checked += 1
            left, right = self.act(inst.lhs, v), self.act(inst.rhs, v)
            if left != right:
                return RepReport(inst, False, checked, {"input": str(v), "lhs": str(left), "rhs": str(right)})
            if d is not None:
                for comb in (inst.lhs, inst.rhs):
                    msg = self._check_homogeneous(comb, v, d)
                    if msg:
                        return RepReport(inst, False, checked, {"input": str(v), "homogeneity": msg})
        return RepReport(inst, True, checked, None)


@dataclass
class RepReport:
    instance: RelationInstance
    ok: bool
    checked: int
    counterexample: dict | None

    def to_json(self) -> dict:
        out = self.instance.report("verified" if self.ok else "failed", "polynomial-rep")
        out["inputs"] = self.checked
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


def verify_relation_on_rep(alg: KLRAlgebra, inst: RelationInstance, trials: int = 16, maxdeg: int = 8,
                           seed: int = 0) -> RepReport:
    return PolynomialRep(alg).verify_relation(inst, maxdeg=maxdeg, trials=trials, seed=seed)
