"""KLR algebras as presented objects: generators, words, twisting polynomials
and the catalogue of defining relations.

Words are formal products and are never rewritten; equality of elements is
decided in a faithful model (:mod:`klr.polrep`, :mod:`klr.fixedpoint`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .poly import MultiPoly, VarTable, exact_divide
from .quiver import BorcherdsCartanDatum, Quiver, RootVector, derive_datum, enumerate_sequences

KINDS = ("e", "x", "tau")
RELATIONS = ("idempotent", "x-commute", "r-idempotent", "r-commute", "r2", "rx", "braid")


def swap_colors(nu: tuple, t: int) -> tuple:
    """``s_t nu`` for 1-based ``t``."""
    nu = list(nu)
    nu[t - 1], nu[t] = nu[t], nu[t - 1]
    return tuple(nu)


@dataclass(frozen=True)
class Generator:
    """``e(nu)``, ``x_k e(nu)`` or ``r_t e(nu)``; ``nu`` is the right color."""

    kind: str
    nu: tuple
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        m = len(self.nu)
        if self.kind == "x" and not 1 <= self.index <= m:
            raise IndexError(f"x_{self.index} out of range for m={m}")
        if self.kind == "tau" and not 1 <= self.index < m:
            raise IndexError(f"r_{self.index} out of range for m={m}")

    @property
    def left(self) -> tuple:
        return swap_colors(self.nu, self.index) if self.kind == "tau" else self.nu

    def __str__(self):
        nu = ",".join(self.nu)
        if self.kind == "e":
            return f"e({nu})"
        name = "x" if self.kind == "x" else "r"
        return f"{name}{self.index}e({nu})"


def E(nu) -> Generator:
    return Generator("e", tuple(nu))


def X(k: int, nu) -> Generator:
    return Generator("x", tuple(nu), k)


def T(t: int, nu) -> Generator:
    return Generator("tau", tuple(nu), t)


@dataclass(frozen=True)
class GeneratorWord:
    """Product of generators, leftmost first.  The empty word is the unit;
    the zero word is the distinguished value :data:`ZERO`."""

    factors: tuple = ()
    is_zero: bool = False

    @classmethod
    def of(cls, *gens: Generator) -> GeneratorWord:
        for a, b in zip(gens, gens[1:]):
            if a.nu != b.left:
                return ZERO
        return cls(tuple(gens))

    @property
    def right(self):
        return self.factors[-1].nu if self.factors else None

    @property
    def left(self):
        return self.factors[0].left if self.factors else None

    def __mul__(self, other: GeneratorWord) -> GeneratorWord:
        if self.is_zero or other.is_zero:
            return ZERO
        return GeneratorWord.of(*self.factors, *other.factors)

    def __str__(self):
        if self.is_zero:
            return "0"
        return "*".join(map(str, self.factors)) or "1"


ZERO = GeneratorWord((), True)
ONE = GeneratorWord(())


def chain(nu, items) -> GeneratorWord:
    """Word from ``items`` (leftmost first; each is ``("x", k)``, ``("tau", t)`` or ``("e",)``)
    ending in right color ``nu``; colors of the other factors are inferred."""
    gens = []
    cur = tuple(nu)
    for item in reversed(items):
        kind = item[0]
        g = Generator(kind, cur, item[1] if len(item) > 1 else 0)
        gens.append(g)
        cur = g.left
    return GeneratorWord.of(*reversed(gens))


def generator_degree(g: Generator, datum: BorcherdsCartanDatum) -> int:
    if g.kind == "e":
        return 0
    if g.kind == "x":
        return 2
    a, b = g.nu[g.index - 1], g.nu[g.index]
    if a == b:
        return 2 * (datum.ell(a) - 1)
    return 2 * datum.h(a, b)


def word_degree(word: GeneratorWord, datum: BorcherdsCartanDatum) -> int:
    if word.is_zero:
        raise ValueError("the zero word has no degree")
    return sum(generator_degree(g, datum) for g in word.factors)


# twisting polynomials

def _factor_prod(vt: VarTable, edges, a: MultiPoly, b: MultiPoly) -> MultiPoly:
    out = MultiPoly.one(vt)
    for e in edges:
        out = out * (a - b + MultiPoly.hbar(vt, e))
    return out


def build_P(datum: BorcherdsCartanDatum, i: str, vt: VarTable) -> MultiPoly:
    """``P_i(u, v) = prod over loops a at i of (u - v + hbar_a)``."""
    u, v = MultiPoly.x(vt, 1), MultiPoly.x(vt, 2)
    return _factor_prod(vt, datum.edges_between(i, i), u, v)


def build_Q(datum: BorcherdsCartanDatum, i: str, j: str, vt: VarTable, flip: bool = False) -> MultiPoly:
    if i == j:
        return MultiPoly.zero(vt)
    u, v = MultiPoly.x(vt, 1), MultiPoly.x(vt, 2)
    q = _factor_prod(vt, datum.edges_between(i, j), v, u) * _factor_prod(vt, datum.edges_between(j, i), u, v)
    return -q if flip else q


def _in_uvw(f: MultiPoly, vt3: VarTable, a: int, b: int) -> MultiPoly:
    """Rename ``(u, v)`` of a two-variable polynomial to variables ``a, b`` of ``vt3``."""
    images = [MultiPoly.x(vt3, a), MultiPoly.x(vt3, b)] + [MultiPoly.hbar(vt3, e) for e in f.vt.hbar_ids]
    return f.substitute(vt3, images)


def _three_term(Pi: MultiPoly, vt3: VarTable, signs, pairs) -> MultiPoly:
    u, v, w = (MultiPoly.x(vt3, k) for k in (1, 2, 3))
    # each term is brought over (u-v)(u-w)(v-w) by the factor missing from its denominator
    cofactors = (v - w, u - v, u - w)
    num = MultiPoly.zero(vt3)
    for s, (p1, p2), cof in zip(signs, pairs, cofactors):
        num = num + (_in_uvw(Pi, vt3, *p1) * _in_uvw(Pi, vt3, *p2) * cof).scale(s)
    return exact_divide(num, (u - v) * (u - w) * (v - w))


def build_Pbar_prime(datum, i: str, vt: VarTable) -> MultiPoly:
    """Braid corrector multiplying ``r_t`` when three equal colors meet."""
    vt2 = VarTable(2, vt.hbar_ids, ("u", "v"))
    Pi = build_P(datum, i, vt2)
    return _three_term(Pi, vt, (1, 1, -1), [((2, 1), (1, 3)), ((1, 3), (2, 3)), ((1, 2), (2, 3))])


def build_Pbar_dblprime(datum, i: str, vt: VarTable) -> MultiPoly:
    """Braid corrector multiplying ``r_{t+1}`` when three equal colors meet."""
    vt2 = VarTable(2, vt.hbar_ids, ("u", "v"))
    Pi = build_P(datum, i, vt2)
    return _three_term(Pi, vt, (-1, -1, 1), [((1, 2), (1, 3)), ((1, 3), (3, 2)), ((1, 2), (2, 3))])


def build_Qbar(datum, i: str, j: str, vt: VarTable, flip: bool = False) -> MultiPoly:
    """``(Q_ij(u, v) - Q_ij(w, v)) / (u - w)``."""
    vt2 = VarTable(2, vt.hbar_ids, ("u", "v"))
    Q = build_Q(datum, i, j, vt2, flip)
    u, w = MultiPoly.x(vt, 1), MultiPoly.x(vt, 3)
    return exact_divide(_in_uvw(Q, vt, 1, 2) - _in_uvw(Q, vt, 3, 2), u - w)


# elements and relations

@dataclass(frozen=True)
class Combination:
    """``sum coef_i * word_i``; each coefficient multiplies from the left."""

    terms: tuple = ()

    def __add__(self, other):
        return Combination(self.terms + other.terms)

    def __neg__(self):
        return Combination(tuple((-c, w) for c, w in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def nonzero_terms(self):
        return [(c, w) for c, w in self.terms if not w.is_zero and not c.is_zero()]

    def degrees(self, datum) -> set[int]:
        return {c.degree() + word_degree(w, datum) for c, w in self.nonzero_terms()}

    def __str__(self):
        parts = [f"({c})*{w}" for c, w in self.nonzero_terms()]
        return " + ".join(parts) or "0"


def term(coef: MultiPoly, word: GeneratorWord) -> Combination:
    return Combination(((coef, word),))


@dataclass(frozen=True)
class RelationInstance:
    relation: str
    nu: tuple | None
    params: tuple
    lhs: Combination
    rhs: Combination

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def difference(self) -> Combination:
        return self.lhs - self.rhs

    def report(self, status: str, backend: str) -> dict:
        out = {"relation": self.relation, "nu": list(self.nu) if self.nu is not None else None}
        out.update(self.param_dict)
        out.update({"status": status, "backend": backend})
        return out

    def __str__(self):
        ps = ", ".join(f"{k}={v}" for k, v in self.params)
        nu = ",".join(self.nu) if self.nu else "-"
        return f"{self.relation}[nu=({nu}){', ' + ps if ps else ''}]: {self.lhs} = {self.rhs}"


@dataclass
class KLRAlgebra:
    """``R(alpha)`` for the quiver ``q`` with its geometric twisting polynomials."""

    quiver: Quiver
    alpha: RootVector
    datum: BorcherdsCartanDatum = field(init=False)

    def __post_init__(self):
        self.datum = derive_datum(self.quiver)

    @property
    def m(self) -> int:
        return self.alpha.height

    @cached_property
    def vt(self) -> VarTable:
        return VarTable(self.m, self.quiver.edge_ids)

    @cached_property
    def sequences(self) -> list[tuple]:
        return enumerate_sequences(self.alpha)

    @cached_property
    def _vt2(self):
        return VarTable(2, self.quiver.edge_ids, ("u", "v"))

    @cached_property
    def _vt3(self):
        return VarTable(3, self.quiver.edge_ids, ("u", "v", "w"))

    def P(self, i):
        return build_P(self.datum, i, self._vt2)

    def Q(self, i, j):
        return build_Q(self.datum, i, j, self._vt2, flip=(i, j) in self.quiver.fault_q_sign)

    def Pbar_prime(self, i):
        return build_Pbar_prime(self.datum, i, self._vt3)

    def Pbar_dblprime(self, i):
        return build_Pbar_dblprime(self.datum, i, self._vt3)

    def Qbar(self, i, j):
        return build_Qbar(self.datum, i, j, self._vt3, flip=(i, j) in self.quiver.fault_q_sign)

    def at(self, f: MultiPoly, *ks: int) -> MultiPoly:
        """Substitute the u, v(, w) of ``f`` by ``x_{k_1}, x_{k_2}(, x_{k_3})``."""
        images = [MultiPoly.x(self.vt, k) for k in ks] + [MultiPoly.hbar(self.vt, e) for e in f.vt.hbar_ids]
        return f.substitute(self.vt, images)

    def one(self) -> MultiPoly:
        return MultiPoly.one(self.vt)

    def degree(self, word: GeneratorWord) -> int:
        return word_degree(word, self.datum)

    # relation catalogue
    def relation_catalogue(self, families=RELATIONS) -> Iterator[RelationInstance]:
        """Every instance of the defining relations for this ``alpha``, generated lazily."""
        m, one = self.m, self.one()
        seqs = self.sequences
        zero = Combination()
        for fam in families:
            if fam == "idempotent":
                for nu in seqs:
                    for nu2 in seqs:
                        rhs = term(one, GeneratorWord.of(E(nu))) if nu == nu2 else zero
                        yield RelationInstance(fam, nu, (("nu2", list(nu2)),),
                                               term(one, GeneratorWord.of(E(nu), E(nu2))), rhs)
                total = Combination(tuple((one, GeneratorWord.of(E(nu))) for nu in seqs))
                yield RelationInstance(fam, None, (("sum", True),), total, term(one, ONE))
            elif fam == "x-commute":
                for nu in seqs:
                    for k in range(1, m + 1):
                        yield RelationInstance(fam, nu, (("k", k),), term(one, chain(nu, [("x", k)])),
                                               term(one, chain(nu, [("e",), ("x", k)])))
                        for l in range(k + 1, m + 1):
                            yield RelationInstance(fam, nu, (("k", k), ("l", l)),
                                                   term(one, chain(nu, [("x", k), ("x", l)])),
                                                   term(one, chain(nu, [("x", l), ("x", k)])))
            elif fam == "r-idempotent":
                for nu in seqs:
                    for t in range(1, m):
                        yield RelationInstance(fam, nu, (("t", t),), term(one, chain(nu, [("tau", t)])),
                                               term(one, chain(nu, [("e",), ("tau", t)])))
            elif fam == "r-commute":
                for nu in seqs:
                    for t in range(1, m):
                        for s in range(t + 2, m):
                            yield RelationInstance(fam, nu, (("t", t), ("s", s)),
                                                   term(one, chain(nu, [("tau", t), ("tau", s)])),
                                                   term(one, chain(nu, [("tau", s), ("tau", t)])))
            elif fam == "r2":
                for nu in seqs:
                    for t in range(1, m):
                        yield self._r2(nu, t)
            elif fam == "rx":
                for nu in seqs:
                    for t in range(1, m):
                        for k in range(1, m + 1):
                            yield self._rx(nu, t, k)
            elif fam == "braid":
                for nu in seqs:
                    for t in range(1, m - 1):
                        yield self._braid(nu, t)
            else:
                raise ValueError(f"unknown relation family {fam!r}")

    def _r2(self, nu, t) -> RelationInstance:
        a, b = nu[t - 1], nu[t]
        lhs = term(self.one(), chain(nu, [("tau", t), ("tau", t)]))
        if a == b:
            coef = self.at(self.P(a), t, t + 1).demazure(t)
            rhs = term(coef, chain(nu, [("tau", t)]))
        else:
            rhs = term(self.at(self.Q(a, b), t, t + 1), chain(nu, [("e",)]))
        return RelationInstance("r2", nu, (("t", t),), lhs, rhs)

    def _rx(self, nu, t, k) -> RelationInstance:
        sk = t + 1 if k == t else t if k == t + 1 else k
        lhs = term(self.one(), chain(nu, [("tau", t), ("x", k)])) - term(self.one(), chain(nu, [("x", sk), ("tau", t)]))
        a, b = nu[t - 1], nu[t]
        if a == b and k in (t, t + 1):
            p = self.at(self.P(a), t, t + 1)
            rhs = term(-p if k == t else p, chain(nu, [("e",)]))
        else:
            rhs = Combination()
        return RelationInstance("rx", nu, (("t", t), ("k", k)), lhs, rhs)

    def _braid(self, nu, t) -> RelationInstance:
        one = self.one()
        lhs = term(one, chain(nu, [("tau", t + 1), ("tau", t), ("tau", t + 1)])) - term(
            one, chain(nu, [("tau", t), ("tau", t + 1), ("tau", t)]))
        a, b, c = nu[t - 1], nu[t], nu[t + 1]
        if a == c != b:
            coef = self.at(self.P(a), t, t + 2) * self.at(self.Qbar(a, b), t, t + 1, t + 2)
            rhs = term(coef, chain(nu, [("e",)]))
        elif a == b == c:
            rhs = term(self.at(self.Pbar_prime(a), t, t + 1, t + 2), chain(nu, [("tau", t)])) + term(
                self.at(self.Pbar_dblprime(a), t, t + 1, t + 2), chain(nu, [("tau", t + 1)]))
        else:
            rhs = Combination()
        return RelationInstance("braid", nu, (("t", t),), lhs, rhs)

