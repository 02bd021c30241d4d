"""Quivers with loops, their Borcherds-Cartan data, and color sequences."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial
from typing import Mapping

from . import perm as P

MAX_HEIGHT = 8


class QuiverParseError(ValueError):
    """Malformed quiver or root-vector document; ``location`` is a JSON path."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class Edge:
    id: str
    out: str
    into: str

    @property
    def is_loop(self) -> bool:
        return self.out == self.into


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    # presentation-only sign flips of Q_{i,j}; used to check that verification can fail
    fault_q_sign: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.vertices:
            raise QuiverParseError("vertex list must be non-empty", "$.vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverParseError("duplicate vertex id", "$.vertices")
        seen = set()
        for n, e in enumerate(self.edges):
            if e.id in seen:
                raise QuiverParseError(f"duplicate edge id {e.id!r}", f"$.edges[{n}].id")
            seen.add(e.id)
            for key, v in (("from", e.out), ("to", e.into)):
                if v not in self.vertices:
                    raise QuiverParseError(f"edge endpoint {v!r} is not a declared vertex", f"$.edges[{n}].{key}")

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def vindex(self, v: str) -> int:
        return self.vertices.index(v)


def _load(text):
    if isinstance(text, Mapping):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None


def parse_quiver(text) -> Quiver:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise QuiverParseError("document must be a JSON object")
    if "vertices" not in doc:
        raise QuiverParseError("missing key 'vertices'")
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise QuiverParseError("must be a list", "$.vertices")
    for n, v in enumerate(verts):
        if not isinstance(v, str) or not v:
            raise QuiverParseError("vertex id must be a non-empty string", f"$.vertices[{n}]")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise QuiverParseError("must be a list", "$.edges")
    edges = []
    for n, e in enumerate(raw_edges):
        loc = f"$.edges[{n}]"
        if not isinstance(e, dict):
            raise QuiverParseError("edge must be an object", loc)
        for key in ("id", "from", "to"):
            if key not in e:
                raise QuiverParseError(f"missing key {key!r}", loc)
            if not isinstance(e[key], str):
                raise QuiverParseError("must be a string", f"{loc}.{key}")
        edges.append(Edge(e["id"], e["from"], e["to"]))
    fault = doc.get("fault", {})
    if not isinstance(fault, dict):
        raise QuiverParseError("must be an object", "$.fault")
    flips = []
    for n, pair in enumerate(fault.get("q_sign", [])):
        if not (isinstance(pair, list) and len(pair) == 2 and all(p in verts for p in pair)):
            raise QuiverParseError("expected a pair of declared vertices", f"$.fault.q_sign[{n}]")
        flips.append(tuple(pair))
    return Quiver(tuple(verts), tuple(edges), tuple(flips))


def load_quiver(path) -> Quiver:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def serialize_quiver(q: Quiver) -> str:
    doc: dict = {
        "vertices": list(q.vertices),
        "edges": [{"id": e.id, "from": e.out, "to": e.into} for e in q.edges],
    }
    if q.fault_q_sign:
        doc["fault"] = {"q_sign": [list(p) for p in q.fault_q_sign]}
    return json.dumps(doc)


@dataclass(frozen=True)
class BorcherdsCartanDatum:
    vertices: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    loop_counts: dict
    arrow_counts: dict
    real_vertices: tuple[str, ...]
    imaginary_vertices: tuple[str, ...]
    edge_index: dict

    def a(self, i: str, j: str) -> int:
        return self.matrix[self.vertices.index(i)][self.vertices.index(j)]

    def h(self, i: str, j: str) -> int:
        return self.arrow_counts[(i, j)]

    def ell(self, i: str) -> int:
        return self.loop_counts[i]

    def edges_between(self, i: str, j: str) -> tuple[str, ...]:
        """Edge ids ``a`` with ``out(a) = i`` and ``in(a) = j``."""
        return self.edge_index[(i, j)]

    def bilinear(self, alpha: Mapping[str, int], beta: Mapping[str, int]) -> int:
        return sum(alpha.get(i, 0) * beta.get(j, 0) * self.a(i, j) for i in self.vertices for j in self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "matrix": [list(r) for r in self.matrix],
            "loops": {i: self.loop_counts[i] for i in self.vertices},
            "real": list(self.real_vertices),
            "imaginary": list(self.imaginary_vertices),
        }


def derive_datum(q: Quiver) -> BorcherdsCartanDatum:
    V = q.vertices
    idx = {(i, j): [] for i in V for j in V}
    for e in q.edges:
        idx[(e.out, e.into)].append(e.id)
    idx = {k: tuple(v) for k, v in idx.items()}
    h = {k: len(v) for k, v in idx.items()}
    ell = {i: h[(i, i)] for i in V}
    mat = tuple(
        tuple(2 - 2 * ell[i] if i == j else -h[(i, j)] - h[(j, i)] for j in V) for i in V
    )
    return BorcherdsCartanDatum(
        vertices=V,
        matrix=mat,
        loop_counts=ell,
        arrow_counts=h,
        real_vertices=tuple(i for i in V if ell[i] == 0),
        imaginary_vertices=tuple(i for i in V if ell[i] > 0),
        edge_index=idx,
    )


@dataclass(frozen=True)
class RootVector:
    coeffs: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, q: Quiver, mapping: Mapping[str, int]) -> RootVector:
        for v, k in mapping.items():
            if v not in q.vertices:
                raise QuiverParseError(f"unknown vertex {v!r}", f"$.{v}")
            if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                raise QuiverParseError("coefficient must be a nonnegative integer", f"$.{v}")
        return cls(tuple((v, int(mapping.get(v, 0))) for v in q.vertices))

    @property
    def height(self) -> int:
        return sum(k for _, k in self.coeffs)

    def get(self, v: str) -> int:
        return dict(self.coeffs).get(v, 0)

    def as_dict(self) -> dict:
        return {v: k for v, k in self.coeffs if k}


def parse_root_vector(q: Quiver, text) -> RootVector:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise QuiverParseError("root vector must be a JSON object")
    return RootVector.of(q, doc)


def base_sequence(alpha: RootVector) -> tuple[str, ...]:
    """Lexicographically smallest element of ``I^alpha`` under declaration order."""
    out: list[str] = []
    for v, k in alpha.coeffs:
        out.extend([v] * k)
    return tuple(out)


def enumerate_sequences(alpha: RootVector, cap: int = MAX_HEIGHT) -> list[tuple[str, ...]]:
    """All of ``I^alpha`` in lexicographic order (vertex declaration order)."""
    if alpha.height > cap:
        raise ValueError(f"height {alpha.height} exceeds the cap {cap}")
    order = [v for v, _ in alpha.coeffs]
    counts = {v: k for v, k in alpha.coeffs}
    out = []

    def rec(prefix):
        if len(prefix) == alpha.height:
            out.append(tuple(prefix))
            return
        for v in order:
            if counts[v]:
                counts[v] -= 1
                prefix.append(v)
                rec(prefix)
                prefix.pop()
                counts[v] += 1

    rec([])
    return out


def multinomial(alpha: RootVector) -> int:
    n = factorial(alpha.height)
    for _, k in alpha.coeffs:
        n //= factorial(k)
    return n


def weyl_act(w: P.Perm, nu: tuple) -> tuple:
    return P.act_on_sequence(w, nu)


def nu_of(w: P.Perm, base: tuple) -> tuple:
    """``nu_w = (base_{w(1)}, ..., base_{w(m)})``."""
    return tuple(base[k] for k in w)


def stabilizer_classes(alpha: RootVector) -> dict[tuple, list[P.Perm]]:
    """``nu -> W(nu) = {w : nu_w = nu}`` relative to :func:`base_sequence`."""
    base = base_sequence(alpha)
    out: dict[tuple, list] = {nu: [] for nu in enumerate_sequences(alpha)}
    for w in P.all_perms(alpha.height):
        out[nu_of(w, base)].append(w)
    return out
