"""Finite simplicial complexes and shipped surface triangulations.

Complexes are given by facets of up to three vertices and closed
downward.  The surface check (every edge in two triangles, every vertex
link a single cycle, connected) gates the constructions that need a
closed surface: connected sums, deleted products, and the oracle runs.
Built-in triangulations are loaded from data files and re-validated;
higher genus and crosscap counts are assembled by connected sum.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from .gf2 import Mat2, rank
from .surfaces import SurfaceKind

__all__ = [
    "SimplicialComplex",
    "validate_surface",
    "builtin_triangulation",
    "connected_sum",
    "barycentric_subdivide",
    "parse_triangulation",
    "read_triangulation",
    "format_triangulation",
]


class SimplicialComplex:
    """Downward closure of a facet list on vertices 0..vertex_count-1.

    Facets may have one, two, or three vertices; a closed surface has
    pure triangle facets, which validate_surface enforces.
    """

    def __init__(self, vertex_count: int, facets):
        if vertex_count < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = []
        for f in facets:
            face = tuple(sorted(int(v) for v in f))
            if len(face) not in (1, 2, 3):
                raise ValueError(f"facet size out of range: {face}")
            if len(set(face)) != len(face):
                raise ValueError(f"facet repeats a vertex: {face}")
            if face[0] < 0 or face[-1] >= vertex_count:
                raise ValueError(f"facet vertex out of range: {face}")
            canon.append(face)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate facets")
        self.vertex_count = vertex_count
        self.facets: tuple[tuple[int, ...], ...] = tuple(sorted(canon))
        edges = set()
        triangles = []
        for face in self.facets:
            if len(face) == 3:
                triangles.append(face)
            for e in combinations(face, 2):
                edges.add(e)
        self.triangles: tuple[tuple[int, int, int], ...] = tuple(sorted(triangles))
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edges))
        self.vertices: tuple[tuple[int], ...] = tuple((v,) for v in range(vertex_count))
        self._index = [
            {s: i for i, s in enumerate(level)}
            for level in (self.vertices, self.edges, self.triangles)
        ]
        self._boundaries: dict[int, Mat2] = {}

    # -- structure ---------------------------------------------------------

    def simplices(self, d: int) -> tuple[tuple[int, ...], ...]:
        if d == 0:
            return self.vertices
        if d == 1:
            return self.edges
        if d == 2:
            return self.triangles
        return ()

    def simplex_index(self, s: tuple[int, ...]) -> int:
        return self._index[len(s) - 1][s]

    def counts(self) -> tuple[int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.triangles))

    @property
    def euler(self) -> int:
        v, e, t = self.counts()
        return v - e + t

    def boundary_matrix(self, d: int) -> Mat2:
        """Boundary from d-chains to (d-1)-chains; d = 0 maps to nothing."""
        if d in self._boundaries:
            return self._boundaries[d]
        cols = self.simplices(d)
        rows = self.simplices(d - 1) if d >= 1 else ()
        dense = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        if d >= 1:
            idx = self._index[d - 1]
            for j, s in enumerate(cols):
                for face in combinations(s, d):
                    dense[idx[face], j] ^= 1
        out = Mat2.from_dense(dense)
        self._boundaries[d] = out
        return out

    def betti(self) -> tuple[int, int, int]:
        """F2 Betti numbers (b0, b1, b2)."""
        r1 = rank(self.boundary_matrix(1))
        r2 = rank(self.boundary_matrix(2))
        v, e, t = self.counts()
        return (v - r1, e - r1 - r2, t - r2)

    def component_count(self) -> int:
        adjacency = defaultdict(list)
        for a, b in self.edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        seen = [False] * self.vertex_count
        parts = 0
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            parts += 1
            stack = [start]
            seen[start] = True
            while stack:
                v = stack.pop()
                for w in adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
        return parts

    def __repr__(self) -> str:
        v, e, t = self.counts()
        return f"SimplicialComplex(vertices={v}, edges={e}, triangles={t})"


def _links_are_single_cycles(K: SimplicialComplex) -> bool:
    link: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for a, b, c in K.triangles:
        link[a][b].append(c)
        link[a][c].append(b)
        link[b][a].append(c)
        link[b][c].append(a)
        link[c][a].append(b)
        link[c][b].append(a)
    for v in range(K.vertex_count):
        graph = link.get(v)
        if not graph:
            return False
        if any(len(nbrs) != 2 for nbrs in graph.values()):
            return False
        start = next(iter(graph))
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in graph[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(graph):
            return False
    return True


def validate_surface(K: SimplicialComplex) -> dict:
    """Closed-surface report: closed, connected, euler, betti."""
    pure = all(len(f) == 3 for f in K.facets) and len(K.facets) > 0
    edge_count: dict[tuple[int, int], int] = defaultdict(int)
    for t in K.triangles:
        for e in combinations(t, 2):
            edge_count[e] += 1
    edges_ok = pure and all(edge_count[e] == 2 for e in K.edges)
    closed = edges_ok and _links_are_single_cycles(K)
    return {
        "closed": closed,
        "connected": K.component_count() == 1,
        "euler": K.euler,
        "betti": K.betti(),
    }


# -- file format ------------------------------------------------------------


def parse_triangulation(text: str) -> SimplicialComplex:
    """Parse the plain-text format: `vertices N`, then `f i j k` lines."""
    vertex_count = None
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if vertex_count is not None:
                raise ValueError(f"line {lineno}: repeated vertices header")
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValueError(f"line {lineno}: expected 'vertices N'")
            vertex_count = int(parts[1])
        elif parts[0] == "f":
            if vertex_count is None:
                raise ValueError(f"line {lineno}: facet before vertices header")
            try:
                facets.append([int(p) for p in parts[1:]])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: bad facet indices") from exc
        else:
            raise ValueError(f"line {lineno}: unknown directive {parts[0]!r}")
    if vertex_count is None:
        raise ValueError("missing vertices header")
    try:
        return SimplicialComplex(vertex_count, facets)
    except ValueError as exc:
        raise ValueError(f"bad triangulation: {exc}") from exc


def read_triangulation(path) -> SimplicialComplex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read triangulation file {path}: {exc}") from exc
    return parse_triangulation(text)


def format_triangulation(K: SimplicialComplex) -> str:
    lines = [f"vertices {K.vertex_count}"]
    lines.extend("f " + " ".join(str(v) for v in f) for f in K.facets)
    return "\n".join(lines) + "\n"


# -- constructions -----------------------------------------------------------


def _load_data(name: str) -> SimplicialComplex:
    from importlib import resources

    text = (resources.files("conf2.data") / name).read_text()
    return parse_triangulation(text)


@lru_cache(maxsize=None)
def builtin_triangulation(kind: SurfaceKind) -> SimplicialComplex:
    """Validated triangulation of the requested homeomorphism type."""
    if kind.family == "sphere":
        K = _load_data("sphere.tri")
        expected = (1, 0, 1)
    elif kind.family == "orientable":
        K = _load_data("torus.tri")
        for _ in range(kind.param - 1):
            K = connected_sum(K, _load_data("torus.tri"))
        expected = (1, 2 * kind.param, 1)
    else:
        K = _load_data("rp2.tri")
        for _ in range(kind.param - 1):
            K = connected_sum(K, _load_data("rp2.tri"))
        expected = (1, kind.param, 1)
    report = validate_surface(K)
    if not (report["closed"] and report["connected"] and report["betti"] == expected):
        raise RuntimeError(f"built-in triangulation failed validation for {kind.label}")
    return K


def _glue(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex | None:
    """Remove the last facet of each and identify them vertexwise."""
    f1 = K1.facets[-1]
    f2 = K2.facets[-1]
    rename = dict(zip(f2, f1))
    nxt = K1.vertex_count
    for v in range(K2.vertex_count):
        if v not in rename:
            rename[v] = nxt
            nxt += 1
    facets = [f for f in K1.facets if f != f1]
    facets.extend(
        tuple(sorted(rename[v] for v in f)) for f in K2.facets if f != f2
    )
    try:
        return SimplicialComplex(nxt, facets)
    except ValueError:
        return None


def connected_sum(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Glue two closed surfaces along a removed facet of each.

    Falls back to one barycentric subdivision of both inputs when the
    direct gluing damages a vertex link.
    """
    r1 = validate_surface(K1)
    r2 = validate_surface(K2)
    if not (r1["closed"] and r1["connected"] and r2["closed"] and r2["connected"]):
        raise ValueError("connected sum needs closed connected surfaces")
    target = r1["euler"] + r2["euler"] - 2
    for a, b in ((K1, K2), (barycentric_subdivide(K1), barycentric_subdivide(K2))):
        out = _glue(a, b)
        if out is None:
            continue
        report = validate_surface(out)
        if report["closed"] and report["connected"] and report["euler"] == target:
            return out
    raise RuntimeError("connected sum failed even after subdividing")


def barycentric_subdivide(K: SimplicialComplex) -> SimplicialComplex:
    """One barycentric subdivision; new vertices are the old simplices."""
    simps = [s for d in range(3) for s in K.simplices(d)]
    index = {s: i for i, s in enumerate(simps)}
    facets = []
    for f in K.facets:
        if len(f) == 1:
            facets.append((index[f],))
        elif len(f) == 2:
            for v in f:
                facets.append((index[(v,)], index[f]))
        else:
            for e in combinations(f, 2):
                for v in e:
                    facets.append((index[(v,)], index[e], index[f]))
    return SimplicialComplex(len(simps), facets)
