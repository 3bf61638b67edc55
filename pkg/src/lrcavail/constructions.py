"""Code families: graph and polyhedron codes, Platonic solids, Simplex/Hamming, Fano.

Edge labelings of the Platonic solids are fixed:

* tetrahedron: vertices 1..4, edges 1={1,3} 2={1,2} 3={2,3} 4={3,4} 5={1,4} 6={2,4};
  its incidence matrix has rows {1,2,5}, {2,3,6}, {1,3,4}, {4,5,6}.
* cube: a bottom square 1-2-3-4 and top square 5-6-7-8 with verticals i-(i+4);
  edges 1..4 bottom ({1,2},{2,3},{3,4},{1,4}), 5..8 verticals, 9..12 top
  ({5,6},{6,7},{7,8},{5,8}).
* octahedron: the geometric dual of the cube above, built by
  :func:`dual_polyhedron`; edge j of the octahedron crosses edge j of the cube.
* icosahedron: vertices are the 12 points (0,±1,±φ), (±1,±φ,0), (±φ,0,±1)
  in that sign order; edges are the vertex pairs at distance 2, sorted.
* dodecahedron: the dual of that icosahedron, again sharing edge labels.

Because dual pairs share edge labels, ``dual(polyhedron_code(P))`` and
``polyhedron_code(dual_polyhedron(P))`` are equal codes, not merely equivalent.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidGraph, InvalidPolyhedron, LRCError, NotExactCovering, UnknownName
from .gf2 import BitMatrix, LinearCode, code_from_generator, code_from_parity, dual, from_support


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        seen = set()
        for idx, e in enumerate(self.edges, 1):
            if len(e) != 2:
                raise InvalidGraph(f"edge {idx} is not a pair: {e}")
            u, v = e
            if u == v:
                raise InvalidGraph(f"edge {idx} is a self-loop at {u}")
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise InvalidGraph(f"edge {idx} = {e} has a vertex outside [1, {self.vertex_count}]")
            key = frozenset(e)
            if key in seen:
                raise InvalidGraph(f"edge {idx} = {e} is a duplicate")
            seen.add(key)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * (self.vertex_count + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg[1:]

    def incident_edges(self, vertex: int) -> list[int]:
        return [j for j, e in enumerate(self.edges, 1) if vertex in e]

    def component_count(self) -> int:
        parent = list(range(self.vertex_count + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(x) for x in range(1, self.vertex_count + 1)})


@dataclass(frozen=True)
class Polyhedron:
    graph: SimpleGraph
    faces: tuple[frozenset[int], ...]
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(frozenset(f) for f in self.faces))
        g = self.graph
        v, e, f = g.vertex_count, g.edge_count, len(self.faces)
        if v - e + f != 2:
            raise InvalidPolyhedron(f"Euler relation fails: {v} - {e} + {f} != 2")
        uses = Counter(j for face in self.faces for j in face)
        for j in range(1, e + 1):
            if uses[j] != 2:
                raise InvalidPolyhedron(f"edge {j} lies on {uses[j]} faces, expected 2")
        if set(uses) - set(range(1, e + 1)):
            raise InvalidPolyhedron("a face references an unknown edge")
        for idx, face in enumerate(self.faces, 1):
            if not _is_single_cycle([g.edges[j - 1] for j in face]):
                raise InvalidPolyhedron(f"face {idx} is not a single cycle")

    @property
    def v(self) -> int:
        return self.graph.vertex_count

    @property
    def e(self) -> int:
        return self.graph.edge_count

    @property
    def f(self) -> int:
        return len(self.faces)

    def face_matrix(self) -> BitMatrix:
        return BitMatrix.from_supports([sorted(face) for face in self.faces], self.e)


def _is_single_cycle(edges: Sequence[tuple[int, int]]) -> bool:
    if len(edges) < 3:
        return False
    deg = Counter(x for e in edges for x in e)
    if any(d != 2 for d in deg.values()):
        return False
    # 2-regular; connected iff walking from one edge returns after all of them
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = edges[0][0]
    prev, cur, steps = None, start, 0
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        steps += 1
        if cur == start:
            break
    return steps == len(edges)


@dataclass(frozen=True)
class CoveringSystem:
    """A multiset of non-empty subsets of the points [n]."""

    n: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "subsets", tuple(frozenset(s) for s in self.subsets))
        for idx, s in enumerate(self.subsets, 1):
            if not s:
                raise LRCError(f"subset {idx} is empty")
            if min(s) < 1 or max(s) > self.n:
                raise LRCError(f"subset {idx} leaves [1, {self.n}]")

    @classmethod
    def from_matrix(cls, h: BitMatrix) -> CoveringSystem:
        return cls(h.cols, tuple(frozenset(s) for s in h.row_supports()))

    @property
    def size(self) -> int:
        return len(self.subsets)

    def matrix(self) -> BitMatrix:
        return BitMatrix.from_supports([sorted(s) for s in self.subsets], self.n)

    def coverage(self) -> list[int]:
        """How many subsets contain each point, indexed 0..n-1 for points 1..n."""
        cnt = Counter(p for s in self.subsets for p in s)
        return [cnt[i] for i in range(1, self.n + 1)]

    def span(self) -> LinearCode:
        return code_from_generator(self.matrix())

    def sorted_blocks(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(s)) for s in self.subsets)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.size}"]
        lines += [" ".join(map(str, sorted(s))) for s in self.subsets]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CoveringSystem:
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise LRCError("empty covering-system file")
        head = lines[0].split()
        if len(head) != 2:
            raise LRCError("first line must be 'n N'")
        n, count = int(head[0]), int(head[1])
        subsets = [frozenset(int(x) for x in ln.split()) for ln in lines[1:]]
        if len(subsets) != count:
            raise LRCError(f"header announces {count} subsets, found {len(subsets)}")
        return cls(n, tuple(subsets))


# -- graphs ------------------------------------------------------------------


def incidence_matrix(g: SimpleGraph) -> BitMatrix:
    """v × e vertex-edge incidence matrix."""
    return BitMatrix.from_supports([g.incident_edges(x) for x in range(1, g.vertex_count + 1)], g.edge_count)


def graph_code(g: SimpleGraph) -> LinearCode:
    """Cycle space of g: the nullspace of its incidence matrix."""
    if g.edge_count == 0:
        raise InvalidGraph("graph has no edges")
    return code_from_parity(incidence_matrix(g))


def complete_graph(q: int) -> SimpleGraph:
    return SimpleGraph(q, tuple(combinations(range(1, q + 1), 2)))


def complete_graph_code(q: int) -> LinearCode:
    """Cycle-space code of K_q; its dual is the vertex-star code with (q-2, 2)-availability."""
    if q < 3:
        raise LRCError(f"complete_graph_code needs q >= 3, got {q}")
    return graph_code(complete_graph(q))


def vertex_star_system(g: SimpleGraph) -> CoveringSystem:
    return CoveringSystem(g.edge_count, tuple(frozenset(g.incident_edges(x)) for x in range(1, g.vertex_count + 1)))


def read_edge_list(text: str) -> SimpleGraph:
    """Parse 'u v' lines (1-based); vertex count is the largest label seen.

    A first line holding a single integer sets the vertex count explicitly.
    """
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    vcount = None
    if lines and len(lines[0].split()) == 1:
        vcount = int(lines.pop(0))
    edges = []
    for ln in lines:
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidGraph(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if vcount is None:
        vcount = max((max(e) for e in edges), default=0)
    return SimpleGraph(vcount, tuple(edges))


# -- polyhedra ---------------------------------------------------------------


def polyhedron_code(p: Polyhedron) -> tuple[LinearCode, BitMatrix]:
    """The [e, f-1] code of p and its f × e face matrix."""
    code = graph_code(p.graph)
    faces = p.face_matrix()
    if code.k != p.f - 1 or faces.rank() != p.f - 1:
        raise InvalidPolyhedron("face matrix rank does not equal f - 1")
    if any(not code.contains(row) for row in faces.rows):
        raise InvalidPolyhedron("a face vector violates a vertex check")
    return code, faces


def dual_polyhedron(p: Polyhedron, name: str | None = None) -> Polyhedron:
    """Geometric dual sharing edge labels: vertex i of the dual is face i of p."""
    face_of_edge: dict[int, list[int]] = {}
    for fi, face in enumerate(p.faces, 1):
        for j in face:
            face_of_edge.setdefault(j, []).append(fi)
    edges = tuple(tuple(face_of_edge[j]) for j in range(1, p.e + 1))
    faces = tuple(frozenset(p.graph.incident_edges(x)) for x in range(1, p.v + 1))
    return Polyhedron(SimpleGraph(p.f, edges), faces, name)


def polyhedron_from_json(obj: dict | str) -> Polyhedron:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        graph = SimpleGraph(int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]))
        faces = tuple(frozenset(f) for f in obj["faces"])
    except (KeyError, TypeError) as exc:
        raise InvalidPolyhedron(f"malformed polyhedron JSON: {exc}") from None
    return Polyhedron(graph, faces, obj.get("name"))


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {
        "vertices": p.v,
        "edges": [list(e) for e in p.graph.edges],
        "faces": [sorted(f) for f in p.faces],
        "name": p.name,
    }


_TETRA_EDGES = ((1, 3), (1, 2), (2, 3), (3, 4), (1, 4), (2, 4))
_TETRA_FACES = ({1, 4, 5}, {2, 5, 6}, {3, 4, 6}, {1, 2, 3})

_CUBE_EDGES = ((1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8),
               (5, 6), (6, 7), (7, 8), (5, 8))
_CUBE_FACES = ({1, 2, 3, 4}, {1, 5, 6, 9}, {2, 6, 7, 10}, {3, 7, 8, 11}, {4, 5, 8, 12}, {9, 10, 11, 12})

_ICOSA_EDGES = ((1, 3), (1, 5), (1, 7), (1, 9), (1, 11), (2, 4), (2, 5), (2, 7), (2, 10), (2, 12),
                (3, 6), (3, 8), (3, 9), (3, 11), (4, 6), (4, 8), (4, 10), (4, 12), (5, 7), (5, 9),
                (5, 10), (6, 8), (6, 9), (6, 10), (7, 11), (7, 12), (8, 11), (8, 12), (9, 10), (11, 12))
_ICOSA_FACES = ({1, 4, 13}, {1, 5, 14}, {2, 3, 19}, {2, 4, 20}, {3, 5, 25}, {6, 9, 17}, {6, 10, 18},
                {7, 8, 19}, {7, 9, 21}, {8, 10, 26}, {11, 12, 22}, {11, 13, 23}, {12, 14, 27},
                {15, 16, 22}, {15, 17, 24}, {16, 18, 28}, {20, 21, 29}, {23, 24, 29}, {25, 26, 30},
                {27, 28, 30})

PLATONIC_NAMES = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")

DUAL_OF = {
    "tetrahedron": "tetrahedron",
    "cube": "octahedron",
    "octahedron": "cube",
    "dodecahedron": "icosahedron",
    "icosahedron": "dodecahedron",
}


def dual_of(name: str) -> str:
    try:
        return DUAL_OF[name]
    except KeyError:
        raise UnknownName(f"unknown Platonic solid {name!r}") from None


def platonic(name: str) -> Polyhedron:
    """One of the five Platonic solids with the labeling documented in this module."""
    if name == "tetrahedron":
        return Polyhedron(SimpleGraph(4, _TETRA_EDGES), tuple(map(frozenset, _TETRA_FACES)), name)
    if name == "cube":
        return Polyhedron(SimpleGraph(8, _CUBE_EDGES), tuple(map(frozenset, _CUBE_FACES)), name)
    if name == "octahedron":
        return dual_polyhedron(platonic("cube"), name)
    if name == "icosahedron":
        return Polyhedron(SimpleGraph(12, _ICOSA_EDGES), tuple(map(frozenset, _ICOSA_FACES)), name)
    if name == "dodecahedron":
        return dual_polyhedron(platonic("icosahedron"), name)
    raise UnknownName(f"unknown Platonic solid {name!r}; choose from {', '.join(PLATONIC_NAMES)}")


# Reference weight enumerators keyed by row label. The two length-30 rows
# carry each other's labels; table1 reports which row each computed
# enumerator matches.
REFERENCE_ENUMERATORS: dict[str, dict[int, int]] = {
    "tetrahedron": {0: 1, 3: 4, 4: 3},
    "cube": {0: 1, 4: 6, 6: 16, 8: 9},
    "octahedron": {0: 1, 3: 8, 4: 15, 5: 24, 6: 32, 7: 24, 8: 15, 9: 8, 12: 1},
    "dodecahedron": {0: 1, 3: 20, 4: 30, 5: 72, 6: 400, 7: 1140, 8: 2715, 9: 6560, 10: 14112,
                     11: 26280, 12: 42740, 13: 59760, 14: 72000, 15: 75912, 16: 70215,
                     17: 57120, 18: 41440, 19: 26820, 20: 15246, 21: 7560, 22: 3120,
                     23: 900, 24: 125},
    "icosahedron": {0: 1, 5: 12, 8: 30, 9: 20, 10: 72, 11: 120, 12: 100, 13: 180, 14: 240,
                    15: 272, 16: 345, 17: 300, 18: 200, 19: 120, 20: 36},
}

REFERENCE_AVAILABILITY = {
    "tetrahedron": (2, 2),
    "cube": (2, 2),
    "octahedron": (3, 2),
    "dodecahedron": (2, 2),
    "icosahedron": (4, 2),
}


# -- Simplex, Hamming, Fano --------------------------------------------------


def simplex_generator(m: int) -> BitMatrix:
    """m × (2^m - 1) matrix whose column j is the binary expansion of j (top row = MSB)."""
    n = (1 << m) - 1
    rows = []
    for bit in range(m - 1, -1, -1):
        rows.append(from_support([j for j in range(1, n + 1) if (j >> bit) & 1], n))
    return BitMatrix(n, tuple(rows))


def simplex_code(m: int) -> LinearCode:
    if m < 2:
        raise LRCError(f"simplex_code needs m >= 2, got {m}")
    return code_from_generator(simplex_generator(m))


def hamming_code(m: int) -> LinearCode:
    if m < 2:
        raise LRCError(f"hamming_code needs m >= 2, got {m}")
    return dual(simplex_code(m))


def projective_lines(m: int) -> CoveringSystem:
    """All weight-3 codewords of the length 2^m - 1 Hamming code: lines of PG(m-1, 2).

    Point j is the nonzero m-bit vector j; {a, b, c} is a line iff a ^ b ^ c = 0.
    """
    if m < 2:
        raise LRCError(f"projective_lines needs m >= 2, got {m}")
    n = (1 << m) - 1
    lines = [frozenset((a, b, a ^ b)) for a, b in combinations(range(1, n + 1), 2) if a < b < (a ^ b)]
    return CoveringSystem(n, tuple(sorted(lines, key=sorted)))


def fano_covering_system() -> CoveringSystem:
    """The seven lines of the Fano plane, points labelled 1..7 as 3-bit vectors."""
    return projective_lines(3)


# -- transpose transform -----------------------------------------------------


def exact_covering_parameters(h: BitMatrix) -> tuple[int, int]:
    """(r, t) for an exact-covering parity-check matrix; raises NotExactCovering otherwise."""
    if h.nrows == 0:
        raise NotExactCovering("matrix has no rows")
    rw = set(h.row_weights())
    cw = set(h.column_weights())
    if len(rw) != 1 or len(cw) != 1:
        raise NotExactCovering(f"row weights {sorted(rw)} / column weights {sorted(cw)} are not uniform")
    r, t = rw.pop() - 1, cw.pop()
    if r < 1 or t < 1:
        raise NotExactCovering("row weight must be at least 2 and column weight at least 1")
    for a, b in combinations(h.rows, 2):
        if (a & b).bit_count() > 1:
            raise NotExactCovering("two rows share more than one point")
    if h.cols * t != h.nrows * (r + 1):
        raise NotExactCovering("row count is not n t / (r + 1)")
    return r, t


def transpose_transform(h: BitMatrix) -> BitMatrix:
    """Hᵀ for an exact-covering H with parameters (r, t).

    The result is an exact-covering parity-check matrix of length n t/(r+1)
    whose code has (t-1, r+1)-availability.
    """
    exact_covering_parameters(h)
    return h.transpose()


def covering_system(subsets: Iterable[Iterable[int]], n: int) -> CoveringSystem:
    return CoveringSystem(n, tuple(frozenset(s) for s in subsets))
