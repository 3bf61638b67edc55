"""(r, t)-availability certificates, exact-covering validation, intersection graphs.

A bit i of a code C has (r, t)-availability exactly when the dual code holds
t codewords of weight at most r+1 that all contain i and pairwise meet only
in i. :func:`find_repair_groups` searches for such a family.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .constructions import CoveringSystem
from .errors import GuardExceeded, LRCError, PreconditionViolated, check_guard, guard_limit
from .gf2 import BitVector, LinearCode, dot, support

DUAL_ENUMERATION_GUARD = 20
WEIGHT_SEARCH_GUARD = 6
MAX_DISJOINT_GUARD = 64


@dataclass(frozen=True)
class RepairGroup:
    bit: int
    members: frozenset[int]

    def __post_init__(self):
        if self.bit in self.members:
            raise LRCError("a repair group cannot contain its own bit")

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class AvailabilityCertificate:
    bit: int
    r: int
    groups: tuple[RepairGroup, ...]
    witnesses: tuple[BitVector, ...]

    @property
    def t(self) -> int:
        return len(self.groups)

    @property
    def locality(self) -> int:
        """Size of the largest repair group."""
        return max((g.size for g in self.groups), default=0)

    def validate(self, code: LinearCode) -> bool:
        """Re-check every claim against the code, independent of the search."""
        i, n = self.bit, code.n
        ibit = 1 << (n - i)
        if len(self.witnesses) != len(self.groups):
            return False
        for g, w in zip(self.groups, self.witnesses):
            if w.length != n or not w.bits & ibit or w.weight > self.r + 1:
                return False
            if any(dot(row, w.bits) for row in code.generator.rows):
                return False
            if set(w.support()) - {i} != set(g.members):
                return False
        for a, b in combinations(self.witnesses, 2):
            if a.bits & b.bits != ibit:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "bit": self.bit,
            "groups": [sorted(g.members) for g in self.groups],
            "witnesses": [str(w) for w in self.witnesses],
        }


def _dual_words_by_enumeration(code: LinearCode, max_weight: int) -> list[int]:
    rows = code.parity.rows
    out = []
    c = 0
    for idx in range(1, 1 << len(rows)):
        c ^= rows[(idx & -idx).bit_length() - 1]
        if c.bit_count() <= max_weight:
            out.append(c)
    return out


def _dual_words_by_support(code: LinearCode, max_weight: int) -> list[int]:
    n = code.n
    # column syndromes against the generator: x is a dual word iff they xor to 0
    cols = [code.generator.syndrome(1 << (n - j)) for j in range(1, n + 1)]
    out = []
    for w in range(1, max_weight + 1):
        for supp in combinations(range(n), w):
            s = 0
            for j in supp:
                s ^= cols[j]
            if not s:
                v = 0
                for j in supp:
                    v |= 1 << (n - 1 - j)
                out.append(v)
    return out


@lru_cache(maxsize=64)
def low_weight_dual_words(code: LinearCode, max_weight: int) -> tuple[int, ...]:
    """All nonzero dual codewords of weight <= max_weight.

    Uses whichever of full dual enumeration or support enumeration is cheaper
    among those within their guards.
    """
    n, m = code.n, code.n - code.k
    options = []
    if m <= guard_limit(DUAL_ENUMERATION_GUARD):
        options.append((1 << m, _dual_words_by_enumeration))
    if max_weight <= guard_limit(WEIGHT_SEARCH_GUARD):
        options.append((sum(comb(n, w) for w in range(1, max_weight + 1)), _dual_words_by_support))
    if not options:
        raise GuardExceeded("n-k", m, guard_limit(DUAL_ENUMERATION_GUARD))
    _, method = min(options, key=lambda o: o[0])
    return tuple(sorted(method(code, max_weight)))


def _check_args(code: LinearCode, r: int, t: int | None = None, i: int | None = None) -> None:
    if i is not None and not 1 <= i <= code.n:
        raise LRCError(f"bit {i} outside [1, {code.n}]")
    if r < 1:
        raise LRCError(f"r must be at least 1, got {r}")
    if r >= code.n:
        raise LRCError(f"r = {r} must be smaller than n = {code.n}")
    if t is not None and t < 1:
        raise LRCError(f"t must be at least 1, got {t}")


def _candidates(code: LinearCode, i: int, r: int) -> list[tuple[tuple[int, ...], int, int]]:
    """(sorted members, member mask, witness) for every repair word through bit i, lexicographic."""
    n = code.n
    ibit = 1 << (n - i)
    out = []
    for w in low_weight_dual_words(code, r + 1):
        if w & ibit:
            members = w ^ ibit
            out.append((tuple(support(members, n)), members, w))
    out.sort()
    return out


def _pack(cands, t: int) -> list[int] | None:
    """First t pairwise-disjoint member sets in lexicographic backtracking order."""
    chosen: list[int] = []

    def go(start: int, used: int) -> bool:
        if len(chosen) == t:
            return True
        for idx in range(start, len(cands)):
            if len(cands) - idx < t - len(chosen):
                return False
            mask = cands[idx][1]
            if mask & used:
                continue
            chosen.append(idx)
            if go(idx + 1, used | mask):
                return True
            chosen.pop()
        return False

    return chosen if go(0, 0) else None


def find_repair_groups(code: LinearCode, i: int, r: int, t: int) -> AvailabilityCertificate | None:
    """A certificate of (r, t)-availability for bit i, or None if none exists."""
    _check_args(code, r, t, i)
    cands = _candidates(code, i, r)
    chosen = _pack(cands, t)
    if chosen is None:
        return None
    groups = tuple(RepairGroup(i, frozenset(cands[c][0])) for c in chosen)
    witnesses = tuple(BitVector(code.n, cands[c][2]) for c in chosen)
    return AvailabilityCertificate(i, r, groups, witnesses)


@dataclass(frozen=True)
class AvailabilityReport:
    r: int
    t: int
    certificates: tuple[AvailabilityCertificate | None, ...]

    @property
    def per_bit(self) -> tuple[bool, ...]:
        return tuple(c is not None for c in self.certificates)

    @property
    def ok(self) -> bool:
        return all(self.per_bit)

    @property
    def failing_bits(self) -> list[int]:
        return [i for i, c in enumerate(self.certificates, 1) if c is None]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "t": self.t,
            "available": self.ok,
            "failing_bits": self.failing_bits,
            "bits": [
                {"bit": i, "certified": c is not None, **({"certificate": c.to_json()} if c else {})}
                for i, c in enumerate(self.certificates, 1)
            ],
        }


def _bit_task(args):
    code, i, r, t = args
    return find_repair_groups(code, i, r, t)


def verify_availability(code: LinearCode, r: int, t: int, jobs: int = 1) -> AvailabilityReport:
    _check_args(code, r, t)
    tasks = [(code, i, r, t) for i in range(1, code.n + 1)]
    if jobs > 1 and code.n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            certs = list(ex.map(_bit_task, tasks))
    else:
        certs = [_bit_task(a) for a in tasks]
    return AvailabilityReport(r, t, tuple(certs))


def max_availability(code: LinearCode, i: int, r: int) -> int:
    """Largest t for which bit i has (r, t)-availability (0 if no repair word exists)."""
    _check_args(code, r, None, i)
    cands = _candidates(code, i, r)
    lo, hi = 0, min(len(cands), code.n)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _pack(cands, mid) is not None:
            lo = mid
        else:
            hi = mid - 1
    return lo


def availability_profile(code: LinearCode, r: int) -> list[int]:
    _check_args(code, r)
    return [max_availability(code, i, r) for i in range(1, code.n + 1)]


# -- exact covering ----------------------------------------------------------


@dataclass(frozen=True)
class ExactCoveringReport:
    valid: bool
    n: int
    N: int
    r: int
    t: int
    violations: tuple[tuple[str, tuple[int, ...]], ...]

    def to_json(self) -> dict:
        return {
            "valid": self.valid, "n": self.n, "N": self.N, "r": self.r, "t": self.t,
            "violations": [{"kind": k, "indices": list(ix)} for k, ix in self.violations],
        }


def check_exact_covering(s: CoveringSystem, r: int, t: int) -> ExactCoveringReport:
    """Row weight r+1, column weight t, N = nt/(r+1), pairwise intersections <= 1.

    Indices in violations are 1-based: subset numbers, points, or subset pairs.
    """
    viol: list[tuple[str, tuple[int, ...]]] = []
    n, N = s.n, s.size
    if N * (r + 1) != n * t:
        viol.append(("count", (N,)))
    for idx, sub in enumerate(s.subsets, 1):
        if len(sub) != r + 1:
            viol.append(("row-weight", (idx,)))
    for p, c in enumerate(s.coverage(), 1):
        if c != t:
            viol.append(("column-weight", (p,)))
    for (a, sa), (b, sb) in combinations(enumerate(s.subsets, 1), 2):
        if len(sa & sb) > 1:
            viol.append(("pair-intersection", (a, b)))
    return ExactCoveringReport(not viol, n, N, r, t, tuple(viol))


# -- intersection graphs -----------------------------------------------------


@dataclass(frozen=True)
class IntersectionGraph:
    """One vertex per subset (1-based); an edge joins intersecting subsets."""

    system: CoveringSystem
    adjacency: tuple[frozenset[int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v - 1]

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None


def intersection_graph(s: CoveringSystem) -> IntersectionGraph:
    N = s.size
    adj: list[set[int]] = [set() for _ in range(N)]
    for a, b in combinations(range(N), 2):
        if s.subsets[a] & s.subsets[b]:
            adj[a].add(b + 1)
            adj[b].add(a + 1)
    seen = [False] * (N + 1)
    comps = []
    for v in range(1, N + 1):
        if seen[v]:
            continue
        stack, comp = [v], []
        seen[v] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x - 1]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return IntersectionGraph(s, tuple(frozenset(a) for a in adj), tuple(comps))


@dataclass(frozen=True)
class ComponentRankBound:
    bound: int
    rank: int
    components: int


def component_rank_bound(s: CoveringSystem) -> ComponentRankBound:
    """Lower bound N - (#components) on dim(span) for a system covering every point twice.

    Any vanishing sum of subsets must contain both subsets through each of its
    points, so it is a union of components; dropping one subset per component
    leaves an independent family.
    """
    bad = [p for p, c in enumerate(s.coverage(), 1) if c != 2]
    if bad:
        raise PreconditionViolated(f"points not covered exactly twice: {bad}")
    g = intersection_graph(s)
    return ComponentRankBound(s.size - len(g.components), s.matrix().rank(), len(g.components))


def max_disjoint_subsets(s: CoveringSystem, guard: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Maximum number of pairwise-disjoint subsets, with a witness (1-based subset indices).

    Exact maximum independent set in the intersection graph by branch and bound.
    """
    N = s.size
    check_guard("subsets", N, MAX_DISJOINT_GUARD, guard)
    g = intersection_graph(s)
    nbr = [0] * N
    for v in range(N):
        for u in g.adjacency[v]:
            nbr[v] |= 1 << (u - 1)
    best: list[int] = [0, 0]  # size, mask

    def go(cand: int, size: int, chosen: int) -> None:
        if size + cand.bit_count() <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        # vertices with no candidate neighbours can always be taken
        free = 0
        x = cand
        while x:
            low = x & -x
            v = low.bit_length() - 1
            if not nbr[v] & cand:
                free |= low
            x ^= low
        if free:
            go(cand & ~free, size + free.bit_count(), chosen | free)
            return
        # branch on the candidate of largest remaining degree
        v = max((u for u in range(N) if cand >> u & 1), key=lambda u: (nbr[u] & cand).bit_count())
        vb = 1 << v
        go(cand & ~vb & ~nbr[v], size + 1, chosen | vb)
        go(cand & ~vb, size, chosen)

    go((1 << N) - 1, 0, 0)
    witness = tuple(v + 1 for v in range(N) if best[1] >> v & 1)
    return best[0], witness


def rosenfeld_lower_bound(g: IntersectionGraph) -> int | None:
    """ceil(N / (Δ + 1)) when the graph is Δ-regular, else None."""
    d = g.regular_degree()
    if d is None:
        return None
    return -(-g.vertex_count // (d + 1))

