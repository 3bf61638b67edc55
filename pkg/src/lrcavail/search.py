"""Exhaustive search over exact-covering systems, plus brute-force code oracles.

Systems are generated up to relabeling of points by orderly generation: a
system is a sorted list of blocks, its canonical form is the
lexicographically smallest sorted list over all relabelings, and blocks are
appended in increasing order with every non-canonical prefix discarded.
Removing the largest block of a canonical list leaves a canonical list, so
each isomorphism class is produced exactly once.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .constructions import (
    CoveringSystem,
    complete_graph,
    fano_covering_system,
    projective_lines,
    vertex_star_system,
)
from .errors import GuardExceeded, InvalidParameter, LRCError, UnknownName, check_guard, guard_limit
from .gf2 import LinearCode, WeightEnumerator

SEARCH_GUARD_T2 = 10
SEARCH_GUARD_T3 = 9
ORACLE_GUARD = 20

Block = tuple[int, ...]


# -- canonical form ----------------------------------------------------------


class _Smaller(Exception):
    pass


def _canon_search(blocks: Sequence[Block], n: int, target: Sequence[Block] | None = None):
    """Lex-min relabeled block list over all point relabelings.

    Points are 0-based. Labels are handed out in increasing order; the next
    label always goes to an unlabeled point of the first block (in partially
    relabeled sort order) that still has unlabeled points, since any other
    choice makes that block, and hence the list, larger. Branches whose
    fully-determined prefix already exceeds the best list are cut.

    With ``target`` given, raises ``_Smaller`` as soon as a relabeling below
    target is certain.
    """
    INF = n
    sets = [frozenset(b) for b in blocks]
    best: list = [list(target) if target is not None else None, None]
    label: dict[int, int] = {}

    def keyed():
        keys = []
        for s in sets:
            known = sorted(label[p] for p in s if p in label)
            keys.append((tuple(known) + (INF,) * (len(s) - len(known)), s))
        keys.sort(key=lambda ks: ks[0])
        return keys

    def go():
        keys = keyed()
        det = []
        first_open = None
        for k, s in keys:
            if k and k[-1] == INF:
                first_open = k
                break
            det.append(k)
        cur = best[0]
        if cur is not None:
            for a, b in zip(det, cur):
                if a < b:
                    if target is not None:
                        raise _Smaller
                    break
                if a > b:
                    return
        if first_open is None:
            if cur is None or det < cur:
                if target is not None and cur is not None:
                    raise _Smaller
                best[0] = det
                best[1] = dict(label)
            elif target is None and best[1] is None:
                best[1] = dict(label)
            return
        cands = sorted({p for k, s in keys if k == first_open for p in s if p not in label})
        nxt = len(label)
        for p in cands:
            label[p] = nxt
            go()
            del label[p]

    go()
    return best


def canonical_form(blocks: Sequence[Block], n: int) -> tuple[tuple[Block, ...], tuple[int, ...]]:
    """(canonical sorted block list, relabeling) for 0-based blocks on n points.

    ``relabeling[p]`` is the canonical label of original point p; points in no
    block take the remaining labels in increasing order.
    """
    form, lab = _canon_search(blocks, n)
    lab = dict(lab or {})
    rest = [p for p in range(n) if p not in lab]
    for p in rest:
        lab[p] = len(lab)
    return tuple(form or ()), tuple(lab[p] for p in range(n))


def is_canonical(blocks: Sequence[Block], n: int) -> bool:
    """True when the sorted list ``blocks`` equals its own canonical form."""
    blocks = list(blocks)
    if blocks != sorted(blocks):
        return False
    try:
        _canon_search(blocks, n, target=blocks)
    except _Smaller:
        return False
    return True


def system_blocks(s: CoveringSystem) -> list[Block]:
    return sorted(tuple(sorted(p - 1 for p in sub)) for sub in s.subsets)


def system_from_blocks(blocks: Sequence[Block], n: int) -> CoveringSystem:
    return CoveringSystem(n, tuple(frozenset(p + 1 for p in b) for b in blocks))


def canonical_system(s: CoveringSystem) -> tuple[CoveringSystem, tuple[int, ...]]:
    """Canonical form of s and the 1-based point map sending s onto it."""
    form, lab = canonical_form(system_blocks(s), s.n)
    return system_from_blocks(form, s.n), tuple(x + 1 for x in lab)


def isomorphism(a: CoveringSystem, b: CoveringSystem) -> tuple[int, ...] | None:
    """A 1-based point map carrying a onto b, or None."""
    if a.n != b.n or a.size != b.size:
        return None
    ca, la = canonical_system(a)
    cb, lb = canonical_system(b)
    if ca.sorted_blocks() != cb.sorted_blocks():
        return None
    inv_b = {lab: p for p, lab in enumerate(lb, 1)}
    return tuple(inv_b[la[p - 1]] for p in range(1, a.n + 1))


# -- orderly generation ------------------------------------------------------


def _search_guard(t: int) -> int:
    return SEARCH_GUARD_T2 if t <= 2 else SEARCH_GUARD_T3


def _block_count(n: int, r: int, t: int) -> int:
    if r < 1 or t < 1 or n < 1:
        raise InvalidParameter("n, r, t must be positive")
    if (n * t) % (r + 1):
        raise InvalidParameter(f"n t / (r + 1) = {n * t}/{r + 1} is not an integer")
    return n * t // (r + 1)


class _Generator:
    def __init__(self, n: int, r: int, t: int):
        self.n, self.r, self.t = n, r, t
        self.N = _block_count(n, r, t)
        self.cands: list[Block] = list(combinations(range(n), r + 1)) if r + 1 <= n else []
        self.blocks: list[Block] = []
        self.cover = [0] * n
        self.pairs: set[tuple[int, int]] = set()

    def _fits(self, b: Block) -> bool:
        if any(self.cover[p] >= self.t for p in b):
            return False
        return not any(pq in self.pairs for pq in combinations(b, 2))

    def _push(self, b: Block) -> None:
        self.blocks.append(b)
        for p in b:
            self.cover[p] += 1
        self.pairs.update(combinations(b, 2))

    def _pop(self) -> None:
        b = self.blocks.pop()
        for p in b:
            self.cover[p] -= 1
        self.pairs.difference_update(combinations(b, 2))

    def children(self, start: int) -> Iterator[int]:
        """Candidate indices >= start that extend the current prefix canonically."""
        for idx in range(start, len(self.cands)):
            b = self.cands[idx]
            # points below b[0] can gain no more blocks
            if any(self.cover[p] < self.t for p in range(b[0])):
                return
            if not self._fits(b):
                continue
            self._push(b)
            ok = is_canonical(self.blocks, self.n)
            self._pop()
            if ok:
                yield idx

    def run(self, prefix: Sequence[int] = (), depth: int | None = None) -> Iterator[tuple[int, ...]]:
        """Yield candidate-index tuples of complete systems (or of prefixes at ``depth``)."""
        for idx in prefix:
            self._push(self.cands[idx])
        path = list(prefix)

        def go(start: int):
            if len(self.blocks) == self.N or (depth is not None and len(self.blocks) == depth):
                if len(self.blocks) < self.N or all(c == self.t for c in self.cover):
                    yield tuple(path)
                return
            for idx in self.children(start):
                self._push(self.cands[idx])
                path.append(idx)
                yield from go(idx + 1)
                path.pop()
                self._pop()

        yield from go(prefix[-1] + 1 if prefix else 0)
        for _ in prefix:
            self._pop()


def _complete_prefix(args) -> list[tuple[int, ...]]:
    n, r, t, prefix = args
    return list(_Generator(n, r, t).run(prefix))


def enumerate_exact_covering_systems(n: int, r: int, t: int, guard: int | None = None,
                                     jobs: int = 1, split_depth: int = 2) -> Iterator[CoveringSystem]:
    """Every exact-covering (r, t) system on [n], once per isomorphism class, in canonical form."""
    N = _block_count(n, r, t)
    limit = guard if guard is not None else guard_limit(_search_guard(t))
    if n > limit:
        raise GuardExceeded("n", n, limit)
    gen = _Generator(n, r, t)
    if N == 0:
        return
    if jobs > 1 and N > split_depth:
        prefixes = list(gen.run(depth=split_depth))
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = ex.map(_complete_prefix, [(n, r, t, p) for p in prefixes])
            for chunk in chunks:
                for sol in chunk:
                    yield system_from_blocks([gen.cands[i] for i in sol], n)
        return
    for sol in gen.run():
        yield system_from_blocks([gen.cands[i] for i in sol], n)


# -- rate optimality ---------------------------------------------------------


def named_construction(spec: str) -> CoveringSystem:
    """'complete:q', 'fano' or 'lines:m', optionally '*c' for c disjoint copies."""
    base, _, copies = spec.partition("*")
    count = int(copies) if copies else 1
    kind, _, arg = base.partition(":")
    if kind == "complete":
        one = vertex_star_system(complete_graph(int(arg)))
    elif kind == "fano" and not arg:
        one = fano_covering_system()
    elif kind == "lines":
        one = projective_lines(int(arg))
    else:
        raise UnknownName(f"unknown construction {spec!r}")
    return disjoint_union([one] * count)


def disjoint_union(systems: Sequence[CoveringSystem]) -> CoveringSystem:
    subsets = []
    offset = 0
    for s in systems:
        subsets.extend(frozenset(p + offset for p in sub) for sub in s.subsets)
        offset += s.n
    return CoveringSystem(offset, tuple(subsets))


@dataclass(frozen=True)
class Optimum:
    system: CoveringSystem
    label: str
    isomorphism: tuple[int, ...] | None = None


@dataclass(frozen=True)
class SearchReport:
    n: int
    r: int
    t: int
    systems_enumerated: int
    max_dual_rate: Fraction | None
    optima: tuple[Optimum, ...]
    exhausted: bool
    expected_rate: Fraction | None = None
    expected: str | None = None
    rank_by_system: tuple[int, ...] = field(default=(), repr=False)

    @property
    def optima_count(self) -> int:
        return len(self.optima)

    @property
    def expectations_met(self) -> bool:
        if self.expected_rate is not None and self.max_dual_rate != self.expected_rate:
            return False
        if self.expected is not None:
            if not self.optima or any(o.label != self.expected for o in self.optima):
                return False
        return True

    def to_json(self) -> dict:
        frac = lambda f: None if f is None else f"{f.numerator}/{f.denominator}"
        out = {
            "params": {"n": self.n, "r": self.r, "t": self.t},
            "systems_enumerated": self.systems_enumerated,
            "max_dual_rate": frac(self.max_dual_rate),
            "optima_count": self.optima_count,
            "optima": [
                {"system": [sorted(s) for s in o.system.subsets], "isomorphic_to": o.label}
                for o in self.optima
            ],
            "exhausted": self.exhausted,
        }
        if self.expected_rate is not None or self.expected is not None:
            out["expectations"] = {
                "rate": frac(self.expected_rate),
                "construction": self.expected,
                "met": self.expectations_met,
            }
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def verify_rate_optimal_unique(n: int, r: int, t: int, expected_rate: Fraction | None = None,
                               expected: str | None = None, guard: int | None = None,
                               jobs: int = 1) -> SearchReport:
    """Maximum dual rate 1 - dim(span)/n over all exact-covering systems, with maximizers classified."""
    target = None
    if expected is not None:
        target = named_construction(expected)
        if target.n != n:
            raise InvalidParameter(f"construction {expected!r} has length {target.n}, not {n}")
    systems = list(enumerate_exact_covering_systems(n, r, t, guard=guard, jobs=jobs))
    ranks = tuple(s.matrix().rank() for s in systems)
    if not systems:
        return SearchReport(n, r, t, 0, None, (), True, expected_rate, expected, ranks)
    best = min(ranks)
    optima = []
    for s, rk in zip(systems, ranks):
        if rk != best:
            continue
        iso = isomorphism(s, target) if target is not None else None
        optima.append(Optimum(s, expected if iso is not None else "unclassified", iso))
    return SearchReport(n, r, t, len(systems), 1 - Fraction(best, n), tuple(optima), True,
                        expected_rate, expected, ranks)


# -- brute-force oracles -----------------------------------------------------


def _all_vectors(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def _parity_bits(x: np.ndarray, row: int) -> np.ndarray:
    return (np.bitwise_count(x & np.uint64(row)) & 1).astype(np.uint8)


def oracle_weight_enumerator(c: LinearCode) -> WeightEnumerator:
    """Count weights over all 2^n vectors that pass every parity check."""
    check_guard("n", c.n, ORACLE_GUARD)
    x = _all_vectors(c.n)
    ok = np.ones(x.shape, dtype=bool)
    for h in c.parity.rows:
        ok &= _parity_bits(x, h) == 0
    counts = np.bincount(np.bitwise_count(x[ok]).astype(np.int64), minlength=c.n + 1)
    return WeightEnumerator(c.n, tuple(int(a) for a in counts))


def oracle_covering_radius(c: LinearCode) -> int:
    """max over all 2^n vectors of the distance to the nearest codeword."""
    check_guard("n", c.n, ORACLE_GUARD)
    x = _all_vectors(c.n)
    synd = np.zeros(x.shape, dtype=np.int64)
    for i, h in enumerate(c.parity.rows):
        synd |= _parity_bits(x, h).astype(np.int64) << i
    wt = np.bitwise_count(x).astype(np.int64)
    nearest = np.full(1 << c.redundancy, c.n + 1, dtype=np.int64)
    np.minimum.at(nearest, synd, wt)
    if (nearest > c.n).any():
        raise LRCError("syndrome map is not surjective")
    return int(nearest.max())
