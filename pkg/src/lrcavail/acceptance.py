"""Acceptance checks, one function per criterion, each returning a CriterionResult."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .availability import verify_availability
from .bounds import BoundParams, find_crossing
from .constructions import (
    PLATONIC_NAMES,
    REFERENCE_AVAILABILITY,
    REFERENCE_ENUMERATORS,
    SimpleGraph,
    complete_graph_code,
    dual_of,
    fano_covering_system,
    graph_code,
    hamming_code,
    platonic,
    polyhedron_code,
    projective_lines,
    simplex_code,
    transpose_transform,
)
from .gf2 import (
    BitMatrix,
    LinearCode,
    code_from_parity,
    codes_equal,
    covering_radius,
    dual,
    find_equivalence,
    macwilliams,
    permute_code,
    weight_enumerator,
)
from .search import (
    enumerate_exact_covering_systems,
    oracle_covering_radius,
    oracle_weight_enumerator,
    verify_rate_optimal_unique,
)


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.key}: {self.title} ({self.seconds:.2f}s) {self.detail}"


def _timed(key: str, title: str, limit: float | None, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail += f"; over time limit {limit:g}s"
    return CriterionResult(key, title, ok, detail, dt)


_DIMS = {"tetrahedron": (6, 3), "cube": (12, 5), "octahedron": (12, 7),
         "dodecahedron": (30, 11), "icosahedron": (30, 19)}


def _code(name: str) -> LinearCode:
    return polyhedron_code(platonic(name))[0]


def criterion_1() -> CriterionResult:
    def run():
        got = {nm: (c.n, c.k) for nm in PLATONIC_NAMES for c in [_code(nm)]}
        bad = [nm for nm in PLATONIC_NAMES if got[nm] != _DIMS[nm]]
        return not bad, ", ".join(f"{nm} [{n},{k}]" for nm, (n, k) in got.items())
    return _timed("1", "Platonic code dimensions", 1.0, run)


def matching_rows(terms: dict[int, int]) -> list[str]:
    return [row for row, pub in REFERENCE_ENUMERATORS.items() if pub == terms]


def criterion_2() -> CriterionResult:
    def run():
        ok = True
        parts = []
        for nm in PLATONIC_NAMES:
            c = _code(nm)
            t0 = time.perf_counter()
            w = weight_enumerator(c)
            dt = time.perf_counter() - t0
            rows = matching_rows(w.terms())
            if nm in ("tetrahedron", "cube", "octahedron"):
                good = rows == [nm]
            else:
                good = w.total == 1 << c.k and len(rows) == 1 and dt < 30
            ok &= good
            parts.append(f"{nm}: matches reference row {rows[0] if rows else 'none'}")
        return ok, "; ".join(parts)
    return _timed("2", "weight enumerators against the reference table", None, run)


def criterion_3() -> CriterionResult:
    def run():
        ok = True
        parts = []
        for nm in PLATONIC_NAMES:
            r, t = REFERENCE_AVAILABILITY[nm]
            good = verify_availability(_code(nm), r, t).ok
            ok &= good
            parts.append(f"{nm} ({r},{t}) {'certified' if good else 'FAILED'}")
        simplex_ok = verify_availability(simplex_code(3), 2, 3).ok
        octa_22 = verify_availability(_code("octahedron"), 2, 2).ok
        ok &= simplex_ok and not octa_22
        parts.append(f"simplex [7,3] (2,3) {'certified' if simplex_ok else 'FAILED'}")
        parts.append(f"octahedron (2,2) {'rejected' if not octa_22 else 'unexpectedly certified'}")
        return ok, "; ".join(parts)
    return _timed("3", "availability certificates", 10.0, run)


def criterion_4() -> CriterionResult:
    def run():
        ok = True
        parts = []
        for nm in ("tetrahedron", "cube", "dodecahedron"):
            other = dual_of(nm)
            c, c_dual_solid = _code(nm), _code(other)
            w_dual = weight_enumerator(dual(c))
            w_other = weight_enumerator(c_dual_solid)
            mw = macwilliams(weight_enumerator(c), c.k)
            good = w_dual == w_other and mw == w_other
            ok &= good
            parts.append(f"{nm}/{other} {'agree' if good else 'DIFFER'}")
        tet = _code("tetrahedron")
        perm = find_equivalence(tet, dual(tet))
        self_dual = perm is not None and codes_equal(permute_code(tet, perm), dual(tet))
        ok &= self_dual
        parts.append(f"tetrahedron to its dual via {perm}")
        return ok, "; ".join(parts)
    return _timed("4", "duality of polyhedral codes", None, run)


def _uniqueness(key: str, n: int, r: int, t: int, rate: Fraction, name: str,
                lrc: LinearCode, limit: float) -> CriterionResult:
    def run():
        rep = verify_rate_optimal_unique(n, r, t, rate, name)
        codes_ok = all(
            o.isomorphism is not None and codes_equal(dual(permute_code(o.system.span(), o.isomorphism)), lrc)
            for o in rep.optima
        )
        ok = rep.exhausted and rep.expectations_met and codes_ok
        return ok, (f"{rep.systems_enumerated} systems, max dual rate {rep.max_dual_rate}, "
                    f"{rep.optima_count} maximizer(s) all {name}: {rep.expectations_met}, codes equal: {codes_ok}")
    return _timed(key, f"uniqueness at (n={n}, r={r}, t={t})", limit, run)


def criterion_5() -> CriterionResult:
    return _uniqueness("5", 6, 2, 2, Fraction(1, 2), "complete:4", complete_graph_code(4), 300.0)


def criterion_6() -> CriterionResult:
    return _uniqueness("6", 7, 2, 3, Fraction(3, 7), "fano", simplex_code(3), 600.0)


def criterion_7() -> CriterionResult:
    def run():
        ham = covering_radius(hamming_code(3)).covering_radius
        sim = covering_radius(simplex_code(3)).covering_radius
        ok = (ham, sim) == (1, 3)
        ok &= oracle_covering_radius(hamming_code(3)) == 1 and oracle_covering_radius(simplex_code(3)) == 3
        checked = 0
        for n in range(3, 10):
            # the t triples through a point need 2t distinct partners
            for t in range(1, (n - 1) // 2 + 1):
                if (n * t) % 3:
                    continue
                for s in enumerate_exact_covering_systems(n, 2, t):
                    cr = covering_radius(s.span()).covering_radius
                    ok &= cr * (t + 1) <= n
                    checked += 1
        return ok, f"Hamming {ham}, Simplex {sim}, coset bound checked on {checked} systems"
    return _timed("7", "covering radius", None, run)


def criterion_8a() -> CriterionResult:
    def run():
        x = find_crossing("thm3_entropy", "tbf1", "t", range(2, 101), BoundParams(r=2))
        return x == 74, f"crossing at t = {x}, expected 74"
    return _timed("8a", "entropy bound crosses the product bound", 1.0, run)


def criterion_8b() -> CriterionResult:
    def run():
        x = find_crossing("cor3", "bk1", "r", range(3, 91), BoundParams(t=3))
        return x == 72, f"crossing at r = {x}, expected 72"
    return _timed("8b", "t = 3 entropy bound crosses the BK bound", 1.0, run)


def criterion_9() -> CriterionResult:
    def run():
        fano_code = code_from_parity(transpose_transform(fano_covering_system().matrix()))
        fano_ok = verify_availability(fano_code, 2, 3).ok
        big = code_from_parity(transpose_transform(projective_lines(4).matrix()))
        big_ok = big.n == 35 and verify_availability(big, 6, 3).ok
        return fano_ok and big_ok, (f"Fano transpose [{fano_code.n},{fano_code.k}] (2,3) {fano_ok}; "
                                    f"PG(3,2) transpose [{big.n},{big.k}] (6,3) {big_ok}")
    return _timed("9", "transpose transform", 30.0, run)


def random_code(rng: random.Random, max_n: int = 14) -> LinearCode:
    n = rng.randint(1, max_n)
    rows = [rng.getrandbits(n) for _ in range(rng.randint(1, n))]
    h = BitMatrix(n, tuple(rows))
    return code_from_parity(h)


def random_graph(rng: random.Random, max_v: int = 9) -> SimpleGraph:
    """A random simple graph with at least one edge; isolated vertices allowed."""
    while True:
        v = rng.randint(2, max_v)
        p = rng.random()
        edges = tuple((a, b) for a in range(1, v + 1) for b in range(a + 1, v + 1) if rng.random() < p)
        if edges:
            return SimpleGraph(v, edges)


def code_property_failures(c: LinearCode) -> list[str]:
    bad = []
    w = weight_enumerator(c)
    d = dual(c)
    if macwilliams(w, c.k) != weight_enumerator(d):
        bad.append("MacWilliams")
    if not codes_equal(dual(d), c):
        bad.append("dual of dual")
    if c.k + d.k != c.n:
        bad.append("dimension sum")
    if oracle_weight_enumerator(c) != w:
        bad.append("enumerator oracle")
    if oracle_covering_radius(c) != covering_radius(c).covering_radius:
        bad.append("covering radius oracle")
    return bad


def criterion_10(seed: int = 20240610) -> CriterionResult:
    def run():
        rng = random.Random(seed)
        failures = 0
        for _ in range(200):
            failures += bool(code_property_failures(random_code(rng)))
        for _ in range(100):
            g = random_graph(rng)
            failures += graph_code(g).k != g.edge_count - g.vertex_count + g.component_count()
        return failures == 0, f"200 codes and 100 graphs, {failures} failure(s)"
    return _timed("10", "property suites", None, run)


CRITERIA: dict[str, Callable[[], CriterionResult]] = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "8a": criterion_8a,
    "8b": criterion_8b,
    "9": criterion_9,
    "10": criterion_10,
}


def run_all(keys=None) -> list[CriterionResult]:
    return [CRITERIA[k]() for k in (keys or CRITERIA)]
