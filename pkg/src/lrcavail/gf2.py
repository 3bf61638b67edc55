"""Bit-packed GF(2) linear algebra and binary linear codes.

Vectors are Python ints. Coordinate ``i`` (1-based) of a length-``n`` vector
is stored at bit position ``n - i``, so coordinate 1 is the most significant
bit and ``int(bitstring, 2)`` parses the external representation directly.
Matrices are tuples of such row ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InconsistentInput, LengthMismatch, LRCError, check_guard

ENUMERATION_GUARD = 28
SYNDROME_GUARD = 28
EQUIVALENCE_SEARCH_MAX_N = 12


# -- vectors -----------------------------------------------------------------


def unit(n: int, i: int) -> int:
    """Vector of length n with a single one at 1-based coordinate i."""
    return 1 << (n - i)


def support(v: int, n: int) -> list[int]:
    return [i for i in range(1, n + 1) if (v >> (n - i)) & 1]


def from_support(points: Iterable[int], n: int) -> int:
    v = 0
    for i in points:
        if not 1 <= i <= n:
            raise LRCError(f"point {i} outside [1, {n}]")
        v |= 1 << (n - i)
    return v


def to_bitstring(v: int, n: int) -> str:
    return format(v, f"0{n}b") if n else ""


def parse_bitstring(s: str, n: int | None = None) -> int:
    s = s.strip()
    if any(ch not in "01" for ch in s):
        raise LRCError(f"not a bitstring: {s!r}")
    if n is not None and len(s) != n:
        raise LengthMismatch(f"bitstring {s!r} has length {len(s)}, expected {n}")
    return int(s, 2) if s else 0


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise LRCError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_string(cls, s: str) -> BitVector:
        return cls(len(s.strip()), parse_bitstring(s))

    @classmethod
    def from_support(cls, points: Iterable[int], n: int) -> BitVector:
        return cls(n, from_support(points, n))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return support(self.bits, self.length)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(i)
        return (self.bits >> (self.length - i)) & 1

    def __xor__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise LengthMismatch("vector lengths differ")
        return BitVector(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return to_bitstring(self.bits, self.length)


# -- matrices ----------------------------------------------------------------


def _rref(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot coordinates 0-based)."""
    work = [r for r in rows if r]
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        bit = 1 << (ncols - 1 - c)
        for p in range(top, len(work)):
            if work[p] & bit:
                break
        else:
            continue
        work[top], work[p] = work[p], work[top]
        piv = work[top]
        for q in range(len(work)):
            if q != top and work[q] & bit:
                work[q] ^= piv
        pivots.append(c)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


@dataclass(frozen=True)
class BitMatrix:
    cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise LRCError(f"row does not fit in {self.cols} columns")

    @classmethod
    def from_strings(cls, rows: Sequence[str], cols: int | None = None) -> BitMatrix:
        if cols is None:
            if not rows:
                raise LRCError("cannot infer column count of an empty matrix")
            cols = len(rows[0].strip())
        return cls(cols, tuple(parse_bitstring(s, cols) for s in rows))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> BitMatrix:
        return cls(cols, tuple(from_support(s, cols) for s in supports))

    @classmethod
    def from_array(cls, a) -> BitMatrix:
        a = np.asarray(a, dtype=np.uint8) % 2
        return cls(a.shape[1], tuple(int("".join(map(str, row)), 2) if len(row) else 0 for row in a))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(unit(n, i) for i in range(1, n + 1)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def to_strings(self) -> list[str]:
        return [to_bitstring(r, self.cols) for r in self.rows]

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in support(r, self.cols):
                out[i, j - 1] = 1
        return out

    def row_supports(self) -> list[list[int]]:
        return [support(r, self.cols) for r in self.rows]

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def column(self, j: int) -> int:
        """Column j (1-based) as an int over the rows, row 1 most significant."""
        m = self.nrows
        shift = self.cols - j
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> shift) & 1:
                c |= 1 << (m - 1 - i)
        return c

    def column_weights(self) -> list[int]:
        return [self.column(j).bit_count() for j in range(1, self.cols + 1)]

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.nrows, tuple(self.column(j) for j in range(1, self.cols + 1)))

    def rref(self) -> tuple[BitMatrix, list[int]]:
        """Reduced row echelon form (zero rows dropped) and 1-based pivot columns."""
        rows, piv = _rref(self.rows, self.cols)
        return BitMatrix(self.cols, tuple(rows)), [p + 1 for p in piv]

    def rank(self) -> int:
        return len(_rref(self.rows, self.cols)[1])

    def nullspace(self) -> BitMatrix:
        """Basis of {x : M x = 0}, one vector per free column, in column order."""
        n = self.cols
        rows, piv = _rref(self.rows, n)
        pivset = set(piv)
        basis = []
        for f in range(n):
            if f in pivset:
                continue
            fbit = 1 << (n - 1 - f)
            v = fbit
            for r, p in zip(rows, piv):
                if r & fbit:
                    v |= 1 << (n - 1 - p)
            basis.append(v)
        return BitMatrix(n, tuple(basis))

    def syndrome(self, v: int) -> int:
        """M v as an int, row i at bit i (least significant = row 1)."""
        s = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                s |= 1 << i
        return s

    def select_columns(self, cols: Sequence[int]) -> BitMatrix:
        """Submatrix on the given 1-based columns, in the given order."""
        n = self.cols
        m = len(cols)
        out = []
        for r in self.rows:
            v = 0
            for pos, c in enumerate(cols):
                if (r >> (n - c)) & 1:
                    v |= 1 << (m - 1 - pos)
            out.append(v)
        return BitMatrix(m, tuple(out))

    def permute_columns(self, perm: Sequence[int]) -> BitMatrix:
        """Move coordinate i to coordinate perm[i-1] (both 1-based)."""
        n = self.cols
        out = []
        for r in self.rows:
            v = 0
            for i in range(1, n + 1):
                if (r >> (n - i)) & 1:
                    v |= 1 << (n - perm[i - 1])
            out.append(v)
        return BitMatrix(n, tuple(out))

    def stack(self, other: BitMatrix) -> BitMatrix:
        if other.cols != self.cols:
            raise LengthMismatch("column counts differ")
        return BitMatrix(self.cols, self.rows + other.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def times_transpose(self, other: BitMatrix) -> BitMatrix:
        """self · otherᵀ over GF(2)."""
        if other.cols != self.cols:
            raise LengthMismatch("column counts differ")
        m = other.nrows
        out = []
        for a in self.rows:
            v = 0
            for j, b in enumerate(other.rows):
                if (a & b).bit_count() & 1:
                    v |= 1 << (m - 1 - j)
            out.append(v)
        return BitMatrix(m, tuple(out))


def rank(m: BitMatrix) -> int:
    return m.rank()


def block_diagonal(mats: Sequence[BitMatrix]) -> BitMatrix:
    total = sum(m.cols for m in mats)
    rows = []
    offset = 0
    for m in mats:
        shift = total - offset - m.cols
        rows.extend(r << shift for r in m.rows)
        offset += m.cols
    return BitMatrix(total, tuple(rows))


# -- linear codes ------------------------------------------------------------


@dataclass(frozen=True)
class LinearCode:
    """A binary [n, k] code holding full-rank generator and parity-check bases."""

    n: int
    k: int
    generator: BitMatrix
    parity: BitMatrix

    def __post_init__(self):
        g, h = self.generator, self.parity
        if g.cols != self.n or h.cols != self.n:
            raise InconsistentInput("matrix widths must equal n")
        if g.nrows != self.k or g.rank() != self.k:
            raise InconsistentInput(f"generator must have full row rank {self.k}")
        if h.nrows != self.n - self.k or h.rank() != self.n - self.k:
            raise InconsistentInput(f"parity must have full row rank {self.n - self.k}")
        if not g.times_transpose(h).is_zero():
            raise InconsistentInput("generator rows are not orthogonal to parity rows")

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def is_degenerate(self) -> bool:
        """True for the zero code {0}."""
        return self.k == 0

    def contains(self, v: int) -> bool:
        return all(not dot(h, v) for h in self.parity.rows)

    def codewords(self) -> Iterator[int]:
        """All 2^k codewords in Gray-code order, starting at 0."""
        rows = self.generator.rows
        c = 0
        yield c
        for i in range(1, 1 << self.k):
            c ^= rows[(i & -i).bit_length() - 1]
            yield c

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}]"


def code_from_parity(h: BitMatrix) -> LinearCode:
    """The nullspace of h; a rank-deficient h is row-reduced first."""
    if h.cols < 1:
        raise LRCError("parity-check matrix needs at least one column")
    reduced, _ = h.rref()
    gen = h.nullspace()
    return LinearCode(h.cols, gen.nrows, gen, reduced)


def code_from_generator(g: BitMatrix) -> LinearCode:
    if g.cols < 1:
        raise LRCError("generator matrix needs at least one column")
    reduced, _ = g.rref()
    return LinearCode(g.cols, reduced.nrows, reduced, g.nullspace())


def dual(c: LinearCode) -> LinearCode:
    return LinearCode(c.n, c.n - c.k, c.parity, c.generator)


def direct_sum(codes: Sequence[LinearCode]) -> LinearCode:
    if not codes:
        raise LRCError("direct sum of an empty list")
    if len(codes) == 1:
        return codes[0]
    return LinearCode(
        sum(c.n for c in codes),
        sum(c.k for c in codes),
        block_diagonal([c.generator for c in codes]),
        block_diagonal([c.parity for c in codes]),
    )


def codes_equal(a: LinearCode, b: LinearCode) -> bool:
    if a.n != b.n:
        raise LengthMismatch(f"code lengths differ: {a.n} vs {b.n}")
    if a.k != b.k:
        return False
    return a.generator.rref()[0] == b.generator.rref()[0]


def permute_code(c: LinearCode, perm: Sequence[int]) -> LinearCode:
    """Image of c under the coordinate map i -> perm[i-1]."""
    return LinearCode(c.n, c.k, c.generator.permute_columns(perm), c.parity.permute_columns(perm))


# -- weight enumerators ------------------------------------------------------


@dataclass(frozen=True)
class WeightEnumerator:
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(x) for x in self.counts))
        if len(self.counts) != self.n + 1:
            raise LRCError("need exactly n+1 coefficients")

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, int]) -> WeightEnumerator:
        counts = [0] * (n + 1)
        for w, a in terms.items():
            counts[w] += a
        return cls(n, tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def min_nonzero_weight(self) -> int | None:
        return next((w for w in range(1, self.n + 1) if self.counts[w]), None)

    def terms(self) -> dict[int, int]:
        return {w: a for w, a in enumerate(self.counts) if a}

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    def __str__(self) -> str:
        parts = []
        for w, a in self.terms().items():
            if w == 0:
                parts.append(str(a))
            else:
                coef = "" if a == 1 else str(a)
                parts.append(f"{coef}z" if w == 1 else f"{coef}z^{w}")
        return " + ".join(parts) or "0"


def weight_enumerator(c: LinearCode, guard: int | None = None) -> WeightEnumerator:
    """Exact weight distribution by walking all 2^k codewords in Gray-code order."""
    check_guard("k", c.k, ENUMERATION_GUARD, guard)
    counts = [0] * (c.n + 1)
    for w in c.codewords():
        counts[w.bit_count()] += 1
    return WeightEnumerator(c.n, tuple(counts))


def krawtchouk(n: int, j: int, w: int) -> int:
    return sum((-1) ** s * comb(w, s) * comb(n - w, j - s) for s in range(0, min(j, w) + 1))


def macwilliams(w: WeightEnumerator, k: int) -> WeightEnumerator:
    """Weight enumerator of the dual code of an [n, k] code with enumerator w."""
    if w.total != 1 << k:
        raise InconsistentInput(f"coefficients sum to {w.total}, not 2^{k}")
    n = w.n
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(n, j, i) for i, a in enumerate(w.counts) if a)
        q, rem = divmod(s, 1 << k)
        if rem:
            raise InconsistentInput("transform is not integral; input is not a linear code enumerator")
        out.append(q)
    return WeightEnumerator(n, tuple(out))


def min_distance(c: LinearCode, guard: int | None = None) -> int:
    if c.k < 1:
        raise LRCError("minimum distance of the zero code is undefined")
    check_guard("k", c.k, ENUMERATION_GUARD, guard)
    best = c.n
    words = c.codewords()
    next(words)
    for w in words:
        wt = w.bit_count()
        if wt < best:
            best = wt
    return best


# -- cosets ------------------------------------------------------------------


@dataclass(frozen=True)
class CosetAnalysis:
    """Minimum coset-leader weight for every syndrome of a code.

    ``leader_weights[s]`` is the leader weight of the coset with syndrome
    ``s`` (parity row i at bit i).
    """

    code: LinearCode
    leader_weights: bytes = field(repr=False)
    covering_radius: int

    def leader_weight(self, syndrome: int) -> int:
        return self.leader_weights[syndrome]

    def coset_weight_distribution(self) -> list[int]:
        """Number of cosets whose leader has weight w, for w = 0..covering_radius."""
        counts = np.bincount(np.frombuffer(self.leader_weights, dtype=np.uint8),
                             minlength=self.covering_radius + 1)
        return [int(x) for x in counts]


def covering_radius(c: LinearCode, guard: int | None = None) -> CosetAnalysis:
    """Breadth-first sweep over syndromes by increasing error weight."""
    m = c.n - c.k
    check_guard("n-k", m, SYNDROME_GUARD, guard)
    if c.n > 254:
        raise LRCError("covering-radius sweep supports n <= 254")
    cols = np.array([c.parity.syndrome(unit(c.n, j)) for j in range(1, c.n + 1)], dtype=np.int64)
    unseen = 255
    leader = np.full(1 << m, unseen, dtype=np.uint8)
    leader[0] = 0
    remaining = (1 << m) - 1
    frontier = np.array([0], dtype=np.int64)
    w = 0
    while remaining:
        w += 1
        cand = np.unique((frontier[:, None] ^ cols[None, :]).ravel())
        new = cand[leader[cand] == unseen]
        leader[new] = w
        remaining -= new.size
        frontier = new
    return CosetAnalysis(c, leader.tobytes(), w)


# -- equivalence -------------------------------------------------------------


def _coordinate_profiles(c: LinearCode) -> list[tuple[int, ...]]:
    """Per-coordinate count of codewords of each weight covering it.

    Computed on whichever of c, dual(c) is smaller; both are permutation invariants.
    """
    words = list(c.codewords()) if c.k <= c.n - c.k else list(dual(c).codewords())
    n = c.n
    prof = [[0] * (n + 1) for _ in range(n)]
    for w in words:
        wt = w.bit_count()
        for i in range(n):
            if (w >> (n - 1 - i)) & 1:
                prof[i][wt] += 1
    return [tuple(p) for p in prof]


def _projection_key(gen: BitMatrix, cols: Sequence[int]) -> tuple[int, ...]:
    return gen.select_columns(cols).rref()[0].rows


def find_equivalence(a: LinearCode, b: LinearCode, max_n: int | None = None) -> tuple[int, ...] | None:
    """Search for a coordinate permutation mapping a onto b.

    Returns perm with perm[i-1] = image of coordinate i, or None when the
    codes are inequivalent. Backtracking assigns coordinates in order,
    pruned by per-coordinate weight profiles and by equality of the
    projections of both codes (and both duals) onto the assigned coordinates.
    """
    if a.n != b.n:
        raise LengthMismatch(f"code lengths differ: {a.n} vs {b.n}")
    check_guard("n", a.n, EQUIVALENCE_SEARCH_MAX_N, max_n)
    if a.k != b.k:
        return None
    small = min(a.k, a.n - a.k)
    check_guard("min(k, n-k)", small, ENUMERATION_GUARD)
    if small == 0:
        return tuple(range(1, a.n + 1))
    pa, pb = _coordinate_profiles(a), _coordinate_profiles(b)
    if sorted(pa) != sorted(pb):
        return None
    n = a.n
    ga, gb = a.generator, b.generator
    ha, hb = a.parity, b.parity
    image: list[int] = []
    used = [False] * (n + 1)

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in range(1, n + 1):
            if used[j] or pb[j - 1] != pa[i]:
                continue
            image.append(j)
            src = list(range(1, i + 2))
            if (_projection_key(ga, src) == _projection_key(gb, image)
                    and _projection_key(ha, src) == _projection_key(hb, image)):
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
            image.pop()
        return False

    if extend(0):
        perm = tuple(image)
        assert codes_equal(permute_code(a, perm), b)
        return perm
    return None


def equivalence_verdict(a: LinearCode, b: LinearCode) -> tuple[str, tuple[int, ...] | None]:
    """'equivalent' / 'not-equivalent' for n <= 12, else an enumerator-based verdict."""
    if a.n != b.n:
        raise LengthMismatch(f"code lengths differ: {a.n} vs {b.n}")
    if a.n <= EQUIVALENCE_SEARCH_MAX_N:
        perm = find_equivalence(a, b)
        return ("equivalent", perm) if perm is not None else ("not-equivalent", None)
    if a.k != b.k:
        return "not-equivalent", None
    small_a = a if a.k <= a.n - a.k else dual(a)
    small_b = b if b.k <= b.n - b.k else dual(b)
    if weight_enumerator(small_a) == weight_enumerator(small_b):
        return "consistent-with-equivalence", None
    return "not-equivalent", None


# -- serialization -----------------------------------------------------------


def code_to_json(c: LinearCode) -> dict:
    return {
        "n": c.n,
        "k": c.k,
        "generator": c.generator.to_strings(),
        "parity": c.parity.to_strings(),
    }


def code_from_json(obj: dict | str) -> LinearCode:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
    except (KeyError, TypeError, ValueError):
        raise InconsistentInput("code JSON needs an integer 'n'") from None
    gen = obj.get("generator")
    par = obj.get("parity")
    if gen is None and par is None:
        raise InconsistentInput("code JSON needs 'generator' or 'parity'")
    g = BitMatrix.from_strings(gen, n) if gen is not None else None
    h = BitMatrix.from_strings(par, n) if par is not None else None
    if g is not None:
        code = code_from_generator(g)
        if h is not None:
            other = code_from_parity(h)
            if not codes_equal(code, other):
                raise InconsistentInput("'generator' and 'parity' describe different codes")
            code = LinearCode(n, code.k, code.generator, other.parity)
    else:
        code = code_from_parity(h)
    # full-rank input matrices are kept verbatim so export(import(x)) == x
    keep_g = g if g is not None and g.nrows == code.k else code.generator
    keep_h = h if h is not None and h.nrows == n - code.k else code.parity
    code = LinearCode(n, code.k, keep_g, keep_h)
    if "k" in obj and int(obj["k"]) != code.k:
        raise InconsistentInput(f"declared k = {obj['k']} but matrices give k = {code.k}")
    return code
