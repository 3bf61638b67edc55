"""Brute-force references built from sets and permutations only.

Nothing here calls into the package's algorithms, so agreement with them is
an independent check.
"""

from __future__ import annotations

from itertools import permutations


def span(rows, n=None):
    words = {0}
    for r in rows:
        words |= {w ^ r for w in words}
    return words


def dim_of(rows):
    return len(span(rows)).bit_length() - 1


def weight_counts(words, n):
    counts = [0] * (n + 1)
    for w in words:
        counts[bin(w).count("1")] += 1
    return counts


def orthogonal_complement(rows, n):
    return {v for v in range(1 << n) if all(bin(v & r).count("1") % 2 == 0 for r in rows)}


def covering_radius(words, n):
    words = list(words)
    return max(min(bin(v ^ c).count("1") for c in words) for v in range(1 << n))


def permute_word(v, perm, n):
    """Move coordinate i (1-based, MSB first) to position perm[i-1]."""
    out = 0
    for i in range(1, n + 1):
        if v >> (n - i) & 1:
            out |= 1 << (n - perm[i - 1])
    return out


def equivalent(words_a, words_b, n):
    target = set(words_b)
    if len(words_a) != len(target):
        return False
    return any({permute_word(w, p, n) for w in words_a} == target
               for p in permutations(range(1, n + 1)))


def canonical_blocks(blocks, n):
    """Lex-min sorted block list over all n! relabelings (0-based points)."""
    best = None
    for p in permutations(range(n)):
        cand = sorted(tuple(sorted(p[x] for x in b)) for b in blocks)
        if best is None or cand < best:
            best = cand
    return best


def labeled_exact_coverings(n, k, t):
    """Every labeled family of k-subsets covering each point t times, pairwise meeting in <= 1 point."""
    from itertools import combinations
    cands = list(combinations(range(n), k))
    N = n * t // k
    out = []

    def go(start, chosen, cover):
        if len(chosen) == N:
            if all(c == t for c in cover):
                out.append(list(chosen))
            return
        for idx in range(start, len(cands)):
            b = cands[idx]
            if any(cover[p] >= t for p in b):
                continue
            if any(len(set(b) & set(c)) > 1 for c in chosen):
                continue
            for p in b:
                cover[p] += 1
            chosen.append(b)
            go(idx + 1, chosen, cover)
            chosen.pop()
            for p in b:
                cover[p] -= 1

    go(0, [], [0] * n)
    return out
