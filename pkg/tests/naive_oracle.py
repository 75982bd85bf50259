"""Brute-force reference generator for small diagram bases.

Deliberately unoptimized and independent of the library internals: it was
written against the definitions alone, enumerates every labeled edge subset
with itertools, filters by first principles, and scans every rotation and
every internal-vertex permutation of every survivor.  Do not optimize.

A diagram is passed around as a plain tuple (ve, vi, edges) where edges is a
tuple of sorted vertex pairs (loops as (x, x)); orientations and loop
half-edge orders contribute only signs, which the orbit scan accounts for in
closed form (each pair reversal and each loop swap is a factor of -1, and in
even type the sign of the permutation sorting the edge list).
"""

from itertools import combinations, permutations


def cells(k, m):
    out = []
    vi = 0
    while True:
        e = k + vi
        ve = 2 * k - vi - m
        if ve < 1:
            break
        out.append((vi, e, ve))
        vi += 1
    return out


def _perm_parity(seq):
    """Parity (+1/-1) of the permutation sorting seq's index arrangement."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                sign = -sign
                seq[i], seq[j] = seq[j], seq[i]
    return sign


def _sort_with_parity(pairs):
    order = sorted(range(len(pairs)), key=lambda t: pairs[t])
    return tuple(pairs[t] for t in order), _perm_parity(order)


def structurally_zero(ctype, ve, vi, edges):
    if len(set(edges)) != len(edges):
        return True  # parallel edges (loops included)
    if any(a == b and a > ve for a, b in edges):
        return True  # internal self-loop
    if ctype == "even" and ve == 1 and any(a == b == 1 for a, b in edges):
        return True  # certified convention, see the library's is_degenerate
    return False


def orbit_scan(ctype, ve, vi, edges):
    """Return (minimal encoding, is_zero) over the full decoration orbit."""
    edges = tuple(tuple(sorted(p)) for p in edges)
    if structurally_zero(ctype, ve, vi, edges):
        return None, True
    best = None
    best_signs = set()
    internals = list(range(ve + 1, ve + vi + 1))
    for s in range(ve):
        rot_sign = -1 if (s * (ve - 1)) % 2 else 1
        for perm in permutations(range(vi)):
            if ctype == "odd":
                psign = _perm_parity(perm)
            else:
                psign = 1

            def relab(v):
                if v <= ve:
                    return (v - 1 + s) % ve + 1
                return ve + 1 + perm[v - ve - 1]

            flips = 0
            relabeled = []
            for a, b in edges:
                x, y = relab(a), relab(b)
                if x > y:
                    x, y = y, x
                    if ctype == "odd" and a != b:
                        flips += 1
                relabeled.append((x, y))
            if ctype == "even":
                enc, ssign = _sort_with_parity(relabeled)
                total = rot_sign * ssign
            else:
                enc = tuple(sorted(relabeled))
                total = rot_sign * psign * (-1) ** flips
            if best is None or enc < best:
                best = enc
                best_signs = {total}
            elif enc == best:
                best_signs.add(total)
    return (ve, vi, best), len(best_signs) == 2


def _admissible(ve, vi, edges):
    n = ve + vi
    deg = [0] * (n + 1)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if any(deg[v] < 1 for v in range(1, ve + 1)):
        return False
    if any(deg[v] < 3 for v in range(ve + 1, n + 1)):
        return False
    # every internal vertex must reach the circle through edges
    reached = set(range(1, ve + 1))
    grew = True
    while grew:
        grew = False
        for a, b in edges:
            if (a in reached) != (b in reached):
                reached.update((a, b))
                grew = True
    return all(v in reached for v in range(ve + 1, n + 1))


def generate(ctype, k, m):
    """All nonzero decoration orbits of grading (k, m), as orbit keys."""
    keys = set()
    if k < 1 or m < 0:
        return keys
    for vi, e, ve in cells(k, m):
        n = ve + vi
        candidates = [(x, x) for x in range(1, ve + 1)]
        candidates += [
            (a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
        ]
        for subset in combinations(candidates, e):
            if not _admissible(ve, vi, subset):
                continue
            key, zero = orbit_scan(ctype, ve, vi, subset)
            if not zero:
                keys.add(key)
    return keys
