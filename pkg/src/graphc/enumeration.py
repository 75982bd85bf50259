"""Deterministic bases of canonical diagrams for each (type, order, degree).

A grading (k, m) splits into cells (vi, e, ve) with e = k + vi and
ve = 2k - vi - m.  Each cell is enumerated by a degree-constrained
backtracking search over candidate edges (all unordered pairs of distinct
vertices plus one loop slot per external vertex), followed by orbit
deduplication through canonical forms.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache

from .diagrams import (
    EVEN,
    ODD,
    Diagram,
    canonicalize,
    from_json,
    is_admissible,
    to_json,
)
from .errors import CacheCorruptionError, CapExceededError, StaleCacheError

DEFAULT_CELL_CAP = 2_000_000

CACHE_FORMAT_VERSION = 1


def cells(k: int, m: int):
    """All (vi, e, ve) solving e - vi = k, 2e - 3vi - ve = m with ve >= 1."""
    if m < 0:
        return []
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


def _candidate_edges(ve: int, vi: int):
    """Loops at external vertices first, then all unordered pairs."""
    n = ve + vi
    cands = [(x, x) for x in range(1, ve + 1)]
    cands += [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    return cands


def _cell_graphs(vi: int, e: int, ve: int, cap: int):
    """Yield every admissible edge set of the cell, as a sorted tuple of
    candidate edges, in lexicographic order.  Counts against ``cap``."""
    n = ve + vi
    cands = _candidate_edges(ve, vi)
    nc = len(cands)
    mindeg = [0] * (n + 1)
    for v in range(1, ve + 1):
        mindeg[v] = 1
    for v in range(ve + 1, n + 1):
        mindeg[v] = 3
    slack = 2 * e - (ve + 3 * vi)  # equals the degree m
    if slack < 0:
        return

    # cap_after[i][v]: degree capacity vertex v can still gain from candidates i..
    cap_after = [[0] * (n + 1) for _ in range(nc + 1)]
    for i in range(nc - 1, -1, -1):
        row = cap_after[i + 1][:]
        a, b = cands[i]
        row[a] += 1
        row[b] += 1
        cap_after[i] = row

    deg = [0] * (n + 1)
    chosen = []
    produced = 0

    def deficit(v):
        return mindeg[v] - deg[v] if deg[v] < mindeg[v] else 0

    def dfs(i, remaining, total_deficit, surplus):
        nonlocal produced
        if remaining == 0:
            if total_deficit == 0 and _internals_connected(chosen, ve, n):
                produced += 1
                if produced > cap:
                    raise CapExceededError((vi, e, ve), cap)
                yield tuple(chosen)
            return
        if nc - i < remaining or total_deficit > 2 * remaining:
            return
        a, b = cands[i]
        # include cands[i]
        da, db = deficit(a), deficit(b)
        if a == b:
            gain = min(2, da)
        else:
            gain = (1 if da else 0) + (1 if db else 0)
        extra = 2 - gain
        if surplus + extra <= slack:
            deg[a] += 1
            deg[b] += 1
            chosen.append((a, b))
            yield from dfs(i + 1, remaining - 1, total_deficit - gain, surplus + extra)
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
        # exclude cands[i]: prune when a deficient endpoint runs out of capacity
        nxt = cap_after[i + 1]
        if deficit(a) <= nxt[a] and deficit(b) <= nxt[b]:
            yield from dfs(i + 1, remaining, total_deficit, surplus)

    total0 = sum(mindeg[v] for v in range(1, n + 1))
    yield from dfs(0, e, total0, 0)


def _internals_connected(edges, ve, n):
    if n == ve:
        return True
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots = {find(v) for v in range(1, ve + 1)}
    return all(find(v) in roots for v in range(ve + 1, n + 1))


def _representative(ctype, ve, vi, edges) -> Diagram:
    if ctype == ODD:
        orders = tuple(
            (i, "ab") for i, (a, b) in enumerate(edges, start=1) if a == b
        )
        return Diagram(ctype, ve, vi, edges, orders)
    return Diagram(ctype, ve, vi, edges)


@dataclass(frozen=True)
class ComplexBasis:
    """Deterministic ordered basis of one graded piece of the complex."""

    ctype: str
    k: int
    m: int
    diagrams: tuple

    def __len__(self):
        return len(self.diagrams)

    @property
    def _pos(self):
        try:
            return self.__dict__["_pos_cache"]
        except KeyError:
            pos = {d: i for i, d in enumerate(self.diagrams)}
            self.__dict__["_pos_cache"] = pos
            return pos

    def index_of(self, d: Diagram) -> int:
        return self._pos[d]

    def __contains__(self, d: Diagram) -> bool:
        return d in self._pos


@lru_cache(maxsize=None)
def enumerate_basis(ctype, k, m, max_cell_size=DEFAULT_CELL_CAP) -> ComplexBasis:
    """All canonical nonzero diagrams of the given grading, sorted by their
    serialization.  Deterministic; cached in-process."""
    found = set()
    if k >= 1 and m >= 0:
        for vi, e, ve in cells(k, m):
            for edges in _cell_graphs(vi, e, ve, max_cell_size):
                rep = _representative(ctype, ve, vi, edges)
                if not is_admissible(rep):
                    continue
                sd = canonicalize(rep)
                if not sd.is_zero:
                    found.add(sd.diagram)
    ordered = tuple(sorted(found, key=to_json))
    return ComplexBasis(ctype, k, m, ordered)


# --------------------------------------------------------------------------
# On-disk cache
# --------------------------------------------------------------------------

def cache_filename(ctype, k, m) -> str:
    return f"basis_{ctype}_k{k}_m{m}.jsonl"


def _basis_body(basis: ComplexBasis) -> str:
    return "".join(to_json(d) + "\n" for d in basis.diagrams)


def basis_checksum(basis: ComplexBasis) -> str:
    return hashlib.sha256(_basis_body(basis).encode()).hexdigest()


def basis_cache_store(basis: ComplexBasis, cache_dir) -> str:
    """Atomically write the basis file; return its path."""
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, cache_filename(basis.ctype, basis.k, basis.m))
    body = _basis_body(basis)
    header = json.dumps(
        {
            "format": "graphc-basis",
            "version": CACHE_FORMAT_VERSION,
            "type": basis.ctype,
            "k": basis.k,
            "m": basis.m,
            "count": len(basis.diagrams),
            "sha256": hashlib.sha256(body.encode()).hexdigest(),
        },
        separators=(",", ":"),
    )
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".tmp_basis_")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(header + "\n")
            fh.write(body)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def basis_cache_load(ctype, k, m, cache_dir) -> ComplexBasis:
    """Load one basis file, verifying version and checksum."""
    path = os.path.join(cache_dir, cache_filename(ctype, k, m))
    with open(path, "r") as fh:
        header_line = fh.readline()
        body = fh.read()
    try:
        header = json.loads(header_line)
    except ValueError as exc:
        raise CacheCorruptionError(f"{path}: unreadable header") from exc
    if header.get("format") != "graphc-basis":
        raise CacheCorruptionError(f"{path}: not a basis file")
    if header.get("version") != CACHE_FORMAT_VERSION:
        raise StaleCacheError(
            f"{path}: version {header.get('version')} != {CACHE_FORMAT_VERSION}"
        )
    if hashlib.sha256(body.encode()).hexdigest() != header.get("sha256"):
        raise CacheCorruptionError(f"{path}: checksum mismatch")
    try:
        diagrams = tuple(from_json(line) for line in body.splitlines())
    except Exception as exc:
        raise CacheCorruptionError(f"{path}: bad record") from exc
    if len(diagrams) != header.get("count"):
        raise CacheCorruptionError(f"{path}: record count mismatch")
    return ComplexBasis(ctype, k, m, diagrams)


def basis_cached(ctype, k, m, cache_dir, max_cell_size=DEFAULT_CELL_CAP) -> ComplexBasis:
    """Load from the cache when possible, otherwise compute and store."""
    path = os.path.join(cache_dir, cache_filename(ctype, k, m))
    if os.path.exists(path):
        return basis_cache_load(ctype, k, m, cache_dir)
    basis = enumerate_basis(ctype, k, m, max_cell_size)
    basis_cache_store(basis, cache_dir)
    return basis
