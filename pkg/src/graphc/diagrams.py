"""Decorated diagrams on an oriented circle, their decoration moves and signs.

A diagram has ``ve`` external vertices labelled 1..ve in cyclic order along
the circle, ``vi`` internal vertices labelled ve+1..ve+vi, and a sequence of
edges.  Odd-type edges are ordered pairs (tail, head); even-type edges are
unordered and their 1-based position in the sequence is the edge label.
Loop edges at an external vertex carry, in odd type only, an ordering of
their two half-edges ("ab" or "ba").

The decoration moves and their signs:

* rotating the external labels by s steps:       (-1)**(s*(ve-1))
* permuting internal labels (odd type):          sign of the permutation
* permuting edge labels (even type):             sign of the permutation
* reversing one edge orientation (odd type):     -1
* swapping one loop's half-edge order (odd):     -1
* relabelling internal vertices (even type):     +1

Diagrams containing parallel edges or an internal self-loop are identified
with zero, as is any diagram carrying a self-equivalence of total sign -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Optional

from .errors import GradingError, InvalidMoveError, StructuralError

ODD = "odd"
EVEN = "even"


# --------------------------------------------------------------------------
# Diagram
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Diagram:
    """One decorated diagram.  Immutable and hashable."""

    ctype: str
    ve: int
    vi: int
    edges: tuple
    loop_orders: tuple = ()

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        if self.ctype == EVEN:
            # even-type pairs are unordered; store them sorted
            edges = tuple((a, b) if a <= b else (b, a) for a, b in edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(
            self, "loop_orders", tuple((int(i), str(o)) for i, o in self.loop_orders)
        )
        _validate(self)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return self.ve + self.vi

    def is_external(self, v: int) -> bool:
        return 1 <= v <= self.ve


def _validate(d: Diagram) -> None:
    if d.ctype not in (ODD, EVEN):
        raise StructuralError(f"unknown complex type {d.ctype!r}")
    if d.ve < 0 or d.vi < 0:
        raise StructuralError("negative vertex counts")
    n = d.ve + d.vi
    for a, b in d.edges:
        if not (1 <= a <= n and 1 <= b <= n):
            raise StructuralError(f"edge ({a},{b}) references a vertex outside 1..{n}")
    order = dict(d.loop_orders)
    if len(order) != len(d.loop_orders):
        raise StructuralError("duplicate loop_orders entry")
    if d.ctype == EVEN:
        if d.loop_orders:
            raise StructuralError("even-type loops carry no half-edge decoration")
        return
    # odd type: every external loop needs a half-edge order, nothing else does
    for idx, state in d.loop_orders:
        if not (1 <= idx <= len(d.edges)):
            raise StructuralError(f"loop_orders index {idx} out of range")
        a, b = d.edges[idx - 1]
        if a != b or a > d.ve:
            raise StructuralError(f"loop_orders entry {idx} is not an external loop")
        if state not in ("ab", "ba"):
            raise StructuralError(f"bad half-edge order {state!r}")
    for idx, (a, b) in enumerate(d.edges, start=1):
        if a == b and a <= d.ve and idx not in order:
            raise StructuralError(f"external loop at edge {idx} lacks a half-edge order")


def diagram(ctype, ve, vi, edges, loop_orders=()) -> Diagram:
    """Convenience constructor."""
    return Diagram(ctype, ve, vi, tuple(tuple(e) for e in edges), tuple(loop_orders))


# --------------------------------------------------------------------------
# Grading and structural predicates
# --------------------------------------------------------------------------

def grading(d: Diagram):
    """Return (order k, degree m) = (e - vi, 2e - 3vi - ve)."""
    e = d.e
    return e - d.vi, 2 * e - 3 * d.vi - d.ve


def edge_degrees(d: Diagram):
    """Edge-degree of every vertex (loops count twice), indexed 1..ve+vi."""
    deg = [0] * (d.n_vertices + 1)
    for a, b in d.edges:
        deg[a] += 1
        deg[b] += 1
    return deg


def is_degenerate(d: Diagram) -> bool:
    """True when the diagram is identified with zero for structural reasons:
    an internal self-loop, two edges joining the same pair of vertices, or
    (even type only) a loop on a circle with a single external vertex.

    The last clause is a certified convention: with those diagrams kept, the
    even complex acquires a spurious class in bidegree (1,1); with all loop
    diagrams removed, the nontrivalent class in bidegree (3,1) disappears.
    Quotienting exactly the single-vertex loop diagrams in the even complex
    (their span is stable under contraction, so the quotient is a complex)
    reproduces both the vanishing results and the (3,1) generator, and it
    keeps the short-chord relations inside the boundary image.  The odd
    complex needs its single-vertex loop diagram as the boundary target of
    the short chord, so no such quotient is applied there.
    """
    seen = set()
    for a, b in d.edges:
        key = (a, b) if a <= b else (b, a)
        if a == b and a > d.ve:
            return True
        if key in seen:
            return True
        seen.add(key)
    if d.ctype == EVEN and d.ve == 1 and any(a == b == 1 for a, b in d.edges):
        return True
    return False


def is_admissible(d: Diagram) -> bool:
    """Whether the diagram may appear in a basis: valence bounds, a nonempty
    circle, internal vertices tethered to the circle, and positive order."""
    if d.ve < 1 or is_degenerate(d):
        return False
    deg = edge_degrees(d)
    if any(deg[v] < 1 for v in range(1, d.ve + 1)):
        return False
    if any(deg[v] < 3 for v in range(d.ve + 1, d.n_vertices + 1)):
        return False
    k, m = grading(d)
    if k < 1 or m < 0:
        return False
    return _internals_reach_circle(d)


def _internals_reach_circle(d: Diagram) -> bool:
    if d.vi == 0:
        return True
    adj = {v: set() for v in range(1, d.n_vertices + 1)}
    for a, b in d.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = set(range(1, d.ve + 1))
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return all(v in seen for v in range(d.ve + 1, d.n_vertices + 1))


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

def to_json(d: Diagram) -> str:
    """Canonical one-line record.  Field order is fixed; byte-stable."""
    rec = {
        "type": d.ctype,
        "ve": d.ve,
        "vi": d.vi,
        "edges": [list(e) for e in d.edges],
        "loop_orders": [[i, o] for i, o in sorted(d.loop_orders)],
    }
    return json.dumps(rec, separators=(",", ":"))


def from_json(line: str) -> Diagram:
    try:
        rec = json.loads(line)
        return Diagram(
            rec["type"],
            rec["ve"],
            rec["vi"],
            tuple(tuple(e) for e in rec["edges"]),
            tuple(tuple(lo) for lo in rec["loop_orders"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StructuralError):
            raise
        raise StructuralError(f"bad diagram record: {line!r}") from exc


# --------------------------------------------------------------------------
# Decoration moves
# --------------------------------------------------------------------------

def perm_sign(perm) -> int:
    """Sign of a permutation given as a 0-based image tuple."""
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _moved(d: Diagram, move):
    """Apply one decoration move; return (new diagram, sign)."""
    kind = move[0]
    if kind == "rotate":
        s = move[1] % d.ve if d.ve else 0
        sign = -1 if (s * (d.ve - 1)) % 2 else 1

        def rel(v):
            return (v - 1 + s) % d.ve + 1 if v <= d.ve else v

        edges = tuple((rel(a), rel(b)) for a, b in d.edges)
        return Diagram(d.ctype, d.ve, d.vi, edges, d.loop_orders), sign

    if kind == "permute_internal":
        perm = tuple(move[1])
        if sorted(perm) != list(range(d.vi)):
            raise InvalidMoveError(f"bad internal permutation {perm}")
        sign = perm_sign(perm) if d.ctype == ODD else 1

        def rel(v):
            return d.ve + 1 + perm[v - d.ve - 1] if v > d.ve else v

        edges = tuple((rel(a), rel(b)) for a, b in d.edges)
        return Diagram(d.ctype, d.ve, d.vi, edges, d.loop_orders), sign

    if kind == "permute_edges":
        if d.ctype != EVEN:
            raise InvalidMoveError("edge labels exist in even type only")
        perm = tuple(move[1])
        if sorted(perm) != list(range(d.e)):
            raise InvalidMoveError(f"bad edge permutation {perm}")
        new_edges = [None] * d.e
        for t, edge in enumerate(d.edges):
            new_edges[perm[t]] = edge
        return Diagram(d.ctype, d.ve, d.vi, tuple(new_edges)), perm_sign(perm)

    if kind == "reverse_edge":
        if d.ctype != ODD:
            raise InvalidMoveError("edge orientations exist in odd type only")
        idx = move[1]
        if not (1 <= idx <= d.e):
            raise StructuralError(f"edge index {idx} out of range")
        a, b = d.edges[idx - 1]
        if a == b:
            raise InvalidMoveError("loops are reoriented by swapping half-edges")
        edges = list(d.edges)
        edges[idx - 1] = (b, a)
        return Diagram(d.ctype, d.ve, d.vi, tuple(edges), d.loop_orders), -1

    if kind == "swap_loop":
        if d.ctype != ODD:
            raise InvalidMoveError("loop half-edge orders exist in odd type only")
        idx = move[1]
        order = dict(d.loop_orders)
        if idx not in order:
            raise InvalidMoveError(f"edge {idx} is not a decorated loop")
        order[idx] = "ba" if order[idx] == "ab" else "ab"
        los = tuple(sorted(order.items()))
        return Diagram(d.ctype, d.ve, d.vi, d.edges, los), -1

    raise InvalidMoveError(f"unknown move {kind!r}")


def apply_move(d: Diagram, move) -> Diagram:
    return _moved(d, move)[0]


def decoration_sign(d: Diagram, move) -> int:
    """Sign relating the re-decorated diagram to the original."""
    return _moved(d, move)[1]


# --------------------------------------------------------------------------
# Canonical form
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SignedDiagram:
    """A canonical diagram with a sign, or the zero element."""

    sign: int
    diagram: Optional[Diagram]

    @property
    def is_zero(self) -> bool:
        return self.diagram is None


ZERO = SignedDiagram(0, None)


def _internal_fingerprints(edges, ve, vi):
    """Isomorphism-invariant refinement colours for the internal vertices,
    relative to the current external labelling."""
    ext_nbrs = {u: [] for u in range(ve + 1, ve + vi + 1)}
    int_nbrs = {u: [] for u in range(ve + 1, ve + vi + 1)}
    for a, b in edges:
        for x, y in ((a, b), (b, a)):
            if x > ve:
                if y > ve:
                    int_nbrs[x].append(y)
                else:
                    ext_nbrs[x].append(y)
    f = {
        u: (len(ext_nbrs[u]) + len(int_nbrs[u]), tuple(sorted(ext_nbrs[u])))
        for u in ext_nbrs
    }
    for _ in range(vi):
        f = {u: (f[u], tuple(sorted(f[w] for w in int_nbrs[u]))) for u in f}
    return f


def _internal_labelings(edges, ve, vi):
    """Yield (mapping old internal label -> new, permutation sign) for every
    relabelling consistent with the fingerprint classes.  Scanning this family
    instead of all vi! permutations is orbit-invariant because fingerprints
    are preserved by diagram isomorphisms."""
    if vi == 0:
        yield {}, 1
        return
    f = _internal_fingerprints(edges, ve, vi)
    classes = {}
    for u, fu in f.items():
        classes.setdefault(fu, []).append(u)
    ordered = [sorted(classes[key]) for key in sorted(classes)]
    old_order = sorted(f)  # ve+1 .. ve+vi
    for combo in product(*(permutations(c) for c in ordered)):
        order = [u for group in combo for u in group]
        mapping = {u: ve + 1 + t for t, u in enumerate(order)}
        # parity of the permutation old position -> new position
        perm = tuple(mapping[u] - ve - 1 for u in old_order)
        yield mapping, perm_sign(perm)


def _sort_sign(items):
    """Stable sort of a list of comparable items; return (sorted, parity)."""
    order = sorted(range(len(items)), key=items.__getitem__)
    return [items[t] for t in order], perm_sign(tuple(order))


@lru_cache(maxsize=None)
def canonicalize(d: Diagram) -> SignedDiagram:
    """Lexicographically minimal equivalent decoration, with the sign of the
    move chain reaching it; ZERO for degenerate diagrams and for diagrams
    carrying a self-equivalence of sign -1.  Idempotent."""
    if is_degenerate(d):
        return ZERO
    ve, vi = d.ve, d.vi
    loop_state = dict(d.loop_orders)
    best_enc = None
    signs = set()
    for s in range(ve) if ve else (0,):
        rsign = -1 if (s * (ve - 1)) % 2 else 1
        redges = [
            (
                (a - 1 + s) % ve + 1 if a <= ve else a,
                (b - 1 + s) % ve + 1 if b <= ve else b,
            )
            for a, b in d.edges
        ]
        for mapping, psign in _internal_labelings(redges, ve, vi):
            medges = [
                (mapping.get(a, a), mapping.get(b, b)) for a, b in redges
            ]
            if d.ctype == EVEN:
                pairs = [(a, b) if a <= b else (b, a) for a, b in medges]
                enc_list, ssign = _sort_sign(pairs)
                total = rsign * ssign
            else:
                flips = 0
                norm = []
                for idx, (a, b) in enumerate(medges, start=1):
                    if a == b:
                        if loop_state.get(idx) == "ba":
                            flips += 1
                        norm.append((a, b))
                    elif a > b:
                        flips += 1
                        norm.append((b, a))
                    else:
                        norm.append((a, b))
                enc_list = sorted(norm)
                total = rsign * psign * (1 if flips % 2 == 0 else -1)
            enc = tuple(enc_list)
            if best_enc is None or enc < best_enc:
                best_enc = enc
                signs = {total}
            elif enc == best_enc:
                signs.add(total)
    if len(signs) == 2:
        return ZERO
    if d.ctype == ODD:
        los = tuple(
            (i, "ab")
            for i, (a, b) in enumerate(best_enc, start=1)
            if a == b and a <= ve
        )
    else:
        los = ()
    return SignedDiagram(signs.pop(), Diagram(d.ctype, ve, vi, best_enc, los))


# --------------------------------------------------------------------------
# GraphVector
# --------------------------------------------------------------------------

class GraphVector:
    """Finitely supported map from canonical diagrams to nonzero rationals.

    All keys share one (type, order, degree).  Construct through
    :func:`graph_vector`, which canonicalizes keys and folds in signs.
    """

    __slots__ = ("_terms", "_key")

    def __init__(self, terms):
        # terms: dict canonical Diagram -> nonzero Fraction (trusted)
        self._terms = dict(terms)
        self._key = tuple(sorted(self._terms.items(), key=lambda t: to_json(t[0])))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def grading(self):
        """(ctype, k, m) of the support, or None for the zero vector."""
        if not self._terms:
            return None
        d = next(iter(self._terms))
        k, m = grading(d)
        return d.ctype, k, m

    def coefficient(self, d: Diagram) -> Fraction:
        return self._terms.get(d, Fraction(0))

    def items(self):
        return iter(self._key)

    def support(self):
        return [d for d, _ in self._key]

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, GraphVector) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __add__(self, other):
        return vector_add(self, other)

    def __sub__(self, other):
        return vector_add(self, vector_scale(-1, other))

    def __rmul__(self, c):
        return vector_scale(c, self)

    def __repr__(self):
        if not self._terms:
            return "GraphVector(0)"
        body = " + ".join(f"({c})*{to_json(d)}" for d, c in self._key)
        return f"GraphVector({body})"


ZERO_VECTOR = GraphVector({})


def graph_vector(pairs: Iterable) -> GraphVector:
    """Build a GraphVector from (diagram, coefficient) pairs.

    Diagrams are canonicalized (zero diagrams are dropped); coefficients are
    exact rationals.  Mixing gradings raises GradingError.
    """
    acc = {}
    grade = None
    for d, c in pairs:
        c = Fraction(c)
        if c == 0:
            continue
        sd = canonicalize(d)
        if sd.is_zero:
            continue
        g = (sd.diagram.ctype,) + grading(sd.diagram)
        if grade is None:
            grade = g
        elif g != grade:
            raise GradingError(f"mixed gradings {grade} and {g}")
        acc[sd.diagram] = acc.get(sd.diagram, Fraction(0)) + sd.sign * c
    return GraphVector({d: c for d, c in acc.items() if c != 0})


def vector_add(u: GraphVector, v: GraphVector) -> GraphVector:
    gu, gv = u.grading, v.grading
    if gu is not None and gv is not None and gu != gv:
        raise GradingError(f"cannot add gradings {gu} and {gv}")
    acc = dict(u._terms)
    for d, c in v._terms.items():
        c2 = acc.get(d, Fraction(0)) + c
        if c2 == 0:
            acc.pop(d, None)
        else:
            acc[d] = c2
    return GraphVector(acc)


def vector_scale(c, v: GraphVector) -> GraphVector:
    c = Fraction(c)
    if c == 0:
        return ZERO_VECTOR
    return GraphVector({d: c * x for d, x in v._terms.items()})


def pairing(u: GraphVector, v: GraphVector) -> Fraction:
    """Diagram-basis inner product: sum of coefficient products over the
    shared support."""
    gu, gv = u.grading, v.grading
    if gu is not None and gv is not None and gu != gv:
        raise GradingError(f"cannot pair gradings {gu} and {gv}")
    small, large = (u, v) if len(u) <= len(v) else (v, u)
    total = Fraction(0)
    for d, c in small._terms.items():
        total += c * large._terms.get(d, Fraction(0))
    return total
