"""The coboundary (arc and regular-edge contraction) and its adjoint.

Sign rules: contracting an arc or an oriented edge running from vertex i to
vertex j contributes (-1)**j when j > i and (-1)**(i+1) when j < i;
contracting the even-type edge labelled alpha contributes
(-1)**(alpha + 1 + ve), with ve counted before the contraction.  Arcs are
oriented along the circle, including the wrap-around arc ve -> 1.

After a contraction the merged vertex takes the smaller label, the larger
label disappears, and every label above it shifts down by one; in even type
the contracted edge label disappears and larger labels shift down.  These
relabelling conventions, together with the signs above, are certified as an
ensemble by the delta-squared-is-zero check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .diagrams import (
    EVEN,
    ODD,
    ZERO,
    Diagram,
    GraphVector,
    SignedDiagram,
    canonicalize,
    graph_vector,
    to_json,
)
from .errors import NoArcError, NotContractibleError, StructuralError


def _vertex_rule_sign(i: int, j: int) -> int:
    if j > i:
        return -1 if j % 2 else 1
    return -1 if (i + 1) % 2 else 1


def contract_arc(d: Diagram, i: int) -> SignedDiagram:
    """Contract the circle arc from external vertex i to its successor."""
    if d.ve <= 1:
        raise NoArcError(f"no arcs on a diagram with ve={d.ve}")
    if not (1 <= i <= d.ve):
        raise StructuralError(f"external vertex {i} out of range 1..{d.ve}")
    j = i + 1 if i < d.ve else 1
    sign = _vertex_rule_sign(i, j)
    lo, hi = (i, j) if i < j else (j, i)

    def rel(v):
        if v == hi:
            return lo
        return v - 1 if v > hi else v

    new_edges = []
    new_orders = dict()
    old_orders = dict(d.loop_orders)
    for idx, (a, b) in enumerate(d.edges, start=1):
        if a != b and {a, b} == {i, j}:
            # the edge joining the merged endpoints becomes an external loop;
            # its half-edge order is (half formerly at i, half formerly at j)
            new_edges.append((rel(lo), rel(lo)))
            if d.ctype == ODD:
                new_orders[idx] = "ab" if a == i else "ba"
        else:
            na, nb = rel(a), rel(b)
            new_edges.append((na, nb))
            if idx in old_orders:
                new_orders[idx] = old_orders[idx]
    res = Diagram(
        d.ctype, d.ve - 1, d.vi, tuple(new_edges), tuple(sorted(new_orders.items()))
    )
    sd = canonicalize(res)
    if sd.is_zero:
        return ZERO
    return SignedDiagram(sign * sd.sign, sd.diagram)


def contract_edge(d: Diagram, idx: int) -> SignedDiagram:
    """Contract the regular edge at 1-based index (= label) ``idx``."""
    if not (1 <= idx <= d.e):
        raise StructuralError(f"edge index {idx} out of range 1..{d.e}")
    a, b = d.edges[idx - 1]
    if a == b:
        raise NotContractibleError("loops are never contractible")
    if a <= d.ve and b <= d.ve:
        raise NotContractibleError(f"edge ({a},{b}) has no internal endpoint")

    if d.ctype == EVEN:
        sign = -1 if (idx + 1 + d.ve) % 2 else 1
    else:
        sign = _vertex_rule_sign(a, b)

    if a <= d.ve or b <= d.ve:
        # external + internal: the merged vertex keeps the external label
        keep = a if a <= d.ve else b
        gone = b if a <= d.ve else a
        new_ve, new_vi = d.ve, d.vi - 1
    else:
        keep, gone = (a, b) if a < b else (b, a)
        new_ve, new_vi = d.ve, d.vi - 1

    def rel(v):
        if v == gone:
            return keep
        return v - 1 if v > gone else v

    new_edges = []
    new_orders = {}
    old_orders = dict(d.loop_orders)
    for t, (x, y) in enumerate(d.edges, start=1):
        if t == idx:
            continue
        new_idx = t if t < idx else t - 1
        new_edges.append((rel(x), rel(y)))
        if t in old_orders:
            new_orders[new_idx] = old_orders[t]
    res = Diagram(
        d.ctype, new_ve, new_vi, tuple(new_edges), tuple(sorted(new_orders.items()))
    )
    sd = canonicalize(res)
    if sd.is_zero:
        return ZERO
    return SignedDiagram(sign * sd.sign, sd.diagram)


def regular_edge_indices(d: Diagram):
    """1-based indices of the edges with at least one internal endpoint."""
    return [
        idx
        for idx, (a, b) in enumerate(d.edges, start=1)
        if a != b and (a > d.ve or b > d.ve)
    ]


@lru_cache(maxsize=None)
def delta_terms(d: Diagram):
    """Signed contractions of one canonical diagram, merged and sorted.

    Returns a tuple of (canonical diagram, integer coefficient) pairs.
    """
    acc = {}
    if d.ve >= 2:
        for i in range(1, d.ve + 1):
            sd = contract_arc(d, i)
            if not sd.is_zero:
                acc[sd.diagram] = acc.get(sd.diagram, 0) + sd.sign
    for idx in regular_edge_indices(d):
        sd = contract_edge(d, idx)
        if not sd.is_zero:
            acc[sd.diagram] = acc.get(sd.diagram, 0) + sd.sign
    return tuple(
        sorted(((dg, c) for dg, c in acc.items() if c), key=lambda t: to_json(t[0]))
    )


def delta(v: GraphVector) -> GraphVector:
    """Coboundary: signed sum of all arc and regular-edge contractions."""
    pairs = []
    for d, c in v.items():
        for dg, coeff in delta_terms(d):
            pairs.append((dg, c * coeff))
    return graph_vector(pairs)


def partial(v: GraphVector) -> GraphVector:
    """Boundary: the adjoint of delta in the canonical diagram basis.

    Implemented through the transpose: the coefficient of a basis diagram b
    in partial(v) is the coefficient of v's diagrams in delta(b).
    """
    from .enumeration import enumerate_basis

    if v.is_zero:
        return v
    ctype, k, m = v.grading
    if m == 0:
        return graph_vector([])
    basis = enumerate_basis(ctype, k, m - 1)
    pairs = []
    for b in basis.diagrams:
        c = Fraction(0)
        for dg, coeff in delta_terms(b):
            c += coeff * v.coefficient(dg)
        if c:
            pairs.append((b, c))
    return graph_vector(pairs)
