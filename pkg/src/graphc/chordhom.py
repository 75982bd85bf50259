"""Chord-diagram spaces, the 4T and 1T relation generators, and the
cross-check of CD^{k,0}/(4T,1T) against the degree-0 graph homology.

The 4T generators are not transcribed from pictures: each one is produced as
the boundary of a signed sum of two diagrams with a single quadrivalent
external vertex, chosen so that their shared internal-vertex ("STU") term
cancels.  That makes every generator a boundary by construction and keeps it
consistent with the sign conventions certified by the nilpotency check.
"""

from __future__ import annotations

from fractions import Fraction

from .diagrams import (
    Diagram,
    GraphVector,
    edge_degrees,
    graph_vector,
    to_json,
    vector_add,
    vector_scale,
)
from .differential import partial
from .enumeration import ComplexBasis, enumerate_basis
from .errors import ConventionError
from .linalg import (
    RationalMatrix,
    coords_of,
    homology_dim,
    in_image,
    matrix_of_partial,
    rank,
)


def is_chord_diagram(d: Diagram) -> bool:
    """All vertices external, each carrying exactly one edge end."""
    if d.vi:
        return False
    deg = edge_degrees(d)
    return all(deg[v] == 1 for v in range(1, d.ve + 1))


def enumerate_chord_diagrams(ctype, k) -> ComplexBasis:
    """The chord diagrams of order k, as a sub-basis of the (k, 0) basis."""
    full = enumerate_basis(ctype, k, 0)
    chords = tuple(d for d in full.diagrams if is_chord_diagram(d))
    return ComplexBasis(ctype, k, 0, chords)


def _has_short_chord(d: Diagram) -> bool:
    for a, b in d.edges:
        lo, hi = (a, b) if a < b else (b, a)
        if hi - lo == 1 or (lo == 1 and hi == d.ve):
            return True
    return False


def one_t_generators(ctype, k):
    """One single-diagram generator per chord diagram with an isolated chord
    (endpoints adjacent on the circle)."""
    out = []
    for d in enumerate_chord_diagrams(ctype, k).diagrams:
        if _has_short_chord(d):
            out.append(graph_vector([(d, 1)]))
    return out


def _quadrivalent_chord_candidates(ctype, k):
    """(k,1) diagrams with no internal vertices and exactly one external
    vertex of edge-degree 2 through two distinct edges; these decollapse to
    chord diagrams plus one STU-type internal term."""
    out = []
    for d in enumerate_basis(ctype, k, 1).diagrams:
        if d.vi:
            continue
        if any(a == b for a, b in d.edges):
            continue  # loop diagrams feed the 1T relation, not 4T
        deg = edge_degrees(d)
        counts = sorted(deg[1:])
        if counts == [1] * (d.ve - 1) + [2]:
            out.append(d)
    return out


def four_t_generators(ctype, k):
    """4T relation generators, emitted as boundaries of signed pairs of
    single-quadrivalent-vertex diagrams whose internal-vertex term cancels."""
    groups = {}
    for d in _quadrivalent_chord_candidates(ctype, k):
        bd = partial(graph_vector([(d, 1)]))
        internal_terms = [(dg, c) for dg, c in bd.items() if dg.vi > 0]
        if not internal_terms:
            continue
        if len(internal_terms) > 1:
            raise ConventionError(
                f"{to_json(d)} decollapses to {len(internal_terms)} internal "
                "terms; expected at most one"
            )
        (stu, coeff), = internal_terms
        groups.setdefault(stu, []).append((d, coeff, bd))
    out = []
    for stu, members in sorted(groups.items(), key=lambda t: to_json(t[0])):
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                da, ca, bda = members[i]
                db, cb, bdb = members[j]
                if abs(ca) != abs(cb):
                    raise ConventionError(
                        f"no unit coefficient cancels the internal term "
                        f"shared by {to_json(da)} and {to_json(db)}"
                    )
                eps = -1 if ca == cb else 1
                gen = vector_add(bda, vector_scale(eps, bdb))
                if any(not is_chord_diagram(dg) for dg, _ in gen.items()):
                    raise ConventionError(
                        f"4T generator from {to_json(da)}, {to_json(db)} "
                        "is not supported on chord diagrams"
                    )
                if not gen.is_zero:
                    out.append(gen)
    return out


def _relation_matrix(ctype, k, generators):
    cd = enumerate_chord_diagrams(ctype, k)
    entries = {}
    for r, g in enumerate(generators):
        for dg, c in g.items():
            entries[(r, cd.index_of(dg))] = c
    return RationalMatrix(len(generators), len(cd), entries, col_basis=cd)


def chord_quotient_dim(ctype, k) -> int:
    """dim CD^{k,0} minus the rank of the span of the 4T and 1T generators."""
    gens = one_t_generators(ctype, k) + four_t_generators(ctype, k)
    cd = enumerate_chord_diagrams(ctype, k)
    if not gens:
        return len(cd)
    return len(cd) - rank(_relation_matrix(ctype, k, gens))


def compare_homology(ctype, k) -> dict:
    """Compare dim(CD/(4T,1T)) against the degree-0 graph homology; also
    verify that every relation generator is a boundary.  Any failure comes
    with a certificate vector in the report."""
    ones = one_t_generators(ctype, k)
    fours = four_t_generators(ctype, k)
    cd = enumerate_chord_diagrams(ctype, k)
    quotient = chord_quotient_dim(ctype, k)
    hom = homology_dim(ctype, k, 0)
    M = matrix_of_partial(ctype, k, 1)
    certificate = None
    boundary_ok = True
    for g in ones + fours:
        v = coords_of(g, M.row_basis)
        if in_image(M, v) is None:
            boundary_ok = False
            certificate = g
            break
    equal = quotient == hom
    if not equal and certificate is None:
        # quotient != homology: report the relation span itself as evidence
        certificate = (ones + fours)[0] if (ones or fours) else None
    return {
        "type": ctype,
        "k": k,
        "chord_dim": len(cd),
        "n_1t": len(ones),
        "n_4t": len(fours),
        "quotient_dim": quotient,
        "homology_dim": hom,
        "equal": equal,
        "generators_in_boundary_image": boundary_ok,
        "certificate": None if certificate is None else [
            [str(c), to_json(dg)] for dg, c in certificate.items()
        ],
    }
