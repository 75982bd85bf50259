"""Exact rational sparse matrices for the differentials; ranks, kernels,
cohomology dimensions and explicit representatives.

Elimination is division-based over exact Fractions with deterministic
first-fit pivoting; every reported number comes from this exact path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagrams import GraphVector, canonicalize, graph_vector, to_json
from .differential import delta_terms
from .enumeration import ComplexBasis, enumerate_basis
from .errors import CompletenessError, NoClassError


@dataclass
class RationalMatrix:
    """Sparse exact-rational matrix, rows/columns tied to diagram bases."""

    nrows: int
    ncols: int
    entries: dict  # (row, col) -> nonzero Fraction
    row_basis: ComplexBasis = None
    col_basis: ComplexBasis = None

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.ncols,
            self.nrows,
            {(c, r): x for (r, c), x in self.entries.items()},
            row_basis=self.col_basis,
            col_basis=self.row_basis,
        )

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (r, c), x in other.entries.items():
            by_row.setdefault(r, []).append((c, x))
        acc = {}
        for (r, c), x in self.entries.items():
            for c2, y in by_row.get(c, ()):
                key = (r, c2)
                acc[key] = acc.get(key, Fraction(0)) + x * y
        return RationalMatrix(
            self.nrows,
            other.ncols,
            {k: v for k, v in acc.items() if v != 0},
        )

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> dict:
        return {r: x for (r, c), x in self.entries.items() if c == j}

    def rows_as_dicts(self):
        rows = [dict() for _ in range(self.nrows)]
        for (r, c), x in self.entries.items():
            rows[r][c] = x
        return rows


def _rref(rows, ncols):
    """In-place reduced row echelon form; returns the list of pivot columns.
    Pivot choice: for each column left to right, the first remaining row
    with a nonzero entry."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for t in range(r, nrows):
            if rows[t].get(c):
                pr = t
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = {j: x / piv for j, x in rows[r].items()}
        for t in range(nrows):
            if t == r:
                continue
            f = rows[t].get(c)
            if not f:
                continue
            rt = rows[t]
            for j, x in rows[r].items():
                y = rt.get(j, Fraction(0)) - f * x
                if y:
                    rt[j] = y
                else:
                    rt.pop(j, None)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(M: RationalMatrix) -> int:
    if getattr(M, "_rank", None) is None:
        rows = M.rows_as_dicts()
        M._rank = len(_rref(rows, M.ncols))
    return M._rank


def kernel_basis(M: RationalMatrix):
    """Kernel vectors as lists of Fractions, each normalized so its first
    nonzero entry is 1, ordered by free column."""
    rows = M.rows_as_dicts()
    pivots = _rref(rows, M.ncols)
    M._rank = len(pivots)
    pivot_set = set(pivots)
    out = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        vec = [Fraction(0)] * M.ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x = rows[r].get(f)
            if x:
                vec[c] = -x
        lead = next(x for x in vec if x)
        if lead != 1:
            vec = [x / lead for x in vec]
        out.append(vec)
    return out


def in_image(M: RationalMatrix, v) -> list | None:
    """A preimage x with M x = v (free coordinates zero), or None."""
    rows = M.rows_as_dicts()
    aug = M.ncols
    for r in range(M.nrows):
        x = v[r]
        if x:
            rows[r][aug] = Fraction(x)
    pivots = _rref(rows, aug + 1)
    if aug in pivots:
        return None
    x = [Fraction(0)] * M.ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r].get(aug, Fraction(0))
    return x


# --------------------------------------------------------------------------
# Matrices of the differentials
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def matrix_of_delta(ctype, k, m) -> RationalMatrix:
    """Matrix of the coboundary (k, m) -> (k, m+1); column j is the expansion
    of delta applied to the j-th basis diagram."""
    dom = enumerate_basis(ctype, k, m)
    cod = enumerate_basis(ctype, k, m + 1)
    entries = {}
    for j, b in enumerate(dom.diagrams):
        for dg, coeff in delta_terms(b):
            try:
                i = cod.index_of(dg)
            except KeyError:
                raise CompletenessError(
                    f"delta term {to_json(dg)} missing from basis "
                    f"({ctype}, {k}, {m + 1})"
                ) from None
            entries[(i, j)] = Fraction(coeff)
    return RationalMatrix(len(cod), len(dom), entries, row_basis=cod, col_basis=dom)


def matrix_of_partial(ctype, k, m) -> RationalMatrix:
    """Matrix of the boundary (k, m) -> (k, m-1): the transpose of delta."""
    if m < 1:
        dom = enumerate_basis(ctype, k, m)
        return RationalMatrix(0, len(dom), {}, col_basis=dom)
    return matrix_of_delta(ctype, k, m - 1).transpose()


def cohomology_dim(ctype, k, m) -> int:
    out = matrix_of_delta(ctype, k, m)
    nullity = out.ncols - rank(out)
    incoming = rank(matrix_of_delta(ctype, k, m - 1)) if m > 0 else 0
    return nullity - incoming


def homology_dim(ctype, k, m) -> int:
    out = matrix_of_partial(ctype, k, m)
    nullity = out.ncols - rank(out)
    incoming = rank(matrix_of_partial(ctype, k, m + 1))
    return nullity - incoming


# --------------------------------------------------------------------------
# Representatives
# --------------------------------------------------------------------------

def _vector_from_coords(basis: ComplexBasis, coords) -> GraphVector:
    return graph_vector(
        (basis.diagrams[i], c) for i, c in enumerate(coords) if c
    )


def coords_of(v: GraphVector, basis: ComplexBasis):
    out = [Fraction(0)] * len(basis)
    for d, c in v.items():
        out[basis.index_of(d)] = c
    return out


def cocycle_representative(ctype, k, m) -> GraphVector:
    """A kernel element of delta independent from the image of delta below;
    normalized so its first coefficient in basis order is 1."""
    M = matrix_of_delta(ctype, k, m)
    kern = kernel_basis(M)
    if m > 0:
        B = matrix_of_delta(ctype, k, m - 1)
        for vec in kern:
            if in_image(B, vec) is None:
                return _vector_from_coords(M.col_basis, vec)
    elif kern:
        return _vector_from_coords(M.col_basis, kern[0])
    raise NoClassError(f"H^({k},{m}) of the {ctype} complex is trivial")


def express_in_support(v: GraphVector, support) -> GraphVector | None:
    """A cohomologous vector supported inside ``support`` (a collection of
    diagrams), or None when no coboundary correction achieves that."""
    if v.is_zero:
        return v
    ctype, k, m = v.grading
    basis = enumerate_basis(ctype, k, m)
    keep = set()
    for d in support:
        sd = canonicalize(d)
        if not sd.is_zero:
            keep.add(sd.diagram)
    coords = coords_of(v, basis)
    outside = [i for i, d in enumerate(basis.diagrams) if d not in keep]
    if m == 0:
        return v if all(coords[i] == 0 for i in outside) else None
    B = matrix_of_delta(ctype, k, m - 1)
    # solve (rows outside the support) * u = -v_outside
    full_rows = B.rows_as_dicts()
    sub_entries = {
        (ri, c): x
        for ri, r in enumerate(outside)
        for c, x in full_rows[r].items()
    }
    sub = RationalMatrix(len(outside), B.ncols, sub_entries)
    target = [-coords[r] for r in outside]
    u = in_image(sub, target)
    if u is None:
        return None
    correction = [Fraction(0)] * len(basis)
    for (r, c), x in B.entries.items():
        if u[c]:
            correction[r] += x * u[c]
    result = [coords[i] + correction[i] for i in range(len(basis))]
    return _vector_from_coords(basis, result)


# --------------------------------------------------------------------------
# Export
# --------------------------------------------------------------------------

def format_matrix(M: RationalMatrix, row_name="", row_sum="", col_name="", col_sum=""):
    """Sparse triplet text: ``row col numerator/denominator`` lines preceded
    by a header naming the two basis cache files and their checksums."""
    lines = [
        "# graphc sparse matrix v1",
        f"# shape {M.nrows} {M.ncols}",
        f"# rows {row_name} sha256:{row_sum}",
        f"# cols {col_name} sha256:{col_sum}",
    ]
    for (r, c) in sorted(M.entries):
        x = M.entries[(r, c)]
        lines.append(f"{r} {c} {x.numerator}/{x.denominator}")
    return "\n".join(lines) + "\n"
