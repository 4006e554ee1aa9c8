"""Linear algebra over GF(q) and graded pieces of the invariant ring.

Matrices hold canonical-order codes in numpy integer arrays; row operations
go through the field's addition and multiplication tables with fancy
indexing, so the same code works for prime and extension fields.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import BudgetExceeded
from .gf import FieldElement, FieldSpec
from .group import GroupElement, generators
from .invariants import make_invariant, N, T
from .poly import Poly

MAX_COLUMNS = 5000


class DenseMatrix:
    """A rows x cols matrix over one field, stored as codes."""

    def __init__(self, spec: FieldSpec, data):
        self.spec = spec
        if isinstance(data, np.ndarray):
            arr = data.astype(np.int64, copy=True)
        else:
            arr = np.array([[spec(x).code if isinstance(x, FieldElement) else x for x in row]
                            for row in data], dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("DenseMatrix needs a two-dimensional grid")
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other):
        return (isinstance(other, DenseMatrix) and self.spec is other.spec
                and self.data.shape == other.data.shape and bool((self.data == other.data).all()))

    def __repr__(self):
        return f"DenseMatrix({self.spec!r}, {self.tolist()})"


def _tables(spec: FieldSpec):
    return (np.array(spec.add_t, dtype=np.int64), np.array(spec.mul_t, dtype=np.int64),
            np.array(spec.neg_t, dtype=np.int64))


def rref(M: DenseMatrix) -> tuple[DenseMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    spec = M.spec
    add, mul, neg = _tables(spec)
    R = M.data.copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = mul[spec.inv_t[int(R[r, col])]][R[r]]
        for i in np.nonzero(R[:, col])[0]:
            if i == r:
                continue
            factor = neg[R[i, col]]
            R[i] = add[R[i], mul[factor][R[r]]]
        pivots.append(col)
        r += 1
    return DenseMatrix(spec, R), pivots


def rank(M: DenseMatrix) -> int:
    return len(rref(M)[1])


def nullspace(M: DenseMatrix) -> list[list[int]]:
    """Basis of {v : M v = 0}, one vector per free column, in reduced form."""
    R, pivots = rref(M)
    spec = M.spec
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for row, pc in enumerate(pivots):
            v[pc] = spec.neg_t[int(R.data[row, f])]
        basis.append(v)
    return basis


def monomials(m: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree d in 2m variables, lexicographically descending."""
    n = 2 * m
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class GradedInvariantBasis:
    m: int
    d: int
    spec: FieldSpec
    basis: tuple

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _coeff_matrix(polys, monos, spec) -> DenseMatrix:
    index = {e: j for j, e in enumerate(monos)}
    data = np.zeros((len(polys), len(monos)), dtype=np.int64)
    for i, p in enumerate(polys):
        for e, c in p.coeff_codes().items():
            data[i, index[e]] = c
    return DenseMatrix(spec, data)


def invariant_basis(m: int, d: int, spec: FieldSpec,
                    gens: list[GroupElement] | None = None) -> GradedInvariantBasis:
    """Basis of the degree-d homogeneous invariants.

    Solves (A_g - I) c = 0 for every generator g, where column j of A_g holds
    the coefficients of g acting on the j-th monomial.
    """
    ncols = comb(2 * m + d - 1, d)
    if ncols > MAX_COLUMNS:
        raise BudgetExceeded(f"degree {d} at m={m} has {ncols} monomials (limit {MAX_COLUMNS})")
    gens = generators(spec) if gens is None else gens
    monos = monomials(m, d)
    index = {e: j for j, e in enumerate(monos)}
    n = len(monos)
    blocks = []
    for g in gens:
        A = np.zeros((n, n), dtype=np.int64)
        for j, e in enumerate(monos):
            image = g.act_poly(Poly.monomial(m, spec, e))
            for e2, c in image.coeff_codes().items():
                A[index[e2], j] = c
        # A - I
        for j in range(n):
            A[j, j] = spec.add_t[int(A[j, j])][spec.neg_t[1]]
        blocks.append(A)
    system = DenseMatrix(spec, np.vstack(blocks)) if blocks else DenseMatrix(spec, np.zeros((0, n)))
    if system.rows == 0:
        vecs = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    else:
        vecs = nullspace(system)
    basis = tuple(Poly(m, spec, {monos[j]: c for j, c in enumerate(v) if c}) for v in vecs)
    return GradedInvariantBasis(m, d, spec, basis)


def invariant_basis_up_to(m: int, D: int, spec: FieldSpec,
                          gens: list[GroupElement] | None = None) -> list[GradedInvariantBasis]:
    # homogeneous components of an invariant are invariant, since the action is linear
    return [invariant_basis(m, d, spec, gens) for d in range(1, D + 1)]


def in_span(polys, basis, spec: FieldSpec) -> bool:
    """True iff every poly lies in the span of basis (all homogeneous of one degree)."""
    polys, basis = list(polys), list(basis)
    if not polys:
        return True
    terms = set()
    for p in polys + basis:
        terms.update(p.coeff_codes())
    monos = sorted(terms, reverse=True)
    r_basis = rank(_coeff_matrix(basis, monos, spec)) if basis else 0
    return rank(_coeff_matrix(basis + polys, monos, spec)) == r_basis


def m1_exponent_pairs(d: int, q: int) -> list[tuple[int, int]]:
    """(a, b) with 2a + (q-1)b = d."""
    return [(a, b) for b in range(d // (q - 1) + 1) for a in [(d - (q - 1) * b) // 2]
            if a >= 0 and 2 * a + (q - 1) * b == d]


@dataclass(frozen=True)
class DegreeCheck:
    d: int
    expected_dim: int
    dim: int
    products_rank: int
    spans: bool

    @property
    def ok(self) -> bool:
        return (self.dim == self.expected_dim == self.products_rank) and self.spans


def check_m1_generation(spec: FieldSpec, D: int) -> tuple[bool, list[DegreeCheck]]:
    """Degree by degree, the products N_1^a T_1^b form a basis of the m = 1 invariants."""
    n1 = make_invariant(N(1), 1, spec)
    t1 = make_invariant(T(1), 1, spec)
    report = []
    for d in range(1, D + 1):
        pairs = m1_exponent_pairs(d, spec.q)
        basis = invariant_basis(1, d, spec)
        products = [n1 ** a * t1 ** b for a, b in pairs]
        monos = monomials(1, d)
        prank = rank(_coeff_matrix(products, monos, spec)) if products else 0
        spans = in_span(basis.basis, products, spec) and in_span(products, basis.basis, spec)
        report.append(DegreeCheck(d, len(pairs), basis.dim, prank, spans))
    return all(c.ok for c in report), report
