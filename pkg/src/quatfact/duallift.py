"""Lift of a pair of quaternion factorizations to dual quaternions.

Given two univariate factorizations of the same polynomial, each monic
linear factor v - h is extended to v - h + eps*d with an unknown dual
part d.  Requiring every extended factor to satisfy the Study conditions
(p conj(d) + d conj(p) = 0 and d + conj(d) = 0, where p = -h is the
constant primal part) and requiring both extended products to agree makes
a homogeneous linear system in the unknown dual parts: the dual part of a
product of dual-quaternion factors is linear in the d's because eps
squares to zero.  The nullspace of that system parametrizes the family of
spatial mechanisms realizing the motion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MismatchedPolynomials
from .quaternion import DEFAULT_EPS, Quaternion
from .quatpoly import QuatPoly
from .unifactor import Factorization

_GREEK = ("alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta")

DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class LiftSystem:
    """Homogeneous system matrix over the reals, with row/column metadata.

    Columns come in blocks of four (quaternion components w, x, y, z), one
    block per linear factor, first factorization first.  Row provenance
    tags are ("study", side, index), ("real", side, index) or
    ("coeff", i, j, component).
    """

    matrix: np.ndarray
    provenance: tuple
    layout: tuple
    f1: Factorization
    f2: Factorization

    def num_unknowns(self) -> int:
        return self.matrix.shape[1]

    def num_rows(self) -> int:
        return self.matrix.shape[0]

    def without_row(self, idx: int) -> "LiftSystem":
        keep = [r for r in range(self.matrix.shape[0]) if r != idx]
        return LiftSystem(self.matrix[keep], tuple(self.provenance[r] for r in keep),
                          self.layout, self.f1, self.f2)

    def study_row_indices(self):
        return [r for r, tag in enumerate(self.provenance) if tag[0] in ("study", "real")]


@dataclass(frozen=True)
class LiftSolution:
    """Nullspace basis of a lift system; rows are orthonormal basis vectors."""

    dimension: int
    basis: np.ndarray
    layout: tuple
    parameters: tuple

    def as_dict(self):
        return {
            "dimension": self.dimension,
            "basis": [[float(v) for v in row] for row in self.basis],
            "layout": [{"side": side, "index": idx} for side, idx in self.layout],
        }

    def contains(self, vector, eps: float = 1e-8) -> bool:
        """Whether the vector lies in the basis span (relative residual test)."""
        return self.membership_residual(vector) <= eps

    def membership_residual(self, vector) -> float:
        v = np.asarray(vector, dtype=float)
        if self.dimension == 0:
            proj = np.zeros_like(v)
        else:
            proj = self.basis.T @ (self.basis @ v)
        scale = np.linalg.norm(v)
        if scale == 0.0:
            return 0.0
        return float(np.linalg.norm(v - proj) / scale)


def _dual_product(factors, duals):
    """Primal and dual part of prod(factor_i + eps * dual_i)."""
    primal = QuatPoly.constant(Quaternion(1.0))
    dual = QuatPoly.zero()
    for f, d in zip(factors, duals):
        fp = f.as_poly()
        fd = QuatPoly.constant(d)
        dual = primal * fd + dual * fp
        primal = primal * fp
    return primal, dual


def _as_quaternions(vector, count):
    return [Quaternion(*(float(c) for c in vector[4 * k : 4 * k + 4]))
            for k in range(count)]


def _equation_values(f1, f2, duals1, duals2, support):
    values = []
    for factors, duals in ((f1.factors, duals1), (f2.factors, duals2)):
        for f, d in zip(factors, duals):
            p = -f.h
            study = p * d.conj() + d * p.conj()
            values.append(study.w)
            values.append(d.w + d.w)
    _, dual_a = _dual_product(f1.factors, duals1)
    _, dual_b = _dual_product(f2.factors, duals2)
    diff = dual_a - dual_b
    for (i, j) in support:
        c = diff.coeff(i, j)
        values.extend((c.w, c.x, c.y, c.z))
    return np.array(values)


def build_lift_system(f1: Factorization, f2: Factorization,
                      eps: float = DEFAULT_EPS) -> LiftSystem:
    """Assemble the linear system whose solutions are valid dual parts.

    Both inputs must be factorizations (with trivial real cofactor) of the
    same polynomial.  Rows comprise, per factor, the Study scalar and the
    vanishing real part of the dual unknown, plus four scalar rows per
    monomial equating the dual parts of the two extended products.
    Numerically zero rows are dropped.
    """
    if not f1.k_is_one(1e-8) or not f2.k_is_one(1e-8):
        raise MismatchedPolynomials("lift needs plain factorizations with cofactor 1")
    prod1, prod2 = f1.product(), f2.product()
    if not prod1.approx_eq(prod2, max(eps, 1e-8)):
        raise MismatchedPolynomials("factorizations do not represent the same polynomial")
    k1, k2 = len(f1.factors), len(f2.factors)
    n_unknowns = 4 * (k1 + k2)
    dt, ds = prod1.bidegree()
    support = [(i, j) for i in range(dt + 1) for j in range(ds + 1)]

    columns = []
    for col in range(n_unknowns):
        u = np.zeros(n_unknowns)
        u[col] = 1.0
        duals1 = _as_quaternions(u[: 4 * k1], k1)
        duals2 = _as_quaternions(u[4 * k1 :], k2)
        columns.append(_equation_values(f1, f2, duals1, duals2, support))
    matrix = np.column_stack(columns)

    provenance = []
    for side, fact in (("G", f1), ("H", f2)):
        for idx in range(1, len(fact.factors) + 1):
            provenance.append(("study", side, idx))
            provenance.append(("real", side, idx))
    for (i, j) in support:
        for comp in ("w", "x", "y", "z"):
            provenance.append(("coeff", i, j, comp))

    scale = np.max(np.abs(matrix)) if matrix.size else 0.0
    keep = [r for r in range(matrix.shape[0])
            if np.max(np.abs(matrix[r])) > 1e-13 * max(1.0, scale)]
    layout = tuple([("G", idx) for idx in range(1, k1 + 1)]
                   + [("H", idx) for idx in range(1, k2 + 1)])
    return LiftSystem(matrix[keep], tuple(provenance[r] for r in keep),
                      layout, f1, f2)


def solve_lift(system: LiftSystem, rank_tol: float = DEFAULT_RANK_TOL) -> LiftSolution:
    """Nullspace basis via singular value decomposition.

    Singular values below rank_tol times the largest count as zero.
    """
    matrix = system.matrix
    n = system.num_unknowns()
    if matrix.shape[0] == 0:
        basis = np.eye(n)
    else:
        _, sing, vh = np.linalg.svd(matrix)
        cutoff = rank_tol * (sing[0] if sing.size else 0.0)
        rank = int(np.sum(sing > cutoff))
        basis = vh[rank:]
    dim = basis.shape[0]
    names = tuple(_GREEK[k] if k < len(_GREEK) else f"p{k}" for k in range(dim))
    return LiftSolution(dim, basis, system.layout, names)


def verify_lift(f1: Factorization, f2: Factorization, assignment,
                eps: float = DEFAULT_EPS) -> float:
    """Residual of a dual-part assignment: product mismatch plus Study violations.

    The assignment is a flat vector of 4 reals per factor, first
    factorization first; the residual is normalized by the largest
    coefficient magnitude involved.
    """
    v = np.asarray(assignment, dtype=float)
    k1, k2 = len(f1.factors), len(f2.factors)
    duals1 = _as_quaternions(v[: 4 * k1], k1)
    duals2 = _as_quaternions(v[4 * k1 :], k2)
    _, dual_a = _dual_product(f1.factors, duals1)
    _, dual_b = _dual_product(f2.factors, duals2)
    worst = (dual_a - dual_b).max_coeff_norm()
    for factors, duals in ((f1.factors, duals1), (f2.factors, duals2)):
        for f, d in zip(factors, duals):
            p = -f.h
            study = p * d.conj() + d * p.conj()
            worst = max(worst, abs(study.w), 2.0 * abs(d.w))
    scale = max(1.0, f1.product().max_coeff_norm(),
                dual_a.max_coeff_norm(), dual_b.max_coeff_norm())
    return worst / scale
