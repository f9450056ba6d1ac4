"""Finite-dimensional von Neumann algebra machinery.

Algebras are unital *-closed spans of matrices, stored with a basis that is
orthonormal in the Hilbert-Schmidt inner product tr(A* B); membership tests
are then projection residuals with a single threshold.  Commutants come from
the null space of the stacked commutator map, centers from span intersection,
and the GNS construction from the Gram matrix of the state.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numkit import (Tolerance, dagger, default_tolerance, load_matrix_csv,
                     save_matrix_csv)

# an element belongs to a span when its orthogonal residual is below
# MEMBERSHIP_RTOL times its own norm
MEMBERSHIP_RTOL = 1e-9


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product tr(A* B)."""
    return complex(np.sum(np.conj(a) * b))


def orthonormalize_span(mats: np.ndarray, rank_rtol: float = 1e-11) -> np.ndarray:
    """Orthonormal HS basis of span{mats}; rank decided by SVD threshold."""
    mats = np.asarray(mats, dtype=complex)
    k, n, _ = mats.shape
    flat = mats.reshape(k, n * n)
    _, s, vh = np.linalg.svd(flat, full_matrices=False)
    keep = s > rank_rtol * (s[0] if s.size else 1.0)
    return vh[keep].reshape(-1, n, n)


class OperatorAlgebra:
    """A *-closed unital span of matrices on C^dim with orthonormal basis."""

    def __init__(self, dim: int, basis: np.ndarray, *, generators=None,
                 orthonormal: bool = False):
        basis = np.asarray(basis, dtype=complex)
        if basis.ndim != 3 or basis.shape[1:] != (dim, dim):
            raise ValueError("basis must be a stack of dim x dim matrices")
        if not orthonormal:
            basis = orthonormalize_span(basis)
        self.dim = dim
        self.basis = basis
        self.generators = None if generators is None else np.asarray(generators, complex)
        self.commutant_hint: "OperatorAlgebra | None" = None

    @property
    def size(self) -> int:
        """Linear dimension of the algebra."""
        return self.basis.shape[0]

    def _flat(self) -> np.ndarray:
        return self.basis.reshape(self.size, -1)

    def project(self, x: np.ndarray) -> np.ndarray:
        """Orthogonal projection of x onto the span."""
        f = self._flat()
        coeff = f.conj() @ x.flatten()
        return (coeff @ f).reshape(self.dim, self.dim)

    def coefficients(self, x: np.ndarray) -> np.ndarray:
        return self._flat().conj() @ x.flatten()

    def member_residual(self, x: np.ndarray) -> float:
        """Norm of the component of x orthogonal to the span."""
        return float(np.linalg.norm(x - self.project(x)))

    def contains(self, x: np.ndarray, rtol: float = MEMBERSHIP_RTOL) -> bool:
        nx = float(np.linalg.norm(x))
        if nx == 0.0:
            return True
        return self.member_residual(x) <= rtol * nx

    def element(self, coeff: np.ndarray) -> np.ndarray:
        """Linear combination of basis matrices."""
        coeff = np.asarray(coeff, dtype=complex)
        return np.tensordot(coeff, self.basis, axes=(0, 0))

    def validate(self, tol: Tolerance | None = None) -> dict:
        """Check identity membership, *-closure and product closure; return
        the worst residual of each kind."""
        worst = {"identity": self.member_residual(np.eye(self.dim))}
        adj = 0.0
        prod = 0.0
        for b in self.basis:
            adj = max(adj, self.member_residual(dagger(b)))
            for c in self.basis:
                prod = max(prod, self.member_residual(b @ c))
        worst["adjoint"] = adj
        worst["product"] = prod
        return worst

    def __repr__(self):
        return f"OperatorAlgebra(dim={self.dim}, size={self.size})"


def full_matrix_algebra(n: int) -> OperatorAlgebra:
    """All of B(C^n); matrix units are already HS-orthonormal."""
    units = matrix_units(n)
    alg = OperatorAlgebra(n, units, orthonormal=True)
    return alg


def matrix_units(n: int) -> np.ndarray:
    units = np.zeros((n * n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            units[i * n + j, i, j] = 1.0
    return units


def scalar_algebra(n: int) -> OperatorAlgebra:
    return OperatorAlgebra(n, np.eye(n)[None, :, :] / np.sqrt(n), orthonormal=True)


def tensor_factor_algebra(d: int, m: int, side: str = "left") -> OperatorAlgebra:
    """M_d (x) 1_m on C^(d m) (side='left'), or 1_d (x) M_m (side='right').

    The two constructions are each other's commutant; the hint is attached so
    structured models avoid the generic null-space solve (cross-checked against
    it in the test suite at small dimensions).
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    eye_m, eye_d = np.eye(m), np.eye(d)
    left_b = np.stack([np.kron(u, eye_m) for u in matrix_units(d)]) / np.sqrt(m)
    right_b = np.stack([np.kron(eye_d, u) for u in matrix_units(m)]) / np.sqrt(d)
    left = OperatorAlgebra(d * m, left_b, orthonormal=True)
    right = OperatorAlgebra(d * m, right_b, orthonormal=True)
    left.commutant_hint = right
    right.commutant_hint = left
    return left if side == "left" else right


def vn_closure(generators, dim: int) -> OperatorAlgebra:
    """Smallest unital *-closed product-closed span containing the generators.

    Iterates pairwise products to a fixed point; the dim^2 cap can only trip
    on a logic error since B(C^dim) has dimension dim^2.
    """
    mats = [np.eye(dim, dtype=complex)]
    for g in generators:
        g = np.asarray(g, dtype=complex)
        if g.shape != (dim, dim):
            raise ValueError("generator dimension mismatch")
        mats.append(g)
        mats.append(dagger(g))
    basis = orthonormalize_span(np.stack(mats))
    while True:
        products = np.einsum("aij,bjk->abik", basis, basis).reshape(-1, dim, dim)
        grown = orthonormalize_span(np.concatenate([basis, products]))
        if grown.shape[0] == basis.shape[0]:
            break
        if grown.shape[0] > dim * dim:
            raise RuntimeError("closure exceeded dim^2 basis elements")
        basis = grown
    gens = np.stack([np.asarray(g, complex) for g in generators]) if len(generators) else None
    return OperatorAlgebra(dim, basis, generators=gens, orthonormal=True)


def commutant(a: OperatorAlgebra, use_hint: bool = True) -> OperatorAlgebra:
    """{X : [b, X] = 0 for all b in the algebra}.

    Solved as the null space of the stacked commutator map over the algebra's
    generating set (basis if no generators are recorded).  A structured
    commutant_hint short-circuits the solve unless use_hint is False.
    """
    if use_hint and a.commutant_hint is not None:
        return a.commutant_hint
    n = a.dim
    gens = a.generators if a.generators is not None else a.basis
    eye = np.eye(n)
    blocks = []
    for g in gens:
        blocks.append(np.kron(g, eye) - np.kron(eye, g.T))
        blocks.append(np.kron(dagger(g), eye) - np.kron(eye, g.conj()))
    stacked = np.concatenate(blocks, axis=0)  # >= n^2 rows, so the economy
    _, s, vh = np.linalg.svd(stacked, full_matrices=False)  # V is complete
    # scale floor: a commutator map that is numerically zero (e.g. scalars)
    # must not shrink the null-space threshold to roundoff
    scale = max(float(np.max(np.abs(g))) for g in gens)
    smax = max(s[0] if s.size else 0.0, scale, 1e-300)
    null_mask = np.zeros(n * n, dtype=bool)
    null_mask[: s.size] = s <= 1e-11 * smax
    null_mask[s.size:] = True
    kernel = vh[null_mask].conj()
    basis = orthonormalize_span(kernel.reshape(-1, n, n))
    return OperatorAlgebra(n, basis, orthonormal=True)


def span_intersection(flat_u: np.ndarray, flat_v: np.ndarray,
                      angle_tol: float = 1e-9) -> np.ndarray:
    """Intersection of two spans given by orthonormal row stacks (flattened)."""
    m = flat_u.conj() @ flat_v.T
    p, s, _ = np.linalg.svd(m)
    keep = s >= 1.0 - angle_tol
    return (p[:, keep].T @ flat_u)


def center_and_factor(a: OperatorAlgebra) -> tuple[OperatorAlgebra, bool]:
    """Center A ∩ A' and the factor flag (center of linear dimension one)."""
    comm = commutant(a)
    inter = span_intersection(a._flat(), comm._flat())
    basis = orthonormalize_span(inter.reshape(-1, a.dim, a.dim))
    center = OperatorAlgebra(a.dim, basis, orthonormal=True)
    return center, center.size == 1


def _eigenvalue_clusters(w: np.ndarray, gap_rtol: float = 1e-8) -> list[np.ndarray]:
    """Indices of eigenvalues grouped by gaps (w sorted ascending)."""
    scale = max(1.0, float(np.max(np.abs(w))))
    clusters = [[0]]
    for i in range(1, w.size):
        if w[i] - w[i - 1] > gap_rtol * scale:
            clusters.append([])
        clusters[-1].append(i)
    return [np.array(c) for c in clusters]


def minimal_projector(a: OperatorAlgebra, rng: np.random.Generator | None = None,
                      max_iter: int = 20) -> np.ndarray:
    """A projector E in the algebra with EAE one-dimensional.

    Compresses by spectral projectors of generic Hermitian elements until the
    corner EAE collapses to scalars; every finite-dimensional algebra gets
    there because the projector rank strictly drops while the corner stays
    larger than one-dimensional.
    """
    rng = rng or np.random.default_rng(0)
    n = a.dim
    proj = np.eye(n, dtype=complex)
    for _ in range(max_iter):
        corner = orthonormalize_span(
            np.einsum("ij,ajk,kl->ail", proj, a.basis, proj))
        if corner.shape[0] == 1:
            return proj
        coeff = rng.standard_normal(corner.shape[0])
        h = np.tensordot(coeff, corner, axes=(0, 0))
        h = 0.5 * (h + dagger(h))
        w, v = np.linalg.eigh(h)
        nonzero = np.abs(w) > 1e-8 * max(1.0, float(np.max(np.abs(w))))
        clusters = [c for c in _eigenvalue_clusters(w) if nonzero[c].all()]
        if not clusters:
            continue  # unlucky draw: h vanished on the corner
        c = clusters[0]
        proj = v[:, c] @ dagger(v[:, c])
    raise RuntimeError("minimal projector search did not terminate")


def cyclic_separating(a: OperatorAlgebra, omega: np.ndarray,
                      tol: Tolerance | None = None) -> tuple[bool, bool]:
    """(is_cyclic, is_separating) for a unit vector.

    Cyclic iff the algebra orbit spans the ambient space; separating iff the
    vector is cyclic for the commutant.
    """
    tol = tol or default_tolerance()
    omega = np.asarray(omega, dtype=complex)
    nrm = float(np.linalg.norm(omega))
    if nrm == 0.0:
        raise ValueError("zero vector")
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError("omega must be normalized")
    is_cyclic = _orbit_rank(a, omega) == a.dim
    is_sep = _orbit_rank(commutant(a), omega) == a.dim
    return is_cyclic, is_sep


def _orbit_rank(a: OperatorAlgebra, omega: np.ndarray) -> int:
    orbit = np.einsum("aij,j->ai", a.basis, omega)
    s = np.linalg.svd(orbit, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > 1e-10 * s[0]))


def save_algebra(alg: OperatorAlgebra, directory, name: str = "algebra") -> str:
    """Serialize an algebra as JSON with basis matrices in CSV blocks.

    Writes `<name>.json` holding {ambient_dim, basis: [csv filenames]} next to
    one CSV file per basis matrix; returns the JSON path.
    """
    os.makedirs(directory, exist_ok=True)
    refs = []
    for i, b in enumerate(alg.basis):
        ref = f"{name}_basis_{i:03d}.csv"
        save_matrix_csv(os.path.join(directory, ref), b)
        refs.append(ref)
    path = os.path.join(directory, f"{name}.json")
    with open(path, "w") as fh:
        json.dump({"ambient_dim": alg.dim, "basis": refs}, fh, indent=1)
    return path


def load_algebra(json_path) -> OperatorAlgebra:
    with open(json_path) as fh:
        spec = json.load(fh)
    base = os.path.dirname(json_path)
    basis = np.stack([load_matrix_csv(os.path.join(base, ref))
                      for ref in spec["basis"]])
    return OperatorAlgebra(spec["ambient_dim"], basis, orthonormal=True)


@dataclass
class GnsRep:
    """GNS data for a state on the full matrix algebra M_d."""

    source_dim: int
    dim: int
    vector: np.ndarray
    represent: Callable[[np.ndarray], np.ndarray]
    algebra: OperatorAlgebra


def gns(rho: np.ndarray, tol: Tolerance | None = None) -> GnsRep:
    """GNS representation of omega = tr(rho .) on M_d.

    The algebra with inner product <a, b> = omega(a* b) is quotiented by its
    null space; left multiplication descends to the quotient and the class of
    the identity is the GNS vector, so <Omega, pi(x) Omega> = omega(x).
    """
    tol = tol or default_tolerance()
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    w = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))
    if w.min() < -tol.abs or abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError("gns needs a positive, unit-trace density matrix")

    # Gram of the matrix-unit basis: <E_ij, E_kl> = delta_ik rho[l, j]
    gram = np.einsum("ik,lj->ijkl", np.eye(d), rho).reshape(d * d, d * d)
    gw, gv = np.linalg.eigh(0.5 * (gram + dagger(gram)))
    keep = gw > 1e-12 * max(1.0, gw.max())
    sq = np.sqrt(gw[keep])
    v = gv[:, keep]

    def represent(x: np.ndarray) -> np.ndarray:
        left = np.kron(np.asarray(x, complex), np.eye(d))
        return (sq[:, None] * (dagger(v) @ left @ v)) / sq[None, :]

    vector = sq * (dagger(v) @ np.eye(d).flatten())
    basis = np.stack([represent(u) for u in matrix_units(d)])
    algebra = OperatorAlgebra(int(keep.sum()), basis)
    return GnsRep(source_dim=d, dim=int(keep.sum()), vector=vector,
                  represent=represent, algebra=algebra)
