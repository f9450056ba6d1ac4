"""Kraus channels, strong local preparability, disentanglement, and
entanglement detection.

The preparation channel {|xi><e_i| (x) 1} turns any input into the product of
the target vector state and the untouched outer marginal; it depends only on
the target.  The single-isometry form of that operation (W*W = 1, WW* = E a
proper projector) has no finite-dimensional solution - the rank obstruction is
itself a checked artifact - which is why the channel form stands in for it.
Partial-transpose detection is restricted to 2x2 and 2x3 where it is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modular import purify
from .numkit import Tolerance, dagger, default_tolerance, norm2


@dataclass
class Channel:
    """A finite Kraus family; complete positivity is automatic."""

    kraus: np.ndarray  # (k, n, n)

    def __post_init__(self):
        self.kraus = np.asarray(self.kraus, dtype=complex)
        if self.kraus.ndim != 3 or self.kraus.shape[1] != self.kraus.shape[2]:
            raise ValueError("kraus operators must be a stack of square matrices")

    @property
    def dim(self) -> int:
        return self.kraus.shape[1]

    def trace_defect(self) -> float:
        total = np.einsum("kij,kil->jl", self.kraus.conj(), self.kraus)
        return norm2(total - np.eye(self.dim))

    def is_trace_preserving(self, tol: Tolerance | None = None) -> bool:
        tol = tol or default_tolerance()
        return self.trace_defect() <= tol.abs * self.dim


def kraus_apply(rho: np.ndarray, channel: Channel) -> np.ndarray:
    """sum_i K_i rho K_i*."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.dim, channel.dim):
        raise ValueError("state dimension does not match the channel")
    return np.einsum("kij,jl,kml->im", channel.kraus, rho, channel.kraus.conj())


def partial_trace(rho: np.ndarray, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one tensor factor of a bipartite density matrix."""
    d1, d2 = dims
    r = np.asarray(rho, dtype=complex).reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.einsum("ijkj->ik", r)
    if keep == 1:
        return np.einsum("ijil->jl", r)
    raise ValueError("keep must be 0 or 1")


def partial_transpose(rho: np.ndarray, dims: tuple[int, int],
                      which: int = 1) -> np.ndarray:
    d1, d2 = dims
    r = np.asarray(rho, dtype=complex).reshape(d1, d2, d1, d2)
    if which == 1:
        return r.transpose(0, 3, 2, 1).reshape(d1 * d2, d1 * d2)
    return r.transpose(2, 1, 0, 3).reshape(d1 * d2, d1 * d2)


@dataclass
class SplitData:
    """Tensor split C^{d1} (x) C^{d2}; the observed algebra sits inside the
    first factor.

    inner_split = (a, b) with a b = d1 models the preparation margin: the
    observed algebra is B(C^a) (x) 1_b (x) 1_{d2}, strictly smaller than
    B(H_1) (x) 1, and the b ancilla levels are what purification of targets
    uses."""

    d1: int
    d2: int
    inner_split: tuple[int, int] | None = None

    def __post_init__(self):
        if self.inner_split is not None:
            a, b = self.inner_split
            if a * b != self.d1:
                raise ValueError("inner split must factor d1")

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def inner_marginal(self, rho: np.ndarray) -> np.ndarray:
        """Marginal on the observed algebra."""
        first = partial_trace(rho, (self.d1, self.d2), keep=0)
        if self.inner_split is None:
            return first
        return partial_trace(first, self.inner_split, keep=0)

    def outer_marginal(self, rho: np.ndarray) -> np.ndarray:
        return partial_trace(rho, (self.d1, self.d2), keep=1)


def local_prepare_channel(split: SplitData, xi: np.ndarray) -> Channel:
    """Kraus family {|xi><e_i| (x) 1}: depends only on the target vector."""
    xi = np.asarray(xi, dtype=complex)
    if abs(np.linalg.norm(xi) - 1.0) > 1e-10:
        raise ValueError("target must be a unit vector")
    eye2 = np.eye(split.d2)
    ops = [np.kron(np.outer(xi, np.eye(split.d1)[i].conj()), eye2)
           for i in range(split.d1)]
    return Channel(np.stack(ops))


def local_prepare(split: SplitData, xi: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Prepare the vector state xi on the first factor, leave the rest alone."""
    return kraus_apply(rho, local_prepare_channel(split, xi))


@dataclass
class DisentangleResult:
    state: np.ndarray
    target: np.ndarray | None     # purifying vector inside H_1, if one fits
    channel: Channel | None       # None when the product-of-marginals fallback ran


def disentangle(split: SplitData, omega: np.ndarray) -> DisentangleResult:
    """Turn omega into an uncorrelated state with the same marginals.

    The target on the observed algebra is omega's own inner marginal,
    prepared as a vector state via purification into the margin levels.  When
    no margin can host the purification the product of marginals is returned
    directly (documented fallback; a vector target cannot carry a mixed
    marginal without ancilla room).
    """
    omega = np.asarray(omega, dtype=complex)
    rho_inner = split.inner_marginal(omega)
    ancilla = split.inner_split[1] if split.inner_split else 1
    rank = int(np.sum(np.linalg.eigvalsh(rho_inner) > 1e-12))
    if rank <= ancilla:
        xi = purify(rho_inner, ancilla)
        channel = local_prepare_channel(split, xi)
        return DisentangleResult(state=kraus_apply(omega, channel),
                                 target=xi, channel=channel)
    product = np.kron(partial_trace(omega, (split.d1, split.d2), 0),
                      split.outer_marginal(omega))
    return DisentangleResult(state=product, target=None, channel=None)


def is_entangled(rho: np.ndarray, dims: tuple[int, int],
                 tol: Tolerance | None = None) -> tuple[bool, float]:
    """Partial-transpose test, exact only for 2x2 and 2x3 (enforced)."""
    tol = tol or default_tolerance()
    d1, d2 = dims
    if d1 * d2 > 6:
        raise ValueError("partial-transpose criterion is only exact up to dim 6")
    w = np.linalg.eigvalsh(partial_transpose(rho, dims))
    min_eig = float(w.min())
    return min_eig < -tol.abs, min_eig


def haar_pure_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def genericity_scan(samples: int, seed: int, kind: str = "pure",
                    dims: tuple[int, int] = (2, 2)) -> dict:
    """Fraction of random states that are entangled.

    kind='pure': Haar vectors, Schmidt-rank test (entangled off a measure-zero
    set).  kind='product': explicit product controls.  kind='mixed':
    Hilbert-Schmidt random density matrices with the PT test (fraction lands
    strictly between 0 and 1; reported, not asserted).
    """
    if samples < 100:
        raise ValueError("use at least 100 samples")
    d1, d2 = dims
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        if kind == "pure":
            psi = haar_pure_state(rng, d1 * d2)
            s = np.linalg.svd(psi.reshape(d1, d2), compute_uv=False)
            hits += int(s.min() > 1e-10)
        elif kind == "product":
            psi = np.kron(haar_pure_state(rng, d1), haar_pure_state(rng, d2))
            s = np.linalg.svd(psi.reshape(d1, d2), compute_uv=False)
            hits += int(s.min() > 1e-10)
        elif kind == "mixed":
            g = rng.standard_normal((d1 * d2, d1 * d2)) \
                + 1j * rng.standard_normal((d1 * d2, d1 * d2))
            rho = g @ dagger(g)
            rho /= np.trace(rho).real
            flag, _ = is_entangled(rho, dims)
            hits += int(flag)
        else:
            raise ValueError(f"unknown scan kind {kind!r}")
    return {"kind": kind, "samples": samples, "entangled": hits,
            "fraction": hits / samples}


def isometry_impossibility_check(n: int, projector: np.ndarray,
                                 seed: int = 0, trials: int = 20) -> dict:
    """Certify that W*W = 1, WW* = E has no solution for a proper projector.

    rank(W*W) = rank(W) = rank(WW*) for every matrix W, so the two conditions
    force rank(E) = n.  Random W samples illustrate the rank equality; the
    certificate itself is the exact rank argument.
    """
    projector = np.asarray(projector, dtype=complex)
    if norm2(projector @ projector - projector) > 1e-10 \
            or norm2(projector - dagger(projector)) > 1e-10:
        raise ValueError("E must be an orthogonal projector")
    rank_e = int(round(np.trace(projector).real))
    rng = np.random.default_rng(seed)
    equal_ranks = True
    for _ in range(trials):
        w = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        r1 = np.linalg.matrix_rank(dagger(w) @ w)
        r2 = np.linalg.matrix_rank(w @ dagger(w))
        equal_ranks &= bool(r1 == r2)
    possible = rank_e == n
    reason = ("E = 1: any unitary solves the relation" if possible else
              "rank(W*W) = rank(WW*) for every W, but the relation would "
              f"force {n} = rank(1) = rank(W*W) = rank(WW*) = rank(E) = {rank_e}")
    return {"dim": n, "rank_e": rank_e, "possible": possible,
            "sampled_rank_checks": trials, "sampled_ranks_equal": equal_ranks,
            "reason": reason}


def bell_state(which: int = 0) -> np.ndarray:
    """The four maximally entangled qubit-pair vectors."""
    pairs = {0: (0, 3, 1), 1: (0, 3, -1), 2: (1, 2, 1), 3: (1, 2, -1)}
    i, j, sign = pairs[which]
    v = np.zeros(4, dtype=complex)
    v[i], v[j] = 1.0, sign
    return v / np.sqrt(2.0)


def werner_state(p: float) -> np.ndarray:
    b = bell_state(0)
    return p * np.outer(b, b.conj()) + (1.0 - p) * np.eye(4) / 4.0
