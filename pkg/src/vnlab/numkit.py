"""Dense complex linear algebra kernel.

Hermitian spectral calculus (``herm_fn``), antilinear-operator arithmetic and
polar decomposition, and the real-linearization used to extract fixed-point
subspaces of antilinear involutions.

Antilinear maps are stored by their *conjugation matrix* ``M``: the map acts as
``v -> M @ conj(v)``.  With this convention the adjoint (defined through
``<phi, S psi> = <psi, S* phi>``) is plain transposition, and composition rules
are explicit:

    antilinear(A) o antilinear(B) = linear  A @ conj(B)
    antilinear(A) o linear(L)     = antilinear  A @ conj(L)
    linear(L) o antilinear(A)     = antilinear  L @ A
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerance:
    """Absolute / relative numerical slack shared by all modules."""

    abs: float = 1e-10
    rel: float = 1e-8

    def __post_init__(self):
        if self.abs <= 0 or self.rel <= 0:
            raise ValueError("tolerances must be positive")


_default_tol = Tolerance()


def default_tolerance() -> Tolerance:
    return _default_tol


def set_default_tolerance(tol: Tolerance) -> None:
    """Override the global default tolerance (affects subsequent calls only)."""
    global _default_tol
    _default_tol = tol


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def norm2(a: np.ndarray) -> float:
    """Spectral norm."""
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def is_hermitian(a: np.ndarray, tol: Tolerance | None = None) -> bool:
    tol = tol or _default_tol
    return bool(np.max(np.abs(a - dagger(a))) <= tol.abs * max(1.0, norm2(a)))


def is_positive(a: np.ndarray, tol: Tolerance | None = None) -> bool:
    """Positive semidefinite within tolerance (assumes Hermitian)."""
    tol = tol or _default_tol
    w = np.linalg.eigvalsh(0.5 * (a + dagger(a)))
    return bool(w.min() >= -tol.abs * max(1.0, abs(w.max())))


_HERM_FNS = ("exp", "log", "sqrt", "power", "ipower")


def herm_fn(h: np.ndarray, fn: str, t: float | None = None,
            tol: Tolerance | None = None) -> np.ndarray:
    """Spectral calculus f(H) = U f(diag) U* for Hermitian H.

    ``fn`` is one of ``exp``, ``log``, ``sqrt``, ``power`` (H**t) or
    ``ipower`` (H**(i t), unitary).  ``log``, ``ipower`` and ``power`` with a
    negative exponent require a strictly positive matrix; ``sqrt`` requires a
    positive semidefinite one.
    """
    tol = tol or _default_tol
    if fn not in _HERM_FNS:
        raise ValueError(f"unknown spectral function {fn!r}")
    if not is_hermitian(h, tol):
        raise ValueError("herm_fn requires a Hermitian matrix")
    if fn in ("power", "ipower") and t is None:
        raise ValueError(f"{fn} needs an exponent t")

    w, u = np.linalg.eigh(0.5 * (h + dagger(h)))
    scale = max(1.0, float(np.max(np.abs(w))))
    if fn == "exp":
        fw = np.exp(w)
    elif fn == "sqrt":
        if w.min() < -tol.abs * scale:
            raise ValueError("sqrt of a non-positive matrix")
        fw = np.sqrt(np.clip(w, 0.0, None))
    elif fn == "log" or fn == "ipower" or (fn == "power" and t < 0):
        if w.min() <= tol.abs * scale:
            raise ValueError(f"{fn} requires a strictly positive matrix")
        if fn == "log":
            fw = np.log(w)
        elif fn == "ipower":
            fw = np.exp(1j * t * np.log(w))
        else:
            fw = w ** t
    else:  # power, t >= 0
        fw = w ** t
    return (u * fw) @ dagger(u)


class AntilinearMap:
    """Antilinear operator v -> mat @ conj(v) on C^n."""

    __array_ufunc__ = None  # keep numpy from hijacking ndarray @ AntilinearMap

    def __init__(self, mat: np.ndarray):
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("antilinear map needs a square matrix")
        self.mat = mat

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def conjugation(cls, n: int) -> "AntilinearMap":
        """Plain componentwise conjugation."""
        return cls(np.eye(n))

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return self.mat @ np.conj(v)

    def adjoint(self) -> "AntilinearMap":
        """The antilinear adjoint: <phi, S psi> = <psi, S* phi>."""
        return AntilinearMap(self.mat.T)

    def squared(self) -> np.ndarray:
        """S o S as a (linear) matrix."""
        return self.mat @ np.conj(self.mat)

    def __matmul__(self, other):
        if isinstance(other, AntilinearMap):
            return self.mat @ np.conj(other.mat)
        return AntilinearMap(self.mat @ np.conj(np.asarray(other)))

    def __rmatmul__(self, other):
        return AntilinearMap(np.asarray(other) @ self.mat)

    def is_antiunitary(self, tol: Tolerance | None = None) -> bool:
        tol = tol or _default_tol
        n = self.dim
        return norm2(dagger(self.mat) @ self.mat - np.eye(n)) <= tol.abs * n

    def conjugate_linear_defect(self, rng: np.random.Generator,
                                trials: int = 8) -> float:
        """Max defect of map(c v) = conj(c) map(v) on random v, c."""
        worst = 0.0
        for _ in range(trials):
            v = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
            c = complex(rng.standard_normal(), rng.standard_normal())
            worst = max(worst, float(np.linalg.norm(
                self(c * v) - np.conj(c) * self(v))))
        return worst

    def __repr__(self):
        return f"AntilinearMap(dim={self.dim})"


def antilinear_polar(s: AntilinearMap, tol: Tolerance | None = None
                     ) -> tuple[AntilinearMap, np.ndarray]:
    """Polar decomposition S = J Delta^{1/2} of an invertible antilinear map.

    Delta = S* S is positive and linear, J = S Delta^{-1/2} is antiunitary.
    Returns (J, Delta).
    """
    tol = tol or _default_tol
    m = s.mat
    smin = float(np.linalg.svd(m, compute_uv=False).min())
    if smin <= tol.abs:
        raise ValueError("antilinear_polar requires an invertible map")
    delta = m.T @ np.conj(m)
    delta = 0.5 * (delta + dagger(delta))
    inv_sqrt = herm_fn(delta, "power", -0.5, tol)
    j = AntilinearMap(m @ np.conj(inv_sqrt))
    return j, delta


def real_linearize(op) -> np.ndarray:
    """Real 2n x 2n matrix of a (anti)linear map under v -> (Re v, Im v).

    Complex-linear L = X + iY becomes [[X, -Y], [Y, X]]; an AntilinearMap with
    conjugation matrix M = X + iY becomes [[X, Y], [Y, -X]].
    """
    if isinstance(op, AntilinearMap):
        x, y = op.mat.real, op.mat.imag
        return np.block([[x, y], [y, -x]])
    m = np.asarray(op, dtype=complex)
    x, y = m.real, m.imag
    return np.block([[x, -y], [y, x]])


def embed_real(v: np.ndarray) -> np.ndarray:
    """C^n vector -> stacked (Re, Im) in R^{2n}."""
    v = np.asarray(v, dtype=complex)
    return np.concatenate([v.real, v.imag])


def unembed_real(x: np.ndarray) -> np.ndarray:
    n = x.shape[0] // 2
    return x[:n] + 1j * x[n:]


def compose(f, g):
    """Composition f o g of linear (ndarray) and/or antilinear maps."""
    f_anti = isinstance(f, AntilinearMap)
    g_anti = isinstance(g, AntilinearMap)
    if f_anti and g_anti:
        return f.mat @ np.conj(g.mat)
    if f_anti:
        return AntilinearMap(f.mat @ np.conj(np.asarray(g)))
    if g_anti:
        return AntilinearMap(np.asarray(f) @ g.mat)
    return np.asarray(f) @ np.asarray(g)


def save_matrix_csv(path, a: np.ndarray) -> None:
    """Row-major CSV dump; header row is (rows, cols), entries as re,im pairs."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([a.shape[0], a.shape[1]])
        for row in a:
            flat = []
            for z in row:
                flat.extend([repr(float(z.real)), repr(float(z.imag))])
            writer.writerow(flat)


def load_matrix_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows, cols = (int(x) for x in next(reader))
        out = np.empty((rows, cols), dtype=complex)
        for i, line in enumerate(reader):
            vals = [float(x) for x in line]
            out[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    if out.shape != (rows, cols):
        raise ValueError("CSV matrix block does not match its header")
    return out
