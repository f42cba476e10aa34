"""Orthonormal frames on the SU(N) manifold, Haar sampling, and the group action."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .liealg import GeneratorBasis

__all__ = [
    "ManifoldError",
    "ManifoldPoint",
    "wedge_complement",
    "assemble_unitary",
    "haar_unitaries",
    "haar_sample",
    "haar_points",
    "group_element",
    "rotate_point",
    "frame_to_csv",
    "frame_from_csv",
]

ORTHO_TOL = 1e-10


class ManifoldError(ValueError):
    pass


def _orthonormality_error(z: np.ndarray) -> float:
    g = z.conj() @ z.T
    return float(np.abs(g - np.eye(len(z))).max())


@dataclass(frozen=True)
class ManifoldPoint:
    """``N-1`` orthonormal complex N-vectors; row ``i-1`` holds the 1-based ``z[i]``."""

    z: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=complex)
        if z.ndim != 2 or z.shape[0] != z.shape[1] - 1 or z.shape[1] < 2:
            raise ManifoldError(f"expected shape (N-1, N), got {z.shape}")
        err = _orthonormality_error(z)
        if err > ORTHO_TOL:
            raise ManifoldError(f"frame is not orthonormal (error {err:.2e})")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @property
    def N(self) -> int:
        return self.z.shape[1]

    def orthonormality_error(self) -> float:
        return _orthonormality_error(self.z)


def wedge_complement(z) -> np.ndarray:
    """Unit vector completing the columns ``z`` to a matrix with determinant 1.

    Entry ``j`` is the conjugated cofactor of position ``(j, N)``, i.e. the
    generalized cross product of the conjugated input vectors.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2 or z.shape[0] != z.shape[1] - 1:
        raise ManifoldError(f"expected N-1 vectors of length N, got shape {z.shape}")
    err = _orthonormality_error(z)
    if err > ORTHO_TOL:
        raise ManifoldError(f"input vectors are not orthonormal (error {err:.2e})")
    N = z.shape[1]
    cols = z.T
    cof = np.empty(N, dtype=complex)
    for j in range(N):
        minor = np.delete(cols, j, axis=0)
        cof[j] = (-1) ** (j + N - 1) * np.linalg.det(minor)
    return cof.conj()


def assemble_unitary(p: ManifoldPoint) -> np.ndarray:
    return np.column_stack([p.z.T, wedge_complement(p.z)])


def haar_unitaries(N: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` Haar-random SU(N) matrices, shape ``(count, N, N)``.

    Orthonormalize a complex Ginibre matrix by QR, multiply each column by
    the phase of the matching diagonal entry of R, then divide the last
    column by the determinant.
    """
    g = rng.standard_normal((count, N, N)) + 1j * rng.standard_normal((count, N, N))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=1, axis2=2)
    q = q * (d / np.abs(d))[:, None, :]
    det = np.linalg.det(q)
    q[:, :, -1] /= det[:, None]
    return q


def haar_points(N: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Frames only: shape ``(count, N-1, N)`` with rows ``z[1..N-1]``."""
    u = haar_unitaries(N, count, rng)
    return np.transpose(u[:, :, : N - 1], (0, 2, 1))


def haar_sample(N: int, seed: int) -> ManifoldPoint:
    if N < 2:
        raise ManifoldError(f"N must be >= 2, got {N}")
    rng = np.random.default_rng(seed)
    return ManifoldPoint(haar_points(N, 1, rng)[0])


def group_element(theta: Sequence[float], gens: GeneratorBasis) -> np.ndarray:
    """``exp(i sum_a theta^a Lambda^a / 2)``."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (gens.dim,):
        raise ManifoldError(f"theta must have {gens.dim} components")
    return expm(0.5j * np.tensordot(theta, gens.lambdas, axes=1))


def rotate_point(p: ManifoldPoint, theta: Sequence[float], gens: GeneratorBasis) -> ManifoldPoint:
    if gens.N != p.N:
        raise ManifoldError(f"point has N={p.N}, generators N={gens.N}")
    g = group_element(theta, gens)
    return ManifoldPoint((g @ p.z.T).T)


def frame_to_csv(p: ManifoldPoint) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "alpha", "re", "im"])
    for i, vec in enumerate(p.z, start=1):
        for alpha, x in enumerate(vec, start=1):
            w.writerow([i, alpha, repr(float(x.real)), repr(float(x.imag))])
    return buf.getvalue()


def frame_from_csv(text: str) -> ManifoldPoint:
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ManifoldError("empty frame file")
    n_vec = max(int(r["i"]) for r in rows)
    z = np.zeros((n_vec, n_vec + 1), dtype=complex)
    for r in rows:
        z[int(r["i"]) - 1, int(r["alpha"]) - 1] = complex(float(r["re"]), float(r["im"]))
    return ManifoldPoint(z)
