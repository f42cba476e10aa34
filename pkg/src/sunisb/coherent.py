"""Coherent states built from irreducible Schwinger bosons.

The projected state in irrep ``[n_1, ..., n_{N-1}]`` at frame ``z`` is::

    (z[N-1].A^dag[N-1])^{n_{N-1}} / n_{N-1}!  ...  (z[1].A^dag[1])^{n_1} / n_1!  |0>

with the plet-1 factors acting first.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence

import numpy as np
from scipy.linalg import expm

from .fock import Amplitude, StateVector, combine, norm, vacuum
from .isb import IrrepLabel, color_assignments, irrep_basis, irreps_up_to, isb_create, _monomial
from .liealg import MatrixRep, build_gell_mann, matrix_rep
from .manifold import ManifoldPoint, haar_points, rotate_point

__all__ = [
    "CoherentState",
    "CoherentError",
    "hw_coherent",
    "coherent_state",
    "coherent_family",
    "structure_function",
    "structure_expansion",
    "irrep_rep",
    "covariance_check",
    "identity_resolution",
    "su2_euler_coefficients",
    "euler_cross_check",
]

CHUNK = 1000


class CoherentError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoherentState:
    irrep: IrrepLabel
    point: ManifoldPoint
    vector: StateVector
    normalized: bool = False

    def components(self, rep: MatrixRep | None = None) -> np.ndarray:
        """Coordinates in the orthonormalized irrep basis."""
        rep = rep or irrep_rep(self.irrep)
        return rep.components(self.vector)


def hw_coherent(z: complex, cutoff: int, normalize: bool = False) -> StateVector:
    """Truncated ``exp(z a^dag)|0>`` on the single mode ``(1, 1)``.

    Exact (int, Fraction or Amplitude) ``z`` gives exact amplitudes.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if isinstance(z, (int, Fraction, Amplitude)) and not normalize:
        z = Amplitude.coerce(z)
        coef = Amplitude(1)
    else:
        z = complex(z)
        coef = 1.0 + 0j
    terms = {}
    for n in range(cutoff + 1):
        if n:
            coef = coef * z / n
        terms[(n, 0)] = coef
    v = StateVector(2, terms)
    if normalize:
        v = v * (1.0 / norm(v))
    return v


def _dot_isb(k: int, z: np.ndarray, v: StateVector) -> StateVector:
    return combine(((complex(z[alpha]), isb_create(k, alpha + 1, v))
                    for alpha in range(len(z)) if z[alpha] != 0), v.N)


def coherent_state(irrep: IrrepLabel, p: ManifoldPoint, normalize: bool = False) -> CoherentState:
    if p.N != irrep.N:
        raise CoherentError(f"point has N={p.N}, irrep has N={irrep.N}")
    v = vacuum(irrep.N).to_complex()
    for k, n in enumerate(irrep.rows, start=1):
        for _ in range(n):
            v = _dot_isb(k, p.z[k - 1], v)
        v = v * (1.0 / math.factorial(n))
    if v.is_zero():
        raise CoherentError(f"coherent state vanished for {irrep}")
    if normalize:
        v = v * (1.0 / norm(v))
    return CoherentState(irrep, p, v, normalize)


def coherent_family(p: ManifoldPoint, total_quanta_bound: int) -> Dict[IrrepLabel, CoherentState]:
    """Every irrep projection of the generating function with ``sum n_i <= bound``."""
    return {lab: coherent_state(lab, p) for lab in irreps_up_to(p.N, total_quanta_bound)}


def structure_function(irrep: IrrepLabel, p: ManifoldPoint, colors: Sequence[Sequence[int]]) -> complex:
    if len(colors) != irrep.N - 1 or any(len(r) != n for r, n in zip(colors, irrep.rows)):
        raise CoherentError(f"colors {colors} do not match shape {irrep}")
    val = 1.0 + 0j
    for k, row in enumerate(colors):
        for alpha in row:
            val *= p.z[k, alpha - 1]
        val /= math.factorial(irrep.rows[k])
    return val


def structure_expansion(irrep: IrrepLabel, p: ManifoldPoint) -> StateVector:
    """``sum_colors F(colors) |colors>`` over all ordered color tuples."""
    pairs = []
    for colors in color_assignments(irrep, ordered=True):
        F = structure_function(irrep, p, colors)
        if F != 0:
            pairs.append((F, _monomial(irrep.N, colors)))
    return combine(pairs, irrep.N)


@functools.lru_cache(maxsize=64)
def irrep_rep(irrep: IrrepLabel) -> MatrixRep:
    return matrix_rep(irrep_basis(irrep), _gens(irrep.N))


@functools.lru_cache(maxsize=8)
def _gens(N):
    return build_gell_mann(N)


def covariance_check(irrep: IrrepLabel, p: ManifoldPoint, theta: Sequence[float],
                     rep: MatrixRep | None = None) -> float:
    """``|exp(i theta.Q)|p> - |rotate(p, theta)>| / ||p>|`` in the irrep basis."""
    rep = rep or irrep_rep(irrep)
    if rep.N != irrep.N:
        raise CoherentError("representation and irrep disagree on N")
    c = coherent_state(irrep, p).components(rep)
    c_rot = coherent_state(irrep, rotate_point(p, theta, _gens(irrep.N))).components(rep)
    U = expm(1j * np.tensordot(np.asarray(theta, dtype=float), rep.Q, axes=1))
    return float(np.linalg.norm(U @ c - c_rot) / np.linalg.norm(c))


# -- resolution of identity --------------------------------------------------


@functools.lru_cache(maxsize=64)
def _monomial_components(irrep: IrrepLabel):
    """Color index arrays and irrep-basis components for every ordered tuple."""
    rep = irrep_rep(irrep)
    colors, comps = [], []
    for cols in color_assignments(irrep, ordered=True):
        v = _monomial(irrep.N, cols)
        if v.is_zero():
            continue
        colors.append([(k, a - 1) for k, row in enumerate(cols) for a in row])
        comps.append(rep.components(v))
    return colors, np.array(comps).reshape(len(comps), rep.dim)


def _batch_components(irrep: IrrepLabel, z: np.ndarray) -> np.ndarray:
    """Normalized irrep-basis components for a stack of frames ``z``."""
    colors, comps = _monomial_components(irrep)
    norm_fact = 1.0 / math.prod(math.factorial(n) for n in irrep.rows)
    F = np.empty((len(z), len(colors)), dtype=complex)
    for t, idx in enumerate(colors):
        col = np.full(len(z), norm_fact, dtype=complex)
        for k, a in idx:
            col *= z[:, k, a]
        F[:, t] = col
    c = F @ comps
    return c / np.linalg.norm(c, axis=1, keepdims=True)


def _chunk_sums(irrep, seed, index, size):
    rng = np.random.default_rng([seed, index])
    c = _batch_components(irrep, haar_points(irrep.N, size, rng))
    P = c[:, :, None] * c[:, None, :].conj()
    return P.sum(axis=0), (P.real ** 2).sum(axis=0), (P.imag ** 2).sum(axis=0)


def identity_resolution(irrep: IrrepLabel, samples: int, seed: int, threads: int = 1) -> dict:
    """Monte Carlo estimate of the Haar average of normalized coherent projectors.

    Samples are drawn in fixed chunks keyed by ``(seed, chunk)`` and summed in
    chunk order, so the estimate does not depend on ``threads``.  Every entry
    of the estimate must lie within 5 of its own standard errors of
    ``c * delta_ab`` with ``c = Tr / dim``.
    """
    if samples < 100:
        raise ValueError("identity resolution needs at least 100 samples")
    d = irrep_rep(irrep).dim
    _monomial_components(irrep)  # warm the cache before threads race for it
    sizes = [min(CHUNK, samples - s) for s in range(0, samples, CHUNK)]
    work = [(irrep, seed, i, n) for i, n in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda a: _chunk_sums(*a), work))
    else:
        parts = [_chunk_sums(*a) for a in work]
    S1 = np.zeros((d, d), dtype=complex)
    S2r = np.zeros((d, d))
    S2i = np.zeros((d, d))
    for s1, s2r, s2i in parts:
        S1 += s1
        S2r += s2r
        S2i += s2i
    M = samples
    O = S1 / M
    c = float(np.trace(O).real / d)
    var_r = np.maximum(S2r / M - O.real ** 2, 0.0)
    var_i = np.maximum(S2i / M - O.imag ** 2, 0.0)
    se_r = np.sqrt(var_r / max(M - 1, 1))
    se_i = np.sqrt(var_i / max(M - 1, 1))
    dev = O - c * np.eye(d)
    off = ~np.eye(d, dtype=bool)
    max_off = float(np.abs(O[off]).max()) if d > 1 else 0.0
    max_diag = float(np.abs(np.diagonal(dev)).max())

    def zscore(x, se):
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.where(se > 0, np.abs(x) / se, np.where(np.abs(x) > 1e-12, np.inf, 0.0))
        return z

    z = np.maximum(zscore(dev.real, se_r), zscore(dev.imag, se_i))
    max_sigma = float(z.max())
    return {
        "irrep": list(irrep.rows),
        "N": irrep.N,
        "dim": d,
        "samples": M,
        "c": c,
        "max_offdiag": max_off,
        "max_diag_dev": max_diag,
        "stderr": float(max(se_r.max(), se_i.max())),
        "max_sigma": max_sigma,
        "pass": bool(max_sigma < 5.0),
        "seed": seed,
        "estimate": O,
    }


# -- SU(2) Euler-angle cross-check ---------------------------------------------


def su2_euler_coefficients(j, theta: float, phi: float, psi: float) -> np.ndarray:
    """``C_m`` for ``m = -j, ..., j`` (entry ``k`` has ``m = k - j``)."""
    two_j = 2 * j
    if abs(two_j - round(two_j)) > 1e-12 or two_j < 0:
        raise ValueError(f"j must be a non-negative half-integer, got {j}")
    two_j = int(round(two_j))
    j = two_j / 2
    out = np.empty(two_j + 1, dtype=complex)
    s, c = math.sin(theta / 2), math.cos(theta / 2)
    for k in range(two_j + 1):
        m = k - j
        binom = math.comb(two_j, k)
        out[k] = (np.exp(-1j * (m * phi + j * psi)) * math.sqrt(binom)
                  * s ** (two_j - k) * c ** k)
    return out


def euler_frame(theta: float, phi: float, psi: float) -> ManifoldPoint:
    """First column of ``exp(-i phi J3) exp(-i theta J2) exp(-i psi J3)`` for spin 1/2."""
    sig = _gens(2).lambdas
    U = expm(-0.5j * phi * sig[2]) @ expm(-0.5j * theta * sig[1]) @ expm(-0.5j * psi * sig[2])
    return ManifoldPoint(U[:, :1].T)


def euler_cross_check(j, theta: float, phi: float, psi: float):
    """Compare the normalized Schwinger coherent state with ``sum_m C_m |j,m>``.

    Returns ``(max_deviation, global_phase)``.
    """
    n = int(round(2 * j))
    C = su2_euler_coefficients(j, theta, phi, psi)
    st = coherent_state(IrrepLabel((n,), 2), euler_frame(theta, phi, psi), normalize=True)
    coeffs = np.array([
        complex(st.vector[(k, n - k)]) * math.sqrt(math.factorial(k) * math.factorial(n - k))
        for k in range(n + 1)
    ])
    ref = int(np.argmax(np.abs(C)))
    phase = coeffs[ref] / C[ref]
    phase /= abs(phase)
    return float(np.abs(coeffs - phase * C).max()), complex(phase)
