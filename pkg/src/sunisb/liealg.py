"""Generalized Gell-Mann basis and the SU(N) generators on Fock space.

Generators act as ``Q^a = sum_i a^dag[i] (Lambda^a / 2) a[i]``.  Each
``Lambda^a`` is stored as ``scale * pattern`` with a Gaussian-rational
pattern, so off-diagonal generators (and any diagonal one whose scale is
rational) act exactly on exact states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .fock import (
    Amplitude,
    FockError,
    InvalidRankError,
    StateVector,
    _accumulate,
    _weight,
    combine,
    norm,
    number,
)

__all__ = [
    "GeneratorBasis",
    "MatrixRep",
    "LieAlgebraError",
    "build_gell_mann",
    "apply_generator",
    "apply_pattern",
    "apply_constraint",
    "check_lie_algebra",
    "check_casimir_commutation",
    "jacobi_residual",
    "matrix_rep",
    "quadratic_casimir",
]

TOL = 1e-10


class LieAlgebraError(ValueError):
    pass


def _exact_sqrt(q: Fraction):
    """Return ``sqrt(q)`` as a Fraction when it is rational, else ``None``."""
    p, r = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and r * r == q.denominator:
        return Fraction(p, r)
    return None


@dataclass(frozen=True)
class GeneratorBasis:
    N: int
    patterns: Tuple[Tuple[Tuple[Amplitude, ...], ...], ...]
    scale_sq: Tuple[Fraction, ...]
    lambdas: np.ndarray = field(repr=False)
    f: np.ndarray = field(repr=False)
    # (a, b) -> [(c, f^{abc})], 0-based, a < b, exact Fraction where possible
    structure: Dict[Tuple[int, int], List[Tuple[int, object]]] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.N * self.N - 1

    def scale(self, a: int):
        """Scale of generator ``a`` (1-based): Fraction if rational, else float."""
        s2 = self.scale_sq[a - 1]
        exact = _exact_sqrt(s2)
        return exact if exact is not None else math.sqrt(s2)

    def is_rational(self, a: int) -> bool:
        return _exact_sqrt(self.scale_sq[a - 1]) is not None

    def entries(self, a: int):
        """Nonzero ``(row, col, pattern/2)`` entries of generator ``a``."""
        pat = self.patterns[a - 1]
        return [
            (r, c, pat[r][c] / 2)
            for r in range(self.N)
            for c in range(self.N)
            if pat[r][c]
        ]


def build_gell_mann(N: int) -> GeneratorBasis:
    """Generalized Gell-Mann matrices with ``Tr(L^a L^b) = 2 delta^{ab}``.

    Ordering is the recursive Gell-Mann one: for ``k = 2..N`` the symmetric
    and antisymmetric pair ``(j, k)`` for each ``j < k``, followed by the
    ``(k-1)``-th diagonal matrix.  N=2 gives the Pauli matrices and N=3 the
    usual ``lambda_1..lambda_8``.
    """
    if N < 2:
        raise InvalidRankError(f"N must be >= 2, got {N}")
    zero, one = Amplitude(0), Amplitude(1)
    patterns, scales = [], []

    def blank():
        return [[zero] * N for _ in range(N)]

    for k in range(1, N):
        for j in range(k):
            sym = blank()
            sym[j][k] = sym[k][j] = one
            anti = blank()
            anti[j][k] = Amplitude(0, -1)
            anti[k][j] = Amplitude(0, 1)
            patterns += [sym, anti]
            scales += [Fraction(1), Fraction(1)]
        diag = blank()
        for r in range(k):
            diag[r][r] = one
        diag[k][k] = Amplitude(-k)
        patterns.append(diag)
        scales.append(Fraction(2, k * (k + 1)))

    lambdas = np.array(
        [
            math.sqrt(s2) * np.array([[complex(x) for x in row] for row in pat])
            for pat, s2 in zip(patterns, scales)
        ]
    )
    comm = np.einsum("aij,bjk->abik", lambdas, lambdas)
    comm = comm - comm.transpose(1, 0, 2, 3)
    f = (np.einsum("abij,cji->abc", comm, lambdas) / 4j).real
    f[np.abs(f) < 1e-14] = 0.0

    pats = tuple(tuple(tuple(row) for row in p) for p in patterns)
    structure = _exact_structure(pats, tuple(scales), f)
    return GeneratorBasis(N, pats, tuple(scales), lambdas, f, structure)


def _exact_structure(patterns, scales, f):
    n = len(patterns)
    N = len(patterns[0])
    out = {}
    for a in range(n):
        for b in range(a + 1, n):
            terms = []
            for c in np.nonzero(f[a, b])[0]:
                c = int(c)
                s = _exact_sqrt(scales[a] * scales[b] * scales[c])
                if s is None:
                    terms.append((c, float(f[a, b, c])))
                    continue
                A, B, C = patterns[a], patterns[b], patterns[c]
                tr = Amplitude(0)
                for i in range(N):
                    for j in range(N):
                        ab = Amplitude(0)
                        for k in range(N):
                            ab = ab + A[i][k] * B[k][j] - B[i][k] * A[k][j]
                        if ab:
                            tr = tr + ab * C[j][i]
                # Tr([A,B]C) / 4i
                val = tr * Amplitude(0, Fraction(-1, 4)) * s
                terms.append((c, val.re))
            out[(a, b)] = terms
    return out


def apply_pattern(a: int, v: StateVector, basis: GeneratorBasis) -> StateVector:
    """Exact ``sum_i a^dag[i] (pattern^a / 2) a[i]`` (the unscaled generator)."""
    N = v.N
    if N != basis.N:
        raise FockError(f"state has N={N}, basis has N={basis.N}")
    if not 1 <= a <= basis.dim:
        raise LieAlgebraError(f"generator index {a} out of range 1..{basis.dim}")
    entries = basis.entries(a)
    out = {}
    for occ, amp in v.items():
        for i in range(N - 1):
            base = i * N
            for r, c, x in entries:
                n = occ[base + c]
                if n == 0:
                    continue
                if r == c:
                    new = occ
                else:
                    new = list(occ)
                    new[base + c] -= 1
                    new[base + r] += 1
                    new = tuple(new)
                _accumulate(out, [(new, amp * (x * n))])
    return StateVector._raw(N, out)


def apply_generator(a: int, v: StateVector, basis: GeneratorBasis) -> StateVector:
    """``Q^a v`` for a 1-based generator index ``a``."""
    w = apply_pattern(a, v, basis)
    s = basis.scale(a)
    return w if s == 1 else w * s


def apply_constraint(i: int, j: int, v: StateVector) -> StateVector:
    """``L_ij v = (a^dag[i] . a[j]) v`` for ``i < j``."""
    from .fock import hop

    if not i < j:
        raise LieAlgebraError(f"constraint pair needs i < j, got ({i}, {j})")
    return hop(v, i, j)


def _commutator_residual(basis, v, Qv):
    N = v.N
    worst = 0.0
    nv = norm(v)
    for (a, b), terms in basis.structure.items():
        lhs = apply_generator(a + 1, Qv[b], basis) - apply_generator(b + 1, Qv[a], basis)
        rhs = combine(((1j * fc if isinstance(fc, float) else Amplitude(0, fc), Qv[c])
                       for c, fc in terms), N)
        worst = max(worst, norm(lhs - rhs) / nv)
    return worst


def check_lie_algebra(basis: GeneratorBasis, probe: Sequence[StateVector]) -> dict:
    """Max of ``|([Q^a,Q^b] - i f^{abc} Q^c) v| / |v|`` over pairs and probes."""
    worst = 0.0
    for v in probe:
        if v.is_zero():
            raise LieAlgebraError("probe states must be nonzero")
        Qv = [apply_generator(a, v, basis) for a in range(1, basis.dim + 1)]
        worst = max(worst, _commutator_residual(basis, v, Qv))
    return {
        "check": "lie_algebra",
        "max_residual": float(worst),
        "pass": bool(worst < TOL),
        "probes": len(probe),
    }


def check_casimir_commutation(basis: GeneratorBasis, probe: Sequence[StateVector]) -> dict:
    """Exact check of ``[Q^a, N_i] v = 0``.

    ``Q^a`` is a scalar multiple of its pattern, so testing the exact
    pattern operator is equivalent and keeps the check free of rounding.
    """
    nonzero = 0
    for v in probe:
        for a in range(1, basis.dim + 1):
            for i in range(1, basis.N):
                d = apply_pattern(a, number(v, i), basis) - number(apply_pattern(a, v, basis), i)
                nonzero += not d.is_zero()
    return {
        "check": "casimir_commutation",
        "max_residual": 0.0 if nonzero == 0 else float("inf"),
        "pass": nonzero == 0,
        "probes": len(probe),
        "exact": True,
    }


def jacobi_residual(basis: GeneratorBasis) -> float:
    f = basis.f
    t = (
        np.einsum("abe,ecd->abcd", f, f)
        + np.einsum("bce,ead->abcd", f, f)
        + np.einsum("cae,ebd->abcd", f, f)
    )
    return float(np.abs(t).max())


# -- matrix representations -------------------------------------------------


@dataclass(frozen=True)
class MatrixRep:
    """Generators restricted to an invariant subspace.

    ``E`` holds orthonormal basis columns in normalized Fock coordinates
    (monomial amplitude times ``sqrt(prod n!)``) over the rows of ``index``.
    """

    N: int
    index: Dict[tuple, int] = field(repr=False)
    E: np.ndarray = field(repr=False)
    Q: np.ndarray = field(repr=False)
    invariance_residual: float = 0.0

    @property
    def dim(self) -> int:
        return self.E.shape[1]

    @property
    def basis(self) -> List[StateVector]:
        keys = sorted(self.index, key=self.index.get)
        scale = np.array([math.sqrt(_weight(k)) for k in keys])
        out = []
        for col in self.E.T:
            amps = col / scale
            out.append(StateVector(self.N, {k: complex(x) for k, x in zip(keys, amps) if x != 0}))
        return out

    def dense(self, v: StateVector):
        """Normalized coordinates of ``v`` on ``index`` plus the norm of what falls outside."""
        x = np.zeros(len(self.index), dtype=complex)
        outside = 0.0
        for occ, a in v.items():
            val = complex(a) * math.sqrt(_weight(occ))
            row = self.index.get(occ)
            if row is None:
                outside += abs(val) ** 2
            else:
                x[row] = val
        return x, math.sqrt(outside)

    def components(self, v: StateVector) -> np.ndarray:
        x, _ = self.dense(v)
        return self.E.conj().T @ x

    def projection_residual(self, v: StateVector) -> float:
        """``|v - P v|`` where ``P`` projects onto the span of the basis."""
        x, outside = self.dense(v)
        r = x - self.E @ (self.E.conj().T @ x)
        return math.sqrt(np.vdot(r, r).real + outside ** 2)

    def casimir(self) -> np.ndarray:
        return np.einsum("aij,ajk->ik", self.Q, self.Q)


def _gram_schmidt(X: np.ndarray, rel_tol: float = 1e-12):
    """Classical Gram-Schmidt with one reorthogonalization pass.

    Returns ``(E, C)`` with ``E = X @ C``; raises on dependent columns.
    """
    n, m = X.shape
    E = np.zeros((n, m), dtype=complex)
    C = np.zeros((m, m), dtype=complex)
    for k in range(m):
        x = X[:, k]
        c = np.zeros(m, dtype=complex)
        c[k] = 1.0
        w = x.copy()
        for _ in range(2):
            proj = E[:, :k].conj().T @ w
            w = w - E[:, :k] @ proj
            c[:k] -= C[:k, :k] @ proj
        nw = np.linalg.norm(w)
        if nw < rel_tol * max(np.linalg.norm(x), 1e-300):
            raise LieAlgebraError(f"basis state {k} is linearly dependent on earlier states")
        E[:, k] = w / nw
        C[:, k] = c / nw
    return E, C


def matrix_rep(states: Sequence[StateVector], gens: GeneratorBasis) -> MatrixRep:
    if not states:
        raise LieAlgebraError("need at least one basis state")
    N = gens.N
    images = [[apply_generator(a, s, gens) for s in states] for a in range(1, gens.dim + 1)]
    keys = set()
    for s in states:
        keys.update(s)
    for row in images:
        for w in row:
            keys.update(w)
    order = sorted(keys)
    index = {k: r for r, k in enumerate(order)}
    scale = np.array([math.sqrt(_weight(k)) for k in order])

    def dense(v):
        x = np.zeros(len(order), dtype=complex)
        for occ, amp in v.items():
            x[index[occ]] = complex(amp)
        return x * scale

    X = np.column_stack([dense(s) for s in states])
    E, C = _gram_schmidt(X)
    Q = np.empty((gens.dim, len(states), len(states)), dtype=complex)
    resid = 0.0
    for a, row in enumerate(images):
        QE = np.column_stack([dense(w) for w in row]) @ C
        Q[a] = E.conj().T @ QE
        resid = max(resid, float(np.abs(QE - E @ Q[a]).max(initial=0.0)))
    if resid > TOL:
        raise LieAlgebraError(f"span is not invariant (residual {resid:.3e})")
    return MatrixRep(N, index, E, Q, resid)


def quadratic_casimir(rows: Sequence[int], N: int) -> Fraction:
    """Eigenvalue of ``sum_a (Q^a)^2`` on the irrep with the given row lengths."""
    lam = list(rows) + [0] * (N - len(rows))
    total = sum(lam)
    val = Fraction(0)
    for i, l in enumerate(lam, start=1):
        val += l * l + l * (N + 1 - 2 * i)
    return (val - Fraction(total * total, N)) / 2
