"""Invariant suite run by ``sunisb verify``."""

from __future__ import annotations

import numpy as np

from .coherent import irrep_rep, _gens
from .fock import hop, plet_number
from .isb import IrrepLabel, irrep_basis, irreps_up_to, isb_create, weyl_dimension
from .liealg import (
    LieAlgebraError,
    check_casimir_commutation,
    check_lie_algebra,
    jacobi_residual,
    quadratic_casimir,
)


def _report(name, residual, ok, probes, **extra):
    out = {"check": name, "max_residual": float(residual), "pass": bool(ok), "probes": probes}
    out.update(extra)
    return out


def constraint_annihilation(basis, N):
    bad = sum(
        not hop(v, i, j).is_zero()
        for v in basis
        for i in range(1, N)
        for j in range(i + 1, N)
    )
    return _report("constraint_annihilation", 0.0 if bad == 0 else float("inf"), bad == 0,
                   len(basis), exact=True, nonzero=bad)


def casimir_labels(basis, irrep):
    bad = 0
    for v in basis:
        for i, n in enumerate(irrep.rows, start=1):
            bad += plet_number(v, i) != n
    return _report("casimir_labels", float(bad), bad == 0, len(basis), exact=True)


def weak_commutators(basis, N):
    """``[L_ij, A^dag_alpha[k]] v = L_ij A^dag_alpha[k] v`` on constrained ``v``."""
    bad = 0
    for v in basis:
        for k in range(1, N):
            for alpha in range(1, N + 1):
                w = isb_create(k, alpha, v)
                bad += sum(not hop(w, i, j).is_zero() for i in range(1, N) for j in range(i + 1, N))
    return _report("weak_commutators", float(bad), bad == 0, len(basis), exact=True)


def row_exchange(basis, N):
    bad = 0
    for v in basis:
        for k in range(1, N):
            for a in range(1, N + 1):
                for b in range(a + 1, N + 1):
                    d = isb_create(k, a, isb_create(k, b, v)) - isb_create(k, b, isb_create(k, a, v))
                    bad += not d.is_zero()
    return _report("row_exchange", float(bad), bad == 0, len(basis), exact=True)


def verify_irrep(irrep: IrrepLabel) -> list:
    N = irrep.N
    gens = _gens(N)
    basis = irrep_basis(irrep)
    reports = [
        _report("dimension", abs(len(basis) - weyl_dimension(irrep)),
                len(basis) == weyl_dimension(irrep), len(basis),
                dim=len(basis), weyl=weyl_dimension(irrep)),
        constraint_annihilation(basis, N),
        casimir_labels(basis, irrep),
        check_lie_algebra(gens, basis),
        check_casimir_commutation(gens, basis),
        _report("jacobi", jacobi_residual(gens), jacobi_residual(gens) < 1e-12, 0),
    ]
    try:
        rep = irrep_rep(irrep)
        reports.append(_report("invariance", rep.invariance_residual, True, len(basis)))
        c2 = float(quadratic_casimir(irrep.rows, N))
        dev = float(np.abs(rep.casimir() - c2 * np.eye(rep.dim)).max())
        reports.append(_report("quadratic_casimir", dev, dev < 1e-10, len(basis), value=c2))
    except LieAlgebraError as exc:
        reports.append(_report("invariance", float("inf"), False, len(basis), error=str(exc)))
    reports.append(weak_commutators(basis, N))
    reports.append(row_exchange(basis, N))
    for r in reports:
        r["N"] = N
        r["irrep"] = list(irrep.rows)
    return reports


def default_sweep(max_total: int = 4, ranks=(2, 3, 4)):
    return [lab for N in ranks for lab in irreps_up_to(N, max_total)]
