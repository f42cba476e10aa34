"""Irreducible Schwinger bosons and SU(N) irrep bases built from their monomials."""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .echelon import independent_subset
from .fock import (
    Amplitude,
    FockError,
    InvalidRankError,
    StateVector,
    create,
    from_json,
    hop,
    plet_number,
    plet_numbers,
    to_json,
    vacuum,
)

__all__ = [
    "IrrepLabel",
    "irreps_up_to",
    "sector",
    "InvalidIrrepError",
    "SingularCoefficientError",
    "ConstructionError",
    "f_coefficient",
    "isb_chains",
    "isb_create",
    "monomial_state",
    "color_assignments",
    "irrep_basis",
    "weyl_dimension",
    "basis_to_json",
    "basis_from_json",
]


class InvalidIrrepError(ValueError):
    pass


class SingularCoefficientError(ZeroDivisionError):
    pass


class ConstructionError(RuntimeError):
    """The ISB monomials failed to span a space of the Weyl dimension."""


@dataclass(frozen=True)
class IrrepLabel:
    """Row lengths ``[n_1 >= ... >= n_{N-1} >= 0]`` of an SU(N) Young diagram."""

    rows: Tuple[int, ...]
    N: int

    def __post_init__(self):
        if self.N < 2:
            raise InvalidRankError(f"N must be >= 2, got {self.N}")
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.N - 1:
            raise InvalidIrrepError(f"SU({self.N}) irrep needs {self.N - 1} rows, got {rows}")
        if any(r < 0 for r in rows):
            raise InvalidIrrepError(f"row lengths must be non-negative: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidIrrepError(f"row lengths must be non-increasing: {rows}")

    @classmethod
    def parse(cls, text: str, N: int) -> "IrrepLabel":
        """Parse ``"2,1"``; missing trailing rows are zero."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            rows = [int(p) for p in parts]
        except ValueError:
            raise InvalidIrrepError(f"cannot parse irrep {text!r}") from None
        if len(rows) > N - 1:
            raise InvalidIrrepError(f"too many rows for SU({N}): {text!r}")
        return cls(tuple(rows) + (0,) * (N - 1 - len(rows)), N)

    @property
    def total(self) -> int:
        return sum(self.rows)

    def __str__(self):
        return "[" + ",".join(map(str, self.rows)) + "]"


def irreps_up_to(N: int, max_total: int) -> List[IrrepLabel]:
    """All SU(N) labels with ``sum n_i <= max_total`` in increasing total."""
    out = []
    for rows in itertools.product(range(max_total, -1, -1), repeat=N - 1):
        if sum(rows) <= max_total and all(a >= b for a, b in zip(rows, rows[1:])):
            out.append(IrrepLabel(rows, N))
    return sorted(out, key=lambda lab: (lab.total, tuple(-r for r in lab.rows)))


def f_coefficient(k: int, i: int, occupations: Sequence[int]) -> Fraction:
    """``F^k_i = -1 / (n_i - n_k + 1 + k - i)`` evaluated on the given occupations."""
    if not 1 <= i < k <= len(occupations):
        raise FockError(f"need 1 <= i < k <= {len(occupations)}, got i={i}, k={k}")
    den = occupations[i - 1] - occupations[k - 1] + 1 + k - i
    if den == 0:
        raise SingularCoefficientError(f"F^{k}_{i} is singular at {tuple(occupations)}")
    return Fraction(-1, den)


def isb_chains(k: int):
    """Strictly decreasing chains ``k > i_1 > ... > i_r >= 1`` with ``r >= 1``."""
    for r in range(1, k):
        yield from itertools.combinations(range(k - 1, 0, -1), r)


def isb_create(k: int, alpha: int, v: StateVector) -> StateVector:
    """Apply the irreducible Schwinger boson ``A^dag_alpha[k]`` to ``v``.

    Each correction term is applied right to left: ``a^dag_alpha[i_r]``,
    then ``L_{i_{r-1} i_r}``, ..., ``L_{k i_1}``.  The F factors stand to the
    left of the whole chain, so they are evaluated on the occupations of the
    result, which for every term is the input with one extra quantum in
    plet ``k``.
    """
    N = v.N
    if not 1 <= k <= N - 1:
        raise FockError(f"plet {k} out of range for N={N}")
    if not 1 <= alpha <= N:
        raise FockError(f"color {alpha} out of range for N={N}")
    if v.is_zero():
        return v
    occ = [plet_number(v, i) for i in range(1, N)]
    occ[k - 1] += 1
    out = create(v, (k, alpha))
    for chain in isb_chains(k):
        coef = Fraction(1)
        for i in chain:
            coef *= f_coefficient(k, i, occ)
        w = create(v, (chain[-1], alpha))
        path = (k,) + chain
        for upper, lower in reversed(list(zip(path, path[1:]))):
            w = hop(w, upper, lower)
        out = out + w * coef
    return out


def _check_colors(irrep: IrrepLabel, colors):
    if len(colors) != irrep.N - 1:
        raise InvalidIrrepError(f"need {irrep.N - 1} color rows, got {len(colors)}")
    for n, row in zip(irrep.rows, colors):
        if len(row) != n:
            raise InvalidIrrepError(f"color rows {colors} do not match shape {irrep}")
        if any(not 1 <= c <= irrep.N for c in row):
            raise InvalidIrrepError(f"colors must lie in 1..{irrep.N}: {colors}")


def monomial_state(irrep: IrrepLabel, colors: Sequence[Sequence[int]]) -> StateVector:
    """``(A^dag[N-1]...)...(A^dag[2]...)(A^dag[1]...)|0>`` for the given colors.

    Plet 1 operators act first.  Within a row the rightmost color acts
    first, matching the written operator order.
    """
    _check_colors(irrep, colors)
    return _monomial(irrep.N, tuple(tuple(r) for r in colors))


@functools.lru_cache(maxsize=4096)
def _monomial(N, colors):
    v = vacuum(N)
    for k, row in enumerate(colors, start=1):
        for alpha in reversed(row):
            v = isb_create(k, alpha, v)
    return v


def color_assignments(irrep: IrrepLabel, ordered: bool = False):
    """Color rows in lexicographic order.

    By default each row is non-decreasing (one representative per row
    permutation); ``ordered=True`` yields every ordered tuple.
    """
    per_row = []
    for n in irrep.rows:
        colors = range(1, irrep.N + 1)
        it = itertools.product(colors, repeat=n) if ordered else itertools.combinations_with_replacement(colors, n)
        per_row.append(list(it))
    return itertools.product(*per_row)


def _real_row(v: StateVector):
    row = {}
    for occ, a in v.items():
        a = Amplitude.coerce(a)
        if a.im:
            raise FockError("exact rank extraction expects real amplitudes")
        row[occ] = a.re
    return row


def weyl_dimension(irrep: IrrepLabel) -> int:
    lam = list(irrep.rows) + [0]
    num = den = 1
    for r in range(irrep.N):
        for s in range(r + 1, irrep.N):
            num *= lam[r] - lam[s] + s - r
            den *= s - r
    return num // den


def irrep_basis(irrep: IrrepLabel) -> List[StateVector]:
    """Independent ISB monomial states spanning the irrep ``irrep``."""
    return list(_irrep_basis(irrep))


@functools.lru_cache(maxsize=256)
def _irrep_basis(irrep: IrrepLabel):
    states = []
    for colors in color_assignments(irrep):
        v = _monomial(irrep.N, colors)
        if not v.is_zero():
            states.append(v)
    keep = independent_subset(_real_row(v) for v in states)
    basis = tuple(states[i] for i in keep)
    expected = weyl_dimension(irrep)
    if len(basis) != expected:
        raise ConstructionError(
            f"SU({irrep.N}) {irrep}: {len(basis)} independent states, Weyl dimension {expected}"
        )
    return basis


def basis_to_json(irrep: IrrepLabel, states: Sequence[StateVector]) -> str:
    doc = {
        "N": irrep.N,
        "irrep": list(irrep.rows),
        "dim": len(states),
        "states": [to_json(s) for s in states],
    }
    return json.dumps(doc, indent=1) + "\n"


def basis_from_json(text: str):
    doc = json.loads(text)
    irrep = IrrepLabel(tuple(doc["irrep"]), int(doc["N"]))
    states = [from_json(s) for s in doc["states"]]
    if len(states) != doc["dim"]:
        raise ValueError(f"basis file claims dim={doc['dim']} but holds {len(states)} states")
    return irrep, states


def sector(v: StateVector) -> Tuple[int, ...]:
    """Common plet totals of all terms of ``v``."""
    totals = {plet_numbers(occ, v.N) for occ in v}
    if len(totals) != 1:
        raise FockError(f"state spans several sectors: {sorted(totals)}")
    return totals.pop()
