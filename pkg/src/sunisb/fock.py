"""Exact sparse bosonic Fock-space arithmetic.

Modes are indexed by ``(plet, color)`` with ``1 <= plet <= N-1`` and
``1 <= color <= N``.  States use the monomial convention::

    a^dag |n> = |n+1>,    a |n> = n |n-1>,    <n|n> = n!

so that every amplitude produced by ladder operators stays rational.
Amplitudes are either exact :class:`Amplitude` values or plain Python
``complex`` numbers (the float variant used by coherent states).
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, NamedTuple, Tuple, Union

__all__ = [
    "FockError",
    "InvalidRankError",
    "MixedSectorError",
    "ModeIndex",
    "Amplitude",
    "StateVector",
    "vacuum",
    "basis_state",
    "create",
    "annihilate",
    "hop",
    "number",
    "inner",
    "norm",
    "plet_number",
    "plet_numbers",
    "to_json",
    "from_json",
    "to_csv",
]


class FockError(ValueError):
    pass


class InvalidRankError(FockError):
    pass


class MixedSectorError(FockError):
    """Raised when a state is not an eigenstate of a plet number operator."""


class ModeIndex(NamedTuple):
    plet: int
    color: int


Occupation = Tuple[int, ...]


class Amplitude:
    """Exact complex rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Amplitude):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot make an exact amplitude from {x!r}")

    def __repr__(self):
        if self.im == 0:
            return f"Amplitude({self.re})"
        return f"Amplitude({self.re}, {self.im})"

    def __eq__(self, other):
        if isinstance(other, Amplitude):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __neg__(self):
        return Amplitude(-self.re, -self.im)

    def conjugate(self):
        return Amplitude(self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, Amplitude):
            return Amplitude(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Amplitude(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Amplitude):
            return Amplitude(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return Amplitude(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Amplitude(self.re / other, self.im / other)
        if isinstance(other, Amplitude):
            d = other.re * other.re + other.im * other.im
            return self * Amplitude(other.re / d, -other.im / d)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def to_strings(self):
        return str(self.re), str(self.im)


Scalar = Union[Amplitude, complex, float, int, Fraction]

ONE = Amplitude(1)


def _conj(x):
    return x.conjugate() if isinstance(x, (Amplitude, complex, float)) else x


class StateVector:
    """Immutable sparse map from occupation tuples to amplitudes.

    Occupation tuples have length ``N*(N-1)``; position ``(plet-1)*N +
    (color-1)`` holds the occupation of mode ``(plet, color)``.
    """

    __slots__ = ("N", "_terms")

    def __init__(self, N: int, terms: Dict[Occupation, Scalar] | None = None):
        if N < 2:
            raise InvalidRankError(f"N must be >= 2, got {N}")
        self.N = N
        width = N * (N - 1)
        clean = {}
        for occ, amp in (terms or {}).items():
            if len(occ) != width:
                raise FockError(f"occupation {occ} has wrong length for N={N}")
            if amp != 0:
                clean[tuple(occ)] = amp
        self._terms = clean

    @classmethod
    def _raw(cls, N, terms):
        # trusted constructor: caller guarantees keys and purged zeros
        obj = object.__new__(cls)
        obj.N = N
        obj._terms = terms
        return obj

    @property
    def terms(self) -> Dict[Occupation, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Occupation, Scalar]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __getitem__(self, occ):
        return self._terms.get(tuple(occ), 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def exact(self) -> bool:
        return all(isinstance(a, Amplitude) for a in self._terms.values())

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in sorted(self._terms.items()))
        return f"StateVector(N={self.N}, {{{body}}})"

    def _check(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        if other.N != self.N:
            raise FockError(f"mismatched N: {self.N} vs {other.N}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return StateVector._raw(self.N, out)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, c):
        if isinstance(c, StateVector):
            return NotImplemented
        if isinstance(c, (int, Fraction)):
            c = Amplitude(c)
        out = {}
        for k, a in self._terms.items():
            v = a * c
            if v != 0:
                out[k] = v
        return StateVector._raw(self.N, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.N == other.N and self._terms == other._terms

    __hash__ = None

    def to_complex(self) -> "StateVector":
        return StateVector._raw(self.N, {k: complex(a) for k, a in self._terms.items()})


def _accumulate(out, items):
    for k, a in items:
        prev = out.get(k)
        v = a if prev is None else prev + a
        if v != 0:
            out[k] = v
        else:
            out.pop(k, None)


def _position(N: int, m) -> int:
    plet, color = m
    if not (1 <= plet <= N - 1 and 1 <= color <= N):
        raise FockError(f"mode {tuple(m)} out of range for N={N}")
    return (plet - 1) * N + (color - 1)


def vacuum(N: int) -> StateVector:
    if N < 2:
        raise InvalidRankError(f"N must be >= 2, got {N}")
    return StateVector._raw(N, {(0,) * (N * (N - 1)): ONE})


def basis_state(N: int, occupations: Dict[Tuple[int, int], int]) -> StateVector:
    """Monomial ``prod (a^dag_m)^{n_m} |0>`` with unit amplitude."""
    occ = [0] * (N * (N - 1))
    for m, n in occupations.items():
        if n < 0:
            raise FockError("occupations must be non-negative")
        occ[_position(N, m)] = n
    return StateVector._raw(N, {tuple(occ): ONE})


def create(v: StateVector, m) -> StateVector:
    p = _position(v.N, m)
    out = {}
    for occ, a in v.items():
        new = list(occ)
        new[p] += 1
        out[tuple(new)] = a
    return StateVector._raw(v.N, out)


def annihilate(v: StateVector, m) -> StateVector:
    p = _position(v.N, m)
    out = {}
    for occ, a in v.items():
        n = occ[p]
        if n == 0:
            continue
        new = list(occ)
        new[p] = n - 1
        out[tuple(new)] = a * n
    return StateVector._raw(v.N, out)


def hop(v: StateVector, i: int, j: int) -> StateVector:
    """Apply ``a^dag[i] . a[j] = sum_alpha a^dag_alpha[i] a_alpha[j]``."""
    N = v.N
    if not (1 <= i <= N - 1 and 1 <= j <= N - 1):
        raise FockError(f"plet indices ({i}, {j}) out of range for N={N}")
    bi, bj = (i - 1) * N, (j - 1) * N
    out: Dict[Occupation, Scalar] = {}
    for occ, a in v.items():
        for alpha in range(N):
            n = occ[bj + alpha]
            if n == 0:
                continue
            new = list(occ)
            new[bj + alpha] -= 1
            new[bi + alpha] += 1
            _accumulate(out, [(tuple(new), a * n)])
    return StateVector._raw(N, out)


def number(v: StateVector, i: int) -> StateVector:
    """Apply the plet number operator ``a^dag[i] . a[i]``."""
    N = v.N
    base = (i - 1) * N
    out = {}
    for occ, a in v.items():
        n = sum(occ[base:base + N])
        if n:
            out[occ] = a * n
    return StateVector._raw(N, out)


def _weight(occ: Occupation) -> int:
    w = 1
    for n in occ:
        if n > 1:
            w *= math.factorial(n)
    return w


def inner(u: StateVector, v: StateVector):
    """Conjugate-linear in ``u``; ``<n|n'> = delta prod n_m!``."""
    if u.N != v.N:
        raise FockError(f"mismatched N: {u.N} vs {v.N}")
    small, big, flip = (u, v, False) if len(u) <= len(v) else (v, u, True)
    total = Amplitude(0)
    for occ, a in small.items():
        b = big._terms.get(occ)
        if b is None:
            continue
        term = (_conj(b) * a) if flip else (_conj(a) * b)
        total = total + term * _weight(occ)
    return total


def norm(v: StateVector) -> float:
    return math.sqrt(max(complex(inner(v, v)).real, 0.0))


def plet_numbers(occ: Occupation, N: int) -> Tuple[int, ...]:
    return tuple(sum(occ[(i - 1) * N:i * N]) for i in range(1, N))


def plet_number(v: StateVector, i: int) -> int:
    if v.is_zero():
        raise FockError("plet_number of the zero vector is undefined")
    if not 1 <= i <= v.N - 1:
        raise FockError(f"plet {i} out of range for N={v.N}")
    base = (i - 1) * v.N
    values = {sum(occ[base:base + v.N]) for occ in v}
    if len(values) != 1:
        raise MixedSectorError(f"state mixes plet-{i} totals {sorted(values)}")
    return values.pop()


# -- serialization ---------------------------------------------------------


def _occ_triples(occ: Occupation, N: int):
    return [
        [p // N + 1, p % N + 1, n] for p, n in enumerate(occ) if n
    ]


def _sorted_items(v: StateVector):
    return sorted(v.items(), key=lambda kv: kv[0])


def to_json(v: StateVector) -> dict:
    """JSON-ready dict; exact amplitudes as ``"p/q"`` strings, floats as numbers."""
    terms = []
    for occ, a in _sorted_items(v):
        if isinstance(a, Amplitude):
            re, im = a.to_strings()
        else:
            c = complex(a)
            re, im = c.real, c.imag
        terms.append({"occ": _occ_triples(occ, v.N), "re": re, "im": im})
    return {"N": v.N, "terms": terms}


def _parse_amp(re, im):
    if isinstance(re, str) and isinstance(im, str):
        return Amplitude(Fraction(re), Fraction(im))
    return complex(float(re), float(im))


def from_json(data: Union[dict, str]) -> StateVector:
    if isinstance(data, str):
        data = json.loads(data)
    N = int(data["N"])
    width = N * (N - 1)
    terms = {}
    for t in data["terms"]:
        occ = [0] * width
        for plet, color, count in t["occ"]:
            occ[_position(N, (plet, color))] = int(count)
        terms[tuple(occ)] = _parse_amp(t["re"], t["im"])
    return StateVector(N, terms)


def to_csv(v: StateVector) -> str:
    """One row per Fock term: ``occ`` as ``plet:color:count`` joined by ``;``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["occ", "re", "im"])
    for occ, a in _sorted_items(v):
        key = ";".join(f"{p}:{c}:{n}" for p, c, n in _occ_triples(occ, v.N))
        if isinstance(a, Amplitude):
            re, im = a.to_strings()
        else:
            c = complex(a)
            re, im = repr(c.real), repr(c.imag)
        w.writerow([key, re, im])
    return buf.getvalue()


def combine(pairs: Iterable[Tuple[Scalar, StateVector]], N: int) -> StateVector:
    """Linear combination ``sum c_k v_k``."""
    out: Dict[Occupation, Scalar] = {}
    for c, v in pairs:
        if v.N != N:
            raise FockError(f"mismatched N: {v.N} vs {N}")
        _accumulate(out, ((k, a * c) for k, a in v.items()))
    return StateVector._raw(N, out)
