"""Fraction-free row reduction for sparse rational vectors."""

from __future__ import annotations

import math
from bisect import insort
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping


def _primitive(row: Mapping[Hashable, Fraction]) -> Dict[Hashable, int]:
    """Scale a rational row to coprime integers with a positive leading entry."""
    den = 1
    for x in row.values():
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = {k: int(x * den) for k, x in row.items() if x}
    return _content_free(ints)


def _content_free(row: Dict[Hashable, int]) -> Dict[Hashable, int]:
    if not row:
        return row
    g = 0
    for x in row.values():
        g = math.gcd(g, x)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    return {k: x // g for k, x in row.items()}


class Echelon:
    """Incremental echelon form over the integers.

    Each stored row has a distinct pivot (its smallest key).  Reducing a
    candidate row by ``r <- p[c] * r - r[c] * p`` keeps everything integral;
    the content is divided out after each step to bound coefficient growth.
    """

    def __init__(self):
        self._pivots: List[Hashable] = []
        self._rows: Dict[Hashable, Dict[Hashable, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row: Mapping[Hashable, Fraction]) -> Dict[Hashable, int]:
        r = _primitive(row)
        for c in self._pivots:
            rc = r.get(c)
            if not rc:
                continue
            p = self._rows[c]
            pc = p[c]
            out = {k: pc * x for k, x in r.items()}
            for k, x in p.items():
                v = out.get(k, 0) - rc * x
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
            r = _content_free(out)
        return r

    def add(self, row: Mapping[Hashable, Fraction]) -> bool:
        """Insert ``row`` if it is independent of the stored rows."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        self._rows[c] = r
        insort(self._pivots, c)
        return True


def independent_subset(rows: Iterable[Mapping[Hashable, Fraction]]) -> List[int]:
    """Indices of a maximal independent subset, earlier rows preferred."""
    ech = Echelon()
    return [i for i, row in enumerate(rows) if ech.add(row)]


def rank(rows: Iterable[Mapping[Hashable, Fraction]]) -> int:
    return len(independent_subset(rows))
