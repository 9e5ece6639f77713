"""Macaulay growth combinatorics for Hilbert functions.

Sequences are indexed by degree starting at 0.  An :class:`OSequence` stores a
finite list of values together with an optional ``eventual`` value that is
repeated forever after the listed entries; without it the sequence is zero
past its listed entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

# Binomials are exact Python ints; this cap keeps results inside 128 bits.
_INT_CAP = 2**127


def _checked_comb(n: int, k: int) -> int:
    value = comb(n, k)
    if value >= _INT_CAP:
        raise OverflowError(f"C({n},{k}) exceeds the 128-bit working range")
    return value


@dataclass(frozen=True)
class OSequence:
    values: tuple[int, ...]
    eventual: int | None = None

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        eventual = self.eventual
        if any(v < 0 for v in values):
            raise ValueError(f"negative entry in {values}")
        if eventual is not None:
            eventual = int(eventual)
            if eventual < 0:
                raise ValueError("eventual value must be non-negative")
            if eventual == 0:
                eventual = None
        if eventual is None:
            while values and values[-1] == 0:
                values = values[:-1]
        else:
            if not values or values[-1] != eventual:
                values = values + (eventual,)
            while len(values) > 1 and values[-2] == eventual:
                values = values[:-1]
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "eventual", eventual)

    @classmethod
    def of(cls, *values: int, eventual: int | None = None) -> "OSequence":
        return cls(tuple(values), eventual)

    @classmethod
    def constant_tail(cls, values: Iterable[int]) -> "OSequence":
        """Read a list whose last entry repeats forever (0 means finite)."""
        values = tuple(values)
        if not values:
            return cls(())
        return cls(values, values[-1] or None)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            return 0
        if i < len(self.values):
            return self.values[i]
        return self.eventual or 0

    @property
    def is_finite(self) -> bool:
        return self.eventual is None

    @property
    def tail_start(self) -> int:
        """First index from which the sequence is constant (its eventual value or 0)."""
        return max(len(self.values) - 1, 0) if self.eventual is not None else len(self.values)

    def head(self, n: int) -> list[int]:
        return [self[i] for i in range(n)]

    def total(self) -> int:
        if self.eventual is not None:
            raise ValueError("an eventually non-zero sequence has no finite sum")
        return sum(self.values)

    def to_json(self) -> dict:
        out: dict = {"values": list(self.values)}
        if self.eventual is not None:
            out["eventual"] = self.eventual
        return out

    @classmethod
    def from_json(cls, data) -> "OSequence":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return cls(tuple(data))
        return cls(tuple(data["values"]), data.get("eventual"))

    def __str__(self):
        body = ",".join(str(v) for v in self.values)
        if self.eventual is not None:
            return f"({body},...)"
        return f"({body},0)" if body else "(0)"


@dataclass(frozen=True)
class BinomialExpansion:
    """Terms ``(top, bottom)`` with strictly decreasing bottoms."""

    terms: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return sum(_checked_comb(m, k) for m, k in self.terms)

    def __str__(self):
        return "+".join(f"C({m},{k})" for m, k in self.terms)


def binomial_expansion(a: int, i: int) -> BinomialExpansion:
    """Greedy ``i``-binomial expansion of ``a``.

    >>> str(binomial_expansion(76, 5))
    'C(8,5)+C(6,4)+C(4,3)+C(2,2)'
    """
    if a < 1 or i < 1:
        raise ValueError("binomial expansion needs a >= 1 and i >= 1")
    if a >= _INT_CAP:
        raise OverflowError("value exceeds the 128-bit working range")
    terms = []
    k = i
    while a > 0 and k >= 1:
        m = k
        while _checked_comb(m + 1, k) <= a:
            m += 1
        terms.append((m, k))
        a -= _checked_comb(m, k)
        k -= 1
    return BinomialExpansion(tuple(terms))


def macaulay_bound(a: int, i: int) -> int:
    """The Macaulay bound ``a^<i>`` on growth from degree ``i`` to ``i + 1``."""
    if i < 1:
        raise ValueError("degree must be >= 1")
    if a < 0:
        raise ValueError("value must be non-negative")
    if a == 0:
        return 0
    return sum(_checked_comb(m + 1, k + 1) for m, k in binomial_expansion(a, i).terms)


def o_sequence_violation(s: OSequence | Sequence[int]) -> int | None:
    """First degree at which ``s`` stops being an O-sequence, or ``None``."""
    if not isinstance(s, OSequence):
        s = OSequence(tuple(s))
    if s[0] != 1:
        return 0
    # Constant tails never violate: c <= c^<i> for every i >= 1.
    for i in range(1, s.tail_start + 1):
        if s[i + 1] > macaulay_bound(s[i], i):
            return i + 1
    return None


def is_o_sequence(s: OSequence | Sequence[int]) -> bool:
    return o_sequence_violation(s) is None


def difference(s: OSequence, k: int = 1, *, inverse: bool = False) -> OSequence:
    """``k``-fold first difference (``inverse=True`` accumulates instead).

    Uses the convention ``a_{-1} = 0``.  Accumulating a sequence that does not
    end in zeros would grow without bound and is rejected.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    for _ in range(k):
        if inverse:
            if not s.is_finite:
                raise ValueError(f"cannot accumulate {s}: it never reaches 0")
            acc = []
            total = 0
            for v in s.values:
                total += v
                acc.append(total)
            s = OSequence(tuple(acc), total)
        else:
            n = s.tail_start + 1
            diffs = [s[i] - s[i - 1] for i in range(n + 1)]
            if any(v < 0 for v in diffs):
                raise ValueError(f"first difference of {s} has negative entries")
            s = OSequence(tuple(diffs))
    return s


def signed_difference(values: Sequence[int]) -> list[int]:
    """First difference of a finite list, allowing negative entries."""
    return [values[i] - (values[i - 1] if i else 0) for i in range(len(values))]


def truncate_hf(h: OSequence | Sequence[int], e: int) -> OSequence:
    """Pointwise minimum of a Hilbert function with ``e``.

    A plain list is read as a prefix of a non-decreasing function and must
    already reach ``e``.
    """
    if e < 1:
        raise ValueError("truncation level must be positive")
    if isinstance(h, OSequence):
        values = [min(v, e) for v in h.values]
        eventual = min(h.eventual, e) if h.eventual is not None else None
        return OSequence(tuple(values), eventual)
    values = list(h)
    if not values or values[-1] < e:
        raise ValueError(f"prefix {values} never reaches the truncation level {e}")
    return OSequence(tuple(min(v, e) for v in values), e)


def is_unimodal(values: Sequence[int]) -> bool:
    i = 0
    n = len(values)
    while i + 1 < n and values[i + 1] >= values[i]:
        i += 1
    while i + 1 < n and values[i + 1] <= values[i]:
        i += 1
    return i >= n - 1


def wlp_feasible(h: OSequence | Sequence[int]) -> bool:
    """Whether ``h`` can be the Hilbert function of an Artinian algebra with WLP."""
    if isinstance(h, OSequence):
        if not h.is_finite:
            raise ValueError("an Artinian h-vector must be finite")
        values = list(h.values)
    else:
        values = list(h)
        while values and values[-1] == 0:
            values.pop()
    if not is_o_sequence(values) or not is_unimodal(values):
        return False
    positive = [max(v, 0) for v in signed_difference(values)]
    return is_o_sequence(positive)


def k_polynomial(h: OSequence, nvars: int) -> list[int]:
    """Coefficients of ``(sum_d h(d) t^d) * (1 - t)^nvars`` as a polynomial.

    Requires the sequence to be eventually constant, so at most one factor of
    ``(1 - t)`` is absorbed by the tail.
    """
    if nvars < 1 and h.eventual is not None:
        raise ValueError("an infinite series needs at least one factor of (1-t)")
    # Series = sum_{d<L} h_d t^d + c t^L / (1 - t) with L = tail_start.
    if h.eventual is None:
        poly = list(h.values) or [0]
        power = nvars
    else:
        poly = signed_difference(list(h.values))
        power = nvars - 1
    for _ in range(power):
        poly = [a - b for a, b in zip(poly + [0], [0] + poly)]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly
