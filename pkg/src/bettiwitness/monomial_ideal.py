"""Monomial ideals in two or three variables: lex segments, Eliahou-Kervaire Betti numbers, socles.

Variables are ordered ``x1 > x2 > x3`` (or ``x2 > x3`` for the two-variable
ring), and exponent tuples list them in that order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .algebra import divides, monomials
from .betti import BettiDiagram
from .oseq import OSequence, o_sequence_violation


class NotOSequence(ValueError):
    def __init__(self, sequence, degree):
        super().__init__(f"{sequence} is not an O-sequence (violation in degree {degree})")
        self.sequence = sequence
        self.degree = degree


class TooManyVariablesRequired(ValueError):
    pass


class NotStable(ValueError):
    pass


class NotArtinian(ValueError):
    pass


def _minimalize(gens) -> tuple[tuple[int, ...], ...]:
    gens = sorted(set(gens), key=lambda g: (sum(g), tuple(-x for x in g)))
    kept: list[tuple[int, ...]] = []
    for g in gens:
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    nvars: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.gens)
        if any(len(g) != self.nvars for g in gens):
            raise ValueError("generator arity does not match nvars")
        object.__setattr__(self, "gens", _minimalize(gens))

    def contains(self, m) -> bool:
        return any(divides(g, m) for g in self.gens)

    def generators_in_degree(self, d: int) -> list[tuple[int, ...]]:
        return [g for g in self.gens if sum(g) == d]

    def standard_monomials(self, d: int) -> list[tuple[int, ...]]:
        return [m for m in monomials(self.nvars, d) if not self.contains(m)]

    def is_artinian(self) -> bool:
        return all(any(sum(g) == g[k] for g in self.gens) for k in range(self.nvars))

    def max_generator_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def all_standard_monomials(self) -> list[tuple[int, ...]]:
        """Every standard monomial of an Artinian ideal, by degree then lex."""
        if not self.is_artinian():
            raise NotArtinian(f"{self.to_json()} has an infinite quotient")
        out = []
        d = 0
        while True:
            block = self.standard_monomials(d)
            if not block:
                return out
            out.extend(block)
            d += 1

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data) -> "MonomialIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["nvars"], tuple(tuple(g) for g in data["gens"]))


def graded_dimension(ideal: MonomialIdeal, d: int) -> int:
    """``dim (S/J)_d``: the number of standard monomials of degree ``d``."""
    return len(ideal.standard_monomials(d))


def hilbert_function(ideal: MonomialIdeal, upto: int) -> list[int]:
    return [graded_dimension(ideal, d) for d in range(upto + 1)]


def lex_ideal(h: OSequence, nvars: int) -> MonomialIdeal:
    """The lex-segment ideal whose quotient has Hilbert function ``h``.

    Each degree keeps the lex-smallest ``h(d)`` monomials standard; whatever
    the previous degree does not already force becomes a new generator.
    """
    bad = o_sequence_violation(h)
    if bad is not None:
        raise NotOSequence(h, bad)
    if h[1] > nvars:
        raise TooManyVariablesRequired(f"h_1 = {h[1]} needs more than {nvars} variables")
    # Lex ideals with eventually constant Hilbert function c are generated in
    # degree <= max(tail start, c) (Gotzmann persistence); two spare degrees
    # confirm nothing new appears.
    last = max(h.tail_start, h.eventual or 0) + 2
    gens: list[tuple[int, ...]] = []
    for d in range(1, last + 1):
        mons = monomials(nvars, d)
        n_in = len(mons) - h[d]
        if n_in < 0:
            raise NotOSequence(h, d)
        segment = mons[:n_in]
        if any(divides(g, m) for m in mons[n_in:] for g in gens):
            raise NotOSequence(h, d)
        gens.extend(m for m in segment if not any(divides(g, m) for g in gens))
    ideal = MonomialIdeal(nvars, tuple(gens))
    if ideal.max_generator_degree() > last - 2 and h.eventual is not None:
        raise RuntimeError("lex ideal did not stabilise within the Gotzmann bound")
    return ideal


def is_stable(ideal: MonomialIdeal) -> bool:
    """Strong stability check on minimal generators: ``x_j m / x_i`` stays in J for ``j < i``."""
    for g in ideal.gens:
        for i in range(ideal.nvars):
            if g[i] == 0:
                continue
            for j in range(i):
                m = list(g)
                m[i] -= 1
                m[j] += 1
                if not ideal.contains(m):
                    return False
    return True


def _max_index(g: tuple[int, ...]) -> int:
    return max(k for k, e in enumerate(g) if e) + 1


def ek_betti(ideal: MonomialIdeal) -> BettiDiagram:
    """Graded Betti numbers of ``S/J`` for a stable ideal (Eliahou-Kervaire)."""
    if not is_stable(ideal):
        raise NotStable(f"{ideal.to_json()} is not stable")
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    for g in ideal.gens:
        deg = sum(g)
        m = _max_index(g)
        for q in range(1, m + 1):
            key = (q, deg + q - 1)
            entries[key] = entries.get(key, 0) + comb(m - 1, q - 1)
    return BettiDiagram(entries)


def socle_degrees(ideal: MonomialIdeal, upto: int | None = None) -> list[int]:
    """Degrees of the socle monomials of ``S/J``, with multiplicity.

    Artinian ideals are scanned in full by default; otherwise only degrees up
    to ``upto`` (default: the largest generator degree) are scanned.
    """
    if upto is None:
        upto = ideal.max_generator_degree()
        if ideal.is_artinian():
            upto = max(sum(m) for m in ideal.all_standard_monomials())
    out = []
    for d in range(upto + 1):
        for m in ideal.standard_monomials(d):
            if all(ideal.contains(tuple(e + (k == v) for k, e in enumerate(m))) for v in range(ideal.nvars)):
                out.append(d)
    return out


def tail_radical_is_point(ideal: MonomialIdeal, eventual: int) -> bool:
    """Check that in high degree the standard monomials are the last ``eventual`` lex ones.

    For a 3-variable lex ideal this means the ideal agrees with ``(x1, x2^eventual)``
    eventually, whose radical ``(x1, x2)`` defines a single point.
    """
    if ideal.nvars != 3 or eventual not in (1, 2):
        return False
    d = ideal.max_generator_degree() + 1
    expected = [m for m in monomials(3, d)][-eventual:]
    return ideal.standard_monomials(d) == expected and all(m[0] == 0 for m in expected)
