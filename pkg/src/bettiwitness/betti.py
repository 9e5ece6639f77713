"""Betti diagrams, predicted entries, consecutive cancellation and incomparability."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from .oseq import OSequence, k_polynomial

NCOLS = 4  # columns 0..3: points in P^3 have projective dimension at most 3


class HilbertMismatch(ValueError):
    """The two diagrams do not share alternating sums, hence not one Hilbert function."""


@dataclass(frozen=True)
class BettiDiagram:
    """Graded Betti numbers ``beta[(i, j)]`` of a cyclic quotient ``R/I``."""

    entries: Mapping[tuple[int, int], int]

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.entries).items():
            v = int(v)
            if v < 0:
                raise ValueError(f"negative Betti number at {(i, j)}")
            if v:
                clean[(int(i), int(j))] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, BettiDiagram):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries.items()))

    def __le__(self, other: "BettiDiagram") -> bool:
        keys = set(self.entries) | set(other.entries)
        return all(self[k] <= other[k] for k in keys)

    @property
    def max_column(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def degrees(self) -> list[int]:
        return sorted({j for _, j in self.entries})

    def column(self, j: int) -> list[int]:
        return [self[(i, j)] for i in range(NCOLS)]

    def alternating_sums(self) -> dict[int, int]:
        sums: dict[int, int] = {}
        for (i, j), v in self.entries.items():
            sums[j] = sums.get(j, 0) + (-1) ** i * v
        return {j: v for j, v in sums.items() if v}

    def k_polynomial(self) -> list[int]:
        sums = self.alternating_sums()
        top = max(sums, default=0)
        return [sums.get(j, 0) for j in range(top + 1)]

    def satisfies_hilbert_identity(self, h: OSequence, nvars: int) -> bool:
        """Check sum (-1)^i beta_ij t^j == HS(t) (1-t)^nvars exactly."""
        lhs = self.k_polynomial()
        rhs = k_polynomial(h, nvars)
        n = max(len(lhs), len(rhs))
        lhs += [0] * (n - len(lhs))
        rhs += [0] * (n - len(rhs))
        return lhs == rhs

    def to_json(self) -> dict:
        out: dict[str, dict[str, int]] = {}
        for (i, j), v in self.entries.items():
            out.setdefault(str(i), {})[str(j)] = v
        return out

    @classmethod
    def from_json(cls, data) -> "BettiDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(int(i), int(j)): v for i, row in data.items() for j, v in row.items()})

    def render(self, ncols: int | None = None) -> str:
        """Row ``r`` lists ``beta[i, i + r]``; zeros print as ``-``."""
        ncols = ncols or max(self.max_column + 1, NCOLS)
        rows = [j - i for i, j in self.entries] or [0]
        lo, hi = min(rows), max(rows)
        cells = [[(str(self[(i, i + r)]) if self[(i, i + r)] else "-") for i in range(ncols)] for r in range(lo, hi + 1)]
        width = max(len(c) for row in cells for c in row)
        label = len(str(hi))
        lines = []
        for r, row in zip(range(lo, hi + 1), cells):
            lines.append(f"{r:>{label}} : " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class DiagramConstraints:
    required_values: tuple[tuple[tuple[int, int], int], ...] = ()
    required_zeros: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        demanded = dict(self.required_values)
        for key in self.required_zeros:
            if demanded.get(key, 0):
                raise ValueError(f"entry {key} is required both zero and {demanded[key]}")

    def check(self, diagram: BettiDiagram) -> list[dict]:
        """One record per constraint with the expected and observed entry."""
        out = []
        for (i, j), want in self.required_values:
            got = diagram[(i, j)]
            out.append({"entry": [i, j], "expected": want, "observed": got, "ok": got == want})
        for i, j in self.required_zeros:
            got = diagram[(i, j)]
            out.append({"entry": [i, j], "expected": 0, "observed": got, "ok": got == 0})
        return out

    def to_json(self) -> dict:
        return {
            "required_values": [[list(k), v] for k, v in self.required_values],
            "required_zeros": [list(k) for k in self.required_zeros],
        }


def predict_constraints(inv) -> tuple[DiagramConstraints, DiagramConstraints]:
    """Entries pinned for the ACM-curve side and the liaison side.

    ``inv`` needs ``d``, ``t``, ``s`` and ``tail`` (the values after the plateau).
    The ACM side has zero rows ``t+1..s`` and ``d - b`` generators in degree
    ``s+2``; the liaison side has a permanent ``1`` at ``(3, s+2)``, a zero row
    ``s`` and ``d - 1 - b`` generators in degree ``s+2``, with ``b`` the first
    tail value (0 without tail).
    """
    d, t, s = inv.d, inv.t, inv.s
    b = inv.tail[0] if inv.tail else 0
    z_zeros = [(i, i + r) for r in range(t + 1, s + 1) for i in range(1, NCOLS)]
    z_side = DiagramConstraints(required_values=(((1, s + 2), d - b),), required_zeros=tuple(z_zeros))
    zp_zeros = [(i, i + s) for i in range(1, NCOLS)]
    zp_side = DiagramConstraints(
        required_values=(((3, s + 2), 1), ((1, s + 2), d - 1 - b)),
        required_zeros=tuple(zp_zeros),
    )
    return z_side, zp_side


# --- consecutive cancellation ---------------------------------------------


@dataclass(frozen=True)
class Reachability:
    reachable: bool
    certificate: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __bool__(self):
        return self.reachable


def _require_same_hilbert(a: BettiDiagram, b: BettiDiagram):
    if a.alternating_sums() != b.alternating_sums():
        raise HilbertMismatch("diagrams have different alternating sums")


def cancellation_reachable(source: BettiDiagram, target: BettiDiagram) -> Reachability:
    """Whether ``target`` arises from ``source`` by consecutive cancellations.

    Per internal degree the multiplicities ``c_i`` (cancelling ``beta[i, j]``
    against ``beta[i+1, j]``) are forced by a telescoping scan; the certificate
    records the non-zero ones.
    """
    _require_same_hilbert(source, target)
    cert: dict[tuple[int, int], int] = {}
    for j in sorted(set(source.degrees()) | set(target.degrees())):
        src, dst = source.column(j), target.column(j)
        prev = 0
        for i in range(NCOLS - 1):
            c = src[i] - dst[i] - prev
            if c < 0:
                return Reachability(False)
            if c:
                cert[(i, j)] = c
            prev = c
        if src[NCOLS - 1] - dst[NCOLS - 1] != prev:
            return Reachability(False)
    return Reachability(True, cert)


@dataclass(frozen=True)
class Incomparability:
    strongly_incomparable: bool
    common_descendant: BettiDiagram | None = None
    blocking_degrees: tuple[int, ...] = ()

    @property
    def verdict(self) -> str:
        return "StronglyIncomparable" if self.strongly_incomparable else "CommonDescendantExists"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.common_descendant is not None:
            out["common_descendant"] = self.common_descendant.to_json()
        if self.blocking_degrees:
            out["blocking_degrees"] = list(self.blocking_degrees)
        return out


def _pair_moves(a: list[int], b: list[int]) -> list[int]:
    # a - b = sum_i m_i (e_i + e_{i+1}); m is unique given equal alternating sums
    moves = []
    prev = 0
    for i in range(NCOLS - 1):
        m = a[i] - b[i] - prev
        moves.append(m)
        prev = m
    return moves


def strongly_incomparable(b1: BettiDiagram, b2: BettiDiagram) -> Incomparability:
    """Decide whether some diagram is reachable from both by cancellation.

    Degrees are independent.  Writing ``b1 - b2`` in the pair basis gives the
    offsets between the two cancellation vectors; the least cancellation on the
    ``b2`` side is ``max(0, -offset)`` and every other choice only lowers the
    candidate, so that single candidate decides the degree.
    """
    _require_same_hilbert(b1, b2)
    common: dict[tuple[int, int], int] = {}
    blocked = []
    for j in sorted(set(b1.degrees()) | set(b2.degrees())):
        x, y = b1.column(j), b2.column(j)
        offsets = _pair_moves(x, y)
        c2 = [max(0, -m) for m in offsets]
        cand = list(y)
        for i, c in enumerate(c2):
            cand[i] -= c
            cand[i + 1] -= c
        if min(cand) < 0:
            blocked.append(j)
            continue
        for i, v in enumerate(cand):
            if v:
                common[(i, j)] = v
    if blocked:
        return Incomparability(True, None, tuple(blocked))
    return Incomparability(False, BettiDiagram(common))


def descendants(diagram: BettiDiagram) -> set[BettiDiagram]:
    """Every diagram reachable by consecutive cancellation (exhaustive; small inputs only)."""
    per_degree = []
    for j in diagram.degrees():
        col = diagram.column(j)
        options = set()
        bound = max(col)
        for cs in product(range(bound + 1), repeat=NCOLS - 1):
            v = list(col)
            for i, c in enumerate(cs):
                v[i] -= c
                v[i + 1] -= c
            if min(v) >= 0:
                options.add(tuple(v))
        per_degree.append((j, sorted(options)))
    out = set()
    for choice in product(*(opts for _, opts in per_degree)):
        entries = {}
        for (j, _), col in zip(per_degree, choice):
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        out.add(BettiDiagram(entries))
    return out


def from_columns(columns: Mapping[int, Iterable[int]]) -> BettiDiagram:
    return BettiDiagram({(i, j): v for j, col in columns.items() for i, v in enumerate(col)})
