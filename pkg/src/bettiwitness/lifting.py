"""Lifting monomial ideals to reduced configurations in P^3.

Coordinates are ``[x0 : x1 : x2 : x3]``.  A monomial ``x1^a x2^b x3^c`` lifts to
the point ``[1 : c1(a) : c2(b) : c3(c)]`` and a monomial ``x2^a x3^b`` of the
two-variable ring to the line ``{x2 = c2(a) x0, x3 = c3(b) x0}``.  Lifted points
never lie on the plane ``x0 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import DEFAULT_PRIME, Polynomial, mat_kernel, mat_rank, poly_product
from .monomial_ideal import MonomialIdeal, NotArtinian


def default_scalar(j: int) -> int:
    return j


Scalars = Sequence[Callable[[int], int]]


def _scalars(scalars: Scalars | None, n: int) -> Scalars:
    return list(scalars) if scalars is not None else [default_scalar] * n


@dataclass(frozen=True)
class PointSet:
    """Points with ``x0 = 1`` as an ``(N, 4)`` array of residues, plus provenance tags."""

    coords: np.ndarray
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=np.int64).reshape(-1, 4)
        if c.shape[0] and not np.all(c[:, 0] == 1):
            raise ValueError("every point must have first coordinate 1")
        rows = {tuple(r) for r in c.tolist()}
        if len(rows) != c.shape[0]:
            raise ValueError("points are not pairwise distinct")
        tags = tuple(self.tags) or ("lifted",) * c.shape[0]
        if len(tags) != c.shape[0]:
            raise ValueError("one provenance tag per point")
        object.__setattr__(self, "coords", c)
        object.__setattr__(self, "tags", tags)

    def __len__(self):
        return self.coords.shape[0]

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(np.vstack([self.coords, other.coords]), self.tags + other.tags)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        idx = list(indices)
        return PointSet(self.coords[idx], tuple(self.tags[i] for i in idx))

    def to_json(self) -> list:
        return self.coords.tolist()

    @classmethod
    def from_json(cls, data, p: int = DEFAULT_PRIME) -> "PointSet":
        c = np.asarray(data, dtype=np.int64).reshape(-1, 4)
        c = np.mod(c, p)
        return cls(c, ("loaded",) * c.shape[0])


@dataclass(frozen=True)
class Line:
    """The common zero locus of two linear forms, with an affine parametrisation.

    ``base`` has ``x0 = 1`` and ``direction`` has ``x0 = 0``, so
    ``base + u * direction`` sweeps every point of the line off ``x0 = 0``.
    """

    forms: tuple[tuple[int, ...], tuple[int, ...]]
    base: tuple[int, ...]
    direction: tuple[int, ...]
    p: int = DEFAULT_PRIME

    @classmethod
    def from_forms(cls, f1: Sequence[int], f2: Sequence[int], p: int = DEFAULT_PRIME) -> "Line":
        m = np.mod(np.array([f1, f2], dtype=np.int64), p)
        if mat_rank(m, p) != 2:
            raise ValueError("linear forms are dependent")
        ker = mat_kernel(m, p)
        # put the kernel in the shape (x0 = 1 point, x0 = 0 direction)
        if ker[0, 0] == 0 and ker[1, 0] == 0:
            raise ValueError("line lies in the plane x0 = 0")
        a, b = (ker[0], ker[1]) if ker[0, 0] else (ker[1], ker[0])
        base = np.mod(a * pow(int(a[0]), -1, p), p)
        direction = np.mod(b - b[0] * base, p)
        return cls((tuple(int(x) for x in m[0]), tuple(int(x) for x in m[1])), tuple(int(x) for x in base), tuple(int(x) for x in direction), p)

    def point(self, u: int) -> tuple[int, ...]:
        return tuple(int((b + u * d) % self.p) for b, d in zip(self.base, self.direction))

    def points(self, params: Sequence[int]) -> np.ndarray:
        u = np.asarray(params, dtype=np.int64).reshape(-1, 1)
        return np.mod(np.array(self.base, dtype=np.int64) + u * np.array(self.direction, dtype=np.int64), self.p)

    def contains(self, point: Sequence[int]) -> bool:
        return all(sum(int(c) * int(x) for c, x in zip(f, point)) % self.p == 0 for f in self.forms)

    def to_json(self) -> list:
        return [list(self.forms[0]), list(self.forms[1])]


@dataclass(frozen=True)
class LinesUnion:
    """Lines in an order where every prefix is arithmetically Cohen-Macaulay."""

    lines: tuple[Line, ...]
    labels: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        keys = {(ln.base, ln.direction) for ln in self.lines}
        if len(keys) != len(self.lines):
            raise ValueError("lines are not pairwise distinct")

    def __len__(self):
        return len(self.lines)

    def to_json(self) -> list:
        return [ln.to_json() for ln in self.lines]


def lift_points(ideal: MonomialIdeal, scalars: Scalars | None = None, p: int = DEFAULT_PRIME) -> PointSet:
    """One point per standard monomial of an Artinian ideal in ``x1, x2, x3``."""
    if ideal.nvars != 3:
        raise ValueError("point lifting needs a 3-variable ideal")
    if not ideal.is_artinian():
        raise NotArtinian(f"{ideal.to_json()} is not Artinian")
    c = _scalars(scalars, 3)
    pts = [(1, c[0](a) % p, c[1](b) % p, c[2](g) % p) for a, b, g in ideal.all_standard_monomials()]
    return PointSet(np.array(pts, dtype=np.int64).reshape(-1, 4), ("lifted",) * len(pts))


def lift_factors(m: Sequence[int], scalars: Scalars | None = None, p: int = DEFAULT_PRIME) -> list[tuple[int, ...]]:
    """Linear factors ``x_i - c_i(j) x0`` of the lift of a monomial in ``x1..x3``, as coefficient 4-tuples."""
    c = _scalars(scalars, len(m))
    out = []
    for i, e in enumerate(m):
        for j in range(e):
            form = [0, 0, 0, 0]
            form[0] = (-c[i](j)) % p
            form[i + 1 + (3 - len(m))] = 1
            out.append(tuple(form))
    return out


def lift_generator(m: Sequence[int], scalars: Scalars | None = None, p: int = DEFAULT_PRIME) -> Polynomial:
    """The lift of a monomial in ``x1, x2, x3`` (or ``x2, x3``) to ``k[x0..x3]``."""
    factors = [Polynomial.linear(f, p) for f in lift_factors(m, scalars, p)]
    return poly_product(factors, 4, p)


def distract_lines(ideal: MonomialIdeal, scalars: Scalars | None = None, p: int = DEFAULT_PRIME) -> LinesUnion:
    """One line per standard monomial ``x2^a x3^b``, in degree-then-lex order."""
    if ideal.nvars != 2:
        raise ValueError("line distraction needs a 2-variable ideal in x2, x3")
    if not ideal.is_artinian():
        raise NotArtinian(f"{ideal.to_json()} is not Artinian")
    c = _scalars(scalars, 2)
    lines = []
    labels = []
    for a, b in ideal.all_standard_monomials():
        f1 = (-c[0](a) % p, 0, 1, 0)
        f2 = (-c[1](b) % p, 0, 0, 1)
        lines.append(Line.from_forms(f1, f2, p))
        labels.append((a, b))
    return LinesUnion(tuple(lines), tuple(labels))


def grid_lines(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]], p: int = DEFAULT_PRIME) -> LinesUnion:
    """Lines ``{f_a = 0} & {g_b = 0}`` of a complete intersection of products of planes.

    Ordered by ``a + b`` then ``b``: a degree-compatible order, so each prefix is
    the lift of a monomial order ideal in two variables.
    """
    pairs = sorted(((a, b) for a in range(len(first)) for b in range(len(second))), key=lambda ab: (ab[0] + ab[1], ab[1]))
    lines = tuple(Line.from_forms(first[a], second[b], p) for a, b in pairs)
    return LinesUnion(lines, tuple(pairs))


def prefix_union(union: LinesUnion, i: int) -> LinesUnion:
    if not 1 <= i <= len(union):
        raise IndexError(f"prefix length {i} outside 1..{len(union)}")
    return LinesUnion(union.lines[:i], union.labels[:i])
