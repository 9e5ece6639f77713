"""Exact arithmetic over a prime field: dense matrices and homogeneous polynomials.

Matrices are ``numpy.int64`` arrays holding residues in ``[0, p)``.  Products
are routed through float64 BLAS when every partial sum is exactly
representable, which holds comfortably for the default modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_PRIME = 32003
SECOND_PRIME = 31991
# Keeps p^2 * (inner dimension) far below 2^63 for the int64 fallback.
MAX_PRIME = 1 << 20

_FLOAT_EXACT = float(1 << 53)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= MAX_PRIME:
            raise ValueError(f"modulus {self.p} is above the supported bound {MAX_PRIME}")

    def inv(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)

    def __call__(self, a) -> int:
        return int(a) % self.p


def as_matrix(rows, p: int, ncols: int | None = None) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else np.zeros((0, ncols or 0), dtype=np.int64)
    return np.mod(m, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b`` reduced mod ``p``."""
    inner = a.shape[1]
    if inner == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if inner * float(p - 1) ** 2 < _FLOAT_EXACT:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(prod, p).astype(np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(inner):
        out = np.mod(out + np.outer(a[:, k], b[k]), p)
    return out


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the non-zero rows and pivot columns."""
    a = np.mod(np.array(m, dtype=np.int64, copy=True), p)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = np.mod(a[r, c:] * inv, p)
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[np.ix_(rows, np.arange(c, ncols))] = np.mod(
                a[np.ix_(rows, np.arange(c, ncols))] - np.outer(col[rows], a[r, c:]), p
            )
        pivots.append(c)
        r += 1
    return a[:r], pivots


def mat_rank(m, p: int = DEFAULT_PRIME) -> int:
    """Rank over ``F_p``."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def mat_kernel(m, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Basis of the right kernel ``{v : m v = 0}`` as rows."""
    m = np.asarray(m, dtype=np.int64)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(m, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-r[row, f]) % p
    return basis


def reduce_rows(v: np.ndarray, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Normal form of each row of ``v`` modulo the span of an RREF ``basis``."""
    if len(pivots) == 0 or v.shape[0] == 0:
        return np.mod(v, p)
    return np.mod(v - matmul(v[:, list(pivots)], basis, p), p)


def independent_rows(m: np.ndarray, p: int, start: int = 0) -> list[int]:
    """Indices of a maximal set of rows independent in order of appearance.

    Rows before ``start`` are assumed independent and are always kept.
    """
    m = np.mod(np.asarray(m, dtype=np.int64), p)
    chosen = list(range(start))
    basis, pivots = rref(m[:start], p) if start else (np.zeros((0, m.shape[1]), np.int64), [])
    if len(pivots) != start:
        raise ValueError("the leading rows are not independent")
    for i in range(start, m.shape[0]):
        if len(pivots) == m.shape[1]:
            break
        v = reduce_rows(m[i : i + 1], basis, pivots, p)[0]
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        c = int(nz[0])
        v = np.mod(v * pow(int(v[c]), -1, p), p)
        # keep the basis reduced at the new pivot
        col = basis[:, c].copy() if basis.shape[0] else np.zeros(0, np.int64)
        if col.size:
            basis = np.mod(basis - np.outer(col, v), p)
        basis = np.vstack([basis, v])
        pivots = pivots + [c]
        chosen.append(i)
    return chosen


# --- monomials -------------------------------------------------------------


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given degree, lex-descending (x1 > x2 > ...)."""
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


@lru_cache(maxsize=None)
def shift_map(nvars: int, degree: int, var: int) -> np.ndarray:
    """Column positions of ``x_var * m`` in degree ``degree + 1``."""
    target = monomial_index(nvars, degree + 1)
    out = []
    for m in monomials(nvars, degree):
        e = list(m)
        e[var] += 1
        out.append(target[tuple(e)])
    return np.array(out, dtype=np.int64)


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


# --- polynomials -----------------------------------------------------------


class Polynomial:
    """Homogeneous polynomial over ``F_p`` stored as ``{exponents: coefficient}``."""

    __slots__ = ("nvars", "p", "terms", "degree")

    def __init__(self, terms: Mapping[tuple[int, ...], int], nvars: int, p: int = DEFAULT_PRIME):
        clean = {}
        for e, c in terms.items():
            c = int(c) % p
            if c:
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has the wrong arity for {nvars} variables")
                clean[e] = (clean.get(e, 0) + c) % p
        clean = {e: c for e, c in clean.items() if c}
        degrees = {sum(e) for e in clean}
        if len(degrees) > 1:
            raise ValueError("polynomial is not homogeneous")
        self.nvars = nvars
        self.p = p
        self.terms = clean
        self.degree = degrees.pop() if degrees else 0

    @classmethod
    def one(cls, nvars: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls({(0,) * nvars: 1}, nvars, p)

    @classmethod
    def variable(cls, k: int, nvars: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): 1}, nvars, p)

    @classmethod
    def linear(cls, coeffs: Sequence[int], p: int = DEFAULT_PRIME) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * n
            e[k] = 1
            terms[tuple(e)] = c
        return cls(terms, n, p)

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars, self.p, self.terms) == (other.nvars, other.p, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.to_json()}, nvars={self.nvars}, p={self.p})"

    def coefficient_vector(self) -> np.ndarray:
        """Coefficients in the lex-descending monomial basis of its degree."""
        idx = monomial_index(self.nvars, self.degree)
        v = np.zeros(len(idx), dtype=np.int64)
        for e, c in self.terms.items():
            v[idx[e]] = c
        return v

    def restrict_first(self) -> "Polynomial":
        """Set the first variable to zero and drop it."""
        return Polynomial({e[1:]: c for e, c in self.terms.items() if e[0] == 0}, self.nvars - 1, self.p)

    def to_json(self) -> list:
        return [[c, list(e)] for e, c in sorted(self.terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, data: Iterable, nvars: int, p: int = DEFAULT_PRIME) -> "Polynomial":
        return cls({tuple(e): c for c, e in data}, nvars, p)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.nvars != g.nvars or f.p != g.p:
        raise ValueError("polynomials live in different rings")
    p = f.p
    terms: dict[tuple[int, ...], int] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = (terms.get(e, 0) + c1 * c2) % p
    out = Polynomial(terms, f.nvars, p)
    if out.is_zero():
        out.degree = f.degree + g.degree
    return out


def poly_product(factors: Iterable[Polynomial], nvars: int, p: int) -> Polynomial:
    out = Polynomial.one(nvars, p)
    for f in factors:
        out = poly_mul(out, f)
    return out


def poly_eval(f: Polynomial, point: Sequence[int]) -> int:
    if len(point) != f.nvars:
        raise ValueError("point arity does not match the polynomial ring")
    p = f.p
    total = 0
    for e, c in f.terms.items():
        term = c
        for x, k in zip(point, e):
            if k:
                term = term * pow(int(x) % p, k, p) % p
        total = (total + term) % p
    return total


def poly_eval_many(f: Polynomial, points: np.ndarray) -> np.ndarray:
    """Evaluate at every row of ``points``."""
    p = f.p
    out = np.zeros(points.shape[0], dtype=np.int64)
    pts = np.mod(points, p)
    for e, c in f.terms.items():
        term = np.full(points.shape[0], c, dtype=np.int64)
        for k, power in enumerate(e):
            for _ in range(power):
                term = np.mod(term * pts[:, k], p)
        out = np.mod(out + term, p)
    return out
