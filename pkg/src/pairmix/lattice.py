"""Integer lattices and finitely generated abelian groups.

Sublattices of Z^r are kept in row Hermite normal form, which gives a
canonical basis and a canonical coset representative for every vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(
    rows: Sequence[Sequence[int]], ncols: int
) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-style HNF.

    Returns (H, U, pivots) with U unimodular, U @ rows == H, H in echelon
    form with positive pivots and entries above each pivot reduced into
    [0, pivot).  Rows of U past len(pivots) span the left kernel.
    """
    A = [list(r) for r in rows]
    m = len(A)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    p = 0
    for col in range(ncols):
        if p >= m:
            break
        for i in range(p + 1, m):
            b = A[i][col]
            if b == 0:
                continue
            a = A[p][col]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            for M in (A, U):
                rp, ri = M[p], M[i]
                M[p] = [x * u + y * v for u, v in zip(rp, ri)]
                M[i] = [-bg * u + ag * v for u, v in zip(rp, ri)]
        piv = A[p][col]
        if piv == 0:
            continue
        if piv < 0:
            A[p] = [-u for u in A[p]]
            U[p] = [-u for u in U[p]]
            piv = -piv
        for i in range(p):
            q = A[i][col] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[p])]
                U[i] = [u - q * v for u, v in zip(U[i], U[p])]
        pivots.append(col)
        p += 1
    return A, U, pivots


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim, stored by its HNF basis (canonical)."""

    dim: int
    basis: tuple[Vec, ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], dim: int) -> Lattice:
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != dim:
                raise ValueError(f"vector {g} has wrong length, expected {dim}")
        if not gens:
            return cls(dim, (), ())
        H, _, pivots = hermite_normal_form(gens, dim)
        return cls(dim, tuple(tuple(r) for r in H[: len(pivots)]), tuple(pivots))

    @classmethod
    def full(cls, dim: int) -> Lattice:
        return cls.from_generators([tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def index(self) -> int | None:
        """Index in Z^dim, or None when the lattice is not of full rank."""
        if self.rank < self.dim:
            return None
        out = 1
        for row, c in zip(self.basis, self.pivots):
            out *= row[c]
        return out

    def reduce(self, v: Sequence[int]) -> tuple[Vec, tuple[int, ...]]:
        """Split v = rep + sum(c_i * basis_i) with rep the canonical coset representative."""
        w = list(v)
        coeffs = []
        for row, c in zip(self.basis, self.pivots):
            q = w[c] // row[c]
            coeffs.append(q)
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return tuple(w), tuple(coeffs)

    def contains(self, v: Sequence[int]) -> bool:
        rep, _ = self.reduce(v)
        return not any(rep)

    def contains_lattice(self, other: Lattice) -> bool:
        return all(self.contains(b) for b in other.basis)

    def intersect(self, other: Lattice) -> Lattice:
        if self.is_zero() or other.is_zero():
            return Lattice(self.dim, (), ())
        stacked = list(self.basis) + [tuple(-a for a in b) for b in other.basis]
        _, U, pivots = hermite_normal_form(stacked, self.dim)
        r1 = self.rank
        kernel = []
        for row in U[len(pivots):]:
            a = row[:r1]
            kernel.append(
                tuple(sum(ai * bi[j] for ai, bi in zip(a, self.basis)) for j in range(self.dim))
            )
        return Lattice.from_generators(kernel, self.dim)


class LinearIso:
    """An isomorphism between sublattices, fixed by the images of a basis."""

    def __init__(self, source: Sequence[Sequence[int]], target: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        self.source_gens = [tuple(s) for s in source]
        self.target_gens = [tuple(t) for t in target]
        if len(self.source_gens) != len(self.target_gens):
            raise ValueError("source and target bases differ in length")
        self.source = Lattice.from_generators(self.source_gens, dim)
        self.target = Lattice.from_generators(self.target_gens, dim)
        if self.source.rank != len(self.source_gens) or self.target.rank != len(self.target_gens):
            raise ValueError("generators must be linearly independent")
        self._fwd = self._coordinate_map(self.source_gens)
        self._bwd = self._coordinate_map(self.target_gens)

    def _coordinate_map(self, gens):
        if not gens:
            return []
        _, U, pivots = hermite_normal_form(gens, self.dim)
        return U[: len(pivots)]

    def _apply(self, v, lat: Lattice, U, image_gens) -> Vec:
        rep, c = lat.reduce(v)
        if any(rep):
            raise ValueError(f"{tuple(v)} is outside the domain")
        coords = [sum(ci * U[i][j] for i, ci in enumerate(c)) for j in range(len(image_gens))]
        out = [0] * self.dim
        for cj, g in zip(coords, image_gens):
            if cj:
                out = [a + cj * b for a, b in zip(out, g)]
        return tuple(out)

    def __call__(self, v: Sequence[int]) -> Vec:
        return self._apply(v, self.source, self._fwd, self.target_gens)

    def inverse(self, v: Sequence[int]) -> Vec:
        return self._apply(v, self.target, self._bwd, self.source_gens)

    def preimage(self, lat: Lattice) -> Lattice:
        """phi^{-1}(lat) for a sublattice of the target."""
        return Lattice.from_generators([self.inverse(b) for b in lat.basis], self.dim)

    def inverted(self) -> LinearIso:
        return LinearIso(self.target_gens, self.source_gens, self.dim)


@dataclass(frozen=True)
class FGAbelianSpec:
    """Z^free_rank x Z/t_1 x ... x Z/t_s, elements as integer tuples."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(t < 2 for t in self.torsion):
            raise ValueError("free rank must be >= 0 and torsion orders >= 2")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def zero(self) -> Vec:
        return (0,) * self.ngens

    def normalize(self, v: Sequence[int]) -> Vec:
        r = self.free_rank
        return tuple(v[:r]) + tuple(x % t for x, t in zip(v[r:], self.torsion))

    def add(self, u: Vec, v: Vec) -> Vec:
        return self.normalize([a + b for a, b in zip(u, v)])

    def neg(self, u: Vec) -> Vec:
        return self.normalize([-a for a in u])

    def scale(self, u: Vec, k: int) -> Vec:
        return self.normalize([k * a for a in u])

    def gen(self, i: int) -> Vec:
        return tuple(int(i == j) for j in range(self.ngens))

    def is_infinite(self) -> bool:
        return self.free_rank > 0

    def has_infinite_order(self, u: Vec) -> bool:
        return any(u[: self.free_rank])

    def order(self, u: Vec) -> int | None:
        if self.has_infinite_order(u):
            return None
        from math import gcd

        out = 1
        for x, t in zip(u[self.free_rank:], self.torsion):
            o = t // gcd(x, t)
            out = out * o // gcd(out, o)
        return out
