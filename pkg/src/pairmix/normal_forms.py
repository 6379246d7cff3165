"""Canonical forms for amalgamated free products and HNN extensions.

Amalgams ``G0 *_Z G1`` (G0 finitely generated abelian, G1 finite, Z finite)
are rewritten into ``r1 s1 ... rl sl z`` over fixed transversals, pushing
Z-elements to the right.  HNN extensions of Z^r along sublattices are
Britton-reduced with base elements pushed to the right through each stable
letter, leaving a coset representative in front of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import IdentityInput
from .finite import FiniteGroup
from .lattice import FGAbelianSpec, Lattice, LinearIso, Vec

# --------------------------------------------------------------------------
# amalgams


@dataclass(frozen=True)
class AmalgamForm:
    """``pairs`` holds (r_i, s_i); only r_1 may be trivial in front and only
    s_l at the end.  ``z`` indexes the amalgamated subgroup table."""

    pairs: tuple[tuple[Vec, int], ...]
    z: int

    @property
    def length(self) -> int:
        return len(self.pairs)


class TransversalTable:
    """Coset representatives of Z in both factors of an amalgam.

    For G0 the representative keeps the free part and takes the
    lexicographically least torsion part of the coset; for G1 it is the
    least element index of the left coset sZ.
    """

    def __init__(self, gamma0: FGAbelianSpec, gamma1: FiniteGroup, z_elements: Sequence[tuple[Vec, int]]):
        self.gamma0 = gamma0
        self.gamma1 = gamma1
        zero = gamma0.zero()
        z = [(tuple(v), s) for v, s in z_elements]
        if (zero, gamma1.identity) not in z:
            z.insert(0, (zero, gamma1.identity))
        else:
            z.remove((zero, gamma1.identity))
            z.insert(0, (zero, gamma1.identity))
        self.z0 = [gamma0.normalize(v) for v, _ in z]
        self.z1 = [s for _, s in z]
        self._z0_index = {v: i for i, v in enumerate(self.z0)}
        self._z1_index = {s: i for i, s in enumerate(self.z1)}
        if len(self._z0_index) != len(z) or len(self._z1_index) != len(z):
            raise ValueError("amalgamated subgroup embeddings must be injective")
        if any(gamma0.has_infinite_order(v) for v in self.z0):
            raise ValueError("amalgamated subgroup must be finite")
        for i in range(len(z)):
            for j in range(len(z)):
                k = self._z0_index.get(gamma0.add(self.z0[i], self.z0[j]))
                if k is None or self.z1[k] != gamma1.mul(self.z1[i], self.z1[j]):
                    raise ValueError("amalgamated subgroup data is not a common subgroup")
        self._f0: dict[Vec, tuple[Vec, int]] = {}
        self._f1 = []
        for x in range(len(gamma1)):
            coset = [gamma1.mul(x, s) for s in self.z1]
            rep = min(coset)
            zi = self._z1_index[gamma1.mul(gamma1.inv(rep), x)]
            self._f1.append((rep, zi))

    @property
    def order_z(self) -> int:
        return len(self.z0)

    def z_add(self, i: int, j: int) -> int:
        return self._z0_index[self.gamma0.add(self.z0[i], self.z0[j])]

    def z_neg(self, i: int) -> int:
        return self._z0_index[self.gamma0.neg(self.z0[i])]

    def z_of_gamma0(self, v: Vec) -> int | None:
        return self._z0_index.get(v)

    def factor0(self, v: Vec) -> tuple[Vec, int]:
        """v = rep + z0[zi]."""
        r = self.gamma0.free_rank
        tors = v[r:]
        hit = self._f0.get(tors)
        if hit is None:
            g0 = self.gamma0
            pad = (0,) * r
            rep_t = min(g0.add(pad + tors, z)[r:] for z in self.z0)
            diff = g0.add(pad + tors, g0.neg(pad + rep_t))
            hit = (rep_t, self._z0_index[diff])
            self._f0[tors] = hit
        rep_t, zi = hit
        return tuple(v[:r]) + rep_t, zi

    def factor1(self, x: int) -> tuple[int, int]:
        """x = rep * z1[zi]."""
        return self._f1[x]


def _amalgam_syllables(form: AmalgamForm, table: TransversalTable) -> list[tuple[int, object]]:
    syl: list[tuple[int, object]] = []
    zero, e1 = table.gamma0.zero(), table.gamma1.identity
    for r, s in form.pairs:
        if r != zero:
            syl.append((0, r))
        if s != e1:
            syl.append((1, s))
    return syl


def _amalgam_pack(syl: list[tuple[int, object]], tail: int, table: TransversalTable) -> AmalgamForm:
    zero, e1 = table.gamma0.zero(), table.gamma1.identity
    pairs = []
    i = 0
    while i < len(syl):
        r = zero
        if syl[i][0] == 0:
            r = syl[i][1]
            i += 1
        s = e1
        if i < len(syl) and syl[i][0] == 1:
            s = syl[i][1]
            i += 1
        pairs.append((r, s))
    return AmalgamForm(tuple(pairs), tail)


def _amalgam_push(table: TransversalTable, syl: list, tail: int, factor: int, x) -> int:
    """Append one factor element to (syl, tail) in place; returns the new tail."""
    if factor == 0:
        g0 = table.gamma0
        y = g0.add(table.z0[tail], g0.normalize(x))
        if syl and syl[-1][0] == 0:
            y = g0.add(syl.pop()[1], y)
        rep, zi = table.factor0(y)
        if any(rep):
            syl.append((0, rep))
        return zi
    g1 = table.gamma1
    y = g1.mul(table.z1[tail], x)
    if syl and syl[-1][0] == 1:
        y = g1.mul(syl.pop()[1], y)
    rep, zi = table.factor1(y)
    if rep != g1.identity:
        syl.append((1, rep))
    return zi


def amalgam_normalize(table: TransversalTable, raw: Iterable[tuple[int, object]]) -> AmalgamForm:
    """Normal form of a product of factor elements ``(factor, element)``.

    Factor 0 elements are G0 vectors, factor 1 elements are G1 indices.
    Adjacent syllables of one factor merge; syllables landing in Z are
    absorbed into the tail.
    """
    syl: list = []
    tail = 0
    for factor, x in raw:
        tail = _amalgam_push(table, syl, tail, factor, x)
    return _amalgam_pack(syl, tail, table)


def amalgam_mul(table: TransversalTable, x: AmalgamForm, y: AmalgamForm) -> AmalgamForm:
    syl = _amalgam_syllables(x, table)
    tail = x.z
    for factor, el in _amalgam_syllables(y, table):
        tail = _amalgam_push(table, syl, tail, factor, el)
    tail = _amalgam_push(table, syl, tail, 0, table.z0[y.z])
    return _amalgam_pack(syl, tail, table)


def amalgam_inv(table: TransversalTable, x: AmalgamForm) -> AmalgamForm:
    syl: list = []
    tail = 0
    tail = _amalgam_push(table, syl, tail, 0, table.gamma0.neg(table.z0[x.z]))
    for factor, el in reversed(_amalgam_syllables(x, table)):
        inv = table.gamma0.neg(el) if factor == 0 else table.gamma1.inv(el)
        tail = _amalgam_push(table, syl, tail, factor, inv)
    return _amalgam_pack(syl, tail, table)


def amalgam_syllable_count(table: TransversalTable, x: AmalgamForm) -> int:
    return len(_amalgam_syllables(x, table))


# --------------------------------------------------------------------------
# HNN extensions


@dataclass(frozen=True)
class HnnForm:
    """g_0 t^e_1 g_1 ... t^e_n g_n stored as ((g_0, e_1), ..., (g_{n-1}, e_n)) and g_n.

    g_i (i < n) is the coset representative modulo H when e_{i+1} = +1 and
    modulo K when e_{i+1} = -1.
    """

    letters: tuple[tuple[Vec, int], ...]
    tail: Vec

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.letters)


class HnnSpec:
    """HNN(Z^r, H, K, phi) with t^-1 h t = phi(h); phi fixed on a basis of H."""

    def __init__(self, rank: int, h_basis: Sequence[Sequence[int]], k_basis: Sequence[Sequence[int]]):
        self.rank = rank
        self.phi = LinearIso(h_basis, k_basis, rank)
        self.H = self.phi.source
        self.K = self.phi.target
        self.h_basis = [tuple(v) for v in h_basis]
        self.k_basis = [tuple(v) for v in k_basis]

    def zero(self) -> Vec:
        return (0,) * self.rank

    def inverted(self) -> HnnSpec:
        """Same group with stable letter t^-1: swaps H and K, replaces phi by phi^-1."""
        return HnnSpec(self.rank, self.k_basis, self.h_basis)

    def push_stable(self, letters: list, tail: Vec, e: int) -> Vec:
        """Append t^e to (letters, tail) in place, pinching when possible."""
        sub, move = (self.H, self.phi.__call__) if e == 1 else (self.K, self.phi.inverse)
        if letters and letters[-1][1] == -e and sub.contains(tail):
            prev, _ = letters.pop()
            pinched = move(tail)
            return tuple(a + b for a, b in zip(prev, pinched))
        rep, _ = sub.reduce(tail)
        rest = tuple(a - b for a, b in zip(tail, rep))
        letters.append((rep, e))
        return move(rest)

    def mul(self, x: HnnForm, y: HnnForm) -> HnnForm:
        letters = list(x.letters)
        tail = x.tail
        for g, e in y.letters:
            tail = tuple(a + b for a, b in zip(tail, g))
            tail = self.push_stable(letters, tail, e)
        tail = tuple(a + b for a, b in zip(tail, y.tail))
        return HnnForm(tuple(letters), tail)

    def inv(self, x: HnnForm) -> HnnForm:
        letters: list = []
        tail = tuple(-a for a in x.tail)
        for g, e in reversed(x.letters):
            tail = self.push_stable(letters, tail, -e)
            tail = tuple(a - b for a, b in zip(tail, g))
        return HnnForm(tuple(letters), tail)


RawLetter = Union[int, Sequence[int]]


def britton_reduce(spec: HnnSpec, raw: Iterable) -> HnnForm:
    """Reduce a sequence of base vectors and stable-letter signs (+1 / -1).

    Pinches t^-1 h t -> phi(h) and t k t^-1 -> phi^-1(k) as soon as they
    appear while scanning left to right; the result is Britton-reduced and
    transversal-normalized, hence unique.
    """
    letters: list = []
    tail = spec.zero()
    for item in raw:
        if isinstance(item, int):
            if item not in (1, -1):
                raise ValueError("stable letter exponent must be +1 or -1")
            tail = spec.push_stable(letters, tail, item)
        else:
            tail = tuple(a + b for a, b in zip(tail, item))
    return HnnForm(tuple(letters), tail)


@dataclass(frozen=True)
class DomChain:
    domains: tuple[Lattice, ...]  # domains[j-1] = Dom(phi^j)

    @property
    def jmax(self) -> int:
        return len(self.domains)

    def __getitem__(self, j: int) -> Lattice:
        return self.domains[j - 1]

    def stabilizes(self) -> bool:
        return any(a == b for a, b in zip(self.domains, self.domains[1:]))


@dataclass(frozen=True)
class NoEscape:
    jmax: int


def dom_chain(spec: HnnSpec, jmax: int) -> DomChain:
    """Dom(phi^1) = H, Dom(phi^j) = phi^-1(Dom(phi^{j-1}) & K)."""
    if jmax < 1:
        raise ValueError("jmax must be positive")
    doms = [spec.H]
    while len(doms) < jmax:
        doms.append(spec.phi.preimage(doms[-1].intersect(spec.K)))
    return DomChain(tuple(doms))


def escape_index(chain: DomChain, lam: Sequence[int]) -> int | NoEscape:
    if not any(lam):
        raise IdentityInput("the identity lies in every Dom(phi^j)")
    for j, dom in enumerate(chain.domains, start=1):
        if not dom.contains(lam):
            return j
    return NoEscape(chain.jmax)


def in_dom_by_iteration(spec: HnnSpec, h: Sequence[int], j: int) -> bool:
    """Membership in Dom(phi^j) by applying phi while it is defined."""
    v = tuple(h)
    for _ in range(j):
        if not spec.H.contains(v):
            return False
        v = spec.phi(v)
    return True


def phi_power(spec: HnnSpec, h: Sequence[int], j: int) -> Vec | None:
    v = tuple(h)
    for _ in range(j):
        if not spec.H.contains(v):
            return None
        v = spec.phi(v)
    return v
