"""The concrete group families: free groups, amalgams, HNN extensions,
Z^d x| Z semidirect products, the rational triangular groups Gamma(n) and
Gamma(m, n), and free products Gamma * G with a finite group."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .core import Family
from .errors import ConfigError, NotInGroup, UnknownGenerator
from .finite import FiniteGroup
from .lattice import FGAbelianSpec, Vec
from .normal_forms import (
    AmalgamForm,
    HnnForm,
    HnnSpec,
    TransversalTable,
    amalgam_inv,
    amalgam_mul,
    amalgam_normalize,
    amalgam_syllable_count,
)


def _power_token(name: str, k: int) -> list[str]:
    if k == 0:
        return []
    return [name if k == 1 else f"{name}^{k}"]


def _vector_tokens(names: Sequence[str], v: Sequence[int]) -> list[str]:
    out: list[str] = []
    for name, k in zip(names, v):
        out += _power_token(name, k)
    return out


def _commutators(names: Sequence[str]) -> list[list[str]]:
    return [
        [a, b, f"{a}^-1", f"{b}^-1"]
        for i, a in enumerate(names)
        for b in names[i + 1:]
    ]


def _finite_relators(group: FiniteGroup) -> list[list[str]]:
    rels = []
    e = group.identity
    for a in range(len(group)):
        for b in range(len(group)):
            if a == e or b == e:
                continue
            c = group.mul(a, b)
            rel = [group.label(a), group.label(b)]
            if c != e:
                rel.append(f"{group.label(c)}^-1")
            rels.append(rel)
    return rels


# --------------------------------------------------------------------------


class FreeFamily(Family):
    """F_N on a_1..a_N; words are tuples of +-(i+1)."""

    tag = "free"

    def __init__(self, rank: int, gamma0_generator: int = 0, names: Sequence[str] | None = None):
        if rank < 1:
            raise ConfigError("free group rank must be positive")
        if not 0 <= gamma0_generator < rank:
            raise ConfigError("gamma0_generator index out of range")
        self.rank = rank
        self.gamma0_generator = gamma0_generator
        self.names = list(names) if names else (
            [chr(ord("a") + i) for i in range(rank)] if rank <= 26 else [f"a{i + 1}" for i in range(rank)]
        )
        if len(self.names) != rank:
            raise ConfigError("need one name per free generator")
        self._atoms = {n: (i + 1,) for i, n in enumerate(self.names)}

    def identity(self):
        return ()

    def mul(self, x, y):
        n, m = len(x), len(y)
        i = 0
        while i < n and i < m and x[n - 1 - i] == -y[i]:
            i += 1
        return x[: n - i] + y[i:]

    def inv(self, x):
        return tuple(-a for a in reversed(x))

    def in_gamma0(self, x) -> bool:
        g = self.gamma0_generator + 1
        return all(abs(a) == g for a in x)

    def gamma0_infinite_order(self, x) -> bool:
        return bool(x)

    def atom(self, name):
        return self._atoms.get(name)

    def format(self, x) -> str:
        if not x:
            return "1"
        out, i = [], 0
        while i < len(x):
            j = i
            while j < len(x) and x[j] == x[i]:
                j += 1
            k = (j - i) * (1 if x[i] > 0 else -1)
            out += _power_token(self.names[abs(x[i]) - 1], k)
            i = j
        return " ".join(out)

    def default_gamma_generators(self):
        return [(i + 1,) for i in range(self.rank)]

    def default_gamma0_generators(self):
        return [(self.gamma0_generator + 1,)]

    def generator_names(self):
        return list(self.names)

    def describe(self):
        return {"type": self.tag, "rank": self.rank, "gamma0_generator": self.gamma0_generator}


# --------------------------------------------------------------------------


class AmalgamFamily(Family):
    """G0 *_Z G1 with G0 finitely generated abelian and G1 finite.

    Gamma_0 is the factor G0 by default.  With ``gamma0_word`` it is the
    cyclic subgroup generated by that (cyclically reduced) element instead,
    which is how A * B with Gamma_0 = <ab> is modelled.
    """

    tag = "amalgam"

    def __init__(
        self,
        gamma0: FGAbelianSpec,
        gamma0_names: Sequence[str],
        gamma1: FiniteGroup,
        z_elements: Sequence[tuple[Vec, int]],
        gamma0_word: Sequence[str] | None = None,
    ):
        self.g0 = gamma0
        self.g1 = gamma1
        self.g0_names = list(gamma0_names)
        if len(self.g0_names) != gamma0.ngens:
            raise ConfigError("need one name per generator of the abelian factor")
        try:
            self.table = TransversalTable(gamma0, gamma1, z_elements)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.table.order_z == len(gamma1):
            raise ConfigError("Gamma_1 must differ from the amalgamated subgroup Z")
        self._atoms: dict[str, AmalgamForm] = {}
        for i, n in enumerate(self.g0_names):
            self._atoms[n] = amalgam_normalize(self.table, [(0, gamma0.gen(i))])
        for x, lab in enumerate(gamma1.labels):
            if lab in self._atoms:
                raise ConfigError(f"label {lab!r} used in both factors")
            self._atoms[lab] = amalgam_normalize(self.table, [(1, x)])
        if gamma1.cyclic_name and gamma1.cyclic_name not in self._atoms:
            self._atoms[gamma1.cyclic_name] = amalgam_normalize(self.table, [(1, 1)])
        self.gamma0_word = None
        self._cyc_len = 0
        self._cyc_powers: dict[int, AmalgamForm] = {}
        if gamma0_word is not None:
            w = self.identity()
            for tok in gamma0_word:
                w = self.mul(w, self._parse_simple(tok))
            syl = self._syllables(w)
            if len(syl) < 2 or syl[0][0] == syl[-1][0]:
                raise ConfigError("Gamma_0 word must be cyclically reduced of syllable length >= 2")
            self.gamma0_word = w
            self._cyc_len = len(syl)
        elif not gamma0.is_infinite():
            raise ConfigError("the abelian factor must be infinite when it is Gamma_0")

    def _parse_simple(self, tok: str):
        if tok in self._atoms:
            return self._atoms[tok]
        if "^" in tok:
            base, exp = tok.rsplit("^", 1)
            x, k = self._parse_simple(base), int(exp)
            if k < 0:
                x, k = self.inv(x), -k
            out = self.identity()
            for _ in range(k):
                out = self.mul(out, x)
            return out
        raise UnknownGenerator(f"unknown generator {tok!r}")

    def _syllables(self, x: AmalgamForm):
        from .normal_forms import _amalgam_syllables

        return _amalgam_syllables(x, self.table)

    def identity(self):
        return AmalgamForm((), 0)

    def mul(self, x, y):
        return amalgam_mul(self.table, x, y)

    def inv(self, x):
        return amalgam_inv(self.table, x)

    def gamma0_vector(self, x: AmalgamForm) -> Vec | None:
        """The G0 vector of x, or None when x is not in the factor G0."""
        e1 = self.g1.identity
        if not x.pairs:
            return self.table.z0[x.z]
        if len(x.pairs) == 1 and x.pairs[0][1] == e1:
            return self.g0.add(x.pairs[0][0], self.table.z0[x.z])
        return None

    def from_gamma0_vector(self, v: Vec) -> AmalgamForm:
        return amalgam_normalize(self.table, [(0, self.g0.normalize(v))])

    def _cyc_power(self, k: int) -> AmalgamForm:
        if k not in self._cyc_powers:
            base = self.gamma0_word if k > 0 else self.inv(self.gamma0_word)
            out = self.identity()
            for _ in range(abs(k)):
                out = self.mul(out, base)
            self._cyc_powers[k] = out
        return self._cyc_powers[k]

    def in_gamma0(self, x) -> bool:
        if self.gamma0_word is None:
            return self.gamma0_vector(x) is not None
        n = amalgam_syllable_count(self.table, x)
        if n == 0:
            return x == self.identity()
        if n % self._cyc_len:
            return False
        k = n // self._cyc_len
        return x == self._cyc_power(k) or x == self._cyc_power(-k)

    def gamma0_infinite_order(self, x) -> bool:
        if self.gamma0_word is not None:
            return x != self.identity()
        v = self.gamma0_vector(x)
        return v is not None and self.g0.has_infinite_order(v)

    def atom(self, name):
        return self._atoms.get(name)

    def format(self, x) -> str:
        toks: list[str] = []
        for factor, el in self._syllables(x):
            if factor == 0:
                toks += _vector_tokens(self.g0_names, el)
            else:
                toks.append(self.g1.label(el))
        toks += _vector_tokens(self.g0_names, self.table.z0[x.z])
        return " ".join(toks) or "1"

    def default_gamma_generators(self):
        gens = [self._atoms[n] for n in self.g0_names]
        gens += [amalgam_normalize(self.table, [(1, s)])
                 for s in range(len(self.g1)) if s != self.g1.identity]
        return [g for g in gens if g != self.identity()]

    def default_gamma0_generators(self):
        if self.gamma0_word is not None:
            return [self.gamma0_word]
        return [g for g in (self._atoms[n] for n in self.g0_names) if g != self.identity()]

    def generator_names(self):
        return self.g0_names + [lab for i, lab in enumerate(self.g1.labels) if i != self.g1.identity]

    def relators(self):
        rels = _commutators(self.g0_names)
        r = self.g0.free_rank
        for name, t in zip(self.g0_names[r:], self.g0.torsion):
            rels.append([f"{name}^{t}"])
        rels += _finite_relators(self.g1)
        for v, s in zip(self.table.z0, self.table.z1):
            if s == self.g1.identity:
                continue
            rels.append(_vector_tokens(self.g0_names, v) + [f"{self.g1.label(s)}^-1"])
        return rels

    def describe(self):
        d = {
            "type": self.tag,
            "gamma0": {"free_rank": self.g0.free_rank, "torsion": list(self.g0.torsion)},
            "gamma1_order": len(self.g1),
            "z_order": self.table.order_z,
        }
        if self.gamma0_word is not None:
            d["gamma0_word"] = self.format(self.gamma0_word)
        return d


# --------------------------------------------------------------------------


class HnnFamily(Family):
    """HNN(Z^r, H, K, phi) with Gamma_0 = <t>."""

    tag = "hnn"

    def __init__(self, spec: HnnSpec, base_names: Sequence[str], stable: str = "t"):
        self.spec = spec
        self.base_names = list(base_names)
        self.stable = stable
        if len(self.base_names) != spec.rank:
            raise ConfigError("need one name per base generator")
        z = spec.zero()
        self._atoms = {
            n: HnnForm((), tuple(int(i == j) for j in range(spec.rank)))
            for i, n in enumerate(self.base_names)
        }
        if stable in self._atoms:
            raise ConfigError("stable letter name clashes with a base generator")
        self._atoms[stable] = HnnForm(((z, 1),), z)

    def identity(self):
        return HnnForm((), self.spec.zero())

    def mul(self, x, y):
        return self.spec.mul(x, y)

    def inv(self, x):
        return self.spec.inv(x)

    def in_gamma0(self, x) -> bool:
        return not any(x.tail) and all(not any(g) for g, _ in x.letters)

    def gamma0_infinite_order(self, x) -> bool:
        return bool(x.letters)

    def atom(self, name):
        return self._atoms.get(name)

    def format(self, x) -> str:
        toks: list[str] = []
        run = 0
        for g, e in x.letters:
            if any(g):
                toks += _power_token(self.stable, run)
                run = 0
                toks += _vector_tokens(self.base_names, g)
            if run and (run > 0) != (e > 0):
                toks += _power_token(self.stable, run)
                run = 0
            run += e
        toks += _power_token(self.stable, run)
        toks += _vector_tokens(self.base_names, x.tail)
        return " ".join(toks) or "1"

    def default_gamma_generators(self):
        return [self._atoms[n] for n in self.base_names] + [self._atoms[self.stable]]

    def default_gamma0_generators(self):
        return [self._atoms[self.stable]]

    def generator_names(self):
        return self.base_names + [self.stable]

    def relators(self):
        t = self.stable
        rels = _commutators(self.base_names)
        for h in self.spec.h_basis:
            k = self.spec.phi(h)
            rels.append([f"{t}^-1"] + _vector_tokens(self.base_names, h) + [t]
                        + _vector_tokens(self.base_names, [-a for a in k]))
        return rels

    def describe(self):
        return {
            "type": self.tag,
            "rank": self.spec.rank,
            "h_basis": [list(v) for v in self.spec.h_basis],
            "k_basis": [list(v) for v in self.spec.k_basis],
        }


# --------------------------------------------------------------------------


def _mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def _det(M) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum(
        (-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n)
    )


def _adjugate_inverse(M) -> tuple:
    n = len(M)
    d = _det(M)
    if d not in (1, -1):
        raise ConfigError("matrix must have determinant +-1")
    if n == 1:
        return ((d,),)
    cof = [
        [(-1) ** (i + j) * _det([r[:j] + r[j + 1:] for k, r in enumerate(M) if k != i]) for j in range(n)]
        for i in range(n)
    ]
    return tuple(tuple(cof[j][i] * d for j in range(n)) for i in range(n))


class SemidirectFamily(Family):
    """Z^d x|_g Z with (v, k)(v', k') = (v + g^k v', k + k')."""

    tag = "semidirect"
    _PAIR = re.compile(r"^\(([-\d,\s]*);\s*(-?\d+)\)$")

    def __init__(self, matrix: Sequence[Sequence[int]]):
        M = tuple(tuple(int(a) for a in row) for row in matrix)
        self.dim = len(M)
        if self.dim < 1 or any(len(r) != self.dim for r in M):
            raise ConfigError("semidirect matrix must be square")
        self.matrix = M
        self.inverse_matrix = _adjugate_inverse([list(r) for r in M])
        self.names = [f"e{i + 1}" for i in range(self.dim)]
        ident = tuple(tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim))
        self._powers = {0: ident}

    def _pow(self, k: int):
        P = self._powers.get(k)
        if P is None:
            step = 1 if k > 0 else -1
            j = k
            while j not in self._powers:
                j -= step
            M = self.matrix if k > 0 else self.inverse_matrix
            P = self._powers[j]
            while j != k:
                j += step
                P = _mat_mul(P, M)
                self._powers[j] = P
        return P

    def matrix_power(self, k: int):
        return self._pow(k)

    def act(self, k: int, v: Vec) -> Vec:
        P = self._pow(k)
        return tuple(sum(a * b for a, b in zip(row, v)) for row in P)

    def identity(self):
        return ((0,) * self.dim, 0)

    def mul(self, x, y):
        v, k = x
        w, l = y
        gw = self.act(k, w) if k else w
        return (tuple(a + b for a, b in zip(v, gw)), k + l)

    def inv(self, x):
        v, k = x
        u = self.act(-k, v) if k else v
        return (tuple(-a for a in u), -k)

    def in_gamma0(self, x) -> bool:
        return not any(x[0])

    def gamma0_infinite_order(self, x) -> bool:
        return x[1] != 0

    def atom(self, name):
        if name == "t":
            return ((0,) * self.dim, 1)
        if name in self.names:
            i = self.names.index(name)
            return (tuple(int(i == j) for j in range(self.dim)), 0)
        return None

    def literal(self, token):
        m = self._PAIR.match(token)
        if not m:
            raise UnknownGenerator(f"bad pair literal {token!r}; expected (v1,...,vd;k)")
        v = tuple(int(a) for a in m.group(1).split(",") if a.strip())
        if len(v) != self.dim:
            raise NotInGroup(f"pair literal {token!r} needs {self.dim} vector entries")
        return (v, int(m.group(2)))

    def format(self, x) -> str:
        v, k = x
        return " ".join(_vector_tokens(self.names, v) + _power_token("t", k)) or "1"

    def box(self, v_bound: int, k_bound: int) -> list:
        """Payloads (v, k) with |v|_inf <= v_bound and |k| <= k_bound, ordered by (k, v)."""
        vs: list[tuple[int, ...]] = [()]
        for _ in range(self.dim):
            vs = [v + (a,) for v in vs for a in range(-v_bound, v_bound + 1)]
        return [(v, k) for k in range(-k_bound, k_bound + 1) for v in vs]

    def default_gamma_generators(self):
        return [self.atom(n) for n in self.names] + [self.atom("t")]

    def default_gamma0_generators(self):
        return [self.atom("t")]

    def generator_names(self):
        return self.names + ["t"]

    def relators(self):
        rels = _commutators(self.names)
        for i, n in enumerate(self.names):
            ge = self.act(1, tuple(int(i == j) for j in range(self.dim)))
            rels.append(["t", n, "t^-1"] + _vector_tokens(self.names, [-a for a in ge]))
        return rels

    def describe(self):
        return {"type": self.tag, "matrix": [list(r) for r in self.matrix]}


# --------------------------------------------------------------------------


def two_adic_valuation(f: Fraction) -> int:
    if f == 0:
        raise ValueError("valuation of zero")
    num, den = f.numerator, f.denominator
    v = 0
    while num % 2 == 0:
        num //= 2
        v += 1
    while den % 2 == 0:
        den //= 2
        v -= 1
    return v


def in_F(f: Fraction, n: int | None) -> bool:
    """f in F_n: 2-adic valuation a multiple of n (n=None means F_infinity)."""
    if f == 0:
        return False
    v = two_adic_valuation(f)
    return v == 0 if n is None else v % n == 0


def parse_fraction(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError):
        raise NotInGroup(f"bad rational entry {s!r}") from None


def parse_matrix_literal(token: str) -> list[list[Fraction]]:
    rows = re.findall(r"\[([^\[\]]*)\]", token)
    if not rows:
        raise UnknownGenerator(f"bad matrix literal {token!r}")
    return [[parse_fraction(a) for a in r.split(",")] for r in rows]


def format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class _TriangularBase(Family):
    size = 0

    def __init__(self, generators: dict[str, object]):
        self._atoms = {}
        for name, m in generators.items():
            M = parse_matrix_literal(m) if isinstance(m, str) else [[parse_fraction(a) for a in row] for row in m]
            self._atoms[name] = self.from_matrix(M)
        self.gen_order = list(generators)

    def from_matrix(self, M):
        raise NotImplementedError

    def matrix(self, x) -> list[list[Fraction]]:
        raise NotImplementedError

    def atom(self, name):
        return self._atoms.get(name)

    def literal(self, token):
        return self.from_matrix(parse_matrix_literal(token))

    def format(self, x) -> str:
        M = self.matrix(x)
        return "[" + ",".join("[" + ",".join(format_fraction(a) for a in r) + "]" for r in M) + "]"

    def generator_names(self):
        return list(self.gen_order)

    def relators(self):
        # only the commutation relations that actually hold among the listed generators
        names = self.gen_order
        return [
            [a, b, f"{a}^-1", f"{b}^-1"]
            for i, a in enumerate(names)
            for b in names[i + 1:]
            if self.mul(self._atoms[a], self._atoms[b]) == self.mul(self._atoms[b], self._atoms[a])
        ]

    def _check_shape(self, M, pattern):
        if len(M) != self.size or any(len(r) != self.size for r in M):
            raise NotInGroup(f"matrix must be {self.size}x{self.size}")
        for (i, j), want in pattern.items():
            if M[i][j] != want:
                raise NotInGroup(f"entry ({i + 1},{j + 1}) must be {want}")


class Triangular2Family(_TriangularBase):
    """Gamma(n) = {[[f, x], [0, 1]] : f in F_n, x in Q}; payload (f, x)."""

    tag = "triangular2"
    size = 2

    def __init__(self, n: int | None, generators: dict[str, object]):
        if n is not None and n < 1:
            raise ConfigError("n must be a positive integer or infinity")
        self.n = n
        super().__init__(generators)

    def from_matrix(self, M):
        self._check_shape(M, {(1, 0): 0, (1, 1): 1})
        f, x = M[0][0], M[0][1]
        if not in_F(f, self.n):
            raise NotInGroup(f"{f} is not in F_{self.n or 'inf'}")
        return (f, x)

    def matrix(self, p):
        f, x = p
        return [[f, x], [Fraction(0), Fraction(1)]]

    def identity(self):
        return (Fraction(1), Fraction(0))

    def mul(self, p, q):
        f, x = p
        g, y = q
        return (f * g, f * y + x)

    def inv(self, p):
        f, x = p
        return (1 / f, -x / f)

    def in_gamma0(self, p) -> bool:
        return p[1] == 0

    def gamma0_infinite_order(self, p) -> bool:
        return abs(p[0]) != 1

    def describe(self):
        return {"type": self.tag, "n": self.n if self.n is not None else "inf"}


class Triangular3Family(_TriangularBase):
    """Gamma(m, n): [[1, x, y], [0, f1, 0], [0, 0, f2]]; payload (f1, f2, x, y)."""

    tag = "triangular3"
    size = 3

    def __init__(self, m: int, n: int, generators: dict[str, object]):
        if m < 1 or n < 1:
            raise ConfigError("m and n must be positive integers")
        self.m, self.n = m, n
        super().__init__(generators)

    def from_matrix(self, M):
        self._check_shape(M, {(0, 0): 1, (1, 0): 0, (1, 2): 0, (2, 0): 0, (2, 1): 0})
        f1, f2 = M[1][1], M[2][2]
        if not in_F(f1, self.m):
            raise NotInGroup(f"{f1} is not in F_{self.m}")
        if not in_F(f2, self.n):
            raise NotInGroup(f"{f2} is not in F_{self.n}")
        return (f1, f2, M[0][1], M[0][2])

    def matrix(self, p):
        f1, f2, x, y = p
        z, o = Fraction(0), Fraction(1)
        return [[o, x, y], [z, f1, z], [z, z, f2]]

    def identity(self):
        return (Fraction(1), Fraction(1), Fraction(0), Fraction(0))

    def mul(self, p, q):
        f1, f2, x, y = p
        g1, g2, u, v = q
        return (f1 * g1, f2 * g2, u + x * g1, v + y * g2)

    def inv(self, p):
        f1, f2, x, y = p
        return (1 / f1, 1 / f2, -x / f1, -y / f2)

    def in_gamma0(self, p) -> bool:
        return p[2] == 0 and p[3] == 0

    def gamma0_infinite_order(self, p) -> bool:
        return abs(p[0]) != 1 or abs(p[1]) != 1

    def describe(self):
        return {"type": self.tag, "m": self.m, "n": self.n}


# --------------------------------------------------------------------------


class FreeProductFamily(Family):
    """Gamma * G for an existing family Gamma and a finite group G.

    Payloads are alternating syllable tuples ((0, inner) | (1, g_index), ...).
    Gamma_0 stays the distinguished subgroup of the inner family.
    """

    tag = "free_product"

    def __init__(self, inner: Family, factor: FiniteGroup,
                 inner_gamma_generators: Sequence, inner_gamma0_generators: Sequence):
        self.inner = inner
        self.factor = factor
        if len(factor) < 2:
            raise ConfigError("the free factor must be nontrivial")
        self._inner_gens = list(inner_gamma_generators)
        self._inner_g0 = list(inner_gamma0_generators)
        clash = set(factor.labels) & set(inner.generator_names())
        if clash:
            raise ConfigError(f"free factor labels clash with inner generators: {sorted(clash)}")

    def _syl(self, side: int, p):
        if side == 0:
            return () if p == self.inner.identity() else ((0, p),)
        return () if p == self.factor.identity else ((1, p),)

    def identity(self):
        return ()

    def mul(self, x, y):
        out = list(x)
        for side, p in y:
            if out and out[-1][0] == side:
                _, q = out.pop()
                r = self.inner.mul(q, p) if side == 0 else self.factor.mul(q, p)
                out.extend(self._syl(side, r))
            else:
                out.append((side, p))
        return tuple(out)

    def inv(self, x):
        return tuple(
            (side, self.inner.inv(p) if side == 0 else self.factor.inv(p)) for side, p in reversed(x)
        )

    def in_gamma0(self, x) -> bool:
        return not x or (len(x) == 1 and x[0][0] == 0 and self.inner.in_gamma0(x[0][1]))

    def gamma0_infinite_order(self, x) -> bool:
        return bool(x) and self.inner.gamma0_infinite_order(x[0][1])

    def atom(self, name):
        p = self.inner.atom(name)
        if p is not None:
            return self._syl(0, p)
        i = self.factor.lookup(name)
        if i is not None:
            return self._syl(1, i)
        if self.factor.cyclic_name == name:
            return self._syl(1, 1)
        return None

    def literal(self, token):
        return self._syl(0, self.inner.literal(token))

    def lift(self, p):
        return self._syl(0, p)

    def format(self, x) -> str:
        parts = [self.inner.format(p) if side == 0 else self.factor.label(p) for side, p in x]
        return " ".join(parts) or "1"

    def default_gamma_generators(self):
        gens = [self._syl(0, p) for p in self._inner_gens]
        gens += [self._syl(1, i) for i in range(len(self.factor)) if i != self.factor.identity]
        return gens

    def default_gamma0_generators(self):
        return [self._syl(0, p) for p in self._inner_g0]

    def generator_names(self):
        return self.inner.generator_names() + [
            lab for i, lab in enumerate(self.factor.labels) if i != self.factor.identity
        ]

    def relators(self):
        return self.inner.relators() + _finite_relators(self.factor)

    def describe(self):
        return {"type": self.tag, "inner": self.inner.describe(), "factor_order": len(self.factor)}
