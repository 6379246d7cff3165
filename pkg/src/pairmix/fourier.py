"""Finitely supported elements of the group algebra with exact Gaussian-rational
coefficients, the trace, the conditional expectation onto Gamma_0, and
squared mixing defects."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .conditions import NotFound, _ordered_map
from .core import Element, PairContext, Side
from .errors import IdentityViolation, NotInGamma0, SupportViolation


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        other = _coerce(other)
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return self + (-_coerce(other))

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        o = _coerce(other)
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        if not self.im:
            return _frac(self.re)
        im = _frac(abs(self.im)) + "i"
        if not self.re:
            return ("-" if self.im < 0 else "") + im
        return _frac(self.re) + ("-" if self.im < 0 else "+") + im

    @classmethod
    def parse(cls, text: str | int | Fraction) -> "ComplexRational":
        """Accepts ``3``, ``-1/2``, ``2i``, ``-i``, ``1/2+3/4i`` and ``1-2i``."""
        if isinstance(text, (int, Fraction)):
            return cls(Fraction(text))
        s = str(text).replace(" ", "")
        m = _COMPLEX_RE.fullmatch(s)
        if not m or not s:
            raise ValueError(f"not an exact complex rational: {text!r}")
        re_part, im_part = m.group("re"), m.group("im")
        re_val = Fraction(re_part) if re_part else Fraction(0)
        im_val = Fraction(0)
        if im_part is not None:
            body = im_part[:-1]
            if body in ("", "+"):
                im_val = Fraction(1)
            elif body == "-":
                im_val = Fraction(-1)
            else:
                im_val = Fraction(body)
        return cls(re_val, im_val)


_NUM = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(rf"(?P<re>{_NUM}(?![\d/]*i))?(?P<im>[+-]?(?:\d+(?:/\d+)?)?i)?")

ZERO = ComplexRational()
ONE = ComplexRational(Fraction(1))


def _coerce(z) -> ComplexRational:
    if isinstance(z, ComplexRational):
        return z
    return ComplexRational(Fraction(z))


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GroupOperator:
    """x = sum of x(g) lambda(g) over a finite support; zero coefficients are never stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, terms: Mapping[Element, object] | Iterable[tuple[Element, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        coeffs: dict[Element, ComplexRational] = {}
        for g, c in items:
            c = ComplexRational.parse(c) if isinstance(c, str) else _coerce(c)
            total = coeffs.get(g, ZERO) + c
            if total:
                coeffs[g] = total
            else:
                coeffs.pop(g, None)
        self._coeffs = coeffs

    @classmethod
    def delta(cls, g: Element, coeff=ONE) -> "GroupOperator":
        """lambda(g), optionally scaled."""
        return cls([(g, coeff)])

    @classmethod
    def indicator(cls, elements: Iterable[Element]) -> "GroupOperator":
        return cls([(g, ONE) for g in elements])

    def __getitem__(self, g: Element) -> ComplexRational:
        return self._coeffs.get(g, ZERO)

    def items(self):
        return self._coeffs.items()

    @property
    def support(self) -> tuple[Element, ...]:
        return tuple(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupOperator) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "GroupOperator") -> "GroupOperator":
        return GroupOperator(list(self.items()) + list(other.items()))

    def __neg__(self) -> "GroupOperator":
        return GroupOperator([(g, -c) for g, c in self.items()])

    def __sub__(self, other: "GroupOperator") -> "GroupOperator":
        return self + (-other)

    def scale(self, c) -> "GroupOperator":
        c = _coerce(c)
        return GroupOperator([(g, c * v) for g, v in self.items()])

    def norm2_sq(self) -> Fraction:
        return sum((c.abs2() for c in self._coeffs.values()), Fraction(0))

    def describe(self, ctx: PairContext) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"({c})*[{ctx.format(g)}]" for g, c in self.items())

    def __repr__(self) -> str:
        return f"GroupOperator({len(self._coeffs)} terms)"


def operator_from_terms(ctx: PairContext, terms: Iterable[tuple[str, object]]) -> GroupOperator:
    """Build an operator from (word, coefficient) pairs, e.g. [("b^3", "1"), ("a", "1/2+i")]."""
    return GroupOperator([(ctx.canonicalize(w), ComplexRational.parse(c)) for w, c in terms])


def _check(ctx: PairContext, *xs: GroupOperator) -> None:
    for x in xs:
        ctx._check(*x.support)


def convolve(ctx: PairContext, x: GroupOperator, y: GroupOperator) -> GroupOperator:
    _check(ctx, x, y)
    return GroupOperator([(ctx.mul(g, h), a * b) for g, a in x.items() for h, b in y.items()])


def adjoint(ctx: PairContext, x: GroupOperator) -> GroupOperator:
    return GroupOperator([(ctx.inv(g), c.conj()) for g, c in x.items()])


def trace(ctx: PairContext, x: GroupOperator) -> ComplexRational:
    return x[ctx.identity()]


def project_onto_gamma0(ctx: PairContext, x: GroupOperator) -> GroupOperator:
    """The conditional expectation onto L(Gamma_0): keep the coefficients on Gamma_0."""
    return GroupOperator([(g, c) for g, c in x.items() if ctx.is_in_gamma0(g)])


def l2_norm_sq(x: GroupOperator) -> Fraction:
    return x.norm2_sq()


def _require_gamma0_support(ctx: PairContext, v: GroupOperator) -> None:
    bad = [g for g in v.support if not ctx.is_in_gamma0(g)]
    if bad:
        raise SupportViolation(f"v has support outside Gamma_0, e.g. {ctx.format(bad[0])}")


def mixing_defect(ctx: PairContext, x: GroupOperator, v: GroupOperator, y: GroupOperator) -> Fraction:
    """||E(x v y) - E(x) v E(y)||_2^2, exact."""
    _check(ctx, x, v, y)
    _require_gamma0_support(ctx, v)
    lhs = project_onto_gamma0(ctx, convolve(ctx, convolve(ctx, x, v), y))
    ex, ey = project_onto_gamma0(ctx, x), project_onto_gamma0(ctx, y)
    rhs = convolve(ctx, convolve(ctx, ex, v), ey)
    return (lhs - rhs).norm2_sq()


def conjugation_defect(ctx: PairContext, x: GroupOperator, u: GroupOperator, y: GroupOperator) -> Fraction:
    """||E(u x u* y) - E(x) E(y)||_2^2 for a unitary u supported in Gamma_0."""
    _check(ctx, x, u, y)
    _require_gamma0_support(ctx, u)
    lhs = project_onto_gamma0(ctx, convolve(ctx, convolve(ctx, convolve(ctx, u, x), adjoint(ctx, u)), y))
    rhs = convolve(ctx, project_onto_gamma0(ctx, x), project_onto_gamma0(ctx, y))
    return (lhs - rhs).norm2_sq()


@dataclass(frozen=True)
class DefectCurve:
    index: tuple  # Elements of Gamma_0, or integers k for powers t^k
    defect_sq: tuple[Fraction, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.index) != len(self.defect_sq):
            raise ValueError("index and defect lists differ in length")

    def labels(self, ctx: PairContext) -> list[str]:
        return [str(i) if isinstance(i, int) else ctx.format(i) for i in self.index]

    def nonzero(self) -> list[tuple[object, Fraction]]:
        return [(i, d) for i, d in zip(self.index, self.defect_sq) if d]


def decimal_rendering(q: Fraction, digits: int = 12) -> str:
    """Decimal form of a rational to the given number of significant digits."""
    from decimal import Context, Decimal

    c = Context(prec=digits)
    return format(c.divide(Decimal(q.numerator), Decimal(q.denominator)), "g") if q else "0"


def strong_mixing_curve(
    ctx: PairContext, x: GroupOperator, y: GroupOperator, radius: int, workers: int | None = None
) -> DefectCurve:
    """Translation-form defects along the Gamma_0-ball.

    Each value is also recomputed in conjugation form with u = lambda(gamma^-1);
    the two must agree exactly.
    """
    _check(ctx, x, y)
    ball = list(ctx.ball(Side.GAMMA0, radius))

    def one(gam: Element) -> Fraction:
        d = mixing_defect(ctx, x, GroupOperator.delta(gam), y)
        c = conjugation_defect(ctx, x, GroupOperator.delta(ctx.inv(gam)), y)
        if c != d:
            raise IdentityViolation(f"conjugation and translation defects differ at {ctx.format(gam)}: {c} != {d}")
        return d

    values = _ordered_map(one, ball, workers)
    return DefectCurve(tuple(ball), tuple(values), {"x": x.describe(ctx), "y": y.describe(ctx), "radius": radius})


def weak_mixing_witness(
    ctx: PairContext, F: Sequence[GroupOperator], radius: int, eps_sq=Fraction(0), exclude_identity: bool = False
) -> Element | NotFound:
    """First gamma in ball order with every pairwise defect over F at most eps_sq."""
    eps_sq = Fraction(eps_sq)
    _check(ctx, *F)
    ident = ctx.identity()
    for gam in ctx.ball(Side.GAMMA0, radius):
        if exclude_identity and gam == ident:
            continue
        v = GroupOperator.delta(gam)
        if all(mixing_defect(ctx, x, v, y) <= eps_sq for x in F for y in F):
            return gam
    return NotFound(radius)


def ah_curve(ctx: PairContext, x: GroupOperator, t: Element, y: GroupOperator, k_max: int) -> DefectCurve:
    """Defects along the powers t^k, |k| <= k_max."""
    ctx._check(t)
    if not ctx.is_in_gamma0(t):
        raise NotInGamma0(f"{ctx.format(t)} is not in Gamma_0")
    ks = tuple(range(-k_max, k_max + 1))
    values = tuple(mixing_defect(ctx, x, GroupOperator.delta(ctx.power(t, k)), y) for k in ks)
    return DefectCurve(ks, values, {"x": x.describe(ctx), "y": y.describe(ctx), "t": ctx.format(t)})


def coefficient_decay(ctx: PairContext, x: GroupOperator, S: Sequence[Element]) -> list[Fraction]:
    """|tau(lambda(s) x)|^2 = |x(s^-1)|^2 along S."""
    _check(ctx, x)
    return [x[ctx.inv(s)].abs2() for s in S]
