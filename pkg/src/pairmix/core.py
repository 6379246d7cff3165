"""Pair contexts, canonical elements, exact group arithmetic and ball enumeration."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import BallTooLarge, ConfigError, FamilyMismatch, UnknownGenerator

DEFAULT_BALL_CAP = 2_000_000


@dataclass(frozen=True)
class Element:
    """A group element in canonical form; equal payloads <=> equal elements."""

    tag: str
    payload: Any


class Family:
    """Arithmetic of one concrete group family on canonical payloads.

    Subclasses implement the payload-level operations; ``PairContext`` wraps
    payloads into ``Element`` values and handles words.
    """

    tag = "abstract"

    def identity(self) -> Any:
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def in_gamma0(self, x) -> bool:
        raise NotImplementedError

    def gamma0_infinite_order(self, x) -> bool:
        """Whether an element of Gamma_0 has infinite order."""
        raise NotImplementedError

    def atom(self, name: str):
        """Payload for a generator name, or None."""
        return None

    def literal(self, token: str):
        raise UnknownGenerator(f"unknown generator {token!r}")

    def format(self, x) -> str:
        raise NotImplementedError

    def default_gamma_generators(self) -> list | None:
        return None

    def default_gamma0_generators(self) -> list | None:
        return None

    def relators(self) -> list[list[str]]:
        return []

    def generator_names(self) -> list[str]:
        return []

    def describe(self) -> dict:
        return {"type": self.tag}


class Side(str, enum.Enum):
    WHOLE = "WholeGroup"
    GAMMA0 = "Gamma0Only"
    COMPLEMENT = "ComplementOfGamma0"


@dataclass(frozen=True)
class Ball:
    radius: int
    side: Side
    members: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def split_word(raw: str) -> list[str]:
    return raw.split()


class PairContext:
    """A group family together with its distinguished abelian subgroup Gamma_0.

    Elements are only produced in canonical form, so ``==`` on elements is
    equality in the group.  Memoized balls are the only internal state and
    never change results.
    """

    def __init__(
        self,
        family: Family,
        gamma0_generators: Sequence | None = None,
        gamma_generators: Sequence | None = None,
        name: str = "",
        ball_cap: int = DEFAULT_BALL_CAP,
    ):
        self.family = family
        self.tag = family.tag
        self.name = name or family.tag
        self.ball_cap = ball_cap
        self._layers: dict[Side, list[list[Element]]] = {}
        g0 = gamma0_generators if gamma0_generators is not None else family.default_gamma0_generators()
        g = gamma_generators if gamma_generators is not None else family.default_gamma_generators()
        if not g0 or not g:
            raise ConfigError(f"family {family.tag!r} needs explicit enumeration generators")
        self.gamma0_generators = tuple(self._as_element(x) for x in g0)
        self.gamma_generators = tuple(self._as_element(x) for x in g)
        ident = self.identity()
        for x in self.gamma0_generators:
            if x == ident:
                raise ConfigError("Gamma_0 enumeration generators must be nontrivial")
            if not self.is_in_gamma0(x):
                raise ConfigError(f"enumeration generator {self.format(x)} is not in Gamma_0")
        if any(x == ident for x in self.gamma_generators):
            raise ConfigError("enumeration generators must be nontrivial")

    # -- element construction ------------------------------------------------

    def _as_element(self, x) -> Element:
        if isinstance(x, Element):
            self._check(x)
            return x
        if isinstance(x, str) or (isinstance(x, (list, tuple)) and x and isinstance(x[0], str)):
            return self.canonicalize(x)
        return Element(self.tag, x)

    def wrap(self, payload) -> Element:
        return Element(self.tag, payload)

    def _check(self, *xs: Element) -> None:
        for x in xs:
            if not isinstance(x, Element) or x.tag != self.tag:
                raise FamilyMismatch(f"element {x!r} does not belong to family {self.tag!r}")

    def identity(self) -> Element:
        return Element(self.tag, self.family.identity())

    def token(self, tok: str):
        fam = self.family
        p = fam.atom(tok)
        if p is not None:
            return p
        if tok == "1":
            return fam.identity()
        if "^" in tok:
            base, exp = tok.rsplit("^", 1)
            try:
                k = int(exp)
            except ValueError:
                raise UnknownGenerator(f"bad exponent in token {tok!r}") from None
            return self._power(self.token(base), k)
        if tok[:1] in "[(":
            return fam.literal(tok)
        raise UnknownGenerator(f"unknown generator {tok!r}")

    def _power(self, p, k: int):
        fam = self.family
        if k < 0:
            p, k = fam.inv(p), -k
        out = fam.identity()
        while k:
            if k & 1:
                out = fam.mul(out, p)
            k >>= 1
            if k:
                p = fam.mul(p, p)
        return out

    def canonicalize(self, raw) -> Element:
        """Canonical element of a word (string or token list) or literal."""
        if isinstance(raw, Element):
            self._check(raw)
            return raw
        tokens = split_word(raw) if isinstance(raw, str) else list(raw)
        fam = self.family
        out = fam.identity()
        for tok in tokens:
            out = fam.mul(out, self.token(tok))
        return Element(self.tag, out)

    # -- arithmetic -------------------------------------------------------------

    def mul(self, x: Element, y: Element) -> Element:
        if x.tag != self.tag or y.tag != self.tag:
            self._check(x, y)
        return Element(self.tag, self.family.mul(x.payload, y.payload))

    def prod(self, *xs: Element) -> Element:
        out = self.identity()
        for x in xs:
            out = self.mul(out, x)
        return out

    def inv(self, x: Element) -> Element:
        self._check(x)
        return Element(self.tag, self.family.inv(x.payload))

    def power(self, x: Element, k: int) -> Element:
        self._check(x)
        return Element(self.tag, self._power(x.payload, k))

    def is_in_gamma0(self, x: Element) -> bool:
        self._check(x)
        return self.family.in_gamma0(x.payload)

    def is_identity(self, x: Element) -> bool:
        return x.payload == self.family.identity()

    def has_infinite_order_in_gamma0(self, x: Element) -> bool:
        return self.family.gamma0_infinite_order(x.payload)

    def format(self, x: Element) -> str:
        return self.family.format(x.payload)

    # -- enumeration --------------------------------------------------------------

    def _step_generators(self, gens: Iterable[Element]) -> list[Element]:
        out: list[Element] = []
        for g in gens:
            for h in (g, self.inv(g)):
                if h not in out:
                    out.append(h)
        return out

    def _layers_for(self, side: Side) -> list[list[Element]]:
        key = Side.GAMMA0 if side == Side.GAMMA0 else Side.WHOLE
        if key not in self._layers:
            self._layers[key] = [[self.identity()]]
        return self._layers[key]

    def ball(self, side: Side | str, radius: int, cap: int | None = None) -> Ball:
        side = Side(side)
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        cap = self.ball_cap if cap is None else cap
        layers = self._layers_for(side)
        gens = self._step_generators(
            self.gamma0_generators if side == Side.GAMMA0 else self.gamma_generators
        )
        total = sum(len(layer) for layer in layers[: radius + 1])
        if total > cap:
            raise BallTooLarge(f"ball of radius {radius} exceeds cap {cap}")
        if len(layers) <= radius:
            seen = {x for layer in layers for x in layer}
            while len(layers) <= radius:
                new: list[Element] = []
                for x in layers[-1]:
                    for g in gens:
                        y = self.mul(x, g)
                        if y not in seen:
                            seen.add(y)
                            new.append(y)
                            total += 1
                            if total > cap:
                                raise BallTooLarge(f"ball of radius {radius} exceeds cap {cap}")
                layers.append(new)
        members = [x for layer in layers[: radius + 1] for x in layer]
        if side == Side.GAMMA0:
            members = [x for x in members if self.is_in_gamma0(x)]
        elif side == Side.COMPLEMENT:
            members = [x for x in members if not self.is_in_gamma0(x)]
        return Ball(radius, side, tuple(members))

    def __repr__(self) -> str:
        return f"PairContext({self.name!r})"


# function-style aliases


def canonicalize(ctx: PairContext, raw) -> Element:
    return ctx.canonicalize(raw)


def mul(ctx: PairContext, x: Element, y: Element) -> Element:
    return ctx.mul(x, y)


def inv(ctx: PairContext, x: Element) -> Element:
    return ctx.inv(x)


def is_in_gamma0(ctx: PairContext, x: Element) -> bool:
    return ctx.is_in_gamma0(x)


def enumerate_ball(ctx: PairContext, side: Side | str, radius: int, cap: int | None = None) -> Ball:
    return ctx.ball(side, radius, cap)


def enumerate_box(ctx: PairContext, v_bound: int, k_bound: int) -> list[Element]:
    """Semidirect families only: all (v, k) with |v|_inf <= v_bound and |k| <= k_bound."""
    box = getattr(ctx.family, "box", None)
    if box is None:
        raise FamilyMismatch("box enumeration needs a semidirect family")
    return [ctx.wrap(p) for p in box(v_bound, k_bound)]
