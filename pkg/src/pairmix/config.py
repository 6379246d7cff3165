"""Pair configuration files: JSON documents validated against a published
schema and turned into ``PairContext`` objects."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .core import DEFAULT_BALL_CAP, PairContext
from .errors import ConfigError, PairmixError
from .families import (
    AmalgamFamily,
    FreeFamily,
    FreeProductFamily,
    HnnFamily,
    SemidirectFamily,
    Triangular2Family,
    Triangular3Family,
)
from .finite import FiniteGroup
from .lattice import FGAbelianSpec
from .normal_forms import HnnSpec

Z_CLOSURE_CAP = 10_000


def load_schema() -> dict:
    text = resources.files("pairmix").joinpath("schema").joinpath("pair_config.schema.json").read_text("utf-8")
    return json.loads(text)


def config_digest(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def shipped_config_path(name: str) -> Path:
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("pairmix").joinpath("configs").joinpath(name)))


def load_config(path: str | Path) -> dict:
    p = Path(path)
    if not p.exists():
        alt = shipped_config_path(p.name)
        if alt.exists():
            p = alt
        else:
            raise ConfigError(f"config file {path} not found")
    try:
        cfg = json.loads(p.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p}: invalid JSON ({exc})") from None
    return cfg


def validate_config(cfg: dict) -> None:
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from None


def _finite_group(spec: dict) -> FiniteGroup:
    try:
        if "cyclic" in spec:
            return FiniteGroup.cyclic(spec["cyclic"], spec.get("name", "s"))
        return FiniteGroup(spec["labels"], spec["table"])
    except ValueError as exc:
        raise ConfigError(f"finite group: {exc}") from None


def _abelian_word(names: list[str], spec: FGAbelianSpec, word: str) -> tuple[int, ...]:
    v = [0] * spec.ngens
    for tok in word.split():
        base, _, exp = tok.partition("^")
        if base == "1":
            continue
        if base not in names:
            raise ConfigError(f"unknown generator {base!r} of the abelian factor")
        v[names.index(base)] += int(exp) if exp else 1
    return spec.normalize(v)


def _finite_word(group: FiniteGroup, word: str) -> int:
    out = group.identity
    for tok in word.split():
        idx = group.lookup(tok)
        k = 1
        if idx is None and "^" in tok:
            base, exp = tok.rsplit("^", 1)
            idx, k = group.lookup(base), int(exp)
        if idx is None and group.cyclic_name == tok:
            idx = 1
        if idx is None:
            raise ConfigError(f"unknown element {tok!r} of the finite factor")
        out = group.mul(out, group.power(idx, k))
    return out


def _z_closure(spec: FGAbelianSpec, group: FiniteGroup, gens: list[tuple[tuple[int, ...], int]]):
    elems = [(spec.zero(), group.identity)]
    seen = set(elems)
    i = 0
    while i < len(elems):
        v, s = elems[i]
        for gv, gs in gens:
            w = (spec.add(v, gv), group.mul(s, gs))
            if w not in seen:
                seen.add(w)
                elems.append(w)
                if len(elems) > Z_CLOSURE_CAP:
                    raise ConfigError("amalgamated subgroup Z must be finite")
        i += 1
    return elems


def build_family(fam: dict):
    kind = fam["type"]
    try:
        if kind == "free":
            names = fam.get("names")
            g0 = fam.get("gamma0_generator", 0)
            if isinstance(g0, str):
                if not names or g0 not in names:
                    raise ConfigError(f"gamma0_generator {g0!r} is not a generator name")
                g0 = names.index(g0)
            return FreeFamily(fam["rank"], g0, names)
        if kind == "baumslag_solitar":
            m, n = fam["m"], fam["n"]
            if m == 0 or n == 0:
                raise ConfigError("Baumslag-Solitar parameters must be nonzero")
            # a^-1 b^n a = b^m
            spec = HnnSpec(1, [[n]], [[m]])
            return HnnFamily(spec, [fam.get("base_name", "b")], fam.get("stable_letter", "a"))
        if kind == "hnn":
            rank = fam["rank"]
            names = fam.get("base_names") or (["b"] if rank == 1 else [f"b{i + 1}" for i in range(rank)])
            spec = HnnSpec(rank, fam["h_basis"], fam["k_basis"])
            return HnnFamily(spec, names, fam.get("stable_letter", "t"))
        if kind == "amalgam":
            g0 = fam["gamma0"]
            spec = FGAbelianSpec(g0.get("free_rank", 0), tuple(g0.get("torsion", ())))
            names = g0.get("names") or [f"c{i + 1}" for i in range(spec.ngens)]
            group = _finite_group(fam["gamma1"])
            gens = [(_abelian_word(names, spec, a), _finite_word(group, b)) for a, b in fam.get("amalgamated", [])]
            z = _z_closure(spec, group, gens)
            word = fam.get("gamma0_word")
            return AmalgamFamily(spec, names, group, z, word.split() if word else None)
        if kind == "semidirect":
            return SemidirectFamily(fam["matrix"])
        if kind == "triangular2":
            n = fam["n"]
            return Triangular2Family(None if n in ("inf", "infinity") else int(n), fam["generators"])
        if kind == "triangular3":
            return Triangular3Family(fam["m"], fam["n"], fam["generators"])
    except ConfigError:
        raise
    except (ValueError, PairmixError) as exc:
        raise ConfigError(f"{kind}: {exc}") from None
    raise ConfigError(f"unknown family type {kind!r}")


def context_from_config(cfg: dict, *, validate: bool = True) -> PairContext:
    if validate:
        validate_config(cfg)
    fam = cfg["family"]
    cap = cfg.get("ball_cap", DEFAULT_BALL_CAP)
    g0 = cfg.get("gamma0_generators")
    g = cfg.get("gamma_generators")
    name = cfg.get("name", "")
    try:
        if fam["type"] == "free_product":
            inner = context_from_config({"family": fam["inner"], **{
                k: v for k, v in fam.items() if k in ("gamma0_generators", "gamma_generators")
            }}, validate=False)
            family = FreeProductFamily(
                inner.family,
                _finite_group(fam["factor"]),
                [x.payload for x in inner.gamma_generators],
                [x.payload for x in inner.gamma0_generators],
            )
        else:
            family = build_family(fam)
        return PairContext(family, g0, g, name=name, ball_cap=cap)
    except ConfigError:
        raise
    except PairmixError as exc:
        raise ConfigError(str(exc)) from None


def context_from_file(path: str | Path) -> tuple[PairContext, dict]:
    cfg = load_config(path)
    return context_from_config(cfg), cfg


def shipped(name: str) -> PairContext:
    """Context for one of the shipped example configurations, e.g. ``shipped("bs23")``."""
    return context_from_config(load_config(shipped_config_path(name)))


def free_product_extension(ctx: PairContext, factor: FiniteGroup) -> PairContext:
    """The pair (Gamma * G, Gamma_0) derived from an existing pair."""
    family = FreeProductFamily(
        ctx.family, factor,
        [x.payload for x in ctx.gamma_generators],
        [x.payload for x in ctx.gamma0_generators],
    )
    return PairContext(family, name=f"{ctx.name}*G{len(factor)}", ball_cap=ctx.ball_cap)


def lift(ext: PairContext, x):
    """Image of an inner element under Gamma -> Gamma * G."""
    return ext.wrap(ext.family.lift(x.payload))
