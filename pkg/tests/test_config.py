import copy
import json

import pytest

from pairmix import context_from_config, context_from_file
from pairmix.config import (
    config_digest,
    free_product_extension,
    lift,
    load_config,
    shipped_config_path,
    validate_config,
)
from pairmix.core import Side
from pairmix.errors import ConfigError
from pairmix.finite import FiniteGroup

from support import SHIPPED

AMALGAM = {
    "family": {
        "type": "amalgam",
        "gamma0": {"free_rank": 1, "torsion": [2], "names": ["c", "z"]},
        "gamma1": {"cyclic": 4, "name": "s"},
        "amalgamated": [["z", "s^2"]],
    }
}


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_configs_validate(name):
    cfg = load_config(shipped_config_path(name))
    validate_config(cfg)
    ctx = context_from_config(cfg)
    assert ctx.name == cfg["name"]


def test_load_by_bare_name_falls_back_to_shipped(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    ctx, cfg = context_from_file("bs23.json")
    assert cfg["family"]["m"] == 2 and ctx.tag == "hnn"


def test_digest_ignores_key_order():
    a = {"family": {"type": "free", "rank": 2}, "name": "x"}
    b = json.loads('{"name": "x", "family": {"rank": 2, "type": "free"}}')
    assert config_digest(a) == config_digest(b)
    assert config_digest(a) != config_digest({**a, "name": "y"})


@pytest.mark.parametrize(
    "mutate",
    [
        lambda c: c["family"].update(amalgamated=[["z", "s"]]),  # Z would not be a common subgroup
        lambda c: c["family"].update(amalgamated=[["c", "s^2"]]),  # infinite order element in Z
        lambda c: c["family"]["gamma1"].update(cyclic=0),
        lambda c: c["family"].update(bogus=1),
        lambda c: c.update(family={"type": "semidirect", "matrix": [[2, 0], [0, 1]]}),  # det 2
        lambda c: c.update(family={"type": "semidirect", "matrix": [[1, 2]]}),
        lambda c: c.update(family={"type": "baumslag_solitar", "m": 0, "n": 2}),
        lambda c: c.update(family={"type": "hnn", "rank": 1, "h_basis": [[2]], "k_basis": [[3], [6]]}),
        lambda c: c.update(family={"type": "hnn", "rank": 2, "h_basis": [[1, 0]], "k_basis": [[1, 1], [0, 1]]}),
        lambda c: c.update(family={"type": "triangular3", "m": 2, "n": 3, "generators": {"g": [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]}}),
        lambda c: c.update(family={"type": "free", "rank": 2, "names": ["a", "b"]}, gamma0_generators=["b a"]),
        lambda c: c.update(family={"type": "nonsense"}),
    ],
)
def test_inconsistent_configs_are_rejected(mutate):
    cfg = copy.deepcopy(AMALGAM)
    mutate(cfg)
    with pytest.raises(ConfigError):
        context_from_config(cfg)


def test_triangular_needs_generators():
    cfg = {"family": {"type": "triangular2", "n": "inf", "generators": {"u": [["1", "1"], ["0", "1"]]}}}
    with pytest.raises(ConfigError):
        context_from_config(cfg)
    cfg["gamma0_generators"] = ["[[3,0],[0,1]]"]
    cfg["gamma_generators"] = ["u"]
    ctx = context_from_config(cfg)
    assert ctx.is_in_gamma0(ctx.canonicalize("[[5,0],[0,1]]"))


def test_hnn_with_rank_two_base():
    cfg = {"family": {"type": "hnn", "rank": 2, "h_basis": [[2, 0], [0, 1]], "k_basis": [[1, 0], [0, 3]]}}
    ctx = context_from_config(cfg)
    t = ctx.canonicalize("t")
    assert ctx.prod(ctx.inv(t), ctx.canonicalize("b1^2"), t) == ctx.canonicalize("b1")


def test_free_product_config_and_extension():
    cfg = {"family": {"type": "free_product", "inner": {"type": "baumslag_solitar", "m": 2, "n": 3},
                      "factor": {"cyclic": 2, "name": "e"}}}
    ctx = context_from_config(cfg)
    bs = context_from_file("bs23")[0]
    ext = free_product_extension(bs, FiniteGroup.cyclic(2, "e"))
    assert len(ctx.ball(Side.WHOLE, 3)) == len(ext.ball(Side.WHOLE, 3))
    x = lift(ext, bs.canonicalize("a^-1 b^3 a"))
    assert ext.format(x) == "b^2"
    assert ext.is_in_gamma0(lift(ext, bs.canonicalize("a^2")))
    assert not ext.is_in_gamma0(ext.canonicalize("e a"))
