"""JSON report payloads and the envelope written by the command line tool.

Every payload is plain JSON: elements become words in the family's own
notation, rationals become "p/q" strings and complex rationals "p/q+r/si".
``*_from_payload`` functions invert the corresponding ``*_payload`` ones.
"""

from __future__ import annotations

import datetime as dt
import json
from fractions import Fraction
from typing import Any

from .conditions import (
    BoundedVerified,
    CertifiedFinite,
    ExceptionalSetReport,
    MalnormalReport,
    NotFound,
    RefutedInfinite,
    STReport,
)
from .core import Ball, Element, PairContext, Side
from .fourier import ComplexRational, DefectCurve

ENVELOPE_KEYS = ("command", "config_digest", "timestamp", "result")


def rational_out(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_in(s: str) -> Fraction:
    return Fraction(s)


def complex_out(z: ComplexRational) -> str:
    if not z.im:
        return rational_out(z.re)
    sign = "-" if z.im < 0 else "+"
    return f"{rational_out(z.re)}{sign}{rational_out(abs(z.im))}i"


def complex_in(s: str) -> ComplexRational:
    return ComplexRational.parse(s)


def word(ctx: PairContext, x: Element) -> str:
    return ctx.format(x)


def element_in(ctx: PairContext, s: str) -> Element:
    return ctx.canonicalize(s)


def verdict_payload(ctx: PairContext, v) -> dict:
    if isinstance(v, CertifiedFinite):
        return {"kind": v.kind, "source": v.source, "E": [word(ctx, x) for x in v.E],
                "exact": v.exact, "bound": v.bound}
    if isinstance(v, BoundedVerified):
        return {"kind": v.kind, "radius": v.radius}
    if isinstance(v, RefutedInfinite):
        return {"kind": v.kind, "witness_family": v.witness_family,
                "witnesses": [word(ctx, x) for x in v.witnesses]}
    raise TypeError(f"not a verdict: {v!r}")


def verdict_from_payload(ctx: PairContext, p: dict):
    kind = p["kind"]
    if kind == "CertifiedFinite":
        return CertifiedFinite(tuple(element_in(ctx, w) for w in p["E"]), p["source"], p["exact"], p["bound"])
    if kind == "BoundedVerified":
        return BoundedVerified(p["radius"])
    if kind == "RefutedInfinite":
        return RefutedInfinite(p["witness_family"], tuple(element_in(ctx, w) for w in p["witnesses"]))
    raise ValueError(f"unknown verdict kind {kind!r}")


def exceptional_set_payload(ctx: PairContext, r: ExceptionalSetReport) -> dict:
    return {
        "g": word(ctx, r.g),
        "h": word(ctx, r.h),
        "search_radius": r.search_radius,
        "members": [{"gamma": word(ctx, a), "product": word(ctx, b)} for a, b in r.members],
        "verdict": verdict_payload(ctx, r.verdict),
    }


def exceptional_set_from_payload(ctx: PairContext, p: dict) -> ExceptionalSetReport:
    return ExceptionalSetReport(
        element_in(ctx, p["g"]),
        element_in(ctx, p["h"]),
        p["search_radius"],
        tuple((element_in(ctx, m["gamma"]), element_in(ctx, m["product"])) for m in p["members"]),
        verdict_from_payload(ctx, p["verdict"]),
    )


def st_payload(ctx: PairContext, r: STReport) -> dict:
    return {
        "C": [word(ctx, x) for x in r.C],
        "radius": r.radius,
        "pairs": [exceptional_set_payload(ctx, p) for p in r.pairs],
        "aggregated_E": None if r.aggregated_E is None else [word(ctx, x) for x in r.aggregated_E],
        "verdict": verdict_payload(ctx, r.verdict),
    }


def st_from_payload(ctx: PairContext, p: dict) -> STReport:
    agg = p["aggregated_E"]
    return STReport(
        tuple(element_in(ctx, w) for w in p["C"]),
        p["radius"],
        tuple(exceptional_set_from_payload(ctx, q) for q in p["pairs"]),
        None if agg is None else tuple(element_in(ctx, w) for w in agg),
        verdict_from_payload(ctx, p["verdict"]),
    )


def malnormal_payload(ctx: PairContext, r: MalnormalReport) -> dict:
    return {
        "g_radius": r.g_radius,
        "gamma_radius": r.gamma_radius,
        "violations": [{"g": word(ctx, g), "gamma": word(ctx, c), "conjugate": word(ctx, k)}
                       for g, c, k in r.violations],
        "violation_count": len(r.violations),
    }


def malnormal_from_payload(ctx: PairContext, p: dict) -> MalnormalReport:
    return MalnormalReport(
        p["g_radius"],
        p["gamma_radius"],
        tuple((element_in(ctx, v["g"]), element_in(ctx, v["gamma"]), element_in(ctx, v["conjugate"]))
              for v in p["violations"]),
    )


def curve_payload(ctx: PairContext, c: DefectCurve) -> dict:
    powers = all(isinstance(i, int) for i in c.index)
    return {
        "index_kind": "power" if powers else "gamma0",
        "index": list(c.index) if powers else [word(ctx, x) for x in c.index],
        "defect_sq": [rational_out(d) for d in c.defect_sq],
        "metadata": c.metadata,
    }


def curve_from_payload(ctx: PairContext, p: dict) -> DefectCurve:
    if p["index_kind"] == "power":
        index = tuple(p["index"])
    else:
        index = tuple(element_in(ctx, w) for w in p["index"])
    return DefectCurve(index, tuple(rational_in(d) for d in p["defect_sq"]), p["metadata"])


def curve_csv(ctx: PairContext, c: DefectCurve) -> str:
    import csv
    import io

    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["index_word", "defect_sq_num", "defect_sq_den"])
    for label, d in zip(c.labels(ctx), c.defect_sq):
        out.writerow([label, d.numerator, d.denominator])
    return buf.getvalue()


def witness_payload(ctx: PairContext, w) -> dict:
    if isinstance(w, NotFound):
        return {"found": False, "radius": w.radius}
    return {"found": True, "gamma": word(ctx, w)}


def witness_from_payload(ctx: PairContext, p: dict):
    return element_in(ctx, p["gamma"]) if p["found"] else NotFound(p["radius"])


def ball_payload(ctx: PairContext, b: Ball) -> dict:
    return {"radius": b.radius, "side": b.side.value, "size": len(b), "members": [word(ctx, x) for x in b]}


def ball_from_payload(ctx: PairContext, p: dict) -> Ball:
    return Ball(p["radius"], Side(p["side"]), tuple(element_in(ctx, w) for w in p["members"]))


def envelope(command: str, digest: str, result: Any, timestamp: str | None = None) -> dict:
    if timestamp is None:
        timestamp = dt.datetime.now(dt.timezone.utc).replace(microsecond=0).isoformat()
    return {"command": command, "config_digest": digest, "timestamp": timestamp, "result": result}


def render(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> dict:
    env = json.loads(text)
    missing = [k for k in ENVELOPE_KEYS if k not in env]
    if missing:
        raise ValueError(f"report envelope lacks {missing}")
    return env


def payload_bytes(env: dict) -> bytes:
    """Canonical bytes of everything except the timestamp."""
    rest = {k: v for k, v in env.items() if k != "timestamp"}
    return json.dumps(rest, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
