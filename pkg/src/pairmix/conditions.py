"""Exceptional sets, the (SS)/(ST) conditions, malnormality, and structural
certificates.

For g, h outside Gamma_0 the exceptional set is
E(g, h) = {gamma in Gamma_0 : g gamma h in Gamma_0}.  Whenever it is nonempty
it is a coset gamma_1 * S of S = g^-1 Gamma_0 g & Gamma_0, so two members whose
quotient has infinite order already prove E(g, h) infinite.  That argument
backs every ``RefutedInfinite`` verdict produced here.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .core import Element, PairContext, Side
from .errors import BadC, FamilyMismatch, FixedPointExists, NotInComplement
from .families import (
    AmalgamFamily,
    FreeFamily,
    FreeProductFamily,
    HnnFamily,
    SemidirectFamily,
    Triangular2Family,
    Triangular3Family,
    _det,
    _mat_mul,
    in_F,
)
from .lattice import Lattice
from .normal_forms import DomChain, HnnSpec, dom_chain, escape_index, phi_power

REFUTE_THRESHOLD = 8
DET_SCREEN = 12


def advisory_workers() -> int:
    """Thread count from PAIRMIX_THREADS; affects speed only, never results."""
    try:
        return max(1, int(os.environ.get("PAIRMIX_THREADS", "1")))
    except ValueError:
        return 1


def _ordered_map(fn: Callable, items: Sequence, workers: int | None) -> list:
    workers = advisory_workers() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class CertifiedFinite:
    """Finiteness of E(g, h) is proven.

    With ``exact`` the listed E contains all of E(g, h).  Otherwise only the
    cardinality ``bound`` is proven and E lists the members located so far.
    """

    E: tuple[Element, ...]
    source: str
    exact: bool = True
    bound: int | None = None
    kind = "CertifiedFinite"


@dataclass(frozen=True)
class BoundedVerified:
    radius: int
    kind = "BoundedVerified"


@dataclass(frozen=True)
class RefutedInfinite:
    witness_family: str
    witnesses: tuple[Element, ...]
    kind = "RefutedInfinite"


Certificate = Union[CertifiedFinite, BoundedVerified, RefutedInfinite]
_STRENGTH = {"RefutedInfinite": 0, "BoundedVerified": 1, "CertifiedFinite": 2}

SOURCES = (
    "AmalgamFormula",
    "MalnormalBound",
    "SemidirectConstruction",
    "DomChainEscape",
    "TriangularSolve",
    "FreeProductReduction",
)


def weakest(verdicts: Iterable[Certificate]) -> Certificate:
    verdicts = list(verdicts)
    return min(verdicts, key=lambda v: _STRENGTH[v.kind])


@dataclass(frozen=True)
class ExceptionalSetReport:
    g: Element
    h: Element
    search_radius: int
    members: tuple[tuple[Element, Element], ...]
    verdict: Certificate

    @property
    def gammas(self) -> tuple[Element, ...]:
        return tuple(gam for gam, _ in self.members)


@dataclass(frozen=True)
class NotFound:
    radius: int


@dataclass(frozen=True)
class STReport:
    C: tuple[Element, ...]
    radius: int
    pairs: tuple[ExceptionalSetReport, ...]
    aggregated_E: tuple[Element, ...] | None  # None when some E(g, h) is infinite
    verdict: Certificate


@dataclass(frozen=True)
class MalnormalReport:
    g_radius: int
    gamma_radius: int
    violations: tuple[tuple[Element, Element, Element], ...]  # (g, gamma, g gamma g^-1)

    @property
    def ok(self) -> bool:
        return not self.violations


# --------------------------------------------------------------------------
# structural certificates per family


def _free_certificate(ctx: PairContext, g: Element, h: Element) -> CertifiedFinite:
    a = ctx.family.gamma0_generator + 1
    gw, hw = g.payload, h.payload
    p = 0
    while gw and abs(gw[-1]) == a:
        p += 1 if gw[-1] > 0 else -1
        gw = gw[:-1]
    q = 0
    while hw and abs(hw[0]) == a:
        q += 1 if hw[0] > 0 else -1
        hw = hw[1:]
    # g = g' a^p, h = a^q h' with g', h' not ending/starting in a^+-1: only a^-(p+q) can land
    cand = ctx.wrap(tuple([a if p + q < 0 else -a] * abs(p + q)))
    hit = ctx.is_in_gamma0(ctx.prod(g, cand, h))
    return CertifiedFinite((cand,) if hit else (), "MalnormalBound", exact=True, bound=1)


def amalgam_st_certificate(ctx: PairContext, g: Element, h: Element) -> list[Element]:
    """A finite E containing E(g, h) in G0 *_Z G1 with Gamma_0 = G0.

    E = Z u u_1^-1 Z when s_l != 1, else Z u (r_l u_1)^-1 Z, read off the
    normal forms g = r_1 s_1 ... r_l s_l z and h = u_1 v_1 ... w.
    """
    fam = ctx.family
    if not isinstance(fam, AmalgamFamily) or fam.gamma0_word is not None:
        raise FamilyMismatch("amalgam certificate needs an amalgam whose Gamma_0 is the abelian factor")
    for x in (g, h):
        ctx._check(x)
        if ctx.is_in_gamma0(x):
            raise NotInComplement(f"{ctx.format(x)} lies in Gamma_0")
    g0, table = fam.g0, fam.table
    u1 = h.payload.pairs[0][0]
    r_l, s_l = g.payload.pairs[-1]
    shift = u1 if s_l != fam.g1.identity else g0.add(r_l, u1)
    E = [fam.from_gamma0_vector(z) for z in table.z0]
    E += [fam.from_gamma0_vector(g0.add(g0.neg(shift), z)) for z in table.z0]
    out: list[Element] = []
    for p in E:
        el = ctx.wrap(p)
        if el not in out:
            out.append(el)
    return out


def _cyclic_gamma0_malnormal(fam: AmalgamFamily) -> bool:
    """Z = 1, Gamma_0 = <ab> with a, b nontrivial in different factors, one of order >= 3."""
    if fam.gamma0_word is None or fam.table.order_z != 1:
        return False
    syl = fam._syllables(fam.gamma0_word)
    if len(syl) != 2 or fam.gamma0_word.z != 0:
        return False
    orders = []
    for factor, el in syl:
        if factor == 0:
            o = fam.g0.order(el)
            orders.append(float("inf") if o is None else o)
        else:
            orders.append(fam.g1.order(el))
    return max(orders) >= 3


@dataclass(frozen=True)
class HnnMalnormalCertificate:
    status: str  # "Certified" | "Inconclusive"
    orientation: str  # "as-given" | "inverted"
    chain: DomChain
    reason: str
    unescaped: tuple[tuple[int, ...], ...] = ()


def _chain_structure(spec: HnnSpec, chain: DomChain) -> tuple[bool, str]:
    doms = chain.domains
    if any(d.is_zero() for d in doms):
        j = next(i for i, d in enumerate(doms, 1) if d.is_zero())
        return True, f"Dom(phi^{j}) is trivial"
    for j, (a, b) in enumerate(zip(doms, doms[1:]), 1):
        if a == b:
            return False, f"chain stabilizes: Dom(phi^{j}) = Dom(phi^{j + 1}) != 0"
    if spec.rank == 1:
        # H = nZ, K = mZ: d_{j+1} = |n| d_j / gcd(d_j, m); a strict first step means some prime
        # has v_p(n) > v_p(m), and then v_p(d_j) grows by that gap at every step.
        if doms[0] != spec.phi.preimage(doms[0].intersect(spec.K)):
            return True, "Dom chain of Z strictly descends forever ([Z:H] does not divide [Z:K])"
    return False, "no structural argument that every base element escapes"


def hnn_malnormal_certificate(ctx: PairContext, ball_radius: int = 10, jmax: int = 12) -> HnnMalnormalCertificate:
    """Escape of every nontrivial base element from the Dom chain (malnormality of <t>)."""
    fam = ctx.family
    if not isinstance(fam, HnnFamily):
        raise FamilyMismatch("HNN certificate needs an HNN family")
    spec = fam.spec
    orientations = [("as-given", spec), ("inverted", spec.inverted())]
    if spec.rank == 1:
        ih, ik = spec.H.index(), spec.K.index()
        if ih is not None and ik is not None and ik > ih:
            orientations.reverse()
    base_box = _box(spec.rank, ball_radius)
    first = None
    for name, sp in orientations:
        chain = dom_chain(sp, jmax)
        unescaped = tuple(v for v in base_box if any(v) and not isinstance(escape_index(chain, v), int))
        ok, reason = _chain_structure(sp, chain)
        cert = HnnMalnormalCertificate(
            "Certified" if ok else "Inconclusive", name, chain, reason, unescaped if not ok else ()
        )
        if ok:
            return cert
        first = first or cert
    return first


@dataclass(frozen=True)
class FixedPointReport:
    jmax: int
    ball_radius: int
    violations: tuple[tuple[tuple[int, ...], int], ...]  # (h, j) with phi^j(h) = h != 0
    verdict: str  # "Violations" | "BoundedVerified"


def hnn_fixed_point_check(ctx: PairContext, jmax: int = 8, ball_radius: int = 100) -> FixedPointReport:
    fam = ctx.family
    if not isinstance(fam, HnnFamily):
        raise FamilyMismatch("fixed point check needs an HNN family")
    spec = fam.spec
    bad = []
    for h in _box(spec.rank, ball_radius):
        if not any(h):
            continue
        for j in range(1, jmax + 1):
            img = phi_power(spec, h, j)
            if img is None:
                break
            if img == h:
                bad.append((h, j))
    return FixedPointReport(jmax, ball_radius, tuple(bad), "Violations" if bad else "BoundedVerified")


def _box(rank: int, radius: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for _ in range(rank):
        out = [v + (k,) for v in out for k in range(-radius, radius + 1)]
    return sorted(out, key=lambda v: (max(map(abs, v), default=0), v))


@dataclass(frozen=True)
class SemidirectCertificate:
    status: str  # "Certified" | "Inconclusive"
    F: tuple[tuple[int, ...], ...]
    E1: tuple[int, ...]
    E: tuple[int, ...]
    scanned: int
    reason: str

    def elements(self, ctx: PairContext) -> tuple[Element, ...]:
        zero = (0,) * ctx.family.dim
        return tuple(ctx.wrap((zero, k)) for k in self.E)


def _inf_norm(v) -> int:
    return max(abs(a) for a in v)


def _escape_step(fam: SemidirectFamily, f, bound: int, direction: int) -> int:
    """Least k >= 1 after which |g^(direction*j) f| > bound for all j >= k.

    Uses x_{k+1} = tr x_k - det x_{k-1}: once |x_k| >= |x_{k-1}| the norms at
    least double from then on when |tr| >= 3.
    """
    prev, cur, k = f, fam.act(direction, f), 1
    while not (_inf_norm(cur) >= _inf_norm(prev) and _inf_norm(cur) > bound):
        prev, cur, k = cur, fam.act(direction, cur), k + 1
    return k


def semidirect_st_certificate(ctx: PairContext, C: Sequence[Element], k_bound: int = 12) -> SemidirectCertificate:
    """E = union over c in C_2 of (E_1 - c), where E_1 = {k : alpha_k(F) & F != {}} and
    F = C_1 u -C_1 for C split as C_1 x C_2."""
    fam = ctx.family
    if not isinstance(fam, SemidirectFamily):
        raise FamilyMismatch("semidirect certificate needs a semidirect family")
    for x in C:
        ctx._check(x)
        if ctx.is_in_gamma0(x):
            raise BadC(f"{ctx.format(x)} lies in Gamma_0")
    C1 = sorted({x.payload[0] for x in C})
    C2 = sorted({x.payload[1] for x in C})
    F = tuple(sorted(set(C1) | {tuple(-a for a in v) for v in C1}))
    Fset = set(F)
    I = [[int(i == j) for j in range(fam.dim)] for i in range(fam.dim)]

    def scan(limit: int) -> list[int]:
        hits = []
        for k in range(-limit, limit + 1):
            imgs = [fam.act(k, f) for f in F]
            if k and any(img == f for img, f in zip(imgs, F)):
                f = next(f for img, f in zip(imgs, F) if img == f)
                raise FixedPointExists(k, f)
            if any(img in Fset for img in imgs):
                hits.append(k)
        return hits

    def result(status, E1, scanned, reason):
        E = sorted({e - c for e in E1 for c in C2})
        return SemidirectCertificate(status, F, tuple(E1), tuple(E), scanned, reason)

    for k in range(1, DET_SCREEN + 1):
        P = fam.matrix_power(k)
        if _det([[P[i][j] - I[i][j] for j in range(fam.dim)] for i in range(fam.dim)]) == 0:
            # a fixed member of F under some alpha_j != id breaks the construction outright;
            # when only g^j = I fixes F, nothing is proven either way
            for j in range(-k_bound, k_bound + 1):
                if j and fam.matrix_power(abs(j)) != tuple(map(tuple, I)):
                    f = next((f for f in F if fam.act(j, f) == f), None)
                    if f is not None:
                        raise FixedPointExists(j, f)
            return result("Inconclusive", _scan_safe(fam, F, Fset, k_bound), k_bound,
                          f"det(g^{k} - I) = 0: alpha_{k} has nontrivial fixed points")
    E1 = scan(k_bound)
    tr = sum(fam.matrix[i][i] for i in range(fam.dim))
    if fam.dim != 2 or abs(tr) < 3:
        return result("Inconclusive", E1, k_bound, "no expansion certificate outside d = 2, |trace| >= 3")
    bound = max(_inf_norm(f) for f in F)
    burn = max(max(_escape_step(fam, f, bound, +1), _escape_step(fam, f, bound, -1)) for f in F)
    if burn > k_bound:
        E1 = scan(burn)
    return result("Certified", E1, max(k_bound, burn),
                  f"hyperbolic: every orbit leaves the box of F after {burn} steps")


def _scan_safe(fam, F, Fset, limit):
    return [k for k in range(-limit, limit + 1) if any(fam.act(k, f) in Fset for f in F)]


def _triangular_solve(ctx: PairContext, g: Element, h: Element, radius: int) -> Certificate:
    fam = ctx.family
    if isinstance(fam, Triangular2Family):
        f, x = g.payload
        _, u = h.payload
        a = -x / (f * u)
        E = (ctx.wrap((a, Fraction(0))),) if in_F(a, fam.n) else ()
        return CertifiedFinite(E, "TriangularSolve", exact=True, bound=1)
    # gamma h landing condition per coordinate: u + x g1 a = 0 and v + y g2 b = 0
    f1, f2, x, y = g.payload
    g1, g2, u, v = h.payload
    sols = []
    for coef, const, n in ((x * g1, u, fam.m), (y * g2, v, fam.n)):
        if coef != 0:
            a = -const / coef
            sols.append([a] if in_F(a, n) else [])
        else:
            sols.append(None if const == 0 else [])
    if [] in sols:
        return CertifiedFinite((), "TriangularSolve", exact=True, bound=0)
    if None not in sols:
        (a,), (b,) = sols
        zero = Fraction(0)
        return CertifiedFinite((ctx.wrap((a, b, zero, zero)),), "TriangularSolve", exact=True, bound=1)
    free = [i for i, s in enumerate(sols) if s is None]
    desc = []
    for i, name, n in ((0, "f1", fam.m), (1, "f2", fam.n)):
        desc.append(f"{name} in F_{n}" if i in free else f"{name} = {sols[i][0]}")
    family = "diag(1, f1, f2) with " + ", ".join(desc)
    ball = ctx.ball(Side.GAMMA0, radius)
    witnesses = [gam for gam in ball if ctx.is_in_gamma0(ctx.prod(g, gam, h))]
    k = 0
    while len(witnesses) < REFUTE_THRESHOLD:
        k += 1
        vals = [None, None]
        for i, n in ((0, fam.m), (1, fam.n)):
            vals[i] = Fraction(3) ** k if i in free else sols[i][0]
        gam = ctx.wrap((vals[0], vals[1], Fraction(0), Fraction(0)))
        if gam not in witnesses:
            witnesses.append(gam)
    for gam in witnesses:
        assert ctx.is_in_gamma0(ctx.prod(g, gam, h))
    return RefutedInfinite(family, tuple(witnesses))


_inner_ctx_cache: dict[int, PairContext] = {}


def _inner_context(fam: FreeProductFamily) -> PairContext:
    key = id(fam)
    if key not in _inner_ctx_cache:
        _inner_ctx_cache[key] = PairContext(fam.inner, fam._inner_g0, fam._inner_gens)
    return _inner_ctx_cache[key]


def _free_product_certificate(ctx: PairContext, g: Element, h: Element, radius: int) -> Certificate | None:
    fam = ctx.family
    gs, hs = g.payload, h.payload
    if len(gs) == 1 and len(hs) == 1 and gs[0][0] == 0 and hs[0][0] == 0:
        inner = _inner_context(fam)
        v = _structural(inner, inner.wrap(gs[0][1]), inner.wrap(hs[0][1]), radius)
        if v is None:
            return None
        if isinstance(v, CertifiedFinite):
            return CertifiedFinite(tuple(ctx.wrap(fam.lift(x.payload)) for x in v.E), v.source, v.exact, v.bound)
        if isinstance(v, RefutedInfinite):
            return RefutedInfinite(v.witness_family, tuple(ctx.wrap(fam.lift(x.payload)) for x in v.witnesses))
        return v
    a = gs[-1][1] if gs and gs[-1][0] == 0 else fam.inner.identity()
    b = hs[0][1] if hs and hs[0][0] == 0 else fam.inner.identity()
    # g = g' a, h = b h' with g' or h' carrying a free-factor syllable: only gamma = a^-1 b^-1 can land
    cand = fam.inner.inv(fam.inner.mul(a, b))
    E: tuple[Element, ...] = ()
    if fam.inner.in_gamma0(cand):
        el = ctx.wrap(fam.lift(cand))
        if ctx.is_in_gamma0(ctx.prod(g, el, h)):
            E = (el,)
    return CertifiedFinite(E, "FreeProductReduction", exact=True, bound=1)


def _structural(ctx: PairContext, g: Element, h: Element, radius: int) -> Certificate | None:
    fam = ctx.family
    if isinstance(fam, FreeFamily):
        return _free_certificate(ctx, g, h)
    if isinstance(fam, AmalgamFamily):
        if fam.gamma0_word is None:
            return CertifiedFinite(tuple(amalgam_st_certificate(ctx, g, h)), "AmalgamFormula", exact=True,
                                   bound=2 * fam.table.order_z)
        if _cyclic_gamma0_malnormal(fam):
            return CertifiedFinite((), "MalnormalBound", exact=False, bound=1)
        return None
    if isinstance(fam, HnnFamily):
        cert = _hnn_cert_cached(ctx)
        if cert.status == "Certified":
            return CertifiedFinite((), "DomChainEscape", exact=False, bound=1)
        return None
    if isinstance(fam, SemidirectFamily):
        try:
            cert = semidirect_st_certificate(ctx, [g, h])
        except FixedPointExists:
            return None
        if cert.status == "Certified":
            return CertifiedFinite(cert.elements(ctx), "SemidirectConstruction", exact=True)
        return None
    if isinstance(fam, (Triangular2Family, Triangular3Family)):
        return _triangular_solve(ctx, g, h, radius)
    if isinstance(fam, FreeProductFamily):
        return _free_product_certificate(ctx, g, h, radius)
    return None


_hnn_cache: dict[int, HnnMalnormalCertificate] = {}


def _hnn_cert_cached(ctx: PairContext) -> HnnMalnormalCertificate:
    key = id(ctx.family)
    if key not in _hnn_cache:
        _hnn_cache[key] = hnn_malnormal_certificate(ctx)
    return _hnn_cache[key]


def _coset_refutation(ctx: PairContext, g: Element, h: Element, gammas: Sequence[Element]) -> RefutedInfinite | None:
    if len(gammas) < 2:
        return None
    g1 = gammas[0]
    for g2 in gammas[1:]:
        delta = ctx.mul(g2, ctx.inv(g1))
        if not ctx.has_infinite_order_in_gamma0(delta):
            continue
        witnesses = list(gammas)
        n = 1
        while len(witnesses) < REFUTE_THRESHOLD:
            for k in (n, -n):
                cand = ctx.mul(ctx.power(delta, k), g1)
                if cand not in witnesses:
                    witnesses.append(cand)
            n += 1
        for w in witnesses:
            if not ctx.is_in_gamma0(ctx.prod(g, w, h)):
                raise AssertionError("coset witness failed to land in Gamma_0")
        desc = f"({ctx.format(g1)}) * <{ctx.format(delta)}>"
        return RefutedInfinite(desc, tuple(witnesses))
    return None


# --------------------------------------------------------------------------
# operations


def _require_complement(ctx: PairContext, xs: Iterable[Element], err=NotInComplement) -> None:
    for x in xs:
        ctx._check(x)
        if ctx.is_in_gamma0(x):
            raise err(f"{ctx.format(x)} lies in Gamma_0; E(g, h) would be all of Gamma_0")


def exceptional_set(ctx: PairContext, g: Element, h: Element, radius: int) -> ExceptionalSetReport:
    """E(g, h) within the Gamma_0-ball of the given radius, with a verdict."""
    _require_complement(ctx, (g, h))
    ball = ctx.ball(Side.GAMMA0, radius)
    members = []
    for gam in ball:
        p = ctx.prod(g, gam, h)
        if ctx.is_in_gamma0(p):
            members.append((gam, p))
    gammas = [gam for gam, _ in members]
    verdict = _structural(ctx, g, h, radius)
    if verdict is None:
        verdict = _coset_refutation(ctx, g, h, gammas) or BoundedVerified(radius)
    elif isinstance(verdict, CertifiedFinite):
        if verdict.exact:
            missing = [gam for gam in gammas if gam not in verdict.E]
            if missing:
                raise AssertionError(f"certificate {verdict.source} misses {ctx.format(missing[0])}")
        else:
            if verdict.bound is not None and len(gammas) > verdict.bound:
                raise AssertionError(f"certificate {verdict.source} bound violated")
            verdict = CertifiedFinite(tuple(gammas), verdict.source, False, verdict.bound)
    return ExceptionalSetReport(g, h, radius, tuple(members), verdict)


def ss_witness(ctx: PairContext, C: Sequence[Element], radius: int, exclude_identity: bool = False) -> Element | NotFound:
    """First gamma in ball order with g gamma h outside Gamma_0 for all g, h in C."""
    if not C:
        raise BadC("C must be nonempty")
    _require_complement(ctx, C, BadC)
    ident = ctx.identity()
    for gam in ctx.ball(Side.GAMMA0, radius):
        if exclude_identity and gam == ident:
            continue
        if all(not ctx.is_in_gamma0(ctx.prod(g, gam, h)) for g in C for h in C):
            return gam
    return NotFound(radius)


def st_check(ctx: PairContext, C: Sequence[Element], radius: int, workers: int | None = None) -> STReport:
    if not C:
        raise BadC("C must be nonempty")
    _require_complement(ctx, C, BadC)
    pairs = [(g, h) for g in C for h in C]
    reports = _ordered_map(lambda gh: exceptional_set(ctx, gh[0], gh[1], radius), pairs, workers)
    verdict = weakest(r.verdict for r in reports)
    agg: list[Element] | None = []
    for r in reports:
        v = r.verdict
        if isinstance(v, RefutedInfinite):
            agg = None
            break
        extra = v.E if isinstance(v, CertifiedFinite) else r.gammas
        for gam in extra:
            if gam not in agg:
                agg.append(gam)
    return STReport(tuple(C), radius, tuple(reports), None if agg is None else tuple(agg), verdict)


def malnormal_scan(ctx: PairContext, g_radius: int, gamma_radius: int, workers: int | None = None) -> MalnormalReport:
    """All (g, gamma) with g outside Gamma_0, gamma != 1, and g gamma g^-1 in Gamma_0."""
    if g_radius < 1 or gamma_radius < 1:
        raise ValueError("radii must be >= 1")
    gs = list(ctx.ball(Side.COMPLEMENT, g_radius))
    ident = ctx.identity()
    gammas = [x for x in ctx.ball(Side.GAMMA0, gamma_radius) if x != ident]

    def scan(g):
        gi = ctx.inv(g)
        out = []
        for gam in gammas:
            c = ctx.prod(g, gam, gi)
            if ctx.is_in_gamma0(c):
                out.append((g, gam, c))
        return out

    found = _ordered_map(scan, gs, workers)
    return MalnormalReport(g_radius, gamma_radius, tuple(v for chunk in found for v in chunk))


@dataclass(frozen=True)
class CertifyResult:
    name: str
    status: str  # "Certified" | "Refuted" | "Inconclusive" | "BoundedVerified"
    detail: dict = field(default_factory=dict)


def certify(ctx: PairContext, radius: int = 6) -> list[CertifyResult]:
    """Run every structural certificate applicable to the family."""
    fam = ctx.family
    out: list[CertifyResult] = []
    if isinstance(fam, FreeFamily):
        out.append(CertifyResult("malnormal-generator", "Certified",
                                 {"reason": "a cyclic subgroup generated by a free generator is malnormal"}))
    elif isinstance(fam, AmalgamFamily):
        if fam.gamma0_word is None:
            out.append(CertifyResult("amalgam-st", "Certified", {
                "reason": "Gamma_0 is an infinite abelian factor, Z finite, Gamma_1 != Z",
                "z_order": fam.table.order_z,
            }))
            comm = [s for s in range(len(fam.g1)) if s not in fam.table.z1
                    and all(fam.g1.mul(s, z) == fam.g1.mul(z, s) for z in fam.table.z1)]
            if fam.table.order_z > 1 and comm:
                out.append(CertifyResult("malnormal", "Refuted", {
                    "reason": "an element of Gamma_1 outside Z centralizes Z != 1",
                    "witness": fam.g1.label(comm[0]),
                }))
        else:
            ok = _cyclic_gamma0_malnormal(fam)
            out.append(CertifyResult("malnormal-ab", "Certified" if ok else "Inconclusive", {
                "gamma0": fam.format(fam.gamma0_word)}))
    elif isinstance(fam, HnnFamily):
        cert = _hnn_cert_cached(ctx)
        out.append(CertifyResult("dom-chain-escape", cert.status, {
            "orientation": cert.orientation,
            "reason": cert.reason,
            "chain": [[list(b) for b in d.basis] for d in cert.chain.domains[:6]],
        }))
        fp = hnn_fixed_point_check(ctx, jmax=8, ball_radius=100)
        out.append(CertifyResult("phi-power-fixed-points", "Refuted" if fp.violations else "BoundedVerified", {
            "violations": [[list(h), j] for h, j in fp.violations[:10]],
        }))
    elif isinstance(fam, SemidirectFamily):
        C = [ctx.wrap((tuple(int(i == j) for j in range(fam.dim)), 0)) for i in range(fam.dim)]
        try:
            cert = semidirect_st_certificate(ctx, C)
            out.append(CertifyResult("semidirect-st", cert.status, {
                "reason": cert.reason, "E1": list(cert.E1), "E": list(cert.E)}))
        except FixedPointExists as exc:
            out.append(CertifyResult("semidirect-st", "Refuted", {"reason": str(exc)}))
    elif isinstance(fam, (Triangular2Family, Triangular3Family)):
        gens = [x for x in ctx.gamma_generators if not ctx.is_in_gamma0(x)]
        C = gens + [ctx.inv(x) for x in gens]
        rep = st_check(ctx, C, radius)
        status = {"CertifiedFinite": "Certified", "RefutedInfinite": "Refuted"}.get(rep.verdict.kind, "BoundedVerified")
        out.append(CertifyResult("st-on-generators", status, {"verdict": rep.verdict.kind}))
    elif isinstance(fam, FreeProductFamily):
        inner = _inner_context(fam)
        for r in certify(inner, radius):
            out.append(CertifyResult(f"inner:{r.name}", r.status, r.detail))
    return out
