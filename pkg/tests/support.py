"""Shared test helpers: random words, relator insertion, and independent oracles.

The oracles here never call into pairmix normal forms.  They decide equality
by other means: faithful matrix representations, naive pinch rewriting for
Baumslag-Solitar words, and naive syllable merging for the Z/4 amalgam.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from pairmix import shipped

SHIPPED = ["f2", "bs23", "bs32", "bs22", "psl2z", "amalgam_z4", "semidirect_fib", "gamma_n", "gamma_2_3"]


@lru_cache(maxsize=None)
def ctx(name: str):
    return shipped(name)


def invert_token(tok: str) -> str:
    return tok[: -len("^-1")] if tok.endswith("^-1") else tok + "^-1"


def invert_word(tokens: list[str]) -> list[str]:
    return [invert_token(t) for t in reversed(tokens)]


def random_word(rng: random.Random, names: list[str], length: int, max_exp: int = 3) -> list[str]:
    out = []
    for _ in range(length):
        name = rng.choice(names)
        e = rng.choice([k for k in range(-max_exp, max_exp + 1) if k])
        out.append(name if e == 1 else f"{name}^{e}")
    return out


def insert_relators(rng: random.Random, context, tokens: list[str], count: int) -> list[str]:
    """Insert relators, inverted or rotated relators, and cancelling pairs at random positions."""
    rels = context.family.relators()
    names = context.family.generator_names()
    out = list(tokens)
    for _ in range(count):
        kind = rng.randrange(3) if rels else 2
        if kind == 0:
            piece = list(rng.choice(rels))
            r = rng.randrange(len(piece))
            piece = piece[r:] + piece[:r]
        elif kind == 1:
            piece = invert_word(list(rng.choice(rels)))
        else:
            g = rng.choice(names)
            piece = [g, g + "^-1"] if rng.random() < 0.5 else [g + "^-1", g]
        pos = rng.randrange(len(out) + 1)
        out[pos:pos] = piece
    return out


# --------------------------------------------------------------------------
# integer / rational matrices


def mat_mul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))) for i in range(len(A))
    )


def mat_pow(M, e: int):
    n = len(M)
    out = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if e < 0:
        M, e = mat_inv(M), -e
    for _ in range(e):
        out = mat_mul(out, M)
    return out


def mat_inv(M):
    """Inverse of a 2x2 or 3x3 matrix over the rationals (cofactors)."""
    n = len(M)
    if n == 2:
        (a, b), (c, d) = M
        det = Fraction(a * d - b * c)
        return ((d / det, -b / det), (-c / det, a / det))
    det = Fraction(
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = M[rows[0]][cols[0]] * M[rows[1]][cols[1]] - M[rows[0]][cols[1]] * M[rows[1]][cols[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    return tuple(tuple(Fraction(cof[j][i]) / det for j in range(3)) for i in range(3))


def normalize_int(M):
    return tuple(tuple(int(a) if Fraction(a).denominator == 1 else Fraction(a) for a in r) for r in M)


def parse_token(tok: str) -> tuple[str, int]:
    exp = 1
    while "^" in tok:
        tok, e = tok.rsplit("^", 1)
        exp *= int(e)
    return tok, exp


def word_matrix(images: dict, tokens: list[str]):
    n = len(next(iter(images.values())))
    out = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for tok in tokens:
        name, e = parse_token(tok)
        out = mat_mul(out, mat_pow(images[name], e))
    return normalize_int(out)


# Sanov: a, b -> [[1,2],[0,1]], [[1,0],[2,1]] is a faithful representation of F_2
F2_IMAGES = {"a": ((1, 2), (0, 1)), "b": ((1, 0), (2, 1))}
# Z/2 * Z/3 -> PSL(2, Z), faithful up to the sign of the matrix
PSL_IMAGES = {"x": ((0, -1), (1, 0)), "y": ((0, -1), (1, 1))}


def f2_key(tokens):
    return word_matrix(F2_IMAGES, tokens)


def f2_in_gamma0(tokens) -> bool:
    M = f2_key(tokens)
    return M[0][0] == 1 and M[1][0] == 0 and M[1][1] == 1 and M[0][1] % 2 == 0


def psl_key(tokens):
    images = dict(PSL_IMAGES)
    images["y^2"] = mat_mul(PSL_IMAGES["y"], PSL_IMAGES["y"])
    M = word_matrix(images, [_psl_token(t) for t in tokens])
    neg = tuple(tuple(-a for a in r) for r in M)
    return min(M, neg)


def _psl_token(tok: str) -> str:
    # y^2 is a generator label of the shipped config; expand it to y y
    name, e = parse_token(tok)
    if name == "y^2":
        return f"y^{2 * e}"
    return f"{name}^{e}"


# --------------------------------------------------------------------------
# Baumslag-Solitar words by naive pinching (Britton's lemma decides triviality)


def bs_syllables(tokens) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for tok in tokens:
        name, e = parse_token(tok)
        step = [(name, 1 if e > 0 else -1)] * abs(e) if name == "a" else [(name, e)]
        for s in step:
            if out and out[-1][0] == "b" == s[0]:
                v = out.pop()[1] + s[1]
                if v:
                    out.append(("b", v))
            elif out and out[-1] == ("a", -s[1]) and s[0] == "a":
                out.pop()
            else:
                out.append(s)
    return out


def bs_pinch(m: int, n: int, syl: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """Apply a^-1 b^(nj) a -> b^(mj) and a b^(mj) a^-1 -> b^(nj) until none applies."""
    syl = list(syl)
    changed = True
    while changed:
        changed = False
        for i in range(len(syl) - 2):
            (x, e1), (y, k), (z, e2) = syl[i:i + 3]
            if x == "a" and z == "a" and y == "b" and e1 == -1 and e2 == 1 and k % n == 0:
                new = ("b", k // n * m)
            elif x == "a" and z == "a" and y == "b" and e1 == 1 and e2 == -1 and k % m == 0:
                new = ("b", k // m * n)
            else:
                continue
            syl = bs_syllables([f"{a}^{e}" for a, e in syl[:i] + [new] + syl[i + 3:]])
            changed = True
            break
    return syl


def bs_trivial(m: int, n: int, tokens) -> bool:
    return not bs_pinch(m, n, bs_syllables(tokens))


def bs_equal(m: int, n: int, w1, w2) -> bool:
    return bs_trivial(m, n, list(w1) + invert_word(list(w2)))


def bs_in_gamma0(m: int, n: int, tokens) -> bool:
    j = sum(e for name, e in map(parse_token, tokens) if name == "a")
    return bs_trivial(m, n, list(tokens) + [f"a^{-j}"] if j else list(tokens))


# --------------------------------------------------------------------------
# (Z x Z/2) *_{Z/2} Z/4 with z ~ s^2, by naive syllable merging


def amalgam_z4_reduce(tokens) -> list[tuple[int, object]]:
    syl: list[tuple[int, object]] = []
    for tok in tokens:
        name, e = parse_token(tok)
        if name == "c":
            syl.append((0, (e, 0)))
        elif name == "z":
            syl.append((0, (0, e % 2)))
        else:
            k = {"s": 1, "s^2": 2, "s^3": 3}[name]
            syl.append((1, (k * e) % 4))

    def trivial(s):
        return s[1] == ((0, 0) if s[0] == 0 else 0)

    def in_z(s):
        return s[1][0] == 0 if s[0] == 0 else s[1] % 2 == 0

    def swap(s):
        return (1, 2 * s[1][1] % 4) if s[0] == 0 else (0, (0, s[1] // 2))

    def merge(s, t):
        if s[0] == 0:
            return (0, (s[1][0] + t[1][0], (s[1][1] + t[1][1]) % 2))
        return (1, (s[1] + t[1]) % 4)

    changed = True
    while changed:
        changed = False
        syl = [s for s in syl if not trivial(s)]
        for i in range(len(syl) - 1):
            if syl[i][0] == syl[i + 1][0]:
                syl[i:i + 2] = [merge(syl[i], syl[i + 1])]
                changed = True
                break
        if changed or len(syl) < 2:
            continue
        for i, s in enumerate(syl):
            if in_z(s):
                syl[i] = swap(s)
                changed = True
                break
    return [s for s in syl if not trivial(s)]


def amalgam_z4_equal(w1, w2) -> bool:
    return not amalgam_z4_reduce(list(w1) + invert_word(list(w2)))
