"""Free Lie algebra machinery inside the tensor algebra on x, y.

Lie elements are ordinary Poly objects that happen to lie in the span
of commutators.  Membership is decided exactly with the Dynkin
idempotent (phi(f) = n f on the degree-n part), coordinates are taken
in the Lyndon basis (standard right-factorization bracketings, whose
expansions are unitriangular against the Lyndon words), and seeded
random Lie elements are drawn as small integer coordinate vectors.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from . import words
from .poly import Coeff, Poly
from .words import Word, WordLike


class NotLieError(ValueError):
    """Raised when a polynomial fails to be a Lie element; carries the residual."""

    def __init__(self, message: str, residual: Poly):
        super().__init__(message)
        self.residual = residual


def bracket(f: Poly, g: Poly) -> Poly:
    """Commutator fg - gf."""
    return f * g - g * f


_phi_cache: dict[int, Poly] = {}


def _phi_word(w: int) -> Poly:
    """Right-nested bracketing [l1,[l2,...[l_{m-1},l_m]...]] of a word."""
    cached = _phi_cache.get(w)
    if cached is not None:
        return cached
    n = words.degree(w)
    if n == 1:
        res = Poly.word(w)
    else:
        head = (1 << 1) | ((w >> (n - 1)) & 1)  # first letter as a word code
        rest = (1 << (n - 1)) | (w & ((1 << (n - 1)) - 1))
        res = bracket(Poly.word(head), _phi_word(rest))
    _phi_cache[w] = res
    return res


def dynkin_phi(f: Poly) -> Poly:
    """Linear extension of the right-nested bracketing map."""
    out = Poly.zero()
    for w, c in f.terms.items():
        if w == words.EMPTY:
            raise ValueError("dynkin_phi is not defined on the empty word")
        out = out + _phi_word(w).scale(c)
    return out


def theta_apply(u: Poly | WordLike, v: Poly) -> Poly:
    """Apply theta(u) to v, where theta sends a word to the product of ad's.

    theta(l1 ... lm) = ad(l1) o ... o ad(lm), extended linearly in u.
    """
    if not isinstance(u, Poly):
        u = Poly.word(u)
    out = Poly.zero()
    for w, c in u.terms.items():
        res = v
        for bit in reversed(list(words.letters_of(w))):
            res = bracket(Poly.word((1 << 1) | bit), res)
        out = out + res.scale(c)
    return out


def is_lie(f: Poly, cross_check: bool = False) -> bool:
    """Exact Lie membership via the Dynkin criterion, per degree.

    With cross_check=True the verdict is recomputed from shuffle
    orthogonality ((f|sh(u,v)) = 0 for all nonempty u, v) and the two
    answers are asserted to agree.
    """
    verdict = True
    for n in f.degrees():
        if n == 0:
            verdict = False
            break
        part = f.homogeneous_part(n)
        if dynkin_phi(part) != part.scale(n):
            verdict = False
            break
    if cross_check:
        from .dshuffle import shuffle

        sh_verdict = True
        for n in f.degrees():
            if n == 0:
                sh_verdict = False
                continue
            part = f.homogeneous_part(n)
            for k in range(1, n // 2 + 1):
                for u in words.all_words(k):
                    for v in words.all_words(n - k):
                        if part.pairing(shuffle(u, v)):
                            sh_verdict = False
                            break
                    if not sh_verdict:
                        break
                if not sh_verdict:
                    break
        assert sh_verdict == verdict, "Dynkin and shuffle criteria disagree"
    return verdict


# -- Lyndon basis ------------------------------------------------------------


def _lyndon_tuples(n: int) -> list[tuple[int, ...]]:
    """All Lyndon words of length n over (0, 1), lexicographically."""
    out = []
    w = [0]
    while w:
        if len(w) == n:
            out.append(tuple(w))
        w = [w[i % len(w)] for i in range(n)]
        while w and w[-1] == 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def _standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a Lyndon word as u v with v its lexicographically least proper suffix."""
    v = min(w[i:] for i in range(1, len(w)))
    return w[: len(w) - len(v)], v


@lru_cache(maxsize=None)
def _lyndon_expansion(w: tuple[int, ...]) -> Poly:
    if len(w) == 1:
        return Poly.word((1 << 1) | w[0])
    u, v = _standard_factorization(w)
    return bracket(_lyndon_expansion(u), _lyndon_expansion(v))


class LyndonBasis:
    """Lyndon-word basis of the degree-n part of the free Lie algebra."""

    __slots__ = ("degree", "word_codes", "expansions")

    def __init__(self, n: int):
        tuples = _lyndon_tuples(n)
        codes = []
        for t in tuples:
            code = 1
            for bit in t:
                code = (code << 1) | bit
            codes.append(code)
        order = sorted(range(len(codes)), key=lambda i: codes[i])
        self.degree = n
        self.word_codes = [codes[i] for i in order]
        self.expansions = [_lyndon_expansion(tuples[i]) for i in order]

    @property
    def dimension(self) -> int:
        return len(self.word_codes)

    def words(self) -> list[Word]:
        return [Word(c) for c in self.word_codes]


@lru_cache(maxsize=None)
def lyndon_basis(n: int) -> LyndonBasis:
    if n < 1:
        raise ValueError("degree must be >= 1")
    return LyndonBasis(n)


def to_coords(f: Poly, n: int | None = None) -> list[Coeff]:
    """Coordinates of a homogeneous Lie element in the Lyndon basis.

    The bracketed Lyndon word expands as the word itself plus
    lexicographically larger words, so coordinates peel off by scanning
    basis words in increasing order.  A nonzero residual after peeling
    means f is not Lie; the residual is attached to the error.
    """
    if n is None:
        n = f.degree()
        if n is None:
            raise ValueError("cannot infer the degree of the zero polynomial")
    if not f.is_homogeneous():
        raise ValueError("to_coords requires a homogeneous polynomial")
    basis = lyndon_basis(n)
    residual = dict(f.terms)
    coords: list[Coeff] = []
    for w, expansion in zip(basis.word_codes, basis.expansions):
        c = residual.get(w, 0)
        coords.append(c)
        if c:
            for code, pc in expansion.terms.items():
                nc = residual.get(code, 0) - c * pc
                if nc:
                    residual[code] = nc
                elif code in residual:
                    del residual[code]
    if residual:
        raise NotLieError(
            "polynomial is not in the free Lie algebra", Poly(residual)
        )
    return coords


def from_coords(coords: list[Coeff], n: int) -> Poly:
    basis = lyndon_basis(n)
    if len(coords) != basis.dimension:
        raise ValueError(
            f"expected {basis.dimension} coordinates for degree {n}, got {len(coords)}"
        )
    out = Poly.zero()
    for c, expansion in zip(coords, basis.expansions):
        if c:
            out = out + expansion.scale(c)
    return out


def random_lie(n: int, seed: int) -> Poly:
    """Seeded random Lie element with small integer Lyndon coordinates."""
    rng = random.Random(f"lie:{n}:{seed}")
    dim = lyndon_basis(n).dimension
    while True:
        coords = [rng.randint(-9, 9) for _ in range(dim)]
        if any(coords):
            return from_coords(coords, n)


def witt_dimension(n: int) -> int:
    """Dimension of the degree-n part of the free Lie algebra on two letters."""

    def mobius(d: int) -> int:
        out, p = 1, 2
        while p * p <= d:
            if d % p == 0:
                d //= p
                if d % p == 0:
                    return 0
                out = -out
            p += 1
        if d > 1:
            out = -out
        return out

    total = sum(mobius(d) * 2 ** (n // d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n
