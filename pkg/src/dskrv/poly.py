"""Sparse polynomials in noncommuting x, y with exact rational coefficients.

Terms live in a dict keyed by packed word codes (see words.py); values
are Python ints or Fractions, never floats, and zero coefficients are
dropped eagerly.  Poly objects are immutable by convention: no public
method mutates, all operations return fresh instances.

Besides ring arithmetic this module implements the word-level operators
that the rest of the package is built on: coefficient extraction,
linear substitution, the derivation d/dx, reversal (anti), push,
left/right factor decompositions f = x f^x + y f^y = f_x x + f_y y, the
section maps s and s' that rebuild a Lie element from one factor, and
the palindromy / push-invariance / push-constancy predicates.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Union

from . import words
from .words import EMPTY, Word, WordLike, as_code

Coeff = Union[int, Fraction]


def _clean(terms: dict[int, Coeff]) -> dict[int, Coeff]:
    return {w: c for w, c in terms.items() if c}


class Poly:
    """A finite linear combination of words with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Coeff] | None = None):
        object.__setattr__(self, "terms", _clean(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls({})

    @classmethod
    def one(cls) -> "Poly":
        """The multiplicative unit (empty word)."""
        return cls({EMPTY: 1})

    @classmethod
    def word(cls, w: WordLike, c: Coeff = 1) -> "Poly":
        return cls({as_code(w): c})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[WordLike, Coeff]]) -> "Poly":
        terms: dict[int, Coeff] = {}
        for w, c in pairs:
            code = as_code(w)
            terms[code] = terms.get(code, 0) + c
        return cls(terms)

    # -- basic queries ---------------------------------------------------

    def coeff(self, w: WordLike) -> Coeff:
        """The coefficient (f|w); w must be a nonempty word."""
        code = as_code(w)
        if code == EMPTY:
            raise ValueError("coefficient of the empty word is not defined")
        return self.terms.get(code, 0)

    def pairing(self, g: "Poly") -> Coeff:
        """Bilinear pairing sum of (f|w)(g|w) over words."""
        a, b = self.terms, g.terms
        if len(b) < len(a):
            a, b = b, a
        return sum(c * b[w] for w, c in a.items() if w in b)

    def support(self) -> list[int]:
        """Word codes with nonzero coefficient, in canonical order."""
        return sorted(self.terms)

    def items(self) -> Iterator[tuple[int, Coeff]]:
        """(code, coeff) pairs in canonical term order."""
        for w in sorted(self.terms):
            yield w, self.terms[w]

    def degree(self) -> int | None:
        """Maximal word length, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(words.degree(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len({words.degree(w) for w in self.terms}) <= 1

    def homogeneous_part(self, n: int) -> "Poly":
        return Poly({w: c for w, c in self.terms.items() if words.degree(w) == n})

    def degrees(self) -> list[int]:
        return sorted({words.degree(w) for w in self.terms})

    def depth_part(self, r: int) -> "Poly":
        return Poly({w: c for w, c in self.terms.items() if words.depth(w) == r})

    def depths(self) -> list[int]:
        return sorted({words.depth(w) for w in self.terms})

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            nc = terms.get(w, 0) + c
            if nc:
                terms[w] = nc
            elif w in terms:
                del terms[w]
        return Poly(terms)

    def __sub__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            nc = terms.get(w, 0) - c
            if nc:
                terms[w] = nc
            elif w in terms:
                del terms[w]
        return Poly(terms)

    def __neg__(self) -> "Poly":
        return Poly({w: -c for w, c in self.terms.items()})

    def scale(self, c: Coeff) -> "Poly":
        if not c:
            return Poly.zero()
        return Poly({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        """Concatenation product, or scalar multiple for rational other."""
        if isinstance(other, Rational):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        terms: dict[int, Coeff] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                w = words.concat_codes(a, b)
                nc = terms.get(w, 0) + ca * cb
                if nc:
                    terms[w] = nc
                elif w in terms:
                    del terms[w]
        return Poly(terms)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            name = "1" if w == EMPTY else words.str_from_code(w)
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            else:
                term = f"{c}*{name}"
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term[1:])
            else:
                parts.append(term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<Poly {self}>"


def _map_words(f: Poly, word_map) -> Poly:
    terms: dict[int, Coeff] = {}
    for w, c in f.terms.items():
        nw = word_map(w)
        nc = terms.get(nw, 0) + c
        if nc:
            terms[nw] = nc
        elif nw in terms:
            del terms[nw]
    return Poly(terms)


def _reject_empty(f: Poly, op: str) -> None:
    if EMPTY in f.terms:
        raise ValueError(f"{op} is not defined on the empty word")


# -- word operators, extended linearly ------------------------------------


def anti(f: Poly) -> Poly:
    """Reverse every word."""
    _reject_empty(f, "anti")
    return _map_words(f, words.anti_code)


def push(f: Poly) -> Poly:
    """Apply the push rotation to every word."""
    _reject_empty(f, "push")
    return _map_words(f, words.push_code)


def swap_xy(f: Poly) -> Poly:
    """Exchange the letters x and y in every word."""
    _reject_empty(f, "swap_xy")

    def flip(code: int) -> int:
        n = words.degree(code)
        return code ^ ((1 << n) - 1)

    return _map_words(f, flip)


def negate_y(f: Poly) -> Poly:
    """Substitute y -> -y (sign by y-count); x is fixed."""
    _reject_empty(f, "negate_y")
    return Poly(
        {w: -c if words.depth(w) & 1 else c for w, c in f.terms.items()}
    )


def pi_y(f: Poly) -> Poly:
    """Projection onto the span of words ending in y."""
    _reject_empty(f, "pi_y")
    return Poly({w: c for w, c in f.terms.items() if words.ends_in_y(w)})


def partial_x(f: Poly) -> Poly:
    """Derivation d/dx: delete one x from each word in all ways.

    The empty word is a constant for the derivation: x maps to the
    unit, the unit maps to zero.
    """
    terms: dict[int, Coeff] = {}
    for w, c in f.terms.items():
        n = words.degree(w)
        for i in range(n):
            if not (w >> i) & 1:  # x at bit position i
                nw = ((w >> (i + 1)) << i) | (w & ((1 << i) - 1))
                nc = terms.get(nw, 0) + c
                if nc:
                    terms[nw] = nc
                elif nw in terms:
                    del terms[nw]
    return Poly(terms)


def subst_linear(f: Poly, x_image: Poly, y_image: Poly) -> Poly:
    """Algebra substitution x -> x_image, y -> y_image.

    Both images must be homogeneous of degree 1, so the substitution
    preserves grading.
    """
    for g in (x_image, y_image):
        if g and (not g.is_homogeneous() or g.degree() != 1):
            raise ValueError("substitution images must be linear in x, y")
    images = (x_image, y_image)
    out = Poly.zero()
    cache: dict[int, Poly] = {}
    for w, c in f.terms.items():
        if w == EMPTY:
            raise ValueError("subst_linear is not defined on the empty word")
        if w not in cache:
            prod = Poly.one()
            for bit in words.letters_of(w):
                prod = prod * images[bit]
            cache[w] = prod
        out = out + cache[w].scale(c)
    return out


def decompose_right(f: Poly) -> tuple[Poly, Poly]:
    """Split f = f_x * x + f_y * y; returns (f_x, f_y)."""
    _reject_empty(f, "decompose_right")
    fx: dict[int, Coeff] = {}
    fy: dict[int, Coeff] = {}
    for w, c in f.terms.items():
        (fy if w & 1 else fx)[w >> 1] = c
    return Poly(fx), Poly(fy)


def decompose_left(f: Poly) -> tuple[Poly, Poly]:
    """Split f = x * f^x + y * f^y; returns (f^x, f^y)."""
    _reject_empty(f, "decompose_left")
    fx: dict[int, Coeff] = {}
    fy: dict[int, Coeff] = {}
    for w, c in f.terms.items():
        n = words.degree(w)
        rest = (1 << (n - 1)) | (w & ((1 << (n - 1)) - 1))
        ((fy if (w >> (n - 1)) & 1 else fx))[rest] = c
    return Poly(fx), Poly(fy)


def s_map(h: Poly) -> Poly:
    """Section map h -> sum_i (-1)^i/i! (d/dx)^i(h) y x^i.

    Rebuilds a Lie element f from its right factor: f = s_map(f_y)
    whenever f is Lie of degree >= 2.
    """
    out = Poly.zero()
    term = h
    i = 0
    fact = 1
    while term:
        tail = Poly.word(words.concat_codes(words.Y_CODE, words.x_power(i)))  # y x^i
        sign = -1 if i & 1 else 1
        out = out + (term * tail).scale(Fraction(sign, fact))
        i += 1
        fact *= i
        term = partial_x(term)
    return out


def s_prime_map(h: Poly) -> Poly:
    """Mirror section map h -> sum_i (-1)^i/i! x^i y (d/dx)^i(h).

    Rebuilds a Lie element from its left factor: f = s_prime_map(f^y).
    """
    out = Poly.zero()
    term = h
    i = 0
    fact = 1
    while term:
        head = Poly.word(words.concat_codes(words.x_power(i), words.Y_CODE))  # x^i y
        sign = -1 if i & 1 else 1
        out = out + (head * term).scale(Fraction(sign, fact))
        i += 1
        fact *= i
        term = partial_x(term)
    return out


# -- symmetry predicates ----------------------------------------------------


def _require_homogeneous(f: Poly, op: str) -> int | None:
    if not f.is_homogeneous():
        raise ValueError(f"{op} requires a homogeneous polynomial")
    return f.degree()


def is_palindromic(f: Poly) -> bool:
    """True when f equals (-1)^(m-1) anti(f), m the degree of f."""
    m = _require_homogeneous(f, "is_palindromic")
    if m is None:
        return True
    return f == (anti(f) if (m - 1) % 2 == 0 else -anti(f))


def is_antipalindromic(f: Poly) -> bool:
    """True when f equals (-1)^m anti(f), m the degree of f."""
    m = _require_homogeneous(f, "is_antipalindromic")
    if m is None:
        return True
    return f == (anti(f) if m % 2 == 0 else -anti(f))


def is_push_invariant(f: Poly) -> bool:
    m = _require_homogeneous(f, "is_push_invariant")
    if m is None:
        return True
    return push(f) == f


def push_constant(f: Poly) -> Coeff | None:
    """The constant A with sum over Push(w) of (f|v) = A for all w != y^n.

    Sums run over the full push orbit list, repeats included.  Requires
    (f|y^n) = 0.  Returns None when f is not push-constant for any A.
    """
    n = _require_homogeneous(f, "push_constant")
    if n is None:
        return 0
    if f.terms.get(words.y_power(n), 0):
        return None
    a = None
    seen: set[int] = set()
    for w in words.all_words(n):
        if w in seen or words.is_power_of_y(w):
            continue
        orbit = words.push_orbit(w)
        seen.update(orbit)
        total = sum(f.terms.get(v, 0) for v in orbit)
        if a is None:
            a = total
        elif total != a:
            return None
    return a


# -- serialization ----------------------------------------------------------


def coeff_to_str(c: Coeff) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_to_json(f: Poly) -> dict:
    """JSON form: degree (or null) plus terms in canonical order."""
    deg = f.degree() if f.is_homogeneous() else None
    return {
        "degree": deg,
        "terms": [
            {"word": words.str_from_code(w), "coeff": coeff_to_str(c)}
            for w, c in f.items()
        ],
    }


def poly_from_json(obj: dict) -> Poly:
    terms: dict[int, Coeff] = {}
    for t in obj["terms"]:
        c = Fraction(t["coeff"])
        coeff: Coeff = int(c) if c.denominator == 1 else c
        code = words.code_from_str(t["word"])
        terms[code] = terms.get(code, 0) + coeff
    f = Poly(terms)
    deg = obj.get("degree")
    if deg is not None and f and (not f.is_homogeneous() or f.degree() != deg):
        raise ValueError("declared degree does not match terms")
    return f


X = Poly.word("x")
Y = Poly.word("y")
