"""Tangential derivations and the Kashiwara-Vergne side.

A tangential derivation of the free Lie algebra on x, y is determined
by a pair (F, G) of Lie elements via x -> [x, G], y -> [y, F].  It is
special when it kills x + y, i.e. [x, G] + [y, F] = 0; given F of
degree > 1 the special partner G is unique when it exists.

krv membership adds the trace condition: tr(F_y y + G_x x) must be a
rational multiple of tr((x+y)^n - x^n - y^n) in the space of cyclic
words.  This module computes all of that exactly, provides the
five-way equivalence report for specialness, the reconstruction of a
Lie element from one bracket factor, and the weight-preserving
injection of the double shuffle Lie algebra into krv.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg, words
from .dshuffle import is_ds
from .lie import NotLieError, bracket, is_lie, lyndon_basis, to_coords
from .poly import (
    Coeff,
    Poly,
    anti,
    coeff_to_str,
    decompose_left,
    decompose_right,
    is_antipalindromic,
    is_push_invariant,
    negate_y,
    poly_from_json,
    poly_to_json,
    push_constant,
    s_map,
    s_prime_map,
    subst_linear,
    swap_xy,
)

X = Poly.word("x")
Y = Poly.word("y")


# -- cyclic words -------------------------------------------------------------


class CyclicPoly:
    """Linear combination of cyclic words (words up to rotation).

    Keys are the lexicographically smallest rotation of each word.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Coeff] | None = None):
        object.__setattr__(self, "terms", {w: c for w, c in (terms or {}).items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("CyclicPoly is immutable")

    def coeff(self, w: words.WordLike) -> Coeff:
        return self.terms.get(words.cyclic_min(words.as_code(w)), 0)

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            nc = terms.get(w, 0) + c
            if nc:
                terms[w] = nc
            elif w in terms:
                del terms[w]
        return CyclicPoly(terms)

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        return self + other.scale(-1)

    def scale(self, c: Coeff) -> "CyclicPoly":
        if not c:
            return CyclicPoly({})
        return CyclicPoly({w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicPoly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        inner = " + ".join(
            f"{c}*({words.str_from_code(w)})" for w, c in sorted(self.terms.items())
        )
        return f"<CyclicPoly {inner or 0}>"


def trace(f: Poly) -> CyclicPoly:
    """Project a polynomial onto cyclic words (trace map)."""
    terms: dict[int, Coeff] = {}
    for w, c in f.terms.items():
        if w == words.EMPTY:
            raise ValueError("trace is not defined on the empty word")
        k = words.cyclic_min(w)
        nc = terms.get(k, 0) + c
        if nc:
            terms[k] = nc
        elif k in terms:
            del terms[k]
    return CyclicPoly(terms)


# -- tangential derivations ----------------------------------------------------


class TangentialDerivation:
    """The derivation x -> [x, G], y -> [y, F] attached to a pair (F, G)."""

    __slots__ = ("F", "G")

    def __init__(self, F: Poly, G: Poly, check: bool = True):
        if check:
            for h, name in ((F, "F"), (G, "G")):
                if h and not h.is_homogeneous():
                    raise ValueError(f"{name} must be homogeneous")
                if not is_lie(h):
                    raise NotLieError(f"{name} is not a Lie element", h)
            if F and G and F.degree() != G.degree():
                raise ValueError("F and G must have the same degree")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)

    def __setattr__(self, name, value):
        raise AttributeError("TangentialDerivation is immutable")

    @property
    def degree(self) -> int | None:
        return self.F.degree() if self.F else self.G.degree()

    def apply(self, h: Poly) -> Poly:
        """Apply the derivation to an arbitrary polynomial."""
        img = (bracket(X, self.G), bracket(Y, self.F))
        out = Poly.zero()
        for w, c in h.terms.items():
            n = words.degree(w)
            for i in range(n):
                pre = w >> (i + 1)
                post = (1 << i) | (w & ((1 << i) - 1))
                piece = Poly.word(pre) * img[(w >> i) & 1] * Poly.word(post)
                out = out + piece.scale(c)
        return out

    def special_residual(self) -> Poly:
        """[x, G] + [y, F]; zero exactly for special derivations."""
        return bracket(X, self.G) + bracket(Y, self.F)

    def is_special(self) -> bool:
        return not self.special_residual()

    def commutator(self, other: "TangentialDerivation") -> "TangentialDerivation":
        """Bracket of tangential derivations, again tangential."""
        f = bracket(self.F, other.F) + self.apply(other.F) - other.apply(self.F)
        g = bracket(self.G, other.G) + self.apply(other.G) - other.apply(self.G)
        return TangentialDerivation(f, g, check=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TangentialDerivation)
            and self.F == other.F
            and self.G == other.G
        )

    def __repr__(self) -> str:
        return f"<TangentialDerivation deg={self.degree}>"

    def to_json(self) -> dict:
        a = trace_constant(self)
        return {
            "degree": self.degree,
            "F": poly_to_json(self.F),
            "G": poly_to_json(self.G),
            "special": self.is_special(),
            "traceA": None if a is None else coeff_to_str(a),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TangentialDerivation":
        return cls(poly_from_json(obj["F"]), poly_from_json(obj["G"]))


# -- specialness: construction and the five-way equivalence -------------------


def solve_partner(F: Poly) -> Poly:
    """Candidate special partner G = s'(F_x)."""
    fx, _ = decompose_right(F)
    return s_prime_map(fx)


def partner_by_elimination(F: Poly) -> Poly | None:
    """Solve [x, G] = -[y, F] for Lie G directly, or None.

    Honest existence check: G ranges over Lyndon coordinates of the
    degree-n component and the equation is solved exactly word by word.
    The solution is unique when it exists (only multiples of x commute
    with x, and they sit in degree 1).
    """
    n = F.degree()
    if n is None:
        return Poly.zero()
    lb = lyndon_basis(n)
    cols = [bracket(X, e) for e in lb.expansions]
    rhs_poly = -bracket(Y, F)
    word_set = sorted(set().union(*(set(c.terms) for c in cols), set(rhs_poly.terms)))
    rows = [[c.terms.get(w, 0) for c in cols] for w in word_set]
    rhs = [rhs_poly.terms.get(w, 0) for w in word_set]
    sol = linalg.solve(rows, rhs, lb.dimension)
    if sol is None:
        return None
    out = Poly.zero()
    for c, e in zip(sol, lb.expansions):
        if c:
            out = out + e.scale(c)
    return out


def special_equivalences(f: Poly) -> dict:
    """The five equivalent characterizations of specialness, evaluated
    independently on a homogeneous Lie element f of degree >= 2.

    With F = f(-x-y, y), the conditions are:
      existence   - some Lie G solves [y,F] + [x,G] = 0 (exact elimination)
      formula     - G = s'(F_x) is Lie and solves the equation
      right_anti  - F_y is antipalindromic
      push_inv    - F is push-invariant
      factor_anti - f_y - f_x is antipalindromic
    Returns the five booleans plus 'agree' and, when available, the
    solved partner G.
    """
    n = f.degree()
    if not f or not f.is_homogeneous() or n < 2:
        raise ValueError(
            "special_equivalences requires nonzero homogeneous input of degree >= 2"
        )
    if not is_lie(f):
        raise NotLieError("special_equivalences requires a Lie element", f)
    big_f = subst_linear(f, -X - Y, Y)
    big_fx, big_fy = decompose_right(big_f)
    fx, fy = decompose_right(f)

    g_solved = partner_by_elimination(big_f)
    existence = g_solved is not None

    g_formula = solve_partner(big_f)
    formula = is_lie(g_formula) and not (bracket(X, g_formula) + bracket(Y, big_f))

    report = {
        "existence": existence,
        "formula": formula,
        "right_anti": is_antipalindromic(big_fy),
        "push_inv": is_push_invariant(big_f),
        "factor_anti": is_antipalindromic(fy - fx),
    }
    verdicts = set(report.values())
    report["agree"] = len(verdicts) == 1
    report["partner"] = g_solved
    if existence and formula:
        assert g_solved == g_formula, "the two partner constructions disagree"
    return report


def special_derivation(F: Poly) -> TangentialDerivation | None:
    """The special derivation with y-part F, if F admits one."""
    g = solve_partner(F)
    d = TangentialDerivation(F, g, check=False)
    if not is_lie(g) or not d.is_special():
        return None
    return d


# -- factor reconstruction -----------------------------------------------------


def factor_out_x(f: Poly) -> Poly:
    """Write f = [x, h] with h Lie, assuming no word of f starts and ends in y.

    The right y-factor of such an f is x P for a polynomial P, and
    h = s_map(P) does the job; h is returned after exact verification.
    """
    n = f.degree()
    if n is None or not f.is_homogeneous() or n < 2:
        raise ValueError("factor_out_x requires homogeneous input of degree >= 2")
    for w in f.terms:
        if words.starts_with_y(w) and words.ends_in_y(w):
            raise ValueError("a word of f starts and ends in y")
    _, fy = decompose_right(f)
    p_terms: dict[int, Coeff] = {}
    for w, c in fy.terms.items():
        if words.starts_with_y(w):
            raise ValueError("the right y-factor is not divisible by x on the left")
        m = words.degree(w)
        p_terms[(1 << (m - 1)) | (w & ((1 << (m - 1)) - 1))] = c
    h = s_map(Poly(p_terms))
    if not is_lie(h):
        raise NotLieError("reconstructed factor is not Lie", h)
    if bracket(X, h) != f:
        raise ValueError("reconstruction failed: [x, h] != f")
    return h


def factor_out_y(f: Poly) -> Poly:
    """Write f = [y, h] with h Lie, assuming no word of f starts and ends in x."""
    return swap_xy(factor_out_x(swap_xy(f)))


# -- the trace condition and krv ------------------------------------------------


def mixed_trace(n: int) -> CyclicPoly:
    """tr((x+y)^n - x^n - y^n): every cyclic class except the two pure ones."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    f = Poly({w: 1 for w in words.all_words(n)})
    f = f - Poly.word(words.x_power(n)) - Poly.word(words.y_power(n))
    return trace(f)


def trace_constant(d: TangentialDerivation) -> Fraction | None:
    """The rational A with tr(F_y y + G_x x) = A tr((x+y)^n - x^n - y^n).

    Returns None when the trace condition fails.  Degree-1 derivations
    satisfy it trivially with A = 0.
    """
    n = d.degree
    if n is None or n == 1:
        return Fraction(0)
    _, fy = decompose_right(d.F)
    gx, _ = decompose_right(d.G)
    t = trace(fy * Y + gx * X)
    r = mixed_trace(n)
    key = min(r.terms)
    a = Fraction(t.terms.get(key, 0), 1) / r.terms[key]
    if t == r.scale(a):
        return a
    return None


def krv_check(d: TangentialDerivation) -> bool:
    """Membership in krv: special plus the trace condition."""
    return d.is_special() and trace_constant(d) is not None


def vkv_check(F: Poly) -> bool:
    """Membership in the divisor-side model: F_y antipalindromic and
    F_y - F_x push-constant (for some A)."""
    if not F or not F.is_homogeneous():
        raise ValueError("vkv_check requires nonzero homogeneous input")
    if not is_lie(F):
        raise NotLieError("vkv_check requires a Lie element", F)
    fx, fy = decompose_right(F)
    if fy and not is_antipalindromic(fy):
        return False
    return push_constant(fy - fx) is not None


# -- transport of push-constancy ------------------------------------------------


def pushconst_transport(f: Poly) -> dict:
    """From f_y push-constant A, certify that F_y - F_x is push-constant
    for the same A, where F = f(-x-y, y).

    Precondition: f homogeneous Lie with f_y push-constant; for even n
    the constant must vanish (for odd n no extra condition).
    """
    n = f.degree()
    if n is None or not f.is_homogeneous():
        raise ValueError("pushconst_transport requires nonzero homogeneous input")
    if not is_lie(f):
        raise NotLieError("pushconst_transport requires a Lie element", f)
    _, fy = decompose_right(f)
    a = push_constant(fy)
    if a is None:
        raise ValueError("f_y is not push-constant")
    if n % 2 == 0 and a != 0:
        raise ValueError("even degree forces a vanishing push constant")
    big_f = subst_linear(f, -X - Y, Y)
    bfx, bfy = decompose_right(big_f)
    got = push_constant(bfy - bfx)
    return {"A": a, "transported": got, "ok": got == a}


# -- the injection of ds ---------------------------------------------------------


def ds_to_krv(ft: Poly, check: bool = True) -> TangentialDerivation:
    """Image of a double shuffle element under the weight-preserving
    injection into krv.

    The element is twisted by y -> -y, x is substituted by -x-y, and
    the special partner is G = s_map(F^x).  With check=True the input
    is verified to be in ds and the output is verified special with a
    valid trace constant.
    """
    if check and not is_ds(ft):
        raise ValueError("input is not a double shuffle element")
    f = negate_y(ft)
    big_f = subst_linear(f, -X - Y, Y)
    f_upper_x, _ = decompose_left(big_f)
    g = s_map(f_upper_x)
    d = TangentialDerivation(big_f, g, check=check)
    if check:
        if not d.is_special():
            raise ValueError("image derivation is not special")
        if trace_constant(d) is None:
            raise ValueError("image derivation fails the trace condition")
    return d


def krv_to_ds(d: TangentialDerivation) -> Poly:
    """Inverse of ds_to_krv on its image, reading only D(y) = [y, F].

    Recovers F by factoring y out of the derivation's value on y (via
    the x/y mirror of factor_out_x), undoes the substitution, and
    untwists y -> -y.
    """
    h = d.apply(Y)
    if not h:
        return Poly.zero()
    big_f = factor_out_y(h)
    f = subst_linear(big_f, -X - Y, Y)
    return negate_y(f)


# -- dimension bookkeeping --------------------------------------------------------


def _antipalindromy_rows(n: int) -> tuple[list[list[Coeff]], int]:
    """Rows over Lyndon coordinates expressing 'F_y is antipalindromic'."""
    lb = lyndon_basis(n)
    sign = 1 if (n - 1) % 2 == 0 else -1
    conds = []
    for e in lb.expansions:
        _, ey = decompose_right(e)
        conds.append(ey - anti(ey).scale(sign))
    word_set = sorted(set().union(*(set(c.terms) for c in conds)) or set())
    rows = [[c.terms.get(w, 0) for c in conds] for w in word_set]
    return rows, lb.dimension


def special_subspace(n: int) -> list[Poly]:
    """Basis of homogeneous degree-n Lie elements F with F_y antipalindromic."""
    rows, d = _antipalindromy_rows(n)
    lb = lyndon_basis(n)
    out = []
    for vec in linalg.nullspace(rows, d):
        f = Poly.zero()
        for c, e in zip(vec, lb.expansions):
            if c:
                f = f + e.scale(c)
        out.append(f)
    return out


def kv_dimensions(n: int) -> dict:
    """Dimensions of the special, krv and divisor-model subspaces at
    weight n, computed by independent linear systems, with the span
    equality of the two models certified element by element."""
    rows_iii, d = _antipalindromy_rows(n)
    lb = lyndon_basis(n)

    # krv: antipalindromy plus the trace condition, unknowns (coords, A)
    krv_rows = [r + [0] for r in rows_iii]
    traces = []
    for e in lb.expansions:
        _, ey = decompose_right(e)
        gx, _ = decompose_right(s_prime_map(decompose_right(e)[0]))
        traces.append(trace(ey * Y + gx * X))
    r_cyc = mixed_trace(n)
    classes = sorted(set().union(*(set(t.terms) for t in traces), set(r_cyc.terms)))
    for w in classes:
        krv_rows.append([t.terms.get(w, 0) for t in traces] + [-r_cyc.terms.get(w, 0)])
    krv_null = linalg.nullspace(krv_rows, d + 1)

    # divisor model: antipalindromy plus push-constancy of F_y - F_x
    vkv_rows = [r + [0] for r in rows_iii]
    diffs = []
    for e in lb.expansions:
        ex, ey = decompose_right(e)
        diffs.append(ey - ex)
    m = n - 1
    seen: set[int] = set()
    for w in words.all_words(m):
        if w in seen:
            continue
        orbit = words.push_orbit(w)
        seen.update(orbit)
        if words.is_power_of_y(w):
            vkv_rows.append([g.terms.get(w, 0) for g in diffs] + [0])
        else:
            vkv_rows.append(
                [sum(g.terms.get(v, 0) for v in orbit) for g in diffs] + [-1]
            )
    vkv_null = linalg.nullspace(vkv_rows, d + 1)

    krv_elems = [
        sum((e.scale(c) for c, e in zip(vec, lb.expansions) if c), Poly.zero())
        for vec in krv_null
    ]
    vkv_elems = [
        sum((e.scale(c) for c, e in zip(vec, lb.expansions) if c), Poly.zero())
        for vec in vkv_null
    ]
    same_span = len(krv_null) == len(vkv_null) and all(
        krv_check(special_derivation(f) or TangentialDerivation(f, Poly.zero()))
        for f in vkv_elems
    ) and all(vkv_check(f) for f in krv_elems if f)

    return {
        "weight": n,
        "dim_special": len(special_subspace(n)),
        "dim_krv": len(krv_null),
        "dim_vkv": len(vkv_null),
        "same_span": same_span,
        "krv_basis": krv_elems,
        "vkv_basis": vkv_elems,
    }
