"""Named families of persistent (and non-persistent) polynomials, plus the
verification routines attached to them: sub-Hankel determinants and their
Hessian power laws, the isotropy group of the Chasles-Cayley cubic, and a
checker for multiplicative Legendre transforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Sequence

from persist.hessian import hessian
from persist.polycore import (
    PolyMatrix,
    Polynomial,
    as_rational,
    determinant,
    divide_exact,
    multivariate_gcd,
    normalize,
    substitute,
    substitute_linear,
)


class GalleryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# constructors


def sub_hankel(d: int) -> tuple[PolyMatrix, Polynomial]:
    """The banded ``(d-1) x (d-1)`` matrix ``(x_{i+j-d+1})`` and its determinant.

    Entries with index outside ``[0, d-1]`` are zero; ``i, j`` run from 1.
    """
    if d < 3:
        raise GalleryError(f"sub-Hankel matrices need d >= 3, got {d}")
    zero = Polynomial.zero(d)
    rows = []
    for i in range(1, d):
        row = []
        for j in range(1, d):
            k = i + j - d + 1
            row.append(Polynomial.var(d, k) if 0 <= k <= d - 1 else zero)
        rows.append(tuple(row))
    M = PolyMatrix(tuple(rows))
    return M, determinant(M)


def perazzo(lam: Sequence) -> Polynomial:
    """``l1*x0^2*x4 + l2*x0*x1*x3 + l3*x0*x2^2 + l4*x1^2*x2``."""
    if len(lam) != 4:
        raise GalleryError("perazzo takes four coefficients")
    l1, l2, l3, l4 = (as_rational(v) for v in lam)
    return Polynomial(5, {
        (2, 0, 0, 0, 1): l1,
        (1, 1, 0, 1, 0): l2,
        (1, 0, 2, 0, 0): l3,
        (0, 2, 1, 0, 0): l4,
    })


def w_form(n: int) -> Polynomial:
    _need(n >= 2, "W(n) needs n >= 2")
    return Polynomial(2, {(n - 1, 1): 1})


def y_form(n: int) -> Polynomial:
    _need(n >= 2, "Y(n) needs n >= 2")
    return Polynomial(3, {(n - 1, 0, 1): 1, (n - 2, 2, 0): 1})


def chasles_cayley(l1, l2, l3) -> Polynomial:
    """``l1*x0^2*x3 + l2*x0*x1*x2 + l3*x1^3``."""
    return Polynomial(4, {(2, 0, 0, 1): l1, (1, 1, 1, 0): l2, (0, 3, 0, 0): l3})


def secant_form(n: int) -> Polynomial:
    """``x0^(n-2) * (x1*x2 + x0^2)``: a line and a secant conic."""
    _need(n >= 2, "secant(n) needs n >= 2")
    return Polynomial(3, {(n - 2, 1, 1): 1, (n, 0, 0): 1})


def segre_form(m: int) -> Polynomial:
    """``x0^(2m) + (1-2m)*x1^(2m) - x2^m*x3^m``."""
    _need(m >= 1, "Segre(m) needs m >= 1")
    return Polynomial(4, {(2 * m, 0, 0, 0): 1, (0, 2 * m, 0, 0): 1 - 2 * m, (0, 0, m, m): -1})


def st_cubic() -> Polynomial:
    """Quadratic cone plus a general plane: ``(x0*x1 + x2^2)*(x0 + x3)``."""
    x0, x1, x2, x3 = Polynomial.gens(4)
    return (x0 * x1 + x2 * x2) * (x0 + x3)


def symmetric_matrix_zero_corner(m: int) -> PolyMatrix:
    """Symmetric ``m x m`` matrix with ``S[0][0] = 0`` and distinct indeterminates elsewhere.

    Variables are numbered along the upper triangle row by row, skipping the corner.
    """
    _need(m >= 2, "S_m needs m >= 2")
    nv = m * (m + 1) // 2 - 1
    index = {}
    k = 0
    for i in range(m):
        for j in range(i, m):
            if (i, j) != (0, 0):
                index[(i, j)] = k
                k += 1
    zero = Polynomial.zero(nv)
    rows = tuple(
        tuple(zero if (i, j) == (0, 0) else Polynomial.var(nv, index[(min(i, j), max(i, j))])
              for j in range(m))
        for i in range(m)
    )
    return PolyMatrix(rows)


def symdet(m: int) -> Polynomial:
    return determinant(symmetric_matrix_zero_corner(m))


def general_isobaric(d: int, n: int, weight: int, rng, coeff_range: int = 9) -> Polynomial:
    """Random isobaric form of the given weight with nonzero integer coefficients."""
    terms = {}
    for combo in combinations_with_replacement(range(d), n):
        if sum(combo) != weight:
            continue
        e = [0] * d
        for j in combo:
            e[j] += 1
        c = 0
        while not c:
            c = rng.randint(-coeff_range, coeff_range)
        terms[tuple(e)] = c
    return Polynomial(d, terms)


def _need(cond: bool, msg: str):
    if not cond:
        raise GalleryError(msg)


@dataclass(frozen=True)
class GalleryEntry:
    tag: str
    params: str
    build: Callable
    arity: int
    summary: str


def _int_params(name, n):
    def conv(args):
        if len(args) != n:
            raise GalleryError(f"{name} takes {n} parameter(s), got {len(args)}")
        try:
            return [int(a) for a in args]
        except ValueError:
            raise GalleryError(f"{name} parameters must be integers") from None
    return conv


def _rat_params(name, n):
    def conv(args):
        if len(args) != n:
            raise GalleryError(f"{name} takes {n} parameter(s), got {len(args)}")
        try:
            return [as_rational(a) for a in args]
        except (TypeError, ValueError, ZeroDivisionError):
            raise GalleryError(f"{name} parameters must be rationals") from None
    return conv


GALLERY: dict[str, GalleryEntry] = {
    "W": GalleryEntry("W", "n", lambda n: w_form(n), 1, "x0^(n-1)*x1"),
    "Y": GalleryEntry("Y", "n", lambda n: y_form(n), 1, "x0^(n-1)*x2 + x0^(n-2)*x1^2"),
    "CC": GalleryEntry("CC", "l1 l2 l3", chasles_cayley, 3, "l1*x0^2*x3 + l2*x0*x1*x2 + l3*x1^3"),
    "secant": GalleryEntry("secant", "n", lambda n: secant_form(n), 1, "x0^(n-2)*(x1*x2 + x0^2)"),
    "segre": GalleryEntry("segre", "m", lambda m: segre_form(m), 1, "x0^(2m) + (1-2m)*x1^(2m) - x2^m*x3^m"),
    "ST": GalleryEntry("ST", "", st_cubic, 0, "(x0*x1 + x2^2)*(x0 + x3)"),
    "symdet": GalleryEntry("symdet", "m", lambda m: symdet(m), 1, "det of symmetric m x m matrix with zero corner"),
    "perazzo": GalleryEntry("perazzo", "l1 l2 l3 l4", lambda *l: perazzo(l), 4,
                            "l1*x0^2*x4 + l2*x0*x1*x3 + l3*x0*x2^2 + l4*x1^2*x2"),
    "subhankel": GalleryEntry("subhankel", "d", lambda d: sub_hankel(d)[1], 1, "det of the sub-Hankel matrix M_(d)"),
}

_CONVERTERS = {
    "W": _int_params("W", 1), "Y": _int_params("Y", 1), "secant": _int_params("secant", 1),
    "segre": _int_params("segre", 1), "symdet": _int_params("symdet", 1),
    "subhankel": _int_params("subhankel", 1), "ST": _int_params("ST", 0),
    "CC": _rat_params("CC", 3), "perazzo": _rat_params("perazzo", 4),
}


def named_form(tag: str, *params) -> Polynomial:
    """Build a gallery form from its tag and (string or numeric) parameters."""
    key = next((k for k in GALLERY if k.lower() == str(tag).lower()), None)
    if key is None:
        raise GalleryError(f"unknown gallery tag {tag!r}; known: {', '.join(GALLERY)}")
    args = _CONVERTERS[key]([str(p) for p in params])
    return GALLERY[key].build(*args)


# ---------------------------------------------------------------------------
# isotropy of the Chasles-Cayley cubic


def p4_element(a0, a1, a2) -> list[list[Fraction]]:
    a0, a1, a2 = Fraction(a0), Fraction(a1), Fraction(a2)
    if not a0:
        raise GalleryError("a0 must be nonzero")
    return [[Fraction(1), a1, a2], [Fraction(0), a0, 2 * a0 * a1], [Fraction(0), Fraction(0), a0 * a0]]


def p4_parameters(p: Sequence[Sequence]) -> tuple[Fraction, Fraction, Fraction]:
    """Inverse of :func:`p4_element`; raises if ``p`` is not in the group."""
    a0, a1, a2 = Fraction(p[1][1]), Fraction(p[0][1]), Fraction(p[0][2])
    if [list(map(Fraction, r)) for r in p] != p4_element(a0, a1, a2):
        raise GalleryError("matrix is not in the isotropy group")
    return a0, a1, a2


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def congruence_substitution(p) -> list[list[Fraction]]:
    """Linear substitution on ``(x0..x3)`` induced by ``M -> p^T M p`` on ``M_(4)``.

    Returns the matrix ``A`` with ``x_k <- sum_j A[k][j] x_j``.  Raises if the
    congruence leaves the sub-Hankel shape.
    """
    d = 4
    M, _ = sub_hankel(d)
    pt = [[p[j][i] for j in range(3)] for i in range(3)]
    # (p^T M p)[i][j] as linear forms in x
    N = [[Polynomial.zero(d) for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = Polynomial.zero(d)
            for k in range(3):
                for l in range(3):
                    c = pt[i][k] * p[l][j]
                    if c and M[k, l]:
                        acc = acc + M[k, l].scale(c)
            N[i][j] = acc
    # shape: N[i][j] depends only on i + j, N[0][0] = 0
    slots = {}
    for i in range(3):
        for j in range(3):
            k = i + j - 1
            if k < 0:
                if N[i][j]:
                    raise GalleryError("congruence leaves the sub-Hankel shape")
                continue
            if k in slots and slots[k] != N[i][j]:
                raise GalleryError("congruence leaves the sub-Hankel shape")
            slots[k] = N[i][j]
    A = []
    for k in range(d):
        form = slots[k]
        A.append([Fraction(form.coefficient([int(j == t) for t in range(d)])) for j in range(d)])
    return A


def isotropy_check_f4(a0, a1, a2) -> tuple[bool, Fraction]:
    """Check that ``f_(4)`` is a semi-invariant for the group element ``(a0, a1, a2)``.

    Returns ``(passes, character)`` where ``f_(4)`` after the induced
    substitution equals ``character * f_(4)``.
    """
    if not Fraction(a0):
        raise GalleryError("a0 must be nonzero")
    p = p4_element(a0, a1, a2)
    A = congruence_substitution(p)
    _, f4 = sub_hankel(4)
    g = substitute_linear(f4, A)
    lead, c = f4.leading_term()
    chi = Fraction(g.coefficient(lead)) / Fraction(c)
    return g == f4.scale(chi), chi


def p4_compose(a, b) -> tuple[Fraction, Fraction, Fraction]:
    """Parameters of the product of two group elements."""
    return p4_parameters(_matmul(p4_element(*a), p4_element(*b)))


# ---------------------------------------------------------------------------
# Hessian power laws of sub-Hankel determinants


def power_law_exponents(d: int, k: int, h: int) -> tuple[int, int]:
    """Exponents ``(alpha, beta)`` in ``Hess(f_(d)^k x0^h) = lam * f_(d)^alpha * x0^beta``.

    ``alpha = d(k-1)`` and ``beta`` follows from the degree:
    ``d((d-1)k + h - 2) - (d-1) alpha = d(h + d - 3)``.
    """
    return d * (k - 1), d * (h + d - 3)


def hessian_power_law(d: int, k: int, h: int) -> tuple[Fraction | None, bool]:
    """Compute ``Hess(f_(d)^k x0^h)`` and compare with ``lam * f_(d)^alpha * x0^beta``."""
    if k < 1 or h < 0:
        raise GalleryError("need k >= 1 and h >= 0")
    _, fd = sub_hankel(d)
    x0 = Polynomial.var(d, 0)
    target = fd ** k * x0 ** h
    H = hessian(target)
    alpha, beta = power_law_exponents(d, k, h)
    shape = fd ** alpha * x0 ** beta
    if not H:
        return None, False
    lead, c = shape.leading_term()
    lam = Fraction(H.coefficient(lead)) / Fraction(c)
    return (lam if lam else None), bool(lam) and H == shape.scale(lam)


def hessian_power_law_f4(k: int, h: int) -> tuple[Fraction | None, bool]:
    return hessian_power_law(4, k, h)


# ---------------------------------------------------------------------------
# rational functions and Legendre transforms


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient ``numerator / denominator`` with a normalized denominator."""

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if not self.denominator:
            raise ZeroDivisionError("zero denominator")
        if self.numerator.nvars != self.denominator.nvars:
            raise ValueError("numerator and denominator must share variables")
        num, den = self.numerator, self.denominator
        g = multivariate_gcd(num, den) if num else den
        if not g.is_constant():
            num, den = divide_exact(num, g), divide_exact(den, g)
        if not num:
            den = Polynomial.one(den.nvars)
        c, den = normalize(den)
        object.__setattr__(self, "numerator", num.scale(Fraction(1) / Fraction(c)))
        object.__setattr__(self, "denominator", den)

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def __str__(self):
        return f"({self.numerator})/({self.denominator})"


@dataclass(frozen=True)
class LegendreCheck:
    holds: bool
    scalar: Fraction | None

    @property
    def exact(self) -> bool:
        """``f_star(grad f / f) == 1 / f`` on the nose."""
        return self.holds and self.scalar == 1

    def __bool__(self):
        return self.holds


def _homogenized_substitution(p: Polynomial, grad: list[Polynomial], f: Polynomial) -> tuple[Polynomial, int]:
    """``p(grad / f) * f**D`` as a polynomial, with ``D = deg p``."""
    D = max(p.degree, 0)
    acc = Polynomial.zero(f.nvars)
    fpow = {0: Polynomial.one(f.nvars)}
    for e, c in p.terms.items():
        t = Polynomial.constant(f.nvars, c)
        for g, a in zip(grad, e):
            if a:
                t = t * g ** a
        s = D - sum(e)
        if s not in fpow:
            fpow[s] = f ** s
        acc = acc + t * fpow[s]
    return acc, D


def legendre_verify(f: Polynomial, f_star: RationalFunction) -> LegendreCheck:
    """Check that ``f_star(grad f / f) * f`` is a nonzero constant.

    Coordinate ``i`` of the gradient feeds variable ``i`` of ``f_star``.  The
    constant is returned as ``scalar``; transforms are only defined up to
    scale, and :attr:`LegendreCheck.exact` tells whether it is 1.
    """
    if not f:
        raise ValueError("f must be nonzero")
    if f_star.nvars != f.nvars:
        raise ValueError("f_star must have as many variables as f")
    grad = [f.diff(i) for i in range(f.nvars)]
    num, dn = _homogenized_substitution(f_star.numerator, grad, f)
    den, dd = _homogenized_substitution(f_star.denominator, grad, f)
    if not den:
        raise ValueError("denominator vanishes identically after substitution")
    # f_star(grad/f) * f = num * f**(dd + 1) / (den * f**dn)
    lhs = num * f ** (dd + 1)
    rhs = den * f ** dn
    if not lhs:
        return LegendreCheck(False, None)
    lead, c = rhs.leading_term()
    k = Fraction(lhs.coefficient(lead)) / Fraction(c)
    ok = bool(k) and lhs == rhs.scale(k)
    return LegendreCheck(ok, k if ok else None)
