"""Persistence of homogeneous polynomials via Hessian criteria.

The verdict for degree ``n >= 3`` comes from :func:`criterion_c`: take the
partial polarization of ``f`` in ``n - 2`` blocks, form its Hessian
determinant in ``x`` (which no longer depends on ``x``), and ask whether the
result ``G`` is ``c * g**d`` for a multilinear ``g``.  The Hessian-shape tests
:func:`condition_a` (sufficient) and :func:`condition_d` (necessary) are
reported alongside.

All shape tests are "up to a nonzero rational scalar".  For rational input
this loses nothing: a root normalized to leading coefficient 1 under a fixed
term order is determined by rational operations, so a form that is a power
over the complex numbers is already a power over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from persist.hessian import hessian, hessian_matrix
from persist.polarize import partial_polarization
from persist.polycore import (
    BlockedPolynomial,
    Polynomial,
    determinant,
    divides,
    kth_root,
    PolyMatrix,
    substitute,
)


class DegenerateInputError(ValueError):
    """Input outside the range where persistence is defined (zero, d = 1, n < 2, ...)."""


class InconsistentReportError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def rref(rows: list[list]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: list[list], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : rows @ v == 0}``."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(tuple(v))
    return basis


def matrix_rank(rows: list[list]) -> int:
    return len(rref(rows)[1]) if rows else 0


# ---------------------------------------------------------------------------
# conciseness


@dataclass(frozen=True)
class Conciseness:
    concise: bool
    rank: int
    kernel: tuple[tuple[Fraction, ...], ...]
    pivot_monomials: tuple[tuple[int, ...], ...]

    def __bool__(self):
        return self.concise


def is_concise(f: Polynomial) -> Conciseness:
    """Rank of the span of the first partials.

    When not concise, ``kernel`` spans the directions ``v`` with
    ``sum v_i * df/dx_i == 0``: the directions ``f`` does not see.  When
    concise, ``pivot_monomials`` index a nonsingular ``d x d`` minor of the
    coefficient matrix.
    """
    if not f:
        raise DegenerateInputError("conciseness of the zero polynomial")
    d = f.nvars
    partials = [f.diff(i) for i in range(d)]
    monos = sorted({e for p in partials for e in p.terms}, reverse=True)
    # columns indexed by partials, rows by monomials: kernel is the missing directions
    rows = [[p.terms.get(e, 0) for p in partials] for e in monos]
    kernel = nullspace(rows, d)
    rank = d - len(kernel)
    pivot_monos = ()
    if not kernel:
        _, piv = rref([[p.terms.get(e, 0) for e in monos] for p in partials])
        pivot_monos = tuple(monos[c] for c in piv)
    return Conciseness(not kernel, rank, tuple(kernel), pivot_monos)


# ---------------------------------------------------------------------------
# Hessian shape tests


@dataclass(frozen=True)
class ShapeCertificate:
    """``target == c * form**power``."""

    c: int | Fraction
    form: Polynomial | BlockedPolynomial
    power: int

    def expand(self):
        if isinstance(self.form, BlockedPolynomial):
            return BlockedPolynomial(self.form.blocks, self.form.poly ** self.power * self.c)
        return self.form ** self.power * self.c


def _check_form(f: Polynomial, min_degree: int) -> tuple[int, int]:
    if not f:
        raise DegenerateInputError("the zero polynomial")
    if not f.is_homogeneous():
        raise DegenerateInputError(f"not homogeneous; term degrees {sorted(f.term_degrees())}")
    d, n = f.nvars, f.degree
    if d < 2:
        raise DegenerateInputError("need at least two variables")
    if n < min_degree:
        raise DegenerateInputError(f"need degree at least {min_degree}, got {n}")
    return d, n


def condition_a(f: Polynomial, hess: Polynomial | None = None) -> ShapeCertificate | None:
    """``Hess(f) == c * l**(d(n-2))`` with ``l`` a linear form."""
    d, n = _check_form(f, 3)
    if hess is None:
        hess = hessian(f)
    if not hess:
        return None
    root = kth_root(hess, d * (n - 2))
    if root is None or root[1].degree != 1:
        return None
    return ShapeCertificate(root[0], root[1], d * (n - 2))


def condition_d(f: Polynomial, hess: Polynomial | None = None) -> ShapeCertificate | None:
    """``Hess(f) == c * g**d`` with ``g`` of degree ``n - 2``."""
    d, n = _check_form(f, 3)
    if hess is None:
        hess = hessian(f)
    if not hess:
        return None
    root = kth_root(hess, d)
    if root is None:
        return None
    return ShapeCertificate(root[0], root[1], d)


def _criterion_matrix(f: Polynomial) -> tuple[PolyMatrix, tuple]:
    """x-Hessian matrix of the partial polarization, entries in the u-blocks only."""
    n = f.degree
    P = partial_polarization(f, n - 2)
    xs = P.block_range("x")
    us = [i for i in range(P.poly.nvars) if i not in xs]
    H = hessian_matrix(P.poly, xs).map(lambda p: p.restrict(us))
    return H, P.blocks[:-1]


def criterion_object(f: Polynomial) -> BlockedPolynomial:
    """``G``: the x-Hessian determinant of the ``(n-2)``-fold partial polarization."""
    _check_form(f, 3)
    H, blocks = _criterion_matrix(f)
    return BlockedPolynomial(blocks, determinant(H))


def restituted_criterion_object(f: Polynomial) -> Polynomial:
    """Restitution of ``G`` computed without expanding ``G``.

    Restitution is a ring homomorphism, so it commutes with the determinant:
    restitute the matrix entries first, then take one ``d x d`` determinant
    over the original variables.
    """
    _check_form(f, 3)
    H, _ = _criterion_matrix(f)
    d = f.nvars
    positions = [i % d for i in range(H.nvars)]
    return determinant(H.map(lambda p: p.embed(d, positions)))


# Above this many possible monomials in G, try to refute criterion (c) on a
# line before expanding G.
EXPANSION_LIMIT = 200_000


def expansion_estimate(d: int, n: int) -> int:
    """Number of monomials of multidegree ``(d, ..., d)`` in ``n - 2`` blocks of ``d`` variables."""
    return comb(2 * d - 1, d) ** (n - 2)


@dataclass(frozen=True)
class Refutation:
    """Restriction of ``G`` to the line ``u = a + t*b`` with the other blocks fixed.

    The restriction of ``c * g**d`` with ``g`` multilinear is ``c*(alpha + beta*t)**d``;
    ``restricted`` is not of that shape.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    others: tuple[tuple[int, ...], ...]
    restricted: Polynomial


def _power_of_affine(r: Polynomial, k: int) -> bool | None:
    """Is univariate ``r`` of the form ``c*(alpha + beta*t)**k``?  ``None`` if ``r == 0``."""
    if not r:
        return None
    m = r.degree
    if m == 0:
        return True
    if m != k:
        return False
    lc = Fraction(r.leading_coefficient())
    shift = Fraction(r.coefficient((k - 1,))) / (k * lc)
    t = Polynomial.var(1, 0)
    return r == (t + shift) ** k * lc


def refute_criterion_c(f: Polynomial, attempts: int = 3, seed: int = 0) -> Refutation | None:
    """Exact proof that criterion (c) fails, from a univariate restriction of ``G``.

    Returns ``None`` when no attempt refutes; that proves nothing.
    """
    _check_form(f, 3)
    H, blocks = _criterion_matrix(f)
    d = f.nvars
    rng = random.Random(seed)
    for _ in range(attempts):
        found = _refute_on_line(H, d, d, rng, fixed_blocks=len(blocks) - 1)
        if found is not None:
            return Refutation(*found)
    return None


def _refute_on_line(H: PolyMatrix, d: int, k: int, rng: random.Random, fixed_blocks: int = 0):
    """Restrict ``det H`` to ``a + t*b`` in the first ``d`` variables, with the rest fixed.

    Returns ``(a, b, others, R)`` when ``R`` is not ``c*(alpha + beta*t)**k``,
    otherwise ``None``.
    """
    t = Polynomial.var(1, 0)
    a = tuple(rng.randint(-9, 9) for _ in range(d))
    b = tuple(rng.randint(-9, 9) for _ in range(d))
    others = tuple(tuple(rng.randint(-9, 9) for _ in range(d)) for _ in range(fixed_blocks))
    images = [t * bi + ai for ai, bi in zip(a, b)]
    images += [Polynomial.constant(1, c) for pt in others for c in pt]
    R = determinant(H.map(lambda p: substitute(p, images)))
    return (a, b, others, R) if _power_of_affine(R, k) is False else None


@dataclass(frozen=True)
class CriterionC:
    G: BlockedPolynomial | None
    certificate: ShapeCertificate | None
    refutation: Refutation | None = None

    @property
    def holds(self) -> bool:
        return self.certificate is not None


def criterion_c(f: Polynomial, expand: bool | None = None) -> CriterionC:
    """Exact persistence test for degree ``n >= 3``.

    The certificate is present iff ``G == c * g**d`` with ``g`` of multidegree
    ``(1, ..., 1)`` in the ``n - 2`` blocks.  The multilinearity of ``g`` is
    checked, not assumed.

    When ``G`` would be large (see :data:`EXPANSION_LIMIT`) a restriction of
    ``G`` to a random line is tried first; if it refutes the criterion, ``G``
    is left unexpanded (``G is None``).  ``expand=True`` always expands,
    ``expand=False`` always tries the refutation first.
    """
    d, n = _check_form(f, 3)
    if expand is None:
        expand = expansion_estimate(d, n) <= EXPANSION_LIMIT
    if not expand:
        ref = refute_criterion_c(f)
        if ref is not None:
            return CriterionC(None, None, ref)
    G = criterion_object(f)
    cert = None
    if G.poly:
        root = kth_root(G.poly, d)
        if root is not None:
            g = BlockedPolynomial(G.blocks, root[1])
            if g.multidegree == (1,) * (n - 2):
                cert = ShapeCertificate(root[0], g, d)
    return CriterionC(G, cert)


def quadric_rank(f: Polynomial) -> int:
    """Rank of a quadratic form given as a polynomial."""
    M = hessian_matrix(f)
    return matrix_rank([[p.constant_value() if p else 0 for p in row] for row in M.rows])


# ---------------------------------------------------------------------------
# report


FAMILY_DESCRIPTIONS = {
    "W": "x0^(n-1)*x1 (binary, W state)",
    "Y": "x0^(n-1)*x2 + x0^(n-2)*x1^2 (ternary, Y state)",
    "L": "Chasles-Cayley ruled cubic surface (L state)",
    "M": "smooth quadric plus tangent plane (M state)",
}


@dataclass(frozen=True)
class FamilyTag:
    family: str
    ell: Polynomial | None

    @property
    def description(self) -> str:
        return FAMILY_DESCRIPTIONS[self.family]


@dataclass(frozen=True)
class PersistenceReport:
    d: int
    n: int
    concise: Conciseness
    hess: Polynomial
    condition_a: ShapeCertificate | None
    condition_c: ShapeCertificate | None
    G: BlockedPolynomial | None
    condition_d: ShapeCertificate | None
    persistent: bool
    rank_lower_bound: int | None = None
    homaloidal_flag: bool | None = None
    small_dim_family: FamilyTag | None = None
    notes: tuple[str, ...] = field(default=())

    def violations(self) -> list[str]:
        """Broken implications; always empty unless something is wrong."""
        out = []
        if self.n < 3:
            return out
        a = self.condition_a is not None
        if a and not self.persistent:
            out.append("condition (a) holds but the verdict is not persistent")
        if self.persistent and self.condition_d is None:
            out.append("persistent but condition (d) fails")
        if self.n == 3 and a != self.persistent:
            out.append("cubic: condition (a) and persistence disagree")
        if (self.d <= 3 or (self.d, self.n) == (4, 3)) and a != self.persistent:
            out.append("small dimension: condition (a) and persistence disagree")
        return out


def _n2_report(f: Polynomial, d: int, conc: Conciseness) -> PersistenceReport:
    hess = hessian(f)
    persistent = conc.concise
    family = None
    if persistent and d in (2, 3):
        family = FamilyTag("W" if d == 2 else "Y", None)
    return PersistenceReport(
        d=d, n=2, concise=conc, hess=hess,
        condition_a=None, condition_c=None, G=None, condition_d=None,
        persistent=persistent,
        rank_lower_bound=d if persistent else None,
        homaloidal_flag=None,
        small_dim_family=family,
        notes=("quadratic form: persistent iff of maximal rank",),
    )


def persistence_report(f: Polynomial, strict: bool = True) -> PersistenceReport:
    """Evaluate all criteria and assemble a consistent report."""
    d, n = _check_form(f, 2)
    conc = is_concise(f)
    if n == 2:
        return _n2_report(f, d, conc)
    hess = hessian(f)
    cond_a = condition_a(f, hess)
    cond_d = condition_d(f, hess)
    notes = []
    if conc.concise:
        crit = criterion_c(f)
        G, cond_c = crit.G, crit.certificate
        if crit.refutation is not None:
            notes.append("G not expanded: criterion (c) refuted on a line")
    else:
        G, cond_c = None, None
        notes.append("not concise: criterion (c) skipped")
    persistent = cond_c is not None
    family = None
    if persistent and (d <= 3 or (d, n) == (4, 3)):
        family = _family(f, d, n, cond_a)
    report = PersistenceReport(
        d=d, n=n, concise=conc, hess=hess,
        condition_a=cond_a, condition_c=cond_c, G=G, condition_d=cond_d,
        persistent=persistent,
        rank_lower_bound=(n - 1) * (d - 1) + 1 if persistent else None,
        homaloidal_flag=True if persistent and n == 3 else None,
        small_dim_family=family,
        notes=tuple(notes),
    )
    bad = report.violations()
    if bad and strict:
        raise InconsistentReportError("; ".join(bad))
    return report


def _family(f: Polynomial, d: int, n: int, cond_a: ShapeCertificate | None) -> FamilyTag | None:
    ell = cond_a.form if cond_a is not None else None
    if d == 2:
        return FamilyTag("W", ell)
    if d == 3:
        return FamilyTag("Y", ell)
    if ell is None:
        return None
    # the quadric-plus-plane orbit is the reducible one, and its linear factor is l
    return FamilyTag("M" if divides(ell, f) else "L", ell)


def classify_small(f: Polynomial) -> FamilyTag | None:
    """Normal-form family of a persistent ``f`` with ``d <= 3`` or ``(d, n) == (4, 3)``.

    ``W`` for binary forms, ``Y`` for ternary forms, and for cubic surfaces
    ``L`` (Chasles-Cayley) or ``M`` (quadric plus tangent plane).  The two
    cubic-surface orbits are told apart by whether the linear form ``l`` of
    ``Hess(f) = c * l**4`` divides ``f``; this is exact and coordinate free.
    Returns ``None`` when ``f`` is not persistent.
    """
    d, n = _check_form(f, 2)
    if not (d <= 3 or (d, n) == (4, 3)):
        raise DegenerateInputError(f"classification covers d <= 3 or (d, n) = (4, 3), got ({d}, {n})")
    report = persistence_report(f)
    return report.small_dim_family if report.persistent else None


# ---------------------------------------------------------------------------
# Monte-Carlo probe of the recursive definition


@dataclass(frozen=True)
class ProbeWitness:
    trial: int
    directions: tuple[tuple[int, ...], ...]
    reason: str
    terminal: Polynomial


@dataclass(frozen=True)
class ProbeOutcome:
    verdict: str
    witness: ProbeWitness | None
    trials: int
    seed: int
    bound: int

    @property
    def witnessed(self) -> bool:
        return self.verdict == WITNESSED


CONSISTENT = "consistent-with-persistent"
WITNESSED = "witnessed-non-persistent"
DEFAULT_BOUND = 2 ** 20


def directional_derivative(f: Polynomial, u) -> Polynomial:
    out = Polynomial.zero(f.nvars)
    for i, ui in enumerate(u):
        if ui:
            out = out + f.diff(i).scale(ui)
    return out


def _terminal_check(g: Polynomial) -> str | None:
    """Failure reason for one link of a chain, or ``None`` if it passes."""
    if not g:
        return "derivative vanished"
    if not is_concise(g).concise:
        return "quadric of deficient rank" if g.degree == 2 else "non-concise derivative"
    if g.degree == 3:
        if _refute_on_line(hessian_matrix(g), g.nvars, g.nvars, random.Random(0)) is not None:
            return "cubic whose Hessian is not a power of a linear form"
        h = hessian(g)
        root = kth_root(h, g.nvars) if h else None
        if root is None or root[1].degree != 1:
            return "cubic whose Hessian is not a power of a linear form"
    return None


def replay_chain(f: Polynomial, directions) -> tuple[Polynomial, str | None]:
    """Follow a chain of directions; return the last polynomial reached and the failure reason."""
    cur = f
    reason = _terminal_check(cur)
    if reason:
        return cur, reason
    for u in directions:
        cur = directional_derivative(cur, u)
        reason = _terminal_check(cur)
        if reason:
            return cur, reason
    return cur, None


def probe_definition(f: Polynomial, trials: int = 8, seed: int = 0,
                     bound: int = DEFAULT_BOUND) -> ProbeOutcome:
    """Sample the recursive definition along random derivative chains.

    Each trial differentiates along random integer directions (entries in
    ``[-bound, bound]``) until the degree reaches 3, checking conciseness at
    every step.  The final cubic is tested exactly: the derivatives of a
    cubic that fail to be full-rank quadrics are cut out by its Hessian, so
    they lie in a hyperplane iff the Hessian is a power of a linear form.

    A failing chain is a witness of non-persistence.  Passing every trial
    only means "consistent with persistent".
    """
    _check_form(f, 2)
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = random.Random(seed)
    d = f.nvars
    for t in range(trials):
        cur = f
        dirs: list[tuple[int, ...]] = []
        reason = _terminal_check(cur)
        while reason is None and cur.degree > 3:
            u = (0,) * d
            while not any(u):
                u = tuple(rng.randint(-bound, bound) for _ in range(d))
            dirs.append(u)
            cur = directional_derivative(cur, u)
            reason = _terminal_check(cur)
        if reason is not None:
            return ProbeOutcome(WITNESSED, ProbeWitness(t, tuple(dirs), reason, cur), trials, seed, bound)
    return ProbeOutcome(CONSISTENT, None, trials, seed, bound)


def restitution_factor(d: int, n: int) -> int:
    """``((n-2)!)**d``: restitution of ``G`` over ``Hess(f)``."""
    return factorial(n - 2) ** d
