"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` stores a map from exponent tuples to nonzero rational
coefficients.  Coefficients are kept as ``int`` whenever they are integral and
as :class:`fractions.Fraction` otherwise, which keeps the common (integral)
case fast without giving up exactness.

Term order everywhere is graded lexicographic with ``x0 > x1 > ...``.

Limits: exponents are packed into machine-free Python ints during
multiplication, so there is no hard cap, but the routines here are meant for
desk-scale inputs (about ten variables, total degree around thirty).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def as_rational(c) -> int | Fraction:
    """Coerce ``c`` to an exact rational, preferring ``int`` when integral."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_rational(Fraction(c))
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not exact")
    try:
        return as_rational(Fraction(c))
    except (TypeError, ValueError):
        raise TypeError(f"cannot use {c!r} as a rational coefficient") from None


def _grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int | Fraction] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent in {e}")
            c = as_rational(c)
            if e in clean:
                c = as_rational(clean[e] + c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        # trusted constructor: keys valid, values nonzero and normalized
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> Polynomial:
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Polynomial:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> Polynomial:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def gens(cls, nvars: int) -> list[Polynomial]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> int | Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def degrees(self) -> tuple[int, ...]:
        out = [0] * self.nvars
        for e in self.terms:
            for i, a in enumerate(e):
                if a > out[i]:
                    out[i] = a
        return tuple(out)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def term_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def variables(self) -> list[int]:
        return [i for i, a in enumerate(self.degrees()) if a > 0]

    def sorted_terms(self) -> list[tuple[Exponent, int | Fraction]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, int | Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> int | Fraction:
        return self.leading_term()[1]

    def coefficient(self, exps: Sequence[int]) -> int | Fraction:
        return self.terms.get(tuple(exps), 0)

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = as_rational(s)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.nvars)
        if c == 1:
            return self
        if isinstance(c, int):
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        return Polynomial._raw(self.nvars, {e: as_rational(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._coerce(other)
        return _mul(self, other)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return divide_exact(self, other)
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(Fraction(1) / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Polynomial.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # calculus and evaluation

    def diff(self, i: int) -> Polynomial:
        return differentiate(self, i)

    def __call__(self, *point):
        return evaluate(self, point)

    def embed(self, nvars: int, positions: Sequence[int]) -> Polynomial:
        """Place variable ``j`` of ``self`` at index ``positions[j]`` of a larger ring."""
        if len(positions) != self.nvars:
            raise ValueError("need one position per variable")
        out = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            for j, a in zip(positions, e):
                f[j] += a
            f = tuple(f)
            out[f] = out.get(f, 0) + c
        return Polynomial(nvars, out)

    def restrict(self, keep: Sequence[int]) -> Polynomial:
        """Drop all variables not in ``keep``; they must not occur."""
        keep = list(keep)
        dropped = [i for i in range(self.nvars) if i not in set(keep)]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in dropped):
                raise ValueError("cannot drop a variable that occurs in the polynomial")
            out[tuple(e[i] for i in keep)] = c
        return Polynomial._raw(len(keep), out)

    def __repr__(self):
        return f"<Polynomial nvars={self.nvars}: {self}>"

    def __str__(self):
        from persist.printing import format_polynomial

        return format_polynomial(self)


def _pack_plan(a: Polynomial, b: Polynomial) -> list[int]:
    da, db = a.degrees(), b.degrees()
    return [max(1, (x + y).bit_length()) for x, y in zip(da, db)]


def _packer(widths: list[int]):
    shifts = []
    s = 0
    for w in widths:
        shifts.append(s)
        s += w
    return shifts


def _mul(a: Polynomial, b: Polynomial) -> Polynomial:
    n = a.nvars
    if not a.terms or not b.terms:
        return Polynomial.zero(n)
    if len(a.terms) > len(b.terms):
        a, b = b, a
    if n == 0:
        return Polynomial.constant(0, a.terms[()] * b.terms[()])
    widths = _pack_plan(a, b)
    shifts = _packer(widths)
    pa = [(sum(x << s for x, s in zip(e, shifts)), c) for e, c in a.terms.items()]
    pb = [(sum(x << s for x, s in zip(e, shifts)), c) for e, c in b.terms.items()]
    acc: dict[int, object] = {}
    get = acc.get
    for ka, ca in pa:
        for kb, cb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    masks = [(1 << w) - 1 for w in widths]
    out = {}
    for k, c in acc.items():
        if c:
            out[tuple((k >> s) & m for s, m in zip(shifts, masks))] = as_rational(c)
    return Polynomial._raw(n, out)


# ---------------------------------------------------------------------------
# blocked polynomials

BLOCK_LETTERS = "uvwstrqp"


def block_names(k: int) -> list[str]:
    """Default names for ``k`` argument blocks: u, v, w, ... then u9, u10, ..."""
    return [BLOCK_LETTERS[i] if i < len(BLOCK_LETTERS) else f"u{i + 1}" for i in range(k)]


@dataclass(frozen=True)
class BlockedPolynomial:
    """A polynomial whose variables are grouped into named blocks.

    Variables are laid out block after block in the order of ``blocks``;
    variable ``i`` of block ``b`` prints as ``f"{b}{i}"``.
    """

    blocks: tuple[tuple[str, int], ...]
    poly: Polynomial

    def __post_init__(self):
        blocks = tuple((str(n), int(s)) for n, s in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if sum(s for _, s in blocks) != self.poly.nvars:
            raise ValueError("block sizes must sum to the variable count")
        names = [n for n, _ in blocks]
        if len(set(names)) != len(names):
            raise ValueError("block names must be distinct")

    @property
    def terms(self):
        return self.poly.terms

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.blocks]

    def offsets(self) -> dict[str, range]:
        out, s = {}, 0
        for n, size in self.blocks:
            out[n] = range(s, s + size)
            s += size
        return out

    def block_range(self, name: str) -> range:
        try:
            return self.offsets()[name]
        except KeyError:
            raise KeyError(f"no block named {name!r}") from None

    def variable_names(self) -> list[str]:
        return [f"{n}{i}" for n, size in self.blocks for i in range(size)]

    @property
    def multidegree(self) -> tuple[int, ...] | None:
        """Degree in each block, or ``None`` if not multihomogeneous."""
        if not self.poly:
            return None
        ranges = list(self.offsets().values())
        degs = {tuple(sum(e[i] for i in r) for r in ranges) for e in self.poly.terms}
        return degs.pop() if len(degs) == 1 else None

    def permute_blocks(self, order: list[str]) -> BlockedPolynomial:
        """Exchange the *contents* of blocks: the block named ``order[j]`` takes
        the place of block ``j`` while the block layout stays fixed."""
        if sorted(order) != sorted(self.names):
            raise ValueError("order must be a permutation of the block names")
        offs = self.offsets()
        sizes = {n: s for n, s in self.blocks}
        if any(sizes[a] != sizes[b] for a, b in zip(order, self.names)):
            raise ValueError("can only exchange blocks of equal size")
        positions = [0] * self.poly.nvars
        for src, dst in zip(order, self.names):
            for a, b in zip(offs[src], offs[dst]):
                positions[a] = b
        return BlockedPolynomial(self.blocks, self.poly.embed(self.poly.nvars, positions))

    def drop_blocks(self, names) -> BlockedPolynomial:
        names = set(names)
        offs = self.offsets()
        keep = [i for n, _ in self.blocks if n not in names for i in offs[n]]
        return BlockedPolynomial(tuple(b for b in self.blocks if b[0] not in names),
                                 self.poly.restrict(keep))

    def __eq__(self, other):
        if not isinstance(other, BlockedPolynomial):
            return NotImplemented
        return self.blocks == other.blocks and self.poly == other.poly

    def __hash__(self):
        return hash((self.blocks, self.poly))

    def __str__(self):
        from persist.printing import format_polynomial

        return format_polynomial(self.poly, self.variable_names())


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix with polynomial entries over a shared variable set."""

    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have size at least 1")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        nv = {p.nvars for r in rows for p in r}
        if len(nv) != 1:
            raise ValueError("all entries must share the same number of variables")

    @classmethod
    def from_rows(cls, rows, nvars: int | None = None) -> PolyMatrix:
        """Build from rows whose entries are polynomials or rational constants."""
        if nvars is None:
            nvars = next((p.nvars for r in rows for p in r if isinstance(p, Polynomial)), 0)
        return cls(tuple(
            tuple(p if isinstance(p, Polynomial) else Polynomial.constant(nvars, p) for p in r)
            for r in rows
        ))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def nvars(self) -> int:
        return self.rows[0][0].nvars

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def transpose(self) -> PolyMatrix:
        return PolyMatrix(tuple(zip(*self.rows)))

    def map(self, fn) -> PolyMatrix:
        return PolyMatrix(tuple(tuple(fn(p) for p in r) for r in self.rows))

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        n = self.size
        zero = Polynomial.zero(self.nvars)
        return PolyMatrix(tuple(
            tuple(reduce(lambda s, k: s + self.rows[i][k] * other.rows[k][j], range(n), zero)
                  for j in range(n))
            for i in range(n)
        ))

    def det(self) -> Polynomial:
        return determinant(self)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)


COFACTOR_MAX = 4


def determinant(M: PolyMatrix) -> Polynomial:
    """Exact determinant.

    Sizes up to 4 use Laplace expansion (memoized over column subsets);
    larger matrices use fraction-free Bareiss elimination with row pivoting.
    """
    if M.size <= COFACTOR_MAX:
        return _det_laplace(M.rows, M.nvars)
    return _det_bareiss(M.rows, M.nvars)


def _det_laplace(rows, nvars: int) -> Polynomial:
    n = len(rows)
    # minors[cols] = det of the last len(cols) rows restricted to cols
    minors: dict[tuple[int, ...], Polynomial] = {(): Polynomial.one(nvars)}
    for r in range(n - 1, -1, -1):
        size = n - r
        nxt = {}
        for cols in _combinations(n, size):
            acc = Polynomial.zero(nvars)
            for pos, j in enumerate(cols):
                entry = rows[r][j]
                if not entry:
                    continue
                rest = cols[:pos] + cols[pos + 1:]
                minor = minors[rest]
                if not minor:
                    continue
                term = entry * minor
                acc = acc - term if pos % 2 else acc + term
            nxt[cols] = acc
        minors = nxt
    return minors[tuple(range(n))]


def _combinations(n: int, k: int):
    from itertools import combinations

    return combinations(range(n), k)


def _det_bareiss(rows, nvars: int) -> Polynomial:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = Polynomial.one(nvars)
    for k in range(n - 1):
        if not a[k][k]:
            # prefer the sparsest available pivot
            cands = [i for i in range(k + 1, n) if a[i][k]]
            if not cands:
                return Polynomial.zero(nvars)
            i = min(cands, key=lambda i: len(a[i][k]))
            a[k], a[i] = a[i], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = piv * a[i][j]
                if aik and a[k][j]:
                    num = num - aik * a[k][j]
                a[i][j] = divide_exact(num, prev) if k else num
            a[i][k] = Polynomial.zero(nvars)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


# ---------------------------------------------------------------------------
# division, content, normalization


class NotDivisibleError(ArithmeticError):
    pass


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``p / q``, raising :class:`NotDivisibleError` if ``q`` does not divide ``p``."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    n = p.nvars
    if q.is_constant():
        return p.scale(Fraction(1) / Fraction(q.constant_value()))
    if len(q.terms) == 1:
        (eq, cq), = q.terms.items()
        inv = Fraction(1) / Fraction(cq)
        out = {}
        for e, c in p.terms.items():
            f = tuple(a - b for a, b in zip(e, eq))
            if min(f) < 0:
                raise NotDivisibleError("monomial does not divide")
            out[f] = as_rational(c * inv)
        return Polynomial._raw(n, out)
    lq, lc = q.leading_term()
    inv = Fraction(1) / Fraction(lc)
    qrest = [(e, c) for e, c in q.terms.items() if e != lq]
    rem = dict(p.terms)
    quot = {}
    # terms of the remainder are processed largest-first; maintain a sorted list lazily
    import heapq

    heap = [(-sum(e), tuple(-a for a in e), e) for e in rem]
    heapq.heapify(heap)
    while heap:
        _, _, e = heapq.heappop(heap)
        c = rem.pop(e, 0)
        if not c:
            continue
        f = tuple(a - b for a, b in zip(e, lq))
        if min(f) < 0:
            raise NotDivisibleError("leading term not divisible")
        t = as_rational(c * inv)
        quot[f] = t
        for eq_, cq_ in qrest:
            g = tuple(a + b for a, b in zip(f, eq_))
            old = rem.get(g)
            v = (old or 0) - t * cq_
            if v:
                rem[g] = v
                if old is None:
                    heapq.heappush(heap, (-sum(g), tuple(-a for a in g), g))
            elif old is not None:
                del rem[g]
    return Polynomial._raw(n, {e: as_rational(c) for e, c in quot.items()})


def divides(q: Polynomial, p: Polynomial) -> bool:
    try:
        divide_exact(p, q)
    except NotDivisibleError:
        return False
    return True


def rational_content(p: Polynomial) -> Fraction:
    """Positive rational c such that p / c has coprime integer coefficients."""
    if not p:
        return Fraction(0)
    coeffs = [Fraction(c) for c in p.terms.values()]
    den = lcm(*(c.denominator for c in coeffs))
    nums = [int(c * den) for c in coeffs]
    return Fraction(abs(reduce(gcd, nums)), den)


def normalize(p: Polynomial) -> tuple[int | Fraction, Polynomial]:
    """Split ``p`` as ``c * q`` with ``q`` primitive and positive grlex-leading coefficient."""
    if not p:
        return 0, p
    c = rational_content(p)
    if p.leading_coefficient() < 0:
        c = -c
    return as_rational(c), p.scale(1 / c)


def primitive(p: Polynomial) -> Polynomial:
    return normalize(p)[1]


# ---------------------------------------------------------------------------
# calculus and substitution


def differentiate(f: Polynomial, i: int) -> Polynomial:
    """Partial derivative of ``f`` with respect to variable ``i``."""
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    out = {}
    for e, c in f.terms.items():
        a = e[i]
        if a:
            out[e[:i] + (a - 1,) + e[i + 1:]] = c * a
    return Polynomial._raw(f.nvars, out)


def evaluate(f: Polynomial, point: Sequence) -> int | Fraction:
    """Exact value of ``f`` at a rational point."""
    if len(point) != f.nvars:
        raise ValueError(f"point has length {len(point)}, expected {f.nvars}")
    pt = [as_rational(v) for v in point]
    total = 0
    for e, c in f.terms.items():
        t = c
        for v, a in zip(pt, e):
            if a:
                t *= v ** a
        total += t
    return as_rational(total)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace variable ``i`` by ``images[i]`` (all images share one ring)."""
    if len(images) != f.nvars:
        raise ValueError("need one image per variable")
    if not images:
        return f
    m = images[0].nvars
    powers: list[dict[int, Polynomial]] = [{0: Polynomial.one(m)} for _ in images]

    def power(i, a):
        cache = powers[i]
        if a not in cache:
            lo = max(k for k in cache if k < a)
            p = cache[lo]
            for k in range(lo + 1, a + 1):
                p = p * images[i]
                cache[k] = p
        return cache[a]

    acc: dict = {}
    for e, c in f.terms.items():
        t = Polynomial.constant(m, c)
        for i, a in enumerate(e):
            if a:
                t = t * power(i, a)
        for g, v in t.terms.items():
            acc[g] = acc.get(g, 0) + v
    return Polynomial(m, acc)


def substitute_linear(f: Polynomial, A: Sequence[Sequence]) -> Polynomial:
    """Substitute ``x_i <- sum_j A[i][j] x_j``, i.e. return ``x -> f(A x)``.

    Composition: ``substitute_linear(substitute_linear(f, A), B)`` is
    ``x -> f(A B x)``, which equals ``substitute_linear(f, A @ B)``.
    """
    d = f.nvars
    if len(A) != d or any(len(r) != d for r in A):
        raise ValueError(f"substitution matrix must be {d}x{d}")
    images = [Polynomial.linear_form(r) for r in A]
    return substitute(f, images)


# ---------------------------------------------------------------------------
# gcd (primitive PRS in a main variable, recursive content)


def _main_variable(*polys: Polynomial) -> int | None:
    best, bdeg = None, 0
    for i in range(polys[0].nvars):
        deg = max(p.degree_in(i) for p in polys)
        if deg > bdeg:
            best, bdeg = i, deg
    return best


def _as_univariate(p: Polynomial, v: int) -> dict[int, Polynomial]:
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        parts.setdefault(e[v], {})[e[:v] + (0,) + e[v + 1:]] = c
    return {k: Polynomial._raw(p.nvars, t) for k, t in parts.items()}


def _var_power(nvars: int, v: int, k: int) -> Polynomial:
    e = [0] * nvars
    e[v] = k
    return Polynomial._raw(nvars, {tuple(e): 1})


def _content_in(p: Polynomial, v: int) -> Polynomial:
    coeffs = sorted(_as_univariate(p, v).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = multivariate_gcd(g, c)
    return primitive(g) if not g.is_constant() else Polynomial.one(p.nvars)


def _prem(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    db = b.degree_in(v)
    bu = _as_univariate(b, v)
    lb = bu[db]
    r = a
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = _as_univariate(r, v)[dr]
        r = r * lb - lr * _var_power(r.nvars, v, dr - db) * b
    return r


def multivariate_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, primitive with positive leading coefficient.

    ``gcd(p, 0)`` is the normalized ``p``; ``gcd(0, 0)`` is zero.
    """
    if p.nvars != q.nvars:
        raise ValueError("variable count mismatch")
    n = p.nvars
    if not p:
        return primitive(q)
    if not q:
        return primitive(p)
    if p.is_constant() or q.is_constant():
        return Polynomial.one(n)
    if len(p.terms) == 1 or len(q.terms) == 1:
        return _gcd_with_monomial(p, q)
    v = _main_variable(p, q)
    cp, cq = _content_in(p, v), _content_in(q, v)
    c = multivariate_gcd(cp, cq) if not (cp.is_constant() or cq.is_constant()) else Polynomial.one(n)
    a = primitive(divide_exact(p, cp))
    b = primitive(divide_exact(q, cq))
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    if b.degree_in(v) <= 0:
        return primitive(c)
    while True:
        r = _prem(a, b, v)
        if not r:
            g = b
            break
        if r.degree_in(v) == 0:
            g = Polynomial.one(n)
            break
        a, b = b, primitive(divide_exact(r, _content_in(r, v)))
    if not g.is_constant():
        g = divide_exact(g, _content_in(g, v))
    return primitive(c * g)


def _gcd_with_monomial(p: Polynomial, q: Polynomial) -> Polynomial:
    # gcd with a monomial is the monomial of the minimal common exponents
    exps = [e for poly in (p, q) for e in poly.terms]
    low = tuple(min(col) for col in zip(*exps))
    return Polynomial._raw(p.nvars, {low: 1})


# ---------------------------------------------------------------------------
# squarefree decomposition and k-th roots


@dataclass(frozen=True)
class SquarefreeFactorization:
    content: int | Fraction
    factors: tuple[tuple[Polynomial, int], ...]

    def expand(self) -> Polynomial:
        nv = self.factors[0][0].nvars if self.factors else None
        if nv is None:
            raise ValueError("no factors to infer the ring from; use expand_in")
        return self.expand_in(nv)

    def expand_in(self, nvars: int) -> Polynomial:
        out = Polynomial.constant(nvars, self.content)
        for g, m in self.factors:
            out = out * g ** m
        return out


def squarefree_factorization(p: Polynomial) -> SquarefreeFactorization:
    """Yun decomposition in a main variable, recursing on the content."""
    if not p:
        raise ValueError("squarefree factorization of the zero polynomial")
    c, q = normalize(p)
    factors: list[tuple[Polynomial, int]] = []
    _sqf_rec(q, factors)
    merged: dict[Polynomial, int] = {}
    for g, m in factors:
        merged[g] = merged.get(g, 0) + m
    items = sorted(merged.items(), key=lambda t: (t[1], _desc_key(t[0])))
    out = SquarefreeFactorization(c, tuple(items))
    check = out.expand_in(p.nvars)
    if check != p:
        raise RuntimeError("squarefree reassembly failed")  # pragma: no cover
    return out


def _desc_key(p: Polynomial) -> list:
    return [(-sum(e), tuple(-a for a in e)) for e, _ in p.sorted_terms()]


def _sqf_rec(p: Polynomial, out: list) -> None:
    # p primitive and normalized
    if p.is_constant():
        return
    if len(p.terms) == 1:
        (e, _), = p.terms.items()
        for i, a in enumerate(e):
            if a:
                out.append((Polynomial.var(p.nvars, i), a))
        return
    v = _main_variable(p)
    cont = _content_in(p, v)
    pp = divide_exact(p, cont) if not cont.is_constant() else p
    pp = primitive(pp)
    _yun(pp, v, out)
    if not cont.is_constant():
        _sqf_rec(primitive(cont), out)


def _yun(f: Polynomial, v: int, out: list) -> None:
    fp = differentiate(f, v)
    a = multivariate_gcd(f, fp)
    b = divide_exact(f, a)
    c = divide_exact(fp, a)
    d = c - differentiate(b, v)
    i = 1
    while not b.is_constant():
        a = multivariate_gcd(b, d)
        if not a.is_constant():
            out.append((primitive(a), i))
        b = divide_exact(b, a)
        c = divide_exact(d, a)
        d = c - differentiate(b, v)
        i += 1


def kth_root(p: Polynomial, k: int, method: str = "terms") -> tuple[int | Fraction, Polynomial] | None:
    """Return ``(c, r)`` with ``p == c * r**k`` and ``r`` normalized, or ``None``.

    ``method="terms"`` extracts the root term by term in graded-lex order
    (the leading term of ``p - r_j**k`` determines the next term of ``r``);
    ``method="squarefree"`` divides the squarefree multiplicities by ``k``.
    Both verify by re-expansion.
    """
    if not p:
        raise ValueError("k-th root of the zero polynomial")
    if k < 1:
        raise ValueError("k must be positive")
    if method not in ("terms", "squarefree"):
        raise ValueError(f"unknown method {method!r}")
    if k == 1:
        return normalize(p)
    if method == "squarefree":
        return _kth_root_sqf(p, k)
    return _kth_root_terms(p, k)


def _kth_root_sqf(p: Polynomial, k: int):
    sf = squarefree_factorization(p)
    r = Polynomial.one(p.nvars)
    for g, m in sf.factors:
        if m % k:
            return None
        r = r * g ** (m // k)
    c, r = normalize(r)
    return as_rational(Fraction(sf.content) * Fraction(c) ** k), r


def _kth_root_terms(p: Polynomial, k: int):
    n = p.nvars
    lead, lc = p.leading_term()
    if any(a % k for a in lead):
        return None
    q = p.scale(Fraction(1) / Fraction(lc))
    first = tuple(a // k for a in lead)
    r = Polynomial._raw(n, {first: 1})
    # k * LT(r)^(k-1) divides every correction term
    step_mono = tuple(a * (k - 1) for a in first)
    prev = first
    limit = _monomial_count(n, sum(first)) if p.is_homogeneous() else None
    steps = 0
    while True:
        err = q - r ** k
        if not err:
            break
        e, c = err.leading_term()
        t = tuple(a - b for a, b in zip(e, step_mono))
        if min(t) < 0 or _grlex_key(t) >= _grlex_key(prev):
            return None
        r = r + Polynomial._raw(n, {t: as_rational(Fraction(c) / k)})
        prev = t
        steps += 1
        if limit is not None and steps > limit:
            return None
    c, r = normalize(r)
    return as_rational(Fraction(lc) * Fraction(c) ** k), r


def _monomial_count(nvars: int, deg: int) -> int:
    from math import comb

    return comb(deg + nvars - 1, nvars - 1)
