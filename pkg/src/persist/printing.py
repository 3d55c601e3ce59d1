"""Canonical text form for polynomials.

Terms appear in decreasing graded-lex order with explicit ``*`` and ``^``;
non-integral coefficients print as ``p/q``.  The output is re-readable by
:func:`persist.expr.parse`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def default_names(nvars: int) -> list[str]:
    return [f"x{i}" for i in range(nvars)]


def format_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(e, names: Sequence[str]) -> str:
    parts = []
    for name, a in zip(names, e):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(p, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = default_names(p.nvars)
    if not p.terms:
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = format_monomial(e, names)
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
