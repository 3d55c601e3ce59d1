"""Hessian matrices and determinants, isobaric weights, and the polar map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from persist.polycore import PolyMatrix, Polynomial, determinant, differentiate, evaluate


def hessian_matrix(f: Polynomial, variables: Sequence[int] | None = None) -> PolyMatrix:
    """Matrix of second partials of ``f`` in the chosen variables (default: all)."""
    if variables is None:
        variables = range(f.nvars)
    variables = list(variables)
    if not variables:
        raise ValueError("need at least one variable")
    first = [differentiate(f, i) for i in variables]
    rows = []
    for a, fi in enumerate(first):
        row = []
        for b, j in enumerate(variables):
            row.append(rows[b][a] if b < a else differentiate(fi, j))
        rows.append(row)
    return PolyMatrix(tuple(tuple(r) for r in rows))


def hessian(f: Polynomial, variables: Sequence[int] | None = None) -> Polynomial:
    """Determinant of the Hessian matrix."""
    return determinant(hessian_matrix(f, variables))


@dataclass(frozen=True)
class WeightProfile:
    is_isobaric: bool
    weight: int | None
    weight_support: frozenset[int]


def monomial_weight(e) -> int:
    return sum(j * a for j, a in enumerate(e))


def weight_profile(f: Polynomial) -> WeightProfile:
    """Weights ``sum j * alpha_j`` occurring in the support of ``f``."""
    if not f:
        raise ValueError("weight profile of the zero polynomial")
    support = frozenset(monomial_weight(e) for e in f.terms)
    iso = len(support) == 1
    return WeightProfile(iso, next(iter(support)) if iso else None, support)


def torus_action(f: Polynomial, t) -> Polynomial:
    """Substitute ``x_j <- t**j * x_j``."""
    t = Fraction(t)
    return Polynomial(f.nvars, {e: c * t ** monomial_weight(e) for e, c in f.terms.items()})


class BaseLocusError(ValueError):
    """The gradient vanishes at the requested point."""


def polar_map_eval(f: Polynomial, point: Sequence) -> tuple:
    """Gradient of ``f`` at ``point``, scaled so its first nonzero entry is 1."""
    if len(point) != f.nvars:
        raise ValueError(f"point has length {len(point)}, expected {f.nvars}")
    grad = [Fraction(evaluate(differentiate(f, i), point)) for i in range(f.nvars)]
    pivot = next((g for g in grad if g), None)
    if pivot is None:
        raise BaseLocusError(f"point {tuple(point)} lies in the base locus of the polar map")
    return tuple(g / pivot for g in grad)
