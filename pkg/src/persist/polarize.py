"""Polarization, partial polarization and restitution.

Full polarization carries the ``1/n!`` normalization, so restitution inverts
it exactly.  Partial polarization does not: it returns the raw sum

    sum u1[i1] ... uk[ik] * d^k f / dx[i1] ... dx[ik]

as a polynomial in blocks ``(u, v, ..., x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from persist.polycore import BlockedPolynomial, Polynomial, block_names, differentiate


@dataclass(frozen=True)
class PolarizationSpec:
    degree: int
    num_blocks: int
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not 1 <= self.num_blocks <= self.degree:
            raise ValueError(f"need 1 <= num_blocks <= degree, got {self.num_blocks} and {self.degree}")
        if not self.names:
            object.__setattr__(self, "names", tuple(block_names(self.num_blocks)))
        elif len(self.names) != self.num_blocks:
            raise ValueError("one name per block")

    @property
    def is_full(self) -> bool:
        return self.num_blocks == self.degree


def _homogeneous_degree(f: Polynomial) -> int:
    if not f or not f.is_homogeneous():
        raise ValueError("polarization needs a nonzero homogeneous polynomial")
    return f.degree


def _polarize(f: Polynomial, k: int, names: list[str], keep_x: bool) -> BlockedPolynomial:
    d = f.nvars
    total = d * (k + 1)
    xs = list(range(k * d, total))
    # work in the ring (u-blocks..., x); apply u-directional derivatives one block at a time
    cur = f.embed(total, xs)
    for b in range(k):
        acc = Polynomial.zero(total)
        for i in range(d):
            di = differentiate(cur, xs[i])
            if di:
                acc = acc + Polynomial.var(total, b * d + i) * di
        cur = acc
    blocks = tuple((n, d) for n in names) + (("x", d),)
    out = BlockedPolynomial(blocks, cur)
    return out.drop_blocks(["x"]) if not keep_x else out


def full_polarization(f: Polynomial) -> BlockedPolynomial:
    """Symmetric multilinear form with ``restitution(full_polarization(f)) == f``."""
    n = _homogeneous_degree(f)
    spec = PolarizationSpec(n, n)
    out = _polarize(f, n, list(spec.names), keep_x=False)
    return BlockedPolynomial(out.blocks, out.poly.scale(f"1/{factorial(n)}"))


def partial_polarization(f: Polynomial, k: int) -> BlockedPolynomial:
    """Polarize ``k`` of the ``n`` slots; no factorial normalization."""
    n = _homogeneous_degree(f)
    if not 1 <= k <= n - 1:
        raise ValueError(f"partial polarization needs 1 <= k <= {n - 1}, got {k}")
    return _polarize(f, k, block_names(k), keep_x=True)


def restitution(T: BlockedPolynomial, target_block: str | None = None) -> Polynomial:
    """Identify every block with ``target_block`` (default: the last block)."""
    sizes = {s for _, s in T.blocks}
    if len(sizes) != 1:
        raise ValueError("restitution needs blocks of equal size")
    size = sizes.pop()
    if target_block is None:
        target_block = T.names[-1]
    T.block_range(target_block)
    positions = [i % size for i in range(T.poly.nvars)]
    return T.poly.embed(size, positions)
