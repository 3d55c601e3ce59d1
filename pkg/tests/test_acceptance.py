"""The eleven acceptance criteria, each checked exactly (rational arithmetic).

Every criterion records one PASS/FAIL line; pytest prints them in its
terminal summary, and ``python3 tests/test_acceptance.py`` prints them
directly.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _corpus import build_corpus  # noqa: E402
from persist.expr import parse  # noqa: E402
from persist.gallery import (  # noqa: E402
    RationalFunction,
    chasles_cayley,
    general_isobaric,
    hessian_power_law,
    hessian_power_law_f4,
    isotropy_check_f4,
    legendre_verify,
    p4_compose,
    perazzo,
    secant_form,
    st_cubic,
    sub_hankel,
    symdet,
    w_form,
    y_form,
)
from persist.hessian import hessian, weight_profile  # noqa: E402
from persist.persistence import (  # noqa: E402
    condition_a,
    condition_d,
    criterion_c,
    criterion_object,
    is_concise,
    kth_root,
    persistence_report,
    probe_definition,
    restituted_criterion_object,
)
from persist.polarize import restitution  # noqa: E402
from persist.polycore import BlockedPolynomial, PolyMatrix, Polynomial, determinant, substitute_linear  # noqa: E402

RESULTS: dict[int, tuple[str, bool, str]] = {}

TITLES = {
    1: "binary quartic triple",
    2: "quartic surface pair",
    3: "Perazzo family",
    4: "implication chain on corpus",
    5: "small-dimension classification",
    6: "weight lemma",
    7: "sub-Hankel suite",
    8: "isotropy of f_(4)",
    9: "Legendre transform",
    10: "negative and equivariance controls",
    11: "probe consistency",
}


def uv(text: str, size: int) -> BlockedPolynomial:
    """Polynomial in blocks u, v written with ``u0``, ``v1``, ... names."""
    for i in reversed(range(size)):
        text = text.replace(f"u{i}", f"x{i}").replace(f"v{i}", f"x{size + i}")
    return BlockedPolynomial((("u", size), ("v", size)), parse(text, nvars=2 * size))


def lin_power(p: Polynomial, k: int) -> bool:
    root = kth_root(p, k) if p else None
    return root is not None and root[1].degree == 1


# ---------------------------------------------------------------------------


def check_1() -> str:
    h, g, f = parse("x0^4+x1^4"), parse("x0^2*x1^2"), parse("x0^3*x1")
    ch, cg, cf = criterion_c(h), criterion_c(g), criterion_c(f)
    assert ch.G == uv("576*u0*u1*v0*v1", 2) and not ch.holds
    assert cg.G == uv("16*(-u0^2*v1^2 - u1^2*v0^2 - u0*u1*v0*v1)", 2) and not cg.holds
    assert cf.G == uv("-36*(u0*v0)^2", 2) and cf.holds
    assert cf.certificate.c == -36 and cf.certificate.form == uv("u0*v0", 2)
    assert restitution(ch.G) == parse("576*(x0*x1)^2") == hessian(h) * 4
    assert restitution(cg.G) == parse("-48*(x0*x1)^2") == hessian(g) * 4
    assert restitution(cf.G) == parse("-36*x0^4", 2) == hessian(f) * 4
    return "G values, certificate only for x0^3*x1, restitution = 4*Hess"


def check_2() -> str:
    f = parse("x0*x2^3+x1*x2^2*x3+x3^4")
    g = parse("x2^4+x0*x2^2*x3+x1*x2*x3^2+x3^4")
    assert hessian(f) == parse("9*x2^8", 4)
    a = condition_a(f)
    assert (a.c, a.form) == (9, parse("x2", 4))
    assert hessian(g) == parse("9*(x2*x3)^4", 4)
    dd = condition_d(g)
    assert (dd.c, dd.form) == (9, parse("x2*x3", 4))
    cg = criterion_c(g)
    assert cg.G == uv("16*(u3^2*v2^2 + u2*u3*v2*v3 + u2^2*v3^2)^2", 4) and not cg.holds
    assert not persistence_report(g).persistent
    assert persistence_report(f).persistent
    return "Hess(f) = 9*x2^8 with (a); Hess(g) = 9*(x2*x3)^4 with (d); G not a 4th power"


def check_3() -> str:
    rng = random.Random(3)
    x0 = Polynomial.var(5, 0)
    for _ in range(10):
        lam = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 6)) for _ in range(4)]
        l1, l2, l3, _ = lam
        f = perazzo(lam)
        assert hessian(f) == x0 ** 5 * (8 * l1 ** 2 * l2 ** 2 * l3)
        assert persistence_report(f).persistent
    c = is_concise(perazzo([0, 1, 1, 1]))
    assert not c.concise and c.kernel == ((0, 0, 0, 0, 1),)
    f = perazzo([1, 1, 0, 1])
    assert is_concise(f).concise and not hessian(f)
    return "Hess = 8*l1^2*l2^2*l3*x0^5 on 10 tuples, all persistent; l1 = 0 non-concise; l3 = 0 Hess = 0"


@lru_cache(maxsize=None)
def corpus_runs():
    out = []
    for label, f in build_corpus():
        r = persistence_report(f, strict=False)
        out.append((label, f, r))
    return out


def check_4() -> str:
    runs = corpus_runs()
    random_items = [x for x in runs if x[0].startswith("(")]
    assert len(random_items) >= 200, len(random_items)
    cells = {(r.d, r.n) for label, _, r in random_items}
    assert cells >= {(d, n) for d in (2, 3, 4) for n in (3, 4)}
    persistent = 0
    for label, f, r in runs:
        assert not r.violations(), (label, r.violations())
        persistent += r.persistent
        if r.n < 3:
            # quadrics: the rank rule, no Hessian conditions
            continue
        a = r.condition_a is not None
        assert not a or r.persistent, label
        assert not r.persistent or r.condition_d is not None, label
        if r.n == 3:
            assert a == r.persistent, label
        if r.G is not None:
            restituted = restitution(r.G)
        elif r.concise.concise:
            restituted = restituted_criterion_object(f)
        else:
            restituted = restitution(criterion_object(f))
        assert restituted == r.hess * factorial(r.n - 2) ** r.d, label
    return f"{len(runs)} inputs ({len(random_items)} seeded), {persistent} persistent, 0 violations"


def check_5() -> str:
    for n in range(3, 7):
        f = w_form(n)
        r = persistence_report(f)
        assert r.persistent and lin_power(r.hess, 2 * (n - 2))
    for n in range(3, 6):
        f = y_form(n)
        r = persistence_report(f)
        assert r.persistent and lin_power(r.hess, 3 * (n - 2))
    x0, x1, x2 = Polynomial.gens(3)
    for n in (4, 5):
        f = secant_form(n)
        expected = x0 ** (3 * n - 8) * ((n - 2) * x1 * x2 - n * x0 ** 2) * (n - 1)
        assert hessian(f) == expected
        assert not persistence_report(f).persistent
    grid = [(l1, l2, l3) for l1 in (0, 1, -2) for l2 in (0, 3, Fraction(1, 2)) for l3 in (1, 5)]
    for lam in grid:
        assert persistence_report(chasles_cayley(*lam)).persistent == (lam[0] * lam[1] != 0), lam
    return "W(3..6), Y(3..5) persistent with linear-power Hessians; secant(4,5) exact; CC grid 18/18"


def check_6() -> str:
    rng = random.Random(6)
    count = 0
    for d in (3, 4, 5):
        x0 = Polynomial.var(d, 0)
        for delta in range(0, 3 * (d - 1) + 1):
            for i in range(50):
                n = 3 + i % 2
                f = general_isobaric(d, n, delta, rng)
                H = hessian(f)
                if delta < d - 1:
                    assert not H, (d, n, delta)
                elif delta == d - 1:
                    e = (d * (n - 2),) + (0,) * (d - 1)
                    assert H == x0 ** e[0] * H.coefficient(e), (d, n, delta)
                elif H:
                    w = weight_profile(H)
                    assert w.is_isobaric and w.weight == d * (delta - d + 1), (d, n, delta)
                count += 1
    return f"{count} isobaric samples over d in {{3,4,5}}, n in {{3,4}}"


def check_7() -> str:
    for d in (3, 4, 5):
        f = sub_hankel(d)[1]
        w = weight_profile(f)
        assert w.is_isobaric and w.weight == d - 1 and f.degree == d - 1
        assert persistence_report(f).persistent
    lams = []
    for k, h in [(1, 0), (1, 1), (2, 0)]:
        lam, ok = hessian_power_law_f4(k, h)
        assert ok and lam
        lams.append(lam)
    for k, h in [(1, 0), (1, 1)]:
        lam, ok = hessian_power_law(5, k, h)
        assert ok and lam
        lams.append(lam)
    return "f_(3..5) isobaric and persistent; lambdas " + ", ".join(str(l) for l in lams)


def _random_element(rng):
    a0 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
    return a0, Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def check_8() -> str:
    rng = random.Random(8)
    elems = [_random_element(rng) for _ in range(20)]
    chars = []
    for a in elems:
        ok, chi = isotropy_check_f4(*a)
        assert ok
        chars.append(chi)
    # fix the exponent by brute force on the first two elements with |a0| != 1
    probes = [(a, c) for a, c in zip(elems, chars) if abs(a[0]) != 1][:2]
    exps = [{e for e in range(-12, 13) if a[0] ** e == c} for a, c in probes]
    common = set.intersection(*exps)
    assert len(common) == 1
    (e,) = common
    assert all(c == a[0] ** e for a, c in zip(elems, chars))
    for _ in range(10):
        p, q = _random_element(rng), _random_element(rng)
        pq = p4_compose(p, q)
        ok, chi = isotropy_check_f4(*pq)
        assert ok and chi == isotropy_check_f4(*p)[1] * isotropy_check_f4(*q)[1]
    return f"20 elements pass, character a0^{e}, multiplicative on 10 pairs"


def check_9() -> str:
    f = parse("(x0*x2+x1^2)*x0")
    fs = RationalFunction(parse("(4*x0*x2+x1^2)^2"), parse("x2", 3))
    check = legendre_verify(f, fs)
    assert check
    return f"f_*(grad f/f) * f = {check.scalar} (nonzero constant)"


def check_10() -> str:
    f = st_cubic()
    x0, x1, x2, x3 = Polynomial.gens(4)
    assert hessian(f) == (x0 * x1 + x2 ** 2) * (x0 + x3) ** 2 * 4
    assert not persistence_report(f).persistent
    for m in (3, 4):
        assert not hessian(symdet(m))
    rng = random.Random(10)
    pairs = 0
    while pairs < 20:
        d = rng.randint(2, 4)
        n = rng.randint(2, 4)
        g = general_isobaric(d, n, rng.randint(0, n * (d - 1)), rng) + \
            Polynomial(d, {tuple(rng.choice([(n, 0), (0, n)]) + (0,) * (d - 2)): rng.randint(1, 5)})
        A = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
        detA = determinant(PolyMatrix.from_rows(A, nvars=1))
        detA = detA.constant_value() if detA else 0
        if not detA:
            continue
        assert hessian(substitute_linear(g, A)) == substitute_linear(hessian(g), A) * detA ** 2
        pairs += 1
    return "ST Hessian exact and not persistent; Hess(det S_3) = Hess(det S_4) = 0; 20 equivariance pairs"


def check_11() -> str:
    runs = corpus_runs()
    certified = 0
    for label, f, r in runs:
        if r.condition_c is not None:
            certified += 1
            out = probe_definition(f, trials=8, seed=0)
            assert not out.witnessed, label
    for text in ["x0^4+x1^4", "x0^2*x1^2", "x2^4+x0*x2^2*x3+x1*x2*x3^2+x3^4"]:
        assert probe_definition(parse(text), trials=8, seed=0).witnessed, text
    return f"no witness on {certified} certified inputs; witnesses for h, g and the quartic surface g"


CHECKS = {k: globals()[f"check_{k}"] for k in TITLES}


def run_criterion(k: int) -> tuple[bool, str]:
    t0 = time.perf_counter()
    try:
        detail = CHECKS[k]()
        ok = True
    except AssertionError as e:
        ok, detail = False, f"assertion failed: {e!r}"
    except Exception as e:
        ok, detail = False, f"error: {e!r}"
    ms = (time.perf_counter() - t0) * 1000
    RESULTS[k] = (TITLES[k], ok, f"{detail} [{ms:.0f} ms]")
    return ok, detail


def result_line(k: int) -> str:
    title, ok, detail = RESULTS[k]
    return f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("k", list(TITLES))
def test_criterion(k):
    ok, detail = run_criterion(k)
    print(result_line(k))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k in TITLES:
        ok, _ = run_criterion(k)
        failed += not ok
        print(result_line(k), flush=True)
    sys.exit(1 if failed else 0)
