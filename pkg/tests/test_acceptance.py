"""Acceptance suite: one reported line per criterion.

Run ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` (lines on stdout).
"""

import itertools
import json
import math
import subprocess
import sys
import time
from fractions import Fraction as F

import numpy as np
import pytest

from gammagerbe import bernoulli as B
from gammagerbe import hermitian as H
from gammagerbe import lattice as L
from gammagerbe import wedge as W
from gammagerbe.checker import run_check
from conftest import ACCEPTANCE_LINES

SEED = 42


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def run_checks(spec):
    """``spec`` lists ``(name, samples, tol)``; returns (all passed, summary)."""
    reps = [run_check(n, s, SEED, t) for n, s, t in spec]
    worst = max(r.max_rel_dev for r in reps)
    bad = [r.identity for r in reps if not r.passed]
    detail = f"{len(reps)} checks, worst rel. dev {worst:.1e}" + (f", failing: {bad}" if bad else "")
    return not bad, detail


# ---------------------------------------------------------------- 1

def _laurent(*terms):
    return {tuple(e): F(c) for e, c in terms}


REF_P2 = _laurent(((2, -1, -1), 1), ((1, 0, -1), -1), ((1, -1, 0), -1),
                  ((0, 1, -1), F(1, 6)), ((0, 0, 0), F(1, 2)), ((0, -1, 1), F(1, 6)))

REF_P3 = _laurent(
    ((3, -1, -1, -1), 1),
    ((2, 0, -1, -1), F(-3, 2)), ((2, -1, 0, -1), F(-3, 2)), ((2, -1, -1, 0), F(-3, 2)),
    ((1, 1, -1, -1), F(1, 2)), ((1, -1, 1, -1), F(1, 2)), ((1, -1, -1, 1), F(1, 2)),
    ((1, -1, 0, 0), F(3, 2)), ((1, 0, -1, 0), F(3, 2)), ((1, 0, 0, -1), F(3, 2)),
    ((0, 0, 0, 0), F(-3, 4)),
    *(((0,) + tuple(1 if k == i else -1 if k == j else 0 for k in range(3)), F(-1, 4))
      for i in range(3) for j in range(3) if i != j),
)

REF_R3 = _laurent(((3, -1, -1), 1), ((2, -1, 0), F(-3, 2)), ((2, 0, -1), F(-3, 2)),
                  ((1, 1, -1), F(1, 2)), ((1, -1, 1), F(1, 2)), ((1, 0, 0), F(3, 2)),
                  ((0, 1, 0), F(-1, 4)), ((0, 0, 1), F(-1, 4)))


def test_criterion_1_exact_suite():
    closed = (B.P2.coefficients == REF_P2 and B.P3.coefficients == REF_P3
              and B.R3.coefficients == REF_R3)
    diff = all(B.check_difference(r, n, i) for r in range(1, 5) for n in range(1, 6)
               for i in range(1, r + 1))
    sub = all(B.subdivision_identity(r, n, m) for r in range(1, 5) for n in range(0, 6)
              for m in range(1, 5))
    ok = report(1, closed and diff and sub,
                f"closed forms {closed}, difference relation (with factor n) {diff}, subdivision {sub}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the relation needs the factor n for n >= 2")
def test_criterion_1_difference_relation_without_factor_n():
    literal = all(B.check_difference(r, n, i, literal=True) for r in range(1, 5)
                  for n in range(1, 6) for i in range(1, r + 1))
    report(1, literal, "(literal difference relation without the factor n)")
    assert literal


# ---------------------------------------------------------------- 2-5

def test_criterion_2_theta_functional():
    ok, d = run_checks([("theta-functional", 100, 1e-10)])
    assert report(2, ok, d)


def test_criterion_3_theta_modular():
    ok, d = run_checks([("theta-modular", 50, 1e-9), ("theta-multiplier", 50, 1e-9)])
    assert report(3, ok, d)


def test_criterion_4_elliptic_gamma():
    ok, d = run_checks([(n, 100, 1e-8) for n in ("gamma-difference", "gamma-symmetry",
                                                 "gamma-reflection", "gamma-chambers",
                                                 "gamma-three-term", "gamma-modular")])
    assert report(4, ok, d)


def test_criterion_5_narukawa():
    ok, d = run_checks([("narukawa", 100, 1e-8)])
    assert report(5, ok, d)


# ---------------------------------------------------------------- 6-7

def test_criterion_6_wedge_layer():
    ok, d = run_checks([("inversion", 50, 1e-8), ("three-term-e1e2e3", 50, 1e-8),
                        ("three-term-coplanar", 50, 1e-8), ("three-term-four-factor", 50, 1e-8),
                        ("wedge-oracle", 50, 1e-8)])
    assert report(6, ok, d)


def _psi_samples(count=20):
    from gammagerbe.sampling import Stream, random_primitive
    out = []
    slot = 0
    while len(out) < count:
        st = Stream("acceptance-psi", SEED, slot)
        slot += 1
        a = random_primitive(st, 3)
        lam, mu, nu = st.covector(3), st.covector(3), st.covector(3)
        x = tuple(F(st.randint(-9, 9), st.randint(1, 6)) for _ in range(3))
        basis = L.framing_of(a)
        if any(L.pair(v, x) == 0 for v in basis):
            continue
        w = F(st.randint(-9, 9), st.randint(1, 6))
        psi = -W.translation_coboundary(a, lam, mu, nu, w, x)
        l, m, n = (L.framing_coordinates(basis, v) for v in (lam, mu, nu))
        out.append((psi, l, m, n))
    return out


def test_criterion_7_cocycles():
    ok, d = run_checks([("inversion", 50, 1e-8), ("three-term-random", 50, 1e-8),
                        ("delta-composition", 50, 1e-8), ("cocycle-phi-a-translation", 50, 1e-8),
                        ("cocycle-phi-ab", 50, 1e-8), ("cocycle-phi-ab-compat", 50, 1e-8),
                        ("cocycle-phi-a-general", 50, 1e-8), ("scaling-invariance", 20, 1e-8)])
    samples = _psi_samples()
    integral = all(p.denominator == 1 for p, *_ in samples)
    mono = all(p == -n[0] * m[1] * l[2] for p, l, m, n in samples)
    ok = ok and integral and mono
    assert report(7, ok, f"{d}; psi integral on 20 triples {integral}, psi == -n1 m2 l3 {mono}")


@pytest.mark.xfail(strict=True, reason="the coboundary is -n1 m2 l3; the indices of m and n are swapped")
def test_criterion_7_literal_monomial():
    samples = _psi_samples()
    bad = sum(p != -m[0] * n[1] * l[2] for p, l, m, n in samples)
    report(7, bad == 0, f"(literal psi == -m1 n2 l3: {bad}/20 triples disagree)")
    assert bad == 0


# ---------------------------------------------------------------- 8

def test_criterion_8_lattice_combinatorics():
    t0 = time.perf_counter()
    vs = [v for v in itertools.product(range(-4, 5), repeat=3) if L.is_primitive(v)]
    sizes_ok = True
    pairs = 0
    for a in vs:
        for b in vs:
            wd = L.Wedge(a, b)
            if not wd.general:
                continue
            pairs += 1
            s = wd.modulus
            fs = wd.fundamental_set
            keys = {(L.pair(d, a), L.pair(d, b)) for d in fs}
            if len(fs) != s or len(keys) != s or not all(0 <= p < s and 0 <= q < s for p, q in keys):
                sizes_ok = False
    # independent count of classes over (Z/s)^3 for a nonnegative sub-box
    brute_ok = True
    small = [v for v in itertools.product(range(0, 3), repeat=3) if L.is_primitive(v)]
    for a in small:
        for b in small:
            _, s = L.direction_vector(a, b)
            if s == 0:
                continue
            grid = np.array(list(itertools.product(range(s), repeat=3)))
            cls = {(int(p) % s, int(q) % s) for p, q in zip(grid @ a, grid @ b)}
            brute_ok &= len(cls) == s

    # orbit count per modulus via the invariant r = alpha1(b) mod s
    big = np.array([v for v in itertools.product(range(-8, 9), repeat=3) if L.is_primitive(v)])
    seen = {s: set() for s in range(1, 7)}
    for a in big:
        a1 = np.array(L.framing_of(tuple(int(c) for c in a))[0])
        c = np.cross(a, big)
        s = np.gcd.reduce(np.abs(c), axis=1)
        r = big @ a1
        for sv in range(1, 7):
            sel = s == sv
            if sel.any():
                seen[sv].update(np.unique(r[sel] % sv).tolist())
    orbits_ok = all(len(seen[s]) == L.euler_phi(s) for s in seen)
    # the invariant agrees with the normal form
    nf_ok = all(L.normal_form(a, b).r == L.pair(L.framing_of(a)[0], b) % L.direction_vector(a, b)[1]
                for a in vs[::7] for b in vs[::5] if L.direction_vector(a, b)[1])
    ok = sizes_ok and brute_ok and orbits_ok and nf_ok
    counts = {s: len(seen[s]) for s in seen}
    assert report(8, ok, f"|F/Z gamma| = s on {pairs} wedges {sizes_ok}, brute force {brute_ok}, "
                         f"orbits per s {counts} {orbits_ok}, normal-form cross-check {nf_ok} "
                         f"({time.perf_counter() - t0:.1f} s)")


# ---------------------------------------------------------------- 9-10

def test_criterion_9_hermitian():
    ok, d = run_checks([("theta-norm-invariance", 50, 1e-9), ("hermitian-cocycle", 50, 1e-8),
                        ("metric-shift", 50, 1e-8), ("metric-composition", 50, 1e-8),
                        ("metric-equivariance", 50, 1e-8), ("h3-shift", 50, 1e-12),
                        ("im-product", 50, 1e-10), ("h-ab-series", 30, 1e-6)])
    exact = B.check_difference(2, 3, 1) and all(B.subdivision_identity(2, 3, m) for m in (2, 3, 4))
    assert report(9, ok and exact, f"{d}; Bernoulli-level shift/subdivision exact {exact}")


def test_criterion_10_curvature():
    ok, d = run_checks([("curvature-h2", 20, 1e-5), ("curvature-h3", 20, 1e-5)])
    t0 = time.perf_counter()
    val = H.fibre_integral_c1(0.3 + 1.2j, 0.1 + 0.05j)
    dt = time.perf_counter() - t0
    fib = abs(val - 1) < 1e-3 and dt < 10
    assert report(10, ok and fib, f"{d}; fibre integral {val:.6f} in {dt:.2f} s")


# ---------------------------------------------------------------- 11

def _check_all(seed):
    r = subprocess.run([sys.executable, "-m", "gammagerbe", "check-all", "--seed", str(seed)],
                       capture_output=True, text=True)
    data = json.loads(r.stdout)
    for d in data:
        d.pop("wall_time_ms")
    return r.returncode, data


def test_criterion_11_reproducibility():
    c1, a = _check_all(SEED)
    c2, b = _check_all(SEED)
    same = a == b
    assert report(11, same and c1 == c2 == 0,
                  f"check-all --seed {SEED} twice: identical {same}, exit codes {c1}, {c2}, "
                  f"{len(a)} checks")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
