"""Acceptance criteria, one check each; every check prints a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, where
the lines are also collected into the terminal summary.
"""

import itertools
import random
import sys
import time
from fractions import Fraction as F
from math import gcd
from pathlib import Path

import sympy

sys.path.insert(0, str(Path(__file__).parent))

from braidrep.certify import coprime_witness, nonexistence_certificate
from braidrep.field import QT, T, RatFunc
from braidrep.friendship import build_graph
from braidrep.linalg import algebra_closure_dim
from braidrep.reduction import candidate_scalars, twisted_corank_direct
from braidrep.rep import (
    build_burau, build_chi, build_tym_standard, corank, direct_sum, orbit_independence,
    tensor, verify_relations, znorm,
)

RESULTS = []
GOLDEN = Path(__file__).parent / "golden"


def report(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


FAMILIES = {
    "burau": lambda n: build_burau(n),
    "burau-reduced": lambda n: build_burau(n, reduced=True),
    "tym": build_tym_standard,
    "chi": lambda n: build_chi(T + 1, n),
}


def test_relation_suite():
    start = time.perf_counter()
    bad = []
    for fam, n in itertools.product(FAMILIES, range(3, 9)):
        rep = FAMILIES[fam](n)
        rpt = verify_relations(rep)
        ok = rpt.passed and rpt.tau_delta_central and all(
            all(c.passed for c in checks) for checks in rpt.lemma22_checks.values()
        )
        if not ok:
            bad.append((fam, n))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    assert report("relation suite", ok, f"4 families x n=3..8, failures={bad}, {elapsed:.1f}s (< 60s)")


def test_corank_table():
    table = {n: (corank(build_burau(n, reduced=True)), corank(build_tym_standard(n))) for n in range(3, 11)}
    ok = all(v == (1, 2) for v in table.values())
    assert report("corank table", ok, "burau-reduced=1, tym=2 for n=3..10" if ok else str(table))


def test_friendship_invariants():
    count, bad = 0, []
    for n in range(3, 9):
        reps = [build_burau(n), build_burau(n, reduced=True), build_tym_standard(n), build_chi(T + 1, n),
                tensor(build_chi(2 * T, n), build_tym_standard(n)), build_tym_standard(n, at=1)]
        for rep in reps:
            g = build_graph(rep)

            def check(cond, what):
                nonlocal count
                count += 1
                if not cond:
                    bad.append((rep.name, what))

            for i, j in itertools.permutations(range(n), 2):
                check(g.f(i, j) == g.f(j, i) and g.tf(i, j) == g.tf(j, i), "symmetry")
                check(g.f(i, j) >= g.tf(i, j), "f>=tf")
                for k in range(n):
                    check(g.f(i + k, j + k) == g.f(i, j) and g.tf(i + k, j + k) == g.tf(i, j), "translation")
            for k in range(1, n):
                check(g.f_of_k[k] == g.f_of_k[n - k], "palindrome")
            for a, b, c in itertools.permutations(range(n), 3):
                if znorm(a - b, n) == 1 and znorm(a - c, n) >= 2:
                    check(g.f(b, c) <= g.tf(a, b) + g.tf(a, c), "4.6")
            check(len({g.tf_of_k[k] for k in range(2, n - 1)}) <= 1, "4.12")
    ok = not bad and count >= 1000
    assert report("friendship invariants", ok, f"{count} assertions, failures={bad[:3]}")


def test_reduction_identity():
    rng = random.Random(2024)
    mismatches = []
    for _ in range(20):
        n = rng.randint(3, 7)
        kind = rng.choice(["burau", "burau-reduced", "tym", "tym@p", "sum"])
        if kind == "burau":
            rep = build_burau(n)
        elif kind == "burau-reduced":
            rep = build_burau(n, reduced=True)
        elif kind == "tym":
            rep = build_tym_standard(n)
        elif kind == "tym@p":
            rep = build_tym_standard(n, at=F(rng.randint(2, 6)))
        else:
            rep = direct_sum(build_burau(n, reduced=True, at=2), build_chi(3, n))
        extra = RatFunc.const(rng.randint(2, 9)) if rep.field == QT else F(rng.randint(2, 9), rng.randint(1, 3))
        y = rng.choice(candidate_scalars(rep) + [extra])
        lhs = corank(tensor(build_chi(1 / y, n, rep.field), rep))
        rhs = twisted_corank_direct(rep, y)
        if lhs != rhs:
            mismatches.append((rep.name, y))
    assert report("reduction identity", not mismatches, f"20 random (rep, y) pairs, mismatches={mismatches}")


def test_irreducibility_oracle():
    dims = {n: algebra_closure_dim(build_burau(n, reduced=True, at=2).generators) for n in range(3, 7)}
    full = all(d == (n - 1) ** 2 for n, d in dims.items())
    red = direct_sum(build_burau(5, reduced=True, at=2), build_chi(3, 5))
    below = algebra_closure_dim(red.generators)
    ok = full and below < red.r ** 2
    assert report("irreducibility oracle", ok, f"closure dims {dims}; direct sum {below} < {red.r ** 2}")


def test_coprime_witness_at_scale():
    start = time.perf_counter()
    missing = [n for n in range(7, 100_001)
               if (lambda k: k is None or not (1 < k < n / 2 and gcd(k, n) == 1))(coprime_witness(n))]
    elapsed = time.perf_counter() - start
    small = {n: coprime_witness(n) for n in (3, 4, 5, 6)}
    brute = all(coprime_witness(n) == next((k for k in range(2, n) if 2 * k < n and gcd(k, n) == 1), None)
                for n in range(3, 2000))
    ok = not missing and small == {3: None, 4: None, 5: 2, 6: None} and brute and elapsed < 5
    assert report("coprime witness", ok, f"7..100000 missing={missing[:5]}, small={small}, {elapsed:.2f}s (< 5s)")


def test_certificate_reproduction():
    squeeze = nonexistence_certificate(11).narrative[1]
    assert squeeze.inequality.startswith("r-n+2")
    bad = []
    for n in range(11, 10_001):
        rep = nonexistence_certificate(n)
        chain = rep.narrative[3]
        if not (chain.lhs == n + 1 and chain.rhs == F(n, 2) + 6 and chain.lhs > chain.rhs
                and rep.narrative[1].lhs == 3 and rep.status == "certified"):
            bad.append(n)
    markers = [n for n in range(3, 200) if nonexistence_certificate(n).case_II_n10 is not None]
    golden = all(
        nonexistence_certificate(n).to_jsonl() == (GOLDEN / f"certificate_n{n}.jsonl").read_text()
        for n in (9, 10, 11, 12, 16)
    )
    ok = not bad and markers == [10] and golden and squeeze.lhs == 3
    assert report("certificate reproduction", ok,
                  f"11..10000 bad={bad[:5]}, special-case marker at {markers}, golden match={golden}")


def _orbit_rank_oracle(rep, v):
    rows, cur = [], list(v)
    for _ in range(rep.n - 2):
        rows.append(cur)
        cur = list(rep.tau.apply(cur))
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).rank()


def test_orbit_independence():
    details, ok = [], True
    for n in (5, 6, 7):
        rep = direct_sum(build_tym_standard(n, at=1), build_chi(2, n))
        diff = [F(0)] * (n + 1)
        diff[n - 2], diff[n - 1] = F(1), F(-1)
        ones = [F(1)] * n + [F(0)]
        for name, v in (("e_{n-1}-e_n", diff), ("ones", ones)):
            verdict = orbit_independence(rep, v)
            oracle = _orbit_rank_oracle(rep, v)
            agree = verdict.applicable and verdict.rank == oracle and verdict.holds == (oracle == n - 2 and not verdict.failing_windows)
            ok &= agree
            details.append(f"n={n} {name}: rank {verdict.rank}/{n - 2} oracle {oracle}")
    assert report("orbit independence", ok, "; ".join(details))


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
