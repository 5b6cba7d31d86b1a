import json
import time
from fractions import Fraction as F
from math import gcd
from pathlib import Path

import pytest

from braidrep.certify import (
    coprime_witness, chain_profile, nonexistence_certificate, corank3_gate,
)
from braidrep.linalg import Subspace
from braidrep.rep import build_burau, build_tym_standard, build_chi, direct_sum, corank

GOLDEN = Path(__file__).parent / "golden"


def brute_witness(n):
    ks = [k for k in range(2, n) if 2 * k < n and gcd(k, n) == 1]
    return ks[0] if ks else None


# -- coprime witness --------------------------------------------------------------------

def test_coprime_examples():
    assert coprime_witness(7) == 2
    assert coprime_witness(12) == 5
    assert coprime_witness(6) is None
    assert coprime_witness(5) == 2
    assert coprime_witness(3) is None and coprime_witness(4) is None
    with pytest.raises(ValueError):
        coprime_witness(2)


def test_coprime_matches_brute_force():
    for n in range(3, 400):
        assert coprime_witness(n) == brute_witness(n)


def test_coprime_at_scale():
    start = time.perf_counter()
    for n in range(7, 100_001):
        k = coprime_witness(n)
        assert k is not None and 1 < k and 2 * k < n and gcd(k, n) == 1
    assert time.perf_counter() - start < 5


# -- chain profiles --------------------------------------------------------------------------

def test_chain_trivial():
    prof = chain_profile(direct_sum(build_chi(1, 5), build_chi(1, 5)))
    assert prof.dims == [0, 0, 0, 0] and prof.final_dim == 0


def test_chain_burau7():
    assert chain_profile(build_burau(7)).dims == [1, 2, 3, 4, 5, 6]


def test_chain_tym6_against_direct_spans():
    rep = build_tym_standard(6)
    prof = chain_profile(rep)
    u = Subspace.zero(6, rep.field)
    want = []
    for k in range(1, 6):
        u = Subspace.span(list(u.basis) + list(rep.image_A(k).basis), 6, rep.field)
        want.append(u.dim)
    assert prof.dims == want and prof.final_dim == want[-1]


@pytest.mark.parametrize("rep", [build_burau(6), build_tym_standard(7), build_burau(5, reduced=True),
                                 direct_sum(build_tym_standard(5, at=2), build_chi(3, 5))],
                         ids=["burau6", "tym7", "reduced5", "sum5"])
def test_chain_invariants(rep):
    prof = chain_profile(rep)
    k = corank(rep)
    assert prof.dims[0] == k
    assert all(a <= b for a, b in zip(prof.dims, prof.dims[1:]))
    assert all(b <= a + k for a, b in zip(prof.dims, prof.dims[1:]))
    assert prof.final_dim <= rep.r
    assert not prof.hypotheses["star"] and not prof.hypotheses["double star"]


# -- certificates --------------------------------------------------------------------------------

def _rows(rep):
    return {row["inequality"]: row for row in map(json.loads, rep.lines()[1:])}


def test_certificate_n11():
    rep = nonexistence_certificate(11)
    assert rep.status == "certified"
    row = _rows(rep)["n+1 <= n/2+6"]
    assert (row["lhs"], row["rhs"], row["verdict"]) == ("12", "11.5", "violated")


def test_certificate_n10_special_case():
    rep = nonexistence_certificate(10)
    assert rep.status == "certified (special case)"
    rows = _rows(rep)
    assert rows["n+1 <= j+5 (j=4)"]["verdict"] == "violated"
    assert rows["n+1 <= j+5 (j=5)"]["verdict"] == "violated"
    assert rows["n+1 <= j+5 (j=6)"]["verdict"] == "holds"
    assert "j=6" in rows["n+1 <= j+5 (j=6)"]["note"]
    assert json.loads(rep.lines()[0])["special_case"] == "j=6"
    assert rep.case_II_n10["j_range"] == [4, 6]


def test_certificate_n9_out_of_range():
    rep = nonexistence_certificate(9)
    assert rep.status == "out of range"
    assert json.loads(rep.lines()[0])["special_case"] is None


def test_certificate_arithmetic_over_range():
    for n in range(11, 10_001):
        rep = nonexistence_certificate(n)
        assert rep.status == "certified" and rep.case_II_n10 is None
        squeeze = rep.narrative[1]
        assert squeeze.lhs == 3 == (n + 1) - n + 2
        chain = rep.narrative[3]
        assert chain.lhs == n + 1 and chain.rhs == F(n, 2) + 6 and chain.verdict == "violated"
    specials = [n for n in range(3, 60) if nonexistence_certificate(n).case_II_n10 is not None]
    assert specials == [10]


def test_certificate_no_floats():
    for n in (9, 10, 11, 16, 33):
        for item in nonexistence_certificate(n).narrative:
            assert isinstance(item.lhs, F) and isinstance(item.rhs, F)


@pytest.mark.parametrize("n", [9, 10, 11, 12, 16])
def test_golden_narratives(n):
    want = (GOLDEN / f"certificate_n{n}.jsonl").read_text()
    assert nonexistence_certificate(n).to_jsonl() == want
    assert nonexistence_certificate(n).to_jsonl() == want  # pure function of n


# -- corank-3 gate -------------------------------------------------------------------------------

def test_gate_examples():
    assert corank3_gate(build_tym_standard(10)).verdict == "pass"
    assert corank3_gate(build_burau(12, reduced=True)).verdict == "pass"
    assert corank3_gate(build_tym_standard(6)).verdict == "out-of-range"


def test_gate_block_sum_with_rank_three():
    rep = direct_sum(build_tym_standard(10, at=2), build_burau(10, reduced=True, at=2))
    g = corank3_gate(rep)
    assert g.corank == 3 and g.verdict == "pass"
    # oracle: block-diagonal algebra has dimension at most 10^2 + 9^2
    assert g.closure_dim <= 100 + 81 < g.full_dim == 361


@pytest.mark.parametrize("n", [10, 11])
def test_gate_passes_on_constructor_suite(n):
    for rep in (build_burau(n), build_burau(n, reduced=True), build_tym_standard(n), build_chi(2, n)):
        assert corank3_gate(rep).verdict == "pass"
