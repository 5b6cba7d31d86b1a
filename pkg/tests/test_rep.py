from fractions import Fraction as F

import pytest
import sympy

from braidrep.field import QQ, QT, T, RatFunc
from braidrep.linalg import Matrix, rank
from braidrep.rep import (
    BraidRepresentation, RepresentationError, verify_relations, corank,
    build_burau, build_tym_standard, build_chi, tensor, direct_sum, conjugate,
    common_eigenlines, orbit_independence, is_invariant_line, absolute_irreducibility, znorm,
)
from conftest import rand_invertible

FAMILIES = {
    "burau": lambda n: build_burau(n),
    "burau-reduced": lambda n: build_burau(n, reduced=True),
    "tym": build_tym_standard,
    "chi": lambda n: build_chi(F(3, 2), n),
}


def word(rep, letters):
    out = rep.identity
    for i in letters:
        out = out @ rep.C(i)
    return out


# -- constructors ----------------------------------------------------------------

def test_burau3_block_and_braid_relation():
    rep = build_burau(3)
    o, z = RatFunc.const(1), RatFunc.const(0)
    assert rep.C(1) == Matrix([[1 - T, T, z], [o, z, z], [z, z, o]], QT)
    c1, c2 = rep.C(1), rep.C(2)
    # oracle: plain products of the displayed matrices
    assert c1 @ c2 @ c1 == c2 @ c1 @ c2


@pytest.mark.parametrize("ctor", [build_burau, build_tym_standard, lambda n: build_burau(n, reduced=True)])
def test_n_below_three_rejected(ctor):
    with pytest.raises(RepresentationError):
        ctor(2)


def test_reduced_burau_at_one_has_corank_one():
    rep = build_burau(4, reduced=True, at=1)
    assert corank(rep) == 1 == rank(rep.C(1) - rep.identity)


def test_tym_coranks():
    assert corank(build_tym_standard(5)) == 2
    blk = Matrix([[-1, T], [1, -1]], QT)
    assert rank(blk) == 2
    assert corank(build_tym_standard(5, at=1)) == 1
    assert corank(build_tym_standard(7)) == 2


def test_tym3_center():
    rep = build_tym_standard(3)
    assert rep.tau_power(3) == rep.delta @ rep.delta
    assert verify_relations(rep).tau_delta_central


def test_chi_examples():
    assert corank(build_chi(1, 5)) == 0
    rep = build_chi(2, 4)
    # tau has n-1 letters, delta has n(n-1)/2 letters
    assert rep.tau == Matrix([[8]]) and rep.delta == Matrix([[2 ** 6]])
    assert rep.tau_power(4) == rep.delta @ rep.delta == Matrix([[2 ** 12]])
    assert corank(build_chi(2, 5)) == 1
    with pytest.raises((RepresentationError, ValueError)):
        build_chi(0, 4)


def test_delta_is_the_displayed_word():
    for n in (3, 4, 5):
        rep = build_burau(n)
        letters = [i for s in range(1, n) for i in range(n - 1, s - 1, -1)]
        assert rep.delta == word(rep, letters)
        assert rep.tau == word(rep, range(1, n))


def test_c0_conjugation():
    rep = build_burau(5)
    assert rep.C(0) == rep.tau @ rep.C(4) @ rep.tau_inv
    assert rep.C(5) == rep.C(0) and rep.C(-1) == rep.C(4)


# -- twists and sums -------------------------------------------------------------

def test_tensor_identities():
    rho = build_burau(4)
    assert tensor(build_chi(1, 4, QT), rho).generators == rho.generators
    y = 3 * T + 1
    back = tensor(build_chi(y, 4), tensor(build_chi(1 / y, 4), rho))
    assert back.generators == rho.generators


def test_tensor_field_and_size_checks():
    with pytest.raises(RepresentationError):
        tensor(build_chi(2, 5), build_burau(4))
    with pytest.raises(RepresentationError):
        tensor(build_burau(3), build_burau(3))


def test_twisted_tym10_corank():
    rep = tensor(build_chi(2, 10, QT), build_tym_standard(10))
    assert corank(rep) >= 8
    # oracle: 2 C_1 - I computed directly
    assert corank(rep) == rank(build_tym_standard(10).C(1).scale(2) - Matrix.identity(10, QT))


def test_direct_sum_blocks():
    rep = direct_sum(build_chi(2, 5), build_chi(5, 5))
    assert rep.r == 2 and rep.C(1) == Matrix.diag([F(2), F(5)])


# -- relation checker ----------------------------------------------------------------

def test_burau4_all_pass_against_independent_script():
    rep = build_burau(4)
    rpt = verify_relations(rep)
    assert rpt.passed and not rpt.failures()
    c = {i: rep.C(i) for i in range(1, 4)}
    assert c[1] @ c[3] == c[3] @ c[1]
    for i in (1, 2):
        assert c[i] @ c[i + 1] @ c[i] == c[i + 1] @ c[i] @ c[i + 1]


def test_perturbed_generator_fails_braid_triple_at_one():
    good = build_burau(4)
    rows = [list(r) for r in good.C(1).rows]
    rows[0][0] = rows[0][0] + 1
    bad = BraidRepresentation(4, [Matrix(rows, QT)] + list(good.generators[1:]), check=False)
    rpt = verify_relations(bad)
    assert not rpt.passed
    failing = [c.indices for c in rpt.braid_triples if not c.passed]
    assert (1,) in failing or any(ix and ix[0] == 1 for ix in failing)
    # oracle: recompute both sides directly
    c1, c2 = bad.C(1), bad.C(2)
    assert c1 @ c2 @ c1 != c2 @ c1 @ c2
    with pytest.raises(RepresentationError):
        BraidRepresentation(4, bad.generators)


def test_n3_far_commutation_is_vacuous():
    rpt = verify_relations(build_burau(3))
    assert rpt.far_commutation == [] and rpt.passed
    assert all(znorm(i - j, 3) <= 1 for i in range(3) for j in range(3))


@pytest.mark.parametrize("family", sorted(FAMILIES))
@pytest.mark.parametrize("n", range(3, 9))
def test_relation_suite(family, n):
    rep = FAMILIES[family](n)
    rpt = verify_relations(rep)
    assert rpt.passed, rpt.failures()
    assert rep.tau_power(n) == rep.delta @ rep.delta
    for i in range(1, n):
        assert rep.delta @ rep.A(i) @ rep.delta_inv == rep.A(n - i)
    assert set(rpt.lemma22_checks) == set("abcdef")


def test_corank_requires_consistency():
    # generators not conjugate: corank differs between i
    gens = [Matrix.diag([F(2), F(1)]), Matrix.diag([F(1), F(1)])]
    rep = BraidRepresentation(3, gens, check=False)
    assert not rep.verify().passed


# -- invariance properties ---------------------------------------------------------------

def test_corank_invariant_under_conjugation_and_trivial_twist(rng):
    for _ in range(12):
        n = rng.randint(3, 6)
        base = rng.choice([build_burau(n, at=F(rng.randint(2, 5))),
                           build_tym_standard(n, at=F(rng.randint(2, 5))),
                           build_burau(n, reduced=True, at=F(-rng.randint(2, 5)))])
        p = rand_invertible(rng, base.r)
        assert corank(conjugate(base, p)) == corank(base)
        assert corank(tensor(build_chi(1, n), base)) == corank(base)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_specialization_commutes(n):
    for p in (F(2), F(-1, 3), F(7)):
        for reduced in (False, True):
            a = build_burau(n, reduced=reduced, at=p)
            b = build_burau(n, reduced=reduced).specialize(p)
            assert a.generators == b.generators and a.field == QQ


def test_specialization_at_pole_aborts():
    y = 1 / (T - 1)
    rep = tensor(build_chi(y, 3), build_burau(3))
    with pytest.raises(Exception):
        rep.specialize(1)


# -- eigenlines and orbit independence -------------------------------------------------------

def test_common_eigenlines_examples():
    (line,) = common_eigenlines(build_chi(3, 6))
    assert line.y == 3 and line.x == 3
    got = {(l.y, l.x) for l in common_eigenlines(direct_sum(build_chi(2, 5), build_chi(5, 5)))}
    assert got == {(2, 2), (5, 5)}


def test_common_eigenlines_tym6_over_qt_is_empty():
    # oracle: the only in-field eigenvalue of C_i is 1, and (C_i - I) v = 0 forces
    # v_i = v_{i+1} = 0; C_1..C_3 and C_5 together kill every coordinate
    rep = build_tym_standard(6)
    blk = Matrix([[-1, T], [1, -1]], QT)
    assert rank(blk) == 2
    assert common_eigenlines(rep) == []
    # at t=1 the permutation representation has plenty
    assert common_eigenlines(build_tym_standard(6, at=1))


def test_eigenlines_are_invariant():
    rep = direct_sum(build_tym_standard(5, at=1), build_chi(2, 5))
    lines = common_eigenlines(rep)
    assert lines
    for l in lines:
        assert is_invariant_line(rep, l.vector)
        assert rep.C(4).apply(l.vector) == tuple(l.x * c for c in l.vector)


def test_orbit_independence_preconditions():
    with pytest.raises(RepresentationError):
        orbit_independence(build_chi(2, 5), [0])
    v = orbit_independence(build_chi(2, 5), [1])
    assert not v.applicable and v.holds is None


def _oracle_rank(rep, v):
    n = rep.n
    rows, cur = [], list(v)
    for _ in range(n - 2):
        rows.append(cur)
        cur = list(rep.tau.apply(cur))
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    return m.rank()


def test_orbit_on_character_sum():
    # n+1 distinct characters: every coordinate line is invariant, T is diagonal,
    # so each orbit is one-dimensional and independence fails for n >= 4
    n = 5
    rep = direct_sum(*[build_chi(k, n) for k in range(2, n + 3)])
    for j in range(rep.r):
        v = [F(int(k == j)) for k in range(rep.r)]
        verdict = orbit_independence(rep, v)
        assert verdict.applicable and verdict.holds is False
        assert verdict.rank == _oracle_rank(rep, v) == 1
        combo = sum(w * rep.tau_power(k).apply(v)[j] for k, w in enumerate(verdict.witness))
        assert combo == 0


@pytest.mark.parametrize("n", [5, 6, 7])
def test_orbit_on_permutation_plus_character(n):
    rep = direct_sum(build_tym_standard(n, at=1), build_chi(2, n))
    r = rep.r
    v = [F(0)] * r
    v[n - 2], v[n - 1] = F(1), F(-1)
    verdict = orbit_independence(rep, v)
    assert verdict.applicable and verdict.holds == (_oracle_rank(rep, v) == n - 2)
    ones = [F(1)] * n + [F(0)]
    verdict = orbit_independence(rep, ones)
    assert verdict.applicable and verdict.rank == _oracle_rank(rep, ones) == 1 and not verdict.holds


# -- irreducibility ------------------------------------------------------------------------------

def test_absolute_irreducibility():
    chk = absolute_irreducibility(build_burau(4, reduced=True))
    assert chk.certified and chk.closure_dim == 9
    chk = absolute_irreducibility(build_burau(4))  # unreduced Burau is reducible
    assert not chk.certified and chk.closure_dim < 16
    chk = absolute_irreducibility(direct_sum(build_chi(2, 4), build_chi(3, 4)))
    assert not chk.certified
