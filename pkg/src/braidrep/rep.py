"""Braid group representations given by generator images.

A :class:`BraidRepresentation` stores ``C_1 .. C_{n-1}`` and derives
``T = C_1 ... C_{n-1}``, the half-twist ``D``, the redundant generator
``C_0 = T C_{n-1} T^-1`` and ``A_i = C_i - I`` for ``i`` in ``Z_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .field import QQ, QT, FieldError, RatFunc, T as TVAR, coerce, format_scalar, tag_of
from .linalg import (
    Matrix,
    Subspace,
    eigenvalues_in_field,
    image,
    intersect_all,
    kernel,
    rank,
)


class RepresentationError(ValueError):
    pass


class InconsistentRepresentationError(RepresentationError):
    """Raised when derived quantities disagree across generators."""


def znorm(m: int, n: int) -> int:
    """``||m||`` in ``Z_n``."""
    m %= n
    return min(m, n - m)


@dataclass
class Check:
    clause: str
    indices: Tuple[int, ...]
    passed: bool

    def __str__(self):
        mark = "ok" if self.passed else "FAIL"
        return f"{self.clause}{list(self.indices)}: {mark}"


@dataclass
class RelationReport:
    invertible: List[Check] = dc_field(default_factory=list)
    far_commutation: List[Check] = dc_field(default_factory=list)
    braid_triples: List[Check] = dc_field(default_factory=list)
    lemma22_checks: Dict[str, List[Check]] = dc_field(default_factory=dict)
    tau_delta_central: Optional[bool] = None

    def all_checks(self) -> List[Check]:
        out = list(self.invertible) + list(self.far_commutation) + list(self.braid_triples)
        for clause in sorted(self.lemma22_checks):
            out.extend(self.lemma22_checks[clause])
        if self.tau_delta_central is not None:
            out.append(Check("T^n=D^2", (), self.tau_delta_central))
        return out

    def failures(self) -> List[Check]:
        return [c for c in self.all_checks() if not c.passed]

    @property
    def passed(self) -> bool:
        return self.tau_delta_central is True and not self.failures()

    def summary(self) -> str:
        fails = self.failures()
        if self.passed:
            return f"all {len(self.all_checks())} relation checks pass"
        return "relation failures: " + ", ".join(str(c) for c in fails)


class BraidRepresentation:
    """Representation of ``B_n`` by invertible ``r x r`` matrices over Q or Q(t)."""

    def __init__(self, n: int, generators: Sequence[Matrix], name: str = "", check: bool = True):
        if n < 3:
            raise RepresentationError(f"need n >= 3, got {n}")
        gens = list(generators)
        if len(gens) != n - 1:
            raise RepresentationError(f"expected {n - 1} generators, got {len(gens)}")
        r = gens[0].nrows
        fld = gens[0].field
        for g in gens:
            if g.shape != (r, r):
                raise RepresentationError("generators must be square of one size")
            if g.field != fld:
                raise RepresentationError("generators must share a field")
        self.n = n
        self.r = r
        self.field = fld
        self.name = name
        self.generators: Tuple[Matrix, ...] = tuple(gens)
        if check:
            report = self.verify()
            if not report.passed:
                raise RepresentationError(f"{name or 'representation'}: {report.summary()}")

    def __repr__(self):
        label = self.name or "rep"
        return f"<{label}: B_{self.n} -> GL_{self.r}({self.field})>"

    # -- derived elements -------------------------------------------------
    @cached_property
    def identity(self) -> Matrix:
        return Matrix.identity(self.r, self.field)

    @cached_property
    def tau(self) -> Matrix:
        out = self.generators[0]
        for g in self.generators[1:]:
            out = out @ g
        return out

    @cached_property
    def tau_inv(self) -> Matrix:
        return self.tau.inverse()

    @cached_property
    def delta(self) -> Matrix:
        # (s_{n-1} ... s_1)(s_{n-1} ... s_2) ... (s_{n-1})
        out = self.identity
        for low in range(1, self.n):
            for i in range(self.n - 1, low - 1, -1):
                out = out @ self.generators[i - 1]
        return out

    @cached_property
    def delta_inv(self) -> Matrix:
        return self.delta.inverse()

    @cached_property
    def c0(self) -> Matrix:
        return self.tau @ self.generators[-1] @ self.tau_inv

    def C(self, i: int) -> Matrix:
        """Generator image ``C_i`` for ``i`` in ``Z_n`` (index 0 is materialized)."""
        i %= self.n
        return self.c0 if i == 0 else self.generators[i - 1]

    @cached_property
    def _a(self) -> Tuple[Matrix, ...]:
        return tuple(self.C(i) - self.identity for i in range(self.n))

    def A(self, i: int) -> Matrix:
        return self._a[i % self.n]

    @cached_property
    def _images(self) -> Tuple[Subspace, ...]:
        return tuple(image(a) for a in self._a)

    def image_A(self, i: int) -> Subspace:
        return self._images[i % self.n]

    def tau_power(self, m: int) -> Matrix:
        cache = self.__dict__.setdefault("_tau_powers", {0: self.identity, 1: self.tau})
        if m not in cache:
            if m < 0:
                cache[m] = self.tau_inv ** (-m)
            else:
                cache[m] = self.tau_power(m - 1) @ self.tau
        return cache[m]

    # -- relations --------------------------------------------------------
    def verify(self) -> RelationReport:
        if "_report" not in self.__dict__:
            self.__dict__["_report"] = verify_relations(self)
        return self.__dict__["_report"]

    @property
    def verified(self) -> bool:
        return "_report" in self.__dict__ and self.__dict__["_report"].passed

    def specialize(self, p) -> "BraidRepresentation":
        if self.field != QT:
            raise FieldError("representation is already over Q")
        p = Fraction(p)
        return BraidRepresentation(
            self.n,
            [g.specialize(p) for g in self.generators],
            name=f"{self.name}|t={format_scalar(p)}",
        )


def verify_relations(rep: BraidRepresentation) -> RelationReport:
    """Check the presentation over ``Z_n``, the derived identities (clauses a-f) and ``T^n = D^2``.

    Clauses: (a) ``T C_{i-1} T^-1 = C_i``; (b) ``C_i T^m = T^m C_{i-m}``;
    (c) ``T A_i T^-1 = A_{i+1}``; (d) ``D A_i D^-1 = A_{n-i}``; (e) far
    ``A_i`` commute; (f) ``A_i + A_i^2 + A_i A_{i+1} A_i`` is symmetric in the
    neighbours.  Failures are returned as data.
    """
    n = rep.n
    report = RelationReport()
    for i, g in enumerate(rep.generators, start=1):
        report.invertible.append(Check("invertible", (i,), g.is_invertible()))
    if report.failures():
        report.tau_delta_central = False
        return report

    C, A = rep.C, rep.A
    I = rep.identity
    for i in range(n):
        for j in range(i + 1, n):
            if znorm(i - j, n) >= 2:
                ok = C(i) @ C(j) == C(j) @ C(i)
                report.far_commutation.append(Check("far", (i, j), ok))
    for i in range(n):
        j = (i + 1) % n
        ok = C(i) @ C(j) @ C(i) == C(j) @ C(i) @ C(j)
        report.braid_triples.append(Check("braid", (i, j), ok))

    T, Tinv = rep.tau, rep.tau_inv
    D, Dinv = rep.delta, rep.delta_inv
    lem: Dict[str, List[Check]] = {k: [] for k in "abcdef"}
    conj = [T @ C(i - 1) @ Tinv for i in range(n)]
    for i in range(n):
        lem["a"].append(Check("2.2a", (i,), conj[i] == C(i)))
    for i in range(n):
        for m in range(n):
            Tm = rep.tau_power(m)
            lem["b"].append(Check("2.2b", (i, m), C(i) @ Tm == Tm @ C(i - m)))
    for i in range(n):
        lem["c"].append(Check("2.2c", (i,), conj[(i + 1) % n] - I == A(i + 1)))
    for i in range(1, n):
        lem["d"].append(Check("2.2d", (i,), D @ A(i) @ Dinv == A(n - i)))
    for i in range(n):
        for j in range(i + 1, n):
            if znorm(i - j, n) >= 2:
                lem["e"].append(Check("2.2e", (i, j), A(i) @ A(j) == A(j) @ A(i)))
    for i in range(n):
        j = (i + 1) % n
        a, b = A(i), A(j)
        lhs = a + a @ a + a @ b @ a
        rhs = b + b @ b + b @ a @ b
        lem["f"].append(Check("2.2f", (i, j), lhs == rhs))
    report.lemma22_checks = lem
    report.tau_delta_central = rep.tau_power(n) == D @ D
    return report


def corank(rep: BraidRepresentation) -> int:
    """``rank(A_1)``; cross-checked against every ``A_i``, ``i`` in ``Z_n``."""
    ranks = [rank(rep.A(i)) for i in range(rep.n)]
    if len(set(ranks)) != 1:
        raise InconsistentRepresentationError(f"rank(A_i) differs across i: {ranks}")
    return ranks[1]


# ---------------------------------------------------------------------------
# constructors

def _block_generator(r: int, i: int, block, field: str) -> Matrix:
    """Identity with the 2x2 ``block`` placed at rows/cols ``i-1, i`` (generator ``i``, 1-based)."""
    rows = [list(row) for row in Matrix.identity(r, field).rows]
    for a in range(2):
        for b in range(2):
            rows[i - 1 + a][i - 1 + b] = coerce(block[a][b], field)
    return Matrix._raw(rows, field)


def _maybe_specialize(rep: BraidRepresentation, at) -> BraidRepresentation:
    return rep if at is None else rep.specialize(at)


def build_burau(n: int, reduced: bool = False, at=None, check: bool = True) -> BraidRepresentation:
    """Burau representation over Q(t), optionally specialized at ``t = at``."""
    if n < 3:
        raise RepresentationError(f"Burau representation needs n >= 3, got {n}")
    t = TVAR
    if not reduced:
        block = [[1 - t, t], [1, 0]]
        gens = [_block_generator(n, i, block, QT) for i in range(1, n)]
        rep = BraidRepresentation(n, gens, name=f"burau({n})", check=check and at is None)
        return _maybe_specialize(rep, at)
    r = n - 1
    gens = []
    for i in range(1, n):
        rows = [list(row) for row in Matrix.identity(r, QT).rows]
        k = i - 1
        rows[k][k] = -t
        if k - 1 >= 0:
            rows[k][k - 1] = t
        if k + 1 < r:
            rows[k][k + 1] = RatFunc.const(1)
        gens.append(Matrix._raw(rows, QT))
    rep = BraidRepresentation(n, gens, name=f"burau-reduced({n})", check=check and at is None)
    return _maybe_specialize(rep, at)


def build_tym_standard(n: int, at=None, check: bool = True) -> BraidRepresentation:
    """Standard ``n``-dimensional representation: block ``[[0, t], [1, 0]]``."""
    if n < 3:
        raise RepresentationError(f"standard representation needs n >= 3, got {n}")
    t = TVAR
    gens = [_block_generator(n, i, [[0, t], [1, 0]], QT) for i in range(1, n)]
    rep = BraidRepresentation(n, gens, name=f"tym({n})", check=check and at is None)
    return _maybe_specialize(rep, at)


def build_chi(y, n: int, field: Optional[str] = None) -> BraidRepresentation:
    """One-dimensional representation ``sigma_i -> y``."""
    if field is None:
        field = tag_of(y)
    y = coerce(y, field)
    if not y:
        raise RepresentationError("chi(y) needs y != 0")
    gens = [Matrix._raw([[y]], field) for _ in range(n - 1)]
    return BraidRepresentation(n, gens, name=f"chi({format_scalar(y)})")


def chi_value(rep: BraidRepresentation):
    if rep.r != 1:
        raise RepresentationError("not a one-dimensional representation")
    return rep.generators[0].rows[0][0]


def tensor(chi: BraidRepresentation, rho: BraidRepresentation, check: bool = True) -> BraidRepresentation:
    """``chi (x) rho`` for a one-dimensional ``chi``: generators ``y C_i``."""
    if chi.r != 1:
        raise RepresentationError("first tensor factor must be one-dimensional")
    if chi.n != rho.n:
        raise RepresentationError("tensor factors must have the same n")
    if chi.field != rho.field:
        raise RepresentationError(f"field mismatch: {chi.field} vs {rho.field}")
    y = chi_value(chi)
    name = f"chi({format_scalar(y)})*{rho.name}"
    return BraidRepresentation(rho.n, [g.scale(y) for g in rho.generators], name=name, check=check)


def direct_sum(*reps: BraidRepresentation, check: bool = True) -> BraidRepresentation:
    """Block-diagonal sum of representations of the same ``B_n`` over one field."""
    first = reps[0]
    for rp in reps[1:]:
        if rp.n != first.n or rp.field != first.field:
            raise RepresentationError("direct summands must share n and field")
    gens = []
    for k in range(first.n - 1):
        g = first.generators[k]
        for rp in reps[1:]:
            g = g.block_diag(rp.generators[k])
        gens.append(g)
    name = "+".join(rp.name for rp in reps)
    return BraidRepresentation(first.n, gens, name=name, check=check)


def conjugate(rep: BraidRepresentation, p: Matrix, check: bool = True) -> BraidRepresentation:
    """Equivalent representation ``P C_i P^-1``."""
    pinv = p.inverse()
    return BraidRepresentation(
        rep.n, [p @ g @ pinv for g in rep.generators], name=f"conj({rep.name})", check=check
    )


# ---------------------------------------------------------------------------
# invariant-line probes

@dataclass(frozen=True)
class EigenLine:
    vector: Tuple
    y: object  # common eigenvalue of C_1..C_{n-3}; None when n < 4
    x: object  # eigenvalue of C_{n-1}
    space: Subspace  # whole joint eigenspace the line lives in


def _eigvals(rep: BraidRepresentation, i: int) -> list:
    cache = rep.__dict__.setdefault("_eigvals", {})
    if i not in cache:
        cache[i] = eigenvalues_in_field(rep.C(i))
    return cache[i]


def common_eigenlines(rep: BraidRepresentation) -> List[EigenLine]:
    """Lines invariant under ``<s_1..s_{n-3}> x <s_{n-1}>`` with field-rational eigenvalues.

    On such a line ``s_1..s_{n-3}`` act by one scalar ``y`` (they are conjugate
    inside ``B_{n-2}``), ``s_{n-1}`` by ``x``.  For each pair ``(y, x)`` the
    joint eigenspace is computed and every RREF basis vector is reported.
    """
    n = rep.n
    I = rep.identity
    low = list(range(1, n - 2))  # generators 1..n-3
    xs = _eigvals(rep, n - 1)
    ys = _eigvals(rep, 1) if low else [None]
    out = []
    for y in ys:
        spaces_y = [kernel(rep.C(i) - I.scale(y)) for i in low] if low else []
        for x in xs:
            spaces = spaces_y + [kernel(rep.C(n - 1) - I.scale(x))]
            joint = intersect_all(spaces)
            for v in joint.basis:
                out.append(EigenLine(v, y, x, joint))
    return out


def is_invariant_line(rep: BraidRepresentation, v: Sequence) -> bool:
    line = Subspace.span([v], rep.r, rep.field)
    gens = [rep.C(i) for i in range(1, rep.n - 2)] + [rep.C(rep.n - 1)]
    return all(line.is_invariant(g) for g in gens)


@dataclass
class OrbitVerdict:
    applicable: bool
    holds: Optional[bool]
    rank: Optional[int] = None
    expected: int = 0
    witness: Optional[Tuple] = None  # coefficients a_k with sum a_k T^k v = 0
    failing_windows: List[int] = dc_field(default_factory=list)
    reason: str = ""


def orbit_independence(rep: BraidRepresentation, v: Sequence) -> OrbitVerdict:
    """Check that ``v, Tv, ..., T^{n-3} v`` are independent, plus every cyclic window.

    Windows use exponents reduced mod ``n``.  The line must be invariant under
    ``<s_1..s_{n-3}> x <s_{n-1}>`` and ``r >= n + 1``; otherwise the verdict is
    not applicable.
    """
    n, r = rep.n, rep.r
    v = tuple(coerce(x, rep.field) for x in v)
    if len(v) != r:
        raise RepresentationError("vector length does not match dimension")
    if not any(v):
        raise RepresentationError("v = 0 does not span a line")
    need = n - 2
    if r < n + 1:
        return OrbitVerdict(False, None, expected=need, reason=f"dimension r={r} < n+1={n + 1}")
    if not is_invariant_line(rep, v):
        return OrbitVerdict(False, None, expected=need, reason="span{v} is not invariant")
    orbit = [v]
    for _ in range(1, n):
        orbit.append(rep.tau.apply(orbit[-1]))
    base = Matrix._raw(orbit[:need], rep.field)
    rk = rank(base)
    witness = None
    if rk < need:
        dep = kernel(base.transpose())
        witness = dep.basis[0]
    bad = []
    for i in range(n):
        window = Matrix._raw([orbit[(i + k) % n] for k in range(need)], rep.field)
        if rank(window) < need:
            bad.append(i)
    holds = rk == need and not bad
    return OrbitVerdict(True, holds, rk, need, witness, bad)


# ---------------------------------------------------------------------------
# absolute irreducibility via the generated matrix algebra

SPECIALIZATION_POINTS = (Fraction(2), Fraction(3), Fraction(5), Fraction(-2), Fraction(1, 2))


@dataclass(frozen=True)
class IrreducibilityCheck:
    certified: bool  # closure dimension r^2 somewhere => absolutely irreducible
    closure_dim: int
    full_dim: int
    point: Optional[Fraction]  # specialization used (None for reps over Q)
    caveat: str


def absolute_irreducibility(rep: BraidRepresentation, points=SPECIALIZATION_POINTS) -> IrreducibilityCheck:
    """Certify absolute irreducibility by algebra closure dimension ``r^2``.

    Q(t) representations are specialized at the given points in turn; full
    dimension at any point implies full dimension generically.  A smaller
    dimension only shows failure at the points tried.
    """
    cached = rep.__dict__.get("_irreducibility")
    if cached is not None and points is SPECIALIZATION_POINTS:
        return cached
    from .linalg import algebra_closure

    full = rep.r * rep.r
    if rep.field == QQ:
        res = algebra_closure(list(rep.generators))
        out = IrreducibilityCheck(
            res.full, res.dim, full, None,
            "closure over Q: full dimension certifies absolute irreducibility"
            if res.full else "closure below r^2: not absolutely irreducible",
        )
    else:
        best = (0, None)
        out = None
        for p in points:
            try:
                gens = [g.specialize(p) for g in rep.generators]
            except FieldError:
                continue
            res = algebra_closure(gens)
            if res.dim > best[0]:
                best = (res.dim, p)
            if res.full:
                out = IrreducibilityCheck(
                    True, res.dim, full, p,
                    f"full closure at t={format_scalar(p)} certifies generic absolute irreducibility",
                )
                break
        if out is None:
            out = IrreducibilityCheck(
                False, best[0], full, best[1],
                "closure below r^2 at every point tried: irreducibility not certified",
            )
    if points is SPECIALIZATION_POINTS:
        rep.__dict__["_irreducibility"] = out
    return out
