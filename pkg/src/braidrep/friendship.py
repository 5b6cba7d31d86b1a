"""Friendship graphs of a representation and the checkable lemma catalog.

Vertices are ``A_0 .. A_{n-1}``; ``f(i, j) = dim(Im A_i ∩ Im A_j)`` and
``tf(i, j)`` is ``dim Im(A + A^2 + A B A)`` for neighbours, ``dim Im(A B)``
otherwise.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Tuple

from .linalg import Subspace, intersect, intersect_all, rank
from .rep import BraidRepresentation, absolute_irreducibility, corank, znorm

DISCONNECTED = "disconnected"
CASE_I = "case_I"
CASE_II = "case_II"
MIXED = "mixed"


def max_workers() -> int:
    """Parallelism cap from ``BRAIDREP_THREADS`` (default 1: serial)."""
    try:
        return max(1, int(os.environ.get("BRAIDREP_THREADS", "1")))
    except ValueError:
        return 1


def _check_pair(rep: BraidRepresentation, i: int, j: int):
    if (i - j) % rep.n == 0:
        raise ValueError(f"f/tf need distinct vertices, got {i} and {j}")


def f_space(rep: BraidRepresentation, i: int, j: int) -> Subspace:
    _check_pair(rep, i, j)
    return intersect(rep.image_A(i), rep.image_A(j))


def f_pair(rep: BraidRepresentation, i: int, j: int) -> int:
    return f_space(rep, i, j).dim


def tf_pair(rep: BraidRepresentation, i: int, j: int) -> int:
    _check_pair(rep, i, j)
    a, b = rep.A(i), rep.A(j)
    if znorm(i - j, rep.n) == 1:
        return rank(a + a @ a + a @ b @ a)
    return rank(a @ b)


def _pair_values(args):
    rep, i, j = args
    return i, j, f_pair(rep, i, j), tf_pair(rep, i, j)


@dataclass
class FriendshipGraph:
    n: int
    f_table: List[List[Optional[int]]]
    tf_table: List[List[Optional[int]]]
    f_of_k: Dict[int, int]
    tf_of_k: Dict[int, int]
    classification: str
    violations: List[str] = dc_field(default_factory=list)

    def f(self, i: int, j: int) -> int:
        return self.f_table[i % self.n][j % self.n]

    def tf(self, i: int, j: int) -> int:
        return self.tf_table[i % self.n][j % self.n]

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.f_table[i][j] >= 1
        ]

    @property
    def consistent(self) -> bool:
        return not self.violations


def classify(n: int, f_of_k: Dict[int, int]) -> str:
    if all(v == 0 for v in f_of_k.values()):
        return DISCONNECTED
    if f_of_k[1] >= 1:
        return CASE_I
    if all(f_of_k[k] >= 1 for k in range(2, n - 1)):
        return CASE_II
    return MIXED


def build_graph(rep: BraidRepresentation) -> FriendshipGraph:
    """Fill the f/tf tables over ``Z_n``, derive distance profiles and classify."""
    cached = rep.__dict__.get("_graph")
    if cached is not None:
        return cached
    n = rep.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    workers = min(max_workers(), len(pairs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_pair_values, [(rep, i, j) for i, j in pairs], chunksize=4))
    else:
        results = [_pair_values((rep, i, j)) for i, j in pairs]
    f = [[None] * n for _ in range(n)]
    tf = [[None] * n for _ in range(n)]
    for i, j, fv, tv in results:
        f[i][j] = fv
        tf[i][j] = tv
    violations = []
    # fill the lower triangle independently so symmetry is actually tested
    for i, j in pairs:
        f[j][i] = f_pair(rep, j, i)
        tf[j][i] = tf_pair(rep, j, i)
        if f[j][i] != f[i][j]:
            violations.append(f"f not symmetric at ({i},{j})")
        if tf[j][i] != tf[i][j]:
            violations.append(f"tf not symmetric at ({i},{j})")
    for i, j in pairs:
        if f[i][j] < tf[i][j]:
            violations.append(f"f < tf at ({i},{j})")
    for i, j in itertools.permutations(range(n), 2):
        k = (j - i) % n
        if f[i][j] != f[1][(1 + k) % n] or tf[i][j] != tf[1][(1 + k) % n]:
            violations.append(f"translation invariance fails at ({i},{j})")
    f_of_k = {k: f[1][(1 + k) % n] for k in range(1, n)}
    tf_of_k = {k: tf[1][(1 + k) % n] for k in range(1, n)}
    cls = classify(n, f_of_k)
    if cls == MIXED:
        violations.append("classification outside the disconnected / case I / case II trichotomy")
    graph = FriendshipGraph(n, f, tf, f_of_k, tf_of_k, cls, violations)
    rep.__dict__["_graph"] = graph
    return graph


def diagonals(rep: BraidRepresentation) -> Dict[Tuple[int, int], Tuple]:
    """``v_{i,j}`` for non-neighbours with one-dimensional ``Im A_i ∩ Im A_j``.

    The representative is the RREF basis row (leading coefficient 1); both
    ``(i, j)`` and ``(j, i)`` keys map to it.
    """
    n = rep.n
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            if znorm(i - j, n) < 2:
                continue
            sp = f_space(rep, i, j)
            if sp.dim == 1:
                out[(i, j)] = out[(j, i)] = sp.basis[0]
    return out


# ---------------------------------------------------------------------------
# lemma catalog

@dataclass
class LemmaVerdict:
    lemma_id: str
    applicable: bool
    holds: Optional[bool]
    witness: Dict = dc_field(default_factory=dict)
    hypotheses: Dict = dc_field(default_factory=dict)
    caveat: str = ""
    assertions: int = 0

    def __post_init__(self):
        if not self.applicable:
            self.holds = None

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not applicable"
        return "holds" if self.holds else "FAILS"


class UnknownLemmaError(KeyError):
    pass


class _Ctx:
    """Lazily computed facts shared by the checkers."""

    def __init__(self, rep: BraidRepresentation, irreducible: Optional[bool]):
        self.rep = rep
        self.n = rep.n
        self._irreducible = irreducible
        self.caveat = ""

    @property
    def graph(self) -> FriendshipGraph:
        return build_graph(self.rep)

    @property
    def k(self) -> int:
        return corank(self.rep)

    def irreducible(self) -> bool:
        if self._irreducible is None:
            chk = absolute_irreducibility(self.rep)
            self._irreducible = chk.certified
            self.caveat = chk.caveat
        elif not self.caveat:
            self.caveat = "irreducibility supplied by caller"
        return self._irreducible

    def big(self) -> bool:
        return self.rep.r >= self.n + 1


def _v(applicable, lemma_id, hyp, holds=None, witness=None, ctx=None, count=0):
    return LemmaVerdict(
        lemma_id, applicable, holds if applicable else None, witness or {}, hyp,
        ctx.caveat if ctx is not None else "", count,
    )


def _lemma_4_5(ctx: _Ctx) -> LemmaVerdict:
    g, n = ctx.graph, ctx.n
    bad = [(i, j) for i in range(n) for j in range(n) if i != j and g.f(i, j) < g.tf(i, j)]
    return _v(True, "4.5", {}, not bad, {"pairs": bad}, count=n * (n - 1))


def _lemma_4_6(ctx: _Ctx) -> LemmaVerdict:
    g, n = ctx.graph, ctx.n
    bad, count = [], 0
    for a, b, c in itertools.permutations(range(n), 3):
        if znorm(a - b, n) == 1 and znorm(a - c, n) >= 2:
            count += 1
            if g.f(b, c) > g.tf(a, b) + g.tf(a, c):
                bad.append((a, b, c))
    return _v(True, "4.6", {}, not bad, {"triples": bad}, count=count)


def _lemma_4_7(ctx: _Ctx) -> LemmaVerdict:
    g, n = ctx.graph, ctx.n
    bad, count = [], 0
    for i, j in itertools.permutations(range(n), 2):
        for k in range(n):
            count += 2
            if g.f(i, j) != g.f(i + k, j + k) or g.tf(i, j) != g.tf(i + k, j + k):
                bad.append((i, j, k))
    return _v(True, "4.7", {}, not bad, {"shifts": bad}, count=count)


def _lemma_4_12(ctx: _Ctx) -> LemmaVerdict:
    g, n = ctx.graph, ctx.n
    values = {k: g.tf_of_k[k] for k in range(2, n - 1)}
    holds = len(set(values.values())) <= 1
    return _v(True, "4.12", {}, holds, {} if holds else {"tf": values}, count=len(values))


def _lemma_4_13(ctx: _Ctx) -> LemmaVerdict:
    g, n = ctx.graph, ctx.n
    hyp = {"f(1)=0": g.f_of_k[1] == 0}
    if not hyp["f(1)=0"]:
        return _v(False, "4.13", hyp)
    values = [g.f_of_k[k] for k in range(2, n - 1)] + [g.tf_of_k[k] for k in range(2, n - 1)]
    holds = len(set(values)) <= 1
    witness = {} if holds else {
        "f": {k: g.f_of_k[k] for k in range(2, n - 1)},
        "tf": {k: g.tf_of_k[k] for k in range(2, n - 1)},
    }
    return _v(True, "4.13", hyp, holds, witness, count=len(values))


def _lemma_4_14(ctx: _Ctx) -> LemmaVerdict:
    rep, n, k = ctx.rep, ctx.n, ctx.k
    hyp = {"n>=5": n >= 5, "r>=n+1": ctx.big(), "3<=k<=r-1": 3 <= k <= rep.r - 1}
    if not all(hyp.values()):
        return _v(False, "4.14", hyp)
    hyp["irreducible"] = ctx.irreducible()
    if not hyp["irreducible"]:
        return _v(False, "4.14", hyp, ctx=ctx)
    g = ctx.graph
    bad = [j for j in range(1, n) if g.f_of_k[j] >= k]
    return _v(True, "4.14", hyp, not bad, {"distances": bad}, ctx, count=n - 1)


def _lemma_4_16(ctx: _Ctx) -> LemmaVerdict:
    rep, n = ctx.rep, ctx.n
    spaces = {}
    for i, j in itertools.combinations(range(n), 2):
        spaces[(i, j)] = f_space(rep, i, j)
    bad, count = [], 0
    for i, j, k in itertools.combinations(range(n), 3):
        ij, ik, jk = spaces[(i, j)], spaces[(i, k)], spaces[(j, k)]
        if not (ij.dim == ik.dim == jk.dim == 1):
            continue
        count += 1
        if (ij == ik or ij == jk or ik == jk) and not (ij == ik == jk):
            bad.append((i, j, k))
    return _v(True, "4.16", {}, not bad, {"triples": bad}, count=count)


def _lemma_5_1_1(ctx: _Ctx) -> LemmaVerdict:
    rep, n, k = ctx.rep, ctx.n, ctx.k
    hyp = {"n>=5": n >= 5, "r>=n+1": ctx.big(), "3<=k<=r-1": 3 <= k <= rep.r - 1}
    if not all(hyp.values()):
        return _v(False, "5.1.1", hyp)

    def run(i, length):
        return intersect_all([rep.image_A(i + m) for m in range(length)])

    js = [j for j in range(2, n - 2) if run(1, j).dim > 0]
    hyp["some j in 2..n-3 with nonzero run"] = bool(js)
    if not js:
        return _v(False, "5.1.1", hyp)
    hyp["irreducible"] = ctx.irreducible()
    if not hyp["irreducible"]:
        return _v(False, "5.1.1", hyp, ctx=ctx)
    bad, count = [], 0
    for j in js:
        for i in range(n):
            count += 1
            if run(i, j) == run(i + 1, j):
                bad.append((j, i))
    return _v(True, "5.1.1", hyp, not bad, {"(j,i)": bad}, ctx, count)


def _lemma_5_1_2(ctx: _Ctx) -> LemmaVerdict:
    rep, n = ctx.rep, ctx.n
    hyp = {"k=3": ctx.k == 3}
    if hyp["k=3"]:
        hyp["f(i,i+1)=2 for all i"] = all(f_pair(rep, i, i + 1) == 2 for i in range(n))
    if not all(hyp.values()):
        return _v(False, "5.1.2", hyp)
    bad = [
        i for i in range(n)
        if intersect_all([rep.image_A(i), rep.image_A(i + 1), rep.image_A(i + 2)]).dim == 0
    ]
    return _v(True, "5.1.2", hyp, not bad, {"i": bad}, count=n)


def _lemma_5_1_6(ctx: _Ctx) -> LemmaVerdict:
    rep, n = ctx.rep, ctx.n
    hyp = {"n>=5": n >= 5, "r>=n+1": ctx.big()}
    if all(hyp.values()):
        hyp["f(i,i+1)=1 for all i"] = all(f_pair(rep, i, i + 1) == 1 for i in range(n))
    if not all(hyp.values()):
        return _v(False, "5.1.6", hyp)
    hyp["irreducible"] = ctx.irreducible()
    if not hyp["irreducible"]:
        return _v(False, "5.1.6", hyp, ctx=ctx)
    x = [f_space(rep, i, i + 1).basis[0] for i in range(n)]
    bad = [
        i for i in range(n)
        if Subspace.span([x[i], x[(i + 1) % n]], rep.r, rep.field).dim < 2
    ]
    return _v(True, "5.1.6", hyp, not bad, {"i": bad}, ctx, count=n)


def _lemma_5_2_2(ctx: _Ctx) -> LemmaVerdict:
    rep, n = ctx.rep, ctx.n
    hyp = {"n>=5": n >= 5}
    if hyp["n>=5"]:
        g = ctx.graph
        hyp["f(1)=0"] = g.f_of_k[1] == 0
        hyp["f(i,j)=1 for ||i-j||>=2"] = all(g.f_of_k[k] == 1 for k in range(2, n - 1))
    if not all(hyp.values()):
        return _v(False, "5.2.2", hyp)
    diag = diagonals(rep)
    bad, count = [], 0
    for i in range(n):
        for j in range(n):
            if (j - i) % n in (n - 2, n - 1, 0, 1):
                continue
            count += 1
            pair = [diag[(i, j)], diag[(i, (j + 1) % n)]]
            if Subspace.span(pair, rep.r, rep.field).dim < 2:
                bad.append((i, j))
    return _v(True, "5.2.2", hyp, not bad, {"(i,j)": bad}, count=count)


CATALOG: Dict[str, Callable[[_Ctx], LemmaVerdict]] = {
    "4.5": _lemma_4_5,
    "4.6": _lemma_4_6,
    "4.7": _lemma_4_7,
    "4.12": _lemma_4_12,
    "4.13": _lemma_4_13,
    "4.14": _lemma_4_14,
    "4.16": _lemma_4_16,
    "5.1.1": _lemma_5_1_1,
    "5.1.2": _lemma_5_1_2,
    "5.1.6": _lemma_5_1_6,
    "5.2.2": _lemma_5_2_2,
}
ALIASES = {"5.1.6(1)": "5.1.6"}


def check_lemma(rep: BraidRepresentation, lemma_id: str, irreducible: Optional[bool] = None) -> LemmaVerdict:
    """Evaluate one catalog entry on a concrete representation.

    ``irreducible`` overrides the irreducibility hypothesis; when omitted it is
    decided by the algebra-closure certificate (absolute irreducibility only).
    """
    key = ALIASES.get(lemma_id, lemma_id)
    if key not in CATALOG:
        raise UnknownLemmaError(lemma_id)
    verdict = CATALOG[key](_Ctx(rep, irreducible))
    verdict.lemma_id = lemma_id
    return verdict


def check_all(rep: BraidRepresentation, ids=None, irreducible: Optional[bool] = None) -> List[LemmaVerdict]:
    ids = list(CATALOG) if ids is None else ids
    return [check_lemma(rep, lid, irreducible) for lid in ids]
