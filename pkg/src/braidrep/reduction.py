"""Scalar twists that minimise corank.

Twisting by ``chi(1/y)`` turns ``A_i`` into ``C_i / y - I``, so the corank of
the twisted representation equals ``rank(C_1 - y I)`` of the original.  The
search runs over eigenvalues of ``C_1`` that lie in the ambient field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

from .field import coerce, format_scalar, one
from .linalg import eigenvalues_in_field, rank
from .rep import BraidRepresentation, build_chi, corank, tensor


class NoCandidateError(LookupError):
    pass


@dataclass
class ReductionOutcome:
    y: object
    reduced: BraidRepresentation
    corank_before: int
    corank_after: int
    bound: Optional[int]  # r - n + 2, None outside r >= n + 1
    bound_check: str  # "holds", "violated" or "out-of-regime"
    hypotheses: Dict[str, bool] = dc_field(default_factory=dict)

    def summary(self) -> str:
        return (
            f"y={format_scalar(self.y)} corank {self.corank_before} -> {self.corank_after}"
            f" (bound r-n+2: {self.bound_check})"
        )


def _sort_key(y):
    text = format_scalar(y)
    return (len(text), text)


def candidate_scalars(rep: BraidRepresentation) -> list:
    """Distinct eigenvalues of ``C_1`` in the ambient field, ``1`` first if present."""
    cache = rep.__dict__.get("_candidates")
    if cache is None:
        roots = [y for y in eigenvalues_in_field(rep.C(1)) if y]
        ident = one(rep.field)
        roots.sort(key=lambda y: (y != ident, _sort_key(y)))
        cache = rep.__dict__["_candidates"] = roots
    return list(cache)


def reduce(rep: BraidRepresentation, y) -> ReductionOutcome:
    """Twist ``rep`` by ``chi(1/y)`` and compare coranks."""
    y = coerce(y, rep.field)
    if not y:
        raise ValueError("reduction needs y != 0")
    twisted = tensor(build_chi(1 / y, rep.n, rep.field), rep)
    after = corank(twisted)
    n, r = rep.n, rep.r
    hyp = {"n>=10": n >= 10, "n+1<=r<=2n-9": n + 1 <= r <= 2 * n - 9}
    if r >= n + 1:
        bound = r - n + 2
        check = "holds" if after <= bound else "violated"
    else:
        bound, check = None, "out-of-regime"
    return ReductionOutcome(y, twisted, corank(rep), after, bound, check, hyp)


def twisted_corank_direct(rep: BraidRepresentation, y) -> int:
    """``rank(C_1 - y I)`` computed without building the twist."""
    y = coerce(y, rep.field)
    return rank(rep.C(1) - rep.identity.scale(y))


def best_reduction(rep: BraidRepresentation) -> ReductionOutcome:
    """Outcome with minimal twisted corank; ties prefer ``y = 1`` then candidate order."""
    cands = candidate_scalars(rep)
    if not cands:
        raise NoCandidateError(f"{rep.name}: C_1 has no eigenvalue in {rep.field}")
    best = None
    for y in cands:
        out = reduce(rep, y)
        if best is None or out.corank_after < best.corank_after:
            best = out
    return best


def eigen_multiplicity_profile(rep: BraidRepresentation) -> List[tuple]:
    """``(y, r - rank(C_1 - y I))`` for each in-field eigenvalue ``y``."""
    return [(y, rep.r - twisted_corank_direct(rep, y)) for y in candidate_scalars(rep)]
