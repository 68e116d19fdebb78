"""Point-level difference hierarchy on the canonical compact countable spaces.

Addresses name points of a concretely presented space: the empty path is the
basepoint of the outermost gluing, and ``(n,) + rest`` is the point ``rest``
inside the n-th glued member (or the n-th finite summand).

Sets are intensional: the canonical rank-parity sets are decided from the
CB-rank of a point, difference witnesses are families of rank-threshold open
sets, and reductions are combinator terms denoting continuous maps.  The
reduction models present the gluing levels along strictly increasing *odd*
cofinal sequences, which makes the stage-to-stage complement identity hold
uniformly; the resulting spaces are homeomorphic to the canonical ones since
compact countable spaces are determined by their CB-type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence, Union

from .errors import DomainError
from .ordinals import (
    ZERO,
    Ordinal,
    format_ordinal,
    is_limit,
    is_successor,
    odd_fundamental_sequence,
    of,
    parity,
    pred,
    successor,
)
from .spaces import (
    Constant,
    Glue,
    K,
    POINT,
    Point,
    SpaceTerm,
    SumFin,
    SumOmega,
    cb_rank,
    is_compact,
    is_countable,
    member,
    normalize,
    _spec_bstar,
)

PointAddress = tuple[int, ...]


def _require_compact_countable(t: SpaceTerm) -> SpaceTerm:
    t = normalize(t)
    if not (is_compact(t) and is_countable(t)):
        raise DomainError("addresses are defined on compact countable terms")
    return t


# -- addresses on space terms ----------------------------------------------------


def enumerate_points(t: SpaceTerm, depth: int) -> Iterator[PointAddress]:
    """All addresses with path length and member indices bounded by depth."""
    yield from _enum(_require_compact_countable(t), depth, depth)


def _enum(t: SpaceTerm, index_bound: int, budget: int) -> Iterator[PointAddress]:
    match t:
        case Point():
            yield ()
        case SumFin(parts):
            for i, part in enumerate(parts[: index_bound + 1]):
                if budget >= 1:
                    for rest in _enum(part, index_bound, budget - 1):
                        yield (i,) + rest
        case Glue(spec):
            yield ()
            if budget >= 1:
                for n in range(index_bound + 1):
                    sub = normalize(member(spec, n))
                    for rest in _enum(sub, index_bound, budget - 1):
                        yield (n,) + rest
        case _:
            raise DomainError(f"cannot enumerate points of {t!r}")


def point_cb_rank(t: SpaceTerm, p: PointAddress) -> Ordinal:
    """CB-rank of the addressed point inside the whole space."""
    t = _require_compact_countable(t)
    return _point_rank(t, p)


def _point_rank(t: SpaceTerm, p: PointAddress) -> Ordinal:
    match t:
        case Point():
            if p:
                raise DomainError(f"invalid address {p!r} in a single point")
            return ZERO
        case SumFin(parts):
            if not p or p[0] >= len(parts):
                raise DomainError(f"invalid address {p!r} in a finite sum")
            return _point_rank(normalize(parts[p[0]]), p[1:])
        case Glue(spec):
            if not p:
                bstar = _spec_bstar(spec)
                assert bstar is not None  # countable members
                return bstar
            return _point_rank(normalize(member(spec, p[0])), p[1:])
    raise DomainError(f"cannot rank points of {t!r}")


# -- rank-parity sets -------------------------------------------------------------

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class RankSet:
    """Points of a compact countable space whose CB-rank has a given parity."""

    space: SpaceTerm
    parity_target: int  # EVEN or ODD

    def __post_init__(self):
        _require_compact_countable(self.space)
        if self.parity_target not in (EVEN, ODD):
            raise DomainError("parity_target must be EVEN (0) or ODD (1)")

    def contains(self, p: PointAddress) -> bool:
        return parity(point_cb_rank(self.space, p)) == self.parity_target


def canonical_rank_set(alpha: Ordinal) -> RankSet:
    """The complete difference-class witness on K(alpha+1): points whose rank
    parity is opposite to alpha."""
    return RankSet(K(successor(alpha)), 1 - parity(alpha))


def a_alpha_membership(alpha: Ordinal, t: SpaceTerm, p: PointAddress) -> bool:
    """Membership of p in the rank-parity set of K(alpha+1) presented by t."""
    return parity(point_cb_rank(t, p)) != parity(alpha)


# -- differences of increasing open families ----------------------------------------


@dataclass(frozen=True)
class RankThresholdOpens:
    """The increasing open family U_g = {x : rank(x) <= g} (or < g)."""

    strict: bool = False

    def least_containing(self, rank: Ordinal) -> Ordinal:
        return successor(rank) if self.strict else rank

    def describe(self) -> str:
        op = "<" if self.strict else "<="
        return f"U_g = {{x : rank(x) {op} g}}"


OpenFamily = Union[RankThresholdOpens, Sequence[Callable[[PointAddress], bool]]]


def eval_difference(sets: OpenFamily, alpha: Ordinal, t: SpaceTerm, p: PointAddress) -> bool:
    """Membership in the alpha-difference of the increasing family `sets`.

    The point belongs iff the least index whose open set contains it exists
    below alpha and has parity opposite to alpha.
    """
    if alpha == ZERO:
        return False
    if isinstance(sets, RankThresholdOpens):
        least = sets.least_containing(point_cb_rank(t, p))
    else:
        least = None
        for i, contains_i in enumerate(sets):
            if contains_i(p):
                least = of(i)
                break
    if least is None or not least < alpha:
        return False
    return parity(least) != parity(alpha)


@dataclass(frozen=True)
class DifferenceWitness:
    beta: Ordinal
    opens: RankThresholdOpens | None  # None encodes the empty 0-difference

    def to_json(self):
        return {
            "beta": format_ordinal(self.beta),
            "opens": self.opens.describe() if self.opens else "none",
        }


def difference_witness(t: SpaceTerm, s: RankSet) -> DifferenceWitness:
    """Least difference level writing s as a difference of rank thresholds.

    Compact countable spaces have successor rank rho = mu + 1, and the rank of
    a point never reaches rho, so chasing the parity of mu gives the least
    usable level directly.
    """
    t = _require_compact_countable(t)
    rho = cb_rank(t)
    assert is_successor(rho)  # compact countable
    mu = pred(rho)
    target = s.parity_target
    if parity(mu) == target:
        return DifferenceWitness(rho, RankThresholdOpens())
    if mu == ZERO:
        return DifferenceWitness(ZERO, None)  # the set is empty
    return DifferenceWitness(mu, RankThresholdOpens())


def difference_witness_agrees(t: SpaceTerm, s: RankSet, depth: int) -> bool:
    w = difference_witness(t, s)
    opens: OpenFamily = w.opens if w.opens is not None else ()
    return all(eval_difference(opens, w.beta, t, p) == s.contains(p) for p in enumerate_points(t, depth))


# -- reduction models ----------------------------------------------------------------

_odd_cache: dict[Ordinal, tuple[list[Ordinal], Iterator[Ordinal]]] = {}


def _odd_level(lam: Ordinal, n: int) -> Ordinal:
    if lam not in _odd_cache:
        _odd_cache[lam] = ([], odd_fundamental_sequence(lam))
    values, gen = _odd_cache[lam]
    while len(values) <= n:
        values.append(next(gen))
    return values[n]


@lru_cache(maxsize=None)
def branch_level(alpha: Ordinal, n: int) -> Ordinal:
    """Level of the n-th glued member/branch of the stage-alpha model."""
    if alpha == ZERO:
        raise DomainError("stage 0 has no members")
    if is_successor(alpha):
        return pred(alpha)
    return _odd_level(alpha, n)


@dataclass(frozen=True)
class KAmbient:
    """Model of K(level+1): a glue of lower models along odd cofinal levels."""

    level: Ordinal

    def describe(self) -> str:
        return f"K-model({format_ordinal(self.level)}+1)"


@dataclass(frozen=True)
class NAmbient:
    """Ambient of the canonical stage-level degree: a glue of fibered copies."""

    level: Ordinal

    def describe(self) -> str:
        return f"D-model({format_ordinal(self.level)})"


Model = Union[KAmbient, NAmbient]


def model_points(model: Model, depth: int) -> Iterator[PointAddress]:
    if isinstance(model, KAmbient):
        yield from _k_points(model.level, depth, depth)
    else:
        yield from _n_points(model.level, depth, depth)


def _k_points(level: Ordinal, index_bound: int, budget: int) -> Iterator[PointAddress]:
    yield ()
    if level == ZERO or budget < 1:
        return
    for n in range(index_bound + 1):
        for rest in _k_points(branch_level(level, n), index_bound, budget - 1):
            yield (n,) + rest


def _n_points(level: Ordinal, index_bound: int, budget: int) -> Iterator[PointAddress]:
    yield ()
    if level == ZERO or budget < 2:
        return
    for n in range(index_bound + 1):
        sub = branch_level(level, n)
        for m in range(index_bound + 1):
            for rest in _n_points(sub, index_bound, budget - 2):
                yield (n, m) + rest


@lru_cache(maxsize=None)
def model_rank(level: Ordinal, p: PointAddress) -> Ordinal:
    """CB-rank of a K-model point (the basepoint has rank = its level)."""
    if not p:
        return level
    return model_rank(branch_level(level, p[0]), p[1:])


@lru_cache(maxsize=None)
def a_member(level: Ordinal, p: PointAddress) -> bool:
    """Rank-parity set of the K-model at the given stage."""
    return parity(model_rank(level, p)) != parity(level)


@lru_cache(maxsize=None)
def b_member(level: Ordinal, p: PointAddress) -> bool:
    """The canonical stage-level set: branch points whose remainder avoids the
    previous stage's set; empty at stage 0."""
    if not p:
        return False
    if level == ZERO:
        raise DomainError(f"invalid address {p!r} at stage 0")
    return not b_member(branch_level(level, p[0]), p[2:])


# -- continuous-map combinators --------------------------------------------------------


class MapTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Identity(MapTerm):
    pass


@dataclass(frozen=True)
class ConstantTo(MapTerm):
    target: PointAddress


@dataclass(frozen=True)
class RetractToGlue(MapTerm):
    """Collapse a fiber index: (m,) + rest  ->  rest."""


@dataclass(frozen=True)
class IntoFiber(MapTerm):
    """Embed into a fixed fiber of an omega-fold sum: rest -> (fiber,) + rest."""

    fiber: int


@dataclass(frozen=True, eq=False)
class GlueMap(MapTerm):
    """Structural glue-to-glue map: basepoint fixed, member n mapped by member_for(n)."""

    member_for: Callable[[int], MapTerm]


@dataclass(frozen=True)
class Seq(MapTerm):
    first: MapTerm
    then: MapTerm


@lru_cache(maxsize=None)
def apply_map(m: MapTerm, p: PointAddress) -> PointAddress:
    match m:
        case Identity():
            return p
        case ConstantTo(target):
            return target
        case RetractToGlue():
            if not p:
                raise DomainError("retraction applied to a basepoint")
            return p[1:]
        case IntoFiber(fiber):
            return (fiber,) + p
        case Seq(first, then):
            return apply_map(then, apply_map(first, p))
        case GlueMap(member_for):
            if not p:
                return ()
            return (p[0],) + apply_map(member_for(p[0]), p[1:])
    raise DomainError(f"unknown map term {m!r}")


@lru_cache(maxsize=None)
def _forward(alpha: Ordinal) -> MapTerm:
    # member n of the K-model lands in fiber 0 of branch n; the stage identity
    # "member point is in the set iff its remainder avoids the previous set"
    # holds on both sides, so preimages line up level by level
    if alpha == ZERO:
        return Identity()
    return GlueMap(lambda n: Seq(_forward(branch_level(alpha, n)), IntoFiber(0)))


@lru_cache(maxsize=None)
def _backward(alpha: Ordinal) -> MapTerm:
    if alpha == ZERO:
        return Identity()
    return GlueMap(lambda n: Seq(RetractToGlue(), _backward(branch_level(alpha, n))))


@dataclass(frozen=True, eq=False)
class ReductionMap:
    """A continuous map together with the sets it is meant to reduce."""

    term: MapTerm
    source: Model
    target: Model
    source_set: Callable[[PointAddress], bool]
    target_set: Callable[[PointAddress], bool]
    description: str


@dataclass(frozen=True, eq=False)
class ReductionWitness:
    """Both reduction directions between the rank-parity set and the canonical
    stage degree at one level."""

    alpha: Ordinal
    a_to_b: ReductionMap
    b_to_a: ReductionMap
    source_term: SpaceTerm
    target_term: SpaceTerm | None  # no closed term form at limit stages


def _n_space_term(alpha: Ordinal) -> SpaceTerm | None:
    if is_limit(alpha):
        return None
    if alpha == ZERO:
        return POINT
    below = _n_space_term(pred(alpha))
    assert below is not None
    return Glue(Constant(SumOmega(Constant(below))))


def reduction_for_A(alpha: Ordinal) -> ReductionWitness:
    """Build both reduction witnesses at stage alpha (recursing through the
    stages below; limit stages glue the family along the odd cofinal levels)."""
    a_set = lambda p: a_member(alpha, p)
    b_set = lambda p: b_member(alpha, p)
    a_to_b = ReductionMap(
        _forward(alpha),
        KAmbient(alpha),
        NAmbient(alpha),
        a_set,
        b_set,
        f"rank-parity set of K({format_ordinal(successor(alpha))}) into stage degree",
    )
    b_to_a = ReductionMap(
        _backward(alpha),
        NAmbient(alpha),
        KAmbient(alpha),
        b_set,
        a_set,
        f"stage degree into rank-parity set of K({format_ordinal(successor(alpha))})",
    )
    return ReductionWitness(alpha, a_to_b, b_to_a, K(successor(alpha)), _n_space_term(alpha))


def apply_reduction(rmap: ReductionMap, p: PointAddress, depth: int | None = None) -> PointAddress:
    """Image of the addressed point under the witness map (depth is unused;
    the maps are total on addresses)."""
    return apply_map(rmap.term, p)


@dataclass(frozen=True)
class VerificationReport:
    checked: int
    mismatches: int
    example: PointAddress | None

    def to_json(self):
        return {
            "checked": self.checked,
            "mismatches": self.mismatches,
            "example": list(self.example) if self.example is not None else None,
        }


def _verify_direction(rmap: ReductionMap, depth: int) -> VerificationReport:
    checked = mismatches = 0
    example = None
    for p in model_points(rmap.source, depth):
        checked += 1
        if rmap.source_set(p) != rmap.target_set(apply_map(rmap.term, p)):
            mismatches += 1
            if example is None:
                example = p
    return VerificationReport(checked, mismatches, example)


def verify_reduction(w: ReductionWitness | Ordinal, depth: int = 8) -> VerificationReport:
    """Sample all addresses to depth in both directions; a mismatch is a point
    whose membership is not preserved by the witness map."""
    if isinstance(w, Ordinal):
        w = reduction_for_A(w)
    fwd = _verify_direction(w.a_to_b, depth)
    bwd = _verify_direction(w.b_to_a, depth)
    example = fwd.example if fwd.example is not None else bwd.example
    return VerificationReport(fwd.checked + bwd.checked, fwd.mismatches + bwd.mismatches, example)
