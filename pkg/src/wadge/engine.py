"""Classification of the reducibility hierarchy of a space term.

The two numbers that determine the hierarchy up to order-isomorphism are
``alpha_of`` (the supremum of the selfdual countable-cofinality limit
levels, or T) and ``theta_of`` (the length of the hierarchy).  Levels are
classified by closed-form case analysis: finite levels alternate from the
bottom nonselfdual pair, representable limit levels are selfdual exactly
below ``alpha_of``, and successors above a limit alternate from it.

Limit ordinals representable in CNF all have countable cofinality; at
unrepresentable limits of uncountable cofinality every space has a
nonselfdual pair, which the notation cannot ask about.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .ordinals import (
    ONE,
    OMEGA,
    THETA,
    ZERO,
    ExtOrdinal,
    Ordinal,
    _BigTheta,
    add,
    format_ext,
    format_ordinal,
    fundamental_sequence,
    is_limit,
    is_limit_of_limits,
    limit_minus_omega,
    of,
    omega_power,
    pred,
    split,
    successor,
)
from .spaces import (
    CANTOR,
    BAIRE,
    K,
    SpaceTerm,
    SumFin,
    Y,
    Z,
    cb_rank,
    comp_rank,
    is_countable,
    is_simple,
    kernel_compact,
    limit_partition_selfdual,
    normalize,
)


class LevelKind(Enum):
    SELFDUAL = "sd"
    NONSELFDUAL = "nsd"


@dataclass(frozen=True)
class BottomPair:
    """The minimal pair {whole space} / {empty set}."""

    def to_json(self):
        return {"type": "bottom-pair"}


@dataclass(frozen=True)
class DifferenceClassPair:
    """The index-th difference class of open sets, together with its dual."""

    index: Ordinal

    def to_json(self):
        return {"type": "difference-pair", "index": format_ordinal(self.index)}


@dataclass(frozen=True)
class ClopenDegree:
    """All nontrivial clopen sets (always level 2)."""

    def to_json(self):
        return {"type": "clopen"}


@dataclass(frozen=True)
class SelfdualSupremum:
    """Selfdual degree sitting directly above the first `pairs_below` pairs."""

    pairs_below: Ordinal

    def to_json(self):
        return {"type": "sd-supremum", "pairs_below": format_ordinal(self.pairs_below)}


@dataclass(frozen=True)
class FullPowerSet:
    """All subsets; tops out a non-simple countable space."""

    def to_json(self):
        return {"type": "full-power-set"}


Label = BottomPair | DifferenceClassPair | ClopenDegree | SelfdualSupremum | FullPowerSet


@dataclass(frozen=True)
class LevelDescription:
    level: Ordinal
    kind: LevelKind
    label: Label

    def to_json(self):
        return {
            "level": format_ordinal(self.level),
            "kind": self.kind.value,
            "label": self.label.to_json(),
        }


@dataclass(frozen=True)
class WadgeInvariant:
    alpha: ExtOrdinal
    theta: ExtOrdinal

    def to_json(self):
        return {"alpha": format_ext(self.alpha), "theta": format_ext(self.theta)}


def is_valid_invariant(inv: WadgeInvariant) -> bool:
    """alpha <= theta; theta is T or a countable successor >= 2; alpha is T, 0,
    the successor of a limit, or a limit of limits."""
    alpha, theta = inv.alpha, inv.theta
    if not alpha <= theta:
        return False
    if not isinstance(theta, _BigTheta):
        lam, n = split(theta)
        if n == 0 or theta < of(2):
            return False
    if isinstance(alpha, _BigTheta):
        return isinstance(theta, _BigTheta)
    if alpha == ZERO or is_limit_of_limits(alpha):
        return True
    lam, n = split(alpha)
    return n == 1 and is_limit(lam)


# -- the two invariants ---------------------------------------------------------


def alpha_of(t: SpaceTerm) -> ExtOrdinal:
    """Supremum of the selfdual limit levels (all of countable cofinality)."""
    t = normalize(t)
    if not kernel_compact(t):
        return THETA
    r = comp_rank(t)
    lam, n = split(r)
    if n >= 1:
        return successor(lam) if lam != ZERO else ZERO
    if r == ZERO:
        return ZERO
    if limit_partition_selfdual(t, r):
        return successor(r)
    if r == OMEGA:
        return ZERO
    if is_limit_of_limits(r):
        return r
    return successor(limit_minus_omega(r))


def theta_of(t: SpaceTerm) -> ExtOrdinal:
    """Length of the hierarchy; 2*rank + eps with eps in {-1, 0, 1} when countable."""
    t = normalize(t)
    if not is_countable(t):
        return THETA
    r = cb_rank(t)
    lam, n = split(r)
    if lam == ZERO:
        return of(2 * n) if is_simple(t) else of(2 * n + 1)
    if n == 0:
        return successor(lam)
    simple = is_simple(t)
    above = alpha_of(t) > lam  # one extra selfdual class below the limit block
    eps = (0 if simple else 1) + (1 if above else 0) - 1
    return add(lam, of(2 * n + eps))


def wadge_invariant(t: SpaceTerm) -> WadgeInvariant:
    return WadgeInvariant(alpha_of(t), theta_of(t))


def same_hierarchy(a: SpaceTerm, b: SpaceTerm) -> bool:
    return wadge_invariant(a) == wadge_invariant(b)


# -- level structure --------------------------------------------------------------


def _check_level(t: SpaceTerm, a: Ordinal) -> ExtOrdinal:
    theta = theta_of(t)
    if not (ONE <= a and a < theta):
        raise DomainError(f"level {a} outside [1, {format_ext(theta)})")
    return theta


def level_kind(t: SpaceTerm, a: Ordinal) -> LevelKind:
    """Selfdual degree or nonselfdual pair at level a (1 <= a < theta)."""
    _check_level(t, a)
    lam, n = split(a)
    if lam == ZERO:
        return LevelKind.NONSELFDUAL if n % 2 == 1 else LevelKind.SELFDUAL
    if n == 0:
        sd = a < alpha_of(t)
        return LevelKind.SELFDUAL if sd else LevelKind.NONSELFDUAL
    base = level_kind(t, lam)
    flipped = (base == LevelKind.SELFDUAL) == (n % 2 == 1)
    return LevelKind.NONSELFDUAL if flipped else LevelKind.SELFDUAL


def _nonselfdual_count_below(t: SpaceTerm, a: Ordinal) -> Ordinal:
    """Order type of the set of nonselfdual levels strictly below a."""
    lam, n = split(a)
    if lam == ZERO:
        return of(n // 2)
    if level_kind(t, lam) == LevelKind.NONSELFDUAL:
        return add(lam, of((n + 1) // 2))
    return add(lam, of(n // 2))


def describe_level(t: SpaceTerm, a: Ordinal) -> LevelDescription:
    """Level kind plus the symbolic class occupying it."""
    theta = _check_level(t, a)
    kind = level_kind(t, a)
    k = _nonselfdual_count_below(t, a)
    if kind == LevelKind.NONSELFDUAL:
        label: Label = BottomPair() if k == ZERO else DifferenceClassPair(k)
        return LevelDescription(a, kind, label)
    if not isinstance(theta, _BigTheta) and successor(a) == theta and not is_simple(t):
        return LevelDescription(a, kind, FullPowerSet())
    if a == of(2):
        return LevelDescription(a, kind, ClopenDegree())
    return LevelDescription(a, kind, SelfdualSupremum(k))


def representable_levels(up_to: Ordinal, window: int = 4) -> list[Ordinal]:
    """Deterministic finite sample of [1, up_to): a window above 0, above each
    limit milestone of up_to's CNF, and below up_to itself when it has a
    finite tail."""
    blocks = {ZERO}
    acc = ZERO
    for e, c in up_to.terms:
        for _ in range(c):
            acc = add(acc, omega_power(e))
            if is_limit(acc) and acc < up_to:
                blocks.add(acc)
    if is_limit(up_to):
        for i in range(3):
            v = fundamental_sequence(up_to, i)
            if is_limit(v):
                blocks.add(v)
    levels = set()
    for b in blocks:
        for j in range(window):
            v = add(b, of(j))
            if ONE <= v < up_to:
                levels.add(v)
    lam, m = split(up_to)
    for j in range(1, min(window, m) + 1):
        v = add(lam, of(m - j))
        if ONE <= v:
            levels.add(v)
    return sorted(levels)


def hierarchy_render(t: SpaceTerm, up_to: Ordinal, window: int = 4) -> list[LevelDescription]:
    """Describe the representable levels in [1, up_to)."""
    theta = theta_of(t)
    if not (up_to < theta or (not isinstance(theta, _BigTheta) and up_to == theta)):
        raise DomainError(f"rendering bound {up_to} exceeds theta {format_ext(theta)}")
    return [describe_level(t, a) for a in representable_levels(up_to, window)]


# -- realization -------------------------------------------------------------------


def _tail_witness(alpha: Ordinal) -> list[SpaceTerm]:
    """Summands forcing alpha_of = alpha (for alpha strictly below the rank)."""
    if alpha == ZERO:
        return []
    if is_limit_of_limits(alpha):
        return [Z(alpha)]
    lam, n = split(alpha)
    if n == 1 and is_limit(lam):
        return [Y(lam)]
    raise DomainError(f"{alpha} is not a valid alpha component")


def realize_invariant(inv: WadgeInvariant) -> SpaceTerm:
    """A canonical term whose invariant is exactly `inv`."""
    if not is_valid_invariant(inv):
        raise DomainError(f"invalid invariant {inv.to_json()}")
    alpha, theta = inv.alpha, inv.theta
    if isinstance(theta, _BigTheta):
        if isinstance(alpha, _BigTheta):
            return BAIRE
        if alpha == ZERO:
            return CANTOR
        if is_limit_of_limits(alpha):
            return SumFin((CANTOR, Z(alpha)))
        return SumFin((CANTOR, Y(pred(alpha))))
    lam, m = split(theta)
    if lam == ZERO:
        # alpha = 0 is forced below level omega
        n = m // 2
        return K(of(n)) if m % 2 == 0 else SumFin((K(of(n)), K(of(n))))
    if m % 2 == 0:
        n = m // 2
        big = K(add(lam, of(n)))
        if alpha == successor(lam):
            return SumFin((big, Y(lam)))  # simple, selfdual at lam
        return SumFin(tuple([big, big] + _tail_witness(alpha)))
    if m == 1:
        if alpha == successor(lam):
            return Y(lam)
        if alpha == lam:
            return Z(lam)
        return SumFin(tuple([K(successor(lam))] + _tail_witness(alpha))) if alpha != ZERO else K(successor(lam))
    n = m // 2  # m = 2n + 1, n >= 1
    if alpha == successor(lam):
        big = K(add(lam, of(n)))
        return SumFin((big, big, Y(lam)))
    return SumFin(tuple([K(add(lam, of(n + 1)))] + _tail_witness(alpha)))
