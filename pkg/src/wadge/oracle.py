"""Independent cross-checks for the CB recursions.

``order_type`` linearizes a compact countable term into a countable ordinal
(points become 1, sums concatenate, a gluing lays its members end to end and
closes with the basepoint); the CB-type is then read off the leading CNF term.
This path deliberately shares no code with the structural rank recursion in
:mod:`wadge.spaces` so the two can check each other.

``generate_terms`` is the seeded random term source used by the property
suites.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError
from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    is_limit,
    mul,
    of,
    omega_power,
    successor,
)
from .spaces import (
    BAIRE,
    CANTOR,
    POINT,
    AttachToCantor,
    CBType,
    Constant,
    Glue,
    K,
    KAlong,
    OmegaTimesKAlong,
    Point,
    Prefixed,
    SeqSpec,
    SpaceTerm,
    SumFin,
    SumOmega,
    Y,
    Z,
    is_compact,
    is_countable,
    kernel_compact,
    normalize,
)


def order_type(t: SpaceTerm) -> Ordinal:
    """Order type of the canonical linearization of a compact countable term."""
    t = normalize(t)
    if not (is_compact(t) and is_countable(t)):
        raise DomainError("order types are defined for compact countable terms")
    return _tau(t)


def _tau(t: SpaceTerm) -> Ordinal:
    match t:
        case Point():
            return ONE
        case SumFin(parts):
            out = ZERO
            for p in parts:
                out = add(out, _tau(normalize(p)))
            return out
        case Glue(spec):
            return add(_tau_members(spec), ONE)
    raise DomainError(f"no order type for {t!r}")


def _tau_members(spec: SeqSpec) -> Ordinal:
    match spec:
        case Constant(c):
            return mul(_tau(normalize(c)), OMEGA)
        case KAlong(lam):
            # sum over n of (w^(lam[n]) + 1); lower tails are absorbed
            return omega_power(lam)
        case Prefixed(prefix, tail):
            out = ZERO
            for p in prefix:
                out = add(out, _tau(normalize(p)))
            return add(out, _tau_members(tail))
    raise DomainError(f"members of {spec!r} are not compact")


def cb_type_oracle(t: SpaceTerm) -> CBType:
    """CB-type read from the leading CNF term of the order type."""
    tau = order_type(t)
    if not tau.terms or tau.terms[-1][0] != ZERO:
        raise DomainError(f"order type {tau} of a compact space must be a successor")
    exponent, coeff = tau.terms[0]
    if exponent == ZERO:
        # finite space: tau = coeff many isolated points
        return CBType(ONE, coeff)
    return CBType(successor(exponent), coeff)


# -- random terms ---------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    max_depth: int = 3
    ordinal_pool: tuple[Ordinal, ...] = (
        ZERO,
        ONE,
        of(2),
        OMEGA,
        add(OMEGA, ONE),
        mul(OMEGA, of(2)),
        omega_power(of(2)),
    )
    allow_uncountable: bool = False
    seed: int = 0


def _pool_limits(cfg: GeneratorConfig) -> list[Ordinal]:
    return [a for a in cfg.ordinal_pool if is_limit(a)]


def _pool_positive(cfg: GeneratorConfig) -> list[Ordinal]:
    return [a for a in cfg.ordinal_pool if a != ZERO]


def _rand_spec(rng: random.Random, depth: int, cfg: GeneratorConfig) -> SeqSpec:
    limits = _pool_limits(cfg)
    kinds = ["const", "const"]
    if limits:
        kinds += ["kalong", "wkalong"]
    if depth > 0:
        kinds.append("prefix")
    match rng.choice(kinds):
        case "const":
            return Constant(_rand_term(rng, depth, cfg))
        case "kalong":
            return KAlong(rng.choice(limits))
        case "wkalong":
            return OmegaTimesKAlong(rng.choice(limits))
        case _:
            width = rng.randint(1, 2)
            prefix = tuple(_rand_term(rng, depth - 1, cfg) for _ in range(width))
            return Prefixed(prefix, _rand_spec(rng, depth - 1, cfg))


def _rand_term(rng: random.Random, depth: int, cfg: GeneratorConfig) -> SpaceTerm:
    leaves = ["point", "K", "K"]
    if cfg.allow_uncountable:
        leaves += ["cantor"]
    if depth <= 0:
        kind = rng.choice(leaves)
    else:
        kinds = leaves + ["Y", "Z", "sum", "sumw", "glue"]
        if cfg.allow_uncountable:
            kinds += ["baire", "attach"]
        kind = rng.choice(kinds)
    positives = _pool_positive(cfg)
    match kind:
        case "point":
            return POINT
        case "cantor":
            return CANTOR
        case "baire":
            return BAIRE
        case "K":
            return K(successor(rng.choice(cfg.ordinal_pool)))
        case "Y":
            return Y(rng.choice(positives))
        case "Z":
            return Z(rng.choice(positives))
        case "sum":
            width = rng.randint(2, 3)
            return SumFin(tuple(_rand_term(rng, depth - 1, cfg) for _ in range(width)))
        case "sumw":
            return SumOmega(_rand_spec(rng, depth - 1, cfg))
        case "glue":
            return Glue(_rand_spec(rng, depth - 1, cfg))
        case "attach":
            base = rng.choice(["K", "Z", "glue"])
            if base == "K":
                return AttachToCantor(K(successor(rng.choice(cfg.ordinal_pool))))
            if base == "Z":
                return AttachToCantor(Z(rng.choice(positives)))
            return AttachToCantor(Glue(_rand_spec(rng, depth - 1, cfg)))
    raise AssertionError(kind)


def generate_terms(
    cfg: GeneratorConfig,
    countable_only: bool = False,
    compact_only: bool = False,
    kernel_compact_only: bool = False,
) -> Iterator[SpaceTerm]:
    """Reproducible stream of well-formed nonempty terms within the config bounds."""
    rng = random.Random(cfg.seed)
    while True:
        t = _rand_term(rng, cfg.max_depth, cfg)
        if countable_only and not is_countable(t):
            continue
        if compact_only and not is_compact(t):
            continue
        if kernel_compact_only and not kernel_compact(t):
            continue
        yield t
