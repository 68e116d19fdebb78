"""Term algebra for zero-dimensional Polish spaces and their rank invariants.

Terms denote spaces built from a point, the Cantor and Baire spaces, finite
and countable disjoint sums, pointed gluings (copies of a sequence of spaces
converging to one added basepoint), and attaching a pointed space to the
Cantor set at its 0^inf point.  ``K``, ``Y`` and ``Z`` are sugar for the
canonical compact/selfdual/nonselfdual witnesses at each rank and are
expanded by :func:`normalize`.

Every invariant here is computed by structural recursion with a closed form
per sequence generator, so everything is exact ordinal arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import DomainError, ParseError
from .ordinals import (
    ONE,
    OMEGA,
    ZERO,
    Ordinal,
    add,
    compare,
    fundamental_sequence,
    is_limit,
    is_successor,
    of,
    omax,
    parse_ordinal,
    pred,
    split,
    successor,
    format_ordinal,
)

DEGREE_OMEGA = math.inf  # CB-degree "omega"


# -- terms --------------------------------------------------------------------


class SpaceTerm:
    """Base class; all concrete terms are frozen dataclasses."""

    __slots__ = ()


class SeqSpec:
    """Base class for the closed family of member-sequence generators."""

    __slots__ = ()


@dataclass(frozen=True)
class Empty(SpaceTerm):
    """Internal artifact (K(0)); eliminated by normalize."""


@dataclass(frozen=True)
class Point(SpaceTerm):
    pass


@dataclass(frozen=True)
class Cantor(SpaceTerm):
    pass


@dataclass(frozen=True)
class Baire(SpaceTerm):
    pass


@dataclass(frozen=True)
class SumFin(SpaceTerm):
    parts: tuple[SpaceTerm, ...]


@dataclass(frozen=True)
class SumOmega(SpaceTerm):
    spec: SeqSpec


@dataclass(frozen=True)
class Glue(SpaceTerm):
    spec: SeqSpec


@dataclass(frozen=True)
class AttachToCantor(SpaceTerm):
    part: SpaceTerm


@dataclass(frozen=True)
class K(SpaceTerm):
    rank: Ordinal  # must be a successor >= 1


@dataclass(frozen=True)
class Y(SpaceTerm):
    rank: Ordinal  # >= 1


@dataclass(frozen=True)
class Z(SpaceTerm):
    rank: Ordinal  # >= 1


@dataclass(frozen=True)
class Constant(SeqSpec):
    member: SpaceTerm


@dataclass(frozen=True)
class KAlong(SeqSpec):
    limit: Ordinal  # n -> K(limit[n] + 1)


@dataclass(frozen=True)
class OmegaTimesKAlong(SeqSpec):
    limit: Ordinal  # n -> w * K(limit[n] + 1)


@dataclass(frozen=True)
class Prefixed(SeqSpec):
    prefix: tuple[SpaceTerm, ...]
    tail: SeqSpec


EMPTY = Empty()
POINT = Point()
CANTOR = Cantor()
BAIRE = Baire()

TermOrSpec = Union[SpaceTerm, SeqSpec]


@dataclass(frozen=True)
class CBType:
    rank: Ordinal
    degree: int | float  # DEGREE_OMEGA for omega

    def __repr__(self):
        deg = "w" if self.degree == DEGREE_OMEGA else str(self.degree)
        return f"CBType({format_ordinal(self.rank)}, {deg})"


def omega_times(t: SpaceTerm) -> SpaceTerm:
    """Sugar: w * t = SumOmega(Constant(t))."""
    return SumOmega(Constant(t))


# -- normalization -------------------------------------------------------------


def _expand_k(rank: Ordinal) -> SpaceTerm:
    if not is_successor(rank):
        raise DomainError(f"K({rank}) requires a successor rank >= 1")
    below = pred(rank)
    if below == ZERO:
        return POINT  # K(1) is the single point 0^inf
    if is_limit(below):
        return Glue(KAlong(below))
    return Glue(Constant(K(below)))


def _expand_y(rank: Ordinal) -> SpaceTerm:
    if rank == ZERO:
        raise DomainError("Y(0) is empty")
    if is_limit(rank):
        return SumOmega(KAlong(rank))
    return SumOmega(Constant(K(rank)))


def _expand_z(rank: Ordinal) -> SpaceTerm:
    if rank == ZERO:
        raise DomainError("Z(0) is empty")
    if is_limit(rank):
        return Glue(OmegaTimesKAlong(rank))
    return Glue(Constant(SumOmega(Constant(K(rank)))))


def _normalize_spec(spec: SeqSpec) -> SeqSpec:
    match spec:
        case Prefixed(prefix, tail):
            tail = _normalize_spec(tail)
            parts = tuple(p for p in map(normalize, prefix) if not isinstance(p, Empty))
            if isinstance(tail, Prefixed):
                parts, tail = parts + tail.prefix, tail.tail
            return tail if not parts else Prefixed(parts, tail)
        case KAlong(lam) | OmegaTimesKAlong(lam):
            if not is_limit(lam):
                raise DomainError(f"sequence along {lam} requires a limit ordinal")
            return spec
        case Constant(_):
            return spec
    raise DomainError(f"unknown sequence spec {spec!r}")


@lru_cache(maxsize=None)
def normalize(t: SpaceTerm) -> SpaceTerm:
    """Expand K/Y/Z sugar, flatten finite sums, and drop empty parts."""
    match t:
        case Empty() | Point() | Cantor() | Baire():
            return t
        case K(rank):
            return normalize(_expand_k(rank))
        case Y(rank):
            return normalize(_expand_y(rank))
        case Z(rank):
            return normalize(_expand_z(rank))
        case SumFin(parts):
            flat: list[SpaceTerm] = []
            for part in map(normalize, parts):
                if isinstance(part, SumFin):
                    flat.extend(part.parts)
                elif not isinstance(part, Empty):
                    flat.append(part)
            if not flat:
                return EMPTY
            if len(flat) == 1:
                return flat[0]
            return SumFin(tuple(flat))
        case SumOmega(spec):
            spec = _normalize_spec(spec)
            if isinstance(spec, Constant) and isinstance(normalize(spec.member), Empty):
                return EMPTY
            return SumOmega(spec)
        case Glue(spec):
            spec = _normalize_spec(spec)
            if isinstance(spec, Constant) and isinstance(normalize(spec.member), Empty):
                return POINT  # gluing an empty sequence leaves just the basepoint
            return Glue(spec)
        case AttachToCantor(part):
            part = normalize(part)
            if isinstance(part, Point):
                return CANTOR  # attaching a single point at 0^inf adds nothing
            if not isinstance(part, Glue):
                raise DomainError("attach(t) requires a pointed term (glue, K or Z)")
            return AttachToCantor(part)
    raise DomainError(f"unknown term {t!r}")


def member(spec: SeqSpec, n: int) -> SpaceTerm:
    """The n-th member space of a sequence spec."""
    match spec:
        case Constant(c):
            return c
        case KAlong(lam):
            return K(successor(fundamental_sequence(lam, n)))
        case OmegaTimesKAlong(lam):
            return omega_times(K(successor(fundamental_sequence(lam, n))))
        case Prefixed(prefix, tail):
            return prefix[n] if n < len(prefix) else member(tail, n - len(prefix))
    raise DomainError(f"unknown sequence spec {spec!r}")


def _require_nonempty(t: SpaceTerm) -> SpaceTerm:
    t = normalize(t)
    if isinstance(t, Empty):
        raise DomainError("operation undefined on the empty space")
    return t


# -- cardinality / compactness --------------------------------------------------


@lru_cache(maxsize=None)
def is_countable(t: SpaceTerm) -> bool:
    match normalize(t):
        case Empty() | Point():
            return True
        case Cantor() | Baire() | AttachToCantor(_):
            return False
        case SumFin(parts):
            return all(is_countable(p) for p in parts)
        case SumOmega(spec) | Glue(spec):
            return _spec_countable(spec)
    raise DomainError(f"unknown term {t!r}")


def _spec_countable(spec: SeqSpec) -> bool:
    match spec:
        case Constant(c):
            return is_countable(c)
        case KAlong(_) | OmegaTimesKAlong(_):
            return True
        case Prefixed(prefix, tail):
            return all(is_countable(p) for p in prefix) and _spec_countable(tail)
    raise DomainError(f"unknown sequence spec {spec!r}")


@lru_cache(maxsize=None)
def is_compact(t: SpaceTerm) -> bool:
    match normalize(t):
        case Empty() | Point() | Cantor():
            return True
        case Baire() | SumOmega(_):
            return False
        case SumFin(parts):
            return all(is_compact(p) for p in parts)
        case Glue(spec):
            return _spec_all_compact(spec)
        case AttachToCantor(part):
            return is_compact(part)
    raise DomainError(f"unknown term {t!r}")


def _spec_all_compact(spec: SeqSpec) -> bool:
    match spec:
        case Constant(c):
            return is_compact(c)
        case KAlong(_):
            return True
        case OmegaTimesKAlong(_):
            return False
        case Prefixed(prefix, tail):
            return all(is_compact(p) for p in prefix) and _spec_all_compact(tail)
    raise DomainError(f"unknown sequence spec {spec!r}")


@lru_cache(maxsize=None)
def kernel_compact(t: SpaceTerm) -> bool:
    """Whether the perfect kernel is compact (countable spaces: trivially yes)."""
    match _require_nonempty(t):
        case Point() | Cantor():
            return True
        case Baire():
            return False
        case SumFin(parts):
            return all(kernel_compact(p) for p in parts)
        case SumOmega(spec):
            # an omega-sum with infinitely many nonempty kernels has a
            # non-compact kernel; only a finite prefix may be uncountable
            return _spec_kernels_eventually_empty(spec)
        case Glue(spec):
            return _spec_all_kernel_compact(spec)
        case AttachToCantor(part):
            return kernel_compact(part)
    raise DomainError(f"unknown term {t!r}")


def _spec_kernels_eventually_empty(spec: SeqSpec) -> bool:
    match spec:
        case Constant(c):
            return is_countable(c)
        case KAlong(_) | OmegaTimesKAlong(_):
            return True
        case Prefixed(prefix, tail):
            return all(kernel_compact(p) for p in prefix) and _spec_kernels_eventually_empty(tail)
    raise DomainError(f"unknown sequence spec {spec!r}")


def _spec_all_kernel_compact(spec: SeqSpec) -> bool:
    match spec:
        case Constant(c):
            return kernel_compact(c)
        case KAlong(_) | OmegaTimesKAlong(_):
            return True
        case Prefixed(prefix, tail):
            return all(kernel_compact(p) for p in prefix) and _spec_all_kernel_compact(tail)
    raise DomainError(f"unknown sequence spec {spec!r}")


def _has_kernel(t: SpaceTerm) -> bool:
    """Nonempty perfect kernel, i.e. the space is uncountable."""
    return not is_countable(t) and not isinstance(normalize(t), Empty)


# -- Cantor-Bendixson rank ------------------------------------------------------

# For a pointed gluing the basepoint stays non-isolated exactly while
# infinitely many members still have points; its removal step happens at
#   bstar = least b such that only finitely many members survive b derivatives
# and the rank of the gluing is max(bstar + 1, sup of member ranks), except
# that the basepoint is never removed when infinitely many members have a
# nonempty kernel.


def _spec_sup_rank(spec: SeqSpec) -> Ordinal:
    match spec:
        case Constant(c):
            return cb_rank(c)
        case KAlong(lam) | OmegaTimesKAlong(lam):
            return lam  # member ranks lam[n]+1 are cofinal in lam
        case Prefixed(prefix, tail):
            out = _spec_sup_rank(tail)
            for p in prefix:
                out = omax(out, cb_rank(p))
            return out
    raise DomainError(f"unknown sequence spec {spec!r}")


def _spec_bstar(spec: SeqSpec) -> Ordinal | None:
    """Basepoint removal threshold; None when the basepoint is never removed."""
    match spec:
        case Constant(c):
            return None if _has_kernel(c) else cb_rank(c)
        case KAlong(lam) | OmegaTimesKAlong(lam):
            return lam
        case Prefixed(_, tail):
            return _spec_bstar(tail)
    raise DomainError(f"unknown sequence spec {spec!r}")


@lru_cache(maxsize=None)
def cb_rank(t: SpaceTerm) -> Ordinal:
    """Cantor-Bendixson rank: least a with the a-th derivative stabilized."""
    match _require_nonempty(t):
        case Point():
            return ONE
        case Cantor() | Baire():
            return ZERO
        case SumFin(parts):
            out = ZERO
            for p in parts:
                out = omax(out, cb_rank(p))
            return out
        case SumOmega(spec):
            return _spec_sup_rank(spec)
        case Glue(spec):
            sup = _spec_sup_rank(spec)
            bstar = _spec_bstar(spec)
            if bstar is None:
                return sup
            return omax(successor(bstar), sup)
        case AttachToCantor(part):
            # the basepoint of `part` is glued to 0^inf of the Cantor set and
            # is never isolated, so its removal step is discounted
            assert isinstance(part, Glue)
            return _spec_sup_rank(part.spec)
    raise DomainError(f"unknown term {t!r}")


# -- CB degree and type ----------------------------------------------------------


def _saturating_sum(values) -> int | float:
    out: int | float = 0
    for v in values:
        if v == DEGREE_OMEGA:
            return DEGREE_OMEGA
        out += v
    return out if out < DEGREE_OMEGA else DEGREE_OMEGA


def _degree(t: SpaceTerm) -> int | float:
    rank = cb_rank(t)
    if is_limit(rank):
        return DEGREE_OMEGA
    match normalize(t):
        case Point():
            return 1
        case SumFin(parts):
            return _saturating_sum(_degree(p) for p in parts if cb_rank(p) == rank)
        case SumOmega(spec):
            return _sumw_degree(spec, rank)
        case Glue(spec):
            top = pred(rank)
            base = 1 if _spec_bstar(spec) == top else 0
            return _saturating_sum([base, _glue_member_degree(spec, rank)])
    raise DomainError(f"degree undefined for {t!r}")


def _sumw_degree(spec: SeqSpec, rank: Ordinal) -> int | float:
    match spec:
        case Constant(c):
            # every member attains the sup, so the top layer is infinite
            return DEGREE_OMEGA if cb_rank(c) == rank else 0
        case KAlong(_) | OmegaTimesKAlong(_):
            return 0  # member ranks are strictly below the (limit) sup
        case Prefixed(prefix, tail):
            pre = _saturating_sum(_degree(p) for p in prefix if cb_rank(p) == rank)
            return _saturating_sum([pre, _sumw_degree(tail, rank)])
    raise DomainError(f"unknown sequence spec {spec!r}")


def _glue_member_degree(spec: SeqSpec, rank: Ordinal) -> int | float:
    """Total degree of the (finitely many) members attaining the glue rank."""
    match spec:
        case Constant(_) | KAlong(_) | OmegaTimesKAlong(_):
            return 0  # member ranks stay below bstar + 1
        case Prefixed(prefix, tail):
            pre = _saturating_sum(_degree(p) for p in prefix if cb_rank(p) == rank)
            return _saturating_sum([pre, _glue_member_degree(tail, rank)])
    raise DomainError(f"unknown sequence spec {spec!r}")


def cb_type(t: SpaceTerm) -> CBType:
    """CB-type (rank, degree) of a nonempty countable term."""
    t = _require_nonempty(t)
    if not is_countable(t):
        raise DomainError("CB-degree is only defined for countable spaces")
    return CBType(cb_rank(t), _degree(t))


def is_simple(t: SpaceTerm) -> bool:
    """Successor CB-rank with a one-point top derivative."""
    ct = cb_type(t)
    return is_successor(ct.rank) and ct.degree == 1


# -- compact rank -----------------------------------------------------------------


@lru_cache(maxsize=None)
def comp_rank(t: SpaceTerm) -> Ordinal:
    """Least a such that the a-th derivative is compact."""
    t = _require_nonempty(t)
    if not kernel_compact(t):
        raise DomainError("compact rank requires a compact perfect kernel")
    if is_compact(t):
        return ZERO
    match t:
        case SumFin(parts):
            out = ZERO
            for p in parts:
                out = omax(out, comp_rank(p))
            return out
        case SumOmega(spec):
            return _sumw_comp_rank(spec)
        case Glue(spec):
            return _spec_sup_comp_rank(spec)
        case AttachToCantor(part):
            return comp_rank(part)
    raise DomainError(f"unknown term {t!r}")


def _sumw_comp_rank(spec: SeqSpec) -> Ordinal:
    # cofinitely many members must lose all points; a finite prefix only
    # needs to become compact
    match spec:
        case Constant(c):
            return cb_rank(c)
        case KAlong(lam) | OmegaTimesKAlong(lam):
            return lam
        case Prefixed(prefix, tail):
            out = _sumw_comp_rank(tail)
            for p in prefix:
                out = omax(out, comp_rank(p))
            return out
    raise DomainError(f"unknown sequence spec {spec!r}")


def _spec_sup_comp_rank(spec: SeqSpec) -> Ordinal:
    match spec:
        case Constant(c):
            return comp_rank(c)
        case KAlong(_):
            return ZERO
        case OmegaTimesKAlong(lam):
            return lam  # members w*K(lam[n]+1) have compact rank lam[n]+1
        case Prefixed(prefix, tail):
            out = _spec_sup_comp_rank(tail)
            for p in prefix:
                out = omax(out, comp_rank(p))
            return out
    raise DomainError(f"unknown sequence spec {spec!r}")


# -- clopen-rank spectrum and the limit-level partition criterion -------------------


@lru_cache(maxsize=None)
def reach(t: SpaceTerm, alpha: Ordinal) -> Ordinal:
    """sup of b+1 over ranks b < alpha of nonempty clopen subspaces of t."""
    if not is_limit(alpha):
        raise DomainError("reach is defined at limit ordinals")
    t = _require_nonempty(t)
    own = cb_rank(t)
    contributions = [successor(own)] if own < alpha else [ZERO]
    match t:
        case Point() | Empty():
            pass
        case Cantor() | Baire():
            contributions.append(ONE)  # nonempty clopens of rank 0
        case SumFin(parts):
            contributions.extend(reach(p, alpha) for p in parts)
        case SumOmega(spec) | Glue(spec):
            contributions.append(_spec_reach(spec, alpha))
        case AttachToCantor(part):
            contributions.append(ONE)
            assert isinstance(part, Glue)
            contributions.append(_spec_reach(part.spec, alpha))
    out = ZERO
    for c in contributions:
        out = omax(out, c)
    return out


def _spec_reach(spec: SeqSpec, alpha: Ordinal) -> Ordinal:
    match spec:
        case Constant(c):
            return reach(c, alpha)
        case KAlong(lam) | OmegaTimesKAlong(lam):
            # members carry clopen blocks of every rank cofinally below lam
            return alpha if compare(lam, alpha) >= 0 else lam
        case Prefixed(prefix, tail):
            out = _spec_reach(tail, alpha)
            for p in prefix:
                out = omax(out, reach(p, alpha))
            return out
    raise DomainError(f"unknown sequence spec {spec!r}")


@lru_cache(maxsize=None)
def limit_partition_selfdual(t: SpaceTerm, alpha: Ordinal) -> bool:
    """Infinite clopen partition with tail ranks strictly below and cofinal in alpha.

    Pieces of any such partition eventually avoid the basepoint of a gluing
    and the whole of a compact part, which yields the per-constructor rules.
    """
    if not is_limit(alpha):
        raise DomainError("the partition criterion applies at limit ordinals")
    t = _require_nonempty(t)
    if not kernel_compact(t):
        raise DomainError("the partition criterion requires a compact kernel")
    if is_compact(t):
        return False
    match t:
        case SumFin(parts):
            return any(limit_partition_selfdual(p, alpha) for p in parts)
        case SumOmega(spec):
            return _sumw_lps(spec, alpha)
        case Glue(spec):
            return _glue_member_lps(spec, alpha)
        case AttachToCantor(part):
            assert isinstance(part, Glue)
            return _glue_member_lps(part.spec, alpha)
    return False


def _member_lps(m: SpaceTerm, alpha: Ordinal) -> bool:
    m = normalize(m)
    if isinstance(m, Empty) or is_compact(m):
        return False
    return limit_partition_selfdual(m, alpha)


def _sumw_lps(spec: SeqSpec, alpha: Ordinal) -> bool:
    # either one member partitions on its own, or clopen pieces drawn from
    # infinitely many members realize ranks cofinal in alpha
    if _spec_any_member_lps(spec, alpha):
        return True
    return _spec_tail_reach_cofinal(spec, alpha)


def _spec_any_member_lps(spec: SeqSpec, alpha: Ordinal) -> bool:
    match spec:
        case Constant(c):
            return _member_lps(c, alpha)
        case KAlong(_):
            return False  # members are compact
        case OmegaTimesKAlong(lam):
            # w*K(lam[n]+1) partitions cofinally iff its blocks reach alpha
            return compare(lam, alpha) > 0
        case Prefixed(prefix, tail):
            if any(_member_lps(p, alpha) for p in prefix):
                return True
            return _spec_any_member_lps(tail, alpha)
    raise DomainError(f"unknown sequence spec {spec!r}")


def _spec_tail_reach_cofinal(spec: SeqSpec, alpha: Ordinal) -> bool:
    """For every g < alpha, infinitely many members have a clopen of rank >= g."""
    match spec:
        case Constant(c):
            return reach(c, alpha) == alpha
        case KAlong(lam) | OmegaTimesKAlong(lam):
            return compare(lam, alpha) >= 0
        case Prefixed(_, tail):
            return _spec_tail_reach_cofinal(tail, alpha)
    raise DomainError(f"unknown sequence spec {spec!r}")


def _glue_member_lps(spec: SeqSpec, alpha: Ordinal) -> bool:
    # a clopen partition's pieces eventually live inside finitely many
    # members, so the criterion passes to some single member
    return _spec_any_member_lps(spec, alpha)


# -- term grammar -----------------------------------------------------------------

_NAMES = {"sum", "sumw", "glue", "attach", "prefix", "const"}


def _scan_balanced(text: str, start: int, stop_chars: str) -> int:
    """Index of the first depth-0 occurrence of any stop character."""
    depth = 0
    i = start
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            if depth == 0:
                if ch in stop_chars:
                    return i
                raise ParseError("unbalanced bracket", i)
            depth -= 1
        elif depth == 0 and ch in stop_chars:
            return i
        i += 1
    raise ParseError(f"expected one of {stop_chars!r}", len(text))


class _TermParser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.i)

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def literal(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.i):
            self.i += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.literal(s):
            raise self.error(f"expected {s!r}")

    def name(self) -> str:
        self.skip_ws()
        j = self.i
        while j < len(self.text) and (self.text[j].isalnum() or self.text[j] in "-_"):
            j += 1
        word = self.text[self.i : j]
        self.i = j
        return word

    def ordinal_until(self, stop_chars: str) -> Ordinal:
        self.skip_ws()
        end = _scan_balanced(self.text, self.i, stop_chars)
        chunk = self.text[self.i : end]
        try:
            out = parse_ordinal(chunk)
        except ParseError as exc:
            raise ParseError(str(exc), self.i + exc.position) from None
        self.i = end
        return out

    def term(self) -> SpaceTerm:
        out = self.atom()
        while True:
            self.skip_ws()
            if self.text.startswith("(+)", self.i):
                self.i += 3
                rhs = self.atom()
                parts = out.parts if isinstance(out, SumFin) else (out,)
                out = SumFin(parts + (rhs,))
            else:
                return out

    def atom(self) -> SpaceTerm:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            # lone parenthesized term (the (+) operator is caught by term())
            self.expect("(")
            out = self.term()
            self.expect(")")
            return out
        if ch == "1":
            self.i += 1
            return POINT
        if ch == "C":
            self.i += 1
            return CANTOR
        if ch == "N":
            self.i += 1
            return BAIRE
        if ch == "w":
            self.i += 1
            self.expect("*")
            return omega_times(self.atom())
        word = self.name()
        if word in ("K", "Y", "Z"):
            self.expect("(")
            arg = self.ordinal_until(")")
            self.expect(")")
            return {"K": K, "Y": Y, "Z": Z}[word](arg)
        if word == "sum":
            self.expect("(")
            parts = [self.term()]
            while self.literal(","):
                parts.append(self.term())
            self.expect(")")
            return SumFin(tuple(parts))
        if word == "sumw":
            self.expect("(")
            spec = self.seq_spec()
            self.expect(")")
            return SumOmega(spec)
        if word == "glue":
            self.expect("(")
            spec = self.seq_spec()
            self.expect(")")
            return Glue(spec)
        if word == "attach":
            self.expect("(")
            inner = self.term()
            self.expect(")")
            return AttachToCantor(inner)
        raise self.error(f"unexpected input {self.text[self.i:self.i+10]!r}")

    def seq_spec(self) -> SeqSpec:
        word = self.name()
        if word == "const":
            self.expect(":")
            return Constant(self.term())
        if word == "K-along":
            self.expect(":")
            return KAlong(self.ordinal_until(");"))
        if word == "wK-along":
            self.expect(":")
            return OmegaTimesKAlong(self.ordinal_until(");"))
        if word == "prefix":
            self.expect("(")
            self.expect("[")
            parts = [self.term()]
            while self.literal(","):
                parts.append(self.term())
            self.expect("]")
            self.expect(";")
            tail = self.seq_spec()
            self.expect(")")
            return Prefixed(tuple(parts), tail)
        raise self.error(f"unknown sequence spec {word!r}")


def parse_term(text: str) -> SpaceTerm:
    """Parse the ASCII term grammar (1, C, N, K/Y/Z, sum, sumw, glue, attach)."""
    parser = _TermParser(text)
    out = parser.term()
    parser.skip_ws()
    if parser.i != len(parser.text):
        raise parser.error("trailing input")
    return out


def format_term(t: SpaceTerm) -> str:
    """Canonical ASCII rendering; round-trips through parse_term."""
    match t:
        case Empty():
            raise DomainError("the empty space has no surface syntax")
        case Point():
            return "1"
        case Cantor():
            return "C"
        case Baire():
            return "N"
        case K(rank):
            return f"K({format_ordinal(rank)})"
        case Y(rank):
            return f"Y({format_ordinal(rank)})"
        case Z(rank):
            return f"Z({format_ordinal(rank)})"
        case SumFin(parts):
            return "sum(" + ", ".join(format_term(p) for p in parts) + ")"
        case SumOmega(spec):
            return f"sumw({_format_spec(spec)})"
        case Glue(spec):
            return f"glue({_format_spec(spec)})"
        case AttachToCantor(part):
            return f"attach({format_term(part)})"
    raise DomainError(f"unknown term {t!r}")


def _format_spec(spec: SeqSpec) -> str:
    match spec:
        case Constant(c):
            return f"const: {format_term(c)}"
        case KAlong(lam):
            return f"K-along: {format_ordinal(lam)}"
        case OmegaTimesKAlong(lam):
            return f"wK-along: {format_ordinal(lam)}"
        case Prefixed(prefix, tail):
            inner = ", ".join(format_term(p) for p in prefix)
            return f"prefix([{inner}]; {_format_spec(tail)})"
    raise DomainError(f"unknown sequence spec {spec!r}")
