"""Countable ordinals in Cantor normal form, plus the top value T.

An ordinal below epsilon_0 is a finite sum  w^e1*c1 + ... + w^ek*ck  with
ordinal exponents e1 > e2 > ... > ek and positive integer coefficients.
The empty sum is 0.  All arithmetic here is exact and non-commutative in
the usual ordinal sense.

The distinguished value ``THETA`` ("T" in the ASCII grammar) compares
strictly above every ordinal and is never computed with; it only marks
the length of hierarchies on uncountable spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class Ordinal:
    """CNF ordinal: tuple of (exponent, coefficient) with decreasing exponents."""

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exponent, coeff in self.terms:
            if coeff < 1:
                raise DomainError(f"CNF coefficient must be >= 1, got {coeff}")
            if prev is not None and compare(prev, exponent) <= 0:
                raise DomainError("CNF exponents must be strictly decreasing")
            prev = exponent

    # -- ordering ----------------------------------------------------------
    def __lt__(self, other):
        if isinstance(other, _BigTheta):
            return True
        return compare(self, other) < 0

    def __le__(self, other):
        if isinstance(other, _BigTheta):
            return True
        return compare(self, other) <= 0

    def __gt__(self, other):
        if isinstance(other, _BigTheta):
            return False
        return compare(self, other) > 0

    def __ge__(self, other):
        if isinstance(other, _BigTheta):
            return False
        return compare(self, other) >= 0

    # -- arithmetic sugar ----------------------------------------------------
    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __mul__(self, other: "Ordinal") -> "Ordinal":
        return mul(self, other)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


class _BigTheta:
    """The opaque top value; greater than every Ordinal."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _BigTheta)

    def __gt__(self, other):
        return isinstance(other, Ordinal)

    def __ge__(self, other):
        return True

    def __repr__(self):
        return "T"

    def __str__(self):
        return "T"


THETA = _BigTheta()
ExtOrdinal = Union[Ordinal, _BigTheta]

ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def of(n: int) -> Ordinal:
    """The finite ordinal n."""
    if n < 0:
        raise DomainError(f"ordinals are non-negative, got {n}")
    return ZERO if n == 0 else Ordinal(((ZERO, n),))


def omega_power(exponent: Ordinal, coeff: int = 1) -> Ordinal:
    """w^exponent * coeff."""
    if coeff == 0:
        return ZERO
    return Ordinal(((exponent, coeff),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on CNF ordinals: -1, 0 or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum; left summands below b's leading exponent are absorbed."""
    if not b.terms:
        return a
    e0, c0 = b.terms[0]
    prefix = []
    merged = False
    for e, c in a.terms:
        cmp = compare(e, e0)
        if cmp > 0:
            prefix.append((e, c))
        elif cmp == 0:
            prefix.append((e, c + c0))
            merged = True
            break
        else:
            break
    if merged:
        return Ordinal(tuple(prefix) + b.terms[1:])
    return Ordinal(tuple(prefix) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product via CNF: a*w^e = w^(lead(a)+e) for e > 0, finite parts distribute."""
    if not a.terms or not b.terms:
        return ZERO
    e_lead, c_lead = a.terms[0]
    out = ZERO
    for e, c in b.terms:
        if e.terms:  # infinite unit: a * w^e * c
            out = add(out, omega_power(add(e_lead, e), c))
        else:  # finite unit c: only the leading term of a is scaled
            out = add(out, Ordinal(((e_lead, c_lead * c),) + a.terms[1:]))
    return out


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def is_zero(a: Ordinal) -> bool:
    return not a.terms


def is_finite(a: Ordinal) -> bool:
    return not a.terms or (len(a.terms) == 1 and not a.terms[0][0].terms)


def as_int(a: Ordinal) -> int:
    """The integer value of a finite ordinal."""
    if not is_finite(a):
        raise DomainError(f"{a} is not finite")
    return a.terms[0][1] if a.terms else 0


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and bool(a.terms[-1][0].terms)


def is_successor(a: Ordinal) -> bool:
    return bool(a.terms) and not a.terms[-1][0].terms


def split(a: Ordinal) -> tuple[Ordinal, int]:
    """Unique decomposition a = lam + n with lam limit or zero and n finite."""
    if not a.terms:
        return ZERO, 0
    e_last, c_last = a.terms[-1]
    if e_last.terms:
        return a, 0
    return Ordinal(a.terms[:-1]), c_last


def limit_part(a: Ordinal) -> Ordinal:
    return split(a)[0]


def parity(a: Ordinal) -> int:
    """0 for even, 1 for odd; limit ordinals and 0 are even."""
    return split(a)[1] % 2


def pred(a: Ordinal) -> Ordinal:
    """Predecessor of a successor ordinal."""
    lam, n = split(a)
    if n == 0:
        raise DomainError(f"{a} is not a successor")
    return add(lam, of(n - 1))


def is_limit_of_limits(a: Ordinal) -> bool:
    """True when a is a limit whose cofinal approximants are themselves limits."""
    return is_limit(a) and a.terms[-1][0] >= of(2)


def limit_minus_omega(a: Ordinal) -> Ordinal:
    """For a = mu + w (last CNF exponent 1), the prefix mu; error otherwise."""
    if not is_limit(a) or a.terms[-1][0] != ONE:
        raise DomainError(f"{a} is not of the form mu + w")
    e, c = a.terms[-1]
    if c > 1:
        return Ordinal(a.terms[:-1] + ((e, c - 1),))
    return Ordinal(a.terms[:-1])


def fundamental_sequence(lam: Ordinal, n: int) -> Ordinal:
    """Canonical cofinal sequence: peel the last CNF term Wainer-style.

    w^(b+1)[n] = w^b*(n+1) and w^mu[n] = w^(mu[n]) for mu limit; a leading
    prefix passes through unchanged.
    """
    if not is_limit(lam):
        raise DomainError(f"{lam} is not a limit ordinal")
    e, c = lam.terms[-1]
    if c > 1:
        prefix = Ordinal(lam.terms[:-1] + ((e, c - 1),))
    else:
        prefix = Ordinal(lam.terms[:-1])
    if is_successor(e):
        step = omega_power(pred(e), n + 1)
    else:
        step = omega_power(fundamental_sequence(e, n))
    return add(prefix, step)


def odd_fundamental_sequence(lam: Ordinal) -> Iterator[Ordinal]:
    """Strictly increasing sequence of odd ordinals cofinal in the limit lam."""
    last = None
    n = 0
    while True:
        v = fundamental_sequence(lam, n)
        if parity(v) == 0:
            v = successor(v)
        if last is None or v > last:
            last = v
            yield v
        n += 1


# -- text form ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\d+|[w^*+()]|T)")


def _lex(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _OrdParser:
    def __init__(self, tokens: list[tuple[str, int]], length: int):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.length

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.length)
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.peek()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.pos())
        self.i += 1

    def expr(self) -> Ordinal:
        out = self.term()
        while self.peek() == "+":
            self.take()
            out = add(out, self.term())
        return out

    def term(self) -> Ordinal:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected an ordinal term", self.pos())
        if tok.isdigit():
            self.take()
            return of(int(tok))
        if tok == "w":
            self.take()
            exponent = ONE
            if self.peek() == "^":
                self.take()
                exponent = self.exponent()
            coeff = 1
            if self.peek() == "*":
                self.take()
                c = self.take()
                if not c.isdigit() or int(c) < 1:
                    raise ParseError("coefficient must be a positive integer", self.pos())
                coeff = int(c)
            return omega_power(exponent, coeff)
        raise ParseError(f"unexpected token {tok!r} in ordinal", self.pos())

    def exponent(self) -> Ordinal:
        tok = self.peek()
        if tok == "(":
            self.take()
            out = self.expr()
            self.expect(")")
            return out
        if tok is not None and tok.isdigit():
            self.take()
            return of(int(tok))
        if tok == "w":
            self.take()
            if self.peek() == "^":
                self.take()
                return omega_power(self.exponent())
            return OMEGA
        raise ParseError(f"unexpected token {tok!r} in exponent", self.pos())


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ASCII grammar (0, naturals, w, w^a, *n, +); normalizes sums."""
    parser = _OrdParser(_lex(text), len(text))
    out = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()!r}", parser.pos())
    return out


def parse_ext(text: str) -> ExtOrdinal:
    """Like parse_ordinal but accepting T for the top value."""
    if text.strip() == "T":
        return THETA
    return parse_ordinal(text)


def _format_exponent(e: Ordinal) -> str:
    text = format_ordinal(e)
    if "+" in text or "*" in text:
        return f"({text})"
    return text


def format_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if not e.terms:
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        else:
            base = f"w^{_format_exponent(e)}"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def format_ext(x: ExtOrdinal) -> str:
    return "T" if isinstance(x, _BigTheta) else format_ordinal(x)


def omax(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if compare(a, b) >= 0 else b


def omin(a: Ordinal, b: Ordinal) -> Ordinal:
    return a if compare(a, b) <= 0 else b
