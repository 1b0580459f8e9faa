"""Exact arithmetic on ordinals below epsilon_0 in Cantor normal form.

An ordinal is a finite sum ``w^e1*c1 + ... + w^ek*ck`` with exponents
``e1 > e2 > ... > ek`` (themselves ordinals) and integer coefficients
``ci >= 1``; the empty sum is 0.  This shape is closed under everything the
package needs: comparison, addition, multiplication, natural (Hessenberg)
sum, left subtraction and division by w.  Canonical form is unique, so
structural equality is ordinal equality.

Textual syntax: terms ``w^E*c`` joined by ``+``, e.g. ``w^2*3+w*5+7``.
A compound exponent (several terms, or a coefficient) is parenthesised,
``w^(w+1)``, so rendering and parsing are mutually inverse; a bare
exponent binds tightest, so ``w^w*2`` is (w^w)*2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "compare",
    "add",
    "mul",
    "succ",
    "sub",
    "is_limit",
    "div_omega",
    "natural_sum",
    "omega_power",
    "parse_ordinal",
    "OrdinalSyntaxError",
]


class OrdinalSyntaxError(ValueError):
    """Raised on malformed ordinal literals; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@total_ordering
@dataclass(frozen=True, slots=True)
class Ordinal:
    """An ordinal below epsilon_0, as a tuple of (exponent, coefficient) terms."""

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if coeff < 1:
                raise ValueError(f"coefficient {coeff} < 1")
            if prev is not None and compare(exp, prev) >= 0:
                raise ValueError("exponents not strictly decreasing")
            prev = exp

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return Ordinal(((ZERO, n),)) if n else ZERO

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def as_int(self) -> int:
        """The integer value of a finite ordinal."""
        if self.is_zero:
            return 0
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1]

    @property
    def leading_exponent(self) -> "Ordinal":
        if self.is_zero:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero:
            raise ValueError("0 has no leading coefficient")
        return self.terms[0][1]

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __mul__(self, other: "Ordinal") -> "Ordinal":
        return mul(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(_render_term(e, c) for e, c in self.terms)

    def __repr__(self) -> str:
        return f"Ordinal<{self}>"


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on CNF: -1, 0 or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    lead = b.terms[0][0]
    keep = []
    merge_coeff = 0
    for exp, coeff in a.terms:
        c = compare(exp, lead)
        if c > 0:
            keep.append((exp, coeff))
        elif c == 0:
            merge_coeff = coeff
            break
        else:
            break
    head = b.terms[0]
    merged = (head[0], head[1] + merge_coeff)
    return Ordinal(tuple(keep) + (merged,) + b.terms[1:])


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if a.is_zero or b.is_zero:
        return ZERO
    lead_exp, lead_coeff = a.terms[0]
    out = ZERO
    for exp, coeff in b.terms:
        if exp.is_zero:
            part = Ordinal(((lead_exp, lead_coeff * coeff),) + a.terms[1:])
        else:
            part = Ordinal(((add(lead_exp, exp), coeff),))
        out = add(out, part)
    return out


def succ(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def is_limit(a: Ordinal) -> bool:
    return bool(a.terms) and not a.terms[-1][0].is_zero


def sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique c with b + c = a; defined only for b <= a."""
    ca = list(a.terms)
    cb = list(b.terms)
    while ca and cb:
        (ea, na), (eb, nb) = ca[0], cb[0]
        c = compare(ea, eb)
        if c > 0:
            return Ordinal(tuple(ca))
        if c < 0:
            raise ValueError(f"cannot subtract {b} from {a}")
        if na > nb:
            return Ordinal(((ea, na - nb),) + tuple(ca[1:]))
        if na < nb:
            raise ValueError(f"cannot subtract {b} from {a}")
        ca.pop(0)
        cb.pop(0)
    if cb:
        raise ValueError(f"cannot subtract {b} from {a}")
    return Ordinal(tuple(ca))


def div_omega(a: Ordinal) -> Ordinal:
    """The unique d with w*d <= a < w*(d+1).

    Drops the exponent-0 term and left-subtracts 1 from every remaining
    exponent (for an infinite exponent e, 1 + e = e, so e is unchanged).
    """
    terms = []
    for exp, coeff in a.terms:
        if exp.is_zero:
            continue
        terms.append((sub(exp, ONE), coeff))
    return Ordinal(tuple(terms))


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum: coefficients of equal exponents add."""
    coeffs: dict[Ordinal, int] = {}
    for exp, coeff in a.terms + b.terms:
        coeffs[exp] = coeffs.get(exp, 0) + coeff
    ordered = sorted(coeffs, key=_SortKey, reverse=True)
    return Ordinal(tuple((e, coeffs[e]) for e in ordered))


def omega_power(exp: Ordinal, coeff: int = 1) -> Ordinal:
    return Ordinal(((exp, coeff),)) if coeff else ZERO


class _SortKey:
    __slots__ = ("o",)

    def __init__(self, o: Ordinal):
        self.o = o

    def __lt__(self, other: "_SortKey") -> bool:
        return compare(self.o, other.o) < 0


def _render_term(exp: Ordinal, coeff: int) -> str:
    if exp.is_zero:
        return str(coeff)
    if exp == ONE:
        base = "w"
    else:
        inner = str(exp)
        simple = len(exp.terms) == 1 and (exp.terms[0][1] == 1 or exp.terms[0][0].is_zero)
        base = f"w^{inner}" if simple else f"w^({inner})"
    return base if coeff == 1 else f"{base}*{coeff}"


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ordinal literal grammar; raises OrdinalSyntaxError with offset."""
    parser = _Parser(text)
    value = parser.parse_ordinal()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        raise OrdinalSyntaxError("trailing input", parser.pos)
    return value


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise OrdinalSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def parse_ordinal(self) -> Ordinal:
        total = self.parse_term()
        while self.peek() == "+":
            self.pos += 1
            total = add(total, self.parse_term())
        return total

    def parse_term(self) -> Ordinal:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            exp = ONE
            if self.peek() == "^":
                self.pos += 1
                exp = self.parse_exponent()
            coeff = 1
            if self.peek() == "*":
                self.pos += 1
                coeff = self.parse_int()
                if coeff < 1:
                    raise OrdinalSyntaxError("coefficient must be >= 1", self.pos)
            return omega_power(exp, coeff)
        if ch.isdigit():
            return Ordinal.from_int(self.parse_int())
        raise OrdinalSyntaxError("expected term", self.pos)

    def parse_exponent(self) -> Ordinal:
        # Tightest binding: a bare 'w' chain or integer; parentheses for sums.
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_ordinal()
            self.expect(")")
            return inner
        if ch == "w":
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                return omega_power(self.parse_exponent())
            return OMEGA
        if ch.isdigit():
            return Ordinal.from_int(self.parse_int())
        raise OrdinalSyntaxError("expected exponent", self.pos)

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise OrdinalSyntaxError("expected integer", start)
        return int(self.text[start:self.pos])
