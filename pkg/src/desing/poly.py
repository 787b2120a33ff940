"""Sparse exact multivariate polynomials over Q.

A polynomial is a map from exponent tuples to nonzero Fractions.  The number
of variables is fixed per value; variable *names* are kept separately (see
`Ring`) and only matter for parsing and printing.  Values are immutable in
use: no operation mutates its operands, so polynomials can be shared freely
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, RingMismatch

Monomial = tuple  # tuple[int, ...], length = ambient variable count


class Ring:
    """Variable-name context; polynomials themselves only know arity."""

    __slots__ = ("names", "index")

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")
        self.index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def extend(self, extra: Sequence[str]) -> "Ring":
        return Ring(self.names + tuple(extra))

    def var(self, name: str) -> "Polynomial":
        return Polynomial.variable(self.index[name], self.nvars)

    def gens(self) -> list["Polynomial"]:
        return [Polynomial.variable(i, self.nvars) for i in range(self.nvars)]

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Ring({', '.join(self.names)})"


class Polynomial:
    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction], nvars: int):
        # Strips zero coefficients; the zero polynomial is the empty map.
        clean = {}
        for mono, coeff in terms.items():
            if coeff:
                clean[mono] = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial({}, nvars)

    @staticmethod
    def constant(value, nvars: int) -> "Polynomial":
        value = Fraction(value)
        if not value:
            return Polynomial.zero(nvars)
        return Polynomial({(0,) * nvars: value}, nvars)

    @staticmethod
    def variable(index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} vars")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return Polynomial({mono: Fraction(1)}, nvars)

    @staticmethod
    def monomial(exponents: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial({tuple(exponents): Fraction(coeff)}, len(exponents))

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        (mono, coeff), = self.terms.items()
        if any(mono):
            raise ValueError("not a constant")
        return coeff

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return -1
        return max(m[index] for m in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise RingMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            if acc is None:
                terms[mono] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[mono] = acc
                else:
                    del terms[mono]
        result = Polynomial.__new__(Polynomial)
        result.terms = terms
        result.nvars = self.nvars
        result._hash = None
        return result

    __radd__ = __add__

    def __neg__(self):
        result = Polynomial.__new__(Polynomial)
        result.terms = {m: -c for m, c in self.terms.items()}
        result.nvars = self.nvars
        result._hash = None
        return result

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Polynomial.zero(self.nvars)
            result = Polynomial.__new__(Polynomial)
            result.terms = {m: c * other for m, c in self.terms.items()}
            result.nvars = self.nvars
            result._hash = None
            return result
        self._check(other)
        terms: dict = {}
        if len(self.terms) > len(other.terms):
            left, right = other, self
        else:
            left, right = self, other
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc = terms.get(mono)
                if acc is None:
                    terms[mono] = c1 * c2
                else:
                    acc = acc + c1 * c2
                    if acc:
                        terms[mono] = acc
                    else:
                        del terms[mono]
        result = Polynomial.__new__(Polynomial)
        result.terms = terms
        result.nvars = self.nvars
        result._hash = None
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and structure -----------------------------------------

    def derivative(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to variable `index`."""
        terms = {}
        for mono, coeff in self.terms.items():
            e = mono[index]
            if e:
                new = mono[:index] + (e - 1,) + mono[index + 1:]
                acc = terms.get(new)
                val = coeff * e
                terms[new] = val if acc is None else acc + val
        return Polynomial({m: c for m, c in terms.items() if c}, self.nvars)

    def extend(self, nvars: int) -> "Polynomial":
        """Reinterpret in a larger ring (new variables appended, unused)."""
        if nvars == self.nvars:
            return self
        if nvars < self.nvars:
            raise RingMismatch("cannot shrink a polynomial's ring")
        pad = (0,) * (nvars - self.nvars)
        result = Polynomial.__new__(Polynomial)
        result.terms = {m + pad: c for m, c in self.terms.items()}
        result.nvars = nvars
        result._hash = None
        return result

    def insert_var(self, position: int) -> "Polynomial":
        """Add one unused variable at `position` (for elimination setups)."""
        result = Polynomial.__new__(Polynomial)
        result.terms = {
            m[:position] + (0,) + m[position:]: c for m, c in self.terms.items()
        }
        result.nvars = self.nvars + 1
        result._hash = None
        return result

    def drop_var(self, position: int) -> "Polynomial":
        """Remove a variable that does not occur (inverse of insert_var)."""
        terms = {}
        for m, c in self.terms.items():
            if m[position]:
                raise ValueError("variable occurs; cannot drop")
            terms[m[:position] + m[position + 1:]] = c
        result = Polynomial.__new__(Polynomial)
        result.terms = terms
        result.nvars = self.nvars - 1
        result._hash = None
        return result

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; 0 for zero."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for coeff in self.terms.values():
            num = int_gcd(num, coeff.numerator)
            den = den * coeff.denominator // int_gcd(den, coeff.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Polynomial":
        """self / content, sign-normalized so the degrevlex lead is positive."""
        if not self.terms:
            return self
        c = self.content()
        lead = max(self.terms, key=_degrevlex_key)
        if self.terms[lead] < 0:
            c = -c
        return self * (1 / c)

    def max_coeff_bits(self) -> int:
        bits = 0
        for coeff in self.terms.values():
            bits = max(bits, coeff.numerator.bit_length(), coeff.denominator.bit_length())
        return bits

    def divides(self, other: "Polynomial") -> bool:
        return exact_div(other, self) is not None

    # -- printing --------------------------------------------------------

    def render(self, ring: Ring) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_degrevlex_key, reverse=True):
            coeff = self.terms[mono]
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(ring.names[i])
                elif e > 1:
                    factors.append(f"{ring.names[i]}^{e}")
            body = "*".join(factors)
            acoeff = abs(coeff)
            if not body:
                text = str(acoeff)
            elif acoeff == 1:
                text = body
            else:
                text = f"{acoeff}*{body}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, text))
        first_sign, first_text = parts[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Polynomial({self.terms!r}, nvars={self.nvars})"


def _degrevlex_key(mono: Monomial):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def exact_div(dividend: Polynomial, divisor: Polynomial):
    """Quotient if divisor divides dividend exactly, else None."""
    if divisor.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if dividend.is_zero():
        return Polynomial.zero(dividend.nvars)
    if dividend.nvars != divisor.nvars:
        raise RingMismatch("mismatched variable count")
    lead = max(divisor.terms, key=_degrevlex_key)
    lead_coeff = divisor.terms[lead]
    remainder = dict(dividend.terms)
    quotient: dict = {}
    while remainder:
        mono = max(remainder, key=_degrevlex_key)
        diff = tuple(a - b for a, b in zip(mono, lead))
        if any(e < 0 for e in diff):
            return None
        coeff = remainder[mono] / lead_coeff
        quotient[diff] = coeff
        for dm, dc in divisor.terms.items():
            target = tuple(a + b for a, b in zip(diff, dm))
            acc = remainder.get(target, Fraction(0)) - coeff * dc
            if acc:
                remainder[target] = acc
            else:
                remainder.pop(target, None)
    return Polynomial(quotient, dividend.nvars)


# -- parsing -------------------------------------------------------------

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


class _Tokenizer:
    def __init__(self, text: str, line_offset: int = 1):
        self.text = text
        self.pos = 0
        self.line = line_offset
        self.col = 1
        self.tokens = []
        self._tokenize()
        self.at = 0

    def _error(self, message):
        raise ParseError(message, self.line, self.col)

    def _tokenize(self):
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "\n":
                self.pos += 1
                self.line += 1
                self.col = 1
                continue
            if ch in " \t\r":
                self.pos += 1
                self.col += 1
                continue
            start_line, start_col = self.line, self.col
            if ch in "+-*^/()":
                self.tokens.append((ch, ch, start_line, start_col))
                self.pos += 1
                self.col += 1
            elif ch.isdigit():
                j = self.pos
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[self.pos:j], start_line, start_col))
                self.col += j - self.pos
                self.pos = j
            elif ch in _IDENT_START:
                j = self.pos
                while j < len(text) and text[j] in _IDENT_CONT:
                    j += 1
                self.tokens.append(("ident", text[self.pos:j], start_line, start_col))
                self.col += j - self.pos
                self.pos = j
            else:
                self._error(f"unexpected character {ch!r}")
        self.tokens.append(("end", "", self.line, self.col))

    def peek(self):
        return self.tokens[self.at]

    def next(self):
        tok = self.tokens[self.at]
        if tok[0] != "end":
            self.at += 1
        return tok


def parse_polynomial(text: str, ring: Ring, line_offset: int = 1) -> Polynomial:
    """Parse the shared text grammar.

    Coefficients are integers or `p/q` rationals, `^` is power, `*` is
    product (juxtaposition is not allowed), whitespace is insignificant.
    """
    toks = _Tokenizer(text, line_offset)
    poly = _parse_sum(toks, ring)
    kind, value, line, col = toks.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {value!r}", line, col)
    return poly


def _parse_sum(toks, ring):
    kind, _, _, _ = toks.peek()
    negate = False
    if kind in "+-":
        negate = toks.next()[0] == "-"
    acc = _parse_product(toks, ring)
    if negate:
        acc = -acc
    while True:
        kind, _, _, _ = toks.peek()
        if kind == "+":
            toks.next()
            acc = acc + _parse_product(toks, ring)
        elif kind == "-":
            toks.next()
            acc = acc - _parse_product(toks, ring)
        else:
            return acc


def _parse_product(toks, ring):
    acc = _parse_power(toks, ring)
    while toks.peek()[0] == "*":
        toks.next()
        acc = acc * _parse_power(toks, ring)
    return acc


def _parse_power(toks, ring):
    base = _parse_atom(toks, ring)
    if toks.peek()[0] == "^":
        toks.next()
        kind, value, line, col = toks.next()
        if kind != "int":
            raise ParseError("exponent must be a non-negative integer", line, col)
        return base ** int(value)
    return base


def _parse_atom(toks, ring):
    kind, value, line, col = toks.next()
    if kind == "-":
        return -_parse_atom(toks, ring)
    if kind == "int":
        numerator = int(value)
        if toks.peek()[0] == "/":
            toks.next()
            dkind, dvalue, dline, dcol = toks.next()
            if dkind != "int" or int(dvalue) == 0:
                raise ParseError("denominator must be a positive integer", dline, dcol)
            return Polynomial.constant(Fraction(numerator, int(dvalue)), ring.nvars)
        return Polynomial.constant(numerator, ring.nvars)
    if kind == "ident":
        if value not in ring.index:
            raise ParseError(f"unknown variable {value!r}", line, col)
        return ring.var(value)
    if kind == "(":
        inner = _parse_sum(toks, ring)
        kind, value, line, col = toks.next()
        if kind != ")":
            raise ParseError("expected ')'", line, col)
        return inner
    raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input",
                     line, col)


def parse_many(texts: Iterable[str], ring: Ring) -> list[Polynomial]:
    return [parse_polynomial(t, ring) for t in texts]
