"""Exact multivariate polynomials over the rationals.

Polynomials live in Q[d1, ..., dn], where ``di`` stands for the i-th partial
differentiation symbol.  A :class:`Poly` is an immutable sparse map from
exponent tuples to nonzero :class:`~fractions.Fraction` coefficients.

Variable indices are 0-based in the Python API and 1-based in the text
grammar (``d1`` is index 0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd as igcd, isqrt
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Exps = Tuple[int, ...]

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order; ``key`` maps exponents so that larger means bigger.

    ``kind`` is one of ``"degrevlex"``, ``"lex"`` or ``"block"``.  A block
    order compares the first ``split`` exponents lexicographically and breaks
    ties with degrevlex on the rest.
    """

    kind: str = "degrevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.split < 0:
            raise ValueError("block split must be non-negative")

    def key(self, exps: Exps):
        return _order_key(self.kind, self.split, exps)

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


@lru_cache(maxsize=1 << 16)
def _order_key(kind, split, exps):
    if kind == "degrevlex":
        return (sum(exps), tuple(-e for e in reversed(exps)))
    if kind == "lex":
        return exps
    head, tail = exps[:split], exps[split:]
    return (head, sum(tail), tuple(-e for e in reversed(tail)))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


# ---------------------------------------------------------------------------
# Poly


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _check_compatible(a: "Poly", b: "Poly"):
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")


class Poly:
    """Immutable sparse polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exps, object]] = None, nvars: int = 1):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = _as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exps, Fraction], nvars: int) -> "Poly":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        c = _as_fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.constant(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw({tuple(exps): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Poly":
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def parse(cls, text: str, nvars: int) -> "Poly":
        return parse_poly(text, nvars)

    # predicates and accessors ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int):
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def variables(self) -> List[int]:
        """Sorted indices of the variables that actually occur."""
        seen = set()
        for e in self.terms:
            seen.update(i for i, x in enumerate(e) if x)
        return sorted(seen)

    def is_univariate(self) -> bool:
        return len(self.variables()) <= 1

    def leading_term(self, order: MonomialOrder = DEGREVLEX) -> Tuple[Exps, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Exps:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> Fraction:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> List[Tuple[Exps, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            _check_compatible(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw({e: c * other for e, c in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly._raw(terms, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by a nonzero scalar only; polynomial division is exact_div
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exps: Exps, coeff=Fraction(1)) -> "Poly":
        return Poly._raw(
            {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()},
            self.nvars,
        )

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # evaluation and calculus -----------------------------------------------

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        point = [_as_fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v *= x ** e
            total += v
        return total

    def __call__(self, *point):
        return self.eval(point)

    def substitute(self, values: Mapping[int, object]) -> "Poly":
        """Fix the variables in ``values`` to rational numbers; ``nvars`` is kept."""
        values = {i: _as_fraction(v) for i, v in values.items()}
        terms: Dict[Exps, Fraction] = {}
        for exps, c in self.terms.items():
            e = list(exps)
            for i, v in values.items():
                if e[i]:
                    c = c * v ** e[i]
                    e[i] = 0
            if c:
                key = tuple(e)
                s = terms.get(key, 0) + c
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return Poly._raw(terms, self.nvars)

    def partial_derivative(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        terms = {}
        for exps, c in self.terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                terms[tuple(e)] = c * exps[i]
        return Poly._raw(terms, self.nvars)

    # normalization ---------------------------------------------------------

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num = reduce(igcd, (c.numerator for c in self.terms.values()))
        den = reduce(_ilcm, (c.denominator for c in self.terms.values()))
        return Fraction(abs(num), den)

    def primitive(self, order: MonomialOrder = DEGREVLEX) -> "Poly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient(order) < 0:
            c = -c
        return self * (1 / c)

    def integer_coefficients(self) -> Dict[Exps, int]:
        p = self.primitive()
        return {e: int(c) for e, c in p.terms.items()}

    # division --------------------------------------------------------------

    def divmod(self, divisor: "Poly", order: MonomialOrder = DEGREVLEX) -> Tuple["Poly", "Poly"]:
        """Multivariate division by a single polynomial; remainder is 0 iff divisible."""
        _check_compatible(self, divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = divisor.leading_term(order)
        quo: Dict[Exps, Fraction] = {}
        rem: Dict[Exps, Fraction] = {}
        r = dict(self.terms)
        while r:
            e = max(r, key=order.key)
            c = r[e]
            if all(a >= b for a, b in zip(e, lm)):
                shift = tuple(a - b for a, b in zip(e, lm))
                q = c / lc
                quo[shift] = quo.get(shift, 0) + q
                for de, dc in divisor.terms.items():
                    key = tuple(a + b for a, b in zip(de, shift))
                    s = r.get(key, 0) - q * dc
                    if s:
                        r[key] = s
                    else:
                        r.pop(key, None)
            else:
                rem[e] = c
                del r[e]
        quo = {e: c for e, c in quo.items() if c}
        return Poly._raw(quo, self.nvars), Poly._raw(rem, self.nvars)

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ValueError`` if not divisible."""
        _check_compatible(self, divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            return self / divisor.constant_value()
        lm, lc = divisor.leading_term(DEGREVLEX)
        quo: Dict[Exps, Fraction] = {}
        r = dict(self.terms)
        key = DEGREVLEX.key
        while r:
            e = max(r, key=key)
            if not all(a >= b for a, b in zip(e, lm)):
                raise ValueError("polynomial is not divisible")
            shift = tuple(a - b for a, b in zip(e, lm))
            q = r[e] / lc
            quo[shift] = q
            for de, dc in divisor.terms.items():
                k = tuple(a + b for a, b in zip(de, shift))
                s = r.get(k, 0) - q * dc
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return Poly._raw(quo, self.nvars)

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    # univariate views ------------------------------------------------------

    def coefficients_in(self, i: int) -> Dict[int, "Poly"]:
        """Coefficients of ``self`` viewed as a polynomial in variable ``i``."""
        out: Dict[int, Dict[Exps, Fraction]] = {}
        for exps, c in self.terms.items():
            e = list(exps)
            k = e[i]
            e[i] = 0
            out.setdefault(k, {})[tuple(e)] = c
        return {k: Poly._raw(t, self.nvars) for k, t in out.items()}

    def univariate_coeffs(self, i: Optional[int] = None) -> List[Fraction]:
        """Dense coefficient list (index = power) of an effectively univariate poly."""
        vs = self.variables()
        if len(vs) > 1:
            raise ValueError("polynomial is not univariate")
        if i is None:
            i = vs[0] if vs else 0
        elif vs and vs[0] != i:
            raise ValueError(f"polynomial does not live in variable {i}")
        if not self.terms:
            return []
        coeffs = [Fraction(0)] * (self.degree_in(i) + 1)
        for exps, c in self.terms.items():
            coeffs[exps[i]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, coeffs: Sequence, i: int, nvars: int) -> "Poly":
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[i] = k
                terms[tuple(e)] = _as_fraction(c)
        return cls._raw(terms, nvars)

    # text ------------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"


def _ilcm(a: int, b: int) -> int:
    return a // igcd(a, b) * b


# spec-facing functional aliases


def add(a: Poly, b: Poly) -> Poly:
    _check_compatible(a, b)
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    _check_compatible(a, b)
    return a * b


def neg(a: Poly) -> Poly:
    return -a


def evaluate(p: Poly, point: Sequence) -> Fraction:
    return p.eval(point)


def partial_derivative(p: Poly, i: int) -> Poly:
    return p.partial_derivative(i)


# ---------------------------------------------------------------------------
# text grammar


class PolyParseError(ValueError):
    """Syntax error in polynomial text; ``column`` is 1-based."""

    def __init__(self, message: str, column: int, text: str = ""):
        self.column = column
        self.text = text
        super().__init__(f"{message} (column {column})")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_]\w*)|(?P<op>[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise PolyParseError(f"unexpected character {text[col - 1]!r}", col, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("num", "var") or tok[1] == "(":
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail(f"unexpected {tok[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.unary()
            elif tok[0] in ("num", "var") or (tok[0] == "op" and tok[1] == "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            else:
                return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or "/" in exp_tok[1]:
                self.fail("exponent must be a non-negative integer", exp_tok)
            return base ** int(exp_tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, value, col = tok
        if kind == "num":
            return Poly.constant(Fraction(value), self.nvars)
        if kind == "var":
            m = re.fullmatch(r"d(\d+)", value)
            if not m:
                self.fail(f"unknown variable {value!r}", tok)
            idx = int(m.group(1))
            if not 1 <= idx <= self.nvars:
                self.fail(f"unknown variable {value!r} (vars: {self.nvars})", tok)
            return Poly.var(idx - 1, self.nvars)
        if kind == "op" and value == "(":
            p = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return p
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {value!r}", tok)


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse ``text`` such as ``"d1^2*d2 - 3/2*d3"`` into a :class:`Poly`."""
    return _Parser(text, nvars).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, order: MonomialOrder = DEGREVLEX) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.sorted_terms(order):
        mono = "*".join(
            f"d{i + 1}" if e == 1 else f"d{i + 1}^{e}" for i, e in enumerate(exps) if e
        )
        a = abs(c)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# gcd


def _normalize(p: Poly) -> Poly:
    return p.primitive(DEGREVLEX)


def _content_in(p: Poly, i: int) -> Poly:
    coeffs = list(p.coefficients_in(i).values())
    return _gcd_many(coeffs)


def _gcd_many(polys: Iterable[Poly]) -> Poly:
    g = None
    for q in polys:
        if q.is_zero():
            continue
        g = _normalize(q) if g is None else _gcd(g, q)
        if g.is_constant():
            return Poly.one(g.nvars)
    return g


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` with respect to variable ``i``."""
    db = b.degree_in(i)
    lcb = b.coefficients_in(i)[db]
    r = a
    while not r.is_zero() and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lcr = r.coefficients_in(i)[dr]
        shift = [0] * a.nvars
        shift[i] = dr - db
        r = r * lcb - (b * lcr).mul_monomial(tuple(shift))
    return r


def _gcd(a: Poly, b: Poly) -> Poly:
    """Normalized gcd of two nonzero polynomials (recursive primitive PRS)."""
    if a.is_zero():
        return _normalize(b)
    if b.is_zero():
        return _normalize(a)
    if a.is_constant() or b.is_constant():
        return Poly.one(a.nvars)
    va, vb = set(a.variables()), set(b.variables())
    x = max(va | vb)
    if x not in va:
        return _gcd(a, _content_in(b, x))
    if x not in vb:
        return _gcd(_content_in(a, x), b)
    ca, cb = _content_in(a, x), _content_in(b, x)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    c = _gcd(ca, cb)
    if pa.degree_in(x) < pb.degree_in(x):
        pa, pb = pb, pa
    pa, pb = _normalize(pa), _normalize(pb)
    while True:
        r = _prem(pa, pb, x)
        if r.is_zero():
            g = pb
            break
        if r.degree_in(x) == 0:
            g = Poly.one(a.nvars)
            break
        pa, pb = pb, _normalize(r.exact_div(_content_in(r, x)))
    return _normalize(c * g)


def gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, primitive with positive leading coefficient."""
    _check_compatible(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return _gcd(a, b)


def gcd_list(polys: Sequence[Poly]) -> Poly:
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero polynomials is undefined")
    return _gcd_many(nonzero)


def is_squarefree(p: Poly) -> bool:
    """True iff no non-constant square divides ``p`` (gcd with all partials is 1)."""
    if p.is_zero():
        return False
    if p.is_constant():
        return True
    g = _gcd_many([p] + [p.partial_derivative(i) for i in p.variables()])
    return g.is_constant()


# ---------------------------------------------------------------------------
# square-free decomposition and factoring


def _sort_factors(pairs):
    return sorted(pairs, key=lambda fm: (fm[0].degree(), str(fm[0]), fm[1]))


def _yun(f: Poly, x: int) -> List[Tuple[Poly, int]]:
    out = []
    df = f.partial_derivative(x)
    g = _gcd(f, df)
    c = f.exact_div(g)
    d = df.exact_div(g) - c.partial_derivative(x)
    k = 1
    while not c.is_constant():
        a = _gcd(c, d)
        if not a.is_constant():
            out.append((a, k))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.partial_derivative(x)
        k += 1
    return out


def _sqf(p: Poly) -> List[Tuple[Poly, int]]:
    if p.is_constant():
        return []
    out = []
    n = p.nvars
    low = [min(e[i] for e in p.terms) for i in range(n)]
    if any(low):
        for i, m in enumerate(low):
            if m:
                out.append((Poly.var(i, n), m))
        p = p.exact_div(Poly.monomial(low))
        if p.is_constant():
            return out
    x = max(p.variables())
    c = _content_in(p, x)
    out.extend(_sqf(c))
    out.extend(_yun(_normalize(p.exact_div(c)), x))
    return out


def squarefree_decomposition(p: Poly) -> List[Tuple[Poly, int]]:
    """Pairwise coprime square-free factors with multiplicities.

    The product of ``f**m`` equals ``p`` up to a nonzero constant.  Factors
    are split further whenever they separate into variable-disjoint pieces,
    but a factor is not guaranteed irreducible.
    """
    if p.is_zero() or p.is_constant():
        raise ValueError("square-free decomposition needs a non-constant polynomial")
    return _sort_factors(_sqf(p))


def _divisors(n: int) -> List[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _int_coeffs(coeffs: Sequence[Fraction]) -> List[int]:
    den = reduce(_ilcm, (Fraction(c).denominator for c in coeffs), 1)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = reduce(igcd, ints, 0)
    return [c // g for c in ints] if g else ints


def _horner(coeffs: Sequence, x):
    v = 0
    for c in reversed(coeffs):
        v = v * x + c
    return v


def rational_roots(p: Poly) -> List[Fraction]:
    """Distinct rational roots of an effectively univariate polynomial, ascending."""
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    coeffs = _int_coeffs(p.univariate_coeffs())
    roots = set()
    low = next(k for k, c in enumerate(coeffs) if c)
    if low:
        roots.add(Fraction(0))
        coeffs = coeffs[low:]
    if len(coeffs) <= 1:
        return sorted(roots)
    deg = len(coeffs) - 1
    if deg == 1:
        roots.add(Fraction(-coeffs[0], coeffs[1]))
    elif deg == 2:
        c, b, a = coeffs
        disc = b * b - 4 * a * c
        if disc >= 0 and isqrt(disc) ** 2 == disc:
            s = isqrt(disc)
            roots.update((Fraction(-b + s, 2 * a), Fraction(-b - s, 2 * a)))
    else:
        a0, an = coeffs[0], coeffs[-1]
        for q in _divisors(an):
            for r in _divisors(a0):
                if igcd(r, q) != 1:
                    continue
                for num in (r, -r):
                    # q^deg * p(num/q), kept in integers
                    v, qp = 0, 1
                    for c in reversed(coeffs):
                        v = v * num + c * qp
                        qp *= q
                    if v == 0:
                        roots.add(Fraction(num, q))
    return sorted(roots)


def _poly_divmod_dense(a: List[Fraction], b: List[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        c = Fraction(a[-1]) / b[-1]
        q[k] = c
        for j, bc in enumerate(b):
            a[j + k] -= c * bc
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _lagrange(xs: Sequence[int], ys: Sequence[int]) -> List[Fraction]:
    """Coefficients of the interpolating polynomial through (xs, ys)."""
    n = len(xs)
    result = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = Fraction(ys[i]) / denom
        for k in range(n):
            result[k] += scale * basis[k]
    return result


def _kronecker_factor(coeffs: List[int], min_deg: int) -> Optional[List[int]]:
    """Find an integer factor of degree in [min_deg, deg/2], or ``None``.

    ``coeffs`` is primitive, square-free, and without rational roots.
    """
    deg = len(coeffs) - 1
    lead = coeffs[-1]
    pts = []
    x = 0
    while len(pts) < deg + 8:
        for cand in ((x, -x) if x else (0,)):
            v = _horner(coeffs, cand)
            pts.append((len(_divisors(v)), cand, v))
        x += 1
    pts.sort()
    for s in range(max(min_deg, 2), deg // 2 + 1):
        chosen = pts[: s + 1]
        xs = [c for _, c, _ in chosen]
        choices = []
        for idx, (_, _, v) in enumerate(chosen):
            divs = _divisors(v)
            # fix the sign at the first point: h and -h are the same factor
            choices.append(divs if idx == 0 else divs + [-d for d in divs])
        for ys in product(*choices):
            h = _lagrange(xs, ys)
            while h and h[-1] == 0:
                h.pop()
            if len(h) - 1 != s:
                continue
            if any(c.denominator != 1 for c in h):
                continue
            hi = [int(c) for c in h]
            if lead % hi[-1]:
                continue
            _, rem = _poly_divmod_dense([Fraction(c) for c in coeffs], [Fraction(c) for c in hi])
            if not any(rem):
                return hi
    return None


def _factor_dense(coeffs: List[int]) -> List[List[int]]:
    """Irreducible factors of a primitive square-free integer polynomial."""
    out = []
    work = [Fraction(c) for c in coeffs]
    p = Poly.from_univariate(work, 0, 1)
    for r in rational_roots(p):
        lin = [Fraction(-r.numerator), Fraction(r.denominator)]
        out.append([-r.numerator, r.denominator])
        work, _ = _poly_divmod_dense(work, lin)
    rest = _int_coeffs(work)
    min_deg = 2
    while len(rest) - 1 >= 4:
        h = _kronecker_factor(rest, min_deg)
        if h is None:
            break
        out.append(h)
        q, _ = _poly_divmod_dense([Fraction(c) for c in rest], [Fraction(c) for c in h])
        rest = _int_coeffs(q)
        min_deg = len(h) - 1
    if len(rest) > 1:
        out.append(rest)
    return out


def univariate_factor(p: Poly) -> List[Tuple[Poly, int]]:
    """Irreducible factorization over Q of an effectively univariate polynomial."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    vs = p.variables()
    if len(vs) > 1:
        raise ValueError("univariate_factor needs a polynomial in one variable")
    if not vs:
        return []
    i = vs[0]
    out = []
    for f, m in squarefree_decomposition(p):
        for h in _factor_dense(_int_coeffs(f.univariate_coeffs(i))):
            out.append((_normalize(Poly.from_univariate(h, i, p.nvars)), m))
    return _sort_factors(out)


def factor_list(p: Poly) -> List[Tuple[Poly, int]]:
    """Square-free decomposition with every univariate component fully factored."""
    out = []
    for f, m in squarefree_decomposition(p):
        if f.is_univariate():
            out.extend((g, m) for g, _ in univariate_factor(f))
        else:
            out.append((f, m))
    return _sort_factors(out)
