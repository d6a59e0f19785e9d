"""Three-valued point queries on hypersurfaces: real, rational and integer zeros.

A ``No`` answer always names the certificate that proves it; when no
certificate applies and the bounded search finds nothing, the answer is
``Unknown``.  Certificate strings:

``sturm(k)``            univariate Sturm count of distinct real roots
``positivity``          even monomials, one coefficient sign, nonzero constant
``rational-root-test``  univariate rational root enumeration
``parity``              no zero modulo 2
``modular(m)``          no zero modulo m
``exhaustive-box(r)``   definite part bounds every zero to the box [-r, r]^n
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .polyring import Poly, is_squarefree, rational_roots


class PointStatus(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBounds:
    """Search effort knobs shared by all three queries."""

    real_grid_radius: int = 10
    rational_height: int = 8
    integer_box: int = 25
    max_lines: int = 20000

    def as_dict(self) -> Dict[str, int]:
        return {
            "real_grid_radius": self.real_grid_radius,
            "rational_height": self.rational_height,
            "integer_box": self.integer_box,
            "max_lines": self.max_lines,
        }


@dataclass(frozen=True)
class PointAnswer:
    status: PointStatus
    point: Optional[Tuple[Fraction, ...]] = None
    certificate: Optional[str] = None
    detail: str = ""
    effort: Dict[str, int] = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.status is PointStatus.YES

    @property
    def no(self) -> bool:
        return self.status is PointStatus.NO

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "point": None if self.point is None else [str(x) for x in self.point],
            "certificate": self.certificate,
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# univariate real roots


def _trim(c: List[Fraction]) -> List[Fraction]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _rem(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        for j, bc in enumerate(b):
            a[j + k] -= f * bc
        a.pop()
        a = _trim(a)
    return a


def sturm_sequence(coeffs: Sequence) -> List[List[Fraction]]:
    """Sturm chain of a dense univariate polynomial (index = power)."""
    p0 = _trim([Fraction(c) for c in coeffs])
    if not p0:
        raise ValueError("zero polynomial has no Sturm sequence")
    p1 = _trim([k * c for k, c in enumerate(p0)][1:])
    seq = [p0]
    if p1:
        seq.append(p1)
    while len(seq) > 1:
        r = [-c for c in _rem(seq[-2], seq[-1])]
        if not r:
            break
        seq.append(r)
    return seq


def _squarefree_dense(coeffs: Sequence) -> List[Fraction]:
    """p / gcd(p, p') for a dense univariate polynomial."""
    p = _trim([Fraction(c) for c in coeffs])
    dp = _trim([k * c for k, c in enumerate(p)][1:])
    a, b = p, dp
    while b:
        a, b = b, _rem(a, b)
    if len(a) <= 1:
        return p
    q, r = _divide(p, a)
    return q


def _divide(a: List[Fraction], b: List[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for j, bc in enumerate(b):
            a[j + k] -= f * bc
        a.pop()
        a = _trim(a)
    return _trim(q), a


def _eval(c: List[Fraction], x: Fraction) -> Fraction:
    v = Fraction(0)
    for a in reversed(c):
        v = v * x + a
    return v


def _changes(signs: List[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(seq, x) -> int:
    if x == "+inf":
        return _changes([_sign(p[-1]) for p in seq])
    if x == "-inf":
        return _changes([_sign(p[-1]) * (-1) ** (len(p) - 1) for p in seq])
    return _changes([_sign(_eval(p, x)) for p in seq])


def count_real_roots(coeffs: Sequence, lo=None, hi=None) -> int:
    """Number of distinct real roots in (lo, hi]; the whole line by default."""
    seq = sturm_sequence(_squarefree_dense(coeffs))
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _variations(seq, a) - _variations(seq, b)


def root_bound(coeffs: Sequence) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    c = _trim([Fraction(x) for x in coeffs])
    return 1 + max(abs(x / c[-1]) for x in c[:-1]) if len(c) > 1 else Fraction(1)


def isolate_real_roots(coeffs: Sequence) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b], each holding exactly one distinct real root."""
    seq = sturm_sequence(_squarefree_dense(coeffs))
    B = root_bound(coeffs)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        k = _variations(seq, a) - _variations(seq, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.extend([(mid, b), (a, mid)])
    return sorted(out)


# ---------------------------------------------------------------------------
# helpers


def _check_input(p: Poly) -> None:
    if p.is_zero() or p.is_constant():
        raise ValueError("point queries need a non-constant polynomial")
    if not is_squarefree(p):
        raise ValueError("point queries need a square-free polynomial")


def _integer_form(p: Poly) -> Dict[Tuple[int, ...], int]:
    return p.integer_coefficients()


def _int_values(radius: int) -> List[int]:
    out = [0]
    for k in range(1, radius + 1):
        out.extend((k, -k))
    return out


def _rational_values(radius: int, height: int) -> List[Fraction]:
    vals = set()
    for den in range(1, height + 1):
        for num in range(-radius * den, radius * den + 1):
            vals.add(Fraction(num, den))
    return sorted(vals, key=lambda q: (max(abs(q.numerator), q.denominator), q.denominator,
                                       abs(q), q < 0))


def _assignments(values: List, count: int) -> Iterator[Tuple]:
    """Tuples of ``count`` values, roughly in increasing height."""
    if count == 0:
        yield ()
        return
    for level in range(len(values)):
        # tuples whose largest index is exactly ``level``; i is its first position
        for i in range(count):
            before = product(range(level), repeat=i)
            for head in before:
                for tail in product(range(level + 1), repeat=count - i - 1):
                    yield tuple(values[k] for k in head) + (values[level],) + \
                        tuple(values[k] for k in tail)


def _point(nvars: int, values: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
    return tuple(Fraction(values.get(i, 0)) for i in range(nvars))


def _roots_preferred(q: Poly) -> List[Fraction]:
    # positive before negative at equal magnitude
    return sorted(rational_roots(q), key=lambda r: (abs(r), r < 0))


def _positivity(p: Poly) -> bool:
    signs = set()
    const = p.constant_term()
    if const == 0:
        return False
    for exps, c in p.terms.items():
        if any(e % 2 for e in exps):
            return False
        signs.add(c > 0)
    return len(signs) == 1


def _no_zero_mod(p: Poly, m: int) -> bool:
    ic = _integer_form(p)
    vs = p.variables()
    for assign in product(range(m), repeat=len(vs)):
        total = 0
        for exps, c in ic.items():
            v = c
            for i, x in zip(vs, assign):
                if exps[i]:
                    v *= pow(x, exps[i], m)
            total += v
        if total % m == 0:
            return False
    return True


def _definite_box(p: Poly) -> Optional[int]:
    """Radius r with every real zero inside [-r, r]^n, from a definite part.

    Applies when p = q + c where every monomial of q has even exponents, all
    coefficients of q share one sign, and each occurring variable has a pure
    even power term in q.
    """
    const = p.constant_term()
    q = {e: c for e, c in p.terms.items() if any(e)}
    if not q or any(x % 2 for e in q for x in e):
        return None
    signs = {c > 0 for c in q.values()}
    if len(signs) != 1:
        return None
    radius = 0
    for i in p.variables():
        best = None
        for e, c in q.items():
            if e[i] and all(x == 0 for j, x in enumerate(e) if j != i):
                # |x_i|^e_i <= |const| / |c|
                bound = abs(const) / abs(c)
                r = floor(float(bound) ** (1.0 / e[i])) + 1
                while r > 0 and Fraction(r) ** e[i] > bound:
                    r -= 1
                best = r if best is None else min(best, r)
        if best is None:
            return None
        radius = max(radius, best)
    return radius


# ---------------------------------------------------------------------------
# queries


def has_real_points(p: Poly, bounds: SearchBounds = SearchBounds()) -> PointAnswer:
    _check_input(p)
    vs = p.variables()
    n = p.nvars
    if len(vs) == 1:
        coeffs = p.univariate_coeffs(vs[0])
        count = count_real_roots(coeffs)
        cert = f"sturm({count})"
        if count == 0:
            return PointAnswer(PointStatus.NO, certificate=cert, detail="no real roots")
        roots = _roots_preferred(p)
        if roots:
            return PointAnswer(PointStatus.YES, _point(n, {vs[0]: roots[0]}), cert)
        a, b = isolate_real_roots(coeffs)[0]
        return PointAnswer(PointStatus.YES, None, cert,
                           detail=f"irrational real root of d{vs[0] + 1} in ({a}, {b}]")
    if _positivity(p):
        return PointAnswer(PointStatus.NO, certificate="positivity",
                           detail="sum of even monomials with a same-sign constant")
    free, others = vs[0], vs[1:]
    values = [Fraction(v) for v in _int_values(bounds.real_grid_radius)]
    lines = 0
    irrational = None
    for assign in _assignments(values, len(others)):
        if lines >= bounds.max_lines:
            break
        lines += 1
        fixed = dict(zip(others, assign))
        q = p.substitute(fixed)
        if q.is_zero():
            return PointAnswer(PointStatus.YES, _point(n, fixed), "exact-zero",
                               effort={"lines": lines})
        if q.is_constant():
            continue
        roots = _roots_preferred(q)
        if roots:
            fixed[free] = roots[0]
            return PointAnswer(PointStatus.YES, _point(n, fixed), "exact-zero",
                               effort={"lines": lines})
        if irrational is None:
            k = count_real_roots(q.univariate_coeffs(free))
            if k:
                irrational = (fixed, k)
    if irrational is not None:
        fixed, k = irrational
        desc = ", ".join(f"d{i + 1}={v}" for i, v in sorted(fixed.items()))
        return PointAnswer(PointStatus.YES, None, f"sturm({k})",
                           detail=f"real root on the line {desc}", effort={"lines": lines})
    return PointAnswer(PointStatus.UNKNOWN, detail="no certificate and no real zero found",
                       effort={"lines": lines})


def has_rational_points(p: Poly, bounds: SearchBounds = SearchBounds()) -> PointAnswer:
    _check_input(p)
    vs = p.variables()
    n = p.nvars
    if len(vs) == 1:
        roots = _roots_preferred(p)
        if roots:
            return PointAnswer(PointStatus.YES, _point(n, {vs[0]: roots[0]}), "exact-zero")
        return PointAnswer(PointStatus.NO, certificate="rational-root-test",
                           detail="no rational root")
    real = has_real_points(p, bounds)
    if real.no:
        return PointAnswer(PointStatus.NO, certificate=real.certificate,
                           detail="no real points, hence no rational points")
    if real.yes and real.point is not None:
        return PointAnswer(PointStatus.YES, real.point, "exact-zero", effort=real.effort)
    free, others = vs[0], vs[1:]
    values = _rational_values(bounds.real_grid_radius, bounds.rational_height)
    lines = 0
    for assign in _assignments(values, len(others)):
        if lines >= bounds.max_lines:
            break
        lines += 1
        fixed = dict(zip(others, assign))
        q = p.substitute(fixed)
        if q.is_zero():
            return PointAnswer(PointStatus.YES, _point(n, fixed), "exact-zero",
                               effort={"lines": lines})
        if q.is_constant():
            continue
        roots = _roots_preferred(q)
        if roots:
            fixed[free] = roots[0]
            return PointAnswer(PointStatus.YES, _point(n, fixed), "exact-zero",
                               effort={"lines": lines})
    return PointAnswer(PointStatus.UNKNOWN, detail="no certificate and no rational zero found",
                       effort={"lines": lines})


def _integer_line_search(p: Poly, radius: int, max_lines: int):
    """Enumerate all but the last variable in [-radius, radius]; solve for the last."""
    vs = p.variables()
    fixed_vars, free = vs[:-1], vs[-1]
    lines = 0
    for assign in _assignments(_int_values(radius), len(fixed_vars)):
        if lines >= max_lines:
            return None, lines, False
        lines += 1
        fixed = {i: Fraction(v) for i, v in zip(fixed_vars, assign)}
        q = p.substitute(fixed)
        if q.is_zero():
            return _point(p.nvars, fixed), lines, True
        if q.is_constant():
            continue
        for r in _roots_preferred(q):
            if r.denominator == 1:
                fixed[free] = r
                return _point(p.nvars, fixed), lines, True
    return None, lines, True


def has_integer_points(p: Poly, bounds: SearchBounds = SearchBounds()) -> PointAnswer:
    _check_input(p)
    vs = p.variables()
    n = p.nvars
    rational = has_rational_points(p, bounds)
    if rational.no:
        return PointAnswer(PointStatus.NO, certificate=rational.certificate,
                           detail="no rational points, hence no integer points")
    if rational.yes and rational.point is not None and all(
            x.denominator == 1 for x in rational.point) and len(vs) == 1:
        return PointAnswer(PointStatus.YES, rational.point, "exact-zero")
    if _no_zero_mod(p, 2):
        return PointAnswer(PointStatus.NO, certificate="parity",
                           detail="nonzero modulo 2 at every integer point")
    radius = _definite_box(p)
    if radius is not None:
        point, lines, complete = _integer_line_search(p, radius, bounds.max_lines)
        if point is not None:
            return PointAnswer(PointStatus.YES, point, "exact-zero", effort={"lines": lines})
        if complete:
            return PointAnswer(PointStatus.NO, certificate=f"exhaustive-box({radius})",
                               detail="every integer zero lies in the searched box",
                               effort={"lines": lines})
    if len(vs) == 1:
        return PointAnswer(PointStatus.NO, certificate="rational-root-test",
                           detail="no integer root")
    for m in (3, 4, 5, 7, 8, 9):
        if m ** len(vs) <= 10000 and _no_zero_mod(p, m):
            return PointAnswer(PointStatus.NO, certificate=f"modular({m})",
                               detail=f"nonzero modulo {m} at every integer point")
    point, lines, _ = _integer_line_search(p, bounds.integer_box, bounds.max_lines)
    if point is not None:
        return PointAnswer(PointStatus.YES, point, "exact-zero", effort={"lines": lines})
    return PointAnswer(PointStatus.UNKNOWN, detail="no certificate and no integer zero found",
                       effort={"lines": lines})


def query(p: Poly, kind: str, bounds: SearchBounds = SearchBounds()) -> PointAnswer:
    """Dispatch on ``kind`` in {"real", "rational", "integer"}."""
    fn = {"real": has_real_points, "rational": has_rational_points,
          "integer": has_integer_points}.get(kind)
    if fn is None:
        raise ValueError(f"unknown point kind {kind!r}")
    return fn(p, bounds)
