"""Gröbner bases for ideals of Q[d1..dn] and submodules of Q[d1..dn]^k.

One Buchberger core serves both: an ideal is treated as a submodule of
rank 1.  Module terms are pairs ``(component, exponents)`` compared
position-over-term, with component 0 the largest position.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .polyring import DEGREVLEX, MonomialOrder, Poly, format_poly

Term = Tuple[int, Tuple[int, ...]]
MPoly = Dict[Term, Fraction]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class IdealBasis:
    """Generators of an ideal; zero generators are dropped on construction."""

    generators: Tuple[Poly, ...]
    nvars: int

    def __init__(self, generators: Sequence[Poly], nvars: Optional[int] = None):
        gens = tuple(g for g in generators if not g.is_zero())
        if nvars is None:
            if not generators:
                raise ValueError("nvars is required for an empty generator list")
            nvars = generators[0].nvars
        if any(g.nvars != nvars for g in generators):
            raise ValueError("variable-count mismatch among generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "nvars", nvars)

    def is_zero(self) -> bool:
        return not self.generators

    def __str__(self):
        return "(" + ", ".join(format_poly(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    elements: Tuple[Poly, ...]
    order: MonomialOrder
    reduced: bool = True
    nvars: int = 0

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()


class VectorPoly:
    """Element of A^k: an immutable vector of polynomials sharing ``nvars``."""

    __slots__ = ("components", "nvars")

    def __init__(self, components: Sequence[Poly], nvars: Optional[int] = None):
        comps = tuple(components)
        if nvars is None:
            if not comps:
                raise ValueError("nvars is required for an empty vector")
            nvars = comps[0].nvars
        if any(c.nvars != nvars for c in comps):
            raise ValueError("variable-count mismatch among components")
        self.components = comps
        self.nvars = nvars

    @classmethod
    def unit(cls, j: int, k: int, nvars: int) -> "VectorPoly":
        if not 0 <= j < k:
            raise IndexError(f"coordinate {j} out of range for rank {k}")
        return cls(
            [Poly.one(nvars) if i == j else Poly.zero(nvars) for i in range(k)], nvars
        )

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "VectorPoly") -> "VectorPoly":
        _check_rank(self, other)
        return VectorPoly([a + b for a, b in zip(self.components, other.components)], self.nvars)

    def __sub__(self, other: "VectorPoly") -> "VectorPoly":
        _check_rank(self, other)
        return VectorPoly([a - b for a, b in zip(self.components, other.components)], self.nvars)

    def __neg__(self):
        return VectorPoly([-a for a in self.components], self.nvars)

    def scale(self, p) -> "VectorPoly":
        return VectorPoly([p * a for a in self.components], self.nvars)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, VectorPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def __hash__(self):
        return hash((self.nvars, self.components))

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __str__(self):
        return "(" + ", ".join(format_poly(c) for c in self.components) + ")"

    def __repr__(self):
        return f"VectorPoly({str(self)})"


def _check_rank(a: VectorPoly, b: VectorPoly):
    if a.rank != b.rank or a.nvars != b.nvars:
        raise ValueError("rank mismatch between vectors")


@dataclass(frozen=True)
class SubmoduleBasis:
    """Generators of a submodule of A^k, ordered position-over-term."""

    generators: Tuple[VectorPoly, ...]
    rank: int
    nvars: int
    order: MonomialOrder = DEGREVLEX

    def __init__(self, generators: Sequence[VectorPoly], rank: Optional[int] = None,
                 nvars: Optional[int] = None, order: MonomialOrder = DEGREVLEX):
        gens = tuple(generators)
        if rank is None or nvars is None:
            if not gens:
                raise ValueError("rank and nvars are required for an empty generator list")
            rank = gens[0].rank if rank is None else rank
            nvars = gens[0].nvars if nvars is None else nvars
        for g in gens:
            if g.rank != rank or g.nvars != nvars:
                raise ValueError("rank mismatch among submodule generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "order", order)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]], nvars: int) -> "SubmoduleBasis":
        rows = [VectorPoly(r, nvars) for r in rows]
        return cls(rows, len(rows[0]) if rows else 0, nvars)


@dataclass(frozen=True)
class ModuleGroebnerBasis:
    elements: Tuple[VectorPoly, ...]
    rank: int
    nvars: int
    order: MonomialOrder = DEGREVLEX
    _internal: Tuple = field(default=(), repr=False, compare=False)


# ---------------------------------------------------------------------------
# Buchberger core on term dictionaries


def _term_key(order: MonomialOrder):
    okey = order.key

    def key(t: Term):
        return (-t[0], okey(t[1]))

    return key


def _to_mpoly(v: Sequence[Poly]) -> MPoly:
    out: MPoly = {}
    for comp, p in enumerate(v):
        for e, c in p.terms.items():
            out[(comp, e)] = c
    return out


def _from_mpoly(f: MPoly, rank: int, nvars: int) -> List[Poly]:
    parts: List[Dict] = [{} for _ in range(rank)]
    for (comp, e), c in f.items():
        parts[comp][e] = c
    return [Poly._raw(t, nvars) for t in parts]


def _lead(f: MPoly, key) -> Term:
    return max(f, key=key)


def _divides(a: Term, b: Term) -> bool:
    return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))


def _lcm(a: Term, b: Term) -> Term:
    return (a[0], tuple(max(x, y) for x, y in zip(a[1], b[1])))


def _sub_mul(f: MPoly, g: MPoly, coeff: Fraction, shift: Tuple[int, ...]) -> None:
    """In place: f -= coeff * x^shift * g."""
    for (comp, e), c in g.items():
        t = (comp, tuple(a + b for a, b in zip(e, shift)))
        s = f.get(t, 0) - coeff * c
        if s:
            f[t] = s
        else:
            f.pop(t, None)


class _Basis:
    """Working list of basis elements with cached leading data."""

    def __init__(self, key):
        self.key = key
        self.polys: List[MPoly] = []
        self.leads: List[Term] = []
        self.alive: List[bool] = []

    def add(self, f: MPoly) -> int:
        lt = _lead(f, self.key)
        lc = f[lt]
        if lc != 1:
            f = {t: c / lc for t, c in f.items()}
        self.polys.append(f)
        self.leads.append(lt)
        self.alive.append(True)
        return len(self.polys) - 1

    def reducer(self, t: Term) -> Optional[int]:
        for i, lt in enumerate(self.leads):
            if self.alive[i] and _divides(lt, t):
                return i
        return None


def _normal_form(f: MPoly, basis: _Basis, full: bool = True) -> MPoly:
    f = dict(f)
    rem: MPoly = {}
    key = basis.key
    while f:
        t = _lead(f, key)
        i = basis.reducer(t)
        if i is None:
            if not full:
                f.update(rem)
                return f
            rem[t] = f.pop(t)
            continue
        lt = basis.leads[i]
        shift = tuple(a - b for a, b in zip(t[1], lt[1]))
        _sub_mul(f, basis.polys[i], f[t], shift)
    return rem


def _spoly(f: MPoly, lf: Term, g: MPoly, lg: Term) -> MPoly:
    lcm = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(lcm[1], lf[1]))
    sg = tuple(a - b for a, b in zip(lcm[1], lg[1]))
    out: MPoly = {}
    for (comp, e), c in f.items():
        out[(comp, tuple(a + b for a, b in zip(e, sf)))] = c
    _sub_mul(out, g, Fraction(1), sg)
    return out


def _buchberger(gens: Sequence[MPoly], order: MonomialOrder, ideal: bool) -> List[MPoly]:
    """Reduced Gröbner basis (monic, sorted by decreasing leading term)."""
    key = _term_key(order)
    okey = order.key
    B = _Basis(key)
    pairs: List = []
    done = set()
    counter = 0

    def push_pairs(j):
        nonlocal counter
        lj = B.leads[j]
        for i in range(j):
            if not B.alive[i]:
                continue
            li = B.leads[i]
            if li[0] != lj[0]:
                continue
            lcm = _lcm(li, lj)
            # product criterion is only valid for ideals
            if ideal and all(a == 0 or b == 0 for a, b in zip(li[1], lj[1])):
                done.add((i, j))
                continue
            counter += 1
            heapq.heappush(pairs, (sum(lcm[1]), okey(lcm[1]), counter, i, j))

    for g in gens:
        g = _normal_form(g, B) if B.polys else dict(g)
        if not g:
            continue
        j = B.add(g)
        push_pairs(j)

    while pairs:
        _, _, _, i, j = heapq.heappop(pairs)
        if (i, j) in done:
            continue
        done.add((i, j))
        li, lj = B.leads[i], B.leads[j]
        lcm = _lcm(li, lj)
        skip = False
        for m in range(len(B.polys)):
            if m in (i, j) or not _divides(B.leads[m], lcm):
                continue
            pi = (min(i, m), max(i, m))
            pj = (min(j, m), max(j, m))
            if pi in done and pj in done:
                skip = True
                break
        if skip:
            continue
        s = _spoly(B.polys[i], li, B.polys[j], lj)
        h = _normal_form(s, B)
        if not h:
            continue
        k = B.add(h)
        if ideal and all(e == 0 for e in B.leads[k][1]):
            return [{(0, B.leads[k][1]): Fraction(1)}]
        push_pairs(k)

    # minimize (smallest leads first), then interreduce tails
    minimal: List[int] = []
    for i in sorted(range(len(B.polys)), key=lambda i: key(B.leads[i])):
        if not any(_divides(B.leads[m], B.leads[i]) for m in minimal):
            minimal.append(i)
    result = []
    for i in minimal:
        others = _Basis(key)
        for m in minimal:
            if m != i:
                others.polys.append(B.polys[m])
                others.leads.append(B.leads[m])
                others.alive.append(True)
        lt = B.leads[i]
        tail = {t: c for t, c in B.polys[i].items() if t != lt}
        tail = _normal_form(tail, others)
        tail[lt] = Fraction(1)
        result.append(tail)
    result.sort(key=lambda f: key(_lead(f, key)), reverse=True)
    return result


# ---------------------------------------------------------------------------
# ideals


@lru_cache(maxsize=512)
def _ideal_gb(gens: Tuple[Poly, ...], nvars: int, order: MonomialOrder) -> Tuple[Poly, ...]:
    raw = _buchberger([_to_mpoly([g]) for g in gens], order, ideal=True)
    return tuple(_from_mpoly(f, 1, nvars)[0] for f in raw)


def buchberger(ideal: IdealBasis, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` under ``order``."""
    if ideal.is_zero():
        raise ValueError("Gröbner basis of the zero ideal is not defined here")
    elements = _ideal_gb(ideal.generators, ideal.nvars, order)
    return GroebnerBasis(elements, order, True, ideal.nvars)


def _basis_from_elements(elements, order, rank) -> _Basis:
    B = _Basis(_term_key(order))
    for g in elements:
        comps = g.components if isinstance(g, VectorPoly) else [g]
        B.add(_to_mpoly(comps))
    return B


def normal_form(p: Poly, G: GroebnerBasis, order: Optional[MonomialOrder] = None) -> Poly:
    """Remainder of ``p`` on division by ``G``; zero iff ``p`` lies in the ideal."""
    if order is not None and order != G.order:
        raise ValueError(f"order mismatch: {order} vs {G.order}")
    if p.nvars != G.nvars:
        raise ValueError("variable-count mismatch")
    B = _basis_from_elements(G.elements, G.order, 1)
    r = _normal_form(_to_mpoly([p]), B)
    return _from_mpoly(r, 1, p.nvars)[0]


def ideal_membership(p: Poly, ideal: IdealBasis) -> bool:
    if p.is_zero():
        return True
    if ideal.is_zero():
        return False
    return normal_form(p, buchberger(ideal)).is_zero()


def contains_one(ideal: IdealBasis) -> bool:
    if ideal.is_zero():
        return False
    if any(g.is_constant() for g in ideal.generators):
        return True
    return buchberger(ideal).is_unit()


def krull_dimension(ideal: IdealBasis) -> int:
    """Dimension of A/I; ``-1`` for the unit ideal and ``n`` for the zero ideal."""
    n = ideal.nvars
    if ideal.is_zero():
        return n
    G = buchberger(ideal, DEGREVLEX)
    if G.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in G.leading_monomials()]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            s = frozenset(S)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def maximal_independent_set(ideal: IdealBasis) -> Tuple[int, ...]:
    """A largest variable subset independent modulo the leading-term ideal."""
    n = ideal.nvars
    if ideal.is_zero():
        return tuple(range(n))
    G = buchberger(ideal, DEGREVLEX)
    if G.is_unit():
        return ()
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in G.leading_monomials()]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            if all(not sup <= frozenset(S) for sup in supports):
                return S
    return ()


# ---------------------------------------------------------------------------
# modules


def _module_gb_internal(gens: Tuple[VectorPoly, ...], order: MonomialOrder) -> List[MPoly]:
    return _buchberger([_to_mpoly(g.components) for g in gens], order, ideal=False)


@lru_cache(maxsize=256)
def _module_gb_cached(gens: Tuple[VectorPoly, ...], order: MonomialOrder):
    return tuple(_module_gb_internal(gens, order))


def module_buchberger(M: SubmoduleBasis) -> ModuleGroebnerBasis:
    """Reduced position-over-term Gröbner basis of a submodule."""
    gens = tuple(g for g in M.generators if not g.is_zero())
    raw = _module_gb_cached(gens, M.order) if gens else ()
    elements = tuple(VectorPoly(_from_mpoly(f, M.rank, M.nvars), M.nvars) for f in raw)
    return ModuleGroebnerBasis(elements, M.rank, M.nvars, M.order, raw)


def module_normal_form(v: VectorPoly, G: ModuleGroebnerBasis) -> VectorPoly:
    if v.rank != G.rank or v.nvars != G.nvars:
        raise ValueError("rank mismatch between vector and module")
    B = _Basis(_term_key(G.order))
    for f in G._internal:
        B.add(dict(f))
    r = _normal_form(_to_mpoly(v.components), B)
    return VectorPoly(_from_mpoly(r, G.rank, G.nvars), G.nvars)


def module_membership(v: VectorPoly, M) -> bool:
    """Exact membership of ``v`` in a submodule (basis or Gröbner basis)."""
    G = M if isinstance(M, ModuleGroebnerBasis) else module_buchberger(M)
    if v.rank != G.rank:
        raise ValueError(f"rank mismatch: vector of rank {v.rank}, module of rank {G.rank}")
    if v.is_zero():
        return True
    return module_normal_form(v, G).is_zero()


def syzygies(vectors: Sequence[VectorPoly], order: MonomialOrder = DEGREVLEX) -> List[VectorPoly]:
    """Generators of the syzygy module of ``vectors`` (relations sum c_i v_i = 0).

    Each vector is augmented with a unit vector in trailing coordinates; under
    position-over-term the basis elements whose leading term sits in the
    trailing block have zero head and carry the syzygies.
    """
    if not vectors:
        return []
    k = vectors[0].rank
    nvars = vectors[0].nvars
    m = len(vectors)
    aug = []
    for i, v in enumerate(vectors):
        if v.rank != k:
            raise ValueError("rank mismatch among vectors")
        tail = [Poly.one(nvars) if j == i else Poly.zero(nvars) for j in range(m)]
        aug.append(VectorPoly(list(v.components) + tail, nvars))
    raw = _module_gb_cached(tuple(aug), order)
    key = _term_key(order)
    out = []
    for f in raw:
        if _lead(f, key)[0] >= k:
            comps = _from_mpoly(f, k + m, nvars)
            out.append(VectorPoly(comps[k:], nvars))
    return out


def colon_against_unit_vector(M: SubmoduleBasis, j: int) -> IdealBasis:
    """Generators of {a : a*e_j in M} via syzygies of (e_j, generators of M)."""
    if not 0 <= j < M.rank:
        raise IndexError(f"coordinate {j} out of range for rank {M.rank}")
    ej = VectorPoly.unit(j, M.rank, M.nvars)
    syz = syzygies([ej] + list(M.generators), M.order)
    return IdealBasis([s.components[0] for s in syz], M.nvars)
