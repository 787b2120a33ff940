"""Ideals over Q[x1..xn] and reduced Groebner bases.

Buchberger with normal-strategy pair selection and both classical criteria;
no F4/F5.  The inner loop works fraction-free over Z with content stripping,
so coefficient growth stays visible and the bit-length budget can be
enforced.  Reduced bases are cached on the (immutable) Ideal value per order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Optional, Sequence

from .budgets import current_budget
from .errors import ResourceBudgetExceeded, RingMismatch
from .orders import DEGREVLEX, MonomialOrder, block
from .poly import Polynomial, exact_div

# Internal polynomial form: list of (monomial, int coefficient), sorted
# descending in the active order, integer-primitive.


def _to_internal(poly: Polynomial, key) -> list:
    den = 1
    for c in poly.terms.values():
        den = den * c.denominator // int_gcd(den, c.denominator)
    items = [(m, int(c * den)) for m, c in poly.terms.items()]
    g = 0
    for _, c in items:
        g = int_gcd(g, c)
    if g > 1:
        items = [(m, c // g) for m, c in items]
    items.sort(key=lambda t: key(t[0]), reverse=True)
    if items and items[0][1] < 0:
        items = [(m, -c) for m, c in items]
    return items


def _to_polynomial(internal: list, nvars: int) -> Polynomial:
    """Monic Fraction form (leading coefficient 1)."""
    if not internal:
        return Polynomial.zero(nvars)
    lead_coeff = internal[0][1]
    return Polynomial({m: Fraction(c, lead_coeff) for m, c in internal}, nvars)


def _strip_content(terms: dict) -> None:
    g = 0
    for c in terms.values():
        g = int_gcd(g, c)
        if g == 1:
            return
    if g > 1:
        for m in terms:
            terms[m] //= g


def _check_bits(terms: dict, limit: int) -> None:
    for c in terms.values():
        if c.bit_length() > limit:
            raise ResourceBudgetExceeded("max_coeff_bits", limit)


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _reduce_full(f: list, basis: Sequence[list], key, bits_limit: int) -> list:
    """Full normal form of f against basis, fraction-free over Z."""
    if not f:
        return []
    work = dict(f)
    out: dict = {}
    leads = [(g[0][0], g[0][1], g) for g in basis if g]
    steps = 0
    while work:
        mono = max(work, key=key)
        coeff = work.pop(mono)
        reducer = None
        for lead, lc, g in leads:
            if _divides(lead, mono):
                reducer = (lead, lc, g)
                break
        if reducer is None:
            out[mono] = coeff
            continue
        lead, lc, g = reducer
        shift = _mono_div(mono, lead)
        # work := lc*work - coeff*shift*g ; out scales along to stay consistent
        for m in list(work):
            work[m] *= lc
        for m in list(out):
            out[m] *= lc
        for gm, gc in g[1:]:
            target = _mono_mul(gm, shift)
            acc = work.get(target, 0) - coeff * gc
            if acc:
                work[target] = acc
            else:
                work.pop(target, None)
        steps += 1
        if steps % 16 == 0 or len(work) > 256:
            merged = dict(work)
            merged.update({m: c for m, c in out.items()})
            g_all = 0
            for c in work.values():
                g_all = int_gcd(g_all, c)
            for c in out.values():
                g_all = int_gcd(g_all, c)
            if g_all > 1:
                for m in work:
                    work[m] //= g_all
                for m in out:
                    out[m] //= g_all
            _check_bits(work, bits_limit)
            _check_bits(out, bits_limit)
    _strip_content(out)
    _check_bits(out, bits_limit)
    items = sorted(out.items(), key=lambda t: key(t[0]), reverse=True)
    if items and items[0][1] < 0:
        items = [(m, -c) for m, c in items]
    return items


def _spoly(f: list, g: list) -> dict:
    lf, cf = f[0]
    lg, cg = g[0]
    lcm = _mono_lcm(lf, lg)
    sf = _mono_div(lcm, lf)
    sg = _mono_div(lcm, lg)
    terms: dict = {}
    for m, c in f:
        terms[_mono_mul(m, sf)] = terms.get(_mono_mul(m, sf), 0) + c * cg
    for m, c in g:
        t = _mono_mul(m, sg)
        acc = terms.get(t, 0) - c * cf
        if acc:
            terms[t] = acc
        else:
            terms.pop(t, None)
    return {m: c for m, c in terms.items() if c}


def _monomial_basis(gens: list, key) -> list:
    """Reduced basis of a monomial ideal: divisibility-minimal monomials."""
    monos = sorted({g[0][0] for g in gens}, key=key)
    keep = []
    for m in monos:
        if not any(_divides(k, m) for k in keep):
            keep.append(m)
    if keep and not any(keep[0]):
        return [[(keep[0], 1)]]
    return [[(m, 1)] for m in keep]


def _buchberger(gens: list, key, order_name: str) -> list:
    budget = current_budget()
    basis = []
    seen = set()
    for g in gens:
        if g:
            sig = tuple(g)
            if sig not in seen:
                seen.add(sig)
                basis.append(g)
    # Constant generator: unit ideal, short-circuit.
    for g in basis:
        if not any(g[0][0]):
            return [[((0,) * len(g[0][0]), 1)]]
    if not basis:
        return []
    if all(len(g) == 1 for g in basis):
        return _monomial_basis(basis, key)
    import heapq

    heap = []
    pairs = set()

    def push(i, j):
        lcm = _mono_lcm(basis[i][0][0], basis[j][0][0])
        heapq.heappush(heap, (key(lcm), i, j))
        pairs.add((i, j))

    for i in range(len(basis)):
        for j in range(i):
            push(j, i)
    spair_count = 0

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        li, lj = basis[i][0][0], basis[j][0][0]
        lcm = _mono_lcm(li, lj)
        # Product criterion: coprime leading monomials.
        if lcm == _mono_mul(li, lj):
            continue
        # Chain criterion: some k with lead_k | lcm and both mixed pairs done.
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if _divides(basis[k][0][0], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        spair_count += 1
        if spair_count > budget.max_spairs:
            raise ResourceBudgetExceeded("max_spairs", budget.max_spairs)
        s = _spoly(basis[i], basis[j])
        if not s:
            continue
        s_items = sorted(s.items(), key=lambda t: key(t[0]), reverse=True)
        remainder = _reduce_full(s_items, basis, key, budget.max_coeff_bits)
        if remainder:
            if not any(remainder[0][0]):
                return [[((0,) * len(remainder[0][0]), 1)]]
            basis.append(remainder)
            new = len(basis) - 1
            for t in range(new):
                push(t, new)
    # Minimalize: drop members whose lead is divisible by another lead.
    keep = []
    leads = [g[0][0] for g in basis]
    for i, g in enumerate(basis):
        li = leads[i]
        redundant = False
        for j, lj in enumerate(leads):
            if i != j and _divides(lj, li) and not (lj == li and j > i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # Interreduce to the unique reduced basis.
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce_full(g, others, key, budget.max_coeff_bits)
        if r:
            reduced.append(r)
    reduced.sort(key=lambda g: key(g[0][0]))
    return reduced


class Ideal:
    """Finitely generated ideal; immutable; caches reduced bases per order."""

    __slots__ = ("gens", "nvars", "_bases")

    def __init__(self, gens: Iterable[Polynomial], nvars: Optional[int] = None):
        cleaned = []
        for g in gens:
            if g and not g.is_zero():
                cleaned.append(g)
        if nvars is None:
            if not cleaned:
                raise ValueError("nvars required for the zero ideal")
            nvars = cleaned[0].nvars
        for g in cleaned:
            if g.nvars != nvars:
                raise RingMismatch("generators in different rings")
        self.gens = tuple(cleaned)
        self.nvars = nvars
        self._bases = {}

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> tuple:
        """The reduced Groebner basis (monic, sorted by leading monomial)."""
        cached = self._bases.get(order.kind)
        if cached is not None:
            return cached
        key = order.key
        internal = [_to_internal(g, key) for g in self.gens]
        basis = _buchberger(internal, key, order.kind)
        result = tuple(_to_polynomial(g, self.nvars) for g in basis)
        self._bases[order.kind] = result
        return result

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        basis = self.groebner(order)
        key = order.key
        internal = [_to_internal(g, key) for g in basis]
        r = _reduce_full(_to_internal(f, key), internal,
                         key, current_budget().max_coeff_bits)
        return _to_polynomial(r, self.nvars)

    def contains(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> bool:
        if f.is_zero():
            return True
        return self.normal_form(f, order).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.groebner()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.nvars, self.groebner()))

    def __repr__(self):
        return f"Ideal({len(self.gens)} gens, {self.nvars} vars)"


def groebner(ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """`ideal` with its reduced basis cached and exposed as generators."""
    basis = ideal.groebner(order)
    result = Ideal(basis, ideal.nvars)
    result._bases[order.kind] = basis
    return result


def is_unit_ideal(ideal: Ideal) -> bool:
    basis = ideal.groebner()
    return len(basis) == 1 and basis[0].is_constant()


def is_member(f: Polynomial, ideal: Ideal) -> bool:
    return ideal.contains(f)


def ideal_sum(*ideals: Ideal) -> Ideal:
    nvars = ideals[0].nvars
    gens = []
    for ideal in ideals:
        if ideal.nvars != nvars:
            raise RingMismatch("mismatched variable count")
        gens.extend(ideal.gens)
    return Ideal(gens, nvars)


def minimal_monomials(monos) -> list:
    """Divisibility-minimal elements, sorted by degrevlex key."""
    out = []
    for m in sorted(set(monos), key=DEGREVLEX.key):
        if not any(_divides(k, m) for k in out):
            out.append(m)
    return out


def _prune_generators(gens: list, nvars: int) -> list:
    """Cheap deterministic pruning: dedupe and drop monomial multiples."""
    primitive = []
    seen = set()
    for g in gens:
        p = g.primitive()
        if p not in seen:
            seen.add(p)
            primitive.append(p)
    if all(len(p.terms) == 1 for p in primitive):
        monos = minimal_monomials(next(iter(p.terms)) for p in primitive)
        return [Polynomial({m: Fraction(1)}, nvars) for m in monos]
    return primitive


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.nvars != b.nvars:
        raise RingMismatch("mismatched variable count")
    if not a.gens or not b.gens:
        return Ideal([], a.nvars)
    if (all(len(g.terms) == 1 for g in a.gens)
            and all(len(g.terms) == 1 for g in b.gens)):
        sums = {tuple(x + y for x, y in zip(ma, mb))
                for ma in (next(iter(g.terms)) for g in a.gens)
                for mb in (next(iter(g.terms)) for g in b.gens)}
        monos = minimal_monomials(sums)
        return Ideal([Polynomial({m: Fraction(1)}, a.nvars) for m in monos],
                     a.nvars)
    gens = [f * g for f in a.gens for g in b.gens]
    gens = _prune_generators(gens, a.nvars)
    if len(gens) > 40:
        gens = list(Ideal(gens, a.nvars).groebner())
    return Ideal(gens, a.nvars)


def ideal_power(ideal: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative ideal power")
    if n == 0:
        return Ideal([Polynomial.constant(1, ideal.nvars)], ideal.nvars)
    result = None
    base = ideal
    k = n
    while k:
        if k & 1:
            result = base if result is None else ideal_product(result, base)
        k >>= 1
        if k:
            base = ideal_product(base, base)
    return result


def elimination_ideal(ideal: Ideal, first: int) -> Ideal:
    """Intersection with the subring omitting the first `first` variables."""
    basis = ideal.groebner(block(first))
    kept = []
    for g in basis:
        if all(not any(m[:first]) for m in g.terms):
            kept.append(Polynomial(
                {m[first:]: c for m, c in g.terms.items()}, ideal.nvars - first))
    return Ideal(kept, ideal.nvars - first)


def ideal_intersection(a: Ideal, b: Ideal) -> Ideal:
    """a ∩ b via the single-tag-variable elimination trick."""
    if a.nvars != b.nvars:
        raise RingMismatch("mismatched variable count")
    n = a.nvars
    t = Polynomial.variable(0, n + 1)
    one = Polynomial.constant(1, n + 1)
    gens = [t * g.insert_var(0) for g in a.gens]
    gens += [(one - t) * g.insert_var(0) for g in b.gens]
    return elimination_ideal(Ideal(gens, n + 1), 1)


def ideal_quotient(ideal: Ideal, f: Polynomial) -> Ideal:
    """(I : f) for a single nonzero polynomial f."""
    if f.is_zero():
        raise ZeroDivisionError("quotient by the zero polynomial")
    if not ideal.gens:
        return Ideal([], ideal.nvars)
    meet = ideal_intersection(ideal, Ideal([f], ideal.nvars))
    quotient = []
    for g in meet.gens:
        q = exact_div(g, f)
        if q is None:  # pragma: no cover - intersection guarantees divisibility
            raise ArithmeticError("intersection element not divisible")
        quotient.append(q)
    return Ideal(quotient, ideal.nvars)


def saturation(ideal: Ideal, f: Polynomial) -> tuple:
    """((I : f^inf), k) with k the smallest exponent where the chain stabilizes."""
    if f.is_zero():
        raise ZeroDivisionError("saturation by the zero polynomial")
    current = groebner(ideal)
    k = 0
    while True:
        nxt = groebner(ideal_quotient(current, f))
        if nxt.groebner() == current.groebner():
            return current, k
        current = nxt
        k += 1
        if k > current_budget().max_steps:
            raise ResourceBudgetExceeded("max_steps", current_budget().max_steps)


def radical_membership(f: Polynomial, ideal: Ideal) -> bool:
    """f in rad(I), by the Rabinowitsch trick (one extra variable)."""
    if f.is_zero():
        return True
    n = ideal.nvars
    t = Polynomial.variable(0, n + 1)
    one = Polynomial.constant(1, n + 1)
    gens = [g.insert_var(0) for g in ideal.gens]
    gens.append(one - t * f.insert_var(0))
    return is_unit_ideal(Ideal(gens, n + 1))


def interreduce(gens: Sequence[Polynomial], nvars: int) -> tuple:
    """Canonical compact generating set: the reduced degrevlex basis."""
    return Ideal(gens, nvars).groebner()


def ideal_dimension(ideal: Ideal) -> int:
    """Krull dimension of V(ideal) in affine n-space (-1 when empty).

    Combinatorial: the largest set of variables meeting no leading-monomial
    support is independent modulo the initial ideal.
    """
    basis = ideal.groebner()
    if not basis:
        return ideal.nvars
    if len(basis) == 1 and basis[0].is_constant():
        return -1
    from itertools import combinations

    n = ideal.nvars
    key = DEGREVLEX.key
    supports = []
    for g in basis:
        lead = max(g.terms, key=key)
        supports.append({i for i, e in enumerate(lead) if e})
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            cand = set(subset)
            if all(not s.issubset(cand) for s in supports):
                return size
    return 0
