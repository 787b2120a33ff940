"""Basic objects and the invariant functions driving center selection.

A basic object on a chart is (pair, J, b): the ideal J with control b on the
chart, together with the tracked divisors.  The state keeps the weak
transform factorization J = prod eq(H_i)^{a_i} * weak_J updated after every
transformation, plus the running total-transform exponents used by the
principalization certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Optional, Sequence

from .chart import (Chart, Divisor, Pair, blow_up, cover_and_exchange,
                    restrict_to_hypersurface)
from .errors import AlgorithmError
from .factor import multivariate_gcd, squarefree_decomposition
from .groebner import Ideal, ideal_power, ideal_quotient, ideal_sum
from .poly import Polynomial, exact_div
from .values import TComponent


@dataclass
class BasicObjectState:
    pair: Pair
    J: Ideal
    b: int
    exponents: dict = field(default_factory=dict)        # serial -> a_i
    weak: Optional[Ideal] = None
    total_exponents: dict = field(default_factory=dict)  # serial -> c_i
    _chains: dict = field(default_factory=dict)

    @property
    def chart(self) -> Chart:
        return self.pair.chart

    # -- factorization ---------------------------------------------------

    def _chain_for(self, which: str) -> list:
        chain = self._chains.get(which)
        if chain is None:
            ideal = self.J if which == "J" else self.weak
            chain = [ideal]
            self._chains[which] = chain
        return chain

    def sing_ideal(self) -> Ideal:
        return self.chart.sing_locus(self.J, self.b, _chain=self._chain_for("J"))

    def sing_empty(self) -> bool:
        return self.chart.locus_is_empty(self.sing_ideal())

    def ord_max(self) -> Fraction:
        """max over Sing(J,b) of (order of J)/b."""
        if self.sing_empty():
            raise AlgorithmError("ord is undefined on an empty singular locus")
        nu = self.chart.max_order(self.J, self.sing_ideal(),
                                  _chain=self._chain_for("J"))
        return Fraction(nu, self.b)

    def max_word(self) -> Fraction:
        """max over Sing(J,b) of (order of weak_J)/b; 0 when weak_J is trivial."""
        if self.chart.locus_is_empty(Ideal(self.weak.gens + self.sing_ideal().gens,
                                            self.chart.nvars)):
            return Fraction(0)
        which = "J" if self.weak is self.J else "weak"
        bk = self.chart.max_order(self.weak, self.sing_ideal(),
                                  _chain=self._chain_for(which))
        return Fraction(bk, self.b)

    def max_word_locus(self) -> Ideal:
        """Ideal cutting Max w-ord inside Sing(J,b) on this chart."""
        w = self.max_word()
        sing = self.sing_ideal()
        if w == 0:
            return sing
        bk = int(w * self.b)
        which = "J" if self.weak is self.J else "weak"
        wl = self.chart.sing_locus(self.weak, bk, _chain=self._chain_for(which))
        return Ideal(wl.gens + sing.gens, self.chart.nvars)

    def divisors_minus(self, stage_birth: int) -> list:
        return [d for d in self.pair.divisors if d.birth <= stage_birth]


def factorize_state(pair: Pair, J: Ideal, b: int,
                    total_exponents: Optional[dict] = None) -> BasicObjectState:
    """Build a state with the divisor-power factorization extracted."""
    chart = pair.chart
    gens = []
    seen = set()
    for g in J.gens:
        nf = chart.nf_mod_deps(g)
        if not nf.is_zero() and nf not in seen:
            seen.add(nf)
            gens.append(nf)
    if not gens and J.gens:
        raise AlgorithmError("ideal vanishes identically on the chart")
    clean = Ideal(gens, chart.nvars) if gens else J
    original = list(gens)
    exponents = {}
    for div in sorted(pair.divisors, key=lambda d: d.serial):
        e, gens = _extract_power(chart, gens, div.eq)
        if e:
            exponents[div.serial] = e
    weak = Ideal(gens, chart.nvars) if gens != original else clean
    return BasicObjectState(pair=pair, J=clean, b=b, exponents=exponents,
                            weak=weak,
                            total_exponents=dict(total_exponents or {}))


def _monomial_multiplicity(g: Polynomial, mono: tuple) -> int:
    """Largest k with mono^k dividing every term of g."""
    support = [i for i, e in enumerate(mono) if e]
    best = None
    for term in g.terms:
        k = min(term[i] // mono[i] for i in support)
        best = k if best is None else min(best, k)
        if best == 0:
            return 0
    return best or 0


def _extract_power(chart: Chart, gens: list, h: Polynomial):
    """Maximal e with <gens> ⊆ (h)^e as sheaves on the chart; returns (e, gens/h^e)."""
    total = 0
    current = list(gens)
    if not current:
        return 0, current
    if len(h.terms) == 1:
        (mono, _), = h.terms.items()
        e = min(_monomial_multiplicity(g, mono) for g in current)
        if e:
            divisor = h ** e
            current = [exact_div(g, divisor) for g in current]
            total += e
    while True:
        lifted = []
        for g in current:
            q = exact_div(g, h)
            if q is None:
                lifted = None
                break
            lifted.append(q)
        if lifted is None:
            break
        current = lifted
        total += 1
    if chart.deps.gens or chart.ineqs:
        while True:
            target = chart.saturate(Ideal([h], chart.nvars))
            if not all(target.contains(g) for g in current):
                break
            quotient = ideal_quotient(
                Ideal(current + list(chart.deps.gens), chart.nvars), h)
            current = list(quotient.groebner())
            total += 1
    return total, current


def check_factorization(state: BasicObjectState) -> bool:
    """J = prod eq^a * weak on the chart, weak free of further divisor factors."""
    chart = state.chart
    product = Polynomial.constant(1, chart.nvars)
    for div in state.pair.divisors:
        a = state.exponents.get(div.serial, 0)
        if a:
            product = product * div.eq ** a
    rebuilt = Ideal([g * product for g in state.weak.gens], chart.nvars)
    lhs = chart.saturate(state.J)
    rhs = chart.saturate(rebuilt)
    if lhs.groebner() != rhs.groebner():
        return False
    for div in state.pair.divisors:
        target = chart.saturate(Ideal([div.eq], chart.nvars))
        if all(target.contains(g) for g in state.weak.gens):
            return False
    return True


# -- transformations ---------------------------------------------------------


def transform_state(state: BasicObjectState, child_pair: Pair, info: dict,
                    center_param_indices: Sequence[int]) -> BasicObjectState:
    """Controlled transform of `state` onto one blow-up child chart."""
    chart = state.chart
    new_chart = child_pair.chart
    n = new_chart.nvars
    y = info["exceptional"]
    gens = [g.extend(n) for g in state.J.gens]
    b = state.b

    lifted = _divide_exactly(new_chart, gens, y, b)
    if lifted is None:
        raise AlgorithmError("controlled transform division failed: "
                             "center was not inside Sing(J,b)")

    center_eqs = {chart.params[i] for i in center_param_indices}
    center_ideal = Ideal([chart.params[i] for i in sorted(center_param_indices)],
                         chart.nvars)
    totals = {}
    for div in state.pair.divisors:
        c = state.total_exponents.get(div.serial)
        if c is not None and any(d.serial == div.serial for d in child_pair.divisors):
            totals[div.serial] = c
    new_serial = child_pair.divisors[-1].serial
    bump = b
    for div in state.pair.divisors:
        if div.eq in center_eqs or chart.vanishes_on_locus(div.eq, center_ideal):
            bump += state.total_exponents.get(div.serial, 0)
    totals[new_serial] = bump

    J1 = Ideal(lifted, n)
    return factorize_state(child_pair, J1, b, total_exponents=totals)


def _divide_exactly(chart: Chart, gens: list, y: Polynomial, power: int):
    """gens / y^power on the chart, or None when the division is not exact."""
    current = []
    for g in gens:
        nf = chart.nf_mod_deps(g)
        if not nf.is_zero():
            current.append(nf)
    if not current:
        return None
    gens = current
    divisor = y ** power
    current = []
    for g in gens:
        q = exact_div(g, divisor)
        if q is None:
            current = None
            break
        current.append(q)
    if current is not None:
        return current
    # Sheaf-level division modulo dependencies.
    current = list(gens)
    target = chart.saturate(Ideal([y ** power], chart.nvars))
    if not all(target.contains(g) for g in current):
        return None
    quotient = ideal_quotient(
        Ideal(current + list(chart.deps.gens), chart.nvars), y ** power)
    return list(quotient.groebner())


# -- companions and intersections --------------------------------------------


def intersect_objects(a: tuple, b: tuple) -> tuple:
    """Intersection of (J, b) and (I, c) on a shared pair: (J^c + I^b, b*c)."""
    (J, bb), (I, c) = a, b
    K = ideal_sum(ideal_power(J, c), ideal_power(I, bb))
    return K, bb * c


def companion(state: BasicObjectState, stage_birth: int,
              max_n: Optional[int] = None) -> tuple:
    """The auxiliary object whose Sing is Max t.

    Case-3 part intersects (weak, b_k) with (J, b); when max_n > 0 the
    case-2 part intersects further with (P, 1), P the product over max_n
    size subsets of old divisors of their ideal sums.
    """
    w = state.max_word()
    if w == 0:
        raise AlgorithmError("companion is only formed when max w-ord > 0")
    bk = int(w * state.b)
    K, e = intersect_objects((state.weak, bk), (state.J, state.b))
    if max_n:
        P = case2_ideal(state, stage_birth, max_n)
        K, e = intersect_objects((K, e), (P, 1))
    return K, e


def case2_ideal(state: BasicObjectState, stage_birth: int, m: int) -> Ideal:
    """P = prod over size-m subsets of old divisors of (sum of their ideals)."""
    chart = state.chart
    minus = state.divisors_minus(stage_birth)
    P = Ideal([Polynomial.constant(1, chart.nvars)], chart.nvars)
    for subset in combinations(sorted(minus, key=lambda d: d.serial), m):
        term = Ideal([d.eq for d in subset], chart.nvars)
        gens = [f * g for f in P.gens for g in term.gens]
        P = Ideal(Ideal(gens, chart.nvars).groebner(), chart.nvars)
    return P


def max_n_on_locus(state: BasicObjectState, locus: Ideal, stage_birth: int) -> int:
    """max over the locus of the number of old divisors through a point."""
    chart = state.chart
    minus = sorted(state.divisors_minus(stage_birth), key=lambda d: d.serial)
    incident = [d for d in minus
                if not chart.locus_is_empty(
                    Ideal(locus.gens + (d.eq,), chart.nvars))]
    for size in range(len(incident), 0, -1):
        for subset in combinations(incident, size):
            gens = locus.gens + tuple(d.eq for d in subset)
            if not chart.locus_is_empty(Ideal(gens, chart.nvars)):
                return size
    return 0


def t_locus_ideal(state: BasicObjectState, stage_birth: int, m: int) -> Ideal:
    locus = state.max_word_locus()
    if m == 0:
        return locus
    P = case2_ideal(state, stage_birth, m)
    return Ideal(locus.gens + P.gens, state.chart.nvars)


# -- dimension descent --------------------------------------------------------


def r1_factors(chart: Chart, gens: Sequence[Polynomial], control: int) -> list:
    """Squarefree factors of gcd(gens) with multiplicity >= control.

    These cut the codimension-one part of the companion's singular locus;
    returned in ascending multiplicity order.  Generators are reduced modulo
    the chart dependencies first so restriction relations cannot hide common
    factors.
    """
    nonzero = []
    for g in gens:
        g = chart.reduce_mod_deps(g)
        if not g.is_zero():
            nonzero.append(g)
    if not nonzero:
        return []
    g = nonzero[0]
    for other in nonzero[1:]:
        g = multivariate_gcd(g, other)
        if g.is_constant():
            return []
    if g.is_constant():
        return []
    factors = [p for p, mult in squarefree_decomposition(g) if mult >= control]
    return [p for p in factors
            if not chart.locus_is_empty(Ideal([p], chart.nvars))]


def maximal_contact(chart: Chart, A: Ideal, control: int,
                    chain: Optional[list] = None,
                    avoid_params: Sequence[Polynomial] = ()) -> tuple:
    """An order-one element of delta^(control-1)(A) plus its exchange charts.

    Returns (f, charts, chain).  The chain of delta ideals is reused by the
    coefficient ideal.  Hard error when no single generator has a unit
    derivative somewhere on all of Sing(A, control): that contradicts
    ord = 1 and means an algorithm bug upstream.
    """
    if chain is None:
        chain = [A]
    while len(chain) < control:
        chain.append(chart.delta(chain[-1]))
    top = chain[control - 1]
    sing = Ideal(top.gens + chart.deps.gens, chart.nvars)
    for f in top.groebner():
        if f.is_constant():
            raise AlgorithmError("singular locus vanished during contact search")
        derivs = chart.derivatives(f)
        witness = Ideal(sing.gens + tuple(d for d in derivs if not d.is_zero()),
                        chart.nvars)
        if chart.locus_is_empty(witness):
            charts = cover_and_exchange(chart, f, sing, avoid_params=avoid_params)
            return f, charts, chain
    raise AlgorithmError("no generator of order one along the singular locus")


def coeff_ideal(A: Ideal, control: int, chain: list, zchart: Chart) -> tuple:
    """Coefficient ideal: sum over i < b of (delta^i(A))^(b!/(b-i)), control b!.

    Generators are restricted to the contact hypersurface before powering
    (restriction commutes with sums and powers), which keeps the b!-sized
    exponents from exploding the generator sets.
    """
    b = control
    nvars = zchart.nvars
    fact = factorial(b)
    gens = []
    for i in range(b):
        restricted = []
        seen = set()
        for g in chain[i].gens:
            nf = zchart.reduce_mod_deps(g)
            if not nf.is_zero() and nf not in seen:
                seen.add(nf)
                restricted.append(nf)
        if not restricted:
            continue
        power = fact // (b - i)
        term = ideal_power(Ideal(restricted, nvars), power)
        gens.extend(term.gens)
    return Ideal(gens, nvars), fact


def coeff_is_degenerate(chart: Chart, coeff: Ideal) -> bool:
    """True when the coefficient ideal vanishes identically on the chart."""
    sat = chart.saturate(Ideal([], chart.nvars))
    return all(sat.contains(g) for g in coeff.gens)


# -- the monomial invariant ----------------------------------------------------


def monomial_h(state: BasicObjectState) -> tuple:
    """(max h, winning divisor subset) for a state with trivial weak transform.

    h = (-p, omega, l): p the minimal size of a divisor subset with exponent
    sum >= b and nonempty intersection, omega the maximal sum/b among those,
    l the lexicographically largest serial tuple attaining both.
    """
    chart = state.chart
    divisors = sorted((d for d in state.pair.divisors
                       if state.exponents.get(d.serial, 0) > 0),
                      key=lambda d: d.serial)
    b = state.b
    for size in range(1, len(divisors) + 1):
        qualifying = []
        for subset in combinations(divisors, size):
            total = sum(state.exponents[d.serial] for d in subset)
            if total < b:
                continue
            ideal = Ideal([d.eq for d in subset], chart.nvars)
            if chart.locus_is_empty(ideal):
                continue
            qualifying.append((Fraction(total, b), tuple(d.serial for d in subset),
                               subset))
        if qualifying:
            omega = max(q[0] for q in qualifying)
            best = max((q for q in qualifying if q[0] == omega),
                       key=lambda q: q[1])
            value = TComponent.gamma(size, omega, best[1])
            return value, best[2]
    raise AlgorithmError("monomial state with nonempty Sing has no "
                         "qualifying divisor subset")


# -- inclusion checking ---------------------------------------------------------


def inclusion_check(smaller: tuple, larger: tuple, pair: Pair,
                    center_sequences: Sequence[Sequence[int]]) -> bool:
    """Sing(smaller) ⊆ Sing(larger) along the given blow-up sequence.

    Both objects are (Ideal, control) on the shared pair; the sequence lists
    center parameter indices per step.  The check follows every child chart.
    """
    frontier = [(pair, smaller, larger)]
    step = 0

    def contained(pr, small, large):
        chart = pr.chart
        s_ideal, s_b = small
        l_ideal, l_b = large
        s_sing = chart.sing_locus(s_ideal, s_b)
        l_sing = chart.sing_locus(l_ideal, l_b)
        return chart.locus_contained(s_sing, l_sing)

    for pr, small, large in frontier:
        if not contained(pr, small, large):
            return False
    for centers in center_sequences:
        step += 1
        new_frontier = []
        for pr, small, large in frontier:
            children = blow_up(pr, centers, birth=step, serial=step, check=False)
            for child_pair, info in children:
                chart = child_pair.chart
                n = chart.nvars
                y = info["exceptional"]
                s_gens = _divide_exactly(chart, [g.extend(n) for g in small[0].gens],
                                         y, small[1])
                l_gens = _divide_exactly(chart, [g.extend(n) for g in large[0].gens],
                                         y, large[1])
                if s_gens is None or l_gens is None:
                    return False
                entry = (child_pair, (Ideal(s_gens, n), small[1]),
                         (Ideal(l_gens, n), large[1]))
                if not contained(*entry):
                    return False
                new_frontier.append(entry)
        frontier = new_frontier
    return True
