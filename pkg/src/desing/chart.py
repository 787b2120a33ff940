"""Smooth affine charts with a global regular parameter system.

A chart is a closed smooth subvariety of affine m-space cut out by the
`dependencies`, open along the complement of the `inequations`, carrying
`parameters` P_1..P_d that form a regular system at every chart point and a
derivative matrix whose column j represents scal_j * dX_i/dP_j.  The
per-column scaling factors are declared units (they divide the inequation
product), so every locus test that saturates by the inequations is blind to
them; they exist purely so matrix entries stay polynomial after parameter
exchanges.

All values here are immutable after construction; blow-ups and exchanges
build fresh charts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import AlgorithmError
from .groebner import (Ideal, ideal_quotient, ideal_sum, is_unit_ideal,
                       saturation)
from .poly import Polynomial, Ring, exact_div


class Chart:
    __slots__ = ("ring", "deps", "params", "dmat", "scalings", "ineqs",
                 "elim_vars", "_empty_memo", "_vanish_memo", "_sat_memo")

    def __init__(self, ring: Ring, deps: Ideal, params: Sequence[Polynomial],
                 dmat: Sequence[Sequence[Polynomial]],
                 scalings: Optional[Sequence[Polynomial]] = None,
                 ineqs: Sequence[Polynomial] = (),
                 elim_vars: Sequence[int] = ()):
        self.ring = ring
        self.deps = deps
        self.params = tuple(params)
        self.dmat = tuple(tuple(row) for row in dmat)
        n = ring.nvars
        d = len(self.params)
        if scalings is None:
            scalings = [Polynomial.constant(1, n)] * d
        self.scalings = tuple(scalings)
        cleaned = []
        for g in ineqs:
            if g.is_constant():
                continue
            if g not in cleaned:
                cleaned.append(g)
        self.ineqs = tuple(cleaned)
        self.elim_vars = tuple(sorted(set(elim_vars)))
        self._empty_memo = {}
        self._vanish_memo = {}
        self._sat_memo = {}

    # -- construction helpers -------------------------------------------

    @staticmethod
    def affine(names: Sequence[str]) -> "Chart":
        ring = Ring(names)
        n = ring.nvars
        one = Polynomial.constant(1, n)
        zero = Polynomial.zero(n)
        dmat = [[one if i == j else zero for j in range(n)] for i in range(n)]
        return Chart(ring, Ideal([], n), ring.gens(), dmat)

    @property
    def dim(self) -> int:
        return len(self.params)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def ineq_product(self) -> Polynomial:
        q = Polynomial.constant(1, self.nvars)
        for g in self.ineqs:
            q = q * g
        return q

    def __repr__(self):
        return (f"Chart(dim={self.dim}, vars={self.ring.names}, "
                f"{len(self.deps.gens)} deps, {len(self.ineqs)} ineqs)")

    # -- derivations -----------------------------------------------------

    def derive(self, f: Polynomial, j: int) -> Polynomial:
        """Derivative of f along parameter j (scaled by scalings[j])."""
        acc = Polynomial.zero(self.nvars)
        for i in range(self.nvars):
            df = f.derivative(i)
            if df.is_zero():
                continue
            entry = self.dmat[i][j]
            if entry.is_zero():
                continue
            acc = acc + df * entry
        return acc

    def derivatives(self, f: Polynomial) -> list:
        return [self.derive(f, j) for j in range(self.dim)]

    def nf_mod_deps(self, f: Polynomial) -> Polynomial:
        """Rewrite f modulo the dependencies, pushing eliminated old
        coordinates into the chart coordinates introduced by blow-ups."""
        if not self.deps.gens or not self.elim_vars:
            return f
        from .orders import SubsetBlock
        return self.deps.normal_form(f, SubsetBlock(self.elim_vars))

    def reduce_mod_deps(self, f: Polynomial) -> Polynomial:
        """Canonical normal form modulo the dependencies (for factor
        detection; the substitution direction is best effort)."""
        if not self.deps.gens:
            return f
        from .orders import DEGREVLEX, SubsetBlock
        order = SubsetBlock(self.elim_vars) if self.elim_vars else DEGREVLEX
        return self.deps.normal_form(f, order)

    # -- locus tests ------------------------------------------------------

    def locus_is_empty(self, ideal: Ideal) -> bool:
        """V(ideal) meets no point of the chart (deps + inequation open)."""
        key = ideal.gens
        cached = self._empty_memo.get(key)
        if cached is not None:
            return cached
        n = self.nvars
        gens = [g.insert_var(0) for g in ideal.gens]
        gens += [g.insert_var(0) for g in self.deps.gens]
        if self.ineqs:
            t = Polynomial.variable(0, n + 1)
            q = self.ineq_product().insert_var(0)
            gens.append(Polynomial.constant(1, n + 1) - t * q)
        result = is_unit_ideal(Ideal(gens, n + 1))
        self._empty_memo[key] = result
        return result

    def is_nonempty(self) -> bool:
        return not self.locus_is_empty(Ideal([], self.nvars))

    def vanishes_on_locus(self, f: Polynomial, ideal: Ideal) -> bool:
        """f = 0 at every chart point of V(ideal) (exact, via Rabinowitsch)."""
        if f.is_zero():
            return True
        key = (f, ideal.gens)
        cached = self._vanish_memo.get(key)
        if cached is not None:
            return cached
        n = self.nvars
        gens = [g.insert_var(0) for g in ideal.gens]
        gens += [g.insert_var(0) for g in self.deps.gens]
        t = Polynomial.variable(0, n + 1)
        q = self.ineq_product() * f
        gens.append(Polynomial.constant(1, n + 1) - t * q.insert_var(0))
        result = is_unit_ideal(Ideal(gens, n + 1))
        self._vanish_memo[key] = result
        return result

    def vanishes_on_chart(self, f: Polynomial) -> bool:
        return self.vanishes_on_locus(f, Ideal([], self.nvars))

    def locus_contained(self, a: Ideal, b: Ideal) -> bool:
        """V(a) ∩ chart ⊆ V(b) ∩ chart (exact over the algebraic closure)."""
        return all(self.vanishes_on_locus(g, a) for g in b.gens)

    def locus_equal(self, a: Ideal, b: Ideal) -> bool:
        return self.locus_contained(a, b) and self.locus_contained(b, a)

    def saturate(self, ideal: Ideal) -> Ideal:
        """sat(ideal + deps, inequation product): the chart-closure ideal."""
        key = ideal.gens
        cached = self._sat_memo.get(key)
        if cached is not None:
            return cached
        total = ideal_sum(ideal, self.deps) if self.deps.gens else ideal
        if self.ineqs:
            total, _ = saturation(total, self.ineq_product())
        self._sat_memo[key] = total
        return total

    # -- the differential operator ---------------------------------------

    def delta(self, ideal: Ideal) -> Ideal:
        """ideal + derivatives of its (canonical) generators along parameters."""
        gens = list(ideal.groebner())
        out = list(gens)
        for g in gens:
            for j in range(self.dim):
                d = self.derive(g, j)
                if not d.is_zero():
                    out.append(d)
        return Ideal(Ideal(out, self.nvars).groebner(), self.nvars)

    def delta_chain(self, ideal: Ideal, length: int) -> list:
        """[ideal, delta(ideal), ..., delta^length(ideal)]."""
        chain = [ideal]
        for _ in range(length):
            chain.append(self.delta(chain[-1]))
        return chain

    def max_order(self, ideal: Ideal, restrict_to: Optional[Ideal] = None,
                  _chain: Optional[list] = None) -> int:
        """Largest t with V(delta^(t-1)(I)) ∩ V(restrict_to) ∩ chart nonempty."""
        restrict = restrict_to.gens if restrict_to is not None else ()
        bound = max((g.total_degree() for g in ideal.gens), default=0)
        chain = _chain if _chain is not None else [ideal]
        t = 0
        while True:
            current = chain[t] if t < len(chain) else None
            if current is None:
                current = self.delta(chain[-1])
                chain.append(current)
            test = Ideal(current.gens + tuple(restrict), self.nvars)
            if self.locus_is_empty(test):
                return t
            t += 1
            if t > bound + 1:
                raise AlgorithmError(
                    "delta chain failed to reach the unit ideal; the ideal "
                    "vanishes on a chart component")

    def sing_locus(self, ideal: Ideal, b: int, _chain: Optional[list] = None) -> Ideal:
        """delta^(b-1)(ideal) + dependencies; V(..) ∩ chart = Sing(ideal, b)."""
        if b < 1:
            raise ValueError("control must be >= 1")
        if _chain is not None:
            while len(_chain) < b:
                _chain.append(self.delta(_chain[-1]))
            top = _chain[b - 1]
        else:
            top = ideal
            for _ in range(b - 1):
                top = self.delta(top)
        return Ideal(top.gens + self.deps.gens, self.nvars)

    # -- smoothness and normal crossings ----------------------------------

    def _parameter_jacobian(self, gens: Sequence[Polynomial]) -> list:
        return [[self.derive(g, j) for j in range(self.dim)] for g in gens]

    def is_smooth(self, ideal: Ideal, expected_codim: int) -> bool:
        """V(ideal) ∩ chart is smooth of pure codimension `expected_codim`.

        Rank of the parameter Jacobian must be exactly `expected_codim` at
        every chart point of the locus; vacuously true on the empty locus.
        """
        if expected_codim < 0 or expected_codim > self.dim:
            return False
        if self.locus_is_empty(ideal):
            return True
        if expected_codim == 0:
            return True
        gens = list(ideal.groebner())
        jac = self._parameter_jacobian(gens)
        rows = len(jac)
        if rows < expected_codim:
            return False
        c = expected_codim
        minors_c = _all_minors(jac, c)
        drop = Ideal(ideal.gens + tuple(minors_c), self.nvars)
        if not self.locus_is_empty(drop):
            return False
        if rows > c and self.dim > c:
            for minor in _all_minors(jac, c + 1):
                if minor.is_zero():
                    continue
                if not self.vanishes_on_locus(minor, ideal):
                    return False
        return True

    def joint_smooth(self, members: Sequence[tuple]) -> bool:
        """Each member is (ideal, codim); their union of equations must cut a
        smooth subscheme of total codimension, or be empty."""
        gens = []
        codim = 0
        for ideal, c in members:
            gens.extend(ideal.gens)
            codim += c
        total = Ideal(gens, self.nvars)
        if codim > self.dim:
            return self.locus_is_empty(total)
        return self.is_smooth(total, codim)

    def has_normal_crossings(self, hypersurfaces: Sequence[Ideal]) -> bool:
        """Every incident subfamily cuts a smooth scheme of codim = its size."""
        n = len(hypersurfaces)
        empty_subsets = []
        for size in range(1, n + 1):
            for subset in combinations(range(n), size):
                if any(set(e).issubset(subset) for e in empty_subsets):
                    continue
                gens = []
                for i in subset:
                    gens.extend(hypersurfaces[i].gens)
                total = Ideal(gens, self.nvars)
                if self.locus_is_empty(total):
                    empty_subsets.append(subset)
                    continue
                if not self.is_smooth(total, size):
                    return False
        return True

    def center_permissible(self, center_indices: Sequence[int],
                           divisor_eqs: Sequence[Polynomial]) -> bool:
        """Smooth parameter-subset center with normal crossings against the
        divisors.

        Divisors equal to chart parameters cross the center normally by
        construction (one regular system carries everything).  Divisors whose
        equation left the parameter system are checked geometrically; a
        divisor containing the center contributes no extra codimension.
        """
        r = len(center_indices)
        center_params = {self.params[i] for i in center_indices}
        center = Ideal([self.params[i] for i in sorted(center_indices)],
                       self.nvars)
        if not self.is_smooth(center, r):
            return False
        param_set = set(self.params)
        odd = [eq for eq in divisor_eqs if eq not in param_set]
        if not odd:
            return True
        coord = [eq for eq in divisor_eqs
                 if eq in param_set and eq not in center_params]
        for eq in odd:
            if not self.is_smooth(Ideal([eq], self.nvars), 1):
                return False
        for k in range(1, len(odd) + 1):
            for osub in combinations(odd, k):
                crossing = sum(1 for eq in osub
                               if not self.vanishes_on_locus(eq, center))
                for j in range(len(coord) + 1):
                    for csub in combinations(coord, j):
                        gens = (tuple(center.gens) + tuple(osub)
                                + tuple(csub))
                        total = Ideal(gens, self.nvars)
                        if self.locus_is_empty(total):
                            continue
                        if not self.is_smooth(total, r + crossing + j):
                            return False
        return True

    # -- invariant checks (used by tests and verify) -----------------------

    def check_invariants(self) -> list:
        """Returns a list of failure strings; empty = all chart laws hold."""
        failures = []
        if not self.is_nonempty():
            failures.append("chart is empty")
        for dep in self.deps.gens:
            for j in range(self.dim):
                d = self.derive(dep, j)
                if not self.vanishes_on_chart(d):
                    failures.append(f"jacobian consistency fails at dep, col {j}")
        zero = Ideal([], self.nvars)
        for k, p in enumerate(self.params):
            for j in range(self.dim):
                d = self.derive(p, j)
                expected = self.scalings[j] if j == k else Polynomial.zero(self.nvars)
                if not self.vanishes_on_locus(d - expected, zero):
                    failures.append(f"chain rule fails at param {k}, col {j}")
        return failures


def _minor(matrix, rows, cols) -> Polynomial:
    if len(rows) == 1:
        return matrix[rows[0]][cols[0]]
    acc = None
    for idx, r in enumerate(rows):
        entry = matrix[r][cols[0]]
        if entry.is_zero():
            continue
        sub = _minor(matrix, rows[:idx] + rows[idx + 1:], cols[1:])
        term = entry * sub
        if idx % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        nv = matrix[rows[0]][cols[0]].nvars
        return Polynomial.zero(nv)
    return acc


def _all_minors(matrix, size: int) -> list:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    out = []
    for rsel in combinations(range(rows), size):
        for csel in combinations(range(cols), size):
            out.append(_minor(matrix, tuple(rsel), tuple(csel)))
    return out


# -- divisors and pairs ----------------------------------------------------


@dataclass(frozen=True)
class Divisor:
    """A tracked smooth hypersurface on a chart.

    `birth` is the transformation step that created it (0 for input
    divisors); `serial` is the global 1-based position in birth order, used
    by the combinatorial index tuples of the monomial invariant.
    """
    eq: Polynomial
    birth: int
    serial: int

    def sign_tag(self, stage_birth: int) -> str:
        return "minus" if self.birth <= stage_birth else "plus"


@dataclass(frozen=True)
class Pair:
    chart: Chart
    divisors: tuple

    def divisor_ideals(self) -> list:
        return [Ideal([d.eq], self.chart.nvars) for d in self.divisors]


# -- parameter exchange -----------------------------------------------------


def exchange_parameter(chart: Chart, f: Polynomial, j: int,
                       derivs: Sequence[Polynomial]) -> Chart:
    """Replace parameter j by f; derivs = chart.derivatives(f).

    The chain-rule denominators (the unit derivative c_j) are cleared into
    the column scalings, and c_j joins the inequations.
    """
    c = list(derivs)
    cj = c[j]
    if cj.is_zero():
        raise AlgorithmError("exchange along a vanishing derivative")
    n = chart.nvars
    d = chart.dim
    new_params = list(chart.params)
    new_params[j] = f
    new_dmat = []
    for i in range(n):
        row = list(chart.dmat[i])
        mij = row[j]
        for k in range(d):
            if k == j:
                continue
            row[k] = cj * row[k] - mij * c[k]
        new_dmat.append(row)
    new_scalings = []
    for k in range(d):
        if k == j:
            new_scalings.append(cj)
        else:
            new_scalings.append(chart.scalings[k] * cj)
    new_ineqs = list(chart.ineqs)
    if not cj.is_constant():
        new_ineqs.append(cj)
    return Chart(chart.ring, chart.deps, new_params, new_dmat,
                 new_scalings, new_ineqs, chart.elim_vars)


def cover_and_exchange(chart: Chart, f: Polynomial, cover_target: Ideal,
                       avoid_params: Sequence[Polynomial] = (),
                       forbid_params: Sequence[Polynomial] = (),
                       relevant: Optional[Ideal] = None) -> list:
    """Charts on which f is a parameter, jointly covering V(cover_target).

    Prefers a single chart: first an index where f already sits, then a
    derivative that is a unit on the whole chart (constants first), then one
    that is a unit along the cover target plus leftover opens, then the
    general split into derivative-opens plus leftovers.  Leftover opens miss
    the cover target by construction; they are kept only where V(relevant)
    still shows up (`relevant` defaults to the whole chart).
    `avoid_params` lists parameters better left alone (divisor equations);
    `forbid_params` may never be exchanged away (contact hypersurfaces of
    enclosing tower levels).
    """
    if f in chart.params:
        return [chart]
    derivs = chart.derivatives(f)
    usable = [j for j in range(chart.dim)
              if not derivs[j].is_zero() and chart.params[j] not in forbid_params]
    if not usable:
        raise AlgorithmError("no unit derivative: order of f exceeds 1 on target")
    witness = Ideal(tuple(cover_target.gens) + tuple(derivs[j] for j in usable),
                    chart.nvars)
    if not chart.locus_is_empty(witness):
        raise AlgorithmError("no unit derivative: order of f exceeds 1 on target")

    def preference(j):
        return (chart.params[j] in avoid_params, not derivs[j].is_constant(), j)

    ordered = sorted(usable, key=preference)
    # A derivative that is a unit on the whole chart: one chart, no leftovers.
    for j in ordered:
        if derivs[j].is_constant() or chart.locus_is_empty(
                Ideal([derivs[j]], chart.nvars)):
            return [exchange_parameter(chart, f, j, derivs)]

    def leftovers(exchanged):
        # Opens that miss the target, covering whatever relevant locus the
        # exchange opens leave out.
        used = [derivs[j] for j in exchanged]
        rel = relevant.gens if relevant is not None else ()
        leftover_witness = Ideal(tuple(rel) + tuple(used), chart.nvars)
        if chart.locus_is_empty(leftover_witness):
            return []
        out = []
        for g in cover_target.groebner():
            if g.is_constant():
                continue
            piece = Chart(chart.ring, chart.deps, chart.params, chart.dmat,
                          chart.scalings, chart.ineqs + (g,), chart.elim_vars)
            if relevant is not None and piece.locus_is_empty(relevant):
                continue
            if piece.is_nonempty():
                out.append(piece)
        return out

    # A derivative that is a unit along the target: one exchange chart.
    for j in ordered:
        if chart.locus_is_empty(
                Ideal(tuple(cover_target.gens) + (derivs[j],), chart.nvars)):
            return [exchange_parameter(chart, f, j, derivs)] + leftovers([j])
    # General split.
    charts = [exchange_parameter(chart, f, j, derivs) for j in ordered]
    return charts + leftovers(ordered)


# -- blow-up ----------------------------------------------------------------


def _fresh_names(ring: Ring, count: int, birth: int) -> list:
    names = []
    existing = set(ring.names)
    for idx in range(count):
        base = f"t{birth}_{idx}"
        name = base
        while name in existing:
            name = "_" + name
        existing.add(name)
        names.append(name)
    return names


def _extract_divisor_power(chart: Chart, gens: list, h: Polynomial):
    """Split off the maximal h-power dividing <gens> as a sheaf on the chart."""
    total = 0
    current = list(gens)
    while True:
        lifted = []
        ok = True
        for g in current:
            q = exact_div(g, h)
            if q is None:
                ok = False
                break
            lifted.append(q)
        if ok and lifted:
            current = lifted
            total += 1
            continue
        break
    # Sheaf-level divisibility modulo dependencies (rare; literal pass first).
    while True:
        target = chart.saturate(Ideal([h], chart.nvars))
        if not all(target.contains(g) for g in current):
            break
        quotient = ideal_quotient(
            Ideal(list(current) + list(chart.deps.gens), chart.nvars), h)
        current = list(quotient.groebner())
        total += 1
    return total, current


def blow_up(pair: Pair, center_indices: Sequence[int], birth: int,
            serial: int, check: bool = True) -> list:
    """Monoidal transformation at the center cut by the listed parameters.

    Returns one (Pair, info) per child chart; r = 1 appends the hypersurface
    as a divisor on the unchanged chart.  Preconditions (smooth center with
    normal crossings against the divisors) are hard-checked unless `check`
    is false; a failure means an algorithm bug, not user error.
    """
    chart = pair.chart
    center_indices = list(center_indices)
    r = len(center_indices)
    if r == 0:
        raise AlgorithmError("empty center")
    center_params = [chart.params[i] for i in center_indices]
    if check:
        if not chart.center_permissible(center_indices,
                                        [d.eq for d in pair.divisors]):
            raise AlgorithmError(
                f"center {center_indices} is not permissible on this chart")

    if r == 1:
        eq = center_params[0]
        kept = tuple(d for d in pair.divisors if d.eq != eq)
        new_div = Divisor(eq, birth, serial)
        child = Pair(chart, kept + (new_div,))
        return [(child, {"k": center_indices[0], "exceptional": eq,
                         "hypersurface": True, "param_map": {}})]

    children = []
    tnames = _fresh_names(chart.ring, r, birth)
    for pos, k in enumerate(center_indices):
        others = [(p, i) for p, i in zip(center_indices, range(r)) if p != k]
        new_names = [tnames[i] for _, i in others]
        ring = chart.ring.extend(new_names)
        n_old = chart.nvars
        n = ring.nvars
        y = center_params[pos].extend(n)

        tvars = {}
        trow = {}
        for offset, (p_idx, _) in enumerate(others):
            tvars[p_idx] = Polynomial.variable(n_old + offset, n)
            trow[p_idx] = n_old + offset

        deps_gens = [g.extend(n) for g in chart.deps.gens]
        for p_idx, _ in others:
            deps_gens.append(chart.params[p_idx].extend(n) - tvars[p_idx] * y)
        deps = Ideal(deps_gens, n)

        params = []
        for i, p in enumerate(chart.params):
            if i == k:
                params.append(y)
            elif i in tvars:
                params.append(tvars[i])
            else:
                params.append(p.extend(n))

        zero = Polynomial.zero(n)
        scale_prod = Polynomial.constant(1, n)
        for i in center_indices:
            scale_prod = scale_prod * chart.scalings[i].extend(n)
        dmat = [[zero] * chart.dim for _ in range(n)]
        scalings = [None] * chart.dim
        for j in range(chart.dim):
            if j == k:
                scalings[j] = scale_prod
                for i in range(n_old):
                    acc = _scaled_entry(chart, i, k, center_indices, n)
                    for p_idx, _ in others:
                        term = _scaled_entry(chart, i, p_idx, center_indices, n)
                        if not term.is_zero():
                            acc = acc + tvars[p_idx] * term
                    dmat[i][j] = acc
            elif j in tvars:
                scalings[j] = chart.scalings[j].extend(n)
                for i in range(n_old):
                    entry = chart.dmat[i][j]
                    if not entry.is_zero():
                        dmat[i][j] = y * entry.extend(n)
                dmat[trow[j]][j] = scalings[j]
            else:
                scalings[j] = chart.scalings[j].extend(n)
                for i in range(n_old):
                    dmat[i][j] = chart.dmat[i][j].extend(n)

        ineqs = [g.extend(n) for g in chart.ineqs]
        elim = set(chart.elim_vars)
        for p_idx, _ in others:
            old_param = chart.params[p_idx]
            if len(old_param.terms) == 1:
                (mono, coeff), = old_param.terms.items()
                if sum(mono) == 1:
                    elim.add(mono.index(1))
        new_chart = Chart(ring, deps, params, dmat, scalings, ineqs, elim)

        divisors = []
        for div in pair.divisors:
            if div.eq == center_params[pos]:
                continue  # strict transform misses this chart
            idx = _param_index(chart, div.eq)
            if idx is not None and idx in tvars:
                divisors.append(Divisor(tvars[idx], div.birth, div.serial))
            else:
                new_eq = div.eq.extend(n)
                divisors.append(Divisor(new_eq, div.birth, div.serial))
        divisors.append(Divisor(y, birth, serial))
        drop_empty = []
        for div in divisors:
            if new_chart.locus_is_empty(Ideal([div.eq], n)):
                drop_empty.append(div)
        for div in drop_empty:
            divisors.remove(div)

        param_map = {chart.params[k]: y}
        for p_idx, _ in others:
            param_map[chart.params[p_idx]] = tvars[p_idx]
        children.append((Pair(new_chart, tuple(divisors)),
                         {"k": k, "exceptional": y, "hypersurface": False,
                          "param_map": param_map}))
    return children


def _param_index(chart: Chart, eq: Polynomial):
    for i, p in enumerate(chart.params):
        if p == eq:
            return i
    return None


def _scaled_entry(chart: Chart, i: int, col: int, center: Sequence[int],
                  n: int) -> Polynomial:
    """dmat[i][col] rescaled so every center column shares one scaling."""
    entry = chart.dmat[i][col]
    if entry.is_zero():
        return Polynomial.zero(n)
    acc = entry.extend(n)
    for other in center:
        if other != col:
            acc = acc * chart.scalings[other].extend(n)
    return acc


def restrict_to_hypersurface(pair: Pair, z_index: int) -> Pair:
    """The pair cut by parameter z: one dimension down, divisors restricted."""
    chart = pair.chart
    z = chart.params[z_index]
    deps = Ideal(chart.deps.gens + (z,), chart.nvars)
    params = [p for i, p in enumerate(chart.params) if i != z_index]
    dmat = [[row[j] for j in range(chart.dim) if j != z_index]
            for row in chart.dmat]
    scalings = [s for i, s in enumerate(chart.scalings) if i != z_index]
    elim = set(chart.elim_vars)
    if len(z.terms) == 1:
        (mono, _), = z.terms.items()
        if sum(mono) == 1:
            elim.add(mono.index(1))
    new_chart = Chart(chart.ring, deps, params, dmat, scalings, chart.ineqs,
                      elim)
    divisors = []
    for div in pair.divisors:
        if div.eq == z:
            raise AlgorithmError("restriction hypersurface is a divisor")
        if new_chart.locus_is_empty(Ideal([div.eq], chart.nvars)):
            continue
        divisors.append(div)
    return Pair(new_chart, tuple(divisors))
