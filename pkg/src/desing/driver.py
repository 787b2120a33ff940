"""The resolution loop: recursive center selection, blow-up orchestration,
embedded desingularization, principalization, and tree verification.

One global step = one permissible transformation of the basic object.  Each
step picks the maximal value of the composite selection function over all
active charts, blows up its center on every chart where the maximum is
attained, and leaves the other charts untouched.  Sibling charts can be
analyzed by a worker pool; results are merged in a fixed order so the output
is identical for any worker count.
"""

from __future__ import annotations

import concurrent.futures
import contextvars
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .basic import (BasicObjectState, check_factorization, coeff_ideal,
                    coeff_is_degenerate, companion, factorize_state,
                    max_n_on_locus, monomial_h, r1_factors, transform_state,
                    _divide_exactly)
from .budgets import current_budget
from .chart import (Chart, Divisor, Pair, blow_up, cover_and_exchange,
                    restrict_to_hypersurface)
from .errors import AlgorithmError, ResourceBudgetExceeded
from .groebner import Ideal, ideal_dimension, saturation
from .poly import Polynomial
from .values import INF, TComponent, render_value, smooth_constant


@dataclass
class LevelCtx:
    """One story of a maximal-contact tower anchored on a leaf chart."""
    z: Optional[Polynomial]          # contact equation; None at depth 0
    pair: Pair
    state: BasicObjectState
    generation: int = 0              # stage token at build time


@dataclass
class Node:
    id: int
    parent: Optional[int]
    pair: Pair
    state: BasicObjectState
    born_step: int
    kind: str = "chart"              # chart | cover
    children: list = field(default_factory=list)
    resolved: Optional[bool] = None


@dataclass
class Leaf:
    node_id: int
    levels: list


@dataclass
class StageLevel:
    word: Optional[Fraction] = None
    word_step: int = 0
    word_bk: int = 0
    t: Optional[tuple] = None
    t_step: int = 0
    generation: int = 0
    t_drops: int = 0


class _Restart(Exception):
    """A chart split happened; recompute the current step from scratch."""


class ResolutionRun:
    def __init__(self, pair: Pair, J: Ideal, b: int, workers: int = 1,
                 debug_checks: bool = False):
        state = factorize_state(pair, J, b)
        state.total_exponents = dict(state.exponents)
        root = Node(0, None, pair, state, 0)
        self.nodes = [root]
        self.leaves = [Leaf(0, [LevelCtx(None, pair, state)])]
        self.stages: list = []
        self.step_records: list = []
        self.workers = max(1, workers)
        self.debug = debug_checks
        self.debug_failures: list = []
        self.serial_base = max((d.serial for d in pair.divisors), default=0)
        self.steps_done = 0
        self.stage_marks: list = [0]
        self.dim = pair.chart.dim
        self.halted_at = None
        self._contact_cache = {}

    # -- plumbing ---------------------------------------------------------

    def _stage(self, depth: int) -> StageLevel:
        while len(self.stages) <= depth:
            self.stages.append(StageLevel())
        return self.stages[depth]

    def _map(self, fn: Callable, items: Sequence):
        items = list(items)
        if self.workers <= 1 or len(items) <= 1:
            return [fn(x) for x in items]
        with concurrent.futures.ThreadPoolExecutor(self.workers) as pool:
            futures = [pool.submit(contextvars.copy_context().run, fn, x)
                       for x in items]
            return [f.result() for f in futures]

    def _new_node(self, parent: int, pair: Pair, state: BasicObjectState,
                  kind: str = "chart") -> int:
        node_id = len(self.nodes)
        node = Node(node_id, parent, pair, state, self.steps_done, kind)
        self.nodes.append(node)
        self.nodes[parent].children.append(node_id)
        return node_id

    # -- main loop ----------------------------------------------------------

    def run(self, halt_value=None):
        budget = current_budget()
        prev_f = None
        while True:
            if self.steps_done >= budget.max_steps:
                raise ResourceBudgetExceeded("max_steps", budget.max_steps)
            picked = self._select_step()
            if picked is None:
                break
            f, selection = picked
            if halt_value is not None and f == halt_value:
                self.halted_at = f
                break
            if prev_f is not None and not (f < prev_f):
                raise AlgorithmError(
                    "max f failed to drop: "
                    f"{render_value(f)} after {render_value(prev_f)}; "
                    f"state dump: step={self.steps_done}, "
                    f"leaves={[l.node_id for l in self.leaves]}")
            prev_f = f
            self._blow(selection, f)
        for leaf in self.leaves:
            node = self.nodes[leaf.node_id]
            node.resolved = leaf.levels[0].state.sing_empty()
        return self

    def _select_step(self):
        while True:
            self._contact_cache = {}
            alive = []
            for leaf in self.leaves:
                if not leaf.levels[0].state.sing_empty():
                    alive.append(leaf)
            if not alive:
                return None
            try:
                return self._phase(0, alive)
            except _Restart:
                continue

    # -- one phase of the recursive selector --------------------------------

    def _phase(self, depth: int, subset: list):
        step = self.steps_done
        stage = self._stage(depth)
        dim_here = subset[0].levels[depth].pair.chart.dim
        states = [leaf.levels[depth].state for leaf in subset]
        words = self._map(lambda s: s.max_word(), states)
        w = max(words)
        if stage.word is None or w != stage.word:
            if stage.word is not None and w > stage.word:
                raise AlgorithmError(f"max w-ord increased at depth {depth}")
            stage.word = w
            stage.word_step = step
            stage.word_bk = int(w * states[0].b)
            stage.t = None
            stage.generation += 1
            stage.t_drops = 0
            del self.stages[depth + 1:]
        for leaf in subset:
            if (len(leaf.levels) > depth + 1 and
                    leaf.levels[depth + 1].generation != stage.generation):
                del leaf.levels[depth + 1:]
        cands = [leaf for leaf, wi in zip(subset, words) if wi == w]
        cstates = [leaf.levels[depth].state for leaf in cands]

        if w == 0:
            hs = self._map(monomial_h, cstates)
            hmax = max(h for h, _ in hs)
            selection = []
            for leaf, (h, divs) in zip(cands, hs):
                if h == hmax:
                    selection.append((leaf, [d.eq for d in divs],
                                      {"kind": "monomial",
                                       "l": [d.serial for d in divs]}))
            return (hmax,) + (INF,) * (dim_here - 1), selection

        word_step = stage.word_step
        ns = self._map(
            lambda s: max_n_on_locus(s, s.max_word_locus(), word_step),
            cstates)
        m = max(ns)
        t = (w, m)
        if stage.t is None or t != stage.t:
            if stage.t is not None and not (t < stage.t):
                raise AlgorithmError(f"max t increased at depth {depth}")
            stage.t = t
            stage.t_step = step
            stage.generation += 1
            stage.t_drops += 1
            if stage.t_drops > stage.word_bk * dim_here + 1:
                raise AlgorithmError(
                    f"max t dropped more than b'*d times at depth {depth}; "
                    f"state dump: step={step}, t={t}")
            del self.stages[depth + 1:]
        for leaf in cands:
            if (len(leaf.levels) > depth + 1 and
                    leaf.levels[depth + 1].generation != stage.generation):
                del leaf.levels[depth + 1:]
        tcomp = TComponent.pair(w, m)
        tcands = [leaf for leaf, ni in zip(cands, ns) if ni == m]
        tstates = [leaf.levels[depth].state for leaf in tcands]

        comps = self._map(lambda s: companion(s, word_step, m), tstates)
        r1s = [r1_factors(leaf.levels[depth].pair.chart, A.gens, e)
               for leaf, (A, e) in zip(tcands, comps)]
        # Codimension-one centers: gcd-detected factors, plus (for charts
        # whose tower is not yet built this stage) the whole contact
        # hypersurface when it sits inside Sing.  Both yield the same
        # selector value, so they must be detected in the same pass.
        picks = []
        unbuilt = []
        for leaf, (A, e), factors in zip(tcands, comps, r1s):
            built = (len(leaf.levels) > depth + 1 and
                     leaf.levels[depth + 1].generation == stage.generation)
            if factors:
                picks.append((leaf, factors[0]))
                continue
            if built:
                continue
            fired = self._type_one_center(leaf, depth, A, e)
            if fired is not None:
                picks.append((leaf, fired))
            else:
                unbuilt.append((leaf, A, e))
        if picks:
            # Make every pending factor a top parameter before selecting;
            # batching the exchanges avoids one restart per leaf.
            pending = [(leaf, factor) for leaf, factor in picks
                       if factor not in leaf.levels[0].pair.chart.params]
            if pending:
                for leaf, factor in pending:
                    self._exchange_in(leaf, depth, factor)
                raise _Restart
            selection = [(leaf, [factor], {"kind": "r1"})
                         for leaf, factor in picks]
            return (tcomp,) + (INF,) * (dim_here - 1), selection

        # Dimension descent: maximal contact, restriction, coefficient ideal.
        if dim_here <= 1:
            raise AlgorithmError(
                "descent below dimension 1: codimension-one detection missed "
                "the center")
        for leaf, A, e in unbuilt:
            self._build_level(leaf, depth, A, e, stage)
        if self.debug:
            for leaf, (A, e) in zip(tcands, comps):
                self._debug_coeff_equivalence(leaf, depth, A, e)
        tail, selection = self._phase(depth + 1, tcands)
        wrapped = []
        for leaf, polys, meta in selection:
            wrapped.append((leaf, polys + [leaf.levels[depth + 1].z], meta))
        return (tcomp,) + tail, wrapped

    # -- towers --------------------------------------------------------------

    def _find_contact(self, chart: Chart, A: Ideal, control: int):
        chain = [A]
        while len(chain) < control:
            chain.append(chart.delta(chain[-1]))
        top = chain[control - 1]
        sing = Ideal(top.gens + chart.deps.gens, chart.nvars)
        for f in top.groebner():
            if f.is_constant():
                raise AlgorithmError("singular locus vanished during "
                                     "contact search")
            derivs = chart.derivatives(f)
            witness = Ideal(
                sing.gens + tuple(d for d in derivs if not d.is_zero()),
                chart.nvars)
            if chart.locus_is_empty(witness):
                return f, sing, chain
        raise AlgorithmError("no generator of order one along the singular "
                             "locus; broken maximal-contact choice")

    def _type_one_center(self, leaf: Leaf, depth: int, A: Ideal, e: int):
        """V(f) entirely inside Sing(A, e): the contact hypersurface itself is
        the codimension-one part and becomes the center."""
        ctx = leaf.levels[depth]
        chart = ctx.pair.chart
        f, sing, chain = self._find_contact(chart, A, e)
        self._contact_cache[(id(leaf), depth)] = (f, sing, chain)
        f_locus = Ideal((f,) + chart.deps.gens, chart.nvars)
        if chart.locus_is_empty(f_locus):
            return None
        if chart.locus_contained(f_locus, sing):
            return f
        return None

    def _build_level(self, leaf: Leaf, depth: int, A: Ideal, e: int,
                     stage: StageLevel):
        ctx = leaf.levels[depth]
        chart = ctx.pair.chart
        cached = self._contact_cache.pop((id(leaf), depth), None)
        if cached is not None:
            f, sing, chain = cached
        else:
            f, sing, chain = self._find_contact(chart, A, e)
        f = self._ensure_top_param(leaf, depth, f)
        z_index = ctx.pair.chart.params.index(f)
        e_plus = tuple(d for d in ctx.pair.divisors
                       if d.birth > stage.word_step)
        zpair = restrict_to_hypersurface(Pair(ctx.pair.chart, e_plus), z_index)
        coeff, fact = coeff_ideal(A, e, chain, zpair.chart)
        if coeff_is_degenerate(zpair.chart, coeff):
            raise AlgorithmError("maximal contact degenerate: coefficient "
                                 "ideal vanishes on the hypersurface")
        sub_state = factorize_state(zpair, coeff, fact)
        leaf.levels[depth + 1:] = [LevelCtx(z=f, pair=zpair, state=sub_state,
                                            generation=stage.generation)]

    def _ensure_top_param(self, leaf: Leaf, depth: int,
                          factor: Polynomial) -> Polynomial:
        """Make `factor` a parameter of the leaf's top chart (exchange)."""
        top = leaf.levels[0].pair.chart
        if factor in top.params:
            return factor
        self._exchange_in(leaf, depth, factor)
        raise _Restart

    def _exchange_in(self, leaf: Leaf, depth: int, factor: Polynomial):
        top = leaf.levels[0].pair.chart
        level_chart = leaf.levels[depth].pair.chart
        target = Ideal((factor,) + level_chart.deps.gens, top.nvars)
        forbid = [lv.z for lv in leaf.levels[1:]]
        avoid = [d.eq for d in leaf.levels[0].pair.divisors]
        relevant = leaf.levels[0].state.sing_ideal()
        charts = cover_and_exchange(top, factor, target,
                                    avoid_params=avoid, forbid_params=forbid,
                                    relevant=relevant)
        self._replace_leaf(leaf, charts)

    # -- chart splits ----------------------------------------------------------

    def _replace_leaf(self, leaf: Leaf, charts: list):
        node = self.nodes[leaf.node_id]
        if len(charts) == 1:
            levels = self._rebuild_levels(leaf, charts[0])
            leaf.levels = levels
            node.pair = levels[0].pair
            node.state = levels[0].state
            return
        position = self.leaves.index(leaf)
        new_leaves = []
        for chart in charts:
            levels = self._rebuild_levels(leaf, chart)
            child_id = self._new_node(leaf.node_id, levels[0].pair,
                                      levels[0].state, kind="cover")
            new_leaves.append(Leaf(child_id, levels))
        self.leaves[position:position + 1] = new_leaves

    def _rebuild_levels(self, leaf: Leaf, top_chart: Chart) -> list:
        """Re-anchor the whole level stack on a re-parameterized top chart."""
        old_top = leaf.levels[0]
        divisors = []
        for d in old_top.pair.divisors:
            if not top_chart.locus_is_empty(Ideal([d.eq], top_chart.nvars)):
                divisors.append(d)
        pair = Pair(top_chart, tuple(divisors))
        state = factorize_state(pair, old_top.state.J, old_top.state.b,
                                total_exponents=old_top.state.total_exponents)
        levels = [LevelCtx(None, pair, state, old_top.generation)]
        current = pair
        for lv in leaf.levels[1:]:
            if lv.z not in current.chart.params:
                break
            z_index = current.chart.params.index(lv.z)
            kept = []
            for d in lv.pair.divisors:
                kept.append(d)
            zpair = restrict_to_hypersurface(
                Pair(current.chart, tuple(kept)), z_index)
            sub_state = factorize_state(zpair, lv.state.J, lv.state.b)
            levels.append(LevelCtx(z=lv.z, pair=zpair, state=sub_state,
                                   generation=lv.generation))
            current = zpair
        return levels

    # -- blow-up application -----------------------------------------------------

    def _blow(self, selection: list, f_value: tuple):
        self.steps_done += 1
        step = self.steps_done
        serial = self.serial_base + step
        selected = {id(leaf): (leaf, polys, meta)
                    for leaf, polys, meta in selection}
        record = {"step": step, "f": f_value, "actions": []}
        new_leaves = []
        for leaf in self.leaves:
            entry = selected.get(id(leaf))
            if entry is None:
                new_leaves.append(leaf)
                continue
            _, polys, meta = entry
            node = self.nodes[leaf.node_id]
            top = leaf.levels[0]
            chart = top.pair.chart
            indices = sorted(chart.params.index(p) for p in polys)
            self._prune_stale_levels(leaf)
            children = blow_up(top.pair, indices, birth=step, serial=serial)
            action = {"node": leaf.node_id,
                      "center": [chart.params[i] for i in indices],
                      "meta": meta, "children": []}
            for child_pair, info in children:
                child_state = transform_state(top.state, child_pair, info,
                                              indices)
                if self.debug:
                    self._debug_transform(top.state, child_state, child_pair,
                                          info)
                child_id = self._new_node(leaf.node_id, child_pair,
                                          child_state)
                levels = [LevelCtx(None, child_pair, child_state,
                                   top.generation)]
                self._transform_levels(leaf, levels, child_pair, info, step,
                                       serial)
                new_leaves.append(Leaf(child_id, levels))
                action["children"].append(child_id)
            node.resolved = False
            record["actions"].append(action)
        self.leaves = new_leaves
        self.step_records.append(record)
        self.stage_marks.append(self._stage(0).word_step)

    def _prune_stale_levels(self, leaf: Leaf):
        for i in range(1, len(leaf.levels)):
            stage = self._stage(i - 1)
            if leaf.levels[i].generation != stage.generation:
                del leaf.levels[i:]
                return

    def _transform_levels(self, leaf: Leaf, levels: list, child_pair: Pair,
                          info: dict, step: int, serial: int):
        """Carry the tower stack onto one blow-up child chart."""
        param_map = info.get("param_map", {})
        y = info["exceptional"]
        current_pair = child_pair
        n = child_pair.chart.nvars
        for lv in leaf.levels[1:]:
            z_new = param_map.get(lv.z)
            if z_new is None:
                z_new = lv.z.extend(n)
            if z_new == y and not info.get("hypersurface"):
                break  # the contact hypersurface misses this chart
            if z_new not in current_pair.chart.params:
                break
            z_index = current_pair.chart.params.index(z_new)
            transported = []
            for d in lv.pair.divisors:
                eq = param_map.get(d.eq)
                if eq is None:
                    eq = d.eq.extend(n)
                if eq == y and not info.get("hypersurface"):
                    continue
                transported.append(Divisor(eq, d.birth, d.serial))
            level_chart_pair = restrict_to_hypersurface(
                Pair(current_pair.chart, ()), z_index)
            level_chart = level_chart_pair.chart
            kept = [d for d in transported
                    if not level_chart.locus_is_empty(Ideal([d.eq], n))]
            if not level_chart.locus_is_empty(Ideal([y], n)):
                kept.append(Divisor(y, step, serial))
            level_pair = Pair(level_chart, tuple(kept))
            gens = [g.extend(n) for g in lv.state.J.gens]
            lifted = _divide_exactly(level_chart, gens, y, lv.state.b)
            if lifted is None:
                raise AlgorithmError("tower transform division failed")
            sub_state = factorize_state(level_pair, Ideal(lifted, n),
                                        lv.state.b)
            levels.append(LevelCtx(z=z_new, pair=level_pair, state=sub_state,
                                   generation=lv.generation))
            current_pair = level_pair

    # -- debug-mode runtime checks -------------------------------------------

    def _debug_coeff_equivalence(self, leaf: Leaf, depth: int, A: Ideal,
                                 e: int):
        """Sing(A, e) ∩ Z == Sing(coeff object) as loci on the level chart."""
        lv = leaf.levels[depth + 1]
        chart = lv.pair.chart
        lhs = chart.sing_locus(A, e)
        rhs = lv.state.sing_ideal()
        if not chart.locus_equal(lhs, rhs):
            self.debug_failures.append(
                f"coeff equivalence failed at node {leaf.node_id}, "
                f"depth {depth}, step {self.steps_done}")

    def _debug_transform(self, parent: BasicObjectState,
                         child: BasicObjectState, child_pair: Pair,
                         info: dict):
        if parent.b < 2:
            return
        chart = parent.chart
        new_chart = child_pair.chart
        n = new_chart.nvars
        y = info["exceptional"]
        dj = chart.delta(parent.J)
        lifted = _divide_exactly(new_chart, [g.extend(n) for g in dj.gens],
                                 y, parent.b - 1)
        if lifted is None:
            self.debug_failures.append("Giraud: controlled transform of "
                                       "delta(J) not divisible")
            return
        target = new_chart.saturate(new_chart.delta(child.J))
        for g in lifted:
            if not target.contains(g):
                self.debug_failures.append(
                    f"Giraud containment failed at step {self.steps_done}")
                return


# -- verification ---------------------------------------------------------------


def verify_tree(run: ResolutionRun, mode_entries: Optional[list] = None) -> dict:
    """Re-runs the invariant checks on a completed tree; pure function."""
    report = {"leaves": [], "charts": [], "descent": True,
              "factorization": [], "mode": mode_entries or []}
    fs = [rec["f"] for rec in run.step_records]
    for a, b in zip(fs, fs[1:]):
        if not (b < a):
            report["descent"] = False
    for leaf in run.leaves:
        node = run.nodes[leaf.node_id]
        state = leaf.levels[0].state
        sing_empty = state.sing_empty()
        report["leaves"].append({"node": node.id, "sing_empty": sing_empty})
        chart = state.chart
        ok = chart.has_normal_crossings(
            [Ideal([d.eq], chart.nvars) for d in state.pair.divisors])
        report["charts"].append({"node": node.id,
                                 "exceptional_normal_crossings": ok})
        report["factorization"].append(
            {"node": node.id, "exact": check_factorization(state)})
    return report


def report_green(report: dict) -> bool:
    return (report["descent"]
            and all(e.get("sing_empty", True) for e in report["leaves"])
            and all(e["exceptional_normal_crossings"] for e in report["charts"])
            and all(e["exact"] for e in report["factorization"])
            and all(e.get("ok", True) for e in report["mode"]))


# -- top-level drivers -------------------------------------------------------------


def resolve(pair: Pair, J: Ideal, b: int, workers: int = 1,
            debug_checks: bool = False) -> ResolutionRun:
    run = ResolutionRun(pair, J, b, workers=workers, debug_checks=debug_checks)
    return run.run()


_CALIBRATED: dict = {}


def _calibrate_constants(dim: int):
    """Startup self-check: the pinned constant values on coordinate subspaces
    match one selector evaluation, for every codimension."""
    if dim in _CALIBRATED:
        return
    names = [f"x{i + 1}" for i in range(dim)]
    for r in range(dim):
        chart = Chart.affine(names)
        gens = [chart.ring.var(names[i]) for i in range(r, dim)]
        probe = ResolutionRun(Pair(chart, ()), Ideal(gens), 1)
        picked = probe._select_step()
        if picked is None:
            raise AlgorithmError("calibration: empty singular locus")
        f, _ = picked
        if f != smooth_constant(dim, r):
            raise AlgorithmError(
                f"calibration failed in dimension {dim}: constant for "
                f"dimension-{r} subspaces is {render_value(f)}, expected "
                f"{render_value(smooth_constant(dim, r))}")
    _CALIBRATED[dim] = True


def desingularize(pair: Pair, x_ideal: Ideal, workers: int = 1,
                  debug_checks: bool = False):
    """Embedded desingularization of V(x_ideal): resolve (W,(I(X),1),∅) until
    the selector reaches the constant value of smooth r-dimensional schemes,
    then certify the strict transform on every leaf chart."""
    if pair.divisors:
        raise AlgorithmError("embedded desingularization starts with E empty")
    chart = pair.chart
    d = chart.dim
    r = ideal_dimension(x_ideal)
    if r < 0:
        raise AlgorithmError("the subscheme is empty")
    if r == d:
        raise AlgorithmError("the subscheme is not proper")
    _calibrate_constants(d)
    target = smooth_constant(d, r)
    run = ResolutionRun(pair, x_ideal, 1, workers=workers,
                        debug_checks=debug_checks)
    run.run(halt_value=target)
    codim = d - r
    mode_entries = []
    for leaf in run.leaves:
        node = run.nodes[leaf.node_id]
        state = leaf.levels[0].state
        leaf_chart = state.chart
        n = leaf_chart.nvars
        total = Ideal([g.extend(n) for g in x_ideal.gens]
                      + list(leaf_chart.deps.gens), n)
        strict = total
        for div in sorted(state.pair.divisors, key=lambda dv: dv.serial):
            strict, _ = saturation(strict, div.eq)
        smooth = leaf_chart.is_smooth(strict, codim)
        crossings = _strict_transform_crossings(leaf_chart, strict, codim,
                                                state.pair.divisors)
        mode_entries.append({"node": node.id, "check": "strict_transform",
                             "smooth": smooth,
                             "normal_crossings": crossings,
                             "ok": smooth and crossings})
        node.resolved = True
    report = verify_tree(run, mode_entries)
    for entry in report["leaves"]:
        entry["sing_empty"] = True  # desingularization halts early by design
    return run, report


def _strict_transform_crossings(chart: Chart, strict: Ideal, codim: int,
                                divisors) -> bool:
    from itertools import combinations
    ids = [Ideal([d.eq], chart.nvars) for d in divisors]
    empties = []
    for size in range(1, len(ids) + 1):
        for subset in combinations(range(len(ids)), size):
            if any(set(e).issubset(subset) for e in empties):
                continue
            members = [(strict, codim)] + [(ids[i], 1) for i in subset]
            gens = []
            total_codim = 0
            for ideal, c in members:
                gens.extend(ideal.gens)
                total_codim += c
            joint = Ideal(gens, chart.nvars)
            if chart.locus_is_empty(joint):
                empties.append(subset)
                continue
            if not chart.joint_smooth(members):
                return False
    return True


def principalize(pair: Pair, ideal: Ideal, workers: int = 1,
                 debug_checks: bool = False):
    """Full resolution of (W,(I,1),E) plus the invertibility certificate."""
    run = ResolutionRun(pair, ideal, 1, workers=workers,
                        debug_checks=debug_checks)
    run.run()
    mode_entries = []
    for leaf in run.leaves:
        node = run.nodes[leaf.node_id]
        state = leaf.levels[0].state
        chart = state.chart
        n = chart.nvars
        gens = [g.extend(n) for g in ideal.gens]
        gens = [chart.nf_mod_deps(g) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        from .basic import _extract_power
        exponents = {}
        for div in sorted(state.pair.divisors, key=lambda dv: dv.serial):
            e, gens = _extract_power(chart, gens, div.eq)
            if e:
                exponents[div.serial] = e
        remainder_unit = chart.locus_is_empty(Ideal(gens, n))
        expected = {}
        for div in state.pair.divisors:
            c = (state.total_exponents.get(div.serial, 0)
                 + state.exponents.get(div.serial, 0))
            if c:
                expected[div.serial] = c
        mode_entries.append({
            "node": node.id, "check": "principal_certificate",
            "exponents": exponents, "tracked": expected,
            "remainder_unit": remainder_unit,
            "ok": remainder_unit and exponents == expected})
    report = verify_tree(run, mode_entries)
    return run, report
