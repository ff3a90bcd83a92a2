"""The staged Swiss cheese construction.

Stage m deletes, inside each of the first few discs D_{m,k} of S_m, a disc
system with radius budget eps_m / 2^k.  Alongside the geometry the schedule
keeps the derivative bound table

    A_{m,n} = 2 n! T_m(n),   T_m(n) = (1 + eps_1)/delta_1^(n+1) + sum_{2<=j<=m} eps_j/delta_j^(n+1),

frozen on each completed block (N_{j-1}, N_j], where N_j is the first index at
which the block sum of A_{j,n}^(-1/n) is certified to reach 1.  eps_m for
m >= 2 is the largest dyadic 2^-p (p >= m + 1) keeping n! T_m(n) strictly
below the frozen A_{m-1,n} for n <= N_{m-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable

from .brackets import DEFAULT_PRECISION, MAX_PRECISION, PrecisionExhausted, inverse_root_bracket
from .geometry import (
    UNIT_DISC,
    QDisc,
    QPoint,
    Relation,
    closed_inside_open,
    delta,
    disc_avoids_capsule,
    disc_relation,
    dist_sq_to_segment,
    in_open_unit_disc,
    nth_rational_disc,
)
from .mckissick import build_disc_system
from .report import VerificationReport

EPSILON_1 = Fraction(1, 4)
DEFAULT_SYSTEMS = 8
DEFAULT_SUBDISCS = 16
MAX_BLOCK_LENGTH = 100_000
TOTAL_BUDGET = Fraction(1, 2)


class ScheduleError(RuntimeError):
    pass


@dataclass(frozen=True)
class StageParams:
    m: int
    delta: Fraction
    epsilon: Fraction
    N: int
    trunc_discs: int
    trunc_subdiscs: int


@dataclass(frozen=True)
class Deletion:
    stage: int
    parent_index: int
    disc: QDisc


@dataclass
class BoundTable:
    entries: dict[int, Fraction] = field(default_factory=dict)
    block_boundaries: list[int] = field(default_factory=list)

    def blocks(self) -> list[tuple[int, int]]:
        """Half-open index blocks (N_{j-1}, N_j] as (start, end) pairs."""
        starts = [0] + self.block_boundaries[:-1]
        return list(zip(starts, self.block_boundaries))


@dataclass(frozen=True)
class BlockCertificate:
    """Bracketed evidence that N = ``end`` is the first index closing a block.

    ``lower_sum`` bounds sum_{start<n<=end} A_n^(-1/n) from below and is >= 1;
    ``upper_before`` bounds the sum up to end - 1 from above and is < 1.
    """

    start: int
    end: int
    lower_sum: Fraction
    upper_before: Fraction
    precision: int


@dataclass
class ScheduleState:
    stage_records: list[StageParams] = field(default_factory=list)
    bound_table: BoundTable = field(default_factory=BoundTable)
    deletions: list[Deletion] = field(default_factory=list)
    block_certificates: list[BlockCertificate] = field(default_factory=list)

    @property
    def completed(self) -> int:
        return len(self.stage_records)


@dataclass
class CheeseDescription:
    outer: QDisc = UNIT_DISC
    deletions: list[Deletion] = field(default_factory=list)
    stage_records: list[StageParams] = field(default_factory=list)
    bound_table: BoundTable = field(default_factory=BoundTable)
    provenance: dict = field(default_factory=dict)

    def contains(self, z: QPoint) -> bool:
        """Membership in the materialised set: outer disc minus open deletions."""
        return self.outer.contains(z) and not any(d.disc.contains_open(z) for d in self.deletions)

    def state(self) -> ScheduleState:
        return ScheduleState(list(self.stage_records), self.bound_table, list(self.deletions))

    def radius_sum(self) -> Fraction:
        return sum((d.disc.radius for d in self.deletions), Fraction(0))


# -- closed-form pieces -------------------------------------------------------


def _epsilons(state) -> list[Fraction]:
    return [s.epsilon for s in state.stage_records]


def _boundaries(state) -> list[int]:
    return [s.N for s in state.stage_records]


def _T(eps: list[Fraction], n: int) -> Fraction:
    total = (1 + eps[0]) * 3 ** (n + 1)
    for j, e in enumerate(eps[1:], start=2):
        total += e * (j + 2) ** (n + 1)
    return total


def _A(eps: list[Fraction], bounds: list[int], m: int, n: int) -> Fraction:
    # frozen on earlier blocks: n in (N_{j-1}, N_j] takes the stage-j formula
    for j, N in enumerate(bounds[: m - 1], start=1):
        if n <= N:
            return 2 * factorial(n) * _T(eps[:j], n)
    return 2 * factorial(n) * _T(eps[:m], n)


def accumulated_term(state, n: int, m: int | None = None) -> Fraction:
    """T_m(n), the running Cauchy sum without n! (m defaults to the stages done)."""
    m = state.completed if m is None else m
    if m < 1 or m > len(state.stage_records):
        raise ValueError(f"stage {m} not complete")
    return _T(_epsilons(state)[:m], n)


def bound_A(state, m: int, n: int) -> Fraction:
    if m < 1 or m > len(state.stage_records):
        raise ValueError(f"stage {m} not complete")
    if n < 1:
        raise ValueError("bound index n must be >= 1")
    return _A(_epsilons(state), _boundaries(state), m, n)


def epsilon_slack(state, m: int) -> Fraction:
    """Supremum of admissible eps_m: min over n <= N_{m-1} of the remaining room."""
    eps = _epsilons(state)[: m - 1]
    bounds = _boundaries(state)[: m - 1]
    room = None
    for n in range(1, bounds[-1] + 1):
        slack = (_A(eps, bounds, m - 1, n) / factorial(n) - _T(eps, n)) / Fraction(m + 2) ** (n + 1)
        room = slack if room is None else min(room, slack)
    return room


def choose_epsilon(state, m: int) -> Fraction:
    """Largest 2^-p, p >= m + 1, satisfying every strict constraint of stage m."""
    if m < 2:
        raise ValueError("eps_1 is fixed; choose_epsilon starts at stage 2")
    if len(state.stage_records) < m - 1:
        raise ValueError(f"stage {m - 1} not complete")
    room = epsilon_slack(state, m)
    if room <= 0:
        raise ScheduleError(f"no admissible epsilon at stage {m}: slack {room}")
    p = m + 1
    while Fraction(1, 2**p) >= room:
        p += 1
    return Fraction(1, 2**p)


def certify_block(a_of: Callable[[int], Fraction], start: int, precision: int = DEFAULT_PRECISION,
                  max_precision: int = MAX_PRECISION) -> BlockCertificate:
    """Smallest N > start with sum_{start<n<=N} a_of(n)^(-1/n) >= 1, certified by brackets."""
    t = precision
    while t <= max_precision:
        lower = upper = upper_before = Fraction(0)
        n = start
        while lower < 1:
            n += 1
            if n - start > MAX_BLOCK_LENGTH:
                raise ScheduleError(f"block starting after {start} did not close within {MAX_BLOCK_LENGTH} terms")
            lo, hi = inverse_root_bracket(a_of(n), n, t)
            upper_before = upper
            lower += lo
            upper += hi
        if upper_before < 1:
            return BlockCertificate(start, n, lower, upper_before, t)
        t *= 2
    raise PrecisionExhausted(f"block after {start} undecided at precision {max_precision}")


def choose_N(state, m: int, epsilon: Fraction | None = None, precision: int = DEFAULT_PRECISION) -> BlockCertificate:
    """Block boundary N_m.  ``epsilon`` supplies eps_m when stage m is not recorded yet."""
    eps = _epsilons(state)[: m - 1]
    bounds = _boundaries(state)[: m - 1]
    if len(eps) < m - 1:
        raise ValueError(f"stage {m - 1} not complete")
    if epsilon is None:
        if len(state.stage_records) < m:
            raise ValueError(f"eps_{m} unknown")
        epsilon = state.stage_records[m - 1].epsilon
    eps = eps + [epsilon]
    start = bounds[-1] if bounds else 0
    return certify_block(lambda n: 2 * factorial(n) * _T(eps, n), start, precision)


# -- construction -------------------------------------------------------------


def run_stage(state: ScheduleState, trunc_discs: int = DEFAULT_SYSTEMS, trunc_subdiscs: int = DEFAULT_SUBDISCS,
              precision: int = DEFAULT_PRECISION) -> ScheduleState:
    """Run the next stage and return the extended state (``state`` is left as is)."""
    if trunc_discs < 1 or trunc_subdiscs < 1:
        raise ValueError("truncation limits must be >= 1")
    m = state.completed + 1
    eps = EPSILON_1 if m == 1 else choose_epsilon(state, m)
    deletions = list(state.deletions)
    for k in range(1, trunc_discs + 1):
        parent = nth_rational_disc(m, k)
        system = build_disc_system(parent, eps / 2**k, trunc_subdiscs)
        deletions.extend(Deletion(m, k, d) for d in system.discs)
    cert = choose_N(state, m, eps, precision)
    record = StageParams(m, delta(m), eps, cert.end, trunc_discs, trunc_subdiscs)
    records = state.stage_records + [record]
    entries = dict(state.bound_table.entries)
    eps_all = _epsilons(state) + [eps]
    bounds = _boundaries(state)
    for n in range(cert.start + 1, cert.end + 1):
        entries[n] = _A(eps_all, bounds + [cert.end], m, n)
    table = BoundTable(entries, state.bound_table.block_boundaries + [cert.end])
    return ScheduleState(records, table, deletions, state.block_certificates + [cert])


def build_cheese(stages: int = 2, trunc_discs: int = DEFAULT_SYSTEMS, trunc_subdiscs: int = DEFAULT_SUBDISCS,
                 precision: int = DEFAULT_PRECISION, provenance: dict | None = None) -> CheeseDescription:
    """Run stages 1..``stages``; ``stages=0`` gives the undeleted closed disc."""
    if stages < 0:
        raise ValueError("stages must be >= 0")
    state = ScheduleState()
    for _ in range(stages):
        state = run_stage(state, trunc_discs, trunc_subdiscs, precision)
    prov = {
        "stages": stages,
        "trunc_discs": trunc_discs,
        "trunc_subdiscs": trunc_subdiscs,
        "precision": precision,
    }
    if provenance:
        prov.update(provenance)
    return CheeseDescription(UNIT_DISC, state.deletions, state.stage_records, state.bound_table, prov)


# -- post-hoc verification ----------------------------------------------------


def _dyadic_exponent(q: Fraction) -> int | None:
    if q.numerator != 1 or q.denominator & (q.denominator - 1):
        return None
    return q.denominator.bit_length() - 1


def _verify_stage_params(c: CheeseDescription, report: VerificationReport) -> bool:
    recs = c.stage_records
    ok = report.add("stage numbering", [s.m for s in recs] == list(range(1, len(recs) + 1)),
                    f"stages {[s.m for s in recs]}")
    if not ok:
        return False
    prev_N = 0
    for s in recs:
        report.add(f"stage {s.m} delta", s.delta == delta(s.m), f"{s.delta} vs 1/{s.m + 2}")
        report.add(f"stage {s.m} limits", s.trunc_discs >= 1 and s.trunc_subdiscs >= 1,
                   f"{s.trunc_discs} systems x {s.trunc_subdiscs} discs")
        ok &= report.add(f"stage {s.m} N increasing", s.N > prev_N, f"N_{s.m - 1}={prev_N} < N_{s.m}={s.N}")
        prev_N = s.N
        if s.epsilon <= 0:
            report.add(f"stage {s.m} epsilon", False, f"nonpositive {s.epsilon}")
            ok = False
    return ok


def _verify_epsilons(c: CheeseDescription, report: VerificationReport) -> None:
    recs = c.stage_records
    eps = [s.epsilon for s in recs]
    bounds = [s.N for s in recs]
    if recs:
        report.add("stage 1 epsilon", eps[0] == EPSILON_1, f"eps_1 = {eps[0]}")
    for s in recs[1:]:
        m = s.m
        p = _dyadic_exponent(s.epsilon)
        report.add(f"stage {m} epsilon dyadic cap", p is not None and p >= m + 1, f"eps_{m} = {s.epsilon}")
        bad = [
            n for n in range(1, bounds[m - 2] + 1)
            if not factorial(n) * _T(eps[:m], n) < _A(eps, bounds, m - 1, n)
        ]
        report.add(f"stage {m} epsilon constraints", not bad,
                   f"violated at n={bad[:5]}" if bad else f"strict for 1 <= n <= {bounds[m - 2]}")
        doubled = 2 * s.epsilon
        cap_ok = _dyadic_exponent(doubled) is not None and _dyadic_exponent(doubled) >= m + 1
        viol = any(
            not factorial(n) * (_T(eps[: m - 1], n) + doubled * Fraction(m + 2) ** (n + 1)) < _A(eps, bounds, m - 1, n)
            for n in range(1, bounds[m - 2] + 1)
        )
        report.add(f"stage {m} epsilon maximal", viol or not cap_ok,
                   "doubling breaks a constraint" if viol else ("doubling breaks the dyadic cap" if not cap_ok
                                                               else "doubling still admissible"))


def _verify_blocks(c: CheeseDescription, report: VerificationReport, precision: int) -> None:
    eps = [s.epsilon for s in c.stage_records]
    bounds = [s.N for s in c.stage_records]
    for s in c.stage_records:
        m = s.m
        start = bounds[m - 2] if m > 1 else 0
        try:
            cert = certify_block(lambda n: 2 * factorial(n) * _T(eps[:m], n), start, precision)
        except (PrecisionExhausted, ScheduleError) as exc:
            report.add(f"stage {m} block sum", False, str(exc))
            continue
        report.add(f"stage {m} block sum", cert.end == s.N,
                   f"lower sum {float(cert.lower_sum):.6f} >= 1 at N={cert.end}, "
                   f"upper sum {float(cert.upper_before):.6f} < 1 at N-1 (recorded N={s.N})")


def _verify_table(c: CheeseDescription, report: VerificationReport) -> None:
    recs = c.stage_records
    table = c.bound_table
    eps = [s.epsilon for s in recs]
    bounds = [s.N for s in recs]
    report.add("bound table boundaries", table.block_boundaries == bounds,
               f"{table.block_boundaries} vs {bounds}")
    top = bounds[-1] if bounds else 0
    report.add("bound table keys", sorted(table.entries) == list(range(1, top + 1)), f"1..{top}")
    wrong = [k for k, v in sorted(table.entries.items()) if k < 1 or k > top or v != _A(eps, bounds, len(recs), k)]
    report.add("bound table values", not wrong, f"mismatch at {wrong[:5]}" if wrong else "all recomputed exactly")
    unfrozen = [
        (j, k)
        for j in range(1, len(recs) + 1)
        for k in range(1, bounds[j - 1] + 1)
        if _A(eps, bounds, j, k) != _A(eps, bounds, len(recs), k)
    ]
    report.add("bound table frozen", not unfrozen, f"changed after freezing: {unfrozen[:5]}" if unfrozen else
               "A_{j,k} = A_{M,k} for k <= N_j")


def _verify_geometry(c: CheeseDescription, report: VerificationReport) -> None:
    by_stage = {s.m: s for s in c.stage_records}
    orphans = [d for d in c.deletions if d.stage not in by_stage]
    report.add("deletion stages", not orphans, f"{len(orphans)} deletions without a stage record")
    report.add("deletions open", all(d.disc.is_open for d in c.deletions), "all deleted discs are open")
    total = c.radius_sum()
    report.add("total radius budget", total < TOTAL_BUDGET, f"sum {total} ~ {float(total):.6g} < 1/2")
    on_I = [i for i, d in enumerate(c.deletions)
            if dist_sq_to_segment(d.disc.center) < d.disc.radius * d.disc.radius]
    report.add("I inside X", not on_I, f"deletions meeting I: {on_I[:5]}" if on_I else "no deletion meets I")
    for s in c.stage_records:
        m = s.m
        dels = [d for d in c.deletions if d.stage == m]
        bad = [i for i, d in enumerate(dels) if not disc_avoids_capsule(d.disc, m)]
        report.add(f"stage {m} capsule avoidance", not bad,
                   f"{len(dels) - len(bad)}/{len(dels)} deletions avoid K_{m}")
        stage_sum = sum((d.disc.radius for d in dels), Fraction(0))
        report.add(f"stage {m} budget", stage_sum < s.epsilon, f"sum {float(stage_sum):.6g} < eps_{m} = {s.epsilon}")
        systems: dict[int, list[QDisc]] = {}
        for d in dels:
            systems.setdefault(d.parent_index, []).append(d.disc)
        bad_index = [k for k in systems if not 1 <= k <= s.trunc_discs]
        report.add(f"stage {m} parent indices", not bad_index, f"out of range: {bad_index}" if bad_index
                   else f"{len(systems)} systems")
        budget_fail, contain_fail, overlap_fail, size_fail = [], [], [], []
        for k, discs in sorted(systems.items()):
            if k < 1:
                continue
            if len(discs) > s.trunc_subdiscs:
                size_fail.append(k)
            parent = nth_rational_disc(m, k)
            if not (disc_avoids_capsule(parent, m) and in_open_unit_disc(parent)):
                contain_fail.append(k)
            if sum((d.radius for d in discs), Fraction(0)) >= s.epsilon / 2**k:
                budget_fail.append(k)
            if not all(closed_inside_open(d, parent) for d in discs):
                contain_fail.append(k)
            if any(disc_relation(a, b) != Relation.DISJOINT for a, b in combinations(discs, 2)):
                overlap_fail.append(k)
        report.add(f"stage {m} system budgets", not budget_fail,
                   f"systems over eps_{m}/2^k: {budget_fail}" if budget_fail else f"each system < eps_{m}/2^k")
        report.add(f"stage {m} containment", not contain_fail,
                   f"systems escaping D_{m},k: {sorted(set(contain_fail))}" if contain_fail else "inside parents")
        report.add(f"stage {m} disjointness", not overlap_fail,
                   f"overlaps in systems {overlap_fail}" if overlap_fail else "pairwise disjoint")
        report.add(f"stage {m} system sizes", not size_fail, f"oversized: {size_fail}" if size_fail else
                   f"<= {s.trunc_subdiscs} discs each")


def verify_schedule(c: CheeseDescription, precision: int = DEFAULT_PRECISION) -> VerificationReport:
    """Re-check every invariant of a cheese description with exact arithmetic."""
    report = VerificationReport("schedule")
    report.add("outer disc", c.outer == UNIT_DISC, str(c.outer))
    if _verify_stage_params(c, report):
        _verify_epsilons(c, report)
        _verify_blocks(c, report, precision)
        _verify_table(c, report)
    _verify_geometry(c, report)
    return report


def replace_deletion(c: CheeseDescription, index: int, disc: QDisc) -> CheeseDescription:
    """Copy of ``c`` with one deleted disc swapped (used for mutation checks)."""
    dels = list(c.deletions)
    dels[index] = replace(dels[index], disc=disc)
    return replace(c, deletions=dels)
