"""One-call consistency sweep over a variety.

Each check has a name, a pass/fail flag and a short exact detail string.
Known discrepancies in the stated formulas show up as failed checks; the
delta mismatch is reported as a warning since the tabulated value is the
one used downstream.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import bg3, bounds, clifford, stab, walls
from .chern import get_geometry
from .config import GridConfig, grid_config
from .exactnum import Scalar


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerifyReport:
    variety: str
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "variety": self.variety,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "warnings": self.warnings,
        }


def _interior(lo: Scalar, hi: Scalar, n: int) -> list[Scalar]:
    return bounds.interior_points(lo, hi, n)


def _case_points(case, n: int) -> list[Scalar]:
    pts = _interior(case.lo, case.hi, n)
    pts += [x for x, closed in ((case.lo, case.lo_closed), (case.hi, case.hi_closed)) if closed]
    return pts


def check_bounds(report: VerifyReport, grid: GridConfig):
    xi_c = bounds.make_xi()
    ok = xi_c.is_continuous() and xi_c(0) == 0 and xi_c(1) == Fraction(1, 2)
    report.checks.append(Check("xi_identities", ok, "continuous, xi(0) = 0, xi(1) = 1/2"))
    bad = [x for x in bounds.rational_grid(-4, 3, Fraction(1, 8))
           if bounds.upsilon_value(x + 1) != bounds.upsilon_value(x) + x + Fraction(1, 2)
           or bounds.upsilon_value(x) != bounds.upsilon_value(-x)]
    report.checks.append(Check("upsilon_periodicity_and_parity", not bad, f"violations: {bad[:3]}"))
    ups = bounds.make_upsilon(-3, 3)
    tilde = bounds.make_upsilon_tilde(-3, 3)
    cmp = bounds.curve_leq(ups, tilde)
    report.checks.append(Check("upsilon_below_tilde", cmp.holds, cmp.detail))
    star = bounds.is_star_shaped(tilde, bounds.rational_grid(-3, 3, Fraction(1, grid.star)))
    report.checks.append(Check("upsilon_tilde_star_shaped", star.holds, star.detail))


def check_walls(report: VerifyReport, geom, grid: GridConfig):
    geom = get_geometry(geom)
    off, thr, upper, lower = walls._closed_form_tables(geom)
    bad = []
    for table, attr in ((upper, "bn_upper"), (lower, "bn_lower")):
        for lo, hi, fn in table:
            for t in _interior(lo[0], hi[0], max(4, grid.wall // 5)):
                w = walls.first_wall(t, geom)
                if getattr(w, attr) != fn(t):
                    bad.append((attr, str(t)))
    report.checks.append(Check("first_wall_reproduces_bn_bounds", not bad, f"mismatches: {bad[:3]}"))


def check_clifford(report: VerifyReport, geom, grid: GridConfig):
    geom = get_geometry(geom)
    n = max(3, grid.samples // 20)
    for case in clifford.clifford_cases(geom):
        bad = []
        for t in _case_points(case, n):
            got = clifford.clifford_bound(t, geom).bound
            stated = max(Scalar(a) * t + Scalar(b) for a, b in case.printed)
            on_shared_end = len(clifford.cases_containing(t, geom)) > 1
            if got != stated and not (on_shared_end and got < stated):
                bad.append(str(t))
        report.checks.append(Check(f"clifford_case_{case.index}", not bad, f"mismatch at t = {bad[:3]}"))


def check_restriction(report: VerifyReport, geom):
    geom = get_geometry(geom)
    table = clifford.restriction_table(geom)
    for k, ln in enumerate(table, 1):
        bad = []
        for mu in _interior(ln.lo, ln.hi, 6) + [x for x, c in ((ln.lo, ln.lo_closed), (ln.hi, ln.hi_closed)) if c]:
            got = clifford.restriction_bound(mu, geom)
            shared = sum(1 for other in table if other.contains(mu)) > 1
            if got != ln(mu) and not (shared and got < ln(mu)):
                bad.append(str(mu))
        report.checks.append(Check(f"restriction_line_{k}", not bad, f"mismatch at mu = {bad[:3]}"))
    curve = clifford.restriction_curve(geom).restrict(0, Fraction(1, 2))
    xi_c = bounds.make_xi().restrict(0, Fraction(1, 2))
    weak = bounds.curve_leq(curve, xi_c)
    report.checks.append(Check("restriction_below_xi", weak.holds, weak.detail))
    strict = bounds.curve_lt(curve, xi_c)
    report.checks.append(Check("restriction_strictly_below_xi", strict.holds, strict.detail))


def check_constants(report: VerifyReport, geom):
    geom = get_geometry(geom)
    g = bg3.gamma_from_delta(geom)
    report.checks.append(Check("gamma_from_delta", g == geom.gamma, f"{g} vs registry {geom.gamma}"))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = bg3.delta_report(geom)
    report.checks.append(Check("delta_stated", rep.value == Scalar(geom.delta_stated), str(rep.value)))
    report.warnings.extend(str(w.message) for w in caught)


def check_bg3(report: VerifyReport, geom, seed: int = 0):
    geom = get_geometry(geom)
    rng = random.Random(seed)
    bad = []
    for _ in range(20):
        beta = Fraction(rng.randint(-40, 40), 8)
        fl = Fraction(beta.numerator // beta.denominator)
        base = beta * beta / 2 + (beta - fl) * (fl + 1 - beta) / 2
        alpha = base + Fraction(rng.randint(1, 40), 16)
        if not bg3.q_kernel_seminegativity(alpha, beta, geom=geom):
            bad.append((str(alpha), str(beta)))
    report.checks.append(Check("kernel_seminegativity", not bad, f"failures: {bad[:3]}"))
    tuples = [t.weights for t in bg3.enumerate_weight_tuples(30)]
    report.checks.append(Check("weight_tuples", tuples == [(1, 1, 1, 1, 1), (1, 1, 1, 1, 2), (1, 1, 1, 1, 4)],
                               str(tuples)))


def check_stab(report: VerifyReport, geom, seed: int = 0):
    geom = get_geometry(geom)
    rng = random.Random(seed)
    bad = []
    for _ in range(20):
        alpha = Fraction(rng.randint(1, 24), 8)
        beta = Fraction(rng.randint(-16, 16), 8)
        b = Fraction(rng.randint(-16, 16), 8)
        a = alpha * alpha / 6 + abs(b) * alpha / 2 + geom.gamma + Fraction(rng.randint(1, 32), 8)
        p = stab.StabParams(alpha, beta, a, b, geom.gamma)
        if not stab.in_u_gamma(p):
            continue
        lo, hi = stab.support_interval(p)
        m = stab.kernel_matrix(p)
        c0, c1, c2 = m.det_coefficients()
        det = lambda K: c0 + c1 * K + c2 * K * K  # noqa: E731
        if not (lo < hi and m.is_negative_definite((lo + hi) / 2) and det(lo) == 0 and det(hi) == 0):
            bad.append(p.to_json())
    report.checks.append(Check("support_interval", not bad, f"failures: {bad[:2]}"))


def verify_all(geom="triple", grid: GridConfig | None = None) -> VerifyReport:
    geom = get_geometry(geom)
    grid = grid or grid_config()
    report = VerifyReport(geom.name)
    check_bounds(report, grid)
    check_walls(report, geom, grid)
    check_clifford(report, geom, grid)
    check_restriction(report, geom)
    check_constants(report, geom)
    check_bg3(report, geom)
    check_stab(report, geom)
    return report
