"""Cross-checks between the Conway function and grid homology.

Each check returns a :class:`CheckResult`.  A failing result carries both
sides of the violated identity as canonical polynomial text.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import corpus as _corpus
from .conway import conway_data, gamma
from .exceptions import GridLinkError, NotDivisible
from .floer.complex import DEFAULT_MAX_HOMOLOGY_N, tilde_differential
from .floer.euler import (
    base_sign,
    conway_numerator,
    euler_tilde,
    euler_via_det,
    euler_via_homology,
    nu_half_units,
    tilde_factor,
    tilde_poincare,
    winding_matrix,
)
from .floer.gradings import base_state, maslov, sign_maslov_constant
from .floer.homology import PoincarePoly, hat_from_tilde
from .grid import GridDiagram, component_image, random_move_sequence, upward_counts
from .laurent import LaurentPoly, RationalFn, determinant

DEFAULT_FUZZ_MAX_N = 8


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    lhs: str | None = None
    rhs: str | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 4)}
        if self.detail:
            out["detail"] = self.detail
        if not self.passed and self.lhs is not None:
            out["lhs"], out["rhs"] = self.lhs, self.rhs
        return out

    def line(self) -> str:
        text = f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"
        if self.detail:
            text += f": {self.detail}"
        if not self.passed and self.lhs is not None:
            text += f"\n    lhs = {self.lhs}\n    rhs = {self.rhs}"
        return text


@dataclass
class VerificationReport:
    grid: str
    checks: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, result: CheckResult | list[CheckResult]) -> None:
        if isinstance(result, list):
            self.checks.extend(result)
        else:
            self.checks.append(result)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "grid": self.grid,
            "passed": self.passed,
            "seconds": round(self.seconds, 4),
            "checks": [c.to_json() for c in self.checks],
        }

    def format(self) -> str:
        lines = [f"{self.grid}: {'ok' if self.passed else 'FAILED'} ({len(self.checks)} checks)"]
        lines += ["  " + c.line().replace("\n", "\n  ") for c in self.checks]
        return "\n".join(lines)


def _timed(fn: Callable[[], CheckResult | list[CheckResult]]):
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    for c in out if isinstance(out, list) else [out]:
        c.seconds = elapsed
    return out


def _compare(name: str, lhs, rhs, detail: str = "") -> CheckResult:
    ok = lhs == rhs
    return CheckResult(name, bool(ok), detail, str(lhs), str(rhs))


# -- single identities ----------------------------------------------------------


def check_theorem(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> CheckResult:
    """Homology, winding-determinant and Conway routes to the Euler characteristic agree."""
    sides: dict[str, RationalFn] = {}
    try:
        sides["homology"] = RationalFn(euler_via_homology(g, max_n, threads))
    except NotDivisible as exc:
        return CheckResult("theorem", False, f"homology route: {exc}")
    try:
        sides["det"] = RationalFn(euler_via_det(g))
    except NotDivisible as exc:
        return CheckResult("theorem", False, f"determinant route: {exc}")
    sides["gamma"] = conway_numerator(g)
    names = list(sides)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            if sides[a] != sides[b]:
                return CheckResult("theorem", False, f"{a} != {b}", str(sides[a]), str(sides[b]))
    return CheckResult("theorem", True, f"chi = {sides['gamma']}")


def check_tilde_euler(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> CheckResult:
    """q = -1 of the tilde homology, the state sum and the scaled determinant route agree."""
    from_homology = tilde_poincare(g, max_n, threads).euler()
    state_sum = euler_tilde(g, max_n=max(max_n, g.n))
    if from_homology != state_sum:
        return CheckResult("tilde_euler", False, "homology != state sum", str(from_homology), str(state_sum))
    scaled = tilde_factor(g) * euler_via_det(g)
    return _compare("tilde_euler", state_sum, scaled, "" if state_sum == scaled else "state sum != det route")


def eq31_sides(g: GridDiagram) -> tuple[LaurentPoly, RationalFn, tuple[int, ...]]:
    """Both sides of the determinant/Conway identity, and beta in half-units."""
    mu = g.mu
    data = conway_data(g)
    _, per = upward_counts(g)
    two_gamma = data.omega.shift([2 * k for k in data.kappa])
    if not two_gamma.is_monomial():
        raise ArithmeticError("omega * t^kappa is not a monomial")
    (e, _), = two_gamma.items()
    gamma_half = tuple(x // 2 for x in e)  # gamma = e/2 with e in half-units
    beta = tuple(gm + 2 * u for gm, u in zip(gamma_half, per))
    lhs = determinant(winding_matrix(g), nvars=mu) * base_sign(g)
    factor = tilde_factor(g, extra=0).shift(beta)
    rhs = RationalFn(factor) * data.gamma.substitute_sqrt()
    return lhs, rhs, beta


def check_eq31(g: GridDiagram) -> list[CheckResult]:
    lhs, rhs, beta = eq31_sides(g)
    nu = nu_half_units(g)
    total = tuple(b + v for b, v in zip(beta, nu))
    return [
        _compare("det_conway", RationalFn(lhs), rhs),
        CheckResult(
            "beta_plus_nu",
            all(v == 0 for v in total),
            f"beta + nu = ({', '.join(str(Fraction(v, 2)) for v in total)})",
        ),
    ]


def check_conway_symmetry(g: GridDiagram) -> CheckResult:
    gm = gamma(g)
    return _compare("conway_symmetry", gm.invert_vars(), gm * (-1) ** g.mu)


def check_euler_symmetry(g: GridDiagram) -> CheckResult:
    chi = euler_via_det(g)
    return _compare("euler_symmetry", chi.invert_vars(), chi)


def hat_dims(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> PoincarePoly:
    return hat_from_tilde(tilde_poincare(g, max_n, threads), g.component_map)


def check_hat_symmetry(
    g: GridDiagram, maslov_shift: int = 1, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1
) -> CheckResult:
    """``dim HL_d(s) == dim HL_{d - c * sum(s)}(-s)`` with ``c = maslov_shift``."""
    dims = hat_dims(g, max_n, threads).dims()
    for (d, s), c in dims.items():
        target = Fraction(d) - maslov_shift * Fraction(sum(s), 2)
        partner = 0
        if target.denominator == 1:
            partner = dims.get((int(target), tuple(-x for x in s)), 0)
        if partner != c:
            mirror = f"({target}, {-Fraction(sum(s), 2)})"
            return CheckResult(
                f"hat_symmetry[c={maslov_shift}]",
                False,
                f"dim at (d={d}, sum s={Fraction(sum(s), 2)}) is {c}, at {mirror} it is {partner}",
                str(c),
                str(partner),
            )
    return CheckResult(f"hat_symmetry[c={maslov_shift}]", True, f"{len(dims)} bigradings")


def check_deconvolution(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> CheckResult:
    try:
        hat = hat_dims(g, max_n, threads)
    except NotDivisible as exc:
        return CheckResult("deconvolution", False, str(exc))
    return CheckResult("deconvolution", True, f"total dim {hat.total_dim}")


def check_complex(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N) -> list[CheckResult]:
    cx = tilde_differential(g, max_n=max_n)
    dm, da = cx.grading_changes()
    bad_m = int((dm != 1).sum())
    bad_a = int((da != 0).any(axis=1).sum()) if len(da) else 0
    return [
        CheckResult("d_squared", cx.d_squared_is_zero(), f"{len(cx.src)} arrows"),
        CheckResult("arrow_gradings", bad_m == 0 and bad_a == 0,
                    f"{bad_m} arrows with dM != -1, {bad_a} with dA != 0"),
    ]


def check_sign_lemma(g: GridDiagram) -> CheckResult:
    try:
        value = sign_maslov_constant(g)
    except GridLinkError as exc:
        return CheckResult("sign_lemma", False, str(exc))
    return CheckResult("sign_lemma", True, f"constant {value:+d}")


def check_base_maslov(g: GridDiagram) -> CheckResult:
    m = maslov(g, base_state(g))
    return _compare("base_maslov", m, 1 - g.n)


def check_grid(
    g: GridDiagram, name: str = "grid", max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1
) -> VerificationReport:
    """Every per-grid identity; homology-based checks need ``g.n <= max_n``."""
    start = time.perf_counter()
    report = VerificationReport(name)
    report.add(_timed(lambda: check_theorem(g, max_n, threads)))
    report.add(_timed(lambda: check_tilde_euler(g, max_n, threads)))
    report.add(_timed(lambda: check_eq31(g)))
    report.add(_timed(lambda: check_conway_symmetry(g)))
    report.add(_timed(lambda: check_euler_symmetry(g)))
    report.add(_timed(lambda: check_complex(g, max_n)))
    report.add(_timed(lambda: check_sign_lemma(g)))
    report.add(_timed(lambda: check_base_maslov(g)))
    report.add(_timed(lambda: check_deconvolution(g, max_n, threads)))
    report.seconds = time.perf_counter() - start
    return report


# -- move invariance ------------------------------------------------------------


def fuzz_invariance(
    g: GridDiagram,
    trials: int = 100,
    seed: int = 0,
    length: int = 8,
    max_n: int = DEFAULT_FUZZ_MAX_N,
    name: str = "grid",
) -> VerificationReport:
    """Apply random move sequences and compare Gamma and chi before and after.

    Component labels are carried through each sequence, so both invariants
    are compared as labelled multivariable functions.
    """
    start = time.perf_counter()
    report = VerificationReport(name)
    ref_gamma = gamma(g)
    ref_chi = euler_via_det(g)
    rng = random.Random(seed)
    bad_gamma: CheckResult | None = None
    bad_chi: CheckResult | None = None
    sizes = []
    for trial in range(trials):
        moves = random_move_sequence(g, rng.randint(1, length), rng.randrange(2**32), max_n=max(max_n, g.n))
        perm, h = component_image(g, moves)
        sizes.append(h.n)
        script = "; ".join(m.describe() for m in moves)
        if bad_gamma is None:
            got = gamma(h)
            want = ref_gamma.permute_vars(perm)
            if got != want:
                bad_gamma = CheckResult(
                    "fuzz_gamma", False, f"trial {trial}: {script}", str(got), str(want)
                )
        if bad_chi is None:
            try:
                got = euler_via_det(h)
            except NotDivisible as exc:
                bad_chi = CheckResult("fuzz_euler", False, f"trial {trial}: {script}: {exc}")
                continue
            want = ref_chi.permute_vars(perm)
            if got != want:
                bad_chi = CheckResult("fuzz_euler", False, f"trial {trial}: {script}", str(got), str(want))
    summary = f"{trials} sequences, sizes {min(sizes, default=g.n)}..{max(sizes, default=g.n)}"
    report.add(bad_gamma or CheckResult("fuzz_gamma", True, summary))
    report.add(bad_chi or CheckResult("fuzz_euler", True, summary))
    report.seconds = time.perf_counter() - start
    for c in report.checks:
        c.seconds = report.seconds
    return report


# -- built-in corpus ------------------------------------------------------------


def _fixture_specific(name: str, g: GridDiagram) -> list[CheckResult]:
    out = []
    if name == "hopf":
        out.append(_compare("gamma_is_one", gamma(g), RationalFn(LaurentPoly.one(g.mu))))
    if _corpus.is_split(name):
        zero = LaurentPoly.zero(g.mu)
        out.append(_compare("gamma_is_zero", gamma(g), RationalFn(zero)))
        out.append(_compare("det_w_is_zero", determinant(winding_matrix(g), nvars=g.mu), zero))
        out.append(_compare("homology_euler_is_zero", euler_via_homology(g), zero))
    return out


def fixtures(max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> VerificationReport:
    """Run every per-grid check on the built-in corpus."""
    start = time.perf_counter()
    report = VerificationReport("corpus")
    for name, g in _corpus.corpus().items():
        sub = check_grid(g, name, max_n, threads)
        for c in sub.checks + _fixture_specific(name, g):
            c.name = f"{name}/{c.name}"
            report.add(c)
    report.seconds = time.perf_counter() - start
    return report


__all__ = [
    "CheckResult",
    "VerificationReport",
    "check_base_maslov",
    "check_complex",
    "check_conway_symmetry",
    "check_deconvolution",
    "check_eq31",
    "check_euler_symmetry",
    "check_grid",
    "check_hat_symmetry",
    "check_sign_lemma",
    "check_theorem",
    "check_tilde_euler",
    "eq31_sides",
    "fixtures",
    "fuzz_invariance",
    "hat_dims",
]
