"""Acceptance criteria 1-10, all exact.

Run with pytest (one test per criterion, each printing a PASS/FAIL line) or
directly as ``python3 tests/test_acceptance.py`` for the summary alone.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import random_grid  # noqa: E402

from gridlink import corpus  # noqa: E402
from gridlink.conway import conway_data, fox_matrix, gamma  # noqa: E402
from gridlink.floer.complex import tilde_differential  # noqa: E402
from gridlink.floer.euler import euler_tilde, euler_via_det, tilde_factor, tilde_poincare  # noqa: E402
from gridlink.floer.gradings import base_state, maslov, sign_maslov_constant  # noqa: E402
from gridlink.floer.homology import hat_from_tilde, tilde_homology  # noqa: E402
from gridlink.grid import GridMove, apply_moves, base_permutation, upward_counts  # noqa: E402
from gridlink.laurent import LaurentPoly, RationalFn  # noqa: E402
from gridlink.verify import (  # noqa: E402
    check_conway_symmetry,
    check_eq31,
    check_euler_symmetry,
    check_hat_symmetry,
    check_theorem,
    fuzz_invariance,
)


def P(text: str, nvars: int = 1) -> LaurentPoly:
    return LaurentPoly.parse(text, nvars)


def K():
    return corpus.get("unknot2")


def T():
    return corpus.get("trefoil")


def H():
    return corpus.get("hopf")


def _fails(items: list[tuple[str, bool]]) -> list[str]:
    return [name for name, ok in items if not ok]


def _result(items: list[tuple[str, bool]], ok_detail: str) -> tuple[bool, str]:
    bad = _fails(items)
    return (not bad, ok_detail if not bad else "failed: " + "; ".join(bad))


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    def rows(g):
        return [[str(e) for e in r] for r in fox_matrix(g).entries]

    expected = {
        "F_K": (K(), [["1", "t1^(-1)"]]),
        "F_T": (T(), [
            ["1", "0", "0", "t1^(-1)", "0"],
            ["1", "0", "t1^(-1)", "1", "t1"],
            ["1", "t1^(-1)", "1", "0", "t1"],
            ["0", "1", "0", "0", "t1"],
        ]),
        "F_H": (H(), [
            ["1", "0", "t1^(-1)", "0"],
            ["1", "t1^(-1)", "t1^(-1)*t2^(-1)", "t2^(-1)"],
            ["0", "1", "0", "t2^(-1)"],
        ]),
    }
    items = [(name, rows(g) == want) for name, (g, want) in expected.items()]
    return _result(items, "F_K, F_T, F_H match entry for entry")


def criterion_2():
    t = P("t1")
    d = t - t ** -1
    items = [
        ("Gamma_K", gamma(K()) == RationalFn(P("1"), d)),
        ("Gamma_T", gamma(T()) == RationalFn(P("t1^2 - 1 + t1^(-2)"), d)),
        ("Gamma_H", gamma(H()) == RationalFn(LaurentPoly.one(2))),
    ]
    return _result(items, "Gamma_K, Gamma_T, Gamma_H equal the golden fractions")


# sgn(x_0), u, kappa, omega as listed for the three example diagrams
NORMALIZATION = {
    "K": (K, -1, 1, (1,), "t1^(-2)", 1),
    "T": (T, 1, 3, (0,), "t1^(-1)", 1),
    "H": (H, 1, 3, (1, 1), "t1^(-3)*t2^(-3)", 2),
}


def criterion_3():
    items = []
    for name, (make, sign, u, kappa, omega, nv) in NORMALIZATION.items():
        g = make()
        data = conway_data(g)
        got_u = upward_counts(g)[0]
        items += [
            (f"{name}: sgn(x0) = {base_permutation(g)[1]}, want {sign}", base_permutation(g)[1] == sign),
            (f"{name}: u = {got_u}, want {u}", got_u == u),
            (f"{name}: kappa = {data.kappa}, want {kappa}", data.kappa == kappa),
            (f"{name}: omega = {data.omega}, want {omega}", data.omega == P(omega, nv)),
        ]
    return _result(items, "sgn(x0), u, kappa, omega match for K, T, H")


THEOREM_GRIDS = ("unknot2", "unknot4", "hopf", "trefoil", "figure8", "unknot+unknot", "hopf+unknot")


def criterion_4():
    start = time.perf_counter()
    items = []
    for name in THEOREM_GRIDS:
        r = check_theorem(corpus.get(name))
        items.append((f"{name}: {r.detail} lhs={r.lhs} rhs={r.rhs}", r.passed))
    elapsed = time.perf_counter() - start
    items.append((f"runtime {elapsed:.2f}s >= 10s", elapsed < 10))
    return _result(items, f"three routes agree on {len(THEOREM_GRIDS)} grids in {elapsed:.2f}s")


def criterion_5():
    items = []
    for name, g in corpus.corpus().items():
        for c in check_eq31(g):
            items.append((f"{name}/{c.name}: {c.detail} lhs={c.lhs} rhs={c.rhs}", c.passed))
    return _result(items, "determinant/Conway identity and beta + nu = 0 on every corpus grid")


def criterion_6():
    rng = random.Random(20240601)
    items = []
    grids = list(corpus.corpus().items())
    grids += [(f"random{i}", random_grid(rng.randint(2, 6), rng)) for i in range(25)]
    for name, g in grids:
        cx = tilde_differential(g)
        dm, da = cx.grading_changes()
        items.append((f"{name}: d^2 != 0", cx.d_squared_is_zero()))
        items.append((f"{name}: arrow gradings", bool((dm == 1).all() and (da == 0).all())))
        if g.n <= 6:
            try:
                sign_maslov_constant(g, exhaustive_limit=6)
                items.append((f"{name}: sign lemma", True))
            except Exception as exc:  # LemmaViolation
                items.append((f"{name}: sign lemma {exc}", False))
    for i in range(50):
        g = random_grid(rng.randint(2, 8), rng)
        items.append((f"base Maslov on random grid {i}", maslov(g, base_state(g)) == 1 - g.n))
    return _result(items, f"{len(grids)} complexes, 50 base gradings checked")


def criterion_7():
    start = time.perf_counter()
    items = []
    for k, (name, g) in enumerate(corpus.corpus().items()):
        r = fuzz_invariance(g, trials=100, seed=7000 + k, length=8, max_n=8, name=name)
        for c in r.checks:
            items.append((f"{name}/{c.name}: {c.detail} lhs={c.lhs} rhs={c.rhs}", c.passed))
    elapsed = time.perf_counter() - start
    items.append((f"runtime {elapsed:.1f}s >= 60s", elapsed < 60))
    return _result(items, f"100 sequences per corpus grid, invariants unchanged, {elapsed:.1f}s")


def criterion_8():
    items = []
    for name, g in corpus.corpus().items():
        items.append((f"{name}: Gamma(t^-1) != (-1)^mu Gamma", check_conway_symmetry(g).passed))
        items.append((f"{name}: chi(t^-1) != chi", check_euler_symmetry(g).passed))
    for name in ("unknot2", "hopf", "trefoil"):
        r = check_hat_symmetry(corpus.get(name), maslov_shift=1)
        items.append((f"{name}: (d,s)~(d - sum s, -s): {r.detail}", r.passed))
    return _result(items, "conway, euler and bigraded symmetries hold")


def criterion_9():
    items = []
    for name, g in corpus.corpus().items():
        if max(g.component_map.sizes) > 1:
            try:
                hat_from_tilde(tilde_poincare(g), g.component_map)
                items.append((name, True))
            except ArithmeticError as exc:
                items.append((f"{name}: {exc}", False))
    for name in ("unknot2", "unknot3", "unknot4"):
        g = corpus.get(name)
        dim = hat_from_tilde(tilde_poincare(g), g.component_map).total_dim
        items.append((f"{name}: hat dim {dim} != 1", dim == 1))
    return _result(items, "deconvolution exact on the corpus; unknots of size 2, 3, 4 have rank 1")


def _stabilized_figure8(extra: int):
    moves = [GridMove("stabilize", index=i, flavor="O:NE") for i in range(extra)]
    return apply_moves(corpus.get("figure8"), moves)


def criterion_10():
    g8 = _stabilized_figure8(2)
    start = time.perf_counter()
    dims = tilde_homology(g8)
    t8 = time.perf_counter() - start
    g9 = _stabilized_figure8(3)
    start = time.perf_counter()
    chi = euler_tilde(g9)
    t9 = time.perf_counter() - start
    items = [
        (f"n=8 homology {t8:.2f}s", t8 < 10),
        (f"n=9 state sum {t9:.2f}s", t9 < 30),
        ("n=8 total dimension", sum(dims.values()) == 5 * 2 ** 7),
        ("n=9 state sum value", chi == tilde_factor(g9) * euler_via_det(g9)),
    ]
    return _result(items, f"n=8 homology {t8:.2f}s, n=9 state sum {t9:.2f}s")


CRITERIA = [
    (1, "Fox-matrix goldens", criterion_1),
    (2, "Conway function goldens", criterion_2),
    (3, "normalization goldens", criterion_3),
    (4, "three-route agreement", criterion_4),
    (5, "determinant identity and beta + nu", criterion_5),
    (6, "complex property suite", criterion_6),
    (7, "move invariance fuzzing", criterion_7),
    (8, "symmetries", criterion_8),
    (9, "tensor-factor deconvolution", criterion_9),
    (10, "performance", criterion_10),
]


def _line(number: int, title: str, ok: bool, detail: str) -> str:
    return f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    all_ok = True
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        all_ok &= ok
        print(_line(number, title, ok, detail), flush=True)
    sys.exit(0 if all_ok else 1)
