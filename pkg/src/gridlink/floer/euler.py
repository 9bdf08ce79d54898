"""Three routes to the graded Euler characteristic of the hat link homology.

- ``homology``: GF(2) homology of the tilde complex, deconvolved.
- ``det``: determinant of the winding matrix.
- ``gamma``: from the Conway function of the diagram.
"""

from __future__ import annotations

import numpy as np

from ..conway import gamma
from ..grid import GridDiagram, perm_sign
from ..laurent import LaurentPoly, RationalFn, determinant, divide_exact, product
from .complex import DEFAULT_MAX_HOMOLOGY_N, DEFAULT_MAX_STATE_SUM_N, check_size
from .gradings import GradingTables, base_state, maslov, permutation_array
from .homology import PoincarePoly, hat_from_tilde, tilde_homology

ROUTES = ("homology", "det", "gamma")


def _one_minus_inverse(k: int, mu: int) -> LaurentPoly:
    return LaurentPoly.one(mu) - LaurentPoly.var(k, mu, -1)


def tilde_factor(g: GridDiagram, extra: int = -1) -> LaurentPoly:
    """``prod_k (1 - t_k^-1)^(n_k + extra)``."""
    mu = g.mu
    return product(
        (_one_minus_inverse(k, mu) ** (nk + extra) for k, nk in enumerate(g.component_map.sizes)),
        mu,
    )


def euler_tilde(g: GridDiagram, max_n: int = DEFAULT_MAX_STATE_SUM_N, chunk: int = 1 << 18) -> LaurentPoly:
    """``sum_x (-1)^M(x) t^A(x)`` over all n! states, without homology."""
    check_size(g, max_n, "state sum")
    tables = GradingTables(g)
    states = permutation_array(g.n)
    totals: dict[tuple[int, ...], int] = {}
    for start in range(0, len(states), chunk):
        block = states[start:start + chunk].astype(np.int64)
        m = tables.maslov(block)
        a = tables.alexander(block)
        signs = 1 - 2 * (m % 2)
        keys, inverse = np.unique(a, axis=0, return_inverse=True)
        sums = np.bincount(inverse.reshape(-1), weights=signs, minlength=len(keys))
        for key, s in zip(keys.tolist(), sums.tolist()):
            key = tuple(key)
            totals[key] = totals.get(key, 0) + int(round(s))
    return LaurentPoly(totals, g.mu)


def winding_numbers(g: GridDiagram) -> np.ndarray:
    """``w[k, i, j]``: winding number of component k around lattice point
    (horizontal line i, vertical line j), from a leftward ray."""
    n, mu = g.n, g.mu
    w = np.zeros((mu, n, n), dtype=np.int64)
    for seg in g.vertical_segments:
        r0, r1 = seg.span
        # the leftward ray from (i, j) meets this segment iff col < j
        # and line i lies between its endpoints; downward is anticlockwise
        step = -1 if seg.upward else 1
        w[seg.component, r0:r1, seg.col + 1:] += step
    return w


def winding_matrix(g: GridDiagram) -> list[list[LaurentPoly]]:
    """``W[i][j] = t^a(i, j)`` with ``a`` minus the winding numbers."""
    a = -winding_numbers(g)
    n, mu = g.n, g.mu
    return [
        [LaurentPoly.monomial([2 * int(a[k, i, j]) for k in range(mu)]) for j in range(n)]
        for i in range(n)
    ]


def base_sign(g: GridDiagram) -> int:
    """``(-1)^M(x_0) * sgn(x_0)``."""
    x0 = base_state(g)
    return (-1) ** (maslov(g, x0) % 2) * perm_sign(x0)


def nu_half_units(g: GridDiagram) -> tuple[int, ...]:
    """``2 * nu_k`` where ``nu_k = J(-(X+O)/2, X_k - O_k) - n_k/2``."""
    return tuple(int(v) for v in GradingTables(g).nu2)


def euler_via_det(g: GridDiagram) -> LaurentPoly:
    """Solve the winding-determinant identity for the hat Euler characteristic."""
    mu = g.mu
    det = determinant(winding_matrix(g), nvars=mu)
    lhs = det * base_sign(g)
    shift = [v + 1 for v in nu_half_units(g)]
    return divide_exact(lhs.shift(shift), tilde_factor(g))


def conway_numerator(g: GridDiagram) -> RationalFn:
    """``prod_k (t_k^(1/2) - t_k^(-1/2)) * Gamma(t^(1/2))``."""
    mu = g.mu
    root = product(
        (LaurentPoly.var(k, mu, "1/2") - LaurentPoly.var(k, mu, "-1/2") for k in range(mu)), mu
    )
    return RationalFn(root) * gamma(g).substitute_sqrt()


def euler_via_gamma(g: GridDiagram) -> LaurentPoly:
    return conway_numerator(g).to_poly()


def tilde_poincare(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> PoincarePoly:
    return PoincarePoly.from_dims(tilde_homology(g, max_n=max_n, threads=threads), g.mu)


def hat_poincare(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> PoincarePoly:
    return hat_from_tilde(tilde_poincare(g, max_n, threads), g.component_map)


def euler_via_homology(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> LaurentPoly:
    tilde_chi = tilde_poincare(g, max_n, threads).euler()
    return divide_exact(tilde_chi, tilde_factor(g))


def euler(g: GridDiagram, route: str = "det", max_n: int | None = None, threads: int = 1) -> LaurentPoly:
    """The hat Euler characteristic by the named route."""
    if route == "homology":
        return euler_via_homology(g, max_n or DEFAULT_MAX_HOMOLOGY_N, threads)
    if route == "det":
        if max_n is not None:
            check_size(g, max_n, "determinant route")
        return euler_via_det(g)
    if route == "gamma":
        if max_n is not None:
            check_size(g, max_n, "gamma route")
        return euler_via_gamma(g)
    raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")


__all__ = [
    "ROUTES",
    "base_sign",
    "conway_numerator",
    "euler",
    "euler_tilde",
    "euler_via_det",
    "euler_via_gamma",
    "euler_via_homology",
    "hat_poincare",
    "nu_half_units",
    "tilde_factor",
    "tilde_poincare",
    "winding_matrix",
    "winding_numbers",
]
