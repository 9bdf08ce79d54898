"""Maslov and Alexander gradings of grid states.

Planar coordinates put the origin at the bottom-left corner of the grid.
Horizontal line ``i`` (0-based) is the lower edge of row ``i``, at height
``n - 1 - i``; vertical line ``j`` is the left edge of column ``j``, at
abscissa ``j``.  A state is a permutation ``x`` placing one point on each
horizontal line, at ``(x[i], n - 1 - i)``.  Markings sit at cell centres.

All coordinates here are doubled so that cell centres are odd integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from ..exceptions import LemmaViolation
from ..grid import GridDiagram, perm_sign

Point = tuple[int, int]
PointSum = Union[Mapping[Point, Fraction | int], Iterable[Point]]


def _as_sum(a: PointSum) -> dict[Point, Fraction]:
    if isinstance(a, Mapping):
        return {p: Fraction(c) for p, c in a.items() if c}
    out: dict[Point, Fraction] = {}
    for p in a:
        out[p] = out.get(p, Fraction(0)) + 1
    return out


def i_pair(a: PointSum, b: PointSum) -> Fraction:
    """Weighted count of pairs with a strictly south-west of b."""
    a, b = _as_sum(a), _as_sum(b)
    total = Fraction(0)
    for (ax, ay), ca in a.items():
        for (bx, by), cb in b.items():
            if ax < bx and ay < by:
                total += ca * cb
    return total


def j_pair(a: PointSum, b: PointSum) -> Fraction:
    """``(I(a, b) + I(b, a)) / 2``, extended bilinearly to formal sums."""
    return (i_pair(a, b) + i_pair(b, a)) / 2


def combine(*terms: tuple[Fraction | int, PointSum]) -> dict[Point, Fraction]:
    """Formal linear combination ``sum c * A`` of point collections."""
    out: dict[Point, Fraction] = {}
    for c, a in terms:
        for p, w in _as_sum(a).items():
            out[p] = out.get(p, Fraction(0)) + Fraction(c) * w
    return {p: w for p, w in out.items() if w}


def state_points(g: GridDiagram, x: Sequence[int]) -> list[Point]:
    n = g.n
    return [(2 * x[i], 2 * (n - 1 - i)) for i in range(n)]


def marking_points(g: GridDiagram, cols: Sequence[int], rows: Iterable[int] | None = None) -> list[Point]:
    n = g.n
    rows = range(n) if rows is None else rows
    return [(2 * cols[r] + 1, 2 * (n - 1 - r) + 1) for r in rows]


def o_points(g: GridDiagram, k: int | None = None) -> list[Point]:
    rows = None if k is None else [r for r in range(g.n) if g.component_map.comp_of_row[r] == k]
    return marking_points(g, g.os, rows)


def x_points(g: GridDiagram, k: int | None = None) -> list[Point]:
    rows = None if k is None else [r for r in range(g.n) if g.component_map.comp_of_row[r] == k]
    return marking_points(g, g.xs, rows)


def maslov(g: GridDiagram, x: Sequence[int]) -> int:
    """``M(x) = J(x - O, x - O) + 1``."""
    d = combine((1, state_points(g, x)), (-1, o_points(g)))
    m = j_pair(d, d) + 1
    assert m.denominator == 1
    return int(m)


def alexander(g: GridDiagram, x: Sequence[int]) -> tuple[int, ...]:
    """Alexander multi-grading of state ``x`` in half-units."""
    half = Fraction(1, 2)
    src = combine((1, state_points(g, x)), (-half, x_points(g)), (-half, o_points(g)))
    out = []
    for k, nk in enumerate(g.component_map.sizes):
        dk = combine((1, x_points(g, k)), (-1, o_points(g, k)))
        a = j_pair(src, dk) - Fraction(nk - 1, 2)
        out.append(int(2 * a))
    return tuple(out)


def base_state(g: GridDiagram) -> tuple[int, ...]:
    """The state at the lower-left corners of the O cells."""
    return g.os


# -- vectorized tables ----------------------------------------------------------


class GradingTables:
    """Per-(row, column) contributions used to grade many states at once.

    For a state ``x`` the gradings decompose as sums over its points, so they
    are computed by fancy indexing a table with ``x``.
    """

    def __init__(self, g: GridDiagram):
        self.grid = g
        n, mu = g.n, g.mu
        self.n, self.mu = n, mu
        opts = o_points(g)
        self.jj_oo = int(j_pair(opts, opts))
        # 2 * J(p, O) for every lattice point p on line i, column v
        self.j2_o = np.zeros((n, n), dtype=np.int64)
        # 2 * J(p, X_k - O_k); these are even (minus winding numbers)
        self.j2_d = np.zeros((mu, n, n), dtype=np.int64)
        dks = [combine((1, x_points(g, k)), (-1, o_points(g, k))) for k in range(mu)]
        for i in range(n):
            for v in range(n):
                p = [(2 * v, 2 * (n - 1 - i))]
                self.j2_o[i, v] = int(2 * j_pair(p, opts))
                for k in range(mu):
                    self.j2_d[k, i, v] = int(2 * j_pair(p, dks[k]))
        xo = combine((1, x_points(g)), (1, opts))
        # constant part of 2*A_k: -J(X+O, D_k) - (n_k - 1)
        self.alex_offset = np.zeros(mu, dtype=np.int64)
        # 2*nu_k = -J(X+O, D_k) - n_k
        self.nu2 = np.zeros(mu, dtype=np.int64)
        for k, nk in enumerate(g.component_map.sizes):
            j = j_pair(xo, dks[k])
            if j.denominator != 1:
                raise ArithmeticError("J(X+O, X_k-O_k) is not an integer")
            self.alex_offset[k] = -int(j) - (nk - 1)
            self.nu2[k] = -int(j) - nk

    def winding_exponents(self) -> np.ndarray:
        """``J(p, X_k - O_k)`` for every lattice point, shape (mu, n, n)."""
        return self.j2_d // 2

    def maslov(self, states: np.ndarray) -> np.ndarray:
        states = np.asarray(states)
        if states.ndim == 1:
            states = states[None, :]
        n = self.n
        rows = np.arange(n)
        # I(x, x): pairs of lines a < b with x[b] < x[a] (b is lower)
        inv = np.zeros(len(states), dtype=np.int64)
        for a in range(n):
            for b in range(a + 1, n):
                inv += states[:, b] < states[:, a]
        j2xo = self.j2_o[rows, states].sum(axis=1)
        return inv - j2xo + self.jj_oo + 1

    def alexander(self, states: np.ndarray) -> np.ndarray:
        """Half-unit Alexander gradings, shape (N, mu)."""
        states = np.asarray(states)
        if states.ndim == 1:
            states = states[None, :]
        rows = np.arange(self.n)
        out = np.empty((len(states), self.mu), dtype=np.int64)
        for k in range(self.mu):
            out[:, k] = self.j2_d[k][rows, states].sum(axis=1) + self.alex_offset[k]
        return out


def permutation_array(n: int) -> np.ndarray:
    """All permutations of ``range(n)`` in lexicographic order, shape (n!, n)."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for m in range(1, n + 1):
        # lex perms of size m from those of size m-1: prefix f, remap the rest
        blocks = []
        for f in range(m):
            rest = perms + (perms >= f)
            blocks.append(np.hstack([np.full((len(perms), 1), f, dtype=np.int8), rest.astype(np.int8)]))
        perms = np.vstack(blocks)
    return perms


def permutation_rank(states: np.ndarray) -> np.ndarray:
    """Lexicographic rank (Lehmer code) of each row."""
    states = np.asarray(states)
    n = states.shape[1]
    fact = [1] * (n + 1)
    for i in range(1, n + 1):
        fact[i] = fact[i - 1] * i
    rank = np.zeros(len(states), dtype=np.int64)
    for i in range(n):
        smaller = np.zeros(len(states), dtype=np.int64)
        for j in range(i + 1, n):
            smaller += states[:, j] < states[:, i]
        rank += smaller * fact[n - 1 - i]
    return rank


def permutation_signs(states: np.ndarray) -> np.ndarray:
    states = np.asarray(states)
    n = states.shape[1]
    inv = np.zeros(len(states), dtype=np.int64)
    for a in range(n):
        for b in range(a + 1, n):
            inv += states[:, b] < states[:, a]
    return 1 - 2 * (inv % 2)


def sign_maslov_constant(
    g: GridDiagram, exhaustive_limit: int = 6, samples: int = 2000, seed: int = 0
) -> int:
    """The common value of ``(-1)^M(x) * sgn(x)`` over all states.

    Checks every state when ``n <= exhaustive_limit`` and a random sample
    otherwise; raises :class:`LemmaViolation` if two states disagree.
    """
    tables = GradingTables(g)
    if g.n <= exhaustive_limit:
        states = permutation_array(g.n)
    else:
        rng = random.Random(seed)
        pool = [list(range(g.n)) for _ in range(samples)]
        for p in pool:
            rng.shuffle(p)
        states = np.array([list(g.os)] + pool, dtype=np.int8)
    m = tables.maslov(states)
    values = (1 - 2 * (m % 2)) * permutation_signs(states)
    ref = (-1) ** (maslov(g, base_state(g)) % 2) * perm_sign(base_state(g))
    bad = np.nonzero(values != ref)[0]
    if len(bad):
        raise LemmaViolation(
            f"state {states[bad[0]].tolist()} gives {values[bad[0]]}, base gives {ref}"
        )
    return int(ref)
