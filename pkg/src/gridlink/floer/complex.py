"""The tilde grid complex: generators, empty toroidal rectangles, gradings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from ..exceptions import ResourceLimit
from ..grid import GridDiagram
from .gradings import GradingTables, permutation_array, permutation_rank

DEFAULT_MAX_HOMOLOGY_N = 8
DEFAULT_MAX_STATE_SUM_N = 10


def marking_free_table(g: GridDiagram) -> np.ndarray:
    """``free[lx, ly, w, h]``: the toroidal rectangle with lower-left lattice
    point (lx, ly), width w and height h contains no X and no O."""
    n = g.n
    cells = [(g.xs[r], n - 1 - r) for r in range(n)] + [(g.os[r], n - 1 - r) for r in range(n)]
    cx = np.array([c[0] for c in cells])
    cy = np.array([c[1] for c in cells])
    lx = np.arange(n)[:, None]
    # dx[lx, m]: horizontal offset of marking m's cell from lx
    dx = (cx[None, :] - lx) % n
    dy = (cy[None, :] - lx) % n  # same offsets for the lower-left y
    w = np.arange(n + 1)
    inside_x = dx[:, None, :] < w[None, :, None]  # (lx, w, m)
    inside_y = dy[:, None, :] < w[None, :, None]  # (ly, h, m)
    hit = np.einsum("awm,bhm->abwh", inside_x.astype(np.int32), inside_y.astype(np.int32))
    return hit == 0


@dataclass
class TildeComplex:
    """Generators and GF(2) differential of the tilde complex.

    ``src[e] -> dst[e]`` lists the nonzero matrix entries of the differential
    (states are indexed in lexicographic order of their permutations).
    """

    grid: GridDiagram
    states: np.ndarray
    maslov: np.ndarray
    alexander: np.ndarray  # half-units, shape (N, mu)
    src: np.ndarray
    dst: np.ndarray

    @property
    def size(self) -> int:
        return len(self.states)

    @cached_property
    def matrix(self) -> sp.csr_matrix:
        """Boundary matrix D with D[dst, src] = 1."""
        n = self.size
        data = np.ones(len(self.src), dtype=np.int64)
        return sp.csr_matrix((data, (self.dst, self.src)), shape=(n, n))

    def d_squared_is_zero(self) -> bool:
        d2 = self.matrix @ self.matrix
        d2.data %= 2
        d2.eliminate_zeros()
        return d2.nnz == 0

    def grading_changes(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-arrow Maslov drop and Alexander change (half-units)."""
        dm = self.maslov[self.src] - self.maslov[self.dst]
        da = self.alexander[self.dst] - self.alexander[self.src]
        return dm, da

    def slices(self) -> dict[tuple[int, ...], np.ndarray]:
        """State indices grouped by Alexander grading."""
        keys, inverse = np.unique(self.alexander, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        order = np.argsort(inverse, kind="stable")
        bounds = np.searchsorted(inverse[order], np.arange(len(keys) + 1))
        return {
            tuple(int(v) for v in keys[i]): order[bounds[i]:bounds[i + 1]]
            for i in range(len(keys))
        }


def check_size(g: GridDiagram, limit: int, what: str) -> None:
    if g.n > limit:
        raise ResourceLimit(f"{what} limited to n <= {limit}, grid has n = {g.n}")


def tilde_differential(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N) -> TildeComplex:
    """Enumerate all states and the empty rectangles between them.

    A rectangle from x to y has x at its lower-left and upper-right corners
    and y at the other two.  It is counted when its interior (on the torus)
    holds no point of x and no marking at all.  Between two states that
    differ in two lines there are exactly two such rectangles, so the
    GF(2) entry is the XOR of their emptiness.
    """
    check_size(g, max_n, "tilde complex")
    n = g.n
    states = permutation_array(n).astype(np.int64)
    tables = GradingTables(g)
    maslov = tables.maslov(states)
    alex = tables.alexander(states)
    free = marking_free_table(g)
    heights = n - 1 - np.arange(n)  # y coordinate of horizontal line i
    srcs, dsts = [], []
    index = np.arange(len(states))
    for a in range(n):
        for b in range(a + 1, n):
            xa, xb = states[:, a], states[:, b]
            ya, yb = heights[a], heights[b]  # ya > yb
            others = [r for r in range(n) if r not in (a, b)]
            empties = []
            # R1: lower-left at line b's point, upper-right at line a's point
            # R2: lower-left at line a's point, upper-right at line b's point
            for lx, ly, ux, uy in ((xb, yb, xa, ya), (xa, ya, xb, yb)):
                w = (ux - lx) % n
                h = (uy - ly) % n
                ok = free[lx, ly, w, h]
                for r in others:
                    px = (states[:, r] - lx) % n
                    py = (heights[r] - ly) % n
                    ok &= ~((px > 0) & (px < w) & (py > 0) & (py < h))
                empties.append(ok)
            edge = empties[0] ^ empties[1]
            if not edge.any():
                continue
            s = index[edge]
            tgt = states[edge].copy()
            tgt[:, [a, b]] = tgt[:, [b, a]]
            srcs.append(s)
            dsts.append(permutation_rank(tgt))
    src = np.concatenate(srcs) if srcs else np.zeros(0, dtype=np.int64)
    dst = np.concatenate(dsts) if dsts else np.zeros(0, dtype=np.int64)
    return TildeComplex(g, states, maslov, alex, src, dst)
