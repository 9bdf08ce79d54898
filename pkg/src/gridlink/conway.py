"""The Conway function of a grid diagram via its Neuwirth-Fox matrix.

Row ``i`` of the Fox matrix is the line between horizontal segments ``i`` and
``i + 1`` (0-based here, so rows 0..n-2); column ``j`` is the vertical
segment in grid column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import WeightAmbiguous
from .grid import (
    Corner,
    GridDiagram,
    base_permutation,
    corners,
    curvatures,
    upward_counts,
)
from .laurent import LaurentPoly, RationalFn, determinant, product


@dataclass(frozen=True)
class FoxMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    nvars: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def minor(self, j: int) -> list[list[LaurentPoly]]:
        """The matrix with column ``j`` removed."""
        return [list(row[:j] + row[j + 1:]) for row in self.entries]

    def rows(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "\n".join("  ".join(str(e) for e in row) for row in self.entries)


@dataclass(frozen=True)
class ConwayData:
    x0_sign: int
    u: int
    omega: LaurentPoly
    kappa: tuple[int, ...]
    gamma: RationalFn


def _crosses_line(span: tuple[int, int], line: int) -> bool:
    # line i sits between rows i and i+1
    return span[0] <= line < span[1]


def fox_matrix(g: GridDiagram) -> FoxMatrix:
    """Entry (i, j) is t^phi when segment j crosses line i, else 0.

    phi_k counts the component-k vertical segments crossing line i to the
    left of column j, upward ones positively and downward ones negatively.
    """
    n, mu = g.n, g.mu
    rows = []
    for line in range(n - 1):
        phi = [0] * mu
        row = []
        for seg in g.vertical_segments:
            if _crosses_line(seg.span, line):
                row.append(LaurentPoly.monomial([2 * p for p in phi]))
                phi[seg.component] += 1 if seg.upward else -1
            else:
                row.append(LaurentPoly.zero(mu))
        rows.append(tuple(row))
    return FoxMatrix(tuple(rows), mu)


def theta(g: GridDiagram, col: int) -> LaurentPoly:
    """Abelianized generator of the vertical segment in column ``col``."""
    seg = g.vertical_segments[col]
    return LaurentPoly.var(seg.component, g.mu, 1 if seg.upward else -1)


def check_row_identity(f: FoxMatrix, g: GridDiagram) -> bool:
    """Whether sum_j (theta(x_j) - 1) * F[i, j] vanishes on every row."""
    mu = g.mu
    thetas = [theta(g, j) - 1 for j in range(g.n)]
    for row in f.entries:
        total = LaurentPoly.zero(mu)
        for th, entry in zip(thetas, row):
            if not entry.is_zero():
                total = total + th * entry
        if not total.is_zero():
            return False
    return True


def m_poly(g: GridDiagram, column: int = 0, fox: FoxMatrix | None = None) -> RationalFn:
    """``(-1)^j det(F^j) / (theta(x_j) - 1)`` with j = column + 1."""
    fox = fox or fox_matrix(g)
    det = determinant(fox.minor(column), nvars=g.mu)
    if column % 2 == 0:
        det = -det
    return RationalFn(det, theta(g, column) - 1)


def corner_weight(g: GridDiagram, c: Corner, fox: FoxMatrix | None = None) -> LaurentPoly:
    fox = fox or fox_matrix(g)
    candidates = []
    for line in (c.row - 1, c.row):
        if 0 <= line < g.n - 1:
            candidates.append(fox[line, c.col])
    nonzero = [e for e in candidates if not e.is_zero()]
    if len(nonzero) != 1:
        raise WeightAmbiguous(
            f"corner at row {c.row + 1}, col {c.col + 1} has {len(nonzero)} nonzero neighbours"
        )
    return nonzero[0]


def total_weight(g: GridDiagram, fox: FoxMatrix | None = None) -> LaurentPoly:
    fox = fox or fox_matrix(g)
    return product((corner_weight(g, c, fox) for c in corners(g)), g.mu)


def conway_data(g: GridDiagram, column: int = 0) -> ConwayData:
    fox = fox_matrix(g)
    _, sign = base_permutation(g)
    u, _ = upward_counts(g)
    omega = total_weight(g, fox)
    kappa = curvatures(g)
    m2 = m_poly(g, column, fox).substitute_square()
    scale = sign * (-1) ** u
    denom = omega.shift([2 * k for k in kappa])
    gamma = RationalFn(m2.num * scale, m2.den * denom)
    return ConwayData(sign, u, omega, kappa, gamma)


def gamma(g: GridDiagram, column: int = 0) -> RationalFn:
    """The normalized Conway function of the link presented by ``g``."""
    return conway_data(g, column).gamma
