"""Grid diagrams of oriented links and the Cromwell moves.

Conventions: rows are numbered top to bottom and columns left to right.
Internally everything is 0-based; the text/JSON file formats and
:func:`validate` use 1-based columns.

A grid is stored as two permutations ``xs`` and ``os``: ``xs[r]`` is the
column of the X in row ``r`` and ``os[r]`` the column of the O.  Horizontal
segments run from O to X, vertical segments from X to O.  A vertical segment
is *upward* when its O lies in a smaller row than its X.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .exceptions import (
    GridParseError,
    IllegalMove,
    NotPermutation,
    SizeTooSmall,
    XOCollision,
)


def perm_sign(perm: Sequence[int]) -> int:
    """Signature of a 0-based permutation, via its cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def inverse_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def _check_perm(seq, n, label):
    if sorted(seq) != list(range(n)):
        raise NotPermutation(f"{label} markings {list(seq)} are not a permutation")


@dataclass(frozen=True)
class ComponentMap:
    mu: int
    comp_of_row: tuple[int, ...]
    comp_of_col: tuple[int, ...]
    sizes: tuple[int, ...]  # n_k: number of O's on component k


@dataclass(frozen=True)
class VerticalSegment:
    col: int
    x_row: int
    o_row: int
    component: int

    @property
    def upward(self) -> bool:
        return self.o_row < self.x_row

    @property
    def span(self) -> tuple[int, int]:
        return min(self.x_row, self.o_row), max(self.x_row, self.o_row)


@dataclass(frozen=True)
class HorizontalSegment:
    row: int
    o_col: int
    x_col: int
    component: int

    @property
    def span(self) -> tuple[int, int]:
        return min(self.x_col, self.o_col), max(self.x_col, self.o_col)


@dataclass(frozen=True)
class Corner:
    row: int  # horizontal segment
    col: int  # vertical segment
    begins_horizontal: bool  # True at the O end of the horizontal segment


@dataclass(frozen=True)
class GridDiagram:
    """An n x n grid with one X and one O in every row and column."""

    xs: tuple[int, ...]
    os: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(int(c) for c in self.xs))
        object.__setattr__(self, "os", tuple(int(c) for c in self.os))
        n = len(self.xs)
        if len(self.os) != n:
            raise NotPermutation("X and O lists have different lengths")
        if n < 2:
            raise SizeTooSmall(f"grid size {n} < 2")
        _check_perm(self.xs, n, "X")
        _check_perm(self.os, n, "O")
        for r, (x, o) in enumerate(zip(self.xs, self.os)):
            if x == o:
                raise XOCollision(f"X and O share the cell (row {r + 1}, col {x + 1})")

    @classmethod
    def from_one_based(cls, xs: Sequence[int], os: Sequence[int]) -> "GridDiagram":
        return cls(tuple(c - 1 for c in xs), tuple(c - 1 for c in os))

    def one_based(self) -> tuple[list[int], list[int]]:
        return [c + 1 for c in self.xs], [c + 1 for c in self.os]

    @property
    def n(self) -> int:
        return len(self.xs)

    @cached_property
    def x_row_of_col(self) -> tuple[int, ...]:
        return inverse_perm(self.xs)

    @cached_property
    def o_row_of_col(self) -> tuple[int, ...]:
        return inverse_perm(self.os)

    @cached_property
    def component_map(self) -> ComponentMap:
        return _trace_components(self)

    @property
    def mu(self) -> int:
        return self.component_map.mu

    @cached_property
    def vertical_segments(self) -> tuple[VerticalSegment, ...]:
        comp = self.component_map.comp_of_col
        return tuple(
            VerticalSegment(c, self.x_row_of_col[c], self.o_row_of_col[c], comp[c])
            for c in range(self.n)
        )

    @cached_property
    def horizontal_segments(self) -> tuple[HorizontalSegment, ...]:
        comp = self.component_map.comp_of_row
        return tuple(
            HorizontalSegment(r, self.os[r], self.xs[r], comp[r]) for r in range(self.n)
        )

    def __str__(self) -> str:
        return format_grid(self)


def validate(xs: Sequence[int], os: Sequence[int]) -> GridDiagram:
    """Build a checked grid from 1-based column lists."""
    n = len(xs)
    if n < 2:
        raise SizeTooSmall(f"grid size {n} < 2")
    if len(os) != n:
        raise NotPermutation("X and O lists have different lengths")
    for label, seq in (("X", xs), ("O", os)):
        if sorted(seq) != list(range(1, n + 1)):
            raise NotPermutation(f"{label} markings {list(seq)} are not a permutation of 1..{n}")
    return GridDiagram.from_one_based(xs, os)


def _trace_components(g: GridDiagram) -> ComponentMap:
    n = g.n
    comp_of_row = [-1] * n
    sizes = []
    for start in range(n):
        if comp_of_row[start] >= 0:
            continue
        k = len(sizes)
        size = 0
        r = start
        while comp_of_row[r] < 0:
            comp_of_row[r] = k
            size += 1
            # along row r from O to X, then down/up column xs[r] to its O
            r = g.o_row_of_col[g.xs[r]]
        sizes.append(size)
    comp_of_col = tuple(comp_of_row[g.x_row_of_col[c]] for c in range(n))
    return ComponentMap(len(sizes), tuple(comp_of_row), comp_of_col, tuple(sizes))


def components(g: GridDiagram) -> ComponentMap:
    return g.component_map


def upward_counts(g: GridDiagram) -> tuple[int, tuple[int, ...]]:
    per = [0] * g.mu
    for seg in g.vertical_segments:
        if seg.upward:
            per[seg.component] += 1
    return sum(per), tuple(per)


def orientation_signs(g: GridDiagram) -> tuple[int, ...]:
    """+1 for upward vertical segments, -1 for downward ones, by column."""
    return tuple(1 if s.upward else -1 for s in g.vertical_segments)


def corners(g: GridDiagram) -> list[Corner]:
    out = []
    for r in range(g.n):
        out.append(Corner(r, g.os[r], True))
        out.append(Corner(r, g.xs[r], False))
    return out


def base_permutation(g: GridDiagram) -> tuple[tuple[int, ...], int]:
    """The base x_0 (row -> column of the O) and its signature."""
    return g.os, perm_sign(g.os)


# -- curvature ----------------------------------------------------------------


def _component_traversal(g: GridDiagram, k: int):
    """Segments of component k in traversal order.

    Each entry is ``(kind, index, direction)`` where direction is a unit
    vector in the plane with y pointing up (towards row 0).
    """
    start = g.component_map.comp_of_row.index(k)
    out = []
    r = start
    while True:
        o, x = g.os[r], g.xs[r]
        out.append(("h", r, (1 if x > o else -1, 0)))
        c = x
        x_row, o_row = g.x_row_of_col[c], g.o_row_of_col[c]
        out.append(("v", c, (0, 1 if o_row < x_row else -1)))
        r = o_row
        if r == start:
            return out


def _self_crossings(g: GridDiagram, k: int) -> list[tuple[int, int]]:
    crossings = []
    hs = [h for h in g.horizontal_segments if h.component == k]
    vs = [v for v in g.vertical_segments if v.component == k]
    for h in hs:
        c0, c1 = h.span
        for v in vs:
            r0, r1 = v.span
            if c0 < v.col < c1 and r0 < h.row < r1:
                crossings.append((h.row, v.col))
    return crossings


def _turn(d1, d2) -> int:
    # +1 for an anticlockwise quarter turn, -1 clockwise, 0 straight
    return d1[0] * d2[1] - d1[1] * d2[0]


def curvature(g: GridDiagram, k: int) -> int:
    """Anticlockwise minus clockwise Seifert circuits of component k.

    Every self-crossing of the component is smoothed in the oriented way,
    the resulting circuits are traced, and each contributes its rotation
    (signed quarter turns / 4).
    """
    segs = _component_traversal(g, k)
    crossing_at = set(_self_crossings(g, k))
    # Expand the traversal into a cyclic list of events: crossings passed
    # along each segment (in travel order), then the corner ending it.
    events = []  # (crossing cell or None, direction of travel on arrival)
    for kind, idx, d in segs:
        if kind == "h":
            cols = sorted(c for (r, c) in crossing_at if r == idx)
            if d[0] < 0:
                cols.reverse()
            events.extend(((idx, c), d) for c in cols)
        else:
            rows = sorted(r for (r, c) in crossing_at if c == idx)
            if d[1] > 0:
                rows.reverse()
            events.extend(((r, idx), d) for r in rows)
        events.append((None, d))
    m = len(events)
    other = {}
    for i, (cell, _) in enumerate(events):
        if cell is not None:
            other.setdefault(cell, []).append(i)
    twin = {}
    for a, b in other.values():
        twin[a], twin[b] = b, a
    visited = [False] * m
    total = 0
    for s in range(m):
        if visited[s]:
            continue
        turns = 0
        i = s
        while not visited[i]:
            visited[i] = True
            d_in = events[i][1]
            if events[i][0] is None:
                nxt = (i + 1) % m
                turns += _turn(d_in, events[nxt][1])
            else:
                j = twin[i]
                # smoothing: leave along the other strand's direction
                d_out = events[j][1]
                turns += _turn(d_in, d_out)
                nxt = (j + 1) % m
            i = nxt
        total += turns // 4
    return total


def curvatures(g: GridDiagram) -> tuple[int, ...]:
    return tuple(curvature(g, k) for k in range(g.mu))


# -- moves ----------------------------------------------------------------------

STAB_FLAVORS = ("O:NE", "O:SW", "O:NW", "O:SE")


@dataclass(frozen=True)
class GridMove:
    """One Cromwell move.

    kinds:
      ``cycle_cols`` / ``cycle_rows``: G1; moves the leftmost column to the
      right (topmost row to the bottom), or the reverse when ``reverse``.
      ``swap_cols`` / ``swap_rows``: G2 on columns (rows) ``index`` and
      ``index + 1``.
      ``stabilize``: G3 at the X in row ``index``; ``flavor`` names the cell
      of the new 2x2 block that receives the O.
      ``destabilize``: inverse of G3; removes the 2x2 block whose top-left
      cell is (``index``, ``col``).
    """

    kind: str
    index: int = 0
    col: int = 0
    flavor: str = ""
    reverse: bool = False

    def describe(self) -> str:
        if self.kind in ("cycle_cols", "cycle_rows"):
            return f"{self.kind}{' reverse' if self.reverse else ''}"
        if self.kind in ("swap_cols", "swap_rows"):
            return f"{self.kind} {self.index + 1}"
        if self.kind == "stabilize":
            return f"stabilize {self.index + 1} {self.flavor}"
        if self.kind == "destabilize":
            return f"destabilize {self.index + 1} {self.col + 1}"
        return self.kind


MOVE_KINDS = ("cycle_cols", "cycle_rows", "swap_cols", "swap_rows", "stabilize", "destabilize")


def parse_move(text: str) -> GridMove:
    """Inverse of :meth:`GridMove.describe` (1-based indices)."""
    parts = text.split()
    if not parts or parts[0] not in MOVE_KINDS:
        raise IllegalMove(f"unknown move {text!r}; kinds are {', '.join(MOVE_KINDS)}")
    kind, args = parts[0], parts[1:]
    try:
        if kind in ("cycle_cols", "cycle_rows"):
            if args not in ([], ["reverse"]):
                raise ValueError(args)
            return GridMove(kind, reverse=bool(args))
        if kind in ("swap_cols", "swap_rows"):
            (i,) = args
            return GridMove(kind, index=int(i) - 1)
        if kind == "stabilize":
            i, flavor = args
            if flavor not in STAB_FLAVORS:
                raise ValueError(flavor)
            return GridMove(kind, index=int(i) - 1, flavor=flavor)
        i, c = args
        return GridMove(kind, index=int(i) - 1, col=int(c) - 1)
    except ValueError:
        raise IllegalMove(f"malformed move {text!r}") from None


def parse_move_script(text: str) -> list[GridMove]:
    """One move per line; ``#`` starts a comment."""
    lines = (ln.split("#", 1)[0].strip() for ln in text.splitlines())
    return [parse_move(ln) for ln in lines if ln]


def _relabel_cols(g: GridDiagram, mapping) -> GridDiagram:
    return GridDiagram(tuple(mapping[c] for c in g.xs), tuple(mapping[c] for c in g.os))


def _cycle_cols(g, reverse):
    n = g.n
    shift = 1 if reverse else -1
    return _relabel_cols(g, [(c + shift) % n for c in range(n)])


def _cycle_rows(g, reverse):
    if reverse:
        return GridDiagram(g.xs[-1:] + g.xs[:-1], g.os[-1:] + g.os[:-1])
    return GridDiagram(g.xs[1:] + g.xs[:1], g.os[1:] + g.os[:1])


def _spans_commute(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (a0, a1), (b0, b1) = a, b
    if len({a0, a1, b0, b1}) < 4:
        return False
    disjoint = a1 < b0 or b1 < a0
    nested = (a0 < b0 and b1 < a1) or (b0 < a0 and a1 < b1)
    return disjoint or nested


def _swap_cols(g, q):
    n = g.n
    if not 0 <= q < n - 1:
        raise IllegalMove(f"no adjacent column pair at {q + 1}")
    a, b = g.vertical_segments[q].span, g.vertical_segments[q + 1].span
    if not _spans_commute(a, b):
        raise IllegalMove(
            f"columns {q + 1},{q + 2} have interleaving spans {a}, {b}"
        )
    mapping = list(range(n))
    mapping[q], mapping[q + 1] = q + 1, q
    return _relabel_cols(g, mapping)


def _swap_rows(g, ell):
    n = g.n
    if not 0 <= ell < n - 1:
        raise IllegalMove(f"no adjacent row pair at {ell + 1}")
    a, b = g.horizontal_segments[ell].span, g.horizontal_segments[ell + 1].span
    if not _spans_commute(a, b):
        raise IllegalMove(f"rows {ell + 1},{ell + 2} have interleaving spans {a}, {b}")
    xs, os = list(g.xs), list(g.os)
    xs[ell], xs[ell + 1] = xs[ell + 1], xs[ell]
    os[ell], os[ell + 1] = os[ell + 1], os[ell]
    return GridDiagram(tuple(xs), tuple(os))


# (row offset, col offset) of the two X's and the O inside the new 2x2 block
_BLOCKS = {
    "O:NE": (((0, 0), (1, 1)), (0, 1)),
    "O:SW": (((0, 0), (1, 1)), (1, 0)),
    "O:NW": (((0, 1), (1, 0)), (0, 0)),
    "O:SE": (((0, 1), (1, 0)), (1, 1)),
}


def _stabilize(g: GridDiagram, r: int, flavor: str) -> GridDiagram:
    if flavor not in _BLOCKS:
        raise IllegalMove(f"unknown stabilization flavor {flavor!r}")
    if not 0 <= r < g.n:
        raise IllegalMove(f"no row {r + 1}")
    n = g.n
    c = g.xs[r]
    (x1, x2), o_cell = _BLOCKS[flavor]
    spare_row = r + 1 - o_cell[0]  # block row without an O
    spare_col = c + 1 - o_cell[1]

    def shift_col(col):
        return col if col < c else col + 1

    xs = [0] * (n + 1)
    os = [0] * (n + 1)
    for i in range(n):
        if i == r:
            continue
        ni = i if i < r else i + 1
        xs[ni] = shift_col(g.xs[i])
        os[ni] = spare_col if g.os[i] == c else shift_col(g.os[i])
    for dr, dc in (x1, x2):
        xs[r + dr] = c + dc
    os[r + o_cell[0]] = c + o_cell[1]
    os[spare_row] = shift_col(g.os[r])
    return GridDiagram(tuple(xs), tuple(os))


def destabilization_flavor(g: GridDiagram, r: int, c: int) -> str | None:
    """Flavor of the 2x2 block at top-left (r, c) if it can be collapsed."""
    n = g.n
    if not (0 <= r < n - 1 and 0 <= c < n - 1) or n < 3:
        return None
    xcells = {(i - r, g.xs[i] - c) for i in (r, r + 1) if c <= g.xs[i] <= c + 1}
    ocells = {(i - r, g.os[i] - c) for i in (r, r + 1) if c <= g.os[i] <= c + 1}
    for flavor, ((x1, x2), o_cell) in _BLOCKS.items():
        if xcells == {x1, x2} and ocells == {o_cell}:
            return flavor
    return None


def _destabilize(g: GridDiagram, r: int, c: int) -> GridDiagram:
    flavor = destabilization_flavor(g, r, c)
    if flavor is None:
        raise IllegalMove(f"no destabilizable 2x2 block at ({r + 1}, {c + 1})")
    n = g.n
    (_, _), o_cell = _BLOCKS[flavor]
    spare_row = r + 1 - o_cell[0]

    def merge_col(col):
        return col if col <= c else col - 1

    xs, os = [], []
    for i in range(n):
        if i == r:
            xs.append(c)
            os.append(merge_col(g.os[spare_row]))
        elif i == r + 1:
            continue
        else:
            xs.append(merge_col(g.xs[i]))
            os.append(merge_col(g.os[i]))
    return GridDiagram(tuple(xs), tuple(os))


def apply_move(g: GridDiagram, m: GridMove) -> GridDiagram:
    if m.kind == "cycle_cols":
        return _cycle_cols(g, m.reverse)
    if m.kind == "cycle_rows":
        return _cycle_rows(g, m.reverse)
    if m.kind == "swap_cols":
        return _swap_cols(g, m.index)
    if m.kind == "swap_rows":
        return _swap_rows(g, m.index)
    if m.kind == "stabilize":
        return _stabilize(g, m.index, m.flavor)
    if m.kind == "destabilize":
        return _destabilize(g, m.index, m.col)
    raise IllegalMove(f"unknown move kind {m.kind!r}")


def inverse_move(g: GridDiagram, m: GridMove) -> GridMove:
    """The move undoing ``m`` when applied to ``apply_move(g, m)``."""
    if m.kind in ("cycle_cols", "cycle_rows"):
        return GridMove(m.kind, reverse=not m.reverse)
    if m.kind in ("swap_cols", "swap_rows"):
        return m
    if m.kind == "stabilize":
        return GridMove("destabilize", index=m.index, col=g.xs[m.index])
    if m.kind == "destabilize":
        # the merged X sits in row m.index; recover the flavor from g
        return GridMove("stabilize", index=m.index, flavor=destabilization_flavor(g, m.index, m.col))
    raise IllegalMove(f"unknown move kind {m.kind!r}")


def legal_moves(g: GridDiagram, max_n: int | None = None) -> list[GridMove]:
    """All legal moves on g; stabilizations only while ``g.n < max_n``."""
    n = g.n
    moves = [GridMove(k, reverse=rev) for k in ("cycle_cols", "cycle_rows") for rev in (False, True)]
    for q in range(n - 1):
        if _spans_commute(g.vertical_segments[q].span, g.vertical_segments[q + 1].span):
            moves.append(GridMove("swap_cols", index=q))
        if _spans_commute(g.horizontal_segments[q].span, g.horizontal_segments[q + 1].span):
            moves.append(GridMove("swap_rows", index=q))
    if max_n is None or n < max_n:
        moves.extend(GridMove("stabilize", index=r, flavor=f) for r in range(n) for f in STAB_FLAVORS)
    for r in range(n - 1):
        for c in range(n - 1):
            if destabilization_flavor(g, r, c) is not None:
                moves.append(GridMove("destabilize", index=r, col=c))
    return moves


def random_move_sequence(
    g: GridDiagram, length: int, seed: int, max_n: int | None = None
) -> list[GridMove]:
    """A reproducible sequence of moves, each legal on the grid it meets."""
    rng = random.Random(seed)
    out = []
    for _ in range(length):
        moves = legal_moves(g, max_n)
        # group by kind first so the many stabilizations do not dominate
        kinds = sorted({m.kind for m in moves})
        kind = rng.choice(kinds)
        m = rng.choice([m for m in moves if m.kind == kind])
        out.append(m)
        g = apply_move(g, m)
    return out


def row_image(g: GridDiagram, m: GridMove) -> list[int]:
    """Where each row of ``g`` ends up in ``apply_move(g, m)``.

    The row keeps the same strand of the link, so this transports component
    labels across a move.
    """
    n = g.n
    rows = list(range(n))
    if m.kind == "cycle_rows":
        step = 1 if m.reverse else -1
        return [(r + step) % n for r in rows]
    if m.kind == "swap_rows":
        q = m.index
        rows[q], rows[q + 1] = q + 1, q
        return rows
    if m.kind == "stabilize":
        return [r if r <= m.index else r + 1 for r in rows]
    if m.kind == "destabilize":
        return [r if r <= m.index else r - 1 for r in rows]
    return rows


def component_image(g: GridDiagram, moves: Sequence[GridMove]) -> tuple[tuple[int, ...], GridDiagram]:
    """Apply ``moves`` and report the new label of each component of ``g``."""
    reps = [g.component_map.comp_of_row.index(k) for k in range(g.mu)]
    for m in moves:
        image = row_image(g, m)
        reps = [image[r] for r in reps]
        g = apply_move(g, m)
    return tuple(g.component_map.comp_of_row[r] for r in reps), g


def apply_moves(g: GridDiagram, moves: Sequence[GridMove]) -> GridDiagram:
    for m in moves:
        g = apply_move(g, m)
    return g


def disjoint_union(g1: GridDiagram, g2: GridDiagram) -> GridDiagram:
    """Block-diagonal union: g1 in the top-left, g2 in the bottom-right."""
    n1 = g1.n
    return GridDiagram(
        g1.xs + tuple(c + n1 for c in g2.xs), g1.os + tuple(c + n1 for c in g2.os)
    )


def mirror_columns(g: GridDiagram) -> GridDiagram:
    """Reflect the grid left to right."""
    n = g.n
    return _relabel_cols(g, [n - 1 - c for c in range(n)])


# -- file formats -------------------------------------------------------------


def parse_grid(text: str) -> GridDiagram:
    """Parse the text format (``n`` / ``X: ...`` / ``O: ...``) or JSON."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            n, xs, os = int(data["n"]), list(data["x"]), list(data["o"])
        except (ValueError, KeyError, TypeError) as exc:
            raise GridParseError(f"bad JSON grid: {exc}") from exc
    else:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if len(lines) != 3:
            raise GridParseError(f"expected 3 non-comment lines, found {len(lines)}")
        try:
            n = int(lines[0])
            fields = {}
            for ln in lines[1:]:
                key, _, rest = ln.partition(":")
                fields[key.strip().upper()] = [int(v) for v in rest.split()]
            xs, os = fields["X"], fields["O"]
        except (ValueError, KeyError) as exc:
            raise GridParseError(f"bad grid text: {exc}") from exc
    if len(xs) != n or len(os) != n:
        raise GridParseError(f"declared size {n} but got {len(xs)} X and {len(os)} O entries")
    return validate(xs, os)


def load_grid(path: str | Path) -> GridDiagram:
    return parse_grid(Path(path).read_text(encoding="utf-8"))


def format_grid(g: GridDiagram) -> str:
    xs, os = g.one_based()
    return f"{g.n}\nX: {' '.join(map(str, xs))}\nO: {' '.join(map(str, os))}\n"


def grid_to_json(g: GridDiagram) -> dict:
    xs, os = g.one_based()
    return {"n": g.n, "x": xs, "o": os}
