import json
import random

import pytest

from gridlink import corpus
from gridlink.conway import gamma
from gridlink.exceptions import GridParseError, IllegalMove, NotPermutation, SizeTooSmall, XOCollision
from gridlink.grid import (
    STAB_FLAVORS,
    GridDiagram,
    GridMove,
    apply_move,
    apply_moves,
    base_permutation,
    component_image,
    corners,
    curvature,
    curvatures,
    disjoint_union,
    format_grid,
    grid_to_json,
    inverse_move,
    legal_moves,
    mirror_columns,
    parse_grid,
    parse_move,
    parse_move_script,
    random_move_sequence,
    upward_counts,
    validate,
)

from conftest import random_grid


class TestValidate:
    def test_unknot(self):
        g = validate([1, 2], [2, 1])
        assert g.n == 2 and g.mu == 1 and g.component_map.sizes == (2,)

    def test_repeated_column(self):
        with pytest.raises(NotPermutation):
            validate([1, 1], [2, 2])

    def test_collision(self):
        with pytest.raises(XOCollision):
            validate([1, 2], [1, 2])

    def test_too_small(self):
        with pytest.raises(SizeTooSmall):
            validate([1], [1])


class TestStructure:
    def test_components(self, hopf):
        assert hopf.mu == 2 and hopf.component_map.sizes == (2, 2)

    def test_union_components(self, unknot, hopf):
        u = disjoint_union(unknot, unknot)
        assert u.n == 4 and u.mu == 2
        assert disjoint_union(hopf, unknot).mu == 3

    @pytest.mark.parametrize("seed", range(20))
    def test_random_grid_invariants(self, seed):
        rng = random.Random(seed)
        g = random_grid(rng.randint(2, 8), rng)
        assert sum(g.component_map.sizes) == g.n
        cs = corners(g)
        assert len(cs) == 2 * g.n
        for col in range(g.n):
            assert sum(c.col == col for c in cs) == 2

    def test_upward_counts(self, unknot, trefoil, hopf):
        assert upward_counts(unknot)[0] == 1
        assert upward_counts(trefoil)[0] == 3
        # Gamma = 1 on this diagram needs an even count
        assert upward_counts(hopf) == (2, (1, 1))

    def test_corner_counts(self, unknot, trefoil):
        assert len(corners(unknot)) == 4
        assert len(corners(trefoil)) == 10

    def test_base_permutation(self, unknot, trefoil, hopf):
        assert base_permutation(unknot) == ((1, 0), -1)
        assert base_permutation(trefoil)[1] == 1
        # x_0 = (13)(24)
        assert base_permutation(hopf) == ((2, 3, 0, 1), 1)

    def test_curvature(self, unknot, trefoil, hopf):
        assert curvature(unknot, 0) == 1
        assert curvatures(trefoil) == (0,)
        assert curvatures(hopf) == (1, 1)
        assert curvatures(mirror_columns(unknot)) == (-1,)


class TestMoves:
    def test_cycle_preserves_gamma(self, unknot):
        h = apply_move(unknot, GridMove("cycle_cols"))
        assert h.n == 2 and gamma(h) == gamma(unknot)

    def test_stabilization(self, unknot):
        for flavor in STAB_FLAVORS:
            h = apply_move(unknot, GridMove("stabilize", index=0, flavor=flavor))
            assert h.n == 3 and h.mu == 1
            assert gamma(h) == gamma(unknot)

    def test_interleaved_swap(self):
        # columns 1 and 2 span rows {1, 3} and {2, 4}
        g = GridDiagram.from_one_based([1, 2, 3, 4], [3, 4, 1, 2])
        with pytest.raises(IllegalMove):
            apply_move(g, GridMove("swap_cols", index=0))

    def test_bad_destabilize(self, trefoil):
        with pytest.raises(IllegalMove):
            apply_move(trefoil, GridMove("destabilize", index=1, col=1))

    @pytest.mark.parametrize("name", corpus.NAMES)
    def test_every_move_inverts(self, name):
        g = corpus.get(name)
        for m in legal_moves(g):
            h = apply_move(g, m)
            assert apply_move(h, inverse_move(g, m)) == g, m
            assert h.component_map.sizes.count(0) == 0
            assert h.mu == g.mu

    def test_cycle_n_times(self, trefoil):
        h = trefoil
        for _ in range(trefoil.n):
            h = apply_move(h, GridMove("cycle_rows"))
        assert h == trefoil

    def test_random_sequence(self, trefoil):
        assert random_move_sequence(trefoil, 0, seed=1) == []
        a = random_move_sequence(trefoil, 8, seed=5, max_n=8)
        assert a == random_move_sequence(trefoil, 8, seed=5, max_n=8)
        h = apply_moves(trefoil, a)
        assert h.n <= 8

    def test_component_labels_follow_moves(self, hopf):
        moves = [GridMove("cycle_rows")]
        perm, h = component_image(hopf, moves)
        # the top row changes strand, so the labels swap
        assert perm == (1, 0)
        assert h.component_map.comp_of_row[hopf.n - 1] == perm[hopf.component_map.comp_of_row[0]]

    def test_move_text(self):
        for m in [
            GridMove("cycle_cols"),
            GridMove("cycle_rows", reverse=True),
            GridMove("swap_rows", index=2),
            GridMove("stabilize", index=1, flavor="O:SE"),
            GridMove("destabilize", index=0, col=3),
        ]:
            assert parse_move(m.describe()) == m
        with pytest.raises(IllegalMove):
            parse_move("stabilize 1 O:XX")
        assert len(parse_move_script("# c\ncycle_cols\n\nswap_cols 1  # x\n")) == 2


class TestFormats:
    def test_text_round_trip(self, trefoil):
        assert parse_grid(format_grid(trefoil)) == trefoil

    def test_comments(self):
        g = parse_grid("# a comment\n2\nX: 1 2  # xs\nO: 2 1\n")
        assert g.one_based() == ([1, 2], [2, 1])

    def test_json(self, hopf):
        text = json.dumps(grid_to_json(hopf))
        assert parse_grid(text) == hopf

    @pytest.mark.parametrize(
        "text",
        ["2\nX: 1 2\n", "3\nX: 1 2\nO: 2 1\n", "two\nX: 1 2\nO: 2 1\n", '{"n": 2, "x": [1, 2]}'],
    )
    def test_parse_errors(self, text):
        with pytest.raises(GridParseError):
            parse_grid(text)

    def test_invalid_content(self):
        with pytest.raises(NotPermutation):
            parse_grid("3\nX: 1 1 2\nO: 2 3 1\n")
