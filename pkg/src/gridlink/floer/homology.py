"""GF(2) homology of the tilde complex and Poincare polynomials."""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..grid import ComponentMap, GridDiagram
from ..laurent import LaurentPoly, divide_exact, format_half, product
from .complex import DEFAULT_MAX_HOMOLOGY_N, TildeComplex, tilde_differential

Bigrading = tuple[int, tuple[int, ...]]  # (maslov, alexander in half-units)
BigradedDims = dict[Bigrading, int]


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of row vectors packed into Python ints."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            low = v & -v
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


def _slice_dims(cx: TildeComplex, idx: np.ndarray, edges: list[tuple[int, int]]) -> dict[int, int]:
    """Homology dimensions by Maslov degree for one Alexander slice."""
    m = cx.maslov[idx]
    local = {}
    counts: dict[int, int] = defaultdict(int)
    for s, d in zip(idx.tolist(), m.tolist()):
        local[s] = counts[d]
        counts[d] += 1
    rows_by_degree: dict[int, dict[int, int]] = defaultdict(dict)
    for s, t in edges:
        d = int(cx.maslov[s])
        row = rows_by_degree[d]
        row[s] = row.get(s, 0) ^ (1 << local[t])
    rank = {d: gf2_rank(list(rows.values())) for d, rows in rows_by_degree.items()}
    return {
        d: c - rank.get(d, 0) - rank.get(d + 1, 0)
        for d, c in counts.items()
        if c - rank.get(d, 0) - rank.get(d + 1, 0)
    }


def homology_dims(cx: TildeComplex, threads: int = 1) -> BigradedDims:
    slices = cx.slices()
    key_of_state = {}
    for key, idx in slices.items():
        for s in idx.tolist():
            key_of_state[s] = key
    edges_by_slice: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
    for s, t in zip(cx.src.tolist(), cx.dst.tolist()):
        edges_by_slice[key_of_state[s]].append((s, t))
    keys = sorted(slices)

    def work(key):
        return key, _slice_dims(cx, slices[key], edges_by_slice.get(key, []))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, keys))
    else:
        results = [work(k) for k in keys]
    dims: BigradedDims = {}
    for key, by_degree in results:
        for d, c in by_degree.items():
            dims[(d, key)] = c
    return dict(sorted(dims.items()))


def tilde_homology(g: GridDiagram, max_n: int = DEFAULT_MAX_HOMOLOGY_N, threads: int = 1) -> BigradedDims:
    """Bigraded dimensions of the homology of the tilde complex."""
    return homology_dims(tilde_differential(g, max_n=max_n), threads=threads)


@dataclass(frozen=True)
class PoincarePoly:
    """Generating polynomial of bigraded dimensions.

    Stored as a Laurent polynomial in ``mu + 1`` variables: the first is the
    Maslov variable ``q``, the rest are the Alexander variables.
    """

    poly: LaurentPoly
    mu: int

    @classmethod
    def from_dims(cls, dims: BigradedDims, mu: int) -> "PoincarePoly":
        terms = {(2 * d,) + tuple(a): c for (d, a), c in dims.items() if c}
        return cls(LaurentPoly(terms, mu + 1), mu)

    def dims(self) -> BigradedDims:
        out = {}
        for e, c in self.poly.items():
            out[(e[0] // 2, tuple(e[1:]))] = c
        return dict(sorted(out.items()))

    @property
    def total_dim(self) -> int:
        return sum(c for _, c in self.poly.items())

    def euler(self) -> LaurentPoly:
        """Specialize q = -1."""
        terms: dict[tuple[int, ...], int] = {}
        for e, c in self.poly.items():
            key = tuple(e[1:])
            terms[key] = terms.get(key, 0) + (-1) ** ((e[0] // 2) % 2) * c
        return LaurentPoly(terms, self.mu)

    def to_json(self) -> list[dict]:
        return dims_to_json(self.dims())

    def __str__(self) -> str:
        from ..laurent import to_text

        return to_text(self.poly, ["q"] + [f"t{k + 1}" for k in range(self.mu)])


def dims_to_json(dims: BigradedDims) -> list[dict]:
    return [
        {"maslov": d, "alexander": [format_half(a) for a in s], "dim": c}
        for (d, s), c in sorted(dims.items())
    ]


def euler_of_dims(dims: BigradedDims, mu: int) -> LaurentPoly:
    return PoincarePoly.from_dims(dims, mu).euler()


def tensor_factor(comp: ComponentMap) -> LaurentPoly:
    """``prod_k (1 + q^-1 t_k^-1)^(n_k - 1)`` in the Poincare variables."""
    mu = comp.mu
    factors = []
    for k, nk in enumerate(comp.sizes):
        e = [0] * (mu + 1)
        e[0] = -2
        e[k + 1] = -2
        v = LaurentPoly.one(mu + 1) + LaurentPoly.monomial(e)
        factors.append(v ** (nk - 1))
    return product(factors, mu + 1)


def hat_from_tilde(p: PoincarePoly, comp: ComponentMap) -> PoincarePoly:
    """Strip the ``V_k^(n_k - 1)`` tensor factors; raises NotDivisible."""
    return PoincarePoly(divide_exact(p.poly, tensor_factor(comp)), p.mu)
