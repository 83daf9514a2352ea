"""Equivariant cohomology of a free involution, its polynomial action, towers.

The homotopy quotient of a complex with free involution is modeled by a
bicomplex: one copy of the cochains per resolution level, the cochain
differential one way and the norm (one plus the involution) the other.
Collapsing to the total complex gives H*(quotient); the degree shift
between resolution levels realizes multiplication by the degree-one
polynomial generator, and composite ranks of that action cut the module
into truncated polynomial towers, whose head tower measures the height.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cells import CellComplex, cohomology_f2
from .gf2 import Mat2, rank, solve_many

__all__ = [
    "EquivariantComplex",
    "AlphaModule",
    "Tower",
    "SWHeight",
    "equivariant_cochain_complex",
    "equivariant_cohomology_with_alpha",
    "module_decompose",
    "sw_height",
]


class EquivariantComplex:
    """Total complex of the resolution-by-cochain bicomplex.

    Degree n holds one cochain block per q with q <= min(top, n),
    ordered by ascending q; the block at q sits at resolution level
    n - q.  The total differential carries a block to its coboundary
    (same level, q+1) plus its norm image (next level, same q).  The
    level shift embeds T^n into T^{n+1} blockwise and realizes the
    polynomial action.
    """

    def __init__(self, base: CellComplex, window: int):
        if window < 4:
            raise ValueError("window must be at least 4")
        if base.involution is None:
            raise ValueError("equivariant complex needs an involution")
        if not base.is_free():
            raise ValueError("involution has a fixed cell")
        self.base = base
        self.window = window
        top = base.top_dim
        self.block_dims = [base.n_cells(q) for q in range(top + 1)]

        deltas: list[np.ndarray] = []
        norms: list[np.ndarray] = []
        for q in range(top + 1):
            n = self.block_dims[q]
            if q < top:
                deltas.append(base.boundaries[q + 1].to_dense().T)
            else:
                deltas.append(np.zeros((0, n), dtype=np.uint8))
            perm = base.involution[q]
            sigma = np.zeros((n, n), dtype=np.uint8)
            if n:
                sigma[np.arange(n), perm] = 1
            norms.append((sigma ^ np.eye(n, dtype=np.uint8)))

        self.differentials: list[Mat2] = []
        self.shifts: list[Mat2] = []
        for n in range(window + 1):
            src = self._blocks(n)
            tgt = self._blocks(n + 1)
            src_off = self._offsets(src)
            tgt_off = self._offsets(tgt)
            dense = np.zeros((self.total_dim(n + 1), self.total_dim(n)), dtype=np.uint8)
            shift = np.zeros_like(dense)
            for q in src:
                o = src_off[q]
                w = self.block_dims[q]
                t0 = tgt_off[q]
                dense[t0 : t0 + w, o : o + w] = norms[q]
                shift[t0 : t0 + w, o : o + w] = np.eye(w, dtype=np.uint8)
                if q + 1 <= top:
                    d0 = tgt_off[q + 1]
                    dense[d0 : d0 + deltas[q].shape[0], o : o + w] = deltas[q]
            self.differentials.append(Mat2.from_dense(dense))
            self.shifts.append(Mat2.from_dense(shift))
        self.verify()

    def _blocks(self, n: int) -> list[int]:
        return list(range(min(self.base.top_dim, n) + 1))

    def _offsets(self, blocks: list[int]) -> dict[int, int]:
        out = {}
        pos = 0
        for q in blocks:
            out[q] = pos
            pos += self.block_dims[q]
        return out

    def total_dim(self, n: int) -> int:
        return sum(self.block_dims[q] for q in self._blocks(n))

    def verify(self) -> None:
        """Differential squares to zero; the shift is a chain map."""
        for n in range(self.window):
            if not self.differentials[n + 1].mul(self.differentials[n]).is_zero():
                raise RuntimeError(f"total differential fails to square to zero at degree {n}")
            left = self.differentials[n + 1].mul(self.shifts[n])
            right = self.shifts[n + 1].mul(self.differentials[n])
            if left != right:
                raise RuntimeError(f"level shift fails to commute with the differential at degree {n}")


@dataclass(frozen=True)
class Tower:
    """Cyclic summand over the polynomial generator: start degree, length."""

    start: int
    length: int
    truncated: bool = False


@dataclass
class AlphaModule:
    """Graded module: dims per degree, the degree-raising maps, towers."""

    window: int
    dims: list[int]
    alpha_maps: list[Mat2]
    towers: list[Tower] = field(default_factory=list)

    @property
    def euler(self) -> int:
        return sum((-1) ** n * d for n, d in enumerate(self.dims))


@dataclass(frozen=True)
class SWHeight:
    """Largest power of the polynomial generator not killing the unit."""

    value: int
    truncated: bool = False

    def __str__(self) -> str:
        return f">={self.value}" if self.truncated else str(self.value)


def equivariant_cochain_complex(C: CellComplex, window: int = 8) -> EquivariantComplex:
    """Bicomplex total complex for a free involution; window >= 4."""
    return EquivariantComplex(C, window)


def equivariant_cohomology_with_alpha(E: EquivariantComplex) -> AlphaModule:
    """Total cohomology on the window with the shift action and towers."""
    N = E.window
    cells = [[("t", n, i) for i in range(E.total_dim(n))] for n in range(N + 2)]
    boundaries = [Mat2.zeros(0, E.total_dim(0))]
    boundaries.extend(E.differentials[n].transpose() for n in range(N + 1))
    total = CellComplex(cells, boundaries)
    result = cohomology_f2(total, with_involution=False)
    dims = result.dims[: N + 1]

    alpha_maps: list[Mat2] = []
    for n in range(N):
        reps = result.cocycle_basis[n]
        k = reps.rows
        nxt = result.dims[n + 1]
        if k == 0 or nxt == 0:
            alpha_maps.append(Mat2.zeros(nxt, k))
            continue
        # the shift is a blockwise prefix embedding: pad with zeros
        dense = reps.to_dense()
        mapped = np.zeros((k, E.total_dim(n + 1)), dtype=np.uint8)
        mapped[:, : dense.shape[1]] = dense
        delta = E.differentials[n + 1]
        for row in mapped:
            if delta.mul_vec(row).any():
                raise RuntimeError(f"shifted representative is not a cocycle in degree {n}")
        system = Mat2.vstack(
            [result.cocycle_basis[n + 1], result.coboundary_basis[n + 1]]
        ).transpose()
        sols = solve_many(system, Mat2.from_dense(mapped))
        cols = np.zeros((nxt, k), dtype=np.uint8)
        for j, sol in enumerate(sols):
            if sol is None:
                raise RuntimeError(f"shifted representative left the span in degree {n}")
            cols[:, j] = sol[:nxt]
        alpha_maps.append(Mat2.from_dense(cols))

    module = AlphaModule(window=N, dims=dims, alpha_maps=alpha_maps)
    module.towers = module_decompose(module)
    return module


def _rank_lookup(A: AlphaModule):
    N = A.window
    table: dict[tuple[int, int], int] = {}
    for n in range(N + 1):
        table[(n, 0)] = A.dims[n]
        comp: Mat2 | None = None
        for ell in range(1, N - n + 1):
            step = A.alpha_maps[n + ell - 1]
            comp = step if comp is None else step.mul(comp)
            table[(n, ell)] = rank(comp)

    def lookup(n: int, ell: int) -> int:
        if n < 0 or n > N:
            return 0
        return table.get((n, ell), 0)

    return lookup


def module_decompose(A: AlphaModule) -> list[Tower]:
    """Cut the module into towers from composite ranks of the action.

    The count of towers of exact length ell starting in degree n is
    determined by the rank table; a negative count means the maps are
    not the action of a graded module and raises RuntimeError.  Towers
    reaching the window edge carry the truncated flag.
    """
    N = A.window
    r = _rank_lookup(A)
    towers: list[Tower] = []
    for n in range(N + 1):
        for ell in range(1, N - n + 2):
            count = (r(n, ell - 1) - r(n, ell)) - (r(n - 1, ell) - r(n - 1, ell + 1))
            if count < 0:
                raise RuntimeError(
                    f"negative tower count at start {n} length {ell}: inconsistent action maps"
                )
            truncated = n + ell - 1 >= N
            towers.extend(Tower(n, ell, truncated) for _ in range(count))
    for n in range(N + 1):
        covering = sum(1 for t in towers if t.start <= n < t.start + t.length)
        if covering != A.dims[n]:
            raise RuntimeError(f"towers fail to reconstruct the dimension in degree {n}")
    return sorted(towers, key=lambda t: (t.start, t.length))


def sw_height(A: AlphaModule) -> SWHeight:
    """Height of the unit class under the polynomial action."""
    if not A.dims or A.dims[0] != 1:
        raise ValueError("height needs a connected degree zero")
    r = _rank_lookup(A)
    value = max(ell for ell in range(A.window + 1) if r(0, ell) >= 1)
    return SWHeight(value=value, truncated=value == A.window)
