"""Cohomology of the ordered two-point configuration space, symbolically.

Deleting the diagonal from the square M x M kills, in each degree, the
image of the pushforward from the diagonal copy of M: the span of the
classes (x cross 1) d where d is the diagonal class.  The quotient by
that span, carrying the swap pushed through a fixed section, is
H^q(Conf(2,M)); each degree then splits into trivial and free modules
over the group algebra of the swap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import (
    Mat2,
    Subspace,
    quotient_map_with_section,
    rank,
    subspace_equal,
)
from .surfaces import (
    KunnethAlgebra,
    SurfaceKind,
    build_kunneth,
    build_surface_ring,
    diagonal_class,
)

__all__ = [
    "RepDecomposition",
    "ConfDegree",
    "ConfCohomology",
    "gysin_kernel",
    "kernel_ideal_check",
    "conf_cohomology",
    "rep_decompose",
]

TOP_DEGREE = 4  # Conf(2, surface) is an open 4-manifold


@dataclass(frozen=True)
class RepDecomposition:
    """Multiplicities of trivial (t) and free (f) swap-module summands."""

    t: int
    f: int

    @property
    def dim(self) -> int:
        return self.t + 2 * self.f


@dataclass(frozen=True)
class ConfDegree:
    """One cohomology degree of the configuration space.

    projection maps the ambient degree of the square onto the quotient;
    induced_swap is the swap in the chosen quotient coordinates.
    """

    q: int
    dim: int
    projection: Mat2
    induced_swap: Mat2
    decomposition: RepDecomposition


@dataclass(frozen=True)
class ConfCohomology:
    kind: SurfaceKind
    square: KunnethAlgebra
    degrees: tuple[ConfDegree, ...]

    def dims(self) -> list[int]:
        return [d.dim for d in self.degrees]

    def decompositions(self) -> list[RepDecomposition]:
        return [d.decomposition for d in self.degrees]

    def euler(self) -> int:
        return sum((-1) ** d.q * d.dim for d in self.degrees)


def _diagonal(square: KunnethAlgebra):
    if square.diagonal is not None:
        return square.diagonal
    return diagonal_class(square)


def gysin_kernel(square: KunnethAlgebra, q: int) -> Subspace:
    """Kernel of restriction to the configuration space in degree q.

    The span of (x cross 1) d with x running over a basis of the factor
    ring in degree q-2; the zero subspace below degree 2.
    """
    if not 0 <= q <= TOP_DEGREE:
        raise ValueError(f"degree out of range: {q}")
    ambient = square.dim(q)
    if q < 2:
        return Subspace.zero(ambient)
    ring = square.factor
    d = _diagonal(square)
    one = ring.unit()
    rows = [
        square.mul(square.cross(ring.basis_element(q - 2, i), one), d).coeffs
        for i in range(ring.dim(q - 2))
    ]
    if not rows:
        return Subspace.zero(ambient)
    return Subspace.spanned_by(ambient, rows)


def kernel_ideal_check(square: KunnethAlgebra, q: int) -> bool:
    """True iff the restriction kernel equals the ideal slice (d) in degree q."""
    if not 0 <= q <= TOP_DEGREE:
        raise ValueError(f"degree out of range: {q}")
    left = gysin_kernel(square, q)
    ambient = square.dim(q)
    if q < 2:
        return left.dim == 0
    d = _diagonal(square)
    rows = [
        square.mul(square.basis_element(q - 2, j), d).coeffs
        for j in range(square.dim(q - 2))
    ]
    right = Subspace.spanned_by(ambient, rows) if rows else Subspace.zero(ambient)
    return subspace_equal(left, right)


def rep_decompose(dim: int, swap: Mat2) -> RepDecomposition:
    """Split a swap module into t trivial and f free summands.

    f is the rank of (identity + swap); t is what remains.  The swap
    must be an involution.
    """
    if swap.shape != (dim, dim):
        raise ValueError("swap matrix does not match the stated dimension")
    if swap.mul(swap) != Mat2.identity(dim):
        raise ValueError("swap is not an involution")
    f = rank(swap ^ Mat2.identity(dim))
    t = dim - 2 * f
    if t < 0:
        raise RuntimeError("trivial multiplicity came out negative")
    return RepDecomposition(t=t, f=f)


def _apply_swap_rows(square: KunnethAlgebra, q: int, rows: Mat2) -> Mat2:
    dense = rows.to_dense()
    out = np.zeros_like(dense)
    out[:, square.swap_perm[q]] = dense
    return Mat2.from_dense(out)


def conf_cohomology(kind: SurfaceKind) -> ConfCohomology:
    """Per-degree quotients of the square with the induced swap action.

    Raises RuntimeError when internal consistency fails: a kernel that
    is not swap-stable, a non-involutive induced swap, or a nonzero
    degree-4 quotient.
    """
    ring = build_surface_ring(kind)
    square = build_kunneth(ring)
    degrees = []
    for q in range(TOP_DEGREE + 1):
        ambient = square.dim(q)
        ker = gysin_kernel(square, q)
        if ker.dim:
            mapped = _apply_swap_rows(square, q, ker.basis)
            if not subspace_equal(ker, Subspace.spanned_by(ambient, mapped)):
                raise RuntimeError(f"restriction kernel is not swap-stable in degree {q}")
        proj, section, qdim = quotient_map_with_section(ambient, ker)
        sigma = square.swap_matrix(q)
        induced = proj.mul(sigma).mul(section)
        if induced.mul(induced) != Mat2.identity(qdim):
            raise RuntimeError(f"induced swap is not an involution in degree {q}")
        decomposition = rep_decompose(qdim, induced)
        degrees.append(ConfDegree(q, qdim, proj, induced, decomposition))
    if degrees[TOP_DEGREE].dim != 0:
        raise RuntimeError("top-degree quotient failed to vanish")
    return ConfCohomology(kind=kind, square=square, degrees=tuple(degrees))
