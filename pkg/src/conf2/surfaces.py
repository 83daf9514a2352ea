"""Mod-2 cohomology rings of closed surfaces and of their squares.

A surface ring is a graded F2 algebra concentrated in degrees 0..2 with
an explicit multiplication table.  The square carries the coordinate
swap and the diagonal class, the degree-2 element that generates the
image of the diagonal pushforward; it is computed from dual bases under
the intersection pairing, never copied in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .gf2 import Mat2, invert

__all__ = [
    "SurfaceKind",
    "Element",
    "GradedAlgebra",
    "KunnethAlgebra",
    "build_surface_ring",
    "cup_product",
    "build_kunneth",
    "swap_involution",
    "diagonal_class",
]


@dataclass(frozen=True)
class SurfaceKind:
    """Homeomorphism type of a closed surface.

    family is one of "sphere", "orientable", "nonorientable"; param is
    the genus or the crosscap count (0 for the sphere).
    """

    family: str
    param: int = 0

    def __post_init__(self):
        if self.family == "sphere":
            if self.param != 0:
                raise ValueError("sphere takes no parameter")
        elif self.family == "orientable":
            if self.param < 1:
                raise ValueError("orientable genus must be at least 1")
        elif self.family == "nonorientable":
            if self.param < 1:
                raise ValueError("crosscap count must be at least 1")
        else:
            raise ValueError(f"unknown surface family: {self.family!r}")

    @staticmethod
    def sphere() -> "SurfaceKind":
        return SurfaceKind("sphere", 0)

    @staticmethod
    def orientable(genus: int) -> "SurfaceKind":
        return SurfaceKind("orientable", genus)

    @staticmethod
    def nonorientable(crosscaps: int) -> "SurfaceKind":
        return SurfaceKind("nonorientable", crosscaps)

    @property
    def euler(self) -> int:
        if self.family == "sphere":
            return 2
        if self.family == "orientable":
            return 2 - 2 * self.param
        return 2 - self.param

    @property
    def is_orientable(self) -> bool:
        return self.family != "nonorientable"

    @property
    def label(self) -> str:
        if self.family == "sphere":
            return "sphere"
        return f"{self.family}:{self.param}"

    @staticmethod
    def from_label(text: str) -> "SurfaceKind":
        if text == "sphere":
            return SurfaceKind.sphere()
        head, sep, tail = text.partition(":")
        if sep and head in ("orientable", "nonorientable"):
            try:
                return SurfaceKind(head, int(tail))
            except ValueError as exc:
                raise ValueError(f"bad surface label: {text!r}") from exc
        raise ValueError(f"bad surface label: {text!r}")


class Element:
    """Homogeneous element: a degree plus a coefficient vector."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        self.degree = degree
        self.coeffs = np.asarray(coeffs, dtype=np.uint8) & 1

    def __add__(self, other: "Element") -> "Element":
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degrees")
        return Element(self.degree, self.coeffs ^ other.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        raise TypeError("Element is not hashable")

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __repr__(self) -> str:
        return f"Element(degree={self.degree}, coeffs={self.coeffs.tolist()})"


class GradedAlgebra:
    """Graded-commutative F2 algebra with a named basis in each degree.

    Degrees above the top are not represented; products landing there
    are zero by convention.
    """

    def __init__(self, basis: list[list[str]], mult: Mapping[tuple[int, int, int, int], np.ndarray]):
        self.basis = [list(names) for names in basis]
        self.mult = {k: np.asarray(v, dtype=np.uint8) & 1 for k, v in mult.items()}
        self.index = [
            {name: i for i, name in enumerate(names)} for names in self.basis
        ]
        self._check_table()

    # -- structure ------------------------------------------------------

    @property
    def top_degree(self) -> int:
        return len(self.basis) - 1

    def dim(self, q: int) -> int:
        if 0 <= q <= self.top_degree:
            return len(self.basis[q])
        return 0

    def names(self, q: int) -> list[str]:
        if 0 <= q <= self.top_degree:
            return self.basis[q]
        return []

    def dims(self) -> list[int]:
        return [self.dim(q) for q in range(self.top_degree + 1)]

    # -- elements -------------------------------------------------------

    def zero(self, degree: int) -> Element:
        return Element(degree, np.zeros(self.dim(degree), dtype=np.uint8))

    def basis_element(self, degree: int, i: int) -> Element:
        v = np.zeros(self.dim(degree), dtype=np.uint8)
        v[i] = 1
        return Element(degree, v)

    def element(self, degree: int, names: Iterable[str]) -> Element:
        v = np.zeros(self.dim(degree), dtype=np.uint8)
        for name in names:
            v[self.index[degree][name]] ^= 1
        return Element(degree, v)

    def unit(self) -> Element:
        return self.basis_element(0, 0)

    def describe(self, x: Element) -> str:
        names = [self.basis[x.degree][i] for i in np.nonzero(x.coeffs)[0]]
        return " + ".join(names) if names else "0"

    # -- multiplication ---------------------------------------------------

    def mul(self, x: Element, y: Element) -> Element:
        deg = x.degree + y.degree
        out = np.zeros(self.dim(deg), dtype=np.uint8)
        if deg <= self.top_degree:
            for i in np.nonzero(x.coeffs)[0]:
                for j in np.nonzero(y.coeffs)[0]:
                    out ^= self.mult[(x.degree, int(i), y.degree, int(j))]
        return Element(deg, out)

    # -- validation -------------------------------------------------------

    def _check_table(self) -> None:
        if self.dim(0) != 1:
            raise ValueError("expected a one-dimensional degree 0")
        for (p, i, q, j), vec in self.mult.items():
            if vec.shape != (self.dim(p + q),):
                raise ValueError("multiplication table entry has the wrong shape")
        for p in range(self.top_degree + 1):
            for q in range(self.top_degree + 1 - p):
                for i in range(self.dim(p)):
                    for j in range(self.dim(q)):
                        if (p, i, q, j) not in self.mult:
                            raise ValueError("multiplication table is incomplete")
                        # commutativity holds on the nose in characteristic 2
                        if not np.array_equal(
                            self.mult[(p, i, q, j)], self.mult[(q, j, p, i)]
                        ):
                            raise ValueError("multiplication table is not commutative")
        for q in range(self.top_degree + 1):
            for j in range(self.dim(q)):
                if not np.array_equal(
                    self.mult[(0, 0, q, j)], self.basis_element(q, j).coeffs
                ):
                    raise ValueError("degree-0 generator is not a unit")

    def check_associative(self) -> None:
        """Exhaustive associativity check over basis triples."""
        top = self.top_degree
        for p in range(top + 1):
            for q in range(top + 1):
                for r in range(top + 1):
                    if p + q + r > top:
                        continue
                    for i in range(self.dim(p)):
                        x = self.basis_element(p, i)
                        for j in range(self.dim(q)):
                            y = self.basis_element(q, j)
                            for k in range(self.dim(r)):
                                z = self.basis_element(r, k)
                                left = self.mul(self.mul(x, y), z)
                                right = self.mul(x, self.mul(y, z))
                                if left != right:
                                    raise RuntimeError("multiplication is not associative")


def build_surface_ring(kind: SurfaceKind) -> GradedAlgebra:
    """Cohomology ring of a closed surface with F2 coefficients.

    Degree-1 bases: none for the sphere; a1..ag, b1..bg for the
    orientable surface of genus g (with ai bi = u the only nonzero
    degree-1 products); w1..wk for the nonorientable surface with k
    crosscaps (with wi wi = u).
    """
    if kind.family == "sphere":
        deg1: list[str] = []
    elif kind.family == "orientable":
        g = kind.param
        deg1 = [f"a{i}" for i in range(1, g + 1)] + [f"b{i}" for i in range(1, g + 1)]
    else:
        deg1 = [f"w{i}" for i in range(1, kind.param + 1)]
    basis = [["1"], deg1, ["u"]]
    n1 = len(deg1)
    u = np.array([1], dtype=np.uint8)
    zero2 = np.zeros(1, dtype=np.uint8)
    mult: dict[tuple[int, int, int, int], np.ndarray] = {}
    mult[(0, 0, 0, 0)] = np.array([1], dtype=np.uint8)
    for j in range(n1):
        e = np.zeros(n1, dtype=np.uint8)
        e[j] = 1
        mult[(0, 0, 1, j)] = e
        mult[(1, j, 0, 0)] = e.copy()
    mult[(0, 0, 2, 0)] = u.copy()
    mult[(2, 0, 0, 0)] = u.copy()
    for i in range(n1):
        for j in range(n1):
            if kind.family == "orientable":
                g = kind.param
                paired = (j == i + g) or (i == j + g)
            else:
                paired = i == j
            mult[(1, i, 1, j)] = u.copy() if paired else zero2.copy()
    return GradedAlgebra(basis, mult)


def cup_product(algebra: GradedAlgebra, x: Element, y: Element) -> Element:
    """Product in the given algebra; degree overflow collapses to zero."""
    return algebra.mul(x, y)


class KunnethAlgebra(GradedAlgebra):
    """Tensor square of a surface ring with its swap involution.

    Basis elements in degree n are the pairs x|y with deg x + deg y = n,
    ordered by the degree of the left factor, then by the two factor
    indices.  The swap exchanges the factors; the diagonal class is the
    degree-2 element built from dual bases under the pairing of the
    factor ring.
    """

    def __init__(self, factor: GradedAlgebra):
        self.factor = factor
        top = 2 * factor.top_degree
        pairs: list[list[tuple[int, int, int, int]]] = []
        names: list[list[str]] = []
        for n in range(top + 1):
            level: list[tuple[int, int, int, int]] = []
            label: list[str] = []
            for p in range(n + 1):
                q = n - p
                for i in range(factor.dim(p)):
                    for j in range(factor.dim(q)):
                        level.append((p, i, q, j))
                        label.append(f"{factor.names(p)[i]}|{factor.names(q)[j]}")
            pairs.append(level)
            names.append(label)
        self.pairs = pairs
        self.pair_index = [
            {pair: k for k, pair in enumerate(level)} for level in pairs
        ]
        mult = self._build_mult(factor, names)
        super().__init__(names, mult)
        self.swap_perm = self._build_swaps()
        self.diagonal: Element | None = None

    def _build_mult(self, factor, names):
        top = len(names) - 1
        mult: dict[tuple[int, int, int, int], np.ndarray] = {}
        for m in range(top + 1):
            for n in range(top + 1 - m):
                for i, (p1, i1, p2, i2) in enumerate(self.pairs[m]):
                    for j, (q1, j1, q2, j2) in enumerate(self.pairs[n]):
                        out = np.zeros(len(names[m + n]), dtype=np.uint8)
                        left = factor.mul(
                            factor.basis_element(p1, i1), factor.basis_element(q1, j1)
                        )
                        right = factor.mul(
                            factor.basis_element(p2, i2), factor.basis_element(q2, j2)
                        )
                        for s in np.nonzero(left.coeffs)[0]:
                            for t in np.nonzero(right.coeffs)[0]:
                                key = (left.degree, int(s), right.degree, int(t))
                                out[self.pair_index[m + n][key]] ^= 1
                        mult[(m, i, n, j)] = out
        return mult

    def _build_swaps(self) -> list[np.ndarray]:
        perms = []
        for n, level in enumerate(self.pairs):
            perm = np.empty(len(level), dtype=np.int64)
            for k, (p, i, q, j) in enumerate(level):
                perm[k] = self.pair_index[n][(q, j, p, i)]
            if len(level) and not np.array_equal(perm[perm], np.arange(len(level))):
                raise RuntimeError("swap is not an involution")
            perms.append(perm)
        return perms

    def cross(self, x: Element, y: Element) -> Element:
        """External product of two factor-ring elements."""
        deg = x.degree + y.degree
        out = np.zeros(self.dim(deg), dtype=np.uint8)
        for i in np.nonzero(x.coeffs)[0]:
            for j in np.nonzero(y.coeffs)[0]:
                out[self.pair_index[deg][(x.degree, int(i), y.degree, int(j))]] ^= 1
        return Element(deg, out)

    def swap(self, x: Element) -> Element:
        perm = self.swap_perm[x.degree]
        out = np.zeros_like(x.coeffs)
        out[perm] = x.coeffs
        return Element(x.degree, out)

    def swap_matrix(self, degree: int) -> Mat2:
        n = self.dim(degree)
        dense = np.zeros((n, n), dtype=np.uint8)
        perm = self.swap_perm[degree]
        dense[perm, np.arange(n)] = 1
        return Mat2.from_dense(dense)


def swap_involution(square: KunnethAlgebra, x: Element) -> Element:
    """Apply the coordinate swap of the square to an element."""
    return square.swap(x)


def diagonal_class(square: KunnethAlgebra) -> Element:
    """Diagonal class of the square, from dual bases under the pairing.

    For each degree p, pair the degree-p basis with the complementary
    degree via the coefficient of the top class in the product; the sum
    of e x (dual of e) over all basis elements is the diagonal class.
    A degenerate pairing raises ValueError.
    """
    ring = square.factor
    top = ring.top_degree
    if ring.dim(top) != 1:
        raise ValueError("top degree of the factor ring must be one-dimensional")
    out = np.zeros(square.dim(top), dtype=np.uint8)
    for p in range(top + 1):
        q = top - p
        dp, dq = ring.dim(p), ring.dim(q)
        if dp != dq:
            raise ValueError("pairing is degenerate: mismatched dimensions")
        if dp == 0:
            continue
        pairing = np.zeros((dp, dq), dtype=np.uint8)
        for i in range(dp):
            for j in range(dq):
                prod = ring.mul(ring.basis_element(p, i), ring.basis_element(q, j))
                pairing[i, j] = prod.coeffs[0]
        try:
            inv = invert(Mat2.from_dense(pairing))
        except ValueError as exc:
            raise ValueError("pairing is degenerate") from exc
        duals = inv.to_dense().T  # row i: coefficients of the dual of basis element i
        for i in range(dp):
            for j in range(dq):
                if duals[i, j]:
                    out[square.pair_index[top][(p, i, q, j)]] ^= 1
    return Element(top, out)


def build_kunneth(ring: GradedAlgebra) -> KunnethAlgebra:
    """Square of a surface ring, with swap and diagonal class attached."""
    square = KunnethAlgebra(ring)
    diag = diagonal_class(square)
    if square.swap(diag) != diag:
        raise RuntimeError("diagonal class is not swap-invariant")
    square.diagonal = diag
    return square
