"""Dense exact linear algebra over the two-element field.

Each matrix row is packed into 64-bit words, so a row operation is a
word-parallel XOR.  Elimination loops over pivot columns in Python but
vectorises the row selection and the XOR across all rows with numpy,
which keeps the few-thousand-column matrices produced by this package
well under a second.

Pivot choice is deterministic everywhere: columns are scanned left to
right, candidate rows top to bottom.  Everything downstream (kernel
bases, quotient coordinates, cohomology representatives) inherits that
determinism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Mat2",
    "Subspace",
    "rref",
    "rank",
    "kernel_basis",
    "rank_and_kernel",
    "select_independent_rows",
    "solve_linear",
    "solve_many",
    "invert",
    "quotient_map",
    "quotient_map_with_section",
    "subspace_equal",
]

_ONE = np.uint64(1)


def _word_count(cols: int) -> int:
    return (cols + 63) >> 6


def _pack_dense(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    nw = _word_count(cols)
    if rows == 0 or cols == 0:
        return np.zeros((rows, nw), dtype=np.uint64)
    by = np.packbits(dense.astype(np.uint8) & 1, axis=1, bitorder="little")
    padded = np.zeros((rows, nw * 8), dtype=np.uint8)
    padded[:, : by.shape[1]] = by
    return padded.view(np.uint64)


class Mat2:
    """Matrix over F2 with bit-packed rows.  Treated as immutable once built."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if words is None:
            words = np.zeros((rows, _word_count(cols)), dtype=np.uint64)
        if words.shape != (rows, _word_count(cols)):
            raise ValueError("packed storage has the wrong shape")
        self.words = words

    # -- construction -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat2":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Mat2":
        m = cls(n, n)
        for i in range(n):
            m.words[i, i >> 6] |= _ONE << np.uint64(i & 63)
        return m

    @classmethod
    def from_dense(cls, dense) -> "Mat2":
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array of bits")
        return cls(arr.shape[0], arr.shape[1], _pack_dense(arr))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Mat2":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        dense = np.array(rows, dtype=np.uint8).reshape(len(rows), cols)
        return cls.from_dense(dense)

    @classmethod
    def vstack(cls, mats: Iterable["Mat2"]) -> "Mat2":
        mats = list(mats)
        if not mats:
            raise ValueError("nothing to stack")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column mismatch")
        words = np.vstack([m.words for m in mats])
        return cls(sum(m.rows for m in mats), cols, words)

    @classmethod
    def hstack(cls, left: "Mat2", right: "Mat2") -> "Mat2":
        if left.rows != right.rows:
            raise ValueError("row mismatch")
        dense = np.hstack([left.to_dense(), right.to_dense()])
        return cls.from_dense(dense)

    # -- access -------------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & _ONE)

    def row_dense(self, i: int) -> np.ndarray:
        return self.to_dense_rows([i])[0]

    def to_dense_rows(self, idx) -> np.ndarray:
        idx = list(idx)
        sub = Mat2(len(idx), self.cols, self.words[idx].copy())
        return sub.to_dense()

    def to_dense(self) -> np.ndarray:
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=np.uint8)
        bits = np.unpackbits(self.words.view(np.uint8), axis=1, bitorder="little")
        return np.ascontiguousarray(bits[:, : self.cols])

    def take_rows(self, idx) -> "Mat2":
        idx = list(idx)
        return Mat2(len(idx), self.cols, self.words[idx].copy())

    def copy(self) -> "Mat2":
        return Mat2(self.rows, self.cols, self.words.copy())

    def is_zero(self) -> bool:
        return not self.words.any()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    def __hash__(self):
        raise TypeError("Mat2 is not hashable")

    def __repr__(self) -> str:
        return f"Mat2({self.rows}x{self.cols})"

    # -- arithmetic ---------------------------------------------------

    def __xor__(self, other: "Mat2") -> "Mat2":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Mat2(self.rows, self.cols, self.words ^ other.words)

    def transpose(self) -> "Mat2":
        return Mat2.from_dense(self.to_dense().T)

    def mul(self, other: "Mat2") -> "Mat2":
        """Matrix product over F2."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = np.zeros((self.rows, other.words.shape[1]), dtype=np.uint64)
        if self.rows and self.cols and other.cols:
            for j in range(self.cols):
                mask = ((self.words[:, j >> 6] >> np.uint64(j & 63)) & _ONE).astype(bool)
                if mask.any():
                    out[mask] ^= other.words[j]
        return Mat2(self.rows, other.cols, out)

    def mul_vec(self, vec) -> np.ndarray:
        """Matrix times column vector; returns a 0/1 uint8 vector."""
        v = np.asarray(vec, dtype=np.uint8).reshape(-1)
        if v.shape[0] != self.cols:
            raise ValueError("length mismatch")
        if self.rows == 0:
            return np.zeros(0, dtype=np.uint8)
        if self.cols == 0:
            return np.zeros(self.rows, dtype=np.uint8)
        vw = _pack_dense(v.reshape(1, -1))[0]
        x = self.words & vw
        for s in (32, 16, 8, 4, 2, 1):
            x = x ^ (x >> np.uint64(s))
        bits = (x & _ONE).astype(np.uint8)
        return (bits.sum(axis=1) & 1).astype(np.uint8)


def rref(m: Mat2) -> tuple[Mat2, list[int]]:
    """Reduced row-echelon form and the ordered list of pivot columns.

    Deterministic: the pivot for each column is the first not-yet-used row
    with a nonzero entry, scanning columns left to right.
    """
    w = m.words.copy()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        wi = c >> 6
        sh = np.uint64(c & 63)
        col = (w[r:, wi] >> sh) & _ONE
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            w[[r, p]] = w[[p, r]]
        mask = ((w[:, wi] >> sh) & _ONE).astype(bool)
        mask[r] = False
        if mask.any():
            w[mask] ^= w[r]
        pivots.append(c)
        r += 1
    return Mat2(m.rows, m.cols, w), pivots


def rank(m: Mat2) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat2) -> Mat2:
    """Basis of {v : m v = 0}, one row per free column of the rref."""
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    out = np.zeros((len(free), m.cols), dtype=np.uint8)
    if free:
        out[np.arange(len(free)), free] = 1
        if pivots:
            Rd = R.to_dense()
            out[:, pivots] = Rd[: len(pivots), :][:, free].T
    return Mat2.from_dense(out)


def rank_and_kernel(m: Mat2) -> tuple[int, "Subspace"]:
    R, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    out = np.zeros((len(free), m.cols), dtype=np.uint8)
    if free:
        out[np.arange(len(free)), free] = 1
        if pivots:
            Rd = R.to_dense()
            out[:, pivots] = Rd[: len(pivots), :][:, free].T
    return len(pivots), Subspace(m.cols, Mat2.from_dense(out))


def select_independent_rows(m: Mat2) -> list[int]:
    """Greedy independent subset of the rows, earlier rows preferred.

    Swap-free elimination: for each column (left to right) the first
    still-unused row with a nonzero entry becomes a pivot and is XORed
    into every other row carrying that bit.  Rows of an echelon prefix
    are therefore always kept, which is what basis completion needs.
    """
    w = m.words.copy()
    used = np.zeros(m.rows, dtype=bool)
    picked: list[int] = []
    for c in range(m.cols):
        if len(picked) == m.rows:
            break
        wi = c >> 6
        sh = np.uint64(c & 63)
        col = ((w[:, wi] >> sh) & _ONE).astype(bool)
        cand = np.nonzero(col & ~used)[0]
        if cand.size == 0:
            continue
        p = int(cand[0])
        used[p] = True
        picked.append(p)
        col[p] = False
        if col.any():
            w[col] ^= w[p]
    return sorted(picked)


def solve_linear(m: Mat2, b) -> np.ndarray | None:
    """One solution of m x = b with free variables set to zero, or None."""
    bv = np.asarray(b, dtype=np.uint8).reshape(-1)
    if bv.shape[0] != m.rows:
        raise ValueError("right-hand side has the wrong length")
    sols = solve_many(m, Mat2.from_dense(bv.reshape(1, -1)))
    return sols[0]


def solve_many(m: Mat2, rhs: Mat2) -> list[np.ndarray | None]:
    """Solve m x = b for every row b of rhs with a single elimination."""
    if rhs.cols != m.rows:
        raise ValueError("right-hand sides have the wrong length")
    aug = Mat2.hstack(m, rhs.transpose())
    R, piv = rref(aug)
    Rd = R.to_dense()
    zero_rows = [i for i, p in enumerate(piv) if p >= m.cols]
    main = [(i, p) for i, p in enumerate(piv) if p < m.cols]
    out: list[np.ndarray | None] = []
    for k in range(rhs.rows):
        c = m.cols + k
        if any(Rd[i, c] for i in zero_rows):
            out.append(None)
            continue
        x = np.zeros(m.cols, dtype=np.uint8)
        for i, p in main:
            x[p] = Rd[i, c]
        out.append(x)
    return out


def invert(m: Mat2) -> Mat2:
    """Inverse of a square matrix; raises ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be inverted")
    n = m.rows
    R, piv = rref(Mat2.hstack(m, Mat2.identity(n)))
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise ValueError("matrix is singular")
    return Mat2.from_dense(R.to_dense()[:, n:])


@dataclass(frozen=True)
class Subspace:
    """Row span of an independent basis inside F2^ambient_dim."""

    ambient_dim: int
    basis: Mat2

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis width does not match the ambient dimension")

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Mat2.zeros(0, ambient_dim))

    @staticmethod
    def spanned_by(ambient_dim: int, vectors) -> "Subspace":
        """Subspace spanned by arbitrary (possibly dependent) row vectors."""
        m = vectors if isinstance(vectors, Mat2) else Mat2.from_rows(vectors, cols=ambient_dim)
        if m.cols != ambient_dim:
            raise ValueError("vector width does not match the ambient dimension")
        R, piv = rref(m)
        return Subspace(ambient_dim, R.take_rows(range(len(piv))))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.uint8).reshape(1, -1)
        if v.shape[1] != self.ambient_dim:
            raise ValueError("vector lives in the wrong ambient space")
        stacked = Mat2.vstack([self.basis, Mat2.from_dense(v)])
        return rank(stacked) == rank(self.basis)

    def validate(self) -> None:
        if rank(self.basis) != self.basis.rows:
            raise RuntimeError("subspace basis rows are dependent")


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    """True iff the two row spans coincide."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    ra = rank(a.basis)
    rb = rank(b.basis)
    if ra != rb:
        return False
    return rank(Mat2.vstack([a.basis, b.basis])) == ra


def quotient_map(ambient_dim: int, sub: Subspace) -> tuple[Mat2, int]:
    """Projection F2^ambient -> F2^quotient with kernel exactly `sub`."""
    proj, _, qdim = quotient_map_with_section(ambient_dim, sub)
    return proj, qdim


def quotient_map_with_section(ambient_dim: int, sub: Subspace) -> tuple[Mat2, Mat2, int]:
    """Quotient projection plus the section picking non-pivot coordinates.

    The rref of the subspace basis fixes pivot columns; the remaining
    coordinates represent the quotient.  The section maps quotient basis
    vector k to the ambient basis vector at the k-th non-pivot column,
    so projection . section = identity.
    """
    if sub.ambient_dim != ambient_dim:
        raise ValueError("subspace does not match the ambient dimension")
    R, piv = rref(sub.basis)
    if len(piv) != sub.basis.rows:
        raise ValueError("subspace basis rows are dependent")
    pivset = set(piv)
    nonpiv = [c for c in range(ambient_dim) if c not in pivset]
    qdim = len(nonpiv)
    proj = np.zeros((qdim, ambient_dim), dtype=np.uint8)
    if qdim:
        proj[np.arange(qdim), nonpiv] = 1
        if piv:
            Rd = R.to_dense()
            proj[:, piv] = Rd[: len(piv), :][:, nonpiv].T
    section = np.zeros((ambient_dim, qdim), dtype=np.uint8)
    if qdim:
        section[nonpiv, np.arange(qdim)] = 1
    return Mat2.from_dense(proj), Mat2.from_dense(section), qdim
