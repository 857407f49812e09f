"""Exact linear algebra on constant rational matrices.

Matrices are numpy object arrays holding ``fractions.Fraction`` entries.
Everything here is plain Gaussian elimination, which is all the ansatz
constructions need at the sizes involved (a few dozen rows at most).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def to_fraction(x) -> Fraction:
    """Convert an int, Fraction or rational string such as ``"3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not np.isfinite(x):
            raise ValueError(f"non-finite scalar {x!r}")
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


def matrix(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a 2-D object array of Fractions.

    ``shape`` is needed for empty matrices, whose size cannot be read off
    nested lists.
    """
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        out = np.empty(data.shape, dtype=object)
        for idx, x in np.ndenumerate(data):
            out[idx] = to_fraction(x)
    else:
        arr = np.array(data, dtype=object)
        if arr.size == 0:
            if shape is None:
                shape = arr.shape if arr.ndim == 2 else (0, 0)
            return zeros(*shape)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got {arr.ndim} dimensions")
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = to_fraction(x)
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {out.shape}")
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def normalize(a: np.ndarray) -> np.ndarray:
    """Return a copy whose entries are all Fractions (matmul may yield ints)."""
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = to_fraction(x)
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return normalize(a @ b)


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def row_echelon(a: np.ndarray) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in normalize(a)]
    ncols = a.shape[1]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(row_echelon(a)[1])


def det(a: np.ndarray) -> Fraction:
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in normalize(a)]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        p = rows[c][c]
        result *= p
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def is_nonsingular(a: np.ndarray) -> bool:
    """Square and of full rank; the empty 0x0 matrix counts as nonsingular."""
    n, m = a.shape
    return n == m and rank(a) == n


def nullspace(a: np.ndarray) -> list[np.ndarray]:
    """Basis of the right nullspace as a list of column vectors (n x 1)."""
    ncols = a.shape[1]
    if a.shape[0] == 0:
        rows, pivots = [], []
    else:
        rows, pivots = row_echelon(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(ncols, 1)
        v[f, 0] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p, 0] = -rows[r][f]
        basis.append(v)
    return basis


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution X of A X = B, or None when the system is inconsistent."""
    n, m = a.shape
    aug = np.hstack([normalize(a), normalize(b)]) if n else zeros(0, m + b.shape[1])
    rows, pivots = row_echelon(aug) if n else ([], [])
    if any(p >= m for p in pivots):
        return None
    x = zeros(m, b.shape[1])
    for r, p in enumerate(pivots):
        for j in range(b.shape[1]):
            x[p, j] = rows[r][m + j]
    return x


def inverse(a: np.ndarray) -> np.ndarray:
    if not is_nonsingular(a):
        raise ValueError("matrix is singular")
    x = solve(a, eye(a.shape[0]))
    assert x is not None
    return x


def block(a: np.ndarray, i: int, j: int, m: int, n: int) -> np.ndarray:
    """Block (i, j), 0-based, of a matrix partitioned into m x n blocks."""
    return a[i * m:(i + 1) * m, j * n:(j + 1) * n]


def assemble(blocks: list[list[np.ndarray]]) -> np.ndarray:
    """Like ``np.block`` but tolerant of empty blocks."""
    heights = [max((b.shape[0] for b in row), default=0) for row in blocks]
    widths = [b.shape[1] for b in blocks[0]] if blocks else []
    out = zeros(sum(heights), sum(widths))
    r = 0
    for row, h in zip(blocks, heights):
        if len(row) != len(widths):
            raise ValueError("ragged block layout")
        c = 0
        for b, w in zip(row, widths):
            if b.shape != (h, w):
                raise ValueError(f"block of shape {b.shape} does not fit slot {(h, w)}")
            out[r:r + h, c:c + w] = b
            c += w
        r += h
    return out


def direct_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[:a.shape[0], :a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out
