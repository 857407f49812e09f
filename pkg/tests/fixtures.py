"""Worked-example pencils typed in block by block from their displays.

Symbolic blocks (P_i, A, B, ...) are replaced by random integer matrices so
that entry-wise equality is a meaningful check.
"""

import random
from fractions import Fraction

from kron_ansatz import linalg
from kron_ansatz.matpoly import Pencil, from_coeffs

I = "I"


def rand_block(rng, rows, cols, lo=-5, hi=5):
    return linalg.matrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def rand_poly(seed, n, k, m=None, lo=-5, hi=5):
    rng = random.Random(seed)
    m = n if m is None else m
    return from_coeffs([rand_block(rng, m, n, lo, hi) for _ in range(k + 1)])


def grid_pencil(grid, row_sizes, col_sizes):
    """Each cell is 0 or a pair (X-part, Y-part) of matrices (or 0)."""
    R, C = sum(row_sizes), sum(col_sizes)
    X, Y = linalg.zeros(R, C), linalg.zeros(R, C)
    r0 = 0
    for row, rs in zip(grid, row_sizes):
        assert len(row) == len(col_sizes)
        c0 = 0
        for cell, cs in zip(row, col_sizes):
            if not (isinstance(cell, int) and cell == 0):
                x, y = cell
                for target, part in ((X, x), (Y, y)):
                    if isinstance(part, int) and part == 0:
                        continue
                    target[r0:r0 + rs, c0:c0 + cs] = part
            c0 += cs
        r0 += rs
    return Pencil(X, Y)


def lam(M):
    return (M, 0)


def const(M):
    return (0, M)


def both(x, y):
    return (x, y)


class Symbols:
    """Random stand-ins for a polynomial's coefficients and free blocks."""

    def __init__(self, seed, n, k, m=None, names=(), sizes=None):
        rng = random.Random(seed)
        self.m = n if m is None else m
        self.n = n
        self.P = from_coeffs([rand_block(rng, self.m, n) for _ in range(k + 1)])
        sizes = sizes or {}
        for name in names:
            r, c = sizes.get(name, (n, n))
            setattr(self, name, rand_block(rng, r, c))

    def p(self, i):
        return self.P.coeff(i)


def g_example(seed=0, m=2, n=3):
    """The deg-6, η=3, ε=2 member of G_4(P) with its stated parameters."""
    s = Symbols(seed, n, 6, m, "ABCGDEFH",
                {"A": (m, n), "B": (m, n), "C": (n, n), "G": (n, n),
                 "D": (m, m), "E": (m, m), "F": (m, m), "H": (m, m)})
    p = s.p
    A, B, C, G, D, E, F, H = s.A, s.B, s.C, s.G, s.D, s.E, s.F, s.H
    grid = [
        [both(p(6), p(5)), const(p(4)), const(p(3)), 0, const(-F), const(H)],
        [const(A), both(-A, -B), const(p(2)), 0, both(F, E), lam(-H)],
        [const(-p(3)), lam(B), const(p(1)), const(D), lam(-E), 0],
        [lam(p(3)), 0, const(p(0)), lam(-D), 0, 0],
        [const(C), both(-C, -G), lam(G), 0, 0, 0],
        [0, const(C), lam(-C), 0, 0, 0],
    ]
    display = grid_pencil(grid, [m] * 4 + [n] * 2, [n] * 3 + [m] * 3)
    Zmn, Zmm = linalg.zeros(m, n), linalg.zeros(m, m)
    Znn = linalg.zeros(n, n)
    B1 = linalg.assemble([[Zmn, Zmn], [-A, Zmn], [Zmn, Zmn], [Zmn, Zmn]])
    C1 = linalg.assemble([[-C, G], [Znn, -C]])
    B2 = linalg.assemble([[Zmn, Zmn, Zmn], [Zmn, B, Zmn], [p(3), Zmn, Zmn]])
    C2 = linalg.assemble([[Zmm, F, -H], [Zmm, E, Zmm], [-D, Zmm, Zmm]])
    return s, display, {"alpha": 1, "B1": B1, "B2": B2, "C1": C1, "C2": C2,
                        "eta": 3, "eps": 2, "m": m, "n": n}


def dg1_example(seed=0, n=2):
    """The η=0, deg-6 member of DG_1(P)."""
    s = Symbols(seed, n, 6)
    p = s.p
    top = [both(p(6), p(5))] + [const(p(j)) for j in (4, 3, 2, 1, 0)]
    rows = [top]
    for r in range(5):
        # row r+1 below the first: P_{4-r}, then P_{3-r-c} - λP_{4-r-c}
        row = [const(p(4 - r))]
        for c in range(5):
            hi, lo = 4 - r - c, 3 - r - c
            x = -p(hi) if hi >= 0 else 0
            y = p(lo) if lo >= 0 else 0
            row.append(0 if hi < 0 else (x, y))
        rows.append(row)
    return s, grid_pencil(rows, [n] * 6, [n] * 6)


def dg2_example(seed=0, n=2):
    """The η=1, deg-6 member K(λ) of DG_2(P), which is not block-symmetric."""
    s = Symbols(seed, n, 6, None, "ABC")
    p, A, B, C = s.p, s.A, s.B, s.C
    Id = linalg.eye(n)
    grid = [
        [both(p(6), p(5)), const(p(4)), const(A), 0, const(-B), const(-Id)],
        [0, const(p(3)), both(-A, p(2)), const(p(1)), both(B, p(0)), lam(Id)],
        [0, const(p(2)), both(-p(2), p(1)), both(-p(1), p(0)), lam(-p(0)), 0],
        [const(C), both(-C, p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0],
        [0, const(p(0)), lam(-p(0)), 0, 0, 0],
        [const(-Id), lam(Id), 0, 0, 0, 0],
    ]
    return s, grid_pencil(grid, [n] * 6, [n] * 6)


def symmetrized_example(seed=0, n=2):
    """The block-symmetric companion of K(λ) in DG_2(P)."""
    s = Symbols(seed, n, 6, None, "ABC")
    p, A, B, C = s.p, s.A, s.B, s.C
    Id = linalg.eye(n)
    half = linalg.matrix(p(4) * Fraction(1, 2))
    grid = [
        [both(p(6), p(5)), const(half), const(A), const(C), const(-B), const(-Id)],
        [const(half), const(p(3)), both(-A, p(2)), both(-C, p(1)), both(B, p(0)), lam(Id)],
        [const(A), both(-A, p(2)), both(-p(2), p(1)), both(-p(1), p(0)), lam(-p(0)), 0],
        [const(C), both(-C, p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0],
        [const(-B), both(B, p(0)), lam(-p(0)), 0, 0, 0],
        [const(-Id), lam(Id), 0, 0, 0, 0],
    ]
    return s, grid_pencil(grid, [n] * 6, [n] * 6)


def bg7_eta1_example(seed=0, n=2):
    """The η=1 deg-7 block-symmetric pencil L(λ) of BG_2(P)."""
    s = Symbols(seed, n, 7)
    p = s.p
    Id = linalg.eye(n)
    grid = [
        [both(p(7), p(6)), 0, 0, 0, 0, 0, const(-Id)],
        [0, both(p(5), p(4)), const(p(3)), const(p(2)), const(p(1)), const(p(0)), lam(Id)],
        [0, const(p(3)), both(-p(3), p(2)), both(-p(2), p(1)), both(-p(1), p(0)), lam(-p(0)), 0],
        [0, const(p(2)), both(-p(2), p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0],
        [0, const(p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0, 0],
        [0, const(p(0)), lam(-p(0)), 0, 0, 0, 0],
        [const(-Id), lam(Id), 0, 0, 0, 0, 0],
    ]
    return s, grid_pencil(grid, [n] * 7, [n] * 7)


def bg7_eta2_display(P, n):
    """The η=2 deg-7 block-symmetric pencil K(λ) of BG_3(P), typed from its
    display, for an arbitrary grade-7 P."""
    p = P.coeff
    grid = [
        [both(p(7), p(6)), 0, 0, const(p(7)), const(p(5)), const(p(3)), const(p(1))],
        [0, both(p(5), p(4)), 0, both(-p(7), p(6)), both(-p(5), p(4)), both(-p(3), p(2)),
         both(-p(1), p(0))],
        [0, 0, both(p(3), p(2)), both(-p(6), p(1)), both(-p(4), p(0)), lam(-p(2)), lam(-p(0))],
        [const(p(7)), both(-p(7), p(6)), both(-p(6), p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0],
        [const(p(5)), both(-p(5), p(4)), both(-p(4), p(0)), lam(-p(0)), 0, 0, 0],
        [const(p(3)), both(-p(3), p(2)), lam(-p(2)), 0, 0, 0, 0],
        [const(p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0, 0, 0],
    ]
    return grid_pencil(grid, [n] * 7, [n] * 7)


def diag_poly(roots_per_entry, lead=None):
    """diag(c_j Π (λ - r)) as a matrix polynomial; ``lead`` scales each entry."""
    from kron_ansatz.oracle.polynomial import ScalarPolynomial

    n = len(roots_per_entry)
    polys = []
    for j, roots in enumerate(roots_per_entry):
        q = ScalarPolynomial.constant(1 if lead is None else lead[j])
        for r in roots:
            q = q * ScalarPolynomial([-Fraction(r), 1])
        polys.append(q)
    k = max(q.degree for q in polys)
    coeffs = []
    for d in range(k + 1):
        M = linalg.zeros(n, n)
        for j, q in enumerate(polys):
            M[j, j] = q.c[d] if d < len(q.c) else 0
        coeffs.append(M)
    return from_coeffs(coeffs)



def shift_example(seed=0, n=1):
    """The deg-7 DG_2(P) member with free blocks A..K used for the shift
    procedure, its parameters, and the displayed re-expressions for i = 1, 2."""
    s = Symbols(seed, n, 7, None, "ABCDEFGHJK")
    p = s.p
    A, B, C, D, E, F, G, H, J, K = (getattr(s, x) for x in "ABCDEFGHJK")
    grid = [
        [both(p(7), p(6)), const(p(5)), const(-A), const(-B), const(-C), const(-D), const(-E)],
        [0, const(p(4)), both(A, p(3)), both(B, p(2)), both(C, p(1)), both(D, p(0)), lam(E)],
        [const(-F), both(F, p(3)), both(-p(3), p(2)), both(-p(2), p(1)), both(-p(1), p(0)),
         lam(-p(0)), 0],
        [const(-G), both(G, p(2)), both(-p(2), p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0],
        [const(-H), both(H, p(1)), both(-p(1), p(0)), lam(-p(0)), 0, 0, 0],
        [const(-J), both(J, p(0)), lam(-p(0)), 0, 0, 0, 0],
        [const(-K), lam(K), 0, 0, 0, 0, 0],
    ]
    L = grid_pencil(grid, [n] * 7, [n] * 7)
    Z = linalg.zeros(n, n)
    asm = linalg.assemble
    params = {"alpha": 1, "B11": asm([[Z], [Z]]), "C11": asm([[F], [G], [H], [J]]),
              "C21": K, "B2": asm([[Z, Z, A, B, C, D]]), "C2": E, "eta": 1, "eps": 5, "n": n}
    m = lambda i: -p(i)  # noqa: E731
    shifted = {
        1: {"B11": asm([[Z, Z], [Z, Z], [F, Z]]),
            "C11": asm([[G, m(2)], [H, m(1)]]),
            "C21": asm([[J, m(0)], [K, Z]]),
            "B2": asm([[Z, Z, A, B, C], [Z, Z, m(3), m(2), m(1)]]),
            "C2": asm([[D, E], [m(0), Z]])},
        2: {"B11": asm([[Z, Z, Z], [Z, Z, Z], [F, Z, Z], [G, Z, Z]]),
            "C11": linalg.zeros(0, 3 * n),
            "C21": asm([[H, m(1), m(0)], [J, m(0), Z], [K, Z, Z]]),
            "B2": asm([[Z, Z, A, B], [Z, Z, m(3), m(2)], [Z, Z, m(2), m(1)]]),
            "C2": asm([[C, D, E], [m(1), m(0), Z], [m(0), Z, Z]])},
    }
    return s, L, params, shifted
