"""Brute-force cross-checks that avoid the pipeline's own arithmetic.

Everything here is computed with sympy expressions and converted to
``SparsePoly`` only at the end, so agreement with the main code paths is
meaningful evidence rather than a tautology.
"""

from fractions import Fraction
from itertools import permutations

import sympy

from .errors import DegreeZero, TooLarge, UnsupportedDegree
from .intlinalg import integer_kernel
from .polyring import SparsePoly

PERMUTATION_LIMIT = 6


def to_sympy(value):
    """SparsePoly, int or expression string (``"2*v3"``) -> sympy expression."""
    if isinstance(value, SparsePoly):
        expr = sympy.Integer(0)
        for exps, c in value.exponent_dicts():
            term = sympy.Integer(c)
            for var, e in exps.items():
                term *= sympy.Symbol(str(var)) ** e
            expr += term
        return expr
    return sympy.sympify(value)


def from_sympy(expr):
    """Expanded sympy polynomial in symbols named like ``v3`` -> SparsePoly."""
    expr = sympy.expand(expr)
    if expr == 0:
        return SparsePoly()
    gens = sorted(expr.free_symbols, key=lambda s: s.name)
    if not gens:
        return SparsePoly.const(int(expr))
    poly = sympy.Poly(expr, *gens)
    out = SparsePoly()
    for monom, c in poly.terms():
        out = out + SparsePoly.monomial({g.name: e for g, e in zip(gens, monom) if e}, int(c))
    return out


def _sign(perm):
    inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inversions % 2 else 1


def _expand_det(rows):
    n = len(rows)
    total = sympy.Integer(0)
    for perm in permutations(range(n)):
        term = sympy.Integer(_sign(perm))
        for r, c in enumerate(perm):
            term *= rows[r][c]
            if term == 0:
                break
        total += term
    return sympy.expand(total)


def permutation_determinant(M):
    """Leibniz expansion of a small square matrix (``n <= 6``)."""
    n = len(M)
    if n > PERMUTATION_LIMIT:
        raise TooLarge(f"permutation expansion limited to n <= {PERMUTATION_LIMIT}, got {n}")
    if n == 0 or any(len(row) != n for row in M):
        raise ValueError("matrix must be square and non-empty")
    return from_sympy(_expand_det([[to_sympy(x) for x in row] for row in M]))


def sylvester_matrix(f_coeffs, g_coeffs):
    """Sylvester matrix with coefficients laid out in increasing degree.

    Row ``s`` of the ``f`` block holds ``a_0 .. a_m`` starting at column
    ``s``; this layout makes ``Res(a0 + a1 x, b0 + b1 x) = a0 b1 - a1 b0``.
    """
    f = [to_sympy(c) for c in f_coeffs]
    g = [to_sympy(c) for c in g_coeffs]
    m, n = len(f) - 1, len(g) - 1
    if m < 1 or n < 1:
        raise DegreeZero("both polynomials need degree at least 1")
    size = m + n
    rows = []
    for shift in range(n):
        rows.append([f[c - shift] if 0 <= c - shift <= m else 0 for c in range(size)])
    for shift in range(m):
        rows.append([g[c - shift] if 0 <= c - shift <= n else 0 for c in range(size)])
    return rows


def sylvester_resultant(f_coeffs, g_coeffs):
    """Resultant of two univariate polynomials given by coefficients ``a_0 .. a_m``."""
    return from_sympy(_expand_det(sylvester_matrix(f_coeffs, g_coeffs)))


def univariate_EA_oracle(n):
    """``v1 * Res(f, f')`` for the dense cubic ``f = v1 + v2 x + v3 x^2 + v4 x^3``.

    Only the cubic has a relation lattice of rank 2, so other degrees are
    rejected.
    """
    if n != 3:
        raise UnsupportedDegree(f"only degree 3 is supported, got {n}")
    coeffs = [sympy.Symbol(f"v{k}") for k in range(1, n + 2)]
    deriv = [k * coeffs[k] for k in range(1, n + 1)]
    res = _expand_det(sylvester_matrix(coeffs, deriv))
    return from_sympy(coeffs[0] * res).sign_normalized()


def horn_kapranov_point(B_A, x, lam, mu):
    """Coefficients of a Laurent polynomial that is singular at ``x``.

    With ``A`` the integer kernel of ``B_A`` (columns ``a_j``) and a relation
    ``b = lam * row0 + mu * row1``, the choice ``c_j = b_j / x^{a_j}`` puts a
    critical point of ``sum_j c_j t^{a_j}`` at ``t = x``, so every factor of
    the principal A-determinant vanishes there.  ``x`` and the scalars may be
    ints or Fractions; returns a list of Fractions.
    """
    A = integer_kernel(B_A)
    if len(x) != A.shape[0]:
        raise ValueError(f"need {A.shape[0]} torus coordinates, got {len(x)}")
    out = []
    for j in range(A.shape[1]):
        mono = Fraction(1)
        for i, xi in enumerate(x):
            mono *= Fraction(xi) ** int(A[i, j])
        out.append((lam * int(B_A[0][j]) + mu * int(B_A[1][j])) / mono)
    return out


def evaluate(poly, values):
    """Evaluate a SparsePoly at ``{"v1": value, ...}`` exactly via sympy."""
    expr = to_sympy(poly)
    return expr.subs({sympy.Symbol(k): sympy.Rational(str(val)) for k, val in values.items()})
