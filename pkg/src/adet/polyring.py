"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

Variables come in three families, ``v``, ``u`` and ``z``, each indexed by a
positive integer.  Internally a variable is packed into one int
(``family_rank << 32 | index``) and a monomial is a sorted tuple of
``(var, exponent)`` pairs, which keeps hashing and multiplication cheap.

The canonical term order (used for printing, JSON and "leading term") is
graded: higher total degree first; ties are broken by comparing the
monomials as sorted words of variables, where ``v < u < z`` and indices
increase inside a family.  This is a monomial order, so it is also used
for exact division.
"""

from typing import NamedTuple
import heapq
import re

from .errors import AdetError, NonSquare

FAMILIES = ("v", "u", "z")
_RANK = {f: i for i, f in enumerate(FAMILIES)}
_SHIFT = 32
_VAR_RE = re.compile(r"^([vuz])(\d+)$")


class VarId(NamedTuple):
    family: str
    index: int

    @property
    def key(self):
        return (_RANK[self.family] << _SHIFT) | self.index

    @classmethod
    def from_key(cls, key):
        return cls(FAMILIES[key >> _SHIFT], key & ((1 << _SHIFT) - 1))

    @classmethod
    def parse(cls, name):
        m = _VAR_RE.match(name)
        if not m:
            raise ValueError(f"bad variable name {name!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.index}"


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_div(a, b):
    """``a / b`` as a monomial, or None when ``b`` does not divide ``a``."""
    d = dict(a)
    for v, e in b:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_degree(m):
    return sum(e for _, e in m)


def _mono_key(m):
    word = tuple(v for v, e in m for _ in range(e))
    return (len(word), word)


def _heap_key(m):
    # words of equal degree have equal length, so negating every letter
    # reverses the order and a min-heap pops the largest monomial first
    word = tuple(-v for v, e in m for _ in range(e))
    return (-len(word), word)


class SparsePoly:
    """Immutable sparse polynomial over the integers."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = int(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, family, index, coeff=1):
        return cls({((VarId(family, index).key, 1),): coeff})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        """Build ``coeff * prod(var**e)`` from a mapping of VarId (or name) to exponent."""
        items = {}
        for var, e in exponents.items():
            if isinstance(var, str):
                var = VarId.parse(var)
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                items[var.key] = items.get(var.key, 0) + int(e)
        return cls({tuple(sorted(items.items())): coeff})

    # -- basic protocol -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, SparsePoly):
            return x
        if isinstance(x, int):
            return SparsePoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparsePoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return SparsePoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading_term(self):
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def exquo(self, other):
        """Exact quotient ``self / other``; raises ArithmeticError if inexact."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lm_b, lc_b = other.leading_term()
        rest = dict(self.terms)
        heap = [(_heap_key(m), m) for m in rest]
        heapq.heapify(heap)
        quot = {}
        while heap:
            _, lm = heapq.heappop(heap)
            lc = rest.get(lm)
            if lc is None:
                continue
            qm = _mono_div(lm, lm_b)
            if qm is None or lc % lc_b:
                raise ArithmeticError("polynomial division is not exact")
            qc = lc // lc_b
            quot[qm] = qc
            for m, c in other.terms.items():
                mm = _mono_mul(qm, m)
                old = rest.get(mm)
                s = (old or 0) - qc * c
                if s:
                    rest[mm] = s
                    if old is None:
                        heapq.heappush(heap, (_heap_key(mm), mm))
                elif old is not None:
                    del rest[mm]
        return SparsePoly._raw(quot)

    # -- inspection --------------------------------------------------------

    def variables(self):
        keys = {v for m in self.terms for v, _ in m}
        return [VarId.from_key(k) for k in sorted(keys)]

    def total_degree(self):
        return max((_mono_degree(m) for m in self.terms), default=0)

    def degree_in(self, family):
        """Maximal total degree in the variables of one family."""
        r = _RANK[family]
        return max((sum(e for v, e in m if v >> _SHIFT == r) for m in self.terms), default=0)

    def sorted_terms(self):
        """``(monomial, coeff)`` pairs in canonical (descending) order."""
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def exponent_dicts(self):
        """List of ``({VarId: exp}, coeff)`` in canonical order."""
        return [({VarId.from_key(v): e for v, e in m}, c) for m, c in self.sorted_terms()]

    def content(self):
        from math import gcd
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def monomial_factor(self):
        """Split off the largest monomial dividing every term.

        Returns ``(m, q)`` with ``self == m * q``; ``m`` has coefficient 1.
        """
        if not self.terms:
            return ONE, self
        common = None
        for mono in self.terms:
            exps = dict(mono)
            if common is None:
                common = exps
            else:
                common = {k: min(e, exps[k]) for k, e in common.items() if k in exps}
        m = SparsePoly._raw({tuple(sorted(common.items())): 1})
        return m, self.exquo(m)

    def sign_normalized(self):
        """Return ``±self`` with the leading coefficient positive."""
        if not self.terms:
            return self
        _, c = self.leading_term()
        return -self if c < 0 else self

    # -- substitution ------------------------------------------------------

    def substitute(self, mapping):
        """Image under the ring homomorphism fixing unmapped variables.

        ``mapping`` sends VarId (or a name like ``"z3"``) to an int, a
        SparsePoly, or a pair ``(c, var)`` meaning ``c * var``.
        """
        images = {}
        for var, img in mapping.items():
            if isinstance(var, str):
                var = VarId.parse(var)
            if isinstance(img, tuple):
                c, w = img
                if isinstance(w, str):
                    w = VarId.parse(w)
                img = SparsePoly.var(w.family, w.index, c)
            elif isinstance(img, int):
                img = SparsePoly.const(img)
            images[var.key] = img
        cache = {}

        def power(v, e):
            k = (v, e)
            if k not in cache:
                cache[k] = images[v] ** e
            return cache[k]

        acc = {}
        for m, c in self.terms.items():
            kept = tuple((v, e) for v, e in m if v not in images)
            term = SparsePoly._raw({kept: c})
            for v, e in m:
                if v in images:
                    term = term * power(v, e)
                    if not term.terms:
                        break
            for mm, cc in term.terms.items():
                s = acc.get(mm, 0) + cc
                if s:
                    acc[mm] = s
                else:
                    acc.pop(mm, None)
        return SparsePoly._raw(acc)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {"terms": [
            {"coeff": str(c), "monomial": {str(VarId.from_key(v)): e for v, e in m}}
            for m, c in self.sorted_terms()
        ]}

    @classmethod
    def from_json(cls, obj):
        out = SparsePoly()
        for t in obj["terms"]:
            out = out + cls.monomial(t["monomial"], int(t["coeff"]))
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for v, e in m:
                name = str(VarId.from_key(v))
                factors.append(name if e == 1 else f"{name}^{e}")
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"SparsePoly({self})"


ZERO = SparsePoly()
ONE = SparsePoly.const(1)


def z(i):
    return SparsePoly.var("z", i)


def u(i):
    return SparsePoly.var("u", i)


def v(i):
    return SparsePoly.var("v", i)


def poly_arith(op, a, b=None):
    """Dispatch ``add``, ``mul`` or ``negate`` on SparsePoly values."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "negate":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def _check_square(M):
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise NonSquare(f"matrix is not square and non-empty: {n} rows")
    return n


def bareiss_determinant(M):
    """Fraction-free Gaussian elimination with exact polynomial division."""
    n = _check_square(M)
    A = [list(row) for row in M]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                num = A[i][j] * piv - aik * A[k][j]
                A[i][j] = num.exquo(prev) if prev != ONE else num
            A[i][k] = ZERO
        prev = piv
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def expansion_determinant(M):
    """Signed permutation expansion, skipping zero entries row by row."""
    n = _check_square(M)

    def rec(row, cols, sign):
        if row == n:
            return ONE if sign > 0 else -ONE
        total = ZERO
        for pos, c in enumerate(cols):
            entry = M[row][c]
            if not entry:
                continue
            rest = cols[:pos] + cols[pos + 1:]
            sub = rec(row + 1, rest, sign if pos % 2 == 0 else -sign)
            if sub:
                total = total + entry * sub
        return total

    return rec(0, list(range(n)), 1)


CROSS_CHECK_LIMIT = 6


def determinant(M, cross_check=True):
    """Exact determinant of a square matrix of SparsePoly entries.

    Uses Bareiss elimination; for ``n <= 6`` the permutation expansion is
    also evaluated and the two must agree.
    """
    n = _check_square(M)
    det = bareiss_determinant(M)
    if cross_check and n <= CROSS_CHECK_LIMIT:
        alt = expansion_determinant(M)
        if alt != det:
            raise AdetError("Bareiss and permutation expansion disagree")
    return det


def substitute(p, mapping):
    return p.substitute(mapping)
