"""The four normed division algebras R, C, H, O with conjugation, norms and
the antisymmetric structure constants used by the super Minkowski algebras.

Elements carry coefficients over an orthonormal basis (u_1, ..., u_k) with
u_1 = 1; coefficients may be exact scalars or SuperPolynomials, so the same
arithmetic drives both plain computations and matrix entries over a Clifford
envelope.

Octonion convention.  The multiplication table is the one pinned down by the
required pairings u_1u_2 = u_3u_4 = u_6u_7 = u_8u_5 = u_2 together with the
central-charge table of the ten-to-four dimensional reduction; these force
the seven oriented triples

    (2,3,4) (2,6,7) (2,8,5) (3,6,8) (3,5,7) (4,5,6) (4,8,7)

with u_a u_b = u_c cyclically on each triple.  The triples form a Fano plane
and the algebra they generate is checked (alternative, norm multiplicative)
in the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .kernel import SuperPolynomial
from .scalars import QI, frac

OCTONION_TRIPLES = ((2, 3, 4), (2, 6, 7), (2, 8, 5), (3, 6, 8), (3, 5, 7), (4, 5, 6), (4, 8, 7))

_DIM = {"R": 1, "C": 2, "H": 4, "O": 8}


class DivisionAlgebra:
    """Multiplication-table-driven algebra over basis u_1..u_k, u_1 = 1."""

    def __init__(self, which: str):
        if which not in _DIM:
            raise ValueError("algebra must be one of R, C, H, O")
        self.which = which
        self.dim = _DIM[which]
        self.table = self._build_table()

    def _build_table(self):
        k = self.dim
        tab = {}
        for a in range(1, k + 1):
            tab[(1, a)] = (a, 1)
            tab[(a, 1)] = (a, 1)
        for a in range(2, k + 1):
            tab[(a, a)] = (1, -1)
        if self.which == "C":
            pass
        elif self.which == "H":
            for (a, b, c) in ((2, 3, 4),):
                self._orient(tab, a, b, c)
        elif self.which == "O":
            for (a, b, c) in OCTONION_TRIPLES:
                self._orient(tab, a, b, c)
        return tab

    @staticmethod
    def _orient(tab, a, b, c):
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            tab[(x, y)] = (z, 1)
            tab[(y, x)] = (z, -1)

    # -- element helpers -------------------------------------------------
    def element(self, coeffs) -> "DAElement":
        return DAElement(self, list(coeffs))

    def zero_like(self, model=None):
        z = _zero_of(model)
        return DAElement(self, [z for _ in range(self.dim)])

    def unit(self, alpha: int, coeff=1) -> "DAElement":
        coeffs = [Fraction(0)] * self.dim
        coeffs[alpha - 1] = frac(coeff) if isinstance(coeff, (int, Fraction, str)) else coeff
        return DAElement(self, coeffs)

    def one(self):
        return self.unit(1)

    def from_scalar(self, c):
        return self.unit(1, c)


def _zero_of(model):
    if isinstance(model, SuperPolynomial):
        return model.table.zero()
    return Fraction(0)


def _is_zero(c):
    if isinstance(c, SuperPolynomial):
        return c.is_zero()
    return not c


class DAElement:
    """k coefficients over the basis (u_1, ..., u_k); u_1 acts as identity."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: DivisionAlgebra, coeffs):
        if len(coeffs) != alg.dim:
            raise ValueError(f"need {alg.dim} coefficients")
        self.alg = alg
        self.coeffs = [frac(c) if isinstance(c, int) else c for c in coeffs]

    def _check(self, other):
        if self.alg.which != other.alg.which:
            raise ValueError("division-algebra tag mismatch")

    def __add__(self, other):
        self._check(other)
        return DAElement(self.alg, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return DAElement(self.alg, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return DAElement(self.alg, [-a for a in self.coeffs])

    def scale(self, c):
        return DAElement(self.alg, [_lmul(c, a) for a in self.coeffs])

    def __mul__(self, other):
        """Table-driven bilinear product; coefficient order is preserved, so
        odd (Grassmann-valued) coefficients pick up their own signs."""
        self._check(other)
        k = self.alg.dim
        tab = self.alg.table
        out = [None] * k
        for a in range(1, k + 1):
            ca = self.coeffs[a - 1]
            if _is_zero(ca):
                continue
            for b in range(1, k + 1):
                cb = other.coeffs[b - 1]
                if _is_zero(cb):
                    continue
                g, s = tab[(a, b)]
                v = ca * cb
                if s < 0:
                    v = -v
                out[g - 1] = v if out[g - 1] is None else out[g - 1] + v
        model = next((c for c in self.coeffs + other.coeffs if isinstance(c, SuperPolynomial)), None)
        z = _zero_of(model)
        return DAElement(self.alg, [z if c is None else c for c in out])

    def conj(self) -> "DAElement":
        return DAElement(self.alg, [self.coeffs[0]] + [-c for c in self.coeffs[1:]])

    def re(self) -> "DAElement":
        """(a + conj a)/2 as an element (purely real)."""
        z = _zero_of(next((c for c in self.coeffs if isinstance(c, SuperPolynomial)), None))
        return DAElement(self.alg, [self.coeffs[0]] + [z for _ in self.coeffs[1:]])

    def im(self) -> "DAElement":
        z = _zero_of(next((c for c in self.coeffs if isinstance(c, SuperPolynomial)), None))
        return DAElement(self.alg, [z] + list(self.coeffs[1:]))

    def re_scalar(self):
        return self.coeffs[0]

    def norm_sq(self):
        """a * conj(a); returns the u_1 coefficient after checking the
        imaginary part vanishes."""
        p = self * self.conj()
        for c in p.coeffs[1:]:
            if not _is_zero(c):
                raise ArithmeticError("norm_sq has a nonzero imaginary part")
        return p.coeffs[0]

    def is_zero(self):
        return all(_is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DAElement):
            return NotImplemented
        if self.alg.which != other.alg.which:
            return False
        return all(_eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        raise TypeError("DAElement is unhashable")

    def __repr__(self):
        return f"DA({self.alg.which}: {', '.join(map(str, self.coeffs))})"


def _lmul(c, a):
    if isinstance(a, SuperPolynomial):
        if isinstance(c, SuperPolynomial):
            return c * a
        return a.scale(c)
    if isinstance(c, SuperPolynomial):
        return c.scale(a)
    return frac(c) * a if not isinstance(c, QI) else c * a


def _eq(a, b):
    if isinstance(a, SuperPolynomial) or isinstance(b, SuperPolynomial):
        return a == b
    return a == b


# Singletons: the tables are immutable after construction.
R = DivisionAlgebra("R")
C = DivisionAlgebra("C")
H = DivisionAlgebra("H")
O = DivisionAlgebra("O")

ALGEBRAS = {"R": R, "C": C, "H": H, "O": O}


def algebra(tag: str) -> DivisionAlgebra:
    try:
        return ALGEBRAS[tag]
    except KeyError:
        raise ValueError("algebra must be one of R, C, H, O") from None


def gamma_constants(alg: DivisionAlgebra) -> dict:
    """Structure constants G[(alpha, beta, gamma)] defined by
    (u_a conj(u_b) - u_b conj(u_a))/2 = sum_g G u_g.

    Antisymmetric in (alpha, beta); zero unless gamma >= 2.
    """
    out = {}
    k = alg.dim
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            ua, ub = alg.unit(a), alg.unit(b)
            val = (ua * ub.conj() - ub * ua.conj()).scale(Fraction(1, 2))
            if not _is_zero(val.coeffs[0]):
                raise ArithmeticError("antisymmetrized product has a real part")
            for g in range(2, k + 1):
                c = val.coeffs[g - 1]
                if not _is_zero(c):
                    out[(a, b, g)] = c
    return out


def gamma(alg: DivisionAlgebra, a: int, b: int, g: int) -> Fraction:
    return gamma_constants(alg).get((a, b, g), Fraction(0))


def multiplication_rows(alg: DivisionAlgebra):
    """(a, b, gamma, sign) rows of the table, for printing and JSON."""
    rows = []
    for a in range(1, alg.dim + 1):
        for b in range(1, alg.dim + 1):
            g, s = alg.table[(a, b)]
            rows.append((a, b, g, s))
    return rows
