"""Graded-algebra kernel: symbols with parity, exact supercommutative and
Clifford multiplication, graded derivations and super brackets.

Everything is exact: coefficients are Fractions or Gaussian rationals, odd
monomials are kept strictly increasing in symbol-table declaration order and
every product normalizes signs against that order.  Values are immutable
after construction and safe to share.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .scalars import QI, frac

EVEN = 0
ODD = 1

KINDS = ("even", "odd", "clifford", "even_jet", "odd_jet")


class TableMismatchError(ValueError):
    pass


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class Symbol:
    name: str
    parity: int
    kind: str
    index: int
    # clifford generators: eps*eps = -square; odd generators square to 0
    square: Fraction = Fraction(0)
    # jet symbols remember their field and derivative multi-index
    jet_base: Optional[str] = None
    jet_derivs: tuple = ()


class SymbolTable:
    """Ordered symbol registry.

    Declaration order of odd symbols fixes the canonical monomial order (all
    signs are normalized against it), so two tables with the same symbols in
    a different order are distinct.  scalar_ring is "QQ" (exact rationals) or
    "QQi" (a formal central square root of -1 adjoined); rational
    coefficients promote silently inside "QQi", and operands always live
    over one table, so table identity subsumes ring compatibility.
    """

    def __init__(self, scalar_ring: str = "QQi"):
        if scalar_ring not in ("QQ", "QQi"):
            raise ValueError("scalar_ring must be 'QQ' or 'QQi'")
        self.scalar_ring = scalar_ring
        self.symbols: list[Symbol] = []
        self._by_name: dict[str, Symbol] = {}

    # -- declaration ------------------------------------------------------
    def _add(self, name, parity, kind, square=Fraction(0), jet_base=None, jet_derivs=()):
        if name in self._by_name:
            raise ValueError(f"duplicate symbol {name!r}")
        if kind not in KINDS:
            raise ValueError(f"unknown symbol kind {kind!r}")
        s = Symbol(name, parity, kind, len(self.symbols), frac(square), jet_base, tuple(jet_derivs))
        self.symbols.append(s)
        self._by_name[name] = s
        return s

    def even_symbol(self, name):
        return self._add(name, EVEN, "even")

    def odd_symbol(self, name):
        return self._add(name, ODD, "odd")

    def clifford_symbol(self, name, square=1):
        return self._add(name, ODD, "clifford", square=frac(square))

    def jet_symbol(self, name, parity, base, derivs):
        kind = "even_jet" if parity == EVEN else "odd_jet"
        return self._add(name, parity, kind, jet_base=base, jet_derivs=derivs)

    # -- lookup -----------------------------------------------------------
    def __contains__(self, name):
        return name in self._by_name

    def symbol(self, name) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def names(self):
        return [s.name for s in self.symbols]

    # -- element constructors ----------------------------------------------
    def zero(self):
        return SuperPolynomial(self, {})

    def scalar(self, c):
        c = _coef(c)
        if self.scalar_ring == "QQ" and isinstance(c, QI) and c.im != 0:
            raise ValueError("table is over the plain rationals; no formal I here")
        return SuperPolynomial(self, {((), ()): c} if c else {})

    def one(self):
        return self.scalar(1)

    def sym(self, name):
        s = self.symbol(name)
        if s.parity == EVEN:
            return SuperPolynomial(self, {(((s.index, 1),), ()): Fraction(1)})
        return SuperPolynomial(self, {((), (s.index,)): Fraction(1)})

    def monomial(self, coeff, even=(), odd=()):
        """Build coeff * prod(even names with powers) * prod(odd names, given order)."""
        p = self.scalar(coeff)
        for name, e in even:
            p = p * self.sym(name) ** e
        for name in odd:
            p = p * self.sym(name)
        return p


def _coef(c):
    if isinstance(c, QI):
        return c
    return frac(c)


def _even_mul(e1, e2):
    if not e1:
        return e2
    if not e2:
        return e1
    d = dict(e1)
    for i, p in e2:
        d[i] = d.get(i, 0) + p
    return tuple(sorted(d.items()))


class SuperPolynomial:
    """Exact element of the supercommutative/Clifford envelope of a table.

    terms: {(even_mono, odd_mono): coeff} with even_mono a sorted tuple of
    (symbol_index, power) and odd_mono a strictly increasing tuple of symbol
    indices.  Zero coefficients are never stored; the zero polynomial has no
    terms and answers None to parity().
    """

    __slots__ = ("table", "terms")

    def __init__(self, table: SymbolTable, terms: dict):
        self.table = table
        self.terms = terms

    # -- inspection --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def parity(self) -> Optional[int]:
        """0/1 if homogeneous, None for the zero polynomial (matches any)."""
        if not self.terms:
            return None
        parities = {len(od) & 1 for (_, od) in self.terms}
        if len(parities) > 1:
            raise ParityError(f"non-homogeneous polynomial: {self}")
        return parities.pop()

    def is_even(self):
        p = self.parity()
        return p is None or p == EVEN

    def is_odd(self):
        p = self.parity()
        return p is None or p == ODD

    def scalar_part(self):
        return self.terms.get(((), ()), Fraction(0))

    def constant_term(self):
        return self.scalar_part()

    def max_even_degree(self):
        return max((sum(p for _, p in ev) for (ev, _) in self.terms), default=0)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.table is not other.table:
            raise TableMismatchError("operands live over different symbol tables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            other = self.table.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SuperPolynomial(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.table, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            other = self.table.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.table.scalar(other) + (-self)

    def scale(self, c):
        c = _coef(c)
        if not c:
            return self.table.zero()
        return SuperPolynomial(self.table, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            return self.scale(other)
        self._check(other)
        squares = self.table.symbols
        out: dict = {}
        for (e1, o1), c1 in self.terms.items():
            for (e2, o2), c2 in other.terms.items():
                res = _odd_mul(o1, o2, squares)
                if res is None:
                    continue
                fac, od = res
                c = c1 * c2
                if fac is not None:
                    c = c * fac
                key = (_even_mul(e1, e2), od)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SuperPolynomial(self.table, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be nonnegative integers")
        out = self.table.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            other = self.table.scalar(other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.table is other.table and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.table), tuple(sorted(self.terms.items(), key=_term_key))))

    # -- structure ---------------------------------------------------------
    def coefficient_of_odd(self, odd_names: Iterable[str]):
        """Coefficient polynomial of the given odd monomial, with the Koszul
        sign needed to move those factors to the front in the given order.

        Only terms whose odd part contains exactly the requested symbols
        among the requested symbols' indices contribute; remaining odd
        factors stay in place.
        """
        idxs = tuple(self.table.symbol(n).index for n in odd_names)
        want = set(idxs)
        out: dict = {}
        for (ev, od), c in self.terms.items():
            if not want <= set(od):
                continue
            rest = tuple(i for i in od if i not in want)
            # sign to reorder od -> idxs + rest
            sign = _permutation_sign_to(od, idxs + rest)
            key = (ev, rest)
            s = out.get(key, 0) + sign * c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return SuperPolynomial(self.table, out)

    def substitute(self, images: dict):
        """Ring substitution symbol -> polynomial (parity-preserving).

        Symbols not named map to themselves.  Odd images must be odd, even
        images even; the substitution is applied factor by factor in term
        order, so Koszul signs are produced by the multiplication itself.
        """
        table = None
        for v in images.values():
            table = v.table
            break
        if table is None:
            return self
        imgs = {}
        for name, v in images.items():
            s = self.table.symbol(name)
            p = v.parity()
            if p is not None and p != s.parity:
                raise ParityError(f"substitution changes parity of {name}")
            imgs[s.index] = v
        out = table.zero()
        for (ev, od), c in self.terms.items():
            t = table.scalar(c)
            for i, p in ev:
                base = imgs.get(i)
                if base is None:
                    base = table.sym(self.table.symbols[i].name)
                t = t * base ** p
            for i in od:
                base = imgs.get(i)
                if base is None:
                    base = table.sym(self.table.symbols[i].name)
                t = t * base
                if t.is_zero():
                    break
            out = out + t
        return out

    def eval_even(self, values: dict):
        """Evaluate even symbols at exact scalars; other symbols untouched."""
        vals = {self.table.symbol(n).index: _coef(v) for n, v in values.items()}
        out: dict = {}
        for (ev, od), c in self.terms.items():
            rest = []
            for i, p in ev:
                if i in vals:
                    c = c * vals[i] ** p
                else:
                    rest.append((i, p))
            if not c:
                continue
            key = (tuple(rest), od)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return SuperPolynomial(self.table, out)

    def diff_even(self, name):
        """Formal partial derivative w.r.t. an even symbol."""
        s = self.table.symbol(name)
        if s.parity != EVEN:
            raise ParityError(f"{name} is odd; use a derivation")
        out: dict = {}
        for (ev, od), c in self.terms.items():
            for j, (i, p) in enumerate(ev):
                if i != s.index:
                    continue
                nev = list(ev)
                if p == 1:
                    del nev[j]
                else:
                    nev[j] = (i, p - 1)
                key = (tuple(nev), od)
                v = out.get(key, 0) + c * p
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return SuperPolynomial(self.table, out)

    def terms_sorted(self):
        return sorted(self.terms.items(), key=_term_key)

    def __str__(self):
        from .expr_io import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"<SuperPolynomial {self}>"


def _term_key(item):
    (ev, od), _ = item
    return (len(od), od, ev)


def _odd_mul(o1, o2, symbols):
    """Product of two canonical odd monomials.

    Returns (extra_factor_or_None, merged_tuple), or None when the product
    vanishes (repeated nilpotent generator).  extra_factor collects the
    -B(e,e) contractions of repeated Clifford generators.
    """
    if not o1:
        return (None, o2)
    if not o2:
        return (None, o1)
    sign = 1
    fac = None
    merged = list(o1)
    for s in o2:
        pos = bisect_left(merged, s)
        if pos < len(merged) and merged[pos] == s:
            hops = len(merged) - pos - 1
            if hops & 1:
                sign = -sign
            sq = symbols[s].square
            if not sq:
                return None
            fac = (-sq) if fac is None else fac * (-sq)
            del merged[pos]
        else:
            hops = len(merged) - pos
            if hops & 1:
                sign = -sign
            merged.insert(pos, s)
    if sign < 0:
        fac = Fraction(-1) if fac is None else -fac
    return (fac, tuple(merged))


def _permutation_sign_to(src: tuple, dst: tuple) -> int:
    """Sign of the permutation carrying the monomial src onto dst."""
    pos = {v: i for i, v in enumerate(dst)}
    perm = [pos[v] for v in src]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


class Derivation:
    """Parity-graded first-order operator, given by its images on symbols and
    applied through the graded Leibniz rule.  Missing images mean 0."""

    __slots__ = ("table", "parity", "images", "label")

    def __init__(self, table, parity, images: dict, label=""):
        self.table = table
        self.parity = parity
        self.label = label
        imgs = {}
        for name, v in images.items():
            s = table.symbol(name)
            if isinstance(v, (int, Fraction, QI)):
                v = table.scalar(v)
            p = v.parity()
            if p is not None and p != (s.parity + parity) % 2:
                raise ParityError(
                    f"image of {name} under {label or 'derivation'} has wrong parity"
                )
            if v:
                imgs[s.index] = v
        self.images = imgs

    def image(self, name):
        return self.images.get(self.table.symbol(name).index, self.table.zero())

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        if f.table is not self.table:
            raise TableMismatchError("derivation applied across tables")
        table = self.table
        out = table.zero()
        gx = self.parity
        for (ev, od), c in f.terms.items():
            # even factors: no crossing signs
            for j, (i, p) in enumerate(ev):
                img = self.images.get(i)
                if img is None:
                    continue
                nev = list(ev)
                if p == 1:
                    del nev[j]
                else:
                    nev[j] = (i, p - 1)
                left = SuperPolynomial(table, {(tuple(nev), ()): c * p})
                out = out + left * img * SuperPolynomial(table, {((), od): Fraction(1)})
            # odd factors: (-1)^(gx * #odd factors crossed)
            for j, i in enumerate(od):
                img = self.images.get(i)
                if img is None:
                    continue
                cc = -c if (gx and (j & 1)) else c
                left = SuperPolynomial(table, {(ev, od[:j]): cc})
                out = out + left * img * SuperPolynomial(table, {((), od[j + 1:]): Fraction(1)})
        return out

    # -- linear structure ---------------------------------------------------
    def __add__(self, other):
        if self.parity != other.parity:
            raise ParityError("sum of derivations with different parities")
        keys = set(self.images) | set(other.images)
        imgs = {}
        for i in keys:
            name = self.table.symbols[i].name
            v = self.images.get(i, self.table.zero()) + other.images.get(i, self.table.zero())
            imgs[name] = v
        return Derivation(self.table, self.parity, imgs, f"({self.label}+{other.label})")

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        """Multiply on the left by a scalar or homogeneous polynomial."""
        if isinstance(c, (int, Fraction, QI)):
            c = self.table.scalar(c)
        p = c.parity()
        par = self.parity if p is None else (self.parity + p) % 2
        imgs = {self.table.symbols[i].name: c * v for i, v in self.images.items()}
        return Derivation(self.table, par, imgs, f"{c}*{self.label}")

    def is_zero(self):
        return all(v.is_zero() for v in self.images.values())

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.table is not other.table:
            return False
        keys = set(self.images) | set(other.images)
        z = self.table.zero()
        return all(self.images.get(i, z) == other.images.get(i, z) for i in keys)

    def __hash__(self):
        raise TypeError("derivations are unhashable")

    def __str__(self):
        from .expr_io import format_derivation

        return format_derivation(self)

    def __repr__(self):
        return f"<Derivation {self.label or self}>"


def super_bracket(X: Derivation, Y: Derivation) -> Derivation:
    """[X,Y] = X∘Y - (-1)^(gr X gr Y) Y∘X, returned as a derivation.

    Both operands must be parity homogeneous (guaranteed by construction).
    """
    if X.table is not Y.table:
        raise TableMismatchError("bracket across tables")
    sign = -1 if (X.parity and Y.parity) else 1
    imgs = {}
    for s in X.table.symbols:
        g = X.table.sym(s.name)
        v = X(Y(g)) - sign * Y(X(g))
        if v:
            imgs[s.name] = v
    return Derivation(X.table, (X.parity + Y.parity) % 2, imgs, f"[{X.label},{Y.label}]")


def jacobi_check(x: Derivation, y: Derivation, z: Derivation) -> bool:
    """Graded Jacobi identity, evaluated on every generator of the table."""
    gx, gy, gz = x.parity, y.parity, z.parity

    def sgn(a, b):
        return -1 if (a and b) else 1

    t1 = super_bracket(x, super_bracket(y, z))
    t2 = super_bracket(y, super_bracket(z, x))
    t3 = super_bracket(z, super_bracket(x, y))
    total = t1.scale(sgn(gx, gz)) + t2.scale(sgn(gy, gx)) + t3.scale(sgn(gz, gy))
    return total.is_zero()


def skew_check(x: Derivation, y: Derivation) -> bool:
    """[x,y] + (-1)^(gr x gr y)[y,x] = 0."""
    b1 = super_bracket(x, y)
    b2 = super_bracket(y, x).scale(-1 if (x.parity and y.parity) else 1)
    return (b1 + b2).is_zero()


def cartan_triple(n: int, xi_components):
    """Differential forms on R^n as odd generators dx^i, with the operators
    d, contraction by xi and the Lie derivative along xi.

    xi_components: list of n polynomial-building callables or polynomials in
    the returned table's even symbols (checked to be even, polynomial).
    Returns (table, d, iota, lie).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    table = SymbolTable()
    xs = [table.even_symbol(f"x{i+1}").name for i in range(n)]
    dxs = [table.odd_symbol(f"dx{i+1}").name for i in range(n)]
    comps = []
    for c in xi_components:
        if callable(c):
            c = c(table)
        if isinstance(c, (int, Fraction, QI)):
            c = table.scalar(c)
        if any(od for (_, od) in c.terms):
            raise ValueError("vector field components must be even polynomials")
        comps.append(c)
    if len(comps) != n:
        raise ValueError("need one component per coordinate")

    d = Derivation(table, ODD, {xs[i]: table.sym(dxs[i]) for i in range(n)}, "d")
    iota = Derivation(table, ODD, {dxs[i]: comps[i] for i in range(n)}, "iota")
    lie = super_bracket(d, iota)
    lie.label = "Lie"
    for name, ok in (
        ("[d,d]", super_bracket(d, d).is_zero()),
        ("[iota,iota]", super_bracket(iota, iota).is_zero()),
        ("[Lie,d]", super_bracket(lie, d).is_zero()),
        ("[Lie,iota]", super_bracket(lie, iota).is_zero()),
    ):
        if not ok:
            raise ArithmeticError(f"{name} does not vanish")
    return table, d, iota, lie
