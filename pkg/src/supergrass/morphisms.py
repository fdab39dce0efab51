"""Maps between superdomains as pullback morphisms.

A morphism from (x^1..x^m, odd o^1..o^q) to a polynomial target chart
(y^1..y^n, odd target coordinates) is stored in exponential normal form: a
base map phi, a family of vector fields xi_I indexed by even-length odd
multi-indices I, and odd superfunctions pulled back from the target odd
coordinates.  Pulling back f applies the truncated series of
Xi = sum_I xi_I o^I to f and then substitutes y -> phi(x).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .indices import even_subsets_pos
from .kernel import (EVEN, ODD, Derivation, ParityError, SuperPolynomial,
                     SymbolTable)
from .scalars import frac


class ChartAssumptionError(ValueError):
    """xi_I xi_J y != 0 for the reported pair."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"chart assumption fails for index pair {pair}")


class CommutationError(ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"vector fields at {pair} do not commute")


class FleshMorphism:
    """Pullback data (phi, {xi_I}, odd images).

    even_coords: names of the source even coordinates x.
    odd_coords:  names of all q odd source coordinates; the first k of them
                 are the distinguished thetas (k given by n_theta).
    target_even: names of the target even coordinates y.
    target_odd:  names of the target odd coordinates.
    phi:         {y-name: polynomial in x} over the working table.
    xi:          {I: {y-name: polynomial in x and y}} with I a multi-index
                 (1-based positions into odd_coords) of even length >= 2.
    odd_images:  {target-odd-name: odd polynomial in (x, source odds)}.

    The working table holds x's, then y's, then the source odd coordinates.
    """

    def __init__(self, even_coords, odd_coords, target_even, phi, xi,
                 n_theta=None, target_odd=(), odd_images=None, validate=True):
        self.even_coords = tuple(even_coords)
        self.odd_coords = tuple(odd_coords)
        self.target_even = tuple(target_even)
        self.target_odd = tuple(target_odd)
        self.n_theta = len(odd_coords) if n_theta is None else n_theta
        self.q = len(self.odd_coords)

        self.table = SymbolTable()
        for n in self.even_coords:
            self.table.even_symbol(n)
        for n in self.target_even:
            self.table.even_symbol(n)
        for n in self.odd_coords:
            self.table.odd_symbol(n)

        self.phi = {n: self._lift(p) for n, p in phi.items()}
        if set(self.phi) != set(self.target_even):
            raise ValueError("phi must give every target even coordinate")
        self.xi = {}
        for I, comps in xi.items():
            I = tuple(I)
            if validate:
                if len(I) % 2 or len(I) < 2 or any(not 1 <= i <= self.q for i in I):
                    raise ValueError(f"invalid multi-index {I}: need even length >= 2")
                if tuple(sorted(set(I))) != I:
                    raise ValueError(f"multi-index {I} must be strictly increasing")
            self.xi[I] = {n: self._lift(c) for n, c in comps.items()}
        self.odd_images = {n: self._lift(p) for n, p in (odd_images or {}).items()}
        if set(self.odd_images) != set(self.target_odd):
            raise ValueError("need one odd image per target odd coordinate")
        if validate:
            for n, p in self.odd_images.items():
                if p.parity() not in (None, ODD):
                    raise ParityError(f"image of {n} must be odd")

    # -- plumbing ---------------------------------------------------------
    def _lift(self, p):
        if isinstance(p, (int, Fraction)):
            return self.table.scalar(p)
        if p.table is self.table:
            return p
        out = self.table.zero()
        for (ev, od), c in p.terms.items():
            term = self.table.scalar(c)
            for i, e in ev:
                term = term * self.table.sym(p.table.symbols[i].name) ** e
            for i in od:
                term = term * self.table.sym(p.table.symbols[i].name)
            out = out + term
        return out

    def odd_monomial(self, I) -> SuperPolynomial:
        m = self.table.one()
        for i in I:
            m = m * self.table.sym(self.odd_coords[i - 1])
        return m

    def xi_field(self, I) -> Derivation:
        return Derivation(self.table, EVEN, dict(self.xi[I]), f"xi_{I}")

    def apply_Xi(self, f: SuperPolynomial) -> SuperPolynomial:
        """Xi f = sum_I o^I (xi_I f)."""
        out = self.table.zero()
        for I, comps in self.xi.items():
            X = Derivation(self.table, EVEN, dict(comps), f"xi_{I}")
            out = out + self.odd_monomial(I) * X(f)
        return out

    def exp_Xi(self, f: SuperPolynomial) -> SuperPolynomial:
        """Truncated series sum_n Xi^n f / n!; terminates by nilpotency."""
        out = f
        cur = f
        n = 0
        while True:
            n += 1
            cur = self.apply_Xi(cur)
            if cur.is_zero():
                return out
            out = out + cur.scale(Fraction(1, _fact(n)))
            if n > self.q:
                raise RuntimeError("series failed to terminate")

    def substitute_base(self, f: SuperPolynomial) -> SuperPolynomial:
        return f.substitute(dict(self.phi))

    def pullback_even(self, f: SuperPolynomial) -> SuperPolynomial:
        """(1 x phi)^*(e^Xi f) for f a polynomial in the target evens."""
        return self.substitute_base(self.exp_Xi(self._lift(f)))

    def pullback(self, f, odd_decomposition=None) -> SuperPolynomial:
        """Full pullback of a polynomial in the target even and odd
        coordinates: sum over target odd monomials J of
        pullback_even(f_J) * prod(odd images)."""
        if odd_decomposition is None:
            odd_decomposition = {(): self._lift(f)}
        out = self.table.zero()
        for J, fJ in odd_decomposition.items():
            term = self.pullback_even(fJ)
            for name in J:
                term = term * self.odd_images[name]
            out = out + term
        return out

    def nilpotency_index(self):
        """Smallest n with Xi^n = 0 on every target coordinate product."""
        return self.q // 2 + 1


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def morphism_check(m: FleshMorphism, f, g, rng=None) -> bool:
    """Unit, linearity, multiplicativity, and evenness of the pullback."""
    one = m.table.one()
    if m.pullback_even(one) != one:
        return False
    lam = Fraction(rng.randint(-5, 5), rng.randint(1, 3)) if rng else Fraction(2)
    mu = Fraction(rng.randint(-5, 5), rng.randint(1, 3)) if rng else Fraction(-3)
    f = m._lift(f)
    g = m._lift(g)
    if m.pullback_even(f.scale(lam) + g.scale(mu)) != \
            m.pullback_even(f).scale(lam) + m.pullback_even(g).scale(mu):
        return False
    for h in (f, g, f * g):
        pb = m.pullback_even(h)
        if any(len(od) % 2 for (_, od) in pb.terms):
            return False
    return m.pullback_even(f * g) == m.pullback_even(f) * m.pullback_even(g)


def collapse_morphism_check(n_even, target_odd_count, rng=None, cases=25) -> bool:
    """Maps from a purely even source to an odd target collapse: every
    positive odd monomial squares to zero, no nonzero polynomial in the even
    coordinate ring does, so the only morphism sends F to its constant-in-odd
    part.  That collapse map is itself checked to be a ring morphism."""
    src = SymbolTable()
    for i in range(n_even):
        src.even_symbol(f"x{i+1}")
    tgt = SymbolTable()
    for j in range(target_odd_count):
        tgt.odd_symbol(f"ps{j+1}")
    names = tgt.names()
    for r in range(1, target_odd_count + 1):
        for J in combinations(names, r):
            mono = tgt.one()
            for n in J:
                mono = mono * tgt.sym(n)
            if not (mono * mono).is_zero():
                return False
    rng = rng or __import__("random").Random(0)
    for _ in range(cases):
        p = src.zero()
        for _ in range(rng.randint(1, 3)):
            p = p + src.monomial(Fraction(rng.randint(1, 4)),
                                 [(n, rng.randint(0, 2)) for n in src.names()])
        if p and (p * p).is_zero():
            return False
        # the collapse map F -> F_empty is multiplicative
        f = _random_odd_poly(tgt, rng)
        g = _random_odd_poly(tgt, rng)
        if _odd_constant(f * g) != _odd_constant(f) * _odd_constant(g):
            return False
    return True


def _random_odd_poly(t, rng):
    p = t.scalar(rng.randint(-3, 3))
    names = t.names()
    for _ in range(3):
        od = [n for n in names if rng.random() < 0.5]
        p = p + t.monomial(Fraction(rng.randint(-3, 3)), [], od)
    return p


def _odd_constant(p):
    return p.terms.get(((), ()), Fraction(0))


def point_tangent_pullback(target_table: SymbolTable, point: dict, xi: dict,
                           theta_name="th1"):
    """The odd-line morphism f -> f(m) + df_m(xi) theta.

    Returns (result_table, pull) where pull maps polynomials in the target
    evens to polynomials in R[theta].
    """
    rt = SymbolTable()
    rt.odd_symbol(theta_name)
    th = rt.sym(theta_name)

    def pull(f: SuperPolynomial) -> SuperPolynomial:
        val = f.eval_even(point).scalar_part()
        d = Fraction(0)
        for name, comp in xi.items():
            d += frac(comp) * f.diff_even(name).eval_even(point).scalar_part()
        return rt.scalar(val) + th.scale(d)

    return rt, pull


def odd_plane_obstruction(target_table: SymbolTable, point: dict, xi1: dict,
                          xi2: dict, zeta=None) -> bool:
    """Multiplicativity of the skeletal odd-plane candidate morphism
    f -> f(m) + df(xi1) th1 + df(xi2) th2 + df(zeta) th1 th2 on all monomial
    pairs up to degree 2: holds iff xi1 and xi2 are linearly dependent."""
    rt = SymbolTable()
    rt.odd_symbol("th1")
    rt.odd_symbol("th2")
    th1, th2 = rt.sym("th1"), rt.sym("th2")
    zeta = zeta or {}

    def dval(f, v):
        out = Fraction(0)
        for name, comp in v.items():
            out += frac(comp) * f.diff_even(name).eval_even(point).scalar_part()
        return out

    def pull(f):
        return (rt.scalar(f.eval_even(point).scalar_part())
                + th1.scale(dval(f, xi1)) + th2.scale(dval(f, xi2))
                + (th1 * th2).scale(dval(f, zeta)))

    names = target_table.names()
    monos = [target_table.sym(n) for n in names]
    monos += [target_table.sym(a) * target_table.sym(b)
              for i, a in enumerate(names) for b in names[i:]]
    for f in monos:
        for g in monos:
            if pull(f * g) != pull(f) * pull(g):
                return False
    return True


def vectors_dependent(xi1: dict, xi2: dict, names) -> bool:
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            d = frac(xi1.get(a, 0)) * frac(xi2.get(b, 0)) - frac(xi1.get(b, 0)) * frac(xi2.get(a, 0))
            if d != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Factorization into ordered exponentials
# ---------------------------------------------------------------------------

def check_commuting(m: FleshMorphism):
    """All xi_I must commute pairwise; raises CommutationError otherwise."""
    items = sorted(m.xi)
    for i, I in enumerate(items):
        X = m.xi_field(I)
        for J in items[i + 1:]:
            Y = m.xi_field(J)
            for name in m.target_even:
                y = m.table.sym(name)
                if X(Y(y)) != Y(X(y)):
                    raise CommutationError((I, J))


def factorize(m: FleshMorphism):
    """Group Xi by theta prefix: Xi = sum_A theta^A Xi_A with A running over
    subsets of the first n_theta odd coordinates.  Returns
    {A: [(I_eta, fields)]} with I_eta the remaining index part."""
    check_commuting(m)
    groups = {}
    for I, comps in m.xi.items():
        A = tuple(i for i in I if i <= m.n_theta)
        Ieta = tuple(i for i in I if i > m.n_theta)
        groups.setdefault(A, []).append((Ieta, comps))
    return groups


def pullback_factorized(m: FleshMorphism, f) -> SuperPolynomial:
    """Apply e^(Xi_empty) prod_A e^(theta^A Xi_A) f and substitute the base
    map; agrees with the direct exponential pullback when the xi commute."""
    groups = factorize(m)
    g = m._lift(f)

    def apply_group(A, parts, h):
        def once(u):
            out = m.table.zero()
            for Ieta, comps in parts:
                X = Derivation(m.table, EVEN, dict(comps), "xi")
                out = out + m.odd_monomial(A + Ieta) * X(u)
            return out

        total = h
        cur = h
        n = 0
        while True:
            n += 1
            cur = once(cur)
            if cur.is_zero():
                return total
            total = total + cur.scale(Fraction(1, _fact(n)))
            if n > m.q:
                raise RuntimeError("series failed to terminate")

    # empty prefix last so that e^(Xi_empty) is leftmost; the factors
    # commute, so application order is immaterial.
    for A in sorted(groups, key=lambda a: (len(a), a), reverse=True):
        g = apply_group(A, groups[A], g)
    return m.substitute_base(g)


# ---------------------------------------------------------------------------
# Component fields and the nonlinear expansion
# ---------------------------------------------------------------------------

def check_chart_condition(m: FleshMorphism):
    """xi_I xi_J y = 0 for every pair and every chart coordinate."""
    items = sorted(m.xi)
    for I in items:
        X = m.xi_field(I)
        for J in items:
            Y = m.xi_field(J)
            for name in m.target_even:
                if X(Y(m.table.sym(name))) != m.table.zero():
                    raise ChartAssumptionError((I, J))


def component_fields(m: FleshMorphism):
    """Read the components of Phi^* y^i by theta coefficients (two-theta
    source): phi, psi_1, psi_2, F per target coordinate."""
    if m.n_theta != 2:
        raise ValueError("component dictionary is for two theta coordinates")
    check_chart_condition(m)
    th = [m.table.sym(m.odd_coords[0]), m.table.sym(m.odd_coords[1])]
    names = [m.odd_coords[0], m.odd_coords[1]]
    out = {}
    for yname in m.target_even:
        p = m.pullback_even(m.table.sym(yname))
        comp = {
            "phi": _strip(p, m, ()),
            "psi1": _strip(p, m, (names[0],)),
            "psi2": _strip(p, m, (names[1],)),
            "F": _strip(p, m, (names[0], names[1])),
        }
        out[yname] = comp
    return out


def _strip(p: SuperPolynomial, m: FleshMorphism, theta_names):
    """Coefficient of the given theta monomial with no other thetas left."""
    coeff = p.coefficient_of_odd(theta_names) if theta_names else p
    theta_idx = {m.table.symbol(n).index for n in m.odd_coords[: m.n_theta]}
    out = m.table.zero()
    for (ev, od), c in coeff.terms.items():
        if any(i in theta_idx for i in od):
            continue
        out = out + SuperPolynomial(m.table, {(ev, od): c})
    return out


def random_flesh_morphism(rng, m_even=1, n_target=2, k_theta=2, L_eta=2,
                          deg=2, n_xi=3, commuting=False, chart=False):
    """Random morphism at desk scale.

    commuting=True restricts the xi to constant-coefficient fields (they
    commute pairwise); chart=True additionally makes xi_I xi_J y = 0 hold by
    keeping the components free of target coordinates.
    """
    evens = tuple(f"x{i+1}" for i in range(m_even))
    odds = tuple(f"th{i+1}" for i in range(k_theta)) + tuple(f"et{i+1}" for i in range(L_eta))
    targets = tuple(f"y{i+1}" for i in range(n_target))
    q = len(odds)

    proto = SymbolTable()
    for n in evens:
        proto.even_symbol(n)
    for n in targets:
        proto.even_symbol(n)

    def rand_phi():
        p = proto.zero()
        for _ in range(rng.randint(1, 2)):
            p = p + proto.monomial(Fraction(rng.randint(-3, 3)),
                                   [(n, rng.randint(0, deg)) for n in evens])
        return p

    def rand_component():
        if chart or commuting:
            # x-dependence only: constant in the target chart
            p = proto.zero()
            for _ in range(rng.randint(1, 2)):
                p = p + proto.monomial(Fraction(rng.randint(-2, 2)),
                                       [(n, rng.randint(0, 1)) for n in evens])
            return p
        p = proto.zero()
        for _ in range(rng.randint(1, 2)):
            p = p + proto.monomial(
                Fraction(rng.randint(-2, 2)),
                [(n, rng.randint(0, 1)) for n in evens]
                + [(n, rng.randint(0, deg)) for n in targets if rng.random() < 0.5],
            )
        return p

    indices = list(even_subsets_pos(q))
    rng.shuffle(indices)
    xi = {}
    for I in indices[: min(n_xi, len(indices))]:
        xi[I] = {n: rand_component() for n in targets if rng.random() < 0.8}
        if not xi[I]:
            xi[I] = {targets[0]: rand_component()}
    phi = {n: rand_phi() for n in targets}
    return FleshMorphism(evens, odds, targets, phi, xi, n_theta=k_theta)


def nonlinear_expansion_check(m: FleshMorphism, f) -> bool:
    """Pullback of a nonlinear f agrees with the two-derivative component
    expansion: f(phi) + th^a d_i f(phi) psi_a^i
    + th1 th2 (d_i f(phi) F^i - d_ij f(phi) psi_1^i psi_2^j)."""
    comps = component_fields(m)
    f = m._lift(f)
    th1 = m.table.sym(m.odd_coords[0])
    th2 = m.table.sym(m.odd_coords[1])
    phi_sub = {y: comps[y]["phi"] for y in m.target_even}

    def at_phi(g):
        return g.substitute(phi_sub)

    rhs = at_phi(f)
    for a, key in ((th1, "psi1"), (th2, "psi2")):
        acc = m.table.zero()
        for y in m.target_even:
            acc = acc + at_phi(f.diff_even(y)) * comps[y][key]
        rhs = rhs + a * acc
    accF = m.table.zero()
    acc2 = m.table.zero()
    for y in m.target_even:
        accF = accF + at_phi(f.diff_even(y)) * comps[y]["F"]
        for y2 in m.target_even:
            acc2 = acc2 + at_phi(f.diff_even(y).diff_even(y2)) * comps[y]["psi1"] * comps[y2]["psi2"]
    rhs = rhs + th1 * th2 * (accF - acc2)
    return m.pullback_even(f) == rhs
