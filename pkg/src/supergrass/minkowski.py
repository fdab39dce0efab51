"""Super Minkowski translation algebras over the normed division algebras.

The odd sector is realized by 5x5 matrices over K tensor a Clifford envelope
(one generator eps with eps^2 = -1 plus Grassmann parameters), following the
block embedding in which the even translations occupy the upper-right 2x2
block.  Every matrix product entry is a sum of single binary K-products, so
octonion non-associativity never enters.

Also here: the Lorentz side (the half-spinor action on Hermitian 2x2
matrices over K, its bracket closure), invariant vector fields with their
structure relations, the complexified dimensional reductions with central
charges, the exceptional four-complex-dimensional bridge for K = H, and the
R-symmetry invariance of null vectors.
"""

from __future__ import annotations

from fractions import Fraction

from .divalg import (ALGEBRAS, C, DAElement, DivisionAlgebra, H, O, R,
                     gamma_constants)
from .kernel import (EVEN, ODD, Derivation, ParityError, SuperPolynomial,
                     SymbolTable, super_bracket)
from .scalars import QI, frac

ALG_BY_K = {1: R, 2: C, 4: H, 8: O}
EPS_AB = {(1, 1): 0, (2, 2): 0, (1, 2): 1, (2, 1): -1}


# ---------------------------------------------------------------------------
# Hermitian 2x2 matrices over K and the Minkowski norm
# ---------------------------------------------------------------------------

class Hermitian2:
    """m = [[h11, z], [conj z, h22]] with rational diagonal and z in K."""

    def __init__(self, h11, h22, z: DAElement):
        self.h11 = frac(h11)
        self.h22 = frac(h22)
        self.z = z

    @classmethod
    def from_txz(cls, t, x, z: DAElement):
        return cls(Fraction(frac(t) + frac(x), 2), Fraction(frac(t) - frac(x), 2),
                   z.scale(Fraction(1, 2)))

    @property
    def t(self):
        return self.h11 + self.h22

    @property
    def x(self):
        return self.h11 - self.h22

    def z_full(self):
        return self.z.scale(2)

    def det(self):
        """h11 h22 - |z|^2: one quarter of the Minkowski norm of (t,x,z)."""
        return self.h11 * self.h22 - self.z.norm_sq()

    def __eq__(self, other):
        return (self.h11 == other.h11 and self.h22 == other.h22 and self.z == other.z)

    def __repr__(self):
        return f"Hermitian2({self.h11}, {self.h22}, {self.z!r})"


def minkowski_norm_identity(t, x, z: DAElement) -> bool:
    """t^2 - x^2 - |z|^2 = 4 det h(t,x,z)."""
    h = Hermitian2.from_txz(t, x, z)
    return frac(t) ** 2 - frac(x) ** 2 - z.norm_sq() == 4 * h.det()


# ---------------------------------------------------------------------------
# The 5x5 matrix realization of the odd translations
# ---------------------------------------------------------------------------

class MinkContext:
    """K plus the Clifford envelope C(span(eps) + q Grassmann parameters)."""

    def __init__(self, k, n_eta=0):
        self.k = k
        self.alg = ALG_BY_K[k]
        self.table = SymbolTable()
        self.table.clifford_symbol("eps", 1)
        self.eta_names = tuple(
            self.table.odd_symbol(f"et{i+1}").name for i in range(n_eta)
        )

    def eps(self):
        return self.table.sym("eps")

    def eta(self, i):
        return self.table.sym(f"et{i}")

    def kzero(self):
        return DAElement(self.alg, [self.table.zero() for _ in range(self.alg.dim)])

    def kvalue(self, alpha, poly):
        coeffs = [self.table.zero() for _ in range(self.alg.dim)]
        coeffs[alpha - 1] = poly
        return DAElement(self.alg, coeffs)

    def promote(self, v: DAElement) -> DAElement:
        """Rational or Gaussian coefficients -> constant polynomials."""
        return DAElement(self.alg, [
            c if isinstance(c, SuperPolynomial) else self.table.scalar(c)
            for c in v.coeffs
        ])

    def mat(self, entries=None):
        return Mat5(self, entries)

    def identity(self):
        m = Mat5(self)
        one = self.table.one()
        for i in range(5):
            m.entries[i][i] = self.kvalue(1, one)
        return m


class Mat5:
    """5x5 matrix over K tensor (Clifford envelope)."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: MinkContext, entries=None):
        self.ctx = ctx
        if entries is None:
            entries = [[ctx.kzero() for _ in range(5)] for _ in range(5)]
        self.entries = entries

    def clone(self):
        return Mat5(self.ctx, [row[:] for row in self.entries])

    def __add__(self, other):
        return Mat5(self.ctx, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ])

    def __sub__(self, other):
        return Mat5(self.ctx, [
            [a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ])

    def __neg__(self):
        return Mat5(self.ctx, [[-a for a in r] for r in self.entries])

    def scale(self, c):
        """Scalar multiple (exact scalar or polynomial, multiplied on the left)."""
        if isinstance(c, (int, Fraction, QI)):
            c = self.ctx.table.scalar(c)
        return Mat5(self.ctx, [[e.scale(c) for e in row] for row in self.entries])

    def __matmul__(self, other):
        out = Mat5(self.ctx)
        for i in range(5):
            for l in range(5):
                a = self.entries[i][l]
                if a.is_zero():
                    continue
                for j in range(5):
                    b = other.entries[l][j]
                    if b.is_zero():
                        continue
                    out.entries[i][j] = out.entries[i][j] + a * b
        return out

    def conj_formal_i(self):
        """Conjugate every scalar coefficient w.r.t. the formal square root
        of -1 (entrywise; K-basis coefficients untouched)."""
        def cpoly(p: SuperPolynomial):
            return SuperPolynomial(p.table, {
                key: (c.conjugate() if isinstance(c, QI) else c)
                for key, c in p.terms.items()
            })

        return Mat5(self.ctx, [
            [DAElement(e.alg, [cpoly(c) for c in e.coeffs]) for e in row]
            for row in self.entries
        ])

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return all(
            a == b
            for r1, r2 in zip(self.entries, other.entries)
            for a, b in zip(r1, r2)
        )

    def __repr__(self):
        return f"<Mat5 over {self.ctx.alg.which}>"


def anticomm(m: Mat5, n: Mat5) -> Mat5:
    return (m @ n) + (n @ m)


def comm(m: Mat5, n: Mat5) -> Mat5:
    return (m @ n) - (n @ m)


# -- building blocks ----------------------------------------------------------

V_SLOT = {(1, 1): (0, 3), (1, 2): (0, 4), (2, 1): (1, 3), (2, 2): (1, 4)}


def x_matrix(ctx: MinkContext, a, b, value: DAElement = None) -> Mat5:
    """X_ab with an optional K value in place of 1."""
    m = Mat5(ctx)
    i, j = V_SLOT[(a, b)]
    m.entries[i][j] = ctx.promote(value) if value is not None else ctx.kvalue(1, ctx.table.one())
    return m


def r_matrix(ctx: MinkContext, a, b) -> Mat5:
    """R_(ab) = (X_ab + X_ba)/2."""
    return (x_matrix(ctx, a, b) + x_matrix(ctx, b, a)).scale(Fraction(1, 2))


def im_matrix(ctx: MinkContext, gamma) -> Mat5:
    """Im_gamma = (u_gamma X_12 - u_gamma X_21)/2."""
    half = ctx.kvalue(gamma, ctx.table.scalar(Fraction(1, 2)))
    m = Mat5(ctx)
    m.entries[0][4] = half
    m.entries[1][3] = -half
    return m


def script_i(ctx: MinkContext, zeta: DAElement) -> Mat5:
    """I_[12](zeta) = Im(zeta) (X_12 - X_21)/2 for purely imaginary zeta."""
    z = ctx.promote(zeta)
    half = z.scale(Fraction(1, 2))
    m = Mat5(ctx)
    m.entries[0][4] = half
    m.entries[1][3] = -half
    return m


def q_matrix(ctx: MinkContext, a, lam) -> Mat5:
    """The eps-weighted odd matrix with K value lam on row a.

    lam may be a rational DAElement or one with even polynomial coefficients.
    """
    lam = ctx.promote(lam) if not isinstance(lam.coeffs[0], SuperPolynomial) else lam
    for c in lam.coeffs:
        if c.parity() not in (None, EVEN):
            raise ParityError("q_matrix needs even coefficients")
    eps = ctx.eps()
    lam_eps = DAElement(lam.alg, [eps * c for c in lam.coeffs])
    lam_bar_eps = DAElement(lam.alg, [eps * c for c in lam.conj().coeffs])
    m = Mat5(ctx)
    if a == 1:
        m.entries[0][2] = lam_eps
        m.entries[2][3] = lam_bar_eps
    elif a == 2:
        m.entries[1][2] = lam_eps
        m.entries[2][4] = lam_bar_eps
    else:
        raise ValueError("row index must be 1 or 2")
    return m


def q_unit(ctx: MinkContext, a, alpha) -> Mat5:
    return q_matrix(ctx, a, ctx.alg.unit(alpha))


# -- anticommutation relations -------------------------------------------------

def qq_rhs(ctx: MinkContext, a, b, lam: DAElement, mu: DAElement) -> Mat5:
    """- lam conj(mu) X_ab - mu conj(lam) X_ba."""
    lam = ctx.promote(lam)
    mu = ctx.promote(mu)
    return -(x_matrix(ctx, a, b, lam * mu.conj()) + x_matrix(ctx, b, a, mu * lam.conj()))


def qq_check(ctx: MinkContext, a, b, lam, mu) -> bool:
    return anticomm(q_matrix(ctx, a, lam), q_matrix(ctx, b, mu)) == qq_rhs(ctx, a, b, lam, mu)


def qqbis_rhs(ctx: MinkContext, a, b, lam: DAElement, mu: DAElement) -> Mat5:
    """-2(Re_(ab)(lam conj mu) + Im_[ab](lam conj mu))."""
    zeta = ctx.promote(lam) * ctx.promote(mu).conj()
    re_part = (x_matrix(ctx, a, b, zeta.re()) + x_matrix(ctx, b, a, zeta.re())).scale(Fraction(1, 2))
    im_part = (x_matrix(ctx, a, b, zeta.im()) - x_matrix(ctx, b, a, zeta.im())).scale(Fraction(1, 2))
    return -(re_part + im_part).scale(2)


def qqter_rhs(ctx: MinkContext, a, b, alpha, beta, gammas=None) -> Mat5:
    """-2(delta^(alpha beta) R_(ab) + Gamma^([alpha beta] gamma) eps_ab Im_gamma)."""
    if gammas is None:
        gammas = gamma_constants(ctx.alg)
    out = Mat5(ctx)
    if alpha == beta:
        out = out + r_matrix(ctx, a, b)
    e = EPS_AB[(a, b)]
    if e:
        for g in range(2, ctx.k + 1):
            c = gammas.get((alpha, beta, g))
            if c:
                out = out + im_matrix(ctx, g).scale(Fraction(c) * e)
    return out.scale(-2)


def qqter_check_all(k) -> bool:
    ctx = MinkContext(k)
    gammas = gamma_constants(ctx.alg)
    qs = {(a, al): q_unit(ctx, a, al) for a in (1, 2) for al in range(1, k + 1)}
    for a in (1, 2):
        for b in (1, 2):
            for al in range(1, k + 1):
                for be in range(1, k + 1):
                    lhs = anticomm(qs[(a, al)], qs[(b, be)])
                    if lhs != qqter_rhs(ctx, a, b, al, be, gammas):
                        return False
    return True


def nilpotency_checks(ctx: MinkContext) -> bool:
    """X X = X Q = Q X = Q Q Q = 0 in the translation sector."""
    xs = [x_matrix(ctx, a, b) for a in (1, 2) for b in (1, 2)]
    qs = [q_unit(ctx, a, al) for a in (1, 2) for al in range(1, ctx.k + 1)]
    for x1 in xs:
        for x2 in xs:
            if not (x1 @ x2).is_zero():
                return False
        for q in qs:
            if not (x1 @ q).is_zero() or not (q @ x1).is_zero():
                return False
    for q1 in qs[:3]:
        for q2 in qs[:3]:
            for q3 in qs[:3]:
                if not ((q1 @ q2) @ q3).is_zero():
                    return False
    return True


def centrality_check(ctx: MinkContext) -> bool:
    """All R_(ab), Im_alpha commute together and with every Q."""
    zs = [r_matrix(ctx, a, b) for (a, b) in ((1, 1), (1, 2), (2, 2))]
    zs += [im_matrix(ctx, g) for g in range(2, ctx.k + 1)]
    qs = [q_unit(ctx, a, al) for a in (1, 2) for al in range(1, ctx.k + 1)]
    for z1 in zs:
        for z2 in zs:
            if not comm(z1, z2).is_zero():
                return False
        for q in qs:
            if not comm(z1, q).is_zero():
                return False
    return True


# -- null vectors and R-symmetries ----------------------------------------------

def translation_block(m: Mat5) -> Hermitian2:
    """Read the upper-right 2x2 block as a Hermitian matrix over K."""
    def as_rational(e: DAElement):
        for c in e.coeffs[1:]:
            if not c.is_zero():
                raise ValueError("diagonal entry is not real")
        return _rat(e.coeffs[0].scalar_part())

    def as_kelem(e: DAElement):
        return DAElement(e.alg, [_rat(c.scalar_part()) for c in e.coeffs])

    h11 = as_rational(m.entries[0][3])
    h22 = as_rational(m.entries[1][4])
    z = as_kelem(m.entries[0][4])
    zbar = as_kelem(m.entries[1][3])
    if zbar != z.conj():
        raise ValueError("block is not Hermitian")
    return Hermitian2(h11, h22, z)


def _rat(c):
    if isinstance(c, QI):
        if c.im != 0:
            raise ValueError("not rational")
        return c.re
    return frac(c)


def x_of_pair(alg: DivisionAlgebra, lam1: DAElement, lam2: DAElement) -> Hermitian2:
    """X with [Q^(lam1,lam2), Q^(lam1,lam2)] = -2X, extracted from the matrices."""
    ctx = MinkContext(alg.dim)
    q = q_matrix(ctx, 1, lam1) + q_matrix(ctx, 2, lam2)
    a = anticomm(q, q).scale(Fraction(-1, 2))
    return translation_block(a)


def null_vector_check(alg: DivisionAlgebra, lam1: DAElement, lam2: DAElement) -> bool:
    """det X = 0 and the time coordinate of X is nonnegative."""
    x = x_of_pair(alg, lam1, lam2)
    return x.det() == 0 and x.t >= 0


def r_symmetry_check(tag: str, lam1: DAElement, lam2: DAElement, unit: DAElement) -> bool:
    """X^(lam) is unchanged under the R-symmetry action by a unit element:
    left multiplication for C, right multiplication for H."""
    alg = ALGEBRAS[tag]
    if unit.norm_sq() != 1:
        raise ValueError("R-symmetry element must have unit norm")
    if tag == "C":
        new1, new2 = unit * lam1, unit * lam2
    elif tag == "H":
        new1, new2 = lam1 * unit, lam2 * unit
    else:
        raise ValueError("R-symmetry action implemented for C and H")
    return x_of_pair(alg, new1, new2) == x_of_pair(alg, lam1, lam2)


# ---------------------------------------------------------------------------
# Exponential group law
# ---------------------------------------------------------------------------

class SuperTranslationElement:
    """Coefficients of V + Theta: v[(a,b)] for the symmetric slots, w[gamma]
    for the imaginary directions, theta[(a,alpha)] for the odd charges.

    v and w must be even polynomials, theta odd (checked)."""

    def __init__(self, ctx: MinkContext, v=None, w=None, theta=None):
        self.ctx = ctx
        self.v = {k2: self._even(p) for k2, p in (v or {}).items()}
        self.w = {g: self._even(p) for g, p in (w or {}).items()}
        self.theta = {key: self._odd(p) for key, p in (theta or {}).items()}

    def _even(self, p):
        p = self.ctx.table.scalar(p) if isinstance(p, (int, Fraction, QI)) else p
        if p.parity() not in (None, EVEN):
            raise ParityError("translation coefficients must be even")
        return p

    def _odd(self, p):
        if p.parity() not in (None, ODD):
            raise ParityError("odd charges need odd coefficients")
        return p

    def v_matrix(self) -> Mat5:
        out = Mat5(self.ctx)
        for (a, b), p in self.v.items():
            out = out + r_matrix(self.ctx, a, b).scale(p)
        for g, p in self.w.items():
            out = out + im_matrix(self.ctx, g).scale(p)
        return out

    def theta_matrix(self) -> Mat5:
        out = Mat5(self.ctx)
        for (a, alpha), p in self.theta.items():
            out = out + q_unit(self.ctx, a, alpha).scale(p)
        return out


def exp_element(el: SuperTranslationElement) -> Mat5:
    """e^(V + Theta) = 1 + V + Theta + Theta^2/2 (the series truncates)."""
    V = el.v_matrix()
    T = el.theta_matrix()
    return el.ctx.identity() + V + T + (T @ T).scale(Fraction(1, 2))


def group_law_check(e1: SuperTranslationElement, e2: SuperTranslationElement) -> bool:
    """exp(V+Theta) exp(W+Psi) = exp((V+W) + (Theta+Psi) + [Theta,Psi]/2)."""
    ctx = e1.ctx
    lhs = exp_element(e1) @ exp_element(e2)
    T1, T2 = e1.theta_matrix(), e2.theta_matrix()
    V = e1.v_matrix() + e2.v_matrix() + comm(T1, T2).scale(Fraction(1, 2))
    T = T1 + T2
    rhs = ctx.identity() + V + T + (T @ T).scale(Fraction(1, 2))
    return lhs == rhs


# ---------------------------------------------------------------------------
# Lorentz side: rho, the basis table, bracket closure
# ---------------------------------------------------------------------------

class KMat2:
    """2x2 matrix over K with rational (or Gaussian) coefficients."""

    def __init__(self, alg, entries):
        self.alg = alg
        self.entries = entries  # [[DAElement, DAElement], [DAElement, DAElement]]

    @classmethod
    def build(cls, alg, e11, e12, e21, e22):
        return cls(alg, [[e11, e12], [e21, e22]])

    def __add__(self, other):
        return KMat2(self.alg, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ])

    def scale(self, c):
        return KMat2(self.alg, [[e.scale(c) for e in row] for row in self.entries])

    def __matmul__(self, other):
        out = [[self.alg.zero_like(), self.alg.zero_like()],
               [self.alg.zero_like(), self.alg.zero_like()]]
        for i in range(2):
            for j in range(2):
                for l in range(2):
                    out[i][j] = out[i][j] + self.entries[i][l] * other.entries[l][j]
        return KMat2(self.alg, out)

    def dagger(self):
        return KMat2(self.alg, [
            [self.entries[0][0].conj(), self.entries[1][0].conj()],
            [self.entries[0][1].conj(), self.entries[1][1].conj()],
        ])

    def trace_free(self):
        return (self.entries[0][0] + self.entries[1][1]).is_zero()

    def __eq__(self, other):
        return all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))


def h2_basis(alg: DivisionAlgebra):
    """(e_-1, e_0, e_1, ..., e_k) as 2x2 K-matrices."""
    one, zero = alg.one(), alg.zero_like()
    es = [
        KMat2.build(alg, one, zero, zero, one),
        KMat2.build(alg, one, zero, zero, -one),
        KMat2.build(alg, zero, one, one, zero),
    ]
    for j in range(2, alg.dim + 1):
        u = alg.unit(j)
        es.append(KMat2.build(alg, zero, u, -u, zero))
    return es


def hermitian_to_vector(alg: DivisionAlgebra, m: KMat2):
    """Coordinates of a Hermitian matrix in the e basis (length k+2)."""
    p = m.entries[0][0]
    q = m.entries[0 + 1][1]
    z = m.entries[0][1]
    if any(not c == 0 for c in _coeff_tail(p)) or any(not c == 0 for c in _coeff_tail(q)):
        raise ValueError("diagonal must be real")
    if m.entries[1][0] != z.conj():
        raise ValueError("matrix is not Hermitian")
    pr, qr = p.coeffs[0], q.coeffs[0]
    vec = [Fraction(pr + qr, 2), Fraction(pr - qr, 2)]
    vec.extend(z.coeffs)
    return vec


def _coeff_tail(e: DAElement):
    return e.coeffs[1:]


def rho_endo(alg: DivisionAlgebra, sigma: KMat2):
    """Matrix of m -> (sigma m + m conj(sigma)^t)/2 on the e basis; raises if
    sigma is not trace free."""
    if not sigma.trace_free():
        raise ValueError("sigma must be trace free")
    basis = h2_basis(alg)
    cols = []
    sig_dag = sigma.dagger()
    for e in basis:
        image = (sigma @ e + e @ sig_dag).scale(Fraction(1, 2))
        cols.append(hermitian_to_vector(alg, image))
    n = alg.dim + 2
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def boost_matrix(alg, j):
    """B_j: e_-1 <-> e_j, everything else to 0."""
    n = alg.dim + 2
    m = [[Fraction(0)] * n for _ in range(n)]
    pj = j + 1
    m[pj][0] = Fraction(1)
    m[0][pj] = Fraction(1)
    return tuple(tuple(r) for r in m)


def rotation_matrix(alg, i, j):
    """A_ij: e_i -> e_j, e_j -> -e_i."""
    n = alg.dim + 2
    m = [[Fraction(0)] * n for _ in range(n)]
    pi, pj = i + 1, j + 1
    m[pj][pi] = Fraction(1)
    m[pi][pj] = Fraction(-1)
    return tuple(tuple(r) for r in m)


def sigma_table(alg: DivisionAlgebra):
    """(label, endo, sigma) rows of the displayed correspondence."""
    one, zero = alg.one(), alg.zero_like()
    rows = [("B0", boost_matrix(alg, 0), KMat2.build(alg, one, zero, zero, -one)),
            ("B1", boost_matrix(alg, 1), KMat2.build(alg, zero, one, one, zero)),
            ("A01", rotation_matrix(alg, 0, 1), KMat2.build(alg, zero, -one, one, zero))]
    for j in range(2, alg.dim + 1):
        u = alg.unit(j)
        rows.append((f"B{j}", boost_matrix(alg, j), KMat2.build(alg, zero, u, -u, zero)))
        rows.append((f"A0{j}", rotation_matrix(alg, 0, j), KMat2.build(alg, zero, -u, -u, zero)))
        rows.append((f"A1{j}", rotation_matrix(alg, 1, j), KMat2.build(alg, u, zero, zero, -u)))
    return rows


def basis_table_check(alg: DivisionAlgebra) -> bool:
    return all(rho_endo(alg, sigma) == endo for _, endo, sigma in sigma_table(alg))


def boost_bracket_check(alg: DivisionAlgebra) -> bool:
    """A_ij = -[B_i, B_j] for all 0 <= i < j <= k."""
    for i in range(0, alg.dim + 1):
        for j in range(i + 1, alg.dim + 1):
            lhs = rotation_matrix(alg, i, j)
            br = mat_sub(mat_mul(boost_matrix(alg, i), boost_matrix(alg, j)),
                         mat_mul(boost_matrix(alg, j), boost_matrix(alg, i)))
            if lhs != mat_neg(br):
                return False
    return True


def residual_rotations_fix_real_part(alg: DivisionAlgebra) -> bool:
    """The excluded rotations A_ij (2 <= i < j) annihilate e_-1, e_0, e_1."""
    for i in range(2, alg.dim + 1):
        for j in range(i + 1, alg.dim + 1):
            m = rotation_matrix(alg, i, j)
            for col in (0, 1, 2):
                if any(m[r][col] != 0 for r in range(len(m))):
                    return False
    return True


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in r) for r in a)


def tf2_basis(alg: DivisionAlgebra):
    """Real basis of the trace-free 2x2 matrices over K (3k elements)."""
    zero = alg.zero_like()
    out = []
    for a in range(1, alg.dim + 1):
        u = alg.unit(a)
        out.append(KMat2.build(alg, u, zero, zero, -u))
        out.append(KMat2.build(alg, zero, u, zero, zero))
        out.append(KMat2.build(alg, zero, zero, u, zero))
    return out


class _Echelon:
    """Sparse exact row echelon accumulator over Q."""

    def __init__(self):
        self.rows = {}  # pivot position -> {pos: Fraction} with pivot value 1

    def add(self, vec: dict) -> bool:
        v = dict(vec)
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                c = v[p]
                self.rows[p] = {i: x / c for i, x in v.items()}
                return True
            c = v[p]
            for i, x in row.items():
                nv = v.get(i, Fraction(0)) - c * x
                if nv:
                    v[i] = nv
                else:
                    v.pop(i, None)
        return False

    @property
    def rank(self):
        return len(self.rows)


def _flatten(m):
    n = len(m)
    return {i * n + j: Fraction(m[i][j]) for i in range(n) for j in range(n) if m[i][j]}


def lie_closure(k: int):
    """(dimension, integer basis matrices) of the bracket closure of
    rho(trace-free 2x2 over K).

    Internally works with twice the generators: entries become integers and
    scaling does not change the span.
    """
    alg = ALG_BY_K[k]

    def doubled(m):
        out = []
        for row in m:
            r = []
            for x in row:
                v = 2 * x
                if v.denominator != 1:
                    raise ArithmeticError("rho entries should be half-integral")
                r.append(v.numerator)
            out.append(tuple(r))
        return tuple(out)

    gens = [doubled(rho_endo(alg, s)) for s in tf2_basis(alg)]
    n = alg.dim + 2

    def imul(a, b):
        bt = tuple(zip(*b))
        return tuple(
            tuple(sum(x * y for x, y in zip(ra, cb)) for cb in bt) for ra in a
        )

    def icomm(a, b):
        ab, ba = imul(a, b), imul(b, a)
        return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))

    span = _Echelon()
    basis = []
    for g in gens:
        if span.add(_flatten(g)):
            basis.append(g)
    frontier = list(basis)
    while frontier:
        fresh = []
        for a in basis:
            for b in frontier:
                c = icomm(a, b)
                if span.add(_flatten(c)):
                    fresh.append(c)
        basis.extend(fresh)
        frontier = fresh
    return span.rank, basis


def lie_closure_dim(k: int) -> int:
    return lie_closure(k)[0]


def lorentz_conjugation(alg: DivisionAlgebra, S: KMat2, m: Mat5) -> Mat5:
    """g e g^-1 with g = blockdiag(S, 1, (S^dagger)^-1); K = R or C only
    (the matrix algebra must be associative and commutative for the block
    inverse formula used here)."""
    if alg.which not in ("R", "C"):
        raise ValueError("conjugation action implemented for R and C only")
    det = (S.entries[0][0] * S.entries[1][1] - S.entries[0][1] * S.entries[1][0])
    for c in det.coeffs[1:]:
        if not c == 0:
            raise ValueError("determinant must be real for this helper")
    ctx = m.ctx
    one = ctx.table.one()

    def kv(e: DAElement):
        return ctx.promote(e)

    g = Mat5(ctx)
    ginv = Mat5(ctx)
    # upper block: S and S^-1
    d = det.coeffs[0]
    sinv = KMat2.build(alg,
                       S.entries[1][1].scale(1 / d), S.entries[0][1].scale(-1 / d),
                       S.entries[1][0].scale(-1 / d), S.entries[0][0].scale(1 / d))
    for i in range(2):
        for j in range(2):
            g.entries[i][j] = kv(S.entries[i][j])
            ginv.entries[i][j] = kv(sinv.entries[i][j])
    g.entries[2][2] = ctx.kvalue(1, one)
    ginv.entries[2][2] = ctx.kvalue(1, one)
    # lower block: (S^dagger)^-1 and S^dagger
    sdag = S.dagger()
    sdag_inv = sinv.dagger()
    for i in range(2):
        for j in range(2):
            g.entries[3 + i][3 + j] = kv(sdag_inv.entries[i][j])
            ginv.entries[3 + i][3 + j] = kv(sdag.entries[i][j])
    return (g @ m) @ ginv


# ---------------------------------------------------------------------------
# Invariant vector fields on the super translation group
# ---------------------------------------------------------------------------

class InvariantFields:
    """Coordinates v^(ab) (3 even), w^gamma (k-1 even), th<a>_<alpha> (2k
    odd) with the left and right invariant odd vector fields

        D^alpha_a   = d^alpha_a - th^b_beta (delta ∂_(ab) + eps_ab ∂^[alpha beta])
        tau^alpha_a = d^alpha_a + th^b_beta (delta ∂_(ab) + eps_ab ∂^[alpha beta])
    """

    V_KEYS = ((1, 1), (1, 2), (2, 2))

    def __init__(self, k, n_eta=0):
        self.k = k
        self.alg = ALG_BY_K[k]
        self.gammas = gamma_constants(self.alg)
        t = SymbolTable()
        self.vname = {ab: t.even_symbol(f"v{ab[0]}{ab[1]}").name for ab in self.V_KEYS}
        self.wname = {g: t.even_symbol(f"w{g}").name for g in range(2, k + 1)}
        self.thname = {}
        for a in (1, 2):
            for alpha in range(1, k + 1):
                self.thname[(a, alpha)] = t.odd_symbol(f"th{a}_{alpha}").name
        for i in range(n_eta):
            t.odd_symbol(f"et{i+1}")
        self.table = t

    def _field(self, a, alpha, sign, label):
        t = self.table
        imgs = {self.thname[(a, alpha)]: t.one()}
        for b in (1, 2):
            key = self.vname[tuple(sorted((a, b)))]
            inc = t.sym(self.thname[(b, alpha)]).scale(sign)
            imgs[key] = imgs.get(key, t.zero()) + inc
        b = 2 if a == 1 else 1
        e = EPS_AB[(a, b)]
        for beta in range(1, self.k + 1):
            for g in range(2, self.k + 1):
                c = self.gammas.get((alpha, beta, g))
                if c:
                    key = self.wname[g]
                    inc = t.sym(self.thname[(b, beta)]).scale(sign * e * c)
                    imgs[key] = imgs.get(key, t.zero()) + inc
        return Derivation(t, ODD, imgs, label)

    def D(self, a, alpha) -> Derivation:
        return self._field(a, alpha, Fraction(-1), f"D{a}_{alpha}")

    def tau(self, a, alpha) -> Derivation:
        return self._field(a, alpha, Fraction(1), f"tau{a}_{alpha}")

    def pair_translation(self, a, b, alpha, beta, factor) -> Derivation:
        """factor * (delta^(alpha beta) ∂_(ab) + eps_ab ∂^[alpha beta])."""
        t = self.table
        imgs = {}
        if alpha == beta:
            imgs[self.vname[tuple(sorted((a, b)))]] = t.scalar(factor)
        e = EPS_AB[(a, b)]
        if e:
            for g in range(2, self.k + 1):
                c = self.gammas.get((alpha, beta, g))
                if c:
                    imgs[self.wname[g]] = t.scalar(factor * e * c)
        return Derivation(t, EVEN, imgs, "rhs")

    def relations_ok(self) -> bool:
        for a in (1, 2):
            for b in (1, 2):
                for alpha in range(1, self.k + 1):
                    for beta in range(1, self.k + 1):
                        tt = super_bracket(self.tau(a, alpha), self.tau(b, beta))
                        dd = super_bracket(self.D(a, alpha), self.D(b, beta))
                        td = super_bracket(self.tau(a, alpha), self.D(b, beta))
                        if tt != self.pair_translation(a, b, alpha, beta, Fraction(2)):
                            return False
                        if dd != self.pair_translation(a, b, alpha, beta, Fraction(-2)):
                            return False
                        if not td.is_zero():
                            return False
        return True


def r32_fields(n_eta=0):
    """The three-dimensional specialization in (t, x, y) coordinates:
    tau_1 = d_1 + th1(dt + dx) + th2 dy, tau_2 = d_2 + th1 dy + th2(dt - dx),
    and D_a with the opposite signs."""
    t = SymbolTable()
    for n in ("t", "x", "y"):
        t.even_symbol(n)
    t.odd_symbol("th1")
    t.odd_symbol("th2")
    for i in range(n_eta):
        t.odd_symbol(f"et{i+1}")
    th1, th2 = t.sym("th1"), t.sym("th2")

    def mk(sign, label):
        one = t.one()
        f1 = Derivation(t, ODD, {
            "th1": one, "t": th1.scale(sign), "x": th1.scale(sign), "y": th2.scale(sign)
        }, label + "1")
        f2 = Derivation(t, ODD, {
            "th2": one, "y": th1.scale(sign), "t": th2.scale(sign), "x": th2.scale(-sign)
        }, label + "2")
        return f1, f2

    tau1, tau2 = mk(Fraction(1), "tau")
    D1, D2 = mk(Fraction(-1), "D")
    dt = Derivation(t, EVEN, {"t": 1}, "dt")
    dx = Derivation(t, EVEN, {"x": 1}, "dx")
    dy = Derivation(t, EVEN, {"y": 1}, "dy")
    return t, {"tau1": tau1, "tau2": tau2, "D1": D1, "D2": D2, "dt": dt, "dx": dx, "dy": dy}


def r32_relations_ok() -> bool:
    t, ops = r32_fields()
    dt, dx, dy = ops["dt"], ops["dx"], ops["dy"]
    checks = [
        super_bracket(ops["tau1"], ops["tau1"]) == (dt + dx).scale(2),
        super_bracket(ops["tau1"], ops["tau2"]) == dy.scale(2),
        super_bracket(ops["tau2"], ops["tau2"]) == (dt - dx).scale(2),
        super_bracket(ops["D1"], ops["D1"]) == (dt + dx).scale(-2),
        super_bracket(ops["D1"], ops["D2"]) == dy.scale(-2),
        super_bracket(ops["D2"], ops["D2"]) == (dt - dx).scale(-2),
        super_bracket(ops["D1"], ops["tau1"]).is_zero(),
        super_bracket(ops["D1"], ops["tau2"]).is_zero(),
        super_bracket(ops["D2"], ops["tau1"]).is_zero(),
        super_bracket(ops["D2"], ops["tau2"]).is_zero(),
    ]
    return all(checks)


def r32_dictionary_ok() -> bool:
    """The k = 1 fields expressed through v^(11) = (t+x)/2, v^(12) = y,
    v^(22) = (t-x)/2 coincide with the displayed (t, x, y) fields."""
    inv = InvariantFields(1)
    t3, ops = r32_fields()
    half = Fraction(1, 2)
    sub = {
        "v11": (t3.sym("t") + t3.sym("x")).scale(half),
        "v12": t3.sym("y"),
        "v22": (t3.sym("t") - t3.sym("x")).scale(half),
        "th1_1": t3.sym("th1"),
        "th2_1": t3.sym("th2"),
    }

    def conjugated_equal(Xv: Derivation, Xt: Derivation) -> bool:
        # equality of derivations along the coordinate change: check on the
        # generators of the v table (all of which have images in sub)
        for s in inv.table.symbols:
            lhs = Xv(inv.table.sym(s.name)).substitute(sub)
            rhs = Xt(sub[s.name])
            if lhs != rhs:
                return False
        return True

    pairs = [
        (inv.tau(1, 1), ops["tau1"]),
        (inv.tau(2, 1), ops["tau2"]),
        (inv.D(1, 1), ops["D1"]),
        (inv.D(2, 1), ops["D2"]),
    ]
    return all(conjugated_equal(a, b) for a, b in pairs)


# ---------------------------------------------------------------------------
# k = 2: chiral charges, fields and the coordinate dictionary
# ---------------------------------------------------------------------------

def chiral_matrix_relations_ok() -> bool:
    """With q_a = Q^1_a - i Q^2_a and qbar_a = Q^1_a + i Q^2_a (the square
    root of 2 normalization dropped; all displayed relations are quadratic):
    [q_a, q_b] = [qbar_a, qbar_b] = 0 and [q_a, qbar_b] = -4 X_(a b-dot),
    where X_(a b-dot) = (X_ab + X_ba)/2 - i (u_2 X_ab - u_2 X_ba)/2."""
    ctx = MinkContext(2)
    i = QI(0, 1)

    def q(a):
        return q_unit(ctx, a, 1) - q_unit(ctx, a, 2).scale(i)

    def qbar(a):
        return q_unit(ctx, a, 1) + q_unit(ctx, a, 2).scale(i)

    for a in (1, 2):
        for b in (1, 2):
            if not anticomm(q(a), q(b)).is_zero():
                return False
            if not anticomm(qbar(a), qbar(b)).is_zero():
                return False
            xab = r_matrix(ctx, a, b) - (
                x_matrix(ctx, a, b, ctx.alg.unit(2)) - x_matrix(ctx, b, a, ctx.alg.unit(2))
            ).scale(Fraction(1, 2)).scale(i)
            if anticomm(q(a), qbar(b)) != xab.scale(-4):
                return False
    return True


def chiral_fields(n_eta=0):
    """Coordinates x^(a b-dot) (4 even), th^a and thb^a-dot (4 odd), with
    D_a = d_a - thb^bd ∂_(a bd), Dbar_ad = dbar_ad - th^b ∂_(b ad) and the
    tau fields with + signs."""
    t = SymbolTable()
    xs = {}
    for a in (1, 2):
        for b in (1, 2):
            xs[(a, b)] = t.even_symbol(f"x{a}{b}").name
    th = {a: t.odd_symbol(f"th{a}").name for a in (1, 2)}
    thb = {a: t.odd_symbol(f"thb{a}").name for a in (1, 2)}
    for i in range(n_eta):
        t.odd_symbol(f"et{i+1}")

    def mk(names_main, names_other, row_is_first, sign, label):
        out = {}
        for a in (1, 2):
            imgs = {names_main[a]: t.one()}
            for b in (1, 2):
                key = xs[(a, b)] if row_is_first else xs[(b, a)]
                imgs[key] = t.sym(names_other[b]).scale(sign)
            out[a] = Derivation(t, ODD, imgs, f"{label}{a}")
        return out

    D = mk(th, thb, True, Fraction(-1), "D")
    Dbar = mk(thb, th, False, Fraction(-1), "Dbar")
    tau = mk(th, thb, True, Fraction(1), "tau")
    taubar = mk(thb, th, False, Fraction(1), "taubar")
    dx = {(a, b): Derivation(t, EVEN, {xs[(a, b)]: 1}, f"d{a}{b}") for a in (1, 2) for b in (1, 2)}
    return t, {"D": D, "Dbar": Dbar, "tau": tau, "taubar": taubar, "dx": dx}


def chiral_field_relations_ok() -> bool:
    t, ops = chiral_fields()
    D, Db, tau, taub, dx = ops["D"], ops["Dbar"], ops["tau"], ops["taubar"], ops["dx"]
    for a in (1, 2):
        for b in (1, 2):
            if not super_bracket(D[a], D[b]).is_zero():
                return False
            if not super_bracket(Db[a], Db[b]).is_zero():
                return False
            if super_bracket(D[a], Db[b]) != dx[(a, b)].scale(-2):
                return False
            if super_bracket(tau[a], taub[b]) != dx[(a, b)].scale(2):
                return False
            for c in (1, 2):
                if not super_bracket(D[a], tau[c]).is_zero():
                    return False
                if not super_bracket(D[a], taub[c]).is_zero():
                    return False
                if not super_bracket(Db[a], tau[c]).is_zero():
                    return False
                if not super_bracket(Db[a], taub[c]).is_zero():
                    return False
    return True


def _qi_mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][l] * b[l][j] for l in range(n)), QI(0)) for j in range(n)] for i in range(n)]


def _qi_identity(n):
    return [[QI(1) if i == j else QI(0) for j in range(n)] for i in range(n)]


def coordinate_dictionary_ok(rows_coords, rows_derivs) -> bool:
    """rows_coords: matrix M with new coordinates = M * old coordinates;
    rows_derivs: claimed coefficients N of the new partials in the old ones.
    The chain rule demands M N^t = identity."""
    M = [[QI(c) if not isinstance(c, QI) else c for c in row] for row in rows_coords]
    N = [[QI(c) if not isinstance(c, QI) else c for c in row] for row in rows_derivs]
    n = len(M)
    Nt = [[N[j][i] for j in range(n)] for i in range(n)]
    return _qi_mat_mul(M, Nt) == _qi_identity(n)


def chiral_dictionary_ok() -> bool:
    """x^(a b-dot) in terms of (t, x, z1, z2) against the displayed partials
    ∂_(1 1d) = ∂t + ∂x, ∂_(1 2d) = ∂z1 - i ∂z2, and so on."""
    i = QI(0, 1)
    h = Fraction(1, 2)
    M = [  # rows: x11, x12, x21, x22 in terms of (t, x, z1, z2)
        [h, h, 0, 0],
        [0, 0, h, h * i],
        [0, 0, h, -(h * i)],
        [h, -h, 0, 0],
    ]
    N = [  # rows: d11, d12, d21, d22 in terms of (dt, dx, dz1, dz2)
        [1, 1, 0, 0],
        [0, 0, 1, -i],
        [0, 0, 1, i],
        [1, -1, 0, 0],
    ]
    return coordinate_dictionary_ok(M, N)


def k4_bridge_dictionary_ok() -> bool:
    """The six antisymmetric-square coordinates y^(ab) in terms of
    (t, x, z1..z4) against the displayed partials."""
    i = QI(0, 1)
    h = Fraction(1, 2)
    # rows: y12, y13, y14, y23, y24, y34 over (t, x, z1, z2, z3, z4)
    M = [
        [0, 0, 0, 0, h, h * i],
        [h, h, 0, 0, 0, 0],
        [0, 0, h, h * i, 0, 0],
        [0, 0, h, -(h * i), 0, 0],
        [h, -h, 0, 0, 0, 0],
        [0, 0, 0, 0, h, -(h * i)],
    ]
    N = [
        [0, 0, 0, 0, 1, -i],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, -i, 0, 0],
        [0, 0, 1, i, 0, 0],
        [1, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, i],
    ]
    return coordinate_dictionary_ok(M, N)


# ---------------------------------------------------------------------------
# Dimensional reductions with central charges
# ---------------------------------------------------------------------------

REDUCTION_PAIRS = {4: {1: (1, 2), 2: (3, 4)},
                   8: {1: (1, 2), 2: (3, 4), 3: (6, 7), 4: (8, 5)}}

Z_TABLE_8 = {  # Z_AB = I_[12] of (coeff on u_first) + sqrt(-1)(coeff on u_second)
    (1, 2): ((3, -1), (4, 1)),
    (1, 3): ((6, -1), (7, 1)),
    (1, 4): ((8, -1), (5, 1)),
    (2, 3): ((8, -1), (5, -1)),
    (2, 4): ((6, 1), (7, 1)),
    (3, 4): ((3, -1), (4, -1)),
}

Z_TABLE_4 = {(1, 2): ((3, -1), (4, 1))}

STAR_PAIRS = {(1, 2): (3, 4), (1, 3): (4, 2), (1, 4): (2, 3)}


class ReductionError(AssertionError):
    pass


def _z_value(ctx: MinkContext, entry) -> DAElement:
    (a1, c1), (a2, c2) = entry
    coeffs = [ctx.table.zero() for _ in range(ctx.alg.dim)]
    coeffs[a1 - 1] = ctx.table.scalar(c1)
    coeffs[a2 - 1] = coeffs[a2 - 1] + ctx.table.scalar(QI(0, c2))
    return DAElement(ctx.alg, coeffs)


def reduction_charges(k: int):
    """Complexified charge bases for k = 4 or 8 and the verified relations.

    Uses the doubled charges sqrt(2) Q, so all right-hand sides carry a
    factor of 4 instead of 2.  Returns a report dict; raises ReductionError
    naming the first failing identity (which would indicate an inconsistent
    multiplication table).
    """
    if k not in REDUCTION_PAIRS:
        raise ValueError("reduction implemented for k = 4 and k = 8")
    ctx = MinkContext(k)
    i = QI(0, 1)
    pairs = REDUCTION_PAIRS[k]
    Q = {}
    Qb = {}
    for A, (al, be) in pairs.items():
        for a in (1, 2):
            Q[(a, A)] = q_unit(ctx, a, al) - q_unit(ctx, a, be).scale(i)
            Qb[(a, A)] = q_unit(ctx, a, al) + q_unit(ctx, a, be).scale(i)
    # X_(a b-dot) as in the complex specialization
    def xdot(a, b):
        return r_matrix(ctx, a, b) - (
            x_matrix(ctx, a, b, ctx.alg.unit(2)) - x_matrix(ctx, b, a, ctx.alg.unit(2))
        ).scale(Fraction(1, 2)).scale(i)

    table = Z_TABLE_4 if k == 4 else Z_TABLE_8
    Z = {}
    for A in pairs:
        for B in pairs:
            if A == B:
                Z[(A, B)] = Mat5(ctx)
            elif (A, B) in table:
                Z[(A, B)] = script_i(ctx, _z_value(ctx, table[(A, B)]))
            else:
                Z[(A, B)] = -script_i(ctx, _z_value(ctx, table[(B, A)]))

    def fail(name):
        raise ReductionError(f"identity {name} fails: division-algebra table inconsistent")

    for A in pairs:
        for B in pairs:
            for a in (1, 2):
                for b in (1, 2):
                    e = EPS_AB[(a, b)]
                    want_mixed = xdot(a, b).scale(-4) if A == B else Mat5(ctx)
                    if anticomm(Q[(a, A)], Qb[(b, B)]) != want_mixed:
                        fail(f"[Q_{a}{A}, Qbar_{b}{B}]")
                    want_qq = Z[(A, B)].scale(-4 * e) if e else Mat5(ctx)
                    if anticomm(Q[(a, A)], Q[(b, B)]) != want_qq:
                        fail(f"[Q_{a}{A}, Q_{b}{B}]")
                    zbar = Z[(A, B)].conj_formal_i()
                    want_bb = zbar.scale(-4 * e) if e else Mat5(ctx)
                    if anticomm(Qb[(a, A)], Qb[(b, B)]) != want_bb:
                        fail(f"[Qbar_{a}{A}, Qbar_{b}{B}]")
    star_ok = True
    if k == 8:
        for (A, B), (sA, sB) in STAR_PAIRS.items():
            if Z[(sA, sB)] != Z[(A, B)].conj_formal_i():
                star_ok = False
                fail(f"Z_*({A}{B})")
    return {"ctx": ctx, "Q": Q, "Qbar": Qb, "Z": Z, "star_ok": star_ok}


# ---------------------------------------------------------------------------
# The exceptional bridge for k = 4 (antisymmetric square of C^4)
# ---------------------------------------------------------------------------

def sigma_map(U):
    """U = (u1, u2, u3, u4) in C^4 -> (-conj u3, -conj u4, conj u1, conj u2)."""
    u1, u2, u3, u4 = U
    return (-u3.conjugate(), -u4.conjugate(), u1.conjugate(), u2.conjugate())


def wedge_coords(U, V):
    """y^(ab) coefficients of U wedge V."""
    out = {}
    for a in range(4):
        for b in range(a + 1, 4):
            out[(a + 1, b + 1)] = U[a] * V[b] - U[b] * V[a]
    return out


def quadratic_form(y):
    """B(Y, Y) = y12 y34 - y13 y24 + y14 y23; the wedge square of Y carries
    twice this value on the top exterior generator."""
    return y[(1, 2)] * y[(3, 4)] - y[(1, 3)] * y[(2, 4)] + y[(1, 4)] * y[(2, 3)]


def wedge_square_coefficient(y):
    return quadratic_form(y) * 2


def wedge_formula_table_ok(U) -> bool:
    """The six displayed coefficient formulas for U wedge sigma(U):
    y12 = u2 conj(u3) - u1 conj(u4), y13 = |u1|^2 + |u3|^2,
    y14 = u1 conj(u2) + u4 conj(u3), y23 = u2 conj(u1) + u3 conj(u4),
    y24 = |u2|^2 + |u4|^2, y34 = u3 conj(u2) - u4 conj(u1)."""
    u1, u2, u3, u4 = U
    want = {
        (1, 2): u2 * u3.conjugate() - u1 * u4.conjugate(),
        (1, 3): u1 * u1.conjugate() + u3 * u3.conjugate(),
        (1, 4): u1 * u2.conjugate() + u4 * u3.conjugate(),
        (2, 3): u2 * u1.conjugate() + u3 * u4.conjugate(),
        (2, 4): u2 * u2.conjugate() + u4 * u4.conjugate(),
        (3, 4): u3 * u2.conjugate() - u4 * u1.conjugate(),
    }
    return wedge_coords(U, sigma_map(U)) == want


def t_map(U):
    """C^4 -> H^2: (u1 + j u3, u2 + j u4), with the quaternion convention
    u2 u3 = u4 (so j (a + b u2) = a u3 - b u4)."""
    def to_h(c, d):
        return H.element([c.re, c.im, d.re, -d.im])

    u1, u2, u3, u4 = U
    return to_h(u1, u3), to_h(u2, u4)


def p_coords(t, x, z: DAElement):
    """P: (t, x, z) -> y coordinates of the embedded Minkowski vector."""
    t, x = frac(t), frac(x)
    z1, z2, z3, z4 = z.coeffs
    h = Fraction(1, 2)
    return {
        (1, 2): QI(z3 * h, z4 * h),
        (1, 3): QI((t + x) * h),
        (1, 4): QI(z1 * h, z2 * h),
        (2, 3): QI(z1 * h, -z2 * h),
        (2, 4): QI((t - x) * h),
        (3, 4): QI(z3 * h, -z4 * h),
    }


def p_of_hermitian(hm: Hermitian2):
    return p_coords(hm.t, hm.x, hm.z_full())


def reality_conditions_ok(y) -> bool:
    return (y[(1, 2)].conjugate() == y[(3, 4)]
            and y[(1, 4)].conjugate() == y[(2, 3)]
            and y[(1, 3)].im == 0 and y[(2, 4)].im == 0)


def sl4c_bridge_check(U, V=None) -> bool:
    """The commuting square: P([Q^(T U), Q^(T U)]) = -2 U wedge sigma(U), and
    by polarization P([Q^(T U), Q^(T V)]) = -(U wedge sigma V + V wedge sigma U)."""
    lam1, lam2 = t_map(U)
    x = x_of_pair(H, lam1, lam2)
    y_from_x = p_of_hermitian(x)
    y_wedge = wedge_coords(U, sigma_map(U))
    if not reality_conditions_ok(y_wedge):
        return False
    for key in y_wedge:
        if y_from_x[key] != QI(0) + y_wedge[key]:
            return False
    if V is None:
        return True
    mu1, mu2 = t_map(V)
    ctx = MinkContext(4)
    qU = q_matrix(ctx, 1, lam1) + q_matrix(ctx, 2, lam2)
    qV = q_matrix(ctx, 1, mu1) + q_matrix(ctx, 2, mu2)
    hm = translation_block(anticomm(qU, qV).scale(Fraction(-1, 2)))
    lhs = p_of_hermitian(hm)  # P of -(1/2)[Q^U, Q^V]
    sU, sV = sigma_map(U), sigma_map(V)
    for key in lhs:
        rhs = (wedge_coords(U, sV)[key] + wedge_coords(V, sU)[key]) * Fraction(1, 2)
        if lhs[key] != QI(0) + rhs:
            return False
    return True


def signature_identity_ok(t, x, z: DAElement) -> bool:
    """4 B(P v, P v) = -(t^2 - x^2 - |z|^2)."""
    y = p_coords(t, x, z)
    lhs = quadratic_form(y) * 4
    rhs = -(frac(t) ** 2 - frac(x) ** 2 - z.norm_sq())
    return lhs == QI(0) + rhs


# ---------------------------------------------------------------------------
# Coefficient extraction on the translation sector
# ---------------------------------------------------------------------------

def decompose_translation(m: Mat5):
    """Write a translation-sector matrix as sum c_v[(ab)] R_(ab) +
    sum c_w[g] Im_g; raises if the support or symmetry is wrong.

    Inverse of SuperTranslationElement.v_matrix on its image; used to
    cross-check matrix-algebra computations against vector-field ones.
    """
    ctx = m.ctx
    for i in range(5):
        for j in range(5):
            if (i, j) in ((0, 3), (0, 4), (1, 3), (1, 4)):
                continue
            if not m.entries[i][j].is_zero():
                raise ValueError(f"support outside the translation block at {(i, j)}")

    def real_coeff(e: DAElement):
        for c in e.coeffs[1:]:
            if not c.is_zero():
                raise ValueError("diagonal slot carries an imaginary part")
        return e.coeffs[0]

    c_v = {(1, 1): real_coeff(m.entries[0][3]), (2, 2): real_coeff(m.entries[1][4])}
    upper = m.entries[0][4]
    lower = m.entries[1][3]
    if upper.coeffs[0] != lower.coeffs[0]:
        raise ValueError("symmetric slot mismatch")
    c_v[(1, 2)] = upper.coeffs[0] + lower.coeffs[0]
    c_w = {}
    for g in range(2, ctx.k + 1):
        if upper.coeffs[g - 1] != -lower.coeffs[g - 1]:
            raise ValueError("antisymmetric slot mismatch")
        val = upper.coeffs[g - 1] + upper.coeffs[g - 1]
        if not val.is_zero():
            c_w[g] = val
    return c_v, c_w


def compose_elements(e1: SuperTranslationElement, e2: SuperTranslationElement):
    """Product in exponential coordinates: add the even and odd parts and
    absorb half the odd-odd commutator into the even part."""
    ctx = e1.ctx
    corr = comm(e1.theta_matrix(), e2.theta_matrix()).scale(Fraction(1, 2))
    c_v, c_w = decompose_translation(corr)
    z = ctx.table.zero()
    v = {}
    for key in set(e1.v) | set(e2.v) | set(k for k, val in c_v.items() if val):
        v[key] = e1.v.get(key, z) + e2.v.get(key, z) + c_v.get(key, z)
    w = {}
    for key in set(e1.w) | set(e2.w) | set(c_w):
        w[key] = e1.w.get(key, z) + e2.w.get(key, z) + c_w.get(key, z)
    theta = {}
    for key in set(e1.theta) | set(e2.theta):
        theta[key] = e1.theta.get(key, z) + e2.theta.get(key, z)
    return SuperTranslationElement(ctx, v=v, w=w, theta=theta)


def field_bracket_constants(inv: "InvariantFields", a, alpha, b, beta):
    """Structure constants of [tau^alpha_a, tau^beta_b] read off the images
    of the coordinate symbols."""
    br = super_bracket(inv.tau(a, alpha), inv.tau(b, beta))
    c_v = {}
    for ab, name in inv.vname.items():
        c_v[ab] = br.image(name).scalar_part()
    c_w = {}
    for g, name in inv.wname.items():
        val = br.image(name).scalar_part()
        if val:
            c_w[g] = val
    for key, name in inv.thname.items():
        if not br.image(name).is_zero():
            raise ValueError("bracket is not a translation")
    return c_v, c_w
