"""Dual-route consistency checks: the same structure computed through two
independent code paths must coincide exactly."""

import random
from fractions import Fraction

import pytest

from supergrass.divalg import H, O, DivisionAlgebra
from supergrass.kernel import SymbolTable
from supergrass.minkowski import (InvariantFields, MinkContext,
                                  SuperTranslationElement, _Echelon, _flatten,
                                  anticomm, compose_elements,
                                  decompose_translation, exp_element,
                                  field_bracket_constants, lie_closure,
                                  boost_matrix, rotation_matrix, q_unit)
from supergrass.superspace import EvenGrassmannPoint, hinf_extend


@pytest.mark.parametrize("k", [1, 2, 4, 8])
def test_matrix_vs_vector_field_structure_constants(k):
    """[Q^a_alpha, Q^b_beta] as 5x5 Clifford matrices against
    [tau^alpha_a, tau^beta_b] as graded vector-field brackets: the
    coefficients must be negatives of each other."""
    ctx = MinkContext(k)
    inv = InvariantFields(k)
    qs = {(a, al): q_unit(ctx, a, al) for a in (1, 2) for al in range(1, k + 1)}
    zero = ctx.table.zero()
    for a in (1, 2):
        for b in (1, 2):
            for al in range(1, k + 1):
                for be in range(1, k + 1):
                    mv, mw = decompose_translation(anticomm(qs[(a, al)], qs[(b, be)]))
                    fv, fw = field_bracket_constants(inv, a, al, b, be)
                    for key, val in fv.items():
                        assert mv.get(key, zero) == ctx.table.scalar(-val)
                    for g in range(2, k + 1):
                        got = mw.get(g, zero)
                        want = ctx.table.scalar(-fw.get(g, Fraction(0)))
                        assert got == want


def test_closure_span_equals_rotation_algebra():
    """The bracket closure of the half-spinor action spans exactly the
    boosts plus rotations (not merely the right dimension)."""
    for k, want in ((1, 3), (2, 6), (4, 15), (8, 45)):
        dim, basis = lie_closure(k)
        assert dim == want
        alg = {1: "R", 2: "C", 4: "H", 8: "O"}[k]
        from supergrass.divalg import ALGEBRAS

        A = ALGEBRAS[alg]
        span = _Echelon()
        for m in basis:
            span.add(_flatten(m))
        assert span.rank == want
        abstract = [boost_matrix(A, j) for j in range(0, k + 2 - 1)]
        abstract += [rotation_matrix(A, i, j)
                     for i in range(0, k + 1) for j in range(i + 1, k + 1)]
        for m in abstract:
            assert not span.add(_flatten(m)), "closure misses an abstract generator"
        assert span.rank == want


def test_group_law_composition_is_associative():
    rng = random.Random(77)
    ctx = MinkContext(2, n_eta=4)
    etas = [ctx.eta(i) for i in (1, 2, 3, 4)]

    def rand_odd():
        p = ctx.table.zero()
        for e in etas:
            if rng.random() < 0.6:
                p = p + e.scale(Fraction(rng.randint(-2, 2)))
        return p

    def element():
        return SuperTranslationElement(
            ctx,
            v={(1, 1): rng.randint(-2, 2), (1, 2): rng.randint(-2, 2)},
            w={2: rng.randint(-2, 2)},
            theta={(a, al): rand_odd() for a in (1, 2) for al in (1, 2)},
        )

    for _ in range(5):
        e1, e2, e3 = element(), element(), element()
        # the coefficient composition matches the matrix product
        assert exp_element(compose_elements(e1, e2)) == exp_element(e1) @ exp_element(e2)
        left = compose_elements(compose_elements(e1, e2), e3)
        right = compose_elements(e1, compose_elements(e2, e3))
        assert exp_element(left) == exp_element(right)
        for key in set(left.v) | set(right.v):
            assert left.v.get(key, ctx.table.zero()) == right.v.get(key, ctx.table.zero())


def test_taylor_extension_equals_polynomial_composition():
    """On polynomial input the Taylor extension to even Grassmann arguments
    is literal polynomial composition."""
    rng = random.Random(79)
    tx = SymbolTable()
    tx.even_symbol("x")
    tx.even_symbol("y")
    tf = SymbolTable()
    mirror = {"x": tf.even_symbol("x").name, "y": tf.even_symbol("y").name}
    for i in range(4):
        tf.odd_symbol(f"et{i+1}")
    ets = [tf.sym(f"et{i+1}") for i in range(4)]
    for _ in range(40):
        f = tx.zero()
        for _ in range(3):
            f = f + tx.monomial(Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                                [("x", rng.randint(0, 2)), ("y", rng.randint(0, 2))])

        def point():
            z = tf.scalar(rng.randint(-2, 2))
            for a in range(4):
                for b in range(a + 1, 4):
                    if rng.random() < 0.5:
                        z = z + (ets[a] * ets[b]).scale(rng.randint(-2, 2))
            return z

        zx, zy = point(), point()
        via_taylor = hinf_extend(f, [EvenGrassmannPoint(zx), EvenGrassmannPoint(zy)])
        lifted = tf.zero()
        for (ev, od), c in f.terms.items():
            term = tf.scalar(c)
            for i, p in ev:
                term = term * (zx if tx.symbols[i].name == "x" else zy) ** p
            lifted = lifted + term
        assert via_taylor == lifted


def test_flipped_octonion_line_breaks_norm():
    """Negative control: reversing the orientation of one triple destroys
    norm multiplicativity, so the convention checks are not vacuous."""
    bad = DivisionAlgebra("O")
    bad.table = dict(bad.table)
    # reverse (2,3,4) -> (2,4,3)
    for (x, y, z) in ((2, 4, 3), (4, 3, 2), (3, 2, 4)):
        bad.table[(x, y)] = (z, 1)
        bad.table[(y, x)] = (z, -1)
    u = bad.element([0, 1, 0, 0, 1, 0, 0, 0])   # u2 + u5
    v = bad.element([0, 0, 0, 1, 0, 0, 1, 0])   # u4 + u7
    lhs = (u * v) * (u * v).conj()
    assert lhs.coeffs[0] == 8
    assert u.norm_sq() * v.norm_sq() == 4
    assert lhs.coeffs[0] != u.norm_sq() * v.norm_sq()


def test_flipped_line_breaks_alternativity():
    bad = DivisionAlgebra("O")
    bad.table = dict(bad.table)
    for (x, y, z) in ((2, 4, 3), (4, 3, 2), (3, 2, 4)):
        bad.table[(x, y)] = (z, 1)
        bad.table[(y, x)] = (z, -1)
    found = False
    for a in range(2, 9):
        for b in range(2, 9):
            u = bad.element([0] + [1 if i + 2 == a else 0 for i in range(7)])
            w = bad.element([0] + [1 if i + 2 == b else 0 for i in range(7)])
            uv = u + w
            x = bad.unit(5)
            if (uv * uv) * x != uv * (uv * x):
                found = True
    assert found
