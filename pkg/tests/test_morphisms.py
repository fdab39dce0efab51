import random
from fractions import Fraction

import pytest

from supergrass.kernel import SymbolTable
from supergrass.morphisms import (ChartAssumptionError, CommutationError,
                                  FleshMorphism, check_chart_condition,
                                  collapse_morphism_check, component_fields,
                                  factorize, morphism_check,
                                  nonlinear_expansion_check,
                                  odd_plane_obstruction,
                                  point_tangent_pullback, pullback_factorized,
                                  random_flesh_morphism, vectors_dependent)


def target_ring(*names):
    t = SymbolTable()
    for n in names:
        t.even_symbol(n)
    return t


def make_simple():
    """One even coordinate, two auxiliary odds, phi(x) = x, xi_(1,2) = d/dy."""
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=("et1", "et2"),
        target_even=("y",),
        phi={"y": 0},
        xi={(1, 2): {"y": 1}},
        n_theta=0,
    )
    # phi(x) = x, set after construction via the working table
    m.phi["y"] = m.table.sym("x")
    return m


def test_pullback_quadratic_example():
    # q = 2, phi(x) = x, xi_12 = d/dy, f = y^2: e^Xi f = f + et1 et2 f'
    m = make_simple()
    y = m.table.sym("y")
    out = m.pullback_even(y ** 2)
    x = m.table.sym("x")
    e12 = m.table.sym("et1") * m.table.sym("et2")
    assert out == x ** 2 + (e12 * x).scale(2)


def test_pullback_of_one():
    m = make_simple()
    assert m.pullback_even(m.table.one()) == m.table.one()


def test_collapse_even_to_odd():
    assert collapse_morphism_check(2, 3)


def test_morphism_check_random_instances():
    rng = random.Random(21)
    for _ in range(40):
        m = random_flesh_morphism(
            rng,
            m_even=1,
            n_target=2,
            k_theta=rng.choice((0, 1, 2)),
            L_eta=rng.choice((2, 3)),
            deg=rng.choice((2, 3)),
        )
        ys = [m.table.sym(n) for n in m.target_even]
        f = ys[0] ** rng.randint(1, 3) + ys[1 % len(ys)].scale(rng.randint(-2, 2))
        g = ys[-1] ** rng.randint(1, 2) + rng.randint(-2, 2)
        assert morphism_check(m, f, g, rng)


def test_corrupt_odd_length_index_detected():
    t = target_ring("y")
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=("et1", "et2"),
        target_even=("y",),
        phi={"y": 0},
        xi={(1,): {"y": 1}},
        n_theta=0,
        validate=False,
    )
    m.phi["y"] = m.table.sym("x")
    y = m.table.sym("y")
    assert not morphism_check(m, y, y)


def test_validation_rejects_odd_length_index():
    with pytest.raises(ValueError):
        FleshMorphism(("x",), ("et1", "et2"), ("y",), {"y": 0}, {(1,): {"y": 1}}, n_theta=0)


def test_truncation_of_exp_series():
    rng = random.Random(5)
    m = random_flesh_morphism(rng, m_even=1, n_target=2, k_theta=2, L_eta=4, n_xi=5)
    y = m.table.sym("y1") * m.table.sym("y2") + m.table.sym("y2") ** 3
    # Xi^(q/2 + 1) kills everything
    cur = y
    for _ in range(m.q // 2 + 1):
        cur = m.apply_Xi(cur)
    assert cur.is_zero()


def test_parity_preservation():
    rng = random.Random(23)
    for _ in range(10):
        m = random_flesh_morphism(rng, k_theta=2, L_eta=2)
        f = m.table.sym("y1") ** 2 + m.table.sym("y2")
        pb = m.pullback_even(f)
        assert pb.is_zero() or pb.parity() == 0


# -- point + tangent morphisms (odd line) ---------------------------------------

def test_point_tangent_example():
    t = target_ring("y")
    rt, pull = point_tangent_pullback(t, {"y": 2}, {"y": 3})
    out = pull(t.sym("y") ** 2)
    assert out == rt.scalar(4) + rt.sym("th1").scale(12)


def test_point_tangent_constant():
    t = target_ring("y")
    rt, pull = point_tangent_pullback(t, {"y": 2}, {"y": 3})
    assert pull(t.scalar(9)) == rt.scalar(9)


def test_point_tangent_multiplicative():
    t = target_ring("y", "z")
    rt, pull = point_tangent_pullback(t, {"y": 2, "z": -1}, {"y": 3, "z": 5})
    y, z = t.sym("y"), t.sym("z")
    pairs = [(y, y), (y, z), (y * z, y + z), (y ** 2, z ** 2 + y)]
    for f, g in pairs:
        assert pull(f * g) == pull(f) * pull(g)
    # (2 + 3 th)^2 = 4 + 12 th = pull(y^2)
    assert pull(y) * pull(y) == pull(y ** 2)


# -- odd plane obstruction -------------------------------------------------------

def test_odd_plane_independent_fails():
    t = target_ring("y1", "y2")
    assert not odd_plane_obstruction(t, {"y1": 0, "y2": 0}, {"y1": 1}, {"y2": 1})
    assert not vectors_dependent({"y1": 1}, {"y2": 1}, ("y1", "y2"))


def test_odd_plane_dependent_passes():
    t = target_ring("y1", "y2")
    xi = {"y1": 2, "y2": 1}
    xi2 = {"y1": 4, "y2": 2}
    assert odd_plane_obstruction(t, {"y1": 1, "y2": 2}, xi, xi2)
    assert vectors_dependent(xi, xi2, ("y1", "y2"))


def test_odd_plane_zero_vector_passes():
    t = target_ring("y1", "y2")
    assert odd_plane_obstruction(t, {"y1": 0, "y2": 0}, {}, {"y2": 7})


def test_odd_plane_agrees_with_dependence_random():
    rng = random.Random(31)
    t = target_ring("y1", "y2")
    names = ("y1", "y2")
    for _ in range(40):
        xi1 = {n: Fraction(rng.randint(-2, 2)) for n in names}
        xi2 = {n: Fraction(rng.randint(-2, 2)) for n in names}
        pt = {n: Fraction(rng.randint(-2, 2)) for n in names}
        assert odd_plane_obstruction(t, pt, xi1, xi2) == vectors_dependent(xi1, xi2, names)


# -- factorization ----------------------------------------------------------------

def theta_eta_morphism(k, L, xi_spec, n_target=1):
    targets = tuple(f"y{i+1}" for i in range(n_target))
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=tuple(f"th{i+1}" for i in range(k)) + tuple(f"et{i+1}" for i in range(L)),
        target_even=targets,
        phi={n: 0 for n in targets},
        xi=xi_spec,
        n_theta=k,
    )
    for n in targets:
        m.phi[n] = m.table.sym("x")
    return m


def test_factorization_q3_shape():
    # k = 1, L = 2: Xi = xi_a et1 et2 + xi_b th et1 + xi_c th et2, constants
    m = theta_eta_morphism(1, 2, {
        (2, 3): {"y1": 2},          # et1 et2
        (1, 2): {"y1": 3},          # th1 et1
        (1, 3): {"y1": Fraction(1, 2)},  # th1 et2
    })
    groups = factorize(m)
    assert set(groups) == {(), (1,)}
    y = m.table.sym("y1")
    f = y ** 3 + y
    assert pullback_factorized(m, f) == m.pullback_even(f)


def test_factorization_identity_when_xi_zero():
    m = theta_eta_morphism(1, 2, {})
    y = m.table.sym("y1")
    assert pullback_factorized(m, y ** 2) == m.pullback_even(y ** 2) == m.table.sym("x") ** 2


def test_factorization_k2_four_factors():
    m = theta_eta_morphism(2, 2, {
        (3, 4): {"y1": 1},          # eta part: Xi_empty
        (1, 3): {"y1": 2},          # th1 eta1
        (2, 4): {"y1": -1},         # th2 eta2
        (1, 2): {"y1": 3},          # th1 th2
    })
    groups = factorize(m)
    assert set(groups) == {(), (1,), (2,), (1, 2)}
    y = m.table.sym("y1")
    for f in (y, y ** 2, y ** 3 + 2 * y):
        assert pullback_factorized(m, f) == m.pullback_even(f)


def test_factorization_random_commuting():
    rng = random.Random(41)
    for _ in range(15):
        m = random_flesh_morphism(rng, k_theta=2, L_eta=2, commuting=True, n_xi=4)
        y = m.table.sym("y1")
        f = y ** 3 + y * m.table.sym("y2")
        assert pullback_factorized(m, f) == m.pullback_even(f)


def test_noncommuting_reported():
    # xi_(1,2) = y d/dy and xi_(3,4) = d/dy do not commute
    m = theta_eta_morphism(0, 4, {})
    m2 = FleshMorphism(
        even_coords=("x",),
        odd_coords=("et1", "et2", "et3", "et4"),
        target_even=("y1",),
        phi={"y1": 0},
        xi={(1, 2): {"y1": 0}, (3, 4): {"y1": 1}},
        n_theta=0,
        validate=False,
    )
    # fix up: coefficient y1 d/dy1
    m2.xi[(1, 2)]["y1"] = m2.table.sym("y1")
    m2.phi["y1"] = m2.table.sym("x")
    with pytest.raises(CommutationError):
        factorize(m2)


# -- component fields and nonlinear expansion -------------------------------------

def sigma_morphism(rng=None, with_empty=True):
    """k = 2 source with chart-condition xi (components constant in y)."""
    rng = rng or random.Random(0)
    xi = {
        (1, 3): {"y1": 1, "y2": 2},    # th1 et1
        (2, 4): {"y1": -1, "y2": 1},   # th2 et2
        (1, 2): {"y1": 2, "y2": -3},   # th1 th2 -> F
    }
    if with_empty:
        xi[(3, 4)] = {"y1": 1, "y2": 1}  # eta-only: Xi_empty
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=("th1", "th2", "et1", "et2"),
        target_even=("y1", "y2"),
        phi={"y1": 0, "y2": 0},
        xi=xi,
        n_theta=2,
    )
    x = m.table.sym("x")
    m.phi["y1"] = x
    m.phi["y2"] = x ** 2
    return m


def test_component_fields_shapes():
    m = sigma_morphism()
    comps = component_fields(m)
    x = m.table.sym("x")
    e12 = m.table.sym("et1") * m.table.sym("et2")
    # phi component = bare phi + Xi_empty phi
    assert comps["y1"]["phi"] == x + e12
    assert comps["y2"]["phi"] == x ** 2 + e12
    # psi_a = Xi_a phi, F = Xi_12 phi
    assert comps["y1"]["psi1"] == m.table.sym("et1")
    assert comps["y1"]["psi2"] == -m.table.sym("et2")
    assert comps["y1"]["F"] == m.table.scalar(2)


def test_nonlinear_expansion_linear_f_no_second_derivative():
    m = sigma_morphism()
    y1 = m.table.sym("y1")
    assert nonlinear_expansion_check(m, y1.scale(3) + 5)


def test_nonlinear_expansion_quadratic_cross_term():
    m = sigma_morphism()
    f = m.table.sym("y1") * m.table.sym("y2")
    assert nonlinear_expansion_check(m, f)


def test_nonlinear_expansion_random():
    rng = random.Random(51)
    for _ in range(15):
        m = sigma_morphism(rng)
        y1, y2 = m.table.sym("y1"), m.table.sym("y2")
        f = (y1 ** rng.randint(1, 3) + y2 ** rng.randint(1, 2) * y1.scale(rng.randint(-2, 2))
             + rng.randint(-2, 2))
        assert nonlinear_expansion_check(m, f)


def test_chart_violation_reported():
    m = sigma_morphism()
    # make xi_(1,3) depend on y1: breaks xi_I xi_J y = 0
    m.xi[(1, 3)]["y1"] = m.table.sym("y1")
    with pytest.raises(ChartAssumptionError):
        check_chart_condition(m)


def test_one_theta_component_reading():
    # Phi = x + th psi with k = 1: even part = e^(Xi_empty) y at phi, and the
    # th coefficient = e^(Xi_empty) Xi_1 y at phi
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=("th1", "et1", "et2"),
        target_even=("y",),
        phi={"y": 0},
        xi={(2, 3): {"y": 1}, (1, 2): {"y": 1}},
        n_theta=1,
    )
    x = m.table.sym("x")
    m.phi["y"] = x

    y = m.table.sym("y")
    f = y ** 2
    pb = m.pullback_even(f)
    even_part = pb.coefficient_of_odd(())  # whole thing; split by th1
    th_coeff = pb.coefficient_of_odd(("th1",))
    # direct operator application
    XiE = {"y": m.table.one()}   # xi_(et1,et2)
    Xi1 = {"y": m.table.one()}   # xi_(th1,et1)
    from supergrass.kernel import Derivation, EVEN

    e12 = m.table.sym("et1") * m.table.sym("et2")
    et1 = m.table.sym("et1")
    DE = Derivation(m.table, EVEN, XiE, "XiE")
    D1 = Derivation(m.table, EVEN, Xi1, "Xi1")
    # e^(Xi_empty) f = f + e12 DE f (here DE^2 f has an (et1 et2)^2 factor)
    exp_f = f + e12 * DE(f)
    expect_even = exp_f.substitute({"y": x})
    exp_psi = (D1(f) + e12 * DE(D1(f)))
    got_th_full = pb.coefficient_of_odd(("th1",))
    want_th_full = (et1 * exp_psi).substitute({"y": x})
    assert got_th_full == want_th_full
    # even part: terms without th1
    got_even = m.table.zero()
    th_idx = m.table.symbol("th1").index
    from supergrass.kernel import SuperPolynomial

    for (ev, od), c in pb.terms.items():
        if th_idx not in od:
            got_even = got_even + SuperPolynomial(m.table, {(ev, od): c})
    assert got_even == expect_even


def test_pullback_with_target_odd_coordinates():
    # target has one odd coordinate: f = f0 + f1 ps pulls back to
    # pb(f0) + pb(f1) * chi with chi the declared odd image
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=("th1", "et1", "et2"),
        target_even=("y",),
        target_odd=("ps",),
        phi={"y": 0},
        xi={(2, 3): {"y": 1}},
        n_theta=1,
        odd_images={"ps": 0},
    )
    x = m.table.sym("x")
    m.phi["y"] = x
    chi = m.table.sym("th1") + m.table.sym("et1") * m.table.sym("et2") * m.table.sym("th1")
    m.odd_images["ps"] = chi
    y = m.table.sym("y")
    # f = y^2 + y ps, decomposed over the target odd monomials
    out = m.pullback(None, odd_decomposition={(): y ** 2, ("ps",): y})
    assert out == m.pullback_even(y ** 2) + m.pullback_even(y) * chi
    # parity preserved: the image of the odd part is odd
    odd_part = m.pullback_even(y) * chi
    assert odd_part.parity() == 1


def test_pullback_odd_square_vanishes():
    m = FleshMorphism(
        even_coords=("x",),
        odd_coords=("th1", "et1"),
        target_even=("y",),
        target_odd=("ps",),
        phi={"y": 0},
        xi={},
        n_theta=1,
        odd_images={"ps": 0},
    )
    m.phi["y"] = m.table.sym("x")
    m.odd_images["ps"] = m.table.sym("th1")
    # ps^2 = 0 on the target forces the image square to vanish
    chi = m.odd_images["ps"]
    assert (chi * chi).is_zero()
