"""Float kernel: the same operations under the global tolerance."""

import math
import random
from fractions import Fraction as F

import pytest

from aalg import linalg
from aalg.forms import KForm, exterior_derivative, wedge
from aalg.hermitian import ComplexStructure, HermitianStructure, Metric
from aalg.lie import LieAlgebra
from aalg.almost_abelian import (build_algebra, extract_data, is_lcb_data,
                                 is_lck_data, is_skt_data, lee_form_closed,
                                 rho_b_closed, standard_j1)

from conftest import data_stream


def to_float_data(d):
    a = float(d.a)
    v = [float(x) for x in d.v]
    A = [[float(x) for x in row] for row in d.A]
    j1 = [[float(x) for x in row] for row in d.J1]
    return a, v, A, j1


def test_float_closed_formulas_match_oracle():
    """Float path residual of closed vs oracle rho stays under 1e-8."""
    for d in data_stream(301, 12, dims=(2, 3)):
        a, v, A, j1 = to_float_data(d)
        L, J, g = build_algebra(a, v, A, j1)
        H = HermitianStructure(L, J, g)
        df = extract_data(L, None, J, g)
        closed = rho_b_closed(df)
        oracle = H.bismut_ricci_oracle()
        diff = closed - oracle
        assert all(abs(x) <= 1e-8 for x in diff.coeffs.values())
        assert lee_form_closed(df).equals(H.lee_form(), 1e-8)


def test_float_predicates_agree_with_exact():
    for d in data_stream(302, 24, dims=(2, 3)):
        a, v, A, j1 = to_float_data(d)
        Lf, Jf, gf = build_algebra(a, v, A, j1)
        df = extract_data(Lf, None, Jf, gf)
        Le, Je, ge = build_algebra(d.a, list(d.v), d.A_matrix, d.J1_matrix)
        de = extract_data(Le, None, Je, ge)
        assert is_lcb_data(df) == is_lcb_data(de)
        assert is_lck_data(df) == is_lck_data(de)
        assert is_skt_data(df) == is_skt_data(de)


def test_float_wedge_properties():
    """Graded anticommutativity and associativity within the tolerance."""
    rng = random.Random(303)
    for _ in range(20):
        dim = 5
        def rand_form(deg):
            from itertools import combinations
            keys = list(combinations(range(dim), deg))
            return KForm(deg, dim, {rng.choice(keys): rng.uniform(-2, 2)
                                    for _ in range(2)})
        a, b, c = rand_form(1), rand_form(2), rand_form(1)
        sign = (-1.0) ** (a.degree * b.degree)
        assert wedge(a, b).equals(wedge(b, a).scale(sign), 1e-9)
        assert wedge(wedge(a, b), c).equals(wedge(a, wedge(b, c)), 1e-9)


def test_float_wedge_tolerant_equality():
    a = KForm(1, 4, {(0,): 1.0, (2,): 0.5})
    b = KForm(2, 4, {(1, 3): 2.0})
    w = wedge(a, b)
    wp = wedge(a, b)
    shifted = KForm(3, 4, {k: v + 1e-12 for k, v in w.coeffs.items()})
    assert w.equals(wp)
    assert w.equals(shifted, 1e-9)
    assert not w.equals(shifted, 1e-14)


def test_float_jacobi_tolerance():
    eps = 1e-12
    L = LieAlgebra(3, {(0, 1): [0.0, 0.0, 1.0 + eps],
                       (0, 2): [0.0, 0.0, 0.0]})
    assert L.kind == "float"


def test_float_extract_normalizes():
    """The float path always produces an orthonormal adapted frame."""
    L = LieAlgebra(4, {(0, 1): [-1.0, 0.0, 0.0, 0.0]})
    J = ComplexStructure.from_pairs(4, [(0, 1), (2, 3)], kind="float")
    g = Metric.from_matrix([[2.0, 0, 0, 0], [0, 2.0, 0, 0],
                            [0, 0, 3.0, 0], [0, 0, 0, 3.0]])
    d = extract_data(L, None, J, g)
    assert d.is_orthonormal()
    assert abs(d.a + 1 / math.sqrt(2)) < 1e-12 or abs(d.a - 1 / math.sqrt(2)) < 1e-12
