"""LCHK admissibility, canonical form, witnesses, flatness."""

from fractions import Fraction as F

import pytest

from aalg import linalg
from aalg.forms import KForm
from aalg.lchk import (K1, K2, K3, LchkError, canonical_form, construct_lchk,
                       hyperkahler_flatness, lchk_admissible, verify_triple)


def rot(a, b):
    return [[a, b], [-b, a]]


def blockdiag(*blocks):
    n = sum(len(b) for b in blocks)
    out = linalg.zeros(n, n)
    pos = 0
    for blk in blocks:
        for i in range(len(blk)):
            for j in range(len(blk)):
                out[pos + i][pos + j] = F(blk[i][j])
        pos += len(blk)
    return out


def scalars(*vals):
    """One-by-one blocks for blockdiag."""
    return [[[v]] for v in vals]


def test_quaternion_matrices():
    k1 = [list(r) for r in K1]
    k2 = [list(r) for r in K2]
    k3 = [list(r) for r in K3]
    assert linalg.mat_eq(linalg.mat_mul(k1, k2), k3)
    prod = linalg.mat_mul(linalg.mat_mul(k1, k2), k3)
    assert linalg.mat_eq(prod, linalg.mat_scale(-1, linalg.idmat(4)))
    for k in (k1, k2, k3):
        assert linalg.mat_eq(linalg.mat_mul(k, k),
                             linalg.mat_scale(-1, linalg.idmat(4)))


def test_identity_admissible():
    v = lchk_admissible(linalg.idmat(3))
    assert v.admissible and v.a == 1 and not v.hyperkahler
    assert v.multiplicities == ((F(0), 3),)


def test_zero_admissible_hyperkahler():
    v = lchk_admissible(linalg.zeros(3, 3))
    assert v.admissible and v.hyperkahler and v.a == 0


def test_bad_dimension():
    with pytest.raises(LchkError) as err:
        lchk_admissible(linalg.idmat(4))
    assert err.value.code == "BAD_DIMENSION"


def test_odd_pair_multiplicity_rejected():
    """7x7 with eigenvalues 1 +- i (mult 1 each) and 1 (mult 5): fails (iii)."""
    d = blockdiag(*scalars(1, 1, 1, 1, 1), rot(1, 1))
    v = lchk_admissible(d)
    assert not v.admissible
    assert v.condition_spectrum_line and v.condition_real_multiplicity
    assert not v.condition_even_pairs


def test_low_real_multiplicity_rejected():
    """7x7 with m(1) = 1 < 3: fails (ii)."""
    d = blockdiag(*scalars(1), rot(1, 2), rot(1, 2), rot(1, 3))
    v = lchk_admissible(d)
    assert not v.admissible
    assert not v.condition_real_multiplicity


def test_mixed_real_parts_rejected():
    d = blockdiag(*scalars(1, 1, 1), *scalars(2, 2, 2, 2))
    v = lchk_admissible(d)
    assert not v.admissible
    assert not v.condition_spectrum_line


def test_nondiagonalizable_rejected():
    d = blockdiag([[1, 1], [0, 1]], *scalars(1, 1, 1, 1, 1))
    v = lchk_admissible(d)
    assert not v.admissible and not v.diagonalizable


def test_float_path_agrees():
    for d in (linalg.idmat(3),
              blockdiag(*scalars(1, 1, 1), rot(1, F(1, 2)), rot(1, F(1, 2))),
              blockdiag(*scalars(1, 1, 1, 1, 1), rot(1, 1))):
        exact = lchk_admissible(d)
        fl = lchk_admissible([[float(x) for x in row] for row in d])
        assert exact.admissible == fl.admissible
        assert exact.hyperkahler == fl.hyperkahler


def test_construct_m1_theta():
    L, triple, p, dc = construct_lchk(linalg.idmat(3))
    assert triple.theta == KForm(1, 4, {(3,): F(-2)})
    rep = verify_triple(L, triple)
    assert rep["ok"], rep


def test_construct_zero_kahler():
    L, triple, p, dc = construct_lchk(linalg.zeros(3, 3))
    assert triple.theta.is_zero()
    rep = verify_triple(L, triple)
    assert rep["ok"], rep
    assert hyperkahler_flatness(triple, L)


def test_construct_m2_family():
    for pval in (F(1), F(1, 2), F(2)):
        d = blockdiag(*scalars(1, 1, 1), rot(1, pval), rot(1, pval))
        L, triple, p, dc = construct_lchk(d)
        assert triple.theta == KForm(1, 8, {(7,): F(-6)})
        rep = verify_triple(L, triple)
        assert rep["ok"], rep
        # certificate: D P = P D_canonical
        assert linalg.mat_eq(linalg.mat_mul(d, p), linalg.mat_mul(p, dc))


def test_construct_orders_blocks():
    d = blockdiag(*scalars(1, 1, 1), rot(1, F(1, 2)), rot(1, F(1, 2)), rot(1, 2), rot(1, 2))
    L, triple, p, dc = construct_lchk(d)
    # canonical form orders rotation parameters descending, zero blocks last
    assert dc[0][1] == F(2) and dc[4][5] == F(1, 2)


def test_hyperkahler_m2_flat():
    d = blockdiag(rot(0, 1), rot(0, 1), *scalars(0, 0, 0))
    v = lchk_admissible(d)
    assert v.admissible and v.hyperkahler
    L, triple, p, dc = construct_lchk(d)
    assert hyperkahler_flatness(triple, L)
    rep = verify_triple(L, triple)
    assert rep["ok"], rep


def test_hyperkahler_m3_family_flat():
    for pval in (F(1), F(2)):
        d = blockdiag(rot(0, 1), rot(0, 1), rot(0, pval), rot(0, pval), *scalars(0, 0, 0))
        L, triple, p, dc = construct_lchk(d)
        assert hyperkahler_flatness(triple, L)


def test_flatness_precondition():
    L, triple, p, dc = construct_lchk(linalg.idmat(3))
    with pytest.raises(LchkError) as err:
        hyperkahler_flatness(triple, L)
    assert err.value.code == "PRECONDITION"


def test_not_admissible_construct_raises():
    d = blockdiag(*scalars(1, 1, 1, 1, 1), rot(1, 1))
    with pytest.raises(LchkError) as err:
        construct_lchk(d)
    assert err.value.code == "NOT_ADMISSIBLE"


def test_exact_irrational_rejected():
    """b^2 = 2 has no rational rotation parameter: honest exact failure."""
    d = blockdiag(*scalars(1, 1, 1), rot(1, 1), rot(1, 1))
    # replace the rotation blocks by ones with b^2 = 2:
    # [[1, b],[-b, 1]] has charpoly (x-1)^2 + b^2; use companion-style blocks
    m = blockdiag(*scalars(1, 1, 1), [[1, 2], [-1, 1]], [[1, 2], [-1, 1]])
    v = lchk_admissible(m)
    assert v.admissible  # spectrally fine: eigenvalues 1 +- i sqrt(2)
    with pytest.raises(LchkError) as err:
        construct_lchk(m)
    assert err.value.code == "EXACT_IRRATIONAL"


def test_hyperkahler_decomposable_bookkeeping():
    """For a = 0 the kernel of D is a central factor of dimension m_D(0)."""
    d = blockdiag(rot(0, 1), rot(0, 1), *scalars(0, 0, 0))
    v = lchk_admissible(d)
    m0 = next(mult for b, mult in v.multiplicities if b == 0)
    kernel = linalg.nullspace(d)
    assert len(kernel) == m0
    # kernel vectors are central in the constructed algebra
    L, triple, p, dc = construct_lchk(d)
    kc = linalg.nullspace(dc)
    for vec in kc:
        x = list(vec) + [F(0)]
        for j in range(L.dim):
            e = [F(0)] * L.dim
            e[j] = F(1)
            assert linalg.is_zero_vector(L.bracket(x, e))
