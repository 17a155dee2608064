"""Catalog entries: instantiation, constraints, witness spot checks."""

from fractions import Fraction as F

import pytest

from aalg import linalg
from aalg.catalog import (CatalogError, ENTRIES, LCB_LIST, LCK_LIST, LCHK_LIST,
                          instantiate, verify_entry, witness_structures)
from aalg.forms import KForm, exterior_derivative, wedge
from aalg.almost_abelian import is_kahler_data, is_lck_data


def test_registry_contents():
    assert set(LCK_LIST) == {"g1", "g2", "g3", "g4", "g5", "g6"}
    assert len(LCB_LIST) == 19  # l1..l17 plus two nilpotent entries
    assert len(LCHK_LIST) == 12  # 2 for m=1, 4 for m=2, 6 for m=3
    for extra in ("h3R", "aff2+2R", "b2", "s4", "s6", "s8"):
        assert extra in ENTRIES


def test_instantiate_g1_constants():
    L = instantiate(ENTRIES["g1"], {"p": F(2)})
    ad = L.ad_basis(5)
    assert [ad[i][i] for i in range(5)] == [F(1), F(2), F(2), F(2), F(2)]


def test_instantiate_l6_no_params():
    L = instantiate(ENTRIES["l6"], {})
    ad = L.ad_basis(5)
    assert [ad[i][i] for i in range(5)] == [F(1), F(1), F(0), F(0), F(0)]


def test_constraint_violation():
    with pytest.raises(CatalogError) as err:
        instantiate(ENTRIES["g1"], {"p": F(0)})
    assert err.value.code == "CONSTRAINT_VIOLATION"
    with pytest.raises(CatalogError):
        instantiate(ENTRIES["l1"], {"p": F(1), "q": F(1)})  # p = q excluded
    with pytest.raises(CatalogError):
        instantiate(ENTRIES["g1"], {})  # unbound


def test_unimodular_loci():
    assert instantiate(ENTRIES["g1"], {"p": F(-1, 4)}).is_unimodular()
    assert not instantiate(ENTRIES["g1"], {"p": F(1)}).is_unimodular()
    assert instantiate(ENTRIES["g2"], {"p": F(-1), "q": F(1, 4)}).is_unimodular()
    assert instantiate(ENTRIES["l1"], {"p": F(1), "q": F(-3, 2)}).is_unimodular()
    assert instantiate(ENTRIES["l14"], {"p": F(0)}).is_unimodular()
    assert not instantiate(ENTRIES["l14"], {"p": F(1)}).is_unimodular()
    assert instantiate(ENTRIES["n1"], {}).is_unimodular()
    assert instantiate(ENTRIES["s6"], {"a": F(1), "c": F(1)}).is_unimodular()
    assert not instantiate(ENTRIES["b2"], {}).is_unimodular()


def test_lck_witnesses_decompose_lambda_u():
    """For the LCK list, A = lambda Id + U with U skew and lambda = trA/4."""
    for name in LCK_LIST:
        entry = ENTRIES[name]
        for params in entry.samples:
            for label, H, d, claims in witness_structures(entry, params):
                m = d.m
                lam = linalg.trace(d.A_matrix) / m
                u = linalg.mat_sub(d.A_matrix,
                                   linalg.mat_scale(lam, linalg.idmat(m)))
                assert linalg.mat_eq(linalg.transpose(u), linalg.mat_scale(-1, u))
                assert lam != 0  # non-Kahler: A not skew
                assert is_lck_data(d) and not is_kahler_data(d)


def test_lcb_witnesses_not_balanced():
    for name in LCB_LIST:
        entry = ENTRIES[name]
        for label, H, d, claims in witness_structures(entry, entry.samples[0]):
            assert H.is_lcb_direct()
            assert not H.is_balanced_direct()


def test_aff2_kahler_and_lck_same_j():
    """Kahler g and non-Kahler LCK g' compatible with one J."""
    ws = witness_structures(ENTRIES["aff2+2R"], {})
    assert [label for label, *_ in ws] == ["kahler", "lck-nonkahler"]
    (_, Hk, dk, _), (_, Hp, dp, _) = ws
    assert linalg.mat_eq(Hk.J.matrix, Hp.J.matrix)
    assert Hk.is_kahler_direct()
    assert Hp.is_lck_direct() and not Hp.is_kahler_direct()
    # d omega' = (f2 + f4) ^ omega' exactly
    theta = KForm(1, 4, {(1,): F(1), (3,): F(1)})
    assert Hp.lee_form() == theta
    assert Hp.domega() == wedge(theta, Hp.omega)


def test_b2_two_witnesses():
    ws = witness_structures(ENTRIES["b2"], {})
    (_, Hb, db, _), (_, Hp, dp, _) = ws
    assert Hb.is_balanced_direct() and not Hb.is_kahler_direct()
    assert Hp.is_lcb_direct() and not Hp.is_balanced_direct() and not Hp.is_lck_direct()
    assert Hp.lee_form() == KForm(1, 6, {(4,): F(1), (5,): F(1)})


def test_s2n_witnesses_skt_and_lcb():
    for name in ("s4", "s6", "s8"):
        entry = ENTRIES[name]
        for params in entry.samples:
            for label, H, d, claims in witness_structures(entry, params):
                assert H.is_skt_direct() and H.is_lcb_direct()
                assert all(x == 0 for x in d.v)


def test_verify_entry_reports_not_checked():
    rep = verify_entry(ENTRIES["g1"], ENTRIES["g1"].samples)
    assert rep["ok"]
    assert any("no-Kahler" in s for s in rep["not_checked"])


def test_data_witness_certificates():
    """The stored basis maps conjugate the built data onto the entry basis."""
    # exercised inside witness_structures; a broken map must raise
    from aalg.catalog import DataWitness, CatalogEntry, _restrict_last
    entry = ENTRIES["l7"]
    bad = CatalogEntry(
        name="l7bad", dim=6, params=(),
        samples=({},),
        unimodular_locus=None,
        tuple_template=entry.tuple_template,
        witnesses=(DataWitness(
            label="broken",
            data=entry.witnesses[0].data,
            basis_map=lambda pr: (linalg.idmat(5), F(1)),
            claims={"lcb": True}),),
    )
    with pytest.raises(CatalogError) as err:
        witness_structures(bad, {})
    assert err.value.code == "WITNESS_FAILURE"


def test_lchk_entry_admissibility():
    from aalg.catalog import _restrict_last
    from aalg.lchk import lchk_admissible
    L = instantiate(ENTRIES["lchk-m2-2"], {"p": F(1, 2)})
    verdict = lchk_admissible(_restrict_last(L))
    assert verdict.admissible and not verdict.hyperkahler
    L = instantiate(ENTRIES["lchk-m3-hk3"], {"p": F(2)})
    verdict = lchk_admissible(_restrict_last(L))
    assert verdict.admissible and verdict.hyperkahler
