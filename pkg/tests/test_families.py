import random

import pytest

from weylhom.families import (
    FamilyParams,
    ParameterError,
    closed_form_h,
    closed_form_pairs,
    family_partitions,
    glue,
    is_special_form,
    phi_element,
    phi_tableaux,
    theta_element,
    theta_tableau,
)
from weylhom.homcalc import HomElement, Straightener, apply_hdt, verify_membership
from weylhom.scalars import QParams
from weylhom.tableaux import (
    TableauCounts,
    dominates,
    enumerate_row_standard,
    enumerate_semistandard,
    is_semistandard,
    partitions,
)

FAM = FamilyParams(4, 4, 3, 2)
E2 = QParams("cyclotomic,e=2")


def digits(*rows):
    """Tableau from rows written as digit strings, e.g. digits("1111123", "22223", "345")."""
    return TableauCounts([[r.count(str(v)) for v in range(1, 6)] for r in rows])


def valid_grid(e_max=4, a_max=6):
    for e in range(2, e_max + 1):
        for a in range(4, a_max + 1):
            for b in range(4, a + 1):
                for c in range(3, b):
                    yield FamilyParams(a, b, c, e)


def test_parameter_validation():
    for bad in [(4, 4, 4, 2), (4, 5, 3, 2), (3, 3, 2, 2), (4, 4, 3, 1)]:
        with pytest.raises(ParameterError):
            FamilyParams(*bad)


def test_family_partitions():
    assert family_partitions(FAM) == ((5, 5, 3, 1, 1), (7, 5, 3))
    assert family_partitions(FamilyParams(4, 4, 3, 3)) == ((9, 9, 6, 2, 2), (13, 9, 6))
    for p in valid_grid():
        mu, lam = family_partitions(p)
        assert sum(mu) == sum(lam) and dominates(lam, mu)


def test_theta():
    assert str(theta_tableau(FAM)) == "1^5 2 3 / 2^4 3 / 3 4 5"
    assert str(theta_tableau(FamilyParams(5, 4, 3, 2))) == "1^7 2 3 / 2^4 3 / 3 4 5"
    for p in valid_grid():
        T = theta_tableau(p)
        assert is_semistandard(T) and is_special_form(T, p)
        assert (T.shape, T.type) == (family_partitions(p)[1], family_partitions(p)[0])


def test_phi_smallest_family():
    A, B = phi_tableaux(FAM)
    assert len(A) == 4 and len(B) == 2
    listed = [digits("1111125", "22224", "333"), digits("1111124", "22225", "333"),
             digits("1111125", "22223", "334"), digits("1111124", "22223", "335"),
             digits("1111123", "22225", "334"), digits("1111123", "22224", "335")]
    expected = HomElement((7, 5, 3), (5, 5, 3, 1, 1), {T: E2.one for T in listed})
    assert phi_element(FAM, E2) == expected


def test_phi_grid():
    for p in valid_grid():
        A, B = phi_tableaux(p)
        assert A and B
        assert all(is_semistandard(T) and is_special_form(T, p) for T in A + B)
        assert not ({theta_tableau(p)} & (set(A) | set(B)))
        e, c = p.e, p.c
        assert all(T.count(3, 3) == (c - 1) * e - 2 for T in A)
        assert all(T.count(3, 3) == (c - 1) * e - 1 for T in B)


@pytest.mark.parametrize("fam", [FAM, FamilyParams(5, 4, 3, 2), FamilyParams(4, 4, 3, 3)])
def test_phi_sets_against_full_enumeration(fam):
    # filter every row-standard tableau against the templates
    a, b, c, e = fam.a, fam.b, fam.c, fam.e
    mu, lam = family_partitions(fam)
    expect = ([], [])
    for T in enumerate_row_standard(lam, mu):
        r1, r2, r3 = T.rows
        if r1[:2] == (a * e - 3, e - 1) and r2[:2] == (0, (b - 1) * e - 2) and r3[:2] == (0, 0) and is_semistandard(T):
            if r3[2] == (c - 1) * e - 2:
                expect[0].append(T)
            elif r3[2] == (c - 1) * e - 1:
                expect[1].append(T)
    assert phi_tableaux(fam) == expect


def test_phi_coefficients():
    P = QParams("cyclotomic,e=3")
    fam = FamilyParams(4, 4, 3, 3)
    A, B = phi_tableaux(fam)
    H = phi_element(fam, P)
    assert all(H.coefficient(T) == 1 for T in A)
    assert all(H.coefficient(T) == -P.q for T in B)


@pytest.mark.parametrize("field", ["cyclotomic,e=2", "p=3,q=2", "p=5,q=4"])
@pytest.mark.parametrize("abc", [(4, 4, 3), (5, 4, 3), (5, 5, 4)])
def test_membership_e2(field, abc):
    P = QParams(field)
    fam = FamilyParams(*abc, 2)
    mu, lam = family_partitions(fam)
    st = Straightener(P)
    assert verify_membership(theta_element(fam, P), mu, lam, P, st).member
    assert verify_membership(phi_element(fam, P), mu, lam, P, st).member


def test_closed_form_theta_examples():
    for fam in [FAM, FamilyParams(4, 4, 3, 3), FamilyParams(5, 4, 3, 4)]:
        P = QParams(f"cyclotomic,e={fam.e}")
        T = theta_tableau(fam)
        for t in range(1, fam.e):
            assert not closed_form_h(T, 4, t, fam, P)
            assert not closed_form_h(T, 2, t, fam, P)


def test_closed_form_vanishing_ranges():
    fam = FamilyParams(4, 4, 3, 3)
    P = QParams("cyclotomic,e=3")
    A, _ = phi_tableaux(fam)
    mu, _ = family_partitions(fam)
    for t in range(fam.e, mu[2]):
        assert not closed_form_h(A[0], 2, t, fam, P)
    for t in range(2 * fam.e - 1, mu[1]):
        assert not closed_form_h(A[0], 1, t, fam, P)


def test_closed_form_contract():
    P = E2
    with pytest.raises(ValueError):
        closed_form_h(digits("1111123", "22223", "245"), 2, 1, FAM, P)
    with pytest.raises(ValueError):
        closed_form_h(theta_tableau(FAM), 3, 2, FAM, P)
    with pytest.raises(ValueError):
        closed_form_h(theta_tableau(FAM), 5, 1, FAM, P)
    with pytest.raises(ValueError):
        closed_form_h(theta_tableau(FAM), 1, 1, FAM, QParams("cyclotomic,e=3"))


def test_closed_form_matches_engine_smallest_family():
    P = E2
    st = Straightener(P)
    mu, lam = family_partitions(FAM)
    special = [T for T in enumerate_semistandard(lam, mu) if is_special_form(T, FAM)]
    assert len(special) >= 7
    for T in special:
        for d, t in closed_form_pairs(FAM):
            assert closed_form_h(T, d, t, FAM, P) == st.normalize(apply_hdt(T, d, t, P)), (str(T), d, t)


def test_closed_form_nontrivial_somewhere():
    # the oracle is not vacuous: some special tableau has a nonzero image
    fam = FamilyParams(4, 4, 3, 3)
    P = QParams("cyclotomic,e=3")
    mu, lam = family_partitions(fam)
    special = [T for T in enumerate_semistandard(lam, mu) if is_special_form(T, fam)]
    assert any(closed_form_h(T, d, t, fam, P) for T in special[:10] for d, t in closed_form_pairs(fam))


def test_glue_examples():
    assert glue((1,), (1,)) == ((2, 1), (2, 1))
    alpha, beta = glue((5, 5, 3, 1, 1), (7, 5, 3))
    assert alpha == (12, 12, 10, 8, 8, 5, 5, 3, 1, 1)
    assert beta == (14, 12, 10, 7, 7, 7, 5, 3)
    assert sum(alpha) == sum(beta) == 65
    with pytest.raises(ParameterError):
        glue((2, 2), (1, 1, 1, 1))
    with pytest.raises(ParameterError):
        glue((2,), (1, 1, 1))


def test_glue_random_pairs():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 8)
        parts = list(partitions(n))
        lam, mu = rng.choice(parts), rng.choice(parts)
        if not dominates(lam, mu):
            lam, mu = mu, lam
        if not dominates(lam, mu):
            continue
        alpha, beta = glue(mu, lam)
        assert sum(alpha) == sum(beta) == 2 * n + len(mu) * lam[0]
        assert dominates(beta, alpha)


def test_closed_form_as_element_on_all_special_tableaux():
    # outside Theta, A and B a closed-form target can fail to be semistandard; as elements they still agree
    for fam in [FAM, FamilyParams(4, 4, 3, 3)]:
        P = QParams(f"cyclotomic,e={fam.e}")
        st = Straightener(P)
        mu, lam = family_partitions(fam)
        for T in enumerate_semistandard(lam, mu):
            if not is_special_form(T, fam):
                continue
            for d, t in closed_form_pairs(fam):
                assert st.normalize(closed_form_h(T, d, t, fam, P)) == st.normalize(apply_hdt(T, d, t, P))
