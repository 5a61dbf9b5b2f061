from fractions import Fraction

import pytest

from oracles import delta0_k3, k3_closed_by_sum
from segrelab.errors import (
    InconsistentDataError,
    ParityError,
    UnsupportedGeometryError,
)
from segrelab.surface import (
    GeometryKind,
    SegreValue,
    SurfaceBundle,
    chi_riemann_roch,
    delta,
    generalized_binomial,
    lehn_series,
    mnp_from_bundle,
    mukai_pairing,
    segre_blowup_k3,
    segre_closed,
    segre_delta0,
    segre_general_type,
    segre_of_bundle,
    segre_rank1_general,
    segre_series,
)
from segrelab.verify import two_path_mismatches

K3 = GeometryKind.K3
AB = GeometryKind.ABELIAN
EN = GeometryKind.ENRIQUES
F = Fraction


def test_kind_parsing_and_invariants():
    assert GeometryKind.parse("K3") is K3
    assert GeometryKind.parse("blowup-k3") is GeometryKind.BLOWUP_K3
    assert K3.invariants == (2, 0)
    assert EN.invariants == (1, 0)
    assert GeometryKind.GENERAL_RANK1.invariants is None
    assert EN.k_trivial and not GeometryKind.BLOWUP_K3.k_trivial
    with pytest.raises(ValueError):
        GeometryKind.parse("hyperelliptic-threefold")


def test_bundle_validation():
    with pytest.raises(InconsistentDataError):
        SurfaceBundle(0, 0, 0, 0, 2, 0)
    with pytest.raises(InconsistentDataError):
        SurfaceBundle(1, 2, 0, 0, 1, 0, K3)
    with pytest.raises(InconsistentDataError):
        SurfaceBundle(1, 2, 1, 0, 2, 0, K3)
    with pytest.raises(UnsupportedGeometryError):
        SurfaceBundle.on(GeometryKind.GENERAL_RANK1, 1, 2, 0)


def test_riemann_roch_and_parity():
    b = SurfaceBundle.on(K3, 2, 10, 3)
    assert chi_riemann_roch(b) == 4 + 5 - 3
    odd = SurfaceBundle.on(K3, 1, 3, 0)
    with pytest.raises(InconsistentDataError):
        chi_riemann_roch(odd)
    assert chi_riemann_roch(odd, strict=False) == F(7, 2)


def test_delta_matches_mukai_pairing():
    for kind, chi_O in ((K3, 2), (AB, 0), (EN, 1)):
        for r in range(1, 5):
            for c1 in range(-4, 10, 2):
                for c2 in range(-3, 6):
                    b = SurfaceBundle.on(kind, r, c1, c2)
                    assert delta(kind, b) == F(chi_O, 2) + mukai_pairing(b) / 2


def test_delta_needs_k_trivial():
    b = SurfaceBundle(1, 2, 1, 0, 2, -1, GeometryKind.BLOWUP_K3)
    with pytest.raises(UnsupportedGeometryError):
        delta(GeometryKind.BLOWUP_K3, b)


def test_segre_value():
    v = SegreValue(F(-3, 2))
    assert str(v) == "-3/2" and v.sign == "negative" and not v.positive and not v.is_integral
    assert str(SegreValue(0)) == "0" and SegreValue(0).sign == "zero"


def test_k_zero_is_one():
    for kind in (K3, AB, EN):
        assert segre_closed(kind, 3, 7, F(5, 2), 0).value == 1
    assert segre_blowup_k3(5, 1, 0).value == 1
    assert segre_general_type(2, 0, 0, 0).value == 1


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        segre_closed(K3, 1, 3, 0, -1)


def test_delta0_values():
    assert segre_delta0(1, 6, 2).value == 4
    assert segre_delta0(1, 3, 2).value == 4
    assert segre_closed(K3, 1, 6, 0, 2).value == 4


def test_closed_form_matches_double_sum_oracle():
    for r in range(1, 4):
        for chi in range(-3, 15):
            for d in range(0, 5):
                for k in range(0, 7):
                    assert segre_closed(K3, r, chi, d, k).value == k3_closed_by_sum(r, chi, d, k)


def test_delta0_formula_against_oracle():
    for r in range(1, 4):
        for chi in range(-2, 20):
            for k in range(0, 7):
                assert segre_closed(K3, r, chi, 0, k).value == delta0_k3(r, chi, k)


def test_generalized_binomial():
    assert generalized_binomial(5, 2) == 10
    assert generalized_binomial(-1, 3) == -1
    assert generalized_binomial(F(1, 2), 2) == F(-1, 8)


@pytest.mark.parametrize("kind", [K3, EN])
def test_two_path_small_grid(kind):
    cases, bad = two_path_mismatches(kind, range(1, 3), range(-2, 5), range(-1, 3), 5)
    assert cases > 0 and not bad


def test_series_only_for_k3_and_enriques():
    with pytest.raises(UnsupportedGeometryError):
        segre_series(AB, SurfaceBundle.on(AB, 1, 2, 0), 3)


def test_k3_series_starts_with_one_and_c1_sq():
    s = segre_series(K3, SurfaceBundle.on(K3, 1, 4, 0), 3)
    assert s.coeffs[:2] == (1, 4)


def test_rank1_routes_agree():
    for L_sq, chi_O, LK, K_sq in ((4, 2, 0, 0), (6, 1, 3, 1), (7, 1, 3, 1), (9, 2, 1, -1)):
        for k in range(0, 6):
            a = segre_rank1_general(L_sq, chi_O, LK, K_sq, k, method="residue")
            b = segre_rank1_general(L_sq, chi_O, LK, K_sq, k, method="reversion")
            assert a == b
            assert lehn_series(L_sq, chi_O, LK, K_sq, 5).coeffs[k] == a.value


def test_rank1_unknown_method():
    with pytest.raises(ValueError):
        segre_rank1_general(2, 2, 0, 0, 1, method="guess")


def test_blowup_and_general_type_values():
    assert segre_blowup_k3(20, 2, 2).value == 476
    assert segre_general_type(2, 19, 1, 10).value == -1158


def test_general_type_parity():
    with pytest.raises(ParityError):
        segre_general_type(1, 0, 0, 2)


def test_mnp_sum_identity():
    for L_sq, LK, K_sq, chi_O, k in ((10, 4, 1, 1, 2), (8, 6, 2, 3, 1)):
        m, n, p = mnp_from_bundle(L_sq, LK, K_sq, chi_O, k)
        chi_L = chi_O + (L_sq - LK) // 2
        assert m + n + p == 2 * chi_L - 4 * k + 2
        assert (m, p) == (LK - 2 * K_sq, K_sq - chi_O + 3)


def test_segre_of_bundle_dispatch():
    b = SurfaceBundle.on(K3, 1, 10, 0)
    assert segre_of_bundle(K3, b, 2) == segre_closed(K3, 1, 7, 0, 2)
    bl = SurfaceBundle(1, 36, 2, 0, 2, -1, GeometryKind.BLOWUP_K3)
    assert segre_of_bundle(GeometryKind.BLOWUP_K3, bl, 2).value == 476
    with pytest.raises(UnsupportedGeometryError):
        segre_of_bundle(GeometryKind.BLOWUP_K3, SurfaceBundle(2, 36, 2, 0, 2, -1), 1)


def test_enriques_values_are_integral_on_geometric_data():
    for r in range(1, 5):
        for c1 in range(-2, 12, 2):
            for c2 in range(-2, 6):
                b = SurfaceBundle.on(EN, r, c1, c2)
                for k in range(0, 6):
                    assert segre_of_bundle(EN, b, k).is_integral


def test_sympy_cross_check_of_k3_series():
    sp = pytest.importorskip("sympy")
    t = sp.Symbol("t")
    r, c1_sq, c2, K = 1, 6, 1, 4
    A0 = (1 + (1 + r) * t) ** (-r - 1) * (1 + (2 + r) * t) ** r
    A1 = (1 + (1 + r) * t) ** sp.Rational(r, 2) * (1 + (2 + r) * t) ** sp.Rational(1 - r, 2)
    A2 = ((1 + (1 + r) * t) ** (r * r + 2 * r) * (1 + (2 + r) * t) ** (1 - r * r)
          / (1 + (1 + r) * (2 + r) * t))
    body = A0 ** c2 * A1 ** c1_sq * A2
    # Coeff_{z^k} B(t(z)) = Coeff_{t^k} B(t) z'(t) (t / z(t))^(k+1)
    zt = t * (1 + (1 + r) * t) ** (1 + r)
    b = SurfaceBundle.on(K3, r, c1_sq, c2)
    ours = segre_series(K3, b, K)
    for k in range(K + 1):
        expr = body * sp.diff(zt, t) * (t / zt) ** (k + 1)
        coeff = sp.series(expr, t, 0, k + 1).removeO().coeff(t, k)
        assert F(str(sp.nsimplify(coeff))) == ours.coeffs[k]
