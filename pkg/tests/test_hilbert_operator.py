import math

import numpy as np
import pytest

from mstieltjes.errors import DomainError, SizeLimit, SizeMismatch
from mstieltjes.hilbert_operator import (
    CoeffSeq,
    HilbertOpTrunc,
    apply,
    bergman_row_divergence,
    lp_lower_bound_ratio,
    lp_probe_ratio,
    lp_sequence_norm_bound,
    noncompactness_witness,
    norm_p2,
    truncated_spectrum,
)
from mstieltjes.quadrature import QuadConfig

CFG = QuadConfig()

# closed-form 2x2 eigenvalues: det(G - x I) = 0 for [[1, 1/2], [1/2, 1/3]]
LAM2_HI = (4.0 + math.sqrt(13.0)) / 6.0
LAM2_LO = (4.0 - math.sqrt(13.0)) / 6.0


def test_apply_basis_vector():
    y = apply(HilbertOpTrunc(4), CoeffSeq(np.array([1.0, 0.0, 0.0, 0.0])))
    assert y.coeffs == pytest.approx([1.0, 0.5, 1.0 / 3.0, 0.25], abs=0)


def test_apply_zero():
    y = apply(HilbertOpTrunc(5), CoeffSeq(np.zeros(3)))
    assert np.all(y.coeffs == 0.0)


def test_apply_pair_direct_summation():
    # x = (1,1): y_m = 1/(m+1) + 1/(m+2)
    y = apply(HilbertOpTrunc(3), CoeffSeq(np.array([1.0, 1.0])))
    assert y.coeffs == pytest.approx([1.5, 5.0 / 6.0, 7.0 / 12.0], abs=1e-15)


def test_apply_size_mismatch():
    with pytest.raises(SizeMismatch):
        apply(HilbertOpTrunc(2), CoeffSeq(np.ones(3)))


def test_self_adjointness():
    rng = np.random.default_rng(3)
    op = HilbertOpTrunc(12)
    x = rng.normal(size=12)
    y = rng.normal(size=12)
    gx = apply(op, CoeffSeq(x)).coeffs
    gy = apply(op, CoeffSeq(y)).coeffs
    assert float(gx @ y) == pytest.approx(float(x @ gy), rel=1e-14)


def test_norm_one_by_one():
    assert norm_p2(1) == 1.0


def test_norm_two_by_two_closed_form():
    assert norm_p2(2) == pytest.approx(LAM2_HI, abs=1e-12)
    assert LAM2_HI == pytest.approx(1.26759188, abs=1e-8)


def test_norm_matches_dense_eigensolve():
    lam = np.linalg.eigvalsh(HilbertOpTrunc(64).matrix())
    assert norm_p2(64) == pytest.approx(lam[-1], abs=1e-10)


def test_norm_monotone_and_below_pi():
    sizes = [1, 2, 4, 8, 16, 32, 64, 128, 256]
    vals = [norm_p2(n) for n in sizes]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert all(v < math.pi for v in vals)


def test_spectrum_trivial_sizes():
    assert truncated_spectrum(1) == pytest.approx([1.0])
    assert truncated_spectrum(2) == pytest.approx([LAM2_LO, LAM2_HI], abs=1e-12)


def test_spectrum_properties_256():
    lam = truncated_spectrum(256)
    assert np.all(lam > 0.0)
    assert np.all(lam < math.pi)
    assert lam[0] < 1e-6
    # dense eigensolve oracle for the top of the spectrum
    top = np.linalg.eigvalsh(HilbertOpTrunc(256).matrix())[-1]
    assert lam[-1] == pytest.approx(top, abs=1e-10)
    assert lam[-1] == pytest.approx(2.3038089954, abs=1e-8)  # frozen oracle value


def test_spectrum_positivity_where_eigensolve_rounds_negative():
    # the plain eigensolve does go negative at this size; the Rayleigh
    # requote must not
    raw = np.linalg.eigvalsh(HilbertOpTrunc(128).matrix())
    assert raw[0] < 1e-16  # underflowed cluster present
    lam = truncated_spectrum(128)
    assert np.all(lam > 0.0)


def test_spectrum_size_limit():
    with pytest.raises(SizeLimit):
        truncated_spectrum(4096)


def test_lp_norm_bound_values():
    assert lp_sequence_norm_bound(2.0) == pytest.approx(math.pi, rel=1e-15)
    assert lp_sequence_norm_bound(4.0) == pytest.approx(
        math.pi * math.sqrt(2.0), rel=1e-15
    )
    assert lp_sequence_norm_bound(4.0) == pytest.approx(4.44288294, abs=1e-8)


def test_lp_norm_bound_growth():
    # pi/sin(pi/p) -> oo as p -> oo
    assert lp_sequence_norm_bound(64.0) > lp_sequence_norm_bound(8.0) > (
        lp_sequence_norm_bound(4.0)
    )


def test_lp_norm_bound_domain():
    with pytest.raises(DomainError):
        lp_sequence_norm_bound(1.0)
    with pytest.raises(DomainError):
        lp_sequence_norm_bound(math.inf)


def test_lp_probe_ratio_brackets_bound():
    # the probe closes on the bound slowly: measured fractions 0.781 (eps=0.2,
    # N=2^12), 0.843 (eps=0.02, N=2^15), 0.851 (eps=0.01, N=2^16) at p=2
    bound = lp_sequence_norm_bound(2.0)
    loose = lp_probe_ratio(2.0, eps=0.2, N=1 << 12)
    tight = lp_probe_ratio(2.0, eps=0.02, N=1 << 15)
    assert loose < tight < bound
    assert tight > 0.84 * bound
    p = 3.0
    assert lp_probe_ratio(p, eps=0.05, N=1 << 14) < lp_sequence_norm_bound(p)


def test_lp_lower_bound_ratio_window():
    ratio = lp_lower_bound_ratio(2.0, 0.45, CFG)
    assert 0.85 * math.pi < ratio < math.pi


def test_lp_lower_bound_ratio_gamma_zero():
    # ||S1||_2 = (int_0^1 (ln(1-z)/z)^2 dz)^(1/2) = pi/sqrt(3): series oracle
    # int_0^1 ln(u)^2/(1-u)^2 du = 2 zeta(2)
    ratio = lp_lower_bound_ratio(2.0, 0.0, CFG)
    assert ratio == pytest.approx(math.pi / math.sqrt(3.0), abs=1e-8)


def test_lp_lower_bound_ratio_monotone_toward_limit():
    r1 = lp_lower_bound_ratio(2.0, 0.30, CFG)
    r2 = lp_lower_bound_ratio(2.0, 0.45, CFG)
    r3 = lp_lower_bound_ratio(2.0, 0.49, CFG)
    assert r1 < r2 < r3 < math.pi


def test_lp_lower_bound_ratio_upper_bound():
    # never exceeds pi cot(pi / (2 max(p,q)))
    for p, gamma in ((2.0, 0.45), (3.0, 0.3), (1.5, 0.6)):
        q = p / (p - 1.0)
        cap = math.pi / math.tan(math.pi / (2.0 * max(p, q)))
        assert lp_lower_bound_ratio(p, gamma, CFG) < cap + 1e-9


def test_lp_lower_bound_ratio_domain():
    with pytest.raises(DomainError):
        lp_lower_bound_ratio(2.0, 0.5, CFG)
    with pytest.raises(DomainError):
        lp_lower_bound_ratio(1.0, 0.1, CFG)


def test_witness_bound_arithmetic():
    computed, bound = noncompactness_witness(0.5, 2.0, CFG)
    assert bound == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert computed >= bound - 1e-6


def test_witness_limit_toward_one():
    # bound -> (1/(p-1)) (1 - 2^(1-p)): 1/2 at p = 2
    _, bound = noncompactness_witness(0.9999, 2.0, CFG)
    assert bound == pytest.approx(0.5, abs=2e-4)


@pytest.mark.parametrize("a,p", [(0.5, 2.0), (0.9, 2.0), (0.9, 3.0)])
def test_witness_computed_dominates_bound(a, p):
    computed, bound = noncompactness_witness(a, p, CFG)
    assert computed >= bound - 1e-6


def test_bergman_harmonic_oracle():
    # row 0: squared entries are 1/(k+1), partial sum the harmonic number
    h10 = sum(1.0 / (k + 1) for k in range(10))
    assert bergman_row_divergence(0, 10) == pytest.approx(h10, abs=1e-14)
    assert bergman_row_divergence(0, 10) == pytest.approx(2.92896825, abs=1e-8)


def test_bergman_single_term():
    assert bergman_row_divergence(0, 1) == 1.0


def test_bergman_monotone_and_log_growth():
    vals = [bergman_row_divergence(1, k) for k in (512, 1024, 2048)]
    assert vals[0] < vals[1] < vals[2]
    # doubling K adds about ln(2)/(j+1)
    assert vals[1] - vals[0] == pytest.approx(math.log(2.0) / 2.0, abs=0.01)


def test_coeffseq_validation():
    with pytest.raises(DomainError):
        CoeffSeq(np.array([]))
    with pytest.raises(DomainError):
        CoeffSeq(np.array([np.nan]))
    with pytest.raises(DomainError):
        CoeffSeq(np.ones(3), p_exponent=1.0)
