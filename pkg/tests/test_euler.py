import numpy as np
import pytest

from ldcu.euler import (
    GasModel, CharBasis, char_basis, conserved_from_primitive, eigenvalues,
    flux, jacobian, pressure, primitive_from_conserved, sound_speed,
    DegenerateBasis, NonPositiveDensity, NonPositivePressure,
)

GAS = GasModel(1.4)


def random_states(rng, n, dim=1):
    d = 3 if dim == 1 else 4
    V = np.empty((d, n))
    V[0] = rng.uniform(0.1, 3.0, n)
    V[1] = rng.uniform(-2.0, 2.0, n)
    if dim == 2:
        V[2] = rng.uniform(-2.0, 2.0, n)
    V[-1] = rng.uniform(0.05, 5.0, n)
    return conserved_from_primitive(V, GAS)


def test_gas_model_rejects_bad_gamma():
    with pytest.raises(ValueError):
        GasModel(1.0)
    with pytest.raises(ValueError):
        GasModel(0.9)


def test_pressure_reference_state():
    U = np.array([1.0, 0.0, 2.5])
    assert pressure(U, GAS) == pytest.approx(1.0, abs=1e-15)
    U2 = np.array([1.0, 0.0, 0.0, 2.5])
    assert pressure(U2, GAS) == pytest.approx(1.0, abs=1e-15)


def test_pressure_zero_internal_energy_raises():
    # E equals the kinetic energy exactly, so p = 0
    U = np.array([2.0, 2.0, 1.0])
    with pytest.raises(NonPositivePressure):
        pressure(U, GAS)
    assert pressure(U, GAS, floor=1e-12) == pytest.approx(1e-12)


def test_density_validation():
    U = np.array([[1.0, -1.0], [0.0, 0.0], [2.5, 2.5]])
    with pytest.raises(NonPositiveDensity):
        primitive_from_conserved(U, GAS)


def test_primitive_conserved_roundtrip():
    rng = np.random.default_rng(7)
    for dim in (1, 2):
        U = random_states(rng, 200, dim=dim)
        V = primitive_from_conserved(U, GAS)
        U2 = conserved_from_primitive(V, GAS)
        assert np.allclose(U2, U, rtol=1e-13, atol=1e-13)


def test_conserved_from_primitive_reference():
    U = conserved_from_primitive(np.array([1.0, 0.0, 1.0]), GAS)
    assert np.allclose(U, [1.0, 0.0, 2.5], atol=1e-15)


def test_flux_reference_values():
    U = conserved_from_primitive(np.array([1.0, 0.0, 1.0]), GAS)
    assert np.allclose(flux(U, GAS), [0.0, 1.0, 0.0], atol=1e-15)
    # rho=1, u=1, p=1 has E = 3 and flux (1, 2, 4)
    U = conserved_from_primitive(np.array([1.0, 1.0, 1.0]), GAS)
    assert np.allclose(U[-1], 3.0)
    assert np.allclose(flux(U, GAS), [1.0, 2.0, 4.0], atol=1e-14)


def test_flux_y_with_zero_v_is_pressure_only():
    rng = np.random.default_rng(3)
    V = np.array([rng.uniform(0.5, 2.0), rng.uniform(-1, 1), 0.0, rng.uniform(0.5, 2.0)])
    U = conserved_from_primitive(V, GAS)
    G = flux(U, GAS, axis=1)
    assert np.allclose(G, [0.0, 0.0, V[-1], 0.0], atol=1e-14)


def test_flux_axis_validation():
    U = conserved_from_primitive(np.array([1.0, 0.0, 1.0]), GAS)
    with pytest.raises(ValueError):
        flux(U, GAS, axis=1)


def test_eigenvalues_sonic_and_supersonic():
    U = conserved_from_primitive(np.array([1.0, 0.0, 1.0]), GAS)
    lam = eigenvalues(U, GAS)
    c = np.sqrt(1.4)
    assert np.allclose(lam, [-c, 0.0, c], atol=1e-14)
    U = conserved_from_primitive(np.array([1.0, 3.0, 1.0]), GAS)
    assert np.all(eigenvalues(U, GAS) > 0.0)


def test_eigenvalues_sorted_ascending():
    rng = np.random.default_rng(11)
    for dim, axis in ((1, 0), (2, 0), (2, 1)):
        U = random_states(rng, 50, dim=dim)
        lam = eigenvalues(U, GAS, axis=axis)
        assert np.all(np.diff(lam, axis=0) >= -1e-14)


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(5)
    for dim, axis in ((1, 0), (2, 0), (2, 1)):
        U = random_states(rng, 1, dim=dim)[:, 0]
        A = jacobian(U, GAS, axis=axis)
        eps = 1e-7
        for j in range(U.size):
            dU = np.zeros_like(U)
            dU[j] = eps * max(1.0, abs(U[j]))
            dF = (flux(U + dU, GAS, axis=axis) - flux(U - dU, GAS, axis=axis)) / (2 * dU[j])
            assert np.allclose(A[:, j], dF, rtol=2e-6, atol=2e-6)


def _basis_checks(UL, UR, axis):
    B = char_basis(UL, UR, GAS, axis=axis)
    d = UL.shape[0]
    ident = B.R @ B.Rinv
    assert np.max(np.abs(ident - np.eye(d))) <= 1e-12
    Ua = 0.5 * (UL + UR)
    A = jacobian(Ua, GAS, axis=axis)
    D = B.Rinv @ A @ B.R
    off = D - np.diag(np.diag(D))
    assert np.max(np.abs(off)) <= 1e-10 * max(1.0, np.max(np.abs(A)))
    lam = eigenvalues(Ua, GAS, axis=axis)
    assert np.allclose(np.diag(D), lam, rtol=1e-9, atol=1e-9)


def test_char_basis_diagonalizes_mean_jacobian():
    rng = np.random.default_rng(19)
    for dim, axis in ((1, 0), (2, 0), (2, 1)):
        for _ in range(100):
            UL, UR = random_states(rng, 2, dim=dim).T
            _basis_checks(UL, UR, axis)


def test_char_basis_extreme_states():
    # near-vacuum and high-Mach pairs
    lo = conserved_from_primitive(np.array([1e-6, 0.0, 1e-6]), GAS)
    hi = conserved_from_primitive(np.array([1.0, 10.0, 1.0]), GAS)
    _basis_checks(lo, lo, 0)
    _basis_checks(hi, hi, 0)
    _basis_checks(lo, hi, 0)


def test_char_basis_scaling_freedom():
    # rescaling eigenvector columns (rows of Rinv inversely) keeps the
    # diagonalization intact: the basis is only defined up to column scale
    rng = np.random.default_rng(23)
    UL, UR = random_states(rng, 2, dim=2).T
    B = char_basis(UL, UR, GAS, axis=1)
    s = rng.uniform(0.2, 5.0, 4) * rng.choice([-1.0, 1.0], 4)
    R = B.R * s
    Rinv = B.Rinv / s[:, None]
    assert np.max(np.abs(R @ Rinv - np.eye(4))) <= 1e-12
    A = jacobian(0.5 * (UL + UR), GAS, axis=1)
    D = Rinv @ A @ R
    off = D - np.diag(np.diag(D))
    assert np.max(np.abs(off)) <= 1e-10 * max(1.0, np.max(np.abs(A)))


def test_char_basis_rejects_invalid_mean():
    U = np.array([1.0, 0.0, 2.5])
    bad = np.array([-1.5, 0.0, 2.5])
    with pytest.raises(DegenerateBasis):
        char_basis(U, bad, GAS)
    # kinetic energy exceeding total energy at the mean
    kin = np.array([1.0, 4.0, 2.0])
    with pytest.raises(DegenerateBasis):
        char_basis(kin, kin, GAS)


def test_char_basis_returns_dataclass():
    U = conserved_from_primitive(np.array([1.0, 0.5, 2.0]), GAS)
    B = char_basis(U, U, GAS)
    assert isinstance(B, CharBasis)
    assert B.R.shape == (3, 3) and B.Rinv.shape == (3, 3)


def test_sound_speed_reference():
    U = conserved_from_primitive(np.array([1.0, 0.0, 1.0]), GAS)
    assert sound_speed(U, GAS) == pytest.approx(np.sqrt(1.4), rel=1e-14)
