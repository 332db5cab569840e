"""Time-domain route: integration, monodromies, eigenphases."""

import math

import numpy as np
import pytest

from floquet_tls.bloch_dynamics import (
    DriveParams,
    adjoint_rotation,
    evolve_classical,
    field_at,
    monodromy_so3,
    monodromy_su2,
    periodic_initial_state,
    periodic_orbit,
    quasienergy_from_monodromy,
    so3_angle,
)
from floquet_tls.errors import DegenerateMonodromyError, DomainError


def rpc_params(omega0=1.0, F=0.5, omega=1.0):
    return DriveParams(omega0=omega0, F=F, G=F, omega=omega)


def axis_angle_rotation(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array(
        [[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]]
    )
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


def test_field_at_examples():
    p = DriveParams(1.0, 0.5, 0.0, 1.0)
    assert np.allclose(field_at(p, 0.0), [0.5, 0.0, 1.0])
    assert np.allclose(field_at(p, math.pi / 2), [0.0, 0.0, 1.0], atol=1e-15)
    p = DriveParams(1.0, 2.0, 2.0, 3.0)
    assert np.allclose(field_at(p, math.pi / 6), [0.0, 2.0, 1.0], atol=1e-14)


def test_drive_params_validation():
    with pytest.raises(DomainError):
        DriveParams(1.0, 0.5, 0.0, 0.0)
    with pytest.raises(DomainError):
        DriveParams(1.0, -0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        DriveParams(float("nan"), 0.5, 0.0, 1.0)


def test_tolerance_domain():
    p = DriveParams(1.0, 0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        evolve_classical(p, [0, 0, 1], 0.0, 1.0, tol=1e-3)


def test_larmor_precession():
    p = DriveParams(omega0=1.3, F=0.0, G=0.0, omega=2.0)
    traj = evolve_classical(p, [1.0, 0.0, 0.0], 0.0, p.T)
    th = p.omega0 * p.T
    assert np.allclose(traj(p.T), [math.cos(th), math.sin(th), 0.0], atol=1e-10)


def test_rpc_orbit_matches_closed_form():
    p = rpc_params(omega0=1.0, F=1.0, omega=1.3)
    x0 = np.array([p.F, 0.0, p.omega0 - p.omega])
    traj = evolve_classical(p, x0, 0.0, p.T)
    ts = np.linspace(0.0, p.T, 50)
    ref = np.stack(
        [p.F * np.cos(p.omega * ts), p.F * np.sin(p.omega * ts),
         np.full_like(ts, p.omega0 - p.omega)],
        axis=-1,
    )
    assert np.abs(traj(ts) - ref).max() < 1e-8


def test_norm_conservation_long_run():
    p = DriveParams(1.0, 2.0, 0.7, 1.3)
    traj = evolve_classical(p, [0.6, 0.0, 0.8], 0.0, 10 * p.T)
    norms = np.linalg.norm(traj(np.linspace(0.0, 10 * p.T, 400)), axis=-1)
    assert np.abs(norms - 1.0).max() < 1e-9


def test_monodromy_so3_static_field():
    p = DriveParams(omega0=0.9, F=0.0, G=0.0, omega=1.1)
    m = monodromy_so3(p)
    assert np.allclose(m, axis_angle_rotation([0, 0, 1], p.omega0 * p.T), atol=1e-10)


def test_monodromy_so3_group_membership():
    p = DriveParams(1.0, 1.7, 0.4, 0.9)
    m = monodromy_so3(p)
    assert np.abs(m @ m.T - np.eye(3)).max() < 1e-9
    assert abs(np.linalg.det(m) - 1.0) < 1e-9


def test_rpc_eigenangle_is_rabi_angle():
    # Omega = 1 at these parameters; the eigenangle folds Omega T mod 2 pi
    p = rpc_params(omega0=1.0, F=1.0, omega=1.0)
    rho = so3_angle(monodromy_so3(p))
    assert abs(rho - 0.0) < 1e-9  # Omega T = 2 pi folds to zero
    p = rpc_params(omega0=1.0, F=1.0, omega=1.4)
    big_omega = math.hypot(p.F, p.omega0 - p.omega)
    folded = (big_omega * p.T) % (2 * math.pi)
    folded = min(folded, 2 * math.pi - folded)
    assert abs(so3_angle(monodromy_so3(p)) - folded) < 1e-9


def test_su2_static_field():
    p = DriveParams(omega0=1.3, F=0.0, G=0.0, omega=1.0)
    u = monodromy_su2(p)
    expect = np.diag(
        [np.exp(-0.5j * p.omega0 * p.T), np.exp(0.5j * p.omega0 * p.T)]
    )
    assert np.abs(u - expect).max() < 1e-10


def test_su2_unitarity_and_rpc_phase():
    p = rpc_params(omega0=1.0, F=0.5, omega=1.0)
    u = monodromy_su2(p)
    assert np.abs(u @ u.conj().T - np.eye(2)).max() < 1e-9
    eps = quasienergy_from_monodromy(u, p.T)
    # eps_pm = (omega +- Omega)/2 = 0.75, 0.25; representative in [0, w/2]
    assert abs(eps - 0.25) < 1e-10


def test_su2_so3_eigenphase_relation():
    p = DriveParams(1.0, 0.8, 0.3, 1.7)
    rho = so3_angle(monodromy_so3(p))
    theta = quasienergy_from_monodromy(monodromy_su2(p), p.T) * p.T
    diff = (rho - 2.0 * theta) % (2 * math.pi)
    assert min(diff, 2 * math.pi - diff) < 1e-8


def test_adjoint_consistency():
    p = DriveParams(1.0, 0.8, 0.3, 1.7)
    assert np.abs(adjoint_rotation(monodromy_su2(p)) - monodromy_so3(p)).max() < 1e-7


def test_periodic_initial_state_identity_degenerate():
    with pytest.raises(DegenerateMonodromyError):
        periodic_initial_state(np.eye(3))


def test_periodic_initial_state_zero_static_family():
    # omega0 = 0 linear drive: the one-period rotation is the identity
    p = DriveParams(omega0=0.0, F=1.0, G=0.0, omega=1.0)
    with pytest.raises(DegenerateMonodromyError):
        periodic_initial_state(monodromy_so3(p))


def test_periodic_initial_state_recovers_rotation_axis():
    rng = np.random.default_rng(3)
    for _ in range(25):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = float(rng.uniform(0.2, 2.9))
        got = periodic_initial_state(axis_angle_rotation(axis, angle))
        if axis[2] < 0:
            axis = -axis
        assert np.abs(got - axis).max() < 1e-9
        assert abs(np.linalg.norm(got) - 1.0) < 1e-12


def test_periodic_initial_state_rpc():
    p = rpc_params(omega0=1.0, F=0.5, omega=0.6)
    got = periodic_initial_state(monodromy_so3(p))
    expect = np.array([p.F, 0.0, p.omega0 - p.omega])
    expect /= np.linalg.norm(expect)
    assert np.abs(got - expect).max() < 1e-8


def test_periodicity_of_periodic_orbit():
    p = DriveParams(1.0, 0.7, 0.2, 1.9)
    traj = periodic_orbit(p)
    assert np.abs(traj(0.0) - traj(p.T)).max() < 1e-7


def test_quasienergy_identity_monodromy():
    assert quasienergy_from_monodromy(np.eye(2, dtype=complex), 2 * math.pi) == 0.0
    assert quasienergy_from_monodromy(np.eye(3), 2 * math.pi) == 0.0


def test_quasienergy_t0_invariance():
    p = DriveParams(1.0, 0.8, 0.3, 1.7)
    e0 = quasienergy_from_monodromy(monodromy_su2(p, t0=0.0), p.T)
    e1 = quasienergy_from_monodromy(monodromy_su2(p, t0=0.73), p.T)
    assert abs(e0 - e1) < 1e-9


def test_quasienergy_from_monodromy_shape_check():
    with pytest.raises(DomainError):
        quasienergy_from_monodromy(np.eye(4), 1.0)
