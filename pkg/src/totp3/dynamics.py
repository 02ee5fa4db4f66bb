"""Path-projected manipulator dynamics.

Projects tau = M(q) qdd + C(q, qd) qd + g(q) onto the path so that
tau_k = m_k * sdd + c_k * sd^2 + g_k, using the linearity of the
Coriolis matrix in velocity: C(q, q' sd) q' sd = C(q, q') q' sd^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .path_model import PathSamples


class DynamicsError(ValueError):
    """Raised for inconsistent dynamics inputs."""


@dataclass(frozen=True)
class TwoLinkParams:
    """Planar 2-link arm: masses, link lengths, COM offsets, rotor+link inertias."""

    m1: float = 1.0
    m2: float = 1.0
    l1: float = 1.0
    l2: float = 1.0
    lc1: float = 0.5
    lc2: float = 0.5
    I1: float = 0.1
    I2: float = 0.1
    gravity: float = 9.81

    def __post_init__(self):
        for name in ("m1", "m2", "l1", "l2", "lc1", "lc2", "I1", "I2"):
            if getattr(self, name) <= 0:
                raise DynamicsError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class DynamicsModel:
    """One of: kinematic_only, two_link_planar, tabulated coefficients."""

    variant: str = "kinematic_only"
    two_link: TwoLinkParams | None = None
    tabulated: tuple | None = None  # (m, c, g) arrays of shape (N+1, n)

    def __post_init__(self):
        if self.variant not in ("kinematic_only", "two_link_planar", "tabulated"):
            raise DynamicsError(f"unknown model variant {self.variant!r}")
        if self.variant == "two_link_planar" and self.two_link is None:
            object.__setattr__(self, "two_link", TwoLinkParams())
        if self.variant == "tabulated" and self.tabulated is None:
            raise DynamicsError("tabulated variant needs (m, c, g) arrays")

    @property
    def is_kinematic(self) -> bool:
        return self.variant == "kinematic_only"


@dataclass(frozen=True)
class PathDynamicsCoefficients:
    """m_k, c_k, g_k vectors per grid point; empty for kinematic models."""

    m: np.ndarray  # (N+1, n) or (0,)
    c: np.ndarray
    g: np.ndarray

    @property
    def empty(self) -> bool:
        return self.m.size == 0


def mass_matrix(q, p: TwoLinkParams) -> np.ndarray:
    c2 = np.cos(q[1])
    m11 = (p.m1 * p.lc1**2 + p.I1
           + p.m2 * (p.l1**2 + p.lc2**2 + 2.0 * p.l1 * p.lc2 * c2) + p.I2)
    m12 = p.m2 * (p.lc2**2 + p.l1 * p.lc2 * c2) + p.I2
    m22 = p.m2 * p.lc2**2 + p.I2
    return np.array([[m11, m12], [m12, m22]])


def coriolis_matrix(q, qd, p: TwoLinkParams) -> np.ndarray:
    h = -p.m2 * p.l1 * p.lc2 * np.sin(q[1])
    return np.array([[h * qd[1], h * (qd[0] + qd[1])],
                     [-h * qd[0], 0.0]])


def gravity_vector(q, p: TwoLinkParams) -> np.ndarray:
    g1 = ((p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * np.cos(q[0])
          + p.m2 * p.lc2 * p.gravity * np.cos(q[0] + q[1]))
    g2 = p.m2 * p.lc2 * p.gravity * np.cos(q[0] + q[1])
    return np.array([g1, g2])


def two_link_inverse_dynamics(q, qd, qdd, params: TwoLinkParams) -> np.ndarray:
    """Closed-form joint torques for the planar 2-link arm."""
    q = np.asarray(q, dtype=float)
    qd = np.asarray(qd, dtype=float)
    qdd = np.asarray(qdd, dtype=float)
    M = mass_matrix(q, params)
    C = coriolis_matrix(q, qd, params)
    return M @ qdd + C @ qd + gravity_vector(q, params)


def compute_dynamics_coeffs(model: DynamicsModel,
                            samples: PathSamples) -> PathDynamicsCoefficients:
    """m_k = M q'_k; c_k = M q''_k + C(q_k, q'_k) q'_k; g_k = g(q_k)."""
    empty = np.zeros((0,))
    if model.is_kinematic:
        return PathDynamicsCoefficients(m=empty, c=empty, g=empty)
    if model.variant == "tabulated":
        m, c, g = (np.atleast_2d(np.asarray(a, dtype=float)) for a in model.tabulated)
        if m.shape != c.shape or m.shape != g.shape:
            raise DynamicsError("tabulated m, c, g must share one shape")
        if m.shape[0] != samples.n_points or m.shape[1] != samples.n_joints:
            raise DynamicsError("tabulated coefficients do not match the samples")
        return PathDynamicsCoefficients(m=m, c=c, g=g)
    if samples.n_joints != 2:
        raise DynamicsError("two_link_planar requires a 2-joint path")
    p = model.two_link
    K = samples.n_points
    m = np.empty((K, 2))
    c = np.empty((K, 2))
    g = np.empty((K, 2))
    for k in range(K):
        qk = samples.q[k]
        dq = samples.dq_ds[k]
        ddq = samples.d2q_ds2[k]
        M = mass_matrix(qk, p)
        C = coriolis_matrix(qk, dq, p)
        m[k] = M @ dq
        c[k] = M @ ddq + C @ dq
        g[k] = gravity_vector(qk, p)
    return PathDynamicsCoefficients(m=m, c=c, g=g)
