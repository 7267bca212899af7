"""Numerical audits of the integration-by-parts identities and inequalities
behind the stability estimates.

Equality audits (Garding, Rellich, zero-order mass, Robin boundary,
Morawetz) evaluate both sides by quadrature and report the relative gap on
the scale of the largest constituent term.  Inequality audits (Korn,
weighted Korn, the Morawetz/Young/quadratic estimate chain) report slack,
which must be nonnegative up to the stated tolerance.

Inner products conjugate their first argument: (a, b) = integral conj(a).b.

All multiplier-based audits use the radial multiplier h(x) = x, for which
grad h = I and div h = d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fem as _fem
from .bounds import THETA_STAR, TAU_STAR, assembled_bound_raw, stability_simple_robin
from .core import (
    DimensionlessGroups,
    DomainSpec,
    MaterialField,
    MultiplierSpec,
    RobinSpec,
)
from .fields import AnalyticField
from .mesh import DIRICHLET, DISSIPATIVE
from .quadrature import DomainQuadrature, quadrature_for

__all__ = [
    "IdentityReport",
    "ChainReport",
    "garding_audit",
    "rellich_audit",
    "mass_identity_audit",
    "morawetz_audit",
    "morawetz_audit_discrete",
    "korn_audit",
    "robin_identity_audit",
    "estimate_chain_audit",
    "manufactured_load",
]


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: float | complex
    rhs: float | complex
    scale: float
    rel_gap: float
    tol: float
    kind: str = "equality"  # "equality" | "inequality"
    slack: float | None = None
    terms: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.kind == "inequality":
            return self.slack is not None and self.slack >= -self.tol * self.scale
        return self.rel_gap <= self.tol

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "scale": self.scale,
            "rel_gap": self.rel_gap,
            "tol": self.tol,
            "kind": self.kind,
            "passed": self.passed,
        }
        if self.slack is not None:
            out["slack"] = self.slack
        return out


def _num(z):
    if isinstance(z, complex):
        return {"re": z.real, "im": z.imag}
    return float(z)


def _equality_report(name, lhs, rhs, terms, tol) -> IdentityReport:
    scale = max([abs(t) for t in terms.values()] + [abs(lhs), abs(rhs), 1e-300])
    gap = abs(lhs - rhs) / scale
    return IdentityReport(
        name=name, lhs=lhs, rhs=rhs, scale=scale, rel_gap=gap, tol=tol,
        terms={k: _num(v) for k, v in terms.items()},
    )


def _inequality_report(name, lhs, rhs, terms, tol) -> IdentityReport:
    scale = max([abs(t) for t in terms.values()] + [abs(lhs), abs(rhs), 1e-300])
    slack = float(np.real(rhs - lhs))
    return IdentityReport(
        name=name, lhs=lhs, rhs=rhs, scale=scale, rel_gap=max(0.0, -slack) / scale,
        tol=tol, kind="inequality", slack=slack,
        terms={k: _num(v) for k, v in terms.items()},
    )


# ---------------------------------------------------------------------------
# Sampled-field plumbing: the same term formulas serve analytic fields
# (exact-geometry quadrature) and finite-element fields (mesh quadrature).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Vol:
    x: np.ndarray
    w: np.ndarray
    val: np.ndarray
    grad: np.ndarray  # grad[q, j, l] = d_j v_l


@dataclass(frozen=True)
class _Surf:
    x: np.ndarray
    w: np.ndarray
    normal: np.ndarray
    val: np.ndarray
    grad: np.ndarray


def _vol_samples(v: AnalyticField, quad: DomainQuadrature) -> _Vol:
    x = quad.volume.points
    return _Vol(x=x, w=quad.volume.weights, val=v.value(x), grad=v.grad(x))


def _surf_samples(v: AnalyticField, rule) -> _Surf:
    x = rule.points
    return _Surf(x=x, w=rule.weights, normal=rule.normals, val=v.value(x), grad=v.grad(x))


def _strain(grad):
    return 0.5 * (grad + np.swapaxes(grad, -2, -1))


def _div(grad):
    return np.trace(grad, axis1=-2, axis2=-1)


def _stress(grad, mu, lam):
    eps = _strain(grad)
    div = _div(grad)
    d = grad.shape[-1]
    return 2.0 * mu[..., None, None] * eps + lam[..., None, None] * div[..., None, None] * np.eye(d)


def _dirdev(x, grad):
    """(h . grad)v for h = x: entry l is sum_j x_j d_j v_l."""
    return np.einsum("qj,qjl->ql", x, grad)


def _frob2(t):
    return np.sum(np.abs(t) ** 2, axis=(-2, -1))


def _log_slope(profile, x):
    """V_h(phi) = (h.grad phi)/phi = r phi'(r)/phi for h = x; zero where
    phi vanishes."""
    r = np.linalg.norm(x, axis=-1)
    if profile.radial_derivative is not None:
        dp = np.asarray(profile.radial_derivative(r), dtype=float)
    else:
        step = 1e-7 * max(r.max(), 1.0)
        lo = np.maximum(r - step, 0.0)
        dp = (profile.at_radius(r + step) - profile.at_radius(lo)) / (r + step - lo)
    p = profile.at_radius(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(np.abs(p) > 1e-14 * max(abs(profile.vmax), 1.0), r * dp / p, 0.0)


# ---------------------------------------------------------------------------
# Identity terms (h = x)
# ---------------------------------------------------------------------------

def _r_h_omega(vol: _Vol, mu, lam, v_mu, v_lam, d: int) -> float:
    eps = _strain(vol.grad)
    div = _div(vol.grad)
    growth = np.sum(
        vol.w * ((d + v_mu) * 2.0 * mu * _frob2(eps) + (d + v_lam) * lam * np.abs(div) ** 2)
    )
    # grad h = I: eps(v) : (grad h grad vbar) = eps : grad vbar = |eps|^2,
    # grad h : (grad vbar)^T = conj(div v)
    cross = np.sum(vol.w * 2.0 * (2.0 * mu * _frob2(eps) + lam * np.abs(div) ** 2))
    return float(np.real(growth - cross))


def _r_h_omega_simplified(vol: _Vol, mu, lam, v_mu, v_lam, d: int) -> float:
    eps = _strain(vol.grad)
    div = _div(vol.grad)
    return float(
        np.real(
            np.sum(
                vol.w
                * ((d - 2 + v_mu) * 2.0 * mu * _frob2(eps) + (d - 2 + v_lam) * lam * np.abs(div) ** 2)
            )
        )
    )


def _b_boundary(surf: _Surf, mu, lam) -> float:
    """int (h.n) sigma(v):eps(vbar) with h = x."""
    eps = _strain(surf.grad)
    div = _div(surf.grad)
    hn = np.einsum("qj,qj->q", surf.x, surf.normal)
    return float(np.real(np.sum(surf.w * hn * (2.0 * mu * _frob2(eps) + lam * np.abs(div) ** 2))))


def _traction_term(surf: _Surf, mu, lam) -> float:
    """2 Re int (sigma(v) n) . ((h.grad) vbar) with h = x."""
    sigma = _stress(surf.grad, mu, lam)
    sn = np.einsum("qij,qj->qi", sigma, surf.normal)
    hgrad = _dirdev(surf.x, surf.grad)
    return float(2.0 * np.real(np.sum(surf.w * np.einsum("qi,qi->q", sn, np.conj(hgrad)))))


def _surface_div_tangential(surf: _Surf) -> np.ndarray:
    """Surface divergence of the tangential part on an origin-centered
    sphere/circle, via the radially extended normal:
    div_T v_T = P : grad v - (d-1)(v.n)/r."""
    d = surf.val.shape[-1]
    n = surf.normal
    p_grad = np.einsum("qjl,qjl->q", np.eye(d)[None] - n[:, :, None] * n[:, None, :], surf.grad)
    r = np.linalg.norm(surf.x, axis=-1)
    vn = np.einsum("qi,qi->q", surf.val, n.astype(complex))
    return p_grad - (d - 1) * vn / r


# ---------------------------------------------------------------------------
# Audits on analytic fields
# ---------------------------------------------------------------------------

def rellich_audit(
    v: AnalyticField,
    domain: DomainSpec,
    material: MaterialField,
    order: int = 24,
    tol: float = 1e-8,
) -> IdentityReport:
    """Audit of the second-order integration-by-parts identity

        -2 Re (div sigma(v), (x.grad)v) = -R_Omega - R_diss + B_dir + B_diss

    for twice-differentiable fields and constant Lame coefficients.  The
    h = x simplification of the volume term is cross-checked inside the
    same report (``terms['r_omega_simplified']``).
    """
    if not material.is_constant:
        raise ValueError("Rellich audit needs constant Lame coefficients")
    quad = quadrature_for(domain, order)
    vol = _vol_samples(v, quad)
    mu = material.mu(vol.x)
    lam = material.lam(vol.x)
    d = domain.d

    div_sigma = v.div_sigma(vol.x, material.mu_min, material.lam_min)
    hgrad = _dirdev(vol.x, vol.grad)
    lhs = -2.0 * float(
        np.real(np.sum(vol.w * np.einsum("qi,qi->q", np.conj(div_sigma), hgrad)))
    )
    r_omega = _r_h_omega(vol, mu, lam, 0.0, 0.0, d)
    r_omega_simple = _r_h_omega_simplified(vol, mu, lam, 0.0, 0.0, d)
    diss = _surf_samples(v, quad.dissipative)
    mu_s = material.mu(diss.x)
    lam_s = material.lam(diss.x)
    b_diss = _b_boundary(diss, mu_s, lam_s)
    r_diss = _traction_term(diss, mu_s, lam_s)
    b_dir = 0.0
    if quad.dirichlet is not None:
        diri = _surf_samples(v, quad.dirichlet)
        mu_d = material.mu(diri.x)
        lam_d = material.lam(diri.x)
        b_dir = _b_boundary(diri, mu_d, lam_d) - _traction_term(diri, mu_d, lam_d)
    rhs = -r_omega - r_diss + b_dir + b_diss
    terms = {
        "r_omega": r_omega,
        "r_omega_simplified": r_omega_simple,
        "r_diss": r_diss,
        "b_dir": b_dir,
        "b_diss": b_diss,
        "simplification_gap": abs(r_omega - r_omega_simple),
    }
    return _equality_report("rellich", lhs, rhs, terms, tol)


def mass_identity_audit(
    v: AnalyticField,
    domain: DomainSpec,
    material: MaterialField,
    order: int = 24,
    tol: float = 1e-8,
) -> IdentityReport:
    """Audit of the zero-order identity

        -2 Re int rho v.(x.grad)vbar
            = int (d + V_x(rho)) rho |v|^2 - bdry int (x.n) rho |v|^2.
    """
    quad = quadrature_for(domain, order)
    vol = _vol_samples(v, quad)
    rho = material.rho(vol.x)
    v_rho = _log_slope(material.rho, vol.x)
    hgrad = _dirdev(vol.x, vol.grad)
    lhs = -2.0 * float(
        np.real(np.sum(vol.w * rho * np.einsum("qi,qi->q", np.conj(vol.val), hgrad)))
    )
    volume_term = float(
        np.real(np.sum(vol.w * (domain.d + v_rho) * rho * np.sum(np.abs(vol.val) ** 2, axis=1)))
    )
    boundary_term = 0.0
    for rule in (quad.dissipative, quad.dirichlet):
        if rule is None:
            continue
        s = _surf_samples(v, rule)
        hn = np.einsum("qj,qj->q", s.x, s.normal)
        boundary_term += float(
            np.real(np.sum(s.w * hn * material.rho(s.x) * np.sum(np.abs(s.val) ** 2, axis=1)))
        )
    rhs = volume_term - boundary_term
    terms = {"volume": volume_term, "boundary": boundary_term}
    return _equality_report("mass_identity", lhs, rhs, terms, tol)


def manufactured_load(v: AnalyticField, material: MaterialField, omega: float):
    """f with -omega^2 rho v - div sigma(v) = rho f for constant Lame
    coefficients (rho may vary radially)."""
    if material.mu.kind != "constant" or material.lam.kind != "constant":
        raise ValueError("manufactured loads need constant Lame coefficients")

    def fn(x):
        rho = material.rho(x)[:, None]
        return -(omega**2) * v.value(x) - v.div_sigma(x, material.mu_min, material.lam_min) / rho

    return fn


def morawetz_audit(
    u: AnalyticField,
    domain: DomainSpec,
    material: MaterialField,
    omega: float,
    f=None,
    order: int = 24,
    tol: float = 1e-6,
) -> IdentityReport:
    """Audit of the full multiplier identity for a (manufactured) solution
    of the strong equation vanishing on the Dirichlet boundary:

        omega^2 int (d + V_x(rho)) rho |u|^2 + B_diss + B_dir
          = 2 Re (rho f, (x.grad)u) + omega^2 bdry int (x.n) rho |u|^2
            + R_diss + R_Omega.
    """
    quad = quadrature_for(domain, order)
    vol = _vol_samples(u, quad)
    rho = material.rho(vol.x)
    mu = material.mu(vol.x)
    lam = material.lam(vol.x)
    v_rho = _log_slope(material.rho, vol.x)
    v_mu = _log_slope(material.mu, vol.x)
    v_lam = _log_slope(material.lam, vol.x)
    d = domain.d

    if f is None:
        f = manufactured_load(u, material, omega)
    f_val = np.asarray(f(vol.x), dtype=complex)

    mass_term = omega**2 * float(
        np.real(np.sum(vol.w * (d + v_rho) * rho * np.sum(np.abs(vol.val) ** 2, axis=1)))
    )
    diss = _surf_samples(u, quad.dissipative)
    mu_s, lam_s, rho_s = material.mu(diss.x), material.lam(diss.x), material.rho(diss.x)
    b_diss = _b_boundary(diss, mu_s, lam_s)
    r_diss = _traction_term(diss, mu_s, lam_s)
    hn = np.einsum("qj,qj->q", diss.x, diss.normal)
    mass_bdry = omega**2 * float(
        np.real(np.sum(diss.w * hn * rho_s * np.sum(np.abs(diss.val) ** 2, axis=1)))
    )
    b_dir = 0.0
    if quad.dirichlet is not None:
        diri = _surf_samples(u, quad.dirichlet)
        b_dir = _b_boundary(diri, material.mu(diri.x), material.lam(diri.x)) - _traction_term(
            diri, material.mu(diri.x), material.lam(diri.x)
        )
    hgrad = _dirdev(vol.x, vol.grad)
    work = 2.0 * float(
        np.real(np.sum(vol.w * rho * np.einsum("qi,qi->q", np.conj(f_val), hgrad)))
    )
    r_omega = _r_h_omega(vol, mu, lam, v_mu, v_lam, d)
    lhs = mass_term + b_diss + b_dir
    rhs = work + mass_bdry + r_diss + r_omega
    terms = {
        "mass": mass_term, "b_diss": b_diss, "b_dir": b_dir,
        "work": work, "mass_boundary": mass_bdry, "r_diss": r_diss, "r_omega": r_omega,
    }
    return _equality_report("morawetz", lhs, rhs, terms, tol)


def korn_audit(
    v: AnalyticField,
    domain: DomainSpec,
    robin: RobinSpec,
    groups: DimensionlessGroups,
    material: MaterialField,
    order: int = 24,
    tol: float = 1e-10,
) -> tuple:
    """Slack reports for the boundary-compensated Korn inequality

        |grad v|^2 <= 2 |eps(v)|^2 + (beta_T |v_T|^2 + beta_N |v.n|^2)/ell
                      + 2 |v.n| |div_T v_T|

    and its coefficient-weighted version (valid for fields vanishing on the
    Dirichlet boundary; curvature constants beta_T = 1, beta_N = d-1 of the
    spherical dissipative boundary)."""
    quad = quadrature_for(domain, order)
    vol = _vol_samples(v, quad)
    diss = _surf_samples(v, quad.dissipative)
    d = domain.d
    ell = domain.ell
    grad2 = float(np.sum(vol.w * _frob2(vol.grad)))
    eps2 = float(np.sum(vol.w * _frob2(_strain(vol.grad))))
    vn = np.einsum("qi,qi->q", diss.val, diss.normal.astype(complex))
    vt2 = np.sum(np.abs(diss.val) ** 2, axis=1) - np.abs(vn) ** 2
    norm_vt2 = float(np.sum(diss.w * vt2))
    norm_vn2 = float(np.sum(diss.w * np.abs(vn) ** 2))
    div_t = _surface_div_tangential(diss)
    norm_divt = math.sqrt(float(np.sum(diss.w * np.abs(div_t) ** 2)))
    lhs = grad2
    rhs = (
        2.0 * eps2
        + (groups.beta_t * norm_vt2 + groups.beta_n * norm_vn2) / ell
        + 2.0 * math.sqrt(norm_vn2) * norm_divt
    )
    basic = _inequality_report(
        "korn_basic", lhs, rhs,
        {"grad2": grad2, "eps2": eps2, "vt2": norm_vt2, "vn2": norm_vn2, "divt": norm_divt},
        tol,
    )

    mu_vol = material.mu(vol.x)
    mu_b = material.mu(diss.x)
    eps2_mu = float(np.sum(vol.w * 2.0 * mu_vol * _frob2(_strain(vol.grad))))
    norm_v_a2 = float(np.sum(diss.w * (robin.a_t * vt2 + robin.a_n * np.abs(vn) ** 2)))
    eps_mu_b = math.sqrt(float(np.sum(diss.w * mu_b * _frob2(_strain(diss.grad)))))
    kappa = groups.kappa_s
    theta_s_min = math.sqrt(material.mu_min / material.rho_max)
    omega = kappa * theta_s_min / ell
    lhs_w = material.mu_min * grad2
    if kappa > 0.0:
        rhs_w = (
            eps2_mu
            + groups.chi / kappa * omega * norm_v_a2
            + 2.0 / math.sqrt(robin.alpha_n * kappa) * math.sqrt(omega) * math.sqrt(norm_v_a2)
            * math.sqrt(ell) * eps_mu_b
        )
    else:
        rhs_w = math.inf
    weighted = _inequality_report(
        "korn_weighted", lhs_w, rhs_w,
        {"eps2_mu": eps2_mu, "v_A2": norm_v_a2, "eps_mu_boundary": eps_mu_b},
        tol,
    )
    return basic, weighted


def robin_identity_audit(
    v: AnalyticField,
    domain: DomainSpec,
    robin: RobinSpec,
    order: int = 24,
    tol: float = 1e-8,
) -> IdentityReport:
    """Audit of the five-term boundary identity for h = x on the spherical
    dissipative boundary (complex-valued; checked as a complex equation):

        (A v, (x.grad)v) = 2 (A v, eps(v) x) + (A v, v)
                           + a_T ((x.n)(div_T v_T), v.n)
                           - a_N ((v.n) n, v) - a_N ((x.n)(v.n), eps(v)n.n).
    """
    quad = quadrature_for(domain, order)
    s = _surf_samples(v, quad.dissipative)
    n = s.normal
    w = s.w
    av = robin.a_t * s.val + (robin.a_n - robin.a_t) * np.einsum(
        "qi,qi->q", s.val, n.astype(complex)
    )[:, None] * n
    eps = _strain(s.grad)
    hgrad = _dirdev(s.x, s.grad)
    hn = np.einsum("qj,qj->q", s.x, n)
    vn = np.einsum("qi,qi->q", s.val, n.astype(complex))
    eps_h = np.einsum("qij,qj->qi", eps, s.x.astype(complex))
    eps_nn = np.einsum("qi,qij,qj->q", n.astype(complex), eps, n.astype(complex))
    div_t = _surface_div_tangential(s)

    def ip(a, b):
        return complex(np.sum(w * np.einsum("qi,qi->q", np.conj(a), b)))

    def ip_s(a, b):
        return complex(np.sum(w * np.conj(a) * b))

    lhs = ip(av, hgrad)
    t1 = 2.0 * ip(av, eps_h)
    t2 = ip(av, s.val)
    t3 = robin.a_t * ip_s(hn * div_t, vn)
    t4 = -robin.a_n * ip(vn[:, None] * n, s.val)
    t5 = -robin.a_n * ip_s(hn * vn, eps_nn)
    rhs = t1 + t2 + t3 + t4 + t5
    terms = {"t1": t1, "t2": t2, "t3": t3, "t4": t4, "t5": t5}
    return _equality_report("robin_identity", lhs, rhs, terms, tol)


# ---------------------------------------------------------------------------
# Discrete audits (finite-element solutions)
# ---------------------------------------------------------------------------

def garding_audit(result, system, f, tol: float = 1e-10) -> tuple:
    """Energy-balance identities of the discrete solution, exact by
    construction of the weak form:

        2 ||eps(u)||_mu^2 + ||div u||_lam^2 = Re (rho f, u) + omega^2 ||u||_rho^2
        omega ||u||_A^2 = Im (rho f, u).
    """
    u = np.asarray(result.u, dtype=complex).reshape(-1)
    fv = np.asarray(f, dtype=complex).reshape(-1)
    omega = system.omega
    energy = float(np.real(u.conj() @ (system.stiffness @ u)))
    mass_u = float(np.real(u.conj() @ (system.mass @ u)))
    robin_u = float(np.real(u.conj() @ (system.robin_matrix @ u)))
    ip_fu = complex(np.vdot(fv, system.mass @ u))  # (rho f, u), conjugate-first
    real_rep = _equality_report(
        "garding_real",
        energy,
        ip_fu.real + omega**2 * mass_u,
        {"energy": energy, "re_fu": ip_fu.real, "omega2_mass": omega**2 * mass_u},
        tol,
    )
    imag_rep = _equality_report(
        "garding_imag",
        omega * robin_u,
        ip_fu.imag,
        {"robin": omega * robin_u, "im_fu": ip_fu.imag},
        tol,
    )
    return real_rep, imag_rep


def morawetz_audit_discrete(result, system, f, tol: float = 5e-2) -> IdentityReport:
    """Morawetz identity evaluated on a discrete solution; the gap measures
    the strong-form consistency error of u_h and shrinks under refinement."""
    mesh = system.mesh
    mat = system.material
    omega = system.omega
    d = 2
    x, w, [(val_u, grad_u), (val_f, _)] = _fem.evaluate_volume(mesh, [result.u, f])
    rho = mat.rho(x)
    mu = mat.mu(x)
    lam = mat.lam(x)
    vol = _Vol(x=x, w=w, val=val_u, grad=grad_u)
    v_rho = _log_slope(mat.rho, x)
    v_mu = _log_slope(mat.mu, x)
    v_lam = _log_slope(mat.lam, x)

    mass_term = omega**2 * float(
        np.real(np.sum(w * (d + v_rho) * rho * np.sum(np.abs(val_u) ** 2, axis=1)))
    )
    xb, wb, nb, [(ub, gb)] = _fem.evaluate_boundary(mesh, DISSIPATIVE, [result.u])
    diss = _Surf(x=xb, w=wb, normal=nb, val=ub, grad=gb)
    mu_b, lam_b, rho_b = mat.mu(xb), mat.lam(xb), mat.rho(xb)
    b_diss = _b_boundary(diss, mu_b, lam_b)
    r_diss = _traction_term(diss, mu_b, lam_b)
    hn = np.einsum("qj,qj->q", xb, nb)
    mass_bdry = omega**2 * float(
        np.real(np.sum(wb * hn * rho_b * np.sum(np.abs(ub) ** 2, axis=1)))
    )
    xd, wd, nd, [(ud, gd)] = _fem.evaluate_boundary(mesh, DIRICHLET, [result.u])
    diri = _Surf(x=xd, w=wd, normal=nd, val=ud, grad=gd)
    b_dir = _b_boundary(diri, mat.mu(xd), mat.lam(xd)) - _traction_term(
        diri, mat.mu(xd), mat.lam(xd)
    )
    work = 2.0 * float(
        np.real(
            np.sum(w * rho * np.einsum("qi,qi->q", np.conj(val_f), _dirdev(x, grad_u)))
        )
    )
    r_omega = _r_h_omega(vol, mu, lam, v_mu, v_lam, d)
    lhs = mass_term + b_diss + b_dir
    rhs = work + mass_bdry + r_diss + r_omega
    terms = {
        "mass": mass_term, "b_diss": b_diss, "b_dir": b_dir,
        "work": work, "mass_boundary": mass_bdry, "r_diss": r_diss, "r_omega": r_omega,
    }
    return _equality_report("morawetz_discrete", lhs, rhs, terms, tol)


@dataclass(frozen=True)
class ChainReport:
    links: tuple
    assembled_bound: float
    theorem_bound: float
    quantities: dict

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    def as_dict(self) -> dict:
        return {
            "links": [link.as_dict() for link in self.links],
            "assembled_bound": self.assembled_bound,
            "theorem_bound": self.theorem_bound,
            "passed": self.passed,
        }


def estimate_chain_audit(
    result,
    system,
    f,
    groups: DimensionlessGroups,
    mult: MultiplierSpec,
    theta: float = THETA_STAR,
    tau: float = TAU_STAR,
    tol: float = 1e-3,
) -> ChainReport:
    """Slack of every inequality link in the estimate chain, evaluated from
    discrete quantities of one solve:

      link 1: the Morawetz estimate bounding
              2(gamma/M) omega^2 ||u||^2 + 2(m/M) ell ||eps(u)||_{mu,Gamma}^2;
      link 2: the Young split of the gradient term with exponents theta, tau;
      link 3: the final frequency-explicit theorem bound.
    """
    q = _fem.discrete_quantities(system, result.u, f)
    d = 2
    kappa = groups.kappa_s
    omega = q["omega"]
    ell = q["ell"]
    nu_u, nf = q["norm_u_rho"], q["norm_f_rho"]
    eps_g = q["norm_eps_mu_gamma"]
    ua = q["norm_u_A_gamma"]
    gradu = q["norm_grad_u"]
    mu_min = q["mu_min"]

    lhs1 = 2.0 * mult.gamma / mult.M * omega**2 * nu_u**2 + 2.0 * mult.m / mult.M * ell * eps_g**2
    rhs1 = (
        ((d - 2.0 + mult.epsilon) / mult.M + groups.zeta + kappa / groups.alpha_min) * nf * nu_u
        + 2.0 * kappa / omega * nf * math.sqrt(mu_min) * gradu
        + groups.c_rob * math.sqrt(kappa * omega) * ua * math.sqrt(ell) * eps_g
    )
    link1 = _inequality_report(
        "morawetz_estimate", lhs1, rhs1, {"lhs": lhs1, "rhs": rhs1}, tol
    )

    lhs2 = 2.0 * kappa / omega * nf * math.sqrt(mu_min) * gradu
    rhs2 = (
        (
            math.sqrt(2.0) * (1.0 + groups.chi / kappa) * kappa ** (2.0 - theta)
            + 2.0 / math.sqrt(groups.alpha_n) * kappa ** (1.5 - tau)
        )
        * nf**2
        / omega**2
        + (math.sqrt(2.0) * kappa**theta + 2.0 * kappa) * nf * nu_u
        + 2.0 * kappa**tau * math.sqrt(omega) * ua * math.sqrt(ell) * eps_g
    )
    link2 = _inequality_report("young_split", lhs2, rhs2, {"lhs": lhs2, "rhs": rhs2}, tol)

    theorem = stability_simple_robin(groups, mult, d)
    lhs3 = mult.gamma / mult.M * omega**2 * nu_u
    rhs3 = mult.gamma / mult.M * theorem.bound_value * nf
    link3 = _inequality_report("stability_bound", lhs3, rhs3, {"lhs": lhs3, "rhs": rhs3}, tol)

    assembled = assembled_bound_raw(kappa, groups, mult, d, theta, tau) if kappa > 0 else math.inf
    return ChainReport(
        links=(link1, link2, link3),
        assembled_bound=assembled,
        theorem_bound=theorem.bound_value,
        quantities=q,
    )
