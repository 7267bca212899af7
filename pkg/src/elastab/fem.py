"""2D vector finite elements on the annulus probe.

Assembles the dissipative time-harmonic system

    S(omega) = K - omega^2 M - i omega R

with K the elastic stiffness (2 mu strain:strain + lambda div div), M the
density-weighted mass, and R the impedance boundary matrix on the outer
circle.  Solving S u = M f realizes the weak problem with load (rho f, v).
Dirichlet conditions on the inner circle are imposed by elimination.

The module also measures the empirical stability constant
omega^2 * sup ||u||_rho / ||f||_rho by power iteration on the rho-weighted
normal operator of the discrete solution map.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .bounds import bound_obstacle_ideal, bound_obstacle_realistic
from .core import MaterialField, RobinSpec
from .errors import IterationError, MeshError, SolverError
from .mesh import DIRICHLET, DISSIPATIVE, Mesh, build_annulus_mesh

__all__ = [
    "AssembledSystem",
    "SolveResult",
    "assemble",
    "boundary_load",
    "solve",
    "evaluate_volume",
    "evaluate_boundary",
    "discrete_quantities",
    "empirical_constant",
    "SweepConfig",
    "SweepRow",
    "resolution_mesh",
    "sweep",
]

_RESIDUAL_TOL = 1e-8

# degree-5 rule on the reference triangle (weights sum to 1/2)
_TRI_QP = np.array(
    [
        [1.0 / 3.0, 1.0 / 3.0],
        [0.059715871789770, 0.470142064105115],
        [0.470142064105115, 0.059715871789770],
        [0.470142064105115, 0.470142064105115],
        [0.797426985353087, 0.101286507323456],
        [0.101286507323456, 0.797426985353087],
        [0.101286507323456, 0.101286507323456],
    ]
)
_TRI_QW = 0.5 * np.array(
    [
        0.225,
        0.132394152788506,
        0.132394152788506,
        0.132394152788506,
        0.125939180544827,
        0.125939180544827,
        0.125939180544827,
    ]
)

_EDGE_QP, _EDGE_QW = np.polynomial.legendre.leggauss(4)
_EDGE_QP = 0.5 * (_EDGE_QP + 1.0)
_EDGE_QW = 0.5 * _EDGE_QW


def _shapes(order: int, pts: np.ndarray):
    """Shape values (Q, a) and reference gradients (Q, a, 2) at pts (Q, 2)."""
    xi, eta = pts[:, 0], pts[:, 1]
    lam1 = 1.0 - xi - eta
    if order == 1:
        n = np.stack([lam1, xi, eta], axis=1)
        dn = np.broadcast_to(
            np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]]), (pts.shape[0], 3, 2)
        ).copy()
        return n, dn
    n = np.stack(
        [
            lam1 * (2.0 * lam1 - 1.0),
            xi * (2.0 * xi - 1.0),
            eta * (2.0 * eta - 1.0),
            4.0 * lam1 * xi,
            4.0 * xi * eta,
            4.0 * eta * lam1,
        ],
        axis=1,
    )
    z = np.zeros_like(xi)
    dn = np.stack(
        [
            np.stack([1.0 - 4.0 * lam1, 1.0 - 4.0 * lam1], axis=1),
            np.stack([4.0 * xi - 1.0, z], axis=1),
            np.stack([z, 4.0 * eta - 1.0], axis=1),
            np.stack([4.0 * (lam1 - xi), -4.0 * xi], axis=1),
            np.stack([4.0 * eta, 4.0 * xi], axis=1),
            np.stack([-4.0 * eta, 4.0 * (lam1 - eta)], axis=1),
        ],
        axis=1,
    )
    return n, dn


def _edge_shapes(order: int, t: np.ndarray):
    if order == 1:
        n = np.stack([1.0 - t, t], axis=1)
        dn = np.stack([-np.ones_like(t), np.ones_like(t)], axis=1)
    else:
        n = np.stack([(1.0 - t) * (1.0 - 2.0 * t), t * (2.0 * t - 1.0), 4.0 * t * (1.0 - t)], axis=1)
        dn = np.stack([4.0 * t - 3.0, 4.0 * t - 1.0, 4.0 - 8.0 * t], axis=1)
    return n, dn


def _edge_ref_coords(local_edge: int, t: np.ndarray) -> np.ndarray:
    if local_edge == 0:
        return np.stack([t, np.zeros_like(t)], axis=1)
    if local_edge == 1:
        return np.stack([1.0 - t, t], axis=1)
    return np.stack([np.zeros_like(t), 1.0 - t], axis=1)


def _geometry(mesh: Mesh, pts: np.ndarray):
    """Per-cell isoparametric geometry at reference points pts.

    Returns (n, dn_ref, x (Nc,Q,2), detJ (Nc,Q), dn_x (Nc,Q,a,2))."""
    n, dn = _shapes(mesh.order, pts)
    xc = mesh.nodes[mesh.conn]  # (Nc, a, 2)
    # J[c,q,i,k] = sum_a dn[q,a,k] * xc[c,a,i]
    jac = np.einsum("qak,cai->cqik", dn, xc)
    det = jac[..., 0, 0] * jac[..., 1, 1] - jac[..., 0, 1] * jac[..., 1, 0]
    if np.any(det <= 0.0):
        raise MeshError("singular or inverted element Jacobian")
    inv = np.empty_like(jac)
    inv[..., 0, 0] = jac[..., 1, 1] / det
    inv[..., 0, 1] = -jac[..., 0, 1] / det
    inv[..., 1, 0] = -jac[..., 1, 0] / det
    inv[..., 1, 1] = jac[..., 0, 0] / det
    # grad_x N_a[j] = sum_k inv[k,j] dn[a,k]
    dnx = np.einsum("cqkj,qak->cqaj", inv, dn)
    x = np.einsum("qa,cai->cqi", n, xc)
    return n, dn, x, det, dnx


@dataclass(frozen=True)
class AssembledSystem:
    """Sparse building blocks of S(omega) = K - omega^2 M - i omega R."""

    mesh: Mesh
    material: MaterialField
    robin: RobinSpec
    omega: float
    stiffness: sp.csr_matrix
    mass: sp.csr_matrix
    robin_matrix: sp.csr_matrix
    free: np.ndarray
    dirichlet_dofs: np.ndarray

    @property
    def n_dofs(self) -> int:
        return 2 * self.mesh.n_nodes

    def system_matrix(self) -> sp.csc_matrix:
        s = self.stiffness - self.omega**2 * self.mass - 1j * self.omega * self.robin_matrix
        return s.tocsc()


def assemble(mesh: Mesh, material: MaterialField, robin: RobinSpec, omega: float) -> AssembledSystem:
    n, dn, x, det, dnx = _geometry(mesh, _TRI_QP)
    nc, nq, na = dnx.shape[0], dnx.shape[1], dnx.shape[2]
    mu_q = material.mu(x.reshape(-1, 2)).reshape(nc, nq)
    lam_q = material.lam(x.reshape(-1, 2)).reshape(nc, nq)
    rho_q = material.rho(x.reshape(-1, 2)).reshape(nc, nq)
    wdet = _TRI_QW[None, :] * det  # (Nc, Q)

    # stiffness: mu (dN_a[c2] dN_b[c1] + delta_{c1 c2} gradN_a.gradN_b)
    #            + lam dN_a[c1] dN_b[c2]
    gdot = np.einsum("cq,cqaj,cqbj->cab", wdet * mu_q, dnx, dnx)
    cross = np.einsum("cq,cqai,cqbj->cabij", wdet * mu_q, dnx, dnx)  # dN_a[i] dN_b[j]
    dil = np.einsum("cq,cqai,cqbj->cabij", wdet * lam_q, dnx, dnx)
    ke = np.zeros((nc, 2 * na, 2 * na))
    mass_n = np.einsum("cq,qa,qb->cab", wdet * rho_q, n, n)
    me = np.zeros((nc, 2 * na, 2 * na))
    for c1 in range(2):
        for c2 in range(2):
            blk = cross[:, :, :, c2, c1] + dil[:, :, :, c1, c2]
            if c1 == c2:
                blk = blk + gdot
                me[:, c1::2, c2::2] = mass_n
            ke[:, c1::2, c2::2] = blk

    dofs = np.empty((nc, 2 * na), dtype=int)
    dofs[:, 0::2] = 2 * mesh.conn
    dofs[:, 1::2] = 2 * mesh.conn + 1
    rows = np.repeat(dofs, 2 * na, axis=1).ravel()
    cols = np.tile(dofs, (1, 2 * na)).ravel()
    ndof = 2 * mesh.n_nodes
    stiffness = sp.coo_matrix((ke.ravel(), (rows, cols)), shape=(ndof, ndof)).tocsr()
    mass = sp.coo_matrix((me.ravel(), (rows, cols)), shape=(ndof, ndof)).tocsr()

    # impedance matrix on the dissipative circle
    r_rows, r_cols, r_vals = [], [], []
    en, edn = _edge_shapes(mesh.order, _EDGE_QP)
    for e in mesh.boundary_edges:
        if e.tag != DISSIPATIVE:
            continue
        enodes = np.array(e.nodes, dtype=int)
        xe = mesh.nodes[enodes]  # (ae, 2)
        xq = en @ xe  # (Qe, 2)
        dxdt = edn @ xe
        ds = np.linalg.norm(dxdt, axis=1) * _EDGE_QW
        nrm = xq / np.linalg.norm(xq, axis=1, keepdims=True)
        # a_T I + (a_N - a_T) n (x) n
        amat = robin.a_t * np.eye(2)[None, :, :] + (robin.a_n - robin.a_t) * (
            nrm[:, :, None] * nrm[:, None, :]
        )
        blk = np.einsum("q,qa,qb,qij->aibj", ds, en, en, amat)
        ae = enodes.shape[0]
        edofs = np.empty(2 * ae, dtype=int)
        edofs[0::2] = 2 * enodes
        edofs[1::2] = 2 * enodes + 1
        r_rows.append(np.repeat(edofs, 2 * ae))
        r_cols.append(np.tile(edofs, 2 * ae))
        r_vals.append(blk.reshape(2 * ae, 2 * ae).ravel())
    robin_matrix = sp.coo_matrix(
        (np.concatenate(r_vals), (np.concatenate(r_rows), np.concatenate(r_cols))),
        shape=(ndof, ndof),
    ).tocsr()

    dir_nodes = mesh.boundary_nodes(DIRICHLET)
    dirichlet_dofs = np.concatenate([2 * dir_nodes, 2 * dir_nodes + 1])
    dirichlet_dofs.sort()
    free = np.setdiff1d(np.arange(ndof), dirichlet_dofs)
    return AssembledSystem(
        mesh=mesh,
        material=material,
        robin=robin,
        omega=omega,
        stiffness=stiffness,
        mass=mass,
        robin_matrix=robin_matrix,
        free=free,
        dirichlet_dofs=dirichlet_dofs,
    )


def boundary_load(mesh: Mesh, tag: str, fn) -> np.ndarray:
    """Assemble the surface load vector L_i = int_tag g . phi_i ds for a
    callable g(x) -> (Q, 2) complex."""
    load = np.zeros(2 * mesh.n_nodes, dtype=complex)
    en, edn = _edge_shapes(mesh.order, _EDGE_QP)
    for e in mesh.boundary_edges:
        if e.tag != tag:
            continue
        enodes = np.array(e.nodes, dtype=int)
        xe = mesh.nodes[enodes]
        xq = en @ xe
        ds = np.linalg.norm(edn @ xe, axis=1) * _EDGE_QW
        g = np.asarray(fn(xq), dtype=complex)
        vals = np.einsum("q,qa,qc->ac", ds, en, g)
        for a, node in enumerate(enodes):
            load[2 * node] += vals[a, 0]
            load[2 * node + 1] += vals[a, 1]
    return load


@dataclass(frozen=True)
class SolveResult:
    u: np.ndarray  # (Nn, 2) complex nodal field
    residual_norm: float
    omega: float


def _flat(field: np.ndarray) -> np.ndarray:
    field = np.asarray(field)
    return field.reshape(-1) if field.ndim > 1 else field


def solve(
    system: AssembledSystem,
    f,
    dirichlet_values=None,
    extra_load=None,
) -> SolveResult:
    """Solve S u = M f (+ extra_load) with Dirichlet lifting.

    f is a nodal field (Nn, 2); extra_load is an already-assembled dual
    vector (surface data for manufactured solutions).  Direct sparse
    factorization with an ILU-preconditioned GMRES fallback; either path
    must reach relative residual 1e-8 on the free rows or raises.
    """
    s = system.system_matrix()
    rhs = system.mass @ _flat(np.asarray(f, dtype=complex))
    if extra_load is not None:
        rhs = rhs + _flat(np.asarray(extra_load, dtype=complex))
    u = np.zeros(system.n_dofs, dtype=complex)
    if dirichlet_values is not None:
        u[system.dirichlet_dofs] = _flat(np.asarray(dirichlet_values, dtype=complex))[
            system.dirichlet_dofs
        ]
    free = system.free
    s_ff = s[free][:, free].tocsc()
    rhs_f = rhs[free] - s[free][:, system.dirichlet_dofs] @ u[system.dirichlet_dofs]
    scale = np.linalg.norm(rhs_f)
    if scale == 0.0:
        return SolveResult(u=u.reshape(-1, 2), residual_norm=0.0, omega=system.omega)
    try:
        u_f = spla.splu(s_ff).solve(rhs_f)
    except RuntimeError:
        ilu = spla.spilu(s_ff, drop_tol=1e-6, fill_factor=20)
        prec = spla.LinearOperator(s_ff.shape, ilu.solve)
        u_f, info = spla.gmres(s_ff, rhs_f, rtol=1e-12, atol=0.0, M=prec, maxiter=2000)
        if info != 0:
            res = np.linalg.norm(s_ff @ u_f - rhs_f) / scale
            raise SolverError(f"iterative fallback stalled at residual {res:g}", residual=res)
    residual = float(np.linalg.norm(s_ff @ u_f - rhs_f) / scale)
    if residual > _RESIDUAL_TOL:
        raise SolverError(f"solve residual {residual:g} above {_RESIDUAL_TOL:g}", residual=residual)
    u[free] = u_f
    return SolveResult(u=u.reshape(-1, 2), residual_norm=residual, omega=system.omega)


# ---------------------------------------------------------------------------
# Point-sample extraction for the identity audits
# ---------------------------------------------------------------------------

def evaluate_volume(mesh: Mesh, nodal_fields):
    """Quadrature samples of nodal fields over the mesh.

    Returns (x (Q,2), w (Q,), list of (val (Q,2), grad (Q,2,2))) with
    grad[q, j, l] = d_j v_l and w absorbing the Jacobian."""
    n, dn, x, det, dnx = _geometry(mesh, _TRI_QP)
    w = (_TRI_QW[None, :] * det).reshape(-1)
    xq = x.reshape(-1, 2)
    out = []
    for f in nodal_fields:
        fc = np.asarray(f, dtype=complex).reshape(-1, 2)[mesh.conn]  # (Nc, a, 2)
        val = np.einsum("qa,cal->cql", n, fc).reshape(-1, 2)
        grad = np.einsum("cqaj,cal->cqjl", dnx, fc).reshape(-1, 2, 2)
        out.append((val, grad))
    return xq, w, out


def evaluate_boundary(mesh: Mesh, tag: str, nodal_fields):
    """Edge-quadrature samples on a tagged boundary with outward normals
    (radial for the origin-centered circles)."""
    en, edn = _edge_shapes(mesh.order, _EDGE_QP)
    edges = [e for e in mesh.boundary_edges if e.tag == tag]
    if not edges:
        raise ValueError(f"no boundary edges tagged {tag!r}")
    sign = 1.0 if tag == DISSIPATIVE else -1.0
    xs, ws, normals = [], [], []
    cells = np.array([e.cell for e in edges], dtype=int)
    per_edge_ref = []
    for e in edges:
        enodes = np.array(e.nodes, dtype=int)
        xe = mesh.nodes[enodes]
        xq = en @ xe
        ds = np.linalg.norm(edn @ xe, axis=1) * _EDGE_QW
        xs.append(xq)
        ws.append(ds)
        normals.append(sign * xq / np.linalg.norm(xq, axis=1, keepdims=True))
        per_edge_ref.append(_edge_ref_coords(e.local_edge, _EDGE_QP))
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    normal = np.concatenate(normals)

    out = []
    ref = np.concatenate(per_edge_ref)  # (E*Qe, 2)
    nq = _EDGE_QP.shape[0]
    n_ref, dn_ref = _shapes(mesh.order, ref)
    cell_of = np.repeat(cells, nq)
    xc = mesh.nodes[mesh.conn[cell_of]]  # (E*Qe, a, 2)
    jac = np.einsum("pak,pai->pik", dn_ref, xc)
    det = jac[..., 0, 0] * jac[..., 1, 1] - jac[..., 0, 1] * jac[..., 1, 0]
    inv = np.empty_like(jac)
    inv[..., 0, 0] = jac[..., 1, 1] / det
    inv[..., 0, 1] = -jac[..., 0, 1] / det
    inv[..., 1, 0] = -jac[..., 1, 0] / det
    inv[..., 1, 1] = jac[..., 0, 0] / det
    dnx = np.einsum("pkj,pak->paj", inv, dn_ref)
    for f in nodal_fields:
        fc = np.asarray(f, dtype=complex).reshape(-1, 2)[mesh.conn[cell_of]]
        val = np.einsum("pa,pal->pl", n_ref, fc)
        grad = np.einsum("paj,pal->pjl", dnx, fc)
        out.append((val, grad))
    return x, w, normal, out


def discrete_quantities(system: AssembledSystem, u, f) -> dict:
    """Norms entering the estimate chain, measured from a discrete solve."""
    uf = _flat(np.asarray(u, dtype=complex))
    ff = _flat(np.asarray(f, dtype=complex))
    mesh, mat = system.mesh, system.material
    x, w, [(val_u, grad_u)] = evaluate_volume(mesh, [u])
    mu_q = mat.mu(x)
    eps = 0.5 * (grad_u + np.swapaxes(grad_u, -2, -1))
    xb, wb, nb, [(val_b, grad_b)] = evaluate_boundary(mesh, DISSIPATIVE, [u])
    mu_b = mat.mu(xb)
    eps_b = 0.5 * (grad_b + np.swapaxes(grad_b, -2, -1))
    return {
        "omega": system.omega,
        "ell": mesh.ell,
        "mu_min": mat.mu_min,
        "norm_u_rho": math.sqrt(max(float(np.real(uf.conj() @ (system.mass @ uf))), 0.0)),
        "norm_f_rho": math.sqrt(max(float(np.real(ff.conj() @ (system.mass @ ff))), 0.0)),
        "norm_u_A_gamma": math.sqrt(
            max(float(np.real(uf.conj() @ (system.robin_matrix @ uf))), 0.0)
        ),
        "norm_grad_u": math.sqrt(float(np.sum(w * np.sum(np.abs(grad_u) ** 2, axis=(1, 2))))),
        "norm_eps_mu_gamma": math.sqrt(
            float(np.sum(wb * mu_b * np.sum(np.abs(eps_b) ** 2, axis=(1, 2))))
        ),
        "norm_eps_mu_omega": math.sqrt(float(np.sum(w * mu_q * np.sum(np.abs(eps) ** 2, axis=(1, 2))))),
    }


# ---------------------------------------------------------------------------
# Empirical stability constant
# ---------------------------------------------------------------------------

def empirical_constant(
    mesh: Mesh,
    material: MaterialField,
    robin: RobinSpec,
    omega: float,
    iters: int = 400,
    seed: int = 0,
    tol: float = 1e-6,
    return_history: bool = False,
):
    """omega^2 times the largest singular value of the discrete solution map
    f -> u in rho-weighted norms, by power iteration on the normal operator
    T* T (adjoint through the conjugate-transpose factorization).

    The Rayleigh-quotient estimates are nondecreasing; iteration stops when
    successive values differ by less than ``tol`` relatively.
    """
    system = assemble(mesh, material, robin, omega)
    free = system.free
    s_ff = system.system_matrix()[free][:, free].tocsc()
    m_ff = system.mass[free][:, free].tocsr()
    lu = spla.splu(s_ff)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=free.size) + 1j * rng.normal(size=free.size)

    def m_norm(z):
        return math.sqrt(max(float(np.real(z.conj() @ (m_ff @ z))), 0.0))

    v /= m_norm(v)
    history = []
    prev = None
    for _ in range(iters):
        w = lu.solve(m_ff @ v)
        sigma = m_norm(w)
        history.append(omega**2 * sigma)
        if prev is not None and abs(sigma - prev) <= tol * abs(sigma):
            if return_history:
                return omega**2 * sigma, history
            return omega**2 * sigma
        prev = sigma
        z = lu.solve(m_ff @ w, trans="H")
        v = z / m_norm(z)
    raise IterationError(
        f"power iteration did not converge in {iters} iterations",
        last_iterates=tuple(history[-2:]),
    )


# ---------------------------------------------------------------------------
# Frequency / incompressibility sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    r_in: float = 0.5
    ell: float = 1.0
    rho: float = 1.0
    mu: float = 1.0
    lambda_over_mu: tuple = (1.0,)
    kappa_s: tuple = (1.0,)
    robin_choice: str = "shear"  # "shear" (alpha=1) | "pressure" (alpha_n = sqrt(2+lam/mu)) | "custom"
    alpha_t: float = 1.0
    alpha_n: float = 1.0
    order: int = 2
    points_per_wavelength: float = 10.0
    resolution_margin: float = 1.1
    n_theta_min: int = 24
    seed: int = 0
    force: bool = False

    def material(self, lam_ratio: float) -> MaterialField:
        return MaterialField.constant(self.rho, self.mu, lam_ratio * self.mu)

    def robin(self, material: MaterialField) -> RobinSpec:
        if self.robin_choice == "shear":
            return RobinSpec.shear_matched(material)
        if self.robin_choice == "pressure":
            return RobinSpec.pressure_matched(material)
        if self.robin_choice == "custom":
            return RobinSpec.from_alpha(self.alpha_t, self.alpha_n, material)
        raise ValueError(f"unknown robin choice {self.robin_choice!r}")


@dataclass(frozen=True)
class SweepRow:
    omega: float
    kappa_s: float
    lambda_over_mu: float
    c_emp: float | None
    bound_ideal_full: float
    bound_ideal_simplified: float
    bound_realistic: float
    slack: float | None
    points_per_wavelength: float
    n_r: int
    n_theta: int
    n_dofs: int
    refused: bool
    error: str | None = None

    def applicable_bound(self, robin_choice: str) -> float:
        return self.bound_ideal_full if robin_choice == "shear" else self.bound_realistic


def resolution_mesh(cfg: SweepConfig, kappa: float) -> Mesh:
    """Mesh sized so the node spacing beats the points-per-wavelength policy
    with the configured safety margin.

    The policy is checked against the longest element edge, which for the
    split-quad triangulation is the cell diagonal ~ sqrt(2) times the arc
    spacing; both directions are sized for that."""
    target = cfg.points_per_wavelength * cfg.resolution_margin
    wavelength = 2.0 * math.pi * cfg.ell / kappa  # in units of theta_s_min/omega
    h_needed = cfg.order * wavelength / target
    n_theta = max(cfg.n_theta_min, int(math.ceil(math.sqrt(2.0) * 2.0 * math.pi * cfg.ell / h_needed)))
    n_theta += n_theta % 2
    n_r = max(2, int(math.ceil(math.sqrt(2.0) * (cfg.ell - cfg.r_in) / h_needed)))
    return build_annulus_mesh(cfg.r_in, cfg.ell, n_r, n_theta, cfg.order)


def _sweep_row(cfg: SweepConfig, kappa: float, lam_ratio: float) -> SweepRow:
    material = cfg.material(lam_ratio)
    theta_s_min = math.sqrt(material.mu_min / material.rho_max)
    omega = kappa * theta_s_min / cfg.ell
    mesh = resolution_mesh(cfg, kappa)
    ppw = mesh.points_per_wavelength(omega, theta_s_min)
    ideal = bound_obstacle_ideal(kappa, d=2)
    realistic = bound_obstacle_realistic(kappa, lam_ratio)
    refused = ppw < cfg.points_per_wavelength and not cfg.force
    base = dict(
        omega=omega,
        kappa_s=kappa,
        lambda_over_mu=lam_ratio,
        bound_ideal_full=ideal.full,
        bound_ideal_simplified=ideal.simplified,
        bound_realistic=realistic,
        points_per_wavelength=ppw,
        n_r=mesh.n_r,
        n_theta=mesh.n_theta,
        n_dofs=2 * mesh.n_nodes,
        refused=refused,
    )
    if refused:
        return SweepRow(c_emp=None, slack=None, error="resolution policy violated", **base)
    robin = cfg.robin(material)
    try:
        c_emp = empirical_constant(mesh, material, robin, omega, seed=cfg.seed)
    except (SolverError, IterationError) as exc:
        return SweepRow(c_emp=None, slack=None, error=str(exc), **base)
    bound = ideal.full if cfg.robin_choice == "shear" else realistic
    return SweepRow(c_emp=c_emp, slack=bound - c_emp, error=None, **base)


def sweep(cfg: SweepConfig) -> list[SweepRow]:
    """One row per (kappa_s, lambda/mu) pair; rows violating the resolution
    policy are refused (not solved) unless forced.  Row errors are recorded
    and the sweep continues.  ELASTAB_THREADS > 1 runs rows in parallel;
    results keep the input order either way."""
    tasks = [(k, lr) for k in cfg.kappa_s for lr in cfg.lambda_over_mu]
    threads = int(os.environ.get("ELASTAB_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda t: _sweep_row(cfg, *t), tasks))
    return [_sweep_row(cfg, k, lr) for k, lr in tasks]
