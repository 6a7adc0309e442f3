"""Planar Euler-Bernoulli frame model of the jaw, used to cross-check the statics.

The jaw centreline is discretised into straight two-node frame elements
(axial, transverse and rotational dofs per node) with the base node clamped.
By default the axial stiffness is a large penalty so the frame deforms in
bending only, like the analytical model.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import DomainError, SingularSystemError
from .geometry import HALF_PI, ColletGeometry, EllipseState, contact_angle, radius_at
from .mechanics import ContactSolution
from .section import section_at

RIGID_FACTOR = 1e6
MIN_ELEMS = 16
REFINE_STEPS = 2


class Element(NamedTuple):
    node_i: int
    node_j: int
    I_c: float
    A: float
    E: float


@dataclass
class OracleMesh:
    nodes: np.ndarray
    elements: list[Element]
    contact_node: int
    tip_node: int
    axial: str = "rigid"

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    def lengths(self) -> np.ndarray:
        return np.hypot(*np.diff(self.nodes, axis=0).T)


@dataclass
class OracleResult:
    displacements: np.ndarray  # (n_nodes, 3): u, v, rotation
    contact_v: float
    tip_v: float
    strain_energy: float
    external_work: float


class StepCheck(NamedTuple):
    contact_err: float
    tip_err: float
    absolute: bool
    contact_v: float
    tip_v: float


def frame_mesh(nodes: Sequence[Sequence[float]], I: Sequence[float] | float, E: float,
               A: Sequence[float] | float | None = None, contact_node: int | None = None,
               axial: str = "rigid") -> OracleMesh:
    """Mesh of consecutive straight elements through ``nodes`` (node 0 clamped)."""
    pts = np.asarray(nodes, dtype=float)
    n_el = len(pts) - 1
    if n_el < 1:
        raise DomainError("a frame needs at least two nodes")
    inertia = np.broadcast_to(np.asarray(I, dtype=float), (n_el,))
    area = np.broadcast_to(np.asarray(np.nan if A is None else A, dtype=float), (n_el,))
    elements = [Element(i, i + 1, float(inertia[i]), float(area[i]), float(E))
                for i in range(n_el)]
    tip = len(pts) - 1
    return OracleMesh(pts, elements, tip if contact_node is None else contact_node, tip, axial)


def build_mesh(geom: ColletGeometry, state: EllipseState, n_elems: int,
               beta: float | None = None, axial: str = "rigid") -> OracleMesh:
    """Uniform-angle mesh of the current jaw with one node snapped to ``beta``."""
    if n_elems < MIN_ELEMS:
        raise DomainError(f"need at least {MIN_ELEMS} elements, got {n_elems}")
    a, b = state.a, state.b_k
    if beta is None:
        beta = contact_angle(a, b, geom.d)
    theta = np.linspace(geom.gamma, HALF_PI, n_elems + 1)
    if beta >= HALF_PI:
        contact = n_elems
    else:
        contact = 1 + int(np.argmin(np.abs(theta[1:-1] - beta)))
        theta[contact] = beta

    r = np.array([radius_at(a, b, float(th)) for th in theta])
    nodes = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    elements = []
    for i in range(n_elems):
        props = section_at(geom, state, 0.5 * (theta[i] + theta[i + 1]))
        area = props.R_bar * props.alpha * geom.t
        elements.append(Element(i, i + 1, props.I_c, area, geom.E))
    return OracleMesh(nodes, elements, contact, n_elems, axial)


def _element_terms(mesh: OracleMesh):
    """Yield ``(dofs, T, kax, k_bend)`` per element in local coordinates."""
    for el, L in zip(mesh.elements, mesh.lengths()):
        ei = el.E * el.I_c
        if mesh.axial == "rigid":
            ea = RIGID_FACTOR * 12 * ei / L ** 2
        elif mesh.axial == "physical":
            ea = el.E * el.A
        else:
            raise DomainError(f"unknown axial mode {mesh.axial!r}")

        k1, k2, k3, k4 = 12 * ei / L ** 3, 6 * ei / L ** 2, 4 * ei / L, 2 * ei / L
        k_bend = np.array([  # local dofs (v_i, rot_i, v_j, rot_j)
            [k1, k2, -k1, k2],
            [k2, k3, -k2, k4],
            [-k1, -k2, k1, -k2],
            [k2, k4, -k2, k3],
        ])
        dx, dy = mesh.nodes[el.node_j] - mesh.nodes[el.node_i]
        c, s = dx / L, dy / L
        rot = np.array([[c, s, 0], [-s, c, 0], [0, 0, 1]])
        T = np.zeros((6, 6))
        T[:3, :3] = rot
        T[3:, 3:] = rot
        dofs = np.r_[3 * el.node_i:3 * el.node_i + 3, 3 * el.node_j:3 * el.node_j + 3]
        yield dofs, T, ea / L, k_bend


_BEND = [1, 2, 4, 5]


def _assemble(mesh: OracleMesh) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Bending stiffness ``K_b``, elongation operator ``C`` and axial stiffnesses.

    The full stiffness is ``K_b + C^T diag(kax) C``; row ``e`` of ``C`` maps
    nodal displacements to the elongation of element ``e``.
    """
    ndof = 3 * mesh.n_nodes
    K_b = np.zeros((ndof, ndof))
    C = np.zeros((len(mesh.elements), ndof))
    kax = np.zeros(len(mesh.elements))
    for e, (dofs, T, k_axial, k_bend) in enumerate(_element_terms(mesh)):
        Tb = T[_BEND]
        K_b[np.ix_(dofs, dofs)] += Tb.T @ k_bend @ Tb
        C[e, dofs] = T[3] - T[0]
        kax[e] = k_axial
    return K_b, C, kax


def stiffness_matrix(mesh: OracleMesh) -> np.ndarray:
    K_b, C, kax = _assemble(mesh)
    return K_b + C.T @ (kax[:, None] * C)


def strain_energy(mesh: OracleMesh, u: np.ndarray) -> float:
    """Bending plus axial strain energy of the displacement vector ``u``.

    Each element's energy is written in its deformation modes (end rotations
    relative to the chord, and elongation), so rigid-body motion cancels
    before squaring instead of inside a large quadratic form.
    """
    total = 0.0
    for el, L, (dofs, T, kax, _) in zip(mesh.elements, mesh.lengths(), _element_terms(mesh)):
        d = T @ u[dofs]
        chord = (d[4] - d[1]) / L
        phi_i, phi_j = d[2] - chord, d[5] - chord
        elong = d[3] - d[0]
        bend = 2 * el.E * el.I_c / L * (phi_i * phi_i + phi_i * phi_j + phi_j * phi_j)
        total += bend + 0.5 * kax * elong * elong
    return float(total)


def solve_static(mesh: OracleMesh,
                 loads: Mapping[int, Sequence[float]] | np.ndarray) -> OracleResult:
    """Linear static solve with the base node clamped.

    ``loads`` maps node index to ``(fx, fy)`` or ``(fx, fy, moment)``, or is an
    ``(n_nodes, 2|3)`` array.  Displacements are in the global frame (y up).

    The penalty system ``(K_b + C^T kax C) u = F`` is solved in the equivalent
    mixed form with the element axial forces ``N = kax * C u`` as extra
    unknowns, which stays well conditioned however stiff the penalty is.
    """
    F = np.zeros(3 * mesh.n_nodes)
    if isinstance(loads, Mapping):
        for node, vec in loads.items():
            F[3 * node:3 * node + len(vec)] += vec
    else:
        arr = np.asarray(loads, dtype=float)
        F.reshape(-1, 3)[:, :arr.shape[1]] += arr

    K_b, C, kax = _assemble(mesh)
    if not np.all(kax > 0) or not np.all(np.isfinite(kax)):
        raise SingularSystemError("stiffness matrix is singular: non-positive element stiffness")
    n_free, n_el = K_b.shape[0] - 3, len(kax)
    A = np.zeros((n_free + n_el, n_free + n_el))
    A[:n_free, :n_free] = K_b[3:, 3:]
    A[:n_free, n_free:] = C[:, 3:].T
    A[n_free:, :n_free] = C[:, 3:]
    A[n_free:, n_free:] = np.diag(-1.0 / kax)
    rhs = np.concatenate([F[3:], np.zeros(n_el)])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
            factor = scipy.linalg.lu_factor(A, check_finite=True)
            x = scipy.linalg.lu_solve(factor, rhs)
            # long slender chains are ill conditioned (~n^4); refine with
            # extended-precision residuals to recover the lost digits
            A_ext, rhs_ext = A.astype(np.longdouble), rhs.astype(np.longdouble)
            for _ in range(REFINE_STEPS):
                residual = rhs_ext - A_ext @ x.astype(np.longdouble)
                x = x + scipy.linalg.lu_solve(factor, residual.astype(float))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
        raise SingularSystemError(f"stiffness matrix is singular: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystemError("stiffness solve produced non-finite displacements")

    u = np.zeros_like(F)
    u[3:] = x[:n_free]
    disp = u.reshape(-1, 3)
    return OracleResult(
        displacements=disp,
        contact_v=float(disp[mesh.contact_node, 1]),
        tip_v=float(disp[mesh.tip_node, 1]),
        strain_energy=strain_energy(mesh, u),
        external_work=0.5 * float(F @ u),
    )


def validate_step(geom: ColletGeometry, state: EllipseState, solution: ContactSolution,
                  n_elems: int = 400, axial: str = "rigid") -> StepCheck:
    """Relative errors of the analytical contact gap and tip step against the frame.

    The contact force ``(-F_X, -F_Y)`` is applied at the contact node;
    downward deflections are compared.  With a zero gap the errors are
    absolute and ``absolute`` is set.
    """
    mesh = build_mesh(geom, state, n_elems, beta=solution.beta, axial=axial)
    res = solve_static(mesh, {mesh.contact_node: (-solution.F_X, -solution.F_Y)})
    contact_down, tip_down = -res.contact_v, -res.tip_v
    if solution.gap == 0:
        return StepCheck(abs(contact_down), abs(tip_down - solution.delta_tip_step), True,
                         contact_down, tip_down)
    return StepCheck(
        abs(contact_down - solution.gap) / solution.gap,
        abs(tip_down - solution.delta_tip_step) / solution.delta_tip_step,
        False, contact_down, tip_down)


def straight_cantilever(length: float, n_elems: int) -> np.ndarray:
    """Nodes of a straight cantilever along +x."""
    return np.column_stack([np.linspace(0.0, length, n_elems + 1), np.zeros(n_elems + 1)])


def quarter_circle(radius: float, n_elems: int) -> np.ndarray:
    """Nodes of a quarter circle from ``(R, 0)`` (clamped) to ``(0, R)``."""
    th = np.linspace(0.0, HALF_PI, n_elems + 1)
    return np.column_stack([radius * np.cos(th), radius * np.sin(th)])

