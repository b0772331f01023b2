"""Membership tests for max-type matrix convex sets and scaling geometry.

A Hermitian tuple belongs to the maximal matrix convex set over a polytope
exactly when its joint numerical range satisfies every facet inequality,
which reduces membership at any level to finitely many largest-eigenvalue
computations. This module builds the cube and prism polytopes, decides
membership, checks vertex attainment through the representation factory,
and evaluates the closed-form scaling constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatchError
from .matkernel import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    hermitize,
    opnorm,
    support_value,
)
from .reps import prism_vertex_rep

__all__ = [
    "PolytopeSpec",
    "MembershipResult",
    "VertexCheck",
    "make_polygon",
    "make_prism",
    "make_cube",
    "max_member",
    "prism_member",
    "vertex_state_check",
    "incircle_radius",
    "circumnorm",
    "theta_lower_bound",
    "cube_scaling_constant",
    "real_imag_parts",
    "random_prism_point",
]

_GEOM_TOL = 1e-12


@dataclass(frozen=True)
class PolytopeSpec:
    """Vertices and facet half-planes {x : <normal, x> <= offset} of a polytope."""

    ambient_dim: int
    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", np.asarray(self.vertices, dtype=float))
        object.__setattr__(self, "normals", np.asarray(self.normals, dtype=float))
        object.__setattr__(self, "offsets", np.asarray(self.offsets, dtype=float))
        if self.vertices.shape[1] != self.ambient_dim:
            raise ShapeMismatchError("vertex dimension differs from ambient dimension")
        if self.normals.shape[1] != self.ambient_dim:
            raise ShapeMismatchError("facet dimension differs from ambient dimension")
        norms = np.linalg.norm(self.normals, axis=1)
        if np.any(np.abs(norms - 1.0) > _GEOM_TOL):
            raise ValueError("facet normals must be unit vectors")
        worst = float((self.vertices @ self.normals.T - self.offsets).max())
        if worst > _GEOM_TOL:
            raise ValueError(f"a vertex violates a facet by {worst:.3e}")


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a facet-by-facet membership test.

    ``margin`` is the smallest facet slack (offset minus support value);
    membership holds when it is >= -spec_tol. The worst facet is reported
    for diagnostics.
    """

    member: bool
    margin: float
    facet_index: int
    normal: np.ndarray
    offset: float
    support: float

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class VertexCheck:
    """Attainment record for one extreme point of the prism."""

    j: int
    sign: int
    target: np.ndarray
    attained: np.ndarray
    error: float


def make_polygon(k: int) -> PolytopeSpec:
    """Convex hull of the k-th roots of unity in the plane."""
    if k < 3:
        raise ValueError(f"polygon needs k >= 3, got {k}")
    angles = 2.0 * np.pi * np.arange(k) / k
    vertices = np.column_stack([np.cos(angles), np.sin(angles)])
    mid = (2.0 * np.arange(k) + 1.0) * np.pi / k
    normals = np.column_stack([np.cos(mid), np.sin(mid)])
    offsets = np.full(k, math.cos(math.pi / k))
    return PolytopeSpec(2, vertices, normals, offsets, name=f"polygon:{k}")


def make_prism(k: int) -> PolytopeSpec:
    """The prism Conv(C_k) x [-1, 1]: 2k vertices, k side facets plus 2 caps."""
    polygon = make_polygon(k)
    top = np.column_stack([polygon.vertices, np.ones(k)])
    bottom = np.column_stack([polygon.vertices, -np.ones(k)])
    vertices = np.vstack([top, bottom])
    side_normals = np.column_stack([polygon.normals, np.zeros(k)])
    cap_normals = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    normals = np.vstack([side_normals, cap_normals])
    offsets = np.concatenate([polygon.offsets, [1.0, 1.0]])
    return PolytopeSpec(3, vertices, normals, offsets, name=f"prism:{k}")


def make_cube(d: int) -> PolytopeSpec:
    """The cube [-1, 1]^d: 2^d vertices and 2d facets."""
    if d < 1:
        raise ValueError(f"cube needs d >= 1, got {d}")
    grids = np.meshgrid(*([np.array([-1.0, 1.0])] * d), indexing="ij")
    vertices = np.column_stack([g.ravel() for g in grids])
    normals = np.vstack([np.eye(d), -np.eye(d)])
    offsets = np.ones(2 * d)
    return PolytopeSpec(d, vertices, normals, offsets, name=f"cube:{d}")


def max_member(
    mats, polytope: PolytopeSpec, tol: ToleranceConfig = DEFAULT_TOL
) -> MembershipResult:
    """Decide membership of a Hermitian tuple in the maximal set over a polytope.

    Exact for polytopes: the joint numerical range is convex and compact,
    so it lies inside the body iff every facet support inequality
    support_value(mats, normal) <= offset holds (within spec_tol).
    """
    mats = [as_matrix(a) for a in mats]
    if len(mats) != polytope.ambient_dim:
        raise ShapeMismatchError(
            f"tuple has {len(mats)} entries, polytope is {polytope.ambient_dim}-dimensional"
        )
    margin = math.inf
    worst = 0
    worst_support = 0.0
    for i, (normal, offset) in enumerate(zip(polytope.normals, polytope.offsets)):
        s = support_value(mats, normal, tol)
        slack = float(offset - s)
        if slack < margin:
            margin, worst, worst_support = slack, i, s
    return MembershipResult(
        member=margin >= -tol.spec_tol,
        margin=margin,
        facet_index=worst,
        normal=polytope.normals[worst].copy(),
        offset=float(polytope.offsets[worst]),
        support=worst_support,
    )


def real_imag_parts(a) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian real and imaginary parts of an operator."""
    a = as_matrix(a)
    return hermitize(a), hermitize(a / 1j)


def prism_member(a, b, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> MembershipResult:
    """Membership of (a, b) in the maximal prism set at its level.

    Tests the triple (Re a, Im a, b) against the facets of the k-prism; for
    this product polytope that amounts to W(a) inside Conv(C_k) together
    with ||b|| <= 1.
    """
    re, im = real_imag_parts(a)
    b = as_matrix(b)
    if b.shape != re.shape:
        raise ShapeMismatchError(f"a and b must have equal size, got {re.shape}, {b.shape}")
    return max_member([re, im, b], make_prism(k), tol)


def vertex_state_check(k: int, tol: ToleranceConfig = DEFAULT_TOL) -> list[VertexCheck]:
    """Evaluate the vertex representations at their common eigenvector.

    For each of the 2k extreme points (cos(2 pi j / k), sin(2 pi j / k),
    sign) reports the distance between the vector-state evaluation of the
    vertex representation and the vertex itself.
    """
    checks = []
    for j in range(k):
        for sign in (1, -1):
            pair, xi = prism_vertex_rep(k, j, sign)
            wval = complex(np.vdot(xi, pair.w @ xi))
            vval = complex(np.vdot(xi, pair.v @ xi))
            attained = np.array([wval.real, wval.imag, vval.real])
            target = np.array(
                [math.cos(2 * math.pi * j / k), math.sin(2 * math.pi * j / k), float(sign)]
            )
            error = float(np.linalg.norm(attained - target) + abs(vval.imag))
            checks.append(VertexCheck(j, sign, target, attained, error))
    return checks


def incircle_radius(k: int) -> float:
    """Incircle radius cos(pi/k) of Conv(C_k), cross-checked against the facets."""
    r = math.cos(math.pi / k)
    polygon_offsets = make_prism(k).offsets[:k]
    if abs(r - float(polygon_offsets.min())) > _GEOM_TOL:
        raise ValueError("incircle radius disagrees with facet distances")
    return r


def circumnorm(k: int) -> float:
    """Largest vertex norm of the k-prism (always sqrt(2))."""
    value = float(np.linalg.norm(make_prism(k).vertices, axis=1).max())
    if abs(value - math.sqrt(2.0)) > _GEOM_TOL:
        raise ValueError("circumscribed norm disagrees with sqrt(2)")
    return value


def theta_lower_bound(k: int) -> float:
    """Lower bound (3/sqrt(2)) cos(pi/k) for the minimal prism scaling constant."""
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    return 3.0 / math.sqrt(2.0) * math.cos(math.pi / k)


def cube_scaling_constant(d: int) -> float:
    """The minimal scaling constant sqrt(d) for the d-cube (reported, not searched)."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return math.sqrt(d)


def random_prism_point(
    rng: np.random.Generator, n: int, k: int = 3, scale: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """A random pair (a, b) at level n inside the maximal k-prism set.

    ``a`` is a random operator shrunk until its numerical range sits inside
    Conv(C_k); ``b`` is a random Hermitian contraction. ``scale``, if given,
    fixes the shrink factor relative to the boundary (1.0 touches it).
    """
    polygon = make_polygon(k)
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    re, im = real_imag_parts(raw)
    reach = max(
        support_value([re, im], normal) / offset
        for normal, offset in zip(polygon.normals, polygon.offsets)
    )
    factor = scale if scale is not None else rng.uniform(0.0, 1.0)
    a = raw * (factor / reach) if reach > 0 else raw
    hraw = hermitize(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    norm = opnorm(hraw)
    b = hraw * ((scale if scale is not None else rng.uniform(0.0, 1.0)) / norm) if norm > 0 else hraw
    return a, b
