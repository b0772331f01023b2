"""Dilation constructions: Halmos blocks, barycentric POVMs, Naimark
dilations, joint order-(k, 2) dilations, and cube dilations.

The joint construction follows the classical route end to end: split the
operator with numerical range in the polygon into a positive decomposition
summing to the identity, dilate that decomposition to a normal operator
with spectrum at the polygon's vertices, carry the second operator to the
enlarged space, and close with a 2x2 Halmos symmetry block. Compressing
back through the composite isometry recovers the original pair exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .convexity import make_polygon, max_member, real_imag_parts
from .errors import (
    DimensionMismatchError,
    InfeasibleError,
    InvalidPovmError,
    NormExceedsOneError,
    NumericalRangeOutsideTriangleError,
    OrderMismatchError,
    ShapeMismatchError,
)
from .matkernel import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    dagger,
    direct_sum,
    hermitize,
    opnorm,
    psd_sqrt,
    require_hermitian,
)
from .reps import RepPair

__all__ = [
    "DilationResult",
    "Povm",
    "GroupWord",
    "halmos_symmetry",
    "halmos_unitary",
    "triangle_povm",
    "naimark_normal",
    "order_k_povm",
    "joint_prism_dilation",
    "cube_dilation",
    "evaluate_word",
    "evaluate_compressed_word",
]


@dataclass
class DilationResult:
    """An isometry into an enlarged space plus the operators living there."""

    isometry: np.ndarray
    operators: list[np.ndarray]
    labels: list[str]

    def __post_init__(self):
        self.isometry = as_matrix(self.isometry)
        self.operators = [as_matrix(op) for op in self.operators]
        if len(self.operators) != len(self.labels):
            raise ShapeMismatchError("labels must match operators one-to-one")

    def compressions(self) -> list[np.ndarray]:
        """Z* T Z for every enlarged-space operator T."""
        z = self.isometry
        return [dagger(z) @ op @ z for op in self.operators]


@dataclass
class Povm:
    """Positive effects summing to the identity, tagged with target spectrum points."""

    effects: list[np.ndarray]
    outcome_labels: list[complex]

    def __post_init__(self):
        self.effects = [as_matrix(h) for h in self.effects]
        if len(self.effects) != len(self.outcome_labels):
            raise InvalidPovmError("each effect needs exactly one outcome label")

    def validate(self, tol: ToleranceConfig = DEFAULT_TOL) -> None:
        n = self.effects[0].shape[0]
        total = np.zeros((n, n), dtype=complex)
        for h in self.effects:
            if h.shape != (n, n):
                raise InvalidPovmError("effects must be square of equal size")
            require_hermitian(h, tol.alg_tol, "POVM effect")
            low = float(np.linalg.eigvalsh(hermitize(h)).min())
            if low < -tol.psd_clamp:
                raise InvalidPovmError(f"effect has eigenvalue {low:.3e} below clamp")
            total += h
        if opnorm(total - np.eye(n)) > tol.spec_tol:
            raise InvalidPovmError(
                f"effects sum deviates from identity by {opnorm(total - np.eye(n)):.3e}"
            )


@dataclass(frozen=True)
class GroupWord:
    """A word in the letters {w, w*, v} for generators of orders (k, 2)."""

    letters: tuple[str, ...]
    k: int

    def __post_init__(self):
        for letter in self.letters:
            if letter not in ("w", "w*", "v"):
                raise ValueError(f"unknown letter {letter!r}; expected w, w* or v")

    @classmethod
    def from_string(cls, text: str, k: int) -> "GroupWord":
        """Parse a compact word such as 'wvw*' (spaces and commas allowed)."""
        letters = []
        i = 0
        cleaned = text.replace(",", "").replace(" ", "")
        while i < len(cleaned):
            if cleaned[i] == "w" and i + 1 < len(cleaned) and cleaned[i + 1] == "*":
                letters.append("w*")
                i += 2
            elif cleaned[i] in ("w", "v"):
                letters.append(cleaned[i])
                i += 1
            else:
                raise ValueError(f"cannot parse word {text!r} at position {i}")
        return cls(tuple(letters), k)


def _contraction_defect_base(x: np.ndarray, norm: float) -> np.ndarray:
    """Rescale into the closed unit ball so the defect stays PSD at the boundary."""
    return x / norm if norm > 1.0 else x


def halmos_symmetry(b, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Dilate a Hermitian contraction to a symmetry on the doubled space.

    Returns S = [[b, D], [D, -b]] with D = psd_sqrt(1 - b^2): S is
    Hermitian, S^2 is the identity within spec_tol, and the top-left block
    equals ``b`` exactly.
    """
    b = as_matrix(b)
    require_hermitian(b, tol.alg_tol, "halmos_symmetry input")
    norm = opnorm(b)
    if norm > 1.0 + tol.psd_clamp:
        raise NormExceedsOneError(f"||b|| = {norm:.12f} exceeds 1")
    base = _contraction_defect_base(b, norm)
    n = b.shape[0]
    d = psd_sqrt(np.eye(n) - base @ base, tol)
    return np.block([[b, d], [d, -b]])


def halmos_unitary(x, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Dilate a contraction to a unitary on the doubled space.

    Returns U = [[x, psd_sqrt(1 - x x*)], [psd_sqrt(1 - x* x), -x*]], which
    is unitary within spec_tol with top-left block ``x``.
    """
    x = as_matrix(x)
    if x.shape[0] != x.shape[1]:
        raise ShapeMismatchError("halmos_unitary requires a square matrix")
    norm = opnorm(x)
    if norm > 1.0 + tol.psd_clamp:
        raise NormExceedsOneError(f"||x|| = {norm:.12f} exceeds 1")
    base = _contraction_defect_base(x, norm)
    n = x.shape[0]
    d_left = psd_sqrt(np.eye(n) - base @ dagger(base), tol)
    d_right = psd_sqrt(np.eye(n) - dagger(base) @ base, tol)
    return np.block([[x, d_left], [d_right, -dagger(x)]])


def triangle_povm(a, tol: ToleranceConfig = DEFAULT_TOL) -> Povm:
    """Barycentric decomposition of an operator over the root-of-unity triangle.

    For W(a) inside Conv{1, omega, omega^2} the affine barycentric
    coordinate functionals of the triangle, applied to (Re a, Im a), give
    effects h_j >= 0 with sum(h_j) = 1 and sum(omega^j h_j) = a.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatchError("triangle_povm requires a square matrix")
    re, im = real_imag_parts(a)
    verdict = max_member([re, im], make_polygon(3), tol)
    if not verdict.member:
        raise NumericalRangeOutsideTriangleError(
            f"numerical range leaves the triangle: facet {verdict.facet_index} "
            f"violated by {-verdict.margin:.3e}"
        )
    n = a.shape[0]
    eye = np.eye(n)
    effects = []
    for j in range(3):
        theta = 2.0 * math.pi * j / 3.0
        # Barycentric functional of Conv C_3: (1 + 2(x cos + y sin)) / 3.
        effects.append(hermitize((eye + 2.0 * (math.cos(theta) * re + math.sin(theta) * im)) / 3.0))
    labels = [np.exp(2j * math.pi * j / 3) for j in range(3)]
    return Povm(effects, labels)


def naimark_normal(povm: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> DilationResult:
    """Dilate a POVM to a normal operator with spectrum at the outcome labels.

    The isometry stacks the square roots of the effects; the normal
    operator is the direct sum of label_j times the identity. Compression
    returns sum(label_j h_j).
    """
    povm.validate(tol)
    n = povm.effects[0].shape[0]
    m = len(povm.effects)
    blocks = [psd_sqrt(h, tol) for h in povm.effects]
    z = np.vstack(blocks)
    normal = np.zeros((m * n, m * n), dtype=complex)
    for j, label in enumerate(povm.outcome_labels):
        normal[j * n : (j + 1) * n, j * n : (j + 1) * n] = label * np.eye(n)
    return DilationResult(isometry=z, operators=[normal], labels=["normal"])


def _negative_part_norm(h: np.ndarray) -> float:
    w = np.linalg.eigvalsh(hermitize(h))
    return float(max(0.0, -w.min(initial=0.0)))


def _povm_residual(effects, a, omega) -> float:
    n = a.shape[0]
    total = np.zeros((n, n), dtype=complex)
    moment = np.zeros((n, n), dtype=complex)
    for j, h in enumerate(effects):
        total += h
        moment += (omega**j) * h
    return (
        opnorm(moment - a)
        + opnorm(total - np.eye(n))
        + sum(_negative_part_norm(h) for h in effects)
    )


def order_k_povm(
    a, k: int, tol: ToleranceConfig = DEFAULT_TOL, max_iter: int = 5000
) -> Povm:
    """Positive decomposition of ``a`` over the k-th roots of unity.

    For k = 3 the barycentric formula applies directly. For k >= 4 no
    closed form exists and the effects are found by alternating projections
    between the PSD product cone and the affine constraints
    sum(h_j) = 1, sum(omega^j h_j) = a. Failure to converge is reported as
    InfeasibleError; it proves nothing about infeasibility unless the
    numerical-range precondition itself fails.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("order_k_povm requires a square matrix")
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    if k == 3:
        return triangle_povm(a, tol)

    re, im = real_imag_parts(a)
    verdict = max_member([re, im], make_polygon(k), tol)
    if not verdict.member:
        raise InfeasibleError(
            f"numerical range of a leaves Conv(C_{k}) "
            f"(facet margin {verdict.margin:.3e}); no decomposition exists"
        )

    n = a.shape[0]
    omega = np.exp(2j * np.pi / k)
    eye = np.eye(n)
    effects = [eye.astype(complex) / k for _ in range(k)]
    target = tol.spec_tol / 2.0
    residual = math.inf
    for _ in range(max_iter):
        # Project onto the affine constraints (least-norm correction).
        r0 = eye - sum(effects)
        r1 = a - sum((omega**j) * h for j, h in enumerate(effects))
        effects = [
            hermitize(h + (r0 + (omega ** (-j)) * r1 + (omega**j) * dagger(r1)) / k)
            for j, h in enumerate(effects)
        ]
        # Project onto the PSD product cone.
        clamped = []
        for h in effects:
            w, u = np.linalg.eigh(hermitize(h))
            clamped.append(hermitize((u * np.clip(w, 0.0, None)) @ dagger(u)))
        effects = clamped
        residual = _povm_residual(effects, a, omega)
        if residual <= target:
            break
    else:
        raise InfeasibleError(
            f"alternating projections stalled at residual {residual:.3e} "
            f"after {max_iter} sweeps (not a proof of infeasibility)"
        )

    # Exact renormalization: congruence by (sum h_j)^(-1/2) restores the
    # identity sum at machine precision while keeping every effect PSD.
    total = hermitize(sum(effects))
    w, u = np.linalg.eigh(total)
    if w.min() <= 0.5:
        raise InfeasibleError("effect sum is too singular to renormalize")
    t = (u * (w**-0.5)) @ dagger(u)
    effects = [hermitize(t @ h @ t) for h in effects]
    final = _povm_residual(effects, a, omega)
    if final > tol.spec_tol:
        raise InfeasibleError(f"renormalized residual {final:.3e} exceeds tolerance")
    return Povm(effects, [omega**j for j in range(k)])


def joint_prism_dilation(
    a, b, k: int, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[RepPair, np.ndarray]:
    """Common dilation of (a, b) to unitaries of orders k and 2.

    Builds the normal dilation (y, z) of ``a`` from its positive
    decomposition, carries ``b`` to the enlarged space as z b z*, dilates
    that to a Halmos symmetry, and extends y by the identity on the second
    summand. The returned isometry G satisfies G* W G = a and G* V G = b.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"a and b must have equal size, got {a.shape}, {b.shape}")
    require_hermitian(b, tol.alg_tol, "joint_prism_dilation input b")
    if opnorm(b) > 1.0 + tol.psd_clamp:
        raise NormExceedsOneError(f"||b|| = {opnorm(b):.12f} exceeds 1")

    povm = order_k_povm(a, k, tol)
    naimark = naimark_normal(povm, tol)
    z = naimark.isometry
    y = naimark.operators[0]
    kn = y.shape[0]

    b_tilde = hermitize(z @ b @ dagger(z))
    v_big = halmos_symmetry(b_tilde, tol)
    w_big = direct_sum(y, np.eye(kn))
    g = np.vstack([z, np.zeros((kn, z.shape[1]), dtype=complex)])
    pair = RepPair(
        w_big, v_big, k, provenance=f"joint_prism_dilation(k={k}, level={a.shape[0]})"
    )
    pair.validate(tol)
    return pair, g


def cube_dilation(mats, tol: ToleranceConfig = DEFAULT_TOL) -> DilationResult:
    """Simultaneous Halmos symmetries for a tuple of Hermitian contractions.

    All d symmetries act on the common doubled space; the single
    block-inclusion isometry compresses each one back to its input.
    """
    mats = [as_matrix(m) for m in mats]
    if not mats:
        raise ShapeMismatchError("cube_dilation needs at least one matrix")
    n = mats[0].shape[0]
    for m in mats:
        if m.shape != (n, n):
            raise ShapeMismatchError("all tuple entries must have equal square shape")
    symmetries = [halmos_symmetry(m, tol) for m in mats]
    isometry = np.vstack([np.eye(n), np.zeros((n, n))]).astype(complex)
    labels = [f"s{j + 1}" for j in range(len(mats))]
    return DilationResult(isometry=isometry, operators=symmetries, labels=labels)


def evaluate_word(pair: RepPair, word: GroupWord) -> np.ndarray:
    """Multiply out a word in (W, V); w* is realized as W^(k-1)."""
    if pair.k != word.k:
        raise OrderMismatchError(f"pair has order {pair.k}, word is for order {word.k}")
    n = pair.dim
    letters = {
        "w": pair.w,
        "w*": np.linalg.matrix_power(pair.w, pair.k - 1),
        "v": pair.v,
    }
    product = np.eye(n, dtype=complex)
    for letter in word.letters:
        product = product @ letters[letter]
    return product


def evaluate_compressed_word(
    pair: RepPair, isometry, word: GroupWord, tol: ToleranceConfig = DEFAULT_TOL
) -> np.ndarray:
    """Value Z* (word in W, V) Z of the compressed extension on a group word."""
    from .matkernel import compress

    return compress(evaluate_word(pair, word), isometry, tol)
