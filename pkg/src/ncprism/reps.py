"""Factories for explicit irreducible representations.

The generator images produced here are the noncommutative extreme points of
the cube and prism bodies: the one-parameter family of 2x2 symmetry pairs,
block-diagonal universal pairs, Hadamard symmetry tuples, prism vertex
representations, the S3/A4/PSL2(F_q) pairs of order (3, 2), their tensor
assemblies, and the canonical form of an arbitrary pair of symmetries.

Every constructor verifies its own output (generator orders, defining
relations, commutant dimension where claimed) and raises rather than
returning unverified matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AssemblyFailedError,
    IndexOutOfRangeError,
    LambdaOutOfRangeError,
    NotSymmetryError,
    RelationCheckFailedError,
    ShapeMismatchError,
    SizeBudgetExceededError,
    OrderMismatchError,
    UnsupportedQError,
)
from .finitefield import (
    FiniteFieldSpec,
    GaloisField,
    factor_prime_power,
    permutation_closure_size,
    projective_action,
    projective_line,
    psl2_order,
    sl2_involutions,
)
from .matkernel import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    check_order,
    commutant_dimension,
    dagger,
    direct_sum,
    hermitize,
    opnorm,
)

__all__ = [
    "RepPair",
    "SymmetryTuple",
    "CanonicalForm",
    "square_irrep",
    "universal_square_pair",
    "two_symmetry_canonical_form",
    "hadamard_symmetries",
    "prism_vertex_rep",
    "s3_pair",
    "a4_pair",
    "steinberg_pair",
    "tensor_pair",
    "assemble_dimension",
    "generated_group_order",
]


@dataclass
class RepPair:
    """Images (W, V) of the order-(k, 2) generators under a representation."""

    w: np.ndarray
    v: np.ndarray
    k: int
    provenance: str = ""
    commutant_dim: int | None = None

    def __post_init__(self):
        self.w = as_matrix(self.w)
        self.v = as_matrix(self.v)
        if self.w.shape != self.v.shape or self.w.shape[0] != self.w.shape[1]:
            raise ShapeMismatchError(
                f"W and V must be square of equal size, got {self.w.shape}, {self.v.shape}"
            )

    @property
    def dim(self) -> int:
        return self.w.shape[0]

    def validate(self, tol: ToleranceConfig = DEFAULT_TOL) -> None:
        if not check_order(self.w, self.k, tol):
            raise RelationCheckFailedError(
                f"{self.provenance}: W fails order-{self.k} check"
            )
        if not check_order(self.v, 2, tol):
            raise RelationCheckFailedError(f"{self.provenance}: V fails order-2 check")


@dataclass
class SymmetryTuple:
    """A tuple of selfadjoint unitaries of common size."""

    mats: list[np.ndarray]
    provenance: str = ""

    def __post_init__(self):
        self.mats = [as_matrix(m) for m in self.mats]

    @property
    def dim(self) -> int:
        return self.mats[0].shape[0]

    def validate(self, tol: ToleranceConfig = DEFAULT_TOL) -> None:
        for m in self.mats:
            _require_symmetry(m, tol, self.provenance)


@dataclass
class CanonicalForm:
    """Joint canonical form of a pair of symmetries.

    ``lambdas`` lists the couplings of the irreducible 2x2 blocks
    (diag(-1, 1), [[l, sqrt(1-l^2)], [sqrt(1-l^2), -l]]); ``char_counts``
    gives the multiplicities of the joint eigencases in the fixed order
    (+1,+1), (+1,-1), (-1,+1), (-1,-1). ``conjugator`` is the unitary with
    conjugator @ canonical @ conjugator* equal to the input pair.
    """

    lambdas: list[float]
    char_counts: tuple[int, int, int, int]
    conjugator: np.ndarray
    _char_cases = ((1, 1), (1, -1), (-1, 1), (-1, -1))

    @property
    def dim(self) -> int:
        return 2 * len(self.lambdas) + sum(self.char_counts)

    def canonical_pair(self) -> tuple[np.ndarray, np.ndarray]:
        """The block-diagonal model matrices (V1, V2) in canonical order."""
        blocks1, blocks2 = [], []
        for lam in self.lambdas:
            mu = math.sqrt(max(0.0, 1.0 - lam * lam))
            blocks1.append(np.diag([-1.0, 1.0]))
            blocks2.append(np.array([[lam, mu], [mu, -lam]]))
        for (s1, s2), count in zip(self._char_cases, self.char_counts):
            for _ in range(count):
                blocks1.append(np.array([[float(s1)]]))
                blocks2.append(np.array([[float(s2)]]))
        v1 = np.zeros((self.dim, self.dim), dtype=complex)
        v2 = np.zeros((self.dim, self.dim), dtype=complex)
        pos = 0
        for b1, b2 in zip(blocks1, blocks2):
            d = b1.shape[0]
            v1[pos : pos + d, pos : pos + d] = b1
            v2[pos : pos + d, pos : pos + d] = b2
            pos += d
        return v1, v2


def _require_symmetry(m: np.ndarray, tol: ToleranceConfig, what: str) -> None:
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatchError(f"{what}: symmetry must be square")
    if opnorm(m - dagger(m)) > tol.spec_tol or opnorm(m @ m - np.eye(n)) > tol.spec_tol:
        raise NotSymmetryError(f"{what}: matrix is not a symmetry within tolerance")


def _lambda_block(lam: float) -> np.ndarray:
    mu = math.sqrt(1.0 - lam * lam)
    return np.array([[lam, mu], [mu, -lam]], dtype=complex)


def square_irrep(lam: float) -> SymmetryTuple:
    """The 2-dimensional irreducible symmetry pair with coupling ``lam``.

    Returns u1 = diag(-1, 1) and u2 = [[l, sqrt(1-l^2)], [sqrt(1-l^2), -l]]
    for l strictly inside (-1, 1); at |l| = 1 the pair degenerates to
    commuting multiples of u1 and is rejected.
    """
    if not -1.0 < lam < 1.0:
        raise LambdaOutOfRangeError(
            f"lambda must lie strictly in (-1, 1), got {lam}"
        )
    u1 = np.diag([-1.0, 1.0]).astype(complex)
    return SymmetryTuple(
        [u1, _lambda_block(lam)], provenance=f"square_irrep(lambda={lam})"
    )


def universal_square_pair(lambdas) -> SymmetryTuple:
    """Block-diagonal symmetry pair over a finite coupling grid.

    ``lambdas`` must start with 1 and stay inside (-1, 1]; the direct sum of
    the corresponding 2x2 blocks is a finite truncation of the universal
    free pair of symmetries.
    """
    lambdas = [float(x) for x in lambdas]
    if not lambdas:
        raise LambdaOutOfRangeError("lambdas must be nonempty")
    if lambdas[0] != 1.0:
        raise LambdaOutOfRangeError(f"leading coupling must be 1, got {lambdas[0]}")
    for lam in lambdas:
        if not -1.0 < lam <= 1.0:
            raise LambdaOutOfRangeError(f"coupling {lam} outside (-1, 1]")
    u1 = np.diag([-1.0, 1.0]).astype(complex)
    big1, big2 = u1, _lambda_block(lambdas[0])
    for lam in lambdas[1:]:
        big1 = direct_sum(big1, u1)
        big2 = direct_sum(big2, _lambda_block(lam))
    return SymmetryTuple(
        [big1, big2], provenance=f"universal_square_pair(n={len(lambdas)})"
    )


def two_symmetry_canonical_form(
    v1, v2, tol: ToleranceConfig = DEFAULT_TOL
) -> CanonicalForm:
    """Decompose a pair of symmetries into 2x2 couplings plus characters.

    With p = (1 + v1)/2 and q = (1 + v2)/2, the eigenvalues t of p q p
    restricted to range(p) classify the pair: t within spec_tol of 1 or 0
    gives a joint eigenvector (character), and interior t gives an
    irreducible 2x2 block whose coupling satisfies (1 - coupling)/2 = t.
    The returned conjugator reconstructs the input from the canonical pair.
    """
    v1, v2 = as_matrix(v1), as_matrix(v2)
    _require_symmetry(v1, tol, "two_symmetry_canonical_form")
    _require_symmetry(v2, tol, "two_symmetry_canonical_form")
    if v1.shape != v2.shape:
        raise ShapeMismatchError("the two symmetries must have equal size")
    n = v1.shape[0]
    cluster = tol.spec_tol

    w1, u1vecs = np.linalg.eigh(hermitize(v1))
    plus = u1vecs[:, w1 > 0.0]
    minus = u1vecs[:, w1 <= 0.0]
    q = (np.eye(n) + hermitize(v2)) / 2.0
    one_minus_p = minus @ dagger(minus)

    lambdas: list[float] = []
    pairs: list[tuple[float, np.ndarray, np.ndarray]] = []
    chars = {case: [] for case in CanonicalForm._char_cases}

    if plus.shape[1] > 0:
        m_plus = hermitize(dagger(plus) @ q @ plus)
        tvals, tvecs = np.linalg.eigh(m_plus)
        for t, vec in zip(tvals, tvecs.T):
            x = plus @ vec
            if t >= 1.0 - cluster:
                chars[(1, 1)].append(x)
            elif t <= cluster:
                chars[(1, -1)].append(x)
            else:
                y = one_minus_p @ (q @ x)
                y = y / np.linalg.norm(y)
                pairs.append((1.0 - 2.0 * float(t), y, x))

    if minus.shape[1] > 0:
        m_minus = hermitize(dagger(minus) @ q @ minus)
        tvals, tvecs = np.linalg.eigh(m_minus)
        for t, vec in zip(tvals, tvecs.T):
            if t >= 1.0 - cluster:
                chars[(-1, 1)].append(minus @ vec)
            elif t <= cluster:
                chars[(-1, -1)].append(minus @ vec)
            # Interior eigenvalues here belong to the 2x2 blocks found above.

    pairs.sort(key=lambda item: item[0])
    columns = []
    for lam, y, x in pairs:
        lambdas.append(lam)
        columns.extend([y, x])
    char_counts = []
    for case in CanonicalForm._char_cases:
        char_counts.append(len(chars[case]))
        columns.extend(chars[case])

    if 2 * len(lambdas) + sum(char_counts) != n:
        raise RelationCheckFailedError(
            "eigenvalue clustering is inconsistent; blocks do not fill the space "
            f"(2*{len(lambdas)} + {sum(char_counts)} != {n})"
        )

    conj = np.column_stack(columns) if columns else np.zeros((n, 0), dtype=complex)
    form = CanonicalForm(lambdas, tuple(char_counts), conj)
    c1, c2 = form.canonical_pair()
    err = max(
        opnorm(conj @ c1 @ dagger(conj) - v1), opnorm(conj @ c2 @ dagger(conj) - v2)
    )
    if err > tol.spec_tol:
        raise RelationCheckFailedError(
            f"canonical form reconstruction error {err:.3e} exceeds tolerance"
        )
    return form


def hadamard_symmetries(m: int, max_dim: int = 4096) -> SymmetryTuple:
    """m+1 irreducible symmetries in dimension 2^m, the first m commuting.

    A_0..A_{m-1} are diagonal with entries (-1)**(i-th binary digit of the
    index); A_m is the normalized m-fold tensor power of the 2x2 Hadamard
    matrix. Only diagonal matrices commute with the first m, and only
    scalars commute with all m+1.
    """
    if m < 1:
        raise IndexOutOfRangeError(f"m must be >= 1, got {m}")
    n = 2**m
    if n > max_dim:
        raise SizeBudgetExceededError(f"dimension 2^{m} exceeds budget {max_dim}")
    mats = []
    idx = np.arange(n)
    for i in range(m):
        digits = (idx >> i) & 1
        mats.append(np.diag((-1.0) ** digits).astype(complex))
    h2 = np.array([[1.0, 1.0], [1.0, -1.0]])
    h = np.array([[1.0]])
    for _ in range(m):
        h = np.kron(h, h2)
    mats.append((h / math.sqrt(n)).astype(complex))
    return SymmetryTuple(mats, provenance=f"hadamard_symmetries(m={m})")


def cyclic_shift(k: int) -> np.ndarray:
    """The k x k cyclic shift sending e_1 -> e_k, e_2 -> e_1, ..., e_k -> e_{k-1}."""
    u = np.zeros((k, k), dtype=complex)
    for c in range(k):
        u[(c - 1) % k, c] = 1.0
    return u


def prism_vertex_rep(k: int, j: int, sign: int) -> tuple[RepPair, np.ndarray]:
    """Vertex representation attaining the extreme point (omega^j, sign).

    W is omega^j times the cyclic shift, V is sign times the (1 2) swap
    padded by the identity, and the returned unit vector is a common
    eigenvector whose vector state evaluates the pair to the vertex.
    """
    if k < 3:
        raise IndexOutOfRangeError(f"k must be >= 3, got {k}")
    if not 0 <= j < k:
        raise IndexOutOfRangeError(f"vertex index j={j} outside 0..{k - 1}")
    if sign not in (1, -1):
        raise IndexOutOfRangeError(f"sign must be +1 or -1, got {sign}")
    omega = np.exp(2j * np.pi / k)
    w = (omega**j) * cyclic_shift(k)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    v = sign * direct_sum(swap, np.eye(k - 2))
    xi = np.ones(k, dtype=complex) / math.sqrt(k)
    pair = RepPair(w, v, k, provenance=f"prism_vertex_rep(k={k}, j={j}, sign={sign:+d})")
    pair.validate()
    return pair, xi


def generated_group_order(
    generators, max_order: int = 720, tol: float = 1e-8
) -> int:
    """Order of the matrix group generated by the given unitaries.

    Closure enumeration with tolerance-based deduplication; raises
    RelationCheckFailedError if the closure exceeds ``max_order`` elements.
    """
    gens = [as_matrix(g) for g in generators]
    n = gens[0].shape[0]
    elements = [np.eye(n, dtype=complex)]

    def seen(candidate):
        return any(opnorm(candidate - e) <= tol for e in elements)

    frontier = [np.eye(n, dtype=complex)]
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in gens:
                candidate = e @ g
                if not seen(candidate):
                    elements.append(candidate)
                    new_frontier.append(candidate)
                    if len(elements) > max_order:
                        raise RelationCheckFailedError(
                            f"group closure exceeded {max_order} elements"
                        )
        frontier = new_frontier
    return len(elements)


def _verified_pair(
    w,
    v,
    k: int,
    provenance: str,
    relations=(),
    group_order: int | None = None,
    tol: ToleranceConfig = DEFAULT_TOL,
    relation_tol: float = 1e-10,
) -> RepPair:
    """Build a RepPair and run the build-time guards; raise on any failure."""
    pair = RepPair(w, v, k, provenance=provenance)
    pair.validate(tol)
    for name, lhs, rhs in relations:
        if opnorm(lhs - rhs) > relation_tol:
            raise RelationCheckFailedError(
                f"{provenance}: relation {name} fails by {opnorm(lhs - rhs):.3e}"
            )
    dim, _ = commutant_dimension([pair.w, pair.v], tol)
    if dim != 1:
        raise RelationCheckFailedError(
            f"{provenance}: commutant dimension {dim} != 1, pair is reducible"
        )
    if group_order is not None:
        order = generated_group_order([pair.w, pair.v])
        if order != group_order:
            raise RelationCheckFailedError(
                f"{provenance}: generated group has order {order}, expected {group_order}"
            )
    pair.commutant_dim = 1
    return pair


def s3_pair() -> RepPair:
    """The 2-dimensional pair of order (3, 2) with V W V = W^{-1}.

    W is the rotation by 2*pi/3 and V the reflection diag(1, -1); together
    they generate a group of order 6 acting irreducibly.
    """
    c, s = math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)
    w = np.array([[c, -s], [s, c]], dtype=complex)
    v = np.diag([1.0, -1.0]).astype(complex)
    return _verified_pair(
        w,
        v,
        3,
        "s3_pair",
        relations=[("VWV = W^-1", v @ w @ v, np.linalg.matrix_power(w, 2))],
        group_order=6,
    )


def a4_pair() -> RepPair:
    """The 3-dimensional pair of order (3, 2) with W V W = V W^2 V.

    W cyclically permutes the coordinate axes and V flips two of them;
    together they generate a group of order 12 acting irreducibly.
    """
    w = np.zeros((3, 3), dtype=complex)
    w[1, 0] = w[2, 1] = w[0, 2] = 1.0
    v = np.diag([-1.0, -1.0, 1.0]).astype(complex)
    return _verified_pair(
        w,
        v,
        3,
        "a4_pair",
        relations=[
            ("WVW = VW^2V", w @ v @ w, v @ np.linalg.matrix_power(w, 2) @ v)
        ],
        group_order=12,
    )


def steinberg_pair(q: int, field: FiniteFieldSpec | None = None) -> RepPair:
    """The q-dimensional pair of order (3, 2) from PSL2(F_q) on P^1(F_q).

    Permutes the q+1 projective points by an order-3 element U and an
    involution V generating PSL2(F_q), then compresses the permutation
    matrices to the orthogonal complement of the all-ones vector.

    For prime q > 3 the classical pair U = [[0, -1], [1, -1]] (the
    companion matrix of t^2 + t + 1) and V = [[0, -1], [1, 0]] generates,
    being the mod-p reduction of the modular-group generators. For genuine
    prime powers both classical matrices lie in the prime subfield and
    generate only a proper subgroup, so the involution is found instead by
    a deterministic search over trace-zero elements, with generation
    certified by counting the permutation closure. PSL2(F_9) is not
    generated by any order-(3, 2) pair and is rejected, as are q <= 3.
    """
    p, e = factor_prime_power(q)
    if q <= 3 or q == 9:
        raise UnsupportedQError(
            f"q = {q} is unsupported: no order-(3, 2) generating pair exists "
            "(q = 9) or the group is not simple (q <= 3)"
        )
    if field is None:
        field = FiniteFieldSpec(p, e)
    if field.q != q:
        raise ValueError(f"field spec describes F_{field.q}, expected F_{q}")
    gf = GaloisField(field)
    points = projective_line(gf)
    perm_u = projective_action(gf, ((0, -1), (1, -1)), points)

    if e == 1:
        perm_v = projective_action(gf, ((0, -1), (1, 0)), points)
    else:
        target = psl2_order(q)
        perm_v = None
        for candidate in sl2_involutions(gf):
            trial = projective_action(gf, candidate, points)
            if permutation_closure_size([perm_u, trial], target) == target:
                perm_v = trial
                break
        if perm_v is None:
            raise UnsupportedQError(
                f"no involution generating PSL2(F_{q}) together with the "
                "order-3 element was found"
            )

    def perm_matrix(perm):
        mat = np.zeros((q + 1, q + 1), dtype=complex)
        for src, dst in enumerate(perm):
            mat[dst, src] = 1.0
        return mat

    pu, pv = perm_matrix(perm_u), perm_matrix(perm_v)
    ones = np.ones((q + 1, 1))
    qmat, _ = np.linalg.qr(ones, mode="complete")
    z = qmat[:, 1:]
    w = dagger(z) @ pu @ z
    v = dagger(z) @ pv @ z
    return _verified_pair(w, v, 3, f"steinberg_pair(q={q})")


def tensor_pair(p1: RepPair, p2: RepPair, tol: ToleranceConfig = DEFAULT_TOL) -> RepPair:
    """Tensor product of two pairs of equal generator order.

    Orders are preserved. The commutant dimension of the product is
    computed and recorded rather than assumed to be 1.
    """
    if p1.k != p2.k:
        raise OrderMismatchError(f"cannot tensor orders k={p1.k} and k={p2.k}")
    pair = RepPair(
        np.kron(p1.w, p2.w),
        np.kron(p1.v, p2.v),
        p1.k,
        provenance=f"tensor({p1.provenance}, {p2.provenance})",
    )
    pair.validate(tol)
    pair.commutant_dim, _ = commutant_dimension([pair.w, pair.v], tol)
    pair.provenance += f"[commutant_dim={pair.commutant_dim}]"
    return pair


def assemble_dimension(n: int, tol: ToleranceConfig = DEFAULT_TOL) -> RepPair:
    """A pair of order (3, 2) in dimension n, built from prime-power blocks.

    Dimension 1 is the trivial character, 2 the S3 pair, 3 the A4 pair,
    prime powers q > 3 (q != 9) the Steinberg pair, and composite n the
    tensor product over the prime-power factorization. A factor equal to 9
    has no building block here and raises AssemblyFailedError. The
    commutant dimension of the result is computed and recorded.
    """
    if n < 1:
        raise IndexOutOfRangeError(f"dimension must be >= 1, got {n}")
    if n == 1:
        pair = RepPair(
            np.array([[1.0]], dtype=complex),
            np.array([[1.0]], dtype=complex),
            3,
            provenance="character(j=0, sign=+1)",
            commutant_dim=1,
        )
        pair.validate(tol)
        return pair

    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            power = 1
            m //= d
            while m % d == 0:
                m //= d
                power *= d
            factors.append(d * power)
        d += 1
    if m > 1:
        factors.append(m)

    blocks = []
    for f in sorted(factors):
        if f == 2:
            blocks.append(s3_pair())
        elif f == 3:
            blocks.append(a4_pair())
        elif f == 9:
            raise AssemblyFailedError(
                f"dimension {n} requires a block of dimension 9, for which the "
                "projective-line construction is unavailable (q = 9 is rejected)"
            )
        else:
            blocks.append(steinberg_pair(f))

    pair = blocks[0]
    for nxt in blocks[1:]:
        pair = tensor_pair(pair, nxt, tol)
    if pair.commutant_dim is None:
        pair.commutant_dim, _ = commutant_dimension([pair.w, pair.v], tol)
    return pair
