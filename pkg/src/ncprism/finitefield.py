"""Small finite fields GF(p^e) and the projective line P^1(F_q).

Prime fields use integer arithmetic mod p; extension fields use polynomial
arithmetic modulo an irreducible modulus found by exhaustive search, which
is adequate for the small degrees (e <= 4) used by the representation
factory. Field elements are coefficient tuples of length ``e`` in ascending
powers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NoIrreduciblePolynomialError

__all__ = [
    "FiniteFieldSpec",
    "GaloisField",
    "is_prime",
    "factor_prime_power",
    "find_irreducible",
    "projective_line",
    "projective_action",
    "psl2_order",
    "sl2_involutions",
    "permutation_closure_size",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m == 1:
                return p, e
            raise ValueError(f"{q} is not a prime power")
    raise ValueError(f"{q} is not a prime power")


def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_divmod(a: tuple[int, ...], b: tuple[int, ...], p: int):
    """Division with remainder of coefficient tuples over F_p; b monic-ish."""
    a = list(_poly_trim(a))
    b = _poly_trim(b)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = (a[-1] * inv_lead) % p
        q[shift] = coef
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        a = list(_poly_trim(tuple(a)))
    return tuple(q), tuple(a)


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2."""
    deg = len(_poly_trim(modulus)) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            candidate = tuple(tail) + (1,)
            _, rem = _poly_divmod(modulus, candidate, p)
            if not rem:
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest (lexicographic) monic irreducible polynomial of degree e over F_p."""
    if e == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=e):
        candidate = tuple(tail) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise NoIrreduciblePolynomialError(
        f"no irreducible polynomial of degree {e} over F_{p} found"
    )


@dataclass(frozen=True)
class FiniteFieldSpec:
    """A finite field F_{p^e} presented by an irreducible modulus.

    ``modulus`` lists the e+1 coefficients of a monic degree-e polynomial
    over F_p in ascending powers. For e = 1 the canonical modulus is (0, 1).
    """

    p: int
    e: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.e}")
        modulus = tuple(c % self.p for c in self.modulus)
        if not modulus:
            modulus = find_irreducible(self.p, self.e)
        object.__setattr__(self, "modulus", modulus)
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError(
                f"modulus must be monic of degree {self.e}, got {self.modulus}"
            )
        if self.e > 1 and not _is_irreducible(self.modulus, self.p):
            raise NoIrreduciblePolynomialError(
                f"modulus {self.modulus} is reducible over F_{self.p}"
            )

    @property
    def q(self) -> int:
        return self.p**self.e


class GaloisField:
    """Arithmetic in GF(p^e); elements are coefficient tuples of length e."""

    def __init__(self, spec: FiniteFieldSpec):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.q = spec.q
        self.zero = (0,) * self.e
        self.one = (1,) + (0,) * (self.e - 1)

    def elements(self):
        return [tuple(t) for t in itertools.product(range(self.p), repeat=self.e)]

    def from_int(self, n: int):
        return ((n % self.p),) + (0,) * (self.e - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        _, rem = _poly_divmod(tuple(prod), self.spec.modulus, self.p)
        return tuple(rem) + (0,) * (self.e - len(rem))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in a finite field")
        # q is tiny here, so a^(q-2) by repeated squaring is plenty fast.
        result = self.one
        base = a
        exp = self.q - 2
        while exp:
            if exp & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exp >>= 1
        return result


def projective_line(gf: GaloisField) -> list[tuple[tuple, tuple]]:
    """The q+1 points of P^1(F_q), normalized as (x, 1) for x in F_q plus (1, 0)."""
    points = [(x, gf.one) for x in gf.elements()]
    points.append((gf.one, gf.zero))
    return points


def projective_action(gf: GaloisField, mat, points) -> list[int]:
    """Permutation induced on P^1(F_q) by a 2x2 matrix.

    ``mat`` is ((a, b), (c, d)) with integer or field-element entries,
    mapping [x : y] -> [a x + b y : c x + d y]. Returns perm with
    perm[i] = index of the image of points[i].
    """
    def coerce(entry):
        return gf.from_int(entry) if isinstance(entry, int) else entry

    (a, b), (c, d) = mat
    fa, fb, fc, fd = coerce(a), coerce(b), coerce(c), coerce(d)
    index = {pt: i for i, pt in enumerate(points)}

    def normalize(x, y):
        if y != gf.zero:
            return (gf.mul(x, gf.inv(y)), gf.one)
        return (gf.one, gf.zero)

    perm = []
    for x, y in points:
        nx = gf.add(gf.mul(fa, x), gf.mul(fb, y))
        ny = gf.add(gf.mul(fc, x), gf.mul(fd, y))
        perm.append(index[normalize(nx, ny)])
    return perm


def psl2_order(q: int) -> int:
    """Order of PSL2(F_q)."""
    return q * (q * q - 1) // (1 if q % 2 == 0 else 2)


def sl2_involutions(gf: GaloisField):
    """Projective involutions of PSL2(F_q) in a deterministic order.

    These are exactly the determinant-1 matrices of trace zero other than
    +/- identity, yielded as ((a, b), (c, d)) field-element matrices.
    """
    elems = gf.elements()
    out = []
    for a in elems:
        d = gf.neg(a)
        for b in elems:
            for c in elems:
                det = gf.add(gf.mul(a, d), gf.neg(gf.mul(b, c)))
                if det != gf.one:
                    continue
                if b == gf.zero and c == gf.zero and gf.mul(a, a) == gf.one:
                    continue
                out.append(((a, b), (c, d)))
    return out


def permutation_closure_size(generators, limit: int) -> int:
    """Size of the permutation group generated, capped at ``limit`` + 1.

    Breadth-first closure under composition; returns early with limit + 1
    once the group is known to exceed ``limit``.
    """
    gens = [tuple(g) for g in generators]
    n = len(gens[0])
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for perm in frontier:
            for g in gens:
                composed = tuple(g[perm[i]] for i in range(n))
                if composed not in seen:
                    seen.add(composed)
                    next_frontier.append(composed)
                    if len(seen) > limit:
                        return limit + 1
        frontier = next_frontier
    return len(seen)
