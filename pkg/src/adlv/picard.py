"""The Picard lattice of the affine flag variety and its operators.

The lattice is indexed by the affine simple reflections, with
coefficients in Z[1/p] (denominators are powers of the residue
characteristic only, enforced structurally).  Simple reflections act
through the affine Cartan matrix, length-zero elements permute the
basis, and Frobenius acts as its diagram permutation scaled by q.

The descent certificate solves (M - 1) L = target for the operator M of
x . sigma . w^{-1}; invertibility is the no-eigenvalue-one property and
a singular operator is reported as a counterexample candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .affine_weyl import AffineWeylElement, AffineWeylGroup
from .errors import AdlvError, NotStraight, SingularOperator, SupportViolation
from .frobenius import FrobeniusDatum
from .linalg import Mat, identity_matrix, mat_mul, mat_vec, solve_fraction


def prime_of_residue_cardinality(q: int) -> int:
    """The prime p with q = p^e."""
    if q < 2:
        raise AdlvError(f"residue cardinality {q} must be at least 2")
    p = 2
    n = q
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            if n != 1:
                raise AdlvError(f"residue cardinality {q} is not a prime power")
            return p
        p += 1
    return n


def _split_p_power(n: int, p: int) -> tuple[int, int]:
    """n = p^e * m with p not dividing m; returns (e, m)."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


@dataclass(frozen=True)
class PicClass:
    """Coefficient vector over the affine simple basis, in Z[1/p].

    Stored as (numerator, exponent) pairs meaning num / p^exp with p not
    dividing num (or num = 0, exp = 0).
    """

    prime: int
    nums: tuple[int, ...]
    exps: tuple[int, ...]

    @classmethod
    def from_fractions(cls, prime: int, values: Sequence[Fraction]) -> "PicClass":
        nums, exps = [], []
        for v in values:
            f = Fraction(v)
            e, rest = _split_p_power(f.denominator, prime)
            if rest != 1:
                raise AdlvError(
                    f"coefficient {f} has a denominator prime to {prime}"
                )
            n = f.numerator
            # Normalize: strip p from the numerator into the exponent.
            while n != 0 and n % prime == 0 and e > 0:
                n //= prime
                e -= 1
            if n == 0:
                e = 0
            nums.append(n)
            exps.append(e)
        return cls(prime, tuple(nums), tuple(exps))

    @classmethod
    def ones(cls, prime: int, n: int) -> "PicClass":
        return cls(prime, (1,) * n, (0,) * n)

    def values(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(n, self.prime**e) for n, e in zip(self.nums, self.exps)
        )

    def __len__(self):
        return len(self.nums)


@dataclass(frozen=True)
class PicOperator:
    """Rational matrix over the affine simple basis with provenance."""

    matrix: Mat
    provenance: str

    def __matmul__(self, other: "PicOperator") -> "PicOperator":
        return PicOperator(
            mat_mul(self.matrix, other.matrix),
            f"{self.provenance}*{other.provenance}",
        )

    def apply(self, cls: PicClass) -> PicClass:
        vals = mat_vec(self.matrix, cls.values())
        return PicClass.from_fractions(cls.prime, [Fraction(v) for v in vals])

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.matrix == identity_matrix(n)


class PicardLattice:
    """Operator algebra over the basis indexed by the affine simples."""

    def __init__(self, group: AffineWeylGroup):
        self.group = group
        self.n = len(group.simple_affine)
        self.cartan = group.affine_cartan

    def identity_op(self) -> PicOperator:
        return PicOperator(identity_matrix(self.n), "1")

    def reflection_action(self, i: int) -> PicOperator:
        """eps_i -> eps_i - sum_j A_ij eps_j; other basis vectors fixed."""
        a = self.cartan
        mat = tuple(
            tuple(
                (1 if r == c else 0) - (a[i][r] if c == i else 0)
                for c in range(self.n)
            )
            for r in range(self.n)
        )
        return PicOperator(mat, f"s{i}")

    def permutation_action(self, perm: Sequence[int], label: str) -> PicOperator:
        mat = tuple(
            tuple(1 if perm[c] == r else 0 for c in range(self.n))
            for r in range(self.n)
        )
        return PicOperator(mat, label)

    def omega_action(self, omega_perm: Sequence[int]) -> PicOperator:
        return self.permutation_action(omega_perm, "omega")

    def sigma_action(self, sigma: FrobeniusDatum) -> PicOperator:
        perm_op = self.permutation_action(sigma.s_permutation, "sigma")
        q = sigma.q
        mat = tuple(tuple(q * x for x in row) for row in perm_op.matrix)
        return PicOperator(mat, f"{q}.sigma")

    def element_action(self, x: AffineWeylElement) -> PicOperator:
        """Product of reflection operators along a reduced word, then the
        length-zero permutation."""
        w = self.group
        word, omega = w.reduced_word(x)
        op = self.identity_op()
        for i in word:
            op = op @ self.reflection_action(i)
        if not omega.is_identity():
            op = op @ self.omega_action(w.s_permutation_of(omega))
        return op

    def word_action(self, word: Sequence, sigma: FrobeniusDatum | None = None) -> PicOperator:
        """Compose a mixed word of simple indices, omega elements, and
        'sigma' markers (left to right)."""
        op = self.identity_op()
        for item in word:
            if item == "sigma":
                if sigma is None:
                    raise AdlvError("word contains sigma but none was given")
                op = op @ self.sigma_action(sigma)
            elif isinstance(item, int):
                op = op @ self.reflection_action(item)
            else:
                op = op @ self.omega_action(self.group.s_permutation_of(item))
        return op


def is_ample(cls: PicClass, k_set: Sequence[int] = ()) -> bool:
    """Strict positivity outside K; support inside K must vanish."""
    kk = set(k_set)
    for i, n in enumerate(cls.nums):
        if i in kk and n != 0:
            raise SupportViolation(
                f"class has coefficient {n}/p^{cls.exps[i]} at parahoric index {i}"
            )
    return all(n > 0 for i, n in enumerate(cls.nums) if i not in kk)


def descends_to_parahoric(cls: PicClass, k_set: Sequence[int]) -> bool:
    """A class descends along FL -> Gr_K iff it vanishes on K."""
    return all(cls.nums[i] == 0 for i in k_set)


@dataclass(frozen=True)
class DescentCertificate:
    operator: PicOperator  # x . sigma . w^{-1} on the Picard lattice
    pic_class: PicClass
    difference: tuple[Fraction, ...]  # (M - 1) applied to the class
    invertible: bool = True


def descent_certificate(
    sigma: FrobeniusDatum,
    w: AffineWeylElement,
    x: AffineWeylElement,
    target: Sequence[Fraction] | None = None,
) -> DescentCertificate:
    """A Picard class whose twist difference is dominant regular.

    Builds the operator of x sigma w^{-1}, asserts that M - 1 is
    invertible over Q, solves (M - 1) L = target (all-ones by default),
    and scales L by a positive integer so every denominator is a power
    of the residue characteristic.
    """
    group = sigma.datum.weyl
    if not sigma.is_straight(w):
        raise NotStraight("descent certificate is defined at straight elements")
    pic = PicardLattice(group)
    op = pic.element_action(x) @ pic.sigma_action(sigma) @ pic.element_action(w.inverse())
    n = pic.n
    m_minus_one = tuple(
        tuple(op.matrix[r][c] - (1 if r == c else 0) for c in range(n))
        for r in range(n)
    )
    tgt = tuple(Fraction(t) for t in (target if target is not None else (1,) * n))
    if not all(t > 0 for t in tgt):
        raise AdlvError("target vector must be strictly positive")
    sol = solve_fraction(m_minus_one, tgt)
    if sol is None or tuple(mat_vec(m_minus_one, sol)) != tgt:
        raise SingularOperator(
            "operator has eigenvalue 1; counterexample candidate for the "
            "no-fixed-line property"
        )
    p = prime_of_residue_cardinality(sigma.q)
    scale = 1
    for v in sol:
        _e, rest = _split_p_power(v.denominator, p)
        scale = scale * rest // gcd(scale, rest)
    scaled = [v * scale for v in sol]
    cls = PicClass.from_fractions(p, scaled)
    diff = tuple(Fraction(x) for x in mat_vec(m_minus_one, scaled))
    assert diff == tuple(t * scale for t in tgt)
    assert all(dv > 0 for dv in diff), "difference must be dominant regular"
    return DescentCertificate(operator=op, pic_class=cls, difference=diff)
