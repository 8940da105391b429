"""Reduced root data: the static arena for all Weyl-group combinatorics.

A root datum consists of a lattice Z^rank (cocharacters), simple roots
as integer covectors, and simple coroots as integer vectors.  Roots pair
with cocharacters by the dot product.  The full positive system is
produced by reflection closure from the simple roots and every root
carries its coroot.

Only reduced systems are supported; non-reduced relative systems must be
presented pre-reduced, which is the convention all length and Bruhat
computations rely on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import NonIntegralCartan, NonReducedSystem, NotDominantInput
from .fgab import FinAbGroup
from .linalg import Mat, dot, identity_matrix, mat_mul, mat_vec, solve_fraction

IntVec = tuple[int, ...]
QVec = tuple[Fraction, ...]


def reflection_matrix(rank: int, root: Sequence[int], coroot: Sequence[int]) -> Mat:
    """Matrix of s_a acting on the cocharacter lattice: x - <a, x> a^vee."""
    return tuple(
        tuple((1 if r == c else 0) - coroot[r] * root[c] for c in range(rank))
        for r in range(rank)
    )


class RootDatum:
    """Immutable after construction; share freely."""

    def __init__(
        self,
        rank: int,
        simple_roots: Sequence[Sequence[int]],
        simple_coroots: Sequence[Sequence[int]],
        name: str = "",
    ):
        if rank <= 0:
            raise NonIntegralCartan("rank must be a positive integer")
        self.rank = rank
        self.simple_roots: tuple[IntVec, ...] = tuple(
            tuple(int(x) for x in a) for a in simple_roots
        )
        self.simple_coroots: tuple[IntVec, ...] = tuple(
            tuple(int(x) for x in a) for a in simple_coroots
        )
        self.name = name
        if len(self.simple_roots) != len(self.simple_coroots):
            raise NonIntegralCartan("need as many coroots as roots")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != rank:
                raise NonIntegralCartan("root/coroot length differs from rank")
        self.n_simple = len(self.simple_roots)
        self.cartan = tuple(
            tuple(dot(self.simple_roots[j], self.simple_coroots[i])
                  for j in range(self.n_simple))
            for i in range(self.n_simple)
        )
        self._validate_cartan()
        self._close_roots()
        self._validate_reduced()
        self.two_rho: IntVec = tuple(
            sum(a[i] for a in self.positive_roots) for i in range(rank)
        )
        self.simple_reflections: tuple[Mat, ...] = tuple(
            reflection_matrix(rank, self.simple_roots[i], self.simple_coroots[i])
            for i in range(self.n_simple)
        )
        self.components = self._components()
        self.highest_roots: tuple[IntVec, ...] = tuple(
            self._highest_root(c) for c in self.components
        )

    # -- construction helpers ------------------------------------------------

    def _validate_cartan(self) -> None:
        a = self.cartan
        n = self.n_simple
        for i in range(n):
            if a[i][i] != 2:
                raise NonIntegralCartan(f"A[{i}][{i}] = {a[i][i]} != 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise NonIntegralCartan(f"A[{i}][{j}] = {a[i][j]} > 0")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise NonIntegralCartan(f"A[{i}][{j}] zero pattern asymmetric")
        # Simple roots must be linearly independent for the closure to be a
        # genuine positive system.
        if self.n_simple and solve_fraction(
            tuple(zip(*self.simple_roots)), (0,) * self.rank
        ) is None:
            raise NonIntegralCartan("simple roots are inconsistent")
        rows = [list(r) for r in self.simple_roots]
        if _rational_rank(rows) != self.n_simple:
            raise NonIntegralCartan("simple roots are linearly dependent")
        # Reflection closure terminates exactly for finite type.
        from .linalg import principal_minors_positive

        if not principal_minors_positive(a):
            raise NonIntegralCartan("Cartan matrix is not of finite type")

    def _close_roots(self) -> None:
        """Reflection closure; fills positive_roots and the coroot table."""
        coroot: dict[IntVec, IntVec] = {}
        frontier = list(zip(self.simple_roots, self.simple_coroots))
        for a, av in frontier:
            coroot[a] = av
        while frontier:
            nxt = []
            for a, av in frontier:
                for i in range(self.n_simple):
                    pa = dot(a, self.simple_coroots[i])
                    b = tuple(
                        a[k] - pa * self.simple_roots[i][k] for k in range(self.rank)
                    )
                    pv = dot(self.simple_roots[i], av)
                    bv = tuple(
                        av[k] - pv * self.simple_coroots[i][k] for k in range(self.rank)
                    )
                    if b not in coroot:
                        coroot[b] = bv
                        nxt.append((b, bv))
                    elif coroot[b] != bv:
                        raise NonIntegralCartan("inconsistent coroot closure")
            frontier = nxt
        self.coroot_table = coroot
        self._coeff_table: dict[IntVec, IntVec] = {}
        positives = []
        for a in coroot:
            coeffs = self._expand(a)
            self._coeff_table[a] = coeffs
            if all(c >= 0 for c in coeffs):
                positives.append((sum(coeffs), a))
        positives.sort()
        self.positive_roots: tuple[IntVec, ...] = tuple(a for _h, a in positives)
        self.root_set = frozenset(coroot)
        self.positive_set = frozenset(self.positive_roots)
        if 2 * len(self.positive_roots) != len(coroot):
            raise NonReducedSystem("positive roots do not split the system in half")
        self._root_component: dict[IntVec, int] = {}

    def _validate_reduced(self) -> None:
        for a in self.root_set:
            if tuple(2 * x for x in a) in self.root_set:
                raise NonReducedSystem(f"root {a} and its double both occur")

    def _components(self) -> tuple[tuple[int, ...], ...]:
        n = self.n_simple
        seen = [False] * n
        comps = []
        for i in range(n):
            if seen[i]:
                continue
            stack, comp = [i], []
            seen[i] = True
            while stack:
                k = stack.pop()
                comp.append(k)
                for j in range(n):
                    if not seen[j] and self.cartan[k][j] != 0:
                        seen[j] = True
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def _highest_root(self, comp: tuple[int, ...]) -> IntVec:
        best = None
        best_h = -1
        for a in self.positive_roots:
            coeffs = self.simple_coefficients(a)
            if any(coeffs[i] and i not in comp for i in range(self.n_simple)):
                continue
            h = sum(coeffs)
            if h > best_h:
                best_h, best = h, a
        assert best is not None
        return best

    # -- basic queries ---------------------------------------------------------

    def _expand(self, root: Sequence[int]) -> IntVec:
        cols = tuple(zip(*self.simple_roots))  # rank x n_simple
        sol = solve_fraction(cols, root)
        if sol is None:
            raise NonIntegralCartan(f"{root} is not in the root lattice span")
        out = tuple(int(c) for c in sol)
        if any(Fraction(o) != s for o, s in zip(out, sol)):
            raise NonIntegralCartan(f"{root} has non-integral simple coefficients")
        return out

    def simple_coefficients(self, root: Sequence[int]) -> IntVec:
        """Expansion of a root over the simple roots (integer coefficients)."""
        key = tuple(root)
        hit = self._coeff_table.get(key)
        if hit is not None:
            return hit
        out = self._expand(key)
        self._coeff_table[key] = out
        return out

    def coroot(self, root: Sequence[int]) -> IntVec:
        return self.coroot_table[tuple(root)]

    def component_of_root(self, root: Sequence[int]) -> int:
        key = tuple(root)
        hit = self._root_component.get(key)
        if hit is not None:
            return hit
        coeffs = self.simple_coefficients(key)
        for ci, comp in enumerate(self.components):
            if any(coeffs[i] for i in comp):
                self._root_component[key] = ci
                return ci
        raise ValueError("zero root has no component")

    def is_dominant(self, v: Sequence) -> bool:
        return all(dot(a, v) >= 0 for a in self.simple_roots)

    def is_central(self, v: Sequence) -> bool:
        """Pairs to zero with every root."""
        return all(dot(a, v) == 0 for a in self.simple_roots)

    def pairing_height(self, v: Sequence) -> Fraction:
        """<v, 2 rho> as an exact rational."""
        return Fraction(dot(self.two_rho, v))

    def dominant_rep(self, v: Sequence) -> tuple[QVec, Mat]:
        """Dominant representative of the W0-orbit of v and a witness w.

        The witness matrix satisfies  witness . v = result.
        """
        cur = tuple(Fraction(x) for x in v)
        wit = identity_matrix(self.rank)
        while True:
            for i in range(self.n_simple):
                if dot(self.simple_roots[i], cur) < 0:
                    cur = tuple(mat_vec(self.simple_reflections[i], cur))
                    wit = mat_mul(self.simple_reflections[i], wit)
                    break
            else:
                return cur, wit

    def dominance_leq(self, lam: Sequence, lam2: Sequence) -> bool:
        """lam <= lam2 in dominance order; both must be dominant."""
        if not self.is_dominant(lam) or not self.is_dominant(lam2):
            raise NotDominantInput("dominance order compares dominant coweights")
        diff = tuple(Fraction(b) - Fraction(a) for a, b in zip(lam, lam2))
        if self.n_simple == 0:
            return all(x == 0 for x in diff)
        cols = tuple(zip(*self.simple_coroots))  # rank x n_simple
        sol = solve_fraction(cols, diff)
        if sol is None:
            return False
        if tuple(mat_vec(cols, sol)) != diff:
            return False
        return all(c >= 0 for c in sol)

    @cached_property
    def pi1(self) -> FinAbGroup:
        """The quotient of the lattice by the coroot lattice, in Smith form."""
        return FinAbGroup.from_columns(self.rank, self.simple_coroots)

    def quasi_minuscule(self) -> IntVec:
        """Sum over components of the coroot of the highest root."""
        acc = [0] * self.rank
        for theta in self.highest_roots:
            tv = self.coroot(theta)
            acc = [x + y for x, y in zip(acc, tv)]
        return tuple(acc)

    @cached_property
    def weyl(self):
        """The extended affine Weyl machinery bound to this datum."""
        from .affine_weyl import AffineWeylGroup

        return AffineWeylGroup(self)

    def __eq__(self, other):
        return (
            isinstance(other, RootDatum)
            and self.rank == other.rank
            and self.simple_roots == other.simple_roots
            and self.simple_coroots == other.simple_coroots
        )

    def __hash__(self):
        return hash((self.rank, self.simple_roots, self.simple_coroots))

    def __repr__(self):
        label = self.name or f"rank{self.rank}"
        return f"RootDatum({label}, |Phi+|={len(self.positive_roots)})"


def _rational_rank(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def from_cartan_matrix(cartan: Sequence[Sequence[int]], name: str = "") -> RootDatum:
    """Simply connected datum: lattice = coroot lattice in its own basis.

    Simple coroots are the unit vectors and simple root j is column j of
    the Cartan matrix.
    """
    n = len(cartan)
    roots = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))
    coroots = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
    return RootDatum(n, roots, coroots, name=name)


def build_root_datum(spec) -> RootDatum:
    """Build from a preset name or an explicit JSON-style mapping."""
    if isinstance(spec, str):
        from .presets import preset

        return preset(spec).datum
    if isinstance(spec, RootDatum):
        return spec
    try:
        rank = spec["rank"]
        roots = spec["simple_roots"]
        coroots = spec["simple_coroots"]
    except (TypeError, KeyError) as exc:
        raise NonIntegralCartan(f"explicit root datum missing field: {exc}") from exc
    return RootDatum(rank, roots, coroots, name=str(spec.get("name", "")))
