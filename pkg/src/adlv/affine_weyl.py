"""Extended affine Weyl group W = lattice x finite Weyl group.

Elements are pairs (lambda, u) with u a finite Weyl group element acting
on the cocharacter lattice; multiplication is
(lambda, u)(mu, v) = (lambda + u.mu, uv).  The Iwahori-Matsumoto formula
gives the length; the affine simple reflections are the finite ones plus
t^{theta_c} s_{theta_c} for the highest root theta_c of each component.

Index convention for the affine simple set: indices 0..k-1 are the
affine reflections of the k Dynkin components (in component order),
indices k.. are the finite simple reflections in simple-root order.  For
a connected diagram this is the classical labelling with node 0 affine.

The group object owns all caches (finite Weyl group tables, Bruhat
memo); elements are immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import BudgetExceeded, DatumMismatch, InfiniteParabolic
from .linalg import (
    Mat,
    Vec,
    dot,
    identity_matrix,
    mat_inv_unimodular,
    mat_mul,
    mat_vec,
    principal_minors_positive,
    solve_fraction,
    vec_mat,
)
from .root_datum import RootDatum

IntVec = tuple[int, ...]


class AffineRoot(NamedTuple):
    """Affine root a + k: the function x -> <a, x> + k on the apartment."""

    gradient: IntVec
    level: int


@dataclass(frozen=True)
class AffineWeylElement:
    group: "AffineWeylGroup"
    lam: IntVec
    u_idx: int

    @property
    def mat(self) -> Mat:
        return self.group.w0_list[self.u_idx]

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        g = self.group
        if other.group is not g and other.group.datum != g.datum:
            raise DatumMismatch("elements live over different root data")
        m = g.w0_list[self.u_idx]
        lam = tuple(a + b for a, b in zip(self.lam, mat_vec(m, other.lam)))
        return AffineWeylElement(g, lam, g.w0_mul[self.u_idx][other.u_idx])

    def inverse(self) -> "AffineWeylElement":
        g = self.group
        inv_idx = g.w0_inv[self.u_idx]
        lam = tuple(-x for x in mat_vec(g.w0_list[inv_idx], self.lam))
        return AffineWeylElement(g, lam, inv_idx)

    def translation_part(self) -> IntVec:
        return self.lam

    def finite_part(self) -> Mat:
        return self.mat

    @property
    def length(self) -> int:
        return self.group.length_of(self.lam, self.u_idx)

    def is_identity(self) -> bool:
        return self.u_idx == self.group.w0_identity and all(x == 0 for x in self.lam)

    def apply(self, point: Sequence) -> Vec:
        """Affine action on the apartment: x -> lambda + u(x)."""
        return tuple(
            a + b for a, b in zip(self.lam, mat_vec(self.mat, point))
        )

    def key(self) -> tuple:
        """Canonical sort key; deterministic across runs."""
        return (self.lam, self.u_idx)

    def __eq__(self, other):
        return (
            isinstance(other, AffineWeylElement)
            and self.lam == other.lam
            and self.u_idx == other.u_idx
            and (self.group is other.group or self.group.datum == other.group.datum)
        )

    def __hash__(self):
        return hash((self.lam, self.u_idx))

    def __repr__(self):
        word, omega = self.group.reduced_word(self)
        tail = f"*omega{omega.lam}" if not omega.is_identity() else ""
        return f"W[{'.'.join(map(str, word)) or 'e'}{tail}]"


@dataclass(frozen=True)
class OmegaElt:
    """Length-zero element together with its action on the affine diagram."""

    element: AffineWeylElement
    s_permutation: tuple[int, ...]
    pi1_coords: tuple[int, ...]


class AffineSimple(NamedTuple):
    index: int
    root: AffineRoot
    coroot: IntVec
    element: AffineWeylElement


class AffineWeylGroup:
    def __init__(self, datum: RootDatum):
        self.datum = datum
        self._build_finite_group()
        self._build_affine_simples()
        self._bruhat_cache: dict[tuple, bool] = {}
        self._rw_cache: dict[tuple, tuple] = {}

    # -- finite Weyl group tables -------------------------------------------

    def _build_finite_group(self) -> None:
        d = self.datum
        gens = list(d.simple_reflections)
        ident = identity_matrix(d.rank)
        index: dict[Mat, int] = {ident: 0}
        order: list[Mat] = [ident]
        words: list[tuple[int, ...]] = [()]
        frontier = [0]
        while frontier:
            nxt = []
            for idx in frontier:
                m = order[idx]
                for gi, gmat in enumerate(gens):
                    prod = mat_mul(gmat, m)
                    if prod not in index:
                        index[prod] = len(order)
                        order.append(prod)
                        words.append((gi,) + words[idx])
                        nxt.append(index[prod])
            frontier = nxt
        self.w0_list: tuple[Mat, ...] = tuple(order)
        self.w0_index: dict[Mat, int] = index
        self.w0_words: tuple[tuple[int, ...], ...] = tuple(words)
        self.w0_identity = 0
        n = len(order)
        self.w0_mul = [
            [index[mat_mul(order[i], order[j])] for j in range(n)] for i in range(n)
        ]
        self.w0_inv = [index[mat_inv_unimodular(m)] for m in order]
        # Length offsets: entry is 0 when u^{-1}(a) stays positive, else 1.
        pos = d.positive_roots
        posset = d.positive_set
        offs = []
        for m in order:
            offs.append(tuple(0 if vec_mat(a, m) in posset else 1 for a in pos))
        self.w0_offsets: tuple[tuple[int, ...], ...] = tuple(offs)

    def w0_order(self) -> int:
        return len(self.w0_list)

    # -- affine simple reflections -------------------------------------------

    def _build_affine_simples(self) -> None:
        d = self.datum
        simples: list[AffineSimple] = []
        for theta in d.highest_roots:
            grad = tuple(-x for x in theta)
            coroot = tuple(-x for x in d.coroot(theta))
            elt = self.reflection(AffineRoot(grad, 1))
            simples.append(AffineSimple(len(simples), AffineRoot(grad, 1), coroot, elt))
        for i in range(d.n_simple):
            root = AffineRoot(d.simple_roots[i], 0)
            elt = self.reflection(root)
            simples.append(
                AffineSimple(len(simples), root, d.simple_coroots[i], elt)
            )
        self.simple_affine: tuple[AffineSimple, ...] = tuple(simples)
        assert all(self.length(s.element) == 1 for s in simples), (
            "alcove walls must be length-one reflections"
        )
        self.n_components = len(d.components)
        self.affine_cartan: Mat = tuple(
            tuple(dot(sj.root.gradient, si.coroot) for sj in simples)
            for si in simples
        )
        self._simple_by_root = {s.root: s.index for s in simples}

    def identity(self) -> AffineWeylElement:
        return AffineWeylElement(self, (0,) * self.datum.rank, self.w0_identity)

    def translation(self, lam: Sequence[int]) -> AffineWeylElement:
        return AffineWeylElement(self, tuple(int(x) for x in lam), self.w0_identity)

    def from_matrix(self, lam: Sequence[int], mat: Mat) -> AffineWeylElement:
        idx = self.w0_index.get(mat)
        if idx is None:
            raise DatumMismatch("matrix is not an element of the finite Weyl group")
        return AffineWeylElement(self, tuple(int(x) for x in lam), idx)

    def from_finite_word(self, lam: Sequence[int], word: Sequence[int]) -> AffineWeylElement:
        m = identity_matrix(self.datum.rank)
        for i in word:
            m = mat_mul(m, self.datum.simple_reflections[i])
        return self.from_matrix(lam, m)

    def reflection(self, root: AffineRoot) -> AffineWeylElement:
        """s_{(a,k)} = t^{-k a^vee} s_a."""
        d = self.datum
        a = root.gradient
        av = d.coroot(a)
        from .root_datum import reflection_matrix

        m = reflection_matrix(d.rank, a, av)
        lam = tuple(-root.level * x for x in av)
        return self.from_matrix(lam, m)

    def simple(self, i: int) -> AffineWeylElement:
        return self.simple_affine[i].element

    # -- length and reduced words ---------------------------------------------

    def length_of(self, lam: IntVec, u_idx: int) -> int:
        offs = self.w0_offsets[u_idx]
        total = 0
        for a, o in zip(self.datum.positive_roots, offs):
            total += abs(dot(a, lam) - o)
        return total

    def length(self, x: AffineWeylElement) -> int:
        return self.length_of(x.lam, x.u_idx)

    def left_descent(self, x: AffineWeylElement) -> int | None:
        """Lowest affine-simple index i with l(s_i x) < l(x), or None."""
        lx = self.length(x)
        for s in self.simple_affine:
            if self.length(s.element * x) < lx:
                return s.index
        return None

    def reduced_word(self, x: AffineWeylElement) -> tuple[tuple[int, ...], AffineWeylElement]:
        """Word (i_1..i_l) and omega with x = s_{i_1} ... s_{i_l} omega."""
        key = x.key()
        hit = self._rw_cache.get(key)
        if hit is not None:
            return hit
        word: list[int] = []
        cur = x
        while True:
            i = self.left_descent(cur)
            if i is None:
                break
            word.append(i)
            cur = self.simple(i) * cur
        assert self.length(cur) == 0
        out = (tuple(word), cur)
        self._rw_cache[key] = out
        return out

    def assemble(self, word: Sequence[int], omega: AffineWeylElement | None = None) -> AffineWeylElement:
        cur = omega if omega is not None else self.identity()
        for i in reversed(word):
            cur = self.simple(i) * cur
        return cur

    def finite_reduced_word(self, u_idx: int) -> tuple[int, ...]:
        """Reduced word of a finite Weyl element over the simple roots."""
        return self.w0_words[u_idx]

    # -- Omega ------------------------------------------------------------------

    def omega_of(self, x: AffineWeylElement) -> AffineWeylElement:
        return self.reduced_word(x)[1]

    def kappa(self, x: AffineWeylElement) -> tuple[int, ...]:
        """Kottwitz projection to pi_1 = lattice / coroot lattice."""
        return self.datum.pi1.project(x.lam)

    def s_permutation_of(self, omega: AffineWeylElement) -> tuple[int, ...]:
        """Permutation of the affine simple set induced by conjugation."""
        inv = omega.inverse()
        perm = []
        for s in self.simple_affine:
            conj = omega * s.element * inv
            idx = next(
                (t.index for t in self.simple_affine if t.element == conj), None
            )
            if idx is None:
                raise DatumMismatch("element does not normalize the base alcove")
            perm.append(idx)
        return tuple(perm)

    def omega_elt(self, x: AffineWeylElement) -> OmegaElt:
        assert self.length(x) == 0
        return OmegaElt(x, self.s_permutation_of(x), self.kappa(x))

    def omega_elements(self) -> list[OmegaElt]:
        """One length-zero element per torsion class of pi_1, plus one
        designated generator per free class."""
        pi1 = self.datum.pi1
        out = []
        for coords in pi1.torsion_elements():
            lam = pi1.lift(coords)
            out.append(self.omega_elt(self.omega_of(self.translation(lam))))
        for coords in pi1.free_generator_coords():
            lam = pi1.lift(coords)
            out.append(self.omega_elt(self.omega_of(self.translation(lam))))
        return out

    # -- Bruhat order ------------------------------------------------------------

    def bruhat_leq(self, x: AffineWeylElement, y: AffineWeylElement) -> bool:
        """Descent recursion; order only relates elements of one W_a-coset."""
        if self.kappa(x) != self.kappa(y):
            return False
        return self._bruhat(x.lam, x.u_idx, y.lam, y.u_idx)

    def _bruhat(self, xl: IntVec, xu: int, yl: IntVec, yu: int) -> bool:
        if xl == yl and xu == yu:
            return True
        key = (xl, xu, yl, yu)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        ly = self.length_of(yl, yu)
        lx = self.length_of(xl, xu)
        if lx >= ly:
            self._bruhat_cache[key] = False
            return False
        # ly > lx >= 0, so y has a descent.
        for s in self.simple_affine:
            sy = s.element * AffineWeylElement(self, yl, yu)
            if self.length(sy) < ly:
                sx = s.element * AffineWeylElement(self, xl, xu)
                if self.length(sx) < lx:
                    res = self._bruhat(sx.lam, sx.u_idx, sy.lam, sy.u_idx)
                else:
                    res = self._bruhat(xl, xu, sy.lam, sy.u_idx)
                self._bruhat_cache[key] = res
                return res
        raise AssertionError("positive-length element without descent")

    def covers_below(self, x: AffineWeylElement) -> list[tuple[AffineWeylElement, tuple[int, ...]]]:
        """Elements covered by x, each with an inherited reduced word.

        Deleting one letter from a fixed reduced word reaches every
        cover (strong exchange); deletions that fail to drop the length
        by exactly one are discarded.
        """
        word, omega = self.reduced_word(x)
        n = len(word)
        if n == 0:
            return []
        suffixes = [None] * (n + 1)
        suffixes[n] = omega
        for j in range(n - 1, -1, -1):
            suffixes[j] = self.simple(word[j]) * suffixes[j + 1]
        prefixes = [self.identity()]
        for j in range(n):
            prefixes.append(prefixes[-1] * self.simple(word[j]))
        out = []
        seen = set()
        for j in range(n):
            cand = prefixes[j] * suffixes[j + 1]
            if cand.key() in seen:
                continue
            if self.length(cand) == n - 1:
                seen.add(cand.key())
                sub = word[:j] + word[j + 1:]
                if cand.key() not in self._rw_cache:
                    self._rw_cache[cand.key()] = (sub, omega)
                out.append((cand, sub))
        return out

    def bruhat_interval_below(self, y: AffineWeylElement) -> set[AffineWeylElement]:
        """All x <= y, by closing under covers."""
        seen = {y}
        frontier = [y]
        while frontier:
            nxt = []
            for w in frontier:
                for c, _word in self.covers_below(w):
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return seen

    # -- ball enumeration ----------------------------------------------------------

    def translation_candidates(self, bound: int, coset_lam: IntVec) -> list[IntVec]:
        """Lattice points in coset_lam + coroot lattice whose absolute
        root pairings sum to at most `bound`.

        A dominant point has pairing sum = sum_i h_i <lam, alpha_i> with
        h_i the height weights, so the dominant sector is a small
        simplex; the rest is its Weyl orbit.  The central component is
        pinned by the coset since coroots have none.
        """
        d = self.datum
        n = d.n_simple
        if n == 0:
            return [coset_lam]
        heights = [
            sum(d.simple_coefficients(a)[i] for a in d.positive_roots)
            for i in range(n)
        ]
        gram = tuple(
            tuple(Fraction(dot(d.simple_roots[a], d.simple_coroots[b])) for b in range(n))
            for a in range(n)
        )
        pair_base = tuple(dot(a, coset_lam) for a in d.simple_roots)
        c_base = solve_fraction(gram, pair_base)
        assert c_base is not None
        central = tuple(
            Fraction(coset_lam[r])
            - sum(c_base[j] * d.simple_coroots[j][r] for j in range(n))
            for r in range(d.rank)
        )

        dom_pairings: list[IntVec] = []

        def rec_dom(i: int, budget: int, acc: list[int]):
            if i == n:
                dom_pairings.append(tuple(acc))
                return
            for m in range(0, budget // heights[i] + 1):
                acc.append(m)
                rec_dom(i + 1, budget - m * heights[i], acc)
                acc.pop()

        rec_dom(0, bound, [])
        target_kappa = self.kappa(self.translation(coset_lam))
        seen: set[IntVec] = set()
        for m in dom_pairings:
            coeffs = solve_fraction(gram, m)
            if coeffs is None:
                continue
            lam = []
            ok = True
            for r in range(d.rank):
                v = central[r] + sum(
                    coeffs[j] * d.simple_coroots[j][r] for j in range(n)
                )
                if v.denominator != 1:
                    ok = False
                    break
                lam.append(int(v))
            if not ok:
                continue
            lam_t = tuple(lam)
            if self.kappa(self.translation(lam_t)) != target_kappa:
                continue
            stack = [lam_t]
            while stack:
                mu = stack.pop()
                if mu in seen:
                    continue
                seen.add(mu)
                for refl in d.simple_reflections:
                    nu = tuple(mat_vec(refl, mu))
                    if nu not in seen:
                        stack.append(nu)
        return sorted(seen)

    def coset_ball(
        self,
        max_length: int,
        omega: AffineWeylElement | None = None,
        budget: int = 5_000_000,
    ) -> list[AffineWeylElement]:
        """All elements of length <= max_length in the W_a-coset of omega.

        Sorted by (length, canonical key); raises BudgetExceeded rather
        than truncating.
        """
        import numpy as np

        d = self.datum
        coset_lam = omega.lam if omega is not None else (0,) * d.rank
        bound = max_length + len(d.positive_roots)
        lams = self.translation_candidates(bound, coset_lam)
        n_candidates = len(lams) * len(self.w0_list)
        if n_candidates > budget:
            raise BudgetExceeded(
                f"ball would scan {n_candidates} candidates (budget {budget})"
            )
        if not lams:
            return []
        if not d.positive_roots:
            return sorted(
                (AffineWeylElement(self, lam, 0) for lam in lams),
                key=lambda x: (0,) + x.key(),
            )
        lam_arr = np.array(lams, dtype=np.int64)  # N x rank
        roots = np.array(d.positive_roots, dtype=np.int64)  # P x rank
        pair = lam_arr @ roots.T  # N x P
        out = []
        for u_idx in range(len(self.w0_list)):
            offs = np.array(self.w0_offsets[u_idx], dtype=np.int64)
            lengths = np.abs(pair - offs).sum(axis=1)
            for j in np.nonzero(lengths <= max_length)[0]:
                out.append(AffineWeylElement(self, lams[int(j)], u_idx))
        out.sort(key=lambda x: (self.length(x),) + x.key())
        return out

    def ball(
        self,
        max_length: int,
        omegas: Iterable[AffineWeylElement] | None = None,
        budget: int = 5_000_000,
    ) -> list[AffineWeylElement]:
        """Union of coset balls; defaults to the neutral coset only."""
        if omegas is None:
            omegas = [self.identity()]
        out = []
        for om in omegas:
            out.extend(self.coset_ball(max_length, om, budget=budget))
        return out

    # -- parabolic quotients ---------------------------------------------------------

    def parabolic_is_finite(self, k_set: Sequence[int]) -> bool:
        sub = tuple(
            tuple(self.affine_cartan[i][j] for j in k_set) for i in k_set
        )
        return principal_minors_positive(sub)

    def parabolic_elements(self, k_set: Sequence[int]) -> list[AffineWeylElement]:
        """All elements of W_K; requires W_K finite."""
        if not self.parabolic_is_finite(k_set):
            raise InfiniteParabolic(f"W_K for K={sorted(k_set)} is infinite")
        gens = [self.simple(i) for i in k_set]
        seen = {self.identity().key(): self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    cand = g * w
                    if cand.key() not in seen:
                        seen[cand.key()] = cand
                        nxt.append(cand)
            frontier = nxt
        return sorted(seen.values(), key=lambda x: (self.length(x),) + x.key())

    def has_left_descent_in(self, x: AffineWeylElement, k_set: Sequence[int]) -> bool:
        lx = self.length(x)
        return any(self.length(self.simple(i) * x) < lx for i in k_set)

    def has_right_descent_in(self, x: AffineWeylElement, k_set: Sequence[int]) -> bool:
        lx = self.length(x)
        return any(self.length(x * self.simple(i)) < lx for i in k_set)

    def is_min_left_coset_rep(self, x: AffineWeylElement, k_set) -> bool:
        return not self.has_left_descent_in(x, k_set)

    def is_min_right_coset_rep(self, x: AffineWeylElement, k_set) -> bool:
        return not self.has_right_descent_in(x, k_set)

    def min_coset_reps(
        self,
        k_set: Sequence[int],
        max_length: int,
        side: str = "left",
        omegas: Iterable[AffineWeylElement] | None = None,
        budget: int = 5_000_000,
    ) -> Iterator[AffineWeylElement]:
        """Length-bounded minimal representatives.

        side='left' yields representatives of W_K \\ W (no left descent),
        side='right' those of W / W_K, side='double' those of
        W_K \\ W / W_K.
        """
        if not self.parabolic_is_finite(k_set):
            raise InfiniteParabolic(f"W_K for K={sorted(k_set)} is infinite")
        for x in self.ball(max_length, omegas, budget=budget):
            left_ok = not self.has_left_descent_in(x, k_set)
            right_ok = not self.has_right_descent_in(x, k_set)
            if side == "left" and left_ok:
                yield x
            elif side == "right" and right_ok:
                yield x
            elif side == "double" and left_ok and right_ok:
                yield x

    def min_double_coset_rep(self, x: AffineWeylElement, k_set: Sequence[int]) -> AffineWeylElement:
        """The minimal element of W_K x W_K, by peeling descents."""
        if not self.parabolic_is_finite(k_set):
            raise InfiniteParabolic(f"W_K for K={sorted(k_set)} is infinite")
        cur = x
        while True:
            lx = self.length(cur)
            for i in k_set:
                cand = self.simple(i) * cur
                if self.length(cand) < lx:
                    cur = cand
                    break
            else:
                for i in k_set:
                    cand = cur * self.simple(i)
                    if self.length(cand) < lx:
                        cur = cand
                        break
                else:
                    return cur

    # -- affine root actions ------------------------------------------------------------

    def is_positive_affine(self, root: AffineRoot) -> bool:
        if root.gradient in self.datum.positive_set:
            return root.level >= 0
        if root.gradient in self.datum.root_set:
            return root.level >= 1
        raise ValueError(f"{root.gradient} is not a root")

    def act_on_affine_root(self, x: AffineWeylElement, root: AffineRoot) -> AffineRoot:
        """Conjugation action on affine roots: the function f . x^{-1}.

        Matches element conjugation: s_{x . f} = x s_f x^{-1}; in
        particular length-zero elements permute the walls of the base
        alcove.
        """
        minv = self.w0_list[self.w0_inv[x.u_idx]]
        grad = vec_mat(root.gradient, minv)
        return AffineRoot(grad, root.level - dot(grad, x.lam))

    def preimage_affine_root(self, x: AffineWeylElement, root: AffineRoot) -> AffineRoot:
        """The root mapped onto `root` by act_on_affine_root(x, .)."""
        grad = vec_mat(root.gradient, self.w0_list[x.u_idx])
        return AffineRoot(grad, root.level + dot(root.gradient, x.lam))

    # -- serialization ---------------------------------------------------------------------

    def to_json(self, x: AffineWeylElement) -> dict:
        return {
            "lambda": list(x.lam),
            "w0_word": list(self.finite_reduced_word(x.u_idx)),
        }

    def from_json(self, obj: dict) -> AffineWeylElement:
        return self.from_finite_word(obj["lambda"], obj["w0_word"])
