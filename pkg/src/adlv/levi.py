"""Semistandard Levi data, alcove/fundamental tests, and pi_0 predictions.

For a rational direction v, the Levi M_v is spanned by the roots
vanishing on v.  Its Iwahori-Weyl group shares the full cocharacter
lattice, and its affine simple reflections are realized as the walls of
the alcove of M_v containing the base alcove; concretely that is the
same finite-simples-plus-highest-root construction as for the ambient
group, applied to the subsystem.  Since the sub-datum lives on the same
lattice, its Weyl elements are directly comparable with ambient ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .admissible import adm, in_adm, DEFAULT_BUDGET
from .affine_weyl import AffineRoot, AffineWeylElement
from .errors import InfiniteParabolic, NotStraight, TagNotInBGMu
from .fgab import FinAbGroup
from .frobenius import FrobeniusDatum, StraightClassTag
from .linalg import dot, mat_mul, mat_vec, principal_minors_positive
from .newton_bg import b_g_mu
from .root_datum import RootDatum

QVec = tuple[Fraction, ...]


def _normalize_direction(v: Sequence) -> tuple[int, ...]:
    """Scale v by a positive rational to a primitive integer vector."""
    fracs = [Fraction(x) for x in v]
    if all(f == 0 for f in fracs):
        return tuple(0 for _ in fracs)
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class LeviDatum:
    direction: tuple[int, ...]  # primitive integer representative of v
    vanishing_roots: frozenset  # Phi_{v,0}
    positive_side: frozenset  # Phi_{v,+}
    sub_datum: RootDatum  # root datum of M_v on the same lattice
    simple_affine_roots: tuple[AffineRoot, ...]  # the walls S_v

    @property
    def pi1(self) -> FinAbGroup:
        return self.sub_datum.pi1

    @property
    def semisimple_rank(self) -> int:
        return self.sub_datum.n_simple


def levi_of(d: RootDatum, v: Sequence) -> LeviDatum:
    """The Levi datum of the direction v, cached per datum."""
    key = _normalize_direction(v)
    cache = getattr(d, "_levi_cache", None)
    if cache is None:
        cache = {}
        d._levi_cache = cache
    hit = cache.get(key)
    if hit is not None:
        return hit

    vanishing = frozenset(a for a in d.root_set if dot(a, key) == 0)
    positive_side = frozenset(a for a in d.root_set if dot(a, key) > 0)
    m_positives = [a for a in d.positive_roots if a in vanishing]
    pos_set = set(m_positives)
    simples = [
        a
        for a in m_positives
        if not any(b != a and tuple(x - y for x, y in zip(a, b)) in pos_set
                   for b in pos_set)
    ]
    if simples == list(d.simple_roots):
        sub = d
    else:
        sub = RootDatum(
            d.rank,
            tuple(simples),
            tuple(d.coroot(a) for a in simples),
            name=f"{d.name or 'datum'}|v={key}",
        )
        assert set(sub.positive_roots) == pos_set, "subsystem closure mismatch"
    levi = LeviDatum(
        direction=key,
        vanishing_roots=vanishing,
        positive_side=positive_side,
        sub_datum=sub,
        simple_affine_roots=tuple(s.root for s in sub.weyl.simple_affine),
    )
    cache[key] = levi
    return levi


def sub_element(d: RootDatum, levi: LeviDatum, x: AffineWeylElement) -> AffineWeylElement:
    """Reinterpret an M_v-group element inside the ambient group."""
    return d.weyl.from_matrix(x.lam, x.mat)


# -- alcove and fundamental tests ---------------------------------------------------


def is_v_alcove(
    d: RootDatum, sigma: FrobeniusDatum, x: AffineWeylElement, v: Sequence
) -> bool:
    """The two conditions for x to be a (v, sigma)-alcove element.

    (1) the linear part of x composed with sigma fixes v;
    (2) on the positive side of v the Iwahori sits inside its
        x-conjugate: every positive (a, k) with <a, v> > 0 stays
        positive after transport through x.

    Condition (2) is stated for the dominant base alcove this package
    fixes; with the opposite alcove convention the same inequalities
    appear with the conjugation inverted.  Only levels within
    |<a, lambda>| + 1 can change positivity, so the scan window is
    provably sufficient.
    """
    w = d.weyl
    vv = tuple(Fraction(c) for c in v)
    lin = tuple(mat_vec(x.mat, mat_vec(sigma.matrix, vv)))
    if lin != vv:
        return False
    levi = levi_of(d, v)
    for a in levi.positive_side:
        shift = dot(a, x.lam)
        window = abs(shift) + 1
        for k in range(0, window + 1):
            root = AffineRoot(a, k)
            if w.is_positive_affine(root) and not w.is_positive_affine(
                w.preimage_affine_root(x, root)
            ):
                return False
    return True


def twist_map(
    d: RootDatum, sigma: FrobeniusDatum, x: AffineWeylElement
) -> Callable[[AffineRoot], AffineRoot]:
    """The action of Ad(x) . sigma on affine roots."""
    w = d.weyl

    def tau(root: AffineRoot) -> AffineRoot:
        return w.act_on_affine_root(x, sigma.on_affine_root(root))

    return tau


def is_fundamental(
    d: RootDatum, sigma: FrobeniusDatum, x: AffineWeylElement, v: Sequence
) -> bool:
    """(v, sigma)-alcove and Ad(x).sigma permutes the walls of M_v."""
    if not is_v_alcove(d, sigma, x, v):
        return False
    levi = levi_of(d, v)
    tau = twist_map(d, sigma, x)
    walls = set(levi.simple_affine_roots)
    return all(tau(beta) in walls for beta in levi.simple_affine_roots)


# -- tau orbits on the Levi walls ------------------------------------------------------


@dataclass(frozen=True)
class TauOrbit:
    roots: tuple[AffineRoot, ...]  # orbit in traversal order
    finite: bool
    longest: AffineWeylElement | None  # w0_J when finite
    orbit_type: str | None  # "A" or "B" when finite
    summing_pairs: tuple[tuple[int, int], ...]


def tau_orbits(
    d: RootDatum,
    walls: Sequence[AffineRoot],
    tau: Callable[[AffineRoot], AffineRoot],
) -> list[TauOrbit]:
    """Orbits of tau on the wall set, with finiteness and longest elements."""
    w = d.weyl
    wall_list = list(walls)
    wall_set = set(wall_list)
    seen: set[AffineRoot] = set()
    out = []
    for beta in wall_list:
        if beta in seen:
            continue
        orbit = [beta]
        seen.add(beta)
        cur = tau(beta)
        while cur != beta:
            if cur not in wall_set:
                raise ValueError("tau does not permute the walls")
            orbit.append(cur)
            seen.add(cur)
            cur = tau(cur)
        n = len(orbit)
        cart = tuple(
            tuple(dot(orbit[j].gradient, d.coroot(orbit[i].gradient)) for j in range(n))
            for i in range(n)
        )
        for i in range(n):
            for j in range(n):
                if i != j and cart[i][j] > 0:
                    raise ValueError("walls with positive pairing; not an alcove set")
        finite = principal_minors_positive(cart)
        longest = None
        if finite:
            gens = [w.reflection(r) for r in orbit]
            dist = {w.identity(): 0}
            frontier = [w.identity()]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in gens:
                        z = g * y
                        if z not in dist:
                            dist[z] = dist[y] + 1
                            nxt.append(z)
                frontier = nxt
            top = max(dist.values())
            longest_elts = [y for y, dd in dist.items() if dd == top]
            assert len(longest_elts) == 1, "finite Coxeter group has a unique top"
            longest = longest_elts[0]
            assert (longest * longest).is_identity(), "w0_J must be an involution"
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                grad_sum = tuple(
                    a + b for a, b in zip(orbit[i].gradient, orbit[j].gradient)
                )
                if grad_sum in d.root_set:
                    pairs.append((i, j))
        orbit_type = None
        if finite:
            orbit_type = "B" if pairs else "A"
        out.append(
            TauOrbit(
                roots=tuple(orbit),
                finite=finite,
                longest=longest,
                orbit_type=orbit_type,
                summing_pairs=tuple(pairs),
            )
        )
    return out


# -- J_b at the Weyl group level ------------------------------------------------------------


@dataclass(frozen=True)
class JbShadow:
    """Generator datum of the sigma-centralizer at the Weyl-group level.

    The group itself is generated by the tau-fixed points of the Levi
    Iwahori (present as a marker; not enumerable here), the longest
    elements of the finite tau-orbits, and the tau-fixed length-zero
    part of the Levi.
    """

    levi: LeviDatum
    orbits: tuple[TauOrbit, ...]  # all orbits; finite ones carry w0_J
    omega_fixed_group: FinAbGroup
    omega_fixed_reps: tuple[AffineWeylElement, ...]
    iwahori_fixed_part: bool = True


def jb_shadow(d: RootDatum, sigma: FrobeniusDatum, x: AffineWeylElement) -> JbShadow:
    if not sigma.is_straight(x):
        raise NotStraight("J_b structure is computed at straight elements")
    v = sigma.newton_vector(x)
    levi = levi_of(d, v)
    assert is_fundamental(d, sigma, x, v), "straight element must be fundamental"
    tau = twist_map(d, sigma, x)
    orbits = tau_orbits(d, levi.simple_affine_roots, tau)
    # tau acts on the length-zero part of the Levi through u_w . sigma.
    f_mat = mat_mul(x.mat, sigma.matrix)
    fixed, gens = levi.pi1.fixed_subgroup(f_mat)
    sub_w = levi.sub_datum.weyl
    reps = []
    for g in gens:
        om = sub_w.omega_of(sub_w.translation(g))
        big = sub_element(d, levi, om)
        twisted = x * sigma.apply(big) * x.inverse()
        assert twisted == big, "lift of a tau-fixed class must be tau-fixed"
        reps.append(big)
    return JbShadow(
        levi=levi,
        orbits=tuple(orbits),
        omega_fixed_group=fixed,
        omega_fixed_reps=tuple(reps),
    )


# -- essential noncentrality and pi_0 predictions ---------------------------------------------


def essentially_noncentral(
    d: RootDatum, sigma: FrobeniusDatum | None, mu: Sequence[int]
) -> bool:
    """True iff mu pairs nontrivially with each sigma-orbit of Dynkin
    components; False for a torus."""
    if not d.components:
        return False
    if sigma is None or sigma.residually_split:
        comp_perm = tuple(range(len(d.components)))
    else:
        comp_perm = []
        for comp in d.components:
            image = sigma.on_affine_root(AffineRoot(d.simple_roots[comp[0]], 0))
            comp_perm.append(d.component_of_root(image.gradient))
        comp_perm = tuple(comp_perm)
    seen = set()
    for start in range(len(d.components)):
        if start in seen:
            continue
        orbit = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = comp_perm[cur]
        orbit_set = set(orbit)
        if not any(
            d.component_of_root(a) in orbit_set and dot(a, mu) != 0
            for a in d.positive_roots
        ):
            return False
    return True


@dataclass(frozen=True)
class Pi0Stratum:
    element: AffineWeylElement
    word: tuple[int, ...]
    newton: QVec
    levi_rank: int
    pi1_levi: FinAbGroup
    essentially_nontrivial: bool
    translation_part_admissible: bool


@dataclass(frozen=True)
class Pi0Prediction:
    case: str  # basic | nonbasic-residually-split | unsupported
    group: FinAbGroup | None
    strata: tuple[Pi0Stratum, ...]
    level: tuple[int, ...]  # the parahoric subset K
    upper_bound_only: bool
    note: str = ""


def pi0_predict(
    d: RootDatum,
    sigma: FrobeniusDatum,
    mu: Sequence[int],
    b_tag: StraightClassTag,
    k_set: Sequence[int] = (),
    budget: int = DEFAULT_BUDGET,
) -> Pi0Prediction:
    """Connected-component prediction for one class of B(G, {mu}).

    Basic noncentral classes get the sigma-fixed fundamental group,
    exact at every parahoric level.  Nonbasic classes over a residually
    split group get the disjoint union of Levi fundamental groups
    indexed by the straight elements of the class; that is the domain of
    a surjection, hence only an upper bound, and is marked as such.
    """
    elements = b_g_mu(d, sigma, mu, budget=budget)
    match = next((e for e in elements if e.tag == b_tag), None)
    if match is None:
        raise TagNotInBGMu(f"{b_tag} not in B(G, mu)")
    k_tuple = tuple(sorted(set(k_set)))
    if k_tuple and not d.weyl.parabolic_is_finite(k_tuple):
        raise InfiniteParabolic(f"W_K infinite for K={list(k_tuple)}")

    if match.basic:
        if essentially_noncentral(d, sigma, mu):
            fixed, _gens = sigma.pi1_fixed
            return Pi0Prediction(
                case="basic",
                group=fixed,
                strata=(),
                level=k_tuple,
                upper_bound_only=False,
                note="valid at every parahoric level",
            )
        return Pi0Prediction(
            case="unsupported",
            group=None,
            strata=(),
            level=k_tuple,
            upper_bound_only=False,
            note="mu is essentially central; outside the basic theorem",
        )

    if not sigma.residually_split:
        return Pi0Prediction(
            case="unsupported",
            group=None,
            strata=(),
            level=k_tuple,
            upper_bound_only=False,
            note="nonbasic prediction needs a residually split group",
        )

    aset = adm(d, mu, budget=budget)
    assert aset.elements is not None
    w = d.weyl
    members = [
        x
        for x in sigma.straight_elements_in(aset.elements)
        if sigma.tag_of(x) == b_tag
    ]
    if k_tuple:
        members = [x for x in members if not w.has_left_descent_in(x, k_tuple)]
    strata = []
    for x in members:
        nu = sigma.newton_vector(x)
        levi = levi_of(d, nu)
        word, _ = w.reduced_word(x)
        strata.append(
            Pi0Stratum(
                element=x,
                word=word,
                newton=nu,
                levi_rank=levi.semisimple_rank,
                pi1_levi=levi.pi1,
                essentially_nontrivial=essentially_noncentral(
                    levi.sub_datum, None, x.lam
                ),
                translation_part_admissible=in_adm(d, mu, w.translation(x.lam)),
            )
        )
    strata.sort(key=lambda s: (len(s.word), s.word))
    return Pi0Prediction(
        case="nonbasic-residually-split",
        group=None,
        strata=tuple(strata),
        level=k_tuple,
        upper_bound_only=True,
        note="upper bound (surjection domain), not an exact pi_0",
    )
