"""Independent oracles used by the test suite.

Everything here recomputes quantities by a different route than the
package: lengths by counting separating hyperplanes, Bruhat order by
subword enumeration, admissibility by the naive all-orbit scan.  The
oracles deliberately avoid the code paths they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from adlv.affine_weyl import AffineRoot, AffineWeylElement
from adlv.linalg import dot, mat_vec


def length_oracle(w, x: AffineWeylElement) -> int:
    """Number of affine hyperplanes separating the base alcove from its
    image, counted as positive affine roots made negative by transport
    through x."""
    d = w.datum
    count = 0
    bound = max(
        (abs(dot(a, x.lam)) for a in d.positive_roots), default=0
    ) + 2
    for a in d.root_set:
        for k in range(-bound, bound + 1):
            root = AffineRoot(a, k)
            if not w.is_positive_affine(root):
                continue
            if not w.is_positive_affine(w.preimage_affine_root(x, root)):
                count += 1
    return count


def subword_set(w, y: AffineWeylElement) -> set:
    """All elements <= y: subwords of one reduced word times the same
    length-zero part."""
    word, omega = w.reduced_word(y)
    out = set()
    n = len(word)
    for r in range(n + 1):
        for positions in combinations(range(n), r):
            sub = tuple(word[i] for i in positions)
            out.add(w.assemble(sub, omega))
    return out


def naive_in_adm(d, mu, x) -> bool:
    """Membership scan over every maximal translation, no pruning."""
    from adlv.admissible import maximal_translations

    w = d.weyl
    return any(w.bruhat_leq(x, t) for t in maximal_translations(d, mu))


def conjugation_orbit_min(sigma, x, buffer: int = 2) -> int:
    """Minimal length over the twisted conjugation orbit of x, explored
    through elements of length at most l(x) + buffer."""
    w = sigma.datum.weyl
    cap = w.length(x) + buffer
    best = w.length(x)
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for s in w.simple_affine:
                z = sigma.conj_step(s.index, y)
                if w.length(z) <= cap and z not in seen:
                    seen.add(z)
                    best = min(best, w.length(z))
                    nxt.append(z)
        frontier = nxt
    return best


def v_alcove_oracle(d, sigma, x, v, window: int = 40) -> bool:
    """Same inequalities as is_v_alcove but with a brutally large window
    and no per-root bound reasoning."""
    w = d.weyl
    vv = tuple(Fraction(c) for c in v)
    if tuple(mat_vec(x.mat, mat_vec(sigma.matrix, vv))) != vv:
        return False
    for a in d.root_set:
        if dot(a, vv) <= 0:
            continue
        for k in range(-window, window + 1):
            root = AffineRoot(a, k)
            if w.is_positive_affine(root) and not w.is_positive_affine(
                w.preimage_affine_root(x, root)
            ):
                return False
    return True


def dominance_grid_oracle(d, lam, lam2, max_num: int = 12, max_den: int = 4) -> bool:
    """Decide lam <= lam2 by scanning a bounded rational coefficient grid
    for the coroot combination."""
    diff = tuple(Fraction(b) - Fraction(a) for a, b in zip(lam, lam2))
    n = d.n_simple
    grid = sorted(
        {Fraction(k, den) for den in range(1, max_den + 1) for k in range(0, max_num * den + 1)}
    )

    def rec(i, acc):
        if i == n:
            return all(x == 0 for x in acc)
        for c in grid:
            nxt = tuple(
                acc[r] - c * d.simple_coroots[i][r] for r in range(d.rank)
            )
            if rec(i + 1, nxt):
                return True
        return False

    return rec(0, diff)
