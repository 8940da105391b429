"""Frobenius actions on the extended affine Weyl group.

A Frobenius datum is a lattice automorphism fixing the base alcove plus
the residue cardinality q.  On top of it: the twisted conjugation graph
w -> s w sigma(s), Newton points, the Kottwitz projection, straightness,
and reduction to minimal length elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .affine_weyl import AffineRoot, AffineWeylElement
from .errors import BallExhausted, DatumMismatch, PeriodOverflow, SchemaError
from .fgab import FinAbGroup
from .linalg import (
    Mat,
    dot,
    identity_matrix,
    mat_inv_unimodular,
    mat_mul,
    mat_vec,
    matrix_order,
    vec_mat,
)
from .root_datum import RootDatum

QVec = tuple[Fraction, ...]


class FrobeniusDatum:
    """Length-preserving automorphism of (W, S) given by a lattice matrix."""

    def __init__(self, datum: RootDatum, matrix: Mat | None = None, q: int = 2):
        self.datum = datum
        self.matrix: Mat = (
            tuple(tuple(int(x) for x in row) for row in matrix)
            if matrix is not None
            else identity_matrix(datum.rank)
        )
        if q < 2:
            raise SchemaError("/q: residue cardinality must be at least 2")
        self.q = q
        self.matrix_inv = mat_inv_unimodular(self.matrix)
        self._validate()
        self.residually_split = self.matrix == identity_matrix(datum.rank)
        self._newton_cache: dict[int, tuple[Mat, int]] = {}
        self._u_perm: dict[int, int] = {}
        self._plateau_cache: dict[AffineWeylElement, "_PlateauInfo"] = {}

    def _validate(self) -> None:
        d = self.datum
        # The transpose-inverse action must permute the roots and be
        # compatible with coroots; together with fixing the base alcove
        # this makes sigma an automorphism of (W, S).
        for a in d.root_set:
            image = vec_mat(a, self.matrix_inv)
            if image not in d.root_set:
                raise SchemaError(f"/lattice_matrix: image of root {a} is not a root")
            if d.coroot_table[image] != tuple(mat_vec(self.matrix, d.coroot_table[a])):
                raise SchemaError(
                    f"/lattice_matrix: coroot of {a} transforms inconsistently"
                )
        for s in d.weyl.simple_affine:
            img = self.on_affine_root(s.root)
            if img not in {t.root for t in d.weyl.simple_affine}:
                raise SchemaError(
                    "/lattice_matrix: automorphism does not fix the base alcove"
                )

    @cached_property
    def order(self) -> int:
        try:
            return matrix_order(self.matrix, cap=100000)
        except ValueError as exc:
            raise PeriodOverflow(str(exc)) from exc

    @cached_property
    def s_permutation(self) -> tuple[int, ...]:
        w = self.datum.weyl
        by_root = {s.root: s.index for s in w.simple_affine}
        return tuple(by_root[self.on_affine_root(s.root)] for s in w.simple_affine)

    def on_affine_root(self, root: AffineRoot) -> AffineRoot:
        return AffineRoot(vec_mat(root.gradient, self.matrix_inv), root.level)

    def on_vector(self, v: Sequence) -> tuple:
        return tuple(mat_vec(self.matrix, v))

    def _perm_of(self, u_idx: int) -> int:
        hit = self._u_perm.get(u_idx)
        if hit is not None:
            return hit
        w = self.datum.weyl
        m = mat_mul(mat_mul(self.matrix, w.w0_list[u_idx]), self.matrix_inv)
        idx = w.w0_index[m]
        self._u_perm[u_idx] = idx
        return idx

    def apply(self, x: AffineWeylElement) -> AffineWeylElement:
        w = self.datum.weyl
        if x.group is not w and x.group.datum != self.datum:
            raise DatumMismatch("element and Frobenius live over different data")
        return AffineWeylElement(w, tuple(mat_vec(self.matrix, x.lam)), self._perm_of(x.u_idx))

    # -- Newton and Kottwitz ---------------------------------------------------

    def _newton_data(self, u_idx: int) -> tuple[Mat, int]:
        """(P, N) with nu = P lam / N for elements with finite part u.

        Writing B = u . sigma, the twisted power w sigma(w) ... collapses
        to translation by sum_{j<N} B^j lam once B^N = 1 with N a
        multiple of the order of sigma.
        """
        hit = self._newton_cache.get(u_idx)
        if hit is not None:
            return hit
        w = self.datum.weyl
        n0 = self.order
        b = mat_mul(w.w0_list[u_idx], self.matrix)
        ident = identity_matrix(self.datum.rank)
        cap = n0 * len(w.w0_list)
        power = ident
        acc = [[0] * self.datum.rank for _ in range(self.datum.rank)]
        n = 0
        while n < cap:
            for i in range(self.datum.rank):
                for j in range(self.datum.rank):
                    acc[i][j] += power[i][j]
            power = mat_mul(power, b)
            n += 1
            if n % n0 == 0 and power == ident:
                res = (tuple(tuple(r) for r in acc), n)
                self._newton_cache[u_idx] = res
                return res
        raise PeriodOverflow(f"no period below {cap}; datum is inconsistent")

    def newton_vector(self, x: AffineWeylElement) -> QVec:
        """The raw (not dominantized) Newton vector of x."""
        p, n = self._newton_data(x.u_idx)
        return tuple(Fraction(c, n) for c in mat_vec(p, x.lam))

    def newton_point(self, x: AffineWeylElement) -> "NewtonPoint":
        p, n = self._newton_data(x.u_idx)
        raw = tuple(Fraction(c, n) for c in mat_vec(p, x.lam))
        dom, _wit = self.datum.dominant_rep(raw)
        sigma_dom, _ = self.datum.dominant_rep(self.on_vector(dom))
        assert sigma_dom == dom, "Newton point must be sigma-invariant"
        return NewtonPoint(dom, n)

    def kottwitz(self, x: AffineWeylElement) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(class in pi_1, class in sigma-coinvariants of pi_1)."""
        k0 = self.datum.pi1.project(x.lam)
        ks = self.pi1_coinvariants.project(x.lam)
        return k0, ks

    @cached_property
    def pi1_coinvariants(self) -> FinAbGroup:
        return self.datum.pi1.coinvariants(self.matrix)

    @cached_property
    def pi1_fixed(self) -> tuple[FinAbGroup, list]:
        return self.datum.pi1.fixed_subgroup(self.matrix)

    def is_straight(self, x: AffineWeylElement) -> bool:
        """Exact test of l(x) = <nu_bar, 2 rho>."""
        p, n = self._newton_data(x.u_idx)
        num = mat_vec(p, x.lam)
        total = 0
        for a in self.datum.positive_roots:
            total += abs(dot(a, num))
        return total == n * self.datum.weyl.length(x)

    def tag_of(self, x: AffineWeylElement) -> "StraightClassTag":
        np_ = self.newton_point(x)
        k0, ks = self.kottwitz(x)
        return StraightClassTag(np_.nu_bar, k0, ks)

    # -- reduction -------------------------------------------------------------

    def conj_step(self, i: int, x: AffineWeylElement) -> AffineWeylElement:
        """s_i x sigma(s_i)."""
        w = self.datum.weyl
        s = w.simple(i)
        return s * x * self.apply(s)

    def plateau(
        self, x: AffineWeylElement, node_budget: int = 200_000
    ) -> dict[AffineWeylElement, tuple]:
        """Closure of x under equal-length twisted conjugation steps.

        Returns element -> path, where a path is a tuple of simple
        indices applied from x.  Raises BallExhausted past the budget.
        """
        w = self.datum.weyl
        lx = w.length(x)
        out = {x: ()}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for s in w.simple_affine:
                    z = self.conj_step(s.index, y)
                    if w.length(z) == lx and z not in out:
                        out[z] = out[y] + (s.index,)
                        nxt.append(z)
                        if len(out) > node_budget:
                            raise BallExhausted(
                                f"plateau exceeds {node_budget} nodes"
                            )
            frontier = nxt
        return out

    def _plateau_info(self, x: AffineWeylElement, node_budget: int) -> "_PlateauInfo":
        """Shared, cached view of the equal-length plateau through x."""
        hit = self._plateau_cache.get(x)
        if hit is not None:
            return hit
        w = self.datum.weyl
        lx = w.length(x)
        members = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for s in w.simple_affine:
                    z = self.conj_step(s.index, y)
                    if w.length(z) == lx and z not in members:
                        members.add(z)
                        nxt.append(z)
                        if len(members) > node_budget:
                            raise BallExhausted(f"plateau exceeds {node_budget} nodes")
            frontier = nxt
        descent = None
        for y in sorted(members, key=lambda e: e.key()):
            for s in w.simple_affine:
                if w.length(self.conj_step(s.index, y)) < lx:
                    descent = (y, s.index)
                    break
            if descent:
                break
        info = _PlateauInfo(frozenset(members), descent)
        for m in members:
            self._plateau_cache[m] = info
        return info

    def _route_within(
        self, members: frozenset, start: AffineWeylElement, goal: AffineWeylElement
    ) -> list[int]:
        """Twisted-conjugation steps from start to goal inside one plateau."""
        if start == goal:
            return []
        w = self.datum.weyl
        prev: dict[AffineWeylElement, tuple[AffineWeylElement, int]] = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for y in frontier:
                for s in w.simple_affine:
                    z = self.conj_step(s.index, y)
                    if z in members and z not in prev:
                        prev[z] = (y, s.index)
                        if z == goal:
                            steps = []
                            cur = z
                            while prev[cur] is not None:
                                p, i = prev[cur]
                                steps.append(i)
                                cur = p
                            return steps[::-1]
                        nxt.append(z)
            frontier = nxt
        raise AssertionError("plateau is connected by construction")

    def reduce_to_minimal(
        self,
        x: AffineWeylElement,
        node_budget: int = 200_000,
        want_path: bool = True,
    ) -> tuple[AffineWeylElement, "ReductionPath | None"]:
        """Walk w -> s w sigma(s) without ever increasing length until no
        further decrease is possible anywhere on the final plateau.

        Descent choices are canonical (least plateau member, lowest
        simple index), so the walk is deterministic; an element that is
        already minimal comes back unchanged with an empty path.
        """
        cur = x
        path: list[tuple[int, AffineWeylElement]] = []

        def walk(to: AffineWeylElement, members: frozenset):
            nonlocal cur
            if want_path:
                for i in self._route_within(members, cur, to):
                    cur = self.conj_step(i, cur)
                    path.append((i, cur))
            else:
                cur = to

        while True:
            info = self._plateau_info(cur, node_budget)
            if info.descent is None:
                return cur, (ReductionPath(x, tuple(path)) if want_path else None)
            y, i = info.descent
            walk(y, info.members)
            cur = self.conj_step(i, cur)
            if want_path:
                path.append((i, cur))

    # -- filters over finite sets ------------------------------------------------

    def straight_elements_in(
        self, elements: Iterable[AffineWeylElement]
    ) -> list[AffineWeylElement]:
        out = [x for x in elements if self.is_straight(x)]
        out.sort(key=lambda e: (self.datum.weyl.length(e),) + e.key())
        return out

    def straight_class_tags(
        self, elements: Iterable[AffineWeylElement]
    ) -> list[tuple["StraightClassTag", list[AffineWeylElement]]]:
        """Straight elements grouped by (Newton point, Kottwitz) tag."""
        groups: dict[StraightClassTag, list[AffineWeylElement]] = {}
        for x in self.straight_elements_in(elements):
            groups.setdefault(self.tag_of(x), []).append(x)
        return sorted(
            groups.items(),
            key=lambda kv: (self.datum.pairing_height(kv[0].nu_bar), kv[0].nu_bar),
        )

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        return {"lattice_matrix": [list(r) for r in self.matrix], "q": self.q}

    @classmethod
    def from_json(cls, datum: RootDatum, obj: dict) -> "FrobeniusDatum":
        if not isinstance(obj, dict):
            raise SchemaError("/: sigma spec must be an object")
        mat = obj.get("lattice_matrix")
        if mat is None:
            raise SchemaError("/lattice_matrix: missing")
        if len(mat) != datum.rank:
            raise SchemaError(f"/lattice_matrix: expected {datum.rank} rows")
        for i, row in enumerate(mat):
            if len(row) != datum.rank:
                raise SchemaError(f"/lattice_matrix/{i}: expected {datum.rank} entries")
            for j, x in enumerate(row):
                if not isinstance(x, int):
                    raise SchemaError(f"/lattice_matrix/{i}/{j}: expected integer")
        q = obj.get("q", 2)
        if not isinstance(q, int):
            raise SchemaError("/q: expected integer")
        return cls(datum, tuple(tuple(r) for r in mat), q)

    def __repr__(self):
        kind = "split" if self.residually_split else f"order {self.order}"
        return f"Frobenius({self.datum.name or 'datum'}, {kind}, q={self.q})"


@dataclass(frozen=True)
class _PlateauInfo:
    members: frozenset
    descent: tuple | None  # (member, simple index) or None


@dataclass(frozen=True)
class NewtonPoint:
    nu_bar: QVec
    period: int


@dataclass(frozen=True)
class StraightClassTag:
    """(Newton point, Kottwitz class) pair; separates straight classes."""

    nu_bar: QVec
    kappa0: tuple[int, ...]
    kappa_sigma: tuple[int, ...] = field(compare=False)

    def __repr__(self):
        return f"Tag(nu={'/'.join(str(c) for c in self.nu_bar)}, k={self.kappa0})"


@dataclass(frozen=True)
class ReductionPath:
    """Witness for w ->_sigma w': twisted conjugation steps, lengths
    never increasing."""

    start: AffineWeylElement
    steps: tuple[tuple[int, AffineWeylElement], ...]

    def end(self) -> AffineWeylElement:
        return self.steps[-1][1] if self.steps else self.start

    def verify(self, sigma: FrobeniusDatum) -> bool:
        w = sigma.datum.weyl
        cur = self.start
        for i, after in self.steps:
            nxt = sigma.conj_step(i, cur)
            if nxt != after or w.length(nxt) > w.length(cur):
                return False
            cur = nxt
        return True
