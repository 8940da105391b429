"""Preset catalog: the bit-exact group data used by tests and the CLI.

Each preset fixes a root datum (lattice, simple roots, simple coroots),
the named Frobenius options available for it, and a small grid of test
cocharacters.  Simply connected presets are generated from their Cartan
matrix in the coroot basis; the others carry explicit lattices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownPreset
from .linalg import Mat, identity_matrix
from .root_datum import RootDatum, from_cartan_matrix

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class Preset:
    name: str
    datum: RootDatum
    sigmas: dict  # name -> lattice automorphism matrix
    mu_grid: tuple  # (label, cocharacter) pairs
    description: str = ""
    aliases: tuple[str, ...] = field(default=())

    def sigma_matrix(self, name: str) -> Mat:
        if name not in self.sigmas:
            raise UnknownPreset(
                f"preset {self.name} has no sigma option {name!r}; "
                f"available: {sorted(self.sigmas)}"
            )
        return self.sigmas[name]


def _perm_matrix(images: dict[int, int], n: int) -> Mat:
    """Matrix sending basis vector j to basis vector images.get(j, j)."""
    cols = [images.get(j, j) for j in range(n)]
    return tuple(tuple(1 if cols[j] == i else 0 for j in range(n)) for i in range(n))


def _gu_odd(m: int) -> RootDatum:
    """Type C_m plus a central similitude direction; rank m + 1.

    The affine Weyl group is Z^m semidirect the hyperoctahedral group of
    order 2^m m!; the fundamental group is infinite cyclic, generated by
    the class of the central vector.
    """
    rank = m + 1
    roots = []
    coroots = []
    for i in range(m - 1):
        r = [0] * rank
        r[i], r[i + 1] = 1, -1
        roots.append(tuple(r))
        coroots.append(tuple(r))
    last_root = [0] * rank
    last_root[m - 1] = 2
    last_coroot = [0] * rank
    last_coroot[m - 1] = 1
    roots.append(tuple(last_root))
    coroots.append(tuple(last_coroot))
    return RootDatum(rank, roots, coroots, name=f"GU_odd({m})")


def _build_catalog() -> list[Preset]:
    out: list[Preset] = []

    def add(p: Preset):
        out.append(p)

    a1 = from_cartan_matrix(((2,),), name="A1_sc")
    add(Preset(
        "A1_sc", a1,
        {"split": identity_matrix(1)},
        (("quasi-minuscule", (1,)),),
        "SL2: lattice = coroot lattice",
    ))

    a1ad = RootDatum(1, ((1,),), ((2,),), name="A1_ad")
    add(Preset(
        "A1_ad", a1ad,
        {"split": identity_matrix(1)},
        (("minuscule", (1,)), ("quasi-minuscule", (2,))),
        "PGL2: lattice = coweight lattice, pi1 = Z/2",
    ))

    a2 = from_cartan_matrix(((2, -1), (-1, 2)), name="A2_sc")
    add(Preset(
        "A2_sc", a2,
        {"split": identity_matrix(2), "flip": _perm_matrix({0: 1, 1: 0}, 2)},
        (("quasi-minuscule", (1, 1)),),
        "SL3 with optional diagram flip",
    ))

    c2 = RootDatum(2, ((1, -1), (0, 2)), ((1, -1), (0, 1)), name="C2_sc")
    add(Preset(
        "C2_sc", c2,
        {"split": identity_matrix(2)},
        (("quasi-minuscule", (1, 0)), ("small", (1, 1))),
        "Sp4 in the standard symplectic coordinates",
        aliases=("B2_sc",),
    ))

    d4_cartan = (
        (2, -1, 0, 0),
        (-1, 2, -1, -1),
        (0, -1, 2, 0),
        (0, -1, 0, 2),
    )
    d4 = from_cartan_matrix(d4_cartan, name="D4_sc")
    add(Preset(
        "D4_sc", d4,
        {
            "split": identity_matrix(4),
            "triality": _perm_matrix({0: 2, 2: 3, 3: 0}, 4),
        },
        (("quasi-minuscule", (1, 2, 1, 1)),),
        "Spin8 with optional triality rotating the outer nodes",
    ))

    g2 = from_cartan_matrix(((2, -1), (-3, 2)), name="G2_sc")
    add(Preset(
        "G2_sc", g2,
        {"split": identity_matrix(2)},
        (("quasi-minuscule", g2.quasi_minuscule()),),
        "G2: trivial center, 6 positive roots",
    ))

    gl2 = RootDatum(2, ((1, -1),), ((1, -1),), name="GL2")
    add(Preset(
        "GL2", gl2,
        {"split": identity_matrix(2)},
        (("minuscule", (1, 0)), ("quasi-minuscule", (1, -1))),
        "GL2: pi1 = Z, Omega infinite cyclic",
        aliases=("GL-type",),
    ))

    a1a1 = RootDatum(2, ((2, 0), (0, 2)), ((1, 0), (0, 1)), name="A1xA1_sc")
    add(Preset(
        "A1xA1_sc", a1a1,
        {"split": identity_matrix(2), "swap": _perm_matrix({0: 1, 1: 0}, 2)},
        (("quasi-minuscule", (1, 1)), ("factor1", (1, 0))),
        "SL2 x SL2 with optional factor swap",
    ))

    for m in (1, 2, 3):
        gu = _gu_odd(m)
        shimura = tuple([1] + [0] * (m - 1) + [1])
        add(Preset(
            f"GU_odd({m})", gu,
            {"split": identity_matrix(m + 1)},
            (("shimura", shimura), ("quasi-minuscule", gu.quasi_minuscule())),
            "odd unitary similitude shadow: C_m plus central direction",
            aliases=(f"GU_odd_{m}",),
        ))

    return out


_CATALOG: list[Preset] = _build_catalog()
_BY_NAME: dict[str, Preset] = {}
for _p in _CATALOG:
    _BY_NAME[_p.name] = _p
    for _a in _p.aliases:
        _BY_NAME[_a] = _p


def catalog() -> list[Preset]:
    """Stable, ordered preset list."""
    return list(_CATALOG)


def preset(name: str) -> Preset:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown preset {name!r}; known: {[p.name for p in _CATALOG]}"
        ) from None
