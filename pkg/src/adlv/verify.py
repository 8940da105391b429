"""Property verification suites.

Each check sweeps a structural claim over the preset catalog at a configurable
scale and reports counts plus explicit violation witnesses.  The CLI
`verify` command and the acceptance tests both run these; reports are
deterministic (sorted iteration, no timestamps, exact rationals as
strings).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .admissible import (
    adm,
    in_adm,
    verify_s_tau_membership,
    verify_straight_class_containment,
)
from .errors import SingularOperator
from .frobenius import FrobeniusDatum
from .levi import is_fundamental, levi_of, sub_element, tau_orbits, twist_map
from .linalg import identity_matrix, mat_mul, mat_vec
from .newton_bg import b_g_mu
from .picard import PicardLattice, PicClass, descent_certificate, is_ample
from .presets import Preset, catalog

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class VerifyScales:
    reduction_length: int = 8
    reduction_buffer: int = 2
    tag_length: int = 12
    fundamental_length: int = 8
    fixed_point_length: int = 10
    picard_length: int = 8
    picard_qs: tuple = (2, 3, 5)
    ample_samples: int = 1000
    levi_ball_length: int = 4
    levi_pair_cap: int = 120
    budget: int = 5_000_000

    @classmethod
    def quick(cls) -> "VerifyScales":
        return cls(
            reduction_length=4,
            reduction_buffer=2,
            tag_length=6,
            fundamental_length=5,
            fixed_point_length=6,
            picard_length=4,
            picard_qs=(2,),
            ample_samples=100,
            levi_ball_length=3,
            levi_pair_cap=60,
        )


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _sigmas(p: Preset, q: int = 2) -> list[tuple[str, FrobeniusDatum]]:
    return [
        (name, FrobeniusDatum(p.datum, p.sigmas[name], q=q))
        for name in sorted(p.sigmas)
    ]


def _designated_omegas(d) -> list:
    return [o.element for o in d.weyl.omega_elements()]


# -- end-to-end rank-one pipeline -----------------------------------------------------------------


def check_sl2_pipeline(scales: VerifyScales) -> dict:
    """End-to-end SL2 numbers: sizes, straight set, predictions."""
    from .levi import pi0_predict
    from .presets import preset

    p = preset("A1_sc")
    d = p.datum
    w = d.weyl
    sigma = FrobeniusDatum(d)
    aset = adm(d, (1,), budget=scales.budget)
    straights = sigma.straight_elements_in(aset.elements)
    bg = b_g_mu(d, sigma, (1,), budget=scales.budget)
    basic_pred = pi0_predict(d, sigma, (1,), bg[0].tag, budget=scales.budget)
    nonbasic_pred = pi0_predict(d, sigma, (1,), bg[-1].tag, budget=scales.budget)
    got = {
        "adm_size": len(aset),
        "tau_is_identity": aset.tau.element.is_identity(),
        "straights": sorted(w.to_json(x)["lambda"] + [x.u_idx] for x in straights),
        "bg_size": len(bg),
        "basic_group": basic_pred.group.describe(),
        "nonbasic_domain": sorted(
            s.pi1_levi.describe() for s in nonbasic_pred.strata
        ),
    }
    want = {
        "adm_size": 5,
        "tau_is_identity": True,
        "straights": [[-1, 0], [0, 0], [1, 0]],
        "bg_size": 2,
        "basic_group": "0",
        "nonbasic_domain": ["Z", "Z"],
    }
    return {
        "name": "sl2_pipeline",
        "pass": got == want,
        "got": got,
        "want": want,
    }


# -- admissible-set lemmas --------------------------------------------------------------


def check_straight_class_containment(scales: VerifyScales) -> dict:
    """Straight classes meeting the admissible set stay inside it
    (ordinary conjugation, every preset, every grid cocharacter)."""
    runs = []
    ok = True
    for p in catalog():
        sigma = FrobeniusDatum(p.datum)
        for label, mu in p.mu_grid:
            rep = verify_straight_class_containment(
                p.datum, sigma, mu, budget=scales.budget
            )
            ok = ok and rep["pass"]
            runs.append(
                {
                    "preset": p.name,
                    "mu": f"{label}:{list(mu)}",
                    "classes": rep["straight_classes"],
                    "checked": rep["straight_elements_checked"],
                    "violations": rep["violations"],
                }
            )
    return {"name": "straight_class_containment", "pass": ok, "runs": runs}


def check_wall_times_tau(scales: VerifyScales) -> dict:
    """s_j tau in Adm for connected diagrams and noncentral mu."""
    runs = []
    ok = True
    for p in catalog():
        if len(p.datum.components) != 1:
            continue
        sigma = FrobeniusDatum(p.datum)
        for label, mu in p.mu_grid:
            if p.datum.is_central(mu):
                continue
            rep = verify_s_tau_membership(p.datum, sigma, mu, budget=scales.budget)
            ok = ok and rep["pass"]
            runs.append(
                {
                    "preset": p.name,
                    "mu": f"{label}:{list(mu)}",
                    "checked": rep["checked"],
                    "failing": rep["failing_indices"],
                }
            )
    return {"name": "wall_times_tau", "pass": ok, "runs": runs}


# -- minimal length reduction --------------------------------------------------------------------


def check_min_length_reduction(scales: VerifyScales) -> dict:
    """Reduction reaches the minimum of the twisted conjugation
    component of a padded ball, for every element and sigma option."""
    runs = []
    ok = True
    pad = scales.reduction_length + scales.reduction_buffer
    for p in catalog():
        d = p.datum
        w = d.weyl
        for sig_name, sigma in _sigmas(p):
            elements = w.ball(pad, _designated_omegas(d), budget=scales.budget)
            in_set = set(elements)
            comp_min: dict = {}
            comp_id: dict = {}
            for x in elements:
                if x in comp_id:
                    continue
                cid = len(comp_min)
                members = [x]
                comp_id[x] = cid
                best = w.length(x)
                frontier = [x]
                while frontier:
                    nxt = []
                    for y in frontier:
                        for s in w.simple_affine:
                            z = sigma.conj_step(s.index, y)
                            if z in in_set and z not in comp_id:
                                comp_id[z] = cid
                                best = min(best, w.length(z))
                                members.append(z)
                                nxt.append(z)
                    frontier = nxt
                comp_min[cid] = best
            bad = []
            checked = 0
            for x in elements:
                if w.length(x) > scales.reduction_length:
                    continue
                checked += 1
                m, _ = sigma.reduce_to_minimal(x, want_path=False)
                if w.length(m) != comp_min[comp_id[x]]:
                    bad.append(w.to_json(x))
            ok = ok and not bad
            runs.append(
                {
                    "preset": p.name,
                    "sigma": sig_name,
                    "checked": checked,
                    "components": len(comp_min),
                    "violations": bad,
                }
            )
    return {"name": "min_length_reduction", "pass": ok, "runs": runs}


# -- class tag separation --------------------------------------------------------------------


def check_tag_injectivity(scales: VerifyScales) -> dict:
    """Distinct straight twisted-conjugacy classes carry distinct
    (Newton, Kottwitz) tags; collisions are counterexample candidates."""
    runs = []
    ok = True
    collisions_total = 0
    for p in catalog():
        d = p.datum
        w = d.weyl
        for sig_name, sigma in _sigmas(p):
            straights = sigma.straight_elements_in(
                w.ball(scales.tag_length, _designated_omegas(d), budget=scales.budget)
            )
            seen: set = set()
            classes = []
            for x in straights:
                if x in seen:
                    continue
                members = sigma._plateau_info(x, scales.budget).members
                seen.update(members)
                classes.append((sigma.tag_of(x), x))
            tags: dict = {}
            collisions = []
            for tag, rep in classes:
                if tag in tags:
                    collisions.append(
                        {
                            "tag": repr(tag),
                            "first": w.to_json(tags[tag]),
                            "second": w.to_json(rep),
                        }
                    )
                else:
                    tags[tag] = rep
            collisions_total += len(collisions)
            ok = ok and not collisions
            runs.append(
                {
                    "preset": p.name,
                    "sigma": sig_name,
                    "straight_elements": len(straights),
                    "classes": len(classes),
                    "collisions": collisions,
                }
            )
    return {
        "name": "tag_injectivity",
        "pass": ok,
        "counterexample_candidates": collisions_total,
        "runs": runs,
    }


# -- straight versus fundamental --------------------------------------------------------------------


def check_straight_iff_fundamental(scales: VerifyScales) -> dict:
    """is_straight(w) iff is_fundamental(w, nu_w) over padded balls."""
    from .concurrency import parallel_map

    runs = []
    ok = True
    for p in catalog():
        d = p.datum
        w = d.weyl
        for sig_name, sigma in _sigmas(p):
            elements = w.ball(
                scales.fundamental_length, _designated_omegas(d), budget=scales.budget
            )

            def equivalent(x):
                nu = sigma.newton_vector(x)
                return sigma.is_straight(x) == is_fundamental(d, sigma, x, nu)

            bad = [
                w.to_json(x)
                for x, good in zip(elements, parallel_map(equivalent, elements))
                if not good
            ]
            ok = ok and not bad
            runs.append(
                {
                    "preset": p.name,
                    "sigma": sig_name,
                    "checked": len(elements),
                    "violations": bad,
                }
            )
    return {"name": "straight_iff_fundamental", "pass": ok, "runs": runs}


# -- fixed subgroup generators --------------------------------------------------------------------


def check_fixed_point_generators(scales: VerifyScales) -> dict:
    """The longest elements of finite twist orbits generate exactly the
    twist-fixed part of the affine Weyl group, within a ball."""
    runs = []
    ok = True
    cap = scales.fixed_point_length
    for p in catalog():
        d = p.datum
        if d.rank > 4:
            continue
        w = d.weyl
        for sig_name, sigma in _sigmas(p):
            for om in w.omega_elements():
                tau_elt = om.element
                tau = twist_map(d, sigma, tau_elt)
                walls = levi_of(d, (0,) * d.rank).simple_affine_roots
                orbits = tau_orbits(d, walls, tau)
                gens = [o.longest for o in orbits if o.finite]
                pad = cap + max((w.length(g) for g in gens), default=0)
                generated = {w.identity()}
                frontier = [w.identity()]
                while frontier:
                    nxt = []
                    for y in frontier:
                        for g in gens:
                            for z in (g * y, y * g):
                                if w.length(z) <= pad and z not in generated:
                                    generated.add(z)
                                    nxt.append(z)
                    frontier = nxt
                generated = {z for z in generated if w.length(z) <= cap}
                fixed = {
                    x
                    for x in w.coset_ball(cap, budget=scales.budget)
                    if tau_elt * sigma.apply(x) * tau_elt.inverse() == x
                }
                ok_here = generated == fixed
                ok = ok and ok_here
                runs.append(
                    {
                        "preset": p.name,
                        "sigma": sig_name,
                        "tau_kappa": list(om.pi1_coords),
                        "finite_orbits": sum(1 for o in orbits if o.finite),
                        "orbit_types": sorted(
                            str(o.orbit_type) for o in orbits if o.finite
                        ),
                        "generated_in_ball": len(generated),
                        "fixed_in_ball": len(fixed),
                        "pass": ok_here,
                    }
                )
    return {"name": "fixed_point_generators", "pass": ok, "runs": runs}


# -- Picard lattice suite --------------------------------------------------------------------


def check_picard_suite(scales: VerifyScales) -> dict:
    """Coxeter relations on Pic, the ample sign test, and descent
    certificates at every straight element and matching representative."""
    bond_from_product = {0: 2, 1: 3, 2: 4, 3: 6}
    runs = []
    ok = True
    singular = 0
    for p in catalog():
        d = p.datum
        w = d.weyl
        pic = PicardLattice(w)
        n = pic.n
        relation_failures = []
        for i in range(n):
            ri = pic.reflection_action(i)
            if mat_mul(ri.matrix, ri.matrix) != identity_matrix(n):
                relation_failures.append(f"s{i}^2")
        for i in range(n):
            for j in range(i + 1, n):
                prod = pic.cartan[i][j] * pic.cartan[j][i]
                m = bond_from_product.get(prod)
                if m is None:
                    continue
                rirj = mat_mul(
                    pic.reflection_action(i).matrix, pic.reflection_action(j).matrix
                )
                power = identity_matrix(n)
                for _ in range(m):
                    power = mat_mul(power, rirj)
                if power != identity_matrix(n):
                    relation_failures.append(f"(s{i}s{j})^{m}")
        rng = random.Random(8261)
        ample_bad = 0
        for _ in range(scales.ample_samples):
            vals = [
                Fraction(rng.randint(-3, 3), 2 ** rng.randint(0, 2))
                for _ in range(n)
            ]
            cls = PicClass.from_fractions(2, vals)
            if is_ample(cls) != all(v > 0 for v in vals):
                ample_bad += 1
        cert_count = 0
        cert_failures = []
        for q in scales.picard_qs:
            for _sig_name, sigma in _sigmas(p, q=q):
                straights = sigma.straight_elements_in(
                    w.ball(
                        scales.picard_length,
                        _designated_omegas(d),
                        budget=scales.budget,
                    )
                )
                by_tag: dict = {}
                for x in straights:
                    by_tag.setdefault(sigma.tag_of(x), []).append(x)
                for _tag, members in sorted(
                    by_tag.items(), key=lambda kv: repr(kv[0])
                ):
                    for wx in members:
                        for xx in members:
                            cert_count += 1
                            try:
                                cert = descent_certificate(sigma, wx, xx)
                            except SingularOperator:
                                singular += 1
                                cert_failures.append(
                                    {"q": q, "w": w.to_json(wx), "x": w.to_json(xx)}
                                )
                                continue
                            if not all(v > 0 for v in cert.difference):
                                cert_failures.append(
                                    {"q": q, "w": w.to_json(wx), "x": w.to_json(xx)}
                                )
        ok_here = not relation_failures and ample_bad == 0 and not cert_failures
        ok = ok and ok_here
        runs.append(
            {
                "preset": p.name,
                "relation_failures": relation_failures,
                "ample_mismatches": ample_bad,
                "certificates": cert_count,
                "certificate_failures": cert_failures,
            }
        )
    return {
        "name": "picard_suite",
        "pass": ok,
        "counterexample_candidates": singular,
        "runs": runs,
    }


# -- Levi embedding facts --------------------------------------------------------------------


def check_levi_embedding_facts(scales: VerifyScales) -> dict:
    """Residually split facts: translation parts of straight admissible
    elements are admissible, Levi admissible sets embed, the Levi Bruhat
    order embeds, and straight elements are basic in their Levi."""
    runs = []
    ok = True
    for p in catalog():
        d = p.datum
        w = d.weyl
        sigma = FrobeniusDatum(d)
        for label, mu in p.mu_grid:
            aset = adm(d, mu, budget=scales.budget)
            straights = sigma.straight_elements_in(aset.elements)
            t_bad = []
            sub_bad = []
            order_checked = 0
            order_bad = []
            basic_bad = []
            seen_levis = set()
            for x in straights:
                nu = sigma.newton_vector(x)
                levi = levi_of(d, nu)
                if w.translation(x.lam) not in aset.elements:
                    t_bad.append(w.to_json(x))
                sub = levi.sub_datum
                sub_adm = adm(sub, x.lam, budget=scales.budget)
                for y in sub_adm.elements:
                    if sub_element(d, levi, y) not in aset.elements:
                        sub_bad.append({"w": w.to_json(x), "y": sub.weyl.to_json(y)})
                # Straight elements are length zero in their Levi and fix nu.
                x_in_sub = sub.weyl.from_matrix(x.lam, x.mat)
                if sub.weyl.length(x_in_sub) != 0 or tuple(
                    Fraction(c) for c in mat_vec(x.mat, nu)
                ) != tuple(nu):
                    basic_bad.append(w.to_json(x))
                if levi.direction in seen_levis:
                    continue
                seen_levis.add(levi.direction)
                ball_m = sub.weyl.coset_ball(
                    scales.levi_ball_length, budget=scales.budget
                )[: scales.levi_pair_cap]
                for a in ball_m:
                    for b in ball_m:
                        if sub.weyl.bruhat_leq(a, b):
                            order_checked += 1
                            if not w.bruhat_leq(
                                sub_element(d, levi, a), sub_element(d, levi, b)
                            ):
                                order_bad.append(
                                    {
                                        "x": sub.weyl.to_json(a),
                                        "y": sub.weyl.to_json(b),
                                    }
                                )
            ok_here = not (t_bad or sub_bad or order_bad or basic_bad)
            ok = ok and ok_here
            runs.append(
                {
                    "preset": p.name,
                    "mu": f"{label}:{list(mu)}",
                    "straights": len(straights),
                    "translation_violations": t_bad,
                    "levi_adm_violations": sub_bad,
                    "order_pairs_checked": order_checked,
                    "order_violations": order_bad,
                    "levi_basic_violations": basic_bad,
                }
            )
    return {"name": "levi_embedding_facts", "pass": ok, "runs": runs}


# -- the orchestrator ---------------------------------------------------------------


ALL_CHECKS = (
    check_sl2_pipeline,
    check_straight_class_containment,
    check_wall_times_tau,
    check_min_length_reduction,
    check_tag_injectivity,
    check_straight_iff_fundamental,
    check_fixed_point_generators,
    check_picard_suite,
    check_levi_embedding_facts,
)


def run_verify(scales: VerifyScales | None = None) -> dict:
    scales = scales or VerifyScales()
    checks = [fn(scales) for fn in ALL_CHECKS]
    candidates = sum(c.get("counterexample_candidates", 0) for c in checks)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "pass": all(c["pass"] for c in checks),
        "counterexample_candidates": candidates,
        "checks": checks,
    }
