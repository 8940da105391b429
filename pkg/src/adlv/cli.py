"""Command-line surface.

Every command validates its inputs into a JobSpec, runs, and emits one
deterministic JSON report.  Exit codes: 0 success, 1 bad input, 2
hypothesis violation, 3 budget exceeded, 4 counterexample candidate.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

import click

from .admissible import DEFAULT_BUDGET, adm, adm_parahoric
from .errors import (
    AdlvError,
    BudgetExceeded,
    HypothesisViolated,
    SchemaError,
    SingularOperator,
    UnknownPreset,
)
from .fgab import FinAbGroup
from .frobenius import FrobeniusDatum, StraightClassTag
from .levi import pi0_predict
from .newton_bg import b_g_mu
from .picard import descent_certificate
from .presets import catalog, preset
from .verify import SCHEMA_VERSION, VerifyScales, frac_str, run_verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3
EXIT_COUNTEREXAMPLE = 4


@dataclass
class JobSpec:
    command: str
    group: str | dict | None = None
    sigma: str = "split"
    mu: tuple[int, ...] | None = None
    b: str | None = None
    level: tuple[int, ...] = field(default_factory=tuple)
    budget: int = DEFAULT_BUDGET
    emit: str = "summary"
    scale: str = "full"

    def __post_init__(self):
        if self.budget <= 0:
            raise SchemaError("/budget: must be positive")
        if self.emit not in ("summary", "elements"):
            raise SchemaError("/emit: expected 'summary' or 'elements'")


def _resolve_group(spec: JobSpec):
    if spec.group is None:
        raise SchemaError("/group: missing")
    if isinstance(spec.group, str) and spec.group.strip().startswith("{"):
        try:
            obj = json.loads(spec.group)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"/group: bad JSON ({exc})") from exc
        from .root_datum import build_root_datum

        return build_root_datum(obj), None
    return preset(spec.group).datum, preset(spec.group)


def _resolve_sigma(spec: JobSpec, datum, pre) -> FrobeniusDatum:
    raw = spec.sigma
    if raw.strip().startswith("{"):
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"/sigma: bad JSON ({exc})") from exc
        return FrobeniusDatum.from_json(datum, obj)
    name, _, qpart = raw.partition(":")
    q = 2
    if qpart:
        try:
            q = int(qpart)
        except ValueError:
            raise SchemaError("/sigma: q suffix must be an integer") from None
    if pre is None:
        if name != "split":
            raise SchemaError("/sigma: explicit data only support 'split' or JSON")
        return FrobeniusDatum(datum, q=q)
    return FrobeniusDatum(datum, pre.sigma_matrix(name), q=q)


def _require_mu(spec: JobSpec, datum) -> tuple[int, ...]:
    if spec.mu is None:
        raise SchemaError("/mu: missing")
    if len(spec.mu) != datum.rank:
        raise SchemaError(f"/mu: expected {datum.rank} integers")
    return spec.mu


def _group_json(g: FinAbGroup) -> dict:
    return {
        "invariant_factors": list(g.invariant_factors),
        "shape": g.describe(),
    }


def _tag_json(tag: StraightClassTag) -> dict:
    return {
        "nu": [frac_str(c) for c in tag.nu_bar],
        "kappa": list(tag.kappa0),
        "kappa_sigma": list(tag.kappa_sigma),
    }


def _select_tag(spec: JobSpec, elements):
    if spec.b is None or spec.b == "basic":
        return next(e for e in elements if e.is_minimal)
    if spec.b in ("max", "maximal"):
        return next(e for e in elements if e.is_maximal)
    try:
        idx = int(spec.b)
    except ValueError:
        raise SchemaError("/b: expected 'basic', 'maximal', or an index") from None
    if not 0 <= idx < len(elements):
        raise SchemaError(f"/b: index {idx} out of range 0..{len(elements) - 1}")
    return elements[idx]


def run(spec: JobSpec) -> tuple[dict, int]:
    """Execute one command; returns (report, exit code)."""
    try:
        report = _dispatch(spec)
    except (UnknownPreset, SchemaError) as exc:
        return {"schema_version": SCHEMA_VERSION, "error": str(exc)}, EXIT_USAGE
    except HypothesisViolated as exc:
        return (
            {"schema_version": SCHEMA_VERSION, "error": f"HypothesisViolated: {exc}"},
            EXIT_HYPOTHESIS,
        )
    except BudgetExceeded as exc:
        return (
            {"schema_version": SCHEMA_VERSION, "error": f"BudgetExceeded: {exc}"},
            EXIT_BUDGET,
        )
    except SingularOperator as exc:
        return (
            {"schema_version": SCHEMA_VERSION, "error": f"SingularOperator: {exc}"},
            EXIT_COUNTEREXAMPLE,
        )
    except AdlvError as exc:
        return (
            {"schema_version": SCHEMA_VERSION, "error": f"{type(exc).__name__}: {exc}"},
            EXIT_USAGE,
        )
    code = EXIT_OK
    if spec.command == "verify" and (
        not report["pass"] or report["counterexample_candidates"]
    ):
        code = EXIT_COUNTEREXAMPLE
    return report, code


def _dispatch(spec: JobSpec) -> dict:
    if spec.command == "verify":
        if spec.group is not None:
            return _targeted_verify(spec)
        scales = VerifyScales() if spec.scale == "full" else VerifyScales.quick()
        return run_verify(scales)
    if spec.command == "presets":
        return {
            "schema_version": SCHEMA_VERSION,
            "command": "presets",
            "presets": [
                {
                    "name": p.name,
                    "rank": p.datum.rank,
                    "positive_roots": len(p.datum.positive_roots),
                    "w0_order": p.datum.weyl.w0_order(),
                    "pi1": _group_json(p.datum.pi1),
                    "sigmas": sorted(p.sigmas),
                    "mu_grid": [
                        {"label": label, "mu": list(mu)} for label, mu in p.mu_grid
                    ],
                    "description": p.description,
                }
                for p in catalog()
            ],
        }

    datum, pre = _resolve_group(spec)
    w = datum.weyl
    base = {
        "schema_version": SCHEMA_VERSION,
        "command": spec.command,
        "group": datum.name or "explicit",
    }

    if spec.command == "adm":
        mu = _require_mu(spec, datum)
        aset = adm(datum, mu, budget=spec.budget)
        out = dict(base)
        out.update(
            {
                "mu": list(mu),
                "tau": w.to_json(aset.tau.element),
                "size": len(aset),
                "max_length": aset.max_length,
                "maximal": [w.to_json(t) for t in aset.maximal],
            }
        )
        if spec.level:
            closed, reps = adm_parahoric(datum, mu, spec.level, budget=spec.budget)
            out["level"] = list(spec.level)
            out["size_level"] = len(closed)
            out["double_coset_reps"] = [w.to_json(r) for r in reps]
        if spec.emit == "elements":
            out["elements"] = [w.to_json(x) for x in aset.sorted_elements]
        return out

    sigma = _resolve_sigma(spec, datum, pre)

    if spec.command == "straight":
        mu = _require_mu(spec, datum)
        aset = adm(datum, mu, budget=spec.budget)
        classes = sigma.straight_class_tags(aset.elements)
        return {
            **base,
            "mu": list(mu),
            "classes": [
                {
                    "tag": _tag_json(tag),
                    "size": len(members),
                    "elements": [w.to_json(x) for x in members],
                }
                for tag, members in classes
            ],
        }

    if spec.command == "bgmu":
        mu = _require_mu(spec, datum)
        elements = b_g_mu(datum, sigma, mu, budget=spec.budget)
        return {
            **base,
            "mu": list(mu),
            "elements": [
                {
                    "tag": _tag_json(e.tag),
                    "representative": w.to_json(e.representative),
                    "basic": e.basic,
                    "minimal": e.is_minimal,
                    "maximal": e.is_maximal,
                }
                for e in elements
            ],
        }

    if spec.command == "pi0":
        mu = _require_mu(spec, datum)
        elements = b_g_mu(datum, sigma, mu, budget=spec.budget)
        chosen = _select_tag(spec, elements)
        pred = pi0_predict(
            datum, sigma, mu, chosen.tag, k_set=spec.level, budget=spec.budget
        )
        return {
            **base,
            "mu": list(mu),
            "b": _tag_json(chosen.tag),
            "case": pred.case,
            "group": _group_json(pred.group) if pred.group is not None else None,
            "level": list(pred.level),
            "upper_bound_only": pred.upper_bound_only,
            "note": pred.note,
            "strata": [
                {
                    "w": w.to_json(s.element),
                    "levi_rank": s.levi_rank,
                    "pi1M": _group_json(s.pi1_levi),
                    "essentially_nontrivial": s.essentially_nontrivial,
                    "translation_part_admissible": s.translation_part_admissible,
                }
                for s in pred.strata
            ],
        }

    if spec.command == "pic-cert":
        mu = _require_mu(spec, datum)
        elements = b_g_mu(datum, sigma, mu, budget=spec.budget)
        chosen = _select_tag(spec, elements)
        cert = descent_certificate(sigma, chosen.representative, chosen.representative)
        return {
            **base,
            "mu": list(mu),
            "b": _tag_json(chosen.tag),
            "q": sigma.q,
            "operator": [[frac_str(v) for v in row] for row in cert.operator.matrix],
            "certificate": [frac_str(v) for v in cert.pic_class.values()],
            "difference": [frac_str(v) for v in cert.difference],
            "invertible": cert.invertible,
        }

    raise SchemaError(f"/command: unknown command {spec.command!r}")


def _targeted_verify(spec: JobSpec) -> dict:
    """Run the two admissible-set lemma verifiers on one datum."""
    from .admissible import verify_s_tau_membership, verify_straight_class_containment

    datum, pre = _resolve_group(spec)
    sigma = _resolve_sigma(spec, datum, pre)
    mu = _require_mu(spec, datum)
    containment = verify_straight_class_containment(datum, sigma, mu, budget=spec.budget)
    wall = verify_s_tau_membership(datum, sigma, mu, budget=spec.budget)
    checks = [
        {"name": "straight_class_containment", "pass": containment["pass"], "runs": [containment]},
        {"name": "wall_times_tau", "pass": wall["pass"], "runs": [wall]},
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "group": datum.name or "explicit",
        "mu": list(mu),
        "pass": all(c["pass"] for c in checks),
        "counterexample_candidates": 0,
        "checks": checks,
    }


def _emit(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_group_opt = click.option("--group", help="preset name or inline JSON root datum")
_sigma_opt = click.option(
    "--sigma", default="split", show_default=True,
    help="sigma option name, name:q, or inline JSON",
)
_mu_opt = click.option("--mu", help="cocharacter, comma-separated integers")
_b_opt = click.option("--b", help="class selector: basic, maximal, or index")
_level_opt = click.option(
    "--level", default="", help="parahoric K as comma-separated simple indices"
)
_budget_opt = click.option(
    "--budget", default=DEFAULT_BUDGET, show_default=True, type=int
)
_emit_opt = click.option(
    "--emit", default="summary", type=click.Choice(["summary", "elements"])
)
_out_opt = click.option("--out", default=None, help="write the JSON report here")


def _parse_ints(raw: str | None) -> tuple[int, ...] | None:
    if raw is None or raw == "":
        return None
    try:
        return tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise SchemaError("/: expected comma-separated integers") from None


@click.group(name="adlv")
def main():
    """Combinatorics of unions of affine Deligne-Lusztig varieties."""


def _common(command):
    def runner(group, sigma, mu, b, level, budget, emit, out):
        try:
            spec = JobSpec(
                command=command,
                group=group,
                sigma=sigma,
                mu=_parse_ints(mu),
                b=b,
                level=_parse_ints(level) or (),
                budget=budget,
                emit=emit,
            )
        except SchemaError as exc:
            _emit({"schema_version": SCHEMA_VERSION, "error": str(exc)}, out)
            sys.exit(EXIT_USAGE)
        report, code = run(spec)
        _emit(report, out)
        sys.exit(code)

    return runner


for _name in ("adm", "straight", "bgmu", "pi0", "pic-cert"):
    main.command(name=_name)(
        _group_opt(
            _sigma_opt(
                _mu_opt(
                    _b_opt(_level_opt(_budget_opt(_emit_opt(_out_opt(_common(_name))))))
                )
            )
        )
    )


@main.command()
@click.option(
    "--scale", default="full", type=click.Choice(["full", "quick"]), show_default=True
)
@_group_opt
@_sigma_opt
@_mu_opt
@_budget_opt
@_out_opt
def verify(scale, group, sigma, mu, budget, out):
    """Run every property-verification suite; exit 4 on any violation.

    With --group and --mu, run only the admissible-set lemma verifiers
    on that datum.
    """
    try:
        spec = JobSpec(
            command="verify",
            scale=scale,
            group=group,
            sigma=sigma,
            mu=_parse_ints(mu),
            budget=budget,
        )
    except SchemaError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "error": str(exc)}, out)
        sys.exit(EXIT_USAGE)
    report, code = run(spec)
    _emit(report, out)
    sys.exit(code)


@main.command()
@_out_opt
def presets(out):
    """List the preset catalog."""
    report, code = run(JobSpec(command="presets"))
    _emit(report, out)
    sys.exit(code)


if __name__ == "__main__":
    main()
