"""``helstrom-gpt`` command line: discriminate, family, repro, plot."""
from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import repro as _repro
from . import svg
from .discrimination import (DiscriminationInstance, Observable, binary_bound_form,
                             helstrom_bound_lp, success_probability)
from .errors import TAU_NUM, HelstromError, NumericalError, ValidationError
from .families import (WeakHelstromFamily, binary_certify_by_distinguishability,
                       certify_optimal, geometric_family, ratio_bound_check, trivial_family,
                       validate, weaken)
from .geometry import affine_basis
from .modelio import (Model, dumps, matrix_to_json, observable_from_json, observable_to_json,
                      parse_model, read_json)
from .models import (classical_binary_family, classical_map_oracle, is_classical,
                     square_binary, square_pure_state_discrimination)
from .quantum import (density_to_bloch, quantum_binary_helstrom,
                      qubit_geometric_family, symmetric_optimal)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
PLOT_CASES = ("square-binary", "square-pure", "qubit-binary", "symmetric")


class OutputError(HelstromError):
    """The requested output file could not be written."""


# -- result documents -----------------------------------------------------------


def family_to_json(fam: WeakHelstromFamily) -> dict:
    return {"tilde_p": fam.tilde_p, "conjugates": fam.conjugates,
            "reference": fam.reference, "ratio": fam.ratio}


def family_from_json(inst: DiscriminationInstance, rec: dict) -> WeakHelstromFamily:
    try:
        return WeakHelstromFamily(inst, rec["tilde_p"], rec["conjugates"], rec["reference"],
                                  rec["ratio"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"family: malformed record ({exc})") from None


def _split_input(doc: dict) -> tuple[Model, dict | None]:
    """A model file, or a result document whose ``model`` entry is one."""
    if isinstance(doc, dict) and "model" in doc and "kind" not in doc:
        return parse_model(doc["model"]), doc
    return parse_model(doc), None


# -- discriminate ---------------------------------------------------------------


def discriminate(model: Model, tol: float = TAU_NUM) -> dict:
    if model.quantum:
        return _discriminate_quantum(model, tol)
    inst = model.instance
    bound = helstrom_bound_lp(inst)
    checks = {}
    if inst.n == 2:
        checks["binary_effect_form"] = binary_bound_form(inst)
    if is_classical(inst.space):
        checks["map_oracle"] = classical_map_oracle(inst)
        if inst.n == 2:
            checks["signed_difference_family"] = classical_binary_family(
                *inst.states, *inst.priors).success
    if model.kind == "square" and inst.n == 2 and np.allclose(inst.priors, 0.5, atol=tol):
        checks["square_closed_form"] = 0.5 * (1 + float(np.max(np.abs(inst.states[0]
                                                                    - inst.states[1]))))
    residuals = {"observable_unit": bound.observable.unit_residual(),
                 "success_recomputed": abs(success_probability(inst, bound.observable)
                                           - bound.value)}
    worst = max((abs(v - bound.value) for v in checks.values()), default=0.0)
    if worst > max(tol, 1e-8):
        raise NumericalError(f"cross-checks disagree with the LP by {worst:.3g}")
    return {"helstrom_bound": bound.value,
            "observable": observable_to_json(bound.observable),
            "cross_checks": checks, "residuals": residuals}


def _discriminate_quantum(model: Model, tol: float) -> dict:
    if model.n != 2:
        raise ValidationError(
            f"quantum models with {model.n} states are unsupported here; use "
            "`repro --case symmetric` or a polytope embedding")
    (r1, r2), (p1, p2) = model.densities, model.priors
    res = quantum_binary_helstrom(r1, r2, p1, p2)
    dim = r1.shape[0]
    checks = {"negative_part_form": res.success_alt,
              "trace_norm_form": 0.5 * (1 + float(np.sum(np.abs(np.linalg.eigvalsh(
                  p1 * r1 - p2 * r2)))))}
    if model.bloch is not None and abs(p1 - p2) <= tol:
        checks["bloch_distance_form"] = 0.5 * (1 + 0.5 * np.linalg.norm(
            model.bloch[0] - model.bloch[1]))
    worst = max(abs(v - res.success) for v in checks.values())
    if worst > max(tol, 1e-8):
        raise NumericalError(f"cross-checks disagree with the spectral route by {worst:.3g}")
    effects = (res.projector, np.eye(dim) - res.projector)
    values = [float(np.trace(E @ s).real) for E, s in zip(effects, res.conjugates)]
    active = [v for v, w in zip(values, res.tilde_p) if w < 1.0]
    return {"helstrom_bound": res.success,
            "observable": {"povm": [matrix_to_json(res.projector),
                                    matrix_to_json(np.eye(dim) - res.projector)]},
            "cross_checks": checks,
            "family": {"tilde_p": res.tilde_p,
                       "conjugates": [matrix_to_json(s) for s in res.conjugates],
                       "reference": matrix_to_json(res.reference), "ratio": res.ratio},
            "certificate": {"method": "spectral", "generic": res.generic,
                            "certified": all(abs(v) <= max(tol, TAU_NUM) for v in active),
                            "conjugate_values": values},
            "residuals": {"mixture": res.mixture_residual}}


# -- family ---------------------------------------------------------------------


def _parse_reference(text: str | None):
    if text is None:
        return None
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise ValidationError(f"reference: expected comma-separated numbers, got {text!r}") \
            from None


def _parallel(model: Model, inst: DiscriminationInstance):
    if inst.n == 2 and model.kind == "square":
        return square_binary(*inst.states, priors=inst.priors)
    if inst.n == 2 and is_classical(inst.space):
        return classical_binary_family(*inst.states, *inst.priors)
    if (model.kind == "square" and inst.n == 4 and np.allclose(inst.priors, 0.25)
            and np.array_equal(inst.states, inst.space.vertices)):
        return square_pure_state_discrimination()
    raise ValidationError("--construct parallel needs a two-state square or classical "
                          "model, or the four square vertices in vertex order")


def build_family(model: Model, construct: str, reference=None, weaken_to=None):
    if model.quantum:
        raise ValidationError("family construction works on polytope, classical and square "
                              "models; quantum families are reported by `discriminate`")
    inst = model.instance
    obs = None
    if construct == "trivial":
        fam = trivial_family(inst)
    elif construct == "geometric":
        fam = geometric_family(inst, reference)
    elif construct == "parallel":
        res = _parallel(model, inst)
        fam, obs = res.family, res.observable
    else:
        raise ValidationError(f"unknown construction {construct!r}")
    if weaken_to is not None and weaken_to != fam.ratio:
        fam = weaken(fam, weaken_to)
        obs = None
    return fam, obs


def certify(fam: WeakHelstromFamily, obs: Observable | None, method: str | None = None):
    """Certificate record; ``method`` forces the routine used when re-certifying."""
    if method is None:
        method = "distinguishability" if fam.n == 2 and obs is None else "observable"
    if method == "distinguishability":
        ok, obs = binary_certify_by_distinguishability(fam)
    else:
        if obs is None:
            obs = helstrom_bound_lp(fam.instance).observable
        ok = certify_optimal(fam, obs).certified
    record = {"method": method, "certified": bool(ok)}
    if obs is not None:
        cert = certify_optimal(fam, obs)
        rb = ratio_bound_check(fam, obs)
        record.update(conjugate_values=cert.conjugate_values, success=cert.success,
                      ratio_bound_slack=rb.slack, identity_residual=rb.identity_residual)
    return record, obs


def family_command(model: Model, prior_doc: dict | None, construct: str, reference,
                   weaken_to, do_certify: bool) -> dict:
    if prior_doc is not None and "family" in prior_doc and not model.quantum:
        fam = family_from_json(model.instance, prior_doc["family"])
        obs = (observable_from_json(prior_doc["observable"])
               if isinstance(prior_doc.get("observable"), list) else None)
        method = (prior_doc.get("certificate") or {}).get("method")
        do_certify = True
    else:
        fam, obs = build_family(model, construct, reference, weaken_to)
        method = None
    report = validate(fam)
    if not report.passed:
        raise NumericalError(f"constructed family failed validation: {report}")
    doc = {"family": family_to_json(fam),
           "residuals": {"ratio": report.ratio_residual, "mixture": report.mixture_residual}}
    if do_certify:
        cert, obs = certify(fam, obs, method)
        doc["certificate"] = cert
        if cert["certified"]:
            doc["helstrom_bound"] = fam.ratio
    if obs is not None:
        doc["observable"] = observable_to_json(obs)
    return doc


# -- plot -----------------------------------------------------------------------


def _plane_projection(points):
    origin, basis = affine_basis(points)
    if basis.shape[0] > 2:
        raise ValidationError(f"state space is {basis.shape[0]}-dimensional; plot needs a 2-D "
                              "model or a named --case")
    if basis.shape[0] < 2:
        raise ValidationError("state space is degenerate (1-D); nothing to draw")
    return lambda x: (np.asarray(x, float) - origin) @ basis.T


def plot_model(model: Model, construct: str = "geometric", reference=None) -> str:
    if model.quantum:
        if model.bloch is None or model.n != 2:
            raise ValidationError("quantum plots need a two-state quantum-qubit model")
        return plot_qubit(*model.bloch)
    fam, _ = build_family(model, construct, reference)
    space = model.instance.space
    proj = _plane_projection(space.vertices)
    return svg.construction_scene(
        proj(space.vertices), proj(model.instance.states), proj(fam.conjugates),
        proj(fam.reference), f"{space.name or model.kind}: {construct} family",
        [svg.ratio_caption(fam.ratio)]).to_svg()


def plot_qubit(b1, b2) -> str:
    fam = qubit_geometric_family(b1, b2)
    B = svg.great_circle_basis(b1, b2)
    pts = lambda x: np.atleast_2d(x) @ B.T
    off = float(np.linalg.norm(np.asarray(b1) - (np.asarray(b1) @ B.T) @ B))
    captions = [svg.ratio_caption(fam.ratio)]
    if off > 1e-9:
        captions.append(f"states lie {off:.3f} off the drawn great circle (projected)")
    return svg.construction_scene(None, pts(b1).tolist() + pts(b2).tolist(),
                                  pts(fam.conjugates), pts(fam.reference)[0],
                                  "qubit: great-circle section", captions, disc=True).to_svg()


def plot_case(case: str) -> str:
    if case == "square-binary":
        res = square_binary([0.2, 0.3], [0.7, 0.45])
        fam = res.family
        return svg.construction_scene(
            fam.instance.space.vertices, fam.instance.states, fam.conjugates, fam.reference,
            "square: two states", [svg.ratio_caption(fam.ratio)]).to_svg()
    if case == "square-pure":
        fam = square_pure_state_discrimination().family
        return svg.construction_scene(
            fam.instance.space.vertices, fam.instance.states, fam.conjugates, fam.reference,
            "square: four pure states", [svg.ratio_caption(fam.ratio)]).to_svg()
    if case == "qubit-binary":
        return plot_qubit([0.3, 0.0, 0.5], [-0.2, 0.4, -0.3])
    if case == "symmetric":
        n, theta = 8, math.pi / 3
        res = symmetric_optimal(n, theta)
        xy = lambda rho: density_to_bloch(rho)[:2]
        return svg.construction_scene(
            None, [xy(r) for r in res.states], [xy(s) for s in res.conjugates],
            xy(res.reference), f"symmetric states N={n}: equatorial projection",
            [svg.ratio_caption(res.bound), f"theta = {theta:.6f}"], disc=True).to_svg()
    raise ValidationError(f"unknown plot case {case!r}")


# -- entry point -------------------------------------------------------------------


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="helstrom-gpt",
                                 description="Minimum-error state discrimination in "
                                             "general probabilistic theories.")
    ap.add_argument("--tolerance", type=float, default=TAU_NUM,
                    help="agreement threshold for cross-checks and repro rows (default 1e-9)")
    ap.add_argument("--seed", type=int, default=_repro.DEFAULT_SEED,
                    help="seed for randomized repro rows")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("discriminate", help="optimal success probability of a model file")
    d.add_argument("model")
    d.add_argument("--out")

    f = sub.add_parser("family", help="build, weaken and certify a Helstrom family")
    f.add_argument("model", help="model file, or a result document to re-certify")
    f.add_argument("--construct", choices=("trivial", "geometric", "parallel"),
                   default="geometric")
    f.add_argument("--reference", help="comma-separated coordinates of the reference state")
    f.add_argument("--weaken", type=float, metavar="RATIO")
    f.add_argument("--certify", action="store_true")
    f.add_argument("--out")

    r = sub.add_parser("repro", help="closed-form values against computed ones")
    r.add_argument("--case", choices=(*_repro.CASES, "all"), default="all")

    p = sub.add_parser("plot", help="SVG construction diagram")
    p.add_argument("model", nargs="?")
    p.add_argument("--case", choices=PLOT_CASES)
    p.add_argument("--construct", choices=("trivial", "geometric", "parallel"),
                   default="geometric")
    p.add_argument("--reference")
    p.add_argument("--out")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    if args.command == "repro":
        rows = _repro.run(args.case, tol=args.tolerance, seed=args.seed)
        print(_repro.format_table(rows))
        return EXIT_OK if all(r.passed for r in rows) else 1
    if args.command == "plot":
        if (args.model is None) == (args.case is None):
            raise ValidationError("plot needs exactly one of a model file or --case")
        text = (plot_case(args.case) if args.case else
                plot_model(parse_model(read_json(args.model)), args.construct,
                           _parse_reference(args.reference)))
        _write(text, args.out)
        return EXIT_OK
    model, prior = _split_input(read_json(args.model))
    if args.command == "discriminate":
        doc = discriminate(model, args.tolerance)
    else:
        doc = family_command(model, prior, args.construct, _parse_reference(args.reference),
                             args.weaken, args.certify)
    doc = {"model": model.raw, **doc, "wall_time": time.perf_counter() - start}
    _write(dumps(doc), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        return run(argv)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, OutputError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
