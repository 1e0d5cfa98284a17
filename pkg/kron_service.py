"""
Kron Service Module - Business Logic Functions
Turns module results into report dicts shared by the CLI and the JSON API.
Every report carries "status" (ok | invalid | violation) and the run seed;
failures carry an "error" message instead of raising.
"""

import functools
import logging
import random
from typing import Any, Dict, List, Optional, Sequence

from blowup_example import (
    SPLITTINGS,
    blowup_module,
    classify_section,
    is_real_section,
    real_chart,
)
from config import RunConfig
from errors import InvalidInputError, KronError, PropertyViolation
from exact_core import unit_vector
from formats import (
    curve_to_json,
    parse_curve,
    parse_line,
    parse_module,
    parse_quat_tuple,
    parse_resolution,
    parse_section,
    parse_vector,
    to_jsonable,
)
from kronecker_core import pencil_certificates, slice_injectivity_certificate
from p1_bundles import (
    RECURSION_VARIANTS,
    cohomology_table,
    generic_section_splitting,
    h0_twist,
    h1_twist,
    recursion_terms,
    splitting_type,
    validate_resolution,
)
from quadric_twistor import (
    certify_convention,
    classify_line,
    fibration,
    hx_gram,
    is_x_infinity,
    is_x_infinity_line,
    metric_signature,
    metric_eval,
    orbit_equivalent,
    s1_field,
    to_quat_tuple,
)
from rational_curves import (
    alpha_slice_rank,
    dimension_report,
    normal_splitting,
    quaternionic_report,
    random_curve,
    twistor_generic_splitting,
    twistor_h0_list,
    validate,
)
from selftest import run_selftest

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_INVALID = "invalid"
STATUS_VIOLATION = "violation"
EXIT_CODES = {STATUS_OK: 0, STATUS_VIOLATION: 1, STATUS_INVALID: 2}


def service(fn):
    """Run fn with a RunConfig and fold KronError into the report."""

    @functools.wraps(fn)
    def wrapper(*args, config: Optional[RunConfig] = None, **kwargs) -> Dict[str, Any]:
        config = config or RunConfig()
        try:
            report = {"status": STATUS_OK, **fn(*args, config=config, **kwargs)}
        except InvalidInputError as exc:
            logger.info("%s rejected input: %s", fn.__name__, exc)
            report = {"status": STATUS_INVALID, "error": str(exc)}
        except PropertyViolation as exc:
            logger.warning("%s found a violation: %s", fn.__name__, exc)
            report = {
                "status": STATUS_VIOLATION,
                "error": str(exc),
                "criterion": exc.criterion,
                "witness": exc.witness,
            }
        except KronError as exc:
            report = {"status": STATUS_VIOLATION, "error": str(exc)}
        report["seed"] = config.seed
        return to_jsonable(report)

    return wrapper


def exit_code(report: Dict[str, Any]) -> int:
    return EXIT_CODES.get(report.get("status"), 1)


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

def _curve_report(curve) -> Dict[str, Any]:
    diag = validate(curve)
    report: Dict[str, Any] = {
        "curve": curve_to_json(curve),
        "validation": {
            "basepoint_free": diag.basepoint_free,
            "nondegenerate": diag.nondegenerate,
            "immersed": diag.immersed,
            "coefficient_rank": diag.coefficient_rank,
            "basepoint_witness": diag.basepoint_witness,
            "immersion_witness": diag.immersion_witness,
        },
    }
    if not diag.valid:
        raise InvalidInputError(f"Curve fails validation: {', '.join(diag.failures())}.")
    split = normal_splitting(curve)
    dims = dimension_report(curve)
    report.update(
        splitting=list(split.degrees),
        h0=twistor_h0_list(curve),
        dimensions=dims,
        twistor_splitting=twistor_generic_splitting(curve),
        alpha_rank=alpha_slice_rank(curve, unit_vector(curve.n + 1, curve.n)),
    )
    if split.a is not None:
        report["gs"] = {"a": split.a, "b": split.b, "holds": True}
    if not dims.consistent:
        raise PropertyViolation("Dimension counts disagree with the expected formulas.", "dimensions", dims)
    if curve.n == 3:
        quat = quaternionic_report(curve)
        report["quaternionic"] = {
            "equivariant": quat.equivariant,
            "variant": quat.variant,
            "factor": quat.factor,
            "quaternionic": quat.quaternionic,
            "structure_sign": quat.structure_sign,
            "reason": quat.reason,
        }
    logger.info("analyzed degree %d curve in P^%d", curve.d, curve.n)
    return report


@service
def analyze_curve(payload, *, config: RunConfig) -> Dict[str, Any]:
    return _curve_report(parse_curve(payload))


@service
def analyze_random_curve(d: int, n: int, seed: int, *, config: RunConfig) -> Dict[str, Any]:
    curve = random_curve(d, n, random.Random(seed))
    return {"generator_seed": seed, **_curve_report(curve)}


@service
def random_curve_table(d: int, n: int, count: int, *, config: RunConfig) -> Dict[str, Any]:
    """One row per seeded random curve: (d, n, splitting, h0 list, ranks)."""
    if count <= 0:
        raise InvalidInputError("Count must be positive.")
    rows = []
    for index in range(count):
        curve = random_curve(d, n, random.Random(config.batch_seed(index)))
        dims = dimension_report(curve)
        rows.append(
            {
                "d": d,
                "n": n,
                "splitting": list(normal_splitting(curve).degrees),
                "h0": twistor_h0_list(curve),
                "h0N": dims.h0N,
                "rank": dims.rank,
            }
        )
    return {"rows": rows}


# ---------------------------------------------------------------------------
# Bundles on P^1
# ---------------------------------------------------------------------------

@service
def bundle_h0(payload, twist: Optional[int] = None, *, config: RunConfig) -> Dict[str, Any]:
    res = parse_resolution(payload)
    diag = validate_resolution(res)
    if not diag.cokernel_locally_free:
        raise PropertyViolation("Cokernel is not locally free.", "locally_free", diag.witness)
    if twist is not None:
        return {"twist": twist, "h0": h0_twist(res, twist), "h1": h1_twist(res, twist)}
    table = cohomology_table(res, config.twist_range)
    return {"rows": [{"twist": k, "h0": h0, "h1": h1} for k, h0, h1 in table.entries]}


@service
def bundle_splitting(payload, *, config: RunConfig) -> Dict[str, Any]:
    res = parse_resolution(payload)
    diag = validate_resolution(res)
    if not diag.cokernel_locally_free:
        raise PropertyViolation("Cokernel is not locally free.", "locally_free", diag.witness)
    return {"splitting": splitting_type(res), "rank": res.rank, "degree": res.total_degree}


@service
def bundle_generic_section(
    h0_list: Sequence[int], rank: int, variant: str = "corrected", *, config: RunConfig
) -> Dict[str, Any]:
    if variant not in RECURSION_VARIANTS:
        raise InvalidInputError(f"Variant must be one of {', '.join(RECURSION_VARIANTS)}.")
    return {
        "h0": list(h0_list),
        "rank": rank,
        "variant": variant,
        "terms": recursion_terms(h0_list, variant),
        "splitting": generic_section_splitting(h0_list, rank, variant),
    }


# ---------------------------------------------------------------------------
# Quadric
# ---------------------------------------------------------------------------

@service
def quadric_classify(payload, *, config: RunConfig) -> Dict[str, Any]:
    line, real_data = parse_line(payload)
    verdict = classify_line(line)
    report = {"degenerate": verdict.degenerate, "splitting": verdict.splitting}
    if real_data is not None:
        report["x_infinity"] = is_x_infinity_line(*real_data)
    return report


@service
def quadric_real(payload, *, config: RunConfig) -> Dict[str, Any]:
    line, real_data = parse_line(payload)
    if real_data is None:
        raise InvalidInputError("Real lines are given by {\"x\", \"y\"}.")
    verdict = classify_line(line)
    t = to_quat_tuple(*real_data)
    return {
        "line": {"a": line.a, "b": line.b, "c": line.c, "d": line.d},
        "degenerate": verdict.degenerate,
        "splitting": verdict.splitting,
        "x_infinity": is_x_infinity_line(*real_data),
        "quaternions": {"q0": t.q0, "q1": t.q1, "p0": t.p0, "p1": t.p1},
        "product": t.product(),
    }


def _fibration_point(value) -> Any:
    return "inf" if value is None else value


@service
def quadric_fibration(payload, *, config: RunConfig) -> Dict[str, Any]:
    t = parse_quat_tuple(payload)
    first, second = fibration(t)
    return {
        "fibration": [_fibration_point(first), _fibration_point(second)],
        "x_infinity": is_x_infinity(t),
    }


@service
def quadric_orbit(first, second, *, config: RunConfig) -> Dict[str, Any]:
    t1, t2 = parse_quat_tuple(first), parse_quat_tuple(second)
    witness = orbit_equivalent(t1, t2)
    if witness is None:
        return {"equivalent": False}
    return {"equivalent": True, "u": witness.u, "r": witness.r}


@service
def quadric_metric(point: Optional[Dict[str, Any]] = None, *, config: RunConfig) -> Dict[str, Any]:
    positive, negative = metric_signature()
    report: Dict[str, Any] = {"signature": [positive, negative]}
    if point is not None:
        if not isinstance(point, dict) or "x" not in point or "y" not in point:
            raise InvalidInputError("A point is given by {\"x\", \"y\"}.")
        x, y = parse_vector(point["x"], 4), parse_vector(point["y"], 4)
        X = s1_field(x, y)
        gram = hx_gram(x, y)
        report.update(
            length=metric_eval(X, X),
            hx_gram=gram.gram,
            hx_nondegenerate=gram.nondegenerate,
        )
    return report


@service
def quadric_convention(*, config: RunConfig) -> Dict[str, Any]:
    result = certify_convention()
    return {
        "convention": result.convention.index,
        "certified": result.convention.certified,
        "printed_certified": result.printed_certified,
        "certified_count": result.certified_count,
    }


# ---------------------------------------------------------------------------
# Blow-up
# ---------------------------------------------------------------------------

@service
def blowup_classify(payload, *, config: RunConfig) -> Dict[str, Any]:
    section = parse_section(payload)
    stratum = classify_section(section)
    report = {
        "stratum": stratum,
        "normal_bundle": SPLITTINGS[stratum],
        "real": is_real_section(section),
    }
    if report["real"] and not section.c.is_zero:
        report["quaternion"] = real_chart(section)
    return report


@service
def blowup_module_report(payload, *, config: RunConfig) -> Dict[str, Any]:
    section = parse_section(payload)
    km = blowup_module(section)
    cert = slice_injectivity_certificate(km, seed=config.seed, trials=config.trials)
    if not cert.passed:
        raise PropertyViolation("Blow-up module has a degenerate slice.", "blowup_slices", cert.witness)
    return {
        "maps": list(km.maps),
        "certificate": cert.kind,
        "gcd": cert.gcd,
        "stratum": classify_section(section),
    }


@service
def module_certificate(payload, *, config: RunConfig) -> Dict[str, Any]:
    km = parse_module(payload)
    cert = slice_injectivity_certificate(km, seed=config.seed, trials=config.trials)
    report: Dict[str, Any] = {
        "r": km.r,
        "k": km.k,
        "n": km.n,
        "certificate": cert.kind,
        "witness": cert.witness,
        "trials": cert.trials,
    }
    if km.r > 2:
        report["pencils"] = {f"{i},{j}": c.kind for (i, j), c in pencil_certificates(km).items()}
    return report


def parse_h0_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidInputError(f"h0 list must be comma-separated integers, got {text!r}.")
    if not values:
        raise InvalidInputError("h0 list is empty.")
    return values


@service
def selftest_report(suite: str = "all", variant: str = "corrected", *, config: RunConfig) -> Dict[str, Any]:
    if variant not in RECURSION_VARIANTS:
        raise InvalidInputError(f"Variant must be one of {', '.join(RECURSION_VARIANTS)}.")
    return run_selftest(suite, config, variant)
