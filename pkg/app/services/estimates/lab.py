"""Randomized ratio tests of the operator bounds.

Each trial evaluates ||Op(args)||_out / prod ||arg_i||_{e_i}. A ratio
below the constant on every trial is evidence, not a proof, that the
implementation agrees with the analysis; a kernel bug usually breaks a
bound on the first adversarial input.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.exceptions import (
    BoundFailureError,
    EstimatesError,
    InvalidParameterError,
    KdVLabError,
)
from app.models.bounds import (
    BoundReport,
    BoundSpec,
    DecayReport,
    OperatorId,
    StabilityCurve,
)
from app.models.state import FourierState
from app.services.estimates import catalog, constants
from app.services.operators import multilinear, split
from app.services.operators.resonance import a_res
from app.services.spectrum import random_state, sobolev_norm

logger = logging.getLogger(__name__)

DEFAULT_SLACK = 1.01
ADVERSARIAL_TRIALS = 4

# Which distinct input fills each argument slot.
ARGUMENT_PATTERNS: Dict[OperatorId, str] = {
    OperatorId.B1: "uv",
    OperatorId.B2: "uv",
    OperatorId.PRODUCT: "uv",
    OperatorId.B3: "uvw",
    OperatorId.B4: "uvwf",
    OperatorId.R3: "uvw",
    OperatorId.R3_LIPSCHITZ: "ab",
    OperatorId.A_RES: "v",
    OperatorId.B30: "vvv",
    OperatorId.B30_PLACED: "uuv",
    OperatorId.R3_NRES1: "uvw",
    OperatorId.B40_1: "uuuv",
    OperatorId.B40_2: "uuuv",
    OperatorId.Q_TERM: "v",
}

PLACED = {OperatorId.B30_PLACED, OperatorId.B40_1, OperatorId.B40_2}

Operator = Callable[[Sequence[FourierState], float, int], FourierState]

OPERATORS: Dict[OperatorId, Operator] = {
    OperatorId.B1: lambda a, t, n: multilinear.b1(a[0], a[1], t),
    OperatorId.B2: lambda a, t, n: multilinear.b2(a[0], a[1], t),
    OperatorId.PRODUCT: lambda a, t, n: multilinear.product(a[0], a[1]),
    OperatorId.B3: lambda a, t, n: multilinear.b3(a[0], a[1], a[2], t),
    OperatorId.B4: lambda a, t, n: multilinear.b4(a[0], a[1], a[2], a[3], t),
    OperatorId.R3: lambda a, t, n: multilinear.r3(a[0], a[1], a[2], t),
    OperatorId.B30: lambda a, t, n: split.b30_n(a[0], a[1], a[2], t, n),
    OperatorId.B30_PLACED: (
        lambda a, t, n: split.b30_n(a[0], a[1], a[2], t, n)
    ),
    OperatorId.R3_NRES1: (
        lambda a, t, n: split.r3_nres1_n(a[0], a[1], a[2], t, n)
    ),
    OperatorId.B40_1: (
        lambda a, t, n: split.b40_1_n(a[0], a[1], a[2], a[3], t, n)
    ),
    OperatorId.B40_2: (
        lambda a, t, n: split.b40_2_n(a[0], a[1], a[2], a[3], t, n)
    ),
}


def adversarial_states(m: int) -> List[FourierState]:
    """Single mode 1, single mode m, modes {1, 2} and modes {1, m}."""
    return [
        FourierState({1: 1.0}),
        FourierState({m: 1.0}),
        FourierState({1: 1.0, 2: 1.0}),
        FourierState({1: 1.0, m: 1.0}),
    ]


def input_names(spec: BoundSpec) -> List[str]:
    """Distinct inputs of a spec in order of first appearance."""
    pattern = ARGUMENT_PATTERNS[spec.operator]
    return list(dict.fromkeys(pattern))


def _input_exponents(spec: BoundSpec) -> Dict[str, float]:
    pattern = ARGUMENT_PATTERNS[spec.operator]
    if len(pattern) != len(spec.input_exponents):
        raise InvalidParameterError(
            f"{spec.bound_id}: {len(spec.input_exponents)} exponents for "
            f"{len(pattern)} arguments"
        )
    # The last slot of a repeated input carries its own exponent.
    return dict(zip(pattern, spec.input_exponents))


def _norm_product(
    spec: BoundSpec, inputs: Dict[str, FourierState]
) -> float:
    pattern = ARGUMENT_PATTERNS[spec.operator]
    value = 1.0
    for name, exponent in zip(pattern, spec.input_exponents):
        value *= sobolev_norm(inputs[name], exponent)
    return value


def _split_index(spec: BoundSpec) -> int:
    return int(spec.parameters.get("n", 0))


def _placed_numerator(
    spec: BoundSpec, inputs: Dict[str, FourierState], t: float
) -> float:
    """Sum of norms with v moved through every slot, u elsewhere."""
    pattern = ARGUMENT_PATTERNS[spec.operator]
    operator = OPERATORS[spec.operator]
    n = _split_index(spec)
    total = 0.0
    for slot in range(len(pattern)):
        args = [inputs["u"]] * len(pattern)
        args[slot] = inputs["v"]
        total += sobolev_norm(operator(args, t, n), spec.output_exponent)
    return total


def evaluate(
    spec: BoundSpec, inputs: Dict[str, FourierState], t: float
) -> Tuple[float, float]:
    """
    Numerator and denominator of the ratio for one set of inputs.

    Args:
        spec: Bound under test
        inputs: Distinct inputs keyed by their pattern letter
        t: Time entering the phases

    Returns:
        Tuple[float, float]: (||Op||_out, bound without the constant)
    """
    op = spec.operator
    out = spec.output_exponent
    params = spec.parameters

    if op == OperatorId.A_RES:
        v = inputs["v"]
        energy = sobolev_norm(v, 0.0) ** 2
        numerator = sobolev_norm(a_res(v, energy), out)
        return numerator, energy * sobolev_norm(v, spec.input_exponents[0])

    if op == OperatorId.Q_TERM:
        v = inputs["v"]
        s, epsilon = params["s"], params["epsilon"]
        energy = sobolev_norm(v, 0.0) ** 2
        quartic = multilinear.b4(v, v, v, v, t)
        q = (1j / 18.0) * quartic + (1j / 6.0) * a_res(v, energy)
        v_norm = sobolev_norm(v, s)
        bound = (
            constants.b4_constant(s, epsilon) * v_norm**4 / 18.0
            + energy * v_norm / 6.0
        )
        return sobolev_norm(q, out), bound

    if op == OperatorId.R3_LIPSCHITZ:
        a, b = inputs["a"], inputs["b"]
        s = params["s"]
        difference = multilinear.r3(a, a, a, t) - multilinear.r3(b, b, b, t)
        bound = (
            sobolev_norm(a, s) ** 2 + sobolev_norm(b, s) ** 2
        ) * sobolev_norm(a - b, s)
        return sobolev_norm(difference, out), bound

    if op == OperatorId.R3_NRES1:
        s, alpha = params["s"], params["alpha"]
        n = _split_index(spec)
        u, v, w = inputs["u"], inputs["v"], inputs["w"]
        numerator = sobolev_norm(
            split.r3_nres1_n(u, v, w, t, n), out
        )
        common = sobolev_norm(u, 0.0) * sobolev_norm(v, -alpha)
        bound = common * (
            n ** (s + 1.0 + alpha) * sobolev_norm(w, 0.0)
            + n ** (1.0 + alpha) * sobolev_norm(w, s)
        )
        return numerator, bound

    if op in PLACED:
        return _placed_numerator(spec, inputs, t), _norm_product(spec, inputs)

    pattern = ARGUMENT_PATTERNS[op]
    args = [inputs[name] for name in pattern]
    value = OPERATORS[op](args, t, _split_index(spec))
    return sobolev_norm(value, out), _norm_product(spec, inputs)


def _trial_inputs(
    spec: BoundSpec,
    trial: int,
    m: int,
    rng: np.random.Generator,
    adversarial: bool,
) -> Tuple[Dict[str, FourierState], float]:
    names = input_names(spec)
    if adversarial and trial < ADVERSARIAL_TRIALS:
        state = adversarial_states(m)[trial]
        # Distinct scales keep differences of inputs nonzero.
        return {
            name: state * (1.0 / (j + 1)) for j, name in enumerate(names)
        }, 0.0
    exponents = _input_exponents(spec)
    inputs = {
        name: random_state(
            int(rng.integers(0, 2**32)), m, exponents[name], 1.0
        )
        for name in names
    }
    return inputs, float(rng.uniform(0.0, 1.0))


def empirical_ratio(
    spec: BoundSpec,
    trials: int,
    m: int,
    seed: int,
    slack: float = DEFAULT_SLACK,
    strict: bool = False,
    adversarial: bool = True,
) -> BoundReport:
    """
    Run a batch of ratio trials for one bound.

    The first four trials use the adversarial single- and two-mode
    inputs; the rest draw random states normalised at each input's
    exponent, at random times in [0, 1).

    Args:
        spec: Bound under test
        trials: Number of trials, >= 1
        m: Support bound of the random inputs
        seed: Batch seed
        slack: Relative roundoff allowance on the constant
        strict: Raise BoundFailureError when the bound fails
        adversarial: Include the adversarial inputs

    Returns:
        BoundReport: Ratios, the worst trial and the verdict (None for
        empirical bounds)

    Raises:
        BoundFailureError: In strict mode, if max ratio > slack * constant
        EstimatesError: For unexpected failures
    """
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    if m < 2:
        raise InvalidParameterError(f"m must be >= 2, got {m}")
    rng = np.random.default_rng(seed)
    ratios: List[float] = []
    try:
        for trial in range(trials):
            inputs, t = _trial_inputs(spec, trial, m, rng, adversarial)
            numerator, denominator = evaluate(spec, inputs, t)
            if denominator <= 0:
                logger.debug(
                    f"{spec.bound_id}: trial {trial} has a zero bound"
                )
                ratios.append(0.0)
                continue
            ratios.append(numerator / denominator)
    except KdVLabError:
        raise
    except Exception as e:
        logger.error(
            f"Ratio batch for {spec.bound_id} failed: {e}", exc_info=True
        )
        raise EstimatesError(str(e)) from e

    worst = int(np.argmax(ratios))
    passed: Optional[bool] = None
    if spec.constant is not None:
        passed = ratios[worst] <= spec.constant * slack
    report = BoundReport(
        spec=spec,
        m=m,
        trials=trials,
        ratios=ratios,
        worst_trial=worst,
        passed=passed,
        seed=seed,
        slack=slack,
    )
    logger.info(
        f"{spec.bound_id} at m={m}: max ratio {report.max_ratio:.6g}"
        + (
            ""
            if spec.constant is None
            else f" vs constant {spec.constant:.6g}"
        )
    )
    if passed is False and spec.constant is not None:
        logger.warning(
            f"{spec.bound_id} exceeded its constant at trial {worst}"
        )
        if strict:
            raise BoundFailureError(
                spec.bound_id, report.max_ratio, spec.constant
            )
    return report


def run_suite(
    name: str,
    trials: int,
    m_values: Sequence[int],
    seed: int,
    overrides: Optional[Dict[str, float]] = None,
    strict: bool = False,
) -> List[BoundReport]:
    """
    Run every bound of a named suite at every truncation size.

    Returns:
        List[BoundReport]: One report per (bound, m), in suite order
    """
    specs = catalog.suite(name, overrides)
    logger.info(
        f"Running suite '{name}': {len(specs)} bounds, m in "
        f"{list(m_values)}, {trials} trials"
    )
    reports = [
        empirical_ratio(spec, trials, m, seed, strict=strict)
        for spec in specs
        for m in m_values
    ]
    failed = [r.bound_id for r in reports if r.passed is False]
    if failed:
        logger.warning(f"Suite '{name}' failures: {sorted(set(failed))}")
    return reports


def stability_curve(
    spec: BoundSpec, trials: int, m_values: Sequence[int], seed: int
) -> StabilityCurve:
    """Max ratio of a bound at each m of an increasing sequence."""
    ordered = sorted(m_values)
    maxima = [
        empirical_ratio(spec, trials, m, seed).max_ratio for m in ordered
    ]
    curve = StabilityCurve(
        bound_id=spec.bound_id, m_values=ordered, max_ratios=maxima
    )
    if not curve.stable:
        logger.warning(
            f"{spec.bound_id}: max ratio not stable under m doubling "
            f"({maxima})"
        )
    return curve


def n_sweep(
    bound_id: str,
    n_values: Sequence[int],
    trials: int,
    m: int,
    seed: int,
    **parameters: float,
) -> List[BoundReport]:
    """Reports of one split-family bound across split indices."""
    return [
        empirical_ratio(
            catalog.bound_spec(bound_id, n=n, **parameters), trials, m, seed
        )
        for n in n_values
    ]


def b30_decay_check(
    s: float,
    n_small: int,
    n_large: int,
    trials: int,
    m: int,
    seed: int,
) -> DecayReport:
    """
    Compare the n-decay of the split trilinear term with n^{-s}.

    Only random inputs are used: the adversarial ones sit above both
    split indices and would show no decay at all.
    """
    if not 0 < n_small < n_large:
        raise InvalidParameterError(
            f"Need 0 < n_small < n_large, got {n_small}, {n_large}"
        )
    maxima = [
        empirical_ratio(
            catalog.bound_spec("R30", s=s, n=n),
            trials,
            m,
            seed,
            adversarial=False,
        ).max_ratio
        for n in (n_small, n_large)
    ]
    report = DecayReport(
        s=s,
        n_small=n_small,
        n_large=n_large,
        max_small=maxima[0],
        max_large=maxima[1],
    )
    logger.info(
        f"B30 decay n={n_small}->{n_large}: observed {report.observed:.4g}, "
        f"predicted {report.expected:.4g}"
    )
    return report


def qbound_check(
    s: float,
    epsilon: float,
    trials: int,
    m: int = 16,
    seed: int = 0,
) -> BoundReport:
    """Ratio test of the quartic-plus-resonant right-hand side."""
    spec = catalog.bound_spec("EE11", s=s, epsilon=epsilon)
    return empirical_ratio(spec, trials, m, seed)
