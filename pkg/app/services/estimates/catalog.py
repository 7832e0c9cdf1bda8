"""Catalog of operator bounds with their validity ranges.

``bound_spec(bound_id, **parameters)`` checks the parameters against the
range in which the inequality is known to hold and returns a frozen
``BoundSpec``. Closed bounds carry their constant; empirical bounds only
fix the exponents and are tracked through stability curves.
"""

import logging
from typing import Callable, Dict, List, Optional

from app.exceptions import InvalidParameterError, LemmaRangeError
from app.models.bounds import BoundSpec, OperatorId
from app.services.estimates import constants

logger = logging.getLogger(__name__)

Builder = Callable[[Dict[str, float]], BoundSpec]

DEFAULT_PARAMETERS: Dict[str, Dict[str, float]] = {
    "B1": {"theta": 2.0},
    "B2": {"s": 0.0},
    "product": {"s": 1.0},
    "negB2": {"S": 1.0},
    "B21": {"s": 0.0, "alpha": 0.5},
    "negB21": {"s": -1.0},
    "B3": {"s": 0.0},
    "B3neg": {"eta": 0.1},
    "R30": {"s": 1.0, "n": 4},
    "R30neg": {"s": -0.25, "alpha": 0.25, "n": 4},
    "R310": {"s": 0.5, "n": 4},
    "R31": {"s": 0.5, "alpha": 0.25, "n": 4},
    "B4": {"s": 0.0, "epsilon": 0.25},
    "B41n": {"s": 0.0, "n": 4, "theta0": 0.0},
    "B42n": {"s": 0.0, "n": 4, "theta0": 0.0},
    "Ares": {"s": 0.0},
    "R3": {"s": 1.0},
    "LipR3": {"s": 1.0},
    "minR3": {"S": 1.0, "beta": 0.25},
    "EE11": {"s": 0.0, "epsilon": 0.25},
}


def _require(bound_id: str, condition: bool, text: str) -> None:
    if not condition:
        raise LemmaRangeError(bound_id, text)


def _split_index(bound_id: str, params: Dict[str, float]) -> int:
    n = params["n"]
    _require(
        bound_id, float(n).is_integer() and n >= 1, "n must be an integer >= 1"
    )
    return int(n)


def _b1(params: Dict[str, float]) -> BoundSpec:
    theta = params["theta"]
    _require("B1", theta > 1.5, "theta > 3/2")
    return BoundSpec(
        bound_id="B1",
        operator=OperatorId.B1,
        input_exponents=(0.0, 0.0),
        output_exponent=-theta,
        constant=constants.b1_constant(theta),
        parameters=params,
        description="B1 maps H^0 x H^0 into H^{-theta}",
    )


def _b2(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("B2", s > -0.5, "s > -1/2")
    return BoundSpec(
        bound_id="B2",
        operator=OperatorId.B2,
        input_exponents=(s, s),
        output_exponent=s + 1.0,
        constant=constants.b2_constant(s),
        parameters=params,
        description="B2 gains one derivative on H^s x H^s",
    )


def _product(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("product", s > 0.5, "s > 1/2")
    return BoundSpec(
        bound_id="product",
        operator=OperatorId.PRODUCT,
        input_exponents=(s, s),
        output_exponent=s,
        constant=constants.product_constant(s),
        parameters=params,
        description="H^s is an algebra for s > 1/2",
    )


def _neg_b2(params: Dict[str, float]) -> BoundSpec:
    S = params["S"]
    _require("negB2", S > 0.5, "S > 1/2")
    return BoundSpec(
        bound_id="negB2",
        operator=OperatorId.B2,
        input_exponents=(-1.0, -1.0),
        output_exponent=-S,
        constant=constants.negative_b2_constant(S),
        parameters=params,
        description="B2 maps H^{-1} x H^{-1} into H^{-S}",
    )


def _b21(params: Dict[str, float]) -> BoundSpec:
    s, alpha = params["s"], params["alpha"]
    _require("B21", s + alpha >= 0, "s + alpha >= 0")
    _require("B21", alpha < 0.75, "alpha < 3/4")
    _require("B21", s > -0.75, "s > -3/4")
    return BoundSpec(
        bound_id="B21",
        operator=OperatorId.B2,
        input_exponents=(s, s),
        output_exponent=s + alpha,
        parameters=params,
        description="B2 maps H^s x H^s into H^{s+alpha}",
    )


def _neg_b21(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("negB21", -1.75 < s <= 0, "-7/4 < s <= 0")
    return BoundSpec(
        bound_id="negB21",
        operator=OperatorId.B2,
        input_exponents=(0.0, s),
        output_exponent=s,
        parameters=params,
        description="B2 maps H^0 x H^s into H^s",
    )


def _b3(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("B3", s >= 0, "s >= 0")
    return BoundSpec(
        bound_id="B3",
        operator=OperatorId.B3,
        input_exponents=(s, s, s),
        output_exponent=s + 2.0,
        constant=constants.b3_constant(s),
        parameters=params,
        description="B3 gains two derivatives on (H^s)^3",
    )


def _b3_neg(params: Dict[str, float]) -> BoundSpec:
    eta = params["eta"]
    _require("B3neg", eta < 0.25, "eta < 1/4")
    return BoundSpec(
        bound_id="B3neg",
        operator=OperatorId.B3,
        input_exponents=(-eta, -eta, -eta),
        output_exponent=2.0 - 4.0 * eta,
        parameters=params,
        description="B3 maps (H^{-eta})^3 into H^{2-4 eta}",
    )


def _r30(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("R30", 0 < s <= 1, "0 < s <= 1")
    n = _split_index("R30", params)
    return BoundSpec(
        bound_id="R30",
        operator=OperatorId.B30,
        input_exponents=(0.0, 0.0, s),
        output_exponent=s,
        constant=constants.b30_constant(s, n),
        parameters=params,
        description="B30(v, v, v) decays like n^{-s} in H^s",
    )


def _r30_neg(params: Dict[str, float]) -> BoundSpec:
    s, alpha = params["s"], params["alpha"]
    _split_index("R30neg", params)
    p = -s
    _require("R30neg", p >= 0, "s <= 0")
    _require("R30neg", alpha > 0, "alpha > 0")
    _require("R30neg", p + alpha < 5.0 / 6.0, "-s + alpha < 5/6")
    return BoundSpec(
        bound_id="R30neg",
        operator=OperatorId.B30,
        input_exponents=(s, s, s),
        output_exponent=s,
        parameters=params,
        description="B30(v, v, v) on H^s for s <= 0",
    )


def _r310(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _split_index("R310", params)
    if s > 0:
        _require("R310", s <= 1, "0 < s <= 1")
    else:
        alpha = params.get("alpha", 0.0)
        _require("R310", -s <= 1, "-s <= 1")
        _require("R310", alpha > 0, "alpha > 0")
        _require("R310", -s + 2 * alpha < 5.0 / 3.0, "-s + 2 alpha < 5/3")
    return BoundSpec(
        bound_id="R310",
        operator=OperatorId.B30_PLACED,
        input_exponents=(0.0, 0.0, s),
        output_exponent=s,
        parameters=params,
        description="B30 with v in each slot against ||u||_0^2 ||v||_s",
    )


def _r31(params: Dict[str, float]) -> BoundSpec:
    s, alpha = params["s"], params["alpha"]
    _split_index("R31", params)
    _require("R31", 0 <= s <= 1, "0 <= s <= 1")
    _require("R31", alpha >= 0, "alpha >= 0")
    return BoundSpec(
        bound_id="R31",
        operator=OperatorId.R3_NRES1,
        input_exponents=(0.0, -alpha, 0.0),
        output_exponent=s,
        parameters=params,
        description="Low-high remainder of R3 with n-dependent weights",
    )


def _b4(params: Dict[str, float]) -> BoundSpec:
    s, epsilon = params["s"], params["epsilon"]
    _require("B4", s >= 0, "s >= 0")
    _require("B4", 0 < epsilon < 0.5, "0 < epsilon < 1/2")
    return BoundSpec(
        bound_id="B4",
        operator=OperatorId.B4,
        input_exponents=(s, s, s, s),
        output_exponent=s + epsilon,
        constant=constants.b4_constant(s, epsilon),
        parameters=params,
        description="B4 gains epsilon derivatives on (H^s)^4",
    )


def _b40(bound_id: str, operator: OperatorId) -> Builder:
    def build(params: Dict[str, float]) -> BoundSpec:
        s = params["s"]
        theta0 = params.get("theta0", 0.0)
        _split_index(bound_id, params)
        if s < 0.5:
            _require(bound_id, s > -1.5, "-3/2 < s < 1/2")
            low = 0.0
        else:
            _require(bound_id, theta0 > s - 0.5, "theta0 > s - 1/2")
            low = theta0
        return BoundSpec(
            bound_id=bound_id,
            operator=operator,
            input_exponents=(low, low, low, s),
            output_exponent=s,
            parameters=params,
            description=f"{operator.value} with v in each slot",
        )

    return build


def _a_res(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("Ares", s >= 0, "s >= 0")
    return BoundSpec(
        bound_id="Ares",
        operator=OperatorId.A_RES,
        input_exponents=(s,),
        output_exponent=s + 1.0,
        constant=1.0,
        parameters=params,
        description="A_res(v) against ||v||_0^2 ||v||_s in H^{s+1}",
    )


def _r3(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("R3", s > 0.5, "s > 1/2")
    return BoundSpec(
        bound_id="R3",
        operator=OperatorId.R3,
        input_exponents=(s, s, s),
        output_exponent=s,
        constant=constants.r3_constant(s),
        parameters=params,
        description="R3 is bounded on (H^s)^3",
    )


def _lip_r3(params: Dict[str, float]) -> BoundSpec:
    s = params["s"]
    _require("LipR3", s > 0.5, "s > 1/2")
    return BoundSpec(
        bound_id="LipR3",
        operator=OperatorId.R3_LIPSCHITZ,
        input_exponents=(s, s),
        output_exponent=s,
        constant=constants.r3_lipschitz_constant(s),
        parameters=params,
        description="v -> R3(v, v, v) is locally Lipschitz on H^s",
    )


def _min_r3(params: Dict[str, float]) -> BoundSpec:
    S, beta = params["S"], params["beta"]
    _require("minR3", S > 0.5, "S > 1/2")
    _require("minR3", beta < 0.5, "beta < 1/2")
    return BoundSpec(
        bound_id="minR3",
        operator=OperatorId.R3,
        input_exponents=(-beta, 0.0, 0.0),
        output_exponent=-S,
        parameters=params,
        description="R3 maps H^{-beta} x H^0 x H^0 into H^{-S}",
    )


def _q_term(params: Dict[str, float]) -> BoundSpec:
    s, epsilon = params["s"], params["epsilon"]
    _require("EE11", s >= 0, "s >= 0")
    _require("EE11", 0 < epsilon < 0.5, "0 < epsilon < 1/2")
    return BoundSpec(
        bound_id="EE11",
        operator=OperatorId.Q_TERM,
        input_exponents=(s,),
        output_exponent=s + epsilon,
        constant=1.0,
        parameters=params,
        description="Right-hand side of the second form against its "
        "two-term bound",
    )


BUILDERS: Dict[str, Builder] = {
    "B1": _b1,
    "B2": _b2,
    "product": _product,
    "negB2": _neg_b2,
    "B21": _b21,
    "negB21": _neg_b21,
    "B3": _b3,
    "B3neg": _b3_neg,
    "R30": _r30,
    "R30neg": _r30_neg,
    "R310": _r310,
    "R31": _r31,
    "B4": _b4,
    "B41n": _b40("B41n", OperatorId.B40_1),
    "B42n": _b40("B42n", OperatorId.B40_2),
    "Ares": _a_res,
    "R3": _r3,
    "LipR3": _lip_r3,
    "minR3": _min_r3,
    "EE11": _q_term,
}

SUITES: Dict[str, List[str]] = {
    "appendix-default": [
        "B1",
        "B2",
        "product",
        "negB2",
        "B3",
        "R30",
        "B4",
        "Ares",
        "R3",
        "LipR3",
        "EE11",
    ],
    "appendix-empirical": [
        "B21",
        "negB21",
        "R30neg",
        "R310",
        "R31",
        "B41n",
        "B42n",
        "minR3",
    ],
}


def bound_spec(bound_id: str, **parameters: float) -> BoundSpec:
    """
    Build a validated BoundSpec from the catalog.

    Args:
        bound_id: Catalog identifier
        **parameters: Overrides of the default exponents

    Returns:
        BoundSpec: The bound with its constant, if one is known

    Raises:
        InvalidParameterError: If the identifier is unknown
        LemmaRangeError: If the parameters leave the validity range
    """
    builder = BUILDERS.get(bound_id)
    if builder is None:
        raise InvalidParameterError(
            f"Unknown bound '{bound_id}'",
            detail=f"Known bounds: {', '.join(sorted(BUILDERS))}",
        )
    params = {**DEFAULT_PARAMETERS[bound_id], **parameters}
    return builder({k: float(v) for k, v in params.items()})


def suite(
    name: str, overrides: Optional[Dict[str, float]] = None
) -> List[BoundSpec]:
    """
    Specs of a named suite.

    ``overrides`` is applied to every spec that uses the parameter;
    specs whose range the override leaves are skipped with a warning.
    """
    ids = SUITES.get(name)
    if ids is None:
        raise InvalidParameterError(
            f"Unknown suite '{name}'",
            detail=f"Known suites: {', '.join(sorted(SUITES))}",
        )
    specs = []
    for bound_id in ids:
        defaults = DEFAULT_PARAMETERS[bound_id]
        relevant = {
            k: v for k, v in (overrides or {}).items() if k in defaults
        }
        try:
            specs.append(bound_spec(bound_id, **relevant))
        except LemmaRangeError as e:
            logger.warning(f"Skipping {bound_id}: {e.message}")
    return specs
