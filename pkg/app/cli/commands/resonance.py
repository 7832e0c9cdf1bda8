"""resonance: closed-form resonant sum against brute-force summation."""

import argparse
import logging

from app.cli.helpers import (
    add_datum_arguments,
    common_parser,
    finish,
    initial_state,
    table_path,
)
from app.config import RunConfig
from app.services.operators import (
    a_res,
    enumerate_resonant,
    resonance_split,
    resonant_class_sums,
    resonant_sum,
)
from app.services.spectrum import sobolev_norm
from app.utils.serialization import write_table

logger = logging.getLogger(__name__)

NAME = "resonance"

CLASS_COLUMNS = ["class", "k", "re", "im"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        NAME,
        parents=[common_parser()],
        help="Compare the resonant closed form with brute force",
    )
    add_datum_arguments(parser)


def _relative(difference: float, scale: float) -> float:
    return difference / scale if scale > 0 else difference


def run(config: RunConfig) -> int:
    v = initial_state(config)
    energy = sobolev_norm(v, 0.0) ** 2
    brute, nonresonant = resonance_split(v, v, v, 0.0)
    by_class = resonant_class_sums(v)
    closed = resonant_sum(v)
    formula = a_res(v, energy)

    scale = sobolev_norm(brute, 0.0)
    class_error = _relative(sobolev_norm(closed - brute, 0.0), scale)
    formula_error = _relative(sobolev_norm(formula - brute, 0.0), scale)
    passed = max(class_error, formula_error) < config.tol

    support = max(v.support_bound, 1)
    counts = {
        str(k): len(enumerate_resonant(k, support))
        for k in range(1, min(support, 4) + 1)
    }
    rows = [
        [cls.value, k, z.real, z.imag]
        for cls, part in by_class.items()
        for k, z in part.items()
    ]
    table = write_table(
        table_path(config, "classes"), CLASS_COLUMNS, rows, config.format
    )
    results = {
        "energy": energy,
        "resonant_norm": scale,
        "nonresonant_norm": sobolev_norm(nonresonant, 0.0),
        "class_sum_error": class_error,
        "a_res_error": formula_error,
        "class_norms": {
            cls.value: sobolev_norm(part, 0.0)
            for cls, part in by_class.items()
        },
        "resonant_triples": counts,
    }
    highlights = [
        ("support", v.support_bound),
        ("energy", energy),
        ("class sums vs brute force", class_error),
        ("A_res vs brute force", formula_error),
    ]
    return finish(config, results, highlights, [table], passed)
