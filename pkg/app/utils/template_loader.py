"""Template loading and rendering of the plain-text run reports."""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader, StrictUndefined

logger = logging.getLogger(__name__)

# Project root is the parent of app/
PROJECT_ROOT = Path(__file__).parent.parent.parent
TEMPLATES_DIR = PROJECT_ROOT / "templates"
REPORT_TEMPLATE = "reports/summary.txt.j2"

_jinja_env: Optional[Environment] = None


def get_jinja_env() -> Environment:
    """
    Get or create the Jinja2 environment.

    Reports are plain text, so autoescaping stays off and undefined
    variables raise instead of rendering as empty strings.

    Returns:
        Environment: Configured Jinja2 environment
    """
    global _jinja_env
    if _jinja_env is None:
        _jinja_env = Environment(
            loader=FileSystemLoader(str(TEMPLATES_DIR)),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )
        logger.debug(f"Initialized Jinja2 environment from {TEMPLATES_DIR}")
    return _jinja_env


def render_template(template_path: str, context: Dict[str, Any]) -> str:
    """
    Render a Jinja2 template with the given context.

    Args:
        template_path: Path relative to the templates directory
        context: Variables passed to the template

    Returns:
        str: Rendered text

    Raises:
        jinja2.TemplateNotFound: If the template does not exist
    """
    env = get_jinja_env()
    try:
        template = env.get_template(template_path)
        return template.render(**context)
    except Exception as e:
        logger.error(
            f"Error rendering template {template_path}: {e}", exc_info=True
        )
        raise


def _format_value(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_report(
    subcommand: str,
    seed: int,
    highlights: Sequence[Tuple[str, Any]],
    artifacts: Sequence[Path],
    status: str = "ok",
) -> str:
    """
    Human-readable summary printed at the end of a CLI run.

    Args:
        subcommand: Name of the subcommand
        seed: Seed recorded in the artifacts
        highlights: (label, value) pairs in display order
        artifacts: Files written by the run
        status: Final status word

    Returns:
        str: The report text
    """
    rows: List[Tuple[str, str]] = [
        (label, _format_value(value)) for label, value in highlights
    ]
    width = max((len(label) for label, _ in rows), default=0)
    return render_template(
        REPORT_TEMPLATE,
        {
            "subcommand": subcommand,
            "seed": seed,
            "rows": rows,
            "width": width,
            "artifacts": [str(path) for path in artifacts],
            "status": status,
        },
    )
