"""
Write the data of every figure and re-check it.

usage - figures into ./figures:
    uv run python3 path/to/reproduce_figures.py
usage - selected figures into another directory:
    uv run python3 path/to/reproduce_figures.py --output-dir out --only fig7,fig9
"""

import sys

from loguru import logger

sys.path.append("..")
sys.path.append(".")

from chiral_qw import configuration, constants
from chiral_qw.cli import HelpfulParser
from chiral_qw.figures import verify_figures, write_figures
from chiral_qw.utils import config_logger

if __name__ == "__main__":
    parser = HelpfulParser(description="Write the figure data CSVs and verify them.")
    parser.add_argument(
        "--config",
        "-c",
        type=str,
        help="Path to the configuration file.",
        default="configuration.yaml",
    )
    parser.add_argument(
        "--output-dir",
        "-o",
        type=str,
        help="Directory for the CSVs. If not provided, CHIRAL_QW_OUTPUT_DIR or the figures section of the configuration file is used.",
        required=False,
    )
    parser.add_argument(
        "--only",
        type=str,
        help="Comma-separated subset of the figures, e.g. 'fig7,fig12'.",
        required=False,
    )
    parser.add_argument(
        "--logging",
        "-l",
        action="store_true",
        help="Enable logging. Default is True.",
        default=True,
    )

    args = parser.parse_args()
    config = configuration(args.config)

    if args.logging:
        logger.enable("chiral_qw")
        config_logger(**config)

    names = args.only.split(",") if args.only else constants.FIGURE_NAMES
    write_figures(output_dir=args.output_dir, names=names, **config)
    failures = verify_figures(args.output_dir, names=names, **config)

    for name, messages in failures.items():
        logger.info(f"{name}: {'ok' if not messages else '; '.join(messages)}")
    sys.exit(1 if any(failures.values()) else 0)
