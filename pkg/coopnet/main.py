"""
CoopNet – command-line entry point.

Run with:
    cd coopnet
    python main.py compare --topologies 100 --iterations 300
"""
import sys
import os

# Load .env BEFORE any project imports that read environment variables
# (config.py reads COOPNET_* at import time)
from dotenv import load_dotenv
load_dotenv()

# Ensure the coopnet directory is on the path so absolute imports work
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import argparse
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from cli.commands import cmd_compare, cmd_run, cmd_sweep_alpha, cmd_sweep_nu
from cli.config_loader import ConfigError, parse_bool, parse_config, parse_float_list, parse_seed
from config import APP_NAME, APP_VERSION, LOG_LEVEL
from models.schemas import StrategyVariant
from simulation.errors import SimulationError
from utils.logging_config import setup_logging

# argparse dest -> SimConfig field
FLAG_FIELDS = {
    "strategy": "strategy",
    "nodes": "nodes",
    "radius": "radius",
    "alpha": "pathloss_exponent",
    "nu": "nu",
    "slots": "slots_per_iteration",
    "iterations": "iterations",
    "topologies": "topologies",
    "seed": "master_seed",
    "improvement_mode": "improvement_mode",
    "tie_improves": "tie_is_improvement",
    "bins": "bins",
    "out_dir": "out_dir",
    "trace": "trace",
    "workers": "workers",
    "initial_fitness": "initial_fitness",
    "cache_baseline": "cache_baseline",
    "dump_topologies": "dump_topologies",
    "nu_values": "nu_values",
    "alpha_values": "alpha_values",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="config file with `key = value` lines")
    common.add_argument("--strategy", type=StrategyVariant.parse, help="def | coop | tft | wsls")
    common.add_argument("--nodes", type=int, help="number of nodes M")
    common.add_argument("--radius", type=float, help="disk radius r")
    common.add_argument("--alpha", type=float, help="path-loss exponent")
    common.add_argument("--nu", type=float, help="range-reduction factor in (0, 1)")
    common.add_argument("--slots", type=int, help="slots per iteration T")
    common.add_argument("--iterations", type=int, help="iterations N")
    common.add_argument("--topologies", type=int, help="number of topologies N_t")
    common.add_argument("--seed", type=parse_seed, help="master seed (fallback: $COOPNET_SEED)")
    common.add_argument("--improvement-mode", choices=["literal", "differential"])
    common.add_argument("--tie-improves", type=parse_bool, metavar="{true|false}")
    common.add_argument("--bins", type=int, help="radial bins for the curves")
    common.add_argument("--out-dir", type=Path, help="directory for CSV reports")
    common.add_argument("--trace", action="store_const", const=True, help="write per-slot logs")
    common.add_argument("--workers", type=int, help="worker processes")
    common.add_argument("--initial-fitness", type=float, help="fitness F0 of every node")
    common.add_argument("--cache-baseline", action="store_const", const=True,
                        help="reuse the DEF baseline from disk when available")
    common.add_argument("--dump-topologies", action="store_const", const=True,
                        help="write node positions as node_id,x,y")

    parser = argparse.ArgumentParser(
        prog="coopnet",
        description=f"{APP_NAME} {APP_VERSION}: energy use of cooperative relaying under local strategies",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="DEF baseline plus one strategy")
    sub.add_parser("compare", parents=[common], help="all four strategies on shared seeds")
    sweep_nu = sub.add_parser("sweep-nu", parents=[common], help="mean energy across nu values")
    sweep_nu.add_argument("--nu-values", type=parse_float_list, help="comma-separated nu values")
    sweep_alpha = sub.add_parser("sweep-alpha", parents=[common], help="mean energy across path-loss exponents")
    sweep_alpha.add_argument("--alpha-values", type=parse_float_list, help="comma-separated exponents")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    # Root logger, so records from every module reach the handlers
    logger = setup_logging(None, LOG_LEVEL)
    args = build_parser().parse_args(argv)
    overrides = {
        field: getattr(args, dest)
        for dest, field in FLAG_FIELDS.items()
        if getattr(args, dest, None) is not None
    }

    try:
        config = parse_config(args.config, overrides)
        if args.command == "run":
            return cmd_run(config)
        if args.command == "compare":
            return cmd_compare(config)
        if args.command == "sweep-nu":
            return cmd_sweep_nu(config, config.nu_values)
        return cmd_sweep_alpha(config, config.alpha_values)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return 2
    except (SimulationError, ValidationError) as e:
        logger.error(f"Invalid parameters: {e}")
        return 2
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
