"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Command line entry: reads a scenario file, runs one pipeline and writes its reports.
Exit status 0 when every suite passes, 1 on a failed suite or domain error,
2 on a configuration error.
"""

import argparse
import logging
import os

from errors import IsolineException
from field_kit.config import load_config
from out import RunOutput
from .pipelines import PIPELINES, RUNNERS

logger = logging.getLogger(__name__)

LOG_FORMAT = 'isoline: %(asctime)s - %(name)s - %(levelname)s - %(message)s'
VERBOSITY = {'debug': logging.DEBUG, 'info': logging.INFO,
             'warning': logging.WARNING, 'error': logging.ERROR}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def setup_logging(level: str = 'info') -> None:
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(VERBOSITY[level])


def run(pipeline: str, config: str, out: str, seed: int = None, nx: int = None, nt: int = None,
        workers: int = None) -> int:
    """Runs pipeline on the scenario file config and writes into out. Returns the exit status."""
    if pipeline not in PIPELINES:
        logger.error(f'Unknown pipeline "{pipeline}", expected one of {PIPELINES}')
        return EXIT_CONFIG
    overrides = {('run', 'seed'): seed, ('grid', 'nx'): nx, ('grid', 'nt'): nt,
                 ('run', 'workers'): workers}
    try:
        run_config = load_config(config, overrides)
    except IsolineException as e:
        # grid and datum errors raised while building the config count as config errors
        logger.error(e.get_message())
        return EXIT_CONFIG

    output = RunOutput(out)
    output.init_root()
    output.create_manifest({'config': os.path.basename(config),
                            'pipeline': pipeline,
                            'seed': run_config.seed,
                            'tolerances': run_config.tolerances,
                            'scenario': run_config.echo})
    try:
        suites = RUNNERS[pipeline](run_config, output)
    except IsolineException as e:
        logger.error(e.get_message())
        output.write_summary({'pipeline': pipeline, 'passed': False,
                              'error': {'type': type(e).__name__, 'detail': e.detail},
                              'suites': []})
        return EXIT_FAILED

    passed = all(suite.passed for suite in suites)
    output.write_summary({'pipeline': pipeline, 'passed': passed,
                          'suites': [suite.as_dict() for suite in suites]})
    for suite in suites:
        for diagnostic in suite.failures():
            logger.error(f'Suite {suite.name} failed: {diagnostic.name} = {diagnostic.value}'
                         + (f' at {diagnostic.where}' if diagnostic.where else ''))
    logger.info(f'Pipeline {pipeline} {"passed" if passed else "failed"}, '
                f'wrote {", ".join(output.written)}')
    return EXIT_OK if passed else EXIT_FAILED


def parse_args(argv: list = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog='isoline',
                                     description='Transport by nearly incompressible fields '
                                                 'in one dimension.')
    parser.add_argument('--pipeline', required=True, choices=PIPELINES)
    parser.add_argument('--config', required=True, help='INI scenario file')
    parser.add_argument('--out', required=True, help='output directory')
    parser.add_argument('--seed', type=int, help='overrides [run] seed')
    parser.add_argument('--nx', type=int, help='overrides [grid] nx')
    parser.add_argument('--nt', type=int, help='overrides [grid] nt')
    parser.add_argument('--workers', type=int, help='overrides [run] workers')
    parser.add_argument('--verbosity', default='info', choices=tuple(VERBOSITY))
    return parser.parse_args(argv)


def main(argv: list = None) -> int:
    args = parse_args(argv)
    setup_logging(args.verbosity)
    return run(args.pipeline, args.config, args.out, args.seed, args.nx, args.nt, args.workers)
