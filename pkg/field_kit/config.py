"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Reads INI-style scenario files into a RunConfig.
Unknown sections and keys are rejected.
"""

import configparser
import logging
from dataclasses import dataclass, field

from .datum import InitialDatum
from .generators import HamiltonianGenerator
from .grid import SpaceTimeGrid
from .input_validate import input_validate, ConfigException
from .parameter import default_items
from .scenarios import ScenarioConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    path: str
    grid: SpaceTimeGrid
    scenario: ScenarioConfig
    datum_params: dict
    tolerances: dict
    probe: dict
    compactness: dict
    seed: int
    workers: int
    echo: dict = field(default_factory=dict)

    def datum(self, generator: HamiltonianGenerator = None) -> InitialDatum:
        params = dict(self.datum_params)
        kind = params.pop('kind')
        if kind == 'density_profile':
            return InitialDatum(kind, height=params['height'], generator=generator)
        return InitialDatum(kind, **params)


def read_items(text: str, path: str = '<string>', overrides: dict = None) -> dict:
    """Parses the file text into the item table and applies overrides keyed by (section, key)."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=path)
    except configparser.Error as e:
        raise ConfigException(f'unreadable scenario file: {e}', path) from e

    items = default_items()
    sections = {section for section, _ in items}
    for section in parser.sections():
        if section not in sections:
            raise ConfigException(f'unknown section [{section}], expected one of '
                                  f'{sorted(sections)}', path)
        for key, text_value in parser.items(section):
            if (section, key) not in items:
                known = sorted(k for s, k in items if s == section)
                raise ConfigException(f'unknown key "{key}" in [{section}], expected one of {known}',
                                      path)
            items[section, key].update(text_value)

    for location, value in (overrides or {}).items():
        if value is not None:
            items[location].update(str(value))
    return items


def config_from_items(items: dict, path: str = '<string>') -> RunConfig:
    try:
        input_validate(items)
    except ConfigException as e:
        e.path = path
        raise

    def section(name: str) -> dict:
        return {key: item.value for (s, key), item in items.items() if s == name}

    grid = SpaceTimeGrid(**section('grid'))
    scenario_params = section('scenario')
    kind = scenario_params.pop('kind')
    echo = {name: section(name) for name in
            ('grid', 'scenario', 'datum', 'tolerances', 'probe', 'compactness', 'run')}
    return RunConfig(path=path,
                     grid=grid,
                     scenario=ScenarioConfig(kind, grid, scenario_params),
                     datum_params=section('datum'),
                     tolerances=section('tolerances'),
                     probe=section('probe'),
                     compactness=section('compactness'),
                     seed=items['run', 'seed'].value,
                     workers=items['run', 'workers'].value,
                     echo=echo)


def load_config(path: str, overrides: dict = None) -> RunConfig:
    try:
        with open(path, 'r', encoding='utf-8') as file:
            text = file.read()
    except OSError as e:
        raise ConfigException(f'cannot read scenario file: {e.strerror}', path) from e
    config = config_from_items(read_items(text, path, overrides), path)
    logger.info(f'Loaded {path}: scenario {config.scenario.kind} on {config.grid.as_dict()}')
    return config
