"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Typed configuration items.
Every accepted (section, key) of a scenario file is one item here.
"""

from dataclasses import dataclass, field


@dataclass
class ConfigItem:
    """Base class for all config items.
    An item stores where it lives in the file, its display name and its value."""
    section: str
    key: str
    name: str

    @property
    def path(self) -> str:
        return f'[{self.section}] {self.key}'


@dataclass
class ConfigItemNumber(ConfigItem):
    value: float = None
    low: float = float('-inf')
    high: float = float('inf')
    low_open: bool = False
    high_open: bool = False

    def update(self, text: str) -> None:
        """If the text is not a number, the value is set to inf.
        Range validation then rejects it."""
        try:
            self.value = float(text)
        except ValueError:
            self.value = float('inf')

    def in_range(self) -> bool:
        if self.value is None:
            return True
        above = self.value > self.low if self.low_open else self.value >= self.low
        below = self.value < self.high if self.high_open else self.value <= self.high
        return above and below

    def range_text(self) -> str:
        return (('(' if self.low_open else '[') + f'{self.low}, {self.high}'
                + (')' if self.high_open else ']'))


@dataclass
class ConfigItemInteger(ConfigItemNumber):

    def update(self, text: str) -> None:
        try:
            self.value = int(text)
        except ValueError:
            self.value = float('inf')


@dataclass
class ConfigItemChoice(ConfigItem):
    value: str = ''
    choices: tuple = ()

    def update(self, text: str) -> None:
        self.value = text.strip()

    def in_range(self) -> bool:
        return self.value in self.choices

    def range_text(self) -> str:
        return ' | '.join(self.choices)


@dataclass
class ConfigItemList(ConfigItem):
    """Comma separated numbers. An unparsable entry becomes inf."""
    value: list = field(default_factory=list)
    low: float = float('-inf')
    high: float = float('inf')
    low_open: bool = False
    integer: bool = False

    def update(self, text: str) -> None:
        cast = int if self.integer else float
        self.value = []
        for entry in text.split(','):
            entry = entry.strip()
            if not entry:
                continue
            try:
                self.value.append(cast(entry))
            except ValueError:
                self.value.append(float('inf'))

    def in_range(self) -> bool:
        if not self.value:
            return False
        for value in self.value:
            above = value > self.low if self.low_open else value >= self.low
            if not (above and value <= self.high):
                return False
        return True

    def range_text(self) -> str:
        return f'non-empty list in {"(" if self.low_open else "["}{self.low}, {self.high}]'


def default_items() -> dict:
    """Fresh item table keyed by (section, key), holding the defaults.
    Items whose value is None must be supplied by the file."""
    inf = float('inf')
    items = [
        ConfigItemNumber('grid', 'T', 'Final time', None, 0.0, inf, low_open=True, high_open=True),
        ConfigItemNumber('grid', 'x_min', 'Window start', None, -inf, inf, True, True),
        ConfigItemNumber('grid', 'x_max', 'Window end', None, -inf, inf, True, True),
        ConfigItemInteger('grid', 'nt', 'Time cells', None, 2, 1 << 20),
        ConfigItemInteger('grid', 'nx', 'Space cells', None, 2, 1 << 20),

        ConfigItemChoice('scenario', 'kind', 'Scenario', None,
                         choices=('zero_field', 'constant_field', 'hamiltonian_first',
                                  'oscillatory_n', 'standing_wave')),
        ConfigItemNumber('scenario', 'c', 'Advection speed', 1.0, -inf, inf, True, True),
        ConfigItemNumber('scenario', 'amplitude', 'Density amplitude', 0.5, 0.0, 1.0, high_open=True),
        ConfigItemNumber('scenario', 'wavenumber', 'Wavenumber', 1.0, 0.0, inf, high_open=True),
        ConfigItemInteger('scenario', 'n', 'Oscillation index', 1, 0, 1 << 16),

        ConfigItemChoice('datum', 'kind', 'Initial datum', 'gaussian_bump',
                         choices=('constant', 'gaussian_bump', 'step',
                                  'inv_sqrt_singularity', 'density_profile')),
        ConfigItemNumber('datum', 'center', 'Datum center', 0.0, -inf, inf, True, True),
        ConfigItemNumber('datum', 'height', 'Datum height', 1.0, -inf, inf, True, True),
        ConfigItemNumber('datum', 'width', 'Datum width', 0.25, 0.0, inf, True, True),
        ConfigItemNumber('datum', 'clip', 'Singularity clip', 100.0, 0.0, inf, True, True),

        ConfigItemNumber('tolerances', 'continuity', 'Continuity residual', 1e-2, 0.0, inf),
        ConfigItemNumber('tolerances', 'slope', 'Slope slack', 1e-6, 0.0, inf),
        ConfigItemNumber('tolerances', 'inversion', 'Inversion tolerance', 1e-10, 0.0, inf),
        ConfigItemNumber('tolerances', 'lipschitz', 'Lipschitz slack', 1e-3, 0.0, inf),
        ConfigItemNumber('tolerances', 'cone', 'Cone slack', 1e-5, 0.0, inf),
        ConfigItemNumber('tolerances', 'ode', 'ODE residual', 5e-2, 0.0, inf),
        ConfigItemNumber('tolerances', 'pushforward', 'Pushforward defect', 1e-3, 0.0, inf),
        ConfigItemNumber('tolerances', 'density', 'Density reproduction', 5e-3, 0.0, inf),
        ConfigItemNumber('tolerances', 'weak', 'Weak residual', 1e-2, 0.0, inf),
        ConfigItemNumber('tolerances', 'drift', 'Observable drift', 1e-2, 0.0, inf),
        ConfigItemNumber('tolerances', 'modulus', 'Modulus slack', 1e-3, 0.0, inf),
        ConfigItemNumber('tolerances', 'probe_slack', 'Probe slack', 0.1, 0.0, 1.0),

        ConfigItemList('probe', 'eps_list', 'Mollification radii', [0.2, 0.1, 0.05], 0.0, inf,
                       low_open=True),
        ConfigItemNumber('probe', 'tau', 'Observation time', None, 0.0, inf, True, True),
        ConfigItemNumber('probe', 'level_center', 'Level profile center', None, -inf, inf, True, True),
        ConfigItemNumber('probe', 'level_width', 'Level profile width', None, 0.0, inf, True, True),

        ConfigItemList('compactness', 'n_list', 'Family indices', [1, 2, 4, 8, 16, 32, 64],
                       0, 1 << 16, integer=True),
        ConfigItemNumber('compactness', 'delta', 'Chain distance', 0.1, 0.0, inf, True, True),

        ConfigItemInteger('run', 'seed', 'Random seed', 20240601, 0, (1 << 32) - 1),
        ConfigItemInteger('run', 'workers', 'Worker threads', 1, 1, 256),
    ]
    return {(item.section, item.key): item for item in items}
