"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Provides error checking on configuration input.
"""

from errors import IsolineException

_REQUIRED = ('grid', 'T'), ('grid', 'x_min'), ('grid', 'x_max'), ('grid', 'nt'), \
    ('grid', 'nx'), ('scenario', 'kind')


def input_validate(items: dict) -> None:
    """Checks all config items for missing or out of range entries.
    Raises ConfigException naming the first offending item."""
    for location, item in items.items():
        if location in _REQUIRED and item.value is None:
            raise ConfigException(f'{item.path} ("{item.name}") is required')
        if not item.in_range():
            raise ConfigException(f'{item.path} ("{item.name}") must be in range: '
                                  f'{item.range_text()}, got {item.value}')

    if not items['grid', 'x_max'].value > items['grid', 'x_min'].value:
        raise ConfigException('[grid] x_max must be greater than [grid] x_min.')

    eps_list = items['probe', 'eps_list'].value
    if any(later >= earlier for earlier, later in zip(eps_list, eps_list[1:])):
        raise ConfigException(f'[probe] eps_list must be strictly decreasing, got {eps_list}')

    tau = items['probe', 'tau'].value
    if tau is not None and not tau < items['grid', 'T'].value:
        raise ConfigException(f'[probe] tau = {tau} must be less than [grid] T.')


class ConfigException(IsolineException):
    """Raised when a scenario file is unreadable, has unknown entries or
    values outside their allowed range."""

    def __init__(self, detail: str, path: str = ''):
        super().__init__(detail)
        self.path = path

    def get_message(self) -> str:
        msg = super().get_message()
        if self.path:
            msg = msg + f'\n\tin {self.path}'
        return msg
