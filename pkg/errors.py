"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Contains the base class for all Isoline exceptions.
"""


class IsolineException(Exception):
    """Base class for every error raised by the toolkit.
    Subclasses store what went wrong as attributes and
    build their message in get_message()."""

    def __init__(self, detail: str = ''):
        super().__init__(detail)
        self.detail = detail

    def get_message(self) -> str:
        msg = f'{type(self).__name__}:'
        if self.detail:
            msg = msg + f'\n\t{self.detail}'
        return msg

    def __str__(self) -> str:
        return self.get_message()
