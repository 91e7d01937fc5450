"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

Handles the output directory, the JSON run records and the CSV tables.
"""

import json
import logging
import os

import numpy as np

logger = logging.getLogger(__name__)

_OUTPUT_JSON_INDENT = '\t'
_CSV_FORMAT = '%.17g'

MANIFEST_NAME = 'manifest.json'
SUMMARY_NAME = 'summary.json'


class RunOutput:
    """Writes every artifact of one run into out_dir.
    Nothing written depends on the wall clock."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.written = []

    def init_root(self) -> None:
        """Create the output directory; an existing one is reused."""
        os.makedirs(self.out_dir, exist_ok=True)

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def _write_json(self, name: str, record: dict) -> None:
        with open(self.path(name), 'w', encoding='utf-8', newline='\n') as file:
            file.write(json.dumps(record, indent=_OUTPUT_JSON_INDENT) + '\n')
        self.written.append(name)

    def create_manifest(self, manifest: dict) -> None:
        self._write_json(MANIFEST_NAME, manifest)

    def write_summary(self, summary: dict) -> None:
        self._write_json(SUMMARY_NAME, summary)

    def write_table(self, name: str, header: tuple, rows) -> None:
        """One comma separated header line, then rows at 17 significant digits."""
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        if rows.size == 0:
            rows = rows.reshape(0, len(header))
        np.savetxt(self.path(name), rows, fmt=_CSV_FORMAT, delimiter=',',
                   header=','.join(header), comments='')
        self.written.append(name)
        logger.debug(f'Wrote {name}: {rows.shape[0]} rows')
