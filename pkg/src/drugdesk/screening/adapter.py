"""Seam for real docking engines.

The surrogate score keeps the pipeline deterministic, but the screening API
is written so a real engine can slot in: anything with a
`score(smiles, pocket) -> float` method works. This module ships a command
-line adapter shape for engines that read a ligand file and print a score
table to stdout (the AutoDock Vina family behaves this way). The adapter is
documentation plus a stdout parser; nothing in the package invokes it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from drugdesk.screening.pocket import Pocket

# First table row of `vina --score_only`-style output, e.g.
#    1       -8.138      0.000      0.000
_TABLE_ROW = re.compile(r"^\s*1\s+(-?\d+(?:\.\d+)?)\s", re.MULTILINE)
# Alternative marker some builds print inside the pose file / stdout.
_REMARK = re.compile(r"REMARK VINA RESULT:\s*(-?\d+(?:\.\d+)?)")


class AdapterParseError(ValueError):
    pass


def parse_engine_stdout(text: str) -> float:
    """Extract the best-pose score from an engine's stdout."""
    m = _REMARK.search(text) or _TABLE_ROW.search(text)
    if not m:
        raise AdapterParseError("no score found in engine output")
    return float(m.group(1))


@dataclass
class ExternalCommandTemplate:
    """Invocation recipe for a stdout-scoring docking engine.

    Placeholders in args: {ligand} ligand file path, {cx} {cy} {cz} pocket
    center, {size} cube edge in Angstrom. Example:

        ExternalCommandTemplate(
            executable="vina",
            args=["--receptor", "target.pdbqt", "--ligand", "{ligand}",
                  "--center_x", "{cx}", "--center_y", "{cy}",
                  "--center_z", "{cz}", "--size_x", "{size}",
                  "--size_y", "{size}", "--size_z", "{size}"],
        )
    """

    executable: str
    args: list[str] = field(default_factory=list)
    box_size: float = 20.0

    def render(self, ligand_path: str, pocket: Pocket) -> list[str]:
        x, y, z = pocket.center
        fills = {
            "ligand": ligand_path,
            "cx": f"{x:g}", "cy": f"{y:g}", "cz": f"{z:g}",
            "size": f"{self.box_size:g}",
        }
        return [self.executable] + [a.format(**fills) for a in self.args]
