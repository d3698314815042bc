"""Sweep the entropy of a displaced pair across the finiteness threshold.

Emits the standard CSV (alpha,finite,d_alpha,tail_bound,terms) for
r=(1,), s=(2,), u1=(1,), u2=(0,), whose threshold sits at alpha* = 2.
"""

import json
import sys
import tempfile
from pathlib import Path

from petz_renyi.cli import main


def run():
    with tempfile.TemporaryDirectory() as tmp:
        rho = Path(tmp) / "rho.json"
        sigma = Path(tmp) / "sigma.json"
        rho.write_text(json.dumps({"temps": [1.0], "displacement": [[1.0, 0.0]]}))
        sigma.write_text(json.dumps({"temps": [2.0]}))
        return main(
            [
                "sweep", str(rho), str(sigma),
                "--alpha-min", "0.25", "--alpha-max", "2.75", "--steps", "11",
            ]
        )


if __name__ == "__main__":
    sys.exit(run())
