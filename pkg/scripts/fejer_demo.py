"""Show the slow diagonal decay of the displacement operator.

Counts indices j <= j_max with |<j|W(1)|j>| >= C j^{-3/8} for the default
constant; the count grows roughly linearly, which is the divergence engine
behind the finiteness threshold.
"""

import sys

from petz_renyi.cli import main


def run():
    return main(["weyl-scan", "--u-re", "1", "--j-max", "20000"])


if __name__ == "__main__":
    sys.exit(run())
