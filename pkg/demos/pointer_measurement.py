"""Mixed-unitary environments hold only removable correlations.

Dilating a channel that applies one of several unitaries at random gives an
environment that records which unitary acted.  That record looks correlated
with the reference, but measuring the environment in its pointer basis
collapses the correlation entirely: conditioned on the outcome, the
reference marginal is what it always was.  The leftover correlations are
therefore eliminable at every privacy level.
"""

from __future__ import annotations

import numpy as np

from pqdec import (
    RankOnePovm,
    apply_isometry,
    max_entangled,
    mutual_information,
    povm_isometry,
    random_unitary_channel_dilation,
    to_density,
)
from pqdec.states import random_unitary


def main() -> None:
    psi = to_density(max_entangled(2))
    for terms in (2, 3):
        us = [random_unitary(2, 40 + 10 * terms + i) for i in range(terms)]
        p = np.random.default_rng(terms).dirichlet(np.ones(terms))
        w = random_unitary_channel_dilation(us, p)
        tau = apply_isometry(psi, w).marginal(("R", "E"))
        before = mutual_information(tau, "R", "E")
        pointer = RankOnePovm(tuple(np.eye(terms)[i] for i in range(terms)))
        out = apply_isometry(tau, povm_isometry(pointer))
        after_b = mutual_information(out, "R", "B")
        after_e = mutual_information(out, "R", "E")
        print(f"{terms}-unitary mix, weights {np.round(p, 3)}")
        print(f"  I(R:E) before pointer measurement: {before:.6f}")
        print(f"  I(R:B), I(R:E) after:              {after_b:.2e}, {after_e:.2e}")
    print()
    print("whatever the environment of a mixed-unitary channel learns, a")
    print("pointer measurement renders it useless to any eavesdropper")


if __name__ == "__main__":
    main()
