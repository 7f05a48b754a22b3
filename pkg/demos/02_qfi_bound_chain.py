#!/usr/bin/env python3
"""The chain of QFI lower bounds, from the spectral value down to correlators.

qfi >= trace form == coherence form >= correlator sum.  The product state
saturates the whole chain at the shot-noise value N; the GHZ state reaches
the Heisenberg value N^2.  Mixed states keep the ordering strict.
"""

import numpy as np

from bellqfi import bound_report, ghz_state, product_plus_state
from bellqfi.hilbert import random_density_matrix


def show(label, report):
    print(f"{label:18s} qfi = {report.qfi:10.6f}   trace = {report.bound_trace:10.6f}   "
          f"coherence = {report.bound_coherence:10.6f}   "
          f"correlator sum = {report.bound_correlator_sum:10.6f}")


N = 6
show("product(+x)", bound_report(product_plus_state(N)))
show("GHZ", bound_report(ghz_state(N)))

rng = np.random.default_rng(11)
for k in range(3):
    rho = random_density_matrix(4, rng)
    show(f"random mixed #{k}", bound_report(rho))

print(f"\nshot noise at N={N}: {N}, Heisenberg limit: {N ** 2}")
print("phase uncertainty floor for GHZ:", 1 / np.sqrt(bound_report(ghz_state(N)).qfi))
