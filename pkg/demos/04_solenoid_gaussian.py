"""Four variables on a solenoid character window: identifiability up to Gaussians.

The character group of an a-adic solenoid is a discrete group of rationals;
we compute on a finite symmetric window of exact fractions.  With four
variables the components are determined only up to convolution with a
Gaussian, and the verifier recovers the Gaussian rates exactly.

Run with:  python3 demos/04_solenoid_gaussian.py
"""

from fractions import Fraction

import numpy as np

from groupident import (SolenoidCharModel, fit_gaussian_ratio, gaussian_table,
                        make_lattice, vandermonde_nullspace,
                        verify_gaussian_form_I)
from groupident.solenoid import synth_gaussian_instance

# The window {m/30 : |m| <= 60} of the dual built from the base (2, 3, 5).
lat = make_lattice([2, 3, 5], depth=2, radius=60)
print("window:", lat, "step", lat.step())

# A Gaussian characteristic function on the window: character times decay.
model = SolenoidCharModel.from_finest([2, 3, 5], 2, Fraction(7, 30), sigma=0.35)
table = gaussian_table(lat, model)
fit = fit_gaussian_ratio(table)
print("fitted rate:", fit.sigma, "| phase is a character:", fit.phase_is_character)

# The only way four Gaussian rates can cancel in the product equation is
# along the nullspace of the coefficient power sums.
bs = [1, 2, 3, 4]
print("\nrate nullspace for b = (1,2,3,4):", vandermonde_nullspace(bs))

# Build a synthetic instance with exactly cancelling rates and phases, then
# let the verifier take it apart.
mus, nus, sigmas, phases = synth_gaussian_instance(lat, bs, seed=42, form="I")
report = verify_gaussian_form_I(bs, mus, nus)
print("\nverdict:", report.verdict)
print("equation defect:", report.equation_defect)
print("log-modulus degrees:", report.degree_report.degrees)
print("constructed rates:", [round(s, 6) for s in sigmas])
print("recovered rates:  ", [round(f.sigma, 6) for f in report.fits])
print("power-sum check:  ", [f"{s:.2e}" for s in report.sigma_sums])

# A modulus that decays like exp(-y^4) is not Gaussian and gets rejected.
from groupident.funceq import FunctionTable

quartic = np.array([np.exp(-0.5 * float(p) ** 4) for p in lat.points])
nus[0] = FunctionTable(lat, lat.points, nus[0].values * quartic)
report = verify_gaussian_form_I(bs, mus, nus)
print("\nafter a quartic modulus:", report.verdict)
print("failures:", list(report.failures))
