"""Why the kernel conditions matter: three explicit failure constructions.

Run with:  python3 demos/03_counterexamples.py
"""

import numpy as np

from groupident import (Distribution, Endo, Group, LinearFormSpec,
                        joint_char_array, kernel_counterexample,
                        plane_gaussian_counterexample, poisson_counterexample,
                        poisson_closed_form_array, recover_shift,
                        verify_form_I)

# 1. Poisson pairs.  With ker(b1 - b2) nontrivial, rates (2a, 2a) on one side
#    and (a, 3a) on the other give identical joint laws, yet the components
#    are not shifts of each other.
g = Group([6])
bs = [Endo.scalar(g, c) for c in (1, 3, 2)]   # b1 - b2 = -2 kills {0, 3}
mu3 = Distribution.random(g, 5, 0.2)
mus, nus = poisson_counterexample(bs, a=0.7, mu_rest=mu3)

spec = LinearFormSpec.form_I(bs)
lhs = joint_char_array(spec, mus)
rhs = joint_char_array(spec, nus)
print("poisson pair: joint residual =", np.max(np.abs(lhs - rhs)))
print("shift between mu1 and nu1:", recover_shift(mus[0], nus[0]))
closed = poisson_closed_form_array(bs, 0.7, mu3)
print("closed-form joint value deviation:", np.max(np.abs(lhs - closed)))
print("verifier verdict:", verify_form_I(bs, mus, nus).verdict)

# 2. Mass hidden inside ker(b3).  The adjoint image cannot see distributions
#    supported in the kernel, so the third component is entirely free.
bs2 = [Endo.scalar(g, c) for c in (1, 2, 2)]   # ker(b3) = {0, 3}
mus2, nus2 = kernel_counterexample(bs2)
spec2 = LinearFormSpec.form_II(bs2)
res = np.max(np.abs(joint_char_array(spec2, mus2) - joint_char_array(spec2, nus2)))
print("\nkernel-mass pair: joint residual =", res)
print("third components shift-related:",
      recover_shift(mus2[2], nus2[2]) is not None)

# 3. The planar example: four Gaussians whose joint laws agree although no
#    Gaussian convolution links the two sides.  Checked in exact rationals.
cert = plane_gaussian_counterexample()
print("\nplanar quadratic forms agree:", cert.identity_holds)
print("difference forms:", [tuple(int(d[i][i]) for i in range(2))
                            for d in cert.difference_forms])
print("all indefinite:", cert.all_indefinite)
