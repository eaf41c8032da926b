"""Independent reference implementations used by the tests.

Everything here is written directly from the scheme definitions with plain
Python loops and no shared code with :mod:`cadmia.kernel`.
"""
import math

import numpy as np

from cadmia.scenario import HumidityProfile
from cadmia.spectral import SpectralCurve


def F(x):
    return 2.0 * x / (x * x + 1.0)


def brute_force(I, enu, eg, w, mu, xi, dz, dt, dl, nt, scheme="PC"):
    """Naive O(Nt Nz^2 Nl) evaluation of the P or PC scheme.

    ``I, enu, eg`` are sampled at ``l = 0..Nl`` and ``w`` at ``j = 0..Nz``.
    """
    nz, nl = len(w) - 1, len(I) - 1
    rows = [[1.0] * (nz + 1)]

    def alpha(c, j, l):
        s = sum(c[r] for r in range(j))
        return I[l] * math.exp(-mu * dz * (enu[l] * s + j * eg[l]))

    def beta(c, j, l):
        if j == 0:
            return I[l]
        s = c[0] + 2.0 * sum(c[r] for r in range(1, j)) + c[j]
        return I[l] * math.exp(-mu * dz / 2.0 * (enu[l] * s + 2 * j * eg[l]))

    for _ in range(nt):
        c = rows[-1]
        p = [c[j] * math.exp(-dt * dl * xi * w[j] * sum(F(alpha(c, j, l)) for l in range(nl)))
             for j in range(nz + 1)]
        if scheme == "P":
            rows.append(p)
            continue
        new = []
        for j in range(nz + 1):
            gamma = 0.0
            for l in range(nl + 1):
                wt = 1.0 if l in (0, nl) else 2.0
                gamma += wt * (F(beta(c, j, l)) + F(beta(p, j, l)))
            new.append(c[j] * math.exp(-(dt / 2.0) * (dl / 2.0) * xi * w[j] * gamma))
        rows.append(new)
    return np.array(rows)


def column_zero(I, w0, xi, dt, dl, nt):
    """Closed form of the surface column: the light is never attenuated there."""
    nl = len(I) - 1
    gamma = sum((1.0 if l in (0, nl) else 2.0) * 2.0 * F(I[l]) for l in range(nl + 1))
    factor = math.exp(-(dt * dl / 4.0) * xi * w0 * gamma)
    out = [1.0]
    for _ in range(nt):
        out.append(out[-1] * factor)
    return np.array(out)


def random_curve(rng, ncurve=None, scale=1.0, zero_prob=0.0):
    k = ncurve or int(rng.integers(2, 8))
    lam = np.r_[0.0, np.sort(rng.uniform(0.02, 0.98, k - 2)), 1.0] if k > 2 else np.array([0.0, 1.0])
    lam = np.unique(lam)
    vals = rng.uniform(0.0, scale, lam.size)
    if zero_prob and rng.random() < zero_prob:
        vals[rng.integers(lam.size)] = 0.0
    return SpectralCurve(lam, vals)


def random_humidity(rng):
    variant = rng.choice(["linear_bct", "sheet", "constant", "tabulated"])
    ratio = float(rng.uniform(0.0, 0.99))
    if variant == "sheet":
        return HumidityProfile("sheet", ratio, L_s=float(rng.uniform(0.05, 1.0)))
    if variant == "tabulated":
        z = np.r_[0.0, np.sort(rng.uniform(0.05, 0.95, 3)), 1.0]
        return HumidityProfile("tabulated", 0.0, knots=tuple(zip(z, rng.uniform(0, 1, z.size))))
    return HumidityProfile(str(variant), ratio)


def tabulated_model(nu=0.25, mu=20.0, xi=40.0):
    """Small model with tabulated curves, so that all three parameters can move."""
    from cadmia.scenario import DimensionlessModel
    from cadmia.spectral import epsilon_nu

    irr = SpectralCurve([0, 0.4, 1], [0.4, 1.2, 0.9])
    ec = SpectralCurve([0, 0.5, 1], [1.5, 1.0, 0.2])
    return DimensionlessModel(nu, mu, xi, irr, ec, epsilon_nu(ec, ec, nu),
                              HumidityProfile("linear_bct", 0.47), eps_c=ec, name="tabulated")
