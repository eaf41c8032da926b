"""Regenerate the bundled spectral tables in ``src/cadmia/data``.

The published lamp and reflectance spectra are only available as plots, so
the tables are smooth synthetic stand-ins: a UV-filtered xenon lamp with a
cut-on near 395 nm and a hex-CdS reflectance with a sigmoidal absorption
edge.  The shape parameters below were chosen so that the base-case
separation fronts and one-at-a-time sensitivities land close to the
reported values; they are not measured data.

Run from the repository root::

    python scripts/make_fixtures.py
"""
from pathlib import Path

import numpy as np

from cadmia.io import write_curve_csv
from cadmia.spectral import band_gap_wavelength

DATA = Path(__file__).resolve().parents[1] / "src" / "cadmia" / "data"
LAMBDA_EDGE = round(band_gap_wavelength(2.42), 3)

# visible lamp: overall scale relative to I_ref = 3.48
LAMP_SCALE = 0.97
# reflectance edge: floor, ceiling, midpoint (nm), width (nm)
REFL = (0.064, 0.62, 466.0, 6.3)
# unfiltered lamp for the UV band: visible attenuation, UV level, UV reflectance
UV_VISIBLE, UV_LEVEL, UV_REFL = 0.7, 0.0058, 0.72

NOTE = ("Synthetic approximation of the published spectrum (digitised shape "
        "not available); see scripts/make_fixtures.py for the generating formula.")


def lamp(wl, scale=LAMP_SCALE):
    cut = 1.0 / (1.0 + np.exp(-(wl - 395.0) / 6.0))
    return scale * 3.48 * cut * (0.82 + 0.18 * np.exp(-((wl - 468.0) / 25.0) ** 2))


def reflectance(wl, lo=REFL[0], hi=REFL[1], mid=REFL[2], width=REFL[3]):
    return lo + (hi - lo) / (1.0 + np.exp(-(wl - mid) / width))


def visible_grids():
    return (np.r_[np.arange(380.0, 512.0, 8.0), LAMBDA_EDGE],
            np.r_[np.arange(380.0, 512.0, 4.0), LAMBDA_EDGE])


def uv_lamp(wl):
    vis = UV_VISIBLE * lamp(wl)
    uv = UV_LEVEL * 3.48 * (0.55 + 0.45 * np.exp(-((wl - 360.0) / 70.0) ** 2))
    blend = np.clip((wl - 380.0) / 20.0, 0.0, 1.0)
    edge = UV_VISIBLE * lamp(np.array(400.0))
    return np.where(wl >= 400.0, vis, uv + (edge - uv) * blend)


def uv_reflectance(wl):
    r = reflectance(wl)
    ramp = UV_REFL + (reflectance(420.0) - UV_REFL) * (wl - 380.0) / 40.0
    return np.where(wl < 380.0, UV_REFL, np.where(wl < 420.0, ramp, r))


def main():
    wl_i, wl_r = visible_grids()
    write_curve_csv(DATA / "bct_irradiance.csv", zip(wl_i, lamp(wl_i)), "irradiance",
                    "W m-2 nm-1", ["UV-filtered xenon lamp, 380-512 nm.", NOTE])
    write_curve_csv(DATA / "bct_reflectance.csv", zip(wl_r, reflectance(wl_r)), "reflectance",
                    "1", ["hex-CdS diffuse reflectance at 95% RH, 380-512 nm.", NOTE])
    uv = np.arange(200.0, 380.0, 10.0)
    wl_i, wl_r = np.r_[uv, wl_i], np.r_[uv, wl_r]
    write_curve_csv(DATA / "uvt_irradiance.csv", zip(wl_i, uv_lamp(wl_i)), "irradiance",
                    "W m-2 nm-1", ["Xenon lamp without UV filter, 200-512 nm.", NOTE])
    write_curve_csv(DATA / "uvt_reflectance.csv", zip(wl_r, uv_reflectance(wl_r)),
                    "reflectance", "1",
                    ["hex-CdS diffuse reflectance including UV, 200-512 nm.", NOTE])


if __name__ == "__main__":
    main()
