#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# Writes the synthetic UAV element pattern bundled with coexsim.
#
# The pattern is a stand-in for a measured or ray-traced monopole-under-frame
# pattern. It is expressed in the element's local frame, whose boresight
# (theta=90, phi=0) points to nadir once the UAV array is tilted by -90 deg.
# Gain peaks towards the body-frame horizon, has a shallow dip at nadir,
# rolls off across the upper hemisphere, and carries a small azimuthal ripple
# that mimics scattering from landing gear and gimbal.
import argparse
import math


def gain_dbi(theta_deg, phi_deg):
    th = math.radians(theta_deg)
    ph = math.radians(phi_deg)
    # Cosine of the angle to the local boresight (nadir in body frame).
    cos_alpha = max(-1.0, min(1.0, math.sin(th) * math.cos(ph)))
    alpha = math.degrees(math.acos(cos_alpha))
    ripple = 1.5 * math.cos(5.0 * ph) * math.sin(th)
    if alpha <= 90.0:
        base = 4.0 - 6.0 * (1.0 - math.sin(math.radians(alpha))) ** 2
    else:
        base = 4.0 - 20.0 * (alpha - 90.0) / 90.0
    return round(base + ripple, 3)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="core/data/uav_pattern_synthetic.csv")
    parser.add_argument("--step", type=float, default=5.0)
    args = parser.parse_args()

    n_theta = int(round(180.0 / args.step)) + 1
    n_phi = int(round(360.0 / args.step)) + 1
    thetas = [i * args.step for i in range(n_theta)]
    phis = [-180.0 + i * args.step for i in range(n_phi)]

    with open(args.out, "w", encoding="ascii") as fh:
        fh.write("# coexsim UAV element pattern (SYNTHETIC stand-in, not measured data)\n")
        fh.write("# rows: theta (deg, zenith, local frame); columns: phi (deg); cells: gain (dBi)\n")
        fh.write("theta\\phi," + ",".join(f"{p:g}" for p in phis) + "\n")
        for t in thetas:
            fh.write(f"{t:g}," + ",".join(f"{gain_dbi(t, p):g}" for p in phis) + "\n")


if __name__ == "__main__":
    main()
