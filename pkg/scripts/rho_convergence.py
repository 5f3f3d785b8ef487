"""Largest eigenvalue of growing universal-cover balls against the closed forms."""

import argparse
import math

from ramlift.corpus import load_named
from ramlift.graph import classify
from ramlift.search import ball_spectral_radius, rho


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", default=["theta", "k4me", "subdivided_theta", "C3"])
    parser.add_argument("--max-radius", type=int, default=30)
    args = parser.parse_args()
    for name in args.names:
        g = load_named(name)
        deg = g.degrees()
        root = deg.index(max(deg))
        b = rho(g)
        print(f"{name}: rho in [{float(b.lower):.9f}, {float(b.upper):.9f}] ({b.method})")
        print(f"  max-degree bound 2*sqrt(D-1) = {2 * math.sqrt(classify(g).max_degree - 1):.9f}")
        for radius in (1, 2, 4, 8, 16, args.max_radius):
            lam = ball_spectral_radius(g, root, radius)
            print(f"  radius {radius:3d}: {lam:.9f}  gap {float(b.upper) - lam:.2e}")


if __name__ == "__main__":
    main()
