#!/usr/bin/env python3
"""
Quantum Weyl Algebra Demo

Walks through the quantum Weyl algebra xy - qyx = 1: normal forms, the
witness of the Ore derivation and the automorphisms induced by powers
of xy - yx.

Usage:
    python -m xinner.examples.weyl_demo [max_power]

    max_power: Largest power n of (xy - yx) to certify (default: 3)
"""

import sys

from xinner.core.automorphism import Automorphism, aut_order
from xinner.core.ore import (
    thm32_case2,
    verify_inducing,
    weyl_pz_identity,
    xinner_derivation_solve,
)
from xinner.core.scalar import format_scalar
from xinner.examples.fixtures import load_example, power


def main():
    """Main function for the Weyl algebra walkthrough."""
    print("xinner Quantum Weyl Algebra")
    print("=" * 40)

    if len(sys.argv) == 1:
        max_power = 3
    elif len(sys.argv) == 2:
        try:
            max_power = int(sys.argv[1])
        except ValueError:
            print("Invalid power. Using default 3.")
            max_power = 3
    else:
        print("Usage: python -m xinner.examples.weyl_demo [max_power]")
        return 1

    weyl = load_example("weyl.qalg")
    print(f"generator order: {', '.join(weyl.names)}")
    print(f"x*y = {weyl.element('x*y')}")

    witness = xinner_derivation_solve(weyl, box=1)
    if not witness.found:
        print("Error: no witness found for the Ore derivation")
        return 1
    print(f"witness c = {witness.element}")
    print(f"(x - c) y = {format_scalar(weyl_pz_identity(weyl))} (xy - yx)")
    print("=" * 40)

    commutator = weyl.element("x*y - y*x")
    one = weyl.element("1")
    for n in range(1, max_power + 1):
        report = thm32_case2(power(weyl, "y", n), n, witness, weyl)
        sigma = Automorphism.from_text(weyl, f"x=q^{n}*x, y=q^{-n}*y")
        certified = verify_inducing(one, commutator ** n, sigma, weyl)
        print(f"n = {n}: {report.automorphism}")
        print(f"        induced by (xy - yx)^{n}: {certified}")

    print(f"order of sigma_1: {aut_order(Automorphism.from_text(weyl, 'x=q*x, y=q^-1*y'))}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
