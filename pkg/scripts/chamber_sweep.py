"""Sweep the Weyl chamber on a grid and check both CNOT constructions.

For every grid point the three-CNOT circuit (and, on the hz = 0 face, the
two-CNOT circuit) is compared against a dense matrix exponential of H. Also
reports how far off the three-CNOT circuit lands when u2 rotates by
hx + pi/2 instead of hx - pi/4.

    python scripts/chamber_sweep.py --steps 12
"""
import argparse
import math

import numpy as np
from scipy.linalg import expm

from cnotsynth.circuit import Circuit, Local, evaluate
from cnotsynth.kak import CanonicalParams
from cnotsynth.linalg import kron, pauli, phase_distance, rot
from cnotsynth.synth import synth_canonical_2cnot, synth_canonical_3cnot

XX, YY, ZZ = (kron(pauli(a), pauli(a)) for a in "xyz")
XZ = (pauli("x") + pauli("z")) / math.sqrt(2)


def chamber_grid(steps):
    q = math.pi / 4
    for i in range(steps + 1):
        hx = q * i / steps
        for j in range(i + 1):
            hy = q * j / steps
            for k in range(-j, j + 1):
                yield hx, hy, q * k / steps


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=10)
    args = parser.parse_args()

    worst3 = worst2 = 0.0
    shifted = []
    n = 0
    for hx, hy, hz in chamber_grid(args.steps):
        n += 1
        p = CanonicalParams(hx, hy, hz)
        target = expm(-1j * (hx * XX + hy * YY + hz * ZZ))
        c3 = synth_canonical_3cnot(p)
        worst3 = max(worst3, phase_distance(evaluate(c3), target))
        gates = list(c3.gates)
        gates[1] = Local("A", 1j * XZ @ rot("x", hx + math.pi / 2))
        shifted.append(phase_distance(evaluate(Circuit(tuple(gates))), target))
        if hz == 0:
            worst2 = max(worst2, phase_distance(evaluate(synth_canonical_2cnot(p)), target))

    print(f"grid points            {n}")
    print(f"three-CNOT worst dist  {worst3:.3e}")
    print(f"two-CNOT worst dist    {worst2:.3e}  (hz = 0 face)")
    print(f"u2 with hx + pi/2      min {min(shifted):.3f}  max {max(shifted):.3f}")


if __name__ == "__main__":
    main()
