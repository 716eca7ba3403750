"""Tally the minimal CNOT cost over a few random gate ensembles.

    python scripts/cnot_census.py --samples 2000 --seed 1
"""
import argparse
import collections
import time

import numpy as np

from cnotsynth.circuit import cnot_count
from cnotsynth.kak import CanonicalParams, canonical_unitary
from cnotsynth.linalg import CNOT, haar_su4, kron
from cnotsynth.synth import synth


def haar_su2(rng):
    z = rng.standard_normal(4)
    z /= np.linalg.norm(z)
    a, b = complex(z[0], z[1]), complex(z[2], z[3])
    return np.array([[a, -b.conjugate()], [b, a.conjugate()]])


def local(rng):
    return kron(haar_su2(rng), haar_su2(rng))


ENSEMBLES = {
    "haar": lambda rng: haar_su4(int(rng.integers(2**63))),
    "cnot-sandwich": lambda rng: CNOT @ local(rng) @ CNOT,
    "controlled-u": lambda rng: np.block([[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), haar_su2(rng)]]),
    "hz=0": lambda rng: local(rng) @ canonical_unitary(
        CanonicalParams(*sorted(rng.uniform(0, np.pi / 4, 2), reverse=True), 0.0)) @ local(rng),
    "local": local,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'ensemble':<15} {'0':>6} {'1':>6} {'2':>6} {'3':>6} {'worst dist':>11} {'ms/gate':>8}")
    for name, draw in ENSEMBLES.items():
        rng = np.random.default_rng(args.seed)
        gates = [draw(rng) for _ in range(args.samples)]
        t0 = time.perf_counter()
        results = [synth(u) for u in gates]
        ms = 1e3 * (time.perf_counter() - t0) / args.samples
        tally = collections.Counter(cnot_count(r.circuit) for r in results)
        worst = max(r.verification_distance for r in results)
        cols = " ".join(f"{tally.get(k, 0):>6}" for k in range(4))
        print(f"{name:<15} {cols} {worst:>11.2e} {ms:>8.3f}")


if __name__ == "__main__":
    main()
