# Copyright 2026 The Dichotomy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the JSON fixtures used by the tests and the CLI examples.

Every matrix is stored as rows of [re, im] pairs at full double precision.
expected.json holds reference values computed here with numpy, independent
of the C++ code, so the test suite can compare against a second
implementation.

Usage: python3 fixtures/generate_fixtures.py [output_dir]
"""

import json
import math
import pathlib
import sys

import numpy as np
from scipy.linalg import fractional_matrix_power, logm, sqrtm

OUT = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).parent


def mat(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def ket(v):
    v = np.asarray(v, dtype=complex).reshape(-1, 1)
    return v @ v.conj().T


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


ZERO = ket([1, 0])
ONE = ket([0, 1])
PLUS = ket([1 / math.sqrt(2), 1 / math.sqrt(2)])
MIXED = np.eye(2) / 2


def write(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=1) + "\n")


def pair(rho, sigma):
    return {"rho": mat(rho), "sigma": mat(sigma)}


# ---- reference computations (numpy only) ----

def log2m(a):
    return logm(a) / math.log(2)


def relent(rho, sigma):
    w = np.linalg.eigvalsh(rho)
    ent = sum(x * math.log2(x) for x in w if x > 1e-15)
    return float(ent - np.trace(rho @ log2m(sigma)).real)


def petz(rho, sigma, a):
    q = np.trace(fractional_matrix_power(rho, a) @ fractional_matrix_power(sigma, 1 - a)).real
    return math.log2(q) / (a - 1)


def sandwiched(rho, sigma, a):
    s = fractional_matrix_power(sigma, (1 - a) / (2 * a))
    inner = s @ rho @ s
    w = np.clip(np.linalg.eigvalsh((inner + inner.conj().T) / 2), 0, None)
    return math.log2(sum(x ** a for x in w)) / (a - 1)


def fidelity(a, b):
    s = sqrtm(a)
    return float(np.trace(sqrtm(s @ b @ s)).real ** 2)


def dephase(rho):
    return np.diag(np.diag(rho))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    p_src = np.diag([0.9, 0.1])
    p_dst = np.diag([0.75, 0.25])
    p_dmin = np.diag([0.6, 0.4])
    theta = 1.0
    qaep_rho = rotation(theta) @ np.diag([0.7, 0.3]) @ rotation(theta).T
    qaep_sigma = np.diag([0.6, 0.4])
    full_rank_rho = np.array([[0.7, 0.2], [0.2, 0.3]])
    full_rank_sigma = np.array([[0.4, -0.1], [-0.1, 0.6]])
    beta = 1.0
    energy = np.diag([0.0, 1.0])
    gibbs = np.diag(np.exp(-beta * np.diag(energy)))
    gibbs = gibbs / np.trace(gibbs)
    half_plus = 0.5 * PLUS + 0.5 * MIXED

    pairs = {
        "pair_zero_mixed.json": (ZERO, MIXED),
        "pair_plus_mixed.json": (PLUS, MIXED),
        "pair_zero_plus.json": (ZERO, PLUS),
        "pair_orthogonal.json": (ZERO, ONE),
        "pair_zero_skewed.json": (ZERO, np.diag([0.25, 0.75])),
        "pair_classical_src.json": (p_src, MIXED),
        "pair_classical_dst.json": (p_dst, MIXED),
        "pair_dmin_dst.json": (p_dmin, MIXED),
        "pair_full_rank.json": (full_rank_rho, full_rank_sigma),
        "pair_equal_mixed.json": (MIXED, MIXED),
        "pair_qaep.json": (qaep_rho, qaep_sigma),
    }
    for name, (r, s) in pairs.items():
        write(name, pair(r, s))

    states = {
        "state_plus.json": PLUS,
        "state_zero.json": ZERO,
        "state_excited.json": ONE,
        "state_gibbs.json": gibbs,
        "state_half_plus.json": half_plus,
    }
    for name, s in states.items():
        write(name, {"rho": mat(s)})
    write("hamiltonian.json", {"hamiltonian": mat(energy), "beta": beta})
    write("hamiltonian_matrix.json", mat(energy))

    expected = {
        "divergence": [
            {"input": "pair_classical_src.json", "kind": "relent",
             "bits": 0.9 * math.log2(1.8) + 0.1 * math.log2(0.2)},
            {"input": "pair_classical_dst.json", "kind": "relent",
             "bits": 0.75 * math.log2(1.5) + 0.25 * math.log2(0.5)},
            {"input": "pair_qaep.json", "kind": "relent", "bits": relent(qaep_rho, qaep_sigma)},
            {"input": "pair_full_rank.json", "kind": "relent",
             "bits": relent(full_rank_rho, full_rank_sigma)},
            {"input": "pair_classical_src.json", "kind": "petz", "alpha": 0.5,
             "bits": -2 * math.log2(math.sqrt(0.45) + math.sqrt(0.05))},
            {"input": "pair_full_rank.json", "kind": "petz", "alpha": 0.7,
             "bits": petz(full_rank_rho, full_rank_sigma, 0.7)},
            {"input": "pair_full_rank.json", "kind": "sandwiched", "alpha": 2.0,
             "bits": sandwiched(full_rank_rho, full_rank_sigma, 2.0)},
            {"input": "pair_qaep.json", "kind": "sandwiched", "alpha": 1.5,
             "bits": sandwiched(qaep_rho, qaep_sigma, 1.5)},
            {"input": "pair_zero_plus.json", "kind": "sandwiched", "alpha": 0.5,
             "bits": -math.log2(fidelity(ZERO, PLUS))},
            {"input": "pair_zero_mixed.json", "kind": "dmin", "bits": 1.0},
            {"input": "pair_zero_skewed.json", "kind": "dmin", "bits": 2.0},
            {"input": "pair_plus_mixed.json", "kind": "dmax", "bits": 1.0},
            {"input": "pair_classical_src.json", "kind": "dmax", "bits": math.log2(1.8)},
            {"input": "pair_classical_src.json", "kind": "var",
             "bits": 0.9 * 0.1 * (math.log2(1.8) - math.log2(0.2)) ** 2},
            {"input": "pair_classical_src.json", "kind": "dh", "eps": 0.1, "bits": 1.0},
            {"input": "pair_equal_mixed.json", "kind": "dh", "eps": 0.5, "bits": 1.0},
            {"input": "pair_classical_src.json", "kind": "smooth-dmax", "eps": 0.1,
             "metric": "trace", "bits": math.log2(1.6)},
        ],
        "fidelity": {"zero_plus": fidelity(ZERO, PLUS),
                     "mixed_skewed": (math.sqrt(0.45) + math.sqrt(0.05)) ** 2},
        "gibbs_state": [float(gibbs[0, 0]), float(gibbs[1, 1])],
        "gibbs_free_energy": -math.log2(1 + math.exp(-1)) / beta,
        "coherence": {
            "state_plus.json": 1.0,
            "state_zero.json": 0.0,
            "state_half_plus.json": relent(half_plus, dephase(half_plus)),
        },
        "rate_limit": (0.9 * math.log2(1.8) + 0.1 * math.log2(0.2))
        / (0.75 * math.log2(1.5) + 0.25 * math.log2(0.5)),
        "qaep": {"relent": relent(qaep_rho, qaep_sigma)},
    }
    write("expected.json", expected)


if __name__ == "__main__":
    main()
