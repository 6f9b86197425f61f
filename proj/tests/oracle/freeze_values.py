# Copyright 2026 The snakeweaver Authors
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

"""Independent numpy oracle for the frozen values in the C++ tests.

Everything here is built from scratch with dense numpy linear algebra; no
snakeweaver code is used. Fixtures are fully explicit (no RNG) so the C++
tests can rebuild identical inputs.

Run: python3 tests/oracle/freeze_values.py
"""

import itertools
import math

import numpy as np

LOG2 = math.log(2.0)


# ---- generic dense helpers ----------------------------------------------

def entropy_bits(rho):
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    w = w[w > 1e-10 * max(w.max(), 1e-300)]
    return float(-(w * np.log2(w)).sum())


def ptrace(rho, sites, keep, d=2):
    """rho on ordered `sites`; keep is a subset, returned in canonical order."""
    n = len(sites)
    keep = sorted(keep, key=lambda v: (v[1], v[0]))
    t = rho.reshape([d] * (2 * n))
    kept = [sites.index(v) for v in keep]
    traced = [i for i in range(n) if i not in kept]
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in traced:
        col[i] = row[i]
    out = "".join(row[i] for i in kept) + "".join(col[i] for i in kept)
    res = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    k = d ** len(kept)
    return res.reshape(k, k)


def trace_distance(a, b):
    return float(0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum())


def canon(region):
    return sorted(set(region), key=lambda v: (v[1], v[0]))


def cmi(rho, sites, a, b, c):
    s = lambda r: entropy_bits(ptrace(rho, sites, r)) if r else 0.0
    return s(a + b) + s(b + c) - s(b) - s(a + b + c)


def psd_power(m, p):
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    cut = 1e-10 * w.max()
    f = np.array([x ** p if x > cut else 0.0 for x in w])
    return (v * f) @ v.conj().T


def petz(sigma_ab, rho_bc, n_a, n_b, n_c, d=2):
    da, db, dc = d ** n_a, d ** n_b, d ** n_c
    rho_b = np.trace(rho_bc.reshape(db, dc, db, dc), axis1=1, axis2=3)
    k = psd_power(rho_bc, 0.5) @ np.kron(psd_power(rho_b, -0.5), np.eye(dc))
    big_k = np.kron(np.eye(da), k)
    out = big_k @ np.kron(sigma_ab, np.eye(dc)) @ big_k.conj().T
    return out / np.trace(out).real


# ---- lattice conventions -------------------------------------------------

def cluster(anchor, n, m):
    ax, ay = anchor
    return canon([(ax - n + i, ay + j) for i in range(1, n + 1) for j in range(m)])


BASE = [
    ([(1, 0)], [(0, 0)], [(0, 1)]),
    ([(2, 0), (2, 1)], [(1, 0), (1, 1)], [(0, 0), (0, 1), (0, 2), (1, 2)]),
    ([(0, 0), (1, 0), (2, 0), (2, 1)], [(0, 1), (1, 1)], [(0, 2), (1, 2)]),
    ([(0, 0), (1, 0), (2, 0), (0, 1), (0, 2)], [(1, 1), (2, 1), (1, 2)], [(2, 2)]),
]


def conditions(anchor):
    ax, ay = anchor
    emb = lambda pts: canon([(ax - 2 + x, ay + y) for x, y in pts])
    rot = lambda pts: [(2 - x, 2 - y) for x, y in pts]
    out = []
    for i, (a, b, c) in enumerate(BASE):
        out.append((f"{i + 1}", emb(a), emb(b), emb(c)))
        out.append((f"{i + 1}r", emb(rot(a)), emb(rot(b)), emb(rot(c))))
    return out


# ---- fixture: explicit 4x3 row-Markov state -------------------------------

W, H = 4, 3
SITES = canon([(x, y) for x in range(W) for y in range(H)])


def chain_fixture():
    """Per row: initial distribution and one transition matrix per step."""
    chains = []
    for y in range(H):
        p0 = np.array([0.3 + 0.1 * y, 0.7 - 0.1 * y])
        ts = []
        for k in range(W - 1):
            a = 0.15 + 0.1 * k + 0.05 * y
            b = 0.6 - 0.1 * k + 0.07 * y
            ts.append(np.array([[1 - a, a], [b, 1 - b]]))
        chains.append((p0, ts))
    return chains


def rotation(k):
    t = 0.3 + 0.1 * k
    return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])


def row_markov_global():
    chains = chain_fixture()
    dim = 2 ** len(SITES)
    diag = np.zeros(dim)
    for idx, bits in enumerate(itertools.product([0, 1], repeat=len(SITES))):
        conf = dict(zip(SITES, bits))
        p = 1.0
        for y, (p0, ts) in enumerate(chains):
            p *= p0[conf[(0, y)]]
            for k in range(W - 1):
                p *= ts[k][conf[(k, y)], conf[(k + 1, y)]]
        diag[idx] = p
    u = np.array([[1.0]])
    for k in range(len(SITES)):
        u = np.kron(u, rotation(k))
    return (u * diag) @ u.T


def ghz_row_cluster_marginals():
    """GHZ on (0,1),(1,1),(2,1), |0> elsewhere, 4x3 window."""
    n = len(SITES)
    psi = np.zeros(2 ** n)
    psi[0] = 1 / math.sqrt(2)
    ghz = [(0, 1), (1, 1), (2, 1)]
    idx = sum(1 << (n - 1 - SITES.index(v)) for v in ghz)
    psi[idx] = 1 / math.sqrt(2)
    return np.outer(psi, psi)


def pure_marginal(psi, sites, keep, d=2):
    n = len(sites)
    keep = canon(keep)
    kept = [sites.index(v) for v in keep]
    rest = [i for i in range(n) if i not in kept]
    t = np.transpose(psi.reshape([d] * n), kept + rest).reshape(d ** len(kept), -1)
    return t @ t.conj().T


def ghz_4x4_residuals():
    sites = canon([(x, y) for x in range(4) for y in range(4)])
    n = len(sites)
    psi = np.zeros(2 ** n)
    psi[0] = 1 / math.sqrt(2)
    psi[sum(1 << (n - 1 - sites.index(v)) for v in [(0, 1), (1, 1), (2, 1)])] = 1 / math.sqrt(2)
    out = {}
    for anchor in [(2, 0), (3, 0), (2, 1), (3, 1)]:
        c = cluster(anchor, 3, 3)
        m = pure_marginal(psi, sites, c)
        for name, a, b, cc in conditions(anchor):
            v = cmi(m, c, a, b, cc)
            if abs(v) > 1e-9:
                out[f"cm/{anchor[0]},{anchor[1]}/{name}"] = v
    return out


def formula_and_med(rho):
    s = lambda r: entropy_bits(ptrace(rho, SITES, r)) if r else 0.0
    total = 0.0
    for y in range(-1, H):
        for x in range(0, W + 1):
            clip = lambda r: [v for v in r if v in SITES]
            total += (s(clip(cluster((x, y), 2, 2))) - s(clip(cluster((x, y), 2, 1)))
                      - s(clip(cluster((x, y), 1, 2))) + s(clip(cluster((x, y), 1, 1))))
    med = 0.0
    for (x, y) in SITES:
        cond = [v for v in [(x - 1, y), (x, y - 1)] if v in SITES]
        med += s(cond + [(x, y)]) - s(cond)
    return total, med


def main():
    np.set_printoptions(precision=17)
    print("== operator_core ==")
    ghz3 = np.zeros((8, 8))
    ghz3[0, 0] = ghz3[0, 7] = ghz3[7, 0] = ghz3[7, 7] = 0.5
    s3 = [(0, 0), (1, 0), (2, 0)]
    print("ptrace GHZ3 -> diag", np.diag(ptrace(ghz3, s3, s3[:2])).real)
    print("S(diag(1/2,1/4,1/4))", entropy_bits(np.diag([0.5, 0.25, 0.25])))
    print("I(A:C|B) GHZ3", cmi(ghz3, s3, [s3[0]], [s3[1]], [s3[2]]))
    print("TD(|0><0|, I/2)", trace_distance(np.diag([1.0, 0.0]), np.eye(2) / 2))
    print("sqrt diag(4,1)/5", np.diag(psd_power(np.diag([0.8, 0.2]), 0.5)))
    print("pinv sqrt diag(4,1)/5", np.diag(psd_power(np.diag([0.8, 0.2]), -0.5)))

    print("== merge ==")
    rho_ab = ptrace(ghz3, s3, s3[:2])
    rho_bc = ptrace(ghz3, s3, s3[1:])
    rec = petz(rho_ab, rho_bc, 1, 1, 1)
    print("GHZ3 recovery residual", trace_distance(ghz3, rec))
    zero_ab = np.zeros((4, 4))
    zero_ab[0, 0] = 1
    out = petz(zero_ab, np.eye(4) / 4, 1, 1, 1)
    print("|00> merge I/4 diag", np.diag(out).real)

    print("== 4x3 row-Markov fixture ==")
    rho = row_markov_global()
    print("trace", np.trace(rho))
    print("S(global) bits", entropy_bits(rho))
    f, med = formula_and_med(rho)
    print("formula bits", f)
    print("row-path MED bits", med)
    rows01 = [v for v in SITES if v[1] <= 1]
    print("S(rows 0-1) bits", entropy_bits(ptrace(rho, SITES, rows01)))
    row1 = [v for v in SITES if v[1] == 1]
    print("S(row 1) bits", entropy_bits(ptrace(rho, SITES, row1)))
    worst = 0.0
    for anchor in [(2, 0), (3, 0)]:
        m = ptrace(rho, SITES, cluster(anchor, 3, 3))
        for _, a, b, c in conditions(anchor):
            worst = max(worst, abs(cmi(m, cluster(anchor, 3, 3), a, b, c)))
    print("max |C_M residual|", worst)
    # depolarize the (2,0) marginal by p = 1e-3 and compare on the overlap
    p = 1e-3
    c20, c30 = cluster((2, 0), 3, 3), cluster((3, 0), 3, 3)
    m20 = (1 - p) * ptrace(rho, SITES, c20) + p * np.eye(512) / 512
    m30 = ptrace(rho, SITES, c30)
    ov = [v for v in c20 if v in c30]
    print("depolarized overlap residual", trace_distance(ptrace(m20, c20, ov), ptrace(m30, c30, ov)))

    print("== 4x3 GHZ-row fixture ==")
    g = ghz_row_cluster_marginals()
    for anchor in [(2, 0), (3, 0)]:
        m = ptrace(g, SITES, cluster(anchor, 3, 3))
        for name, a, b, c in conditions(anchor):
            v = cmi(m, cluster(anchor, 3, 3), a, b, c)
            if abs(v) > 1e-9:
                print(f"cm/{anchor[0]},{anchor[1]}/{name}", v)

    print("== 4x4 GHZ-row fixture ==")
    for k, v in ghz_4x4_residuals().items():
        print(k, v)


if __name__ == "__main__":
    main()
