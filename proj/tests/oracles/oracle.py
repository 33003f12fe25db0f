#!/usr/bin/env python3
# Copyright 2026 The slingloiter Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent numpy reference for the frozen values in oracle_values.hpp.

Run from the repository root:
    python3 tests/oracles/oracle.py > tests/oracles/oracle_values.hpp
"""

import itertools

import numpy as np

G_ACC = 9.81
ANCHORS = np.array([[0.259, 0.034, 0.399],
                    [-0.156, 0.269, 0.556],
                    [-0.1223, -0.1399, 0.1778]])
PAIRS3 = [(0, 1), (1, 2), (0, 2)]


def skew(v):
    return np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])


def rpy(roll, pitch, yaw):
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    rx = np.array([[1, 0, 0], [0, cr, -sr], [0, sr, cr]])
    ry = np.array([[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]])
    rz = np.array([[cy, -sy, 0], [sy, cy, 0], [0, 0, 1]])
    return rz @ ry @ rx


def grasp(anchors, rot):
    # Torque about the CoM in body coordinates: b x (R^T f).
    blocks = [np.vstack([np.eye(3), skew(b) @ rot.T]) for b in anchors]
    return np.hstack(blocks)


def pairwise(anchors, rot, pairs):
    n = len(anchors)
    out = np.zeros((3 * n, len(pairs)))
    for k, (i, j) in enumerate(pairs):
        d = anchors[i] - anchors[j]
        d = rot @ (d / np.linalg.norm(d))
        out[3 * i:3 * i + 3, k] = d
        out[3 * j:3 * j + 3, k] = -d
    return out


def lam(t, l0, amp, psi, phi):
    arg = np.outer(t, psi) + phi
    return l0 + amp * np.cos(arg), -amp * psi * np.sin(arg)


def speeds(anchors, rot, pairs, mass, length, l0, amp, psi, phi, t):
    g = grasp(anchors, rot)
    w = np.array([0, 0, mass * G_ACC, 0, 0, 0])
    f0 = np.linalg.pinv(g) @ w
    nb = pairwise(anchors, rot, pairs)
    value, rate = lam(t, l0, amp, psi, phi)
    f = f0[None, :] + value @ nb.T
    fd = rate @ nb.T
    out = []
    tensions = []
    for i in range(len(anchors)):
        fi = f[:, 3 * i:3 * i + 3]
        fdi = fd[:, 3 * i:3 * i + 3]
        tension = np.linalg.norm(fi, axis=1)
        q = fi / tension[:, None]
        qd = (fdi - np.sum(q * fdi, axis=1)[:, None] * q) / tension[:, None]
        out.append(length * np.linalg.norm(qd, axis=1))
        tensions.append(tension)
    return np.array(out), np.array(tensions)


def margins(anchors, rot, pairs, mass):
    g = grasp(anchors, rot)
    f0 = np.linalg.pinv(g) @ np.array([0, 0, mass * G_ACC, 0, 0, 0])
    nb = pairwise(anchors, rot, pairs)
    out = []
    for i in range(len(anchors)):
        cols = [k for k, p in enumerate(pairs) if i in p]
        a = nb[3 * i:3 * i + 3, cols[0]]
        b = nb[3 * i:3 * i + 3, cols[1]]
        nrm = np.cross(a, b)
        out.append(abs(nrm @ f0[3 * i:3 * i + 3]) / np.linalg.norm(nrm))
    return out


def cycle_count(n):
    seen = set()
    for perm in itertools.permutations(range(1, n)):
        cyc = (0,) + perm
        edges = frozenset(frozenset((cyc[k], cyc[(k + 1) % n]))
                          for k in range(n))
        seen.add(edges)
    return len(seen)


def fmt(x):
    return repr(float(x))


def array(name, values):
    body = ", ".join(fmt(v) for v in np.ravel(values))
    return f"inline constexpr double {name}[] = {{{body}}};"


LICENSE = """\
# Copyright 2026 The slingloiter Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License."""


def main():
    rot = np.eye(3)
    g = grasp(ANCHORS, rot)
    w = np.array([0, 0, G_ACC, 0, 0, 0])
    f0 = np.linalg.pinv(g) @ w

    rot2 = rpy(np.radians(10), np.radians(-20), np.radians(30))
    g_rot = grasp(ANCHORS, rot2)

    t_fine = np.arange(200000) * 1e-4
    sp_fine, _ = speeds(ANCHORS, rot, PAIRS3, 1.0, 0.8, 2.0, 1.2,
                        np.array([2.0, 2.0, 2.0]), np.array([0, 0.7, 1.7]),
                        t_fine)
    t_ms = np.arange(20000) * 1e-3
    sp_ms, ten_ms = speeds(ANCHORS, rot, PAIRS3, 1.0, 0.8, 2.0, 1.2,
                           np.array([2.0, 2.0, 2.0]),
                           np.array([0, 0.7, 1.7]), t_ms)

    header = [("//" + line[1:]) for line in LICENSE.splitlines()]
    lines = header + [
        "",
        "// Generated by tests/oracles/oracle.py. Do not edit.",
        "#ifndef SLINGLOITER_TESTS_ORACLE_VALUES_HPP_",
        "#define SLINGLOITER_TESTS_ORACLE_VALUES_HPP_",
        "",
        "namespace oracle {",
        "",
        "// Grasp matrix of the three reference anchors at R = I, row-major.",
        array("kGrasp3", g),
        "// Same anchors at roll 10, pitch -20, yaw 30 degrees.",
        array("kGrasp3Rotated", g_rot),
        array("kRotation10m2030", rot2),
        "// Minimum-norm forces for a 1 kg load at R = I.",
        array("kBaseForces3", f0),
        array("kPairwise3", pairwise(ANCHORS, rot, PAIRS3)),
        array("kMargins3", margins(ANCHORS, rot, PAIRS3, 1.0)),
        "// Per-carrier minimum speed over [0, 20) s.",
        array("kMinSpeedFine", sp_fine.min(axis=1)),
        array("kMinSpeedMs", sp_ms.min(axis=1)),
        array("kMinTensionMs", ten_ms.min(axis=1)),
        array("kMaxTensionMs", ten_ms.max(axis=1)),
        f"inline constexpr double kGoldenMinSpeed = {fmt(sp_fine.min())};",
        "",
        "// Distinct Hamiltonian cycles of K_n, counted by brute force.",
        "inline constexpr unsigned long long kCycleCount[] = {"
        + ", ".join(str(cycle_count(n)) for n in range(3, 9)) + "};  // n = 3..8",
        "",
        "}  // namespace oracle",
        "",
        "#endif  // SLINGLOITER_TESTS_ORACLE_VALUES_HPP_",
    ]
    print("\n".join(lines))


if __name__ == "__main__":
    main()
