#!/usr/bin/env python3
"""Generate the active-space FCIDUMP fixtures used by the test suite.

Self-contained restricted Hartree-Fock over contracted Gaussians
(McMurchie-Davidson integrals), followed by a frozen-core active-space
transformation. Runs once; the resulting files are committed as test data.

Systems:
  lih.fcidump  LiH, STO-3G, R = 3.20 A, active space 2a1 3a1 4a1 (2 electrons)
  h2o.fcidump  H2O, 6-31G, R(O-H) = 2.05 A, angle 107.6 deg,
               active space 1b1 3a1 4a1 2b1 (4 electrons)

Conventions: chemist-notation integrals, canonical RHF orbitals with the
largest MO coefficient made positive, active orbitals ordered by orbital
energy. The 0 0 0 0 line carries the frozen-core constant plus nuclear
repulsion; the VNN header field records nuclear repulsion separately.
"""

import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy.special import hyp1f1

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092

# Contracted shells: (angular momentum, [(exponent, coefficient), ...]).
# Basis Set Exchange tabulation for normalized primitives.
BASIS = {
    ("sto-3g", "H"): [
        (0, [(3.425250914, 0.1543289673),
             (0.6239137298, 0.5353281423),
             (0.1688554040, 0.4446345422)]),
    ],
    ("sto-3g", "Li"): [
        (0, [(16.11957475, 0.1543289673),
             (2.936200663, 0.5353281423),
             (0.7946504870, 0.4446345422)]),
        (0, [(0.6362897469, -0.09996722919),
             (0.1478600533, 0.3995128261),
             (0.0480886784, 0.7001154689)]),
        (1, [(0.6362897469, 0.1559162750),
             (0.1478600533, 0.6076837186),
             (0.0480886784, 0.3919573931)]),
    ],
    ("6-31g", "H"): [
        (0, [(18.73113696, 0.03349460434),
             (2.825394365, 0.2347269535),
             (0.6401216923, 0.8137573261)]),
        (0, [(0.1612777588, 1.0)]),
    ],
    ("6-31g", "O"): [
        (0, [(5484.671660, 0.001831074430),
             (825.2349460, 0.01395017220),
             (188.0469580, 0.06844507810),
             (52.96450000, 0.2327143360),
             (16.89757040, 0.4701928980),
             (5.799635340, 0.3585208530)]),
        (0, [(15.53961625, -0.1107775495),
             (3.599933586, -0.1480262627),
             (1.013761750, 1.130767015)]),
        (1, [(15.53961625, 0.07087426823),
             (3.599933586, 0.3397528391),
             (1.013761750, 0.7271585773)]),
        (0, [(0.2700058226, 1.0)]),
        (1, [(0.2700058226, 1.0)]),
    ],
}

CHARGES = {"H": 1, "Li": 3, "O": 8}


@dataclass
class BasisFunction:
    center: np.ndarray
    powers: tuple            # cartesian (i, j, k); s or p only
    exponents: np.ndarray
    coefficients: np.ndarray  # includes primitive norms and renormalization
    atom: int
    shell_kind: str          # 's', 'px', 'py', 'pz'


def primitive_norm(alpha, powers):
    i, j, k = powers
    l = i + j + k
    dfact = {0: 1.0, 1: 1.0, 2: 3.0}
    num = (2.0 * alpha / math.pi) ** 0.75 * (4.0 * alpha) ** (l / 2.0)
    den = math.sqrt(dfact[i] * dfact[j] * dfact[k])
    return num / den


def boys(n, x):
    return hyp1f1(n + 0.5, n + 1.5, -x) / (2.0 * n + 1.0)


def hermite_e(i, j, t, q, a, b, cache):
    """Hermite expansion coefficient E_t^{ij} for one dimension."""
    if t < 0 or t > i + j:
        return 0.0
    key = (i, j, t)
    if key in cache:
        return cache[key]
    p = a + b
    mu = a * b / p
    if i == 0 and j == 0 and t == 0:
        val = math.exp(-mu * q * q)
    elif i > 0:
        val = (hermite_e(i - 1, j, t - 1, q, a, b, cache) / (2 * p)
               - (b * q / p) * hermite_e(i - 1, j, t, q, a, b, cache)
               + (t + 1) * hermite_e(i - 1, j, t + 1, q, a, b, cache))
    else:
        val = (hermite_e(i, j - 1, t - 1, q, a, b, cache) / (2 * p)
               + (a * q / p) * hermite_e(i, j - 1, t, q, a, b, cache)
               + (t + 1) * hermite_e(i, j - 1, t + 1, q, a, b, cache))
    cache[key] = val
    return val


def e_coeff(i, j, t, q, a, b):
    return hermite_e(i, j, t, q, a, b, {})


def hermite_r(t, u, v, n, p, pc, cache):
    """Hermite Coulomb integral R^n_{tuv}."""
    key = (t, u, v, n)
    if key in cache:
        return cache[key]
    if t == 0 and u == 0 and v == 0:
        val = (-2.0 * p) ** n * boys(n, p * float(np.dot(pc, pc)))
    elif t > 0:
        val = (t - 1) * hermite_r(t - 2, u, v, n + 1, p, pc, cache) if t > 1 \
            else 0.0
        val += pc[0] * hermite_r(t - 1, u, v, n + 1, p, pc, cache)
    elif u > 0:
        val = (u - 1) * hermite_r(t, u - 2, v, n + 1, p, pc, cache) if u > 1 \
            else 0.0
        val += pc[1] * hermite_r(t, u - 1, v, n + 1, p, pc, cache)
    else:
        val = (v - 1) * hermite_r(t, u, v - 2, n + 1, p, pc, cache) if v > 1 \
            else 0.0
        val += pc[2] * hermite_r(t, u, v - 1, n + 1, p, pc, cache)
    cache[key] = val
    return val


def primitive_overlap(a, pa, ca, b, pb, cb):
    p = a + b
    ab = ca - cb
    s = (math.pi / p) ** 1.5
    for d in range(3):
        s *= e_coeff(pa[d], pb[d], 0, ab[d], a, b)
    return s


def primitive_kinetic(a, pa, ca, b, pb, cb):
    def s1d(i, j, d):
        ab = ca - cb
        return e_coeff(i, j, 0, ab[d], a, b)

    def t1d(i, j, d):
        term = b * (2 * j + 1) * s1d(i, j, d) - 2.0 * b * b * s1d(i, j + 2, d)
        if j >= 2:
            term -= 0.5 * j * (j - 1) * s1d(i, j - 2, d)
        return term

    p = a + b
    pref = (math.pi / p) ** 1.5
    out = 0.0
    for d in range(3):
        parts = []
        for e in range(3):
            parts.append(t1d(pa[e], pb[e], e) if e == d
                         else s1d(pa[e], pb[e], e))
        out += parts[0] * parts[1] * parts[2]
    return pref * out


def primitive_nuclear(a, pa, ca, b, pb, cb, nucleus):
    p = a + b
    center = (a * ca + b * cb) / p
    ab = ca - cb
    pc = center - nucleus
    out = 0.0
    cache = {}
    for t in range(pa[0] + pb[0] + 1):
        ex = e_coeff(pa[0], pb[0], t, ab[0], a, b)
        for u in range(pa[1] + pb[1] + 1):
            ey = e_coeff(pa[1], pb[1], u, ab[1], a, b)
            for v in range(pa[2] + pb[2] + 1):
                ez = e_coeff(pa[2], pb[2], v, ab[2], a, b)
                out += ex * ey * ez * hermite_r(t, u, v, 0, p, pc, cache)
    return 2.0 * math.pi / p * out


def primitive_eri(a, pa, ca, b, pb, cb, c, pc_, cc, d, pd, cd):
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * ca + b * cb) / p
    Q = (c * cc + d * cd) / q
    ab = ca - cb
    cd_ = cc - cd
    pq = P - Q
    cache = {}
    out = 0.0
    for t in range(pa[0] + pb[0] + 1):
        e1x = e_coeff(pa[0], pb[0], t, ab[0], a, b)
        for u in range(pa[1] + pb[1] + 1):
            e1y = e_coeff(pa[1], pb[1], u, ab[1], a, b)
            for v in range(pa[2] + pb[2] + 1):
                e1z = e_coeff(pa[2], pb[2], v, ab[2], a, b)
                e1 = e1x * e1y * e1z
                if e1 == 0.0:
                    continue
                for tt in range(pc_[0] + pd[0] + 1):
                    e2x = e_coeff(pc_[0], pd[0], tt, cd_[0], c, d)
                    for uu in range(pc_[1] + pd[1] + 1):
                        e2y = e_coeff(pc_[1], pd[1], uu, cd_[1], c, d)
                        for vv in range(pc_[2] + pd[2] + 1):
                            e2z = e_coeff(pc_[2], pd[2], vv, cd_[2], c, d)
                            e2 = e2x * e2y * e2z
                            if e2 == 0.0:
                                continue
                            sign = (-1.0) ** (tt + uu + vv)
                            out += e1 * e2 * sign * hermite_r(
                                t + tt, u + uu, v + vv, 0, alpha, pq, cache)
    return out * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def build_basis(atoms, basis_name):
    functions = []
    p_dirs = {0: ((0, 0, 0), "s")}
    for idx, (symbol, center) in enumerate(atoms):
        for ell, primitives in BASIS[(basis_name, symbol)]:
            exps = np.array([e for e, _ in primitives])
            raw = np.array([c for _, c in primitives])
            if ell == 0:
                kinds = [((0, 0, 0), "s")]
            else:
                kinds = [((1, 0, 0), "px"), ((0, 1, 0), "py"),
                         ((0, 0, 1), "pz")]
            for powers, kind in kinds:
                coeffs = raw * np.array(
                    [primitive_norm(e, powers) for e in exps])
                fn = BasisFunction(np.array(center, dtype=float), powers,
                                   exps, coeffs, idx, kind)
                # Renormalize the contracted function to unit self-overlap.
                self_s = contracted_overlap(fn, fn)
                fn.coefficients = coeffs / math.sqrt(self_s)
                functions.append(fn)
    return functions


def contracted_overlap(f1, f2):
    out = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            out += ca * cb * primitive_overlap(a, f1.powers, f1.center,
                                               b, f2.powers, f2.center)
    return out


def contracted_kinetic(f1, f2):
    out = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            out += ca * cb * primitive_kinetic(a, f1.powers, f1.center,
                                               b, f2.powers, f2.center)
    return out


def contracted_nuclear(f1, f2, atoms):
    out = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            block = 0.0
            for symbol, center in atoms:
                block -= CHARGES[symbol] * primitive_nuclear(
                    a, f1.powers, f1.center, b, f2.powers, f2.center,
                    np.array(center, dtype=float))
            out += ca * cb * block
    return out


def contracted_eri(f1, f2, f3, f4):
    out = 0.0
    for a, ca in zip(f1.exponents, f1.coefficients):
        for b, cb in zip(f2.exponents, f2.coefficients):
            for c, cc in zip(f3.exponents, f3.coefficients):
                for d, cd in zip(f4.exponents, f4.coefficients):
                    out += ca * cb * cc * cd * primitive_eri(
                        a, f1.powers, f1.center, b, f2.powers, f2.center,
                        c, f3.powers, f3.center, d, f4.powers, f4.center)
    return out


def all_integrals(functions, atoms):
    n = len(functions)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contracted_overlap(functions[i], functions[j])
            T[i, j] = T[j, i] = contracted_kinetic(functions[i], functions[j])
            V[i, j] = V[j, i] = contracted_nuclear(functions[i], functions[j],
                                                   atoms)
    eri = np.zeros((n, n, n, n))
    pair = [(i, j) for i in range(n) for j in range(i + 1)]
    for a, (i, j) in enumerate(pair):
        for b, (k, l) in enumerate(pair):
            if b > a:
                continue
            val = contracted_eri(functions[i], functions[j], functions[k],
                                 functions[l])
            for (p, q) in ((i, j), (j, i)):
                for (r, s) in ((k, l), (l, k)):
                    eri[p, q, r, s] = val
                    eri[r, s, p, q] = val
    return S, T, V, eri


def nuclear_repulsion(atoms):
    e = 0.0
    for i, (si, ci) in enumerate(atoms):
        for j, (sj, cj) in enumerate(atoms):
            if j <= i:
                continue
            r = np.linalg.norm(np.array(ci) - np.array(cj))
            e += CHARGES[si] * CHARGES[sj] / r
    return e


def rhf(S, T, V, eri, n_electrons, max_iter=200):
    h = T + V
    n_occ = n_electrons // 2
    s_val, s_vec = np.linalg.eigh(S)
    X = s_vec @ np.diag(s_val ** -0.5) @ s_vec.T

    def fock(D):
        J = np.einsum("pqrs,rs->pq", eri, D)
        K = np.einsum("prqs,rs->pq", eri, D)
        return h + 2.0 * J - K

    def density(F):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Docc = C[:, :n_occ]
        return C, eps, Docc @ Docc.T

    C, eps, D = density(h)
    energy = 0.0
    errors, focks = [], []
    for iteration in range(max_iter):
        F = fock(D)
        err = F @ D @ S - S @ D @ F
        errors.append(err.ravel())
        focks.append(F)
        if len(errors) > 8:
            errors.pop(0)
            focks.pop(0)
        if len(errors) > 1:
            m = len(errors)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = float(np.dot(errors[i], errors[j]))
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * fi for wi, fi in zip(w, focks))
            except np.linalg.LinAlgError:
                pass
        C, eps, D_new = density(F)
        e_new = float(np.einsum("pq,pq->", D_new, h + fock(D_new)))
        if (abs(e_new - energy) < 1e-13
                and np.max(np.abs(D_new - D)) < 1e-11):
            energy = e_new
            D = D_new
            break
        energy = e_new
        D = D_new
    else:
        raise RuntimeError("SCF did not converge")

    # Deterministic phases: largest-magnitude coefficient positive.
    for k in range(C.shape[1]):
        pivot = np.argmax(np.abs(C[:, k]))
        if C[pivot, k] < 0:
            C[:, k] = -C[:, k]
    return C, eps, energy


def mo_parities(C, S, functions, reflections):
    """Parity of each MO under the given AO-space reflection matrices."""
    out = []
    for k in range(C.shape[1]):
        ps = []
        for R in reflections:
            ps.append(float(C[:, k] @ S @ R @ C[:, k]))
        out.append(ps)
    return out


def reflection_matrix(functions, flip_axis, swap):
    """AO representation of a reflection: optional sign flip of one p
    direction plus a permutation of equivalent centers."""
    n = len(functions)
    R = np.zeros((n, n))
    axis_kind = {0: "px", 1: "py", 2: "pz"}[flip_axis] if flip_axis is not \
        None else None
    for i, f in enumerate(functions):
        target_atom = swap.get(f.atom, f.atom)
        sign = -1.0 if f.shell_kind == axis_kind else 1.0
        for j, g in enumerate(functions):
            if (g.atom == target_atom and g.shell_kind == f.shell_kind
                    and np.array_equal(g.exponents, f.exponents)):
                R[j, i] = sign
                break
    return R


def classify_c2v(C, S, functions, swap_pair):
    """Irrep of each MO for a molecule in the yz plane, C2 along z."""
    sigma_yz = reflection_matrix(functions, 0, {})          # x -> -x
    sigma_xz = reflection_matrix(functions, 1, swap_pair)   # y -> -y
    labels = []
    for p_yz, p_xz in mo_parities(C, S, functions, [sigma_yz, sigma_xz]):
        if p_yz > 0.5 and p_xz > 0.5:
            labels.append("a1")
        elif p_yz < -0.5 and p_xz > 0.5:
            labels.append("b1")
        elif p_yz > 0.5 and p_xz < -0.5:
            labels.append("b2")
        elif p_yz < -0.5 and p_xz < -0.5:
            labels.append("a2")
        else:
            raise RuntimeError("MO has no clean C2v parity: %r"
                               % ((p_yz, p_xz),))
    return labels


def active_space_integrals(C, h_ao, eri_ao, frozen, active):
    h_mo = C.T @ h_ao @ C
    eri_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", eri_ao, C, C, C, C,
                       optimize=True)
    e_frozen = 0.0
    for i in frozen:
        e_frozen += 2.0 * h_mo[i, i]
        for j in frozen:
            e_frozen += 2.0 * eri_mo[i, i, j, j] - eri_mo[i, j, j, i]
    n_act = len(active)
    h_eff = np.zeros((n_act, n_act))
    for a, p in enumerate(active):
        for b, q in enumerate(active):
            val = h_mo[p, q]
            for i in frozen:
                val += 2.0 * eri_mo[p, q, i, i] - eri_mo[p, i, i, q]
            h_eff[a, b] = val
    g = np.zeros((n_act,) * 4)
    for a, p in enumerate(active):
        for b, q in enumerate(active):
            for c, r in enumerate(active):
                for d, s in enumerate(active):
                    g[a, b, c, d] = eri_mo[p, q, r, s]
    return h_eff, g, e_frozen


MOLPRO_C2V = {"a1": 1, "b1": 2, "b2": 3, "a2": 4}


def write_fcidump(path, h_eff, g, constant, vnn, n_electrons, orbsym):
    n = h_eff.shape[0]
    lines = []
    lines.append(" &FCI NORB=%d,NELEC=%d,MS2=0," % (n, n_electrons))
    lines.append("  ORBSYM=%s" % ",".join(str(s) for s in orbsym) + ",")
    lines.append("  ISYM=1,")
    lines.append("  VNN=%.17g," % vnn)
    lines.append(" &END")

    def fmt(value, i, j, k, l):
        return " %23.16E %3d %3d %3d %3d" % (value, i, j, k, l)

    seen = set()
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    key = tuple(sorted([tuple(sorted((p, q))),
                                        tuple(sorted((r, s)))]))
                    if key in seen:
                        continue
                    seen.add(key)
                    if abs(g[p, q, r, s]) > 1e-12:
                        lines.append(fmt(g[p, q, r, s],
                                         p + 1, q + 1, r + 1, s + 1))
    for p in range(n):
        for q in range(p + 1):
            if abs(h_eff[p, q]) > 1e-12:
                lines.append(fmt(h_eff[p, q], p + 1, q + 1, 0, 0))
    lines.append(fmt(constant, 0, 0, 0, 0))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def make_lih(out_path):
    r = 3.20 * ANGSTROM_TO_BOHR
    atoms = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))]
    functions = build_basis(atoms, "sto-3g")
    S, T, V, eri = all_integrals(functions, atoms)
    vnn = nuclear_repulsion(atoms)
    C, eps, e_elec = rhf(S, T, V, eri, n_electrons=4)
    print("LiH  E(HF) total = %.10f, Vnn = %.7f" % (e_elec + vnn, vnn))

    labels = classify_c2v(C, S, functions, swap_pair={})
    a1 = [k for k, lab in enumerate(labels) if lab == "a1"]
    # Active space: every sigma orbital above the core.
    frozen = [a1[0]]
    active = a1[1:4]
    print("LiH  labels =", labels, " eps =",
          ["%.5f" % e for e in eps])
    h_eff, g, e_frozen = active_space_integrals(C, T + V, eri, frozen, active)
    write_fcidump(out_path, h_eff, g, e_frozen + vnn, vnn,
                  n_electrons=2, orbsym=[1, 1, 1])
    print("LiH  frozen-core constant = %.10f" % e_frozen)


def make_h2o(out_path):
    r = 2.05 * ANGSTROM_TO_BOHR
    theta = math.radians(107.6)
    y = r * math.sin(theta / 2.0)
    z = r * math.cos(theta / 2.0)
    atoms = [("O", (0.0, 0.0, 0.0)),
             ("H", (0.0, y, z)),
             ("H", (0.0, -y, z))]
    functions = build_basis(atoms, "6-31g")
    S, T, V, eri = all_integrals(functions, atoms)
    vnn = nuclear_repulsion(atoms)
    C, eps, e_elec = rhf(S, T, V, eri, n_electrons=10)
    print("H2O  E(HF) total = %.10f, Vnn = %.7f" % (e_elec + vnn, vnn))

    labels = classify_c2v(C, S, functions, swap_pair={1: 2, 2: 1})
    a1 = [k for k, lab in enumerate(labels) if lab == "a1"]
    b1 = [k for k, lab in enumerate(labels) if lab == "b1"]
    b2 = [k for k, lab in enumerate(labels) if lab == "b2"]
    print("H2O  labels =", labels)
    print("H2O  eps =", ["%.5f" % e for e in eps])

    frozen = sorted([a1[0], a1[1], b2[0]])
    active = sorted([b1[0], a1[2], a1[3], b1[1]])  # energy order
    occupied = sorted(list(np.argsort(eps)[:5]))
    expected_occ = sorted(frozen + [x for x in active if x in occupied])
    print("H2O  frozen =", frozen, " active =", active,
          " occupied =", occupied)
    if sorted(occupied) != sorted(expected_occ):
        print("WARNING: occupied set differs from the assumed configuration")

    h_eff, g, e_frozen = active_space_integrals(C, T + V, eri, frozen, active)
    orbsym = [MOLPRO_C2V[labels[k]] for k in active]
    write_fcidump(out_path, h_eff, g, e_frozen + vnn, vnn,
                  n_electrons=4, orbsym=orbsym)
    print("H2O  frozen-core constant = %.10f" % e_frozen)


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures"
    make_lih(out_dir + "/lih.fcidump")
    make_h2o(out_dir + "/h2o.fcidump")


if __name__ == "__main__":
    main()
