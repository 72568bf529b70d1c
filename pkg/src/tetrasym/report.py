"""Verification suites producing machine-readable check lists."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .category import Arrow, Category, GroupRepCategory, verify_coherence
from .frobenius import canonical_action_residuals, s3_relations_check, selection_rules
from .indicators import categorical_indicator, fs_decompose, fs_element_group
from .numeric import as_tol, max_abs
from .rigidity import (
    RigidityData,
    alpha_residuals,
    antimonoidal_alpha,
    build_rigidity,
    conjugate_arrow,
    kappa,
    trace_left,
    trace_right,
    zigzag_left,
    zigzag_right,
)
from .tetrahedron import (
    admissible_tetrahedra,
    invariance_residuals,
    lemma_residuals,
    orbit_report,
    reconstruction_residual,
    unitarity_residual,
)

SUITES = ("coherence", "rigidity", "indicators", "frobenius", "s4")


def check(cid: str, residual: float, tol: float, details: str = "") -> dict:
    ok = math.isfinite(residual) and residual <= tol
    return {
        "id": cid,
        "status": "pass" if ok else "fail",
        "residual": float(residual) if math.isfinite(residual) else None,
        "details": details,
    }


def small_words(cat: Category) -> list:
    return list(cat.labels) + list(itertools.product(cat.labels, repeat=2))


def _random_arrow(cat: Category, src, dst, rng) -> Arrow | None:
    basis = cat.hom_basis(src, dst)
    if not len(basis):
        return None
    z = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    return sum((c * b for c, b in zip(z, basis)), basis[0] * 0)


def suite_coherence(cat, rig, tol, seed):
    rep = verify_coherence(cat, tol=tol, seed=seed, strict=False)
    mode = "exhaustive" if rep.exhaustive else f"sampled seed={rep.seed}"
    return [
        check("triangle-1.1a", rep.triangle_max, tol, f"{rep.triangle_count} pairs, {mode}"),
        check("pentagon-1.1b", rep.pentagon_max, tol, f"{rep.pentagon_count} quadruples, {mode}"),
    ]


def suite_rigidity(cat, rig: RigidityData, tol, seed):
    words = small_words(cat)
    zz = std = sph = kap = conj = 0.0
    for w in words:
        e, c = rig.e(w), rig.c(w)
        zz = max(zz, zigzag_left(cat, w, e, c).dist(cat.identity(w)),
                 zigzag_right(cat, w, e, c).dist(cat.identity(rig.conj(w))))
        d = rig.qdim(w)
        std = max(std, abs((c.adj @ c).scalar() - d), max_abs((e @ e.adj).mat - d))
        k = kappa(rig, w)
        kap = max(kap, k.sovereign_residual, max_abs(k.kappa.mat.conj().T @ k.kappa.mat - np.eye(cat.dim(w))))
        sph = max(sph, abs(trace_left(rig, cat.identity(w)) - trace_right(rig, cat.identity(w))))
    rng = np.random.default_rng(seed)
    cyc = pos = 0.0
    pairs = 0
    while pairs < 100:
        a, b = (words[i] for i in rng.integers(0, len(words), 2))
        T = _random_arrow(cat, b, a, rng)
        S = _random_arrow(cat, a, b, rng)
        if T is None or S is None:
            continue
        pairs += 1
        cyc = max(cyc, abs(trace_left(rig, T @ S) - trace_left(rig, S @ T)))
        sph = max(sph, abs(trace_left(rig, T @ S) - trace_right(rig, T @ S)))
        tt = trace_left(rig, T.adj @ T)
        pos = max(pos, abs(tt.imag), max(0.0, -tt.real))
        conj = max(conj, conjugate_arrow(rig, conjugate_arrow(rig, T)).dist(T))
    chi = 0.0
    for p in cat.labels:
        ph = cat.conj[p]
        chi = max(chi, rig.e_irr[ph].dist(rig.c_irr[p].adj * rig.chi[p]),
                  rig.c_irr[ph].dist(rig.e_irr[p].adj * (1 / rig.chi[p])))
        if ph != p:
            chi = max(chi, abs(rig.chi[p] - 1))
    al = max(max(alpha_residuals(rig, p)) for p in cat.labels)
    anti = 0.0
    for p, q in itertools.product(cat.labels, repeat=2):
        T = _random_arrow(cat, p, (cat.conj[q], (q, p)), rng)
        S = _random_arrow(cat, q, (q, 0), rng)
        if T is None or S is None:
            continue
        lhs = conjugate_arrow(rig, T.tensor(S))
        mid = conjugate_arrow(rig, S).tensor(conjugate_arrow(rig, T))
        a_in = antimonoidal_alpha(rig, p, q)
        a_out = antimonoidal_alpha(rig, T.dst, S.dst)
        inv = Arrow(a_in.dst, a_in.src, np.linalg.inv(a_in.mat))
        anti = max(anti, lhs.dist(inv @ mid @ a_out))
    return [
        check("zigzag-1.2", zz, tol, f"{len(words)} words"),
        check("standard-1.12", std, tol),
        check("trace-2.6", sph, tol),
        check("trace-2.5", max(cyc, pos), tol, f"100 random pairs, seed={seed}"),
        check("conj-1.15", conj, tol, "double conjugation on random arrows"),
        check("kappa-1.8", kap, tol, "unitary and equal to kappa-tilde"),
        check("chi-4.4", chi, tol, "chi=" + ",".join(str(rig.chi[p]) for p in cat.labels)),
        check("alpha-2.3a", al, tol),
        check("antimonoidal-1.18", anti, tol),
    ]


def suite_indicators(cat, rig, tol, seed):
    nu_cat = {p: categorical_indicator(rig, p) for p in cat.labels}
    valued = 0.0
    for p in cat.labels:
        if (nu_cat[p] == 0) != (cat.conj[p] != p):
            valued = 1.0
    chi = max((abs(nu_cat[p] - rig.chi[p]) for p in cat.labels if cat.conj[p] == p), default=0.0)
    out = [
        check("fs-3.10", valued, tol, "nu=" + ",".join(str(nu_cat[p]) for p in cat.labels)),
        check("chi-4.2", chi, tol),
    ]
    if isinstance(cat, GroupRepCategory):
        sigma = fs_element_group(cat, tol)
        nu_grp = fs_decompose(cat, sigma, tol)
        diff = max(abs(nu_grp[p] - nu_cat[p]) for p in cat.labels)
        out.append(check("fs-3.1", max(sigma.central_residual, sigma.selfadjoint_residual), tol))
        out.append(check("fs-3.2", diff, tol, "sigma route agrees with categorical route"))
    return out


def suite_frobenius(cat, rig, tol, seed):
    iso = sq = br = 0.0
    n = 0
    for t in itertools.product(cat.labels, repeat=3):
        if not cat.fusion(*t):
            continue
        n += 1
        r = s3_relations_check(rig, *t)
        iso = max(iso, r.isometry_x, r.isometry_y)
        sq = max(sq, r.x_squared, r.y_squared)
        br = max(br, r.braid)
    can = max(max(canonical_action_residuals(rig, p).values()) for p in cat.labels)
    sel = selection_rules(rig, strict=False)
    bad = [s for s in sel if s[2]]
    return [
        check("frob-5.3", iso, tol, f"{n} admissible triples"),
        check("frob-5.4a", sq, tol),
        check("frob-5.4b", br, tol),
        check("frob-5.6", can, tol),
        check("selection-rules", float(len(bad)), tol, f"{len(sel)} forced zeros checked"),
    ]


def suite_s4(cat, rig, tol, seed):
    tets = admissible_tetrahedra(cat)
    lem = inv = 0.0
    for s in tets:
        lem = max(lem, max(lemma_residuals(rig, s).values()))
        inv = max(inv, max(invariance_residuals(rig, s).values()))
    orbits = orbit_report(cat)
    return [
        check("lemma-6.6", lem, tol, f"{len(tets)} admissible tetrahedra"),
        check("prop-7.4b", inv, tol),
        check("unitarity-6j", unitarity_residual(rig), tol),
        check("orbit-reconstruction", reconstruction_residual(rig, orbits), tol,
              f"{orbits.count} orbits, ratio {orbits.ratio:.4g}"),
    ]


SUITE_FUNCS = {
    "coherence": suite_coherence,
    "rigidity": suite_rigidity,
    "indicators": suite_indicators,
    "frobenius": suite_frobenius,
    "s4": suite_s4,
}


def run_suite(cat: Category, suite: str, tol=None, seed: int = 0, rig: RigidityData | None = None) -> dict:
    eps = as_tol(tol)
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITE_FUNCS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    rig = rig or build_rigidity(cat, eps)
    checks = []
    for n in names:
        checks.extend(SUITE_FUNCS[n](cat, rig, eps, seed))
    checks.sort(key=lambda c: c["id"])
    return {
        "category": cat.name,
        "suite": suite,
        "tolerance": eps,
        "seed": seed,
        "passed": all(c["status"] == "pass" for c in checks),
        "checks": checks,
    }
