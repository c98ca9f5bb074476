"""Named verification suites over parameter grids.

Each suite runs exact checks (tolerance zero everywhere) and returns a Report
with one row per checked cell plus an overall status.  The CLI exposes these
under `superh check <suite>`; the acceptance tests drive the same functions.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .superalgebra import SuperPolynomial, monomial_basis
from .diffops import (
    check_sl2,
    generator_pairs,
    generator_vector_field,
    killing_check,
    laplace_beltrami,
    laplace_beltrami_bosonic,
    laplace_beltrami_fermionic,
    partial_vector_field,
    vec_to_poly,
)
from .harmonic import (
    bosonic_eigenvalue,
    decompose_Hk,
    dim_Hk,
    fermionic_eigenvalue,
    fischer,
    harmonic_basis,
    projection_Q,
    verify_lemma_Lf,
)
from .integration import invariance_suite, pizzetti, supersphere_integral_phi
from .modules import (
    SpaceSpec,
    branching,
    in_window,
    indecomposability_witness,
    is_irreducible,
    rep_space,
    window_interval,
    window_submodule_check,
)


@dataclass
class Report:
    command: str
    parameters: dict
    rows: list = field(default_factory=list)
    status: str = "pass"
    counterexample: str | None = None

    def fail(self, counterexample: str) -> None:
        self.status = "fail"
        if self.counterexample is None:
            self.counterexample = counterexample

    @property
    def exit_code(self) -> int:
        return 0 if self.status in ("pass", "degenerate", "inconclusive") else 1


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("SUPERH_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: list) -> list:
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- individual suites ------------------------------------------------------------


def suite_sl2(cells: list[tuple[int, int]], k_max: int) -> Report:
    report = Report("check sl2", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        res = check_sl2(m, n, max(2, k_max))
        report.rows.append({"m": m, "n": n, "k_max": k_max,
                            "result": "pass" if res.passed else "fail"})
        if not res.passed:
            report.fail(f"sl2 relation failed at (m,n)=({m},{n}): {res.failures[0]}")
    return report


def suite_lb(cells: list[tuple[int, int]], k_max: int) -> Report:
    """Both Laplace-Beltrami constructions agree; eigenvalue -k(M-2+k) on H_k."""
    report = Report("check lb", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        M = m - 2 * n
        form_a, form_b = laplace_beltrami(m, n)
        forms_ok = True
        eigen_ok = True
        for k in range(0, k_max + 1):
            for mono in monomial_basis(m, n, k):
                f = SuperPolynomial.monomial(mono)
                if form_a.apply(f) != form_b.apply(f):
                    forms_ok = False
                    report.fail(f"LB forms differ on {f} at ({m}|{2*n})")
                    break
            eig = Fraction(-k * (M - 2 + k))
            for row in harmonic_basis(m, n, k).rows:
                h = vec_to_poly(dict(row), m, n, k)
                if form_a.apply(h) != h.scaled(eig):
                    eigen_ok = False
                    report.fail(f"LB eigenvalue failed on H_{k}({m}|{2*n})")
                    break
        report.rows.append({"m": m, "n": n, "forms": "pass" if forms_ok else "fail",
                            "eigenvalue": "pass" if eigen_ok else "fail"})
    return report


def suite_killing(cells: list[tuple[int, int]]) -> Report:
    report = Report("check killing", {"cells": cells})
    for (m, n) in cells:
        ok = True
        for (i, j) in generator_pairs(m, n):
            if not killing_check(generator_vector_field(i, j, m, n), m, n):
                ok = False
                report.fail(f"L_{i},{j} failed the Killing condition at ({m}|{2*n})")
        for j in range(1, m + 2 * n + 1):
            if not killing_check(partial_vector_field(j, m, n), m, n):
                ok = False
                report.fail(f"translation field {j} failed at ({m}|{2*n})")
        euler_type = {1: SuperPolynomial.x(1)}
        if killing_check(euler_type, m, n):
            ok = False
            report.fail(f"Euler-type field passed the Killing condition at ({m}|{2*n})")
        report.rows.append({"m": m, "n": n, "result": "pass" if ok else "fail"})
    return report


def suite_dims(cells: list[tuple[int, int]], k_max: int) -> Report:
    """Closed-form dimension equals the brute-force kernel rank."""
    report = Report("check dims", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        for k in range(0, k_max + 1):
            formula = dim_Hk(m, n, k)
            rank = harmonic_basis(m, n, k).dim
            row = {"m": m, "n": n, "k": k, "formula": formula, "kernel": rank}
            report.rows.append(row)
            if formula != rank:
                report.fail(f"dim mismatch at ({m},{n},{k}): {formula} != {rank}")
    return report


def fischer_flag_expected(m: int, n: int, k: int) -> bool:
    """The radial decomposition of P_k is direct iff no compatible degenerate
    degree k' <= k with k' = k (mod 2) lies in the band [2-M/2, 2-M]."""
    if m == 0:
        return True
    band = window_interval(m, n)
    if band is None:
        return True
    lo, hi = band
    return not any(lo <= kp <= hi for kp in range(k, 1, -2))


def suite_fischer(cells: list[tuple[int, int]], k_max: int) -> Report:
    report = Report("check fischer", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        for k in range(0, k_max + 1):
            fd = fischer(m, n, k)
            expected = fischer_flag_expected(m, n, k)
            row = {"m": m, "n": n, "k": k, "direct_sum": fd.direct_sum,
                   "expected": expected,
                   "blocks": [(p.j, p.dim) for p in fd.pieces]}
            report.rows.append(row)
            if fd.direct_sum != expected:
                report.fail(f"fischer flag at ({m},{n},{k}): "
                            f"{fd.direct_sum} expected {expected}")
    return report


def suite_projections(cells: list[tuple[int, int]], k_max: int,
                      literal_vectors: int = 2) -> Report:
    """Piece decomposition of H_k plus the delta action of the projectors.

    Every piece vector is checked to be a joint eigenvector of the two
    Laplace-Beltrami blocks (exact), the projector factor products then act by
    the exact scalar delta; on top, the operator products are applied
    literally to a few vectors of every piece.
    """
    report = Report("check projections", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        lb_b = laplace_beltrami_bosonic(m)
        lb_f = laplace_beltrami_fermionic(n)
        for k in range(0, k_max + 1):
            pieces = decompose_Hk(m, n, k)
            fallback_used = False
            ok = True
            for pc in pieces:
                lam_b = Fraction(bosonic_eigenvalue(m, pc.p))
                lam_f = Fraction(fermionic_eigenvalue(n, pc.q))
                for row in pc.basis.rows:
                    v = vec_to_poly(dict(row), m, n, k)
                    if lb_b.apply(v) != v.scaled(lam_b) or lb_f.apply(v) != v.scaled(lam_f):
                        ok = False
                        report.fail(f"piece ({pc.l},{pc.p},{pc.q}) of H_{k}({m}|{2*n}) "
                                    "is not a joint eigenspace")
            projectors = {}
            for pc in pieces:
                Q = projection_Q(pc.l, pc.q, k, m, n)
                projectors[(pc.l, pc.q)] = Q
                fallback_used = fallback_used or Q.spectral_fallback
            for tgt in pieces:
                Q = projectors[(tgt.l, tgt.q)]
                for src in pieces:
                    want = Fraction(1 if (src.l, src.q) == (tgt.l, tgt.q) else 0)
                    if Q.scalar_on_piece(src.p, src.q) != want:
                        ok = False
                        report.fail(f"projector scalar failed at ({m},{n},{k}) "
                                    f"target ({tgt.l},{tgt.q}) source ({src.l},{src.q})")
                    for row in src.basis.rows[:literal_vectors]:
                        v = vec_to_poly(dict(row), m, n, k)
                        got = Q.apply(v)
                        expect = v.scaled(want)
                        if got != expect:
                            ok = False
                            report.fail(f"projector application failed at ({m},{n},{k})")
            report.rows.append({"m": m, "n": n, "k": k, "pieces": len(pieces),
                                "spectral_fallback": fallback_used,
                                "result": "pass" if ok else "fail"})
    return report


def suite_lemma_lf(cells: list[tuple[int, int]]) -> Report:
    report = Report("check lemma-lf", {"cells": cells})
    for (m, n) in cells:
        if n < 1:
            continue
        ok = True
        for q in range(0, n + 1):
            for k in range(0, n - q + 1):
                for p in range(0, 4):
                    if not verify_lemma_Lf(k, p, q, m, n):
                        ok = False
                        report.fail(f"radial identity failed at k={k},p={p},q={q} ({m}|{2*n})")
        report.rows.append({"m": m, "n": n, "result": "pass" if ok else "fail"})
    return report


def suite_integrals(cells: list[tuple[int, int]], k_max: int,
                    invariance_k: int = 4, seed: int = 20240) -> Report:
    report = Report("check integrals", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        equal_ok = True
        for k in range(0, k_max + 1):
            for mono in monomial_basis(m, n, k):
                f = SuperPolynomial.monomial(mono)
                if pizzetti(f, m, n) != supersphere_integral_phi(f, m, n):
                    equal_ok = False
                    report.fail(f"integral routes differ on {f} at ({m}|{2*n})")
        inv = invariance_suite(m, n, min(k_max, invariance_k), seed=seed)
        M = m - 2 * n
        report.rows.append({"m": m, "n": n, "routes": "pass" if equal_ok else "fail",
                            "invariance": "pass" if inv.passed else "fail",
                            "degenerate_superdimension": M <= 0 and M % 2 == 0})
        if not inv.passed:
            report.fail(f"invariance failed at ({m}|{2*n}): {inv.failures[0]}")
    return report


def suite_irreducibility(cells: list[tuple[int, int]], k_max: int) -> Report:
    report = Report("check irreducibility", {"cells": cells, "k_max": k_max})
    for (m, n) in cells:
        for k in range(0, k_max + 1):
            rep = rep_space(SpaceSpec("Hk", m, n, k))
            verdict = is_irreducible(rep)
            expected = not in_window(m, n, k)
            row = {"m": m, "n": n, "k": k, "irreducible": verdict,
                   "expected": expected}
            if not verdict:
                row["indecomposable"] = indecomposability_witness(rep)
            report.rows.append(row)
            if verdict != expected:
                report.fail(f"irreducibility verdict at ({m},{n},{k}): "
                            f"{verdict}, expected {expected}")
            elif not verdict and row["indecomposable"] != "verified":
                report.fail(f"indecomposability witness not found at ({m},{n},{k})")
    return report


def suite_windows(cells: list[tuple[int, int]], k_max: int | None = None) -> Report:
    report = Report("check windows", {"cells": cells})
    any_window = False
    for (m, n) in cells:
        band = window_interval(m, n)
        if band is None:
            continue
        for k in range(band[0], band[1] + 1):
            if k_max is not None and k > k_max:
                continue
            any_window = True
            res = window_submodule_check(m, n, k)
            report.rows.append({"m": m, "n": n, "k": k,
                                "submodule_dim": res.submodule_dim,
                                "quotient_dim": res.quotient_dim,
                                "result": "pass" if res.passed else "fail",
                                "details": res.details})
            if not res.passed:
                report.fail(f"degenerate band structure failed at ({m},{n},{k})")
    if not any_window:
        report.status = "degenerate" if report.status == "pass" else report.status
        report.counterexample = report.counterexample or "no degenerate cells in range"
    return report


def suite_branching(cells: list[tuple[int, int]], k_max: int,
                    explicit_cells: Iterable[tuple[int, int, int]] = ()) -> Report:
    report = Report("check branching", {"cells": cells, "k_max": k_max})
    explicit_set = set(explicit_cells)
    for (m, n) in cells:
        if m < 2:
            continue
        M = m - 2 * n
        for k in range(0, k_max + 1):
            b = branching(m, n, k, explicit=(m, n, k) in explicit_set)
            flag_expected = (M <= 1 and M % 2 != 0 and k >= 2 + (1 - M) // 2)
            row = {"m": m, "n": n, "k": k, "case": b.case,
                   "branch": b.branch, "dim_identity": b.dim_identity}
            if b.explicit is not None:
                row["explicit"] = b.explicit
            report.rows.append(row)
            if (b.case == "not_completely_reducible") != flag_expected:
                report.fail(f"complete-reducibility flag at ({m},{n},{k})")
            if b.case != "not_completely_reducible" and not b.dim_identity:
                report.fail(f"branch dimension identity failed at ({m},{n},{k})")
            if b.explicit is not None and b.explicit != "verified":
                report.fail(f"explicit branching not verified at ({m},{n},{k}): {b.explicit}")
    return report


SUITES = ("sl2", "lb", "killing", "projections", "fischer", "integrals",
          "irreducibility", "windows", "branching", "all")


def run_suite(name: str, cells: list[tuple[int, int]], k_max: int,
              seed: int = 20240) -> Report:
    if name == "sl2":
        return suite_sl2(cells, k_max)
    if name == "lb":
        return suite_lb(cells, k_max)
    if name == "killing":
        return suite_killing(cells)
    if name == "projections":
        return suite_projections(cells, k_max)
    if name == "fischer":
        return suite_fischer(cells, k_max)
    if name == "integrals":
        return suite_integrals(cells, k_max, seed=seed)
    if name == "irreducibility":
        return suite_irreducibility([c for c in cells if c[0] >= 2], k_max)
    if name == "windows":
        return suite_windows(cells, k_max)
    if name == "branching":
        return suite_branching([c for c in cells if c[0] >= 2], k_max)
    if name == "all":
        merged = Report("check all", {"cells": cells, "k_max": k_max})
        names = ["sl2", "lb", "killing", "projections", "fischer",
                 "integrals", "irreducibility", "windows", "branching"]
        results = pmap(lambda nm: run_suite(nm, cells, k_max, seed), names)
        for nm, rep in zip(names, results):
            merged.rows.append({"suite": nm, "status": rep.status})
            if rep.status == "fail":
                merged.fail(f"{nm}: {rep.counterexample}")
        return merged
    raise ValueError(f"unknown suite {name!r}")
