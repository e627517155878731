"""The reference acceptance matrix: every conformance criterion in one place.

Each criterion is a function returning a CriterionResult; `verify_paper` runs
them (optionally restricted or in a worker pool) and reports one pass/fail
line per criterion.  The same functions back the test suite and the
`verify-paper` CLI subcommand, so there is a single source of truth for what
"conforms" means.

Criterion `cohomology-vanishing` asserts the bundled target values verbatim.
One family of those targets (the symmetric-power weight r = ell - 3) is
contradicted by the computation itself, which this package certifies with an
explicit non-coboundary cocycle; the criterion is reported honestly as
failing there rather than being weakened to match.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import fixtures
from .chevalley import bracket, build_chevalley_algebra, jacobi_sweep
from .exact import GF
from .group_cohomology import (
    adjoint_h1_via_kostant,
    close_group,
    h1,
    h1_naive,
    module_from_matrices,
    sl2_group,
    sym_module,
)
from .principal_sl2 import (
    build_principal_sl2,
    centralizer_of_X,
    kostant_decomposition,
    kostant_mod_ell_basis_check,
    sl2_string_family_rows,
)
from .prime_scan import build_report, check_against_reference
from .rootsys import EXCEPTIONAL_TYPES, build_root_datum
from .selmer_arith import (
    LocalCondition,
    SelmerLedger,
    balanced_ledger,
    lgroup_euler_difference,
    lifting_prime_bounds,
    oddness_deficit,
    wiles_difference,
)

NIGHTLY_ENV = "MONOLAB_NIGHTLY"


@dataclass
class CriterionResult:
    name: str
    ok: bool
    details: list = field(default_factory=list)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name} ({self.elapsed:.1f}s)"


def _next_primes(start: int, count: int):
    from .exact import is_probable_prime

    out = []
    n = max(2, start)
    while len(out) < count:
        if is_probable_prime(n):
            out.append(n)
        n += 1
    return out


# --- criterion 1 -----------------------------------------------------------


def crit_prime_lists() -> CriterionResult:
    res = CriterionResult("prime-lists", True)
    for t in ("G2", "F4", "E7", "E6"):
        got = build_report(t).bad_primes
        want = fixtures.OBSTRUCTION_PRIMES[t]
        ok = got == want
        res.ok &= ok
        res.details.append(f"{t}: scan {list(got)} vs reference {list(want)} -> {'ok' if ok else 'MISMATCH'}")
    return res


# --- criterion 2 -----------------------------------------------------------


def crit_e8_adjudication() -> CriterionResult:
    res = CriterionResult("e8-adjudication", True)
    rep = build_report("E8")
    ok, expected, note = check_against_reference(rep)
    res.ok = ok
    res.details.append(f"E8 scan: {list(rep.bad_primes)}")
    res.details.append(f"adjudication: {rep.e8_adjudication} ({note})")
    if not ok:
        res.details.append(f"neither candidate matched; closest reference {list(expected)}")
    return res


# --- criterion 3 -----------------------------------------------------------


def crit_kostant_structure() -> CriterionResult:
    res = CriterionResult("kostant-structure", True)
    for t in EXCEPTIONAL_TYPES:
        alg = build_chevalley_algebra(t)
        d = alg.datum
        triple = build_principal_sl2(alg)
        P = centralizer_of_X(alg, triple)
        kd = kostant_decomposition(alg, triple)
        checks = {
            "dim P = rank": len(P) == d.rank,
            "eigenvalues = 2*exponents": kd.exponents == d.exponents,
            "abelian": all(
                bracket(p, q).is_zero() for _, p in kd.pairs for _, q in kd.pairs
            ),
            "sum(2m+1) = dim": sum(2 * m + 1 for m in kd.exponents) == alg.dim,
        }
        res.ok &= all(checks.values())
        bad = [k for k, v in checks.items() if not v]
        res.details.append(f"{t}: {'ok' if not bad else 'FAIL ' + ', '.join(bad)}")
    return res


# --- criterion 4 -----------------------------------------------------------


def crit_sl2_relations() -> CriterionResult:
    res = CriterionResult("sl2-relations", True)
    for t in EXCEPTIONAL_TYPES:
        d = build_root_datum(t)
        h = d.coxeter_number
        algZ = build_chevalley_algebra(t)
        trip = build_principal_sl2(algZ)  # relations asserted inside
        rel_ok = (
            bracket(trip.X, trip.H) == trip.X.scale(2)
            and bracket(trip.Y, trip.H) == trip.Y.scale(-2)
            and bracket(trip.Y, trip.X) == trip.H
        )
        mod_ok = True
        for ell in _next_primes(h, 1) + _next_primes(h + 2, 1):
            algF = algZ.change_ring(GF(ell))
            tripF = build_principal_sl2(algF)
            mod_ok &= (
                bracket(tripF.X, tripF.H) == tripF.X.scale(2)
                and bracket(tripF.Y, tripF.H) == tripF.Y.scale(-2)
                and bracket(tripF.Y, tripF.X) == tripF.H
            )
        # the largest prime below h must be rejected
        below = [p for p in range(2, h) if _next_primes(p, 1) == [p]]
        reject_ok = True
        if below:
            try:
                build_principal_sl2(algZ.change_ring(GF(below[-1])))
                reject_ok = False
            except ValueError:
                pass
        ok = rel_ok and mod_ok and reject_ok
        res.ok &= ok
        res.details.append(
            f"{t}: ZZ relations {'ok' if rel_ok else 'FAIL'},"
            f" mod-ell {'ok' if mod_ok else 'FAIL'},"
            f" reject ell<h {'ok' if reject_ok else 'FAIL'}"
        )
    return res


# --- criterion 5 -----------------------------------------------------------


def crit_structure_constants(nightly: bool | None = None) -> CriterionResult:
    if nightly is None:
        nightly = bool(os.environ.get(NIGHTLY_ENV))
    res = CriterionResult("structure-constants", True)
    for t in ("G2", "F4"):
        alg = build_chevalley_algebra(t)
        n = jacobi_sweep(alg)
        res.details.append(f"{t}: exhaustive Jacobi on {n} triples ok")
    for t in ("E6", "E7", "E8"):
        alg = build_chevalley_algebra(t)
        if nightly:
            n = jacobi_sweep(alg)
            res.details.append(f"{t}: exhaustive (nightly) Jacobi on {n} triples ok")
        else:
            n = jacobi_sweep(alg, samples=100_000, seed=20240501)
            res.details.append(f"{t}: sampled Jacobi on {n} triples ok")
    for t in EXCEPTIONAL_TYPES:
        alg = build_chevalley_algebra(t)
        d = alg.datum
        roots = set(d.all_roots)
        bad = 0
        for (u, v), n in alg._root_constants.items():
            p = 0
            w = tuple(a - b for a, b in zip(v, u))
            while w in roots:
                p += 1
                w = tuple(a - b for a, b in zip(w, u))
            if abs(n) != p + 1:
                bad += 1
        res.ok &= bad == 0
        res.details.append(
            f"{t}: p+1 magnitude exhaustive over {len(alg._root_constants)} pairs"
            f" -> {'ok' if bad == 0 else f'{bad} violations'}"
        )
    return res


# --- criterion 6 -----------------------------------------------------------


def _oracle_fixture_groups():
    """Groups of order <= 200 with small modules, for solver cross-checks."""
    out = []
    g3 = sl2_group(3)  # order 24
    out.append((g3, sym_module(3, 2, 1)))
    out.append((g3, module_from_matrices(3, [[[1]], [[1]]], "trivial")))
    g5 = sl2_group(5)  # order 120
    out.append((g5, sym_module(5, 2, 1)))
    out.append((g5, sym_module(5, 4, 2)))
    c7 = close_group([((1, 1), (0, 1))], 7)  # cyclic of order 7
    out.append((c7, sym_module(7, 1, 0, generators=c7.generators)))
    out.append((c7, module_from_matrices(7, [[[1]]], "trivial")))
    t13 = close_group([((2, 0), (0, 7))], 13)  # split torus, order 12
    out.append((t13, sym_module(13, 2, 1, generators=t13.generators)))
    return out


def crit_cohomology_vanishing(budget: int | None = None) -> CriterionResult:
    res = CriterionResult("cohomology-vanishing", True)
    failures = []
    for ell in (7, 11, 13, 17, 19, 23, 29):
        G = sl2_group(ell)
        nonzero = {}
        for r in range(0, ell, 2):
            v = h1(G, sym_module(ell, r, r // 2), budget).h1
            if v != 0:
                nonzero[r] = v
        if nonzero:
            failures.append((ell, nonzero))
        res.details.append(
            f"ell={ell}: even r < ell sweep -> "
            + ("all zero" if not nonzero else f"NONZERO at {nonzero}")
        )
    adjoint = {}
    for t, ell in (("G2", 13), ("F4", 29), ("E6", 29)):
        adjoint[(t, ell)] = adjoint_h1_via_kostant(t, ell, budget)
    res.details.append(f"adjoint totals: {[(k, v) for k, v in adjoint.items()]}")
    oracle_ok = True
    for G, M in _oracle_fixture_groups():
        if G.order > 200:
            continue
        a, b = h1(G, M, budget), h1_naive(G, M)
        if a != b:
            oracle_ok = False
            res.details.append(f"oracle mismatch: |G|={G.order} {M.description}: {a} vs {b}")
    res.details.append(f"streamed-vs-naive oracle equivalence: {'ok' if oracle_ok else 'FAIL'}")
    res.ok = not failures and all(v == 0 for v in adjoint.values()) and oracle_ok
    if failures or any(adjoint.values()):
        res.details.append(
            "computed h1 is 1 at exactly r = ell-3 (certified by an explicit"
            " non-coboundary cocycle checked on every group-element pair);"
            " the asserted all-even-r vanishing target cannot be met as stated"
        )
    return res


# --- criterion 7 -----------------------------------------------------------


def _random_ledger(rng: random.Random) -> SelmerLedger:
    kinds = ("ordinary", "ramakrishna", "steinberg", "minimal", "unramified", "custom")
    degree = rng.randrange(0, 4)
    n_arch_local = rng.randrange(0, degree + 1) if degree else 0
    conds = [
        LocalCondition("archimedean", h0_local=rng.randrange(0, 30)) for _ in range(n_arch_local)
    ]
    for _ in range(rng.randrange(0, 6)):
        kind = rng.choice(kinds)
        conds.append(
            LocalCondition(
                kind,
                h0_local=rng.randrange(0, 30),
                field_degree=rng.randrange(0, 4) if kind == "ordinary" else 0,
                custom_dim=rng.randrange(0, 30) if kind == "custom" else None,
            )
        )
    return SelmerLedger(
        h0_global=rng.randrange(0, 5),
        h0_global_twist=rng.randrange(0, 5),
        dim_n=rng.randrange(0, 130),
        totally_real_degree=degree,
        archimedean_fixed_dims=tuple(
            rng.randrange(0, 260) for _ in range(degree - n_arch_local)
        ),
        locals=tuple(conds),
    )


def crit_selmer_identities() -> CriterionResult:
    res = CriterionResult("selmer-identities", True)
    for t in EXCEPTIONAL_TYPES:
        vals = []
        for degree in (1, 2, 3):
            led = balanced_ledger(t, degree)
            vals.append((wiles_difference(led), oddness_deficit(led)))
        ok = all(v == (0, 0) for v in vals)
        res.ok &= ok
        res.details.append(f"{t}: balanced ledgers degrees 1..3 -> {vals}")
    rng = random.Random(777)
    mismatches = 0
    for _ in range(100):
        led = _random_ledger(rng)
        if wiles_difference(led) != lgroup_euler_difference(led):
            mismatches += 1
    res.ok &= mismatches == 0
    res.details.append(
        f"difference-formula rearrangement identity on 100 random ledgers:"
        f" {'ok' if mismatches == 0 else f'{mismatches} mismatches'}"
    )
    return res


# --- criterion 8 -----------------------------------------------------------


def crit_bounds_and_persistence() -> CriterionResult:
    res = CriterionResult("bounds-and-persistence", True)
    b = lifting_prime_bounds("E6").principal_sl2_bound
    ok = b == 47
    res.ok &= ok
    res.details.append(f"E6 principal bound: {b} (want 47) -> {'ok' if ok else 'FAIL'}")
    for t in EXCEPTIONAL_TYPES:
        alg = build_chevalley_algebra(t)
        kd = kostant_decomposition(alg, build_principal_sl2(alg))
        rows = sl2_string_family_rows(kd)
        h = alg.datum.coxeter_number
        primes = _next_primes(2 * h - 1, 3)
        good = all(kostant_mod_ell_basis_check(kd, ell, rows) for ell in primes)
        res.ok &= good
        res.details.append(
            f"{t}: string family stays a basis mod {primes} -> {'ok' if good else 'FAIL'}"
        )
    return res


CRITERIA = (
    ("prime-lists", crit_prime_lists),
    ("e8-adjudication", crit_e8_adjudication),
    ("kostant-structure", crit_kostant_structure),
    ("sl2-relations", crit_sl2_relations),
    ("structure-constants", crit_structure_constants),
    ("cohomology-vanishing", crit_cohomology_vanishing),
    ("selmer-identities", crit_selmer_identities),
    ("bounds-and-persistence", crit_bounds_and_persistence),
)


def verify_paper(
    only=None, workers: int = 1, budget: int | None = None, nightly: bool | None = None
) -> list[CriterionResult]:
    """Run the acceptance matrix; returns results in fixed criterion order."""
    fixtures.assert_data_file_sync()
    selected = [(n, f) for n, f in CRITERIA if only is None or n in only]
    if only is not None:
        unknown = set(only) - {n for n, _ in CRITERIA}
        if unknown:
            raise ValueError(f"unknown criteria: {sorted(unknown)}")

    def run_one(item):
        name, fn = item
        t0 = time.time()
        if fn is crit_cohomology_vanishing:
            out = fn(budget)
        elif fn is crit_structure_constants:
            out = fn(nightly)
        else:
            out = fn()
        out.elapsed = time.time() - t0
        return out

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_one, selected))
    else:
        results = [run_one(item) for item in selected]
    return results
