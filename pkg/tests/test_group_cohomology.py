import numpy as np
import pytest

from monolab.group_cohomology import (
    ResourceLimitError,
    abelianization_elementary_divisors,
    adjoint_h1_via_kostant,
    close_group,
    h0,
    h1,
    h1_naive,
    h1_trivial_module_rank,
    module_direct_sum,
    module_from_matrices,
    sl2_generators,
    sl2_group,
    sym_module,
)

# value of h1(SL2(F_5), Sym^2 (x) det^-1): an excluded field size, so the
# solver itself is the source; frozen after the first computation purely to
# pin determinism, not as an external target
EXPLORATORY_SL2_F5_SYM2 = 1


def trivial_module(ell, ngens, dim=1):
    eye = np.eye(dim, dtype=np.int64)
    return module_from_matrices(ell, [eye] * ngens, "trivial")


def fixed_space_oracle(G, M):
    # brute force over every element, not just generators
    n, dim, ell = G.order, M.dim, G.ell
    rho = np.zeros((n, dim, dim), dtype=np.int64)
    rho[0] = np.eye(dim, dtype=np.int64)
    seen = [True] + [False] * (n - 1)
    for g in range(n):
        for j in range(len(G.generators)):
            t = int(G.cayley[g, j])
            if not seen[t]:
                seen[t] = True
                rho[t] = rho[g] @ M.matrices[j] % ell
    stacked = np.vstack([rho[g] - np.eye(dim, dtype=np.int64) for g in range(n)]) % ell
    from monolab.group_cohomology import _rank_mod

    return dim - _rank_mod(stacked, ell)


# -- closure -----------------------------------------------------------------


@pytest.mark.parametrize("ell", [3, 5, 13])
def test_sl2_closure_order(ell):
    assert sl2_group(ell).order == ell * (ell**2 - 1)


def test_identity_only_group():
    G = close_group([((1, 0), (0, 1))], 5)
    assert G.order == 1


def test_closure_cap():
    with pytest.raises(ResourceLimitError):
        close_group(sl2_generators(13), 13, cap=100)


def test_non_invertible_rejected():
    with pytest.raises(ValueError):
        close_group([((1, 0), (2, 0))], 5)


def test_cayley_table_consistency():
    G = sl2_group(5)
    from monolab.group_cohomology import _mat_mult

    for g in (0, 1, 17, 100):
        for j, s in enumerate(G.generators):
            assert G.elements[G.cayley[g, j]] == _mat_mult(G.elements[g], s, 5)


# -- modules -----------------------------------------------------------------


def test_sym_module_dims():
    assert sym_module(7, 0, 0).dim == 1
    assert sym_module(7, 1, 0).dim == 2
    assert sym_module(7, 2, 1).dim == 3


def test_sym_module_is_homomorphism():
    # propagate rho over the whole group, then check rho(g)rho(h) = rho(gh)
    import random

    from monolab.group_cohomology import _mat_mult

    ell = 11
    G = sl2_group(ell)
    M = sym_module(ell, 4, 2)
    n, dim = G.order, M.dim
    rho = np.zeros((n, dim, dim), dtype=np.int64)
    rho[0] = np.eye(dim, dtype=np.int64)
    seen = [True] + [False] * (n - 1)
    for g in range(n):
        for j in range(len(G.generators)):
            t = int(G.cayley[g, j])
            if not seen[t]:
                seen[t] = True
                rho[t] = rho[g] @ M.matrices[j] % ell
    rng = random.Random(0)
    for _ in range(500):
        a, b = rng.randrange(n), rng.randrange(n)
        c = G.index[_mat_mult(G.elements[a], G.elements[b], ell)]
        assert np.array_equal(rho[a] @ rho[b] % ell, rho[c])


def test_sym_range_guard():
    with pytest.raises(ValueError):
        sym_module(7, 7, 0)
    sym_module(7, 7, 0, allow_reducible=True)


def test_det_twist_trivial_on_sl2():
    a = sym_module(13, 4, 2).matrices
    b = sym_module(13, 4, 0).matrices
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


# -- h0 ------------------------------------------------------------------------


def test_h0_trivial():
    G = sl2_group(5)
    assert h0(G, trivial_module(5, 2)) == 1


def test_h0_adjoint_sl2_f7():
    G = sl2_group(7)
    M = sym_module(7, 2, 1)
    assert h0(G, M) == 0
    assert fixed_space_oracle(G, M) == 0


def test_h0_additive():
    G = sl2_group(5)
    M = sym_module(5, 2, 1)
    assert h0(G, module_direct_sum(M, M)) == 2 * h0(G, M)
    T = trivial_module(5, 2)
    assert h0(G, module_direct_sum(T, T)) == 2


# -- h1 ------------------------------------------------------------------------


def test_h1_trivial_on_perfect_group():
    G = sl2_group(7)
    rep = h1(G, trivial_module(7, 2))
    assert rep.h1 == 0
    assert rep.h1 == h1_trivial_module_rank(G)
    assert abelianization_elementary_divisors(G) == ()


def test_h1_trivial_on_cyclic_group():
    C = close_group([((1, 1), (0, 1))], 7)
    assert C.order == 7
    assert abelianization_elementary_divisors(C) == (7,)
    rep = h1(C, trivial_module(7, 1))
    assert rep.h1 == 1 == h1_trivial_module_rank(C)


def test_h1_trivial_sl2_f3():
    # SL2(F_3) has abelianisation Z/3, so the trivial F_3 module sees it
    G = sl2_group(3)
    assert abelianization_elementary_divisors(G) == (3,)
    assert h1(G, trivial_module(3, 2)).h1 == 1 == h1_trivial_module_rank(G)


def test_torus_relation_lattice():
    T = close_group([((2, 0), (0, 7))], 13)  # cyclic of order 12
    assert T.order == 12
    assert abelianization_elementary_divisors(T) == (12,)
    assert h1_trivial_module_rank(T) == 0  # gcd(12, 13) = 1


def test_symmetric_power_vanishing_values():
    # away from the single exceptional weight, even symmetric powers vanish
    G = sl2_group(13)
    for r in (0, 2, 4, 6, 8, 12):
        assert h1(G, sym_module(13, r, r // 2)).h1 == 0
    # the exceptional weight r = ell - 3 is genuinely nonzero (certified below)
    assert h1(G, sym_module(13, 10, 5)).h1 == 1


def test_excluded_size_exploratory_value():
    G = sl2_group(5)
    rep = h1(G, sym_module(5, 2, 1))
    assert rep.h1 == EXPLORATORY_SL2_F5_SYM2
    assert h1_naive(G, sym_module(5, 2, 1)) == rep


def certified_nonvanishing(ell, r):
    """Independent certificate: an explicit cocycle, checked on all pairs."""
    from monolab.group_cohomology import _EchelonState, _mat_mult, _rank_mod

    G = sl2_group(ell)
    M = sym_module(ell, r, r // 2)
    n, ng, dim = G.order, len(G.generators), M.dim
    rho = np.zeros((n, dim, dim), dtype=np.int64)
    rho[0] = np.eye(dim, dtype=np.int64)
    C = np.zeros((n, dim, ng * dim), dtype=np.int64)
    seen = [True] + [False] * (n - 1)
    rows = []
    for g in range(n):
        for j in range(ng):
            t = int(G.cayley[g, j])
            if not seen[t]:
                seen[t] = True
                rho[t] = rho[g] @ M.matrices[j] % ell
                C[t] = C[g]
                C[t, :, j * dim : (j + 1) * dim] = (C[t, :, j * dim : (j + 1) * dim] + rho[g]) % ell
            else:
                blk = C[g].copy()
                blk[:, j * dim : (j + 1) * dim] += rho[g]
                rows.append((blk - C[t]) % ell)
    A = np.vstack(rows)
    # nullspace basis by full reduction
    m = A.copy()
    ncols = ng * dim
    pivcols, rr = [], 0
    for c in range(ncols):
        piv = next((i for i in range(rr, m.shape[0]) if m[i, c] % ell), None)
        if piv is None:
            continue
        m[[rr, piv]] = m[[piv, rr]]
        m[rr] = m[rr] * pow(int(m[rr, c]), -1, ell) % ell
        for i in range(m.shape[0]):
            if i != rr and m[i, c] % ell:
                m[i] = (m[i] - m[i, c] * m[rr]) % ell
        pivcols.append(c)
        rr += 1
    free = [c for c in range(ncols) if c not in pivcols]
    gen_idx = [G.index[s] for s in G.generators]
    cob = np.zeros((dim, ncols), dtype=np.int64)
    for b in range(dim):
        v = np.zeros(dim, dtype=np.int64)
        v[b] = 1
        for j in range(ng):
            cob[b, j * dim : (j + 1) * dim] = (rho[gen_idx[j]] @ v - v) % ell
    witness = None
    base_rank = _rank_mod(cob, ell)
    for fc in free:
        u = np.zeros(ncols, dtype=np.int64)
        u[fc] = 1
        for i, c in enumerate(pivcols):
            u[c] = (-m[i, fc]) % ell
        if _rank_mod(np.vstack([cob, u]), ell) > base_rank:
            witness = u
            break
    if witness is None:
        return False
    phi = np.array([(C[g] @ witness) % ell for g in range(n)])
    for a in range(n):
        prod = [G.index[_mat_mult(G.elements[a], G.elements[b], ell)] for b in range(n)]
        lhs = phi[prod]
        rhs = (phi[a][None, :] + phi @ rho[a].T) % ell
        if not np.array_equal(lhs, rhs):
            return False
    return True


def test_certified_nonvanishing_at_ell_minus_3():
    # the one nonzero weight below ell: verified by an explicit non-coboundary
    # cocycle whose cocycle identity is checked on every pair of elements
    assert certified_nonvanishing(7, 4)


def test_oracle_equivalence_small_groups():
    cases = []
    g3 = sl2_group(3)
    cases += [(g3, sym_module(3, 2, 1)), (g3, trivial_module(3, 2))]
    g5 = sl2_group(5)
    cases += [(g5, sym_module(5, 2, 1)), (g5, sym_module(5, 4, 2)), (g5, trivial_module(5, 2))]
    c7 = close_group([((1, 1), (0, 1))], 7)
    cases += [(c7, sym_module(7, 1, 0, generators=c7.generators)), (c7, trivial_module(7, 1))]
    t13 = close_group([((2, 0), (0, 7))], 13)
    cases += [(t13, sym_module(13, 2, 1, generators=t13.generators))]
    for G, M in cases:
        assert G.order <= 200
        assert h1(G, M) == h1_naive(G, M), (G, M.description)


def test_h1_direct_sum_additive():
    G = sl2_group(5)
    M1, M2 = sym_module(5, 2, 1), sym_module(5, 4, 2)
    s = h1(G, module_direct_sum(M1, M2))
    assert s.h1 == h1(G, M1).h1 + h1(G, M2).h1


def test_adjoint_h1_values():
    assert adjoint_h1_via_kostant("F4", 29) == 0
    assert adjoint_h1_via_kostant("E6", 29) == 0
    # G2 at ell = 13 hits the exceptional weight 2(h-1) = ell - 3
    assert adjoint_h1_via_kostant("G2", 13) == 1
    assert adjoint_h1_via_kostant("G2", 17) == 0


def test_adjoint_h1_bound_guard():
    with pytest.raises(ValueError):
        adjoint_h1_via_kostant("G2", 7)  # below 2h-1 = 11


def test_memory_budget():
    G = sl2_group(13)
    with pytest.raises(ResourceLimitError):
        h1(G, sym_module(13, 10, 5), budget=10_000)


def test_budget_env_override(monkeypatch):
    from monolab.group_cohomology import memory_budget

    monkeypatch.setenv("MONOLAB_MEMORY_BUDGET", "12345")
    assert memory_budget() == 12345
    assert memory_budget(99) == 99
    monkeypatch.delenv("MONOLAB_MEMORY_BUDGET")
    assert memory_budget() == 2 * 1024**3


def test_module_group_mismatch_rejected():
    G = sl2_group(5)
    with pytest.raises(ValueError):
        h1(G, sym_module(7, 2, 1))


def test_report_consistency():
    rep = h1(sl2_group(7), sym_module(7, 2, 1))
    assert rep.dim_B1 == 3 - rep.h0
    assert rep.h1 == rep.dim_Z1 - rep.dim_B1
    doc = rep.to_json_dict()
    assert set(doc) == {"h0", "dim_Z1", "dim_B1", "h1"}
