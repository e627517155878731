"""H^0 and H^1 of finite matrix groups over prime fields.

The 1-cocycle solver never needs a presentation: a cocycle is determined by
its values on the generators, and propagating symbolic affine expressions
along a breadth-first spanning tree of the Cayley graph turns every non-tree
edge into linear consistency constraints on those generator values.  The
constraint matrix has only n_generators * dim(M) columns, so the elimination
state stays small however large the group is; the per-element expression
matrices are the dominant memory cost and are guarded by a budget.

Specialised helpers cover SL2(F_ell) acting on the twisted symmetric powers
Sym^r(F_ell^2) (x) det^{-m}, and the adjoint-type vanishing sum driven by the
exponent data of a root system.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exact import is_probable_prime
from .rootsys import SimpleType, build_root_datum

DEFAULT_MEMORY_BUDGET = 2 * 1024**3
_BUDGET_ENV = "MONOLAB_MEMORY_BUDGET"


class ResourceLimitError(RuntimeError):
    """Closure cap or memory budget exceeded."""


def memory_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(_BUDGET_ENV)
    return int(env) if env else DEFAULT_MEMORY_BUDGET


Matrix = tuple[tuple[int, ...], ...]


def _mat_mult(a: Matrix, b: Matrix, ell: int) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % ell for j in range(n))
        for i in range(n)
    )


def _mat_det(a: Matrix, ell: int) -> int:
    if len(a) == 1:
        return a[0][0] % ell
    if len(a) == 2:
        return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % ell
    m = [[x % ell for x in row] for row in a]
    det = 1
    n = len(m)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % ell
        inv = pow(m[c][c], -1, ell)
        for r in range(c + 1, n):
            f = m[r][c] * inv % ell
            if f:
                m[r] = [(x - f * y) % ell for x, y in zip(m[r], m[c])]
    return det % ell


@dataclass(frozen=True)
class FiniteMatrixGroup:
    ell: int
    degree: int
    generators: tuple[Matrix, ...]
    elements: tuple[Matrix, ...]  # discovery order; elements[0] is the identity
    index: dict
    cayley: np.ndarray  # cayley[g, j] = index of elements[g] * generators[j]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"FiniteMatrixGroup(order={self.order}, degree={self.degree}, ell={self.ell})"


def close_group(generators, ell: int, cap: int = 2_000_000) -> FiniteMatrixGroup:
    """Breadth-first closure of a generator list inside GL_degree(F_ell).

    Element order is discovery order (identity first, generators applied in
    list order), which fixes every downstream computation bit-for-bit.
    """
    gens = tuple(tuple(tuple(x % ell for x in row) for row in g) for g in generators)
    if not gens:
        raise ValueError("need at least one generator")
    degree = len(gens[0])
    for g in gens:
        if _mat_det(g, ell) == 0:
            raise ValueError("generators must be invertible")
    ident = tuple(tuple(1 if i == j else 0 for j in range(degree)) for i in range(degree))
    elements = [ident]
    index = {ident: 0}
    edges = []
    head = 0
    while head < len(elements):
        g = elements[head]
        row = []
        for s in gens:
            prod = _mat_mult(g, s, ell)
            k = index.get(prod)
            if k is None:
                if len(elements) >= cap:
                    raise ResourceLimitError(f"group closure exceeded cap={cap}")
                k = len(elements)
                index[prod] = k
                elements.append(prod)
            row.append(k)
        edges.append(row)
        head += 1
    return FiniteMatrixGroup(
        ell=ell,
        degree=degree,
        generators=gens,
        elements=tuple(elements),
        index=index,
        cayley=np.array(edges, dtype=np.int64),
    )


def sl2_generators(ell: int) -> tuple[Matrix, Matrix]:
    """The standard unipotent / Weyl pair generating SL2(F_ell)."""
    return ((1, 1), (0, 1)), ((0, 1), (ell - 1, 0))


@lru_cache(maxsize=8)
def sl2_group(ell: int) -> FiniteMatrixGroup:
    if not is_probable_prime(ell):
        raise ValueError(f"{ell} is not prime")
    G = close_group(sl2_generators(ell), ell)
    expected = ell * (ell * ell - 1)
    assert G.order == expected, f"SL2(F_{ell}) closure has order {G.order}, want {expected}"
    return G


@dataclass(frozen=True)
class ModuleAction:
    """A left F_ell[G]-module given by its generator matrices."""

    ell: int
    dim: int
    matrices: tuple[np.ndarray, ...]  # one per generator, dim x dim mod ell
    description: str

    def __repr__(self):
        return f"ModuleAction({self.description}, dim={self.dim}, ell={self.ell})"


def module_from_matrices(ell, matrices, description="explicit") -> ModuleAction:
    mats = tuple(np.array(m, dtype=np.int64) % ell for m in matrices)
    dim = mats[0].shape[0]
    assert all(m.shape == (dim, dim) for m in mats)
    return ModuleAction(ell, dim, mats, description)


def sym_module(ell: int, r: int, twist: int, generators=None, allow_reducible=False) -> ModuleAction:
    """Sym^r(F_ell^2) (x) det^{-twist} on binary forms of degree r.

    Basis is X^{r-k} Y^k for k = 0..r; a matrix [[a,b],[c,d]] substitutes
    X -> aX + cY, Y -> bX + dY, which makes g -> matrix a homomorphism.  The
    range r < ell is asserted (the module is irreducible there); pass
    allow_reducible=True to explore beyond it.
    """
    if r < 0 or twist != int(twist):
        raise ValueError("need r >= 0 and an integer twist")
    if r >= ell and not allow_reducible:
        raise ValueError(
            f"Sym^{r} over F_{ell} is outside the irreducible range r < ell;"
            " pass allow_reducible=True to explore it anyway"
        )
    if generators is None:
        generators = sl2_generators(ell)
    mats = []
    for g in generators:
        (a, b), (c, d) = g
        det = (a * d - b * c) % ell
        scale = pow(det, -twist, ell) if twist else 1
        cols = []
        for k in range(r + 1):
            # coefficients of (aX + cY)^(r-k) (bX + dY)^k
            poly = [0] * (r + 1)
            first = _binom_expand(a, c, r - k, ell)
            second = _binom_expand(b, d, k, ell)
            for i, ci in enumerate(first):
                for j, cj in enumerate(second):
                    poly[i + j] = (poly[i + j] + ci * cj) % ell
            cols.append([x * scale % ell for x in poly])
        mats.append(np.array(cols, dtype=np.int64).T % ell)
    return module_from_matrices(ell, mats, f"Sym^{r}(x)det^{-twist}")


def _binom_expand(u, v, n, ell):
    # coefficients of (uX + vY)^n in X^(n-i) Y^i, reduced mod ell
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i] = (nxt[i] + c * u) % ell
            nxt[i + 1] = (nxt[i + 1] + c * v) % ell
        out = nxt
    return out


def module_direct_sum(m1: ModuleAction, m2: ModuleAction) -> ModuleAction:
    assert m1.ell == m2.ell and len(m1.matrices) == len(m2.matrices)
    mats = []
    for a, b in zip(m1.matrices, m2.matrices):
        blk = np.zeros((m1.dim + m2.dim, m1.dim + m2.dim), dtype=np.int64)
        blk[: m1.dim, : m1.dim] = a
        blk[m1.dim :, m1.dim :] = b
        mats.append(blk)
    return ModuleAction(m1.ell, m1.dim + m2.dim, tuple(mats), f"{m1.description}(+){m2.description}")


@dataclass(frozen=True)
class CohomologyReport:
    h0: int
    dim_Z1: int
    dim_B1: int
    h1: int

    def __post_init__(self):
        assert self.h1 == self.dim_Z1 - self.dim_B1

    def to_json_dict(self):
        return {"h0": self.h0, "dim_Z1": self.dim_Z1, "dim_B1": self.dim_B1, "h1": self.h1}

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)


class _EchelonState:
    """Streamed row reduction mod ell with positional pivoting."""

    def __init__(self, ncols: int, ell: int):
        self.ncols = ncols
        self.ell = ell
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self):
        return len(self.pivots)

    def add(self, batch: np.ndarray):
        ell = self.ell
        batch = batch % ell
        while True:
            for r, p in zip(self.rows, self.pivots):
                col = batch[:, p] % ell
                nz = col.nonzero()[0]
                if nz.size:
                    batch[nz] = (batch[nz] - col[nz, None] * r) % ell
            live = batch.any(axis=1).nonzero()[0]
            if not live.size:
                return
            first = live[0]
            row = batch[first]
            p = int(row.nonzero()[0][0])
            row = row * pow(int(row[p]), -1, ell) % ell
            self.rows = np.vstack([self.rows, row])
            self.pivots.append(p)
            batch = batch[live[1:]] if live.size > 1 else batch[:0]
            if self.rank == self.ncols:
                return


def _rank_mod(matrix: np.ndarray, ell: int) -> int:
    st = _EchelonState(matrix.shape[1], ell)
    st.add(np.array(matrix, dtype=np.int64))
    return st.rank


def h0(G: FiniteMatrixGroup, M: ModuleAction) -> int:
    """Dimension of the simultaneous fixed space of the generator action."""
    eye = np.eye(M.dim, dtype=np.int64)
    stacked = np.vstack([m - eye for m in M.matrices]) % M.ell
    return M.dim - _rank_mod(stacked, M.ell)


def h1(G: FiniteMatrixGroup, M: ModuleAction, budget: int | None = None) -> CohomologyReport:
    """H^1(G, M) by tree-propagated cocycles.

    phi is encoded by its generator values u = (phi(s_1), ..., phi(s_ng));
    each element g carries the matrix C_g with phi(g) = C_g u, built along the
    BFS spanning tree; each non-tree Cayley edge (g, j) contributes the block
    C_g + rho(g) E_j - C_{g s_j} = 0 of linear constraints.  dim Z^1 is the
    constraint-matrix corank, and B^1 has dimension dim(M) - h^0.
    """
    if M.ell != G.ell or len(M.matrices) != len(G.generators):
        raise ValueError("module does not match the group's generator list")
    n, ng, dim = G.order, len(G.generators), M.dim
    ell = G.ell
    ncols = ng * dim
    need = n * (dim * ncols + dim * dim) * 8 + 64 * n
    limit = memory_budget(budget)
    if need > limit:
        raise ResourceLimitError(
            f"cocycle propagation needs about {need} bytes, budget is {limit}"
            f" (set {_BUDGET_ENV} to override)"
        )
    rho = np.zeros((n, dim, dim), dtype=np.int64)
    rho[0] = np.eye(dim, dtype=np.int64)
    C = np.zeros((n, dim, ncols), dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    state = _EchelonState(ncols, ell)
    pending = []
    pending_rows = 0
    for g in range(n):  # discovery order is BFS order
        rg = rho[g]
        for j in range(ng):
            tgt = int(G.cayley[g, j])
            if not seen[tgt]:
                seen[tgt] = True
                rho[tgt] = rg @ M.matrices[j] % ell
                C[tgt] = C[g]
                C[tgt, :, j * dim : (j + 1) * dim] = (
                    C[tgt, :, j * dim : (j + 1) * dim] + rg
                ) % ell
            else:
                block = C[g] - C[tgt]
                block[:, j * dim : (j + 1) * dim] += rg
                pending.append(block % ell)
                pending_rows += dim
                if pending_rows >= 4096:
                    state.add(np.vstack(pending))
                    pending, pending_rows = [], 0
    if pending:
        state.add(np.vstack(pending))
    dim_Z1 = ncols - state.rank
    fixed = h0(G, M)
    dim_B1 = dim - fixed
    return CohomologyReport(h0=fixed, dim_Z1=dim_Z1, dim_B1=dim_B1, h1=dim_Z1 - dim_B1)


def h1_naive(G: FiniteMatrixGroup, M: ModuleAction) -> CohomologyReport:
    """Oracle solver with one unknown module vector per group element.

    Builds the full system phi(g s) = phi(g) + rho(g) phi(s) over all
    (element, generator) pairs; only usable for small groups, which is what
    it is for: cross-checking the streamed solver.
    """
    n, ng, dim = G.order, len(G.generators), M.dim
    ell = G.ell
    if n * dim > 1500:
        raise ResourceLimitError("naive solver is restricted to |G| * dim <= 1500")
    rho = np.zeros((n, dim, dim), dtype=np.int64)
    rho[0] = np.eye(dim, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    for g in range(n):
        for j in range(ng):
            tgt = int(G.cayley[g, j])
            if not seen[tgt]:
                seen[tgt] = True
                rho[tgt] = rho[g] @ M.matrices[j] % ell
    gen_elt = [G.index[s] for s in G.generators]
    rows = np.zeros((n * ng * dim, n * dim), dtype=np.int64)
    eye = np.eye(dim, dtype=np.int64)
    r = 0
    for g in range(n):
        for j in range(ng):
            tgt = int(G.cayley[g, j])
            rows[r : r + dim, tgt * dim : (tgt + 1) * dim] += eye
            rows[r : r + dim, g * dim : (g + 1) * dim] -= eye
            rows[r : r + dim, gen_elt[j] * dim : (gen_elt[j] + 1) * dim] -= rho[g]
            r += dim
    dim_Z1 = n * dim - _rank_mod(rows % ell, ell)
    fixed = h0(G, M)
    return CohomologyReport(h0=fixed, dim_Z1=dim_Z1, dim_B1=dim - fixed, h1=dim_Z1 - (dim - fixed))


def _relation_lattice(G: FiniteMatrixGroup) -> list[list[int]]:
    """Row-echelon basis of the abelianised relation lattice in ZZ^n_generators.

    Each element carries the signed generator count of its spanning-tree word;
    every non-tree Cayley edge closes a loop, and the loop's count vector is a
    relation of G^ab.  Rows are accumulated into an integer echelon basis by
    gcd reduction, so at most n_generators rows survive.
    """
    from .exact import _xgcd

    n, ng = G.order, len(G.generators)
    words: list = [None] * n
    words[0] = [0] * ng
    pivot_rows: dict[int, list[int]] = {}

    def add(vec):
        v = list(vec)
        for j in range(ng):
            if not v[j]:
                continue
            row = pivot_rows.get(j)
            if row is None:
                if v[j] < 0:
                    v = [-x for x in v]
                pivot_rows[j] = v
                return
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, x, y = _xgcd(a, b)
                new_row = [x * p + y * q for p, q in zip(row, v)]
                v = [(a // g) * q - (b // g) * p for p, q in zip(row, v)]
                pivot_rows[j] = new_row

    for g in range(n):
        wg = words[g]
        for j in range(ng):
            tgt = int(G.cayley[g, j])
            step = wg.copy()
            step[j] += 1
            if words[tgt] is None:
                words[tgt] = step
            else:
                rel = [a - b for a, b in zip(step, words[tgt])]
                if any(rel):
                    add(rel)
    return [pivot_rows[j] for j in sorted(pivot_rows)]


def abelianization_elementary_divisors(G: FiniteMatrixGroup) -> tuple[int, ...]:
    """Nontrivial elementary divisors of G^ab = ZZ^ng / (relation lattice)."""
    rows = [r[:] for r in _relation_lattice(G)]
    divisors = _smith_divisors(rows, len(G.generators))
    return tuple(d for d in divisors if d != 1)


def _smith_divisors(rows, ncols) -> list[int]:
    rows = [r[:] for r in rows if any(r)]
    divs = []
    col_alive = list(range(ncols))
    while rows and col_alive:
        piv = min(
            ((abs(rows[i][j]), i, j) for i in range(len(rows)) for j in col_alive if rows[i][j]),
            default=None,
        )
        if piv is None:
            break
        _, pi, pj = piv
        clean = False
        while not clean:
            clean = True
            for i in range(len(rows)):
                if i != pi and rows[i][pj]:
                    q = rows[i][pj] // rows[pi][pj]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pi])]
                    if rows[i][pj]:
                        pi = i
                        clean = False
                        break
            for j in col_alive:
                if j != pj and rows[pi][j]:
                    q = rows[pi][j] // rows[pi][pj]
                    for row in rows:
                        row[j] -= q * row[pj]
                    if rows[pi][j]:
                        pj = j
                        clean = False
                        break
        divs.append(abs(rows[pi][pj]))
        rows.pop(pi)
        col_alive.remove(pj)
        rows = [r for r in rows if any(r[j] for j in col_alive)]
    # divisor chain condition is not needed downstream; sort for determinism
    return sorted(divs)


def h1_trivial_module_rank(G: FiniteMatrixGroup, dim: int = 1) -> int:
    """dim Hom(G^ab (x) F_ell, F_ell^dim), the value of h1 on a trivial

    module; an independent oracle for the cocycle solver.
    """
    rows = _relation_lattice(G)
    divisors = _smith_divisors([r[:] for r in rows], len(G.generators))
    free = len(G.generators) - len(rows)
    torsion_hits = sum(1 for d in divisors if d % G.ell == 0)
    return (free + torsion_hits) * dim


def adjoint_h1_via_kostant(t: SimpleType | str, ell: int, budget: int | None = None) -> int:
    """Sum over exponents m of dim(P_2m) * h1(SL2(F_ell), Sym^{2m} (x) det^{-m}).

    Requires ell >= 2h-1 so the exponent decomposition persists mod ell and
    every summand has 2m < ell.
    """
    d = build_root_datum(SimpleType.parse(t))
    bound = 2 * d.coxeter_number - 1
    if ell < bound:
        raise ValueError(
            f"ell={ell} is below 2h-1={bound} for {d.simple_type};"
            " the mod-ell exponent decomposition needs ell >= 2h-1"
        )
    G = sl2_group(ell)
    total = 0
    for m in sorted(set(d.exponents)):
        mult = d.exponents.count(m)
        rep = h1(G, sym_module(ell, 2 * m, m), budget)
        total += mult * rep.h1
    return total
