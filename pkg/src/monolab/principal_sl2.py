"""The principal sl2 triple and the centralizer decomposition of the adjoint.

X is the sum of the simple positive root vectors, H the sum of all positive
coroots (= 2 rho^vee), and Y the unique combination of simple negative root
vectors making (X, H, Y) satisfy

    [X, H] = 2X,    [Y, H] = -2Y,    [Y, X] = H.

The centralizer P of X is abelian of dimension equal to the rank; H acts on P
with eigenvalues {2m : m an exponent}, and the eigenvectors are returned as
primitive integer vectors in a deterministic order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .chevalley import ChevalleyAlgebra, LieElement, bracket, build_chevalley_algebra
from .exact import ZZ, PrimeField, det_mod, integer_kernel, normalize_primitive
from .rootsys import RootDatum


def principal_coefficients(d: RootDatum) -> tuple[int, ...]:
    """Coefficients c with sum_{a>0} H_a = sum_i c_i H_{alpha_i}.

    Each positive coroot is an integer vector in simple-coroot coordinates,
    so the sum is computed directly; positivity and the defining property
    <alpha_j, sum c_i H_i> = 2 are asserted before returning.
    """
    c = [0] * d.rank
    for root in d.positive_roots:
        for i, v in enumerate(d.coroot(root)):
            c[i] += v
    if any(v <= 0 for v in c):
        raise ArithmeticError(f"principal coefficients must be positive, got {c}")
    for j in range(d.rank):
        pair = sum(c[i] * d.cartan[i][j] for i in range(d.rank))
        if pair != 2:
            raise ArithmeticError(f"2rho^vee pairing broke at alpha_{j + 1}: {pair}")
    return tuple(c)


@dataclass(frozen=True)
class Sl2Triple:
    """A principal sl2 inside a Chevalley algebra."""

    algebra: ChevalleyAlgebra
    X: LieElement
    H: LieElement
    Y: LieElement
    c: tuple[int, ...]


def build_principal_sl2(alg: ChevalleyAlgebra) -> Sl2Triple:
    """Construct (X, H, Y); relations are verified exactly at construction.

    Over F_ell the construction requires ell >= h (Coxeter number); smaller
    primes are rejected because the triple need not exist integrally there.
    """
    d = alg.datum
    h = d.coxeter_number
    if isinstance(alg.ring, PrimeField) and alg.ring.ell < h:
        raise ValueError(
            f"prime {alg.ring.ell} below the Coxeter bound h={h} for {d.simple_type};"
            " the principal sl2 is only defined for ell >= h"
        )
    c = principal_coefficients(d)
    X = alg.element({alg.basis.x(i): 1 for i in range(d.rank)})
    H = alg.element({alg.basis.h(i): c[i] for i in range(d.rank)})
    Y = alg.element({alg.basis.y(i): c[i] for i in range(d.rank)})
    _assert_relations(alg, X, H, Y)
    return Sl2Triple(alg, X, H, Y, c)


def _assert_relations(alg, X, H, Y):
    assert bracket(X, H) == X.scale(2), "[X,H] != 2X"
    assert bracket(Y, H) == Y.scale(-2), "[Y,H] != -2Y"
    assert bracket(Y, X) == H, "[Y,X] != H"


def _weight_of_index(alg: ChevalleyAlgebra, k: int) -> int:
    # H-eigenvalue of basis vector k: 2*height on x-block, -2*height on y-block
    b = alg.basis
    pos = alg.datum.positive_roots
    if k < b.num_pos:
        return 2 * sum(pos[k])
    if k < 2 * b.num_pos:
        return -2 * sum(pos[k - b.num_pos])
    return 0


def _graded_kernel(alg: ChevalleyAlgebra, X: LieElement, weight: int) -> list[tuple[int, ...]]:
    """Integer kernel of ad(X): g_weight -> g_{weight+2}, as full-dim vectors."""
    src = [k for k in range(alg.dim) if _weight_of_index(alg, k) == weight]
    dst = [k for k in range(alg.dim) if _weight_of_index(alg, k) == weight + 2]
    dst_pos = {k: r for r, k in enumerate(dst)}
    rows = [[0] * len(src) for _ in dst]
    for col, k in enumerate(src):
        img = bracket(X, alg.basis_element(k))
        for kk, v in img.coeffs.items():
            rows[dst_pos[kk]][col] = v
    out = []
    for vec in integer_kernel(rows, len(src)):
        full = [0] * alg.dim
        for col, k in enumerate(src):
            full[k] = vec[col]
        out.append(tuple(full))
    return out


def centralizer_of_X(alg: ChevalleyAlgebra, triple: Sl2Triple) -> list[tuple[int, ...]]:
    """Saturated integer lattice basis of ker(ad X), as coefficient vectors.

    ad(X) is homogeneous of degree +2 for the H-grading, so the kernel is the
    direct sum of the graded kernels; each graded piece is a small exact
    integer kernel computation and the result is saturated blockwise.
    """
    if alg.ring is not ZZ:
        raise ValueError("centralizer is computed on the ZZ form")
    weights = sorted({_weight_of_index(alg, k) for k in range(alg.dim)})
    basis = []
    for w in weights:
        basis.extend(_graded_kernel(alg, triple.X, w))
    rank = alg.datum.rank
    if len(basis) != rank:
        raise ArithmeticError(
            f"centralizer has rank {len(basis)}, expected {rank} for {alg.datum.simple_type}"
        )
    return basis


@dataclass(frozen=True)
class KostantDecomposition:
    """H-eigenbasis of the centralizer of X, keyed by the exponents."""

    triple: Sl2Triple
    pairs: tuple  # ((m_i, p_i: LieElement over ZZ), ...) sorted by m_i

    @property
    def exponents(self):
        return tuple(m for m, _ in self.pairs)

    def to_json_dict(self) -> dict:
        alg = self.triple.algebra
        return {
            "simple_type": str(alg.datum.simple_type),
            "exponents": list(self.exponents),
            "principal_coefficients": list(self.triple.c),
            "eigenvectors": [
                {
                    "exponent": m,
                    "coords": {alg.basis_label(k): str(v) for k, v in sorted(p.coeffs.items())},
                }
                for m, p in self.pairs
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def kostant_decomposition(alg: ChevalleyAlgebra, triple: Sl2Triple) -> KostantDecomposition:
    """Primitive H-eigenvectors p_i of the centralizer, [p_i, H] = 2 m_i p_i.

    Eigenvectors are normalised to content 1 with positive leading coordinate;
    repeated exponents (type D_{2n}) get the echelon basis of their graded
    kernel, in deterministic order.
    """
    if alg.ring is not ZZ:
        raise ValueError("the decomposition is computed on the ZZ form")
    d = alg.datum
    pairs = []
    for m in sorted(set(d.exponents)):
        vecs = _graded_kernel(alg, triple.X, 2 * m)
        mult = d.exponents.count(m)
        if len(vecs) != mult:
            raise ArithmeticError(
                f"eigenvalue 2*{m}: got {len(vecs)} eigenvectors, expected {mult}"
            )
        for vec in vecs:
            coeffs = {k: v for k, v in enumerate(normalize_primitive(vec)) if v}
            p = alg.element(coeffs)
            assert bracket(p, triple.H) == p.scale(2 * m), "not an H-eigenvector"
            pairs.append((m, p))
    assert len(pairs) == d.rank
    assert pairs[0][0] == 1 and pairs[0][1] == triple.X, "p_1 must be X itself"
    for _, p in pairs:
        for _, q in pairs:
            if not bracket(p, q).is_zero():
                raise ArithmeticError("centralizer of X is not abelian: structure bug")
    return KostantDecomposition(triple, tuple(pairs))


def sl2_string_lengths_ok(kd: KostantDecomposition) -> bool:
    """Each p_i generates a string ad(Y)^k(p_i) != 0 for k <= 2m_i, then 0."""
    Y = kd.triple.Y
    for m, p in kd.pairs:
        v = p
        for _ in range(2 * m):
            v = bracket(Y, v)
            if v.is_zero():
                return False
        if not bracket(Y, v).is_zero():
            return False
    return True


def sl2_string_family_rows(kd: KostantDecomposition) -> list[list[int]]:
    """Integer coordinate rows of the family {ad(Y)^k p_i : 0 <= k <= 2m_i}."""
    alg = kd.triple.algebra
    rows = []
    for m, p in kd.pairs:
        v = p
        rows.append([v.coeffs.get(k, 0) for k in range(alg.dim)])
        for _ in range(2 * m):
            v = bracket(kd.triple.Y, v)
            rows.append([v.coeffs.get(k, 0) for k in range(alg.dim)])
    return rows


def kostant_mod_ell_basis_check(kd: KostantDecomposition, ell: int, rows=None) -> bool:
    """Whether {ad(Y)^k p_i : 0 <= k <= 2m_i} stays a basis of g after

    reduction mod ell, decided by det != 0 (mod ell).  For ell >= 2h-1 this is
    the integral persistence of the decomposition.
    """
    alg = kd.triple.algebra
    if rows is None:
        rows = sl2_string_family_rows(kd)
    if len(rows) != alg.dim:
        return False
    return det_mod(rows, ell) != 0


def principal_sl2_for(source, ring=ZZ) -> tuple[ChevalleyAlgebra, Sl2Triple]:
    alg = build_chevalley_algebra(source, ring)
    return alg, build_principal_sl2(alg)
