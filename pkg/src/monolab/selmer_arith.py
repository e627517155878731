"""Exact integer bookkeeping for Selmer-style dimension formulas.

The ledger is declarative input: it lists global invariant dimensions, the
local condition at each place with its cataloged tangent-space dimension, and
the archimedean fixed-space dimensions.  Everything here is exact integer
arithmetic in those quantities; no attempt is made to validate that the
numbers are realizable by an actual representation.

Local tangent-space dimension catalog (dim_n denotes the dimension of the
nilpotent radical of a Borel, equal to the number of positive roots):

    ordinary      h0 + [F_v:Q_ell] * dim_n
    ramakrishna   h0
    steinberg     h0
    minimal       h0
    unramified    h0
    archimedean   0
    custom        explicit override

The two difference formulas group the archimedean contribution differently
(inside the sum over places vs. subtracted separately) and agree on any
consistent ledger; both groupings are exposed because input files come in
both shapes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .fixtures import CENTER_ORDERS, E8_CANDIDATES
from .rootsys import SimpleType, build_root_datum

SCHEMA_VERSION = 1

KINDS = ("ordinary", "ramakrishna", "steinberg", "minimal", "archimedean", "unramified", "custom")


@dataclass(frozen=True)
class LocalCondition:
    kind: str
    h0_local: int
    field_degree: int = 0  # degree over Q_ell; only meaningful for kind="ordinary"
    custom_dim: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown local condition kind {self.kind!r}")
        if self.h0_local < 0 or self.field_degree < 0:
            raise ValueError("negative dimensions are not meaningful")
        if (self.custom_dim is None) == (self.kind == "custom"):
            raise ValueError("custom_dim is required exactly when kind='custom'")
        if self.custom_dim is not None and self.custom_dim < 0:
            raise ValueError("negative dimensions are not meaningful")


def local_dim(c: LocalCondition, dim_n: int) -> int:
    """Tangent-space dimension of a local condition, per the catalog."""
    if dim_n < 0:
        raise ValueError("dim_n must be nonnegative")
    if c.kind == "ordinary":
        return c.h0_local + c.field_degree * dim_n
    if c.kind == "archimedean":
        return 0
    if c.kind == "custom":
        return c.custom_dim
    # ramakrishna, steinberg, minimal, unramified all have dim L = h0
    return c.h0_local


@dataclass(frozen=True)
class SelmerLedger:
    h0_global: int
    h0_global_twist: int
    dim_n: int
    totally_real_degree: int
    archimedean_fixed_dims: tuple[int, ...] = ()
    locals: tuple[LocalCondition, ...] = ()
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        if min(self.h0_global, self.h0_global_twist, self.dim_n, self.totally_real_degree) < 0:
            raise ValueError("negative dimensions are not meaningful")
        n_arch = len(self.archimedean_fixed_dims) + sum(
            1 for c in self.locals if c.kind == "archimedean"
        )
        if self.totally_real_degree and n_arch != self.totally_real_degree:
            raise ValueError(
                f"a totally real field of degree {self.totally_real_degree} needs as many"
                f" archimedean entries, found {n_arch}"
            )

    # archimedean h0 values regardless of which slot they were declared in
    def all_archimedean_dims(self) -> tuple[int, ...]:
        extra = tuple(c.h0_local for c in self.locals if c.kind == "archimedean")
        return tuple(self.archimedean_fixed_dims) + extra

    def to_json_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "h0_global": self.h0_global,
            "h0_global_twist": self.h0_global_twist,
            "dim_n": self.dim_n,
            "totally_real_degree": self.totally_real_degree,
            "archimedean_fixed_dims": list(self.archimedean_fixed_dims),
            "locals": [
                {
                    k: v
                    for k, v in {
                        "kind": c.kind,
                        "h0_local": c.h0_local,
                        "field_degree": c.field_degree,
                        "custom_dim": c.custom_dim,
                    }.items()
                    if not (k == "field_degree" and v == 0) and not (k == "custom_dim" and v is None)
                }
                for c in self.locals
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_json_dict(doc: dict) -> "SelmerLedger":
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported ledger schema_version {version!r}, expected {SCHEMA_VERSION}")
        conds = tuple(
            LocalCondition(
                kind=c["kind"],
                h0_local=c["h0_local"],
                field_degree=c.get("field_degree", 0),
                custom_dim=c.get("custom_dim"),
            )
            for c in doc.get("locals", ())
        )
        return SelmerLedger(
            h0_global=doc["h0_global"],
            h0_global_twist=doc["h0_global_twist"],
            dim_n=doc["dim_n"],
            totally_real_degree=doc["totally_real_degree"],
            archimedean_fixed_dims=tuple(doc.get("archimedean_fixed_dims", ())),
            locals=conds,
        )

    @staticmethod
    def from_json(text: str) -> "SelmerLedger":
        return SelmerLedger.from_json_dict(json.loads(text))


def wiles_difference(ledger: SelmerLedger) -> int:
    """h^1_P - h^1_{P-perp} as the global difference formula evaluates it:

    h0 - h0(1) + sum over all places (dim L_v - h0_v), with archimedean
    places contributing (0 - h0_v) inside the sum.
    """
    total = ledger.h0_global - ledger.h0_global_twist
    for c in ledger.locals:
        total += local_dim(c, ledger.dim_n) - c.h0_local
    for d in ledger.archimedean_fixed_dims:
        total += 0 - d
    return total


def oddness_deficit(ledger: SelmerLedger) -> int:
    """sum of archimedean fixed dims minus [F:Q] * dim_n.

    Zero exactly when every archimedean involution is split Cartan; positive
    whenever some fixed space is larger, which kills the balance.
    """
    return sum(ledger.all_archimedean_dims()) - ledger.totally_real_degree * ledger.dim_n


def lgroup_euler_difference(ledger: SelmerLedger) -> int:
    """The Euler-characteristic variant with an explicit archimedean term:

    h0 - h0(1) - sum_{v | infinity} h0_v + sum over finite places
    (dim L_v - h0_v).  Agrees with wiles_difference on any ledger; only the
    bookkeeping placement of the archimedean places differs.
    """
    total = ledger.h0_global - ledger.h0_global_twist
    total -= sum(ledger.all_archimedean_dims())
    for c in ledger.locals:
        if c.kind != "archimedean":
            total += local_dim(c, ledger.dim_n) - c.h0_local
    return total


def split_cartan_fixed_dim(t: SimpleType | str) -> int:
    """(dim g - rank) / 2: the fixed-space dimension of a split Cartan

    involution, equal to the number of positive roots.
    """
    d = build_root_datum(SimpleType.parse(t))
    return len(d.positive_roots)


def regular_2rho_check(ell: int, a: int, t: SimpleType | str) -> bool:
    """Whether 2rho^vee(a) is regular in characteristic ell.

    The pairings against positive roots are a^{2k} for heights k = 1..h-1, so
    regularity is: none of those powers is 1.
    """
    if a % ell == 0:
        raise ValueError("a must be a unit mod ell")
    d = build_root_datum(SimpleType.parse(t))
    a %= ell
    for k in range(1, d.coxeter_number):
        if pow(a, 2 * k, ell) == 1:
            return False
    return True


def exists_regular_unit(ell: int, t: SimpleType | str) -> bool:
    return any(regular_2rho_check(ell, a, t) for a in range(1, ell))


def eigenvalue_multiset_distinct(ell: int, a: int, m: int) -> bool:
    """Whether the multisets {a^{2i}} and {a^{2i+2}}, i in [-m, m], differ mod ell."""
    if a % ell == 0:
        raise ValueError("a must be a unit mod ell")
    if m < 0:
        raise ValueError("m must be nonnegative")
    base = sorted(pow(a, (2 * i) % (ell - 1), ell) for i in range(-m, m + 1))
    shifted = sorted(pow(a, (2 * i + 2) % (ell - 1), ell) for i in range(-m, m + 1))
    return base != shifted


@dataclass(frozen=True)
class PrimeBounds:
    simple_type: str
    maximal_image_bound: int  # usable primes must satisfy ell > this
    principal_sl2_bound: int  # usable primes must satisfy ell > this
    e8_exclusions: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "simple_type": self.simple_type,
            "maximal_image_bound": self.maximal_image_bound,
            "principal_sl2_bound": self.principal_sl2_bound,
            "e8_exclusions": self.e8_exclusions,
        }


def lifting_prime_bounds(t: SimpleType | str) -> PrimeBounds:
    """Prime thresholds of the two lifting settings for one simple type.

    maximal_image_bound: ell - 1 must exceed max(8z, (h-1)z) for even center
    order z, or max(8z, (2h-2)z) for odd z, z the simply-connected center
    order.  principal_sl2_bound: 4h - 1 (for E6 this runs through the dual
    Coxeter number, which agrees since E6 is simply laced).  The E8 exclusion
    list carries the unresolved 367-vs-397 pair explicitly; the prime scan is
    what adjudicates it.
    """
    t = SimpleType.parse(t)
    d = build_root_datum(t)
    h = d.coxeter_number
    z = _center_order(t)
    height_term = (h - 1) * z if z % 2 == 0 else (2 * h - 2) * z
    bounds = PrimeBounds(
        simple_type=str(t),
        maximal_image_bound=1 + max(8 * z, height_term),
        principal_sl2_bound=4 * h - 1,
        e8_exclusions=(
            {"certain": [229, 269], "disputed": sorted(E8_CANDIDATES)} if str(t) == "E8" else {}
        ),
    )
    return bounds


def _center_order(t: SimpleType) -> int:
    if t.is_exceptional:
        return CENTER_ORDERS[str(t)]
    return {"A": t.rank + 1, "B": 2, "C": 2, "D": 4}[t.family]


def balanced_ledger(t: SimpleType | str, degree: int, extra_finite: int = 2) -> SelmerLedger:
    """The balanced fixture: ordinary surplus degree*dim_n at ell, split

    Cartan archimedean dims, and finitely many balanced places; both
    difference formulas evaluate to 0 on it.
    """
    dim_n = split_cartan_fixed_dim(t)
    conds = [LocalCondition("ordinary", h0_local=0, field_degree=degree)]
    for i in range(extra_finite):
        conds.append(LocalCondition(("steinberg", "minimal")[i % 2], h0_local=i))
    return SelmerLedger(
        h0_global=0,
        h0_global_twist=0,
        dim_n=dim_n,
        totally_real_degree=degree,
        archimedean_fixed_dims=tuple([dim_n] * degree),
        locals=tuple(conds),
    )
