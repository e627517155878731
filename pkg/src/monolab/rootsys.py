"""Root systems of the simple Lie types, built exactly from Cartan matrices.

Roots live in simple-root coordinates (integer tuples); every pairing goes
through the Cartan matrix, so the whole module is exact integer/rational
arithmetic.  Positive roots are enumerated by closure under root addition and
frozen in a deterministic order whose first ``rank`` entries are the simple
roots alpha_1, ..., alpha_l in their conventional numbering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Root = tuple[int, ...]

# Counts of the full root system |Phi| for the exceptional types, used as a
# construction-time cross-check.
_EXCEPTIONAL_ROOT_COUNTS = {("G", 2): 12, ("F", 4): 48, ("E", 6): 72, ("E", 7): 126, ("E", 8): 240}

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 3,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class SimpleType:
    """A point of the Cartan classification, e.g. SimpleType('E', 6)."""

    family: str
    rank: int

    def __post_init__(self):
        ok = self.family in _VALID_RANKS and _VALID_RANKS[self.family](self.rank)
        if not ok:
            raise ValueError(f"not a classified simple type: {self.family}{self.rank}")

    @staticmethod
    def parse(name) -> "SimpleType":
        if isinstance(name, SimpleType):
            return name
        name = str(name).strip()
        if len(name) < 2 or not name[1:].isdigit():
            raise ValueError(f"cannot parse simple type {name!r}")
        return SimpleType(name[0].upper(), int(name[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def is_exceptional(self) -> bool:
        return self.family in ("E", "F", "G")


def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with A[i][j] = <alpha_i^vee, alpha_j>, Bourbaki numbering."""
    n = t.rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    fam = t.family
    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            join(i, i + 1)
        if fam == "B":  # alpha_n short
            A[n - 1][n - 2] = -2
        elif fam == "C":  # alpha_n long
            A[n - 2][n - 1] = -2
    elif fam == "D":
        for i in range(n - 3):
            join(i, i + 1)
        join(n - 3, n - 2)
        join(n - 3, n - 1)
    elif fam == "E":
        # chain 1-3-4-5-...-n with node 2 attached to node 4
        join(0, 2)
        for i in range(2, n - 1):
            join(i, i + 1)
        join(1, 3)
    elif fam == "F":
        join(0, 1)
        join(1, 2, aij=-1, aji=-2)  # alpha_2 long, alpha_3 short
        join(2, 3)
    elif fam == "G":
        join(0, 1, aij=-3, aji=-1)  # alpha_1 short, alpha_2 long
    return tuple(tuple(row) for row in A)


def _root_lengths(cartan) -> tuple[Fraction, ...]:
    """d_i = (alpha_i, alpha_i)/2 normalised so that min d_i = 1.

    Solves d_i * A[i][j] = d_j * A[j][i] by propagation along the Dynkin
    diagram; the diagram of a simple type is connected, so this determines d
    up to the overall scale fixed by the normalisation.
    """
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                stack.append(j)
    assert all(x is not None for x in d), "Dynkin diagram not connected"
    lo = min(d)
    return tuple(x / lo for x in d)


@dataclass(frozen=True)
class RootDatum:
    """Immutable combinatorial skeleton of one simple type."""

    simple_type: SimpleType
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    heights: dict  # Root -> int, over positive roots
    highest_root: Root
    coxeter_number: int
    exponents: tuple[int, ...]
    weyl_has_minus_one: bool
    simple_norms: tuple[Fraction, ...]  # d_i = (alpha_i, alpha_i)/2

    def __hash__(self):
        return hash(self.simple_type)

    # -- pairings -------------------------------------------------------

    def pairing(self, i: int, root: Root) -> int:
        """<alpha_i^vee, root> via the Cartan matrix."""
        return sum(self.cartan[i][j] * root[j] for j in range(self.rank))

    def inner(self, a: Root, b: Root) -> Fraction:
        """Weyl-invariant form (a, b), normalised so short simple roots have (a,a)=2."""
        return sum(
            Fraction(a[i]) * b[j] * self.simple_norms[i] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if a[i] and b[j]
        ) or Fraction(0)

    def norm2(self, a: Root) -> Fraction:
        return self.inner(a, a)

    def is_root(self, v: Root) -> bool:
        return v in self._root_set

    @property
    def _root_set(self):
        return _root_set_of(self)

    @property
    def all_roots(self) -> tuple[Root, ...]:
        neg = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return self.positive_roots + neg

    def height(self, root: Root) -> int:
        """Sum of simple-root coordinates; defined for every root, either sign."""
        if root not in self._root_set:
            raise ValueError(f"not a root of {self.simple_type}: {root}")
        return sum(root)

    def coroot(self, root: Root) -> Root:
        """The coroot of `root` in simple-coroot coordinates."""
        if root not in self._root_set:
            raise ValueError(f"not a root of {self.simple_type}: {root}")
        dr = self.norm2(root) / 2
        out = []
        for i in range(self.rank):
            c = Fraction(root[i]) * self.simple_norms[i] / dr
            assert c.denominator == 1, "coroot coordinates must be integral"
            out.append(int(c))
        return tuple(out)

    # -- serialisation ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "simple_type": str(self.simple_type),
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "num_positive_roots": len(self.positive_roots),
            "num_roots": 2 * len(self.positive_roots),
            "dim_algebra": 2 * len(self.positive_roots) + self.rank,
            "positive_roots": [list(r) for r in self.positive_roots],
            "heights": [sum(r) for r in self.positive_roots],
            "highest_root": list(self.highest_root),
            "coxeter_number": self.coxeter_number,
            "exponents": list(self.exponents),
            "weyl_has_minus_one": self.weyl_has_minus_one,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


@lru_cache(maxsize=None)
def _root_set_of(datum: RootDatum) -> frozenset:
    return frozenset(datum.all_roots)


def _close_positive_roots(cartan) -> list[Root]:
    """All positive roots, by breadth-first closure from the simple roots.

    A candidate beta + alpha_i is accepted iff the alpha_i-string through
    beta continues upward, i.e. q = p - <alpha_i^vee, beta> >= 1 where p is
    the depth of the string below beta.  Only validated string data is used,
    never Euclidean geometry.
    """
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    known = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                p = 0
                down = tuple(b - s for b, s in zip(beta, simple[i]))
                while down in known or down == tuple([0] * n):
                    if down == tuple([0] * n):
                        # beta = alpha_i: the string through alpha_i is handled
                        # by q below (p stays 0; alpha_i + alpha_i is no root).
                        break
                    p += 1
                    down = tuple(b - s for b, s in zip(down, simple[i]))
                if beta == simple[i]:
                    continue
                q = p - pairing
                if q >= 1:
                    up = tuple(b + s for b, s in zip(beta, simple[i]))
                    if up not in known:
                        known.add(up)
                        new.append(up)
        frontier = new
    # (height, alpha_1-first lexicographic): simple roots land on indices 0..n-1
    # in their conventional numbering.
    return sorted(known, key=lambda r: (sum(r), tuple(-c for c in r)))


def _exponents_from_heights(positive_roots) -> tuple[int, ...]:
    """Exponents as the conjugate of the height-count partition.

    With lam_k = #{positive roots of height exactly k}, the conjugate
    partition lam*_j = #{k : lam_k >= j} lists the exponents (largest first).
    """
    counts: dict[int, int] = {}
    for r in positive_roots:
        counts[sum(r)] = counts.get(sum(r), 0) + 1
    lam = [counts[k] for k in sorted(counts)]
    conj = [sum(1 for x in lam if x >= j) for j in range(1, max(lam) + 1)]
    return tuple(sorted(conj))


@lru_cache(maxsize=None)
def build_root_datum(t: SimpleType | str) -> RootDatum:
    """Construct the validated RootDatum of a simple type."""
    t = SimpleType.parse(t)
    A = cartan_matrix(t)
    pos = tuple(_close_positive_roots(A))
    heights = {r: sum(r) for r in pos}
    theta = pos[-1]
    top = [r for r in pos if sum(r) == sum(theta)]
    assert top == [theta], "highest root must be unique"
    h = sum(theta) + 1
    exps = _exponents_from_heights(pos)
    datum = RootDatum(
        simple_type=t,
        rank=t.rank,
        cartan=A,
        positive_roots=pos,
        heights=heights,
        highest_root=theta,
        coxeter_number=h,
        exponents=exps,
        weyl_has_minus_one=all(m % 2 == 1 for m in exps),
        simple_norms=_root_lengths(A),
    )
    _validate(datum)
    return datum


def _validate(d: RootDatum):
    n_pos, l = len(d.positive_roots), d.rank
    key = (d.simple_type.family, d.simple_type.rank)
    if key in _EXCEPTIONAL_ROOT_COUNTS:
        assert 2 * n_pos == _EXCEPTIONAL_ROOT_COUNTS[key]
    assert len(d.exponents) == l
    assert sum(2 * m + 1 for m in d.exponents) == 2 * n_pos + l
    assert all(
        d.exponents[i] + d.exponents[l - 1 - i] == d.coxeter_number for i in range(l)
    ), "exponents must be symmetric about h/2"
    assert d.exponents[0] == 1


def weyl_contains_minus_one(t: SimpleType | str) -> bool:
    """Whether -1 lies in the Weyl group; computed as `all exponents odd`."""
    return build_root_datum(SimpleType.parse(t)).weyl_has_minus_one


def height(d: RootDatum, root: Root) -> int:
    return d.height(root)


def coroot(d: RootDatum, root: Root) -> Root:
    return d.coroot(root)


EXCEPTIONAL_TYPES = ("G2", "F4", "E6", "E7", "E8")
