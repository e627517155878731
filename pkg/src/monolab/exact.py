"""Exact coefficient rings and integer linear algebra.

Scalars are arbitrary-precision ints (ZZ), Fractions (QQ), or residues mod a
machine-width prime (GF(ell)).  The kernel routines work over ZZ by unimodular
column reduction, so kernels come back as saturated lattice bases with no
rational intermediate step left in the result.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class IntegerRing:
    """ZZ with arbitrary-precision ints."""

    name = "ZZ"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise TypeError(f"not an integer scalar: {x!r}")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "ZZ"


class RationalRing:
    """QQ with Fractions."""

    name = "QQ"
    characteristic = 0

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_ell for a prime ell < 2**31; residues stored as ints in [0, ell)."""

    def __init__(self, ell: int):
        if not (2 <= ell < 2**31):
            raise ValueError(f"prime out of machine-width range: {ell}")
        if not is_probable_prime(ell):
            raise ValueError(f"not a prime: {ell}")
        self.ell = ell
        self.name = f"GF({ell})"
        self.characteristic = ell

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.ell == 0:
                raise ZeroDivisionError(f"denominator of {x} not invertible mod {self.ell}")
            return x.numerator * pow(x.denominator, -1, self.ell) % self.ell
        return int(x) % self.ell

    def add(self, a, b):
        return (a + b) % self.ell

    def mul(self, a, b):
        return (a * b) % self.ell

    def neg(self, a):
        return (-a) % self.ell

    def inv(self, a):
        return pow(a, -1, self.ell)

    def is_zero(self, a):
        return a % self.ell == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.ell == self.ell

    def __hash__(self):
        return hash(("GF", self.ell))

    def __repr__(self):
        return self.name


ZZ = IntegerRing()
QQ = RationalRing()


def GF(ell: int) -> PrimeField:
    return PrimeField(ell)


# ---------------------------------------------------------------------------
# primality (deterministic Miller-Rabin for the sizes this package meets,
# with a Lucas step past the proven base-set range)
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_LIMIT = 3317044064679887385961981  # exact for the base set above


def _miller_rabin(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a % n, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _lucas_strong(n: int) -> bool:
    # Selfridge parameter choice; standard strong Lucas probable-prime test.
    from math import isqrt

    if isqrt(n) ** 2 == n:
        return False  # squares would loop in the parameter search
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == 0:
            return False
        if j == -1:
            break
        d = -(abs(d) + 2) if d > 0 else abs(d) + 2
    p, q = 1, (1 - d) // 4
    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1
    u, v, qk = 0, 2, 1
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * ((n + 1) // 2) % n, (d * u + p * v) * ((n + 1) // 2) % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_probable_prime(n: int) -> bool:
    """Primality certificate: deterministic below ~3.3e24, BPSW-style above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if not all(_miller_rabin(n, a) for a in _MR_BASES):
        return False
    if n < _MR_PROVEN_LIMIT:
        return True
    return _lucas_strong(n)


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_kernel(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {v in ZZ^ncols : M v = 0} for the integer matrix with these rows.

    Unimodular column reduction of M stacked over the identity: columns whose
    M-part vanishes carry a basis of the integer kernel, which is automatically
    saturated.  Deterministic; returned vectors are sign-normalised so the
    first nonzero coordinate is positive.
    """
    m = len(rows)
    # column-major: cols[j] holds column j of M stacked over e_j
    cols = [[rows[r][j] for r in range(m)] + [0] * ncols for j in range(ncols)]
    for j in range(ncols):
        cols[j][m + j] = 1
    col = 0
    for r in range(m):
        if col >= ncols:
            break
        nz = [j for j in range(col, ncols) if cols[j][r] != 0]
        if not nz:
            continue
        j0 = nz[0]
        for j in nz[1:]:
            a, b = cols[j0][r], cols[j][r]
            g, x, y = _xgcd(a, b)
            aa, bb = a // g, b // g
            cj0, cj = cols[j0], cols[j]
            for i in range(m + ncols):
                u, v = cj0[i], cj[i]
                cj0[i] = x * u + y * v
                cj[i] = aa * v - bb * u
            assert cols[j0][r] == g and cols[j][r] == 0
        cols[col], cols[j0] = cols[j0], cols[col]
        col += 1
    kernel = []
    for j in range(ncols):
        if all(cols[j][r] == 0 for r in range(m)):
            kernel.append(normalize_primitive(tuple(cols[j][m:])))
    return kernel


def normalize_primitive(vec) -> tuple[int, ...]:
    """Divide out the content and make the first nonzero coordinate positive."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        return tuple(vec)
    lead = next(x for x in vec if x != 0)
    if lead < 0:
        g = -g
    return tuple(x // g for x in vec)


def content(vec) -> int:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g


def det_mod(rows, ell: int) -> int:
    """Determinant mod ell of a square integer matrix, by elimination over F_ell."""
    import numpy as np

    n = len(rows)
    a = np.array([[int(x) % ell for x in row] for row in rows], dtype=np.int64)
    det = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if a[r, c] % ell:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = det * int(a[c, c]) % ell
        inv = pow(int(a[c, c]), -1, ell)
        a[c] = a[c] * inv % ell
        rest = a[c + 1 :, c] % ell
        nz = rest.nonzero()[0]
        if nz.size:
            a[c + 1 + nz] = (a[c + 1 + nz] - rest[nz, None] * a[c]) % ell
    return det % ell
