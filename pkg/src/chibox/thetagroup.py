"""Symbolic algebra of theta combinations and the unit group G_{n,m}.

A combination sum a_k theta_{m,k} (0 <= k <= ell, ell = floor(n/m)) is held
as its coefficient bit vector.  Reading the coefficients as the polynomial
sum a_k z^k makes composition of unit combinations the polynomial product in
F_2[z]/(z^(ell+1)), so inverses, orders and iterates are closed-form; the
coefficient vector is simultaneously the group element and the polynomial,
no second representation exists.  Units are exactly the combinations with
a_0 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolmap import constant_table, pointwise_add
from .families import make_theta


class NonUnitError(ValueError):
    """Group operation on a combination whose constant coefficient is 0."""


@dataclass(frozen=True)
class ThetaComb:
    """Coefficient vector (a_0, ..., a_ell) of sum a_k theta_{m,k} on F_2^n."""

    n: int
    m: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive, got %r" % (self.n,))
        if self.m < 2:
            raise ValueError("m must be at least 2, got %r" % (self.m,))
        ell = self.n // self.m
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != ell + 1:
            raise ValueError(
                "coeffs must have ell+1 = %d bits for n=%d m=%d, got %d"
                % (ell + 1, self.n, self.m, len(coeffs))
            )
        if any(c not in (0, 1) for c in coeffs):
            raise ValueError("coefficients must be bits")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def ell(self):
        return self.n // self.m

    def is_unit(self):
        return self.coeffs[0] == 1


def identity_comb(n, m):
    return ThetaComb(n, m, (1,) + (0,) * (n // m))


def chi_comb(n, m):
    """chi_{n,m} = theta_0 + theta_{m,1} as a combination."""
    ell = n // m
    if ell < 1:
        raise ValueError("chi_{n,m} needs m <= n")
    return ThetaComb(n, m, (1, 1) + (0,) * (ell - 1))


def comb_from_bitstring(n, m, text):
    """Parse a coefficient bitstring written lowest index first (a_0 first)."""
    if not text or any(ch not in "01" for ch in text):
        raise ValueError("coefficient string must be nonempty over {0,1}, got %r" % (text,))
    return ThetaComb(n, m, tuple(int(ch) for ch in text))


def bitstring(c):
    return "".join(str(b) for b in c.coeffs)


def order_exponent(n, m):
    """r with ord(chi_{n,m}) = 2^r, i.e. r = ceil(log2(ell+1))."""
    return (n // m).bit_length()


def comb_to_table(c):
    """Materialize the combination as the XOR-sum of its theta tables."""
    acc = constant_table(c.n, 0)
    for k, a in enumerate(c.coeffs):
        if a:
            acc = pointwise_add(acc, make_theta(c.n, c.m, k))
    return acc


def _require_unit(c):
    if not c.is_unit():
        raise NonUnitError("constant coefficient a_0 must be 1 for group operations")


def _require_same(f, g):
    if (f.n, f.m) != (g.n, g.m):
        raise ValueError("mismatched parameters: (%d,%d) vs (%d,%d)" % (f.n, f.m, g.n, g.m))


def group_mul(f, g):
    """Product in G_{n,m}: polynomial multiplication truncated mod z^(ell+1).

    Materializing the result equals composing the materialized factors.
    """
    _require_same(f, g)
    _require_unit(f)
    _require_unit(g)
    ell = f.ell
    out = [0] * (ell + 1)
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b and i + j <= ell:
                out[i + j] ^= 1
    return ThetaComb(f.n, f.m, tuple(out))


def group_inverse(f):
    """Inverse via the convolution recurrence b_j = a_j + sum_{u+v=j} a_u b_v."""
    _require_unit(f)
    a = f.coeffs
    b = [1] + [0] * f.ell
    for j in range(1, f.ell + 1):
        acc = a[j]
        for u in range(1, j):
            acc ^= a[u] & b[j - u]
        b[j] = acc
    return ThetaComb(f.n, f.m, tuple(b))


def element_order(f):
    """Compositional order: 1 for the identity, else 2^ceil(log2((ell+1)/j)).

    j is the lowest nonzero non-constant coefficient index.
    """
    _require_unit(f)
    j = next((i for i in range(1, f.ell + 1) if f.coeffs[i]), None)
    if j is None:
        return 1
    q = -(-(f.ell + 1) // j)
    return 1 << (q - 1).bit_length()


def is_involution(f):
    """True iff f composed with itself is the identity: a_1..a_{ell//2} all 0."""
    _require_unit(f)
    return all(f.coeffs[i] == 0 for i in range(1, f.ell // 2 + 1))


def iterate_coeffs(n, m, k):
    """Coefficients of chi_{n,m}^k: a_j = 1 iff j precedes k digit-wise in base 2.

    That is the parity of binomial(k, j) by Lucas' theorem, truncated at ell.
    """
    if n % m == 0:
        raise ValueError("m must not divide n for chi iterates")
    if k < 0:
        raise ValueError("k must be non-negative")
    ell = n // m
    return ThetaComb(n, m, tuple(1 if (j & k) == j else 0 for j in range(ell + 1)))


def predicate_fixed_set(n, m, j):
    """All words passing the fixed-point window test, as a vectorized sweep.

    Same semantics as fixed_point_predicate applied to every x in F_2^n,
    returned as a sorted list of words.
    """
    if n % m == 0:
        raise ValueError("m must not divide n for the fixed-point predicate")
    if j < 0:
        raise ValueError("j must be non-negative")
    x = np.arange(1 << n, dtype=np.int64)
    width = (1 << j) * m
    hit_any = np.zeros(x.size, dtype=bool)
    for i in range(n):
        ok = np.ones(x.size, dtype=bool)
        for t in range(1, width + 1):
            b = (x >> ((i + t) % n)) & 1
            if t == width:
                ok &= b == 1
            elif t % m:
                ok &= b == 0
        hit_any |= ok
    return [int(w) for w in x[~hit_any]]


def fixed_point_predicate(n, m, j, x):
    """Window test for 'x is a fixed point of chi_{n,m}^(2^j)'.

    True iff x, read cyclically, contains no window (x_{i+1},...,x_{i+w}) of
    the form (0_{m-1}, *, 0_{m-1}, *, ..., 0_{m-1}, 1) with w = 2^j * m: a
    zero block of width m-1 before every stride-m slot, the last slot forced
    to 1.  Positions visited twice under the cyclic wrap must satisfy both
    constraints, which makes the test vacuously true exactly when the window
    cannot fit, matching the identity iterate.
    """
    if n % m == 0:
        raise ValueError("m must not divide n for the fixed-point predicate")
    if j < 0:
        raise ValueError("j must be non-negative")
    if not 0 <= x < (1 << n):
        raise ValueError("x out of range for n=%d" % (n,))
    width = (1 << j) * m
    for i in range(n):
        hit = True
        for t in range(1, width + 1):
            b = (x >> ((i + t) % n)) & 1
            if t == width:
                if b != 1:
                    hit = False
            elif t % m and b != 0:
                hit = False
            if not hit:
                break
        if hit:
            return False
    return True
