"""Constructors for the chi family of shift-invariant maps.

Every constructor returns a TruthTable built by evaluating the coordinate
rule simultaneously for all 2^n inputs with vectorized bit arithmetic.
Coordinate indices wrap mod n except in make_cchi, whose branch table is
transcribed verbatim and never wraps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boolmap import MAX_N, TruthTable, identity_table


class FamilyParseError(ValueError):
    """Raised when a family spec string does not match the grammar."""


def _words(n):
    if not 1 <= n <= MAX_N:
        raise ValueError("dimension n must be in 1..%d, got %r" % (MAX_N, n))
    return np.arange(1 << n, dtype=np.int64)


def _bit(x, i, n):
    return (x >> (i % n)) & 1


def make_chi(n):
    """chi_n: y_i = x_i + (x_{i+1} + 1) x_{i+2}."""
    if n < 3:
        raise ValueError("chi needs n >= 3, got %r" % (n,))
    x = _words(n)
    y = np.zeros_like(x)
    for i in range(n):
        y |= (_bit(x, i, n) ^ ((_bit(x, i + 1, n) ^ 1) & _bit(x, i + 2, n))) << i
    return TruthTable(n, y)


def make_chi_nm(n, m):
    """chi_{n,m}: y_i = x_i + x_{i+m} prod_{j=1}^{m-1} (x_{i+j} + 1).

    Construction is allowed even when m divides n; the table is then not a
    permutation and is_permutation reports the collision.
    """
    if not (isinstance(m, int) and 2 <= m < n):
        raise ValueError("chi_nm needs n > m >= 2, got n=%r m=%r" % (n, m))
    x = _words(n)
    y = np.zeros_like(x)
    for i in range(n):
        prod = _bit(x, i + m, n)
        for j in range(1, m):
            prod = prod & (_bit(x, i + j, n) ^ 1)
        y |= (_bit(x, i, n) ^ prod) << i
    return TruthTable(n, y)


def make_theta(n, m, k):
    """theta_{m,k}: y_i = x_{i+mk} prod_{1<=j<=mk-1, m does not divide j} (x_{i+j} + 1).

    k = 0 gives the identity.  The product runs over j regardless of n, with
    all indices reduced mod n, so the table is the zero map whenever the
    window cannot fit (mk > n and m does not divide n).
    """
    if not (isinstance(m, int) and m >= 2 and isinstance(k, int) and k >= 0):
        raise ValueError("theta needs m >= 2 and k >= 0, got m=%r k=%r" % (m, k))
    if m > MAX_N or k > MAX_N:
        raise ValueError("theta parameters are capped at %d, got m=%r k=%r" % (MAX_N, m, k))
    if k == 0:
        return identity_table(n)
    x = _words(n)
    y = np.zeros_like(x)
    for i in range(n):
        prod = _bit(x, i + m * k, n)
        for j in range(1, m * k):
            if j % m:
                prod = prod & (_bit(x, i + j, n) ^ 1)
        y |= prod << i
    return TruthTable(n, y)


def make_chi_prime3(n):
    """chi'_{n,3}: y_i = x_i + x_{i+1} x_{i+2} (x_{i+3} + 1)."""
    if n < 4:
        raise ValueError("chi_prime3 needs n >= 4, got %r" % (n,))
    x = _words(n)
    y = np.zeros_like(x)
    for i in range(n):
        prod = _bit(x, i + 1, n) & _bit(x, i + 2, n) & (_bit(x, i + 3, n) ^ 1)
        y |= (_bit(x, i, n) ^ prod) << i
    return TruthTable(n, y)


def make_cchi(n):
    """cchi_n for n = 2k, k even: the seven-branch variant of chi.

    The generic coordinate is y_i = x_i + (x_{i+1} + 1) x_{i+2}; the six
    coordinates around the block boundary follow the published branch table,
    with indices taken literally (no wrap occurs inside any branch).
    """
    if n % 2:
        raise ValueError("cchi needs n = 2k with k even, got n=%r" % (n,))
    k = n // 2
    if k % 2 or k < 4:
        raise ValueError("cchi needs n = 2k with k even and k >= 4, got n=%r" % (n,))
    x = _words(n)

    def b(i):
        return _bit(x, i, n)

    def nb(i):
        return _bit(x, i, n) ^ 1

    y = np.zeros_like(x)
    for i in range(n):
        if i < k - 3 or k < i < 2 * k - 2:
            yi = b(i) ^ (nb(i + 1) & b(i + 2))
        elif i == k - 3:
            yi = b(k) ^ (nb(k - 2) & b(0))
        elif i == k - 2:
            yi = b(k - 1) ^ (nb(0) & b(1))
        elif i == k - 1:
            yi = nb(k - 3) ^ (nb(k) & nb(k + 1))
        elif i == k:
            yi = b(k - 2) ^ (nb(k + 1) & b(k + 2))
        elif i == 2 * k - 2:
            yi = b(2 * k - 2) ^ (nb(2 * k - 1) & b(k - 1))
        else:
            yi = b(2 * k - 1) ^ (nb(k - 1) & b(k))
        y |= yi << i
    return TruthTable(n, y)


def make_concat(parts):
    """Concatenation: parts act on consecutive blocks, first part lowest bits."""
    parts = list(parts)
    if not parts:
        raise ValueError("concat needs at least one part")
    total = sum(p.n for p in parts)
    if total > MAX_N:
        raise ValueError("concat dimension %d exceeds the cap %d" % (total, MAX_N))
    x = _words(total)
    y = np.zeros_like(x)
    offset = 0
    for p in parts:
        block = (x >> offset) & ((1 << p.n) - 1)
        y |= p.entries[block] << offset
        offset += p.n
    return TruthTable(total, y)


@dataclass(frozen=True)
class FamilySpec:
    """Parsed form of a family spec string.

    family is one of chi, chi_nm, theta, chi_prime3, cchi, concat; n is the
    dimension (for concat, the sum over parts); m and k apply to chi_nm and
    theta; parts is the tuple of sub-specs for concat.
    """

    family: str
    n: int = 0
    m: int = 0
    k: int = 0
    parts: tuple = field(default_factory=tuple)


def _split_args(body):
    # split on commas at nesting depth zero
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise FamilyParseError("unbalanced parentheses in %r" % (body,))
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise FamilyParseError("unbalanced parentheses in %r" % (body,))
    parts.append("".join(cur))
    return parts


def _int_field(text, what):
    try:
        return int(text)
    except ValueError:
        raise FamilyParseError("%s must be an integer, got %r" % (what, text)) from None


def parse_family(text):
    """Parse a spec string per the grammar.

    chi:<n>  chi_nm:<n>:<m>  theta:<n>:<m>:<k>  chi_prime3:<n>  cchi:<n>
    concat(<spec>,<spec>,...)
    """
    text = text.strip()
    if text.startswith("concat(") and text.endswith(")"):
        body = text[len("concat(") : -1]
        if not body.strip():
            raise FamilyParseError("concat needs at least one part")
        parts = tuple(parse_family(p) for p in _split_args(body))
        return FamilySpec("concat", n=sum(p.n for p in parts), parts=parts)
    head, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    if head == "chi" and len(args) == 1:
        return FamilySpec("chi", n=_int_field(args[0], "n"))
    if head == "chi_nm" and len(args) == 2:
        return FamilySpec("chi_nm", n=_int_field(args[0], "n"), m=_int_field(args[1], "m"))
    if head == "theta" and len(args) == 3:
        return FamilySpec(
            "theta",
            n=_int_field(args[0], "n"),
            m=_int_field(args[1], "m"),
            k=_int_field(args[2], "k"),
        )
    if head == "chi_prime3" and len(args) == 1:
        return FamilySpec("chi_prime3", n=_int_field(args[0], "n"))
    if head == "cchi" and len(args) == 1:
        return FamilySpec("cchi", n=_int_field(args[0], "n"))
    raise FamilyParseError("unrecognized family spec %r" % (text,))


def spec_string(fs):
    """Canonical spec string for a FamilySpec, inverse of parse_family."""
    if fs.family == "chi":
        return "chi:%d" % fs.n
    if fs.family == "chi_nm":
        return "chi_nm:%d:%d" % (fs.n, fs.m)
    if fs.family == "theta":
        return "theta:%d:%d:%d" % (fs.n, fs.m, fs.k)
    if fs.family == "chi_prime3":
        return "chi_prime3:%d" % fs.n
    if fs.family == "cchi":
        return "cchi:%d" % fs.n
    if fs.family == "concat":
        return "concat(%s)" % ",".join(spec_string(p) for p in fs.parts)
    raise ValueError("unknown family %r" % (fs.family,))


def build(fs):
    """Materialize a FamilySpec into its TruthTable."""
    if fs.family == "chi":
        return make_chi(fs.n)
    if fs.family == "chi_nm":
        return make_chi_nm(fs.n, fs.m)
    if fs.family == "theta":
        return make_theta(fs.n, fs.m, fs.k)
    if fs.family == "chi_prime3":
        return make_chi_prime3(fs.n)
    if fs.family == "cchi":
        return make_cchi(fs.n)
    if fs.family == "concat":
        return make_concat([build(p) for p in fs.parts])
    raise ValueError("unknown family %r" % (fs.family,))
