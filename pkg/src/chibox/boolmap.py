"""Truth-table algebra for vectorial Boolean functions F: F_2^n -> F_2^n.

A function is stored as an array of 2^n output words indexed by the input
word.  Bit i of a word holds coordinate x_i, so x_0 is the least significant
bit, and every coordinate index in a formula is reduced mod n.  The three
operations of the mapping algebra (pointwise addition, composition, Hadamard
product), permutation machinery (inverse, iterates, cycle structure), and the
algebraic normal form all live here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

MAX_N = 24


class NotAPermutation(ValueError):
    """The operation needs a bijective table but the entries collide."""


def _check_n(n):
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValueError("dimension n must be an integer in 1..%d, got %r" % (MAX_N, n))


def word_from_bits(bits):
    """Pack a coordinate sequence (x_0, x_1, ...) into a word, x_0 lowest."""
    w = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError("bits must be 0 or 1")
        w |= b << i
    return w


def bits_of(word, n):
    """Unpack a word into the coordinate tuple (x_0, ..., x_{n-1})."""
    return tuple((word >> i) & 1 for i in range(n))


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Immutable table of a map F_2^n -> F_2^n.

    entries[u] is the output word F(u); the array is read-only int64.
    """

    n: int
    entries: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        ent = np.array(self.entries, dtype=np.int64, copy=True)
        if ent.shape != (1 << self.n,):
            raise ValueError("entries must have exactly 2^n elements")
        if ent.size and (int(ent.min()) < 0 or int(ent.max()) >> self.n):
            raise ValueError("entries contain a word outside F_2^n")
        ent.setflags(write=False)
        object.__setattr__(self, "entries", ent)

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.entries, other.entries)

    def __getitem__(self, u):
        return int(self.entries[u])

    def __len__(self):
        return 1 << self.n


def identity_table(n):
    _check_n(n)
    return TruthTable(n, np.arange(1 << n, dtype=np.int64))


def constant_table(n, word):
    _check_n(n)
    return TruthTable(n, np.full(1 << n, word, dtype=np.int64))


def table_from_entries(n, entries):
    return TruthTable(n, np.asarray(entries, dtype=np.int64))


def shift(n, t):
    """Table of the cyclic shift S^t: output coordinate i is input coordinate i+t.

    shift(n, 0) is the identity and shift(n, a) composed with shift(n, b)
    equals shift(n, a+b).
    """
    _check_n(n)
    t %= n
    x = np.arange(1 << n, dtype=np.int64)
    mask = (1 << n) - 1
    # y_i = x_{i+t}: bit i+t of the input lands at bit i of the output
    y = ((x >> t) | (x << (n - t))) & mask if t else x
    return TruthTable(n, y)


def _same_n(f, g):
    if f.n != g.n:
        raise ValueError("dimension mismatch: %d vs %d" % (f.n, g.n))


def pointwise_add(f, g):
    """Entry-wise XOR of the two output words, the + of the mapping algebra."""
    _same_n(f, g)
    return TruthTable(f.n, f.entries ^ g.entries)


def hadamard(f, g):
    """Entry-wise AND of the two output words, the Hadamard product."""
    _same_n(f, g)
    return TruthTable(f.n, f.entries & g.entries)


def compose(f, g):
    """Table of f after g: entry u is f(g(u))."""
    _same_n(f, g)
    return TruthTable(f.n, f.entries[g.entries])


def is_permutation(f):
    """(True, None) when entries are pairwise distinct, else (False, (u, v)).

    The witness is the pair of smallest inputs colliding at the smallest
    repeated output value.
    """
    ent = f.entries
    counts = np.bincount(ent, minlength=1 << f.n)
    repeated = np.flatnonzero(counts > 1)
    if repeated.size == 0:
        return True, None
    pre = np.flatnonzero(ent == repeated[0])
    return False, (int(pre[0]), int(pre[1]))


def invert(f):
    """Inverse table of a permutation; raises NotAPermutation otherwise."""
    ok, witness = is_permutation(f)
    if not ok:
        raise NotAPermutation(
            "inputs %d and %d both map to %d" % (witness[0], witness[1], f[witness[0]])
        )
    inv = np.empty(1 << f.n, dtype=np.int64)
    inv[f.entries] = np.arange(1 << f.n, dtype=np.int64)
    return TruthTable(f.n, inv)


def iterate(f, k):
    """k-fold composition of f with itself by binary exponentiation; k >= 0."""
    if k < 0:
        raise ValueError("k must be non-negative")
    acc = identity_table(f.n)
    base = f
    while k:
        if k & 1:
            acc = compose(base, acc)
        k >>= 1
        if k:
            base = compose(base, base)
    return acc


@dataclass(frozen=True)
class CycleReport:
    """Cycle decomposition of a permutation.

    cycle_lengths is the multiset of cycle lengths as (length, multiplicity)
    pairs sorted by length; order is the lcm of the lengths present.
    """

    cycle_lengths: tuple
    order: int
    fixed_point_count: int


def cycle_structure(f):
    ok, witness = is_permutation(f)
    if not ok:
        raise NotAPermutation(
            "inputs %d and %d both map to %d" % (witness[0], witness[1], f[witness[0]])
        )
    ent = f.entries
    seen = np.zeros(1 << f.n, dtype=bool)
    counts = {}
    for u in range(1 << f.n):
        if seen[u]:
            continue
        length = 0
        v = u
        while not seen[v]:
            seen[v] = True
            v = int(ent[v])
            length += 1
        counts[length] = counts.get(length, 0) + 1
    order = 1
    for length in counts:
        order = math.lcm(order, length)
    return CycleReport(
        cycle_lengths=tuple(sorted(counts.items())),
        order=order,
        fixed_point_count=counts.get(1, 0),
    )


def fixed_points(f):
    """All inputs u with f(u) = u, ascending by word value."""
    idx = np.nonzero(f.entries == np.arange(1 << f.n, dtype=np.int64))[0]
    return [int(u) for u in idx]


@dataclass(frozen=True, eq=False)
class AnfTable:
    """Algebraic normal form of a table.

    Bit i of coeffs[u] is the coefficient of the monomial prod_{j in u} x_j
    in output coordinate i, where u is read as a subset of variable indices.
    """

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        _check_n(self.n)
        c = np.array(self.coeffs, dtype=np.int64, copy=True)
        if c.shape != (1 << self.n,):
            raise ValueError("coeffs must have exactly 2^n elements")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __eq__(self, other):
        if not isinstance(other, AnfTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)


def _moebius(words, n):
    # in-place butterfly, one pass per variable, all coordinates in parallel
    a = words.copy()
    for i in range(n):
        step = 1 << i
        view = a.reshape(-1, 2, step)
        view[:, 1, :] ^= view[:, 0, :]
    return a


def anf(f):
    """ANF coefficients of every coordinate at once via the Moebius transform."""
    return AnfTable(f.n, _moebius(f.entries, f.n))


def from_anf(a):
    """Truth table reproducing the given ANF (the transform is an involution)."""
    return TruthTable(a.n, _moebius(a.coeffs, a.n))


def component_degree(a, mask):
    """Algebraic degree of the component function mask . F.

    mask selects output coordinates whose XOR forms the component; returns
    None for the identically-zero function (degree undefined).
    """
    if not 0 <= mask < (1 << a.n):
        raise ValueError("mask out of range")
    sel = np.bitwise_count(a.coeffs & np.int64(mask)) & 1
    live = np.nonzero(sel)[0]
    if live.size == 0:
        return None
    return int(np.bitwise_count(live.astype(np.int64)).max())


def table_degree(f):
    """Algebraic degree of the mapping: max degree over single-bit components."""
    a = anf(f)
    degs = [component_degree(a, 1 << i) for i in range(f.n)]
    degs = [d for d in degs if d is not None]
    return max(degs) if degs else None


def table_to_json(f, family=""):
    """Serialize a table to the interchange document.

    Fields: n, family (free-form provenance string), entries (2^n lowercase
    hex strings, zero-padded to ceil(n/4) digits, entry u = F(u)).
    """
    width = (f.n + 3) // 4
    doc = {
        "n": f.n,
        "family": family,
        "entries": [format(int(y), "0%dx" % width) for y in f.entries],
    }
    return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"


def table_from_json(text):
    """Parse the interchange document; returns (TruthTable, family string)."""
    doc = json.loads(text)
    n = doc["n"]
    _check_n(n)
    entries = [int(h, 16) for h in doc["entries"]]
    return TruthTable(n, np.asarray(entries, dtype=np.int64)), str(doc.get("family", ""))
