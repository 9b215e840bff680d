"""Exhaustive cryptographic spectra: differential, Walsh, boomerang, DLCT.

Each operation enumerates its full table and reports the value multiset plus
the headline statistic.  The enumeration domains are fixed so the multiset
cardinalities are reproducible:

  differential  delta(a,b) over a != 0, all b        (2^n - 1) * 2^n values
  walsh         W(a,b) over all (a,b)                 2^(2n) values
  boomerang     beta(a,b) over a != 0, b != 0         (2^n - 1)^2 values
  dlct          DLCT(a,b) over a != 0, all b          (2^n - 1) * 2^n values

Headlines follow the defining maxima: Delta over a != 0 (all b), NL from the
largest |W| over a != 0 (all b), B and DL over a, b != 0.  In W(a,b) the mask
a applies to the output and b to the input.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .boolmap import NotAPermutation, invert, is_permutation

DOM_A_NONZERO = "a nonzero, all b"
DOM_ALL_PAIRS = "all (a,b)"
DOM_AB_NONZERO = "a nonzero, b nonzero"


@dataclass(frozen=True)
class SpectrumReport:
    """One spectrum: metric name, headline statistic, and the value multiset.

    multiset is a tuple of (value, count) pairs sorted ascending by value;
    domain names the enumerated (a,b) region.
    """

    metric: str
    n: int
    headline: int
    multiset: tuple
    domain: str

    def counts(self):
        return dict(self.multiset)

    def total(self):
        return sum(c for _, c in self.multiset)


def _tally(counter):
    return tuple(sorted(counter.items()))


def _parity_sign(words, mask):
    # (-1)^(popcount(words & mask)) as an int64 vector
    return 1 - 2 * (np.bitwise_count(words & np.int64(mask)).astype(np.int64) & 1)


def _wht(vec):
    # in-place size-doubling butterflies; vec is int64, length a power of two
    v = vec.copy()
    h = 1
    while h < v.size:
        v = v.reshape(-1, 2, h)
        a = v[:, 0, :] + v[:, 1, :]
        b = v[:, 0, :] - v[:, 1, :]
        v[:, 0, :] = a
        v[:, 1, :] = b
        v = v.reshape(-1)
        h *= 2
    return v


def differential_spectrum(f):
    """delta(a,b) = #{x : F(x+a) + F(x) = b}, tallied over a != 0 and all b."""
    n = f.n
    size = 1 << n
    x = np.arange(size, dtype=np.int64)
    ent = f.entries
    tally = Counter()
    best = 0
    for a in range(1, size):
        counts = np.bincount(ent ^ ent[x ^ a], minlength=size)
        vals, reps = np.unique(counts, return_counts=True)
        for v, r in zip(vals, reps):
            tally[int(v)] += int(r)
        best = max(best, int(counts.max()))
    return SpectrumReport("differential", n, best, _tally(tally), DOM_A_NONZERO)


def walsh_values(f, a):
    """Signed Walsh row W(a, .) for one output mask a, all input masks b."""
    return _wht(_parity_sign(f.entries, a))


def walsh_spectrum(f, cross_check=None):
    """Signed Walsh values over all (a,b); headline NL = 2^(n-1) - max|W|/2.

    The fast transform is checked against the direct-sum definition when
    cross_check is true (default: automatically for n <= 4).
    """
    n = f.n
    size = 1 << n
    if cross_check is None:
        cross_check = n <= 4
    tally = Counter()
    maxabs = 0
    rows = []
    for a in range(size):
        row = walsh_values(f, a)
        if cross_check:
            rows.append(row)
        vals, reps = np.unique(row, return_counts=True)
        for v, r in zip(vals, reps):
            tally[int(v)] += int(r)
        if a:
            maxabs = max(maxabs, int(np.abs(row).max()))
    if cross_check:
        x = np.arange(size, dtype=np.int64)
        kernel = 1 - 2 * (np.bitwise_count(x[:, None] & x[None, :]).astype(np.int64) & 1)
        signs = np.stack([_parity_sign(f.entries, a) for a in range(size)])
        direct = signs @ kernel
        if not np.array_equal(np.stack(rows), direct):
            raise AssertionError("fast Walsh transform disagrees with the direct sum")
    nl = (1 << (n - 1)) - maxabs // 2
    return SpectrumReport("walsh", n, nl, _tally(tally), DOM_ALL_PAIRS)


def boomerang_spectrum(f):
    """beta(a,b) = #{x : F^-1(F(x)+b) + F^-1(F(x+a)+b) = a} over a, b != 0."""
    ok, _ = is_permutation(f)
    if not ok:
        raise NotAPermutation("boomerang spectrum needs a permutation")
    n = f.n
    size = 1 << n
    inv = invert(f).entries
    ent = f.entries
    x = np.arange(size, dtype=np.int64)
    avec = np.arange(1, size, dtype=np.int64)
    xa = x[:, None] ^ avec[None, :]
    tally = Counter()
    best = 0
    for b in range(1, size):
        u = inv[ent ^ b]
        counts = (u[xa] ^ u[x][:, None] == avec[None, :]).sum(axis=0)
        vals, reps = np.unique(counts, return_counts=True)
        for v, r in zip(vals, reps):
            tally[int(v)] += int(r)
        best = max(best, int(counts.max()))
    return SpectrumReport("boomerang", n, best, _tally(tally), DOM_AB_NONZERO)


def dlct_spectrum(f):
    """DLCT(a,b) = #{x : b.F(x) = b.F(x+a)} - 2^(n-1) over a != 0, all b.

    Row a is half the transform of the output-difference histogram: with
    c_v = #{x : F(x)+F(x+a) = v}, DLCT(a,b) = (sum_v c_v (-1)^(b.v)) / 2.
    """
    n = f.n
    size = 1 << n
    x = np.arange(size, dtype=np.int64)
    ent = f.entries
    tally = Counter()
    best = None
    for a in range(1, size):
        counts = np.bincount(ent ^ ent[x ^ a], minlength=size)
        row = _wht(counts.astype(np.int64)) // 2
        vals, reps = np.unique(row, return_counts=True)
        for v, r in zip(vals, reps):
            tally[int(v)] += int(r)
        rb = int(row[1:].max())
        best = rb if best is None else max(best, rb)
    return SpectrumReport("dlct", n, best, _tally(tally), DOM_A_NONZERO)


def render_spectrum(report):
    """Compact {value^count, ...} rendering, count 1 printed bare.

    Values are ordered by absolute value, the negative sign first within a
    pair, mirroring the usual presentation of signed spectra.
    """
    items = sorted(report.multiset, key=lambda vc: (abs(vc[0]), vc[0]))
    parts = []
    for v, c in items:
        parts.append("%d^%d" % (v, c) if c != 1 else "%d" % v)
    return "{%s}" % ",".join(parts)


def report_to_json(report):
    doc = {
        "metric": report.metric,
        "n": report.n,
        "headline": report.headline,
        "spectrum": [[int(v), int(c)] for v, c in report.multiset],
        "domain": report.domain,
    }
    return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"
