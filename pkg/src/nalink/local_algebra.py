"""Dimensions of local algebras at the origin of affine space, by truncation.

Polynomials in ``n`` variables are dicts ``{exponent tuple: Fraction}``.  For
an ideal ``I`` with isolated zero at the origin, ``dim k[x]_(x) / I`` equals
``dim k[x] / (I + M^D)`` for every ``D`` past the point where two consecutive
truncation levels agree (Nakayama), so the dimension is found by raising
``D`` until it stabilizes.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb


def monomials(nvars: int, degree: int):
    """Exponent tuples of total degree exactly ``degree``."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in combo:
            exp[i] += 1
        out.append(tuple(exp))
    return out


def derivative(p: dict, i: int) -> dict:
    out = {}
    for exp, c in p.items():
        if exp[i]:
            e = list(exp)
            e[i] -= 1
            out[tuple(e)] = out.get(tuple(e), 0) + c * exp[i]
    return {e: Fraction(c) for e, c in out.items() if c}


def _rank(rows):
    """Rank of sparse rows ``{column: Fraction}`` by elimination on leading columns."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = 1 / row[lead]
                pivots[lead] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
            factor = row[lead]
            for k, v in pivots[lead].items():
                nv = row.get(k, 0) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def truncated_dimension(generators, nvars: int, level: int) -> int:
    """``dim k[x] / (I + M^level)``."""
    basis = [m for d in range(level) for m in monomials(nvars, d)]
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in generators:
        low = min((sum(e) for e in g), default=level)
        for d in range(max(level - low, 0)):
            for m in monomials(nvars, d):
                row = {}
                for exp, c in g.items():
                    e = tuple(a + b for a, b in zip(exp, m))
                    if sum(e) < level:
                        row[index[e]] = row.get(index[e], 0) + c
                if row:
                    rows.append(row)
    return len(basis) - _rank(rows)


def local_dimension(generators, nvars: int, max_level: int = 64) -> int:
    """``dim`` of the local algebra at the origin; raises if it does not stabilize."""
    prev = None
    for level in range(1, max_level + 1):
        dim = truncated_dimension(generators, nvars, level)
        if dim == prev:
            return dim
        prev = dim
    raise ValueError("the local algebra is not finite dimensional within the search bound")


def tjurina_number(g: dict, nvars: int) -> int:
    """``dim O / (g, dg/dx_1, ..., dg/dx_n)`` at the origin."""
    gens = [g] + [derivative(g, i) for i in range(nvars)]
    return local_dimension([p for p in gens if p], nvars)


def a_type_equation(n: int) -> dict:
    """``XY - t^n`` in the variables ``(t, X, Y)``."""
    return {(0, 1, 1): Fraction(1), (n, 0, 0): Fraction(-1)}


def a_type_modulus(n: int) -> int:
    """Modulus oracle for the ``A_(n-1)`` point ``XY = t^n``: one plus its Tjurina number."""
    return 1 + tjurina_number(a_type_equation(n), 3)


def graded_dimensions(generators, nvars: int, top: int):
    """``dim M^i / M^(i+1)`` of ``k[x]/I`` at the origin for ``i = 0..top``."""
    dims = [truncated_dimension(generators, nvars, level) for level in range(top + 2)]
    return [dims[i + 1] - dims[i] for i in range(top + 1)]


def first_graded_drop(generators, nvars: int, top: int = 16):
    """Least ``i > 0`` with ``dim M^i/M^(i+1) < C(i + nvars - 1, nvars - 1)``, or ``None``.

    For the hypersurfaces ``XY = t^n`` this returns 1 when ``n = 1`` and 2 for
    every ``n >= 2``; it does not recover the modulus (see the README).
    """
    for i, d in enumerate(graded_dimensions(generators, nvars, top)):
        if i > 0 and d < comb(i + nvars - 1, nvars - 1):
            return i
    return None
