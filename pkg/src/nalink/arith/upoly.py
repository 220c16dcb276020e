"""Dense univariate polynomials over any exact field.

A polynomial is a list of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is ``[]``.  Coefficients may be ``Fraction`` or
``AlgebraicNumber``; only ring operators and ``== 0`` are used, so the same
code serves every level of a field tower.
"""

from __future__ import annotations

from fractions import Fraction


def trim(p):
    p = [Fraction(c) if type(c) is int else c for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    if c == 0:
        return []
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(p, q):
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    p = trim(p)
    if len(p) < len(q):
        return [], p
    inv_lead = 1 / q[-1]
    rem = list(p)
    quot = [Fraction(0)] * (len(p) - len(q) + 1)
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] * inv_lead
        quot[k] = c
        if c != 0:
            for i, b in enumerate(q):
                rem[k + i] = rem[k + i] - c * b
    return trim(quot), trim(rem[: len(q) - 1])


def exact_div(p, q):
    quot, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(p):
    p = trim(p)
    if not p:
        return []
    if p[-1] == 1:
        return p
    inv = 1 / p[-1]
    return [c * inv for c in p]


def gcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def ext_gcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quot, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quot, s1))
        t0, t1 = t1, sub(t0, mul(quot, t1))
    if not r0:
        return [], s0, t0
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def deriv(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 2:
        return monic(p)
    return monic(exact_div(p, gcd(p, deriv(p))))


def root_multiplicity(p, r) -> int:
    count = 0
    lin = [-r, Fraction(1)]
    p = trim(p)
    while p:
        quot, rem = divmod_(p, lin)
        if rem:
            break
        count += 1
        p = quot
    return count


def _fmt_coeff(c) -> str:
    s = str(c)
    if any(ch in s for ch in "+ ") or (s.startswith("-") and any(ch in s[1:] for ch in "+-")):
        return f"({s})"
    return s


def to_str(p, var: str = "z") -> str:
    """Human-readable form, highest degree first, e.g. ``z^2 + 1``."""
    p = trim(p)
    if not p:
        return "0"
    pieces = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = _fmt_coeff(c)
        elif c == 1:
            body = mono
        elif c == -1:
            body = "-" + mono
        else:
            body = f"{_fmt_coeff(c)}*{mono}"
        pieces.append(body)
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-") and not piece.startswith("-("):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out
