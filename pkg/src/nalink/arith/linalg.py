"""Exact dense linear algebra: Bareiss determinants, solving, definiteness."""

from __future__ import annotations

from fractions import Fraction


class _Ops:
    """Ring operations used by :func:`bareiss_det`; the default uses Python operators."""

    zero = 0
    one = 1

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        if isinstance(a, int) and isinstance(b, int):
            q, r = divmod(a, b)
            assert r == 0, "Bareiss division must be exact"
            return q
        return a / b


SCALAR_OPS = _Ops()


def bareiss_det(matrix, ops=SCALAR_OPS):
    """Determinant by fraction-free elimination with row pivoting.

    Works over any integral domain for which ``ops`` supplies exact division,
    e.g. integers, field elements, or univariate polynomials.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return ops.one
    sign = 1
    prev = ops.one
    for k in range(n - 1):
        if ops.is_zero(m[k][k]):
            swap = next((r for r in range(k + 1, n) if not ops.is_zero(m[r][k])), None)
            if swap is None:
                return ops.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ops.sub(ops.mul(m[i][j], pivot), ops.mul(m[i][k], m[k][j]))
                m[i][j] = ops.exact_div(num, prev)
            m[i][k] = ops.zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else ops.neg(det)


def det(matrix):
    return bareiss_det(matrix)


def leading_minors(matrix):
    """Determinants of the leading principal k x k submatrices, k = 1..n."""
    return [det([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def is_negative_definite(matrix) -> bool:
    """Sylvester's criterion for ``-M``: ``(-1)^k * minor_k > 0`` for every k."""
    for k, minor in enumerate(leading_minors(matrix), start=1):
        if (minor if k % 2 == 0 else -minor) <= 0:
            return False
    return True


def solve(a, b):
    """Solve ``a x = b`` over a field by Gauss-Jordan elimination; ``a`` must be invertible."""
    n = len(a)
    m = [[Fraction(v) if isinstance(v, int) else v for v in row] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * w for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def inverse(a):
    n = len(a)
    cols = [solve(a, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]
