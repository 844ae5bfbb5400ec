"""Smith normal form over Z/ell^P, used to measure the index of a sublattice of Z_ell^n."""

from __future__ import annotations

from .padic import INF, valuation


def smith_valuations(rows, ell: int, P: int) -> list:
    """Elementary divisor valuations of the row span of ``rows`` inside (Z/ell^P)^n.

    Returns a list of length n (the number of columns); entries equal to P mean
    the divisor vanishes modulo ell^P, i.e. it is not determined at this precision.
    Z/ell^P is a local principal ideal ring, so pivoting on an entry of minimal
    valuation diagonalizes the matrix.
    """
    mod = ell**P
    A = [[x % mod for x in r] for r in rows]
    ncols = len(A[0]) if A else 0
    out = []
    r0 = 0
    for col in range(ncols):
        # find an entry of minimal valuation in the remaining block
        best, bi, bj = P, None, None
        for i in range(r0, len(A)):
            for j in range(col, ncols):
                if A[i][j]:
                    v = valuation(A[i][j], ell)
                    if v < best:
                        best, bi, bj = v, i, j
                        if v == 0:
                            break
            if best == 0:
                break
        if bi is None:
            out.extend([P] * (ncols - col))
            break
        A[r0], A[bi] = A[bi], A[r0]
        for row in A:
            row[col], row[bj] = row[bj], row[col]
        piv = A[r0][col]
        unit_inv = pow(piv // ell**best, -1, mod)
        # scale pivot row so the pivot is ell^best exactly
        A[r0] = [x * unit_inv % mod for x in A[r0]]
        for i in range(len(A)):
            if i != r0 and A[i][col]:
                q = A[i][col] // ell**best
                A[i] = [(x - q * y) % mod for x, y in zip(A[i], A[r0])]
        # column operations clear the pivot row; they do not change the other rows' pivot column (now 0)
        for j in range(col + 1, ncols):
            A[r0][j] = 0
        out.append(best)
        r0 += 1
    return out


def index_valuation(rows, ell: int, P: int) -> dict:
    """v_ell of [Z_ell^n : span(rows)], certified when every divisor is below P."""
    n = len(rows[0]) if rows else 0
    if not rows or n == 0:
        return {"valuation": None, "certified": False, "divisors": []}
    divs = smith_valuations(rows, ell, P)
    certified = all(d < P for d in divs)
    return {
        "valuation": sum(divs) if certified else None,
        "certified": certified,
        "divisors": divs,
    }


__all__ = ["smith_valuations", "index_valuation", "INF"]
