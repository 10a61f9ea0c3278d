"""Exact integer and rational matrix routines.

Matrices are tuples of tuples of Python ints (or Fractions where noted),
row-major.  Everything here is exact; no floating point.  Sizes in this
toolkit stay small (rank <= ~12), so the classical algorithms below are
the right tool: Hermite normal form with transform for integer kernels
and saturations, fraction Gaussian elimination for solving, and
Faddeev-LeVerrier for characteristic polynomials.
"""
from fractions import Fraction
from math import gcd


def freeze(rows):
    """Normalize a matrix-like into a tuple of tuples."""
    return tuple(tuple(row) for row in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n, m):
    return tuple((0,) * m for _ in range(n))


def transpose(M):
    return tuple(zip(*M)) if M else ()


def mat_mul(A, B):
    Bt = tuple(zip(*B))
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A
    )


def mat_vec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * x for x in v)


def is_zero_vec(v):
    return all(x == 0 for x in v)


def primitive(v):
    """Divide an integer vector by the gcd of its entries; sign-normalize
    so the first nonzero entry is positive.  Zero vector raises."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    w = tuple(x // g for x in v)
    for x in w:
        if x != 0:
            return w if x > 0 else tuple(-y for y in w)
    raise AssertionError("unreachable")


def hnf(rows):
    """Row-style Hermite normal form of the lattice spanned by `rows`.

    Returns the canonical basis: pivots positive, entries above each pivot
    reduced into [0, pivot), zero rows dropped, rows ordered by pivot
    column.  The output depends only on the row lattice, which makes it a
    deterministic normal form for bases and kernels.
    """
    H, _ = hnf_with_transform(rows)
    return tuple(r for r in H if not is_zero_vec(r))


def hnf_with_transform(rows):
    """Return (H, U) with U unimodular and U @ rows == H in row HNF.

    H keeps zero rows (at the bottom) so that U stays square.
    """
    M = [list(r) for r in rows]
    n = len(M)
    U = [list(r) for r in identity(n)]
    ncols = len(M[0]) if n else 0
    r = 0
    for c in range(ncols):
        if r == n:
            break
        # gcd-eliminate column c below row r into row r
        piv = None
        for i in range(r, n):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, n):
            while M[i][c] != 0:
                q = M[r][c] // M[i][c]
                if q:
                    M[r] = [a - q * b for a, b in zip(M[r], M[i])]
                    U[r] = [a - q * b for a, b in zip(U[r], U[i])]
                M[r], M[i] = M[i], M[r]
                U[r], U[i] = U[i], U[r]
        if M[r][c] == 0:
            continue
        if M[r][c] < 0:
            M[r] = [-a for a in M[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            if q:
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return freeze(M), freeze(U)


def int_kernel(M):
    """Canonical basis of {x integer : M x = 0}, as rows.

    HNF with transform applied to M^T: rows of the transform matching zero
    rows of the HNF span the kernel lattice, which is automatically
    saturated.  Result is HNF-canonicalized.
    """
    Mt = transpose(M)
    if not Mt:
        n = len(M[0]) if M else 0
        return identity(n)
    H, U = hnf_with_transform(Mt)
    ker = [u for h, u in zip(H, U) if is_zero_vec(h)]
    return hnf(ker) if ker else ()


def saturation(rows):
    """Saturate the row lattice: (Q-span of rows) intersected with Z^n.

    Computed as the integer kernel of the integer kernel; kernels of
    integer matrices are saturated, so two applications land exactly on
    the primitive closure.  Returns the canonical (HNF) basis.
    """
    rows = freeze(rows)
    if not rows:
        return ()
    K = int_kernel(rows)
    if not K:
        return hnf(identity(len(rows[0])))
    return int_kernel(K)


def rank_of(rows):
    """Rank over the rationals."""
    return len(hnf(rows))


def solve_rational(A, b):
    """Solve A x = b over Q. Returns a tuple of Fractions, or None if
    inconsistent.  When the solution is underdetermined, free variables
    are set to zero (callers here only use it on full-column-rank A)."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = None
        for i in range(r, m):
            if M[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        f = M[r][c]
        M[r] = [x / f for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                g = M[i][c]
                M[i] = [a - g * bb for a, bb in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for ri, c in enumerate(piv_cols):
        x[c] = M[ri][n]
    return tuple(x)


def solve_integer(A, b):
    """Solve A x = b over Q and require an integer solution; None otherwise."""
    x = solve_rational(A, b)
    if x is None or any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def inverse_rational(A):
    """Exact inverse of a square rational/integer matrix, as Fractions."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = None
        for i in range(c, n):
            if M[i][c] != 0:
                p = i
                break
        if p is None:
            raise ValueError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        f = M[c][c]
        M[c] = [x / f for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                g = M[i][c]
                M[i] = [a - g * b for a, b in zip(M[i], M[c])]
    return freeze(row[n:] for row in M)


def inverse_unimodular(U):
    """Integer inverse of a unimodular matrix (raises if non-integral)."""
    inv = inverse_rational(U)
    out = []
    for row in inv:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def charpoly(M):
    """Characteristic polynomial det(xI - M) of an integer matrix.

    Faddeev-LeVerrier with exact rationals; coefficients are returned as
    ints, highest degree first (monic).
    """
    n = len(M)
    coeffs = [Fraction(1)]
    Mk = None
    F = [[Fraction(x) for x in row] for row in M]
    A = None
    for k in range(1, n + 1):
        if A is None:
            A = [row[:] for row in F]
        else:
            # A <- M (A + c I)
            c = coeffs[-1]
            B = [[A[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
            A = [[sum(F[i][t] * B[t][j] for t in range(n)) for j in range(n)]
                 for i in range(n)]
        tr = sum(A[i][i] for i in range(n))
        coeffs.append(-tr / k)
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return tuple(out)


def poly_divmod(num, den):
    """Divide integer polynomials (coefficient tuples, highest degree first).

    Returns (quotient, remainder) over Q with exact Fraction arithmetic;
    both are returned as tuples of Fractions.
    """
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[0] == 0:
        den = den[1:]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = []
    while len(num) >= len(den) and any(c != 0 for c in num):
        f = num[0] / den[0]
        q.append(f)
        for i in range(len(den)):
            num[i] -= f * den[i]
        assert num[0] == 0
        num = num[1:]
    while num and num[0] == 0 and len(num) > 1:
        num = num[1:]
    return tuple(q) if q else (Fraction(0),), tuple(num) if num else (Fraction(0),)


def euler_phi(d):
    out = d
    p = 2
    dd = d
    while p * p <= dd:
        if dd % p == 0:
            while dd % p == 0:
                dd //= p
            out -= out // p
        p += 1
    if dd > 1:
        out -= out // dd
    return out


def cyclotomic_polys(max_degree):
    """All cyclotomic polynomials Phi_d with phi(d) <= max_degree.

    Returns {d: coefficient tuple}.  Computed by the recursive exact
    division Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
    """
    # phi(d) >= sqrt(d/2), so phi(d) <= D forces d <= 2 D^2 + 1
    bound = 2 * max_degree * max_degree + 1
    phis = {}
    for d in range(1, bound + 1):
        if euler_phi(d) > max_degree:
            continue
        num = (1,) + (0,) * (d - 1) + (-1,)  # x^d - 1
        poly = tuple(Fraction(c) for c in num)
        for e, pe in phis.items():
            if d % e == 0 and e < d:
                poly, rem = poly_divmod(poly, pe)
                assert all(c == 0 for c in rem)
        assert all(c.denominator == 1 for c in poly)
        phis[d] = tuple(int(c) for c in poly)
    return phis


def strip_cyclotomic_factors(poly, max_degree):
    """Divide out every cyclotomic factor (with multiplicity).

    Returns (orders, residual): `orders` is the multiset of d's whose
    Phi_d divided the polynomial, `residual` the leftover integer-
    coefficient polynomial (constants mean all eigenvalues are roots of
    unity).  A nonconstant residual certifies an eigenvalue off the
    roots of unity, hence an infinite-order matrix.
    """
    phis = cyclotomic_polys(max_degree)
    cur = tuple(Fraction(c) for c in poly)
    orders = []
    changed = True
    while changed:
        changed = False
        for d in sorted(phis):
            pe = phis[d]
            if len(cur) < len(pe):
                continue
            q, rem = poly_divmod(cur, pe)
            if all(c == 0 for c in rem):
                cur = q
                orders.append(d)
                changed = True
    residual = tuple(int(c) if c.denominator == 1 else c for c in cur)
    return tuple(orders), residual
