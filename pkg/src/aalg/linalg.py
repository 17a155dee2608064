"""Dense linear algebra over the dual scalar kernel.

Matrices are lists of row lists, vectors are flat lists.  Every routine
works uniformly for Fraction and float entries; decisions (pivoting, rank)
go through the tolerance for floats and are exact for Fractions.

Also hosts the small univariate polynomial toolkit (coefficient lists,
low degree first) needed for characteristic/minimal polynomials, Sturm
counts and square-root extraction of monic rational polynomials.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import EXACT, FLOAT, coerce, is_zero, kind_of, resolve_eps, zero, one


class LinAlgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# construction helpers

def matrix_kind(m) -> str:
    for row in m:
        for x in row:
            return kind_of(x)
    return EXACT


def vector_kind(v) -> str:
    for x in v:
        return kind_of(x)
    return EXACT


def as_matrix(rows, kind=None):
    if kind is None:
        kind = matrix_kind(rows)
    return [[coerce(x, kind) for x in row] for row in rows]


def as_vector(v, kind=None):
    if kind is None:
        kind = vector_kind(v)
    return [coerce(x, kind) for x in v]


def idmat(n, kind=EXACT):
    return [[one(kind) if i == j else zero(kind) for j in range(n)] for i in range(n)]


def zeros(n, m, kind=EXACT):
    return [[zero(kind) for _ in range(m)] for _ in range(n)]


def zero_vector(n, kind=EXACT):
    return [zero(kind) for _ in range(n)]


# ---------------------------------------------------------------------------
# arithmetic

def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    return [[s * x for x in row] for row in a]


def mat_mul(a, b):
    n, k = len(a), len(b)
    if any(len(row) != k for row in a):
        raise LinAlgError("inner dimension mismatch")
    m = len(b[0]) if k else 0
    bt = list(zip(*b))
    return [[sum(ra[t] * bc[t] for t in range(k)) for bc in bt] for ra in a]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise LinAlgError("matrix/vector dimension mismatch")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(s, u):
    return [s * x for x in u]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def gdot(g, u, v):
    """Inner product u^t G v."""
    return dot(u, mat_vec(g, v))


def transpose(a):
    return [list(row) for row in zip(*a)] if a else []


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_eq(a, b, eps=None) -> bool:
    if len(a) != len(b):
        return False
    return all(
        len(ra) == len(rb) and all(is_zero(x - y, eps) for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def vec_eq(u, v, eps=None) -> bool:
    return len(u) == len(v) and all(is_zero(x - y, eps) for x, y in zip(u, v))


def is_zero_matrix(a, eps=None) -> bool:
    return all(is_zero(x, eps) for row in a for x in row)


def is_zero_vector(v, eps=None) -> bool:
    return all(is_zero(x, eps) for x in v)


# ---------------------------------------------------------------------------
# elimination

def _pivot_row(col, rows_done, column_values, eps):
    """Index of the usable pivot row, or None.

    Exact path takes the first nonzero entry, float path the largest one.
    """
    best = None
    best_mag = None
    for r, x in column_values:
        if isinstance(x, Fraction):
            if x != 0:
                return r
        else:
            mag = abs(x)
            if mag > resolve_eps(eps) and (best_mag is None or mag > best_mag):
                best, best_mag = r, mag
    return best


def rref(a, eps=None):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        cand = [(i, m[i][c]) for i in range(r, nrows)]
        p = _pivot_row(c, r, cand, eps)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and not is_zero(m[i][c], eps):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, eps=None) -> int:
    if not a:
        return 0
    return len(rref(a, eps)[1])


def nullspace(a, eps=None):
    """Deterministic basis of the kernel (free variables in column order)."""
    if not a:
        return []
    ncols = len(a[0])
    r, pivots = rref(a, eps)
    kind = matrix_kind(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zero_vector(ncols, kind)
        v[f] = one(kind)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][f]
        basis.append(v)
    return basis


def solve(a, b, eps=None):
    """Solve the square system a x = b; returns None when singular."""
    n = len(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug, eps)
    if pivots != list(range(n)):
        return None
    return [r[i][n] for i in range(n)]


def solve_general(a, b, eps=None):
    """A particular solution of a x = b (not necessarily square), or None."""
    if not a:
        return None
    ncols = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug, eps)
    if ncols in pivots:
        return None  # inconsistent
    kind = matrix_kind(a)
    x = zero_vector(ncols, kind)
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][ncols]
    return x


def inverse(a, eps=None):
    n = len(a)
    kind = matrix_kind(a)
    aug = [list(row) + irow for row, irow in zip(a, idmat(n, kind))]
    r, pivots = rref(aug, eps)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in r]


def det(a, eps=None):
    """Determinant by fraction-free-ish Gaussian elimination with pivoting."""
    n = len(a)
    kind = matrix_kind(a)
    m = [list(row) for row in a]
    sign = one(kind)
    acc = one(kind)
    for c in range(n):
        cand = [(i, m[i][c]) for i in range(c, n)]
        p = _pivot_row(c, c, cand, eps)
        if p is None:
            return zero(kind)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        pv = m[c][c]
        acc *= pv
        for i in range(c + 1, n):
            f = m[i][c] / pv
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * acc


def column_space_basis(vectors, eps=None):
    """Greedy subset of `vectors` that is linearly independent (stable order)."""
    basis = []
    for v in vectors:
        if is_zero_vector(v, eps):
            continue
        if not basis:
            basis.append(v)
            continue
        if rank(transpose(basis + [v]), eps) > len(basis):
            basis.append(v)
    return basis


def is_positive_definite(g, eps=None) -> bool:
    """Sylvester criterion on leading principal minors."""
    n = len(g)
    for k in range(1, n + 1):
        minor = det([row[:k] for row in g[:k]], eps)
        if isinstance(minor, Fraction):
            if minor <= 0:
                return False
        elif minor <= resolve_eps(eps):
            return False
    return True


# ---------------------------------------------------------------------------
# univariate polynomials (coefficient lists, low degree first)

def poly_trim(p, eps=None):
    q = list(p)
    while len(q) > 1 and is_zero(q[-1], eps):
        q.pop()
    return q


def poly_deg(p) -> int:
    return len(poly_trim(p)) - 1


def poly_add(p, q):
    n = max(len(p), len(q))
    kind = kind_of(p[0]) if p else EXACT
    out = [zero(kind)] * n
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return poly_trim(out)


def poly_scale(s, p):
    return [s * c for c in p]


def poly_mul(p, q):
    kind = kind_of(p[0])
    out = [zero(kind)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q, eps=None):
    q = poly_trim(q, eps)
    if q == [q[0]] and is_zero(q[0], eps):
        raise ZeroDivisionError("polynomial division by zero")
    kind = kind_of(q[-1])
    rem = list(poly_trim(p, eps))
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        return [zero(kind)], rem
    quot = [zero(kind)] * (len(rem) - dq)
    lead = q[-1]
    for k in range(len(rem) - dq - 1, -1, -1):
        c = rem[k + dq] / lead
        quot[k] = c
        if c != 0:
            for j in range(dq + 1):
                rem[k + j] -= c * q[j]
    return poly_trim(quot, eps), poly_trim(rem, eps)


def poly_monic(p, eps=None):
    p = poly_trim(p, eps)
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p, q, eps=None):
    """Monic gcd over the rationals (Euclid)."""
    a, b = poly_trim(p, eps), poly_trim(q, eps)
    while not (len(b) == 1 and is_zero(b[0], eps)):
        _, r = poly_divmod(a, b, eps)
        a, b = b, r
    return poly_monic(a, eps)


def poly_lcm(p, q, eps=None):
    g = poly_gcd(p, q, eps)
    quot, rem = poly_divmod(poly_mul(p, q), g, eps)
    assert poly_deg(poly_trim(rem, eps)) == 0 and is_zero(rem[0], eps)
    return poly_monic(quot, eps)


def poly_deriv(p):
    if len(p) <= 1:
        return [zero(kind_of(p[0]))]
    return [i * c for i, c in enumerate(p)][1:]


def poly_eval(p, x):
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def poly_eval_matrix(p, m):
    n = len(m)
    kind = matrix_kind(m)
    acc = mat_scale(coerce(p[-1], kind), idmat(n, kind))
    for c in reversed(p[:-1]):
        acc = mat_add(mat_mul(acc, m), mat_scale(coerce(c, kind), idmat(n, kind)))
    return acc


def poly_from_roots(roots, kind=EXACT):
    p = [one(kind)]
    for r in roots:
        p = poly_mul(p, [-r, one(kind)])
    return p


def charpoly(m):
    """Characteristic polynomial det(xI - M) via Faddeev-LeVerrier."""
    n = len(m)
    kind = matrix_kind(m)
    coeffs = [zero(kind)] * (n + 1)
    coeffs[n] = one(kind)
    mk = idmat(n, kind)
    for k in range(1, n + 1):
        am = mat_mul(m, mk)
        ck = -trace(am) / k if kind == FLOAT else Fraction(-trace(am), k)
        coeffs[n - k] = ck
        mk = mat_add(am, mat_scale(ck, idmat(n, kind)))
    return coeffs


def minpoly(m, eps=None):
    """Minimal polynomial (monic) via Krylov chains; exact on Fractions."""
    n = len(m)
    kind = matrix_kind(m)
    result = [one(kind)]
    for start in range(n):
        if poly_deg(result) == n:
            break
        v = zero_vector(n, kind)
        v[start] = one(kind)
        krylov = [v]
        while True:
            w = mat_vec(m, krylov[-1])
            sol = solve_general(transpose(krylov), w, eps)
            if sol is not None:
                ann = [-c for c in sol] + [one(kind)]
                result = poly_lcm(result, poly_trim(ann, eps), eps)
                break
            krylov.append(w)
    return result


def sturm_distinct_real_roots(p, eps=None) -> int:
    """Number of distinct real roots of p (exact coefficients)."""
    p = poly_trim(p, eps)
    if poly_deg(p) == 0:
        return 0
    sf, _ = poly_divmod(p, poly_gcd(p, poly_deriv(p), eps), eps)
    chain = [poly_trim(sf, eps), poly_trim(poly_deriv(sf), eps)]
    while poly_deg(chain[-1]) > 0 or not is_zero(chain[-1][0], eps):
        _, r = poly_divmod(chain[-2], chain[-1], eps)
        r = poly_trim(r, eps)
        if len(r) == 1 and is_zero(r[0], eps):
            break
        chain.append([-c for c in r])

    def sign_changes(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)

    at_pos = []
    at_neg = []
    for q in chain:
        lead = q[-1]
        d = len(q) - 1
        s = 0 if is_zero(lead, eps) else (1 if lead > 0 else -1)
        at_pos.append(s)
        at_neg.append(s if d % 2 == 0 else -s)
    return sign_changes(at_neg) - sign_changes(at_pos)


def poly_square_root(p, eps=None):
    """s with s^2 = p for monic p of even degree, else None (exact path)."""
    p = poly_trim(p, eps)
    d2 = poly_deg(p)
    if d2 % 2 != 0 or p[-1] != 1:
        return None
    d = d2 // 2
    kind = kind_of(p[0])
    s = [zero(kind)] * (d + 1)
    s[d] = one(kind)
    for k in range(d - 1, -1, -1):
        acc = p[k + d]
        for i in range(k + 1, d):
            j = k + d - i
            if k < j <= d:
                acc -= s[i] * s[j]
        s[k] = acc / 2
    return s if poly_mul(s, s) == p else None


def rational_roots(p):
    """Rational roots of an exact polynomial with multiplicities.

    Returns (roots: dict Fraction -> int, remaining polynomial).
    """
    p = poly_trim(p)
    kind = kind_of(p[0])
    if kind != EXACT:
        raise LinAlgError("rational_roots requires exact coefficients")
    roots = {}
    # root at zero
    while len(p) > 1 and p[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = p[1:]
    if poly_deg(p) == 0:
        return roots, p
    from math import lcm

    den = lcm(*[Fraction(c).denominator for c in p])
    ip = [int(Fraction(c) * den) for c in p]
    a0, ad = abs(ip[0]), abs(ip[-1])

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.add(d)
                out.add(n // d)
            d += 1
        return sorted(out)

    candidates = set()
    for num in divisors(a0):
        for dd in divisors(ad):
            candidates.add(Fraction(num, dd))
            candidates.add(Fraction(-num, dd))
    for r in sorted(candidates):
        while poly_deg(p) > 0 and poly_eval(p, r) == 0:
            p, rem = poly_divmod(p, [-r, Fraction(1)])
            roots[r] = roots.get(r, 0) + 1
    return roots, poly_trim(p)
