"""Adapted bases and the (a, v, A) data calculus for Hermitian almost
abelian Lie algebras.

An adapted frame is (b_1, u_1, .., u_{2n-2}, b_{2n}) with:

* b_{2n} spanning the g-orthogonal complement of the abelian ideal n,
* b_1 = -J b_{2n},
* u_* a g-orthogonal basis of n_1 = n intersect J n arranged in J-stable
  pairs (u, Ju), so the matrix of J on n_1 is always block-diagonal with
  2x2 rotation blocks regardless of normalization.

On the exact path frames are normalized only when the squared norms are
perfect rational squares; all predicates and the closed Lee/Bismut-Ricci
formulas below carry the exact scale corrections, so verdicts are exact
for any rational input.  Data produced by :func:`build_algebra` is always
orthonormal and matches the adapted-basis block form

    B = [[a, 0], [v, A]],   A commuting with J_1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import EXACT, coerce, is_zero, one, sqrt_scalar, zero
from . import linalg
from .forms import KForm, flat
from .hermitian import ComplexStructure, Metric, is_integrable
from .lie import LieAlgebra, Subspace, find_codim1_abelian_ideal


class DataError(ValueError):
    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class HermitianData:
    """The (a, v, A) package together with the frame that realizes it.

    ``frame`` lists 2n vectors in the ambient coordinates, ordered
    (b_1, u_1, .., u_{2n-2}, b_{2n}).  ``d_outer`` is the common squared
    norm of b_1 and b_{2n}; ``d_inner`` the squared norms of the u_i
    (equal within each J-pair).  A fully orthonormal frame has all of
    them equal to one.
    """

    n: int
    a: object
    v: tuple
    A: tuple
    J1: tuple
    frame: tuple
    d_outer: object
    d_inner: tuple
    kind: str

    @property
    def m(self) -> int:
        return 2 * self.n - 2

    @property
    def A_matrix(self):
        return [list(row) for row in self.A]

    @property
    def J1_matrix(self):
        return [list(row) for row in self.J1]

    @property
    def v_vector(self):
        return list(self.v)

    def gram_n1(self):
        return [[self.d_inner[i] if i == j else zero(self.kind)
                 for j in range(self.m)] for i in range(self.m)]

    def adjoint_A(self, eps=None):
        """g-adjoint of A on n_1: S^-1 A^t S with S the frame Gram matrix."""
        s = self.gram_n1()
        sinv = linalg.inverse(s, eps)
        return linalg.mat_mul(sinv, linalg.mat_mul(linalg.transpose(self.A_matrix), s))

    def v_norm_sq(self):
        return sum(self.d_inner[i] * self.v[i] * self.v[i] for i in range(self.m))

    def is_orthonormal(self) -> bool:
        ok = self.d_outer == one(self.kind) or is_zero(self.d_outer - 1)
        return ok and all(is_zero(d - 1) for d in self.d_inner)

    def gauge_invariants(self, eps=None):
        """Quantities independent of the unitary gauge in the adapted frame."""
        from .linalg import charpoly
        ahat = self.A_matrix
        return {
            "a": self.a,
            "trace_A": linalg.trace(ahat),
            "v_norm_sq": self.v_norm_sq(),
            "charpoly_A": charpoly(ahat),
            "rank_A": linalg.rank(ahat, eps),
        }


def standard_j1(m, kind=EXACT):
    """Consecutive-pair complex structure on R^m (m even)."""
    pairs = [(2 * t, 2 * t + 1) for t in range(m // 2)]
    return ComplexStructure.from_pairs(m, pairs, kind=kind).matrix


def build_algebra(a, v, A, J1, eps=None):
    """Almost abelian algebra from adapted data; inverse of extract_data.

    Returns (LieAlgebra, ComplexStructure, Metric) on the basis
    (e_1, eps_1..eps_m, e_2n) with brackets [e_2n, e_1] = a e_1 + v and
    [e_2n, .]|n_1 = A.
    """
    m = len(A)
    kind = linalg.matrix_kind(A) if m else (linalg.vector_kind(v) or EXACT)
    a = coerce(a, kind)
    v = linalg.as_vector(v, kind)
    A = linalg.as_matrix(A, kind)
    J1 = linalg.as_matrix(J1, kind)
    if len(v) != m or len(J1) != m:
        raise DataError("DIMENSION", "v, A, J1 must share the n_1 dimension")
    if not linalg.mat_eq(linalg.mat_mul(A, J1), linalg.mat_mul(J1, A), eps):
        raise DataError("COMMUTATION", "A does not commute with J1")
    n2 = m + 2
    brackets = {}
    col0 = [a] + v
    vec = [zero(kind)] * n2
    vec[0] = -a
    for t in range(m):
        vec[1 + t] = -v[t]
    if any(not is_zero(x, eps) for x in vec):
        brackets[(0, n2 - 1)] = vec
    for s in range(m):
        col = [zero(kind)] * n2
        for t in range(m):
            col[1 + t] = -A[t][s]
        if any(not is_zero(x, eps) for x in col):
            brackets[(1 + s, n2 - 1)] = col
    L = LieAlgebra(n2, brackets, kind=kind, _validated=True)
    jm = linalg.zeros(n2, n2, kind)
    jm[n2 - 1][0] = one(kind)   # J e_1 = e_2n
    jm[0][n2 - 1] = -one(kind)
    for s in range(m):
        for t in range(m):
            jm[1 + t][1 + s] = J1[t][s]
    J = ComplexStructure.from_matrix(jm, eps)
    g = Metric.identity(n2, kind)
    return L, J, g


def data_from_parts(a, v, A, J1, kind=None):
    """HermitianData on the standard orthonormal frame (no ambient algebra)."""
    m = len(A)
    if kind is None:
        kind = linalg.matrix_kind(A) if m else EXACT
    n2 = m + 2
    frame = []
    for i in range(n2):
        e = [zero(kind)] * n2
        e[i] = one(kind)
        frame.append(tuple(e))
    return HermitianData(
        n=n2 // 2,
        a=coerce(a, kind),
        v=tuple(coerce(x, kind) for x in v),
        A=tuple(tuple(coerce(x, kind) for x in row) for row in A),
        J1=tuple(tuple(coerce(x, kind) for x in row) for row in J1),
        frame=tuple(frame),
        d_outer=one(kind),
        d_inner=tuple(one(kind) for _ in range(m)),
        kind=kind,
    )


def extract_data(L: LieAlgebra, ideal: Subspace | None, J: ComplexStructure,
                 g: Metric, eps=None) -> HermitianData:
    """Read the (a, v, A) data off a Hermitian almost abelian algebra.

    The ideal may be passed explicitly (required when it is not unique);
    otherwise it is detected.  The frame is produced by deterministic
    Gram-Schmidt in J-stable pairs, lowest ambient index first.
    """
    n2 = L.dim
    kind = L.kind
    if ideal is None:
        ideal = find_codim1_abelian_ideal(L, eps)
        if ideal is None:
            raise DataError("IDEAL_NOT_ABELIAN", "no codimension-one abelian ideal")
    if ideal.dim != n2 - 1:
        raise DataError("IDEAL_NOT_ABELIAN", "ideal is not a hyperplane")
    vecs = [list(v) for v in ideal.vectors]
    for x in range(len(vecs)):
        for y in range(x + 1, len(vecs)):
            if not linalg.is_zero_vector(L.bracket(vecs[x], vecs[y]), eps):
                raise DataError("IDEAL_NOT_ABELIAN", "declared ideal is not abelian")
    for i in range(n2):
        ei = [zero(kind)] * n2
        ei[i] = one(kind)
        for v in vecs:
            if not ideal.contains(L.bracket(ei, v), eps):
                raise DataError("IDEAL_NOT_ABELIAN", "declared subspace is not an ideal")
    if not is_integrable(J, L, eps):
        raise DataError("J_NOT_COMPATIBLE", "J is not integrable")
    gm = g.matrix
    jm = J.matrix
    # b_2n spans the g-orthogonal complement of n
    perp = linalg.nullspace([linalg.mat_vec(gm, v) for v in vecs], eps)
    if len(perp) != 1:
        raise DataError("IDEAL_NOT_ABELIAN", "orthogonal complement is not a line")
    b2n = perp[0]
    for x in b2n:
        if not is_zero(x, eps):
            if (isinstance(x, Fraction) and x < 0) or (not isinstance(x, Fraction) and x < 0):
                b2n = [-t for t in b2n]
            break
    b1 = [-x for x in linalg.mat_vec(jm, b2n)]
    d_outer = linalg.gdot(gm, b2n, b2n)
    scale = sqrt_scalar(d_outer)
    if scale is not None and not is_zero(scale - 1, eps):
        b2n = [x / scale for x in b2n]
        b1 = [x / scale for x in b1]
        d_outer = one(kind)
    # n_1 = n intersect J n: solve xi(x) = 0 and xi(Jx) = 0 for the
    # defining covector xi of n
    xi = linalg.mat_vec(gm, perp[0])
    xiJ = linalg.mat_vec(linalg.transpose(jm), xi)
    n1_basis = linalg.nullspace([xi, xiJ], eps)
    if len(n1_basis) != n2 - 2:
        raise DataError("J_NOT_COMPATIBLE", "n intersect Jn has wrong dimension")
    # deterministic J-paired Gram-Schmidt inside n_1
    pairs = []
    used = []

    def project_out(x):
        out = list(x)
        for w, dw in used:
            c = linalg.gdot(gm, out, w) / dw
            out = linalg.vec_sub(out, linalg.vec_scale(c, w))
        return out

    for cand in n1_basis:
        if len(used) == n2 - 2:
            break
        u = project_out(cand)
        if linalg.is_zero_vector(u, eps):
            continue
        du = linalg.gdot(gm, u, u)
        s = sqrt_scalar(du)
        if s is not None and not is_zero(s - 1, eps):
            u = [x / s for x in u]
            du = one(kind)
        ju = linalg.mat_vec(jm, u)
        pairs.append((u, ju, du))
        used.append((u, du))
        used.append((ju, du))
    if 2 * len(pairs) != n2 - 2:
        raise DataError("J_NOT_COMPATIBLE", "could not build a J-paired frame")
    frame = [b1] + [w for (u, ju, _) in pairs for w in (u, ju)] + [b2n]
    d_inner = [d for (_, _, d) in pairs for _ in (0, 1)]
    m = n2 - 2
    # expansion of ad_{b2n} in the frame
    full = linalg.transpose(frame)
    full_inv = linalg.inverse(full, eps)
    img = [linalg.mat_vec(full_inv, L.bracket(b2n, w)) for w in frame[:-1]]
    a = img[0][0]
    v = [img[0][1 + t] for t in range(m)]
    if not is_zero(img[0][n2 - 1], eps):
        raise DataError("IDEAL_NOT_ABELIAN", "[e_2n, e_1] leaves the ideal")
    A = [[img[1 + s][1 + t] for s in range(m)] for t in range(m)]
    for s in range(m):
        if not (is_zero(img[1 + s][0], eps) and is_zero(img[1 + s][n2 - 1], eps)):
            raise DataError("J_NOT_COMPATIBLE", "ad does not preserve the block form")
    j1 = linalg.zeros(m, m, kind)
    jcols = [linalg.mat_vec(full_inv, linalg.mat_vec(jm, frame[1 + s])) for s in range(m)]
    for s in range(m):
        if not (is_zero(jcols[s][0], eps) and is_zero(jcols[s][n2 - 1], eps)):
            raise DataError("J_NOT_COMPATIBLE", "J does not preserve n_1")
        for t in range(m):
            j1[t][s] = jcols[s][1 + t]
    A_m = A
    J1_m = j1
    if not linalg.mat_eq(linalg.mat_mul(A_m, J1_m), linalg.mat_mul(J1_m, A_m), eps):
        raise DataError("J_NOT_COMPATIBLE", "A does not commute with J1")
    return HermitianData(
        n=n2 // 2,
        a=a,
        v=tuple(v),
        A=tuple(tuple(row) for row in A_m),
        J1=tuple(tuple(row) for row in J1_m),
        frame=tuple(tuple(w) for w in frame),
        d_outer=d_outer,
        d_inner=tuple(d_inner),
        kind=kind,
    )


# ---------------------------------------------------------------------------
# predicates (pure linear algebra on the data)

def is_kahler_data(d: HermitianData, eps=None) -> bool:
    if not linalg.is_zero_vector(d.v_vector, eps):
        return False
    astar = d.adjoint_A(eps)
    return linalg.mat_eq(astar, linalg.mat_scale(-1, d.A_matrix), eps)


def is_lck_data(d: HermitianData, eps=None) -> bool:
    m = d.m
    if d.n == 2 and linalg.is_zero_matrix(d.A_matrix, eps):
        return True
    if not linalg.is_zero_vector(d.v_vector, eps):
        return False
    lam = linalg.trace(d.A_matrix) / m
    u = linalg.mat_sub(d.A_matrix, linalg.mat_scale(lam, linalg.idmat(m, d.kind)))
    ustar = linalg.mat_sub(d.adjoint_A(eps),
                           linalg.mat_scale(lam, linalg.idmat(m, d.kind)))
    return linalg.mat_eq(ustar, linalg.mat_scale(-1, u), eps)


def is_balanced_data(d: HermitianData, eps=None) -> bool:
    return (linalg.is_zero_vector(d.v_vector, eps)
            and is_zero(linalg.trace(d.A_matrix), eps))


def is_skt_data(d: HermitianData, eps=None) -> bool:
    """[A, A*] = 0 and the eigenvalues of A have real part -a/2 or 0.

    For a g-normal A the real parts are the eigenvalues of the symmetric
    part S, so the spectral condition is the identity S(S + a/2) = 0.
    The ratio a/2 uses the unit-frame normalization, which cancels the
    frame scale exactly.
    """
    am = d.A_matrix
    astar = d.adjoint_A(eps)
    if not linalg.is_zero_matrix(linalg.commutator(am, astar), eps):
        return False
    m = d.m
    half = coerce(1, d.kind) / 2
    s = linalg.mat_scale(half, linalg.mat_add(am, astar))
    shift = linalg.mat_add(s, linalg.mat_scale(d.a * half, linalg.idmat(m, d.kind)))
    return linalg.is_zero_matrix(linalg.mat_mul(s, shift), eps)


def is_lcb_data(d: HermitianData, eps=None) -> bool:
    return linalg.is_zero_vector(linalg.mat_vec(d.adjoint_A(eps), d.v_vector), eps)


DATA_PREDICATES = {
    "kahler": is_kahler_data,
    "lck": is_lck_data,
    "balanced": is_balanced_data,
    "skt": is_skt_data,
    "lcb": is_lcb_data,
}


# ---------------------------------------------------------------------------
# closed formulas

def _frame_coframe_form(d: HermitianData, idx):
    """The ambient 1-form dual to frame vector idx (0 = b_1, -1 = b_2n)."""
    full = linalg.transpose([list(w) for w in d.frame])
    inv = linalg.inverse(full)
    return KForm.from_vector(inv[idx])


def lee_form_closed(d: HermitianData, eps=None) -> KForm:
    """theta = (Jv)^flat - (tr A) e^{2n} in unit-frame terms.

    With a scaled adapted frame the exact corrections are
    theta = (1/d) (J1 v)^flat - (tr A) b^{2n}, where d is the squared norm
    of the outer frame pair and flats are taken with the honest metric.
    """
    n2 = 2 * d.n
    m = d.m
    kind = d.kind
    jv = linalg.mat_vec(d.J1_matrix, d.v_vector)
    full = linalg.transpose([list(w) for w in d.frame])
    inv = linalg.inverse(full, eps)
    comps = [zero(kind)] * n2
    for t in range(m):
        # (J1 v)^flat in the frame coframe: coefficient d_inner[t] * (Jv)_t / d_outer
        comps[1 + t] = d.d_inner[t] * jv[t] / d.d_outer
    comps[n2 - 1] -= linalg.trace(d.A_matrix)
    # convert frame-coframe coefficients to ambient coordinates
    out = [zero(kind)] * n2
    for i in range(n2):
        for t in range(n2):
            out[i] += comps[t] * inv[t][i]
    return KForm.from_vector(out)


def rho_b_closed(d: HermitianData, eps=None) -> KForm:
    """Bismut-Ricci form from the data:

    rho^B = -(a^2 - a tr A / 2 + |v|^2) e^1 ^ e^{2n} - (A^t v)^flat ^ e^{2n}

    in unit-frame terms, with the exact scale corrections for a merely
    orthogonal frame (the first coefficient picks up 1/d on |v|^2, the
    second a global 1/d).
    """
    n2 = 2 * d.n
    m = d.m
    kind = d.kind
    full = linalg.transpose([list(w) for w in d.frame])
    inv = linalg.inverse(full, eps)
    b_co = [KForm.from_vector(inv[t]) for t in range(n2)]
    half = coerce(1, kind) / 2
    coeff = -(d.a * d.a - half * d.a * linalg.trace(d.A_matrix)
              + d.v_norm_sq() / d.d_outer)
    from .forms import wedge
    out = wedge(b_co[0], b_co[n2 - 1]).scale(coeff)
    atv = linalg.mat_vec(d.adjoint_A(eps), d.v_vector)
    # (A* v)^flat in frame-coframe coordinates, scaled by 1/d_outer
    comps = [zero(kind)] * n2
    for t in range(m):
        comps[1 + t] = d.d_inner[t] * atv[t] / d.d_outer
    lowered = [zero(kind)] * n2
    for i in range(n2):
        for t in range(n2):
            lowered[i] += comps[t] * inv[t][i]
    out = out - wedge(KForm.from_vector(lowered), b_co[n2 - 1])
    return out


def adapted_J_matrix(d: HermitianData):
    """Ambient J reconstructed from the frame (for type checks)."""
    n2 = 2 * d.n
    kind = d.kind
    jm = linalg.zeros(n2, n2, kind)
    jm[n2 - 1][0] = one(kind)
    jm[0][n2 - 1] = -one(kind)
    for s in range(d.m):
        for t in range(d.m):
            jm[1 + t][1 + s] = d.J1[t][s]
    full = linalg.transpose([list(w) for w in d.frame])
    inv = linalg.inverse(full)
    return linalg.mat_mul(full, linalg.mat_mul(jm, inv))


def is_type_11(rho: KForm, J, eps=None) -> bool:
    """rho(J., J.) = rho."""
    from .forms import pullback
    jm = J.matrix if isinstance(J, ComplexStructure) else J
    return pullback(rho, jm).equals(rho, eps)


def lcb_iff_type_11(d: HermitianData, eps=None):
    """Consistency report for: LCB <=> rho^B of type (1,1)."""
    rho = rho_b_closed(d, eps)
    jm = adapted_J_matrix(d)
    t11 = is_type_11(rho, jm, eps)
    lcb = is_lcb_data(d, eps)
    n1_vanish = True
    n2 = 2 * d.n
    full = linalg.transpose([list(w) for w in d.frame])
    for s in range(d.m):
        x = [full[i][1 + s] for i in range(n2)]
        for j in range(n2):
            ej = [zero(d.kind)] * n2
            ej[j] = one(d.kind)
            if not is_zero(rho.evaluate([x, ej]), eps):
                n1_vanish = False
    return {
        "is_lcb": lcb,
        "rho_type_11": t11,
        "rho_vanishes_on_n1": n1_vanish,
        "equivalent": lcb == t11 == n1_vanish,
    }


def skt_to_lcb(d: HermitianData, eps=None) -> HermitianData:
    """From SKT data to LCB data on the same (algebra, J).

    Splits v = (A - a)x + v' with v' the g-orthogonal projection onto
    the cokernel of A - a Id, and rebases e_1' = e_1 - x.  The output
    data (a, v', A) is LCB; when a != 0 it has v' = 0 exactly.
    """
    if not is_skt_data(d, eps):
        raise DataError("PRECONDITION", "input data is not SKT")
    m = d.m
    kind = d.kind
    am = d.A_matrix
    shifted = linalg.mat_sub(am, linalg.mat_scale(d.a, linalg.idmat(m, kind)))
    # cokernel: null space of (A - a)^* with respect to the frame Gram matrix
    s = d.gram_n1()
    sinv = linalg.inverse(s, eps)
    shifted_star = linalg.mat_mul(sinv, linalg.mat_mul(linalg.transpose(shifted), s))
    kernel = linalg.nullspace(shifted_star, eps)
    if kernel:
        cols = linalg.transpose(kernel)
        gram = [[linalg.gdot(s, u, w) for w in kernel] for u in kernel]
        gram_inv = linalg.inverse(gram, eps)
        coeffs = linalg.mat_vec(gram_inv,
                                [linalg.gdot(s, u, d.v_vector) for u in kernel])
        vprime = linalg.mat_vec(cols, coeffs)
    else:
        vprime = [zero(kind)] * m
    # the frame is nominal here: the ambient realization of the new data is
    # produced by skt_to_lcb_metric; the rebased outer pair is unit by fiat
    return HermitianData(
        n=d.n, a=d.a, v=tuple(vprime), A=d.A, J1=d.J1,
        frame=d.frame, d_outer=one(kind), d_inner=d.d_inner, kind=kind)


def skt_to_lcb_metric(L: LieAlgebra, J: ComplexStructure, g: Metric,
                      d: HermitianData, eps=None) -> Metric:
    """The LCB metric produced by the rebasing, in ambient coordinates.

    Writes v = (A - a)x + v', replaces b_1 by b_1 - X (X the ambient lift
    of x) and b_2n by J(b_1 - X), and declares the new frame orthonormal.
    """
    if not is_skt_data(d, eps):
        raise DataError("PRECONDITION", "input data is not SKT")
    m = d.m
    kind = d.kind
    am = d.A_matrix
    shifted = linalg.mat_sub(am, linalg.mat_scale(d.a, linalg.idmat(m, kind)))
    dprime = skt_to_lcb(d, eps)
    rhs = linalg.vec_sub(d.v_vector, dprime.v_vector)
    x = linalg.solve_general(shifted, rhs, eps)
    if x is None:
        raise DataError("PRECONDITION", "projection split failed")
    n2 = 2 * d.n
    frame = [list(w) for w in d.frame]
    lift = [zero(kind)] * n2
    for t in range(m):
        lift = linalg.vec_add(lift, linalg.vec_scale(x[t], frame[1 + t]))
    b1p = linalg.vec_sub(frame[0], lift)
    b2np = linalg.mat_vec(J.matrix, b1p)
    new_frame = [b1p] + frame[1:-1] + [b2np]
    p = linalg.transpose(new_frame)
    pinv = linalg.inverse(p, eps)
    # squared norms assigned to the new frame: n_1 keeps its old ones, the
    # rebased outer pair is declared unit
    weights = [one(kind)] + list(d.d_inner) + [one(kind)]
    gp = [[sum(weights[t] * pinv[t][i] * pinv[t][j] for t in range(n2))
           for j in range(n2)] for i in range(n2)]
    return Metric.from_matrix(gp, eps)
