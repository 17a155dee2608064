"""Locally conformally hyperkahler structures on almost abelian algebras.

Admissibility of the defining endomorphism D of R^{4m-1} x| R is decided
spectrally: D must be complex-diagonalizable with

  (i)   Spec(D) contained in a + iR for a single real a,
  (ii)  the real eigenvalue a of multiplicity at least 3,
  (iii) every nonreal eigenvalue of even multiplicity.

On the exact path everything is decided through the characteristic and
minimal polynomials (squarefree test, evenness, Sturm count, polynomial
square root), never through numeric eigenvalues.  The witness is built on
the canonical block form diag(C_1, .., C_{m-1}, a, a, a) with quaternion
matrices K_1, K_2, K_3 repeated along the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import EXACT, coerce, exact_sqrt, is_zero, resolve_eps, zero
from . import linalg
from .forms import KForm
from .hermitian import (ComplexStructure, HermitianStructure, Metric,
                        is_integrable, levi_civita, riemann_is_flat)
from .lie import LieAlgebra


class LchkError(ValueError):
    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


K1 = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
K2 = ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0))
K3 = ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0))


@dataclass(frozen=True)
class LchkVerdict:
    admissible: bool
    a: object = None
    multiplicities: tuple = ()          # ((b, mult) for b >= 0; b = 0 is the real eigenvalue)
    diagonalizable: bool = False
    condition_spectrum_line: bool = False   # (i)
    condition_real_multiplicity: bool = False  # (ii)
    condition_even_pairs: bool = False  # (iii)
    hyperkahler: bool = False
    notes: str = ""


@dataclass(frozen=True)
class HypercomplexTriple:
    I1: ComplexStructure
    I2: ComplexStructure
    I3: ComplexStructure
    g: Metric
    theta: KForm


def _is_exact(m) -> bool:
    return linalg.matrix_kind(m) == EXACT


def lchk_admissible(D, eps=None) -> LchkVerdict:
    """Spectral admissibility of D for the LCHK construction."""
    D = linalg.as_matrix(D)
    n = len(D)
    if any(len(row) != n for row in D):
        raise LchkError("BAD_DIMENSION", "D must be square")
    if n % 4 != 3:
        raise LchkError("BAD_DIMENSION", "D must be (4m-1) x (4m-1)")
    if _is_exact(D):
        return _admissible_exact(D)
    return _admissible_float(D, eps)


def _admissible_exact(D) -> LchkVerdict:
    n = len(D)
    mp = linalg.minpoly(D)
    g = linalg.poly_gcd(mp, linalg.poly_deriv(mp))
    diagonalizable = linalg.poly_deg(g) == 0
    a = Fraction(linalg.trace(D), n)
    shifted = linalg.mat_sub(D, linalg.mat_scale(a, linalg.idmat(n)))
    chi = linalg.charpoly(shifted)
    m0 = 0
    while m0 < len(chi) and chi[m0] == 0:
        m0 += 1
    h = chi[m0:]
    # (i): the nonzero spectrum of D - a is purely imaginary <=> h is even
    # with all roots of h(sqrt) real and negative
    even_ok = all(h[i] == 0 for i in range(1, len(h), 2))
    cond_i = even_ok
    mult_table = [(Fraction(0), m0)] if m0 else []
    hhat = None
    if even_ok:
        hhat = [h[2 * i] for i in range((len(h) + 1) // 2)]
        if linalg.poly_deg(hhat) > 0:
            all_real = (linalg.sturm_distinct_real_roots(
                linalg.poly_monic(linalg.poly_divmod(
                    hhat, linalg.poly_gcd(hhat, linalg.poly_deriv(hhat)))[0]))
                == linalg.poly_deg(linalg.poly_divmod(
                    hhat, linalg.poly_gcd(hhat, linalg.poly_deriv(hhat)))[0]))
            all_neg = all(c > 0 for c in hhat)
            cond_i = all_real and all_neg
        else:
            cond_i = True
    cond_ii = m0 >= 3
    cond_iii = False
    if cond_i and hhat is not None:
        if linalg.poly_deg(hhat) == 0:
            cond_iii = True
        else:
            cond_iii = linalg.poly_square_root(hhat) is not None
        # multiplicity table for reporting (float b values, exact counts)
        if linalg.poly_deg(hhat) > 0:
            roots = np.roots([float(c) for c in reversed(hhat)])
            reals = sorted({round(float(r.real), 9) for r in roots if abs(r.imag) < 1e-7})
            for beta in reals:
                mult = _root_multiplicity_exact(hhat, beta)
                if mult:
                    mult_table.append((float(np.sqrt(-beta)), mult))
    admissible = diagonalizable and cond_i and cond_ii and cond_iii
    return LchkVerdict(
        admissible=admissible,
        a=a if cond_i else None,
        multiplicities=tuple(mult_table),
        diagonalizable=diagonalizable,
        condition_spectrum_line=cond_i,
        condition_real_multiplicity=cond_ii,
        condition_even_pairs=cond_iii,
        hyperkahler=admissible and a == 0,
        notes="" if diagonalizable else "minimal polynomial is not squarefree",
    )


def _root_multiplicity_exact(poly, beta_float):
    """Multiplicity of a rational root close to beta_float, or 0."""
    beta = Fraction(beta_float).limit_denominator(10 ** 9)
    count = 0
    p = list(poly)
    while linalg.poly_deg(p) > 0 and linalg.poly_eval(p, beta) == 0:
        p, _ = linalg.poly_divmod(p, [-beta, Fraction(1)])
        count += 1
    return count


def _admissible_float(D, eps=None) -> LchkVerdict:
    n = len(D)
    eps = resolve_eps(eps)
    arr = np.array([[float(x) for x in row] for row in D])
    eigs = np.linalg.eigvals(arr)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    tol = 1e3 * eps * scale
    clusters = _cluster(eigs, tol)
    # diagonalizability: geometric multiplicity equals cluster size
    diagonalizable = True
    for center, members in clusters:
        geo = _nullity(arr - center * np.eye(n), tol)
        if geo != len(members):
            diagonalizable = False
    re_parts = sorted(c.real for c, _ in clusters)
    a = float(np.trace(arr)) / n
    cond_i = all(abs(c.real - a) <= tol for c, _ in clusters)
    m0 = sum(len(m) for c, m in clusters if abs(c.imag) <= tol)
    cond_ii = m0 >= 3
    cond_iii = all(len(m) % 2 == 0 for c, m in clusters if c.imag > tol)
    mult_table = [(0.0, m0)] if m0 else []
    for c, m in sorted(clusters, key=lambda t: -abs(t[0].imag)):
        if c.imag > tol:
            mult_table.append((abs(c.imag), len(m)))
    admissible = diagonalizable and cond_i and cond_ii and cond_iii
    return LchkVerdict(
        admissible=admissible,
        a=a if cond_i else None,
        multiplicities=tuple(mult_table),
        diagonalizable=diagonalizable,
        condition_spectrum_line=cond_i,
        condition_real_multiplicity=cond_ii,
        condition_even_pairs=cond_iii,
        hyperkahler=admissible and abs(a) <= tol,
    )


def _cluster(values, tol):
    clusters = []
    for v in values:
        for idx, (center, members) in enumerate(clusters):
            if abs(v - center) <= tol:
                members.append(v)
                clusters[idx] = (sum(members) / len(members), members)
                break
        else:
            clusters.append((v, [v]))
    return clusters


def _nullity(arr, tol):
    sv = np.linalg.svd(arr, compute_uv=False)
    return int(np.sum(sv <= max(tol, sv.max() * 1e-10 if sv.size else 0)))


def canonical_form(D, eps=None):
    """Change of basis bringing admissible D to diag(C_1,..,C_{m-1},a,a,a).

    Returns (P, D_canonical, a, blocks) with D P = P D_canonical; blocks is
    the list of rotation parameters b_i (zero blocks last).  Exact path
    requires the rotation parameters to be rational.
    """
    D = linalg.as_matrix(D)
    verdict = lchk_admissible(D, eps)
    if not verdict.admissible:
        raise LchkError("NOT_ADMISSIBLE", "D fails the spectral conditions")
    if not _is_exact(D):
        raise LchkError("FLOAT_UNSUPPORTED",
                        "canonical witness construction runs on the exact path")
    n = len(D)
    kind = EXACT
    a = verdict.a
    shifted = linalg.mat_sub(D, linalg.mat_scale(a, linalg.idmat(n)))
    chi = linalg.charpoly(shifted)
    m0 = 0
    while chi[m0] == 0:
        m0 += 1
    h = chi[m0:]
    hhat = [h[2 * i] for i in range((len(h) + 1) // 2)]
    bs = []  # (b, nu) with nu the number of C-blocks for this b
    if linalg.poly_deg(hhat) > 0:
        s = linalg.poly_square_root(hhat)
        roots, rem = linalg.rational_roots(s)
        if linalg.poly_deg(rem) > 0:
            raise LchkError("EXACT_IRRATIONAL",
                            "rotation parameters are irrational; no exact witness")
        for beta, nu in sorted(roots.items()):
            b = exact_sqrt(-beta)
            if b is None:
                raise LchkError("EXACT_IRRATIONAL",
                                "rotation parameter sqrt(-beta) is irrational")
            bs.append((b, nu))
    bs.sort(key=lambda t: t[0], reverse=True)
    columns = []
    blocks = []
    for b, nu in bs:
        w_mat = linalg.mat_add(linalg.mat_mul(shifted, shifted),
                               linalg.mat_scale(b * b, linalg.idmat(n)))
        w_basis = linalg.nullspace(w_mat, eps)
        assert len(w_basis) == 4 * nu, "eigenspace dimension mismatch"
        jhat_cols = [[x / b for x in linalg.mat_vec(shifted, w)] for w in w_basis]
        used = []

        def independent(v):
            if not used:
                return not linalg.is_zero_vector(v, eps)
            return linalg.rank(linalg.transpose(used + [v]), eps) > len(used)

        def jhat_apply(v):
            return [x / b for x in linalg.mat_vec(shifted, v)]

        remaining = list(w_basis)
        for _ in range(nu):
            quad = []
            u = next(v for v in remaining if independent(v))
            ju = jhat_apply(u)
            quad.extend([u, [-x for x in ju]])
            used.extend([u, ju])
            w = next(v for v in remaining if independent(v))
            jw = jhat_apply(w)
            quad.extend([w, jw])
            used.extend([w, jw])
            columns.extend(quad)
            blocks.append(b)
    kernel = linalg.nullspace(shifted, eps)
    assert len(kernel) == (n - len(columns))
    h_zero = (len(kernel) - 3) // 4
    for t in range(h_zero):
        columns.extend(kernel[4 * t: 4 * t + 4])
        blocks.append(zero(kind))
    columns.extend(kernel[4 * h_zero:])
    p = linalg.transpose(columns)
    dc = _canonical_matrix(a, blocks, n, kind)
    assert linalg.mat_eq(linalg.mat_mul(D, p), linalg.mat_mul(p, dc), eps), \
        "canonical form certificate failed"
    return p, dc, a, blocks


def _canonical_matrix(a, blocks, n, kind):
    dc = linalg.zeros(n, n, kind)
    pos = 0
    for b in blocks:
        c = [[a, b, 0, 0], [-b, a, 0, 0], [0, 0, a, -b], [0, 0, b, a]]
        for i in range(4):
            for j in range(4):
                dc[pos + i][pos + j] = coerce(c[i][j], kind)
        pos += 4
    for i in range(3):
        dc[pos + i][pos + i] = coerce(a, kind)
    return dc


def construct_lchk(D, eps=None):
    """Build the canonical-form algebra and its hypercomplex witness.

    Returns (L, triple, P, D_canonical) where L is the almost abelian
    algebra R^{4m-1} x|_{D_canonical} R, the triple carries (I1, I2, I3, g)
    with I_i = diag(K_i, .., K_i) and g the standard metric, and P
    certifies that the input D is conjugate to D_canonical.
    """
    p, dc, a, blocks = canonical_form(D, eps)
    n = len(dc)
    n2 = n + 1
    kind = EXACT
    m = n2 // 4
    brackets = {}
    for j in range(n):
        col = [zero(kind)] * n2
        nz = False
        for t in range(n):
            col[t] = -dc[t][j]
            nz = nz or not is_zero(dc[t][j], eps)
        if nz:
            brackets[(j, n2 - 1)] = col
    L = LieAlgebra(n2, brackets, kind=kind, _validated=True)
    structs = []
    for K in (K1, K2, K3):
        jm = linalg.zeros(n2, n2, kind)
        for blk in range(m):
            for i in range(4):
                for j in range(4):
                    jm[4 * blk + i][4 * blk + j] = coerce(K[i][j], kind)
        structs.append(ComplexStructure.from_matrix(jm, eps))
    g = Metric.identity(n2, kind)
    theta_coeff = -(4 * m - 2) * a
    theta = KForm(1, n2, {(n2 - 1,): theta_coeff}, kind=kind)
    triple = HypercomplexTriple(structs[0], structs[1], structs[2], g, theta)
    return L, triple, p, dc


def verify_triple(L: LieAlgebra, triple: HypercomplexTriple, eps=None):
    """Check every invariant of a hypercomplex LCK triple; returns a report."""
    i1, i2, i3 = triple.I1.matrix, triple.I2.matrix, triple.I3.matrix
    n = L.dim
    kind = L.kind
    report = {}
    report["quaternion_i1i2_eq_i3"] = linalg.mat_eq(linalg.mat_mul(i1, i2), i3, eps)
    prod = linalg.mat_mul(linalg.mat_mul(i1, i2), i3)
    report["quaternion_product"] = linalg.mat_eq(
        prod, linalg.mat_scale(coerce(-1, kind), linalg.idmat(n, kind)), eps)
    lee_forms = []
    for tag, J in (("I1", triple.I1), ("I2", triple.I2), ("I3", triple.I3)):
        report[f"integrable_{tag}"] = is_integrable(J, L, eps)
        H = HermitianStructure(L, J, triple.g, eps)
        lee_forms.append(H.lee_form())
        report[f"lck_{tag}"] = H.is_lck_direct(eps)
    report["lee_forms_equal"] = (lee_forms[0].equals(lee_forms[1], eps)
                                 and lee_forms[0].equals(lee_forms[2], eps))
    report["lee_form_matches"] = lee_forms[0].equals(triple.theta, eps)
    from .forms import exterior_derivative
    report["lee_form_closed"] = exterior_derivative(lee_forms[0], L).is_zero(eps)
    report["ok"] = all(v for k, v in report.items())
    return report


def hyperkahler_flatness(triple: HypercomplexTriple, L: LieAlgebra, eps=None) -> bool:
    """Left-invariant hyperkahler metrics are flat: assert zero curvature."""
    if not triple.theta.is_zero(eps):
        raise LchkError("PRECONDITION", "triple is not hyperkahler (theta != 0)")
    gamma = levi_civita(L, triple.g, eps)
    return riemann_is_flat(gamma, L, eps)
