"""Hermitian structures on Lie algebras: integrability, Lee form, the
direct metric predicates, Levi-Civita and Bismut connections, and the
Bismut-Ricci curvature oracle.

Conventions, fixed package-wide and spelled out in the README:

* fundamental form  omega(X, Y) = g(JX, Y);
* d alpha (X, Y) = -alpha([X, Y]);
* d^c omega = -d omega (J., J., J.);
* Bismut connection  g(D^B_X Y, Z) = g(D_X Y, Z) + 1/2 d omega(JX, JY, JZ),
  the unique sign for which D^B g = 0, D^B J = 0 and the torsion is a
  3-form under the two conventions above;
* Bismut-Ricci  rho^B(X, Y) = -1/2 sum_i g(R^B(X, Y) f_i, J f_i) over a
  g-orthonormal frame, evaluated basis-free as a trace against g^{-1}.

Connection tables and wedge powers are computed once per structure and
cached on the instance; instances are otherwise immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalars import EXACT, coerce, is_zero, one
from . import linalg
from .forms import KForm, exterior_derivative, pullback, wedge, wedge_power
from .lie import LieAlgebra


class HermitianError(ValueError):
    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class ComplexStructure:
    """Almost complex structure J with J^2 = -Id."""

    J: tuple

    @classmethod
    def from_matrix(cls, j, eps=None):
        j = linalg.as_matrix(j)
        n = len(j)
        kind = linalg.matrix_kind(j)
        if not linalg.mat_eq(linalg.mat_mul(j, j),
                             linalg.mat_scale(coerce(-1, kind), linalg.idmat(n, kind)), eps):
            raise HermitianError("NOT_COMPLEX", "J^2 != -Id")
        return cls(tuple(tuple(row) for row in j))

    @classmethod
    def from_pairs(cls, dim, pairs, kind=EXACT):
        """J from a pairing list: for (i, j), J e_i = e_j and J e_j = -e_i."""
        m = linalg.zeros(dim, dim, kind)
        seen = set()
        for i, j in pairs:
            if i in seen or j in seen or i == j:
                raise HermitianError("BAD_PAIRING", f"index reused in pairs at ({i}, {j})")
            seen.update((i, j))
            m[j][i] = one(kind)
            m[i][j] = -one(kind)
        if len(seen) != dim:
            raise HermitianError("BAD_PAIRING", "pairs do not cover every basis index")
        return cls(tuple(tuple(row) for row in m))

    @property
    def matrix(self):
        return [list(row) for row in self.J]

    def apply(self, v):
        return linalg.mat_vec(self.matrix, v)


@dataclass(frozen=True)
class Metric:
    """Symmetric positive-definite bilinear form."""

    g: tuple

    @classmethod
    def from_matrix(cls, g, eps=None):
        g = linalg.as_matrix(g)
        if not linalg.mat_eq(g, linalg.transpose(g), eps):
            raise HermitianError("NOT_SYMMETRIC", "metric matrix is not symmetric")
        if not linalg.is_positive_definite(g, eps):
            raise HermitianError("NOT_POSITIVE_DEFINITE", "metric is not positive definite")
        return cls(tuple(tuple(row) for row in g))

    @classmethod
    def identity(cls, dim, kind=EXACT):
        return cls(tuple(tuple(row) for row in linalg.idmat(dim, kind)))

    @property
    def matrix(self):
        return [list(row) for row in self.g]


class HermitianStructure:
    """A Lie algebra with a compatible (J, g); omega = g(J., .)."""

    def __init__(self, L: LieAlgebra, J: ComplexStructure, g: Metric, eps=None):
        if len(J.J) != L.dim or len(g.g) != L.dim:
            raise HermitianError("DIMENSION", "J or g dimension does not match the algebra")
        if L.dim % 2 != 0:
            raise HermitianError("DIMENSION", "Hermitian structures need even dimension")
        jm, gm = J.matrix, g.matrix
        if not linalg.mat_eq(linalg.mat_mul(linalg.transpose(jm), linalg.mat_mul(gm, jm)),
                             gm, eps):
            raise HermitianError("NOT_COMPATIBLE", "g(J., J.) != g")
        self.L = L
        self.J = J
        self.g = g
        self.eps = eps
        om = linalg.mat_mul(linalg.transpose(jm), gm)
        coeffs = {}
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                if not is_zero(om[i][j], eps):
                    coeffs[(i, j)] = om[i][j]
        self.omega = KForm(2, L.dim, coeffs, kind=L.kind)
        self._cache = {}

    @property
    def dim(self):
        return self.L.dim

    @property
    def n(self):
        return self.L.dim // 2

    def _memo(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    # -- integrability --------------------------------------------------------
    def nijenhuis(self):
        return nijenhuis(self.J, self.L)

    def is_integrable(self, eps=None) -> bool:
        return is_integrable(self.J, self.L, eps if eps is not None else self.eps)

    def _require_integrable(self):
        if not self.is_integrable():
            raise HermitianError("NON_INTEGRABLE", "J has nonvanishing Nijenhuis tensor")

    # -- Lee form -------------------------------------------------------------
    def domega(self):
        return self._memo("domega", lambda: exterior_derivative(self.omega, self.L))

    def omega_power(self, k):
        return self._memo(("omega_pow", k), lambda: wedge_power(self.omega, k))

    def lee_form(self):
        """Unique theta with d(omega^(n-1)) = theta ^ omega^(n-1)."""
        return self._memo("lee", self._compute_lee)

    def _compute_lee(self):
        n2 = self.dim
        n = self.n
        if n2 < 4:
            raise HermitianError("DIMENSION", "the Lee form needs dim >= 4")
        om_pow = self.omega_power(n - 1)
        target = exterior_derivative(om_pow, self.L)
        keys = [tuple(t for t in range(n2) if t != missing) for missing in range(n2)]
        rows = []
        for key in keys:
            row = []
            for i in range(n2):
                row.append(wedge(KForm.basis(n2, i, kind=self.L.kind), om_pow).get(key))
            rows.append(row)
        rhs = [target.get(key) for key in keys]
        theta = linalg.solve(rows, rhs, self.eps)
        if theta is None:
            raise HermitianError("SINGULAR", "omega is degenerate")
        return KForm.from_vector(theta)

    # -- direct predicates ------------------------------------------------------
    def is_kahler_direct(self, eps=None) -> bool:
        self._require_integrable()
        return self.domega().is_zero(eps)

    def is_balanced_direct(self, eps=None) -> bool:
        self._require_integrable()
        return exterior_derivative(self.omega_power(self.n - 1), self.L).is_zero(eps)

    def is_lck_direct(self, eps=None) -> bool:
        self._require_integrable()
        theta = self.lee_form()
        if not exterior_derivative(theta, self.L).is_zero(eps):
            return False
        lhs = self.domega().scale(self.n - 1)
        rhs = wedge(theta, self.omega)
        return lhs.equals(rhs, eps)

    def is_lcb_direct(self, eps=None) -> bool:
        self._require_integrable()
        return exterior_derivative(self.lee_form(), self.L).is_zero(eps)

    def dc_omega(self):
        """d^c omega = -d omega (J., J., J.)."""
        return self._memo("dc", lambda: pullback(self.domega(), self.J.matrix).scale(-1))

    def is_skt_direct(self, eps=None) -> bool:
        self._require_integrable()
        return exterior_derivative(self.dc_omega(), self.L).is_zero(eps)

    # -- connections ------------------------------------------------------------
    def levi_civita(self):
        """Connection tables Gamma[i] = matrix of Y -> D_{e_i} Y."""
        return self._memo("lc", lambda: levi_civita(self.L, self.g, self.eps))

    def bismut_connection(self):
        return self._memo("bismut", self._compute_bismut)

    def _compute_bismut(self):
        self._require_integrable()
        lc = self.levi_civita()
        n2 = self.dim
        gm = self.g.matrix
        ginv = linalg.inverse(gm, self.eps)
        jm = self.J.matrix
        sigma = pullback(self.domega(), jm)  # sigma(X,Y,Z) = domega(JX,JY,JZ)
        half = coerce(1, self.L.kind) / 2
        gamma = []
        for i in range(n2):
            lower = linalg.zeros(n2, n2, self.L.kind)
            for j in range(n2):
                for l in range(n2):
                    key = _sorted_key((i, j, l))
                    if key is None:
                        continue
                    idx, sign = key
                    val = sigma.get(idx)
                    if not is_zero(val, self.eps):
                        lower[l][j] = sign * half * val
            gamma.append(linalg.mat_add(lc[i], linalg.mat_mul(ginv, lower)))
        return gamma

    def is_vaisman(self, eps=None):
        """LCK with Levi-Civita-parallel Lee form; returns (bool, note)."""
        self._require_integrable()
        theta = self.lee_form()
        comps = [theta.get((i,)) for i in range(self.dim)]
        lc = self.levi_civita()
        parallel = all(
            is_zero(sum(lc[i][k][j] * comps[k] for k in range(self.dim)), eps)
            for i in range(self.dim) for j in range(self.dim))
        if not self.is_lck_direct(eps):
            return False, "not LCK"
        if theta.is_zero(eps):
            return parallel, "Kahler"
        return parallel, "parallel" if parallel else "theta not parallel"

    # -- curvature ---------------------------------------------------------------
    def bismut_ricci_oracle(self):
        """rho^B by the curvature trace over an orthonormal frame."""
        return self._memo("rho", self._compute_rho)

    def _compute_rho(self):
        gamma = self.bismut_connection()
        gm = self.g.matrix
        jm = self.J.matrix
        ginv = linalg.inverse(gm, self.eps)
        weight = linalg.mat_mul(ginv, linalg.mat_mul(linalg.transpose(jm), gm))
        n2 = self.dim
        half = coerce(1, self.L.kind) / 2
        coeffs = {}
        for i in range(n2):
            for j in range(i + 1, n2):
                r = curvature_operator(gamma, self.L, i, j)
                val = -half * linalg.trace(linalg.mat_mul(weight, r))
                if not is_zero(val, self.eps):
                    coeffs[(i, j)] = val
        return KForm(2, n2, coeffs, kind=self.L.kind)


def _sorted_key(indices):
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return None
    return tuple(idx), sign


def nijenhuis(J: ComplexStructure, L: LieAlgebra):
    """N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y] on basis pairs."""
    jm = J.matrix
    n = L.dim
    kind = L.kind
    out = {}
    cols = linalg.transpose(jm)  # cols[i] = J e_i
    for i in range(n):
        for j in range(i + 1, n):
            ji, jj = cols[i], cols[j]
            ei = linalg.zero_vector(n, kind)
            ei[i] = coerce(1, kind)
            ej = linalg.zero_vector(n, kind)
            ej[j] = coerce(1, kind)
            term = L.bracket(list(ji), list(jj))
            term = linalg.vec_sub(term, linalg.mat_vec(jm, L.bracket(list(ji), ej)))
            term = linalg.vec_sub(term, linalg.mat_vec(jm, L.bracket(ei, list(jj))))
            term = linalg.vec_sub(term, L.basis_bracket(i, j))
            if not linalg.is_zero_vector(term):
                out[(i, j)] = term
    return out


def is_integrable(J: ComplexStructure, L: LieAlgebra, eps=None) -> bool:
    return all(linalg.is_zero_vector(v, eps) for v in nijenhuis(J, L).values())


def levi_civita(L: LieAlgebra, g: Metric, eps=None):
    """Koszul connection on left-invariant fields; Gamma[i] maps Y to D_{e_i}Y."""
    gm = g.matrix
    ginv = linalg.inverse(gm, eps)
    if ginv is None:
        raise HermitianError("NOT_POSITIVE_DEFINITE", "metric is degenerate")
    n = L.dim
    kind = L.kind
    half = coerce(1, kind) / 2
    gammas = []
    for i in range(n):
        lower = linalg.zeros(n, n, kind)
        for j in range(n):
            bij = L.basis_bracket(i, j)
            for l in range(n):
                val = linalg.gdot(gm, bij, _basis(n, l, kind))
                val -= linalg.gdot(gm, L.basis_bracket(j, l), _basis(n, i, kind))
                val += linalg.gdot(gm, L.basis_bracket(l, i), _basis(n, j, kind))
                lower[l][j] = half * val
        gammas.append(linalg.mat_mul(ginv, lower))
    return gammas


def _basis(n, i, kind):
    v = linalg.zero_vector(n, kind)
    v[i] = coerce(1, kind)
    return v


def torsion_tensor(gamma, L: LieAlgebra):
    """T(e_i, e_j) = D_i e_j - D_j e_i - [e_i, e_j]."""
    n = L.dim
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            col_ij = [gamma[i][k][j] for k in range(n)]
            col_ji = [gamma[j][k][i] for k in range(n)]
            vec = linalg.vec_sub(linalg.vec_sub(col_ij, col_ji), L.basis_bracket(i, j))
            out[(i, j)] = vec
    return out


def torsion_is_totally_skew(gamma, L: LieAlgebra, g: Metric, eps=None) -> bool:
    """g(T(X, Y), Z) alternating in all three arguments.

    Antisymmetry in (X, Y) is structural, so it suffices that the lowered
    tensor kills repeated indices and is antisymmetric in the last two slots.
    """
    n = L.dim
    gm = g.matrix
    tor = torsion_tensor(gamma, L)
    lowered = {key: linalg.mat_vec(gm, vec) for key, vec in tor.items()}
    for (i, j), gv in lowered.items():
        if not (is_zero(gv[i], eps) and is_zero(gv[j], eps)):
            return False
        for l in range(n):
            if l in (i, j):
                continue
            pair = (i, l) if i < l else (l, i)
            sgn = 1 if i < l else -1
            if not is_zero(gv[l] + sgn * lowered[pair][j], eps):
                return False
    return True


def connection_preserves_metric(gamma, g: Metric, eps=None) -> bool:
    """D g = 0: with constant g this is Gamma_i^t G + G Gamma_i = 0."""
    gm = g.matrix
    for gi in gamma:
        m = linalg.mat_mul(gm, gi)
        if not linalg.mat_eq(m, linalg.mat_scale(-1, linalg.transpose(m)), eps):
            return False
    return True


def connection_preserves_tensor(gamma, t, eps=None) -> bool:
    """D t = 0 for an endomorphism t: [Gamma_i, t] = 0 for all i."""
    return all(linalg.is_zero_matrix(linalg.commutator(gi, t), eps) for gi in gamma)


def covariant_derivative_one_form(gamma, comps):
    """(D_i theta)(e_j) = -theta(D_i e_j); returns the matrix over (i, j)."""
    n = len(gamma)
    return [[-sum(gamma[i][k][j] * comps[k] for k in range(n)) for j in range(n)]
            for i in range(n)]


def curvature_operator(gamma, L: LieAlgebra, i, j):
    """R(e_i, e_j) = [Gamma_i, Gamma_j] - Gamma_{[e_i, e_j]}."""
    n = L.dim
    r = linalg.commutator(gamma[i], gamma[j])
    bij = L.basis_bracket(i, j)
    for t, c in enumerate(bij):
        if not is_zero(c):
            r = linalg.mat_sub(r, linalg.mat_scale(c, gamma[t]))
    return r


def riemann_is_flat(gamma, L: LieAlgebra, eps=None) -> bool:
    n = L.dim
    return all(
        linalg.is_zero_matrix(curvature_operator(gamma, L, i, j), eps)
        for i in range(n) for j in range(i + 1, n))
