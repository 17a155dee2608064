"""Alternating forms over a fixed basis, wedge product and the
Chevalley-Eilenberg differential.

A k-form stores coefficients only on strictly increasing index tuples
(0-based internally; reprs are 1-based to match the usual coframe
notation).  Values are immutable by convention: no method mutates `self`.

Sign convention, fixed package-wide: ``d alpha (X, Y) = -alpha([X, Y])``
on 1-forms, extended as an antiderivation.  With this choice a coframe
tuple such as ``(f16, 0, ...)`` round-trips: df^1 = f^1 ^ f^6 corresponds
to [f6, f1] = f1.
"""

from __future__ import annotations

from itertools import combinations

from .scalars import EXACT, coerce, is_zero, kind_of, zero
from .linalg import mat_vec, solve, LinAlgError


def sort_indices(indices):
    """Sort an index sequence, returning (tuple, parity sign) or None on dup."""
    idx = list(indices)
    sign = 1
    # insertion sort, counting inversions
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


class KForm:
    """Alternating k-form with sparse increasing-tuple coefficients."""

    __slots__ = ("degree", "dim", "kind", "coeffs")

    def __init__(self, degree, dim, coeffs=None, kind=None, eps=None):
        self.degree = degree
        self.dim = dim
        clean = {}
        k = kind
        for key, val in (coeffs or {}).items():
            if len(key) != degree:
                raise ValueError(f"key {key} has wrong length for degree {degree}")
            if any(not (0 <= i < dim) for i in key):
                raise ValueError(f"index out of range in {key}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"key {key} is not strictly increasing")
            if k is None:
                k = kind_of(val)
            val = coerce(val, k)
            if not is_zero(val, eps):
                clean[tuple(key)] = val
        self.kind = k if k is not None else (kind or EXACT)
        self.coeffs = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero_form(cls, degree, dim, kind=EXACT):
        return cls(degree, dim, {}, kind=kind)

    @classmethod
    def basis(cls, dim, *indices, kind=EXACT):
        """Basis monomial e^{i1} ^ ... ^ e^{ik} from 0-based indices."""
        srt = sort_indices(indices)
        if srt is None:
            return cls.zero_form(len(indices), dim, kind)
        key, sign = srt
        return cls(len(indices), dim, {key: coerce(sign, kind)}, kind=kind)

    @classmethod
    def from_vector(cls, comps):
        """Degree-1 form with the given coefficient list."""
        dim = len(comps)
        return cls(1, dim, {(i,): c for i, c in enumerate(comps)})

    # -- basic algebra ------------------------------------------------------
    def terms(self):
        return sorted(self.coeffs.items())

    def get(self, key):
        return self.coeffs.get(tuple(key), zero(self.kind))

    def is_zero(self, eps=None):
        return all(is_zero(v, eps) for v in self.coeffs.values())

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            out[key] = out.get(key, zero(self.kind)) + val
        return KForm(self.degree, self.dim, out, kind=self.kind)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s):
        s = coerce(s, self.kind)
        return KForm(self.degree, self.dim,
                     {k: s * v for k, v in self.coeffs.items()}, kind=self.kind)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.degree == other.degree and self.dim == other.dim
                and self.coeffs == other.coeffs)

    def equals(self, other, eps=None):
        if self.degree != other.degree or self.dim != other.dim:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(is_zero(self.get(k) - other.get(k), eps) for k in keys)

    def _check_compatible(self, other):
        if self.dim != other.dim:
            raise LinAlgError("forms live on different dimensions")
        if self.degree != other.degree:
            raise LinAlgError("forms have different degrees")
        if self.coeffs and other.coeffs and self.kind != other.kind:
            raise TypeError("mixed scalar kinds")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key, val in self.terms():
            label = "e" + ",".join(str(i + 1) for i in key) if key else "1"
            parts.append(f"{val}*{label}")
        return " + ".join(parts)

    # -- evaluation ---------------------------------------------------------
    def evaluate(self, vectors):
        """Evaluate on a list of self.degree vectors (full alternation)."""
        if len(vectors) != self.degree:
            raise LinAlgError("wrong number of arguments")
        if self.degree == 0:
            return self.coeffs.get((), zero(self.kind))
        total = zero(self.kind)
        for key, val in self.coeffs.items():
            total += val * _minor_det([[v[i] for v in vectors] for i in key])
        return total


def _minor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    sign = 1
    for j in range(n):
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = sign * rows[0][j] * _minor_det(sub)
        acc = term if acc is None else acc + term
        sign = -sign
    return acc


def wedge(alpha: KForm, beta: KForm) -> KForm:
    """Wedge product; bilinear and graded-anticommutative."""
    if alpha.dim != beta.dim:
        raise LinAlgError("forms live on different dimensions")
    degree = alpha.degree + beta.degree
    dim = alpha.dim
    kind = alpha.kind if alpha.coeffs else beta.kind
    if degree > dim:
        return KForm.zero_form(degree, dim, kind)
    out = {}
    for ka, va in alpha.coeffs.items():
        for kb, vb in beta.coeffs.items():
            srt = sort_indices(ka + kb)
            if srt is None:
                continue
            key, sign = srt
            out[key] = out.get(key, zero(kind)) + sign * va * vb
    return KForm(degree, dim, out, kind=kind)


def wedge_power(alpha: KForm, k: int) -> KForm:
    acc = KForm(0, alpha.dim, {(): 1 if alpha.kind == EXACT else 1.0}, kind=alpha.kind)
    for _ in range(k):
        acc = wedge(acc, alpha)
    return acc


def exterior_derivative(alpha: KForm, algebra) -> KForm:
    """Chevalley-Eilenberg differential of a left-invariant form."""
    if alpha.dim != algebra.dim:
        raise LinAlgError("form dimension does not match the algebra")
    dim = alpha.dim
    kind = alpha.kind
    out = KForm.zero_form(alpha.degree + 1, dim, kind)
    if alpha.degree == 0 or alpha.degree >= dim:
        return out
    dcoframe = algebra.coframe_differentials()
    acc = {}
    for key, val in alpha.coeffs.items():
        for pos, idx in enumerate(key):
            rest = key[:pos] + key[pos + 1:]
            sgn_pos = -1 if pos % 2 else 1
            for (p, q), w in dcoframe[idx].coeffs.items():
                srt = sort_indices((p, q) + rest)
                if srt is None:
                    continue
                merged, sgn = srt
                acc[merged] = acc.get(merged, zero(kind)) + sgn_pos * sgn * val * w
    return KForm(alpha.degree + 1, dim, acc, kind=kind)


def pullback(alpha: KForm, m) -> KForm:
    """Pullback along the linear map with matrix m: (m*a)(x,..) = a(mx,..)."""
    dim = alpha.dim
    kind = alpha.kind
    if alpha.degree == 0:
        return alpha
    out = {}
    for target in combinations(range(dim), alpha.degree):
        total = zero(kind)
        for key, val in alpha.coeffs.items():
            minor = [[m[s][t] for t in target] for s in key]
            total += val * _minor_det(minor)
        if not is_zero(total):
            out[target] = total
    return KForm(alpha.degree, dim, out, kind=kind)


def flat(vector, metric) -> KForm:
    """Musical isomorphism X -> g(X, .)."""
    return KForm.from_vector(mat_vec(metric, vector))


def sharp(alpha: KForm, metric, eps=None):
    """Inverse musical isomorphism on 1-forms."""
    if alpha.degree != 1:
        raise LinAlgError("sharp expects a 1-form")
    comps = [alpha.get((i,)) for i in range(alpha.dim)]
    x = solve(metric, comps, eps)
    if x is None:
        raise LinAlgError("degenerate metric")
    return x
