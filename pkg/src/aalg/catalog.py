"""Machine-readable catalog of the named algebras and their witnesses.

Each entry stores a structure-equation template over parameters with
constraints, a unimodularity locus, and one or more witness recipes:

* ``DataWitness`` -- adapted data (a, v, A, J1) plus an optional change of
  basis (S, c) identifying the built algebra with the entry's own basis:
  S ad_built S^-1 = c * ad_entry.  The Hermitian structure is transported
  onto the entry algebra before any predicate is checked.
* ``ExplicitWitness`` -- a J given by a pairing list on the entry basis
  plus a metric (identity by default).

verify_all instantiates every entry at several exact parameter samples,
checks the witness claims through both the data-level and the direct-form
predicates, the unimodularity locus (and its failure off the locus), and
the LCHK admissibility/flatness claims.  Negative classification claims
that need a quantifier over all metrics are reported NOT-CHECKED.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import EXACT
from . import linalg

from .hermitian import ComplexStructure, HermitianStructure, Metric
from .lie import LieAlgebra, Subspace, find_codim1_abelian_ideal
from .almost_abelian import (build_algebra, extract_data, is_balanced_data,
                             is_kahler_data, is_lcb_data, is_lck_data,
                             is_skt_data, standard_j1, lee_form_closed)
from .lchk import construct_lchk, hyperkahler_flatness, lchk_admissible, verify_triple


class CatalogError(ValueError):
    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code


F = Fraction


@dataclass(frozen=True)
class DataWitness:
    label: str
    data: object                      # params dict -> (a, v, A, J1)
    basis_map: object = None          # params -> (S, c); None means identity
    claims: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExplicitWitness:
    label: str
    j_pairs: tuple                    # 1-based pairing list on the entry basis
    metric: object = None             # params -> Gram matrix; None = identity
    claims: dict = field(default_factory=dict)


@dataclass(frozen=True)
class LchkWitness:
    label: str
    hyperkahler: bool


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    tuple_template: object            # params -> {k: {(i, j): coeff}} 1-based
    params: tuple = ()
    constraints: object = None        # params -> bool
    constraint_text: str = ""
    samples: tuple = ()
    unimodular_locus: object = None   # params -> bool; None = never, True = always
    witnesses: tuple = ()
    declared_ideal: tuple = ()        # 1-based basis indices spanning the ideal
    notes: str = ""

    def differential_tuple(self, params):
        return self.tuple_template(params)


def _brackets_from_tuple(dim, dtuple):
    """Structure constants from {k: {(i,j): coeff}} (1-based, df^k data)."""
    brackets = {}
    for k, terms in dtuple.items():
        for (i, j), c in terms.items():
            key = (i - 1, j - 1)
            vec = brackets.setdefault(key, [F(0)] * dim)
            vec[k - 1] -= c
    return {k: v for k, v in brackets.items() if any(x != 0 for x in v)}


def instantiate(entry: CatalogEntry, params=None) -> LieAlgebra:
    """Validated Lie algebra for a parameter binding."""
    params = dict(params or {})
    for p in entry.params:
        if p not in params:
            raise CatalogError("CONSTRAINT_VIOLATION", f"parameter {p} unbound")
    if entry.constraints is not None and not entry.constraints(params):
        raise CatalogError(
            "CONSTRAINT_VIOLATION",
            f"{entry.name}: parameters {params} violate {entry.constraint_text}")
    dtuple = entry.differential_tuple(params)
    brackets = _brackets_from_tuple(entry.dim, dtuple)
    return LieAlgebra(entry.dim, brackets)


def _ideal_subspace(entry: CatalogEntry, L: LieAlgebra) -> Subspace:
    if entry.declared_ideal:
        vecs = []
        for i in entry.declared_ideal:
            v = [F(0)] * entry.dim
            v[i - 1] = F(1)
            vecs.append(tuple(v))
        return Subspace(len(vecs), tuple(vecs))
    ideal = find_codim1_abelian_ideal(L)
    if ideal is None:
        raise CatalogError("WITNESS_FAILURE", f"{entry.name}: no abelian hyperplane ideal")
    return ideal


def witness_structures(entry: CatalogEntry, params=None):
    """All witness Hermitian structures on the entry's own algebra.

    Returns a list of (label, HermitianStructure, HermitianData, claims).
    """
    params = dict(params or {})
    L = instantiate(entry, params)
    ideal = _ideal_subspace(entry, L)
    out = []
    for w in entry.witnesses:
        if isinstance(w, LchkWitness):
            continue
        if isinstance(w, ExplicitWitness):
            pairs = [(i - 1, j - 1) for i, j in w.j_pairs]
            J = ComplexStructure.from_pairs(entry.dim, pairs)
            gm = Metric.identity(entry.dim) if w.metric is None \
                else Metric.from_matrix(w.metric(params))
            H = HermitianStructure(L, J, gm)
            d = extract_data(L, ideal, J, gm)
            out.append((w.label, H, d, dict(w.claims)))
            continue
        a, v, A, J1 = w.data(params)
        Lb, Jb, gb = build_algebra(a, v, A, J1)
        if w.basis_map is None:
            s = linalg.idmat(entry.dim - 1)
            c = F(1)
        else:
            s, c = w.basis_map(params)
        n2 = entry.dim
        # certificate: S ad_built S^-1 = c * ad_entry on the ideal
        db = _restrict_last(Lb)
        de = _restrict_last(L)
        lhs = linalg.mat_mul(s, db)
        rhs = linalg.mat_scale(c, linalg.mat_mul(de, s))
        if not linalg.mat_eq(lhs, rhs):
            raise CatalogError(
                "WITNESS_FAILURE",
                f"{entry.name}/{w.label}: basis map does not conjugate the data")
        phi = linalg.zeros(n2, n2, EXACT)
        for i in range(n2 - 1):
            for j in range(n2 - 1):
                phi[i][j] = s[i][j]
        phi[n2 - 1][n2 - 1] = c
        phi_inv = linalg.inverse(phi)
        jm = linalg.mat_mul(phi, linalg.mat_mul(Jb.matrix, phi_inv))
        gm = linalg.mat_mul(linalg.transpose(phi_inv),
                            linalg.mat_mul(gb.matrix, phi_inv))
        J = ComplexStructure.from_matrix(jm)
        gmd = Metric.from_matrix(gm)
        H = HermitianStructure(L, J, gmd)
        d = extract_data(L, ideal, J, gmd)
        out.append((w.label, H, d, dict(w.claims)))
    return out


def _restrict_last(L: LieAlgebra):
    """Matrix of ad_{e_dim} restricted to span(e_1 .. e_{dim-1})."""
    n = L.dim
    ad = L.ad_basis(n - 1)
    return [[ad[i][j] for j in range(n - 1)] for i in range(n - 1)]


DIRECT_PREDICATES = {
    "kahler": lambda H: H.is_kahler_direct(),
    "lck": lambda H: H.is_lck_direct(),
    "balanced": lambda H: H.is_balanced_direct(),
    "skt": lambda H: H.is_skt_direct(),
    "lcb": lambda H: H.is_lcb_direct(),
    "vaisman": lambda H: H.is_vaisman()[0],
}

DATA_PREDICATES = {
    "kahler": is_kahler_data,
    "lck": is_lck_data,
    "balanced": is_balanced_data,
    "skt": is_skt_data,
    "lcb": is_lcb_data,
}


def check_witness(entry, label, H, d, claims):
    """Check each claimed predicate through both routes; list of failures."""
    failures = []
    for prop, expected in claims.items():
        direct = DIRECT_PREDICATES[prop](H)
        if direct != expected:
            failures.append(f"{entry.name}/{label}: direct {prop} = {direct}, want {expected}")
        if prop in DATA_PREDICATES:
            data_verdict = DATA_PREDICATES[prop](d)
            if data_verdict != expected:
                failures.append(
                    f"{entry.name}/{label}: data {prop} = {data_verdict}, want {expected}")
    return failures


# ---------------------------------------------------------------------------
# entry definitions


def _diag_tuple(coeffs):
    """{k: {(k, last): c}} for d f^k = c f^{k, 2n}; coeffs 1-based list."""
    def template(dim):
        def inner(c):
            out = {}
            for k, val in c.items():
                out[k] = val
            return out
        return inner
    return coeffs


def _rot(i, j, last, al, be):
    """Terms of the pair df^i = al f^{i,last} + be f^{j,last},
    df^j = -be f^{i,last} + al f^{j,last}."""
    return {i: {(i, last): al, (j, last): be}, j: {(i, last): -be, (j, last): al}}


def _merge(*parts):
    out = {}
    for p in parts:
        for k, terms in p.items():
            tgt = out.setdefault(k, {})
            for key, c in terms.items():
                tgt[key] = tgt.get(key, F(0)) + c
    return out


def _scalar_rows(last, coeffs):
    """df^i = c_i f^{i,last} for the 1-based dict {i: c_i}."""
    return {i: {(i, last): c} for i, c in coeffs.items() if c != 0}


def _perm_basis_map(images, dim_n):
    """S sending built frame vector t to entry basis vector images[t] (0-based)."""
    s = linalg.zeros(dim_n, dim_n, EXACT)
    for t, i in enumerate(images):
        s[i][t] = F(1)
    return s


def _consecutive_j1(m):
    return standard_j1(m)


def _a4_j1(m):
    """Pairs (eps_1, eps_3), (eps_2, eps_4): the A_4-compatible pairing."""
    pairs = [(0, 2), (1, 3)]
    return ComplexStructure.from_pairs(m, pairs).matrix


def _rotmat(p, q, r, s):
    return [[p, q], [r, s]]


def _block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = linalg.zeros(n, n, EXACT)
    pos = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                out[pos + i][pos + j] = F(b[i][j])
        pos += len(b)
    return out


def _diag(*vals):
    n = len(vals)
    out = linalg.zeros(n, n, EXACT)
    for i, v in enumerate(vals):
        out[i][i] = F(v)
    return out


ENTRIES = {}


def _register(entry):
    ENTRIES[entry.name] = entry
    return entry


# -- six-dimensional LCK list (admits LCK, no Kahler) ------------------------

_register(CatalogEntry(
    name="g1", dim=6, params=("p",),
    constraints=lambda pr: pr["p"] != 0, constraint_text="p != 0",
    samples=({"p": F(-1, 4)}, {"p": F(1, 2)}, {"p": F(2)}),
    unimodular_locus=lambda pr: 1 + 4 * pr["p"] == 0,
    tuple_template=lambda pr: _scalar_rows(6, {1: F(1), 2: pr["p"], 3: pr["p"],
                                               4: pr["p"], 5: pr["p"]}),
    witnesses=(DataWitness(
        label="lck",
        data=lambda pr: (F(1), [0, 0, 0, 0], _diag(pr["p"], pr["p"], pr["p"], pr["p"]),
                         _consecutive_j1(4)),
        claims={"lck": True, "kahler": False, "balanced": False, "lcb": True}),),
))

_register(CatalogEntry(
    name="g2", dim=6, params=("p", "q"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0, constraint_text="pq != 0",
    samples=({"p": F(-1), "q": F(1, 4)}, {"p": F(1), "q": F(1)}, {"p": F(1), "q": F(-1, 2)}),
    unimodular_locus=lambda pr: pr["p"] + 4 * pr["q"] == 0,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: pr["p"], 2: pr["q"], 3: pr["q"]}),
        _rot(4, 5, 6, pr["q"], F(1))),
    witnesses=(DataWitness(
        label="lck",
        data=lambda pr: (pr["p"], [0, 0, 0, 0],
                         _block_diag(_diag(pr["q"], pr["q"]),
                                     _rotmat(pr["q"], F(1), F(-1), pr["q"])),
                         _consecutive_j1(4)),
        claims={"lck": True, "kahler": False, "balanced": False, "lcb": True}),),
))

_register(CatalogEntry(
    name="g3", dim=6, params=("p", "q", "r"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0 and pr["r"] != 0,
    constraint_text="pq != 0, r != 0",
    samples=({"p": F(-1), "q": F(1, 4), "r": F(1)},
             {"p": F(1), "q": F(1, 2), "r": F(2)},
             {"p": F(1), "q": F(1), "r": F(-1)}),
    unimodular_locus=lambda pr: pr["p"] + 4 * pr["q"] == 0,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: pr["p"]}),
        _rot(2, 3, 6, pr["q"], F(1)),
        _rot(4, 5, 6, pr["q"], pr["r"])),
    witnesses=(DataWitness(
        label="lck",
        data=lambda pr: (pr["p"], [0, 0, 0, 0],
                         _block_diag(_rotmat(pr["q"], F(1), F(-1), pr["q"]),
                                     _rotmat(pr["q"], pr["r"], -pr["r"], pr["q"])),
                         _consecutive_j1(4)),
        claims={"lck": True, "kahler": False, "balanced": False, "lcb": True}),),
    notes="label parameters read as (p, q, r); r is the live rotation parameter",
))

_G4_IMAGES = [4, 0, 1, 2, 3]  # built (e1, u1..u4) -> entry basis (f5, f1, f2, f3, f4)

_register(CatalogEntry(
    name="g4", dim=6, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: _scalar_rows(6, {1: F(1), 2: F(1), 3: F(1), 4: F(1)}),
    witnesses=(DataWitness(
        label="lck",
        data=lambda pr: (F(0), [0, 0, 0, 0], _diag(1, 1, 1, 1), _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lck": True, "kahler": False, "balanced": False, "lcb": True}),),
))

_register(CatalogEntry(
    name="g5", dim=6, params=("r",),
    constraints=lambda pr: pr["r"] != 0, constraint_text="r != 0",
    samples=({"r": F(1)}, {"r": F(-1, 2)}, {"r": F(2)}),
    unimodular_locus=None,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: F(1), 2: F(1)}),
        _rot(3, 4, 6, F(1), pr["r"])),
    witnesses=(DataWitness(
        label="lck",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         _block_diag(_diag(1, 1), _rotmat(F(1), pr["r"], -pr["r"], F(1))),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lck": True, "kahler": False, "balanced": False, "lcb": True}),),
))

_register(CatalogEntry(
    name="g6", dim=6, params=("p", "r"),
    constraints=lambda pr: pr["p"] * pr["r"] != 0, constraint_text="pr != 0",
    samples=({"p": F(1), "r": F(1)}, {"p": F(-1, 2), "r": F(2)}, {"p": F(1, 4), "r": F(-1)}),
    unimodular_locus=None,
    tuple_template=lambda pr: _merge(
        _rot(1, 2, 6, pr["p"], F(1)),
        _rot(3, 4, 6, pr["p"], pr["r"])),
    witnesses=(DataWitness(
        label="lck",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         _block_diag(_rotmat(pr["p"], F(1), F(-1), pr["p"]),
                                     _rotmat(pr["p"], pr["r"], -pr["r"], pr["p"])),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lck": True, "kahler": False, "balanced": False, "lcb": True}),),
))

# -- six-dimensional LCB list -------------------------------------------------

_register(CatalogEntry(
    name="l1", dim=6, params=("p", "q"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0 and pr["p"] != pr["q"] and pr["p"] != -pr["q"],
    constraint_text="pq != 0, p != +-q (the stated pr != 0 read as pq != 0)",
    samples=({"p": F(1), "q": F(-3, 2)}, {"p": F(1, 2), "q": F(-1)}, {"p": F(2), "q": F(1)}),
    unimodular_locus=lambda pr: 1 + 2 * pr["p"] + 2 * pr["q"] == 0,
    tuple_template=lambda pr: _scalar_rows(6, {1: F(1), 2: pr["p"], 3: pr["p"],
                                               4: pr["q"], 5: pr["q"]}),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(1), [0, 0, 0, 0],
                         _diag(pr["p"], pr["p"], pr["q"], pr["q"]), _consecutive_j1(4)),
        claims={"lcb": True, "balanced": False, "lck": False}),),
))

_register(CatalogEntry(
    name="l2", dim=6, params=("p",),
    constraints=lambda pr: pr["p"] != 0, constraint_text="p != 0",
    samples=({"p": F(-1, 4)}, {"p": F(1)}, {"p": F(1, 2)}),
    unimodular_locus=lambda pr: 1 + 4 * pr["p"] == 0,
    tuple_template=lambda pr: {
        1: {(1, 6): F(1)},
        2: {(2, 6): pr["p"], (3, 6): F(1)},
        3: {(3, 6): pr["p"]},
        4: {(4, 6): pr["p"], (5, 6): F(1)},
        5: {(5, 6): pr["p"]},
    },
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(1), [0, 0, 0, 0],
                         [[pr["p"], F(1), F(0), F(0)],
                          [F(0), pr["p"], F(0), F(0)],
                          [F(0), F(0), pr["p"], F(1)],
                          [F(0), F(0), F(0), pr["p"]]],
                         _a4_j1(4)),
        claims={"lcb": True, "balanced": False, "lck": False}),),
))

_register(CatalogEntry(
    name="l3", dim=6, params=("p", "q", "r"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0 and pr["q"] != pr["r"] and pr["q"] != -pr["r"],
    constraint_text="pq != 0, q != +-r",
    samples=({"p": F(1), "q": F(1), "r": F(-1, 2) - F(1)},
             {"p": F(2), "q": F(-1), "r": F(0)},
             {"p": F(1), "q": F(1, 2), "r": F(2)}),
    unimodular_locus=lambda pr: pr["p"] + 2 * pr["q"] + 2 * pr["r"] == 0,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: pr["p"], 2: pr["q"], 3: pr["q"]}),
        _rot(4, 5, 6, pr["r"], F(1))),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (pr["p"], [0, 0, 0, 0],
                         _block_diag(_diag(pr["q"], pr["q"]),
                                     _rotmat(pr["r"], F(1), F(-1), pr["r"])),
                         _consecutive_j1(4)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l4", dim=6, params=("p", "q", "r", "s"),
    constraints=lambda pr: (pr["p"] * pr["q"] * pr["s"] != 0
                            and pr["q"] != pr["r"] and pr["q"] != -pr["r"]),
    constraint_text="pqs != 0, q != +-r",
    samples=({"p": F(1), "q": F(1), "r": F(-3, 2), "s": F(1)},
             {"p": F(2), "q": F(-1), "r": F(0), "s": F(1, 2)},
             {"p": F(1), "q": F(1, 2), "r": F(2), "s": F(-1)}),
    unimodular_locus=lambda pr: pr["p"] + 2 * pr["q"] + 2 * pr["r"] == 0,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: pr["p"]}),
        _rot(2, 3, 6, pr["q"], F(1)),
        _rot(4, 5, 6, pr["r"], pr["s"])),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (pr["p"], [0, 0, 0, 0],
                         _block_diag(_rotmat(pr["q"], F(1), F(-1), pr["q"]),
                                     _rotmat(pr["r"], pr["s"], -pr["s"], pr["r"])),
                         _consecutive_j1(4)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l5", dim=6, params=("p", "q"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0, constraint_text="pq != 0",
    samples=({"p": F(1), "q": F(-1, 4)}, {"p": F(2), "q": F(1)}, {"p": F(1), "q": F(1, 2)}),
    unimodular_locus=lambda pr: pr["p"] + 4 * pr["q"] == 0,
    tuple_template=lambda pr: {
        1: {(1, 6): pr["p"]},
        2: {(2, 6): pr["q"], (3, 6): F(1), (4, 6): F(-1)},
        3: {(2, 6): F(-1), (3, 6): pr["q"], (5, 6): F(-1)},
        4: {(4, 6): pr["q"], (5, 6): F(1)},
        5: {(4, 6): F(-1), (5, 6): pr["q"]},
    },
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (pr["p"], [0, 0, 0, 0],
                         [[pr["q"], F(1), F(-1), F(0)],
                          [F(-1), pr["q"], F(0), F(-1)],
                          [F(0), F(0), pr["q"], F(1)],
                          [F(0), F(0), F(-1), pr["q"]]],
                         _consecutive_j1(4)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l6", dim=6, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: _scalar_rows(6, {1: F(1), 2: F(1)}),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0], _diag(1, 1, 0, 0), _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_L7_S = [[0, 1, 1, 0, 0],
         [-1, 0, 0, 1, 1],
         [1, 0, 0, 0, 0],
         [0, 0, 1, 0, 0],
         [1, 0, 0, -1, 0]]

_register(CatalogEntry(
    name="l7", dim=6, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: {
        1: {(1, 6): F(1)},
        2: {(2, 6): F(1), (3, 6): F(1)},
        3: {(3, 6): F(1)},
    },
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(1), [0, 0, 1, 0],
                         [[F(1), F(1), F(0), F(0)],
                          [F(0), F(0), F(0), F(0)],
                          [F(0), F(0), F(0), F(0)],
                          [F(0), F(0), F(1), F(1)]],
                         [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        basis_map=lambda pr: ([[F(x) for x in row] for row in _L7_S], F(1)),
        claims={"lcb": True, "balanced": False}),),
    notes="witness realizes the nonzero-v case with a = p = 1",
))

_register(CatalogEntry(
    name="l8", dim=6, params=("p",),
    constraints=lambda pr: pr["p"] != 0, constraint_text="p != 0",
    samples=({"p": F(1)}, {"p": F(-1, 2)}, {"p": F(2)}),
    unimodular_locus=None,
    tuple_template=lambda pr: _rot(1, 2, 6, pr["p"], F(1)),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         _block_diag(_rotmat(pr["p"], F(1), F(-1), pr["p"]), _diag(0, 0)),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l9", dim=6, params=("p",),
    constraints=lambda pr: pr["p"] != 0, constraint_text="p != 0",
    samples=({"p": F(-1, 2)}, {"p": F(1)}, {"p": F(2)}),
    unimodular_locus=lambda pr: 1 + 2 * pr["p"] == 0,
    tuple_template=lambda pr: _scalar_rows(6, {1: F(1), 2: pr["p"], 3: pr["p"]}),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(1), [0, 0, 0, 0], _diag(pr["p"], pr["p"], 0, 0),
                         _consecutive_j1(4)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l10", dim=6, params=("p", "q"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0, constraint_text="pq != 0",
    samples=({"p": F(1), "q": F(-1, 2)}, {"p": F(2), "q": F(-1)}, {"p": F(1), "q": F(1)}),
    unimodular_locus=lambda pr: pr["p"] + 2 * pr["q"] == 0,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: pr["p"]}),
        _rot(2, 3, 6, pr["q"], F(1))),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (pr["p"], [0, 0, 0, 0],
                         _block_diag(_rotmat(pr["q"], F(1), F(-1), pr["q"]), _diag(0, 0)),
                         _consecutive_j1(4)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l11", dim=6, params=("p",),
    constraints=lambda pr: pr["p"] not in (F(0), F(1), F(-1)),
    constraint_text="p != 0, +-1",
    samples=({"p": F(1, 2)}, {"p": F(-2)}, {"p": F(2)}),
    unimodular_locus=None,
    tuple_template=lambda pr: _scalar_rows(6, {1: F(1), 2: F(1), 3: pr["p"], 4: pr["p"]}),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0], _diag(1, 1, pr["p"], pr["p"]),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_L12_IMAGES = [3, 0, 1, 2, 4]  # built (e1, u1, u2, u3, u4) -> (f4, f1, f2, f3, f5)

_register(CatalogEntry(
    name="l12", dim=6, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: {
        1: {(1, 6): F(1)},
        2: {(2, 6): F(1)},
        3: {(4, 6): F(1)},
    },
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 1, 0], _diag(1, 1, 0, 0), _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_L12_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l13", dim=6, params=("q", "r"),
    constraints=lambda pr: pr["q"] not in (F(1), F(-1)) and pr["r"] != 0,
    constraint_text="q != +-1, r != 0",
    samples=({"q": F(1, 2), "r": F(1)}, {"q": F(-2), "r": F(1, 2)}, {"q": F(0), "r": F(2)}),
    unimodular_locus=None,
    tuple_template=lambda pr: _merge(
        _scalar_rows(6, {1: F(1), 2: F(1)}),
        _rot(3, 4, 6, pr["q"], pr["r"])),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         _block_diag(_diag(1, 1), _rotmat(pr["q"], pr["r"], -pr["r"], pr["q"])),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l14", dim=6, params=("p",),
    samples=({"p": F(0)}, {"p": F(1)}, {"p": F(-1, 2)}),
    unimodular_locus=lambda pr: pr["p"] == 0,
    tuple_template=lambda pr: _merge(
        _rot(1, 2, 6, pr["p"], F(1)),
        {3: {(4, 6): F(1)}}),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 1, 0],
                         _block_diag(_rotmat(pr["p"], F(1), F(-1), pr["p"]), _diag(0, 0)),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_L12_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l15", dim=6, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: {
        1: {(1, 6): F(1), (2, 6): F(1)},
        2: {(2, 6): F(1)},
        3: {(3, 6): F(1), (4, 6): F(1)},
        4: {(4, 6): F(1)},
    },
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         [[F(1), F(1), F(0), F(0)],
                          [F(0), F(1), F(0), F(0)],
                          [F(0), F(0), F(1), F(1)],
                          [F(0), F(0), F(0), F(1)]],
                         _a4_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l16", dim=6, params=("p", "q", "r"),
    constraints=lambda pr: (pr["r"] != 0 and (pr["p"] != 0 or pr["q"] != 0)
                            and pr["p"] != pr["q"] and pr["p"] != -pr["q"]),
    constraint_text="r != 0, p^2 + q^2 != 0, p != +-q",
    samples=({"p": F(1), "q": F(0), "r": F(1)},
             {"p": F(0), "q": F(1), "r": F(2)},
             {"p": F(1), "q": F(1, 2), "r": F(-1)}),
    unimodular_locus=None,
    tuple_template=lambda pr: _merge(
        _rot(1, 2, 6, pr["p"], F(1)),
        _rot(3, 4, 6, pr["q"], pr["r"])),
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         _block_diag(_rotmat(pr["p"], F(1), F(-1), pr["p"]),
                                     _rotmat(pr["q"], pr["r"], -pr["r"], pr["q"])),
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="l17", dim=6, params=("p",),
    constraints=lambda pr: pr["p"] != 0, constraint_text="p != 0",
    samples=({"p": F(1)}, {"p": F(-1, 2)}, {"p": F(2)}),
    unimodular_locus=None,
    tuple_template=lambda pr: {
        1: {(1, 6): pr["p"], (2, 6): F(1), (3, 6): F(-1)},
        2: {(1, 6): F(-1), (2, 6): pr["p"], (4, 6): F(-1)},
        3: {(3, 6): pr["p"], (4, 6): F(1)},
        4: {(3, 6): F(-1), (4, 6): pr["p"]},
    },
    witnesses=(DataWitness(
        label="lcb",
        data=lambda pr: (F(0), [0, 0, 0, 0],
                         [[pr["p"], F(1), F(-1), F(0)],
                          [F(-1), pr["p"], F(0), F(-1)],
                          [F(0), F(0), pr["p"], F(1)],
                          [F(0), F(0), F(-1), pr["p"]]],
                         _consecutive_j1(4)),
        basis_map=lambda pr: (_perm_basis_map(_G4_IMAGES, 5), F(1)),
        claims={"lcb": True, "balanced": False}),),
))

# -- nilpotent LCB entries ----------------------------------------------------

_register(CatalogEntry(
    name="n1", dim=6, params=(),
    samples=({},),
    unimodular_locus=True,
    tuple_template=lambda pr: {6: {(1, 2): F(1)}},
    declared_ideal=(2, 3, 4, 5, 6),
    witnesses=(ExplicitWitness(
        label="lcb",
        j_pairs=((2, 1), (3, 4), (5, 6)),
        claims={"lcb": True, "balanced": False}),),
))

_register(CatalogEntry(
    name="n2", dim=6, params=(),
    samples=({},),
    unimodular_locus=True,
    tuple_template=lambda pr: {4: {(1, 2): F(1)}, 5: {(1, 3): F(1)}, 6: {(1, 4): F(1)}},
    declared_ideal=(2, 3, 4, 5, 6),
    witnesses=(ExplicitWitness(
        label="lcb",
        j_pairs=((2, 1), (3, 4), (5, 6)),
        claims={"lcb": True, "balanced": False}),),
))

# -- four-dimensional algebras and the compatibility examples -----------------

_register(CatalogEntry(
    name="h3R", dim=4, params=(),
    samples=({},),
    unimodular_locus=True,
    tuple_template=lambda pr: {4: {(1, 2): F(1)}},
    declared_ideal=(2, 3, 4),
    witnesses=(ExplicitWitness(
        label="lck",
        j_pairs=((2, 1), (3, 4)),
        claims={"lck": True, "vaisman": True, "kahler": False, "lcb": True}),),
))


def _aff2_gprime(pr):
    return [[F(2), F(0), F(1), F(0)],
            [F(0), F(2), F(0), F(1)],
            [F(1), F(0), F(1), F(0)],
            [F(0), F(1), F(0), F(1)]]


_register(CatalogEntry(
    name="aff2+2R", dim=4, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: {1: {(1, 2): F(1)}},
    declared_ideal=(1, 3, 4),
    witnesses=(
        ExplicitWitness(
            label="kahler",
            j_pairs=((1, 2), (3, 4)),
            claims={"kahler": True, "balanced": True, "lck": True,
                    "lcb": True, "vaisman": True}),
        ExplicitWitness(
            label="lck-nonkahler",
            j_pairs=((1, 2), (3, 4)),
            metric=_aff2_gprime,
            claims={"lck": True, "kahler": False, "lcb": True, "vaisman": True}),
    ),
))


def _b2_gprime(pr):
    g = linalg.idmat(6)
    g[0][0] = F(3)
    g[5][5] = F(3)
    g[0][1] = g[1][0] = F(1)
    g[0][2] = g[2][0] = F(1)
    g[3][5] = g[5][3] = F(1)
    g[4][5] = g[5][4] = F(1)
    return g


_register(CatalogEntry(
    name="b2", dim=6, params=(),
    samples=({},),
    unimodular_locus=None,
    tuple_template=lambda pr: {1: {(1, 6): F(1)}, 2: {(3, 6): F(1)}, 4: {(5, 6): F(1)}},
    witnesses=(
        ExplicitWitness(
            label="balanced",
            j_pairs=((1, 6), (2, 4), (3, 5)),
            claims={"balanced": True, "kahler": False, "lcb": True}),
        ExplicitWitness(
            label="lcb-nonbalanced",
            j_pairs=((1, 6), (2, 4), (3, 5)),
            metric=_b2_gprime,
            claims={"lcb": True, "balanced": False, "lck": False}),
    ),
))


def _s2n_tuple(n):
    def template(pr):
        a, c = pr["a"], pr.get("c", F(1))
        last = 2 * n
        out = {
            1: {(1, last): a},
            2: {(2, last): -a / 2, (3, last): F(1)},
            3: {(2, last): F(-1), (3, last): -a / 2},
        }
        for i in range(2, n):
            out[2 * i] = {(2 * i + 1, last): c}
            out[2 * i + 1] = {(2 * i, last): -c}
        return out
    return template


def _s2n_entry(n):
    params = ("a",) if n == 2 else ("a", "c")
    if n == 2:
        samples = ({"a": F(1)}, {"a": F(-2)}, {"a": F(1, 2)})
        constraints = lambda pr: pr["a"] != 0
        text = "a != 0"
    else:
        samples = ({"a": F(1), "c": F(1)}, {"a": F(-2), "c": F(1, 2)},
                   {"a": F(1, 2), "c": F(2)})
        constraints = lambda pr: pr["a"] != 0 and pr["c"] != 0
        text = "a != 0, c != 0"
    pairs = ((1, 2 * n),) + tuple((2 * i, 2 * i + 1) for i in range(1, n))
    return CatalogEntry(
        name=f"s{2 * n}", dim=2 * n, params=params,
        constraints=constraints, constraint_text=text,
        samples=samples,
        unimodular_locus=True,
        tuple_template=_s2n_tuple(n),
        witnesses=(ExplicitWitness(
            label="skt-lcb",
            j_pairs=pairs,
            claims={"skt": True, "lcb": True, "balanced": False}),),
    )


for _n in (2, 3, 4):
    _register(_s2n_entry(_n))

# -- LCHK catalog --------------------------------------------------------------


def _lchk_entry(name, dim, template, params=(), constraints=None, text="",
                samples=({},), hyperkahler=False):
    return CatalogEntry(
        name=name, dim=dim, params=params,
        constraints=constraints, constraint_text=text,
        samples=samples,
        unimodular_locus=True if hyperkahler else None,
        tuple_template=template,
        witnesses=(LchkWitness(label="lchk", hyperkahler=hyperkahler),),
    )


_register(_lchk_entry("lchk-m1-hk", 4, lambda pr: {}, hyperkahler=True))

_register(_lchk_entry(
    "lchk-m1", 4,
    lambda pr: _scalar_rows(4, {1: F(1), 2: F(1), 3: F(1)})))

_register(_lchk_entry("lchk-m2-hk1", 8, lambda pr: {}, hyperkahler=True))

_register(_lchk_entry(
    "lchk-m2-hk2", 8,
    lambda pr: {1: {(2, 8): F(1)}, 2: {(1, 8): F(-1)},
                3: {(4, 8): F(1)}, 4: {(3, 8): F(-1)}},
    hyperkahler=True))

_register(_lchk_entry(
    "lchk-m2-1", 8,
    lambda pr: _scalar_rows(8, {i: F(1) for i in range(1, 8)})))

_register(_lchk_entry(
    "lchk-m2-2", 8,
    lambda pr: _merge(
        _scalar_rows(8, {1: F(1), 2: F(1), 3: F(1)}),
        _rot(4, 5, 8, F(1), pr["p"]),
        _rot(6, 7, 8, F(1), pr["p"])),
    params=("p",), constraints=lambda pr: pr["p"] != 0, text="p != 0",
    samples=({"p": F(1)}, {"p": F(1, 2)}, {"p": F(2)})))

_register(_lchk_entry("lchk-m3-hk1", 12, lambda pr: {}, hyperkahler=True))

_register(_lchk_entry(
    "lchk-m3-hk2", 12,
    lambda pr: {1: {(2, 12): F(1)}, 2: {(1, 12): F(-1)},
                3: {(4, 12): F(1)}, 4: {(3, 12): F(-1)}},
    hyperkahler=True))

_register(_lchk_entry(
    "lchk-m3-hk3", 12,
    lambda pr: {1: {(2, 12): F(1)}, 2: {(1, 12): F(-1)},
                3: {(4, 12): F(1)}, 4: {(3, 12): F(-1)},
                5: {(6, 12): pr["p"]}, 6: {(5, 12): -pr["p"]},
                7: {(8, 12): pr["p"]}, 8: {(7, 12): -pr["p"]}},
    params=("p",), constraints=lambda pr: pr["p"] != 0, text="p != 0",
    samples=({"p": F(1)}, {"p": F(1, 2)}, {"p": F(2)}),
    hyperkahler=True))

_register(_lchk_entry(
    "lchk-m3-1", 12,
    lambda pr: _scalar_rows(12, {i: F(1) for i in range(1, 12)})))

_register(_lchk_entry(
    "lchk-m3-2", 12,
    lambda pr: _merge(
        _scalar_rows(12, {i: F(1) for i in range(1, 8)}),
        _rot(8, 9, 12, F(1), pr["p"]),
        _rot(10, 11, 12, F(1), pr["p"])),
    params=("p",), constraints=lambda pr: pr["p"] != 0, text="p != 0",
    samples=({"p": F(1)}, {"p": F(1, 2)}, {"p": F(2)})))

_register(_lchk_entry(
    "lchk-m3-3", 12,
    lambda pr: _merge(
        _scalar_rows(12, {1: F(1), 2: F(1), 3: F(1)}),
        _rot(4, 5, 12, F(1), pr["p"]),
        _rot(6, 7, 12, F(1), pr["p"]),
        _rot(8, 9, 12, F(1), pr["q"]),
        _rot(10, 11, 12, F(1), pr["q"])),
    params=("p", "q"),
    constraints=lambda pr: pr["p"] * pr["q"] != 0, text="pq != 0",
    samples=({"p": F(1), "q": F(2)}, {"p": F(1, 2), "q": F(1)}, {"p": F(2), "q": F(1, 2)})))


# ---------------------------------------------------------------------------
# verification harness

LCK_LIST = ("g1", "g2", "g3", "g4", "g5", "g6")
LCB_LIST = tuple(f"l{i}" for i in range(1, 18)) + ("n1", "n2")
LCHK_LIST = tuple(name for name in ENTRIES if name.startswith("lchk-"))

_OFF_LOCUS_POOL = (F(1, 3), F(3, 4), F(-5, 4), F(5, 2), F(-7, 3), F(7, 5))


def _off_locus_samples(entry, count=3):
    """Parameter tuples off the unimodularity locus (never-unimodular
    entries reuse their stated samples)."""
    if not callable(entry.unimodular_locus):
        return entry.samples[:count]
    out = []
    base = entry.samples[0]
    for delta in _OFF_LOCUS_POOL:
        cand = {k: v + delta for k, v in base.items()}
        try:
            ok = entry.constraints is None or entry.constraints(cand)
        except Exception:
            ok = False
        if ok and not entry.unimodular_locus(cand):
            out.append(cand)
        if len(out) == count:
            break
    return tuple(out)


def verify_entry(entry: CatalogEntry, samples=None, deep=True):
    """Verify one entry; returns a result dict with a list of failures."""
    failures = []
    checked = []
    samples = list(samples if samples is not None else entry.samples)
    for params in samples:
        try:
            L = instantiate(entry, params)
        except Exception as exc:
            failures.append(f"{entry.name}{params}: instantiate failed: {exc}")
            continue
        checked.append(params)
        # unimodularity claim
        uni = L.is_unimodular()
        if entry.unimodular_locus is True:
            if not uni:
                failures.append(f"{entry.name}{params}: expected unimodular")
        elif entry.unimodular_locus is None:
            if uni:
                failures.append(f"{entry.name}{params}: unexpectedly unimodular")
        else:
            want = entry.unimodular_locus(params)
            if uni != want:
                failures.append(
                    f"{entry.name}{params}: unimodular = {uni}, locus says {want}")
        # witnesses
        for w in entry.witnesses:
            if isinstance(w, LchkWitness):
                failures.extend(_verify_lchk_witness(entry, L, params, w, deep))
        try:
            structures = witness_structures(entry, params)
        except Exception as exc:
            failures.append(f"{entry.name}{params}: witness build failed: {exc}")
            continue
        for label, H, d, claims in structures:
            failures.extend(check_witness(entry, f"{label}{params}", H, d, claims))
            if deep:
                if not lee_form_closed(d).equals(H.lee_form()):
                    failures.append(f"{entry.name}/{label}{params}: closed Lee form mismatch")
    # three perturbed off-locus samples must fail unimodularity
    if callable(entry.unimodular_locus):
        for params in _off_locus_samples(entry):
            try:
                if instantiate(entry, params).is_unimodular():
                    failures.append(f"{entry.name}{params}: off-locus sample unimodular")
            except CatalogError:
                pass
    return {
        "entry": entry.name,
        "samples": checked,
        "failures": failures,
        "not_checked": _not_checked_claims(entry),
        "ok": not failures,
    }


def _not_checked_claims(entry):
    """Global non-existence claims that need a quantifier over all metrics."""
    if entry.name in LCK_LIST:
        return ("admits-no-Kahler-structure (witness-level non-Kahler only)",)
    if entry.name in LCB_LIST:
        return ("admits-no-balanced-or-LCK-structure (witness-level only)",)
    return ()


def _verify_lchk_witness(entry, L, params, w: LchkWitness, deep):
    failures = []
    D = _restrict_last(L)
    verdict = lchk_admissible(D)
    if not verdict.admissible:
        failures.append(f"{entry.name}{params}: expected admissible, got {verdict}")
        return failures
    if verdict.hyperkahler != w.hyperkahler:
        failures.append(
            f"{entry.name}{params}: hyperkahler flag {verdict.hyperkahler}, "
            f"want {w.hyperkahler}")
    if not deep:
        return failures
    Lc, triple, P, dc = construct_lchk(D)
    report = verify_triple(Lc, triple)
    if not report["ok"]:
        bad = [k for k, v in report.items() if not v]
        failures.append(f"{entry.name}{params}: triple checks failed: {bad}")
    if w.hyperkahler:
        if not hyperkahler_flatness(triple, Lc):
            failures.append(f"{entry.name}{params}: hyperkahler witness not flat")
        m0 = next(mult for b, mult in verdict.multiplicities if b == 0)
        kernel = linalg.nullspace(D)
        if len(kernel) != m0:
            failures.append(f"{entry.name}{params}: kernel dim != m_D(0)")
    return failures


def verify_all(names=None, samples=None, deep=True):
    """Verify the requested entries (all by default); deterministic order."""
    names = sorted(ENTRIES) if names is None else list(names)
    results = []
    t0 = time.monotonic()
    for name in names:
        if name not in ENTRIES:
            raise CatalogError("UNKNOWN_ENTRY", f"no catalog entry named {name}")
        entry = ENTRIES[name]
        use = entry.samples if samples is None else entry.samples[:samples] or entry.samples
        results.append(verify_entry(entry, use, deep=deep))
    return {
        "results": results,
        "ok": all(r["ok"] for r in results),
        "elapsed_s": time.monotonic() - t0,
    }


# ---------------------------------------------------------------------------
# manifest serialization

def entry_document(entry: CatalogEntry, params=None):
    """AlgebraDocument for an entry (default first sample when params=None).

    The first explicit witness (if any) supplies the document's J and g.
    """
    from .documents import AlgebraDocument, Term

    params = dict(entry.samples[0] if params is None else params)
    dtuple = entry.differential_tuple(params)
    differential = []
    for k in range(1, entry.dim + 1):
        terms = []
        for (i, j), c in sorted(dtuple.get(k, {}).items()):
            pname = _param_of(entry, params, k, i, j)
            if pname is not None:
                base = entry.differential_tuple({**params, pname: F(1)})[k][(i, j)]
                terms.append(Term(i, j, base, pname))
            else:
                terms.append(Term(i, j, c, None))
        differential.append(tuple(terms))
    j_spec = None
    g_spec = None
    for w in entry.witnesses:
        if isinstance(w, ExplicitWitness):
            j_spec = ("pairs", tuple(w.j_pairs))
            if w.metric is None:
                g_spec = ("identity",)
            else:
                g_spec = ("matrix", tuple(tuple(row) for row in w.metric(params)))
            break
    ideal = None
    if entry.declared_ideal:
        vecs = []
        for i in entry.declared_ideal:
            v = [F(0)] * entry.dim
            v[i - 1] = F(1)
            vecs.append(tuple(v))
        ideal = tuple(vecs)
    return AlgebraDocument(
        name=entry.name.replace("+", "_"), dim=entry.dim,
        params={k: params[k] for k in entry.params},
        differential=tuple(differential),
        j_spec=j_spec, g_spec=g_spec, ideal=ideal)


def _param_of(entry, params, k, i, j):
    """Name of the parameter scaling the (k, i, j) slot, if exactly one fits.

    Detected by perturbing each binding: a slot is attributed to parameter
    p when the coefficient moves linearly with p and vanishes at p = 0.
    """
    base = entry.differential_tuple(params)[k][(i, j)]
    for pname in entry.params:
        try:
            up = entry.differential_tuple({**params, pname: params[pname] + 1})
        except Exception:
            continue
        moved = up.get(k, {}).get((i, j), F(0))
        if moved == base:
            continue
        try:
            at_zero = entry.differential_tuple({**params, pname: F(0)})
        except Exception:
            continue
        if at_zero.get(k, {}).get((i, j), F(0)) != 0:
            return None  # affine but not linear in the parameter
        at_one = entry.differential_tuple({**params, pname: F(1)})
        if at_one[k].get((i, j), F(0)) * params[pname] == base:
            return pname
    return None


def catalog_manifest() -> str:
    """The canonical text manifest for the whole catalog."""
    from .documents import render_manifest

    docs = [entry_document(ENTRIES[name]) for name in sorted(ENTRIES)]
    return render_manifest(docs)


def shipped_manifest_text() -> str:
    """Contents of the manifest file shipped with the package."""
    from importlib import resources

    return resources.files("aalg").joinpath("data/catalog.alg").read_text("utf-8")
