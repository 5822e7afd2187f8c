"""Pointwise CR-regularity checks for sphere graph embeddings.

Three routes to the same verdict at a sphere point z:

* rank of the (q+1) x m independence matrix whose rows are z and the
  antiholomorphic gradients df_j/dzbar(z);
* non-vanishing of the wedge of the 2q+1 holomorphic differentials of the
  real defining functions of the graph, evaluated at the image point;
* the tangent-space count dim_C(T ∩ JT) for the pushed-forward sphere
  tangent T, computed by brute-force real linear algebra.

The embedding is CR regular at z exactly when the matrix has full rank q+1,
when the wedge is nonzero, and when the tangent count equals m-q-1.  The
third route shares no code path with the first two and serves as an
independent oracle; ``equivalence_check`` runs all three and reports any
disagreement as an internal inconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .catalog import GraphEmbedding, require_on_sphere
from .wirtinger import GaussianRational, WPolynomial, term_arrays

DEFAULT_RANK_TOL = 1e-8

# points with sigma_min within this factor of the rank threshold (either side)
# are flagged as numerically suspicious
MARGINAL_FACTOR = 10.0


class RankToleranceError(RuntimeError):
    """Raised when a rank decision is numerically inconsistent."""


def numerical_rank(singular_values: np.ndarray, tol: float) -> int:
    """Number of singular values above tol * sigma_max."""
    s = np.asarray(singular_values, dtype=float)
    if s.size == 0:
        return 0
    smax = float(s[0])
    if smax == 0.0:
        return 0
    return int(np.sum(s > tol * smax))


# -- differential forms at a point ---------------------------------------------

@dataclass(frozen=True)
class OneForm:
    """A (1,0)-form sum_j c_j dz_j, stored as its coefficient vector."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", np.asarray(self.coeffs, dtype=np.complex128)
        )

    @property
    def dim(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class TwoForm:
    """A 2-form sum_{i<j} c_ij dz_i ^ dz_j as an antisymmetric coefficient matrix."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {c.shape}")
        if not np.allclose(c, -c.T, atol=1e-13 * max(1.0, np.abs(c).max())):
            raise ValueError("coefficient matrix is not antisymmetric")
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max())


def wedge(a: OneForm, b: OneForm) -> TwoForm:
    """Wedge product of two (1,0)-forms."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    outer = np.outer(a.coeffs, b.coeffs)
    return TwoForm(outer - outer.T)


def del_form(rho: WPolynomial, w: Sequence[complex]) -> OneForm:
    """Holomorphic differential of a real polynomial, evaluated at a point."""
    if not rho.is_real():
        raise ValueError("del_form requires a real polynomial")
    wv = np.asarray(w, dtype=np.complex128)
    if len(wv) != rho.m:
        raise ValueError(f"point has length {len(wv)}, expected {rho.m}")
    return OneForm(np.array([rho.d_z(j).eval(wv) for j in range(rho.m)]))


def wedge_nonzero(forms: Sequence[OneForm], tol: float = DEFAULT_RANK_TOL) -> bool:
    """Whether the wedge of k (1,0)-forms is nonzero, via rank of their coefficients."""
    if not forms:
        raise ValueError("need at least one form")
    dim = forms[0].dim
    if any(f.dim != dim for f in forms):
        raise ValueError("forms must share one dimension")
    if len(forms) > dim:
        raise ValueError(f"{len(forms)} forms cannot be independent in dimension {dim}")
    M = np.vstack([f.coeffs for f in forms])
    s = np.linalg.svd(M, compute_uv=False)
    return numerical_rank(s, tol) == len(forms)


# -- criterion 1: the independence matrix ---------------------------------------

class IndependenceEvaluator:
    """Precompiled evaluator for the independence matrix of one embedding."""

    def __init__(self, E: GraphEmbedding):
        self.E = E
        self.m = E.m
        self.q = E.q
        # term arrays of d/dzbar_k f_j, indexed [j][k]
        self._dzbar = [
            [term_arrays(fj.d_zbar(k)) for k in range(E.m)] for fj in E.f
        ]

    def matrix_many(self, points: np.ndarray) -> np.ndarray:
        """Stack of independence matrices, shape (n, q+1, m)."""
        Z = np.asarray(points, dtype=np.complex128)
        if Z.ndim != 2 or Z.shape[1] != self.m:
            raise ValueError(f"expected shape (n, {self.m}), got {Z.shape}")
        Zc = np.conj(Z)
        out = np.empty((Z.shape[0], self.q + 1, self.m), dtype=np.complex128)
        out[:, 0, :] = Z
        for j in range(self.q):
            for k in range(self.m):
                A, B, C = self._dzbar[j][k]
                acc = np.zeros(Z.shape[0], dtype=np.complex128)
                for a, b, c in zip(A, B, C):
                    acc += c * np.prod(Z**a, axis=1) * np.prod(Zc**b, axis=1)
                out[:, j + 1, k] = acc
        return out

    def matrix(self, z: Sequence[complex]) -> np.ndarray:
        zv = np.asarray(z, dtype=np.complex128)
        return self.matrix_many(zv[None, :])[0]

    def singular_values_many(self, points: np.ndarray) -> np.ndarray:
        """Singular values (descending) per point, shape (n, q+1)."""
        return np.linalg.svd(self.matrix_many(points), compute_uv=False)


def independence_matrix(E: GraphEmbedding, z: Sequence[complex]) -> np.ndarray:
    """Rows: z, then df_j/dzbar(z) for each graph function.  Shape (q+1, m)."""
    zv = require_on_sphere(z)
    if len(zv) != E.m:
        raise ValueError(f"point has length {len(zv)}, expected {E.m}")
    rows = [zv]
    for fj in E.f:
        rows.append(np.array([fj.d_zbar(k).eval(zv) for k in range(E.m)]))
    return np.vstack(rows)


@dataclass(frozen=True)
class IndependenceReport:
    """Rank verdict for the independence matrix at one sphere point."""

    z: tuple[complex, ...]
    sigma_min: float
    sigma_max: float
    rank: int
    cr_regular: bool
    marginal: bool
    tol: float

    def to_json_dict(self) -> dict:
        return {
            "z": [[w.real, w.imag] for w in self.z],
            "sigma_min": self.sigma_min,
            "sigma_max": self.sigma_max,
            "rank": self.rank,
            "cr_regular": self.cr_regular,
            "marginal": self.marginal,
            "tol": self.tol,
        }


def _is_marginal(sigma_min: float, sigma_max: float, tol: float) -> bool:
    threshold = tol * sigma_max
    if threshold == 0.0:
        return False
    return threshold / MARGINAL_FACTOR < sigma_min < threshold * MARGINAL_FACTOR


def point_report(
    E: GraphEmbedding, z: Sequence[complex], tol: float = DEFAULT_RANK_TOL
) -> IndependenceReport:
    """Singular-value rank test of the independence matrix at z."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    M = independence_matrix(E, z)
    s = np.linalg.svd(M, compute_uv=False)
    rank = numerical_rank(s, tol)
    sigma_min = float(s[-1])
    sigma_max = float(s[0])
    return IndependenceReport(
        z=tuple(complex(w) for w in np.asarray(z, dtype=np.complex128)),
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        rank=rank,
        cr_regular=rank == E.q + 1,
        marginal=_is_marginal(sigma_min, sigma_max, tol),
        tol=tol,
    )


# -- criterion 2: defining functions and their wedge ------------------------------

def defining_functions(E: GraphEmbedding) -> list[WPolynomial]:
    """The 2q+1 real polynomials in m+q variables cutting out the embedded graph.

    First the sphere equation -1 + sum_k z_k zbar_k, then for each graph
    function the real and imaginary parts of z_{m+j} - f_j, extracted exactly
    via u = (g + conj g)/2 and v = (g - conj g)/(2i).
    """
    mq = E.m + E.q
    zeros = (0,) * mq
    sphere_terms = {(zeros, zeros): GaussianRational.of(-1)}
    for k in range(E.m):
        e = tuple(1 if i == k else 0 for i in range(mq))
        sphere_terms[(e, e)] = GaussianRational.of(1)
    rhos = [WPolynomial(mq, sphere_terms)]
    half = Fraction(1, 2)
    minus_half_i = GaussianRational.of(0, Fraction(-1, 2))  # 1/(2i)
    for j, fj in enumerate(E.f):
        g = WPolynomial.variable(mq, E.m + j) - fj.pad_to(mq)
        u = (g + g.conj()) * half
        v = (g - g.conj()) * minus_half_i
        assert u.is_real() and v.is_real()
        rhos.extend([u, v])
    return rhos


# -- criterion 3: brute-force tangent-space count ----------------------------------

def _realify(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


def _tangent_intersection_dim(
    A: np.ndarray, B: np.ndarray, z: np.ndarray, tol: float
) -> int:
    """dim_C(T ∩ JT) for T the pushforward of the sphere tangent at z.

    A and B are the (q, m) holomorphic / antiholomorphic Jacobians of the
    graph functions at z.  Works entirely in real coordinates: T is spanned
    by the pushforwards of an orthonormal real basis of the sphere tangent,
    J acts as multiplication by i, and the intersection dimension comes from
    dim(T) + dim(JT) - rank([T; JT]).
    """
    m = z.shape[0]
    basis = null_space(_realify(z)[None, :])  # (2m, 2m-1), orthonormal
    W = basis[:m, :] + 1j * basis[m:, :]      # tangent vectors as columns
    DF = A @ W + B @ np.conj(W)               # real-linear pushforward
    V = np.vstack([W, DF])                    # image vectors as columns, (m+q, 2m-1)
    T = np.hstack([V.T.real, V.T.imag])
    JV = 1j * V
    JT = np.hstack([JV.T.real, JV.T.imag])
    S = np.vstack([T, JT])
    s = np.linalg.svd(S, compute_uv=False)
    rank = numerical_rank(s, tol)
    dim_t = 2 * m - 1
    total = 2 * dim_t - rank
    if total % 2:
        raise RankToleranceError(
            "tangent intersection has odd real dimension "
            f"{total}; singular values near threshold: {s.tolist()}"
        )
    return total // 2


def cr_dim_at(
    E: GraphEmbedding, z: Sequence[complex], tol: float = DEFAULT_RANK_TOL
) -> int:
    """Complex dimension of T ∩ JT at z, for T the pushed-forward sphere tangent.

    Equals m - q - 1 exactly at CR regular points.  This is the brute-force
    oracle: it never touches the independence matrix or the defining
    functions.
    """
    zv = require_on_sphere(z)
    if len(zv) != E.m:
        raise ValueError(f"point has length {len(zv)}, expected {E.m}")
    A = np.array(
        [[fj.d_z(k).eval(zv) for k in range(E.m)] for fj in E.f],
        dtype=np.complex128,
    )
    B = np.array(
        [[fj.d_zbar(k).eval(zv) for k in range(E.m)] for fj in E.f],
        dtype=np.complex128,
    )
    return _tangent_intersection_dim(A, B, zv, tol)


# -- the two-form identity behind the defining-function route ----------------------

def two_form_identity_check(f: WPolynomial, w: Sequence[complex]) -> float:
    """Residual of du ^ dv = (i/2) df ^ conj(dbar f) at a point, in max modulus.

    u and v are the real and imaginary parts of f, extracted exactly;
    conj(dbar f) is represented as the (1,0)-form with coefficients
    conj(df/dzbar_j).
    """
    wv = np.asarray(w, dtype=np.complex128)
    if len(wv) != f.m:
        raise ValueError(f"point has length {len(wv)}, expected {f.m}")
    half = Fraction(1, 2)
    u = (f + f.conj()) * half
    v = (f - f.conj()) * GaussianRational.of(0, Fraction(-1, 2))
    lhs = wedge(del_form(u, wv), del_form(v, wv))
    df = OneForm(np.array([f.d_z(j).eval(wv) for j in range(f.m)]))
    dbar_conj = OneForm(
        np.conj(np.array([f.d_zbar(j).eval(wv) for j in range(f.m)]))
    )
    rhs_coeffs = 0.5j * wedge(df, dbar_conj).coeffs
    return float(np.abs(lhs.coeffs - rhs_coeffs).max())


# -- agreement of all three criteria -----------------------------------------------

@dataclass(frozen=True)
class EquivalenceResult:
    """Verdicts of the three criteria at one point, plus their agreement."""

    z: tuple[complex, ...]
    tol: float
    rank_pass: bool
    wedge_pass: bool
    tangent_pass: bool
    cr_dim: int
    expected_cr_dim: int
    sigma_min: float

    @property
    def agree(self) -> bool:
        return self.rank_pass == self.wedge_pass == self.tangent_pass

    @property
    def all_pass(self) -> bool:
        return self.rank_pass and self.wedge_pass and self.tangent_pass

    def to_json_dict(self) -> dict:
        return {
            "z": [[w.real, w.imag] for w in self.z],
            "tol": self.tol,
            "rank_pass": self.rank_pass,
            "wedge_pass": self.wedge_pass,
            "tangent_pass": self.tangent_pass,
            "cr_dim": self.cr_dim,
            "expected_cr_dim": self.expected_cr_dim,
            "sigma_min": self.sigma_min,
            "agree": self.agree,
        }


def equivalence_check(
    E: GraphEmbedding, z: Sequence[complex], tol: float = DEFAULT_RANK_TOL
) -> EquivalenceResult:
    """Run all three criteria at one point; disagreement is an internal error state."""
    return equivalence_check_many(E, np.asarray(z, dtype=np.complex128)[None, :], tol)[0]


def equivalence_check_many(
    E: GraphEmbedding, points: np.ndarray, tol: float = DEFAULT_RANK_TOL
) -> list[EquivalenceResult]:
    """Vector of equivalence checks sharing one precomputed defining-function set."""
    Z = np.asarray(points, dtype=np.complex128)
    if Z.ndim != 2 or Z.shape[1] != E.m:
        raise ValueError(f"expected shape (n, {E.m}), got {Z.shape}")
    rhos = defining_functions(E)
    rho_dz = [[r.d_z(j) for j in range(r.m)] for r in rhos]
    dz_polys = [[fj.d_z(k) for k in range(E.m)] for fj in E.f]
    dzbar_polys = [[fj.d_zbar(k) for k in range(E.m)] for fj in E.f]
    expected = E.m - E.q - 1
    results = []
    for z in Z:
        zv = require_on_sphere(z)
        w = np.concatenate([zv, np.array([fj.eval(zv) for fj in E.f])])
        forms = [
            OneForm(np.array([dj.eval(w) for dj in row])) for row in rho_dz
        ]
        wedge_pass = wedge_nonzero(forms, tol)

        rep = point_report(E, zv, tol)

        A = np.array([[p.eval(zv) for p in row] for row in dz_polys],
                     dtype=np.complex128)
        B = np.array([[p.eval(zv) for p in row] for row in dzbar_polys],
                     dtype=np.complex128)
        cd = _tangent_intersection_dim(A, B, zv, tol)

        results.append(
            EquivalenceResult(
                z=tuple(complex(x) for x in zv),
                tol=tol,
                rank_pass=rep.cr_regular,
                wedge_pass=wedge_pass,
                tangent_pass=cd == expected,
                cr_dim=cd,
                expected_cr_dim=expected,
                sigma_min=rep.sigma_min,
            )
        )
    return results
