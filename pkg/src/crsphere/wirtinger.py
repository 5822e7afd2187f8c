"""Exact sparse polynomials in z_1..z_m and their conjugates zbar_1..zbar_m.

A polynomial is stored as a map from monomials to Gaussian-rational
coefficients:

    terms: Dict[(alpha, beta), GaussianRational]

where ``alpha`` and ``beta`` are length-m tuples of non-negative integer
exponents, the monomial being  z^alpha * zbar^beta.  z_j and zbar_j are
treated as independent commuting variables, so the formal partial
derivatives ``d_z`` / ``d_zbar`` realize the Wirtinger operators on this
class.  Coefficients are exact (pairs of ``fractions.Fraction``), which makes
polynomial identity checks plain equality of canonical forms.  Floating-point
arithmetic enters only at evaluation time.

The zero polynomial is the empty term map.  Terms are kept in canonical form
(no zero coefficients), and the canonical term order is graded lexicographic
on the concatenated exponent vector alpha+beta; it fixes the evaluation and
serialization order.

All values are immutable after construction; every operation returns a new
polynomial, so values can be shared freely between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np

RationalLike = Union[int, Fraction]
Key = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Exact complex number re + im*i with rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re: RationalLike = 0, im: RationalLike = 0) -> "GaussianRational":
        return GaussianRational(Fraction(re), Fraction(im))

    @staticmethod
    def coerce(value: "GaussianRational | RationalLike") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value), Fraction(0))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __add__(self, other: "GaussianRational | RationalLike"):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational.of(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational | RationalLike"):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational.of(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational | RationalLike"):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational.of(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        istr = "i" if mag == 1 else f"{mag}i"
        return f"({self.re}{sign}{istr})"


GR_ZERO = GaussianRational.of(0)
GR_ONE = GaussianRational.of(1)
GR_I = GaussianRational.of(0, 1)


def _term_order(key: Key) -> tuple[int, tuple[int, ...]]:
    """Graded lexicographic order on the concatenated exponent vector."""
    alpha, beta = key
    return (sum(alpha) + sum(beta), alpha + beta)


class WPolynomial:
    """Sparse exact polynomial in z_1..z_m, zbar_1..zbar_m."""

    __slots__ = ("m", "_terms")

    def __init__(
        self,
        m: int,
        terms: Mapping[Key, GaussianRational | RationalLike]
        | Iterable[tuple[Key, GaussianRational | RationalLike]] = (),
    ):
        if m < 1:
            raise ValueError(f"variable count must be >= 1, got {m}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        canon: dict[Key, GaussianRational] = {}
        for (alpha, beta), coeff in items:
            alpha = tuple(alpha)
            beta = tuple(beta)
            if len(alpha) != m or len(beta) != m:
                raise ValueError(
                    f"exponent vectors must have length m={m}, "
                    f"got alpha={alpha}, beta={beta}"
                )
            if any(e < 0 for e in alpha) or any(e < 0 for e in beta):
                raise ValueError(f"negative exponent in ({alpha}, {beta})")
            c = GaussianRational.coerce(coeff)
            key = (alpha, beta)
            acc = canon.get(key)
            c = c if acc is None else acc + c
            if c:
                canon[key] = c
            elif key in canon:
                del canon[key]
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_terms", canon)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(m: int) -> "WPolynomial":
        return WPolynomial(m)

    @staticmethod
    def constant(m: int, value: GaussianRational | RationalLike) -> "WPolynomial":
        zeros = (0,) * m
        return WPolynomial(m, {(zeros, zeros): value})

    @staticmethod
    def variable(m: int, j: int) -> "WPolynomial":
        """The polynomial z_j (0-based index)."""
        _check_index(m, j)
        alpha = tuple(1 if k == j else 0 for k in range(m))
        return WPolynomial(m, {(alpha, (0,) * m): 1})

    @staticmethod
    def conj_variable(m: int, j: int) -> "WPolynomial":
        """The polynomial zbar_j (0-based index)."""
        _check_index(m, j)
        beta = tuple(1 if k == j else 0 for k in range(m))
        return WPolynomial(m, {((0,) * m, beta): 1})

    @staticmethod
    def monomial(
        m: int,
        alpha: Sequence[int],
        beta: Sequence[int],
        coeff: GaussianRational | RationalLike = 1,
    ) -> "WPolynomial":
        return WPolynomial(m, {(tuple(alpha), tuple(beta)): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[Key, GaussianRational]:
        """Canonical term map.  Treat as read-only."""
        return self._terms

    def sorted_terms(self) -> list[tuple[Key, GaussianRational]]:
        """Terms in canonical (graded lexicographic) order."""
        return sorted(self._terms.items(), key=lambda kv: _term_order(kv[0]))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WPolynomial):
            return NotImplemented
        return self.m == other.m and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (alpha, beta), c in self.sorted_terms():
            factors = [f"z{k + 1}" + (f"^{e}" if e > 1 else "")
                       for k, e in enumerate(alpha) if e > 0]
            factors += [f"zb{k + 1}" + (f"^{e}" if e > 1 else "")
                        for k, e in enumerate(beta) if e > 0]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == GR_ONE:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WPolynomial(m={self.m}, {self})"

    # -- ring operations ---------------------------------------------------

    def _require_same_m(self, other: "WPolynomial") -> None:
        if self.m != other.m:
            raise ValueError(
                f"variable count mismatch: {self.m} vs {other.m}"
            )

    def __add__(self, other: "WPolynomial") -> "WPolynomial":
        if not isinstance(other, WPolynomial):
            return NotImplemented
        self._require_same_m(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return _raw(self.m, out)

    def __sub__(self, other: "WPolynomial") -> "WPolynomial":
        if not isinstance(other, WPolynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "WPolynomial":
        return _raw(self.m, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other: "WPolynomial | GaussianRational | RationalLike"):
        if isinstance(other, WPolynomial):
            self._require_same_m(other)
            out: dict[Key, GaussianRational] = {}
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    key = (
                        tuple(x + y for x, y in zip(a1, a2)),
                        tuple(x + y for x, y in zip(b1, b2)),
                    )
                    c = c1 * c2
                    acc = out.get(key)
                    c = c if acc is None else acc + c
                    if c:
                        out[key] = c
                    elif key in out:
                        del out[key]
            return _raw(self.m, out)
        scalar = GaussianRational.coerce(other)
        if not scalar:
            return WPolynomial.zero(self.m)
        return _raw(self.m, {k: c * scalar for k, c in self._terms.items()})

    def __rmul__(self, other: "GaussianRational | RationalLike") -> "WPolynomial":
        return self.__mul__(other)

    # -- conjugation and Wirtinger derivatives ------------------------------

    def conj(self) -> "WPolynomial":
        """Complex conjugate: swaps z- and zbar-exponents, conjugates coefficients."""
        return _raw(
            self.m,
            {(b, a): c.conjugate() for (a, b), c in self._terms.items()},
        )

    def is_real(self) -> bool:
        """True iff the polynomial equals its own conjugate."""
        return self.conj() == self

    def d_z(self, j: int) -> "WPolynomial":
        """Formal partial derivative with respect to z_j (0-based)."""
        _check_index(self.m, j)
        out: dict[Key, GaussianRational] = {}
        for (alpha, beta), c in self._terms.items():
            e = alpha[j]
            if e == 0:
                continue
            a = alpha[:j] + (e - 1,) + alpha[j + 1:]
            key = (a, beta)
            d = c * GaussianRational.of(e)
            acc = out.get(key)
            d = d if acc is None else acc + d
            if d:
                out[key] = d
            elif key in out:
                del out[key]
        return _raw(self.m, out)

    def d_zbar(self, j: int) -> "WPolynomial":
        """Formal partial derivative with respect to zbar_j (0-based)."""
        _check_index(self.m, j)
        out: dict[Key, GaussianRational] = {}
        for (alpha, beta), c in self._terms.items():
            e = beta[j]
            if e == 0:
                continue
            b = beta[:j] + (e - 1,) + beta[j + 1:]
            key = (alpha, b)
            d = c * GaussianRational.of(e)
            acc = out.get(key)
            d = d if acc is None else acc + d
            if d:
                out[key] = d
            elif key in out:
                del out[key]
        return _raw(self.m, out)

    # -- evaluation ---------------------------------------------------------

    def eval(self, z: Sequence[complex]) -> complex:
        """Evaluate at a point of C^m, summing terms in canonical order."""
        if len(z) != self.m:
            raise ValueError(f"point has length {len(z)}, expected {self.m}")
        zv = [complex(w) for w in z]
        zc = [w.conjugate() for w in zv]
        total = 0j
        for (alpha, beta), c in self.sorted_terms():
            term = complex(c)
            for k, e in enumerate(alpha):
                if e:
                    term *= zv[k] ** e
            for k, e in enumerate(beta):
                if e:
                    term *= zc[k] ** e
            total += term
        return total

    # -- reshaping -----------------------------------------------------------

    def pad_to(self, m_new: int) -> "WPolynomial":
        """Reinterpret over a larger variable set; new variables get exponent 0."""
        if m_new < self.m:
            raise ValueError(f"cannot shrink from {self.m} to {m_new} variables")
        if m_new == self.m:
            return self
        ext = (0,) * (m_new - self.m)
        return _raw(
            m_new,
            {(a + ext, b + ext): c for (a, b), c in self._terms.items()},
        )

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "terms": [
                {
                    "alpha": list(alpha),
                    "beta": list(beta),
                    "re": str(c.re),
                    "im": str(c.im),
                }
                for (alpha, beta), c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "WPolynomial":
        m = int(data["m"])
        terms = [
            (
                (tuple(int(e) for e in t["alpha"]), tuple(int(e) for e in t["beta"])),
                GaussianRational(Fraction(t["re"]), Fraction(t["im"])),
            )
            for t in data["terms"]
        ]
        # constructor merges duplicates and drops zeros
        return WPolynomial(m, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    @staticmethod
    def loads(text: str) -> "WPolynomial":
        return WPolynomial.from_json_dict(json.loads(text))


def _raw(m: int, terms: dict[Key, GaussianRational]) -> WPolynomial:
    """Build from an already-canonical term dict, skipping validation."""
    p = WPolynomial.__new__(WPolynomial)
    object.__setattr__(p, "m", m)
    object.__setattr__(p, "_terms", terms)
    return p


def _check_index(m: int, j: int) -> None:
    if not 0 <= j < m:
        raise ValueError(f"variable index {j} out of range for m={m}")


# -- batched evaluation -------------------------------------------------------

def term_arrays(p: WPolynomial) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonically ordered (alpha matrix, beta matrix, coefficient vector)."""
    items = p.sorted_terms()
    if not items:
        return (
            np.zeros((0, p.m), dtype=np.int64),
            np.zeros((0, p.m), dtype=np.int64),
            np.zeros(0, dtype=np.complex128),
        )
    A = np.array([key[0] for key, _ in items], dtype=np.int64)
    B = np.array([key[1] for key, _ in items], dtype=np.int64)
    C = np.array([complex(c) for _, c in items], dtype=np.complex128)
    return A, B, C


def eval_many(p: WPolynomial, points: np.ndarray) -> np.ndarray:
    """Evaluate at a batch of points, shape (n, m) -> (n,)."""
    Z = np.asarray(points, dtype=np.complex128)
    if Z.ndim != 2 or Z.shape[1] != p.m:
        raise ValueError(f"expected point array of shape (n, {p.m}), got {Z.shape}")
    A, B, C = term_arrays(p)
    Zc = np.conj(Z)
    out = np.zeros(Z.shape[0], dtype=np.complex128)
    for a, b, c in zip(A, B, C):
        out += c * np.prod(Z**a, axis=1) * np.prod(Zc**b, axis=1)
    return out


# -- finite-difference oracle ---------------------------------------------------

def wirtinger_fd(
    f: "WPolynomial | Callable[[np.ndarray], complex]",
    z: Sequence[complex],
    j: int,
    h: float = 1e-5,
    kind: str = "zbar",
) -> complex:
    """Central-difference estimate of a Wirtinger derivative at a point.

    ``kind="zbar"`` estimates df/dzbar_j = (df/dx_j + i df/dy_j)/2,
    ``kind="z"``    estimates df/dz_j    = (df/dx_j - i df/dy_j)/2.
    Error is O(h^2) for polynomial f.
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    if kind not in ("zbar", "z"):
        raise ValueError(f"kind must be 'z' or 'zbar', got {kind!r}")
    fn = f.eval if isinstance(f, WPolynomial) else f
    z0 = np.asarray(z, dtype=np.complex128)
    _check_index(len(z0), j)
    e = np.zeros_like(z0)
    e[j] = 1.0
    dx = (fn(z0 + h * e) - fn(z0 - h * e)) / (2 * h)
    dy = (fn(z0 + 1j * h * e) - fn(z0 - 1j * h * e)) / (2 * h)
    if kind == "zbar":
        return 0.5 * (dx + 1j * dy)
    return 0.5 * (dx - 1j * dy)
