"""Exact paired-side evaluators for the convolution identities, and a
degree-bounded grid checker that promotes pointwise equality to identity.

Every evaluator returns the exact (left, right) pair at one point; for a
true identity the two values agree at every admissible point.  Equality as
polynomials follows from equality on a large enough product grid: if both
sides have degree at most D in each free variable, agreement at D + 1
distinct values per variable forces the difference to vanish identically.
The rational forms (the Abel identities and the x/(x - k.z)-weighted sums)
reduce to polynomial comparisons after clearing the finitely many listed
denominators, so the same grid argument applies on pole-free points.

The catalog below records, per identity: the free variables, the degree
bound, the pole set (as explicit factors of the point), and the evaluator.
verify_identity_on_grid builds a pole-free integer product grid sized by
the degree bound and checks exact equality at every point.

Conventions shared by all evaluators:

* multinomial(x, n) is the total function: zero whenever n has a negative
  entry, so sums may range over the full box 0 <= k <= n.
* the Abel factor x(x - kz)^(k-1) is read as (x/(x - kz)) * (x - kz)^k,
  which makes the k = 0 term exactly 1 and requires x != 0.
* summation over multi-indices is in lexicographic order; with exact
  arithmetic the order is irrelevant, but reports stay reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .arith import (
    MultiIndex,
    Scalar,
    box,
    dot,
    format_scalar,
    multinomial,
    norm,
    unit,
    vec_sub,
)
from .errors import (
    DimensionMismatchError,
    GridExhaustedError,
    PoleError,
    PreconditionError,
)
from .reports import VERDICT_EQUAL, VERDICT_MISMATCH, EvalReport

__all__ = [
    "IdentitySpec",
    "eval_abel_1",
    "eval_abel_2",
    "eval_rothe_1",
    "eval_rothe_2",
    "eval_gould",
    "eval_jensen",
    "eval_raney_mohanty_1",
    "eval_raney_mohanty_2",
    "eval_mohanty_handa",
    "eval_gould_mohanty",
    "eval_gmh_special",
    "eval_kmx",
    "eval_kmpink",
    "eval_pkroth",
    "check_absorption",
    "check_rm2_decomposition",
    "check_mh_expansion",
    "catalog_names",
    "identity_variables",
    "verify_identity_on_grid",
    "verify_identity_at_point",
]


def _frac(v: Scalar) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _nat(n: object, what: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise PreconditionError(f"{what} must be a natural number, got {n!r}")
    return n


def _nat_vector(v: object, what: str) -> MultiIndex:
    try:
        entries = tuple(v)  # type: ignore[arg-type]
    except TypeError:
        raise PreconditionError(f"{what} must be a vector of naturals, got {v!r}")
    return tuple(_nat(e, f"{what} entry") for e in entries)


def _same_dim(n: MultiIndex, z: MultiIndex) -> None:
    if len(n) != len(z):
        raise DimensionMismatchError(
            f"n has dimension {len(n)} but z has dimension {len(z)}"
        )


def _power(base: Scalar, exp: int) -> Fraction:
    """base**exp with 0**0 = 1; negative exponents via the reciprocal."""
    base = _frac(base)
    if exp >= 0:
        return base**exp
    if base == 0:
        raise PoleError(f"zero base raised to the negative power {exp}")
    return base**exp  # Fraction supports negative exponents on nonzero values


# ---------------------------------------------------------------------------
# classical single-variable forms (m = 1)
# ---------------------------------------------------------------------------


def eval_abel_1(x: Scalar, y: Scalar, z: Scalar, n: int) -> tuple[Fraction, Fraction]:
    """sum_k C(n,k) x(x-kz)^(k-1) (y+kz)^(n-k)  vs  (x+y)^n."""
    x, y, z = _frac(x), _frac(y), _frac(z)
    n = _nat(n, "n")
    if x == 0:
        raise PoleError("requires x != 0: the k = 0 term reads x * x^(-1)")
    lhs = Fraction(0)
    for k in range(n + 1):
        lhs += math.comb(n, k) * x * _power(x - k * z, k - 1) * _power(y + k * z, n - k)
    return lhs, _power(x + y, n)


def eval_abel_2(x: Scalar, y: Scalar, z: Scalar, n: int) -> tuple[Fraction, Fraction]:
    """sum_k C(n,k) x(y+nz)(x-kz)^(k-1)(y+kz)^(n-k-1)  vs  (x+y+nz)(x+y)^(n-1).

    This is the companion of Abel's identity, normalized so the right side
    is (x+y+nz)(x+y)^(n-1); under y -> y - nz it is the classical symmetric
    form sum_k C(n,k) xy(x-kz)^(k-1)(y-(n-k)z)^(n-k-1) = (x+y)(x+y-nz)^(n-1).
    """
    x, y, z = _frac(x), _frac(y), _frac(z)
    n = _nat(n, "n")
    if x == 0:
        raise PoleError("requires x != 0: the k = 0 term reads x * x^(-1)")
    if y + n * z == 0:
        raise PoleError(f"requires y + nz != 0: the k = {n} term has exponent -1")
    if n == 0 and x + y == 0:
        raise PoleError("requires x + y != 0 when n = 0: the right side reads (x+y)^(-1)")
    lhs = Fraction(0)
    for k in range(n + 1):
        lhs += (
            math.comb(n, k)
            * x
            * (y + n * z)
            * _power(x - k * z, k - 1)
            * _power(y + k * z, n - k - 1)
        )
    rhs = (x + y + n * z) * _power(x + y, n - 1)
    return lhs, rhs


def eval_rothe_1(x: Scalar, y: Scalar, z: Scalar, n: int) -> tuple[Fraction, Fraction]:
    """sum_k (x/(x-kz)) C(x-kz,k) C(y+kz,n-k)  vs  C(x+y,n)."""
    x, y, z = _frac(x), _frac(y), _frac(z)
    n = _nat(n, "n")
    offenders = [k for k in range(n + 1) if x - k * z == 0]
    if offenders:
        raise PoleError(f"x - kz vanishes at k = {offenders}; requires x - kz != 0 for 0 <= k <= n")
    lhs = Fraction(0)
    for k in range(n + 1):
        lhs += (
            x / (x - k * z)
            * multinomial(x - k * z, (k,))
            * multinomial(y + k * z, (n - k,))
        )
    return lhs, multinomial(x + y, (n,))


def eval_rothe_2(x: Scalar, y: Scalar, z: Scalar, n: int) -> tuple[Fraction, Fraction]:
    """sum_k xy/((x-kz)(y-(n-k)z)) C(x-kz,k) C(y-(n-k)z,n-k)
    vs  (x+y)/(x+y-nz) C(x+y-nz,n)."""
    x, y, z = _frac(x), _frac(y), _frac(z)
    n = _nat(n, "n")
    offenders = [k for k in range(n + 1) if x - k * z == 0]
    if offenders:
        raise PoleError(f"x - kz vanishes at k = {offenders}")
    offenders = [k for k in range(n + 1) if y - (n - k) * z == 0]
    if offenders:
        raise PoleError(f"y - (n-k)z vanishes at k = {offenders}")
    if x + y - n * z == 0:
        raise PoleError("x + y - nz vanishes; the right side has a pole")
    lhs = Fraction(0)
    for k in range(n + 1):
        lhs += (
            x
            * y
            / ((x - k * z) * (y - (n - k) * z))
            * multinomial(x - k * z, (k,))
            * multinomial(y - (n - k) * z, (n - k,))
        )
    rhs = (x + y) / (x + y - n * z) * multinomial(x + y - n * z, (n,))
    return lhs, rhs


def eval_gould(
    x: Scalar, y: Scalar, z: Scalar, eps: Scalar, n: int
) -> tuple[Fraction, Fraction]:
    """sum_k C(x-kz,k) C(y+kz,n-k)  vs  sum_k C(x+e-kz,k) C(y-e+kz,n-k)."""
    x, y, z, eps = _frac(x), _frac(y), _frac(z), _frac(eps)
    n = _nat(n, "n")
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in range(n + 1):
        lhs += multinomial(x - k * z, (k,)) * multinomial(y + k * z, (n - k,))
        rhs += multinomial(x + eps - k * z, (k,)) * multinomial(y - eps + k * z, (n - k,))
    return lhs, rhs


def eval_jensen(x: Scalar, y: Scalar, z: Scalar, n: int) -> tuple[Fraction, Fraction]:
    """sum_k C(x+kz,k) C(y-kz,n-k)  vs  sum_k C(x+y-k,n-k) z^k."""
    x, y, z = _frac(x), _frac(y), _frac(z)
    n = _nat(n, "n")
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in range(n + 1):
        lhs += multinomial(x + k * z, (k,)) * multinomial(y - k * z, (n - k,))
        rhs += multinomial(x + y - k, (n - k,)) * _power(z, k)
    return lhs, rhs


# ---------------------------------------------------------------------------
# multi-index forms (any m >= 1)
# ---------------------------------------------------------------------------


def eval_raney_mohanty_1(
    x: Scalar, y: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_{0<=k<=n} (x/(x-k.z)) C(x-k.z,k) C(y+k.z,n-k)  vs  C(x+y,n)."""
    x, y = _frac(x), _frac(y)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    offenders = [list(k) for k in box(n) if x - dot(k, z) == 0]
    if offenders:
        raise PoleError(f"x - k.z vanishes at k in {offenders}")
    lhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        lhs += x / (x - kz) * multinomial(x - kz, k) * multinomial(y + kz, vec_sub(n, k))
    return lhs, multinomial(x + y, n)


def eval_raney_mohanty_2(
    x: Scalar, y: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_k xy/((x-k.z)(y-(n-k).z)) C(x-k.z,k) C(y-(n-k).z,n-k)
    vs  (x+y)/(x+y-n.z) C(x+y-n.z,n)."""
    x, y = _frac(x), _frac(y)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    offenders = [list(k) for k in box(n) if x - dot(k, z) == 0]
    if offenders:
        raise PoleError(f"x - k.z vanishes at k in {offenders}")
    offenders = [list(k) for k in box(n) if y - dot(vec_sub(n, k), z) == 0]
    if offenders:
        raise PoleError(f"y - (n-k).z vanishes at k in {offenders}")
    if x + y - dot(n, z) == 0:
        raise PoleError("x + y - n.z vanishes; the right side has a pole")
    lhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        rz = dot(vec_sub(n, k), z)
        lhs += (
            x
            * y
            / ((x - kz) * (y - rz))
            * multinomial(x - kz, k)
            * multinomial(y - rz, vec_sub(n, k))
        )
    nz = dot(n, z)
    rhs = (x + y) / (x + y - nz) * multinomial(x + y - nz, n)
    return lhs, rhs


def eval_mohanty_handa(
    x: Scalar, y: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_k C(x+k.z,k) C(y-k.z,n-k)  vs  sum_k C(x+y-|k|,n-k) C(|k|,k) z^k."""
    x, y = _frac(x), _frac(y)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        lhs += multinomial(x + kz, k) * multinomial(y - kz, vec_sub(n, k))
        z_pow = math.prod(zi**ki for zi, ki in zip(z, k))
        rhs += multinomial(x + y - norm(k), vec_sub(n, k)) * multinomial(norm(k), k) * z_pow
    return lhs, rhs


def eval_gould_mohanty(
    x: Scalar, y: Scalar, eps: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_k C(x-k.z,k) C(y+k.z,n-k)  vs  sum_k C(x+e-k.z,k) C(y-e+k.z,n-k)."""
    x, y, eps = _frac(x), _frac(y), _frac(eps)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        r = vec_sub(n, k)
        lhs += multinomial(x - kz, k) * multinomial(y + kz, r)
        rhs += multinomial(x + eps - kz, k) * multinomial(y - eps + kz, r)
    return lhs, rhs


def eval_gmh_special(
    p: Scalar, q: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """Gould-Mohanty at eps = 1:
    sum_k C(p-k.z,k) C(q+k.z,n-k)  vs  sum_k C(p+1-k.z,k) C(q-1+k.z,n-k)."""
    p, q = _frac(p), _frac(q)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        r = vec_sub(n, k)
        lhs += multinomial(p - kz, k) * multinomial(q + kz, r)
        rhs += multinomial(p + 1 - kz, k) * multinomial(q - 1 + kz, r)
    return lhs, rhs


def eval_kmx(
    p: Scalar, q: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_k [ C(p-k.z,k) C(q+k.z,n-k)
              + sum_i sum_{j=1}^{z_i} C(p-k.z+j-1,k-e_i) C(q+k.z-j,n-k) ]
    vs  C(p+q,n)."""
    p, q = _frac(p), _frac(q)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    m = len(n)
    lhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        r = vec_sub(n, k)
        term = multinomial(p - kz, k) * multinomial(q + kz, r)
        for i in range(1, m + 1):
            ki = vec_sub(k, unit(m, i))
            for j in range(1, z[i - 1] + 1):
                term += multinomial(p - kz + j - 1, ki) * multinomial(q + kz - j, r)
        lhs += term
    return lhs, multinomial(p + q, n)


def eval_kmpink(
    p: Scalar, q: Scalar, n: MultiIndex, z: MultiIndex, i: int, j: int
) -> tuple[Fraction, Fraction]:
    """sum_k C(p-k.z+j-1,k-e_i) C(q+k.z-j,n-k)
    vs  sum_k C(p-k.z-1,k-e_i) C(q+k.z,n-k),  for 1 <= j <= z_i."""
    p, q = _frac(p), _frac(q)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    m = len(n)
    if not 1 <= i <= m:
        raise PreconditionError(f"letter index i = {i} out of range 1..{m}")
    if not 1 <= j <= z[i - 1]:
        raise PreconditionError(f"requires 1 <= j <= z_i, got j = {j} with z_{i} = {z[i - 1]}")
    e_i = unit(m, i)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        ki = vec_sub(k, e_i)
        r = vec_sub(n, k)
        lhs += multinomial(p - kz + j - 1, ki) * multinomial(q + kz - j, r)
        rhs += multinomial(p - kz - 1, ki) * multinomial(q + kz, r)
    return lhs, rhs


def eval_pkroth(
    p: Scalar, q: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_k [ C(p-k.z,k) + sum_i z_i C(p-k.z-1,k-e_i) ] C(q+k.z,n-k)
    vs  C(p+q,n)."""
    p, q = _frac(p), _frac(q)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    m = len(n)
    lhs = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        head = multinomial(p - kz, k)
        for i in range(1, m + 1):
            head += z[i - 1] * multinomial(p - kz - 1, vec_sub(k, unit(m, i)))
        lhs += head * multinomial(q + kz, vec_sub(n, k))
    return lhs, multinomial(p + q, n)


def check_absorption(
    p: Scalar, k: MultiIndex, z: MultiIndex, i: int
) -> tuple[Fraction, Fraction]:
    """C(p-k.z-1, k-e_i)  vs  (k_i/(p-k.z)) C(p-k.z, k),  p-k.z != 0."""
    p = _frac(p)
    k, z = _nat_vector(k, "k"), _nat_vector(z, "z")
    _same_dim(k, z)
    m = len(k)
    if not 1 <= i <= m:
        raise PreconditionError(f"letter index i = {i} out of range 1..{m}")
    kz = dot(k, z)
    if p - kz == 0:
        raise PoleError(f"requires p - k.z != 0, got p = {format_scalar(p)}, k.z = {kz}")
    lhs = multinomial(p - kz - 1, vec_sub(k, unit(m, i)))
    rhs = Fraction(k[i - 1]) / (p - kz) * multinomial(p - kz, k)
    return lhs, rhs


def check_rm2_decomposition(
    x: Scalar, y: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """The two-sum rewriting of the second Raney-Mohanty form's left side:

    sum_k xy/((x-k.z)(y-(n-k).z)) C C  vs  (S1 + S2)/(x+y-n.z)  where
    S1 = sum_k (xy/(x-k.z)) C C  and  S2 = sum_k (xy/(y-(n-k).z)) C C.
    """
    x, y = _frac(x), _frac(y)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    offenders = [list(k) for k in box(n) if x - dot(k, z) == 0]
    if offenders:
        raise PoleError(f"x - k.z vanishes at k in {offenders}")
    offenders = [list(k) for k in box(n) if y - dot(vec_sub(n, k), z) == 0]
    if offenders:
        raise PoleError(f"y - (n-k).z vanishes at k in {offenders}")
    nz = dot(n, z)
    if x + y - nz == 0:
        raise PoleError("x + y - n.z vanishes")
    lhs = Fraction(0)
    s1 = Fraction(0)
    s2 = Fraction(0)
    for k in box(n):
        kz = dot(k, z)
        rz = dot(vec_sub(n, k), z)
        prod = multinomial(x - kz, k) * multinomial(y - rz, vec_sub(n, k))
        lhs += x * y / ((x - kz) * (y - rz)) * prod
        s1 += x * y / (x - kz) * prod
        s2 += x * y / (y - rz) * prod
    return lhs, (s1 + s2) / (x + y - nz)


def check_mh_expansion(
    x: Scalar, y: Scalar, n: MultiIndex, z: MultiIndex
) -> tuple[Fraction, Fraction]:
    """sum_k C(x+k.z,k) C(y-k.z,n-k)
    vs  C(x+y,n) + sum_i sum_k z_i C(x-1+k.z,k-e_i) C(y-k.z,n-k)."""
    x, y = _frac(x), _frac(y)
    n, z = _nat_vector(n, "n"), _nat_vector(z, "z")
    _same_dim(n, z)
    m = len(n)
    lhs = Fraction(0)
    rhs = multinomial(x + y, n)
    for k in box(n):
        kz = dot(k, z)
        r = vec_sub(n, k)
        tail = multinomial(y - kz, r)
        lhs += multinomial(x + kz, k) * tail
        for i in range(1, m + 1):
            rhs += z[i - 1] * multinomial(x - 1 + kz, vec_sub(k, unit(m, i))) * tail
    return lhs, rhs


# ---------------------------------------------------------------------------
# identity catalog and grid verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentitySpec:
    """A catalog identity plus its fixed parameters.

    The multi-index slot n carries the identity's n; for absorption it
    carries the multi-index k (reported under the key "k").  i and j are
    only accepted by the entries that use them (kmpink, absorption).
    grid_range, when set, is the inclusive integer interval candidates are
    drawn from for every free variable; otherwise each variable uses its
    catalog default, ascending.
    """

    identity: str
    n: MultiIndex
    z: MultiIndex
    i: Optional[int] = None
    j: Optional[int] = None
    grid_range: Optional[tuple[int, int]] = None

    @property
    def m(self) -> int:
        return len(self.n)


@dataclass(frozen=True)
class _Pole:
    """A denominator factor: fn(point) must be nonzero at evaluation points."""

    vars: frozenset[str]
    label: str
    fn: Callable[[dict[str, Fraction]], Fraction]


PairList = list[tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class _Entry:
    name: str
    variables: tuple[str, ...]
    param_name: str  # "n" or "k"
    needs: frozenset[str]  # subset of {"i", "j"}
    classical: bool  # restricted to m = 1
    degree: Callable[[IdentitySpec], int]
    default_lo: Callable[[str, IdentitySpec], int]
    poles: Callable[[IdentitySpec], list[_Pole]]
    evaluate: Callable[[dict[str, Fraction], IdentitySpec], PairList]


def _deg_conv(spec: IdentitySpec) -> int:
    return norm(spec.n)


def _deg_abel(spec: IdentitySpec) -> int:
    return spec.n[0] + 1


def _deg_absorption(spec: IdentitySpec) -> int:
    return norm(spec.n) + 1


def _lo_xy(var: str, spec: IdentitySpec) -> int:
    nz = dot(spec.n, spec.z)
    return {"x": nz + 1, "y": nz + 1, "eps": 0, "p": nz, "q": 1}[var]


def _lo_absorption(var: str, spec: IdentitySpec) -> int:
    return dot(spec.n, spec.z) + 1


def _no_poles(spec: IdentitySpec) -> list[_Pole]:
    return []


def _poles_x_minus_kz(spec: IdentitySpec) -> list[_Pole]:
    out = []
    for kz in sorted({dot(k, spec.z) for k in box(spec.n)}):
        out.append(
            _Pole(frozenset({"x"}), f"x - {kz}", lambda pt, kz=kz: pt["x"] - kz)
        )
    return out


def _poles_rational_pair(spec: IdentitySpec) -> list[_Pole]:
    out = _poles_x_minus_kz(spec)
    for kz in sorted({dot(k, spec.z) for k in box(spec.n)}):
        out.append(
            _Pole(frozenset({"y"}), f"y - {kz}", lambda pt, kz=kz: pt["y"] - kz)
        )
    nz = dot(spec.n, spec.z)
    out.append(
        _Pole(
            frozenset({"x", "y"}),
            f"x + y - {nz}",
            lambda pt: pt["x"] + pt["y"] - nz,
        )
    )
    return out


def _poles_abel_1(spec: IdentitySpec) -> list[_Pole]:
    return [_Pole(frozenset({"x"}), "x", lambda pt: pt["x"])]


def _poles_abel_2(spec: IdentitySpec) -> list[_Pole]:
    n = spec.n[0]
    z = spec.z[0]
    out = [
        _Pole(frozenset({"x"}), "x", lambda pt: pt["x"]),
        _Pole(frozenset({"y"}), f"y + {n * z}", lambda pt: pt["y"] + n * z),
    ]
    if n == 0:
        out.append(_Pole(frozenset({"x", "y"}), "x + y", lambda pt: pt["x"] + pt["y"]))
    return out


def _poles_absorption(spec: IdentitySpec) -> list[_Pole]:
    kz = dot(spec.n, spec.z)
    return [_Pole(frozenset({"p"}), f"p - {kz}", lambda pt: pt["p"] - kz)]


def _build_catalog() -> dict[str, _Entry]:
    entries: list[_Entry] = []

    def add(
        name: str,
        variables: tuple[str, ...],
        evaluate: Callable[[dict[str, Fraction], IdentitySpec], PairList],
        *,
        degree: Callable[[IdentitySpec], int] = _deg_conv,
        poles: Callable[[IdentitySpec], list[_Pole]] = _no_poles,
        default_lo: Callable[[str, IdentitySpec], int] = _lo_xy,
        classical: bool = False,
        needs: frozenset[str] = frozenset(),
        param_name: str = "n",
    ) -> None:
        entries.append(
            _Entry(
                name=name,
                variables=variables,
                param_name=param_name,
                needs=needs,
                classical=classical,
                degree=degree,
                default_lo=default_lo,
                poles=poles,
                evaluate=evaluate,
            )
        )

    add(
        "abel-1",
        ("x", "y"),
        lambda pt, s: [eval_abel_1(pt["x"], pt["y"], s.z[0], s.n[0])],
        degree=_deg_abel,
        poles=_poles_abel_1,
        classical=True,
    )
    add(
        "abel-2",
        ("x", "y"),
        lambda pt, s: [eval_abel_2(pt["x"], pt["y"], s.z[0], s.n[0])],
        degree=_deg_abel,
        poles=_poles_abel_2,
        classical=True,
    )
    add(
        "rothe-1",
        ("x", "y"),
        lambda pt, s: [eval_rothe_1(pt["x"], pt["y"], s.z[0], s.n[0])],
        poles=_poles_x_minus_kz,
        classical=True,
    )
    add(
        "rothe-2",
        ("x", "y"),
        lambda pt, s: [eval_rothe_2(pt["x"], pt["y"], s.z[0], s.n[0])],
        poles=_poles_rational_pair,
        classical=True,
    )
    add(
        "gould",
        ("x", "y", "eps"),
        lambda pt, s: [eval_gould(pt["x"], pt["y"], s.z[0], pt["eps"], s.n[0])],
        classical=True,
    )
    add(
        "jensen",
        ("x", "y"),
        lambda pt, s: [eval_jensen(pt["x"], pt["y"], s.z[0], s.n[0])],
        classical=True,
    )
    add(
        "raney-mohanty-1",
        ("x", "y"),
        lambda pt, s: [eval_raney_mohanty_1(pt["x"], pt["y"], s.n, s.z)],
        poles=_poles_x_minus_kz,
    )
    add(
        "raney-mohanty-2",
        ("x", "y"),
        lambda pt, s: [eval_raney_mohanty_2(pt["x"], pt["y"], s.n, s.z)],
        poles=_poles_rational_pair,
    )
    add(
        "mohanty-handa",
        ("x", "y"),
        lambda pt, s: [eval_mohanty_handa(pt["x"], pt["y"], s.n, s.z)],
    )
    add(
        "gould-mohanty",
        ("x", "y", "eps"),
        lambda pt, s: [eval_gould_mohanty(pt["x"], pt["y"], pt["eps"], s.n, s.z)],
    )
    add(
        "gmh-special",
        ("p", "q"),
        lambda pt, s: [eval_gmh_special(pt["p"], pt["q"], s.n, s.z)],
    )
    add(
        "kmx",
        ("p", "q"),
        lambda pt, s: [eval_kmx(pt["p"], pt["q"], s.n, s.z)],
    )
    add(
        "kmpink",
        ("p", "q"),
        lambda pt, s: [eval_kmpink(pt["p"], pt["q"], s.n, s.z, s.i, s.j)],
        needs=frozenset({"i", "j"}),
    )
    add(
        "pkroth",
        ("p", "q"),
        lambda pt, s: [eval_pkroth(pt["p"], pt["q"], s.n, s.z)],
    )
    add(
        "absorption",
        ("p",),
        lambda pt, s: [check_absorption(pt["p"], s.n, s.z, s.i)],
        degree=_deg_absorption,
        poles=_poles_absorption,
        default_lo=_lo_absorption,
        needs=frozenset({"i"}),
        param_name="k",
    )
    add(
        "rm2-decomposition",
        ("x", "y"),
        lambda pt, s: [check_rm2_decomposition(pt["x"], pt["y"], s.n, s.z)],
        poles=_poles_rational_pair,
    )
    add(
        "mh-expansion",
        ("x", "y"),
        lambda pt, s: [check_mh_expansion(pt["x"], pt["y"], s.n, s.z)],
    )

    # coherence entries: the multi-index evaluator at m = 1 must agree
    # componentwise with its classical counterpart
    def _gm_vs_gould(pt: dict[str, Fraction], s: IdentitySpec) -> PairList:
        multi = eval_gould_mohanty(pt["x"], pt["y"], pt["eps"], s.n, s.z)
        single = eval_gould(pt["x"], pt["y"], s.z[0], pt["eps"], s.n[0])
        return [(multi[0], single[0]), (multi[1], single[1]), multi]

    def _rm1_vs_rothe1(pt: dict[str, Fraction], s: IdentitySpec) -> PairList:
        multi = eval_raney_mohanty_1(pt["x"], pt["y"], s.n, s.z)
        single = eval_rothe_1(pt["x"], pt["y"], s.z[0], s.n[0])
        return [(multi[0], single[0]), (multi[1], single[1]), multi]

    def _mh_vs_jensen(pt: dict[str, Fraction], s: IdentitySpec) -> PairList:
        multi = eval_mohanty_handa(pt["x"], pt["y"], s.n, s.z)
        single = eval_jensen(pt["x"], pt["y"], s.z[0], s.n[0])
        return [(multi[0], single[0]), (multi[1], single[1]), multi]

    add("gould-mohanty-vs-gould", ("x", "y", "eps"), _gm_vs_gould, classical=True)
    add(
        "raney-mohanty-1-vs-rothe-1",
        ("x", "y"),
        _rm1_vs_rothe1,
        poles=_poles_x_minus_kz,
        classical=True,
    )
    add("mohanty-handa-vs-jensen", ("x", "y"), _mh_vs_jensen, classical=True)

    return {e.name: e for e in entries}


CATALOG = _build_catalog()


def catalog_names() -> list[str]:
    return list(CATALOG)


def identity_variables(name: str) -> tuple[str, ...]:
    return _lookup(name).variables


def _lookup(name: str) -> _Entry:
    try:
        return CATALOG[name]
    except KeyError:
        known = ", ".join(CATALOG)
        raise PreconditionError(f"unknown identity {name!r}; known: {known}")


def _validate(spec: IdentitySpec, entry: _Entry) -> None:
    n = _nat_vector(spec.n, entry.param_name)
    z = _nat_vector(spec.z, "z")
    _same_dim(n, z)
    if entry.classical and len(n) != 1:
        raise PreconditionError(
            f"{entry.name} is a single-variable (m = 1) identity; "
            f"got dimension {len(n)}"
        )
    for flag in ("i", "j"):
        given = getattr(spec, flag) is not None
        if given and flag not in entry.needs:
            raise PreconditionError(f"{entry.name} does not take --{flag}")
        if not given and flag in entry.needs:
            raise PreconditionError(f"{entry.name} requires --{flag}")
    if "i" in entry.needs and not 1 <= spec.i <= len(n):
        raise PreconditionError(f"letter index i = {spec.i} out of range 1..{len(n)}")
    if "j" in entry.needs and not 1 <= spec.j <= z[spec.i - 1]:
        raise PreconditionError(
            f"requires 1 <= j <= z_i, got j = {spec.j} with z_{spec.i} = {z[spec.i - 1]}"
        )
    if spec.grid_range is not None and spec.grid_range[0] > spec.grid_range[1]:
        raise PreconditionError(f"empty grid range {spec.grid_range}")


def _params_dict(spec: IdentitySpec, entry: _Entry) -> dict[str, object]:
    params: dict[str, object] = {
        "identity": spec.identity,
        entry.param_name: list(spec.n),
        "z": list(spec.z),
    }
    if spec.i is not None:
        params["i"] = spec.i
    if spec.j is not None:
        params["j"] = spec.j
    return params


def _rerun_command(spec: IdentitySpec, entry: _Entry, point: dict[str, Fraction]) -> str:
    parts = [
        "gradedwords verify",
        spec.identity,
        f"--{entry.param_name} {','.join(map(str, spec.n))}",
        f"--z {','.join(map(str, spec.z))}",
    ]
    if spec.i is not None:
        parts.append(f"--i {spec.i}")
    if spec.j is not None:
        parts.append(f"--j {spec.j}")
    rendered = ",".join(f"{v}={format_scalar(point[v])}" for v in entry.variables)
    parts.append(f"--point {rendered}")
    return " ".join(parts)


_GRID_SCAN_MARGIN = 512


def _select_axes(
    spec: IdentitySpec, entry: _Entry
) -> tuple[dict[str, list[int]], dict[str, list[int]]]:
    """Choose degree + 1 pole-free integer values per variable.

    Variables are fixed left to right; a candidate for the current variable
    is accepted only if no pole factor determined by the variables so far
    vanishes for any combination of already-chosen values, so the final
    product grid avoids every pole.
    """
    degree = entry.degree(spec)
    poles = entry.poles(spec)
    axes: dict[str, list[int]] = {}
    skipped: dict[str, list[int]] = {}
    for var in entry.variables:
        need = degree + 1
        if spec.grid_range is not None:
            lo, hi = spec.grid_range
            candidates = range(lo, hi + 1)
        else:
            lo = entry.default_lo(var, spec)
            candidates = range(lo, lo + need + _GRID_SCAN_MARGIN)
        relevant = [
            p
            for p in poles
            if var in p.vars and p.vars <= set(axes) | {var}
        ]
        chosen: list[int] = []
        skips: list[int] = []
        for cand in candidates:
            ok = True
            for pole in relevant:
                others = sorted(pole.vars - {var})
                for combo in itertools.product(*(axes[o] for o in others)):
                    point = dict(zip(others, combo))
                    point[var] = Fraction(cand)
                    if pole.fn(point) == 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen.append(cand)
                if len(chosen) == need:
                    break
            else:
                skips.append(cand)
        if len(chosen) < need:
            raise GridExhaustedError(
                f"found only {len(chosen)} of {need} pole-free values for {var} "
                f"in {candidates[0]}..{candidates[-1]}; enlarge --grid-range"
            )
        axes[var] = chosen
        if skips:
            skipped[var] = skips
    return axes, skipped


def verify_identity_on_grid(spec: IdentitySpec) -> EvalReport:
    """Evaluate both sides on a pole-free product grid sized by the degree
    bound; exact equality everywhere certifies the identity."""
    entry = _lookup(spec.identity)
    _validate(spec, entry)
    degree = entry.degree(spec)
    axes, skipped = _select_axes(spec, entry)
    total_points = math.prod(len(axes[v]) for v in entry.variables)
    report = EvalReport(
        check=spec.identity,
        params=_params_dict(spec, entry),
        grid={
            "axes": {v: axes[v] for v in entry.variables},
            "degree_bounds": {v: degree for v in entry.variables},
            "skipped": skipped,
            "points": total_points,
        },
    )
    for combo in itertools.product(*(axes[v] for v in entry.variables)):
        point = {v: Fraction(c) for v, c in zip(entry.variables, combo)}
        pairs = entry.evaluate(point, spec)
        for idx, (left, right) in enumerate(pairs):
            if left != right:
                report.verdict = VERDICT_MISMATCH
                report.counterexample = {
                    "point": {v: format_scalar(point[v]) for v in entry.variables},
                    "left": format_scalar(left),
                    "right": format_scalar(right),
                    "pair": idx,
                    "rerun": _rerun_command(spec, entry, point),
                }
                return report
    report.verdict = VERDICT_EQUAL
    return report


def verify_identity_at_point(
    spec: IdentitySpec, point: dict[str, Scalar]
) -> EvalReport:
    """Evaluate both sides at one explicit point."""
    entry = _lookup(spec.identity)
    _validate(spec, entry)
    missing = [v for v in entry.variables if v not in point]
    if missing:
        raise PreconditionError(
            f"{entry.name} needs values for {', '.join(entry.variables)}; "
            f"missing {', '.join(missing)}"
        )
    extra = sorted(set(point) - set(entry.variables))
    if extra:
        raise PreconditionError(
            f"{entry.name} takes only {', '.join(entry.variables)}; "
            f"got extra {', '.join(extra)}"
        )
    values = {v: _frac(point[v]) for v in entry.variables}
    violated = [p.label for p in entry.poles(spec) if p.fn(values) == 0]
    if violated:
        raise PoleError(
            f"denominators vanish at this point: {'; '.join(violated)}"
        )
    params = _params_dict(spec, entry)
    params["point"] = {v: format_scalar(values[v]) for v in entry.variables}
    pairs = entry.evaluate(values, spec)
    report = EvalReport(check=spec.identity, params=params)
    report.left = format_scalar(pairs[0][0])
    report.right = format_scalar(pairs[0][1])
    if len(pairs) > 1:
        report.details = {
            "pairs": [[format_scalar(l), format_scalar(r)] for l, r in pairs]
        }
    if all(left == right for left, right in pairs):
        report.verdict = VERDICT_EQUAL
    else:
        report.verdict = VERDICT_MISMATCH
        idx, (left, right) = next(
            (i, lr) for i, lr in enumerate(pairs) if lr[0] != lr[1]
        )
        report.left = format_scalar(left)
        report.right = format_scalar(right)
        report.counterexample = {
            "point": params["point"],
            "left": format_scalar(left),
            "right": format_scalar(right),
            "pair": idx,
            "rerun": _rerun_command(spec, entry, values),
        }
    return report
