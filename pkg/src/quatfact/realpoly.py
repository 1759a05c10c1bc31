"""Real polynomial arithmetic: univariate and bivariate.

Univariate polynomials carry their variable name ('t' or 's') and store
coefficients in ascending degree.  Bivariate polynomials are dense
coefficient matrices ``coeffs[i, j]`` for t^i s^j.  Root finding uses the
companion-matrix eigenvalues provided by numpy; everything downstream of
it is tolerance based.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DidNotConverge, NonMonicDivisor, NotRankOne, OddRealRoot
from .quaternion import DEFAULT_EPS

_TRIM = 1e-12


def _trim(values, rel=_TRIM):
    coeffs = [float(c) for c in values]
    scale = max((abs(c) for c in coeffs), default=0.0)
    cutoff = rel * scale
    while coeffs and abs(coeffs[-1]) <= cutoff:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RealPoly:
    """Univariate real polynomial; ``coeffs[k]`` multiplies var**k."""

    var: str
    coeffs: tuple = ()

    def __post_init__(self):
        if self.var not in ("t", "s"):
            raise ValueError(f"variable must be 't' or 's', got {self.var!r}")
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def one(cls, var: str) -> "RealPoly":
        return cls(var, (1.0,))

    @classmethod
    def quadratic(cls, var: str, b: float, c: float) -> "RealPoly":
        """Monic quadratic var**2 + b*var + c."""
        return cls(var, (c, b, 1.0))

    @classmethod
    def linear(cls, var: str, root: float) -> "RealPoly":
        """Monic linear var - root."""
        return cls(var, (-root, 1.0))

    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self, eps: float = DEFAULT_EPS) -> bool:
        return self.degree() == 0 and abs(self.coeffs[0] - 1.0) <= eps

    def lc(self) -> float:
        if self.is_zero():
            return 0.0
        return self.coeffs[-1]

    def is_monic(self, eps: float = DEFAULT_EPS) -> bool:
        return not self.is_zero() and abs(self.lc() - 1.0) <= eps

    def monic(self) -> "RealPoly":
        if self.is_zero():
            return self
        lead = self.lc()
        return RealPoly(self.var, tuple(c / lead for c in self.coeffs))

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        var = self.var if not self.is_constant() else other.var
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0] * (n - len(other.coeffs))
        return RealPoly(var, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return RealPoly(self.var, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return RealPoly(self.var, tuple(c * other for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        var = self.var if not self.is_constant() else other.var
        if self.is_zero() or other.is_zero():
            return RealPoly(var)
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPoly(var, tuple(out))

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, (int, float)):
            return RealPoly(self.var, (float(other),))
        if not isinstance(other, RealPoly):
            return NotImplemented
        if other.var != self.var and not other.is_constant() and not self.is_constant():
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        return other

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def __call__(self, x):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def approx_eq(self, other: "RealPoly", eps: float = DEFAULT_EPS) -> bool:
        diff = self - other
        scale = max(1.0, self.max_abs(), other.max_abs())
        return diff.max_abs() <= eps * scale

    def as_dict(self):
        return {"var": self.var, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, data) -> "RealPoly":
        return cls(data["var"], tuple(float(c) for c in data["coeffs"]))

    def __repr__(self):
        if self.is_zero():
            return f"RealPoly({self.var!r}, 0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            if k == 0:
                terms.append(f"{c:g}")
            elif k == 1:
                terms.append(f"{c:g}*{self.var}")
            else:
                terms.append(f"{c:g}*{self.var}^{k}")
        return f"RealPoly({' + '.join(terms)})"


def divrem(p: RealPoly, d: RealPoly, eps: float = DEFAULT_EPS):
    """Division with remainder ``p = q*d + r`` for a monic divisor ``d``."""
    if not d.is_monic(eps):
        raise NonMonicDivisor(f"divisor {d!r} is not monic")
    if d.var != p.var and not d.is_constant() and not p.is_constant():
        raise ValueError(f"variable mismatch: {p.var} vs {d.var}")
    nd = d.degree()
    if nd == 0:
        return p, RealPoly(p.var)
    rem = list(p.coeffs)
    quo = [0.0] * max(0, len(rem) - nd)
    for k in range(len(rem) - 1, nd - 1, -1):
        c = rem[k]
        if c == 0.0:
            continue
        quo[k - nd] = c
        for r, dc in enumerate(d.coeffs):
            rem[k - nd + r] -= c * dc
        rem[k] = 0.0
    return RealPoly(p.var, tuple(quo)), RealPoly(p.var, tuple(rem[:nd]))


def roots(p: RealPoly, eps: float = DEFAULT_EPS) -> list[complex]:
    """All complex roots with multiplicity, via companion-matrix eigenvalues.

    The contract is a backward-error bound: |p(r)| <= eps * max|coeff| *
    max(1, |r|)**deg for every returned root.
    """
    if p.degree() < 1:
        raise ValueError("root finding needs degree >= 1")
    desc = np.array(list(reversed(p.coeffs)), dtype=float)
    try:
        rts = np.roots(desc)
    except np.linalg.LinAlgError as exc:
        raise DidNotConverge(f"eigenvalue iteration failed: {exc}") from exc
    bound = eps * p.max_abs()
    for r in rts:
        if abs(p(complex(r))) > bound * max(1.0, abs(r)) ** p.degree():
            raise DidNotConverge(f"root {r} has backward error above tolerance")
    return [complex(r) for r in rts]


@dataclass(frozen=True)
class QuadraticFactorTuple:
    """Monic quadratic factors of a real polynomial, plus its leading scalar.

    Each entry is either irreducible (negative discriminant) or a squared
    linear block (v - r)**2.  ``lead * product(factors)`` reproduces the
    factored polynomial.
    """

    var: str
    lead: float
    factors: tuple = ()

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, idx):
        return self.factors[idx]

    def product(self) -> RealPoly:
        acc = RealPoly(self.var, (self.lead,))
        for f in self.factors:
            acc = acc * f
        return acc

    def permuted(self, order) -> "QuadraticFactorTuple":
        return QuadraticFactorTuple(self.var, self.lead,
                                    tuple(self.factors[i] for i in order))


def _cluster(rts, radius):
    """Greedy union of roots within ``radius`` (relative to magnitude)."""
    n = len(rts)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(a + 1, n):
            if abs(rts[a] - rts[b]) <= radius * max(1.0, abs(rts[a]), abs(rts[b])):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups = {}
    for idx in range(n):
        groups.setdefault(find(idx), []).append(rts[idx])
    out = []
    for members in groups.values():
        centroid = sum(members) / len(members)
        out.append((centroid, len(members)))
    return out


def _resolve_clusters(rts, radius, even_real=False):
    """Cluster roots and enforce conjugate symmetry.

    Returns a list of (root, multiplicity) pairs where real roots have a
    real entry and complex ones come as explicit conjugate pairs, or None
    when the clusters cannot be matched consistently at this radius (or,
    with ``even_real``, when a real cluster has odd size).
    """
    clusters = _cluster(rts, radius)
    real_entries = []
    upper = []
    lower = []
    for centroid, size in clusters:
        if abs(centroid.imag) <= radius * max(1.0, abs(centroid)):
            if even_real and size % 2:
                return None
            real_entries.append((complex(centroid.real, 0.0), size))
        elif centroid.imag > 0:
            upper.append((centroid, size))
        else:
            lower.append((centroid, size))
    if len(upper) != len(lower):
        return None
    entries = list(real_entries)
    remaining = list(lower)
    for z, size in upper:
        match = None
        for idx, (w, wsize) in enumerate(remaining):
            if wsize == size and abs(z - w.conjugate()) <= radius * max(1.0, abs(z)):
                match = idx
                break
        if match is None:
            return None
        w, _ = remaining.pop(match)
        mean = (z + w.conjugate()) / 2.0
        entries.append((mean, size))
        entries.append((mean.conjugate(), size))
    if remaining:
        return None
    return entries


_CLUSTER_LEVELS = (1e-7, 1e-6, 1e-5, 1e-4, 1e-3)


def clustered_roots(p: RealPoly, eps: float = DEFAULT_EPS, even_real: bool = False):
    """Roots of p grouped into (root, multiplicity) pairs.

    Companion-matrix eigenvalues scatter a root of multiplicity m over a
    disc of radius roughly eps**(1/m), so clusters are merged at
    escalating radii starting from 1e-7 and the radius whose centroids
    reconstruct p best wins.  Entries are conjugate-consistent: complex
    roots appear in exact conjugate pairs.  ``even_real`` additionally
    rejects clusterings with odd real multiplicities, which forces merges
    for polynomial types that cannot have them.
    """
    rts = roots(p, eps)
    lead = p.lc()
    best = None
    # Coarse radii first: a cluster of multiplicity m must be merged to make
    # its centroid accurate, and a wrong merge of distinct roots is betrayed
    # by the reconstruction residual.
    for level in reversed(_CLUSTER_LEVELS):
        entries = _resolve_clusters(rts, level, even_real)
        if entries is None:
            continue
        rebuilt = [complex(lead)]
        for z, size in entries:
            for _ in range(size):
                nxt = [0j] * (len(rebuilt) + 1)
                for k, c in enumerate(rebuilt):
                    nxt[k] -= c * z
                    nxt[k + 1] += c
                rebuilt = nxt
        residual = max(
            abs(rebuilt[k] - (p.coeffs[k] if k < len(p.coeffs) else 0.0))
            for k in range(len(rebuilt))
        ) / max(1.0, p.max_abs())
        if residual <= 1e-9:
            return entries
        if best is None or residual < best[0]:
            best = (residual, entries)
    if best is None:
        raise DidNotConverge("could not organize roots into conjugate-consistent clusters")
    return best[1]


def quadratic_factors(p: RealPoly, eps: float = DEFAULT_EPS) -> QuadraticFactorTuple:
    """Split a nonnegative-type polynomial into monic quadratic blocks.

    Conjugate complex root pairs become v**2 - 2 Re(z) v + |z|**2; real
    roots, which must have even multiplicity, become (v - r)**2 blocks.
    Factors are sorted by (linear, constant) coefficient; callers permute
    as needed.
    """
    if p.degree() < 2 or p.degree() % 2:
        raise OddRealRoot(f"degree {p.degree()} polynomial cannot split into quadratics")
    try:
        entries = clustered_roots(p, eps, even_real=True)
    except DidNotConverge as exc:
        raise OddRealRoot("real root of odd multiplicity detected") from exc
    factors = []
    for z, size in entries:
        if z.imag == 0.0:
            r = z.real
            factors.extend([RealPoly.quadratic(p.var, -2.0 * r, r * r)] * (size // 2))
        elif z.imag > 0:
            quad = RealPoly.quadratic(p.var, -2.0 * z.real, abs(z) ** 2)
            factors.extend([quad] * size)
    # (linear, constant) sort with keys quantized past rounding noise
    ordered = sorted(factors, key=lambda f: (round(f.coeffs[1], 9), round(f.coeffs[0], 9)))
    return QuadraticFactorTuple(p.var, p.lc(), tuple(ordered))


class RealBiPoly:
    """Dense bivariate real polynomial; ``coeffs[i, j]`` multiplies t^i s^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_2d(np.asarray(coeffs, dtype=float))
        scale = np.max(np.abs(arr)) if arr.size else 0.0
        if scale > 0.0:
            rows = np.nonzero(np.any(np.abs(arr) > _TRIM * scale, axis=1))[0]
            cols = np.nonzero(np.any(np.abs(arr) > _TRIM * scale, axis=0))[0]
            if rows.size and cols.size:
                arr = arr[: rows[-1] + 1, : cols[-1] + 1]
            else:
                arr = np.zeros((1, 1))
        else:
            arr = np.zeros((1, 1))
        self.coeffs = arr

    @classmethod
    def from_uni(cls, p: RealPoly) -> "RealBiPoly":
        col = np.array(p.coeffs if p.coeffs else (0.0,), dtype=float)
        if p.var == "t":
            return cls(col.reshape(-1, 1))
        return cls(col.reshape(1, -1))

    @classmethod
    def from_separable(cls, pt: RealPoly, ps: RealPoly) -> "RealBiPoly":
        a = np.array(pt.coeffs if pt.coeffs else (0.0,), dtype=float)
        b = np.array(ps.coeffs if ps.coeffs else (0.0,), dtype=float)
        return cls(np.outer(a, b))

    def bidegree(self):
        return self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def __sub__(self, other: "RealBiPoly") -> "RealBiPoly":
        a, b = self.coeffs, other.coeffs
        rows = max(a.shape[0], b.shape[0])
        cols = max(a.shape[1], b.shape[1])
        out = np.zeros((rows, cols))
        out[: a.shape[0], : a.shape[1]] += a
        out[: b.shape[0], : b.shape[1]] -= b
        return RealBiPoly(out)

    def __mul__(self, other: "RealBiPoly") -> "RealBiPoly":
        out = np.zeros((self.coeffs.shape[0] + other.coeffs.shape[0] - 1,
                        self.coeffs.shape[1] + other.coeffs.shape[1] - 1))
        for i in range(self.coeffs.shape[0]):
            for j in range(self.coeffs.shape[1]):
                c = self.coeffs[i, j]
                if c:
                    out[i : i + other.coeffs.shape[0], j : j + other.coeffs.shape[1]] += c * other.coeffs
        return RealBiPoly(out)

    def __call__(self, t, s):
        ts = np.array([t ** i for i in range(self.coeffs.shape[0])])
        ss = np.array([s ** j for j in range(self.coeffs.shape[1])])
        return float(ts @ self.coeffs @ ss)

    def approx_eq(self, other: "RealBiPoly", eps: float = DEFAULT_EPS) -> bool:
        scale = max(1.0, self.max_abs(), other.max_abs())
        return (self - other).max_abs() <= eps * scale

    def __repr__(self):
        return f"RealBiPoly(shape={self.coeffs.shape})"


def separable_split(n: RealBiPoly, eps: float = DEFAULT_EPS):
    """Split ``n`` as P(t) * R(s), if the coefficient matrix has rank one.

    The test is that every 2x2 minor vanishes relative to the scale of the
    entries involved.  On success R is monic and the leading scalar is
    folded into P.  Raises NotRankOne otherwise, carrying the worst minor.
    """
    a = n.coeffs
    if not np.any(a):
        raise ValueError("cannot split the zero polynomial")
    scale = np.max(np.abs(a))
    rows, cols = a.shape
    worst = (0.0, None, 0.0)
    for i1 in range(rows):
        for i2 in range(i1 + 1, rows):
            for j1 in range(cols):
                for j2 in range(j1 + 1, cols):
                    p1 = a[i1, j1] * a[i2, j2]
                    p2 = a[i1, j2] * a[i2, j1]
                    minor = p1 - p2
                    entry = max(abs(a[i1, j1]), abs(a[i2, j2]),
                                abs(a[i1, j2]), abs(a[i2, j1]))
                    local = max(abs(p1), abs(p2), scale * entry)
                    excess = abs(minor) - eps * local
                    if excess > worst[0]:
                        worst = (excess, ((i1, j1), (i2, j2)), abs(minor))
    if worst[1] is not None:
        raise NotRankOne(
            f"2x2 minor at {worst[1]} has magnitude {worst[2]:.3e}",
            minor_index=worst[1], minor_value=worst[2], scale=float(scale))
    i0, j0 = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    p_col = a[:, j0].astype(float)
    r_row = a[i0, :] / a[i0, j0]
    r = RealPoly("s", tuple(r_row))
    lead_r = r.lc()
    r = r.monic()
    p = RealPoly("t", tuple(c * lead_r for c in p_col))
    return p, r
