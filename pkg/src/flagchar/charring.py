"""Exact character ring on the weight lattice.

A CharPoly is a finitely supported integer-valued function on the weight
lattice, written as a dict  weight-tuple -> coefficient  with no stored
zeros.  Products of the finite geometric factors appearing in induced
characters, Weyl characters, Frobenius dilation and duals all stay inside
this finitely supported world; no completion is modeled.

Weyl characters are computed with Freudenthal's multiplicity recursion;
the alternating-sum expansion is kept as an independent test oracle
(`weyl_character_oracle`).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _accel
from .rootsys import ParabolicSpec, RootDatum, Weight


class CharPoly:
    """Finitely supported integer combination of e^lambda."""

    __slots__ = ("datum", "coeffs")

    def __init__(self, datum: RootDatum, coeffs: dict[Weight, int] | None = None):
        self.datum = datum
        self.coeffs = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    if len(k) != datum.rank:
                        raise ValueError("rank mismatch")
                    self.coeffs[tuple(k)] = int(v)

    # -- constructors -------------------------------------------------

    @classmethod
    def monomial(cls, datum, lam: Weight, c: int = 1):
        return cls(datum, {tuple(lam): c})

    @classmethod
    def zero(cls, datum):
        return cls(datum)

    # -- ring structure -----------------------------------------------

    def __eq__(self, other):
        return isinstance(other, CharPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return CharPoly(self.datum, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: int):
        if c == 0:
            return CharPoly(self.datum)
        return CharPoly(self.datum, {k: c * v for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return CharPoly(self.datum)
        if len(self.coeffs) * len(other.coeffs) <= 64:
            out = {}
            for ka, va in self.coeffs.items():
                for kb, vb in other.coeffs.items():
                    k = tuple(a + b for a, b in zip(ka, kb))
                    nv = out.get(k, 0) + va * vb
                    if nv:
                        out[k] = nv
                    else:
                        del out[k]
            return CharPoly(self.datum, out)
        return self._mul_packed(other)

    def _mul_packed(self, other):
        r = self.datum.rank
        ka = np.array(list(self.coeffs.keys()), dtype=np.int64).reshape(-1, r)
        kb = np.array(list(other.coeffs.keys()), dtype=np.int64).reshape(-1, r)
        va = np.array(list(self.coeffs.values()), dtype=np.int64)
        vb = np.array(list(other.coeffs.values()), dtype=np.int64)
        lo = ka.min(axis=0) + kb.min(axis=0)
        hi = ka.max(axis=0) + kb.max(axis=0)
        spans = (hi - lo + 1).astype(np.int64)
        strides = np.ones(r, dtype=np.int64)
        for i in range(r - 2, -1, -1):
            strides[i] = strides[i + 1] * spans[i + 1]
        # packed key = offset of the sum from `lo`, mixed-radix over spans
        pa = ((ka - lo) * strides).sum(axis=1)
        pb = (kb * strides).sum(axis=1)
        keys, vals = _accel.convolve_packed(pa, va, pb, vb)
        out = {}
        for key, val in zip(keys.tolist(), vals.tolist()):
            vec = []
            for i in range(r):
                q, key = divmod(key, int(strides[i]))
                vec.append(q + int(lo[i]))
            out[tuple(vec)] = val
        return CharPoly(self.datum, out)

    # -- involutions -----------------------------------------------------

    def dual(self):
        """e^lambda -> e^(-lambda)."""
        return CharPoly(self.datum, {tuple(-x for x in k): v for k, v in self.coeffs.items()})

    def dilate(self, p: int):
        """e^lambda -> e^(p*lambda)."""
        return CharPoly(self.datum, {tuple(p * x for x in k): v for k, v in self.coeffs.items()})

    def translate(self, mu: Weight):
        return CharPoly(
            self.datum, {tuple(a + b for a, b in zip(k, mu)): v for k, v in self.coeffs.items()}
        )

    def apply_weyl(self, w):
        return CharPoly(self.datum, {w.act(k): v for k, v in self.coeffs.items()})

    # -- queries -----------------------------------------------------------

    def mass(self) -> int:
        return sum(self.coeffs.values())

    def __getitem__(self, lam: Weight) -> int:
        return self.coeffs.get(tuple(lam), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def highest_weights(self):
        """Maximal support elements in the root-cone partial order."""
        datum = self.datum
        sup = list(self.coeffs)
        out = []
        for k in sup:
            if not any(
                k2 != k and datum.is_positive_root_vec(tuple(a - b for a, b in zip(k2, k)))
                for k2 in sup
            ):
                out.append(k)
        return sorted(out)

    def to_rows(self):
        """Sorted [coordinates..., coefficient] rows for golden files."""
        return [list(k) + [v] for k, v in sorted(self.coeffs.items())]

    def __repr__(self):
        items = ", ".join(f"{k}:{v}" for k, v in sorted(self.coeffs.items()))
        return f"CharPoly({self.datum.label}; {items})"


# ---------------------------------------------------------------------------
# Weyl characters.


def _symmetrizer(datum: RootDatum) -> tuple[int, ...]:
    """d_i with d_i * cartan[i][j] symmetric; d_i = 1 on long-root types."""
    r = datum.rank
    d = [0] * r
    d[0] = 1
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(r):
                if datum.cartan[i][j] and d[i] and not d[j]:
                    # d_j * c[j][i] = d_i * c[i][j]
                    val = Fraction(d[i] * datum.cartan[i][j], datum.cartan[j][i])
                    assert val.denominator == 1 and val > 0
                    d[j] = int(val)
                    changed = True
    assert all(x > 0 for x in d)
    return tuple(d)


def _bilinear(datum: RootDatum, lam: Weight, mu: Weight) -> Fraction:
    """W-invariant form with (omega_i | alpha_j) = delta_ij d_j."""
    d = _symmetrizer(datum)
    mu_root = datum.root_coords(mu)
    return sum(Fraction(d[j]) * lam[j] * mu_root[j] for j in range(datum.rank))


def dominant_weights_below(datum: RootDatum, lam: Weight) -> list[Weight]:
    """Dominant mu with lam - mu a nonnegative root combination, sorted by
    increasing depth below lam (Freudenthal processing order)."""
    out = []
    frontier = {tuple(lam)}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for v in frontier:
            if datum.is_dominant(v):
                out.append(v)
            for r in datum.positive_roots:
                w = tuple(a - b for a, b in zip(v, r.vec))
                if w not in seen and _norm_bound(datum, w, lam):
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt

    def depth(mu):
        return sum(datum.root_coords(tuple(a - b for a, b in zip(lam, mu))))

    return sorted(set(out), key=lambda mu: (depth(mu), mu))


def _norm_bound(datum, w, lam) -> bool:
    # weights of V(lam) satisfy (w+rho|w+rho) <= (lam+rho|lam+rho)
    rho = datum.rho
    wr = tuple(a + b for a, b in zip(w, rho))
    lr = tuple(a + b for a, b in zip(lam, rho))
    return _bilinear(datum, wr, wr) <= _bilinear(datum, lr, lr)


def weyl_character(datum: RootDatum, lam: Weight) -> CharPoly:
    """Character of the irreducible with highest weight lam (char 0),
    via Freudenthal's recursion."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise ValueError("weyl_character requires a dominant weight")
    return _weyl_character_cached(datum.label, lam)


@lru_cache(maxsize=None)
def _weyl_character_cached(label: str, lam: Weight) -> CharPoly:
    datum = RootDatum(label)
    mults: dict[Weight, int] = {lam: 1}
    lam_rho = tuple(x + 1 for x in lam)
    norm_top = _bilinear(datum, lam_rho, lam_rho)
    order = dominant_weights_below(datum, lam)
    for mu in order:
        if mu == lam:
            continue
        acc = Fraction(0)
        for r in datum.positive_roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, r.vec))
                m = _dominant_mult(datum, mults, nu)
                if m == 0 and not _norm_bound(datum, nu, lam):
                    break
                acc += m * (_bilinear(datum, nu, r.vec))
                k += 1
        mu_rho = tuple(x + 1 for x in mu)
        denom = norm_top - _bilinear(datum, mu_rho, mu_rho)
        if denom == 0:
            mults[mu] = 0
            continue
        val = 2 * acc / denom
        assert val.denominator == 1, (lam, mu, val)
        mults[mu] = int(val)
    out: dict[Weight, int] = {}
    for mu, m in mults.items():
        if m == 0:
            continue
        for w in datum.weyl_elements():
            out[w.act(mu)] = m
    return CharPoly(datum, out)


def _dominant_mult(datum, mults, nu):
    # multiplicity of nu read off from the dominant-orbit table
    dom = _dominant_rep(datum, nu)
    return mults.get(dom, 0)


def _dominant_rep(datum, nu):
    v = tuple(nu)
    while not datum.is_dominant(v):
        i = next(i for i, x in enumerate(v) if x < 0)
        v = datum.reflect(i, v)
    return v


def weyl_character_oracle(datum: RootDatum, lam: Weight) -> CharPoly:
    """Alternating-sum expansion of the Weyl character (test oracle).

    Multiplies sum_w (-1)^w e^{w(lam+rho)-rho} by the geometric expansion
    of 1/(1-e^{-alpha}) truncated to the support cone of the result.
    """
    lam = tuple(lam)
    depth = sum(x + 1 for x in lam) * 6 + 8
    num = CharPoly(datum)
    rho = datum.rho
    lam_rho = tuple(x + 1 for x in lam)
    for w in datum.weyl_elements():
        sign = -1 if len(w.word) % 2 else 1
        term = tuple(a - b for a, b in zip(w.act(lam_rho), rho))
        num = num + CharPoly.monomial(datum, term, sign)
    prod = num
    for r in datum.positive_roots:
        geo = CharPoly(
            datum, {tuple(-k * x for x in r.vec): 1 for k in range(depth)}
        )
        prod = prod * geo
    # discard everything outside the weight polytope of lam
    out = {k: v for k, v in prod.coeffs.items() if _norm_bound(datum, k, lam)}
    return CharPoly(datum, out)


# ---------------------------------------------------------------------------
# Kostant partition counts for a Levi subsystem.


def kostant_partition_levi(datum: RootDatum, gamma: Weight, subset) -> int:
    """Number of ways -gamma is a multiset of positive Levi roots."""
    par = datum.parabolic(subset)
    roots = [r.vec for r in par.levi_positive_roots]
    target = tuple(-x for x in gamma)
    return _count_partitions(datum, target, tuple(roots))


@lru_cache(maxsize=None)
def _count_partitions_inner(label: str, target: Weight, roots) -> int:
    datum = RootDatum(label)
    if all(x == 0 for x in target):
        return 1
    if not roots:
        return 0
    if not datum.is_positive_root_vec(target) and any(x != 0 for x in target):
        # target must be a nonnegative rational root combination
        c = datum.root_coords(target)
        if any(x < 0 for x in c):
            return 0
    head, rest = roots[0], roots[1:]
    total = 0
    cur = target
    while True:
        total += _count_partitions_inner(label, cur, rest)
        cur = tuple(a - b for a, b in zip(cur, head))
        c = datum.root_coords(cur)
        if any(x < 0 for x in c):
            break
    return total


def _count_partitions(datum, target, roots) -> int:
    c = datum.root_coords(target)
    if any(x < 0 or x.denominator != 1 for x in c):
        return 0
    return _count_partitions_inner(datum.label, target, roots)


# ---------------------------------------------------------------------------
# Induced characters.


def geometric_factor(datum: RootDatum, root_vec: Weight, p: int) -> CharPoly:
    """1 + e^{-alpha} + ... + e^{-(p-1)alpha}."""
    return CharPoly(
        datum, {tuple(-k * x for x in root_vec): 1 for k in range(p)}
    )


def hv_char_product(datum: RootDatum, nu: Weight, par: ParabolicSpec, p: int) -> CharPoly:
    """Product form of the induced character: e^nu times one geometric
    factor per positive root outside the Levi."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if not par.in_lambda_p(nu):
        raise ValueError("weight does not extend to the parabolic")
    out = CharPoly.monomial(datum, nu)
    for r in datum.positive_roots:
        if r not in par.levi_positive_roots:
            out = out * geometric_factor(datum, r.vec, p)
    return out


def hv_full_char(datum: RootDatum, mu: Weight, p: int) -> CharPoly:
    """Induced character from the Borel: e^mu times all geometric factors."""
    out = CharPoly.monomial(datum, mu)
    for r in datum.positive_roots:
        out = out * geometric_factor(datum, r.vec, p)
    return out


def hv_char_sum(datum: RootDatum, nu: Weight, par: ParabolicSpec, p: int) -> CharPoly:
    """Alternating Levi-induction expansion of the same character.

    The sum over the Levi Weyl group and the Levi root lattice is truncated
    to the terms whose support can meet the support box of the product
    side; all omitted terms cancel pairwise.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if not par.in_lambda_p(nu):
        raise ValueError("weight does not extend to the parabolic")
    product_low = list(nu)
    for r in datum.positive_roots:
        product_low = [a - (p - 1) * b for a, b in zip(product_low, r.vec)]
    gammas = _levi_lattice_points(datum, par, nu, p, tuple(product_low))
    total = CharPoly(datum)
    for w in par.weyl_subgroup():
        sign = -1 if len(w.word) % 2 else 1
        for gamma, mult in gammas:
            top = tuple(
                a + p * b for a, b in zip(datum.dot_action(w, nu), gamma)
            )
            if not _cone_reaches(datum, top, tuple(product_low)):
                continue
            total = total + hv_full_char(datum, top, p).scale(sign * mult)
    # below the product support cone the omitted terms cancel everything;
    # inside it the truncated sum is already exact
    kept = {
        k: v
        for k, v in total.coeffs.items()
        if _cone_reaches(datum, k, tuple(product_low))
    }
    return CharPoly(datum, kept)


def _cone_reaches(datum, top, low) -> bool:
    # support of the full induced character from `top` meets {x >= low}?
    diff = tuple(a - b for a, b in zip(top, low))
    c = datum.root_coords(diff)
    return all(x >= 0 for x in c)


def _levi_lattice_points(datum, par, nu, p, product_low):
    """(gamma, dim Dist(U_L)_gamma) over the truncation window."""
    roots = [r.vec for r in par.levi_positive_roots]
    out = [(tuple([0] * datum.rank), 1)]
    if not roots:
        return out
    # enumerate gamma = -sum n_b beta with a generous depth bound
    depth = 2 * sum(x + 1 for x in datum.rho) * len(datum.positive_roots)
    seen = {tuple([0] * datum.rank)}
    frontier = [tuple([0] * datum.rank)]
    while frontier:
        nxt = []
        for g in frontier:
            for b in roots:
                g2 = tuple(a - c for a, c in zip(g, b))
                if g2 in seen:
                    continue
                if max(abs(x) for x in g2) > depth:
                    continue
                seen.add(g2)
                nxt.append(g2)
        frontier = nxt
    for g in sorted(seen):
        if any(g):
            mult = _count_partitions(datum, tuple(-x for x in g), tuple(roots))
            if mult:
                out.append((g, mult))
    return out


def frobenius_dilate(c: CharPoly, p: int) -> CharPoly:
    return c.dilate(p)


def dual_char(c: CharPoly) -> CharPoly:
    return c.dual()


def char_rows_json(c: CharPoly):
    return c.to_rows()
