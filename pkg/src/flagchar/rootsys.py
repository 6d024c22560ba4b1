"""Root data, Weyl groups and parabolic coset combinatorics.

Weights live in fundamental-weight coordinates throughout, as integer
tuples; roots are converted through the Cartan matrix so that every
pairing is an exact integer.  A root is stored together with its coroot,
the latter as the integer vector of its coefficients on the simple
coroots, i.e. as the linear functional  lam -> sum(m[i]*lam[i]).

Full Weyl-group enumeration is provided for the rank <= 2 types
A1, A2, B2, G2 (B2 in the symplectic convention: alpha1 short).  For the
orthogonal series at general rank only the data needed downstream is
exposed: positive roots, rho, and the Weyl dimension formula.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

Weight = tuple[int, ...]

# Cartan matrices, entry [i][j] = <alpha_j, alpha_i^vee>.
# B2 follows the Sp4 convention with alpha1 short; G2 has alpha1 short.
_CARTAN = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-1, 2)),
    "G2": ((2, -3), (-1, 2)),
}

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Root:
    """A root with its coroot; `vec` in fundamental-weight coordinates,
    `covec` the coefficients of the coroot on simple coroots."""

    vec: Weight
    covec: tuple[int, ...]

    def pair(self, lam: Weight) -> int:
        return sum(m * c for m, c in zip(self.covec, lam))


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class WeylElement:
    """Group element given by a reduced word over simple reflections and
    the cached integer action matrix on the weight lattice."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.word)

    def act(self, lam: Weight) -> Weight:
        return _mat_vec(self.matrix, lam)


class RootDatum:
    """Root datum of a simple, simply connected group of rank <= 2, or of
    the B_k/D_k series at general rank (partial support, see module doc)."""

    def __init__(self, label: str):
        label = label.upper()
        if label in _CARTAN:
            cartan = _CARTAN[label]
        elif label[0] in "BD" and label[1:].isdigit():
            cartan = _series_cartan(label[0], int(label[1:]))
        else:
            raise ValueError(f"unsupported type label {label!r}")
        self.label = label
        self.cartan = tuple(tuple(int(x) for x in r) for r in cartan)
        self.rank = len(self.cartan)
        self._inv_cartan = _invert_fraction_matrix(
            [[Fraction(self.cartan[i][j]) for j in range(self.rank)]
             for i in range(self.rank)]
        )
        # alpha_j in omega-coordinates is column j of the Cartan matrix
        self.simple_roots = tuple(
            Root(
                vec=tuple(self.cartan[i][j] for i in range(self.rank)),
                covec=tuple(1 if i == j else 0 for i in range(self.rank)),
            )
            for j in range(self.rank)
        )
        self.rho: Weight = (1,) * self.rank
        self.positive_roots = self._close_positive_roots()
        self._weyl_cache: list[WeylElement] | None = None
        self._by_matrix: dict | None = None

    # -- construction ------------------------------------------------

    def _reflect_root(self, i: int, r: Root) -> Root:
        a = self.simple_roots[i]
        vec = tuple(x - r.vec[i] * y for x, y in zip(r.vec, a.vec))
        # <alpha_i, r^vee> = sum_j covec[j] * cartan[j][i]
        c = sum(r.covec[j] * self.cartan[j][i] for j in range(self.rank))
        covec = tuple(x - c * y for x, y in zip(r.covec, a.covec))
        return Root(vec, covec)

    def _close_positive_roots(self) -> tuple[Root, ...]:
        seen = {r.vec: r for r in self.simple_roots}
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self._reflect_root(i, r)
                    if s.vec not in seen:
                        seen[s.vec] = s
                        nxt.append(s)
            frontier = nxt
        positive = [r for v, r in seen.items() if self.is_positive_root_vec(v)]
        positive.sort(key=lambda r: (sum(self.root_coords(r.vec)), r.vec))
        return tuple(positive)

    def root_coords(self, vec: Weight) -> tuple[Fraction, ...]:
        """Coordinates of a weight on the simple roots (exact fractions)."""
        return tuple(
            sum(self._inv_cartan[j][i] * vec[i] for i in range(self.rank))
            for j in range(self.rank)
        )

    def is_positive_root_vec(self, vec: Weight) -> bool:
        c = self.root_coords(vec)
        return all(x >= 0 for x in c) and any(x > 0 for x in c)

    def in_root_lattice(self, vec: Weight) -> bool:
        return all(x.denominator == 1 for x in self.root_coords(vec))

    # -- basic pairings ----------------------------------------------

    def pairing(self, lam: Weight, root: Root) -> int:
        if len(lam) != self.rank:
            raise ValueError("rank mismatch")
        return root.pair(lam)

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in lam)

    def reflect(self, i: int, lam: Weight) -> Weight:
        a = self.simple_roots[i].vec
        return tuple(x - lam[i] * y for x, y in zip(lam, a))

    def dot_action(self, w: WeylElement, lam: Weight) -> Weight:
        shifted = tuple(x + 1 for x in lam)
        img = w.act(shifted)
        return tuple(x - 1 for x in img)

    def act_word(self, word, lam: Weight) -> Weight:
        # left action of s_{i1}...s_{ik}: apply the rightmost letter first
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    # -- Weyl group ----------------------------------------------------

    def weyl_elements(self, bound: int = 10000) -> list[WeylElement]:
        """All Weyl group elements by BFS over reduced words.

        Refuses to enumerate past `bound` elements; only rank <= 2 and the
        small quadric ranks are meant to be enumerated.
        """
        if self._weyl_cache is not None:
            return self._weyl_cache
        ident = WeylElement((), _identity(self.rank))
        seen = {ident.matrix: ident}
        order = [ident]
        frontier = [ident]
        gens = [self.gen_matrix(i) for i in range(self.rank)]
        while frontier:
            nxt = []
            for w in frontier:
                for i, g in enumerate(gens):
                    m = _mat_mul(w.matrix, g)  # w * s_i, word grows on the right
                    if m not in seen:
                        if len(seen) >= bound:
                            raise ValueError("Weyl group enumeration bound exceeded")
                        e = WeylElement(w.word + (i,), m)
                        seen[m] = e
                        nxt.append(e)
                        order.append(e)
            frontier = nxt
        order.sort(key=lambda w: (len(w.word), w.word))
        self._weyl_cache = order
        self._by_matrix = {w.matrix: w for w in order}
        return order

    def gen_matrix(self, i: int):
        n = self.rank
        cols = []
        for j in range(n):
            basis = tuple(1 if k == j else 0 for k in range(n))
            cols.append(self.reflect(i, basis))
        return tuple(tuple(cols[j][i2] for j in range(n)) for i2 in range(n))

    def element_of_word(self, word) -> WeylElement:
        m = _identity(self.rank)
        for i in word:
            m = _mat_mul(m, self.gen_matrix(i))
        self.weyl_elements()
        try:
            return self._by_matrix[m]
        except KeyError:
            raise ValueError("word does not land in enumerated group") from None

    def length(self, w: WeylElement) -> int:
        """Number of positive roots sent negative; must equal len(word)."""
        cnt = 0
        for r in self.positive_roots:
            img = w.act(r.vec)
            if not self.is_positive_root_vec(img):
                cnt += 1
        return cnt

    def longest_element(self) -> WeylElement:
        return max(self.weyl_elements(), key=lambda w: len(w.word))

    def multiply(self, x: WeylElement, y: WeylElement) -> WeylElement:
        m = _mat_mul(x.matrix, y.matrix)
        self.weyl_elements()
        return self._by_matrix[m]

    def bruhat_leq(self, x: WeylElement, y: WeylElement) -> bool:
        """Chevalley-Bruhat order via the subword property on the BFS word."""
        if len(x.word) > len(y.word):
            return False
        if not y.word:
            return not x.word
        s = y.word[-1]
        y1 = self.element_of_word(y.word[:-1])
        xs = self.multiply(x, self.element_of_word((s,)))
        if len(xs.word) < len(x.word):
            return self.bruhat_leq(xs, y1)
        return self.bruhat_leq(x, y1)

    # -- parabolic data -------------------------------------------------

    def parabolic(self, subset) -> "ParabolicSpec":
        return ParabolicSpec(self, frozenset(subset))

    # -- Weyl dimension formula ------------------------------------------

    def weyl_dim(self, lam: Weight) -> int:
        if not self.is_dominant(lam):
            raise ValueError("weyl_dim requires a dominant weight")
        num = 1
        den = 1
        lam_rho = tuple(x + 1 for x in lam)
        for r in self.positive_roots:
            num *= r.pair(lam_rho)
            den *= r.pair(self.rho)
        q, rem = divmod(num, den)
        assert rem == 0
        return q

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "type": self.label,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [
                {"vec": list(r.vec), "covec": list(r.covec)}
                for r in self.positive_roots
            ],
            "rho": list(self.rho),
        }


def _series_cartan(series: str, k: int):
    if k < 2:
        raise ValueError("series rank must be >= 2")
    rows = [[2 if i == j else 0 for j in range(k)] for i in range(k)]
    if series == "B":
        for i in range(k - 1):
            rows[i][i + 1] = -1
            rows[i + 1][i] = -1
        # last simple root short: <alpha_{k-1}, alpha_k^vee> = -2
        rows[k - 1][k - 2] = -2
    else:
        if k < 3:
            raise ValueError("D_k needs k >= 3")
        for i in range(k - 2):
            rows[i][i + 1] = -1
            rows[i + 1][i] = -1
        rows[k - 3][k - 1] = -1
        rows[k - 1][k - 3] = -1
    return rows


def _invert_fraction_matrix(m):
    n = len(m)
    m = [row[:] for row in m]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = m[col][col]
        m[col] = [x / f for x in m[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


class ParabolicSpec:
    """Standard parabolic P_I given by a subset I of simple-root indices."""

    def __init__(self, datum: RootDatum, subset: frozenset[int]):
        if not subset <= set(range(datum.rank)):
            raise ValueError("subset out of range")
        self.datum = datum
        self.subset = subset
        self.levi_positive_roots = tuple(
            r for r in datum.positive_roots if self._in_levi(r)
        )
        two_rho_p = [0] * datum.rank
        for r in datum.positive_roots:
            if r not in self.levi_positive_roots:
                two_rho_p = [a + b for a, b in zip(two_rho_p, r.vec)]
        self.two_rho_p: Weight = tuple(two_rho_p)

    @property
    def n_radical_roots(self) -> int:
        return len(self.datum.positive_roots) - len(self.levi_positive_roots)

    def _in_levi(self, r: Root) -> bool:
        c = self.datum.root_coords(r.vec)
        return all(c[j] == 0 for j in range(self.datum.rank) if j not in self.subset)

    def in_lambda_p(self, lam: Weight) -> bool:
        return all(lam[i] == 0 for i in self.subset)

    def weyl_subgroup(self) -> list[WeylElement]:
        return [w for w in self.datum.weyl_elements() if set(w.word) <= self.subset]

    def min_coset_reps(self) -> list[WeylElement]:
        """Minimal-length representatives of W/W_P, sorted by length."""
        datum = self.datum
        reps = [
            w
            for w in datum.weyl_elements()
            if all(
                len(datum.multiply(w, datum.element_of_word((i,))).word) > len(w.word)
                for i in self.subset
            )
        ]
        assert len(reps) * len(self.weyl_subgroup()) == len(datum.weyl_elements())
        return reps

    def longest_elements(self):
        """(w0, w_P, w^P) with w^P = w0 * w_P."""
        w0 = self.datum.longest_element()
        wp = max(self.weyl_subgroup(), key=lambda w: len(w.word))
        wP = self.datum.multiply(w0, wp)
        assert len(wP.word) == len(w0.word) - len(wp.word)
        return w0, wp, wP


def datum_to_json_str(datum: RootDatum) -> str:
    return json.dumps(datum.to_json(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# General-rank dimension formulas for the orthogonal series.


def series_weyl_dim(series: str, k: int, lam_eps) -> int:
    """Weyl dimension formula for B_k/D_k with lam in epsilon-coordinates.

    Accepts half-integral coordinates (spin weights) as Fractions.
    """
    if series == "B":
        rho = [Fraction(2 * (k - i) - 1, 2) for i in range(k)]
    elif series == "D":
        rho = [Fraction(k - 1 - i) for i in range(k)]
    else:
        raise ValueError(series)
    mu = [Fraction(x) + r for x, r in zip(lam_eps, rho)]
    num = Fraction(1)
    den = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            num *= (mu[i] - mu[j]) * (mu[i] + mu[j])
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j])
    if series == "B":
        for i in range(k):
            num *= mu[i]
            den *= rho[i]
    val = num / den
    assert val.denominator == 1
    return int(val)
