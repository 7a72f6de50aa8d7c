"""Exact Hecke algebra arithmetic over Z[q^{1/2}, q^{-1/2}] for S_n.

Elements are finitely supported maps from permutations to Laurent
polynomials in v = q^{1/2}, written in the standard basis {T_w}.  The
relations are

    T_s T_w = T_{sw}                     if l(sw) > l(w),
    T_s T_w = (q-1) T_w + q T_{sw}       if l(sw) < l(w),

and symmetrically on the right.  The module provides the bar involution,
the Kazhdan-Lusztig basis C'_w computed by the classical mu-recursion
(this is the independent oracle used to check every mask construction),
the lower-ideal basis B'_w = q^{-l(w)/2} sum_{x<=w} T_x, and the Moebius
inversion expanding arbitrary elements in the B' basis.

Per-rank caches make exhaustive sweeps over S_6 practical.  All values are
immutable once built; the module-level memo tables are only ever extended
(atomic dict operations), so the public operations are safe to call
concurrently.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .laurent import Laurent
from . import permutations as perms
from .permutations import Perm

_Q = Laurent.q_power(1)
_QM1 = Laurent({2: 1, 0: -1})  # q - 1
_VINV = Laurent.v_power(-1)


class HeckeElement:
    """Finitely supported map Perm -> Laurent, in the T basis."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Perm, Laurent] | None = None):
        self.n = n
        self.terms: dict[Perm, Laurent] = {}
        if terms:
            for w, c in terms.items():
                if len(w) != n:
                    raise ValueError(f"rank mismatch: {w} in H_{n}")
                if c:
                    self.terms[w] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "HeckeElement":
        return cls(n)

    @classmethod
    def t_identity(cls, n: int) -> "HeckeElement":
        return cls(n, {perms.identity(n): Laurent.one()})

    @classmethod
    def monomial(cls, w: Perm, coeff: Laurent = Laurent.one()) -> "HeckeElement":
        return cls(len(w), {w: coeff})

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = HeckeElement(self.n, self.terms)
        for w, c in other.terms.items():
            s = out.terms.get(w, Laurent.zero()) + c
            if s:
                out.terms[w] = s
            else:
                out.terms.pop(w, None)
        return out

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(Laurent({0: -1}))

    def scale(self, c: Laurent) -> "HeckeElement":
        return HeckeElement(self.n, {w: a * c for w, a in self.terms.items()})

    def coeff(self, w: Perm) -> Laurent:
        return self.terms.get(w, Laurent.zero())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HeckeElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def support(self) -> list[Perm]:
        """Terms sorted by length then one-line word (stable display order)."""
        return sorted(self.terms, key=lambda w: (perms.length(w), w))

    def __repr__(self) -> str:
        parts = [f"({self.terms[w]})*T{list(w)}" for w in self.support()]
        return " + ".join(parts) if parts else "0"

    # -- multiplication ----------------------------------------------------

    def mul_gen(self, i: int, side: str = "right") -> "HeckeElement":
        """Multiply by T_{s_i} on the given side."""
        out: dict[Perm, Laurent] = {}

        def bump(w: Perm, c: Laurent) -> None:
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            elif c:
                out[w] = c

        for w, c in self.terms.items():
            ws = perms.mult_gen_right(w, i) if side == "right" else perms.mult_gen_left(w, i)
            if perms.length(ws) > perms.length(w):
                bump(ws, c)
            else:
                bump(w, c * _QM1)
                bump(ws, c * _Q)
        return HeckeElement(self.n, out)

    def mul_word(self, word: Iterable[int], side: str = "right") -> "HeckeElement":
        h = self
        seq = list(word)
        if side == "left":
            seq.reverse()
        for i in seq:
            h = h.mul_gen(i, side)
        return h

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        out = HeckeElement.zero(self.n)
        for w, c in other.terms.items():
            piece = self.mul_word(perms.first_reduced_word(w)).scale(c)
            out = out + piece
        return out

    # -- bar involution -------------------------------------------------------

    def bar(self) -> "HeckeElement":
        """Ring involution: bar(v) = v^{-1}, bar(T_w) = (T_{w^{-1}})^{-1}."""
        out = HeckeElement.zero(self.n)
        for w, c in self.terms.items():
            out = out + bar_t(w).scale(c.bar())
        return out

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"perm": list(w), "poly": self.terms[w].to_json()} for w in self.support()
        ]

    @classmethod
    def from_json(cls, n: int, data: list[dict]) -> "HeckeElement":
        return cls(
            n,
            {
                tuple(item["perm"]): Laurent.from_json(item["poly"])
                for item in data
            },
        )


def t_element(w: Perm) -> HeckeElement:
    return HeckeElement.monomial(w)


def t_from_word(n: int, word: Iterable[int]) -> HeckeElement:
    """T_w from a reduced word; rejects non-reduced input."""
    word = tuple(word)
    if not perms.is_reduced(n, word):
        raise ValueError(f"word {word} is not reduced")
    return HeckeElement.t_identity(n).mul_word(word)


_BAR_T_CACHE: dict[Perm, HeckeElement] = {}


def bar_t(w: Perm) -> HeckeElement:
    """bar(T_w) = (T_{w^{-1}})^{-1}, via bar(T_s) = q^{-1} T_s + (q^{-1}-1) T_1
    extended multiplicatively along a reduced word."""
    cached = _BAR_T_CACHE.get(w)
    if cached is not None:
        return cached
    n = len(w)
    h = HeckeElement.t_identity(n)
    qinv = Laurent.q_power(-1)
    qinv_m1 = Laurent({-2: 1, 0: -1})
    for i in perms.first_reduced_word(w):
        # h := h * bar(T_{s_i})
        h = h.mul_gen(i).scale(qinv) + h.scale(qinv_m1)
    _BAR_T_CACHE[w] = h
    return h


# -- Kazhdan-Lusztig C' basis (the oracle) ---------------------------------

# internal representation: perm -> {v-exponent: coefficient}; kept raw so the
# recursion over large symmetric groups stays fast
_CPRIME_RAW: dict[Perm, dict[Perm, dict[int, int]]] = {}
_CPRIME_CACHE: dict[Perm, HeckeElement] = {}


def _add_into(
    target: dict[Perm, dict[int, int]],
    perm: Perm,
    poly: dict[int, int],
    shift: int = 0,
    mult: int = 1,
) -> None:
    slot = target.setdefault(perm, {})
    for e, a in poly.items():
        e2 = e + shift
        slot[e2] = slot.get(e2, 0) + mult * a


def _cprime_raw(w: Perm) -> dict[Perm, dict[int, int]]:
    cached = _CPRIME_RAW.get(w)
    if cached is not None:
        return cached
    if perms.is_identity(w):
        res: dict[Perm, dict[int, int]] = {w: {0: 1}}
        _CPRIME_RAW[w] = res
        return res
    s = min(perms.left_descents(w))
    v = perms.mult_gen_left(w, s)
    cv = _cprime_raw(v)
    # prod = q^{-1/2} (T_s + T_1) C'_v
    prod: dict[Perm, dict[int, int]] = {}
    lengths = {x: perms.length(x) for x in cv}
    for x, poly in cv.items():
        sx = perms.mult_gen_left(x, s)
        if lengths[x] < perms.length(sx):
            _add_into(prod, sx, poly, -1)
        else:
            # T_s T_x = (q-1) T_x + q T_{sx}
            _add_into(prod, x, poly, 1)
            _add_into(prod, x, poly, -1, -1)
            _add_into(prod, sx, poly, 1)
        _add_into(prod, x, poly, -1)
    # subtract mu(z, v) C'_z over z < v with sz < z
    for z, poly in list(cv.items()):
        sz = perms.mult_gen_left(z, s)
        if perms.length(sz) < lengths[z]:
            mu = poly.get(-lengths[z] - 1, 0)
            if mu:
                for y, p2 in _cprime_raw(z).items():
                    _add_into(prod, y, p2, 0, -mu)
    res = {
        x: {e: a for e, a in poly.items() if a}
        for x, poly in prod.items()
    }
    res = {x: poly for x, poly in res.items() if poly}
    _CPRIME_RAW[w] = res
    return res


def cprime(w: Perm) -> HeckeElement:
    """The Kazhdan-Lusztig basis element C'_w, bar-invariant with
    C'_w = q^{-l(w)/2} sum_{x <= w} P_{x,w}(q) T_x.

    Computed by the classical recursion C'_{s v} = C'_s C'_v - sum mu(z, v) C'_z
    over z < v with sz < z, memoized per permutation.
    """
    cached = _CPRIME_CACHE.get(w)
    if cached is not None:
        return cached
    raw = _cprime_raw(w)
    res = HeckeElement(len(w), {x: Laurent(poly) for x, poly in raw.items()})
    _CPRIME_CACHE[w] = res
    return res


def kl_polynomial(x: Perm, w: Perm) -> Laurent:
    """P_{x,w}(q) as a Laurent object supported on even v-exponents.

    P_{w,w} = 1, P_{x,w} = 0 unless x <= w, and deg P_{x,w} <=
    (l(w)-l(x)-1)/2 for x < w.  This is the independent oracle that every
    mask-set construction in the package is checked against.
    """
    if len(x) != len(w):
        raise ValueError("rank mismatch")
    poly = _cprime_raw(w).get(x)
    if not poly:
        return Laurent.zero()
    return Laurent(poly).shift(perms.length(w))


def kl_poly_coeffs(x: Perm, w: Perm) -> dict[int, int]:
    """P_{x,w} as {q-exponent: coefficient}."""
    return kl_polynomial(x, w).q_coeffs()


def mu_coefficient(x: Perm, w: Perm) -> int:
    """The mu(x, w) = coefficient of q^{(l(w)-l(x)-1)/2} in P_{x,w}."""
    return _cprime_raw(w).get(x, {}).get(-perms.length(x) - 1, 0)


# -- the lower-ideal B' basis ------------------------------------------------

def bprime(w: Perm) -> HeckeElement:
    """B'_w = q^{-l(w)/2} sum_{x <= w} T_x."""
    coeff = Laurent.v_power(-perms.length(w))
    return HeckeElement(len(w), {x: coeff for x in perms.bruhat_interval(w)})


def expand_in_bprime(h: HeckeElement) -> dict[Perm, Laurent]:
    """Coefficients of h in the B' basis, by Moebius inversion:

        T_w = sum_{x <= w} (-1)^{l(w)-l(x)} q^{l(x)/2} B'_x.

    Round-trips with :func:`bprime`.
    """
    out: dict[Perm, Laurent] = {}
    for w, c in h.terms.items():
        lw = perms.length(w)
        for x in perms.bruhat_interval(w):
            lx = perms.length(x)
            sign = -1 if (lw - lx) % 2 else 1
            term = c.shift(lx).scale(sign)
            s = out.get(x, Laurent.zero()) + term
            if s:
                out[x] = s
            else:
                out.pop(x, None)
    return out


def from_bprime_expansion(n: int, coeffs: Mapping[Perm, Laurent]) -> HeckeElement:
    out = HeckeElement.zero(n)
    for x, c in coeffs.items():
        out = out + bprime(x).scale(c)
    return out


def cprime_product(n: int, word: Iterable[int]) -> HeckeElement:
    """The product C'_{s_{i_1}} ... C'_{s_{i_p}} along a word."""
    h = HeckeElement.t_identity(n)
    for i in word:
        # multiply on the right by C'_{s_i} = q^{-1/2}(T_1 + T_{s_i})
        h = (h.mul_gen(i, side="right") + h).scale(_VINV)
    return h


def clear_caches() -> None:
    _BAR_T_CACHE.clear()
    _CPRIME_CACHE.clear()
    _CPRIME_RAW.clear()
    perms._INTERVAL_CACHE.clear()
