"""Integer Laurent polynomials in v = q^{1/2}.

Coefficients are exact Python ints keyed by the v-exponent, so q^k is v^{2k}
and half-integer powers of q are odd v-exponents.  Instances are immutable;
all arithmetic returns fresh objects.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class Laurent:
    """Finitely supported map v-exponent -> integer coefficient."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, a in items:
            if a:
                c[int(e)] = c.get(int(e), 0) + int(a)
                if not c[int(e)]:
                    del c[int(e)]
        self._c = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    @classmethod
    def v_power(cls, e: int, coeff: int = 1) -> "Laurent":
        return cls({e: coeff})

    @classmethod
    def q_power(cls, k: int, coeff: int = 1) -> "Laurent":
        return cls({2 * k: coeff})

    @classmethod
    def from_q_poly(cls, coeffs: Mapping[int, int]) -> "Laurent":
        """Build from a polynomial in q: {q-exponent: coefficient}."""
        return cls({2 * k: a for k, a in coeffs.items()})

    # -- inspection --------------------------------------------------------

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def support(self) -> list[int]:
        return sorted(self._c)

    def max_exp(self) -> int:
        """Largest v-exponent with nonzero coefficient; raises on zero."""
        return max(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def is_q_polynomial(self) -> bool:
        """True when supported on even, nonnegative v-exponents."""
        return all(e >= 0 and e % 2 == 0 for e in self._c)

    def q_coeffs(self) -> dict[int, int]:
        """As a polynomial in q; raises if any odd v-exponent is present."""
        if any(e % 2 for e in self._c):
            raise ValueError(f"not a polynomial in q: {self}")
        return {e // 2: a for e, a in sorted(self._c.items())}

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Laurent") -> "Laurent":
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
            if not c[e]:
                del c[e]
        out = Laurent.__new__(Laurent)
        out._c = c
        return out

    def __neg__(self) -> "Laurent":
        out = Laurent.__new__(Laurent)
        out._c = {e: -a for e, a in self._c.items()}
        return out

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        out = Laurent.__new__(Laurent)
        out._c = {e: a for e, a in c.items() if a}
        return out

    def scale(self, k: int) -> "Laurent":
        if not k:
            return Laurent.zero()
        out = Laurent.__new__(Laurent)
        out._c = {e: k * a for e, a in self._c.items()}
        return out

    def shift(self, e0: int) -> "Laurent":
        """Multiply by v^{e0}."""
        out = Laurent.__new__(Laurent)
        out._c = {e + e0: a for e, a in self._c.items()}
        return out

    def bar(self) -> "Laurent":
        """The involution v -> v^{-1}."""
        out = Laurent.__new__(Laurent)
        out._c = {-e: a for e, a in self._c.items()}
        return out

    def eval_q_one(self) -> int:
        """Specialize q = 1 (hence v = 1)."""
        return sum(self._c.values())

    # -- comparison / hashing / display -----------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Laurent) and self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        return f"Laurent({self._c!r})"

    def __str__(self) -> str:
        """Render with q-powers: even exponents as q^k, odd as q^{k/2}.

        >>> str(Laurent({0: 1, 2: 1}))
        '1+q'
        >>> str(Laurent({-1: 1}))
        'q^(-1/2)'
        """
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            a = self._c[e]
            if e == 0:
                term = str(abs(a))
            else:
                if e % 2 == 0:
                    power = "q" if e == 2 else f"q^{e // 2}" if e > 0 else f"q^({e // 2})"
                else:
                    power = f"q^({e}/2)"
                mag = abs(a)
                term = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(term if a > 0 else f"-{term}")
            else:
                parts.append(f"+{term}" if a > 0 else f"-{term}")
        return "".join(parts)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict[str, int]:
        """{v-exponent: coefficient} with string keys (JSON object)."""
        return {str(e): a for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "Laurent":
        return cls({int(e): int(a) for e, a in data.items()})


V = Laurent.v_power(1)
ONE = Laurent.one()
ZERO = Laurent.zero()
Q = Laurent.q_power(1)
