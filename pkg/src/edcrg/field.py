"""Finite fields GF(q) for the Paley and Füredi constructions.

Elements are ints 0..q-1; for q = l^e the base-l digits of an element are
its polynomial coefficients (digit i is the coefficient of x^i) modulo a
fixed irreducible polynomial. Prime-power fields are table driven and
limited to q <= 128; prime fields of any size use modular arithmetic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy

TABLE_LIMIT = 128


def prime_power(q: int) -> tuple[int, int] | None:
    """(l, e) with q = l^e, or None if q is not a prime power."""
    if q < 2:
        return None
    f = sympy.factorint(q)
    if len(f) != 1:
        return None
    ((l, e),) = f.items()
    return l, e


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


def _polymod(a: list[int], m: list[int], l: int) -> list[int]:
    """Remainder of a modulo monic m, coefficient lists low-to-high."""
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % l
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % l
    return [c % l for c in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: list[int], l: int) -> bool:
    e = len(m) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(l), repeat=d):
            div = list(low) + [1]
            if not any(_polymod(m, div, l)):
                return False
    return True


@lru_cache(maxsize=None)
def irreducible_modulus(l: int, e: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree e."""
    for low in itertools.product(range(l), repeat=e):
        m = list(reversed(low)) + [1]
        if m[0] == 0:
            continue
        if _is_irreducible(m, l):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with q elements."""

    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.char, self.degree = pe
        self.modulus = irreducible_modulus(*pe) if self.degree > 1 else (0, 1)
        if self.degree > 1 and q > TABLE_LIMIT:
            raise ValueError(f"prime-power fields are limited to q <= {TABLE_LIMIT}")
        self._tables = None
        if self.degree > 1:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.q})"

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.char)
            out.append(r)
        return out

    def from_coeffs(self, cs) -> int:
        return sum((c % self.char) * self.char**i for i, c in enumerate(cs))

    def _build_tables(self):
        q, l = self.q, self.char
        cs = [self.coeffs(a) for a in range(q)]
        add = [[self.from_coeffs([x + y for x, y in zip(cs[a], cs[b])]) for b in range(q)] for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * self.degree - 1)
                for i, x in enumerate(cs[a]):
                    if x:
                        for j, y in enumerate(cs[b]):
                            prod[i + j] += x * y
                r = self.from_coeffs(_polymod(prod, list(self.modulus), l))
                mul[a][b] = mul[b][a] = r
        self._tables = (add, mul)

    def add(self, a: int, b: int) -> int:
        if self._tables:
            return self._tables[0][a][b]
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        if self._tables:
            return self.from_coeffs([-c for c in self.coeffs(a)])
        return (-a) % self.q

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._tables:
            return self._tables[1][a][b]
        return (a * b) % self.q

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def elements(self) -> range:
        return range(self.q)

    def order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        for d in sorted(sympy.divisors(n)):
            if self.pow(a, d) == 1:
                return d
        raise AssertionError("unreachable")

    @lru_cache(maxsize=None)
    def generator(self) -> int:
        """Smallest element (as an int) generating GF(q)*."""
        for a in range(1, self.q):
            if self.order(a) == self.q - 1:
                return a
        raise AssertionError("multiplicative group is cyclic")

    def subgroup_of_order(self, m: int) -> frozenset[int]:
        """The unique subgroup of GF(q)* with m elements."""
        if m < 1 or (self.q - 1) % m:
            raise ValueError(f"{m} does not divide q-1 = {self.q - 1}")
        h = self.pow(self.generator(), (self.q - 1) // m)
        return frozenset(self.pow(h, i) for i in range(m))

    def is_square(self, a: int) -> bool:
        if a == 0:
            raise ValueError("is_square is defined for nonzero elements only")
        if self.char == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1
