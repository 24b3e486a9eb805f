"""
Finite fields F_q, q = p^e, with elements encoded as integers 0..q-1.

The base-p digits of an element's code are its coefficients over the
defining polynomial, constant term first. For e > 1 the defining polynomial is
the lexicographically smallest monic irreducible of degree e; multiplication
goes through discrete log tables built from the smallest primitive element.
"""
from functools import lru_cache
from math import gcd
from typing import List, Tuple

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_strip


class FiniteField:
    def __init__(self, p: int, e: int = 1):
        if not sympy.isprime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if e < 1:
            raise ValueError(f"extension degree must be positive, got {e}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = self._choose_modulus()
        self._build_tables()

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"

    # --- construction -------------------------------------------------

    def _choose_modulus(self) -> List[int]:
        """Dense coefficients (highest degree first) of the defining polynomial."""
        if self.e == 1:
            return [1, 0]
        for code in range(self.q):
            tail = list(reversed(self._digits(code)))
            candidate = [1] + tail
            if gf_irreducible_p(candidate, self.p, ZZ):
                return candidate
        raise ValueError(f"no irreducible polynomial of degree {self.e} over F_{self.p}")

    def _digits(self, code: int) -> List[int]:
        digits = []
        for _ in range(self.e):
            code, a = divmod(code, self.p)
            digits.append(a)
        return digits

    def _code(self, digits: List[int]) -> int:
        return sum(a * self.p**j for j, a in enumerate(digits))

    def _poly_mul(self, a: int, b: int) -> int:
        fa = gf_strip(list(reversed(self._digits(a))))
        fb = gf_strip(list(reversed(self._digits(b))))
        prod = gf_rem(gf_mul(fa, fb, self.p, ZZ), self.modulus, self.p, ZZ)
        low_first = [int(c) for c in reversed(prod)]
        low_first += [0] * (self.e - len(low_first))
        return self._code(low_first)

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        if self.e == 1:
            self._add = None
        else:
            digits = [self._digits(c) for c in range(q)]
            self._add = [
                [self._code([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                for a in range(q)
            ]
        self._neg = [self._neg_slow(a) for a in range(q)]

        # discrete log / exp tables from the smallest primitive element
        self._exp: List[int] = []
        self._log: List[int] = [0] * q
        for g in range(1, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._slow_mul(x, g)
            if len(powers) == q - 1:
                self._exp = powers
                break
        for i, x in enumerate(self._exp):
            self._log[x] = i
        self.primitive_element = self._exp[1] if q > 2 else 1

    def _neg_slow(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._code([(-x) % self.p for x in self._digits(a)])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self._poly_mul(a, b)

    # --- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add is None:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._add is None:
            return (a * b) % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._add is None:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def from_int(self, value: int) -> int:
        """Image of an integer in the prime subfield."""
        return value % self.p

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        m = self.q - 1
        return m // gcd(self._log[a], m)

    def element_of_order(self, n: int) -> int:
        """Smallest element code of exact multiplicative order n."""
        if (self.q - 1) % n:
            raise ValueError(f"{n} does not divide q-1={self.q - 1}")
        for a in range(1, self.q):
            if self.order(a) == n:
                return a
        raise ValueError(f"no element of order {n} in F_{self.q}")

    def digits(self, a: int) -> Tuple[int, ...]:
        return tuple(self._digits(a))


@lru_cache(maxsize=None)
def get_field(p: int, e: int = 1) -> FiniteField:
    return FiniteField(p, e)


def smallest_field(p: int, n: int, min_size: int = 0) -> FiniteField:
    """Smallest F_{p^e} with n | p^e - 1 and p^e > min_size."""
    e = 1
    while (p**e - 1) % n or p**e <= min_size:
        e += 1
    return get_field(p, e)


def field_of_size(q: int) -> FiniteField:
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise ValueError(f"field size must be a prime power, got {q}")
    (p, e), = factors.items()
    return get_field(int(p), int(e))
