"""
Dense univariate polynomials over a FiniteField.

A polynomial is a tuple of field codes, constant term first, with no trailing
zeros; the zero polynomial is the empty tuple.
"""
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import FiniteField

Poly = Tuple[int, ...]


class PolyRing:
    def __init__(self, field: FiniteField):
        self.field = field

    # --- construction -------------------------------------------------

    @staticmethod
    def normalize(coeffs: Sequence[int]) -> Poly:
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def zero(self) -> Poly:
        return ()

    def one(self) -> Poly:
        return (1,)

    def x_power(self, k: int) -> Poly:
        return tuple([0] * k + [1])

    def linear(self, root: int) -> Poly:
        """The monic linear polynomial x - root."""
        return self.normalize([self.field.neg(root), 1])

    def from_roots(self, roots: Dict[int, int]) -> Poly:
        """prod (x - root)^mult over a {root: multiplicity} map."""
        result = self.one()
        for root, mult in sorted(roots.items()):
            result = self.mul(result, self.pow(self.linear(root), mult))
        return result

    @staticmethod
    def degree(f: Poly) -> int:
        return len(f) - 1

    # --- ring operations ----------------------------------------------

    def add(self, f: Poly, g: Poly) -> Poly:
        F = self.field
        n = max(len(f), len(g))
        out = [F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)]
        return self.normalize(out)

    def neg(self, f: Poly) -> Poly:
        return tuple(self.field.neg(c) for c in f)

    def sub(self, f: Poly, g: Poly) -> Poly:
        return self.add(f, self.neg(g))

    def scale(self, c: int, f: Poly) -> Poly:
        if c == 0:
            return ()
        return tuple(self.field.mul(c, a) for a in f)

    def mul(self, f: Poly, g: Poly) -> Poly:
        if not f or not g:
            return ()
        F = self.field
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a == 0:
                continue
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return self.normalize(out)

    def pow(self, f: Poly, k: int) -> Poly:
        result = self.one()
        base = f
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def divmod(self, f: Poly, g: Poly) -> Tuple[Poly, Poly]:
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(f)
        lead_inv = F.inv(g[-1])
        quot = [0] * max(len(f) - len(g) + 1, 0)
        for shift in range(len(f) - len(g), -1, -1):
            c = rem[shift + len(g) - 1]
            if c == 0:
                continue
            c = F.mul(c, lead_inv)
            quot[shift] = c
            for j, b in enumerate(g):
                rem[shift + j] = F.sub(rem[shift + j], F.mul(c, b))
        return self.normalize(quot), self.normalize(rem)

    def exact_div(self, f: Poly, g: Poly) -> Optional[Poly]:
        """f / g when g divides f, otherwise None."""
        quot, rem = self.divmod(f, g)
        return quot if not rem else None

    def monic(self, f: Poly) -> Poly:
        if not f:
            return f
        return self.scale(self.field.inv(f[-1]), f)

    def gcd(self, f: Poly, g: Poly) -> Poly:
        while g:
            f, g = g, self.divmod(f, g)[1]
        return self.monic(f)

    # --- evaluation and local data ------------------------------------

    def eval(self, f: Poly, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(f):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def taylor(self, f: Poly, root: int) -> List[int]:
        """Coefficients of f in powers of (x - root), lowest first."""
        coeffs = []
        rest = f
        lin = self.linear(root)
        while rest:
            rest, r = self.divmod(rest, lin)
            coeffs.append(r[0] if r else 0)
        return coeffs

    def valuation_at(self, f: Poly, root: Optional[int]) -> int:
        """Order of f at x = root, or at infinity when root is None."""
        if not f:
            raise ValueError("valuation of the zero polynomial")
        if root is None:
            return -self.degree(f)
        for i, c in enumerate(self.taylor(f, root)):
            if c:
                return i
        raise ValueError("unreachable: nonzero polynomial with zero expansion")


def partial_fractions(
    ring: PolyRing, num: Poly, den_roots: Dict[int, int]
) -> Tuple[Poly, Dict[Tuple[int, int], int]]:
    """
    Expand num / prod (x - root)^mult into a polynomial part plus
    atoms c * (x - root)^(-j).

    Returns:
        (polynomial part, {(root, j): c}) with zero atoms omitted
    """
    F = ring.field
    den = ring.from_roots(den_roots)
    poly_part, rem = ring.divmod(num, den)
    atoms: Dict[Tuple[int, int], int] = {}
    for root, mult in sorted(den_roots.items()):
        others = {r: m for r, m in den_roots.items() if r != root}
        cofactor = ring.from_roots(others)
        # rem / den = sum_j c_j (x-root)^-j + (terms regular at root);
        # the c_j come from the Taylor expansion of rem / cofactor at root.
        rem_t = ring.taylor(rem, root) if rem else []
        cof_t = ring.taylor(cofactor, root)
        series = _series_div(F, rem_t, cof_t, mult)
        for i, c in enumerate(series):
            if c:
                atoms[(root, mult - i)] = c
    return poly_part, atoms


def _series_div(F: FiniteField, a: List[int], b: List[int], count: int) -> List[int]:
    """First `count` coefficients of the power series a / b (b[0] != 0)."""
    out: List[int] = []
    inv_b0 = F.inv(b[0])
    for i in range(count):
        acc = a[i] if i < len(a) else 0
        for j in range(1, i + 1):
            if j < len(b):
                acc = F.sub(acc, F.mul(b[j], out[i - j]))
        out.append(F.mul(acc, inv_b0))
    return out
