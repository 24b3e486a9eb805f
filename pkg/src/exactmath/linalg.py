"""
Dense matrices over a FiniteField and Jordan block extraction.
"""
from collections import Counter
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import FiniteField


class Matrix:
    def __init__(self, field: FiniteField, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
        self.field = field
        self.rows: List[List[int]] = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix rows")

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols} over F_{self.field.q})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows and self.ncols == other.ncols

    # --- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, field: FiniteField, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FiniteField, size: int) -> "Matrix":
        m = cls.zeros(field, size, size)
        for i in range(size):
            m.rows[i][i] = 1
        return m

    @classmethod
    def jordan_block(cls, field: FiniteField, size: int, eigenvalue: int) -> "Matrix":
        """g v_i = c v_i + v_{i+1}: eigenvalue on the diagonal, ones below it."""
        m = cls.zeros(field, size, size)
        for i in range(size):
            m.rows[i][i] = eigenvalue
            if i + 1 < size:
                m.rows[i + 1][i] = 1
        return m

    @classmethod
    def block_diagonal(cls, field: FiniteField, blocks: Sequence["Matrix"]) -> "Matrix":
        size = sum(b.nrows for b in blocks)
        m = cls.zeros(field, size, size)
        offset = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    m.rows[offset + i][offset + j] = b.rows[i][j]
            offset += b.nrows
        return m

    # --- arithmetic ---------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.ncols)

    def add(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def sub(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scalar_shift(self, c: int) -> "Matrix":
        """self - c * I."""
        m = self.copy()
        for i in range(min(m.nrows, m.ncols)):
            m.rows[i][i] = self.field.sub(m.rows[i][i], c)
        return m

    def mul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [() for _ in range(other.ncols)]
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in cols:
                acc = 0
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = F.add(acc, F.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(F, out, other.ncols)

    def pow(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k > 0:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.field, self.nrows)

    # --- elimination --------------------------------------------------

    def rref(self) -> Tuple["Matrix", List[int]]:
        """Reduced row echelon form and pivot columns."""
        F = self.field
        rows = [list(r) for r in self.rows]
        pivots: List[int] = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(inv, a) for a in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(F, rows, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def nullspace(self) -> List[List[int]]:
        """Basis of {v : self * v = 0}."""
        F = self.field
        reduced, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fcol in free:
            v = [0] * self.ncols
            v[fcol] = 1
            for i, pcol in enumerate(pivots):
                v[pcol] = F.neg(reduced.rows[i][fcol])
            basis.append(v)
        return basis

    def solve(self, rhs: Sequence[int]) -> Optional[List[int]]:
        """One solution of self * v = rhs, or None when inconsistent."""
        F = self.field
        augmented = Matrix(F, [list(r) + [b] for r, b in zip(self.rows, rhs)], self.ncols + 1)
        reduced, pivots = augmented.rref()
        if self.ncols in pivots:
            return None
        v = [0] * self.ncols
        for i, pcol in enumerate(pivots):
            v[pcol] = reduced.rows[i][self.ncols]
        return v

    def apply(self, v: Sequence[int]) -> List[int]:
        F = self.field
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, v):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out


def nullity_profile(m: Matrix, eigenvalue: int) -> List[int]:
    """[0, nullity(N), nullity(N^2), ...] for N = M - cI, until it stabilizes."""
    if not m.is_square:
        raise ValueError("nullity profile of a non-square matrix")
    shifted = m.scalar_shift(eigenvalue)
    profile = [0]
    power = Matrix.identity(m.field, m.nrows)
    while True:
        power = power.mul(shifted)
        nullity = power.nullity()
        if nullity == profile[-1]:
            return profile
        profile.append(nullity)


def unipotent_block_sizes(m: Matrix, eigenvalue: int) -> Counter:
    """
    Jordan block sizes of m for the given eigenvalue, as a Counter {size: count}.

    (#blocks of size >= i) = nullity(N^i) - nullity(N^(i-1)).
    """
    profile = nullity_profile(m, eigenvalue)
    at_least = [profile[i] - profile[i - 1] for i in range(1, len(profile))] + [0]
    sizes: Counter = Counter()
    for i in range(len(at_least) - 1):
        exact = at_least[i] - at_least[i + 1]
        if exact:
            sizes[i + 1] = exact
    return sizes


def block_sizes_as_partition(sizes: Dict[int, int]) -> List[int]:
    return sorted(size for size, count in sizes.items() for _ in range(count))
