"""Vectors and square matrices over Z_n, and the right action a -> aA.

Determinants are computed over the integers and reduced at the end: Z_n has
zero divisors, so field-style elimination mod n is not an option.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arith import IntOrModulus, Modulus, as_modulus
from .errors import DomainError, NotInSLError, StructureError


@dataclass(frozen=True)
class VectorModN:
    modulus: Modulus
    components: tuple[int, ...]

    def __post_init__(self):
        if len(self.components) < 1:
            raise StructureError("vector must have at least one component")
        n = self.modulus.n
        if any(not 0 <= c < n for c in self.components):
            raise DomainError(f"components {self.components} not reduced mod {n}")

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def m(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __str__(self):
        return ",".join(map(str, self.components))


@dataclass(frozen=True)
class MatrixModN:
    modulus: Modulus
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.entries)
        if m < 1 or any(len(row) != m for row in self.entries):
            raise StructureError("matrix must be square and non-empty")
        n = self.modulus.n
        if any(not 0 <= x < n for row in self.entries for x in row):
            raise DomainError(f"entries not reduced mod {n}")

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def m(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def __str__(self):
        return ";".join(",".join(map(str, r)) for r in self.entries)


def vector(components: Iterable[int], n: IntOrModulus) -> VectorModN:
    mod = as_modulus(n)
    return VectorModN(mod, tuple(int(c) % mod.n for c in components))


def matrix(rows: Iterable[Iterable[int]], n: IntOrModulus) -> MatrixModN:
    mod = as_modulus(n)
    return MatrixModN(mod, tuple(tuple(int(x) % mod.n for x in r) for r in rows))


def identity(m: int, n: IntOrModulus) -> MatrixModN:
    return matrix([[int(i == j) for j in range(m)] for i in range(m)], n)


def zero_vector(m: int, n: IntOrModulus) -> VectorModN:
    return vector([0] * m, n)


def parse_vector(text: str, n: IntOrModulus) -> VectorModN:
    """'1,2,3' -> VectorModN. Raises ValueError on malformed input."""
    parts = [p.strip() for p in text.strip().strip("()").split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed vector literal {text!r}")
    return vector([int(p) for p in parts], n)


def parse_matrix(text: str, n: IntOrModulus) -> MatrixModN:
    """Row-major literal, e.g. '1,1;0,1'."""
    rows = [r for r in text.strip().split(";")]
    try:
        entries = [[int(x) for x in r.split(",")] for r in rows]
    except ValueError:
        raise ValueError(f"malformed matrix literal {text!r}") from None
    if any(len(r) != len(entries) for r in entries):
        raise ValueError(f"matrix literal {text!r} is not square")
    return matrix(entries, n)


def _same_ring(A, B):
    if A.modulus.n != B.modulus.n:
        raise StructureError(f"modulus mismatch: {A.modulus.n} vs {B.modulus.n}")
    if A.m != B.m:
        raise StructureError(f"dimension mismatch: {A.m} vs {B.m}")


def mat_mul(A: MatrixModN, B: MatrixModN) -> MatrixModN:
    _same_ring(A, B)
    n = A.n
    cols = list(zip(*B.entries))
    return MatrixModN(
        A.modulus,
        tuple(tuple(sum(x * y for x, y in zip(row, col)) % n for col in cols) for row in A.entries),
    )


def scalar_identity(c: int, m: int, n: IntOrModulus) -> MatrixModN:
    mod = as_modulus(n)
    return matrix([[c * (i == j) for j in range(m)] for i in range(m)], mod)


# -- determinants -------------------------------------------------------------

def _det_cofactor(M: Sequence[Sequence[int]]) -> int:
    m = len(M)
    if m == 1:
        return M[0][0]
    if m == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = 0
    for j, x in enumerate(M[0]):
        if x:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            total += (-1) ** j * x * _det_cofactor(minor)
    return total


def _det_bareiss(M: Sequence[Sequence[int]]) -> int:
    A = [list(r) for r in M]
    m = len(A)
    sign = 1
    prev = 1
    for k in range(m - 1):
        if A[k][k] == 0:
            for i in range(k + 1, m):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                # exact: Sylvester's identity guarantees divisibility
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[m - 1][m - 1]


def det_int(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant: cofactor expansion up to 4x4, Bareiss above."""
    return _det_cofactor(M) if len(M) <= 4 else _det_bareiss(M)


def det_mod(A: MatrixModN) -> int:
    return det_int(A.entries) % A.n


def is_sl(A: MatrixModN) -> bool:
    return det_mod(A) == 1


def adjugate(A: MatrixModN) -> MatrixModN:
    """(adj A)[i][j] = (-1)^(i+j) det A(j, i), reduced mod n. adj of 1x1 is [[1]]."""
    m, n = A.m, A.n
    if m == 1:
        return identity(1, A.modulus)
    E = A.entries

    def minor(r, c):
        return [row[:c] + row[c + 1:] for k, row in enumerate(E) if k != r]

    return MatrixModN(
        A.modulus,
        tuple(tuple((-1) ** (i + j) * det_int(minor(j, i)) % n for j in range(m)) for i in range(m)),
    )


def require_sl(A: MatrixModN) -> None:
    d = det_mod(A)
    if d != 1:
        raise NotInSLError(d, A.n)


def sl_inverse(A: MatrixModN) -> MatrixModN:
    require_sl(A)
    return adjugate(A)


# -- the action ---------------------------------------------------------------

def act_unchecked(a: VectorModN, A: MatrixModN) -> VectorModN:
    """aA mod n without the SL membership test."""
    if a.n != A.n:
        raise StructureError(f"modulus mismatch: {a.n} vs {A.n}")
    if a.m != A.m:
        raise StructureError(f"dimension mismatch: vector {a.m}, matrix {A.m}")
    n = a.n
    cols = zip(*A.entries)
    return VectorModN(a.modulus, tuple(sum(x * y for x, y in zip(a.components, col)) % n for col in cols))


def act(a: VectorModN, A: MatrixModN) -> VectorModN:
    """Right action of SL(m, Z_n) on row vectors."""
    if a.m != A.m:
        raise StructureError(f"dimension mismatch: vector {a.m}, matrix {A.m}")
    require_sl(A)
    return act_unchecked(a, A)


def scale_map(j: int, a: VectorModN) -> VectorModN:
    """a -> p^j a mod p^k, for a over Z_{p^k} and 0 <= j <= k."""
    pk = a.modulus.prime_power
    if pk is None:
        raise DomainError(f"modulus {a.n} is not a prime power")
    p, k = pk
    if not 0 <= j <= k:
        raise DomainError(f"exponent j={j} outside 0..{k}")
    f = p**j
    return VectorModN(a.modulus, tuple(f * c % a.n for c in a.components))


def reduce_vector(a: VectorModN, q: IntOrModulus) -> VectorModN:
    return vector(a.components, q)


def reduce_matrix(A: MatrixModN, q: IntOrModulus) -> MatrixModN:
    return matrix(A.entries, q)
