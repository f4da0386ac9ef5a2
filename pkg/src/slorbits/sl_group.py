"""SL(m, Z_n): order formulas, transvection generators, exhaustive enumeration."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels as K
from .arith import IntOrModulus, Modulus, as_modulus, jordan_totient
from .errors import BudgetExceeded, ConsistencyError, DomainError
from .linalg_mod import MatrixModN, VectorModN, identity, matrix

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "SLORBITS_BUDGET"


def default_budget() -> int:
    """Enumeration budget from $SLORBITS_BUDGET, else 10^8."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise DomainError(f"{BUDGET_ENV} must be >= 1, got {value}")
    return value


def check_budget(needed: int, budget: int | None, what: str = "candidate matrices") -> None:
    budget = default_budget() if budget is None else budget
    if needed > budget:
        raise BudgetExceeded(needed, budget, what)


@dataclass(frozen=True)
class GroupSpec:
    m: int
    modulus: Modulus

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError(f"dimension m must be >= 1, got {self.m}")

    @classmethod
    def of(cls, m: int, n: IntOrModulus) -> "GroupSpec":
        return cls(m, as_modulus(n))

    @property
    def n(self) -> int:
        return self.modulus.n

    def __str__(self):
        return f"SL({self.m}, Z_{self.n})"


def _sl_product(spec: GroupSpec, exponent: int, top: int) -> int:
    # n^exponent * prod_p prod_{j=2..top} (1 - p^-j), kept integral by
    # pulling p^j out of n^exponent for each factor
    n = spec.n
    num = n**exponent
    den = 1
    for p in spec.modulus.primes:
        for j in range(2, top + 1):
            num *= p**j - 1
            den *= p**j
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"order formula not integral for {spec}")
    return q


def group_order(spec: GroupSpec) -> int:
    """|SL(m, Z_n)| = n^(m^2-1) prod_i prod_{j=2..m} (1 - p_i^-j)."""
    return _sl_product(spec, spec.m**2 - 1, spec.m)


def stabilizer_order(spec: GroupSpec) -> int:
    """Order of the stabilizer of (0, ..., 0, 1)."""
    if spec.m < 2:
        raise DomainError("stabilizer order needs m >= 2")
    return _sl_product(spec, spec.m**2 - spec.m - 1, spec.m - 1)


def orbit_size_by_lagrange(spec: GroupSpec) -> int:
    """|SL| / |S|, cross-checked against the Jordan totient J_m(n)."""
    q, r = divmod(group_order(spec), stabilizer_order(spec))
    if r:
        raise ConsistencyError(f"|S| does not divide |SL| for {spec}")
    if q != jordan_totient(spec.m, spec.modulus):
        raise ConsistencyError(f"Lagrange quotient {q} != Jordan totient for {spec}")
    return q


def generators(spec: GroupSpec) -> list[MatrixModN]:
    """Elementary transvections I + E_ij and I + (n-1) E_ij, i != j.

    Always 2 m (m - 1) matrices in (i, j, offset) order; for n = 2 the two
    offsets coincide and the list repeats each matrix.
    """
    m, n = spec.m, spec.n
    if m < 2:
        raise DomainError("generators need m >= 2; SL(1, Z_n) is trivial")
    out = []
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            for c in (1, n - 1):
                rows = [[int(r == s) for s in range(m)] for r in range(m)]
                rows[i][j] = c
                out.append(matrix(rows, spec.modulus))
    return out


def generator_array(spec: GroupSpec) -> np.ndarray:
    if spec.m < 2:
        return np.empty((0, spec.m, spec.m), dtype=np.int64)
    return np.array([g.entries for g in generators(spec)], dtype=np.int64)


def matrix_from_code(code: int, spec: GroupSpec) -> MatrixModN:
    m, n = spec.m, spec.n
    digits = []
    for _ in range(m * m):
        code, r = divmod(int(code), n)
        digits.append(r)
    digits.reverse()
    return matrix([digits[i * m:(i + 1) * m] for i in range(m)], spec.modulus)


def matrix_code(A: MatrixModN) -> int:
    code = 0
    for row in A.entries:
        for x in row:
            code = code * A.n + x
    return code


def sl_code_chunks(spec: GroupSpec, budget: int | None = None) -> Iterator[np.ndarray]:
    """Ascending code arrays covering all det == 1 matrices, chunk by chunk."""
    check_budget(spec.n ** (spec.m**2), budget)
    return K.sl_codes(spec.n, spec.m)


def enumerate_group(spec: GroupSpec, budget: int | None = None) -> Iterator[MatrixModN]:
    """Yield every element of SL(m, Z_n) once, in code order.

    Refuses (BudgetExceeded) before doing any work when n^(m^2) exceeds the
    budget.
    """
    chunks = sl_code_chunks(spec, budget)
    for codes in chunks:
        for c in codes:
            yield matrix_from_code(int(c), spec)


def count_group(spec: GroupSpec, budget: int | None = None) -> tuple[int, int]:
    """Exhaustive (|SL|, |stabilizer of (0,...,0,1)|) by det filtering."""
    m, n = spec.m, spec.n
    # last row (0, ..., 0, 1) occupies the m lowest digits
    last_row_code = 1
    total = stab = 0
    for codes in sl_code_chunks(spec, budget):
        total += codes.size
        stab += int(np.count_nonzero(codes % n**m == last_row_code))
    return total, stab


def closure(spec: GroupSpec, budget: int | None = None) -> np.ndarray:
    """Sorted codes of the group generated by `generators(spec)`."""
    check_budget(spec.n ** (spec.m**2), budget)
    if spec.m < 2:
        return np.array([matrix_code(identity(1, spec.modulus))], dtype=np.int64)
    return K.closure_codes(generator_array(spec), spec.n, spec.m)


def complete_row_prime(a: VectorModN) -> MatrixModN:
    """An element of SL(m, Z_p) whose last row is the nonzero vector a.

    With j the first index where a_j != 0, the upper rows are the unit rows
    e_i (i != j) in ascending order; the last of them is scaled by
    (-1)^(j+m) a_j^-1 so the determinant comes out as 1.
    """
    p = a.n
    if not a.modulus.is_prime:
        raise DomainError(f"row completion is only constructed for prime moduli, got {p}")
    if a.is_zero():
        raise DomainError("zero vector is a fixed point")
    m = a.m
    if m == 1:
        if a.components != (1,):
            raise DomainError(f"SL(1, Z_{p}) is trivial; ({a[0]}) is not a last row of it")
        return identity(1, a.modulus)
    j = next(i for i, x in enumerate(a.components) if x)
    rows = [[int(c == i) for c in range(m)] for i in range(m) if i != j]
    # 1-based j+1 and m give the sign of the cofactor of a_j
    c = (-1) ** (j + 1 + m) * pow(a[j], -1, p)
    rows[-1] = [c * x for x in rows[-1]]
    rows.append(list(a.components))
    return matrix(rows, a.modulus)
