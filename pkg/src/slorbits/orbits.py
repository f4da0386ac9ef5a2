"""Closed-form orbit decomposition of Z_n^m under SL(m, Z_n).

For m >= 2 the orbit of a vector is determined by d = gcd(a, n): the orbits
are exactly the gcd strata, one per divisor d of n, with J_m(n/d) points each.
Nothing here searches; `oracle` is what checks these answers against search.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

import numpy as np

from . import _kernels as K
from .arith import Divisor, IntOrModulus, Modulus, as_modulus, divisors, gcd_with_modulus, jordan_totient
from .errors import DomainError, StructureError
from .linalg_mod import (
    MatrixModN,
    VectorModN,
    reduce_matrix,
    reduce_vector,
    require_sl,
    scale_map,
    vector,
)
from .sl_group import GroupSpec, check_budget

__all__ = [
    "OrbitDescriptor",
    "CensusReport",
    "orbit_label",
    "same_orbit",
    "census",
    "orbit_members",
    "stratum_codes",
    "crt_split",
    "crt_join",
    "crt_matrix_split",
    "orbit_product_check",
    "scale_map",
]


class M1Warning(UserWarning):
    """SL(1, Z_n) is trivial, so every point is its own orbit."""


@dataclass(frozen=True)
class OrbitDescriptor:
    divisor: Divisor
    representative: VectorModN
    size: int

    @property
    def d(self) -> int:
        return self.divisor.d

    def as_dict(self) -> dict:
        return {"d": self.d, "size": self.size, "rep": list(self.representative.components)}


@dataclass(frozen=True)
class CensusReport:
    spec: GroupSpec
    orbits: tuple[OrbitDescriptor, ...]
    total: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", sum(o.size for o in self.orbits))

    @property
    def expected_total(self) -> int:
        return self.spec.n ** self.spec.m

    def to_text(self) -> str:
        lines = [f"{o.d}\t{o.size}\t{o.representative}" for o in self.orbits]
        lines.append(f"total = {self.total} = {self.spec.n}^{self.spec.m}")
        return "\n".join(lines) + "\n"

    def to_jsonl(self) -> str:
        lines = [json.dumps(o.as_dict(), separators=(",", ":")) for o in self.orbits]
        lines.append(json.dumps({"m": self.spec.m, "n": self.spec.n, "total": self.total}, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def orbit_label(a: VectorModN) -> Divisor:
    return gcd_with_modulus(a.components, a.n)


def _same_space(a: VectorModN, b: VectorModN):
    if a.n != b.n:
        raise StructureError(f"modulus mismatch: {a.n} vs {b.n}")
    if a.m != b.m:
        raise StructureError(f"dimension mismatch: {a.m} vs {b.m}")


def same_orbit(a: VectorModN, b: VectorModN) -> bool:
    _same_space(a, b)
    if a.m == 1:
        return a == b
    return orbit_label(a) == orbit_label(b)


def _representative(m: int, d: int, mod: Modulus) -> VectorModN:
    return vector([0] * (m - 1) + [d % mod.n], mod)


def census(spec: GroupSpec) -> CensusReport:
    """One descriptor per divisor d of n, ascending, size J_m(n/d).

    For m = 1 every point is a singleton orbit; those descriptors are
    listed by representative and carry gcd(a, n) as their label, so labels
    repeat. An M1Warning is emitted in that case.
    """
    m, mod = spec.m, spec.modulus
    if m == 1:
        warnings.warn(
            f"m = 1: SL(1, Z_{mod.n}) is trivial, every point is its own orbit",
            M1Warning,
            stacklevel=2,
        )
        orbits = tuple(
            OrbitDescriptor(gcd_with_modulus([a], mod), vector([a], mod), 1) for a in range(mod.n)
        )
        return CensusReport(spec, orbits)
    orbits = tuple(
        OrbitDescriptor(dv, _representative(m, dv.d, mod), jordan_totient(m, dv.cofactor))
        for dv in divisors(mod)
    )
    return CensusReport(spec, orbits)


def stratum_codes(spec: GroupSpec, d: int, budget: int | None = None) -> np.ndarray:
    """Ascending codes of the vectors with gcd(a, n) == d."""
    m, n = spec.m, spec.n
    check_budget(n**m, budget, "vectors")
    V = K.all_vectors(n, m)
    g = np.gcd.reduce(np.concatenate([V, np.full((V.shape[0], 1), n, dtype=np.int64)], axis=1), axis=1)
    return np.flatnonzero(g == d).astype(np.int64)


def orbit_members(spec: GroupSpec, d: int | Divisor, budget: int | None = None) -> Iterator[VectorModN]:
    """Every vector whose gcd with n is d, in lexicographic order."""
    d = int(d)
    m, n = spec.m, spec.n
    if d < 1 or n % d:
        raise DomainError(f"{d} does not divide {n}")
    check_budget(n**m, budget, "vectors")
    for a in product(range(n), repeat=m):
        if math.gcd(n, *a) == d:
            yield VectorModN(spec.modulus, a)


# -- Chinese remainder split/join ----------------------------------------------

def _coprime_pair(p: IntOrModulus, q: IntOrModulus) -> tuple[Modulus, Modulus]:
    P, Q = as_modulus(p), as_modulus(q)
    if math.gcd(P.n, Q.n) != 1:
        raise DomainError(f"{P.n} and {Q.n} are not coprime")
    return P, Q


def crt_split(a: VectorModN, p: IntOrModulus, q: IntOrModulus) -> tuple[VectorModN, VectorModN]:
    P, Q = _coprime_pair(p, q)
    if P.n * Q.n != a.n:
        raise DomainError(f"{P.n} * {Q.n} != {a.n}")
    return reduce_vector(a, P), reduce_vector(a, Q)


def _crt(r1: int, p: int, r2: int, q: int) -> int:
    # x = r1 + p * t with p t = r2 - r1 (mod q)
    t = (r2 - r1) * pow(p, -1, q) % q
    return (r1 + p * t) % (p * q)


def crt_join(a1: VectorModN, a2: VectorModN) -> VectorModN:
    P, Q = _coprime_pair(a1.modulus, a2.modulus)
    if a1.m != a2.m:
        raise StructureError(f"dimension mismatch: {a1.m} vs {a2.m}")
    return vector([_crt(x, P.n, y, Q.n) for x, y in zip(a1, a2)], P.n * Q.n)


def crt_matrix_split(A: MatrixModN, p: IntOrModulus, q: IntOrModulus) -> tuple[MatrixModN, MatrixModN]:
    P, Q = _coprime_pair(p, q)
    if P.n * Q.n != A.n:
        raise DomainError(f"{P.n} * {Q.n} != {A.n}")
    require_sl(A)
    A1, A2 = reduce_matrix(A, P), reduce_matrix(A, Q)
    # det reduces along with the entries; a failure here means a bug
    require_sl(A1)
    require_sl(A2)
    return A1, A2


def orbit_product_check(spec: GroupSpec, p: IntOrModulus, q: IntOrModulus, d1: int, d2: int,
                        budget: int | None = None) -> bool:
    """Compare crt_join(Or_p(d1) x Or_q(d2)) with Or_pq(d1 d2) as sets."""
    P, Q = _coprime_pair(p, q)
    if P.n * Q.n != spec.n:
        raise DomainError(f"{P.n} * {Q.n} != {spec.n}")
    if P.n % int(d1) or Q.n % int(d2):
        raise DomainError(f"need d1 | {P.n} and d2 | {Q.n}")
    m = spec.m
    left = {
        crt_join(x, y)
        for x in orbit_members(GroupSpec(m, P), d1, budget)
        for y in orbit_members(GroupSpec(m, Q), d2, budget)
    }
    right = set(orbit_members(spec, int(d1) * int(d2), budget))
    return left == right
