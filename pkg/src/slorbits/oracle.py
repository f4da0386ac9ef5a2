"""Brute-force cross-checks of the closed-form answers.

Orbits are found by breadth-first search over Z_n^m under the transvection
generators; group and stabilizer orders by filtering all n^(m^2) matrices on
their determinant. The searches never consult gcd labels or the Jordan
totient; those only appear as the expected side of each check.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import _kernels as K
from .arith import divisors, jordan_totient
from .errors import ConsistencyError, DomainError, StructureError
from .linalg_mod import MatrixModN, VectorModN, act, det_mod, identity, mat_mul, require_sl
from .orbits import stratum_codes
from .sl_group import (
    GroupSpec,
    check_budget,
    closure,
    count_group,
    generator_array,
    generators,
    group_order,
    sl_code_chunks,
    stabilizer_order,
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    observed: Any
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    spec: GroupSpec
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, observed, detail="") -> Check:
        c = Check(name, expected, observed, expected == observed, detail)
        self.checks.append(c)
        return c

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        out = VerificationReport(self.spec, self.checks + other.checks, self.elapsed + other.elapsed)
        out.checks.sort(key=lambda c: c.name)
        return out

    def sorted(self) -> "VerificationReport":
        return VerificationReport(self.spec, sorted(self.checks, key=lambda c: c.name), self.elapsed)

    def to_text(self) -> str:
        rows = [("check", "expected", "observed", "result")]
        for c in self.checks:
            rows.append((c.name, str(c.expected), str(c.observed), "PASS" if c.passed else "FAIL"))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = [f"verification of {self.spec}"]
        for r in rows:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        for c in self.checks:
            if not c.passed and c.detail:
                lines.append(f"  {c.name}: {c.detail}")
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"{n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.spec.m,
                "n": self.spec.n,
                "passed": self.passed,
                "checks": [c.as_dict() for c in self.checks],
            },
            sort_keys=True,
        )


def _table(spec: GroupSpec, gens: Sequence[MatrixModN] | None, budget) -> np.ndarray:
    m, n = spec.m, spec.n
    check_budget(n**m, budget, "vectors")
    if gens is None:
        arr = generator_array(spec)
    else:
        for g in gens:
            if g.n != n or g.m != m:
                raise StructureError(f"generator over Z_{g.n}^{g.m} used for {spec}")
            require_sl(g)
        arr = np.array([g.entries for g in gens], dtype=np.int64).reshape(len(gens), m, m)
    return K.action_table(arr, n, m)


def _code(a: VectorModN) -> int:
    c = 0
    for x in a.components:
        c = c * a.n + x
    return c


def _vec(code: int, spec: GroupSpec) -> VectorModN:
    out = []
    for _ in range(spec.m):
        code, r = divmod(int(code), spec.n)
        out.append(r)
    return VectorModN(spec.modulus, tuple(reversed(out)))


def bfs_orbit(a: VectorModN, gens: Sequence[MatrixModN] | None = None,
              budget: int | None = None) -> set[VectorModN]:
    """Smallest set containing `a` and closed under every generator.

    Default generators are the transvections of `sl_group.generators`.
    """
    spec = GroupSpec(a.m, a.modulus)
    order, _, _ = K.reach(_table(spec, gens, budget), _code(a), spec.n**spec.m)
    return {_vec(c, spec) for c in order}


def bfs_partition(spec: GroupSpec, gens=None, budget=None) -> list[np.ndarray]:
    """Orbit blocks as ascending code arrays, ordered by smallest member."""
    N = spec.n**spec.m
    labels = K.orbit_labels(_table(spec, gens, budget), N)
    roots, inverse = np.unique(labels, return_inverse=True)
    idx = np.argsort(inverse, kind="stable")
    bounds = np.cumsum(np.bincount(inverse, minlength=len(roots)))[:-1]
    return np.split(idx.astype(np.int64), bounds)


def verify_partition(spec: GroupSpec, budget: int | None = None) -> VerificationReport:
    """BFS orbits vs gcd strata vs Jordan totient sizes."""
    if spec.m < 2:
        raise DomainError("partition check needs m >= 2 (SL(1) is trivial)")
    t0 = time.perf_counter()
    rep = VerificationReport(spec)
    N = spec.n**spec.m
    labels = K.orbit_labels(_table(spec, None, budget), N)
    divs = divisors(spec.modulus)
    rep.add("partition.block_count", len(divs), int(np.unique(labels).size))

    for dv in divs:
        d = dv.d
        stratum = stratum_codes(spec, d, budget)
        # the block containing the first stratum member must be the stratum
        block = np.flatnonzero(labels == labels[stratum[0]])
        same = np.array_equal(block, stratum)
        detail = ""
        if not same:
            bad = np.setxor1d(block, stratum)
            detail = f"offending vector {_vec(bad[0], spec)}"
        rep.add(f"partition.d={d}.equals_gcd_stratum", True, bool(same), detail)
        rep.add(f"partition.d={d}.size", jordan_totient(spec.m, dv.cofactor), int(block.size))
    rep.elapsed = time.perf_counter() - t0
    return rep.sorted()


def verify_group_counts(spec: GroupSpec, budget: int | None = None) -> VerificationReport:
    """Exhaustive |SL| and |stabilizer| against the order formulas."""
    if spec.m < 2:
        raise DomainError("stabilizer check needs m >= 2")
    t0 = time.perf_counter()
    rep = VerificationReport(spec)
    total, stab = count_group(spec, budget)
    rep.add("group.order", group_order(spec), total)
    rep.add("group.stabilizer_order", stabilizer_order(spec), stab)
    q, r = divmod(total, stab) if stab else (0, -1)
    rep.add("group.lagrange_quotient", jordan_totient(spec.m, spec.modulus), q if r == 0 else f"{total}/{stab}")
    rep.elapsed = time.perf_counter() - t0
    return rep.sorted()


def verify_generators(spec: GroupSpec, budget: int | None = None) -> VerificationReport:
    """Closure of the transvections vs the det-filtered group, as sets."""
    t0 = time.perf_counter()
    rep = VerificationReport(spec)
    closed = closure(spec, budget)
    full = np.concatenate(list(sl_code_chunks(spec, budget)))
    same = np.array_equal(closed, full)
    detail = ""
    if not same:
        diff = np.setxor1d(closed, full)
        detail = f"first differing matrix code {int(diff[0])}"
    rep.add("generators.closure_size", int(full.size), int(closed.size))
    rep.add("generators.closure_equals_group", True, bool(same), detail)
    rep.elapsed = time.perf_counter() - t0
    return rep.sorted()


def verify_all(spec: GroupSpec, budget: int | None = None) -> VerificationReport:
    rep = verify_partition(spec, budget)
    rep = rep.merge(verify_group_counts(spec, budget))
    return rep.merge(verify_generators(spec, budget))


def find_transform(a: VectorModN, b: VectorModN, gens: Sequence[MatrixModN] | None = None,
                   budget: int | None = None) -> MatrixModN | None:
    """An SL matrix W with aW = b, or None when b is not reachable from a.

    W is the product of generators along the BFS parent path; it is checked
    (det and image) before being returned.
    """
    if a.n != b.n or a.m != b.m:
        raise StructureError("vectors live in different spaces")
    spec = GroupSpec(a.m, a.modulus)
    gl = generators(spec) if gens is None else list(gens)
    if a == b:
        return identity(spec.m, spec.modulus)
    if not gl:
        return None
    table = _table(spec, gl, budget)
    start, goal = _code(a), _code(b)
    _, parent, via = K.reach(table, start, spec.n**spec.m)
    if parent[goal] < 0:
        return None
    path = []
    v = goal
    while v != start:
        path.append(int(via[v]))
        v = int(parent[v])
    W = identity(spec.m, spec.modulus)
    for k in reversed(path):
        W = mat_mul(W, gl[k])
    if det_mod(W) != 1 or act(a, W) != b:
        raise ConsistencyError(f"witness {W} does not carry {a} to {b}")
    return W
