import json
import random
from itertools import product

import pytest

import brute
from slorbits.errors import BudgetExceeded, DomainError, NotInSLError
from slorbits.linalg_mod import act, det_mod, identity, matrix, vector
from slorbits.oracle import (
    bfs_orbit,
    bfs_partition,
    find_transform,
    verify_all,
    verify_generators,
    verify_group_counts,
    verify_partition,
)
from slorbits.sl_group import GroupSpec


def comps(vs):
    return {v.components for v in vs}


def test_bfs_orbit_examples(backend):
    assert comps(bfs_orbit(vector([0, 0], 5))) == {(0, 0)}
    assert comps(bfs_orbit(vector([0, 1], 5))) == {a for a in product(range(5), repeat=2) if any(a)}
    assert comps(bfs_orbit(vector([0, 2], 4))) == {(0, 2), (2, 0), (2, 2)}


def test_bfs_orbit_custom_generators(backend):
    shear = matrix([[1, 1], [0, 1]], 5)
    assert comps(bfs_orbit(vector([1, 0], 5), [shear])) == {(1, k) for k in range(5)}
    with pytest.raises(NotInSLError):
        bfs_orbit(vector([1, 0], 4), [matrix([[2, 0], [0, 2]], 4)])


@pytest.mark.parametrize("m, n", [(2, 4), (2, 6), (2, 8), (3, 2), (2, 9)])
def test_bfs_partition_equals_group_orbits(m, n, backend):
    # generator BFS blocks vs images under every group element
    want = {frozenset(b) for b in brute.orbit_partition(m, n)}
    spec = GroupSpec.of(m, n)
    got = set()
    for block in bfs_partition(spec):
        got.add(frozenset(tuple(int(x) for x in divmod_digits(c, n, m)) for c in block))
    assert got == want


def divmod_digits(code, n, m):
    out = []
    for _ in range(m):
        code, r = divmod(int(code), n)
        out.append(r)
    return reversed(out)


@pytest.mark.parametrize("m, n, sizes", [
    (2, 7, [1, 48]),
    (2, 8, [1, 3, 12, 48]),
    (2, 6, [1, 3, 8, 24]),
])
def test_verify_partition_examples(m, n, sizes, backend):
    rep = verify_partition(GroupSpec.of(m, n))
    assert rep.passed
    got = sorted(c.observed for c in rep.checks if c.name.endswith(".size"))
    assert got == sizes


@pytest.mark.parametrize("m, n, counts", [
    (2, 2, (6, 2, 3)),
    (2, 3, (24, 3, 8)),
    (3, 2, (168, 24, 7)),
])
def test_verify_group_counts_examples(m, n, counts, backend):
    rep = verify_group_counts(GroupSpec.of(m, n))
    obs = {c.name: c.observed for c in rep.checks}
    assert rep.passed
    assert (obs["group.order"], obs["group.stabilizer_order"], obs["group.lagrange_quotient"]) == counts


def test_report_rendering_and_order():
    rep = verify_all(GroupSpec.of(2, 2))
    names = [c.name for c in rep.checks]
    assert names == sorted(names)
    assert "group.order" in rep.to_text() and "6" in rep.to_text()
    data = json.loads(rep.to_json())
    assert data["passed"] is True and {c["name"] for c in data["checks"]} == set(names)


def test_failing_check_carries_detail():
    from slorbits.oracle import VerificationReport

    rep = VerificationReport(GroupSpec.of(2, 4))
    rep.add("x", 1, 2, "offending vector 0,2")
    assert not rep.passed
    assert "offending vector 0,2" in rep.to_text()


def test_verify_needs_m2():
    with pytest.raises(DomainError):
        verify_partition(GroupSpec.of(1, 5))


def test_verify_budget():
    with pytest.raises(BudgetExceeded):
        verify_group_counts(GroupSpec.of(3, 5), budget=10**6)
    with pytest.raises(BudgetExceeded):
        verify_partition(GroupSpec.of(2, 100), budget=1000)


def test_verify_generators(backend):
    assert verify_generators(GroupSpec.of(2, 6)).passed
    assert verify_generators(GroupSpec.of(3, 3)).passed


def test_find_transform_examples(backend):
    a = vector([1, 0], 4)
    assert find_transform(a, a) == identity(2, 4)
    b = vector([0, 1], 4)
    W = find_transform(a, b)
    assert det_mod(W) == 1 and act(a, W) == b
    assert find_transform(vector([2, 0], 4), vector([1, 0], 4)) is None


def test_find_transform_soundness_and_completeness(backend):
    rng = random.Random(13)
    n = 12
    vs = [vector(a, n) for a in product(range(n), repeat=2)]
    for _ in range(100):
        a, b = rng.choice(vs), rng.choice(vs)
        W = find_transform(a, b)
        same = brute.gcd_vec(a.components, n) == brute.gcd_vec(b.components, n)
        assert (W is not None) == same
        if W is not None:
            assert det_mod(W) == 1 and act(a, W) == b


def test_find_transform_deterministic():
    a, b = vector([1, 2, 3], 6), vector([5, 0, 1], 6)
    assert find_transform(a, b) == find_transform(a, b)
    assert bfs_orbit(a) == bfs_orbit(a)


def test_witnesses_identical_across_backends():
    from slorbits import _kernels as K

    pairs = [(vector([1, 0], 8), vector([3, 5], 8)), (vector([2, 6], 8), vector([6, 2], 8)), (vector([1, 2, 3], 6), vector([5, 0, 1], 6))]
    old = K.BACKEND
    try:
        results = {}
        for name in ("numpy", "numba"):
            K.set_backend(name)
            results[name] = [find_transform(a, b) for a, b in pairs]
    finally:
        K.set_backend(old)
    assert results["numpy"] == results["numba"]
