"""Direction sets and the exhaustive affine-or-spanning scan."""

import itertools

import pytest

from polyfam.gf import make_field, make_field_of_order
from polyfam.directions import (
    additive_span,
    carlitz_scan,
    direction_set,
    is_affine,
)


def brute_directions(ctx, values):
    out = set()
    for x in range(ctx.q):
        for y in range(x + 1, ctx.q):
            num = ctx.sub(values[x], values[y])
            out.add(ctx.div(num, ctx.sub(x, y)))
    return out


def brute_span_size(ctx, elems):
    """Grow the additive closure of the prime-field multiples."""
    span = {0}
    frontier = True
    scaled = [ctx.mul(s, e) for e in elems for s in range(ctx.p)]
    while frontier:
        frontier = False
        for a in list(span):
            for b in scaled:
                c = ctx.add(a, b)
                if c not in span:
                    span.add(c)
                    frontier = True
    return len(span)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_direction_set_matches_brute_force(q):
    ctx = make_field_of_order(q)
    import random

    rng = random.Random(q)
    tables = [[ctx.mul(x, x) for x in range(q)], [ctx.add(x, 1) for x in range(q)]]
    tables += [[rng.randrange(q) for _ in range(q)] for _ in range(20)]
    for values in tables:
        ds = direction_set(ctx, values)
        assert set(ds.members) == brute_directions(ctx, values)
        assert ctx.p ** ds.span_dim == brute_span_size(ctx, ds.members)


def test_direction_set_frozen_examples():
    c5 = make_field(5, 1)
    ds = direction_set(c5, [c5.mul(x, x) for x in range(5)])
    assert ds.members == frozenset(range(5))
    assert ds.span_dim == 1
    c4 = make_field(2, 2)
    ds4 = direction_set(c4, [c4.mul(x, x) for x in range(4)])
    assert ds4.members == frozenset({1, 2, 3})
    assert ds4.span_dim == 2


def test_direction_set_requires_full_table():
    ctx = make_field(3, 1)
    with pytest.raises(ValueError):
        direction_set(ctx, [0, 1])


@pytest.mark.parametrize("q", [4, 8, 9, 27])
def test_additive_span_dimension(q):
    ctx = make_field_of_order(q)
    assert additive_span(ctx, []) == 0
    assert additive_span(ctx, [0]) == 0
    assert additive_span(ctx, [1]) == 1
    assert additive_span(ctx, list(range(q))) == ctx.n
    # a single nonzero element spans one dimension
    for x in range(1, q):
        assert additive_span(ctx, [x]) == 1


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_is_affine(q):
    ctx = make_field_of_order(q)
    for a in range(q):
        for b in range(q):
            table = [ctx.add(ctx.mul(a, x), b) for x in range(q)]
            assert is_affine(ctx, table)
    if q > 2:
        square = [ctx.mul(x, x) for x in range(q)]
        assert not is_affine(ctx, square)


def naive_scan(ctx):
    """Every function table, no pruning: the oracle for carlitz_scan."""
    q = ctx.q
    affine = 0
    candidates = 0
    bad = []
    for values in itertools.product(range(q), repeat=q):
        ds = direction_set(ctx, list(values))
        if ds.span_dim < ctx.n:
            candidates += 1
            if is_affine(ctx, list(values)):
                affine += 1
            else:
                bad.append(values)
    return affine, candidates, bad


@pytest.mark.parametrize("q", [2, 3, 4])
def test_carlitz_scan_matches_naive(q):
    ctx = make_field_of_order(q)
    affine, candidates, bad = naive_scan(ctx)
    assert not bad
    rep = carlitz_scan(ctx, "exhaustive")
    assert rep.verdict == "pass"
    assert rep.counters["affine"] == affine
    assert rep.counters["candidates"] == candidates
    assert rep.counters["scanned"] == q**q
    # over a prime field only constants have a proper span; with n >= 2
    # every affine map does, so the census is q^2
    assert affine == (q * q if ctx.n >= 2 else q)


def test_carlitz_scan_frozen_q4():
    rep = carlitz_scan(make_field(2, 2), "exhaustive")
    assert rep.counters == {
        "scanned": 256,
        "affine": 16,
        "candidates": 16,
        "nodesVisited": 148,
    }


def test_carlitz_scan_q2_vacuous_flag():
    rep = carlitz_scan(make_field(2, 1), "exhaustive")
    assert rep.verdict == "pass"
    assert "hypothesisNote" in rep.parameters


def test_carlitz_scan_q8_prunes_hard():
    rep = carlitz_scan(make_field(2, 3), "exhaustive")
    assert rep.verdict == "pass"
    assert rep.counters["affine"] == 64
    assert rep.counters["scanned"] == 8**8
    # the whole point of the span pruning: visits stay tiny
    assert rep.counters["nodesVisited"] < 10_000


def test_carlitz_scan_cap():
    with pytest.raises(ValueError):
        carlitz_scan(make_field(3, 2), "exhaustive")
    carlitz_scan(make_field(3, 2), "exhaustive", exhaustive_q_cap=9)


def test_carlitz_sample_mode_deterministic():
    ctx = make_field(3, 2)
    a = carlitz_scan(ctx, "sample", samples=2000, seed=5)
    b = carlitz_scan(ctx, "sample", samples=2000, seed=5)
    assert a.canonical_json() == b.canonical_json()
    assert a.verdict == "pass"
    assert a.counters["scanned"] == 2000
    c = carlitz_scan(ctx, "sample", samples=2000, seed=6)
    assert c.counters != a.counters or c.seed != a.seed


def test_carlitz_scan_rejects_unknown_mode():
    with pytest.raises(ValueError):
        carlitz_scan(make_field(2, 2), "both")
