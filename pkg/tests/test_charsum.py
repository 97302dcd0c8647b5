"""Character sums, square detection, and the value-set scans."""

import functools
import itertools
import random

import pytest

from polyfam.gf import FieldError, make_field, make_field_of_order
from polyfam.charsum import (
    char_sum,
    distinct_root_count,
    mcconnel_scan,
    perfect_square_test,
    poly_deg,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_pth_root,
    poly_radical,
    poly_trim,
    power_map_prediction,
    quad_sum_exact,
    shortcut_scan,
    square_coefficient_scan,
    weil_check,
)


def monic_irreducibles(ctx, max_deg):
    """All monic irreducibles up to max_deg by sieve over monic polys."""
    out = []
    composites = set()
    for deg in range(1, max_deg + 1):
        for tail in itertools.product(range(ctx.q), repeat=deg):
            f = poly_trim(tail + (1,))
            if f in composites:
                continue
            out.append(f)
            # mark all multiples within reach as composite
            for deg2 in range(1, max_deg - deg + 1):
                for tail2 in itertools.product(range(ctx.q), repeat=deg2):
                    g = poly_trim(tail2 + (1,))
                    composites.add(poly_mul(ctx, f, g))
    return out


def test_poly_divmod_identity():
    ctx = make_field(5, 1)
    rng = random.Random(0)
    for _ in range(200):
        f = poly_trim(rng.randrange(5) for _ in range(rng.randint(1, 7)))
        g = poly_trim(rng.randrange(5) for _ in range(rng.randint(1, 5)))
        if not g:
            continue
        quo, rem = poly_divmod(ctx, f, g)
        s = poly_mul(ctx, quo, g)
        m = max(len(s), len(rem), 1)
        back = poly_trim(
            ctx.add(s[i] if i < len(s) else 0, rem[i] if i < len(rem) else 0)
            for i in range(m)
        )
        assert back == f
        assert poly_deg(rem) < poly_deg(g) or not rem
    with pytest.raises(ZeroDivisionError):
        poly_divmod(ctx, (1, 1), ())


def test_poly_gcd_divides_both():
    ctx = make_field(3, 1)
    rng = random.Random(1)
    for _ in range(100):
        f = poly_trim(rng.randrange(3) for _ in range(rng.randint(1, 6)))
        g = poly_trim(rng.randrange(3) for _ in range(rng.randint(1, 6)))
        if not f or not g:
            continue
        d = poly_gcd(ctx, f, g)
        assert poly_divmod(ctx, f, d)[1] == ()
        assert poly_divmod(ctx, g, d)[1] == ()
        assert d[-1] == 1  # monic


@pytest.mark.parametrize("q", [3, 5, 9])
def test_radical_from_known_factorization(q):
    ctx = make_field_of_order(q)
    irred = [f for f in monic_irreducibles(ctx, 2)]
    rng = random.Random(q)
    for _ in range(60):
        chosen = rng.sample(irred, rng.randint(1, 3))
        mults = [rng.randint(1, 6) for _ in chosen]
        f = (1,)
        rad = (1,)
        for base, m in zip(chosen, mults):
            rad = poly_mul(ctx, rad, base)
            for _ in range(m):
                f = poly_mul(ctx, f, base)
        lead = rng.randrange(1, q)
        f = tuple(ctx.mul(lead, c) for c in f)
        assert poly_radical(ctx, f) == rad
        assert distinct_root_count(ctx, f) == poly_deg(rad)


def test_radical_mixed_multiplicity_divisible_by_p():
    # (x-1)^3 (x-2) over F_3: the naive f/gcd(f,f') formula drops the
    # p-th-power factor entirely; the radical must keep both roots
    ctx = make_field(3, 1)
    pm = functools.partial(poly_mul, ctx)
    f = functools.reduce(pm, [(2, 1)] * 3 + [(1, 1)])
    assert poly_radical(ctx, f) == poly_mul(ctx, (2, 1), (1, 1))
    assert distinct_root_count(ctx, f) == 2
    g = functools.reduce(pm, [(2, 1)] * 6 + [(1, 1)] * 2)
    assert distinct_root_count(ctx, g) == 2


def test_distinct_root_count_frozen():
    c5 = make_field(5, 1)
    assert distinct_root_count(c5, (0, 0, 1)) == 1
    assert distinct_root_count(c5, (4, 0, 1)) == 2
    assert distinct_root_count(c5, (0, 4, 0, 0, 0, 1)) == 5
    with pytest.raises(ValueError):
        distinct_root_count(c5, ())


def test_poly_pth_root():
    ctx = make_field(3, 2)
    rng = random.Random(3)
    for _ in range(40):
        g = poly_trim(rng.randrange(9) for _ in range(rng.randint(1, 4)))
        if not g:
            continue
        f = functools.reduce(functools.partial(poly_mul, ctx), [g] * 3)
        assert poly_pth_root(ctx, f) == g
    with pytest.raises(ValueError):
        poly_pth_root(ctx, (0, 1))  # exponent not divisible by p


def brute_char_sum(ctx, f, a):
    return sum(
        ctx.quadratic_character(ctx.mul(a, poly_eval(ctx, f, x)))
        for x in range(ctx.q)
    )


@pytest.mark.parametrize("q", [3, 5, 9])
def test_char_sum_is_the_plain_sum(q):
    ctx = make_field_of_order(q)
    rng = random.Random(q)
    for _ in range(30):
        f = poly_trim(rng.randrange(q) for _ in range(rng.randint(2, 5)))
        if not f:
            continue
        for a in (1, 2):
            assert char_sum(ctx, f, a) == brute_char_sum(ctx, f, a)


def test_char_sum_frozen():
    c5 = make_field(5, 1)
    assert char_sum(c5, (0, 1), 1) == 0
    assert char_sum(c5, (0, 0, 1), 1) == 4
    assert char_sum(c5, (1, 0, 1), 1) == -1


def test_char_sum_rejects_even_q():
    with pytest.raises(FieldError):
        char_sum(make_field(2, 2), (0, 1), 1)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_quad_sum_exact_full_sweep(q):
    ctx = make_field_of_order(q)
    for a in range(1, q):
        for b in range(q):
            for c in range(q):
                assert quad_sum_exact(ctx, a, b, c) == char_sum(
                    ctx, poly_trim((c, b, a)), 1
                ), (q, a, b, c)


def test_quad_sum_exact_frozen():
    assert quad_sum_exact(make_field(5, 1), 1, 0, 0) == 4
    assert quad_sum_exact(make_field(3, 1), 2, 0, 0) == -2
    assert quad_sum_exact(make_field(7, 1), 1, 0, 1) == -1
    with pytest.raises(ValueError):
        quad_sum_exact(make_field(5, 1), 0, 1, 1)


def test_weil_check_frozen_equality_case():
    # x^3 + x over F_9 splits with three distinct roots and hits the
    # bound exactly: sum 6 against (3-1) * 3
    ctx = make_field(3, 2)
    res = weil_check(ctx, (0, 1, 0, 1))
    assert res.sum_value == 6
    assert res.distinct_roots == 3
    assert res.within_bound
    assert not res.is_square_shape
    assert res.bound == 6.0


@pytest.mark.parametrize("q", [9, 25])
def test_weil_check_random_non_squares(q):
    ctx = make_field_of_order(q)
    rng = random.Random(q * 11)
    checked = 0
    while checked < 120:
        deg = rng.randint(1, 5)
        f = tuple(rng.randrange(q) for _ in range(deg)) + (1,)
        if perfect_square_test(ctx, f) is not None:
            continue
        checked += 1
        res = weil_check(ctx, f)
        assert res.within_bound
        # the comparison is exact on integers
        s = res.sum_value
        assert s * s <= (res.distinct_roots - 1) ** 2 * q


def test_weil_check_square_shape_flagged():
    ctx = make_field(5, 1)
    sq = poly_mul(ctx, (1, 1), (1, 1))
    res = weil_check(ctx, sq)
    assert res.is_square_shape
    # the sum over a square of a linear is q - 1 and may exceed the
    # squarefree bound; the flag is what downstream callers filter on
    assert res.sum_value == 4


def test_weil_check_validation():
    with pytest.raises(FieldError):
        weil_check(make_field(2, 2), (0, 1))
    with pytest.raises(ValueError):
        weil_check(make_field(5, 1), (3,))
    with pytest.raises(ValueError):
        weil_check(make_field(5, 1), (0, 1), a=0)


@pytest.mark.parametrize("q", [3, 5, 9])
def test_perfect_square_test_exhaustive_small(q):
    ctx = make_field_of_order(q)
    squares = set()
    for deg in range(0, 3):
        for tail in itertools.product(range(q), repeat=deg + 1):
            g = poly_trim(tail)
            squares.add(poly_mul(ctx, g, g))
    for f in sorted(squares):
        got = perfect_square_test(ctx, f)
        assert got is not None
        assert poly_mul(ctx, got, got) == f
    # odd-degree and shifted non-squares come back None
    assert perfect_square_test(ctx, (0, 1)) is None
    assert perfect_square_test(ctx, (0, 1, 1)) is None


def test_perfect_square_root_is_canonical():
    # both g and -g square to f; the reported root has its leading
    # coefficient fixed by the canonical square root of the lead of f
    ctx = make_field(5, 1)
    g = (2, 3)
    f = poly_mul(ctx, g, g)
    got = perfect_square_test(ctx, f)
    assert got in (g, tuple(ctx.neg(c) for c in g))


def brute_square_census(ctx, pk):
    """Squares of the scan shape built from the generic square formula."""
    q = ctx.q
    found = set()
    for leg in itertools.product(range(q), repeat=(pk + 1) // 2 + 1):
        g = poly_trim(leg)
        f = poly_mul(ctx, g, g)
        coeffs = list(f) + [0] * (pk + 2 - len(f))
        if all(coeffs[i] == 0 for i in range(2, pk)) and len(f) <= pk + 2:
            found.add((coeffs[pk + 1], coeffs[pk], coeffs[1], coeffs[0]))
    return found


def test_square_coefficient_scan_q9():
    ctx = make_field(3, 2)
    rep = square_coefficient_scan(ctx, 1)
    assert rep.verdict == "pass"
    assert rep.counters == {"scanned": 6561, "squares": 41, "violations": 0}
    # census cross-check from the other direction: enumerate squares g^2
    # of the right shape instead of testing all tuples
    assert len(brute_square_census(ctx, 3)) == 41


def test_square_coefficient_scan_q5():
    rep = square_coefficient_scan(make_field(5, 1), 1)
    assert rep.verdict == "pass"
    assert rep.counters["scanned"] == 625


def test_square_coefficient_scan_validation():
    with pytest.raises(FieldError):
        square_coefficient_scan(make_field(2, 2), 1)
    with pytest.raises(ValueError):
        square_coefficient_scan(make_field(3, 2), 0)


def test_shortcut_scan_q25():
    rep = shortcut_scan(make_field(5, 2))
    assert rep.verdict == "pass"
    assert rep.counters == {
        "scanned": 375000,
        "largeValueSets": 1500,
        "violations": 0,
        "controlTriples": 14400,
    }
    assert rep.parameters["minLargeCount"] == 24


def test_shortcut_scan_validation():
    with pytest.raises(FieldError):
        shortcut_scan(make_field(3, 2))  # q = 9 is excluded
    with pytest.raises(FieldError):
        shortcut_scan(make_field(7, 1))  # not a square
    with pytest.raises(FieldError):
        shortcut_scan(make_field(2, 4))  # even


def brute_mcconnel(ctx, delta):
    """Backtracking-free oracle: test every bijection fixing 0 and 1."""
    q = ctx.q
    e = (q - 1) // delta
    pw = [ctx.pow(x, e) for x in range(q)]
    out = []
    for perm in itertools.permutations(range(2, q)):
        full = (0, 1) + perm
        ok = True
        for x in range(q):
            for y in range(x + 1, q):
                lhs = pw[ctx.sub(full[x], full[y])]
                if lhs != pw[ctx.sub(x, y)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(full)
    return sorted(out)


def test_mcconnel_scan_q5_matches_brute():
    ctx = make_field(5, 1)
    got = mcconnel_scan(ctx, 2)
    assert got == brute_mcconnel(ctx, 2)
    assert got == [(0, 1, 2, 3, 4)]
    assert got == power_map_prediction(ctx, 2)


def test_mcconnel_scan_q4_delta3():
    ctx = make_field(2, 2)
    got = mcconnel_scan(ctx, 3)
    assert got == brute_mcconnel(ctx, 3)
    assert got == [(0, 1, 2, 3)]
    assert got == power_map_prediction(ctx, 3)


def test_mcconnel_scan_q9():
    ctx = make_field(3, 2)
    got = mcconnel_scan(ctx, 2)
    pred = power_map_prediction(ctx, 2)
    assert got == pred
    assert len(got) == 2
    ident = tuple(range(9))
    cube = tuple(ctx.pow(x, 3) for x in range(9))
    assert got == sorted([ident, cube])


def test_mcconnel_scan_validation_and_budget():
    ctx = make_field(5, 1)
    with pytest.raises(ValueError):
        mcconnel_scan(ctx, 3)  # 3 does not divide q - 1
    with pytest.raises(ValueError):
        mcconnel_scan(ctx, 1)
    with pytest.raises(RuntimeError):
        mcconnel_scan(make_field(3, 2), 2, node_budget=5)


def test_power_map_prediction_q9_delta4():
    ctx = make_field(3, 2)
    # delta = 4 needs 4 | 3^j - 1: only j = 1 fails, j = 0 gives identity
    pred = power_map_prediction(ctx, 4)
    assert tuple(range(9)) in pred
