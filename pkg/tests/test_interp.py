import random

import pytest

from supersparse import (
    BoundError,
    InterpConfig,
    InterpStats,
    ProbeCountingOracle,
    ZZ,
    Zp,
    berlekamp_massey,
    find_roots_subgroup,
    find_smooth_prime,
    from_pairs,
    interpolate_early_termination,
    interpolate_integer,
    interpolate_multivariate,
    interpolate_prony,
    solve_transposed_vandermonde,
    verify,
    zero,
)
from supersparse.bench import random_sparse_poly
from supersparse.dense import DensePoly


def gauss_solve_modp(matrix, rhs, p):
    """Dense Gaussian elimination over Z_p; returns the solution vector."""
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] % p != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], p - 2, p)
        m[col] = [v * inv % p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def seq_from_roots(roots, coeffs, length, p):
    return [sum(c * pow(r, j, p) for c, r in zip(coeffs, roots)) % p for j in range(length)]


def test_bm_constant_sequence():
    lam = berlekamp_massey([2, 2, 2, 2], 97)
    assert list(lam.coeffs) == [96, 1]  # z - 1


def test_bm_zero_sequence():
    lam = berlekamp_massey([0, 0, 0, 0], 97)
    assert list(lam.coeffs) == [1]


def test_bm_two_term_polynomial():
    rng = random.Random(0)
    ctx = find_smooth_prime(64, 100, rng)
    p = ctx.p
    # evaluations of 3*x^5 + 2 at powers of omega
    seq = [(3 * pow(ctx.omega, 5 * j, p) + 2) % p for j in range(8)]
    lam = berlekamp_massey(seq, p)
    w5 = pow(ctx.omega, 5, p)
    # (z - 1)(z - w^5)
    expected = [w5 % p, (-1 - w5) % p, 1]
    assert list(lam.coeffs) == expected


def test_bm_annihilates_sequence():
    rng = random.Random(1)
    p = 10007
    for _ in range(40):
        t = rng.randrange(1, 6)
        roots = rng.sample(range(1, p), t)
        coeffs = [rng.randrange(1, p) for _ in range(t)]
        seq = seq_from_roots(roots, coeffs, 2 * t + 4, p)
        lam = berlekamp_massey(seq, p)
        L = len(lam.coeffs) - 1
        assert L <= t
        for i in range(len(seq) - L):
            acc = sum(lam.coeffs[j] * seq[i + j] for j in range(L + 1)) % p
            assert acc == 0


def brute_force_min_recurrence(seq, p):
    """Smallest L (with monic connection) generating seq; exhaustive check."""
    n = len(seq)
    for L in range(0, n + 1):
        if L == 0:
            if all(s % p == 0 for s in seq):
                return 0
            continue
        # try to solve for coefficients lam with seq[i+L] = -sum lam_j seq[i+j]
        rows = [[seq[i + j] for j in range(L)] for i in range(n - L)]
        rhs = [(-seq[i + L]) % p for i in range(n - L)]
        sol = _solve_least_consistent(rows, rhs, p)
        if sol is not None:
            return L
    return n


def _solve_least_consistent(rows, rhs, p):
    # Gaussian elimination allowing overdetermined consistent systems
    if not rows:
        return []
    ncols = len(rows[0])
    m = [row[:] + [r] for row, r in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                factor = m[i][c]
                m[i] = [(a - factor * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][ncols] % p != 0:
            return None
    sol = [0] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol


def test_bm_minimality_against_brute_force():
    rng = random.Random(42)
    p = 101
    for _ in range(150):
        n = rng.randrange(1, 9)
        seq = [rng.randrange(p) for _ in range(n)]
        lam = berlekamp_massey(seq, p)
        L = len(lam.coeffs) - 1
        assert L == brute_force_min_recurrence(seq, p)


def test_bm_matches_hankel_gauss():
    rng = random.Random(2)
    p = 10007
    for _ in range(60):
        t = rng.randrange(1, 9)
        roots = rng.sample(range(1, p), t)
        coeffs = [rng.randrange(1, p) for _ in range(t)]
        seq = seq_from_roots(roots, coeffs, 2 * t, p)
        lam = berlekamp_massey(seq, p)
        assert len(lam.coeffs) - 1 == t
        # explicit Hankel system for the monic recurrence
        matrix = [[seq[i + j] for j in range(t)] for i in range(t)]
        rhs = [(-seq[i + t]) % p for i in range(t)]
        low = gauss_solve_modp(matrix, rhs, p)
        assert list(lam.coeffs[:-1]) == low


def test_roots_subgroup_examples():
    rng = random.Random(3)
    ctx = find_smooth_prime(1 << 10, 2, rng)
    p = ctx.p
    F = Zp(p)
    lam = DensePoly(F, ((p - 1) % p, 1))  # z - 1
    assert find_roots_subgroup(lam, ctx, rng) == [1]
    a = pow(ctx.omega, 5, p)
    b = pow(ctx.omega, 9, p)
    lam2 = DensePoly(F, (a * b % p, (-(a + b)) % p, 1))
    assert sorted(find_roots_subgroup(lam2, ctx, rng)) == sorted([a, b])


def test_roots_subgroup_random_support():
    rng = random.Random(4)
    ctx = find_smooth_prime(1 << 16, 2, rng)
    p = ctx.p
    F = Zp(p)
    for _ in range(10):
        exps = rng.sample(range(1 << 16), 10)
        roots = [pow(ctx.omega, e, p) for e in exps]
        coeffs = [1]
        for r in roots:
            nxt = [0] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = (nxt[i + 1] + c) % p
                nxt[i] = (nxt[i] - c * r) % p
            coeffs = nxt
        lam = DensePoly(F, tuple(coeffs))
        got = find_roots_subgroup(lam, ctx, rng)
        assert sorted(got) == sorted(roots)
        for r in got:
            acc = sum(c * pow(r, j, p) for j, c in enumerate(coeffs)) % p
            assert acc == 0


def test_vandermonde_singleton():
    assert solve_transposed_vandermonde([5], [7], 97) == [7]


def test_vandermonde_constructed_pair():
    p = 97
    w = 5
    c1, c2 = 11, 23
    values = [(c1 + c2) % p, (c1 + c2 * w) % p]
    assert solve_transposed_vandermonde([1, w], values, p) == [c1, c2]


def test_vandermonde_matches_gauss():
    rng = random.Random(5)
    p = 10007
    for _ in range(60):
        t = rng.randrange(1, 9)
        roots = rng.sample(range(1, p), t)
        coeffs = [rng.randrange(0, p) for _ in range(t)]
        values = seq_from_roots(roots, coeffs, t, p)
        got = solve_transposed_vandermonde(roots, values, p)
        matrix = [[pow(r, j, p) for r in roots] for j in range(t)]
        want = gauss_solve_modp(matrix, values, p)
        assert got == want == [c % p for c in coeffs]


def test_vandermonde_duplicate_roots_rejected():
    with pytest.raises(ValueError):
        solve_transposed_vandermonde([3, 3], [1, 2], 97)


def test_prony_constant_oracle():
    rng = random.Random(6)
    ctx = find_smooth_prime(4, 100, rng)
    F = Zp(ctx.p)
    ref = from_pairs(F, 1, [(7, 0)])
    bb = ProbeCountingOracle.from_poly(ref)
    out = interpolate_prony(bb, ctx, InterpConfig(T=1, D=2, seed=0))
    assert out == ref
    assert bb.probes == 2


def test_prony_zero_oracle_probe_count():
    rng = random.Random(7)
    ctx = find_smooth_prime(16, 100, rng)
    F = Zp(ctx.p)
    bb = ProbeCountingOracle.from_poly(zero(F, 1))
    out = interpolate_prony(bb, ctx, InterpConfig(T=5, D=10, seed=0))
    assert out.is_zero()
    assert bb.probes == 10


def test_prony_round_trip_field():
    rng = random.Random(8)
    ctx = find_smooth_prime(1 << 40, 2, rng)
    F = Zp(ctx.p)
    for seed in range(5):
        gen = random.Random(seed)
        ref = random_sparse_poly(gen, terms=25, degbits=40, ring=F)
        bb = ProbeCountingOracle.from_poly(ref)
        stats = InterpStats()
        out = interpolate_prony(bb, ctx, InterpConfig(T=25, D=1 << 40, seed=seed), stats)
        assert out == ref
        assert stats.probes == 50
        assert stats.recurrence_degree == len(ref.terms)


def test_prony_exponent_bound_violation():
    rng = random.Random(9)
    ctx = find_smooth_prime(1 << 10, 2, rng)
    F = Zp(ctx.p)
    ref = from_pairs(F, 1, [(3, 900)])
    bb = ProbeCountingOracle.from_poly(ref)
    with pytest.raises(BoundError):
        interpolate_prony(bb, ctx, InterpConfig(T=2, D=8, seed=0))


def test_early_termination_probe_counts():
    rng = random.Random(10)
    ctx = find_smooth_prime(1 << 20, 2, rng)
    F = Zp(ctx.p)
    # zero oracle stops after the stability window alone
    bb = ProbeCountingOracle.from_poly(zero(F, 1))
    out = interpolate_early_termination(bb, ctx, InterpConfig(T=50, D=1 << 20, seed=0))
    assert out.is_zero() and bb.probes == 4
    # constant oracle: t = 1
    ref = from_pairs(F, 1, [(9, 0)])
    bb = ProbeCountingOracle.from_poly(ref)
    out = interpolate_early_termination(bb, ctx, InterpConfig(T=50, D=1 << 20, seed=0))
    assert out == ref and bb.probes <= 6
    # t = 3
    gen = random.Random(11)
    ref = random_sparse_poly(gen, terms=3, degbits=20, ring=F)
    bb = ProbeCountingOracle.from_poly(ref)
    out = interpolate_early_termination(bb, ctx, InterpConfig(T=100, D=1 << 20, seed=1))
    assert out == ref and bb.probes <= 10


def test_integer_round_trip_with_crt():
    # small smooth prime forces coefficient recovery through extra primes
    ref = from_pairs(ZZ, 1, [(1, 1), (-(10 ** 9), 0)])
    bb = ProbeCountingOracle.from_poly(ref)
    cfg = InterpConfig(T=2, D=2, H=10 ** 9, seed=0, coeff_prime_bits=20)
    stats = InterpStats()
    out = interpolate_integer(bb, cfg, stats)
    assert out == ref
    assert len(stats.crt_primes) >= 3  # smooth prime plus >= 2 word-size primes


def test_integer_zero():
    bb = ProbeCountingOracle.from_poly(zero(ZZ, 1))
    out = interpolate_integer(bb, InterpConfig(T=3, D=16, H=5, seed=0))
    assert out.is_zero()
    assert bb.probes == 6


def test_integer_round_trip_large_heights():
    rng = random.Random(12)
    for seed in range(3):
        gen = random.Random(seed + 100)
        ref = random_sparse_poly(gen, terms=20, degbits=40, coeff_bits=100)
        bb = ProbeCountingOracle.from_poly(ref)
        cfg = InterpConfig(T=20, D=1 << 40, H=1 << 100, seed=seed)
        stats = InterpStats()
        out = interpolate_integer(bb, cfg, stats)
        assert out == ref
        assert len(stats.crt_primes) >= 2


def test_integer_boundary_height_and_degree():
    H = (1 << 40) - 1
    D = 1 << 10
    ref = from_pairs(ZZ, 1, [(H, D - 1), (-H, 0)])
    bb = ProbeCountingOracle.from_poly(ref)
    out = interpolate_integer(bb, InterpConfig(T=2, D=D, H=H, seed=5))
    assert out == ref


def test_integer_verification_probe():
    ref = from_pairs(ZZ, 1, [(5, 3), (1, 0)])
    bb = ProbeCountingOracle.from_poly(ref)
    cfg = InterpConfig(T=2, D=8, H=8, seed=1, verify_trials=2)
    out = interpolate_integer(bb, cfg)
    assert out == ref
    assert bb.probes == 4 + 2  # 2T support probes plus the verification probes


def test_multivariate_example():
    ref = from_pairs(ZZ, 2, [(1, (1, 0)), (1, (0, 2))])  # x + y^2
    bb = ProbeCountingOracle.from_poly(ref)
    cfg = InterpConfig(T=2, D=3, H=2, seed=0)
    out = interpolate_multivariate(bb, cfg, 2, 3)
    assert out == ref


def test_multivariate_univariate_degenerate():
    ref = from_pairs(ZZ, 1, [(4, 7), (-2, 0)])
    bb = ProbeCountingOracle.from_poly(ref)
    out = interpolate_multivariate(bb, InterpConfig(T=2, D=8, H=4, seed=0), 1, 8)
    assert out == ref


def test_multivariate_round_trip():
    for seed in range(3):
        gen = random.Random(200 + seed)
        ref = random_sparse_poly(gen, terms=12, degbits=16, nvars=4, coeff_bits=20)
        bb = ProbeCountingOracle.from_poly(ref)
        cfg = InterpConfig(T=12, D=1 << 16, H=1 << 20, seed=seed)
        out = interpolate_multivariate(bb, cfg, 4, 1 << 16)
        assert out == ref


def test_verify_accepts_and_rejects():
    rng = random.Random(13)
    p = 2 ** 31 - 1
    F = Zp(p)
    gen = random.Random(14)
    ref = random_sparse_poly(gen, terms=10, degbits=20, ring=F)
    bb = ProbeCountingOracle.from_poly(ref)
    assert verify(ref, bb, 5, rng)
    from supersparse import add

    wrong = add(ref, from_pairs(F, 1, [(1, 2)]))
    rejected = 0
    for seed in range(20):
        if not verify(wrong, bb, 3, random.Random(seed)):
            rejected += 1
    assert rejected == 20  # mismatch probability per trial is about D/p


def test_verify_integer_oracle():
    rng = random.Random(15)
    ref = from_pairs(ZZ, 1, [(3, 1 << 30), (-2, 5)])
    bb = ProbeCountingOracle.from_poly(ref)
    assert verify(ref, bb, 4, rng)
    wrong = from_pairs(ZZ, 1, [(3, 1 << 30), (-2, 5), (1, 0)])
    assert not verify(wrong, bb, 4, rng)


def test_verify_zero_against_zero():
    rng = random.Random(17)
    bb = ProbeCountingOracle.from_poly(zero(ZZ, 1))
    assert verify(zero(ZZ, 1), bb, 3, rng)


def test_roots_subgroup_rejects_outsider_root():
    from supersparse import NonSplitError

    rng = random.Random(18)
    ctx = find_smooth_prime(1 << 8, 2, rng)
    p = ctx.p
    # an element of odd order c > 1 lies outside the 2^k subgroup
    outsider = None
    for g in range(2, p):
        y = pow(g, 1 << ctx.k, p)
        if y != 1:
            outsider = y
            break
    assert outsider is not None
    lam = DensePoly(Zp(p), ((-outsider) % p, 1))
    with pytest.raises(NonSplitError):
        find_roots_subgroup(lam, ctx, rng)


def test_probe_counter_reference_reproducible():
    gen = random.Random(16)
    ref = random_sparse_poly(gen, terms=8, degbits=30, ring=Zp(97))
    bb1 = ProbeCountingOracle.from_poly(ref)
    bb2 = ProbeCountingOracle.from_poly(ref)
    pts = [(i,) for i in range(5)]
    assert [bb1.eval(q) for q in pts] == [bb2.eval(q) for q in pts]
    assert bb1.probes == bb2.probes == 5
