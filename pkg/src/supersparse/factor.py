"""Tractable factorization fragments for supersparse integer polynomials.

Complete factorization is hopeless here (x^D - 1 has a dense factor with
D terms), but three fragments are exact and cheap: splitting at large
exponent gaps, rational linear factors confirmed through the gap
structure, and perfect-power detection with a deterministic certificate.
Factors of modulus-one roots (x - 1, x + 1) fall outside the gap
argument and are screened by exact signed coefficient sums instead.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import linear_divides_exact, power
from .errors import BudgetError, UnsupportedRingError, ZeroPolynomialError
from .poly import (
    SparsePoly,
    Term,
    _coeff_sums_at_pm_one,
    degree,
    evaluate_mod,
    height,
)
from .ring import INTEGERS, is_prime, prime_one_mod


@dataclass(frozen=True)
class GapSplit:
    """f as a sum of shifted low-spread blocks separated by large gaps."""

    blocks: tuple[tuple[SparsePoly, int], ...]
    gap_threshold: int


@dataclass(frozen=True)
class PowerReport:
    """Largest power k with f = g^k for some g; k = 1 means none found.

    k > 1 is Monte Carlo with the stated confidence; certify_power gives
    the deterministic check once a candidate g is in hand.
    """

    k: int
    confidence: float
    witnesses: tuple[tuple[int, int], ...] = ()


def default_gap_threshold(f: SparsePoly) -> int:
    return max(64, height(f).bit_length())


def gap_split(f: SparsePoly, gamma: int) -> GapSplit:
    """Split at every exponent gap of at least gamma.

    Within a block consecutive gaps stay below gamma; blocks are stored
    with their shift stripped, so reassembly is sum(block * x^shift).
    """
    if f.nvars != 1:
        raise UnsupportedRingError("gap_split is univariate")
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    if not f.terms:
        return GapSplit((), gamma)
    blocks = []
    start = 0
    terms = f.terms
    for i in range(1, len(terms) + 1):
        if i == len(terms) or terms[i].exps[0] - terms[i - 1].exps[0] >= gamma:
            shift = terms[start].exps[0]
            chunk = tuple(
                Term(t.coeff, (t.exps[0] - shift,)) for t in terms[start:i]
            )
            blocks.append((SparsePoly(f.ring, 1, chunk), shift))
            start = i
    return GapSplit(tuple(blocks), gamma)


def reassemble(split: GapSplit, ring, nvars: int = 1) -> SparsePoly:
    terms = []
    for block, shift in split.blocks:
        for t in block.terms:
            terms.append(Term(t.coeff, (t.exps[0] + shift,)))
    return SparsePoly(ring, nvars, tuple(terms))


def eval_at_pm_one(f: SparsePoly) -> tuple[int, int]:
    """(f(1), f(-1)) as exact signed coefficient sums, O(t) additions."""
    if f.ring.kind != INTEGERS:
        raise UnsupportedRingError("eval_at_pm_one is defined over Z")
    return _coeff_sums_at_pm_one(f)


def content_and_primitive(f: SparsePoly) -> tuple[int, SparsePoly]:
    """Integer content (carrying the leading sign) and primitive part."""
    if f.ring.kind != INTEGERS:
        raise UnsupportedRingError("content is defined over Z")
    from .arith import _primitive

    return _primitive(f)


def _divisors(n: int, budget: int) -> list[int]:
    """All positive divisors of |n|, via factoring; budget caps the count."""
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no divisor list")
    factors: dict[int, int] = {}

    def factor_into(m: int):
        for q in (2, 3, 5):
            while m % q == 0:
                factors[q] = factors.get(q, 0) + 1
                m //= q
        q = 7
        while q * q <= m and q < 1 << 20:
            while m % q == 0:
                factors[q] = factors.get(q, 0) + 1
                m //= q
            q += 2
        if m == 1:
            return
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            return
        d = _pollard_rho(m)
        factor_into(d)
        factor_into(m // d)

    factor_into(n)
    divs = [1]
    for q, e in factors.items():
        divs = [d * q ** j for d in divs for j in range(e + 1)]
        if len(divs) > budget:
            raise BudgetError(
                f"divisor count of {n} exceeds the candidate budget {budget}"
            )
    return sorted(divs)


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def linear_rational_factors(
    f: SparsePoly,
    rng: random.Random,
    *,
    candidate_budget: int = 10_000,
    screen_primes: int = 3,
) -> list[tuple[int, int]]:
    """All (a, b) with gcd(a, b) = 1, b > 0 and (b*x - a) dividing f.

    Candidates come from divisor pairs of the trailing and leading
    coefficients, are screened by modular evaluation at random primes,
    and every survivor is confirmed exactly, so the output contains no
    Monte Carlo acceptances.  Multiplicities are not reported.
    """
    if f.ring.kind != INTEGERS:
        raise UnsupportedRingError("linear factor search is defined over Z")
    if f.nvars != 1:
        raise UnsupportedRingError("linear factor search is univariate")
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has every root")
    _, fp = content_and_primitive(f)
    found: list[tuple[int, int]] = []
    v = fp.terms[0].exps[0]
    if v >= 1:
        found.append((0, 1))
        fp = SparsePoly(
            fp.ring, 1, tuple(Term(t.coeff, (t.exps[0] - v,)) for t in fp.terms)
        )
    if degree(fp) == 0:
        return found
    trail = fp.terms[0].coeff
    lead = fp.terms[-1].coeff
    nums = _divisors(trail, candidate_budget)
    dens = _divisors(lead, candidate_budget)
    if len(nums) * len(dens) > candidate_budget:
        raise BudgetError("candidate pair count exceeds the budget")
    plus_one, minus_one = _coeff_sums_at_pm_one(fp)
    seen = set()
    for b in dens:
        for a_abs in nums:
            if math.gcd(a_abs, b) != 1:
                continue
            for a in (a_abs, -a_abs):
                if (a, b) in seen:
                    continue
                seen.add((a, b))
                if abs(a) == b:
                    if (plus_one if a > 0 else minus_one) == 0:
                        found.append((a, b))
                    continue
                if not _screen_candidate(fp, a, b, rng, screen_primes):
                    continue
                if linear_divides_exact(fp, a, b):
                    found.append((a, b))
    found.sort(key=lambda ab: Fraction(ab[0], ab[1]))
    return found


def _screen_candidate(f: SparsePoly, a: int, b: int, rng: random.Random, k: int) -> bool:
    from .ring import random_prime

    for _ in range(k):
        p = random_prime(rng, 40)
        if b % p == 0:
            continue
        x = a * pow(b, -1, p) % p
        if evaluate_mod(f, (x,), p) != 0:
            return False
    return True


def detect_perfect_power(
    f: SparsePoly,
    rng: random.Random,
    confidence_target: float = 0.999999,
    *,
    prime_exponent_bound: int | None = None,
) -> PowerReport:
    """Largest k with f = g^k for some g, by power-residue sampling.

    For each candidate prime power q^m dividing deg f, f(a) mod p must be
    a q^m-th power residue at every sampled (a, p) with p = 1 mod q^m; a
    true power always passes, so only overestimates of k are possible
    and their probability is bounded by the reported confidence.
    Content is removed first, so k describes the primitive part.
    """
    if f.ring.kind != INTEGERS:
        raise UnsupportedRingError("perfect-power detection is defined over Z")
    if f.nvars != 1:
        raise UnsupportedRingError("perfect-power detection is univariate")
    if f.is_zero() or degree(f) == 0:
        raise ValueError("f must be nonzero and nonconstant")
    _, fp = content_and_primitive(f)
    d = int(degree(fp))
    if len(fp.terms) == 1:
        # +-x^e is exactly the e-th power of x.
        return PowerReport(k=d, confidence=1.0)
    if prime_exponent_bound is None:
        loglog = math.log2(max(math.log2(max(d, 4)), 1.0))
        prime_exponent_bound = int(64 * (1 + loglog))
    qs = [q for q in _primes_up_to(prime_exponent_bound) if d % q == 0]
    est_tests = max(1, sum(_max_power(d, q) for q in qs))
    per_test = (1.0 - confidence_target) / est_tests
    k = 1
    witnesses: list[tuple[int, int]] = []
    err_bound = 0.0
    for q in qs:
        m = 0
        while d % q ** (m + 1) == 0:
            qm = q ** (m + 1)
            trials = max(2, math.ceil(-math.log(max(per_test, 1e-18)) / math.log(qm)))
            ok = True
            for _ in range(trials):
                p = prime_one_mod(rng, qm, min_bits=32)
                for _ in range(64):
                    a = rng.randrange(1, p)
                    v = evaluate_mod(fp, (a,), p)
                    if v != 0:
                        break
                else:
                    ok = False
                    break
                witnesses.append((p, a))
                if pow(v, (p - 1) // qm, p) != 1:
                    ok = False
                    break
            if not ok:
                break
            err_bound += qm ** -trials
            m += 1
        k *= q ** m
    confidence = max(0.0, 1.0 - err_bound) if k > 1 else 1.0
    return PowerReport(k=k, confidence=confidence, witnesses=tuple(witnesses))


def _max_power(d: int, q: int) -> int:
    m = 0
    while d % q ** (m + 1) == 0:
        m += 1
    return m


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    out = []
    for q in range(2, n + 1):
        if sieve[q]:
            out.append(q)
            for mult in range(q * q, n + 1, q):
                sieve[mult] = 0
    return out


def certify_power(f: SparsePoly, g: SparsePoly, k: int, *, term_budget: int = 1_000_000) -> bool:
    """Deterministic certificate: does g^k equal f exactly?"""
    if k < 1:
        raise ValueError("k must be at least 1")
    return power(g, k, term_budget=term_budget) == f
