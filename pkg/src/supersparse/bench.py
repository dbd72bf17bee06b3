"""Benchmark harness emitting one CSV row per trial.

Rows report operation counters next to wall time: the scaling claims of
interest are about counted ring operations, and wall time alone is
machine noise.  Everything except wall_nanoseconds is reproducible from
the seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import arith, interp
from .poly import SparsePoly, canonicalize, height
from .ring import ZZ, RingSpec

CSV_HEADER = (
    "operation,t_f,t_g,t_out,log2_degree_bound,ring_ops,comparisons,"
    "peak_heap,probes,wall_nanoseconds,seed"
)


@dataclass(frozen=True)
class BenchRecord:
    operation: str
    t_f: int
    t_g: int
    t_out: int
    log2_degree_bound: int
    ring_ops: int
    comparisons: int
    peak_heap: int
    probes: int
    wall_nanoseconds: int
    seed: int

    def csv_row(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.operation,
                self.t_f,
                self.t_g,
                self.t_out,
                self.log2_degree_bound,
                self.ring_ops,
                self.comparisons,
                self.peak_heap,
                self.probes,
                self.wall_nanoseconds,
                self.seed,
            )
        )


def random_sparse_poly(
    rng: random.Random,
    *,
    terms: int,
    degbits: int,
    nvars: int = 1,
    ring: RingSpec = ZZ,
    coeff_bits: int = 20,
) -> SparsePoly:
    """Uniform random support below 2^degbits per variable, nonzero coeffs."""
    bound = 1 << degbits
    support: set[tuple[int, ...]] = set()
    while len(support) < terms:
        support.add(tuple(rng.randrange(bound) for _ in range(nvars)))
    pairs = []
    for exps in support:
        if ring.is_field:
            c = rng.randrange(1, ring.modulus)
        else:
            c = rng.randrange(1, 1 << coeff_bits)
            if rng.random() < 0.5:
                c = -c
        pairs.append((c, exps))
    return canonicalize(pairs, nvars, ring)


def _bench_mul(seed: int, terms: int, degbits: int, algo: str) -> BenchRecord:
    rng = random.Random(seed)
    f = random_sparse_poly(rng, terms=terms, degbits=degbits)
    g = random_sparse_poly(rng, terms=terms, degbits=degbits)
    stats = arith.ArithStats()
    start = time.perf_counter_ns()
    if algo == "heap":
        out, stats = arith.mul_heap(f, g, stats)
    else:
        out = arith.mul_naive(f, g, stats)
    wall = time.perf_counter_ns() - start
    return BenchRecord(
        operation=f"mul-{algo}",
        t_f=len(f.terms),
        t_g=len(g.terms),
        t_out=len(out.terms),
        log2_degree_bound=degbits,
        ring_ops=stats.ring_ops,
        comparisons=stats.comparisons,
        peak_heap=stats.peak_heap,
        probes=0,
        wall_nanoseconds=wall,
        seed=seed,
    )


def _bench_divides(seed: int, terms: int, degbits: int) -> BenchRecord:
    rng = random.Random(seed)
    from .ring import Zp, random_prime

    ring = Zp(random_prime(rng, 31))
    g = random_sparse_poly(rng, terms=16, degbits=5, ring=ring)
    s = random_sparse_poly(rng, terms=max(1, terms // max(1, len(g.terms))), degbits=degbits, ring=ring)
    f, _ = arith.mul_heap(g, s)
    stats = arith.ArithStats()
    start = time.perf_counter_ns()
    arith.divides(f, g, stats=stats)
    wall = time.perf_counter_ns() - start
    return BenchRecord(
        operation="divides",
        t_f=len(f.terms),
        t_g=len(g.terms),
        t_out=0,
        log2_degree_bound=degbits,
        ring_ops=stats.ring_ops,
        comparisons=stats.comparisons,
        peak_heap=stats.peak_heap,
        probes=0,
        wall_nanoseconds=wall,
        seed=seed,
    )


def _bench_interp(seed: int, terms: int, degbits: int) -> BenchRecord:
    rng = random.Random(seed)
    f = random_sparse_poly(rng, terms=terms, degbits=degbits)
    bb = interp.ProbeCountingOracle.from_poly(f)
    cfg = interp.InterpConfig(
        T=terms, D=1 << degbits, H=max(1, height(f)), seed=seed
    )
    stats = interp.InterpStats()
    start = time.perf_counter_ns()
    out = interp.interpolate_integer(bb, cfg, stats)
    wall = time.perf_counter_ns() - start
    assert out == f
    return BenchRecord(
        operation="interp",
        t_f=len(f.terms),
        t_g=0,
        t_out=len(out.terms),
        log2_degree_bound=degbits,
        ring_ops=0,
        comparisons=0,
        peak_heap=0,
        probes=stats.probes,
        wall_nanoseconds=wall,
        seed=seed,
    )


def run_bench(op: str, terms: int, degbits: int, trials: int, seed: int) -> list[BenchRecord]:
    """Run `trials` independent trials; trial i uses seed + i."""
    records = []
    for i in range(trials):
        s = seed + i
        if op == "mul":
            records.append(_bench_mul(s, terms, degbits, "heap"))
        elif op == "mul-naive":
            records.append(_bench_mul(s, terms, degbits, "naive"))
        elif op == "divides":
            records.append(_bench_divides(s, terms, degbits))
        elif op == "interp":
            records.append(_bench_interp(s, terms, degbits))
        else:
            raise ValueError(f"unknown bench operation: {op}")
    return records


def to_csv(records: list[BenchRecord]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in records]) + "\n"
