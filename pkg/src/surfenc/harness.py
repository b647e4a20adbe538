"""Monte Carlo experiment harness: logical failure rates of encoding circuits.

Each experiment point (one distance, one noise strength) is sampled in fixed
chunks of shots.  Chunk c of point i draws from an independent counter-based
RNG stream, Philox keyed by (seed, i) with counter (0, 0, c, 0), so results
are bit-identical no matter how chunks are distributed over workers.

Per chunk: propagate Pauli frames, read the protected error component on the
data qubits, compute the check syndrome, decode each distinct syndrome once,
and count shots whose corrected residual flips the protected logical.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
import os
from dataclasses import dataclass, field, asdict

import numpy as np

from .code_model import CodeVariant, build_code
from .decoder import SyndromeDecoder
from .encoders import Scheme, Target, generate_circuit
from .stab_sim import sample_final_frames

CHUNK_SHOTS = 65536

CSV_COLUMNS = (
    "variant",
    "scheme",
    "target",
    "d",
    "p",
    "shots",
    "failures",
    "p_l",
    "ci_lo",
    "ci_hi",
)


@dataclass
class ExperimentConfig:
    variant: str = "rotated"
    scheme: str = "ue"
    target: str = "zero"
    distances: tuple[int, ...] = (3, 5)
    noise_strengths: tuple[float, ...] = (1e-3,)
    shots: int = 100_000
    seed: int = 0
    workers: int | None = None
    min_failures: int | None = None
    chunk: int = CHUNK_SHOTS

    def __post_init__(self):
        self.distances = tuple(int(d) for d in self.distances)
        self.noise_strengths = tuple(float(p) for p in self.noise_strengths)
        if self.shots <= 0:
            raise ValueError("shots must be positive")
        if self.chunk <= 0:
            raise ValueError("chunk must be positive")
        for d in self.distances:
            if d < 3 or d % 2 == 0:
                raise ValueError(f"distance must be an odd integer >= 3, got {d}")
        for p in self.noise_strengths:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"noise strength must be in [0, 1], got {p}")
        CodeVariant(self.variant)
        Scheme(self.scheme)
        Target(self.target)

    @classmethod
    def from_dict(cls, payload: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        bad = set(payload) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return cls(**payload)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["distances"] = list(self.distances)
        d["noise_strengths"] = list(self.noise_strengths)
        return d


@dataclass(frozen=True)
class PointResult:
    variant: str
    scheme: str
    target: str
    d: int
    p: float
    shots: int
    failures: int
    p_l: float
    ci_lo: float
    ci_hi: float


def wilson_interval(failures: int, shots: int, z: float = 1.96) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    phat = failures / shots
    denom = 1.0 + z * z / shots
    center = (phat + z * z / (2 * shots)) / denom
    half = (z / denom) * math.sqrt(
        phat * (1.0 - phat) / shots + z * z / (4.0 * shots * shots)
    )
    return max(0.0, center - half), min(1.0, center + half)


def chunk_rng(seed: int, point_index: int, chunk_id: int) -> np.random.Generator:
    bits = np.random.Philox(
        key=np.array([seed, point_index], dtype=np.uint64),
        counter=np.array([0, 0, chunk_id, 0], dtype=np.uint64),
    )
    return np.random.Generator(bits)


class _PointEngine:
    """Per-point compiled state: circuit, decoder, syndrome matrices."""

    def __init__(self, variant: str, scheme: str, target: str, d: int, p: float):
        self.code = build_code(CodeVariant(variant), d)
        self.circuit = generate_circuit(variant, d, scheme, target, p)
        self.decoder = SyndromeDecoder(self.code, target)
        n_data = self.code.n_data
        checks = self.decoder.graph.checks
        self.h = np.zeros((len(checks), n_data), dtype=np.uint8)
        for i, c in enumerate(checks):
            for q in c.support:
                self.h[i, q] = 1
        logical = (
            self.code.logical_z if target == "zero" else self.code.logical_x
        )
        self.lvec = np.zeros(n_data, dtype=np.uint8)
        for q in logical:
            self.lvec[q] = 1
        self.protected_x = target == "zero"

    def count_chunk_failures(self, shots: int, rng: np.random.Generator) -> int:
        fx, fz = sample_final_frames(self.circuit, shots, rng)
        frame = fx if self.protected_x else fz
        err = frame[:, : self.code.n_data].astype(np.uint8)
        syn_bits = (err @ self.h.T) & 1
        lpar = (err @ self.lvec) & 1
        packed = np.packbits(syn_bits, axis=1, bitorder="little")
        uniq, inv = np.unique(packed, axis=0, return_inverse=True)
        corr_lpar = np.empty(len(uniq), dtype=np.uint8)
        for i, row in enumerate(uniq):
            syndrome = int.from_bytes(row.tobytes(), "little")
            _, lp = self.decoder.decode_syndrome(syndrome)
            corr_lpar[i] = lp
        return int(((lpar ^ corr_lpar[inv]) == 1).sum())


_ENGINE_CACHE: dict[tuple, _PointEngine] = {}


def _get_engine(key: tuple) -> _PointEngine:
    engine = _ENGINE_CACHE.get(key)
    if engine is None:
        engine = _PointEngine(*key)
        _ENGINE_CACHE[key] = engine
    return engine


def _chunk_task(task: tuple) -> int:
    variant, scheme, target, d, p, seed, point_index, chunk_id, shots = task
    engine = _get_engine((variant, scheme, target, d, p))
    rng = chunk_rng(seed, point_index, chunk_id)
    return engine.count_chunk_failures(shots, rng)


def _chunk_plan(total_shots: int, chunk: int) -> list[int]:
    sizes = []
    left = total_shots
    while left > 0:
        sizes.append(min(chunk, left))
        left -= sizes[-1]
    return sizes


def resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get("SURFENC_WORKERS", "1")))


def run_experiment(config: ExperimentConfig, progress=None) -> list[PointResult]:
    """Run all (d, p) points of a config; returns results in point order.

    With min_failures set, a point stops after the first chunk (in chunk
    order) at which the cumulative failure count reaches the threshold, so
    low-d points do not burn the full shot budget.  Chunk order is also what
    keeps multi-worker runs identical to single-worker runs.
    """
    workers = resolve_workers(config.workers)
    points = [
        (d, p) for d in config.distances for p in config.noise_strengths
    ]
    sizes = _chunk_plan(config.shots, config.chunk)
    results: list[PointResult] = []
    pool = multiprocessing.Pool(workers) if workers > 1 else None
    try:
        for point_index, (d, p) in enumerate(points):
            tasks = [
                (
                    config.variant,
                    config.scheme,
                    config.target,
                    d,
                    p,
                    config.seed,
                    point_index,
                    chunk_id,
                    shots,
                )
                for chunk_id, shots in enumerate(sizes)
            ]
            failures = 0
            shots_done = 0
            stream = pool.imap(_chunk_task, tasks) if pool else map(_chunk_task, tasks)
            for chunk_id, chunk_failures in enumerate(stream):
                failures += chunk_failures
                shots_done += sizes[chunk_id]
                if (
                    config.min_failures is not None
                    and failures >= config.min_failures
                ):
                    break
            p_l = failures / shots_done
            lo, hi = wilson_interval(failures, shots_done)
            result = PointResult(
                variant=config.variant,
                scheme=config.scheme,
                target=config.target,
                d=d,
                p=p,
                shots=shots_done,
                failures=failures,
                p_l=p_l,
                ci_lo=lo,
                ci_hi=hi,
            )
            results.append(result)
            if progress is not None:
                progress(result)
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
    return results


def write_results_csv(results: list[PointResult], fileobj) -> None:
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(
            [
                r.variant,
                r.scheme,
                r.target,
                r.d,
                f"{r.p:e}",
                r.shots,
                r.failures,
                repr(r.p_l),
                repr(r.ci_lo),
                repr(r.ci_hi),
            ]
        )


def read_results_csv(fileobj) -> list[PointResult]:
    reader = csv.DictReader(fileobj)
    out = []
    for row in reader:
        out.append(
            PointResult(
                variant=row["variant"],
                scheme=row["scheme"],
                target=row["target"],
                d=int(row["d"]),
                p=float(row["p"]),
                shots=int(row["shots"]),
                failures=int(row["failures"]),
                p_l=float(row["p_l"]),
                ci_lo=float(row["ci_lo"]),
                ci_hi=float(row["ci_hi"]),
            )
        )
    return out


@dataclass(frozen=True)
class SchemeRatio:
    variant: str
    target: str
    d: int
    p: float
    numerator: str
    denominator: str
    ratio: float
    ratio_lo: float
    ratio_hi: float


def compare_schemes(results: list[PointResult]) -> list[SchemeRatio]:
    """Pairwise failure-rate ratios between schemes at matching points.

    Interval bounds propagate conservatively: [lo_a/hi_b, hi_a/lo_b], with
    infinity when the denominator interval touches zero.
    """
    by_cell: dict[tuple, dict[str, PointResult]] = {}
    for r in results:
        by_cell.setdefault((r.variant, r.target, r.d, r.p), {})[r.scheme] = r
    rows: list[SchemeRatio] = []
    for (variant, target, d, p), cell in sorted(by_cell.items()):
        schemes = sorted(cell)
        for num in schemes:
            for den in schemes:
                if num == den:
                    continue
                a, b = cell[num], cell[den]
                ratio = a.p_l / b.p_l if b.p_l > 0 else math.inf
                lo = a.ci_lo / b.ci_hi if b.ci_hi > 0 else math.inf
                hi = a.ci_hi / b.ci_lo if b.ci_lo > 0 else math.inf
                rows.append(
                    SchemeRatio(variant, target, d, p, num, den, ratio, lo, hi)
                )
    return rows
