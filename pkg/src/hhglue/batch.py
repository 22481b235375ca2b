"""Randomised verification batches over gluing configurations."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .cibils import verify_highhoch_gluing
from .generators import CONFIGS, random_gluing
from .gluing import SUITES, GluingAnalysis, run_suites
from .linalg import Field
from .presentation import serialize

CHUNK = 10


@dataclass
class BatchResult:
    block: str
    kind: str
    instances: int = 0
    checks: int = 0
    advisory: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "BatchResult") -> None:
        self.instances += other.instances
        self.checks += other.checks
        self.advisory += other.advisory
        self.failures.extend(other.failures)

    def as_dict(self) -> dict:
        return {"config": f"{self.block}/{self.kind}", "instances": self.instances,
                "checks": self.checks, "advisory": self.advisory, "failures": self.failures}


def _chunk(args) -> BatchResult:
    block, kind, seed, count, suites, max_degree, p = args
    rng = random.Random(seed)
    out = BatchResult(block, kind)
    for _ in range(count):
        g = random_gluing(rng, block, kind, Field(p))
        reps = run_suites(GluingAnalysis(g), suites)
        if g.A.is_radical_square_zero():
            reps += [verify_highhoch_gluing(g, n) for n in range(2, max_degree + 1)]
        out.instances += 1
        for r in reps:
            out.checks += len(r.checks)
            if r.advisory:
                out.advisory += 1
            if not r.passed and not r.advisory:
                out.failures.append({
                    "suite": r.suite,
                    "at": [g.A.quiver.vertices[g.e1], g.A.quiver.vertices[g.en]],
                    "presentation": serialize(g.A),
                    "failed": [c.as_dict() for c in r.checks if not c.ok],
                })
    return out


def run_batch(count: int, seed: int = 0, configs: Sequence[tuple[str, str]] = CONFIGS,
              suites: Sequence[str] = tuple(SUITES), max_degree: int = 3, jobs: int = 1,
              characteristic: int = 0) -> list[BatchResult]:
    """count instances per configuration; results do not depend on jobs."""
    tasks = []
    for ci, (block, kind) in enumerate(configs):
        for k in range(0, count, CHUNK):
            tasks.append((block, kind, seed * 100_003 + ci * 10_007 + k,
                          min(CHUNK, count - k), list(suites), max_degree, characteristic))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_chunk, tasks))
    else:
        parts = [_chunk(t) for t in tasks]
    results = {c: BatchResult(*c) for c in configs}
    for p in parts:
        results[(p.block, p.kind)].merge(p)
    return [results[c] for c in configs]
