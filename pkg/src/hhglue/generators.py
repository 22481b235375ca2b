"""Random finite-dimensional monomial presentations and gluing instances."""
from __future__ import annotations

import random
from typing import Optional

from .gluing import GluingResult, check_assumption, glue
from .linalg import Field
from .presentation import (BoundQuiver, BudgetExceeded, FactorAutomaton, enumerate_basis,
                           radical_square_zero)
from .quiver import Arrow, Path, Quiver, connected_components

CONFIGS = [(block, kind) for block in ("same", "different") for kind in ("generic", "source_sink")]


def random_quiver(rng: random.Random, n_vertices: int, n_arrows: int, connected: bool = True,
                  prefix: str = "", loops: bool = True) -> Quiver:
    vs = [f"{prefix}v{i}" for i in range(n_vertices)]
    while True:
        arrows = []
        for k in range(n_arrows):
            s, t = rng.randrange(n_vertices), rng.randrange(n_vertices)
            if not loops and n_vertices > 1:
                while t == s:
                    t = rng.randrange(n_vertices)
            arrows.append(Arrow(f"{prefix}a{k}", vs[s], vs[t]))
        q = Quiver(vs, arrows)
        if not connected or len(connected_components(q)) == 1:
            return q


def _is_factor(small: tuple, big: tuple) -> bool:
    n = len(small)
    return any(big[i:i + n] == small for i in range(len(big) - n + 1))


def _add_relation(rels: list[Path], r: Path) -> list[Path]:
    """Insert r and drop relations that contain it, keeping the set minimal."""
    if any(_is_factor(x.arrows, r.arrows) for x in rels):
        return rels
    return [x for x in rels if not _is_factor(r.arrows, x.arrows)] + [r]


def random_monomial(rng: random.Random, max_dim: int = 14, field: Field = Field(0),
                    n_vertices: Optional[int] = None, n_arrows: Optional[int] = None,
                    connected: bool = True, prefix: str = "", tries: int = 200) -> BoundQuiver:
    """Random finite-dimensional monomial algebra with dim <= max_dim."""
    for _ in range(tries):
        nv = n_vertices or rng.randint(1, 4)
        na = n_arrows or rng.randint(max(1, nv - 1), nv + 2)
        q = random_quiver(rng, nv, na, connected, prefix)
        rels: list[Path] = []
        for _ in range(rng.randint(0, 3)):
            cands = q.paths_of_length(rng.choice((2, 2, 3)))
            if cands:
                rels = _add_relation(rels, rng.choice(cands))
        # kill surviving cycles until the algebra is finite-dimensional
        while True:
            bq = BoundQuiver(q, rels, field)
            cyc = FactorAutomaton(bq).find_cycle()
            if cyc is None:
                break
            word = cyc[1] * 3
            length = min(rng.choice((2, 2, 3)), len(word))
            i = rng.randrange(len(cyc[1]))
            rels = _add_relation(rels, q.path(word[i:i + length]))
        try:
            enumerate_basis(bq, check=False, budget=max_dim)
        except BudgetExceeded:
            continue
        return bq
    raise RuntimeError("could not generate a small enough presentation")


def random_rsz(rng: random.Random, field: Field = Field(0), max_vertices: int = 4,
               max_arrows: int = 5, prefix: str = "") -> BoundQuiver:
    nv = rng.randint(1, max_vertices)
    na = rng.randint(max(1, nv - 1), max(max_arrows, nv))
    return radical_square_zero(random_quiver(rng, nv, na, True, prefix), field)


def _union(parts: list[BoundQuiver]) -> BoundQuiver:
    vs, arrows, rels = [], [], []
    for bq in parts:
        q = bq.quiver
        vo, ao = len(vs), len(arrows)
        vs.extend(q.vertices)
        arrows.extend(q.arrows)
        rels.extend(Path(r.start + vo, r.end + vo, tuple(a + ao for a in r.arrows)) for r in bq.relations)
    return BoundQuiver(Quiver(vs, arrows), rels, parts[0].field)


def _with_source_sink(bq: BoundQuiver, rng: random.Random, source_block: list[int],
                      sink_block: list[int]) -> tuple[BoundQuiver, int, int]:
    """Append a fresh source feeding source_block and a fresh sink fed by sink_block."""
    q = bq.quiver
    rsz = bq.is_radical_square_zero()
    vs = list(q.vertices) + ["src", "snk"]
    s_to = q.vertices[rng.choice(source_block)]
    t_from = q.vertices[rng.choice(sink_block)]
    arrows = list(q.arrows) + [Arrow("u", "src", s_to), Arrow("w", t_from, "snk")]
    nq = Quiver(vs, arrows)
    if rsz:
        out = radical_square_zero(nq, bq.field)
    else:
        out = BoundQuiver(nq, bq.relations, bq.field)
        if FactorAutomaton(out).find_cycle() is not None:
            raise AssertionError("adding a source and a sink cannot create cycles")
    return out, nq.vindex["src"], nq.vindex["snk"]


def random_gluing(rng: random.Random, block: str, kind: str, field: Field = Field(0),
                  rsz_ratio: float = 0.25, max_dim: int = 12, tries: int = 200) -> GluingResult:
    """A gluing instance of the requested configuration that satisfies the assumption."""
    for _ in range(tries):
        rsz = rng.random() < rsz_ratio

        def part(prefix: str) -> BoundQuiver:
            if rsz:
                return random_rsz(rng, field, 3, 4, prefix)
            return random_monomial(rng, max_dim, field, prefix=prefix)

        if block == "same":
            A = part("")
            b1 = b2 = list(range(A.quiver.n_vertices))
        else:
            A1, A2 = part("p"), part("q")
            A = _union([A1, A2])
            n1 = A1.quiver.n_vertices
            b1, b2 = list(range(n1)), list(range(n1, A.quiver.n_vertices))
        if kind == "source_sink":
            A, e1, en = _with_source_sink(A, rng, b1, b2)
        else:
            cand1 = [v for v in b1 if A.quiver.vertex_kind(v) != "isolated"]
            cand2 = [v for v in b2 if A.quiver.vertex_kind(v) != "isolated"]
            if not cand1 or not cand2:
                continue
            e1, en = rng.choice(cand1), rng.choice(cand2)
            if e1 == en:
                continue
        g = glue(A, e1, en)
        if check_assumption(g).ok:
            return g
    raise RuntimeError(f"no valid gluing instance for {block}/{kind}")
