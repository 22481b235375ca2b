"""Finite quivers and their paths.

Vertices and arrows are addressed by their position in input order.  A path
stores its arrows in traversal order (first arrow first), so the
right-to-left product ``b a`` (a then b) is the tuple ``(a, b)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True, order=True)
class Path:
    start: int
    end: int
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return self.start == self.end and bool(self.arrows)


def parallel(p: Path, q: Path) -> bool:
    return p.start == q.start and p.end == q.end


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.aindex = {a.name: i for i, a in enumerate(self.arrows)}
        if len(self.vindex) != len(self.vertices):
            raise ValueError("duplicate vertex identifier")
        if len(self.aindex) != len(self.arrows):
            raise ValueError("duplicate arrow identifier")
        for a in self.arrows:
            if a.source not in self.vindex or a.target not in self.vindex:
                raise ValueError(f"arrow {a.name} references an unknown vertex")
        self.src = tuple(self.vindex[a.source] for a in self.arrows)
        self.tgt = tuple(self.vindex[a.target] for a in self.arrows)
        self.out_arrows: list[list[int]] = [[] for _ in self.vertices]
        self.in_arrows: list[list[int]] = [[] for _ in self.vertices]
        for i, (s, t) in enumerate(zip(self.src, self.tgt)):
            self.out_arrows[s].append(i)
            self.in_arrows[t].append(i)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    # paths -------------------------------------------------------------
    def trivial(self, v: int) -> Path:
        return Path(v, v, ())

    def arrow_path(self, a: int) -> Path:
        return Path(self.src[a], self.tgt[a], (a,))

    def path(self, arrows: Sequence[int]) -> Path:
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("use trivial() for length-0 paths")
        for x, y in zip(arrows, arrows[1:]):
            if self.tgt[x] != self.src[y]:
                raise ValueError(
                    f"arrows {self.arrows[x].name} and {self.arrows[y].name} do not compose")
        return Path(self.src[arrows[0]], self.tgt[arrows[-1]], arrows)

    def path_from_names(self, names: Sequence[str]) -> Path:
        return self.path([self.aindex[n] for n in names])

    def concat(self, p: Path, q: Path) -> Optional[Path]:
        """p then q, or None when they do not meet."""
        if p.end != q.start:
            return None
        return Path(p.start, q.end, p.arrows + q.arrows)

    def render(self, p: Path, rtl: bool = False) -> str:
        if not p.arrows:
            return self.vertices[p.start]
        names = [self.arrows[a].name for a in p.arrows]
        if rtl:
            return " ".join(reversed(names))
        return ".".join(names)

    def paths_of_length(self, n: int) -> list[Path]:
        """All paths of length n (no relations), length-lex order."""
        if n == 0:
            return [self.trivial(v) for v in range(self.n_vertices)]
        layer = [(a,) for a in range(self.n_arrows)]
        for _ in range(n - 1):
            layer = [w + (b,) for w in layer for b in self.out_arrows[self.tgt[w[-1]]]]
        layer.sort()
        return [Path(self.src[w[0]], self.tgt[w[-1]], w) for w in layer]

    # structure ---------------------------------------------------------
    def parallel_classes(self) -> list[list[int]]:
        seen: dict[tuple[int, int], list[int]] = {}
        for a in range(self.n_arrows):
            seen.setdefault((self.src[a], self.tgt[a]), []).append(a)
        return list(seen.values())

    def vertex_kind(self, v: str | int) -> str:
        i = self.vindex[v] if isinstance(v, str) else v
        if not 0 <= i < self.n_vertices:
            raise KeyError(v)
        has_in, has_out = bool(self.in_arrows[i]), bool(self.out_arrows[i])
        if not has_in and not has_out:
            return "isolated"
        if not has_in:
            return "source"
        if not has_out:
            return "sink"
        return "internal"


def parallel_classes(q: Quiver) -> list[list[int]]:
    return q.parallel_classes()


def connected_components(q: Quiver) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in q.vertices]
    for s, t in zip(q.src, q.tgt):
        adj[s].add(t)
        adj[t].add(s)
    comp = [-1] * q.n_vertices
    out = []
    for v in range(q.n_vertices):
        if comp[v] >= 0:
            continue
        comp[v] = len(out)
        block = [v]
        todo = deque([v])
        while todo:
            x = todo.popleft()
            for y in sorted(adj[x]):
                if comp[y] < 0:
                    comp[y] = len(out)
                    block.append(y)
                    todo.append(y)
        out.append(sorted(block))
    return out


def component_of(q: Quiver) -> list[int]:
    comp = [0] * q.n_vertices
    for k, block in enumerate(connected_components(q)):
        for v in block:
            comp[v] = k
    return comp


def betti_number(q: Quiver) -> int:
    return q.n_arrows - q.n_vertices + len(connected_components(q))


def reduced_quiver(q: Quiver) -> Quiver:
    """One arrow per parallel class, named after the first member."""
    arrows = [q.arrows[cls[0]] for cls in q.parallel_classes()]
    return Quiver(q.vertices, arrows)


def is_crown(q: Quiver) -> Optional[int]:
    n = q.n_vertices
    if n == 0 or q.n_arrows != n:
        return None
    if any(len(q.out_arrows[v]) != 1 or len(q.in_arrows[v]) != 1 for v in range(n)):
        return None
    # one out- and one in-arrow everywhere: a disjoint union of oriented cycles
    v, steps = 0, 0
    while True:
        v = q.tgt[q.out_arrows[v][0]]
        steps += 1
        if v == 0:
            break
    return n if steps == n else None


def vertex_kind(q: Quiver, v: str | int) -> str:
    return q.vertex_kind(v)


def disjoint_union(parts: Iterable[Quiver]) -> Quiver:
    vs: list[str] = []
    arrows: list[Arrow] = []
    for q in parts:
        vs.extend(q.vertices)
        arrows.extend(q.arrows)
    return Quiver(vs, arrows)
