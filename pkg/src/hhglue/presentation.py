"""Monomial bound quiver presentations: DSL, validation and the path basis."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .linalg import Field
from .quiver import Arrow, Path, Quiver, connected_components

FieldSpec = Field


class PresentationError(Exception):
    """Base class for presentation problems."""


class ParseError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class SemanticError(PresentationError):
    pass


class InfiniteDimensionalError(SemanticError):
    def __init__(self, witness: str):
        super().__init__(f"algebra is infinite-dimensional; pumpable cycle {witness}")
        self.witness = witness


class MinimalityError(SemanticError):
    def __init__(self, violations: list[tuple[str, str]]):
        text = ", ".join(f"{a} inside {b}" for a, b in violations)
        super().__init__(f"relation set is not minimal: {text}")
        self.violations = violations


class BudgetExceeded(PresentationError):
    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs at least {needed} elements, budget {budget}")
        self.needed = needed
        self.budget = budget


def _relation_key(p: Path) -> tuple:
    return (len(p.arrows), p.arrows)


class BoundQuiver:
    """kQ/<Z> with Z a set of paths of length >= 2, kept in length-lex order."""

    def __init__(self, quiver: Quiver, relations: Sequence[Path], field: Field = Field(0)):
        rels = sorted(set(relations), key=_relation_key)
        for r in rels:
            if len(r) < 2:
                raise SemanticError("relation shorter than 2")
        self.quiver = quiver
        self.relations: tuple[Path, ...] = tuple(rels)
        self.field = field

    def __eq__(self, other) -> bool:
        return (isinstance(other, BoundQuiver) and self.quiver == other.quiver
                and self.relations == other.relations and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.quiver, self.relations, self.field))

    def __repr__(self) -> str:
        return (f"BoundQuiver({self.quiver.n_vertices} vertices, {self.quiver.n_arrows} arrows, "
                f"{len(self.relations)} relations, {self.field.name})")

    def with_field(self, field: Field) -> "BoundQuiver":
        return BoundQuiver(self.quiver, self.relations, field)

    def render(self, p: Path, rtl: bool = False) -> str:
        return self.quiver.render(p, rtl)

    def is_radical_square_zero(self) -> bool:
        return set(self.relations) == set(self.quiver.paths_of_length(2))


def radical_square_zero(quiver: Quiver, field: Field = Field(0)) -> BoundQuiver:
    return BoundQuiver(quiver, quiver.paths_of_length(2), field)


# DSL --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)"
                    r"|(?P<punct>[.:])|(?P<bad>\S))")


def _tokens(text: str, lineno: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        kind = m.lastgroup
        value = m.group(kind)
        col = m.start(kind) + 1
        if kind == "bad":
            if value in "+-*" or value.isdigit():
                raise ParseError("non-monomial relations are not supported", lineno, col)
            raise ParseError(f"unexpected character {value!r}", lineno, col)
        out.append((kind, value, col))
        pos = m.end()
    return out


def parse_presentation(text: str) -> BoundQuiver:
    field: Optional[Field] = None
    vertices: list[tuple[str, int, int]] = []
    arrows: list[tuple[str, str, str, int, int]] = []
    relations: list[tuple[list[tuple[str, int]], int, int]] = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = _tokens(line, lineno)
        head, rest = toks[0], toks[1:]
        if head[0] != "ident":
            raise ParseError(f"unexpected {head[1]!r}", lineno, head[2])
        kw = head[1]
        if field is None and kw != "field":
            raise ParseError("document must start with a 'field' header", lineno, head[2])
        if kw == "field":
            if field is not None:
                raise ParseError("duplicate field header", lineno, head[2])
            field = _parse_field(rest, lineno, head[2])
        elif kw == "vertex":
            if not rest:
                raise ParseError("expected at least one vertex identifier", lineno, len(line) + 1)
            for kind, value, col in rest:
                if kind != "ident":
                    raise ParseError(f"expected identifier, got {value!r}", lineno, col)
                vertices.append((value, lineno, col))
        elif kw == "arrow":
            shape = [t[0] if t[0] != "punct" else t[1] for t in rest]
            if shape != ["ident", ":", "ident", "arrow", "ident"]:
                col = rest[0][2] if rest else len(line) + 1
                for want, tok in zip(["ident", ":", "ident", "arrow", "ident"], rest):
                    got = tok[0] if tok[0] != "punct" else tok[1]
                    if got != want:
                        col = tok[2]
                        break
                else:
                    col = rest[len(shape)][2] if len(shape) > 5 else len(line) + 1
                raise ParseError("expected 'arrow NAME : SOURCE -> TARGET'", lineno, col)
            arrows.append((rest[0][1], rest[2][1], rest[4][1], lineno, rest[0][2]))
        elif kw == "relation":
            if not rest:
                raise ParseError("expected a path expression", lineno, len(line) + 1)
            names: list[tuple[str, int]] = []
            expect_ident = True
            for kind, value, col in rest:
                if expect_ident:
                    if kind != "ident":
                        raise ParseError(f"expected arrow identifier, got {value!r}", lineno, col)
                    names.append((value, col))
                elif value != ".":
                    raise ParseError(f"expected '.', got {value!r}", lineno, col)
                expect_ident = not expect_ident
            if expect_ident:
                raise ParseError("path expression ends with '.'", lineno, rest[-1][2])
            relations.append((names, lineno, rest[0][2]))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, head[2])
    if field is None:
        raise ParseError("missing 'field' header", max(len(lines), 1), 1)

    seen: dict[str, tuple[int, int]] = {}
    for name, ln, col in vertices:
        if name in seen:
            raise ParseError(f"duplicate vertex identifier {name!r}", ln, col)
        seen[name] = (ln, col)
    aseen: dict[str, tuple[int, int]] = {}
    for name, s, t, ln, col in arrows:
        if name in aseen:
            raise ParseError(f"duplicate arrow identifier {name!r}", ln, col)
        aseen[name] = (ln, col)
        for v in (s, t):
            if v not in seen:
                raise ParseError(f"arrow {name!r} references undeclared vertex {v!r}", ln, col)
    quiver = Quiver([v[0] for v in vertices], [Arrow(a[0], a[1], a[2]) for a in arrows])
    rels = []
    for names, ln, col in relations:
        for name, c in names:
            if name not in quiver.aindex:
                raise ParseError(f"unknown arrow {name!r} in relation", ln, c)
        if len(names) < 2:
            raise ParseError("relation shorter than 2", ln, col)
        idx = [quiver.aindex[n] for n, _ in names]
        for k in range(len(idx) - 1):
            if quiver.tgt[idx[k]] != quiver.src[idx[k + 1]]:
                raise ParseError(
                    f"arrows {names[k][0]!r} and {names[k + 1][0]!r} do not compose",
                    ln, names[k + 1][1])
        rels.append(quiver.path(idx))
    return BoundQuiver(quiver, rels, field)


def _parse_field(rest, lineno: int, col: int) -> Field:
    vals = [t[1] for t in rest]
    try:
        if vals == ["Q"]:
            return Field(0)
        if len(vals) == 2 and vals[0] == "F" and vals[1].isdigit():
            return Field(int(vals[1]))
        if len(vals) == 1 and re.fullmatch(r"F\d+", vals[0]):
            return Field(int(vals[0][1:]))
    except ValueError as exc:
        raise ParseError(str(exc), lineno, rest[-1][2]) from None
    where = rest[0][2] if rest else col
    raise ParseError("expected 'field Q' or 'field F <prime>'", lineno, where)


def serialize(bq: BoundQuiver) -> str:
    q = bq.quiver
    lines = [f"field {bq.field.name}"]
    if q.vertices:
        lines.append("vertex " + " ".join(q.vertices))
    for a in q.arrows:
        lines.append(f"arrow {a.name} : {a.source} -> {a.target}")
    for r in bq.relations:
        lines.append("relation " + q.render(r))
    return "\n".join(lines) + "\n"


# validation -------------------------------------------------------------

def _is_factor(small: tuple, big: tuple) -> bool:
    n, m = len(small), len(big)
    return any(big[i:i + n] == small for i in range(m - n + 1))


def minimality_violations(bq: BoundQuiver) -> list[tuple[Path, Path]]:
    rels = bq.relations
    words = {r.arrows for r in rels}
    out = []
    for big in rels:
        w = big.arrows
        for n in range(2, len(w)):
            for i in range(len(w) - n + 1):
                if w[i:i + n] in words:
                    small = next(r for r in rels if r.arrows == w[i:i + n])
                    if (small, big) not in out:
                        out.append((small, big))
    return out


def normalize(bq: BoundQuiver) -> BoundQuiver:
    """Drop relations that contain another relation as a proper factor."""
    bad = {big for _, big in minimality_violations(bq)}
    return BoundQuiver(bq.quiver, [r for r in bq.relations if r not in bad], bq.field)


class FactorAutomaton:
    """Aho-Corasick automaton over the arrow alphabet recognising Z-factors.

    A state is a trie node (the longest suffix of the word read so far that is
    a proper prefix of some relation) together with the current vertex.
    """

    def __init__(self, bq: BoundQuiver):
        q = bq.quiver
        self.quiver = q
        children: list[dict[int, int]] = [{}]
        terminal = [False]
        for r in bq.relations:
            node = 0
            for a in r.arrows:
                nxt = children[node].get(a)
                if nxt is None:
                    nxt = len(children)
                    children[node][a] = nxt
                    children.append({})
                    terminal.append(False)
                node = nxt
            terminal[node] = True
        fail = [0] * len(children)
        goto: list[dict[int, int]] = [dict() for _ in children]
        order = deque()
        for a in range(q.n_arrows):
            child = children[0].get(a)
            if child is None:
                goto[0][a] = 0
            else:
                goto[0][a] = child
                order.append(child)
        while order:
            node = order.popleft()
            terminal[node] = terminal[node] or terminal[fail[node]]
            for a in range(q.n_arrows):
                child = children[node].get(a)
                if child is None:
                    goto[node][a] = goto[fail[node]][a]
                else:
                    fail[child] = goto[fail[node]][a]
                    goto[node][a] = child
                    order.append(child)
        self.goto = goto
        self.dead = terminal

    def step(self, state: tuple[int, int], a: int) -> Optional[tuple[int, int]]:
        node, v = state
        if self.quiver.src[a] != v:
            return None
        nxt = self.goto[node][a]
        if self.dead[nxt]:
            return None
        return (nxt, self.quiver.tgt[a])

    def find_cycle(self) -> Optional[tuple[list[int], list[int]]]:
        """A reachable cycle of live states as (prefix arrows, cycle arrows)."""
        q = self.quiver
        colour: dict[tuple[int, int], int] = {}
        for v in range(q.n_vertices):
            start = (0, v)
            if start in colour:
                continue
            colour[start] = 1
            stack = [(start, iter(q.out_arrows[v]))]
            labels: list[int] = []
            while stack:
                state, it = stack[-1]
                advanced = False
                for a in it:
                    nxt = self.step(state, a)
                    if nxt is None:
                        continue
                    c = colour.get(nxt, 0)
                    if c == 1:
                        states = [s for s, _ in stack]
                        k = states.index(nxt)
                        return labels[:k], labels[k:] + [a]
                    if c == 0:
                        colour[nxt] = 1
                        stack.append((nxt, iter(q.out_arrows[nxt[1]])))
                        labels.append(a)
                        advanced = True
                        break
                if not advanced:
                    colour[state] = 2
                    stack.pop()
                    if labels:
                        labels.pop()
        return None


@dataclass
class ValidationReport:
    minimality_violations: list[tuple[str, str]]
    finite: bool
    witness: Optional[str]
    isolated: list[str]
    dimension: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.finite and not self.minimality_violations

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "minimality_violations": [list(v) for v in self.minimality_violations],
            "finite_dimensional": self.finite,
            "witness": self.witness,
            "isolated_vertices": self.isolated,
            "dimension": self.dimension,
        }


def _witness_text(q: Quiver, prefix: list[int], cycle: list[int]) -> str:
    names = lambda ws: ".".join(q.arrows[a].name for a in ws)
    head = names(prefix) + "." if prefix else ""
    return f"{head}({names(cycle)})^m"


def validate(bq: BoundQuiver) -> ValidationReport:
    q = bq.quiver
    viol = [(q.render(a), q.render(b)) for a, b in minimality_violations(bq)]
    cyc = FactorAutomaton(bq).find_cycle()
    witness = _witness_text(q, *cyc) if cyc else None
    isolated = [v for v in q.vertices if q.vertex_kind(v) == "isolated"]
    dim = None
    if cyc is None:
        dim = len(enumerate_basis(bq, check=False))
    return ValidationReport(viol, cyc is None, witness, isolated, dim)


# path basis -------------------------------------------------------------

class PathBasis:
    """The Z-factor-free paths, length-lex ordered, with index lookup."""

    def __init__(self, quiver: Quiver, paths: Sequence[Path]):
        self.quiver = quiver
        self.paths: tuple[Path, ...] = tuple(paths)
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.by_length: dict[int, list[int]] = {}
        self._parallel: dict[tuple[int, int], list[int]] = {}
        for i, p in enumerate(self.paths):
            self.by_length.setdefault(len(p), []).append(i)
            self._parallel.setdefault((p.start, p.end), []).append(i)

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __getitem__(self, i: int) -> Path:
        return self.paths[i]

    def __contains__(self, p: Path) -> bool:
        return p in self.index

    def index_of(self, p: Path) -> Optional[int]:
        return self.index.get(p)

    def between(self, start: int, end: int) -> list[int]:
        return self._parallel.get((start, end), [])

    def of_length(self, n: int) -> list[Path]:
        return [self.paths[i] for i in self.by_length.get(n, [])]

    @property
    def max_length(self) -> int:
        return max(self.by_length) if self.by_length else 0

    def mul(self, p: Path, q: Path) -> Optional[Path]:
        """p then q in Λ, or None when the product vanishes."""
        if p.end != q.start:
            return None
        r = Path(p.start, q.end, p.arrows + q.arrows)
        return r if r in self.index else None


def enumerate_basis(bq: BoundQuiver, check: bool = True, budget: int = 500_000) -> PathBasis:
    q = bq.quiver
    auto = FactorAutomaton(bq)
    if check:
        cyc = auto.find_cycle()
        if cyc is not None:
            raise InfiniteDimensionalError(_witness_text(q, *cyc))
    paths = [q.trivial(v) for v in range(q.n_vertices)]
    layer = [((0, v), ()) for v in range(q.n_vertices)]
    total = len(paths)
    while layer:
        nxt = []
        for state, word in layer:
            for a in q.out_arrows[state[1]]:
                s2 = auto.step(state, a)
                if s2 is not None:
                    nxt.append((s2, word + (a,)))
        nxt.sort(key=lambda t: t[1])
        total += len(nxt)
        if total > budget:
            raise BudgetExceeded("path basis", total, budget)
        paths.extend(Path(q.src[w[0]], q.tgt[w[-1]], w) for _, w in nxt)
        layer = nxt
    return PathBasis(q, paths)


def load(bq_text: str, normalize_relations: bool = False) -> tuple[BoundQuiver, PathBasis]:
    """Parse, validate strictly and enumerate the basis."""
    bq = parse_presentation(bq_text)
    if normalize_relations:
        bq = normalize(bq)
    viol = minimality_violations(bq)
    if viol:
        raise MinimalityError([(bq.render(a), bq.render(b)) for a, b in viol])
    return bq, enumerate_basis(bq)


def block_count(bq: BoundQuiver) -> int:
    return len(connected_components(bq.quiver))


def blocks(bq: BoundQuiver) -> list[BoundQuiver]:
    """The connected components as separate presentations, in vertex order."""
    q = bq.quiver
    out = []
    for comp in connected_components(q):
        keep = sorted(comp)
        vmap = {v: k for k, v in enumerate(keep)}
        arrows = [a for a in range(q.n_arrows) if q.src[a] in vmap]
        amap = {a: k for k, a in enumerate(arrows)}
        sub = Quiver([q.vertices[v] for v in keep], [q.arrows[a] for a in arrows])
        rels = [Path(vmap[r.start], vmap[r.end], tuple(amap[a] for a in r.arrows))
                for r in bq.relations if r.start in vmap]
        out.append(BoundQuiver(sub, rels, bq.field))
    return out
