"""Brute-force Hochschild cohomology of a monomial algebra from the reduced bar
complex over the semisimple subalgebra E = k Q0.

Multiplication is path concatenation (first factor traversed first), i.e. the
opposite algebra; HH^n of an algebra and of its opposite have equal dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .linalg import LinearMap, Subspace, Vec, quotient
from .presentation import BoundQuiver, BudgetExceeded, PathBasis, enumerate_basis
from .quiver import Path
from .strametz import render_combination

Tensor = tuple[Path, ...]

DEFAULT_BUDGET = 60_000


@dataclass
class ReducedBarSlice:
    """Cochains of degree n: pairs (tensor || basis path)."""
    n: int
    tensors: list
    pairs: list
    index: dict

    @property
    def dim(self) -> int:
        return len(self.pairs)


class BarComplex:
    def __init__(self, bq: BoundQuiver, basis: Optional[PathBasis] = None,
                 budget: int = DEFAULT_BUDGET):
        self.bq = bq
        self.field = bq.field
        self.quiver = bq.quiver
        self.basis = basis if basis is not None else enumerate_basis(bq)
        self.budget = budget
        self.radical = [p for p in self.basis if p.arrows]
        self._from: dict[int, list[Path]] = {}
        for p in self.radical:
            self._from.setdefault(p.start, []).append(p)
        self._slices: dict[int, ReducedBarSlice] = {}
        self._diffs: dict[int, LinearMap] = {}

    # multiplication table -------------------------------------------------
    @cached_property
    def _mul(self) -> dict[tuple[Path, Path], Path]:
        table = {}
        for p in self.basis:
            for q in self.basis:
                if p.end == q.start:
                    r = self.basis.mul(p, q)
                    if r is not None:
                        table[(p, q)] = r
        return table

    def mul(self, p: Path, q: Path) -> Optional[Path]:
        return self._mul.get((p, q))

    @cached_property
    def _splits(self) -> dict[Path, list[tuple[Path, Path]]]:
        """Factorisations of each radical basis path into two radical factors."""
        q = self.quiver
        out = {}
        for p in self.radical:
            w = p.arrows
            out[p] = [(q.path(w[:i]), q.path(w[i:])) for i in range(1, len(w))]
        return out

    # cochain spaces --------------------------------------------------------
    def _tensors(self, n: int) -> list:
        if n == 0:
            return [(self.quiver.trivial(v),) for v in range(self.quiver.n_vertices)]
        layer: list[Tensor] = [(p,) for p in self.radical]
        for _ in range(n - 1):
            nxt = []
            for t in layer:
                nxt.extend(t + (p,) for p in self._from.get(t[-1].end, ()))
                if len(nxt) > self.budget:
                    raise BudgetExceeded(f"radical tensor power of degree {n}", len(nxt), self.budget)
            layer = nxt
        return layer

    def slice(self, n: int) -> ReducedBarSlice:
        if n in self._slices:
            return self._slices[n]
        tensors = self._tensors(n)
        pairs = []
        for t in tensors:
            for j in self.basis.between(t[0].start, t[-1].end):
                pairs.append((t, self.basis[j]))
            if len(pairs) > self.budget:
                raise BudgetExceeded(f"bar cochains of degree {n}", len(pairs), self.budget)
        s = ReducedBarSlice(n, tensors, pairs, {p: i for i, p in enumerate(pairs)})
        self._slices[n] = s
        return s

    # differential ----------------------------------------------------------
    def differential(self, n: int) -> LinearMap:
        """d: C^n -> C^{n+1}, the Hochschild differential restricted to the reduced complex."""
        if n in self._diffs:
            return self._diffs[n]
        src, dst = self.slice(n), self.slice(n + 1)
        f = self.field
        sign_last = -1 if (n + 1) % 2 else 1
        cols = []
        for t, q in src.pairs:
            col: dict[int, int] = {}

            def add(key, c):
                k = dst.index[key]
                col[k] = col.get(k, 0) + c

            if n == 0:
                e = t[0]
                for x in self.radical:
                    if x.end == e.start:
                        y = self.mul(x, q)
                        if y is not None:
                            add(((x,), y), 1)
                    if x.start == e.start:
                        y = self.mul(q, x)
                        if y is not None:
                            add(((x,), y), sign_last)
            else:
                for x in self.radical:
                    if x.end == t[0].start:
                        y = self.mul(x, q)
                        if y is not None:
                            add(((x,) + t, y), 1)
                    if x.start == t[-1].end:
                        y = self.mul(q, x)
                        if y is not None:
                            add((t + (x,), y), sign_last)
                for j, p in enumerate(t):
                    sign = -1 if j % 2 == 0 else 1
                    for u, v in self._splits[p]:
                        add((t[:j] + (u, v) + t[j + 1:], q), sign)
            cols.append({k: c for k, c in col.items() if f(c)})
        d = LinearMap(f, src.dim, dst.dim, cols)
        self._diffs[n] = d
        return d

    def check_square_zero(self, n: int) -> bool:
        return self.differential(n + 1).compose(self.differential(n)).is_zero()

    def cocycles(self, n: int) -> Subspace:
        return self.differential(n).kernel()

    def hh_dim(self, n: int) -> int:
        d = self.differential(n)
        if not self.check_square_zero(n):
            raise AssertionError(f"bar differential squares to a nonzero map in degree {n}")
        ker = self.slice(n).dim - d.rank()
        im = self.differential(n - 1).rank() if n > 0 else 0
        return ker - im


def oracle_hhn(bq: BoundQuiver, n: int, budget: int = DEFAULT_BUDGET,
               complex_: Optional[BarComplex] = None) -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    bc = complex_ if complex_ is not None else BarComplex(bq, budget=budget)
    return bc.hh_dim(n)


# derivations ---------------------------------------------------------------

@dataclass
class DerivationResult:
    dim: int
    derivations: int
    inner: int
    basis: list

    def as_dict(self) -> dict:
        return {"dim": self.dim, "derivations": self.derivations, "inner": self.inner,
                "basis": self.basis}


def oracle_hh1_derivations(bq: BoundQuiver, basis: Optional[PathBasis] = None) -> DerivationResult:
    """E-derivations of the algebra modulo inner ones, from the full multiplication table.

    Unknowns are the values D(p) for every radical basis path p, constrained
    only by D(xy) = D(x) y + x D(y) for all radical basis paths x, y."""
    basis = basis if basis is not None else enumerate_basis(bq)
    f = bq.field
    q = bq.quiver
    radical = [p for p in basis if p.arrows]
    unknowns = [(p, basis[j]) for p in radical for j in basis.between(p.start, p.end)]
    uidx = {u: i for i, u in enumerate(unknowns)}
    rows: dict[tuple[Path, Path, Path], dict[int, int]] = {}

    def add(key, col, c):
        row = rows.setdefault(key, {})
        row[col] = row.get(col, 0) + c

    for x in radical:
        for y in radical:
            if x.end != y.start:
                continue
            xy = basis.mul(x, y)
            if xy is not None:
                for j in basis.between(xy.start, xy.end):
                    add((x, y, basis[j]), uidx[(xy, basis[j])], 1)
            for j in basis.between(x.start, x.end):
                z = basis.mul(basis[j], y)
                if z is not None:
                    add((x, y, z), uidx[(x, basis[j])], -1)
            for j in basis.between(y.start, y.end):
                z = basis.mul(x, basis[j])
                if z is not None:
                    add((x, y, z), uidx[(y, basis[j])], -1)
    keys = sorted(rows)
    cols: list[Vec] = [{} for _ in unknowns]
    for r, key in enumerate(keys):
        for c, v in rows[key].items():
            if f(v):
                cols[c][r] = v
    ders = LinearMap(f, len(unknowns), max(1, len(keys)), cols).kernel()
    # inner derivations x -> x.lam - lam.x for lam in the E-centraliser
    inner_vecs = []
    for v in range(q.n_vertices):
        for j in basis.between(v, v):
            lam = basis[j]
            vec: dict[int, int] = {}
            for p in radical:
                for z, c in ((basis.mul(p, lam), 1), (basis.mul(lam, p), -1)):
                    if z is not None:
                        k = uidx[(p, z)]
                        vec[k] = vec.get(k, 0) + c
            inner_vecs.append({k: c for k, c in vec.items() if f(c)})
    inner = Subspace.span(f, len(unknowns), inner_vecs)
    if not ders.contains_space(inner):
        raise AssertionError("inner derivation failed the Leibniz constraints")
    rendered = []
    _, reps = quotient(ders, inner)
    for vec in reps:
        terms = []
        for k, c in sorted(vec.items()):
            p, z = unknowns[k]
            if len(p) == 1:
                terms.append((f"{q.render(p)}->{q.render(z)}", c))
        rendered.append(render_combination(terms))
    return DerivationResult(ders.dim - inner.dim, ders.dim, inner.dim, rendered)
