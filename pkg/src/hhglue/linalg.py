"""Exact sparse linear algebra over Q and F_p.

Vectors are plain dicts ``{index: nonzero scalar}``.  Over Q the scalars are
``Fraction`` instances, over F_p they are ints in ``range(p)``.  Elimination
over Q is fraction-free: rows are kept as primitive integer vectors while
eliminating and only normalised to pivot 1 at the end.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = dict


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Ground field: Q when ``p == 0``, otherwise F_p."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p and not _is_prime(self.p):
            raise ValueError(f"field order {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t == "Q":
            return cls(0)
        if t.startswith("F") and t[1:].strip().isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field {text!r} (expected Q or F<p>)")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __call__(self, x):
        if self.p == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return x % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def vector(self, items: Iterable[tuple[int, object]]) -> Vec:
        """Accumulate (index, scalar) pairs into a reduced sparse vector."""
        out: dict = {}
        for i, c in items:
            out[i] = out.get(i, 0) + c
        return {i: self(c) for i, c in out.items() if self(c) != 0}


# vector helpers ---------------------------------------------------------

def vadd(field: Field, u: Vec, v: Vec, scale=1) -> Vec:
    out = dict(u)
    for i, c in v.items():
        x = field(out.get(i, 0) + scale * c)
        if x:
            out[i] = x
        else:
            out.pop(i, None)
    return out


def vscale(field: Field, v: Vec, c) -> Vec:
    c = field(c)
    if not c:
        return {}
    return {i: field(c * x) for i, x in v.items()}


def vcombine(field: Field, terms: Iterable[tuple[object, Vec]]) -> Vec:
    acc: dict = {}
    for c, v in terms:
        for i, x in v.items():
            acc[i] = acc.get(i, 0) + c * x
    return {i: field(x) for i, x in acc.items() if field(x)}


# elimination core -------------------------------------------------------

def _to_int_row(row: Vec) -> dict[int, int]:
    den = 1
    for x in row.values():
        d = x.denominator
        den = den * d // gcd(den, d)
    return _primitive({i: int(x * den) for i, x in row.items()})


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {i: x // g for i, x in row.items()}
    return row


class Echelon:
    """Incremental row echelon form; ``finish`` returns the canonical RREF."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}

    def _eliminate(self, row: dict) -> dict:
        rows = self.rows
        heap = [c for c in row if c in rows]
        heapq.heapify(heap)
        seen = set()
        q = self.field.p == 0
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            b = row.get(c)
            if not b:
                continue
            prow = rows[c]
            if q:
                a = prow[c]
                if a != 1:
                    row = {i: a * x for i, x in row.items()}
                for i, x in prow.items():
                    y = row.get(i, 0) - b * x
                    if y:
                        row[i] = y
                        if i > c and i in rows and i not in seen:
                            heapq.heappush(heap, i)
                    else:
                        row.pop(i, None)
                if row:
                    row = _primitive(row)
            else:
                p = self.field.p
                for i, x in prow.items():
                    y = (row.get(i, 0) - b * x) % p
                    if y:
                        row[i] = y
                        if i > c and i in rows and i not in seen:
                            heapq.heappush(heap, i)
                    else:
                        row.pop(i, None)
        return row

    def add(self, vec: Vec) -> bool:
        if not vec:
            return False
        p = self.field.p
        if p == 0:
            vec = {i: x for i, x in vec.items() if x}
            if not vec:
                return False
            row = _to_int_row(vec)
        else:
            row = {i: x % p for i, x in vec.items() if x % p}
            if not row:
                return False
        row = self._eliminate(row)
        if not row:
            return False
        c = min(row)
        if self.field.p:
            inv = pow(row[c], -1, self.field.p)
            row = {i: (x * inv) % self.field.p for i, x in row.items()}
        self.rows[c] = row
        return True

    def rank(self) -> int:
        return len(self.rows)

    def finish(self) -> list[Vec]:
        """Back-substitute to reduced echelon form, pivots normalised to 1."""
        rows = self.rows
        pivots = sorted(rows)
        pset = set(pivots)
        # column -> pivot rows (other than its own) that touch it
        touching: dict[int, set[int]] = {}
        for c in pivots:
            for i in rows[c]:
                if i != c and i in pset:
                    touching.setdefault(i, set()).add(c)
        q = self.field.p == 0
        p = self.field.p
        for c in reversed(pivots):
            prow = rows[c]
            for c2 in sorted(touching.get(c, ())):
                row = rows[c2]
                b = row.get(c)
                if not b:
                    continue
                if q:
                    a = prow[c]
                    new = {i: a * x for i, x in row.items()} if a != 1 else dict(row)
                    for i, x in prow.items():
                        y = new.get(i, 0) - b * x
                        if y:
                            new[i] = y
                        else:
                            new.pop(i, None)
                    new = _primitive(new)
                else:
                    new = dict(row)
                    for i, x in prow.items():
                        y = (new.get(i, 0) - b * x) % p
                        if y:
                            new[i] = y
                        else:
                            new.pop(i, None)
                for i in new:
                    if i != c2 and i in pset and i not in row:
                        touching.setdefault(i, set()).add(c2)
                rows[c2] = new
        out = []
        for c in pivots:
            row = rows[c]
            if q:
                a = row[c]
                out.append({i: Fraction(x, a) for i, x in sorted(row.items())})
            else:
                out.append(dict(sorted(row.items())))
        return out


# subspaces --------------------------------------------------------------

class Subspace:
    """A subspace of field^ambient stored by its canonical RREF basis."""

    __slots__ = ("field", "ambient", "rows", "pivots", "_pidx")

    def __init__(self, field: Field, ambient: int, rows: Sequence[Vec]):
        self.field = field
        self.ambient = ambient
        self.rows = tuple(rows)
        self.pivots = tuple(min(r) for r in self.rows)
        self._pidx = {c: k for k, c in enumerate(self.pivots)}

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Vec]) -> "Subspace":
        ech = Echelon(field)
        for v in vectors:
            if v and max(v) >= ambient:
                raise ValueError("vector index out of range")
            ech.add(v)
        return cls(field, ambient, ech.finish())

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [{i: field.one} for i in range(ambient)])

    @classmethod
    def coordinate(cls, field: Field, ambient: int, indices: Iterable[int]) -> "Subspace":
        return cls(field, ambient, [{i: field.one} for i in sorted(set(indices))])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.field == other.field and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.ambient, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def normal_form(self, v: Vec) -> Vec:
        """Reduce v modulo this subspace; zero iff v lies in it."""
        out = dict(v)
        f = self.field
        for c in [c for c in v if c in self._pidx]:
            x = out.get(c)
            if not x:
                continue
            for i, y in self.rows[self._pidx[c]].items():
                z = f(out.get(i, 0) - x * y)
                if z:
                    out[i] = z
                else:
                    out.pop(i, None)
        return out

    def contains(self, v: Vec) -> bool:
        return not self.normal_form(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coordinates(self, v: Vec) -> list:
        """Coefficients of v (assumed inside) in the RREF basis."""
        return [v.get(c, self.field.zero) for c in self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        _check(self, other)
        return Subspace.span(self.field, self.ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)


def _check(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient or u.field != v.field:
        raise ValueError("ambient space mismatch")


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Zassenhaus: rows (u|u), (v|0); rows vanishing on the left half span U∩V."""
    _check(u, v)
    n = u.ambient
    if not u.dim or not v.dim:
        return Subspace.zero(u.field, n)
    ech = Echelon(u.field)
    for r in u.rows:
        row = dict(r)
        row.update({n + i: x for i, x in r.items()})
        ech.add(row)
    for r in v.rows:
        ech.add(dict(r))
    meet = [{i - n: x for i, x in row.items()} for row in ech.finish() if min(row) >= n]
    return Subspace.span(u.field, n, meet)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def quotient(u: Subspace, w: Subspace) -> tuple[int, list[Vec]]:
    """dim U/W and coset representatives completing W to U.

    The representatives are the RREF of the normal forms of U's basis modulo
    W, so they are canonical and vanish on W's pivot columns.
    """
    _check(u, w)
    if not u.contains_space(w):
        raise ValueError("W is not contained in U")
    reps = Subspace.span(u.field, u.ambient, (w.normal_form(r) for r in u.rows))
    assert reps.dim == u.dim - w.dim
    return reps.dim, list(reps.rows)


def quotient_dim(u: Subspace, w: Subspace) -> int:
    return quotient(u, w)[0]


# linear maps ------------------------------------------------------------

class LinearMap:
    """Sparse matrix stored column-major: ``columns[j]`` is the image of e_j."""

    __slots__ = ("field", "domain", "codomain", "columns")

    def __init__(self, field: Field, domain: int, codomain: int, columns: Sequence[Vec]):
        if len(columns) != domain:
            raise ValueError("column count does not match domain")
        for col in columns:
            if col and (max(col) >= codomain or min(col) < 0):
                raise ValueError("entry index out of range")
        self.field = field
        self.domain = domain
        self.codomain = codomain
        self.columns = [{i: field(x) for i, x in c.items() if field(x)} for c in columns]

    def __repr__(self) -> str:
        return f"LinearMap({self.codomain}x{self.domain})"

    def apply(self, v: Vec) -> Vec:
        return vcombine(self.field, ((c, self.columns[j]) for j, c in v.items()))

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self ∘ inner."""
        if inner.codomain != self.domain:
            raise ValueError("dimension mismatch in composition")
        return LinearMap(self.field, inner.domain, self.codomain,
                         [self.apply(c) for c in inner.columns])

    def is_zero(self) -> bool:
        return not any(self.columns)

    def rows(self) -> list[Vec]:
        out: list[dict] = [dict() for _ in range(self.codomain)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out[i][j] = x
        return out

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.codomain, self.columns)

    def rank(self) -> int:
        ech = Echelon(self.field)
        for c in self.columns:
            ech.add(c)
        return ech.rank()

    def kernel(self) -> Subspace:
        f = self.field
        ech = Echelon(f)
        for r in self.rows():
            ech.add(r)
        rref = ech.finish()
        pivots = {min(r) for r in rref}
        vecs: dict[int, dict] = {j: {j: f.one} for j in range(self.domain) if j not in pivots}
        for r in rref:
            pc = min(r)
            for j, x in r.items():
                if j != pc:
                    vecs[j][pc] = f(-x)
        return Subspace.span(f, self.domain, vecs.values())

    def restrict(self, indices: Sequence[int]) -> "LinearMap":
        """Restriction to the coordinate subspace spanned by ``indices``."""
        return LinearMap(self.field, len(indices), self.codomain,
                         [self.columns[j] for j in indices])

    def map_space(self, u: Subspace) -> Subspace:
        return Subspace.span(self.field, self.codomain, (self.apply(r) for r in u.rows))


def kernel(m: LinearMap) -> Subspace:
    return m.kernel()


def image(m: LinearMap) -> Subspace:
    return m.image()


def contains(u: Subspace, v: Vec) -> bool:
    return u.contains(v)


def dense_rank(field: Field, matrix: list[list]) -> int:
    """Textbook dense Gaussian elimination; used as an independent check."""
    m = [[field(x) for x in row] for row in matrix]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = field.inv(m[rank][c])
        m[rank] = [field(x * inv) for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                k = m[r][c]
                m[r] = [field(x - k * y) for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank
