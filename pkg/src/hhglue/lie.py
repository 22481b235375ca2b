"""Finite-dimensional Lie algebras given by structure constants, and invariant profiles."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Optional, Sequence

from .linalg import Field, LinearMap, Subspace, Vec, vadd, vcombine, vscale


class LieStructure:
    """Basis b_0..b_{d-1} with [b_i, b_j] = constants[(i, j)] (coordinate vector)."""

    def __init__(self, field: Field, dim: int, constants: dict[tuple[int, int], Vec],
                 labels: Optional[Sequence[str]] = None,
                 p_powers: Optional[list[Vec]] = None):
        self.field = field
        self.dim = dim
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(dim)]
        self.p_powers = p_powers
        table: dict[tuple[int, int], Vec] = {}
        for (i, j), v in constants.items():
            v = {k: field(x) for k, x in v.items() if field(x)}
            if v:
                table[(i, j)] = v
        self.constants = table

    def __repr__(self) -> str:
        return f"LieStructure(dim={self.dim}, {self.field.name})"

    def basis_bracket(self, i: int, j: int) -> Vec:
        return self.constants.get((i, j), {})

    def bracket(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        terms = []
        for i, a in x.items():
            for j, b in y.items():
                c = self.constants.get((i, j))
                if c:
                    terms.append((f(a * b), c))
        return vcombine(f, terms)

    # identities ----------------------------------------------------------
    def antisymmetry_defect(self) -> list[tuple[int, int]]:
        f = self.field
        bad = []
        for i in range(self.dim):
            if self.basis_bracket(i, i):
                bad.append((i, i))
            for j in range(i + 1, self.dim):
                if vadd(f, self.basis_bracket(i, j), self.basis_bracket(j, i)):
                    bad.append((i, j))
        return bad

    def jacobi_defect(self) -> list[tuple[int, int, int]]:
        f = self.field
        bad = []
        e = lambda k: {k: f.one}
        for i, j, k in combinations(range(self.dim), 3):
            s = vcombine(f, [
                (1, self.bracket(e(i), self.basis_bracket(j, k))),
                (1, self.bracket(e(j), self.basis_bracket(k, i))),
                (1, self.bracket(e(k), self.basis_bracket(i, j))),
            ])
            if s:
                bad.append((i, j, k))
        return bad

    def is_lie(self) -> bool:
        return not self.antisymmetry_defect() and not self.jacobi_defect()

    # subspaces -----------------------------------------------------------
    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def bracket_spaces(self, u: Subspace, v: Subspace) -> Subspace:
        return self.span(self.bracket(x, y) for x in u.rows for y in v.rows)

    def centralizer(self, u: Subspace) -> Subspace:
        """{x : [x, u] = 0}."""
        f = self.field
        cols = []
        for i in range(self.dim):
            col: Vec = {}
            for k, y in enumerate(u.rows):
                for m, c in self.bracket({i: f.one}, y).items():
                    col[k * self.dim + m] = c
            cols.append(col)
        return LinearMap(f, self.dim, max(1, u.dim * self.dim), cols).kernel()

    def center(self) -> Subspace:
        return self.centralizer(self.full())

    def is_ideal(self, u: Subspace) -> bool:
        return u.contains_space(self.bracket_spaces(self.full(), u))

    def derived_series(self) -> list[int]:
        cur = self.full()
        dims = [cur.dim]
        while cur.dim:
            nxt = self.bracket_spaces(cur, cur)
            dims.append(nxt.dim)
            if nxt.dim == cur.dim:
                break
            cur = nxt
        return dims

    def lower_central_series(self) -> list[int]:
        full = self.full()
        cur = full
        dims = [cur.dim]
        while cur.dim:
            nxt = self.bracket_spaces(full, cur)
            dims.append(nxt.dim)
            if nxt.dim == cur.dim:
                break
            cur = nxt
        return dims

    def subalgebra(self, u: Subspace, labels: Optional[Sequence[str]] = None) -> "LieStructure":
        """Structure constants of a subalgebra on its RREF basis."""
        cons = {}
        for i, x in enumerate(u.rows):
            for j, y in enumerate(u.rows):
                z = self.bracket(x, y)
                if not u.contains(z):
                    raise ValueError("subspace is not closed under the bracket")
                cons[(i, j)] = dict(enumerate(u.coordinates(z)))
        return LieStructure(self.field, u.dim, cons, labels)

    def profile(self) -> "LieProfile":
        derived = self.derived_series()
        lower = self.lower_central_series()
        return LieProfile(
            dim=self.dim,
            center_dim=self.center().dim,
            derived_series=derived,
            lower_central_series=lower,
            solvable=derived[-1] == 0,
            nilpotent=lower[-1] == 0,
            derived_dim=derived[1] if len(derived) > 1 else 0,
        )


@dataclass(frozen=True)
class LieProfile:
    dim: int
    center_dim: int
    derived_series: list
    lower_central_series: list
    solvable: bool
    nilpotent: bool
    derived_dim: int

    def as_dict(self) -> dict:
        return asdict(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieProfile) and self.as_dict() == other.as_dict()


def _pad(series: list[int], n: int) -> list[int]:
    return series + [series[-1]] * (n - len(series))


def _trim(series: list[int]) -> list[int]:
    out = list(series)
    while len(out) > 1 and out[-1] == out[-2]:
        out.pop()
    if out[-1]:
        out.append(out[-1])
    return out


def profile_product(profiles: Sequence[LieProfile]) -> LieProfile:
    """Profile of a direct product of Lie algebras."""
    if not profiles:
        return LieProfile(0, 0, [0], [0], True, True, 0)
    n = max(max(len(p.derived_series), len(p.lower_central_series)) for p in profiles) + 1
    derived = [sum(x) for x in zip(*(_pad(p.derived_series, n) for p in profiles))]
    lower = [sum(x) for x in zip(*(_pad(p.lower_central_series, n) for p in profiles))]
    derived, lower = _trim(derived), _trim(lower)
    return LieProfile(
        dim=sum(p.dim for p in profiles),
        center_dim=sum(p.center_dim for p in profiles),
        derived_series=derived,
        lower_central_series=lower,
        solvable=all(p.solvable for p in profiles),
        nilpotent=all(p.nilpotent for p in profiles),
        derived_dim=sum(p.derived_dim for p in profiles),
    )


# standard algebras --------------------------------------------------------

def abelian(field: Field, n: int) -> LieStructure:
    return LieStructure(field, n, {})


def gl(field: Field, n: int) -> LieStructure:
    """gl_n on the matrix units E_ij, index i*n + j."""
    cons: dict[tuple[int, int], Vec] = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    v: Vec = {}
                    if j == k:
                        v[i * n + l] = v.get(i * n + l, 0) + 1
                    if l == i:
                        v[k * n + j] = v.get(k * n + j, 0) - 1
                    cons[(i * n + j, k * n + l)] = v
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return LieStructure(field, n * n, cons, labels)


def sl(field: Field, n: int) -> LieStructure:
    g = gl(field, n)
    f = field
    vecs = []
    for i in range(n):
        for j in range(n):
            if i != j:
                vecs.append({i * n + j: f.one})
    for i in range(n - 1):
        vecs.append({i * n + i: f.one, (n - 1) * n + (n - 1): f(-1)})
    return g.subalgebra(g.span(vecs))


def pgl(field: Field, n: int) -> LieStructure:
    """gl_n modulo scalars, realised on the quotient basis."""
    g = gl(field, n)
    scal = g.span([{i * n + i: field.one for i in range(n)}])
    comp = [r for r in Subspace.full(field, n * n).rows if r and min(r) != 0]
    # basis: all E_ij except E_11, reduced modulo the scalars
    idx = [min(r) for r in comp]
    pos = {c: k for k, c in enumerate(idx)}
    cons = {}
    for a, ca in enumerate(idx):
        for b, cb in enumerate(idx):
            z = scal.normal_form(g.basis_bracket(ca, cb))
            cons[(a, b)] = {pos[c]: x for c, x in z.items()}
    return LieStructure(field, len(idx), cons)


def predicted_profile(field: Field, sizes: Sequence[int], abelian_dim: int) -> LieProfile:
    parts = [sl(field, m).profile() for m in sizes]
    if abelian_dim:
        parts.append(abelian(field, abelian_dim).profile())
    return profile_product(parts)
