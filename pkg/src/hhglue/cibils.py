"""Hochschild cohomology of radical square zero algebras from the Cibils complex.

C^n = k(Qn||Q0) + k(Qn||Q1) and the differential has the single block
D_n: k(Qn||Q0) -> k(Q_{n+1}||Q1), D_n(g||e) = sum_{s(a)=e} ag||a + (-1)^{n+1} sum_{t(b)=e} gb||b.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .gluing import GluingResult, VerifierReport
from .linalg import Field, LinearMap
from .presentation import BoundQuiver, BudgetExceeded, SemanticError
from .quiver import Path, Quiver, connected_components, is_crown

DEFAULT_BUDGET = 200_000


class NotRadicalSquareZero(SemanticError):
    pass


def count_paths(q: Quiver, n: int) -> int:
    """|Qn| without enumerating, from powers of the adjacency matrix."""
    if n == 0:
        return q.n_vertices
    row = [len(q.out_arrows[v]) for v in range(q.n_vertices)]
    for _ in range(n - 1):
        row = [sum(row[q.tgt[a]] for a in q.out_arrows[v]) for v in range(q.n_vertices)]
    return sum(row)


@dataclass
class CibilsSlice:
    n: int
    x: list  # Qn||Q0 as (cycle, vertex path)
    y: list  # Qn||Q1 as (path, arrow path)
    x_index: dict = dc_field(repr=False, default_factory=dict)
    y_index: dict = dc_field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.x) + len(self.y)


class CibilsComplex:
    def __init__(self, bq: BoundQuiver, budget: int = DEFAULT_BUDGET):
        if not bq.is_radical_square_zero():
            raise NotRadicalSquareZero("algebra is not radical square zero")
        self.bq = bq
        self.quiver = bq.quiver
        self.field: Field = bq.field
        self.budget = budget
        self._slices: dict[int, CibilsSlice] = {}
        self._d: dict[int, LinearMap] = {}

    def paths(self, n: int) -> list[Path]:
        need = count_paths(self.quiver, n)
        if need > self.budget:
            raise BudgetExceeded(f"paths of length {n}", need, self.budget)
        return self.quiver.paths_of_length(n)

    def slice(self, n: int) -> CibilsSlice:
        if n not in self._slices:
            q = self.quiver
            x, y = [], []
            for g in self.paths(n):
                if g.start == g.end:
                    x.append((g, q.trivial(g.start)))
                for a in q.out_arrows[g.start]:
                    if q.tgt[a] == g.end:
                        y.append((g, q.arrow_path(a)))
            s = CibilsSlice(n, x, y)
            s.x_index = {p: i for i, p in enumerate(x)}
            s.y_index = {p: i for i, p in enumerate(y)}
            self._slices[n] = s
        return self._slices[n]

    def D(self, n: int) -> LinearMap:
        """D_n: k(Qn||Q0) -> k(Q_{n+1}||Q1)."""
        if n not in self._d:
            q = self.quiver
            src, dst = self.slice(n), self.slice(n + 1)
            sign = 1 if (n + 1) % 2 == 0 else -1
            cols = []
            for g, e in src.x:
                col: dict[int, int] = {}
                v = e.start
                for a in q.out_arrows[v]:
                    k = dst.y_index[(q.concat(g, q.arrow_path(a)), q.arrow_path(a))]
                    col[k] = col.get(k, 0) + 1
                for b in q.in_arrows[v]:
                    k = dst.y_index[(q.concat(q.arrow_path(b), g), q.arrow_path(b))]
                    col[k] = col.get(k, 0) + sign
                cols.append(col)
            self._d[n] = LinearMap(self.field, len(src.x), len(dst.y), cols)
        return self._d[n]

    def delta(self, n: int) -> LinearMap:
        """Full differential C^n -> C^{n+1}, X summands first."""
        src, dst = self.slice(n), self.slice(n + 1)
        off = len(dst.x)
        cols = [{off + k: c for k, c in col.items()} for col in self.D(n).columns]
        cols += [{} for _ in src.y]
        return LinearMap(self.field, src.dim, dst.dim, cols)

    def check_square_zero(self, n: int) -> bool:
        return self.delta(n + 1).compose(self.delta(n)).is_zero()

    def kernel_dim(self, n: int) -> int:
        s = self.slice(n)
        return len(s.x) - self.D(n).rank() + len(s.y)

    def image_dim(self, n: int) -> int:
        return self.D(n - 1).rank() if n > 0 else 0

    def hh_dim(self, n: int) -> int:
        return self.kernel_dim(n) - self.image_dim(n)

    def formula(self, n: int) -> Optional[int]:
        """Closed dimension for connected non-crown quivers, n >= 2."""
        if n < 2 or len(connected_components(self.quiver)) != 1 or is_crown(self.quiver):
            return None
        return len(self.slice(n).y) - len(self.slice(n - 1).x)


def hhn_rsz(bq: BoundQuiver, n: int, budget: int = DEFAULT_BUDGET,
            complex_: Optional[CibilsComplex] = None) -> int:
    cc = complex_ if complex_ is not None else CibilsComplex(bq, budget)
    if not cc.check_square_zero(n):
        raise AssertionError(f"Cibils differential squares to a nonzero map in degree {n}")
    dim = cc.hh_dim(n)
    expected = cc.formula(n)
    if expected is not None and expected != dim:
        raise AssertionError(f"HH^{n}: complex gives {dim}, closed formula gives {expected}")
    return dim


def verify_highhoch_gluing(g: GluingResult, n: int, budget: int = DEFAULT_BUDGET) -> VerifierReport:
    """Compare the Cibils complexes of A and of B = A with a source and a sink glued."""
    rep = VerifierReport(f"highdeg{n}")
    if n < 2:
        raise ValueError("degree must be at least 2")
    ca, cb = CibilsComplex(g.A, budget), CibilsComplex(g.B, budget)
    f = ca.field
    sa, sb = ca.slice(n), cb.slice(n)
    pa, pb = ca.slice(n - 1), cb.slice(n - 1)
    phi = g.path_map
    # psi_{n,1} exists for every gluing; injectivity only needs phi_n injective
    psi_n1 = LinearMap(f, len(sa.y), len(sb.y), [{sb.y_index[(phi(c), phi(a))]: 1} for c, a in sa.y])
    rep.check("psi_{n,1} injective", psi_n1.rank(), len(sa.y))
    ha, hb = ca.hh_dim(n), cb.hh_dim(n)
    rep.data = {"n": n, "hh_A": ha, "hh_B": hb, "difference": hb - ha,
                "crown_A": is_crown(g.A.quiver), "crown_B": is_crown(g.B.quiver)}
    if not g.source_sink:
        rep.notes.append("not a source/sink gluing: kernel and image comparison skipped")
        return rep

    # cycles of A avoid a source and a sink, so psi_{n,0} lands in cycles of B
    psi_n0 = LinearMap(f, len(sa.x), len(sb.x), [{sb.x_index[(phi(c), phi(e))]: 1} for c, e in sa.x])
    psi_prev0 = LinearMap(f, len(pa.x), len(pb.x), [{pb.x_index[(phi(c), phi(e))]: 1} for c, e in pa.x])
    psi = LinearMap(f, sa.dim, sb.dim,
                    psi_n0.columns + [{len(sb.x) + k: c for k, c in col.items()} for col in psi_n1.columns])
    lhs = psi_n1.compose(ca.D(n - 1))
    rhs = cb.D(n - 1).compose(psi_prev0)
    rep.check("psi_{n,1} o D_{n-1} = D_{n-1} o psi_{n-1,0}", True,
              all(lhs.apply({i: 1}) == rhs.apply({i: 1}) for i in range(len(pa.x))))
    ker_a, ker_b = ca.delta(n).kernel(), cb.delta(n).kernel()
    im_a, im_b = ca.delta(n - 1).image(), cb.delta(n - 1).image()
    mapped_ker = psi.map_space(ker_a)
    rep.check("psi_n(Ker delta^n_A) in Ker delta^n_B", True, ker_b.contains_space(mapped_ker))
    rep.check("psi_n injective on Ker delta^n_A", mapped_ker.dim, ker_a.dim)
    rep.check("psi_n(Im delta^{n-1}_A) in Im delta^{n-1}_B", True,
              im_b.contains_space(psi.map_space(im_a)))
    rep.check("dim HH^n(B) - dim HH^n(A) >= 0", hb - ha >= 0, True)
    return rep

def cibils_center_dim(bq: BoundQuiver) -> int:
    """dim HH^0 = dim Ker D_0 + number of loops."""
    return CibilsComplex(bq).hh_dim(0)

