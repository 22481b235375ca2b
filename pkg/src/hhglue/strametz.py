"""HH^0 and HH^1 of monomial algebras through the complex
k(Q0||B) -> k(Q1||B) -> k(Z||B), with the Lie bracket, grading and L0 data."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional, Sequence

from .lie import LieProfile, LieStructure, predicted_profile
from .linalg import Field, LinearMap, Subspace, Vec, quotient, vcombine
from .presentation import BoundQuiver, PathBasis, enumerate_basis
from .quiver import Path, Quiver, betti_number, connected_components, parallel, reduced_quiver

Pair = tuple[Path, Path]


class PairSpace:
    """Basis of X||Y: pairs (x, y) with x parallel to y, ordered by x then y."""

    def __init__(self, quiver: Quiver, left: Sequence[Path], right: PathBasis):
        self.quiver = quiver
        self.left = tuple(left)
        pairs: list[Pair] = []
        for x in self.left:
            for j in right.between(x.start, x.end):
                pairs.append((x, right[j]))
        self.pairs = pairs
        self.index = {p: i for i, p in enumerate(pairs)}

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def __getitem__(self, i: int) -> Pair:
        return self.pairs[i]

    def degree(self, i: int) -> int:
        x, y = self.pairs[i]
        return len(y) - len(x)

    def label(self, i: int, rtl: bool = False) -> str:
        x, y = self.pairs[i]
        return f"{self.quiver.render(x, rtl)}||{self.quiver.render(y, rtl)}"

    def render(self, v: Vec, rtl: bool = False) -> str:
        return render_combination(((self.label(i, rtl), c) for i, c in sorted(v.items())))


def render_combination(terms) -> str:
    out = []
    for name, c in terms:
        c = c if not hasattr(c, "denominator") or c.denominator != 1 else int(c)
        if c == 1:
            s = f"+ {name}"
        elif c == -1:
            s = f"- {name}"
        elif isinstance(c, int) or getattr(c, "numerator", 1) > 0 and c > 0:
            s = f"+ {c}*{name}"
        else:
            s = f"- {-c}*{name}"
        out.append(s)
    if not out:
        return "0"
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def substitute(r: Path, a: int, gamma: Path, basis: PathBasis) -> Counter:
    """Sum of basis paths obtained from r by replacing one occurrence of a by gamma."""
    q = basis.quiver
    if not parallel(q.arrow_path(a), gamma):
        raise ValueError("substituted path is not parallel to the arrow")
    out: Counter = Counter()
    w = r.arrows
    for i, x in enumerate(w):
        if x != a:
            continue
        new = Path(r.start, r.end, w[:i] + gamma.arrows + w[i + 1:])
        if new in basis.index:
            out[new] += 1
    return out


@dataclass
class CmonSlice:
    bq: BoundQuiver
    basis: PathBasis
    c0: PairSpace
    c1: PairSpace
    c2: PairSpace
    delta0: LinearMap
    delta1: LinearMap

    @property
    def field(self) -> Field:
        return self.bq.field


def build_cmon(bq: BoundQuiver, basis: Optional[PathBasis] = None) -> CmonSlice:
    basis = basis if basis is not None else enumerate_basis(bq)
    q = bq.quiver
    f = bq.field
    c0 = PairSpace(q, [q.trivial(v) for v in range(q.n_vertices)], basis)
    c1 = PairSpace(q, [q.arrow_path(a) for a in range(q.n_arrows)], basis)
    c2 = PairSpace(q, bq.relations, basis)
    cols0 = []
    for e, gamma in c0.pairs:
        v = e.start
        col: dict[int, int] = {}
        for a in q.out_arrows[v]:
            p = basis.mul(gamma, q.arrow_path(a))
            if p is not None:
                k = c1.index[(q.arrow_path(a), p)]
                col[k] = col.get(k, 0) + 1
        for a in q.in_arrows[v]:
            p = basis.mul(q.arrow_path(a), gamma)
            if p is not None:
                k = c1.index[(q.arrow_path(a), p)]
                col[k] = col.get(k, 0) - 1
        cols0.append(col)
    delta0 = LinearMap(f, c0.dim, c1.dim, cols0)
    cols1 = []
    for ap, gamma in c1.pairs:
        a = ap.arrows[0]
        col = {}
        for r in bq.relations:
            for p, m in substitute(r, a, gamma, basis).items():
                k = c2.index[(r, p)]
                col[k] = col.get(k, 0) + m
        cols1.append(col)
    delta1 = LinearMap(f, c1.dim, c2.dim, cols1)
    sl = CmonSlice(bq, basis, c0, c1, c2, delta0, delta1)
    if not delta1.compose(delta0).is_zero():
        raise AssertionError("delta1 o delta0 is not zero")
    return sl


def pair_bracket(cm: CmonSlice, u: Vec, v: Vec) -> Vec:
    """[a||g, b||e] = b||e^{a||g} - a||g^{b||e}, extended bilinearly."""
    f = cm.field
    c1, basis = cm.c1, cm.basis
    terms = []
    for i, x in u.items():
        ap, gamma = c1.pairs[i]
        a = ap.arrows[0]
        for j, y in v.items():
            bp, eps = c1.pairs[j]
            b = bp.arrows[0]
            coeff = f(x * y)
            t: dict[int, int] = {}
            for p, m in substitute(eps, a, gamma, basis).items():
                k = c1.index[(bp, p)]
                t[k] = t.get(k, 0) + m
            for p, m in substitute(gamma, b, eps, basis).items():
                k = c1.index[(ap, p)]
                t[k] = t.get(k, 0) - m
            if t:
                terms.append((coeff, t))
    return vcombine(f, terms)


def _graded_kernel(m: LinearMap, degrees: list[int]) -> Subspace:
    f = m.field
    rows = []
    for d in sorted(set(degrees)):
        idx = [i for i, x in enumerate(degrees) if x == d]
        k = m.restrict(idx).kernel()
        rows.extend({idx[j]: c for j, c in r.items()} for r in k.rows)
    return Subspace.span(f, m.domain, rows)


@dataclass
class Center:
    dim: int
    space: Subspace
    elements: list[str]


def center(cm: CmonSlice) -> Center:
    ker = _graded_kernel(cm.delta0, [cm.c0.degree(i) for i in range(cm.c0.dim)])
    q = cm.bq.quiver
    elems = []
    for r in ker.rows:
        elems.append(render_combination(
            (q.render(cm.c0.pairs[i][1]), c) for i, c in sorted(r.items())))
    return Center(ker.dim, ker, elems)


class HH1:
    """Ker d1 / Im d0 with canonical homogeneous coset representatives."""

    def __init__(self, cm: CmonSlice):
        self.cm = cm
        self.field = cm.field
        c1 = cm.c1
        self.degrees = [c1.degree(i) for i in range(c1.dim)]
        self.ker = _graded_kernel(cm.delta1, self.degrees)
        self.im = cm.delta0.image()
        triv = [i for i in range(cm.c0.dim) if cm.c0.pairs[i][1].is_trivial]
        self.im_deg0 = cm.delta0.restrict(triv).image()
        dim, reps = quotient(self.ker, self.im)
        self.dim = dim
        self.reps = reps
        self.rep_space = Subspace(self.field, c1.dim, reps)

    @property
    def ker_dim(self) -> int:
        return self.ker.dim

    @property
    def im_dim(self) -> int:
        return self.im.dim

    def rep_degree(self, k: int) -> int:
        degs = {self.degrees[i] for i in self.reps[k]}
        assert len(degs) == 1
        return degs.pop()

    def coords(self, v: Vec) -> Vec:
        """Coordinates in the representative basis of the class of v (v in Ker d1)."""
        nf = self.im.normal_form(v)
        if not self.rep_space.contains(nf):
            raise ValueError("vector is not a cocycle")
        return {k: c for k, c in enumerate(self.rep_space.coordinates(nf)) if c}

    def labels(self, rtl: bool = False) -> list[str]:
        return [self.cm.c1.render(r, rtl) for r in self.reps]

    @cached_property
    def lie(self) -> LieStructure:
        cons = {}
        for i, x in enumerate(self.reps):
            for j, y in enumerate(self.reps):
                if j < i:
                    cons[(i, j)] = {k: -c for k, c in cons[(j, i)].items()}
                    continue
                cons[(i, j)] = self.coords(pair_bracket(self.cm, x, y))
        return LieStructure(self.field, self.dim, cons, self.labels())


@dataclass
class HH1Summary:
    dim: int
    ker_delta1: int
    im_delta0: int
    im_delta0_deg0: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def hh1(cm: CmonSlice) -> tuple[HH1Summary, HH1]:
    h = HH1(cm)
    q = cm.bq.quiver
    expect = q.n_vertices - len(connected_components(q))
    if h.im_deg0.dim != expect:
        raise AssertionError("dim Im d0 on trivial pairs differs from n - c")
    return HH1Summary(h.dim, h.ker.dim, h.im.dim, h.im_deg0.dim), h


def lie_structure(h: HH1) -> LieStructure:
    L = h.lie
    if L.antisymmetry_defect() or L.jacobi_defect():
        raise AssertionError("bracket table violates antisymmetry or Jacobi")
    return L


# grading --------------------------------------------------------------------

@dataclass
class GradedDecomposition:
    dims: dict[int, int]
    reps: dict[int, list[int]]

    def as_dict(self) -> dict:
        return {str(k): v for k, v in sorted(self.dims.items())}


def graded_decomposition(h: HH1) -> GradedDecomposition:
    dims: dict[int, int] = {}
    reps: dict[int, list[int]] = {}
    for k in range(h.dim):
        d = h.rep_degree(k)
        dims[d] = dims.get(d, 0) + 1
        reps.setdefault(d, []).append(k)
    if h.field.characteristic == 0 and dims.get(-1):
        raise AssertionError("L_-1 is nonzero in characteristic 0")
    L = h.lie
    for i in range(h.dim):
        for j in range(h.dim):
            for k in L.basis_bracket(i, j):
                if h.rep_degree(k) != h.rep_degree(i) + h.rep_degree(j):
                    raise AssertionError("bracket does not respect the grading")
    return GradedDecomposition(dims, reps)


# L0 ---------------------------------------------------------------------------

def _class_order(q: Quiver) -> list[list[int]]:
    return q.parallel_classes()


def cycle_classes(q: Quiver) -> list[int]:
    """Indices of parallel classes chosen for the cycle part of the L0 basis.

    Classes are added to a spanning forest of the reduced quiver in descending
    order; each rejected class closes a cycle on which it has the smallest index.
    """
    classes = _class_order(q)
    parent = list(range(q.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for k in reversed(range(len(classes))):
        a = classes[k][0]
        x, y = find(q.src[a]), find(q.tgt[a])
        if x == y:
            chosen.append(k)
        else:
            parent[x] = y
    return sorted(chosen)


@dataclass
class L0Decomposition:
    basis: list[Vec]
    basis_ok: bool
    classes: list[list[str]]
    ideals: dict[str, list[str]]
    ideal_dims: dict[str, int]
    components: dict[str, list[list[str]]]
    center_dim: int
    center_generators: list[str]
    center_matches: bool
    cycle_classes: list[str]

    def as_dict(self) -> dict:
        return {
            "basis_ok": self.basis_ok,
            "cycle_classes": self.cycle_classes,
            "ideals": self.ideals,
            "ideal_dims": self.ideal_dims,
            "components": self.components,
            "center_dim": self.center_dim,
            "center_generators": self.center_generators,
            "center_matches": self.center_matches,
        }


def l0_decomposition(h: HH1) -> L0Decomposition:
    cm = h.cm
    q = cm.bq.quiver
    f = h.field
    c1 = cm.c1
    diag = lambda a: c1.index[(q.arrow_path(a), q.arrow_path(a))]
    in_ker = lambda a, b: h.ker.contains({c1.index[(q.arrow_path(a), q.arrow_path(b))]: f.one})
    w0 = h.im_deg0
    deg0 = [i for i in range(c1.dim) if h.degrees[i] == 0]
    ker0 = h.ker.intersect(Subspace.coordinate(f, c1.dim, deg0))
    classes = _class_order(q)
    chosen = set(cycle_classes(q))
    names = lambda cls: [q.arrows[a].name for a in cls]
    basis: list[Vec] = []
    per_class: dict[int, list[Vec]] = {}
    for k, cls in enumerate(classes):
        elems = []
        for a in cls:
            for b in cls:
                if a != b and in_ker(a, b):
                    elems.append({c1.index[(q.arrow_path(a), q.arrow_path(b))]: f.one})
        last = cls[-1]
        for a in cls[:-1]:
            elems.append({diag(a): f.one, diag(last): f(-1)})
        if k in chosen:
            elems.append({diag(last): f.one})
        per_class[k] = elems
        basis.extend(elems)
    span_mod = Subspace.span(f, c1.dim, list(w0.rows) + basis)
    l0_dim = ker0.dim - w0.dim
    basis_ok = (span_mod == ker0 and len(basis) == l0_dim)

    # L0 as a Lie algebra on its degree-0 representatives
    L = h.lie
    idx0 = [k for k in range(h.dim) if h.rep_degree(k) == 0]
    sub = L.span({k: f.one} for k in idx0)
    l0 = L.subalgebra(sub)
    z = l0.center()
    # back to pair vectors
    z_vecs = []
    for r in z.rows:
        z_vecs.append(vcombine(f, ((c, h.reps[idx0[j]]) for j, c in r.items())))
    z_space = Subspace.span(f, c1.dim, list(w0.rows) + z_vecs)

    ideals: dict[str, list[str]] = {}
    ideal_dims: dict[str, int] = {}
    comps: dict[str, list[list[str]]] = {}
    gens: list[Vec] = []
    for k, cls in enumerate(classes):
        key = q.arrows[cls[0]].name
        ideals[key] = [c1.render(v) for v in per_class[k]]
        ideal_dims[key] = len(per_class[k])
        # connected components of the class
        parent = {a: a for a in cls}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        for a in cls:
            for b in cls:
                if a != b and (in_ker(a, b) or in_ker(b, a)):
                    parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for a in cls:
            groups.setdefault(find(a), []).append(a)
        comps[key] = [names(g) for g in groups.values()]
        local = Subspace.span(f, c1.dim, list(w0.rows) + per_class[k])
        for g in groups.values():
            v = {diag(a): f.one for a in g}
            if local.contains(v):
                gens.append(v)
    gen_space = Subspace.span(f, c1.dim, list(w0.rows) + gens)
    return L0Decomposition(
        basis=basis,
        basis_ok=basis_ok,
        classes=[names(c) for c in classes],
        ideals=ideals,
        ideal_dims=ideal_dims,
        components=comps,
        center_dim=z.dim,
        center_generators=[c1.render(v) for v in gens],
        center_matches=gen_space == z_space,
        cycle_classes=[q.arrows[classes[k][0]].name for k in sorted(chosen)],
    )


# p-power ----------------------------------------------------------------------

def derivation_on_arrows(cm: CmonSlice, v: Vec) -> dict[int, dict[Path, object]]:
    out: dict[int, dict[Path, object]] = {}
    for i, c in v.items():
        ap, gamma = cm.c1.pairs[i]
        d = out.setdefault(ap.arrows[0], {})
        d[gamma] = cm.field(d.get(gamma, 0) + c)
    return out


def apply_derivation(cm: CmonSlice, fa: dict[int, dict[Path, object]],
                     x: dict[Path, object]) -> dict[Path, object]:
    """Leibniz extension of an arrow-level derivation, applied to a path vector."""
    f = cm.field
    basis = cm.basis
    out: dict[Path, object] = {}
    for p, c in x.items():
        w = p.arrows
        for i, a in enumerate(w):
            for g, m in fa.get(a, {}).items():
                new = Path(p.start, p.end, w[:i] + g.arrows + w[i + 1:])
                if new in basis.index:
                    out[new] = f(out.get(new, 0) + c * m)
    return {p: c for p, c in out.items() if c}


def p_power(h: HH1, x: Vec) -> Vec:
    """p-th power of a class given in representative coordinates."""
    cm = h.cm
    p = h.field.characteristic
    if p == 0:
        raise ValueError("p-power map needs positive characteristic")
    f = h.field
    v = vcombine(f, ((c, h.reps[k]) for k, c in x.items()))
    fa = derivation_on_arrows(cm, v)
    q = cm.bq.quiver
    out: dict[int, object] = {}
    for a in range(q.n_arrows):
        cur = {q.arrow_path(a): f.one}
        for _ in range(p):
            cur = apply_derivation(cm, fa, cur)
        for g, c in cur.items():
            k = cm.c1.index[(q.arrow_path(a), g)]
            out[k] = f(out.get(k, 0) + c)
    out = {k: c for k, c in out.items() if c}
    if not h.ker.contains(out):
        raise AssertionError("p-th power is not a derivation")
    return h.coords(out)


# radical square zero closed formula ---------------------------------------------

@dataclass
class SFPrediction:
    dim: int
    sizes: list[int]
    betti_reduced: int
    profile: LieProfile

    def as_dict(self) -> dict:
        return {"dim": self.dim, "class_sizes": self.sizes,
                "betti_reduced": self.betti_reduced, "profile": self.profile.as_dict()}


def sanchez_flores(bq: BoundQuiver) -> SFPrediction:
    q = bq.quiver
    if not bq.is_radical_square_zero():
        raise ValueError("presentation is not radical square zero")
    if len(connected_components(q)) != 1:
        raise ValueError("quiver is not connected")
    if bq.field.characteristic != 0:
        raise ValueError("closed formula needs characteristic 0")
    sizes = sorted(len(c) for c in q.parallel_classes() if len(c) > 1)
    chi = betti_number(reduced_quiver(q))
    dim = sum(m * m - 1 for m in sizes) + chi
    return SFPrediction(dim, sizes, chi, predicted_profile(bq.field, sizes, chi))
