"""Two-term complexes of projectives and their homotopy category.

A complex ``T^-1 --alpha--> T^0`` is stored by the summand lists of its two
terms and the differential as a matrix of algebra elements (a ``ProjMap``).
Hom spaces in the homotopy category are computed on coordinate vectors of
such matrices, which keeps every calculation finite and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .exactla import Matrix, QuotientCoords, Subspace, Vector, subspace_calc, zero_vec
from .quiveralg import (
    Algebra,
    AlgebraPresentation,
    Arrow,
    FDAlgebra,
    Path,
    Quiver,
    TwoSidedIdeal,
    assemble_algebra,
    gabriel_presentation,
)
from .modcat import (
    ProjMap,
    Representation,
    RepMap,
    canonical_modules,
    gen_cog_membership,
    indecomposables_isomorphic,
    kernel_cokernel,
    nakayama_map,
    proj_hom_basis,
    projective_cover,
    realize_projective,
    signature,
    split_with_maps,
)


class OutOfRange(ValueError):
    pass


def _counts(algebra: FDAlgebra, summands: Sequence[str]) -> tuple[int, ...]:
    return tuple(sum(1 for s in summands if s == v) for v in algebra.vertices)


def _from_counts(algebra: FDAlgebra, counts: Sequence[int]) -> tuple[str, ...]:
    return tuple(v for v, k in zip(algebra.vertices, counts) for _ in range(k))


@dataclass(frozen=True)
class TwoTermComplex:
    algebra: FDAlgebra
    minus1: tuple[str, ...]
    zero: tuple[str, ...]
    alpha: ProjMap

    def __post_init__(self):
        if self.alpha.algebra is not self.algebra:
            raise ValueError("differential lives over another algebra")
        if self.alpha.source != self.minus1 or self.alpha.target != self.zero:
            raise ValueError("differential does not match the terms")

    @classmethod
    def from_entries(cls, algebra: FDAlgebra, minus1: Sequence[str], zero: Sequence[str],
                     entries: Sequence[Sequence]) -> TwoTermComplex:
        """Entries are algebra vectors or labels such as ``"alpha"``, ``"-beta*delta"``, ``"0"``."""
        rows = []
        for row in entries:
            rows.append(tuple(_element(algebra, x) for x in row))
        if not zero:
            rows = []
        return cls(algebra, tuple(minus1), tuple(zero), ProjMap(algebra, tuple(minus1), tuple(zero), tuple(rows)))

    @classmethod
    def stalk(cls, algebra: FDAlgebra, summands: Sequence[str] | None = None) -> TwoTermComplex:
        """0 -> P in degree 0 (the regular module by default)."""
        summands = tuple(algebra.vertices if summands is None else summands)
        return cls(algebra, (), summands, ProjMap.zero(algebra, (), summands))

    @classmethod
    def shifted_stalk(cls, algebra: FDAlgebra, summands: Sequence[str] | None = None) -> TwoTermComplex:
        """P -> 0, that is P[1]."""
        summands = tuple(algebra.vertices if summands is None else summands)
        return cls(algebra, summands, (), ProjMap.zero(algebra, summands, ()))

    @property
    def p_minus1(self) -> tuple[int, ...]:
        return _counts(self.algebra, self.minus1)

    @property
    def p_zero(self) -> tuple[int, ...]:
        return _counts(self.algebra, self.zero)

    @property
    def diff(self) -> RepMap:
        return self.alpha.realize()

    @property
    def is_zero(self) -> bool:
        return not self.minus1 and not self.zero

    def __repr__(self) -> str:
        return f"TwoTermComplex({list(self.minus1)} -> {list(self.zero)})"


def _element(algebra: FDAlgebra, x) -> Vector:
    if isinstance(x, str):
        text = x.replace(" ", "")
        if text in ("", "0"):
            return algebra.zero()
        sign = Fraction(1)
        if text[0] in "+-":
            sign = Fraction(-1) if text[0] == "-" else sign
            text = text[1:]
        return tuple(sign * c for c in algebra.element(text))
    return tuple(Fraction(c) for c in x)


def complex_sum(parts: Sequence[TwoTermComplex]) -> TwoTermComplex:
    alg = parts[0].algebra
    minus1 = tuple(s for p in parts for s in p.minus1)
    zero = tuple(s for p in parts for s in p.zero)
    z = alg.zero()
    rows = []
    for i, p in enumerate(parts):
        for r in range(len(p.zero)):
            row = []
            for j, q in enumerate(parts):
                for c in range(len(q.minus1)):
                    row.append(p.alpha.entries[r][c] if i == j else z)
            rows.append(tuple(row))
    return TwoTermComplex(alg, minus1, zero, ProjMap(alg, minus1, zero, tuple(rows)))


# --- Hom spaces --------------------------------------------------------------

def _hom_dim(alg: FDAlgebra, source: Sequence[str], target: Sequence[str]) -> int:
    return sum(len(alg.paths_between(t, s)) for t in target for s in source)


def _linear(alg, source, target, fn: Callable[[ProjMap], Vector], out_dim: int) -> Matrix:
    """Matrix of a linear function on Hom(source, target) in coordinates."""
    cols = [fn(b) for b in proj_hom_basis(alg, source, target)]
    return Matrix.from_columns(cols, out_dim) if cols else Matrix.zeros(out_dim, 0)


def _coords(alg, source, target, v: Sequence) -> ProjMap:
    return ProjMap.from_coordinates(alg, source, target, v)


@dataclass(frozen=True)
class HomotopyHom:
    """Hom_K(source, target[shift]) as a quotient Z/N of coordinate vectors.

    For shift 0 an element is a pair (phi^-1, phi^0); for shift 1 a single
    map T^-1 -> U^0; for shift -1 a single map T^0 -> U^-1.  When the target
    is a module, elements are tuples of vectors of the module (generator images).
    """

    source: TwoTermComplex
    target: object
    shift: int
    cycles: Subspace
    boundaries: Subspace
    quotient: QuotientCoords
    unpack: Callable = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.quotient.rank

    @property
    def basis(self) -> list:
        return [self.unpack(v) for v in self.quotient.lifts]

    def coords(self, element_vector: Sequence) -> Vector:
        return self.quotient(element_vector)

    def lift(self, coords: Sequence) -> Vector:
        return self.quotient.lift(coords)


def _make(source, target, shift, ambient: int, cycles: Subspace, boundaries: Subspace, unpack) -> HomotopyHom:
    assert cycles.contains_space(boundaries)
    return HomotopyHom(source, target, shift, cycles, boundaries,
                       subspace_calc(cycles, boundaries, "quotient_coords"), unpack)


def _kernel_of(m: Matrix) -> Subspace:
    return m.kernel() if m.rows else Subspace.full(m.cols)


def _image_of(m: Matrix) -> Subspace:
    return m.image() if m.cols else Subspace.zero(m.rows)


def chain_pair_vector(phi_m1: ProjMap, phi_0: ProjMap) -> Vector:
    return phi_m1.coordinates() + phi_0.coordinates()


def hom_k(t: TwoTermComplex, u, shift: int = 0) -> HomotopyHom:
    if shift not in (-1, 0, 1):
        raise OutOfRange(f"shift {shift} outside -1..1")
    if isinstance(u, Representation):
        return _hom_k_module(t, u, shift)
    alg = t.algebra
    if u.algebra is not alg:
        raise ValueError("complexes over different algebras")
    a_t, a_u = t.alpha, u.alpha
    if shift == 0:
        d1 = _hom_dim(alg, t.minus1, u.minus1)
        d0 = _hom_dim(alg, t.zero, u.zero)
        dc = _hom_dim(alg, t.minus1, u.zero)

        def unpack(v):
            return (_coords(alg, t.minus1, u.minus1, v[:d1]), _coords(alg, t.zero, u.zero, v[d1:]))

        def defect(v):
            f, g = unpack(v)
            return tuple(x - y for x, y in zip(g.compose(a_t).coordinates(), a_u.compose(f).coordinates()))

        n = d1 + d0
        cond = Matrix.from_columns([defect(e) for e in Matrix.identity(n).data], dc) if n else Matrix.zeros(dc, 0)
        cycles = _kernel_of(cond)
        homot = _linear(alg, t.zero, u.minus1,
                        lambda h: chain_pair_vector(h.compose(a_t), a_u.compose(h)), n)
        return _make(t, u, 0, n, cycles, _image_of(homot), unpack)
    if shift == 1:
        n = _hom_dim(alg, t.minus1, u.zero)
        gens = [g.compose(a_t).coordinates() for g in proj_hom_basis(alg, t.zero, u.zero)]
        gens += [a_u.compose(f).coordinates() for f in proj_hom_basis(alg, t.minus1, u.minus1)]
        return _make(t, u, 1, n, Subspace.full(n), Subspace.span(gens, n),
                     lambda v: (_coords(alg, t.minus1, u.zero, v),))
    n = _hom_dim(alg, t.zero, u.minus1)
    out = _hom_dim(alg, t.zero, u.zero) + _hom_dim(alg, t.minus1, u.minus1)
    cond = _linear(alg, t.zero, u.minus1,
                   lambda h: a_u.compose(h).coordinates() + h.compose(a_t).coordinates(), out)
    return _make(t, u, -1, n, _kernel_of(cond), Subspace.zero(n),
                 lambda v: (_coords(alg, t.zero, u.minus1, v),))


def _act(m: Representation, x: Vector, source: str, target: str) -> Matrix:
    """m_source -> m_target, v -> v*x for x in e_source A e_target."""
    return m.block(m.action(x), target, source)


def _module_pullback(t: TwoTermComplex, m: Representation) -> Matrix:
    """Hom(T^0, m) -> Hom(T^-1, m), phi -> phi o alpha, on generator images."""
    offs0 = _offsets(m, t.zero)
    offs1 = _offsets(m, t.minus1)
    n0, n1 = offs0[-1], offs1[-1]
    rows = [[Fraction(0)] * n0 for _ in range(n1)]
    for r, tv in enumerate(t.zero):
        for c, sv in enumerate(t.minus1):
            block = _act(m, t.alpha.entries[r][c], tv, sv)
            for i in range(block.rows):
                for j in range(block.cols):
                    rows[offs1[c] + i][offs0[r] + j] += block[i, j]
    return Matrix(n1, n0, tuple(tuple(r) for r in rows))


def _offsets(m: Representation, summands: Sequence[str]) -> list[int]:
    out = [0]
    for s in summands:
        out.append(out[-1] + m.dim_at(s))
    return out


def _split_vector(m: Representation, summands, v) -> tuple:
    offs = _offsets(m, summands)
    return tuple(tuple(v[offs[i]:offs[i + 1]]) for i in range(len(summands)))


def _hom_k_module(t: TwoTermComplex, m: Representation, shift: int) -> HomotopyHom:
    if m.algebra is not t.algebra:
        raise ValueError("module over a different algebra")
    pull = _module_pullback(t, m)
    if shift == 0:
        return _make(t, m, 0, pull.cols, _kernel_of(pull), Subspace.zero(pull.cols),
                     lambda v: _split_vector(m, t.zero, v))
    if shift == 1:
        return _make(t, m, 1, pull.rows, Subspace.full(pull.rows), _image_of(pull),
                     lambda v: _split_vector(m, t.minus1, v))
    return _make(t, m, -1, 0, Subspace.zero(0), Subspace.zero(0), lambda v: ())


def compose_chain(g: tuple[ProjMap, ProjMap], f: tuple[ProjMap, ProjMap]) -> tuple[ProjMap, ProjMap]:
    return g[0].compose(f[0]), g[1].compose(f[1])


# --- homology ------------------------------------------------------------------

@dataclass(frozen=True)
class NuComplex:
    """nu(T): nu(T^-1) --beta--> nu(T^0), a complex of injectives."""

    minus1: Representation
    zero: Representation
    beta: RepMap


@dataclass(frozen=True)
class HomologyInvariants:
    h0: Representation
    h0_projection: RepMap
    h_minus1_nu: Representation
    h_minus1_nu_inclusion: RepMap
    nu_complex: NuComplex


def homology_invariants(t: TwoTermComplex) -> HomologyInvariants:
    kc = kernel_cokernel(t.diff)
    beta = nakayama_map(t.alpha)
    kn = kernel_cokernel(beta)
    return HomologyInvariants(kc.cokernel, kc.projection, kn.kernel, kn.inclusion,
                              NuComplex(beta.source, beta.target, beta))


# --- decomposition via representations of A (x) k(. -> .) --------------------

_PRODUCT_CACHE: dict[int, tuple[FDAlgebra, FDAlgebra]] = {}


def complex_algebra(alg: FDAlgebra) -> FDAlgebra:
    """Algebra whose modules are morphisms of A-modules (two-term complexes)."""
    hit = _PRODUCT_CACHE.get(id(alg))
    if hit is not None and hit[0] is alg:
        return hit[1]
    q = alg.quiver
    verts = tuple(f"{v}@{d}" for d in (-1, 0) for v in q.vertices)
    arrows = [Arrow(f"{a.name}@{d}", f"{a.source}@{d}", f"{a.target}@{d}") for d in (-1, 0) for a in q.arrows]
    arrows += [Arrow(f"d@{v}", f"{v}@-1", f"{v}@0") for v in q.vertices]
    pq = Quiver(verts, tuple(arrows))
    rels = []
    for d in (-1, 0):
        for rel in alg.relations:
            rels.append(tuple((c, Path(f"{p.start}@{d}", f"{p.end}@{d}", tuple(f"{x}@{d}" for x in p.arrows)))
                              for c, p in rel))
    for a in q.arrows:
        rels.append(((Fraction(1), Path(f"{a.source}@-1", f"{a.target}@0", (f"{a.name}@-1", f"d@{a.target}"))),
                     (Fraction(-1), Path(f"{a.source}@-1", f"{a.target}@0", (f"d@{a.source}", f"{a.name}@0")))))
    prod = assemble_algebra(AlgebraPresentation(pq, tuple(rels)))
    _PRODUCT_CACHE[id(alg)] = (alg, prod)
    return prod


def complex_as_representation(t: TwoTermComplex) -> Representation:
    alg = t.algebra
    prod = complex_algebra(alg)
    diff = t.diff
    src, tgt = diff.source, diff.target
    dims = {f"{v}@-1": src.dim_at(v) for v in alg.vertices}
    dims.update({f"{v}@0": tgt.dim_at(v) for v in alg.vertices})
    maps = []
    for a in prod.quiver.arrows:
        name, deg = a.name.rsplit("@", 1)
        if name == "d":
            maps.append(diff.at(deg))
        else:
            maps.append((src if deg == "-1" else tgt).map(name))
    return Representation(prod, tuple(dims[v] for v in prod.vertices), tuple(maps))


def _degree_part(r: Representation, alg: FDAlgebra, deg: int) -> Representation:
    dims = tuple(r.dim_at(f"{v}@{deg}") for v in alg.vertices)
    return Representation(alg, dims, tuple(r.map(f"{a.name}@{deg}") for a in alg.quiver.arrows))


def _degree_map(f: RepMap, alg: FDAlgebra, deg: int) -> RepMap:
    return RepMap(_degree_part(f.source, alg, deg), _degree_part(f.target, alg, deg),
                  tuple(f.at(f"{v}@{deg}") for v in alg.vertices))


def _inverse(f: RepMap) -> RepMap:
    return RepMap(f.target, f.source, tuple(m.inverse() if m.rows else m.T for m in f.mats))


def _representation_as_complex(r: Representation, alg: FDAlgebra) -> TwoTermComplex:
    """Inverse of complex_as_representation up to isomorphism (terms must be projective)."""
    parts = []
    for deg in (-1, 0):
        part = _degree_part(r, alg, deg)
        pc = projective_cover(part)
        if pc.cover.total_dim != part.total_dim:
            raise ValueError("summand term is not projective")
        parts.append(pc)
    d = RepMap(_degree_part(r, alg, -1), _degree_part(r, alg, 0),
               tuple(r.map(f"d@{v}") for v in alg.vertices))
    core = _inverse(parts[1].epi).compose(d.compose(parts[0].epi))
    return TwoTermComplex(alg, parts[0].summands, parts[1].summands,
                          ProjMap.from_repmap(core, parts[0].summands, parts[1].summands))


def _chain_from_rep_map(f: RepMap, t_src: TwoTermComplex, t_tgt: TwoTermComplex) -> tuple[ProjMap, ProjMap]:
    alg = t_src.algebra
    m1 = _degree_map(f, alg, -1)
    m0 = _degree_map(f, alg, 0)
    m1 = RepMap(realize_projective(alg, t_src.minus1), realize_projective(alg, t_tgt.minus1), m1.mats)
    m0 = RepMap(realize_projective(alg, t_src.zero), realize_projective(alg, t_tgt.zero), m0.mats)
    return (ProjMap.from_repmap(m1, t_src.minus1, t_tgt.minus1),
            ProjMap.from_repmap(m0, t_src.zero, t_tgt.zero))


def is_contractible_piece(r: Representation, alg: FDAlgebra) -> bool:
    """Indecomposable piece P = P (differential an isomorphism)."""
    return all(r.dim_at(f"{v}@-1") == r.dim_at(f"{v}@0") and r.map(f"d@{v}").rank() == r.dim_at(f"{v}@0")
               for v in alg.vertices)


@dataclass(frozen=True)
class ComplexSummand:
    complex: TwoTermComplex
    multiplicity: int
    representation: Representation

    def __iter__(self):
        return iter((self.complex, self.multiplicity))


@dataclass(frozen=True)
class ComplexDecomposition:
    summands: tuple[ComplexSummand, ...]
    contractible: tuple[str, ...]
    # one entry per indecomposable piece (non-contractible), parallel to piece_class
    idempotents: tuple[tuple[ProjMap, ProjMap], ...]
    piece_class: tuple[int, ...]

    def __iter__(self):
        return iter(self.summands)

    def __len__(self):
        return len(self.summands)

    @property
    def count(self) -> int:
        return len(self.summands)


def decompose_complex(t: TwoTermComplex, seed: int | None = None) -> ComplexDecomposition:
    alg = t.algebra
    r = complex_as_representation(t)
    pieces = split_with_maps(r, seed)
    classes: list[list] = []
    contractible: list[str] = []
    idems, owner = [], []
    for p in pieces:
        if is_contractible_piece(p.module, alg):
            contractible.extend(projective_cover(_degree_part(p.module, alg, 0)).summands)
            continue
        for k, cls in enumerate(classes):
            if indecomposables_isomorphic(cls[0], p.module):
                cls[1] += 1
                break
        else:
            classes.append([p.module, 1])
            k = len(classes) - 1
        idems.append(_chain_from_rep_map(p.inclusion.compose(p.projection), t, t))
        owner.append(k)
    order = sorted(range(len(classes)), key=lambda i: signature(classes[i][0]))
    rank = {old: new for new, old in enumerate(order)}
    summands = tuple(ComplexSummand(_representation_as_complex(classes[i][0], alg), classes[i][1], classes[i][0])
                     for i in order)
    return ComplexDecomposition(summands, tuple(sorted(contractible, key=alg.vertices.index)),
                                tuple(idems), tuple(rank[k] for k in owner))


def complexes_isomorphic(t: TwoTermComplex, u: TwoTermComplex, seed: int | None = None) -> bool:
    """Isomorphism in the homotopy category (compares minimal indecomposable summands)."""
    dt, du = decompose_complex(t, seed), decompose_complex(u, seed)
    if len(dt) != len(du):
        return False
    used = set()
    for s in dt:
        for j, w in enumerate(du):
            if j not in used and s.multiplicity == w.multiplicity and \
                    indecomposables_isomorphic(s.representation, w.representation):
                used.add(j)
                break
        else:
            return False
    return True


def same_summands(t: TwoTermComplex, u: TwoTermComplex, seed: int | None = None) -> bool:
    """add(t) = add(u): same indecomposable summands, multiplicities ignored."""
    dt, du = decompose_complex(t, seed), decompose_complex(u, seed)
    match = lambda xs, ys: all(any(indecomposables_isomorphic(x.representation, y.representation) for y in ys)
                               for x in xs)
    return match(dt, du) and match(du, dt)


# --- tilting verdict and torsion pair --------------------------------------------

@dataclass(frozen=True)
class TiltingVerdict:
    presilting_up: bool
    presilting_down: bool
    summand_count: int
    n_vertices: int
    tilting: bool
    reason: str

    def to_dict(self) -> dict:
        return {"presilting_up": self.presilting_up, "presilting_down": self.presilting_down,
                "summand_count": self.summand_count, "n_vertices": self.n_vertices,
                "tilting": self.tilting, "reason": self.reason}


def is_two_term_tilting(t: TwoTermComplex, seed: int | None = None) -> TiltingVerdict:
    up = hom_k(t, t, 1).dim == 0
    down = hom_k(t, t, -1).dim == 0
    count = len(decompose_complex(t, seed))
    n = t.algebra.n_vertices
    reasons = []
    if not up:
        reasons.append("Hom(T, T[1]) != 0")
    if not down:
        reasons.append("Hom(T, T[-1]) != 0")
    if count != n:
        reasons.append(f"summand count {count} {'<' if count < n else '>'} {n}")
    ok = up and down and count == n
    return TiltingVerdict(up, down, count, n, ok, "; ".join(reasons) or "ok")


@dataclass(frozen=True)
class TorsionMembership:
    in_t: bool
    in_f: bool


def torsion_pair_membership(t: TwoTermComplex, m: Representation) -> TorsionMembership:
    return TorsionMembership(hom_k(t, m, 1).dim == 0, hom_k(t, m, 0).dim == 0)


# --- Hom_K(A, T) as a right module ------------------------------------------------

def left_multiplication(alg: FDAlgebra, a: Vector) -> ProjMap:
    """lambda_a on the regular module, summands in vertex order."""
    vs = alg.vertices
    rows = tuple(tuple(alg.from_corner(alg.corner(a, r, c), r, c) for c in vs) for r in vs)
    return ProjMap(alg, vs, vs, rows)


def representation_from_action(alg: FDAlgebra, dim: int,
                               act: Callable[[Vector], Matrix]) -> tuple[Representation, dict]:
    """Right module on k^dim where act(x) is the matrix of v -> v*x."""
    spaces = {v: _image_of(act(alg.vertex_idempotent(v))) for v in alg.vertices}
    maps = []
    for a in alg.quiver.arrows:
        mat = act(alg.arrow_element(a.name))
        src, tgt = spaces[a.source], spaces[a.target]
        cols = [tgt.coords(mat.apply(b)) for b in src.vectors]
        assert all(c is not None for c in cols)
        maps.append(Matrix.from_columns(cols, tgt.dim) if cols else Matrix.zeros(tgt.dim, 0))
    return Representation(alg, tuple(spaces[v].dim for v in alg.vertices), tuple(maps)), spaces


@dataclass(frozen=True)
class StalkHom:
    """Hom_K(A, T) with its right A-action, and the comparison map to H^0(T)."""

    hom: HomotopyHom
    module: Representation
    spaces: dict
    to_h0: RepMap


def hom_from_regular(t: TwoTermComplex) -> StalkHom:
    alg = t.algebra
    a = TwoTermComplex.stalk(alg)
    hom = hom_k(a, t, 0)
    vs = alg.vertices
    d1 = _hom_dim(alg, (), t.minus1)

    def act(x: Vector) -> Matrix:
        lam = left_multiplication(alg, x)
        cols = []
        for lift in hom.quotient.lifts:
            phi0 = _coords(alg, vs, t.zero, lift[d1:])
            cols.append(hom.coords(chain_pair_vector(ProjMap.zero(alg, (), t.minus1), phi0.compose(lam))))
        return Matrix.from_columns(cols, hom.dim) if cols else Matrix.zeros(hom.dim, 0)

    module, spaces = representation_from_action(alg, hom.dim, act)
    # phi -> class of phi(1) in Cok alpha, vertexwise
    inv = homology_invariants(t)
    realized = realize_projective(alg, t.zero)
    mats = []
    for v in vs:
        cols = []
        for b in spaces[v].vectors:
            phi0 = _coords(alg, vs, t.zero, hom.lift(b)[d1:])
            # phi(e_v) sits in T^0 at vertex v
            image = []
            for r, s in enumerate(t.zero):
                image.extend(alg.corner(phi0.entries[r][vs.index(v)], s, v))
            cols.append(inv.h0_projection.at(v).apply(tuple(image)))
        mats.append(Matrix.from_columns(cols, inv.h0.dim_at(v)) if cols else Matrix.zeros(inv.h0.dim_at(v), 0))
    assert realized.dim_at(vs[0]) == inv.h0_projection.source.dim_at(vs[0])
    return StalkHom(hom, module, spaces, RepMap(module, inv.h0, tuple(mats)))


# --- endomorphism algebra B -------------------------------------------------------

@dataclass(frozen=True)
class EndAlgebra:
    complex: TwoTermComplex
    hom: HomotopyHom
    algebra: Algebra
    decomposition: ComplexDecomposition
    idempotents: tuple[Vector, ...]
    vertex_names: tuple[str, ...]
    basic: bool
    as_fdalgebra: FDAlgebra
    to_fd: Matrix
    corner_basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis(self) -> list:
        return self.hom.basis

    @property
    def structure_constants(self):
        return self.algebra.table

    def element_of(self, chain: tuple[ProjMap, ProjMap]) -> Vector:
        return self.hom.coords(chain_pair_vector(*chain))

    def chain_of(self, x: Sequence) -> tuple[ProjMap, ProjMap]:
        return self.hom.unpack(self.hom.lift(x))

    def quiver_report(self) -> dict:
        q = self.as_fdalgebra.quiver
        return {"vertices": list(q.vertices),
                "arrows": [[a.name, a.source, a.target] for a in q.arrows],
                "relations": len(self.as_fdalgebra.relations)}


def end_algebra(t: TwoTermComplex, seed: int | None = None,
                names: Sequence[str] | None = None) -> EndAlgebra:
    """B = End_K(t) with product phi*psi = phi o psi, so e_i B e_j = Hom(T_j, T_i)."""
    hom = hom_k(t, t, 0)
    n = hom.dim
    reps = hom.basis
    table = [[hom.coords(chain_pair_vector(*compose_chain(f, g))) for g in reps] for f in reps]
    one = hom.coords(chain_pair_vector(ProjMap.identity(t.algebra, t.minus1),
                                       ProjMap.identity(t.algebra, t.zero)))
    b = Algebra([f"b{i}" for i in range(n)], table, one)
    dec = decompose_complex(t, seed)
    k = len(dec)
    names = tuple(names) if names is not None else tuple(str(i + 1) for i in range(k))
    if len(names) != k:
        raise ValueError("one vertex name per indecomposable summand is required")
    piece_idems = [hom.coords(chain_pair_vector(*e)) for e in dec.idempotents]
    # one idempotent per class
    chosen = []
    for c in range(k):
        chosen.append(piece_idems[dec.piece_class.index(c)])
    basic = all(s.multiplicity == 1 for s in dec.summands)
    if basic:
        corner, cbasis, idems = b, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), chosen
    else:
        corner, cbasis, idems = _corner_algebra(b, chosen)
    fd, to_fd = gabriel_presentation(corner, list(zip(names, idems)))
    return EndAlgebra(t, hom, b, dec, tuple(chosen), names, basic, fd, to_fd, cbasis)


def _corner_algebra(b: Algebra, idems: Sequence[Vector]) -> tuple[Algebra, tuple, list]:
    """eBe for e the sum of the given orthogonal idempotents, in its own coordinates."""
    n = b.dim
    e = zero_vec(n)
    for x in idems:
        e = tuple(p + q for p, q in zip(e, x))
    space = Subspace.span((b.mul(b.mul(e, b.basis_vector(i)), e) for i in range(n)), n)
    cb = space.vectors
    table = [[space.coords(b.mul(x, y)) for y in cb] for x in cb]
    corner = Algebra([f"c{i}" for i in range(len(cb))], table, space.coords(e))
    return corner, tuple(cb), [space.coords(x) for x in idems]


def ideal_in_b(e: EndAlgebra, space: Subspace) -> TwoSidedIdeal:
    return TwoSidedIdeal(e.algebra, space)


def gen_in_t(t: TwoTermComplex, m: Representation) -> bool:
    return gen_cog_membership(homology_invariants(t).h0, m, "gen")


def cog_in_f(t: TwoTermComplex, m: Representation) -> bool:
    return gen_cog_membership(homology_invariants(t).h_minus1_nu, m, "cog")


def regular_stalk_check(t: TwoTermComplex) -> bool:
    """Hom_K(A, T) is isomorphic to H^0(T) through phi -> [phi(1)]."""
    sh = hom_from_regular(t)
    f = sh.to_h0
    return f.is_homomorphism() and f.is_iso()


__all__ = [
    "OutOfRange", "TwoTermComplex", "HomotopyHom", "NuComplex", "HomologyInvariants", "ComplexSummand",
    "ComplexDecomposition", "TiltingVerdict", "TorsionMembership", "StalkHom", "EndAlgebra",
    "complex_sum", "hom_k", "compose_chain", "chain_pair_vector", "homology_invariants", "complex_algebra",
    "complex_as_representation", "decompose_complex", "complexes_isomorphic", "same_summands",
    "is_two_term_tilting", "torsion_pair_membership", "left_multiplication", "representation_from_action",
    "hom_from_regular", "end_algebra", "gen_in_t", "cog_in_f", "regular_stalk_check", "canonical_modules",
]
