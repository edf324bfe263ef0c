"""Right modules as quiver representations, and maps between them.

Convention: the matrix of an arrow ``a: u -> w`` maps the space at ``u`` to the
space at ``w`` (shape ``dims[w] x dims[u]``) and acts on column vectors, so a
path ``a1*a2*...*ak`` acts on ``M_u`` by ``M_ak @ ... @ M_a1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..exactla import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    block_diag,
    is_zero_vec,
    subspace_calc,
    vec,
)
from ..quiveralg import FDAlgebra, Path


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    algebra: FDAlgebra
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        q = self.algebra.quiver
        if len(self.dims) != len(q.vertices) or len(self.maps) != len(q.arrows):
            raise CategoryError("representation shape does not match the quiver")
        for a, m in zip(q.arrows, self.maps):
            if m.shape != (self.dim_at(a.target), self.dim_at(a.source)):
                raise CategoryError(f"matrix for arrow {a.name} has shape {m.shape}")

    @classmethod
    def build(cls, algebra: FDAlgebra, dims: dict[str, int] | Sequence[int],
              maps: dict[str, Sequence[Sequence]] | None = None) -> Representation:
        """Convenience constructor; unspecified arrows get zero maps."""
        q = algebra.quiver
        if isinstance(dims, dict):
            dims = tuple(dims.get(v, 0) for v in q.vertices)
        dims = tuple(dims)
        maps = maps or {}
        mats = []
        for a in q.arrows:
            r, c = dims[q.vertex_index(a.target)], dims[q.vertex_index(a.source)]
            if a.name in maps:
                mats.append(Matrix.from_rows(maps[a.name], c) if r else Matrix.zeros(0, c))
            else:
                mats.append(Matrix.zeros(r, c))
        return cls(algebra, dims, tuple(mats))

    @property
    def arrow_maps(self) -> dict[str, Matrix]:
        return {a.name: m for a, m in zip(self.algebra.quiver.arrows, self.maps)}

    def dim_at(self, v: str) -> int:
        return self.dims[self.algebra.quiver.vertex_index(v)]

    def map(self, arrow: str) -> Matrix:
        return self.maps[[a.name for a in self.algebra.quiver.arrows].index(arrow)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    @cached_property
    def offsets(self) -> dict[str, int]:
        out, k = {}, 0
        for v, d in zip(self.algebra.vertices, self.dims):
            out[v] = k
            k += d
        return out

    def path_matrix(self, p: Path) -> Matrix:
        """Action of a path, as a map from the space at p.start to the space at p.end."""
        m = Matrix.identity(self.dim_at(p.start))
        for name in p.arrows:
            m = self.map(name) @ m
        return m

    def action(self, x: Sequence[Fraction]) -> Matrix:
        """Total-space matrix of m -> m*x."""
        n = self.total_dim
        rows = [[ZERO] * n for _ in range(n)]
        for c, p in zip(x, self.algebra.basis):
            if not c:
                continue
            block = self.path_matrix(p)
            r0, c0 = self.offsets[p.end], self.offsets[p.start]
            for i, row in enumerate(block.data):
                for j, val in enumerate(row):
                    if val:
                        rows[r0 + i][c0 + j] += c * val
        return Matrix.from_rows(rows, n)

    def block(self, total: Matrix, target: str, source: str) -> Matrix:
        r0, c0 = self.offsets[target], self.offsets[source]
        return total.submatrix(range(r0, r0 + self.dim_at(target)), range(c0, c0 + self.dim_at(source)))

    def satisfies_relations(self) -> bool:
        for rel in self.algebra.relations:
            p0 = rel[0][1]
            acc = Matrix.zeros(self.dim_at(p0.end), self.dim_at(p0.start))
            for c, p in rel:
                acc = acc + self.path_matrix(p).scale(c)
            if not acc.is_zero():
                return False
        return True

    def dimension_vector(self) -> tuple[int, ...]:
        return self.dims

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


@dataclass(frozen=True)
class RepMap:
    source: Representation
    target: Representation
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise CategoryError("maps must stay over one algebra")
        for v, m in zip(self.source.algebra.vertices, self.mats):
            if m.shape != (self.target.dim_at(v), self.source.dim_at(v)):
                raise CategoryError(f"vertex {v}: matrix shape {m.shape}")

    @property
    def vertex_mats(self) -> dict[str, Matrix]:
        return dict(zip(self.source.algebra.vertices, self.mats))

    def at(self, v: str) -> Matrix:
        return self.mats[self.source.algebra.quiver.vertex_index(v)]

    def is_homomorphism(self) -> bool:
        for a in self.source.algebra.quiver.arrows:
            if self.target.map(a.name) @ self.at(a.source) != self.at(a.target) @ self.source.map(a.name):
                return False
        return True

    def total(self) -> Matrix:
        return block_diag(self.mats)

    def compose(self, first: RepMap) -> RepMap:
        """self o first."""
        if first.target != self.source:
            raise CategoryError("maps do not compose")
        return RepMap(first.source, self.target, tuple(g @ f for g, f in zip(self.mats, first.mats)))

    def __add__(self, other: RepMap) -> RepMap:
        return RepMap(self.source, self.target, tuple(f + g for f, g in zip(self.mats, other.mats)))

    def scale(self, c) -> RepMap:
        return RepMap(self.source, self.target, tuple(m.scale(c) for m in self.mats))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def rank(self) -> int:
        return sum(m.rank() for m in self.mats)

    def is_mono(self) -> bool:
        return self.rank() == self.source.total_dim

    def is_epi(self) -> bool:
        return self.rank() == self.target.total_dim

    def is_iso(self) -> bool:
        return self.is_mono() and self.is_epi()

    def flatten(self) -> Vector:
        return tuple(x for m in self.mats for x in m.flatten())


def zero_map(m: Representation, n: Representation) -> RepMap:
    return RepMap(m, n, tuple(Matrix.zeros(n.dim_at(v), m.dim_at(v)) for v in m.algebra.vertices))


def identity_map(m: Representation) -> RepMap:
    return RepMap(m, m, tuple(Matrix.identity(d) for d in m.dims))


def linear_combination(coeffs: Sequence, maps: Sequence[RepMap], source: Representation,
                       target: Representation) -> RepMap:
    mats = []
    for k, v in enumerate(source.algebra.vertices):
        r, c = target.dim_at(v), source.dim_at(v)
        acc = [[ZERO] * c for _ in range(r)]
        for coef, f in zip(coeffs, maps):
            if not coef:
                continue
            for i, row in enumerate(f.mats[k].data):
                out = acc[i]
                for j, x in enumerate(row):
                    if x:
                        out[j] += coef * x
        mats.append(Matrix(r, c, tuple(tuple(row) for row in acc)))
    return RepMap(source, target, tuple(mats))


def zero_representation(algebra: FDAlgebra) -> Representation:
    return Representation.build(algebra, [0] * algebra.n_vertices)


def direct_sum(reps: Sequence[Representation], algebra: FDAlgebra | None = None) -> Representation:
    if not reps:
        if algebra is None:
            raise CategoryError("empty direct sum needs an algebra")
        return zero_representation(algebra)
    alg = reps[0].algebra
    if any(r.algebra is not alg for r in reps):
        raise CategoryError("summands over different algebras")
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(alg.n_vertices))
    maps = tuple(block_diag([r.maps[k] for r in reps]) for k in range(len(alg.quiver.arrows)))
    return Representation(alg, dims, maps)


def sum_injections(reps: Sequence[Representation]) -> tuple[Representation, list[RepMap], list[RepMap]]:
    """Direct sum with its canonical inclusions and projections."""
    total = direct_sum(reps)
    incs, projs = [], []
    offs = [0] * total.algebra.n_vertices
    for r in reps:
        inc, proj = [], []
        for i, v in enumerate(total.algebra.vertices):
            d, D = r.dims[i], total.dims[i]
            rows = [[Fraction(1) if (k == offs[i] + j) else ZERO for j in range(d)] for k in range(D)]
            m = Matrix.from_rows(rows, d) if D else Matrix.zeros(0, d)
            inc.append(m)
            proj.append(m.T)
            offs[i] += d
        incs.append(RepMap(r, total, tuple(inc)))
        projs.append(RepMap(total, r, tuple(proj)))
    return total, incs, projs


def hom_space(m: Representation, n: Representation) -> list[RepMap]:
    """Basis of Hom_A(m, n) from the commutation equations."""
    if m.algebra is not n.algebra:
        raise CategoryError("Hom between modules over different algebras")
    alg = m.algebra
    q = alg.quiver
    offs, k = {}, 0
    for v in alg.vertices:
        offs[v] = k
        k += n.dim_at(v) * m.dim_at(v)
    nunk = k
    if nunk == 0:
        return []
    rows = []
    for a in q.arrows:
        u, w = a.source, a.target
        na, ma = n.map(a.name), m.map(a.name)
        mu, nw, mw, nu = m.dim_at(u), n.dim_at(w), m.dim_at(w), n.dim_at(u)
        # (N_a X_u - X_w M_a)[i][j] = 0
        for i in range(nw):
            for j in range(mu):
                row = [ZERO] * nunk
                for kk in range(nu):
                    c = na[i, kk]
                    if c:
                        row[offs[u] + kk * mu + j] += c
                for kk in range(mw):
                    c = ma[kk, j]
                    if c:
                        row[offs[w] + i * mw + kk] -= c
                if any(row):
                    rows.append(row)
    kernel = Matrix.from_rows(rows, nunk).kernel() if rows else Subspace.full(nunk)
    return [_unflatten_map(m, n, v, offs) for v in kernel.vectors]


def _unflatten_map(m: Representation, n: Representation, v: Vector, offs: dict[str, int]) -> RepMap:
    mats = []
    for w in m.algebra.vertices:
        r, c = n.dim_at(w), m.dim_at(w)
        mats.append(Matrix.unflatten(v[offs[w]:offs[w] + r * c], r, c))
    return RepMap(m, n, tuple(mats))


def subrepresentation(m: Representation, spaces: dict[str, Subspace]) -> tuple[Representation, RepMap]:
    """Submodule with the given vertex spaces (checked to be invariant), and its inclusion."""
    alg = m.algebra
    maps = []
    for a in alg.quiver.arrows:
        src, tgt = spaces[a.source], spaces[a.target]
        cols = []
        for b in src.vectors:
            image = m.map(a.name).apply(b)
            c = tgt.coords(image)
            if c is None:
                raise CategoryError(f"subspaces are not invariant under arrow {a.name}")
            cols.append(c)
        maps.append(Matrix.from_columns(cols, tgt.dim) if cols else Matrix.zeros(tgt.dim, 0))
    sub = Representation(alg, tuple(spaces[v].dim for v in alg.vertices), tuple(maps))
    inc = RepMap(sub, m, tuple(
        Matrix.from_columns(spaces[v].vectors, m.dim_at(v)) if spaces[v].dim else Matrix.zeros(m.dim_at(v), 0)
        for v in alg.vertices))
    return sub, inc


def quotient_representation(m: Representation, spaces: dict[str, Subspace]) -> tuple[Representation, RepMap]:
    """m modulo the invariant subspaces, and the projection."""
    alg = m.algebra
    qcs = {v: subspace_calc(Subspace.full(m.dim_at(v)), spaces[v], "quotient_coords") for v in alg.vertices}
    maps = []
    for a in alg.quiver.arrows:
        qs, qt = qcs[a.source], qcs[a.target]
        cols = [qt(m.map(a.name).apply(l)) for l in qs.lifts]
        maps.append(Matrix.from_columns(cols, qt.rank) if cols else Matrix.zeros(qt.rank, 0))
        for b in spaces[a.source].vectors:
            if m.map(a.name).apply(b) not in spaces[a.target]:
                raise CategoryError(f"subspaces are not invariant under arrow {a.name}")
    quo = Representation(alg, tuple(qcs[v].rank for v in alg.vertices), tuple(maps))
    proj = RepMap(m, quo, tuple(qcs[v].matrix for v in alg.vertices))
    return quo, proj


@dataclass(frozen=True)
class KernelCokernel:
    kernel: Representation
    inclusion: RepMap
    cokernel: Representation
    projection: RepMap
    image: Representation
    image_inclusion: RepMap


def kernel_cokernel(f: RepMap) -> KernelCokernel:
    alg = f.source.algebra
    kers = {v: f.at(v).kernel() for v in alg.vertices}
    ims = {v: f.at(v).image() for v in alg.vertices}
    for v in alg.vertices:
        assert kers[v].dim + ims[v].dim == f.source.dim_at(v)
    k, inc = subrepresentation(f.source, kers)
    c, proj = quotient_representation(f.target, ims)
    i, iinc = subrepresentation(f.target, ims)
    return KernelCokernel(k, inc, c, proj, i, iinc)


def image_of_maps(maps: Sequence[RepMap], target: Representation) -> dict[str, Subspace]:
    """Vertexwise sum of images (the trace of the sources in target)."""
    out = {}
    for v in target.algebra.vertices:
        vecs = [col for f in maps for col in f.at(v).columns()]
        out[v] = Subspace.span(vecs, target.dim_at(v))
    return out


def radical_spaces(m: Representation) -> dict[str, Subspace]:
    alg = m.algebra
    out = {}
    for v in alg.vertices:
        vecs = []
        for a in alg.quiver.arrows:
            if a.target == v:
                vecs.extend(m.map(a.name).columns())
        out[v] = Subspace.span(vecs, m.dim_at(v))
    return out


def socle_spaces(m: Representation) -> dict[str, Subspace]:
    alg = m.algebra
    out = {}
    for v in alg.vertices:
        outgoing = [m.map(a.name) for a in alg.quiver.arrows if a.source == v]
        if outgoing:
            stacked = outgoing[0]
            for o in outgoing[1:]:
                stacked = stacked.vstack(o)
            out[v] = stacked.kernel()
        else:
            out[v] = Subspace.full(m.dim_at(v))
    return out


def top_dims(m: Representation) -> tuple[int, ...]:
    rad = radical_spaces(m)
    return tuple(m.dim_at(v) - rad[v].dim for v in m.algebra.vertices)


def socle_dims(m: Representation) -> tuple[int, ...]:
    soc = socle_spaces(m)
    return tuple(soc[v].dim for v in m.algebra.vertices)


def dual(x):
    """Vector-space duality D, landing over the opposite algebra."""
    if isinstance(x, Representation):
        return Representation(x.algebra.opposite, x.dims, tuple(m.T for m in x.maps))
    if isinstance(x, RepMap):
        return RepMap(dual(x.target), dual(x.source), tuple(m.T for m in x.mats))
    raise TypeError(f"cannot dualize {type(x).__name__}")


# --- canonical modules -------------------------------------------------------

def projective(algebra: FDAlgebra, v: str) -> Representation:
    """e_v A with basis the paths starting at v."""
    return realize_projective(algebra, (v,))


def injective(algebra: FDAlgebra, v: str) -> Representation:
    """D(A e_v), realized as the dual of the opposite algebra's projective."""
    return dual(projective(algebra.opposite, v))


def simple(algebra: FDAlgebra, v: str) -> Representation:
    return Representation.build(algebra, {v: 1})


def realize_projective(algebra: FDAlgebra, summands: Sequence[str]) -> Representation:
    """Direct sum of e_v A over the listed vertices, in the listed order."""
    q = algebra.quiver
    dims = tuple(sum(len(algebra.paths_between(s, v)) for s in summands) for v in q.vertices)
    maps = []
    for a in q.arrows:
        blocks = []
        for s in summands:
            src = algebra.paths_between(s, a.source)
            tgt = algebra.paths_between(s, a.target)
            cols = [algebra.corner(algebra.table[p][algebra.arrow_basis_index[a.name]], s, a.target)
                    for p in src]
            blocks.append(Matrix.from_columns(cols, len(tgt)) if cols else Matrix.zeros(len(tgt), 0))
        maps.append(block_diag(blocks) if blocks else
                    Matrix.zeros(dims[q.vertex_index(a.target)], dims[q.vertex_index(a.source)]))
    return Representation(algebra, dims, tuple(maps))


@dataclass(frozen=True)
class CanonicalModules:
    projectives: dict[str, Representation]
    injectives: dict[str, Representation]
    simples: dict[str, Representation]
    regular: Representation
    coregular: Representation


def canonical_modules(algebra: FDAlgebra) -> CanonicalModules:
    vs = algebra.vertices
    return CanonicalModules(
        {v: projective(algebra, v) for v in vs},
        {v: injective(algebra, v) for v in vs},
        {v: simple(algebra, v) for v in vs},
        realize_projective(algebra, vs),
        dual(realize_projective(algebra.opposite, vs)),
    )


# --- maps between projectives as matrices of algebra elements ---------------

@dataclass(frozen=True)
class ProjMap:
    """Map from the sum of e_s A (s in source) to the sum of e_t A (t in target).

    ``entries[r][c]`` is an element of e_{target[r]} A e_{source[c]} acting by
    left multiplication.
    """

    algebra: FDAlgebra
    source: tuple[str, ...]
    target: tuple[str, ...]
    entries: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        alg = self.algebra
        if len(self.entries) != len(self.target) or any(len(r) != len(self.source) for r in self.entries):
            raise CategoryError("entry matrix shape does not match the summand lists")
        for t, row in zip(self.target, self.entries):
            for s, x in zip(self.source, row):
                allowed = set(alg.paths_between(t, s))
                if any(c and i not in allowed for i, c in enumerate(x)):
                    raise CategoryError(f"entry is not in e_{t} A e_{s}")

    @classmethod
    def zero(cls, algebra: FDAlgebra, source: Sequence[str], target: Sequence[str]) -> ProjMap:
        z = algebra.zero()
        return cls(algebra, tuple(source), tuple(target), tuple(tuple(z for _ in source) for _ in target))

    @classmethod
    def identity(cls, algebra: FDAlgebra, summands: Sequence[str]) -> ProjMap:
        z = algebra.zero()
        rows = tuple(tuple(algebra.vertex_idempotent(s) if i == j else z for j in range(len(summands)))
                     for i, s in enumerate(summands))
        return cls(algebra, tuple(summands), tuple(summands), rows)

    def compose(self, first: ProjMap) -> ProjMap:
        """self o first."""
        if first.target != self.source:
            raise CategoryError("projective maps do not compose")
        alg = self.algebra
        rows = []
        for r in range(len(self.target)):
            row = []
            for c in range(len(first.source)):
                acc = alg.zero()
                for k in range(len(self.source)):
                    x, y = self.entries[r][k], first.entries[k][c]
                    if any(x) and any(y):
                        acc = tuple(a + b for a, b in zip(acc, alg.mul(x, y)))
                row.append(acc)
            rows.append(tuple(row))
        return ProjMap(alg, first.source, self.target, tuple(rows))

    def __add__(self, other: ProjMap) -> ProjMap:
        return ProjMap(self.algebra, self.source, self.target, tuple(
            tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)))

    def scale(self, c) -> ProjMap:
        c = Fraction(c)
        return ProjMap(self.algebra, self.source, self.target, tuple(
            tuple(tuple(c * a for a in x) for x in r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(is_zero_vec(x) for r in self.entries for x in r)

    def coordinates(self) -> Vector:
        """Coordinates in the basis returned by ``proj_hom_basis``."""
        alg = self.algebra
        out = []
        for t, row in zip(self.target, self.entries):
            for s, x in zip(self.source, row):
                out.extend(x[i] for i in alg.paths_between(t, s))
        return tuple(out)

    @classmethod
    def from_coordinates(cls, algebra: FDAlgebra, source: Sequence[str], target: Sequence[str],
                         coords: Sequence) -> ProjMap:
        coords = vec(coords)
        rows, k = [], 0
        for t in target:
            row = []
            for s in source:
                idx = algebra.paths_between(t, s)
                row.append(algebra.from_corner(coords[k:k + len(idx)], t, s))
                k += len(idx)
            rows.append(tuple(row))
        if k != len(coords):
            raise CategoryError("coordinate vector has the wrong length")
        return cls(algebra, tuple(source), tuple(target), tuple(rows))

    def transpose_op(self) -> ProjMap:
        """The same entries read in the opposite algebra: a map target -> source there."""
        return ProjMap(self.algebra.opposite, self.target, self.source,
                       tuple(tuple(self.entries[r][c] for r in range(len(self.target)))
                             for c in range(len(self.source))))

    def realize(self) -> RepMap:
        alg = self.algebra
        src = realize_projective(alg, self.source)
        tgt = realize_projective(alg, self.target)
        mats = []
        for v in alg.vertices:
            cols = []
            for c, s in enumerate(self.source):
                for p in alg.paths_between(s, v):
                    pv = alg.basis_vector(p)
                    col = []
                    for r, t in enumerate(self.target):
                        col.extend(alg.corner(alg.mul(self.entries[r][c], pv), t, v))
                    cols.append(col)
            mats.append(Matrix.from_columns(cols, tgt.dim_at(v)) if cols else Matrix.zeros(tgt.dim_at(v), 0))
        return RepMap(src, tgt, tuple(mats))

    @classmethod
    def from_repmap(cls, f: RepMap, source: Sequence[str], target: Sequence[str]) -> ProjMap:
        """Read a map between realized projectives back as a matrix of algebra elements."""
        alg = f.source.algebra
        rows = [[None] * len(source) for _ in target]
        start = {}
        for c, s in enumerate(source):
            # position of the generator e_s inside the realized source at vertex s
            pos = sum(len(alg.paths_between(s2, s)) for s2 in source[:c])
            pos += alg.paths_between(s, s).index(alg.vertex_basis_index[s])
            image = f.at(s).column(pos)
            k = 0
            for r, t in enumerate(target):
                n = len(alg.paths_between(t, s))
                rows[r][c] = alg.from_corner(image[k:k + n], t, s)
                k += n
            start[c] = pos
        return cls(alg, tuple(source), tuple(target), tuple(tuple(r) for r in rows))


def proj_hom_basis(algebra: FDAlgebra, source: Sequence[str], target: Sequence[str]) -> list[ProjMap]:
    n = sum(len(algebra.paths_between(t, s)) for t in target for s in source)
    out = []
    for i in range(n):
        coords = [ZERO] * n
        coords[i] = Fraction(1)
        out.append(ProjMap.from_coordinates(algebra, source, target, coords))
    return out


def nakayama_map(f: ProjMap) -> RepMap:
    """nu(f) = D Hom(f, A), a map between realized injectives."""
    return dual(f.transpose_op().realize())


def nakayama_inverse_map(g: RepMap, source: Sequence[str], target: Sequence[str]) -> ProjMap:
    """Projective map F with nu(F) = g, for g between the realized injective sums."""
    op_map = ProjMap.from_repmap(dual(g), target, source)
    return op_map.transpose_op()


def map_from_generators(summands: Sequence[str], images: Sequence[Vector], m: Representation) -> RepMap:
    """Map from the realized sum of e_s A to m sending each generator e_s to images[i] in m_s."""
    alg = m.algebra
    src = realize_projective(alg, summands)
    mats = []
    for w in alg.vertices:
        cols = [m.path_matrix(alg.basis[i]).apply(g)
                for s, g in zip(summands, images) for i in alg.paths_between(s, w)]
        mats.append(Matrix.from_columns(cols, m.dim_at(w)) if cols else Matrix.zeros(m.dim_at(w), 0))
    return RepMap(src, m, tuple(mats))
