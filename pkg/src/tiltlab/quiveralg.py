"""Quivers, path algebras with relations, and finite-dimensional algebras.

Paths compose left to right: ``p*q`` traverses ``p`` and then ``q``, so an
arrow ``a: i -> j`` lies in ``e_i A e_j``.  Every ``FDAlgebra`` carries a
quiver and a basis made of paths in that quiver; algebras that arise without
a presentation (factor algebras, endomorphism algebras) get one recomputed by
``gabriel_presentation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exactla import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    is_zero_vec,
    subspace_calc,
    unit_vec,
    vadd,
    vec,
    vscale,
    zero_vec,
)


class NotFiniteDimensional(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        names = list(self.vertices) + [a.name for a in self.arrows]
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex name")
        if len(set(names)) != len(names):
            raise PresentationError("arrow names must be unique and distinct from vertices")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise PresentationError(f"arrow {a.name} uses an undeclared vertex")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def reversed(self) -> Quiver:
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.arrows],
        }


@dataclass(frozen=True)
class Path:
    start: str
    end: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def label(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.start}"

    def __str__(self) -> str:
        return self.label

    def reversed(self) -> Path:
        return Path(self.end, self.start, tuple(reversed(self.arrows)))


def path_from_word(quiver: Quiver, word: Sequence[str]) -> Path:
    if not word:
        raise PresentationError("empty arrow word")
    arrows = [quiver.arrow_map.get(w) for w in word]
    for w, a in zip(word, arrows):
        if a is None:
            raise PresentationError(f"unknown arrow {w!r}")
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise PresentationError(f"arrows {a.name} and {b.name} do not compose")
    return Path(arrows[0].source, arrows[-1].target, tuple(word))


def concat(p: Path, q: Path) -> Path | None:
    if p.end != q.start:
        return None
    return Path(p.start, q.end, p.arrows + q.arrows)


# A relation is a rational combination of parallel paths.
Relation = tuple[tuple[Fraction, Path], ...]


def relation_str(rel: Relation) -> str:
    parts = []
    for c, p in rel:
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c)}*{p.label}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        for rel in self.relations:
            if not rel:
                raise PresentationError("empty relation")
            ends = {(p.start, p.end) for _, p in rel}
            if len(ends) != 1:
                raise PresentationError(f"relation {relation_str(rel)} is not parallel")
            for _, p in rel:
                if p.length < 2:
                    raise PresentationError(f"relation {relation_str(rel)} has a path of length < 2")
                path_from_word(self.quiver, p.arrows)

    def opposite(self) -> AlgebraPresentation:
        return AlgebraPresentation(
            self.quiver.reversed(),
            tuple(tuple((c, p.reversed()) for c, p in rel) for rel in self.relations),
        )


class Algebra:
    """Finite-dimensional algebra given by structure constants.

    ``table[i][j]`` holds the coordinates of ``b_i * b_j``.
    """

    def __init__(self, labels: Sequence[str], table, unit: Sequence):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.table = tuple(tuple(vec(x) for x in row) for row in table)
        self.unit = vec(unit)
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise ValueError("structure constant table has the wrong shape")
        self._nz = [[[(k, c) for k, c in enumerate(self.table[i][j]) if c]
                     for j in range(self.dim)] for i in range(self.dim)]

    def mul(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self._nz[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return tuple(out)

    def basis_vector(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def zero(self) -> Vector:
        return zero_vec(self.dim)

    def left_matrix(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of y -> x*y on coordinate columns."""
        return Matrix.from_columns([self.mul(x, self.basis_vector(j)) for j in range(self.dim)], self.dim)

    def right_matrix(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of y -> y*x on coordinate columns."""
        return Matrix.from_columns([self.mul(self.basis_vector(j), x) for j in range(self.dim)], self.dim)

    def check_associative(self) -> bool:
        b = [self.basis_vector(i) for i in range(self.dim)]
        for x in b:
            for y in b:
                xy = self.mul(x, y)
                for z in b:
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)):
                        return False
        return True

    def check_unit(self) -> bool:
        return all(self.mul(self.unit, self.basis_vector(i)) == self.basis_vector(i)
                   and self.mul(self.basis_vector(i), self.unit) == self.basis_vector(i)
                   for i in range(self.dim))

    @cached_property
    def radical(self) -> Subspace:
        """Jacobson radical via the trace form (valid in characteristic zero)."""
        n = self.dim
        if n == 0:
            return Subspace.zero(0)
        traces = [self.left_matrix(self.basis_vector(k)).trace() for k in range(n)]
        gram = Matrix.from_rows(
            [[sum((c * traces[k] for k, c in self._nz[i][j]), ZERO) for i in range(n)]
             for j in range(n)], n)
        return gram.kernel()

    def product_space(self, u: Subspace, v: Subspace) -> Subspace:
        return Subspace.span((self.mul(x, y) for x in u.vectors for y in v.vectors), self.dim)

    def ideal_closure(self, gens: Iterable[Sequence]) -> Subspace:
        """Smallest two-sided ideal containing gens."""
        n = self.dim
        space = Subspace.span(gens, n)
        b = [self.basis_vector(i) for i in range(n)]
        while True:
            new = list(space.vectors)
            for x in space.vectors:
                for y in b:
                    new.append(self.mul(x, y))
                    new.append(self.mul(y, x))
            nxt = Subspace.span(new, n)
            if nxt == space:
                return space
            space = nxt

    def is_two_sided(self, space: Subspace) -> bool:
        for x in space.vectors:
            for i in range(self.dim):
                b = self.basis_vector(i)
                if self.mul(x, b) not in space or self.mul(b, x) not in space:
                    return False
        return True

    def loewy_length(self) -> int:
        rad = self.radical
        power = Subspace.full(self.dim)
        k = 0
        while power.dim:
            power = self.product_space(power, rad) if k else rad
            k += 1
        return k

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


def path_key(quiver: Quiver, p: Path) -> tuple:
    arrow_pos = {a.name: i for i, a in enumerate(quiver.arrows)}
    return (p.length, quiver.vertex_index(p.start), tuple(arrow_pos[a] for a in p.arrows))


class FDAlgebra(Algebra):
    """Basic algebra with a quiver and a basis of paths in that quiver."""

    def __init__(self, quiver: Quiver, basis: Sequence[Path], table, relations: Sequence[Relation] = ()):
        self.quiver = quiver
        self.basis = tuple(basis)
        self.relations = tuple(relations)
        index = {p: i for i, p in enumerate(self.basis)}
        unit = [ZERO] * len(self.basis)
        self.vertex_basis_index = {}
        for v in quiver.vertices:
            trivial = Path(v, v)
            if trivial not in index:
                raise PresentationError(f"idempotent of vertex {v} missing from basis")
            unit[index[trivial]] = ONE
            self.vertex_basis_index[v] = index[trivial]
        self.arrow_basis_index = {}
        for a in quiver.arrows:
            p = Path(a.source, a.target, (a.name,))
            if p not in index:
                raise PresentationError(f"arrow {a.name} missing from basis")
            self.arrow_basis_index[a.name] = index[p]
        super().__init__([p.label for p in self.basis], table, unit)
        self._index = index
        self._op: FDAlgebra | None = None

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    def vertex_idempotent(self, v: str) -> Vector:
        return self.basis_vector(self.vertex_basis_index[v])

    @property
    def vertex_idempotents(self) -> list[int]:
        return [self.vertex_basis_index[v] for v in self.vertices]

    def arrow_element(self, name: str) -> Vector:
        return self.basis_vector(self.arrow_basis_index[name])

    @cached_property
    def _between(self) -> dict[tuple[str, str], tuple[int, ...]]:
        out = {(u, v): [] for u in self.vertices for v in self.vertices}
        for i, p in enumerate(self.basis):
            out[(p.start, p.end)].append(i)
        return {k: tuple(v) for k, v in out.items()}

    def paths_between(self, u: str, v: str) -> tuple[int, ...]:
        """Basis indices spanning e_u A e_v."""
        return self._between[(u, v)]

    def element(self, text: str) -> Vector:
        """Basis element by label, e.g. ``"e1"`` or ``"alpha*gamma"``."""
        if text in self.labels:
            return self.basis_vector(self.labels.index(text))
        return self.evaluate_path(path_from_word(self.quiver, text.split("*")))

    def evaluate_path(self, p: Path) -> Vector:
        if p.length == 0:
            return self.vertex_idempotent(p.start)
        x = self.arrow_element(p.arrows[0])
        for a in p.arrows[1:]:
            x = self.mul(x, self.arrow_element(a))
        return x

    def evaluate_relation(self, rel: Relation) -> Vector:
        out = self.zero()
        for c, p in rel:
            out = vadd(out, vscale(c, self.evaluate_path(p)))
        return out

    def corner(self, x: Sequence[Fraction], u: str, v: str) -> Vector:
        """Coordinates of e_u x e_v restricted to the basis of e_u A e_v."""
        return tuple(x[i] for i in self.paths_between(u, v))

    def from_corner(self, coords: Sequence[Fraction], u: str, v: str) -> Vector:
        out = [ZERO] * self.dim
        for c, i in zip(coords, self.paths_between(u, v)):
            out[i] = c
        return tuple(out)

    @property
    def opposite(self) -> FDAlgebra:
        if self._op is None:
            op = FDAlgebra(
                self.quiver.reversed(),
                [p.reversed() for p in self.basis],
                [[self.table[j][i] for j in range(self.dim)] for i in range(self.dim)],
                [tuple((c, p.reversed()) for c, p in rel) for rel in self.relations],
            )
            op._op = self
            self._op = op
        return self._op

    def presentation(self) -> AlgebraPresentation:
        return AlgebraPresentation(self.quiver, self.relations)

    def __repr__(self) -> str:
        return f"FDAlgebra(dim={self.dim}, vertices={list(self.vertices)})"


@dataclass(frozen=True)
class TwoSidedIdeal:
    parent: Algebra
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.parent.dim:
            raise ValueError("ideal lives in the wrong ambient space")

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_closed(self) -> bool:
        return self.parent.is_two_sided(self.space)

    def labels(self) -> list[str]:
        """Canonical basis written as combinations of parent basis labels."""
        return [combination_label(v, self.parent.labels) for v in self.space.vectors]


def combination_label(v: Sequence[Fraction], labels: Sequence[str]) -> str:
    parts = []
    for c, lab in zip(v, labels):
        if not c:
            continue
        if c == 1:
            parts.append(f"+ {lab}")
        elif c == -1:
            parts.append(f"- {lab}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {abs(c)}*{lab}")
    text = " ".join(parts) or "0"
    return text[2:] if text.startswith("+ ") else ("-" + text[2:] if text.startswith("- ") else text)


@dataclass(frozen=True)
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    matrix: Matrix

    def __call__(self, x: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(vec(x))

    def kernel(self) -> Subspace:
        return self.matrix.kernel()

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.target.dim

    def is_homomorphism(self) -> bool:
        src, tgt = self.source, self.target
        if self(src.unit) != tgt.unit:
            return False
        images = [self(src.basis_vector(i)) for i in range(src.dim)]
        for i in range(src.dim):
            for j in range(src.dim):
                if self(src.table[i][j]) != tgt.mul(images[i], images[j]):
                    return False
        return True


def _extend_paths(quiver: Quiver, paths: Iterable[Path]) -> list[Path]:
    out = []
    for p in paths:
        for a in quiver.arrows_from(p.end):
            out.append(Path(p.start, a.target, p.arrows + (a.name,)))
    return out


def assemble_algebra(pres: AlgebraPresentation, max_path_len: int = 64) -> FDAlgebra:
    """Basis and structure constants of kQ/I.

    Works in kQ modulo paths longer than N for growing N until every path of
    length N already lies in the truncated ideal; for an admissible ideal the
    truncation is then exact.
    """
    q = pres.quiver
    if not q.vertices:
        raise PresentationError("no vertices")
    layers = [[Path(v, v) for v in q.vertices]]
    for n in range(1, max_path_len + 1):
        layers.append(_extend_paths(q, layers[-1]))
        paths = [p for layer in layers for p in layer]
        index = {p: i for i, p in enumerate(paths)}
        gens = []
        for rel in pres.relations:
            s, t = rel[0][1].start, rel[0][1].end
            shortest = min(p.length for _, p in rel)
            for u in (p for layer in layers for p in layer if p.end == s):
                for w in (p for layer in layers for p in layer if p.start == t):
                    if u.length + shortest + w.length > n:
                        continue
                    row = [ZERO] * len(paths)
                    for c, p in rel:
                        full = Path(u.start, w.end, u.arrows + p.arrows + w.arrows)
                        if full.length <= n:
                            row[index[full]] += c
                    if any(row):
                        gens.append(row)
        # columns ordered largest path first so that pivots are leading terms
        order = sorted(range(len(paths)), key=lambda i: path_key(q, paths[i]), reverse=True)
        ideal = Subspace.span(([g[i] for i in order] for g in gens), len(paths))
        top = layers[-1]
        if all(_in_reordered(ideal, index[p], order) for p in top):
            return _quotient_by_monomial_order(q, paths, order, ideal, pres.relations, n)
    raise NotFiniteDimensional(f"nonzero paths of length {max_path_len} remain")


def _in_reordered(ideal: Subspace, i: int, order: list[int]) -> bool:
    pos = order.index(i)
    return unit_vec(ideal.ambient_dim, pos) in ideal


def _quotient_by_monomial_order(q, paths, order, ideal, relations, n) -> FDAlgebra:
    pivots = set(ideal.pivots)
    reductions = {}
    for row, piv in zip(ideal.vectors, ideal.pivots):
        reductions[order[piv]] = [(order[k], -c) for k, c in enumerate(row) if c and k != piv]
    standard = sorted((order[k] for k in range(len(paths)) if k not in pivots),
                      key=lambda i: path_key(q, paths[i]))
    basis = [paths[i] for i in standard]
    pos = {i: k for k, i in enumerate(standard)}
    path_index = {p: i for i, p in enumerate(paths)}
    d = len(basis)

    def reduce(p: Path) -> Vector:
        out = [ZERO] * d
        if p.length > n:
            return tuple(out)
        i = path_index[p]
        if i in pos:
            out[pos[i]] = ONE
        else:
            for j, c in reductions[i]:
                out[pos[j]] += c
        return tuple(out)

    table = [[reduce(pr) if (pr := concat(p, r)) is not None else zero_vec(d) for r in basis]
             for p in basis]
    return FDAlgebra(q, basis, table, relations)


def opposite_algebra(a: FDAlgebra) -> FDAlgebra:
    return a.opposite


def factor_algebra(a: FDAlgebra, ideal: TwoSidedIdeal) -> tuple[FDAlgebra, AlgebraMorphism]:
    """A/I with a recomputed quiver presentation and the projection A -> A/I."""
    if ideal.parent is not a:
        raise NotAnIdeal("ideal belongs to a different algebra")
    if not ideal.is_closed():
        raise NotAnIdeal("subspace is not closed under multiplication by A")
    if ideal.dim == 0:
        return a, AlgebraMorphism(a, a, Matrix.identity(a.dim))
    full = Subspace.full(a.dim)
    qc = subspace_calc(full, ideal.space, "quotient_coords")
    if qc.rank == 0:
        raise NotAnIdeal("factoring by the whole algebra leaves the zero ring")
    lifts = qc.lifts
    raw = Algebra(
        [f"q{i}" for i in range(qc.rank)],
        [[qc(a.mul(x, y)) for y in lifts] for x in lifts],
        qc(a.unit),
    )
    idems = []
    for v in a.vertices:
        img = qc(a.vertex_idempotent(v))
        if not is_zero_vec(img):
            idems.append((v, img))
    preferred = [(ar.name, qc(a.arrow_element(ar.name))) for ar in a.quiver.arrows]
    c, to_c = gabriel_presentation(raw, idems, preferred)
    return c, AlgebraMorphism(a, c, to_c @ qc.matrix)


def gabriel_presentation(
    alg: Algebra,
    idempotents: Sequence[tuple[str, Vector]],
    preferred_arrows: Sequence[tuple[str, Vector]] = (),
) -> tuple[FDAlgebra, Matrix]:
    """Quiver, path basis and minimal relations for a basic split algebra.

    ``idempotents`` must be a complete set of primitive orthogonal idempotents.
    Returns the presented algebra and the change-of-coordinates matrix from
    ``alg`` to it.
    """
    n = alg.dim
    names = [v for v, _ in idempotents]
    e = {v: vec(x) for v, x in idempotents}
    total = zero_vec(n)
    for v in names:
        total = vadd(total, e[v])
        if alg.mul(e[v], e[v]) != e[v]:
            raise ValueError(f"element for vertex {v} is not idempotent")
        for w in names:
            if w != v and not is_zero_vec(alg.mul(e[v], e[w])):
                raise ValueError("vertex idempotents are not orthogonal")
    if total != alg.unit:
        raise ValueError("vertex idempotents do not sum to the identity")
    rad = alg.radical
    rad2 = alg.product_space(rad, rad)

    def corner(space: Subspace, u: str, v: str) -> Subspace:
        return Subspace.span((alg.mul(alg.mul(e[u], x), e[v]) for x in space.vectors), n)

    for v in names:
        if corner(Subspace.full(n), v, v).dim - corner(rad, v, v).dim != 1:
            raise ValueError(f"algebra is not basic and split at vertex {v}")

    arrows: list[Arrow] = []
    values: dict[str, Vector] = {}
    used = set(names)
    counter = 0
    for u in names:
        for v in names:
            top = corner(rad, u, v)
            if top.dim == 0:
                continue
            chosen = corner(rad2, u, v)
            candidates = [(nm, vec(x)) for nm, x in preferred_arrows
                          if not is_zero_vec(x) and alg.mul(alg.mul(e[u], x), e[v]) == vec(x)]
            candidates += [(None, x) for x in top.vectors]
            for nm, x in candidates:
                if chosen.dim == top.dim:
                    break
                if x in chosen:
                    continue
                if nm is None or nm in used:
                    counter += 1
                    while f"x{counter}" in used:
                        counter += 1
                    nm = f"x{counter}"
                used.add(nm)
                arrows.append(Arrow(nm, u, v))
                values[nm] = x
                chosen = Subspace.span(chosen.vectors + (x,), n)
    quiver = Quiver(tuple(names), tuple(arrows))

    basis: list[Path] = []
    cols: list[Vector] = []
    span = Subspace.zero(n)
    layer = [(Path(v, v), e[v]) for v in names]
    all_paths: list[tuple[Path, Vector]] = []
    while layer:
        layer.sort(key=lambda pv: path_key(quiver, pv[0]))
        all_paths.extend(layer)
        for p, x in layer:
            if x not in span:
                basis.append(p)
                cols.append(x)
                span = Subspace.span(span.vectors + (x,), n)
        nxt = []
        for p, x in layer:
            if is_zero_vec(x):
                continue
            for a in quiver.arrows_from(p.end):
                nxt.append((Path(p.start, a.target, p.arrows + (a.name,)), alg.mul(x, values[a.name])))
        if all(is_zero_vec(x) for _, x in nxt):
            all_paths.extend(sorted(nxt, key=lambda pv: path_key(quiver, pv[0])))
            break
        layer = nxt
    if span.dim != n:
        raise ValueError("arrows do not generate the algebra")
    change = Matrix.from_columns(cols, n)
    to_new = change.inverse()
    table = [[to_new.apply(alg.mul(x, y)) for y in cols] for x in cols]
    relations = _minimal_relations(quiver, all_paths)
    return FDAlgebra(quiver, basis, table, relations), to_new


def _minimal_relations(quiver: Quiver, paths: list[tuple[Path, Vector]]) -> list[Relation]:
    """Generators of the kernel of kQ -> A modulo (JI + IJ), per vertex pair."""
    relations: list[Relation] = []
    if not paths:
        return relations
    for u in quiver.vertices:
        for v in quiver.vertices:
            stratum = [(p, x) for p, x in paths if p.start == u and p.end == v and p.length >= 1]
            if not stratum:
                continue
            plist = [p for p, _ in stratum]
            index = {p: i for i, p in enumerate(plist)}
            ev = Matrix.from_columns([x for _, x in stratum], len(stratum[0][1]))
            kernel = ev.kernel()
            if kernel.dim == 0:
                continue
            # J*I + I*J restricted to this stratum: shift kernels of neighbouring strata
            gens = []
            for a in quiver.arrows:
                for side in ("left", "right"):
                    if side == "left" and a.source != u:
                        continue
                    if side == "right" and a.target != v:
                        continue
                    mid = a.target if side == "left" else a.source
                    sub = [(p, x) for p, x in paths
                           if p.length >= 1 and ((side == "left" and p.start == mid and p.end == v)
                                                 or (side == "right" and p.start == u and p.end == mid))]
                    if not sub:
                        continue
                    sub_ev = Matrix.from_columns([x for _, x in sub], len(sub[0][1]))
                    for k in sub_ev.kernel().vectors:
                        row = [ZERO] * len(plist)
                        for c, (p, _) in zip(k, sub):
                            if not c:
                                continue
                            word = (a.name,) + p.arrows if side == "left" else p.arrows + (a.name,)
                            # words missing from the enumeration have a zero prefix, so lie in I*J
                            if Path(u, v, word) in index:
                                row[index[Path(u, v, word)]] += c
                        gens.append(row)
            decomposable = Subspace.span(gens, len(plist))
            for k in decomposable.complement_in(kernel):
                relations.append(tuple((c, plist[i]) for i, c in enumerate(k) if c))
    return relations
