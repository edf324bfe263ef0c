"""Krull-Schmidt decomposition by Fitting splitting of random endomorphisms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from ..exactla import Matrix, Subspace, vcomb
from .representation import (
    Representation,
    RepMap,
    hom_space,
    identity_map,
    linear_combination,
    socle_dims,
    subrepresentation,
    top_dims,
)

DEFAULT_SEED = 20240229
_ATTEMPTS = 24


class NonSplitEndomorphism(ArithmeticError):
    """No splitting endomorphism was found although End is not local."""


def end_basis(m: Representation) -> list[RepMap]:
    return hom_space(m, m)


def end_radical(m: Representation, basis: Sequence[RepMap] | None = None) -> Subspace:
    """Radical of End(m) in coordinates of ``basis``, via the trace form tr(xy)."""
    basis = list(end_basis(m) if basis is None else basis)
    n = len(basis)
    if n == 0:
        return Subspace.zero(0)
    # tr(f o g) = sum over vertices of <vec f_v, vec g_v^T>
    rows = [_sparse(tuple(x for m in f.mats for x in m.flatten())) for f in basis]
    cols = [dict(_sparse(tuple(x for m in f.mats for x in m.T.flatten()))) for f in basis]
    gram = Matrix.from_rows([[sum((c * col[k] for k, c in row if k in col), Fraction(0)) for col in cols]
                             for row in rows], n)
    return gram.kernel()


def _sparse(v) -> list[tuple[int, Fraction]]:
    return [(k, x) for k, x in enumerate(v) if x]


def end_top_dim(m: Representation) -> int:
    basis = end_basis(m)
    return len(basis) - end_radical(m, basis).dim


def is_indecomposable(m: Representation) -> bool:
    return m.total_dim > 0 and end_top_dim(m) == 1


def _is_nilpotent(t: Matrix) -> bool:
    return t.power(max(t.rows, 1)).is_zero()


def _poly_at(coeffs: Sequence, t: Matrix) -> Matrix:
    """Horner evaluation; coeffs from the leading term down."""
    out = Matrix.zeros(t.rows, t.cols)
    one = Matrix.identity(t.rows)
    for c in coeffs:
        out = out @ t + one.scale(c)
    return out


def _fitting_parts(m: Representation, phi: RepMap) -> tuple[dict, dict] | None:
    """(ker phi^N, im phi^N) vertexwise, or None when the split is trivial."""
    n = max(m.total_dim, 1)
    kers, ims = {}, {}
    for v in m.algebra.vertices:
        p = phi.at(v).power(n)
        kers[v], ims[v] = p.kernel(), p.image()
    kdim = sum(s.dim for s in kers.values())
    if kdim == 0 or kdim == m.total_dim:
        return None
    return kers, ims


def _split_by_polynomial(m: Representation, phi: RepMap) -> tuple[dict, dict] | None:
    t = phi.total()
    x = sympy.Symbol("x")
    poly = sympy.Matrix(t.rows, t.cols, lambda i, j: sympy.Rational(t[i, j].numerator, t[i, j].denominator))
    _, factors = sympy.factor_list(poly.charpoly(x).as_expr(), x)
    if len(factors) < 2:
        return None
    # smallest factor first, for reproducibility
    factors.sort(key=lambda fe: (sympy.degree(fe[0], x), str(fe[0])))
    f = sympy.Poly(factors[0][0], x)
    coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in f.all_coeffs()]
    mats = tuple(_poly_at(coeffs, phi.at(v)) for v in m.algebra.vertices)
    return _fitting_parts(m, RepMap(m, m, mats))


def _random_coeffs(rng: random.Random, k: int) -> list[int]:
    return [rng.randint(-5, 5) for _ in range(k)]


def _candidate_vectors(m: Representation, rng: random.Random):
    """Vectors killed by the radical of End(m): unit vectors first, then random ones."""
    alg = m.algebra
    for v in alg.vertices:
        d = m.dim_at(v)
        for i in range(d):
            yield v, tuple(Fraction(int(i == j)) for j in range(d))
    for _ in range(_ATTEMPTS):
        v = rng.choice([w for w in alg.vertices if m.dim_at(w)])
        yield v, tuple(Fraction(rng.randint(-3, 3)) for _ in range(m.dim_at(v)))


def _split_by_annihilator(m: Representation, basis: list[RepMap], rng: random.Random):
    for v, x in _candidate_vectors(m, rng):
        if not any(x):
            continue
        images = [f.at(v).apply(x) for f in basis]
        sol = Matrix.from_columns(images, m.dim_at(v)).kernel()
        if sol.dim == 0:
            continue
        for _ in range(3):
            c = vcomb(_random_coeffs(rng, sol.dim), sol.vectors, len(basis))
            phi = linear_combination(c, basis, m, m)
            if _is_nilpotent(phi.total()):
                continue
            parts = _fitting_parts(m, phi)
            if parts is not None:
                return parts
    return None


def _try_polynomial(m: Representation, basis: list[RepMap], rng: random.Random, attempts: int):
    for _ in range(attempts):
        phi = linear_combination(_random_coeffs(rng, len(basis)), basis, m, m)
        parts = _split_by_polynomial(m, phi)
        if parts is not None:
            return parts
    return None


def _split(m: Representation, rng: random.Random) -> list[tuple[Representation, RepMap]]:
    """Indecomposable pieces of m, each with its inclusion into m."""
    if m.total_dim == 0:
        return []
    basis = end_basis(m)
    if len(basis) - end_radical(m, basis).dim == 1:
        return [(m, identity_map(m))]
    parts = _try_polynomial(m, basis, rng, 3)
    if parts is None:
        parts = _split_by_annihilator(m, basis, rng)
    if parts is None:
        parts = _try_polynomial(m, basis, rng, _ATTEMPTS)
    if parts is None:
        raise NonSplitEndomorphism(
            f"End of module with dims {m.dims} is not local but no rational splitting was found")
    out = []
    for spaces in parts:
        sub, inc = subrepresentation(m, spaces)
        out.extend((piece, inc.compose(j)) for piece, j in _split(sub, rng))
    return out


@dataclass(frozen=True)
class Piece:
    module: Representation
    inclusion: RepMap
    projection: RepMap


def split_with_maps(m: Representation, seed: int | None = None) -> list[Piece]:
    """Decomposition of m into indecomposables with inclusions and compatible projections."""
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    found = _split(m, rng)
    assert sum(p.total_dim for p, _ in found) == m.total_dim
    projs: list[list[Matrix]] = [[] for _ in found]
    for v in m.algebra.vertices:
        d = m.dim_at(v)
        cols = [c for _, inc in found for c in inc.at(v).columns()]
        inv = Matrix.from_columns(cols, d).inverse() if d else Matrix.zeros(0, 0)
        k = 0
        for i, (piece, _) in enumerate(found):
            n = piece.dim_at(v)
            projs[i].append(inv.submatrix(range(k, k + n), range(d)))
            k += n
    return [Piece(p, inc, RepMap(m, p, tuple(pr))) for (p, inc), pr in zip(found, projs)]


def indecomposables_isomorphic(x: Representation, y: Representation) -> bool:
    if x.dims != y.dims:
        return False
    fs, gs = hom_space(x, y), hom_space(y, x)
    for f in fs:
        for g in gs:
            if not _is_nilpotent(g.compose(f).total()):
                return True
    return False


def signature(m: Representation) -> tuple:
    return (m.dims, top_dims(m), socle_dims(m), len(end_basis(m)))


@dataclass(frozen=True)
class Summand:
    module: Representation
    multiplicity: int

    def __iter__(self):
        return iter((self.module, self.multiplicity))


def decompose(m: Representation, seed: int | None = None) -> list[Summand]:
    """Indecomposable summands with multiplicities, sorted by invariant signature."""
    pieces = [p.module for p in split_with_maps(m, seed)]
    classes: list[list] = []
    for p in pieces:
        for cls in classes:
            if indecomposables_isomorphic(cls[0], p):
                cls[1] += 1
                break
        else:
            classes.append([p, 1])
    classes.sort(key=lambda c: signature(c[0]))
    return [Summand(p, k) for p, k in classes]


def is_isomorphic(m: Representation, n: Representation, seed: int | None = None) -> bool:
    if m.algebra is not n.algebra or m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    maps = hom_space(m, n)
    if not maps:
        return False
    for _ in range(4):
        f = linear_combination(_random_coeffs(rng, len(maps)), maps, m, n)
        if f.is_iso():
            return True
    dm, dn = decompose(m, seed), decompose(n, seed)
    if len(dm) != len(dn):
        return False
    used = set()
    for x, k in dm:
        for j, (y, l) in enumerate(dn):
            if j not in used and k == l and indecomposables_isomorphic(x, y):
                used.add(j)
                break
        else:
            return False
    return True


def in_add(m: Representation, x: Representation, seed: int | None = None) -> bool:
    """Whether m is a summand of some x^(k): id_m is a sum of composites m -> x -> m."""
    if m.algebra is not x.algebra:
        return False
    if m.total_dim == 0:
        return True
    fs, gs = hom_space(x, m), hom_space(m, x)
    if not fs or not gs:
        return False
    width = sum(d * d for d in m.dims)
    target = identity_map(m).flatten()
    span = Subspace.zero(width)
    for f in fs:
        span = span + Subspace.span([f.compose(g).flatten() for g in gs], width)
        if target in span:
            return True
    return False
