"""Presentations, Nakayama functor, AR translate, Ext^1, gen/cog, annihilators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exactla import Matrix, Subspace, Vector, linear_solve
from ..quiveralg import AlgebraMorphism, FDAlgebra, TwoSidedIdeal
from .representation import (
    CategoryError,
    ProjMap,
    Representation,
    RepMap,
    direct_sum,
    dual,
    hom_space,
    image_of_maps,
    injective,
    kernel_cokernel,
    map_from_generators,
    nakayama_inverse_map,
    nakayama_map,
    projective,
    radical_spaces,
    socle_dims,
    subrepresentation,
    top_dims,
    zero_representation,
)


class NotInDomain(ValueError):
    pass


def _summands_from_dims(algebra: FDAlgebra, counts: Sequence[int]) -> tuple[str, ...]:
    return tuple(v for v, k in zip(algebra.vertices, counts) for _ in range(k))


@dataclass(frozen=True)
class ProjectiveCover:
    summands: tuple[str, ...]
    cover: Representation
    epi: RepMap
    generators: tuple[tuple[str, Vector], ...]


def projective_cover(m: Representation) -> ProjectiveCover:
    """Minimal epimorphism from a sum of e_v A, one summand per top generator."""
    alg = m.algebra
    rad = radical_spaces(m)
    gens = []
    for v in alg.vertices:
        for g in rad[v].complement_in(Subspace.full(m.dim_at(v))):
            gens.append((v, g))
    summands = tuple(v for v, _ in gens)
    epi = map_from_generators(summands, [g for _, g in gens], m)
    cover = epi.source
    assert epi.is_homomorphism() and epi.is_epi()
    return ProjectiveCover(summands, cover, epi, tuple(gens))


def _cover_map_from_generators(target_summands, target_cover, sub_inc: RepMap,
                               gens) -> ProjMap:
    """ProjMap sending generator e_v to the image of each kernel generator."""
    alg = sub_inc.source.algebra
    cols = []
    for v, k in gens:
        image = sub_inc.at(v).apply(k)
        col, pos = [], 0
        for t in target_summands:
            n = len(alg.paths_between(t, v))
            col.append(alg.from_corner(image[pos:pos + n], t, v))
            pos += n
        cols.append(col)
    source = tuple(v for v, _ in gens)
    rows = tuple(tuple(cols[c][r] for c in range(len(source))) for r in range(len(target_summands)))
    return ProjMap(alg, source, tuple(target_summands), rows)


@dataclass(frozen=True)
class ProjectivePresentation:
    """P^{-1} --differential--> P^0 --cover--> m --> 0, both covers minimal."""

    module: Representation
    differential: ProjMap
    cover: ProjectiveCover
    kernel: Representation
    kernel_inclusion: RepMap

    @property
    def p0(self) -> tuple[str, ...]:
        return self.differential.target

    @property
    def p1(self) -> tuple[str, ...]:
        return self.differential.source


@dataclass(frozen=True)
class InjectivePresentation:
    """0 --> m --embedding--> I^0 --map--> I^1 with map = nu(nu_inverse)."""

    module: Representation
    embedding: RepMap
    map: RepMap
    nu_inverse: ProjMap

    @property
    def i0(self) -> tuple[str, ...]:
        return self.nu_inverse.source

    @property
    def i1(self) -> tuple[str, ...]:
        return self.nu_inverse.target


def minimal_presentation(m: Representation, side: str = "projective"):
    if side == "projective":
        return _projective_presentation(m)
    if side == "injective":
        return _injective_presentation(m)
    raise ValueError(f"unknown side {side!r}")


def _projective_presentation(m: Representation) -> ProjectivePresentation:
    alg = m.algebra
    pc = projective_cover(m)
    kc = kernel_cokernel(pc.epi)
    # kernel in the radical of the cover, so the cover is minimal
    rad = radical_spaces(pc.cover)
    for v in alg.vertices:
        for k in kc.inclusion.at(v).columns():
            assert k in rad[v]
    kpc = projective_cover(kc.kernel)
    diff = _cover_map_from_generators(pc.summands, pc.cover, kc.inclusion, kpc.generators)
    return ProjectivePresentation(m, diff, pc, kc.kernel, kc.inclusion)


def _injective_presentation(m: Representation) -> InjectivePresentation:
    op_pres = _projective_presentation(dual(m))
    g = op_pres.differential
    # D of the op cover is m -> D(Q^0); nu(g^T) is D(Q^0) -> D(Q^{-1})
    embedding = dual(op_pres.cover.epi)
    nu_inv = g.transpose_op()
    return InjectivePresentation(m, embedding, nakayama_map(nu_inv), nu_inv)


def is_projective(m: Representation) -> bool:
    return projective_cover(m).cover.total_dim == m.total_dim


def is_injective(m: Representation) -> bool:
    return is_projective(dual(m))


def nakayama(x, direction: str = "forward", summands: tuple | None = None):
    """nu on add(projectives) or nu^{-1} on add(injectives).

    Maps are given as ``ProjMap`` for the forward direction, and as ``RepMap``
    between realized injective sums (with ``summands=(source, target)``) for
    the inverse direction.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown direction {direction!r}")
    if isinstance(x, ProjMap):
        if direction != "forward":
            raise NotInDomain("inverse Nakayama expects a map between injectives")
        return nakayama_map(x)
    if isinstance(x, RepMap):
        if direction == "forward":
            if summands is None:
                raise NotInDomain("forward Nakayama on a RepMap needs its projective summand lists")
            return nakayama_map(ProjMap.from_repmap(x, *summands))
        if summands is None:
            raise NotInDomain("inverse Nakayama on a RepMap needs its injective summand lists")
        return nakayama_inverse_map(x, *summands)
    if isinstance(x, Representation):
        alg = x.algebra
        if direction == "forward":
            if not is_projective(x):
                raise NotInDomain("module is not projective")
            tops = _summands_from_dims(alg, top_dims(x))
            return direct_sum([injective(alg, v) for v in tops], alg)
        if not is_injective(x):
            raise NotInDomain("module is not injective")
        socs = _summands_from_dims(alg, socle_dims(x))
        return direct_sum([projective(alg, v) for v in socs], alg)
    raise TypeError(f"cannot apply the Nakayama functor to {type(x).__name__}")


def ar_translate(m: Representation, direction: str = "tau") -> Representation:
    if direction == "tau":
        pres = _projective_presentation(m)
        if not pres.p1:
            return zero_representation(m.algebra)
        return kernel_cokernel(nakayama_map(pres.differential)).kernel
    if direction == "tau_inverse":
        return dual(ar_translate(dual(m), "tau"))
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True)
class Ext1Result:
    dim: int
    kernel: Representation
    kernel_inclusion: RepMap
    cocycles: tuple[RepMap, ...]

    def __int__(self) -> int:
        return self.dim


def ext1(m: Representation, n: Representation) -> Ext1Result:
    """Ext^1(m, n) = Hom(K, n) / restrictions of Hom(P^0, n), K = ker(P^0 -> m)."""
    if m.algebra is not n.algebra:
        raise CategoryError("Ext between modules over different algebras")
    pc = projective_cover(m)
    kc = kernel_cokernel(pc.epi)
    hk = hom_space(kc.kernel, n)
    if not hk:
        return Ext1Result(0, kc.kernel, kc.inclusion, ())
    restricted = [g.compose(kc.inclusion).flatten() for g in hom_space(pc.cover, n)]
    basis = [h.flatten() for h in hk]
    width = len(basis[0])
    sub = Subspace.span(restricted, width)
    reps = []
    current = sub
    for h, b in zip(hk, basis):
        if b not in current:
            reps.append(h)
            current = Subspace.span(current.vectors + (b,), width)
    assert len(reps) == len(hk) - sub.dim
    return Ext1Result(len(reps), kc.kernel, kc.inclusion, tuple(reps))


def gen_cog_membership(x: Representation, m: Representation, mode: str = "gen") -> bool:
    if x.algebra is not m.algebra:
        raise CategoryError("modules over different algebras")
    alg = m.algebra
    if mode == "gen":
        trace = image_of_maps(hom_space(x, m), m)
        return all(trace[v].dim == m.dim_at(v) for v in alg.vertices)
    if mode == "cog":
        maps = hom_space(m, x)
        for v in alg.vertices:
            if m.dim_at(v) == 0:
                continue
            if not maps:
                return False
            stacked = maps[0].at(v)
            for f in maps[1:]:
                stacked = stacked.vstack(f.at(v))
            if stacked.kernel().dim:
                return False
        return True
    raise ValueError(f"unknown mode {mode!r}")


def trace_submodule(x: Representation, m: Representation) -> tuple[Representation, RepMap]:
    """Largest submodule of m generated by x."""
    return subrepresentation(m, image_of_maps(hom_space(x, m), m))


def reject_submodule(m: Representation, x: Representation) -> tuple[Representation, RepMap]:
    """Intersection of kernels of all maps m -> x."""
    maps = hom_space(m, x)
    spaces = {}
    for v in m.algebra.vertices:
        s = Subspace.full(m.dim_at(v))
        for f in maps:
            s = s & f.at(v).kernel()
        spaces[v] = s
    return subrepresentation(m, spaces)


def annihilator(m: Representation) -> TwoSidedIdeal:
    alg = m.algebra
    rows = [m.action(alg.basis_vector(i)).flatten() for i in range(alg.dim)]
    if m.total_dim == 0:
        return TwoSidedIdeal(alg, Subspace.full(alg.dim))
    # x in ann iff sum_i x_i * action(b_i) = 0
    system = Matrix.from_columns(rows, m.total_dim ** 2)
    ideal = TwoSidedIdeal(alg, system.kernel())
    assert ideal.is_closed()
    return ideal


def restrict_to_factor(m: Representation, proj: AlgebraMorphism) -> Representation:
    """View an A-module annihilated by ker(proj) as a module over proj.target."""
    src: FDAlgebra = proj.source
    tgt: FDAlgebra = proj.target
    if m.algebra is not src:
        raise CategoryError("module is over a different algebra")
    ann = annihilator(m).space
    if not ann.contains_space(proj.kernel()):
        raise CategoryError("module is not annihilated by the kernel of the projection")
    for v in tgt.vertices:
        if v not in src.vertices:
            raise CategoryError(f"factor vertex {v} has no counterpart")
    dims = tuple(m.dim_at(v) for v in tgt.vertices)
    maps = []
    for a in tgt.quiver.arrows:
        lift = linear_solve(proj.matrix, tgt.arrow_element(a.name)).particular
        if lift is None:
            raise CategoryError(f"arrow {a.name} has no preimage")
        maps.append(m.block(m.action(lift), a.target, a.source))
    out = Representation(tgt, dims, tuple(maps))
    if not out.satisfies_relations():
        raise CategoryError("restricted module violates the factor relations")
    return out


def inflate_from_factor(n: Representation, proj: AlgebraMorphism) -> Representation:
    """View a module over proj.target as a module over proj.source."""
    src: FDAlgebra = proj.source
    tgt: FDAlgebra = proj.target
    if n.algebra is not tgt:
        raise CategoryError("module is over a different algebra")
    dims = tuple(n.dim_at(v) if v in tgt.vertices else 0 for v in src.vertices)
    pad = Representation.build(src, dims)
    maps = []
    for a in src.quiver.arrows:
        image = proj(src.arrow_element(a.name))
        if a.source in tgt.vertices and a.target in tgt.vertices:
            maps.append(n.block(n.action(image), a.target, a.source))
        else:
            maps.append(pad.map(a.name))
    return Representation(src, dims, tuple(maps))
