import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from tiltlab.cli import builtin_catalogue, catalogue_name
from tiltlab.exactla import Matrix
from tiltlab.modcat import (
    NonSplitEndomorphism,
    Representation,
    annihilator,
    ar_translate,
    canonical_modules,
    decompose,
    direct_sum,
    dual,
    ext1,
    gen_cog_membership,
    hom_space,
    in_add,
    is_indecomposable,
    is_injective,
    is_isomorphic,
    is_projective,
    kernel_cokernel,
    linear_combination,
    minimal_presentation,
    projective_cover,
    restrict_to_factor,
    zero_representation,
)
from tiltlab.quiveralg import AlgebraPresentation, Arrow, Quiver, assemble_algebra, factor_algebra

BUILTINS = ("a2", "a3lin", "hkm4")


def scrambled(m: Representation, rng: random.Random) -> Representation:
    """m with a random change of basis at every vertex."""
    alg = m.algebra
    gs = {}
    for v, d in zip(alg.vertices, m.dims):
        while True:
            g = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)], d)
            if g.rank() == d:
                gs[v] = g
                break
    maps = tuple(gs[a.target] @ mat @ gs[a.source].inverse()
                 for a, mat in zip(alg.quiver.arrows, m.maps))
    return Representation(alg, m.dims, maps)


def names_of(summands, cat):
    pairs = tuple(cat.items())
    return Counter({catalogue_name(s.module, pairs): s.multiplicity for s in summands})


@pytest.mark.parametrize("name", BUILTINS)
def test_hom_dimensions_match_oracle(name, brute):
    cat = dict(builtin_catalogue(name))
    table = brute[name]
    for i, x in enumerate(table["names"]):
        for j, y in enumerate(table["names"]):
            maps = hom_space(cat[x], cat[y])
            assert len(maps) == table["hom"][i][j], (x, y)
            assert all(f.is_homomorphism() for f in maps)


@pytest.mark.parametrize("name", BUILTINS)
def test_ext_dimensions_match_oracle(name, brute):
    cat = dict(builtin_catalogue(name))
    table = brute[name]
    for i, x in enumerate(table["names"]):
        for j, y in enumerate(table["names"]):
            assert ext1(cat[x], cat[y]).dim == table["ext"][i][j], (x, y)


@pytest.mark.parametrize("name", BUILTINS)
def test_catalogue_is_indecomposable(name):
    for _, m in builtin_catalogue(name):
        assert m.satisfies_relations()
        assert is_indecomposable(m)


def test_canonical_modules_hkm4(hkm4, hkm4_cat):
    cm = canonical_modules(hkm4)
    pairs = tuple(hkm4_cat.items())
    proj = [catalogue_name(cm.projectives[v], pairs) for v in hkm4.vertices]
    inj = [catalogue_name(cm.injectives[v], pairs) for v in hkm4.vertices]
    assert proj == ["1/23", "2/4", "3/4", "4"]
    assert inj == ["1", "1/2", "1/3", "23/4"]
    assert cm.regular.total_dim == hkm4.dim == cm.coregular.total_dim
    for name, m in hkm4_cat.items():
        assert is_projective(m) == (name in proj)
        assert is_injective(m) == (name in inj)


def test_projective_presentation(hkm4_cat):
    pres = minimal_presentation(hkm4_cat["1"], "projective")
    assert pres.p0 == ("1",)
    assert sorted(pres.p1) == ["2", "3"]
    pc = projective_cover(hkm4_cat["23/4"])
    assert sorted(pc.summands) == ["2", "3"]
    assert pc.epi.is_epi()


def test_injective_presentation(hkm4_cat):
    pres = minimal_presentation(hkm4_cat["4"], "injective")
    assert pres.i0 == ("4",)
    assert sorted(pres.i1) == ["2", "3"]
    assert pres.embedding.is_mono()


def test_tau_of_projective_is_zero(hkm4):
    for p in canonical_modules(hkm4).projectives.values():
        assert ar_translate(p, "tau").is_zero
    for i in canonical_modules(hkm4).injectives.values():
        assert ar_translate(i, "tau_inverse").is_zero


def test_dual_is_involution(hkm4_cat):
    for m in hkm4_cat.values():
        assert is_isomorphic(dual(dual(m)), m)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from(["4", "2/4", "3/4", "23/4", "3", "2", "1/23", "1/2", "1/3", "1"]),
                min_size=1, max_size=4),
       st.integers(0, 10 ** 6))
def test_decompose_recovers_summands(names, seed):
    cat = dict(builtin_catalogue("hkm4"))
    m = scrambled(direct_sum([cat[n] for n in names]), random.Random(seed))
    assert m.satisfies_relations()
    got = decompose(m, seed=seed)
    assert names_of(got, cat) == Counter(names)
    # summand order is by invariants, not by the random choices
    assert [s.module.dims for s in got] == [s.module.dims for s in decompose(m)]


def test_decompose_seed_independent(hkm4_cat):
    m = scrambled(direct_sum([hkm4_cat[n] for n in ("1/23", "1/2", "1/2", "3", "23/4")]), random.Random(3))
    reference = names_of(decompose(m), hkm4_cat)
    for seed in range(10):
        assert names_of(decompose(m, seed=seed), hkm4_cat) == reference


def test_non_split_endomorphism_ring():
    # Kronecker module with End = Q(i): a = identity, b = rotation by a quarter turn
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    k = assemble_algebra(AlgebraPresentation(q))
    m = Representation.build(k, [2, 2], {"a": [[1, 0], [0, 1]], "b": [[0, -1], [1, 0]]})
    assert len(hom_space(m, m)) == 2
    with pytest.raises(NonSplitEndomorphism):
        decompose(m)


def test_in_add(hkm4_cat):
    x = direct_sum([hkm4_cat["1/23"], hkm4_cat["1/2"]])
    assert in_add(hkm4_cat["1/2"], x)
    assert in_add(direct_sum([hkm4_cat["1/23"]] * 3), x)
    assert not in_add(hkm4_cat["1/3"], x)
    assert not in_add(hkm4_cat["1"], x)
    assert in_add(zero_representation(x.algebra), x)


def test_gen_and_cog(hkm4_cat):
    x = hkm4_cat["1/23"]
    for name in ("1/23", "1/2", "1/3", "1"):
        assert gen_cog_membership(x, hkm4_cat[name], "gen")
    for name in ("4", "2", "3", "23/4"):
        assert not gen_cog_membership(x, hkm4_cat[name], "gen")
    y = direct_sum([hkm4_cat[n] for n in ("23/4", "3", "2")])
    for name in ("4", "2/4", "3/4", "23/4", "3", "2"):
        assert gen_cog_membership(y, hkm4_cat[name], "cog")
    assert not gen_cog_membership(y, hkm4_cat["1"], "cog")


def test_annihilator_and_factor(hkm4, hkm4_cat):
    h0 = direct_sum([hkm4_cat[n] for n in ("1/23", "1/2", "1/3")])
    ann = annihilator(h0)
    assert sorted(ann.labels()) == ["delta", "e4", "gamma"]
    c, proj = factor_algebra(hkm4, ann)
    restricted = restrict_to_factor(h0, proj)
    assert restricted.algebra is c
    assert restricted.satisfies_relations()
    assert restricted.total_dim == h0.total_dim


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["4", "2/4", "3/4", "23/4", "1/23", "1/2", "1"]),
       st.sampled_from(["4", "2/4", "23/4", "1/23", "1/3", "2"]),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_kernel_cokernel_rank_nullity(a, b, coeffs):
    cat = dict(builtin_catalogue("hkm4"))
    m, n = cat[a], cat[b]
    maps = hom_space(m, n)
    f = linear_combination(coeffs[:len(maps)] + [0] * max(0, len(maps) - 3), maps, m, n)
    kc = kernel_cokernel(f)
    assert kc.kernel.total_dim + kc.image.total_dim == m.total_dim
    assert kc.cokernel.total_dim + kc.image.total_dim == n.total_dim
    assert f.compose(kc.inclusion).is_zero()
    assert kc.projection.compose(f).is_zero()


def test_regular_module_decomposes_into_projectives(hkm4, hkm4_cat):
    got = names_of(decompose(canonical_modules(hkm4).regular), hkm4_cat)
    assert got == Counter({"1/23": 1, "2/4": 1, "3/4": 1, "4": 1})
