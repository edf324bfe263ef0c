"""File formats, built-in fixtures and the ``tiltlab`` command line.

Three plain-text formats are understood.  An algebra file lists ``vertex:``,
``arrow: name src tgt`` and ``relation:`` lines, where a relation is a rational
combination of parallel paths written as arrow names joined by ``*`` (left to
right).  A complex file gives the multiplicities of the indecomposable
projectives in degrees -1 and 0 and then the differential, one row per degree 0
summand and one comma separated entry per degree -1 summand; the entry in row
``e_u A`` and column ``e_v A`` is a combination of paths from ``u`` to ``v``.
A module file gives ``dims:`` and one ``map <arrow>:`` line per arrow with
matrix rows separated by ``;``.

Every command emits a JSON report; the exit code is 0 exactly when every entry
of its ``verdicts`` block is true.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .complexcat import (
    TwoTermComplex,
    decompose_complex,
    homology_invariants,
    is_two_term_tilting,
    torsion_pair_membership,
)
from .hkm import (
    TorsionData,
    construct_from_torsion,
    cotilting_verify,
    endring_verify,
    tilting_module_verify,
)
from .modcat import (
    DEFAULT_SEED,
    ProjMap,
    Representation,
    annihilator,
    ar_translate,
    decompose,
    direct_sum,
    ext1,
    gen_cog_membership,
    indecomposables_isomorphic,
    is_indecomposable,
    zero_representation,
)
from .quiveralg import (
    AlgebraPresentation,
    Arrow,
    FDAlgebra,
    Path,
    PresentationError,
    Quiver,
    assemble_algebra,
    combination_label,
    factor_algebra,
    path_from_word,
    relation_str,
)

SCHEMA = "tiltlab.report/1"
BUILTINS = ("a2", "a3lin", "hkm4")

_NAME = re.compile(r"[A-Za-z0-9_']+")
_ARROW_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_COEFF = re.compile(r"\d+(/\d+)?")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.reason = message
        self.line = line


class UsageError(ValueError):
    pass


# --- shared lexical helpers ---------------------------------------------------------

def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _fraction(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {token!r}", lineno) from None


def _parse_terms(text: str, lineno: int) -> list[tuple[Fraction, list[str]]]:
    """Split ``2*a*b - 1/3*c`` into (coefficient, word) pairs."""
    text = text.strip()
    if not text:
        raise ParseError("empty combination", lineno)
    chunks = re.split(r"(?=[+-])", text)
    terms = []
    for k, chunk in enumerate(chunks):
        chunk = chunk.strip()
        if not chunk:
            if k == 0:
                continue
            raise ParseError(f"dangling sign in {text!r}", lineno)
        sign = Fraction(1)
        if chunk[0] in "+-":
            sign = Fraction(-1) if chunk[0] == "-" else sign
            chunk = chunk[1:].strip()
        if not chunk:
            raise ParseError(f"dangling sign in {text!r}", lineno)
        coeff, word = sign, []
        for factor in (f.strip() for f in chunk.split("*")):
            if not factor:
                raise ParseError(f"empty factor in {chunk!r}", lineno)
            if _COEFF.fullmatch(factor):
                if word:
                    raise ParseError(f"coefficient after a path in {chunk!r}", lineno)
                coeff *= _fraction(factor, lineno)
            else:
                word.append(factor)
        terms.append((coeff, word))
    return terms


# --- algebra files ------------------------------------------------------------------

def parse_algebra(text: str) -> AlgebraPresentation:
    vertices: list[str] = []
    arrows: list[tuple[int, str, str, str]] = []
    relations: list[tuple[int, str]] = []
    for lineno, line in _lines(text):
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected '<key>: <value>', got {line!r}", lineno)
        key, rest = key.strip(), rest.strip()
        if key == "vertex":
            if not _NAME.fullmatch(rest):
                raise ParseError(f"bad vertex name {rest!r}", lineno)
            if rest in vertices:
                raise ParseError(f"duplicate vertex {rest!r}", lineno)
            vertices.append(rest)
        elif key == "arrow":
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError("arrow lines read 'arrow: <name> <source> <target>'", lineno)
            if not _ARROW_NAME.fullmatch(parts[0]):
                raise ParseError(f"bad arrow name {parts[0]!r}", lineno)
            arrows.append((lineno, *parts))
        elif key == "relation":
            relations.append((lineno, rest))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if not vertices:
        raise ParseError("no vertices")
    seen = set(vertices) | {f"e{v}" for v in vertices}
    for lineno, name, src, tgt in arrows:
        if name in seen:
            raise ParseError(f"arrow name {name!r} clashes with an earlier name", lineno)
        seen.add(name)
        for v in (src, tgt):
            if v not in vertices:
                raise ParseError(f"unknown vertex {v!r}", lineno)
    quiver = Quiver(tuple(vertices), tuple(Arrow(n, s, t) for _, n, s, t in arrows))
    rels = []
    for lineno, body in relations:
        rels.append(_parse_relation(quiver, body, lineno))
    try:
        return AlgebraPresentation(quiver, tuple(rels))
    except PresentationError as exc:
        raise ParseError(str(exc)) from None


def _parse_relation(quiver: Quiver, body: str, lineno: int):
    acc: dict[tuple[str, ...], tuple[Fraction, Path]] = {}
    for coeff, word in _parse_terms(body, lineno):
        if not word:
            raise ParseError("relation term without a path", lineno)
        for w in word:
            if w not in quiver.arrow_map:
                raise ParseError(f"unknown arrow {w!r}", lineno)
        try:
            p = path_from_word(quiver, word)
        except PresentationError as exc:
            raise ParseError(str(exc), lineno) from None
        if p.length < 2:
            raise ParseError(f"relation path {p.label} has length < 2", lineno)
        old = acc.get(p.arrows, (Fraction(0), p))[0]
        acc[p.arrows] = (old + coeff, p)
    terms = [(c, p) for c, p in acc.values() if c]
    if not terms:
        raise ParseError("relation is zero", lineno)
    if len({(p.start, p.end) for _, p in terms}) != 1:
        raise ParseError("relation is not a combination of parallel paths", lineno)
    return tuple(sorted(terms, key=lambda cp: (cp[1].length, cp[1].arrows)))


def print_algebra(pres: AlgebraPresentation) -> str:
    q = pres.quiver
    out = [f"vertex: {v}" for v in q.vertices]
    out += [f"arrow: {a.name} {a.source} {a.target}" for a in q.arrows]
    for rel in pres.relations:
        ordered = tuple(sorted(rel, key=lambda cp: (cp[1].length, cp[1].arrows)))
        out.append(f"relation: {relation_str(ordered)}")
    return "\n".join(out) + "\n"


def load_algebra(text: str) -> FDAlgebra:
    return assemble_algebra(parse_algebra(text))


# --- complex files ------------------------------------------------------------------

def _summands(alg: FDAlgebra, counts: Sequence[int]) -> tuple[str, ...]:
    return tuple(v for v, k in zip(alg.vertices, counts) for _ in range(k))


def _parse_counts(rest: str, alg: FDAlgebra, lineno: int) -> tuple[int, ...]:
    parts = rest.split()
    if len(parts) != alg.n_vertices or not all(p.isdigit() for p in parts):
        raise ParseError(f"expected {alg.n_vertices} nonnegative multiplicities", lineno)
    return tuple(int(p) for p in parts)


def _parse_entry(alg: FDAlgebra, text: str, row_v: str, col_v: str, lineno: int):
    if text.strip() == "0":
        return alg.zero()
    out = alg.zero()
    for coeff, word in _parse_terms(text, lineno):
        if not word:
            raise ParseError("entry term without a path", lineno)
        if len(word) == 1 and word[0] == f"e{row_v}" and row_v == col_v:
            x = alg.vertex_idempotent(row_v)
        else:
            for w in word:
                if w not in alg.quiver.arrow_map:
                    raise ParseError(f"unknown arrow {w!r}", lineno)
            try:
                p = path_from_word(alg.quiver, word)
            except PresentationError as exc:
                raise ParseError(str(exc), lineno) from None
            if (p.start, p.end) != (row_v, col_v):
                raise ParseError(f"entry {p.label} is not a path from {row_v} to {col_v}", lineno)
            x = alg.evaluate_path(p)
        out = tuple(a + coeff * b for a, b in zip(out, x))
    return out


def parse_complex(text: str, alg: FDAlgebra) -> TwoTermComplex:
    counts: dict[str, tuple[int, ...]] = {}
    rows: list[tuple[int, str]] = []
    in_diff = False
    for lineno, line in _lines(text):
        if in_diff:
            rows.append((lineno, line))
            continue
        key, sep, rest = line.partition(":")
        key = " ".join(key.split())
        if not sep:
            raise ParseError(f"expected '<key>: <value>', got {line!r}", lineno)
        if key in ("deg -1", "deg 0"):
            if key in counts:
                raise ParseError(f"duplicate {key!r} line", lineno)
            counts[key] = _parse_counts(rest, alg, lineno)
        elif key == "diff":
            if rest.strip():
                raise ParseError("the differential starts on the line after 'diff:'", lineno)
            in_diff = True
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    for key in ("deg -1", "deg 0"):
        if key not in counts:
            raise ParseError(f"missing '{key}:' line")
    minus1 = _summands(alg, counts["deg -1"])
    zero = _summands(alg, counts["deg 0"])
    if minus1 and zero and len(rows) != len(zero):
        raise ParseError(f"differential has {len(rows)} rows, expected {len(zero)}")
    if (not minus1 or not zero) and rows:
        raise ParseError("differential given for a complex with an empty term", rows[0][0])
    entries = []
    for (lineno, line), rv in zip(rows, zero):
        cells = line.split(",")
        if len(cells) != len(minus1):
            raise ParseError(f"row has {len(cells)} entries, expected {len(minus1)}", lineno)
        entries.append(tuple(_parse_entry(alg, c, rv, cv, lineno) for c, cv in zip(cells, minus1)))
    if not minus1:
        entries = [() for _ in zero]
    return TwoTermComplex(alg, minus1, zero, ProjMap(alg, minus1, zero, tuple(entries)))


def print_complex(t: TwoTermComplex) -> str:
    alg = t.algebra
    # canonical summand order: vertex order, stable within a vertex
    src = sorted(range(len(t.minus1)), key=lambda i: (alg.vertices.index(t.minus1[i]), i))
    tgt = sorted(range(len(t.zero)), key=lambda i: (alg.vertices.index(t.zero[i]), i))
    out = [f"deg -1: {' '.join(map(str, t.p_minus1))}", f"deg 0: {' '.join(map(str, t.p_zero))}", "diff:"]
    if src and tgt:
        for r in tgt:
            out.append(", ".join(combination_label(t.alpha.entries[r][c], alg.labels) for c in src))
    return "\n".join(out) + "\n"


# --- module files -------------------------------------------------------------------

def parse_module(text: str, alg: FDAlgebra) -> Representation:
    dims = None
    maps: dict[str, list[list[Fraction]]] = {}
    for lineno, line in _lines(text):
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected '<key>: <value>', got {line!r}", lineno)
        key = key.strip()
        if key == "dims":
            dims = _parse_counts(rest, alg, lineno)
        elif key.startswith("map "):
            name = key[4:].strip()
            if name not in alg.quiver.arrow_map:
                raise ParseError(f"unknown arrow {name!r}", lineno)
            if dims is None:
                raise ParseError("'dims:' must come before the maps", lineno)
            a = alg.quiver.arrow_map[name]
            r, c = dims[alg.quiver.vertex_index(a.target)], dims[alg.quiver.vertex_index(a.source)]
            body = [row.split() for row in rest.split(";")] if rest.strip() else []
            if r and c and (len(body) != r or any(len(row) != c for row in body)):
                raise ParseError(f"map {name} must be a {r}x{c} matrix", lineno)
            maps[name] = [[_fraction(x, lineno) for x in row] for row in body] if r and c else []
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if dims is None:
        raise ParseError("missing 'dims:' line")
    m = Representation.build(alg, dims, {k: v for k, v in maps.items() if v})
    if not m.satisfies_relations():
        raise ParseError("module violates the relations of the algebra")
    return m


def print_module(m: Representation) -> str:
    out = [f"dims: {' '.join(map(str, m.dims))}"]
    for a, mat in zip(m.algebra.quiver.arrows, m.maps):
        rows = "; ".join(" ".join(str(mat[i, j]) for j in range(mat.cols)) for i in range(mat.rows))
        out.append(f"map {a.name}: {rows}" if mat.rows and mat.cols else f"map {a.name}:")
    return "\n".join(out) + "\n"


# --- built-in fixtures --------------------------------------------------------------

# indecomposables by radical layers; all of them are thin with unit arrow maps
_CATALOGUES = {
    "a2": (("1/2", "12"), ("1", "1"), ("2", "2")),
    "a3lin": (("1/2/3", "123"), ("1/2", "12"), ("2/3", "23"), ("1", "1"), ("2", "2"), ("3", "3")),
    "hkm4": (("4", "4"), ("2/4", "24"), ("3/4", "34"), ("23/4", "234"), ("3", "3"), ("2", "2"),
             ("1/23", "123"), ("1/2", "12"), ("1/3", "13"), ("1", "1")),
}


def _data(name: str) -> str:
    return resources.files("tiltlab").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise UsageError(f"unknown built-in algebra {name!r}; choose from {', '.join(BUILTINS)}")
    return _data(f"{name}.alg")


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> FDAlgebra:
    return load_algebra(builtin_text(name))


def thin_module(alg: FDAlgebra, support: Sequence[str]) -> Representation:
    dims = {v: int(v in support) for v in alg.vertices}
    maps = {a.name: [[1]] for a in alg.quiver.arrows if a.source in support and a.target in support}
    return Representation.build(alg, dims, maps)


@lru_cache(maxsize=None)
def builtin_catalogue(name: str) -> tuple[tuple[str, Representation], ...]:
    alg = builtin_algebra(name)
    return tuple((label, thin_module(alg, tuple(support))) for label, support in _CATALOGUES[name])


def builtin_complex(name: str) -> TwoTermComplex:
    if name != "hkm4":
        raise UsageError(f"built-in algebra {name!r} has no default complex; pass --complex")
    return parse_complex(_data("hkm4_T.cpx"), builtin_algebra("hkm4"))


def catalogue_name(m: Representation, catalogue) -> str | None:
    for label, z in catalogue:
        if z.dims == m.dims and indecomposables_isomorphic(z, m):
            return label
    return None


# --- report helpers -----------------------------------------------------------------

def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _algebra_block(alg: FDAlgebra) -> dict:
    return {"dim": alg.dim, "quiver": alg.quiver.to_dict(),
            "relations": [relation_str(r) for r in alg.relations]}


def _decomposition_block(m: Representation, seed: int, catalogue) -> dict:
    parts = []
    for z, k in decompose(m, seed):
        parts.append({"dims": list(z.dims), "multiplicity": k,
                      "name": catalogue_name(z, catalogue) if catalogue else None})
    return {"dims": list(m.dims), "summands": parts}


def _complex_block(t: TwoTermComplex, seed: int) -> dict:
    dec = decompose_complex(t, seed)
    return {
        "deg_minus1": list(t.p_minus1),
        "deg_0": list(t.p_zero),
        "summands": [{"deg_minus1": list(s.complex.p_minus1), "deg_0": list(s.complex.p_zero),
                      "multiplicity": s.multiplicity} for s in dec],
        "contractible": list(dec.contractible),
    }


def _ideal_block(m: Representation) -> dict:
    alg = m.algebra
    ideal = annihilator(m)
    block = {"dim": ideal.dim, "basis": list(ideal.labels())}
    if ideal.dim == alg.dim:
        block["factor"] = None
    else:
        c, _ = factor_algebra(alg, ideal)
        block["factor"] = _algebra_block(c)
    return block


# --- commands -----------------------------------------------------------------------

@dataclass
class Context:
    algebra: FDAlgebra
    catalogue: tuple
    builtin: str | None
    seed: int
    args: argparse.Namespace

    def complex(self) -> TwoTermComplex:
        if self.args.complex:
            return parse_complex(_read(self.args.complex), self.algebra)
        if self.builtin:
            return builtin_complex(self.builtin)
        raise UsageError("this command needs --complex")

    def module(self, spec: str | None, flag: str) -> Representation:
        if spec is None:
            raise UsageError(f"this command needs {flag}")
        if os.path.isfile(spec):
            return parse_module(_read(spec), self.algebra)
        if spec.strip() == "0":
            return zero_representation(self.algebra)
        names = dict(self.catalogue)
        parts = [p.strip() for p in spec.split("+")]
        if self.catalogue and all(p in names for p in parts):
            return direct_sum([names[p] for p in parts], self.algebra)
        raise UsageError(f"{flag} {spec!r} is neither a module file nor a sum of catalogue names")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_check(ctx: Context) -> tuple[dict, dict]:
    t = ctx.complex()
    v = is_two_term_tilting(t, ctx.seed)
    return {"complex": _complex_block(t, ctx.seed), "tilting": v.to_dict()}, {"tilting": v.tilting}


def cmd_homology(ctx: Context) -> tuple[dict, dict]:
    t = ctx.complex()
    inv = homology_invariants(t)
    return {"h0": _decomposition_block(inv.h0, ctx.seed, ctx.catalogue),
            "h_minus1_nu": _decomposition_block(inv.h_minus1_nu, ctx.seed, ctx.catalogue)}, {}


def cmd_annihilator(ctx: Context) -> tuple[dict, dict]:
    inv = homology_invariants(ctx.complex())
    return {"h0": _ideal_block(inv.h0), "h_minus1_nu": _ideal_block(inv.h_minus1_nu)}, {}


def cmd_tilting_module(ctx: Context) -> tuple[dict, dict]:
    if ctx.args.x is not None:
        tm = tilting_module_verify(ctx.module(ctx.args.x, "--x"), ctx.seed)
        return {"tilting_module": tm.to_dict()}, {"tilting_module": tm.verdict}
    inv = homology_invariants(ctx.complex())
    tm = tilting_module_verify(inv.h0, ctx.seed)
    ct = cotilting_verify(inv.h_minus1_nu, ctx.seed)
    return ({"tilting_module": tm.to_dict(), "cotilting_module": ct.to_dict()},
            {"tilting_module": tm.verdict, "cotilting_module": ct.verdict})


def cmd_endring(ctx: Context) -> tuple[dict, dict]:
    h0, nu = endring_verify(ctx.complex(), ctx.seed)
    result = {"b_dim": h0.b_dim, "b_quiver": h0.b_quiver, "h0_side": h0.to_dict(), "nu_side": nu.to_dict()}
    return result, {"tilting_input": h0.tilting_input, "endring_h0": h0.verdict, "endring_nu": nu.verdict}


def cmd_construct(ctx: Context) -> tuple[dict, dict]:
    x = ctx.module(ctx.args.x, "--x")
    y = ctx.module(ctx.args.y, "--y")
    cat = [z for _, z in ctx.catalogue] or None
    c = construct_from_torsion(TorsionData(x, y), ctx.seed, cat)
    v = is_two_term_tilting(c.complex, ctx.seed)
    text = print_complex(c.complex)
    if ctx.args.out:
        with open(ctx.args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    result = {"complex_file": text, "complex": _complex_block(c.complex, ctx.seed),
              "warnings": list(c.warnings), "tilting": v.to_dict()}
    return result, {"x_ext_projective": c.x_ext_projective, "y_ext_injective": c.y_ext_injective,
                    "tilting": v.tilting}


def cmd_torsion(ctx: Context) -> tuple[dict, dict]:
    if not ctx.catalogue:
        raise UsageError("torsion needs a built-in catalogue (--builtin)")
    t = ctx.complex()
    table = []
    for label, m in ctx.catalogue:
        mem = torsion_pair_membership(t, m)
        table.append({"name": label, "dims": list(m.dims), "in_t": mem.in_t, "in_f": mem.in_f})
    result = {"table": table,
              "torsion_class": [r["name"] for r in table if r["in_t"]],
              "torsion_free_class": [r["name"] for r in table if r["in_f"]]}
    return result, {"disjoint": not any(r["in_t"] and r["in_f"] for r in table)}


def cmd_paper_example(ctx: Context) -> tuple[dict, dict]:
    report = paper_example(ctx.seed, corrupt=ctx.args.corrupt_relation)
    return report, {"all_match": report["divergent"] == []}


COMMANDS = {
    "check": cmd_check,
    "homology": cmd_homology,
    "annihilator": cmd_annihilator,
    "tilting-module": cmd_tilting_module,
    "endring": cmd_endring,
    "construct": cmd_construct,
    "torsion": cmd_torsion,
    "paper-example": cmd_paper_example,
}


# --- the worked example on the diamond algebra ---------------------------------------

# Summands T1..T4 of the worked example by (deg -1, deg 0, differential entry).
_EXAMPLE_SUMMANDS = {
    "1": ((), ("1",), None),
    "2": (("2",), ("1",), "alpha"),
    "3": (("3",), ("1",), "beta"),
    "4": (("4",), (), None),
}

EXAMPLE_EXPECTED = {
    "dim_A": 8,
    "catalogue_size": 10,
    "catalogue_indecomposable": True,
    "tau": {"23/4": "4", "3": "2/4", "2": "3/4", "1/2": "3", "1/3": "2", "1": "1/23"},
    "torsion_class": ["1/23", "1/2", "1/3", "1"],
    "torsion_free_class": ["4", "2/4", "3/4", "23/4", "3", "2"],
    "ext_projectives_of_t": ["1/23", "1/2", "1/3"],
    "ext_injectives_of_f": ["23/4", "3", "2"],
    "x_ext_projective": True,
    "y_ext_injective": True,
    "gen_x_is_t": True,
    "cog_y_is_f": True,
    "construction_summands": ["1", "2", "3", "4"],
    "tilting": True,
    "h0_summands": [[1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 0]],
    "h0_names": ["1/2", "1/23", "1/3"],
    "ideal_a": ["delta", "e4", "gamma"],
    "factor_a_dim": 5,
    "factor_a_arrows": [["1", "2"], ["1", "3"]],
    "factor_a_relations": 0,
    "b_dim": 8,
    "b_vertices": 4,
    "b_arrows": [["2", "1"], ["2", "4"], ["3", "1"], ["3", "4"]],
    "b_relations": 0,
    "ideal_b_dim": 3,
    "ideal_b_generators": ["4", ["2", "4"], ["3", "4"]],
    "quotient_b_dim": 5,
    "quotient_b_arrows": [["2", "1"], ["3", "1"]],
    "quotient_b_relations": 0,
    "kernel_theta_is_b": True,
    "end_h0_dim": 5,
    "tilting_module": True,
    "cotilting_module": True,
    "endring_both_sides": True,
}

EXAMPLE_X = ("1/23",)
EXAMPLE_Y = ("23/4", "3", "2")

_CORRUPT_FROM = "relation: 1*beta*delta"
_CORRUPT_TO = "relation: 1*alpha*gamma"


class _Stop(Exception):
    pass


def _arrow_pairs(quiver: Quiver) -> list[list[str]]:
    return sorted([a.source, a.target] for a in quiver.arrows)


def paper_example(seed: int | None = None, corrupt: bool = False) -> dict:
    """Run the diamond-algebra example end to end against embedded expected values."""
    seed = DEFAULT_SEED if seed is None else seed
    items: list[dict] = []

    def check(name, actual):
        expected = EXAMPLE_EXPECTED[name]
        ok = actual == expected
        items.append({"item": name, "expected": expected, "actual": actual, "match": ok})
        if not ok:
            raise _Stop(name)

    text = builtin_text("hkm4")
    if corrupt:
        text = text.replace(_CORRUPT_FROM, _CORRUPT_TO)
    try:
        alg = load_algebra(text)
        check("dim_A", alg.dim)
        cat = tuple((label, thin_module(alg, tuple(s))) for label, s in _CATALOGUES["hkm4"])
        check("catalogue_size", len(cat))
        check("catalogue_indecomposable",
              all(m.satisfies_relations() and is_indecomposable(m) for _, m in cat))
        check("tau", {label: catalogue_name(ar_translate(m, "tau"), cat)
                      for label, m in cat if label in EXAMPLE_EXPECTED["tau"]})
        parts = {}
        for name, (m1, m0, entry) in _EXAMPLE_SUMMANDS.items():
            parts[name] = TwoTermComplex.from_entries(alg, m1, m0, [[entry]] if entry else [[] for _ in m0])
        t = parse_complex(_data("hkm4_T.cpx"), alg)
        mem = [(label, torsion_pair_membership(t, m)) for label, m in cat]
        check("torsion_class", [label for label, r in mem if r.in_t])
        check("torsion_free_class", [label for label, r in mem if r.in_f])
        t_names = {label for label, r in mem if r.in_t}
        f_names = {label for label, r in mem if r.in_f}
        tors = [m for label, m in cat if label in t_names]
        free = [m for label, m in cat if label in f_names]
        check("ext_projectives_of_t",
              [label for label, m in cat if label in t_names and all(ext1(m, n).dim == 0 for n in tors)])
        check("ext_injectives_of_f",
              [label for label, m in cat if label in f_names and all(ext1(n, m).dim == 0 for n in free)])
        names = dict(cat)
        x = direct_sum([names[k] for k in EXAMPLE_X], alg)
        y = direct_sum([names[k] for k in EXAMPLE_Y], alg)
        check("x_ext_projective", all(ext1(x, n).dim == 0 for n in tors))
        check("y_ext_injective", all(ext1(n, y).dim == 0 for n in free))
        check("gen_x_is_t", all(gen_cog_membership(x, m, "gen") == (label in t_names) for label, m in cat))
        check("cog_y_is_f", all(gen_cog_membership(y, m, "cog") == (label in f_names) for label, m in cat))
        built = construct_from_torsion(TorsionData(x, y), seed).complex
        dec = decompose_complex(built, seed)
        found = []
        order = []
        for s in dec:
            match = [k for k, p in parts.items()
                     if indecomposables_isomorphic(s.representation, decompose_complex(p, seed).summands[0].representation)]
            found.extend(match if s.multiplicity == 1 else [])
            order.append(match[0] if len(match) == 1 else "?")
        check("construction_summands", sorted(found))
        check("tilting", is_two_term_tilting(built, seed).tilting)
        inv = homology_invariants(built)
        h0_parts = decompose(inv.h0, seed)
        check("h0_summands", sorted(list(z.dims) for z, _ in h0_parts))
        check("h0_names", sorted(catalogue_name(z, cat) or "?" for z, _ in h0_parts))
        ann = annihilator(inv.h0)
        check("ideal_a", sorted(ann.labels()))
        fa, _ = factor_algebra(alg, ann)
        check("factor_a_dim", fa.dim)
        check("factor_a_arrows", _arrow_pairs(fa.quiver))
        check("factor_a_relations", len(fa.relations))
        h0_rep, nu_rep = endring_verify(built, seed, order)
        bq = h0_rep.b_quiver
        check("b_dim", h0_rep.b_dim)
        check("b_vertices", len(bq["vertices"]))
        check("b_arrows", sorted([a[1], a[2]] for a in bq["arrows"]))
        check("b_relations", bq["relations"])
        check("ideal_b_dim", h0_rep.ideal_dim)
        arrow_name = {(a[1], a[2]): a[0] for a in bq["arrows"]}
        labels = set(h0_rep.ideal_labels)
        gens = list(h0_rep.idempotents_in_ideal)
        gens += [[s, tt] for (s, tt), nm in sorted(arrow_name.items()) if nm in labels]
        check("ideal_b_generators", gens)
        check("quotient_b_dim", h0_rep.quotient_dim)
        q = h0_rep.quotient_quiver
        check("quotient_b_arrows", _arrow_pairs(q) if q else [])
        check("quotient_b_relations", h0_rep.quotient_relations)
        check("kernel_theta_is_b", h0_rep.kernel_equals_ideal)
        check("end_h0_dim", h0_rep.end_h0_dim)
        check("tilting_module", tilting_module_verify(inv.h0, seed).verdict)
        check("cotilting_module", cotilting_verify(inv.h_minus1_nu, seed).verdict)
        check("endring_both_sides", h0_rep.verdict and nu_rep.verdict)
    except _Stop:
        pass
    done = {it["item"] for it in items}
    divergent = [it["item"] for it in items if not it["match"]]
    skipped = [k for k in EXAMPLE_EXPECTED if k not in done]
    return {"items": items, "divergent": divergent, "skipped": skipped,
            "matched": sum(it["match"] for it in items), "total": len(EXAMPLE_EXPECTED)}


# --- argument handling --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tiltlab", description="Two-term tilting complexes over quiver algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--algebra", help="algebra file")
        src.add_argument("--builtin", choices=BUILTINS, help="built-in algebra with its catalogue")
        p.add_argument("--complex", help="complex file")
        p.add_argument("--json", help="also write the report to this path")
        p.add_argument("--seed", type=int, help="decomposition seed (default: $TILTLAB_SEED)")
        p.add_argument("--x", help="module file or '+'-joined catalogue names")
        p.add_argument("--y", help="module file or '+'-joined catalogue names")
        p.add_argument("--out", help="construct: write the complex file here")
        p.add_argument("--corrupt-relation", action="store_true", help=argparse.SUPPRESS)
    return parser


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("TILTLAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TILTLAB_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _error_report(command, exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(getattr(exc, "reason", exc))}
    if getattr(exc, "line", None) is not None:
        err["line"] = exc.line
    return {"schema": SCHEMA, "command": command, "error": err, "pass": False}


def run(subcommand: str, args: Sequence[str] = ()) -> tuple[int, dict]:
    """Run one subcommand; returns (exit code, report)."""
    try:
        ns = build_parser().parse_args([subcommand, *args])
    except UsageError as exc:
        return 2, _error_report(subcommand, exc)
    try:
        seed = _seed(ns.seed)
        if ns.command == "paper-example":
            alg, builtin = builtin_algebra("hkm4"), "hkm4"
        elif ns.builtin:
            alg, builtin = builtin_algebra(ns.builtin), ns.builtin
        elif ns.algebra:
            alg, builtin = load_algebra(_read(ns.algebra)), None
        else:
            raise UsageError("pass --algebra or --builtin")
        catalogue = builtin_catalogue(builtin) if builtin else ()
        ctx = Context(alg, catalogue, builtin, seed, ns)
        result, verdicts = COMMANDS[ns.command](ctx)
    except (ParseError, UsageError, PresentationError, ValueError, ArithmeticError) as exc:
        report = _error_report(ns.command, exc)
        _write_json(ns.json, report)
        return 2, report
    report = {"schema": SCHEMA, "command": ns.command, "algebra": _algebra_block(alg),
              "result": result, "verdicts": verdicts, "pass": all(verdicts.values())}
    _write_json(ns.json, report)
    return (0 if report["pass"] else 1), report


def _write_json(path: str | None, report: dict) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render(report))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0 if argv else 2
    code, report = run(argv[0], argv[1:])
    sys.stdout.write(render(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
