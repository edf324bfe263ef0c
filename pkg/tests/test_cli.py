import json
import subprocess
import sys
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from tiltlab.cli import (
    ParseError,
    builtin_complex,
    builtin_text,
    load_algebra,
    main,
    parse_algebra,
    parse_complex,
    parse_module,
    print_algebra,
    print_complex,
    print_module,
    render,
    run,
)
from tiltlab.complexcat import complexes_isomorphic
from tiltlab.modcat import is_isomorphic

HKM4 = """\
vertex: 1
vertex: 2
vertex: 3
vertex: 4
arrow: alpha 1 2
arrow: beta 1 3
arrow: gamma 2 4
arrow: delta 3 4
relation: alpha*gamma
relation: beta*delta
"""


def strip_comments(text):
    return "".join(line + "\n" for line in text.splitlines() if line and not line.startswith("#"))


# --- algebra files ----------------------------------------------------------------------

def test_parse_hkm4():
    pres = parse_algebra(HKM4)
    assert len(pres.quiver.vertices) == 4 and len(pres.quiver.arrows) == 4
    assert len(pres.relations) == 2
    assert load_algebra(HKM4).dim == 8


@pytest.mark.parametrize("name", ["a2", "a3lin", "hkm4"])
def test_builtin_round_trip(name):
    text = strip_comments(builtin_text(name))
    assert print_algebra(parse_algebra(text)) == text


@pytest.mark.parametrize("text, line, fragment", [
    (HKM4.replace("relation: beta*delta", "relation: alpha*delta"), 10, "alpha"),
    ("", None, "no vertices"),
    ("# only a comment\n", None, "no vertices"),
    ("vertex: 1\nvertex: 1\n", 2, "duplicate"),
    ("vertex: 1\narrow: a 1 2\n", 2, "unknown vertex"),
    ("vertex: 1\nvertex: 2\narrow: a 1 2\nrelation: a*b\n", 4, "unknown arrow"),
    ("vertex: 1\nvertex: 2\narrow: a 1 2\nrelation: a\n", 4, "length"),
    ("vertex: 1\nvertex: 2\narrow: a 1 2\nrelation: a*a\n", 4, ""),
    ("vertex: 1\nfoo: 2\n", 2, "unknown key"),
    ("vertex: 1\nvertex 2\n", 2, "expected"),
    ("vertex: 1\nvertex: 2\narrow: e1 1 2\n", 3, "clashes"),
])
def test_algebra_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    assert info.value.line == line
    assert fragment in info.value.reason


def test_non_parallel_relation_is_rejected():
    text = HKM4.replace("relation: beta*delta", "relation: alpha*gamma - beta")
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    assert info.value.line == 10


def test_rational_relation_coefficients():
    text = HKM4.replace("relation: alpha*gamma\nrelation: beta*delta\n",
                        "relation: 2/3*alpha*gamma - 1/2*beta*delta\n")
    pres = parse_algebra(text)
    assert [c for c, _ in pres.relations[0]] == [Fraction(2, 3), Fraction(-1, 2)]
    assert load_algebra(text).dim == 9
    assert print_algebra(parse_algebra(print_algebra(pres))) == print_algebra(pres)


@st.composite
def acyclic_presentations(draw):
    n = draw(st.integers(1, 4))
    vertices = [str(i + 1) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=4)) if pairs else []
    arrows = [(f"x{k}", vertices[i], vertices[j]) for k, (i, j) in enumerate(chosen)]
    lines = [f"vertex: {v}" for v in vertices] + [f"arrow: {a} {s} {t}" for a, s, t in arrows]
    # length-two paths make candidate relation terms
    paths = [(a, b) for a, _, t in arrows for b, s, _ in arrows if s == t]
    for _ in range(draw(st.integers(0, 2))):
        if not paths:
            break
        p = draw(st.sampled_from(paths))
        parallel = [q for q in paths if q != p and
                    next(x for x in arrows if x[0] == q[0])[1] == next(x for x in arrows if x[0] == p[0])[1]
                    and next(x for x in arrows if x[0] == q[1])[2] == next(x for x in arrows if x[0] == p[1])[2]]
        c = draw(st.sampled_from(["", "2*", "1/3*"]))
        body = f"{c}{p[0]}*{p[1]}"
        if parallel and draw(st.booleans()):
            q = draw(st.sampled_from(parallel))
            body += f" - {q[0]}*{q[1]}"
        lines.append(f"relation: {body}")
    return "\n".join(lines) + "\n"


@settings(max_examples=40, deadline=None)
@given(acyclic_presentations())
def test_algebra_printer_is_a_fixed_point(text):
    once = print_algebra(parse_algebra(text))
    assert print_algebra(parse_algebra(once)) == once
    assert parse_algebra(once) == parse_algebra(text)


# --- complex and module files -----------------------------------------------------------

def test_complex_round_trip(hkm4):
    text = strip_comments(resources.files("tiltlab").joinpath("data").joinpath("hkm4_T.cpx").read_text())
    t = parse_complex(text, hkm4)
    assert print_complex(t) == text
    assert complexes_isomorphic(t, builtin_complex("hkm4"))


@pytest.mark.parametrize("body, line", [
    ("deg -1: 0 1 0 0\ndeg 0: 1 0 0 0\ndiff:\ngamma\n", 4),
    ("deg -1: 0 1 0 0\ndeg 0: 1 0 0 0\ndiff:\nalpha, 0\n", 4),
    ("deg -1: 0 1 0\n", 1),
    ("deg -1: 0 1 0 0\ndeg 0: 1 0 0 0\ndiff:\nalpha*gamma\n", 4),
    ("deg 0: 1 0 0 0\n", None),
])
def test_complex_parse_errors(hkm4, body, line):
    with pytest.raises(ParseError) as info:
        parse_complex(body, hkm4)
    assert info.value.line == line


def test_complex_entry_combinations(a3lin):
    t = parse_complex("deg -1: 0 0 1\ndeg 0: 1 0 0\ndiff:\n-2*a*b\n", a3lin)
    assert print_complex(t) == "deg -1: 0 0 1\ndeg 0: 1 0 0\ndiff:\n-2*a*b\n"


def test_module_round_trip(hkm4, hkm4_cat):
    text = "dims: 1 1 1 0\nmap alpha: 1\nmap beta: 1\nmap gamma:\nmap delta:\n"
    m = parse_module(text, hkm4)
    assert print_module(m) == text
    assert is_isomorphic(m, hkm4_cat["1/23"])


def test_module_must_satisfy_relations(hkm4):
    with pytest.raises(ParseError):
        parse_module("dims: 1 1 0 1\nmap alpha: 1\nmap gamma: 1\n", hkm4)
    with pytest.raises(ParseError) as info:
        parse_module("dims: 1 1 0 0\nmap alpha: 1 2\n", hkm4)
    assert info.value.line == 2


# --- command line -----------------------------------------------------------------------

def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_check_exit_codes(tmp_path):
    code, report = run("check", ["--builtin", "hkm4"])
    assert code == 0 and report["pass"]
    cpx = write(tmp_path, "p1.cpx", "deg -1: 0 0\ndeg 0: 1 0\ndiff:\n")
    code, report = run("check", ["--builtin", "a2", "--complex", cpx])
    assert code == 1
    assert "summand count 1 < 2" in report["result"]["tilting"]["reason"]


def test_parse_error_exit_code(tmp_path):
    alg = write(tmp_path, "bad.alg", HKM4.replace("relation: beta*delta", "relation: alpha*delta"))
    code, report = run("check", ["--algebra", alg, "--complex", alg])
    assert code == 2
    assert report["error"]["type"] == "ParseError"
    assert report["error"]["line"] == 10


def test_usage_errors():
    assert run("check", [])[0] == 2
    assert run("nonsense", [])[0] == 2
    code, report = run("construct", ["--builtin", "hkm4", "--x", "1/23"])
    assert code == 2 and "--y" in report["error"]["message"]


def test_reports_are_deterministic_and_seed_free(tmp_path, monkeypatch):
    a = render(run("endring", ["--builtin", "hkm4", "--seed", "1"])[1])
    b = render(run("endring", ["--builtin", "hkm4", "--seed", "99"])[1])
    monkeypatch.setenv("TILTLAB_SEED", "5")
    c = render(run("endring", ["--builtin", "hkm4"])[1])
    assert a == b == c
    assert "seed" not in a


def test_bad_seed_environment(monkeypatch):
    monkeypatch.setenv("TILTLAB_SEED", "many")
    code, report = run("check", ["--builtin", "a2"])
    assert code == 2 and "TILTLAB_SEED" in report["error"]["message"]


def test_construct_writes_complex(tmp_path):
    out = tmp_path / "t.cpx"
    code, report = run("construct", ["--builtin", "hkm4", "--x", "1/23", "--y", "23/4+3+2",
                                     "--out", str(out)])
    assert code == 0
    code, check = run("check", ["--builtin", "hkm4", "--complex", str(out)])
    assert code == 0 and check["verdicts"]["tilting"]


def test_module_file_argument(tmp_path):
    mod = write(tmp_path, "p1.mod", "dims: 1 1\nmap a: 1\n")
    code, report = run("tilting-module", ["--builtin", "a2", "--x", mod])
    assert code == 1
    assert report["result"]["tilting_module"]["coresolution"]["x1_in_add"] is False


def test_json_output_file(tmp_path):
    path = tmp_path / "r.json"
    code, report = run("homology", ["--builtin", "hkm4", "--json", str(path)])
    assert code == 0
    assert json.loads(path.read_text()) == report
    names = sorted(s["name"] for s in report["result"]["h0"]["summands"])
    assert names == ["1/2", "1/23", "1/3"]


def test_main_prints_report(capsys):
    assert main(["torsion", "--builtin", "hkm4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"]["torsion_class"] == ["1/23", "1/2", "1/3", "1"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tiltlab.cli", "check", "--builtin", "hkm4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "tiltlab.report/1"


def test_corrupted_relation_stops_early():
    code, report = run("paper-example", ["--corrupt-relation"])
    assert code == 1
    res = report["result"]
    assert res["divergent"] == ["dim_A"]
    assert res["items"] == [{"item": "dim_A", "expected": 8, "actual": 9, "match": False}]
    assert len(res["skipped"]) == res["total"] - 1
