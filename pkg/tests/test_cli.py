import json
from fractions import Fraction

import pytest

from genehrhart.cli import (
    ProblemFormatError,
    corpus_names,
    load_problem,
    parse_problem,
    run,
)
from genehrhart.genseries import RatFn

F = Fraction


def output(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_corpus_is_shipped():
    assert set(corpus_names()) >= {
        "condorcet3.in", "condorcet4_sym.in", "halfopen_segment.in",
        "unit_square.in", "zplus2_x1x2.in"}


def test_parse_rays_file():
    p = parse_problem("ambient_dim 2\nrays 2\n1 0\n0 1\ngrading 1 1\npolynomial x1*x2\n")
    assert p.cone.rays == ((1, 0), (0, 1))
    assert p.cone.grading == (1, 1)
    assert p.polynomial_text == "x1*x2"
    assert p.tags == set()


def test_parse_inequalities_and_tags():
    text = """# comment
ambient_dim 3
inequalities 1
1 1 -1   # trailing comment
grading
1 1 1
polynomial
(x1 + 1)^2
compute integral
"""
    p = parse_problem(text)
    assert set(p.cone.rays) == {(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)}
    assert p.tags == {"integral"}
    assert p.cone.weight.degree() == 2


def test_default_weight_is_one():
    p = parse_problem("ambient_dim 1\nrays 1\n1\ngrading 1\n")
    assert p.cone.weight.degree() == 0


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("ambient_dim 2\nrays 1\n1 x\ngrading 1 1\n", 3, 3),
        ("ambient_dim 2\nrays 1\n1 0 0\ngrading 1 1\n", 3, 1),
        ("ambient_dim 2\nrays 2\n1 0\n", 2, 1),  # reported at the keyword
        ("ambient_dim 2\nrays 1\n1 0\n", 1, 1),
        ("ambient_dim 2\nrays 1\n1 0\ngrading 1 1\npolynomial x1 + x7\n", 5, 17),
        ("ambient_dim 2\nfoo 3\n", 2, 1),
        ("rays 1\n1 0\n", 1, 1),
        ("ambient_dim 2\nrays 1\n1 0\ninequalities 0\ngrading 1 1\n", 1, 1),
    ],
)
def test_format_errors_report_position(text, line, column):
    with pytest.raises(ProblemFormatError) as info:
        parse_problem(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_series_text(capsys):
    code, out, _ = output(capsys, ["series", "unit_square.in", "--threads", "1"])
    assert code == 0
    assert "series: (1 + t) / (1-t)^3" in out
    assert "q^(0)(k) = 1 + 2*k + k^2" in out
    assert "virtual multiplicity: 2" in out


def test_series_json_round_trip(capsys):
    code, out, _ = output(capsys, ["series", "zplus2_x1x2.in", "--json", "--integral",
                                   "--threads", "1"])
    assert code == 0
    data = json.loads(out)
    num = [F(0)] * (max(i for i, _ in data["series"]["numerator"]) + 1)
    for i, c in data["series"]["numerator"]:
        num[i] = F(c)
    rf = RatFn(num, [tuple(x) for x in data["series"]["denominator"]])
    assert rf == RatFn([0, 0, 1], [(1, 4)])
    assert data["quasipolynomial"] == {
        "period": 1, "ell": 1, "components": [["0", "-1/6", "0", "1/6"]]}
    assert data["expected_degree"] == 3
    assert data["leading"] == "1/6" == data["integral"]
    assert data["vmult"] == "1"


def test_series_json_disagreeing_residues(tmp_path, capsys):
    f = tmp_path / "ray2.in"
    f.write_text("ambient_dim 1\nrays 1\n1\ngrading 2\npolynomial x1\n")
    code, out, _ = output(capsys, ["series", str(f), "--json", "--threads", "1"])
    data = json.loads(out)
    assert data["leading"] is None and data["vmult"] is None
    assert data["leading_by_residue"] == ["1/2", "0"]
    assert data["grading_gcd"] == 2


def test_oracle_subcommand(capsys):
    code, out, _ = output(capsys, ["oracle", "zplus2_x1x2.in", "--degree", "5"])
    assert code == 0
    assert out.strip() == "0, 0, 1, 4, 10, 20"


def test_rays_subcommand(capsys):
    code, out, _ = output(capsys, ["rays", "condorcet3.in", "--json"])
    rays = json.loads(out)["rays"]
    assert len(rays) == 11
    assert all(min(r) >= 0 for r in rays)


def test_integrate_subcommand(capsys):
    code, out, _ = output(capsys, ["integrate", "condorcet3.in"])
    assert (code, out.strip()) == (0, "1/384")


def test_thread_count_does_not_change_json(capsys):
    _, a, _ = output(capsys, ["series", "halfopen_segment.in", "--json", "--threads", "1"])
    _, b, _ = output(capsys, ["series", "halfopen_segment.in", "--json", "--threads", "2"])
    assert a == b


def test_exit_code_for_format_error(tmp_path, capsys):
    f = tmp_path / "bad.in"
    f.write_text("ambient_dim 2\nrays 1\n1 x\ngrading 1 1\n")
    code, _, err = output(capsys, ["series", str(f)])
    assert code == 2
    assert "line 3, column 3" in err


def test_exit_code_for_missing_file(capsys):
    code, _, err = output(capsys, ["series", "does_not_exist.in"])
    assert code == 2 and "does_not_exist.in" in err


def test_exit_code_for_geometry_error(tmp_path, capsys):
    f = tmp_path / "neg.in"
    f.write_text("ambient_dim 2\nrays 1\n1 -1\ngrading 1 1\n")
    code, _, err = output(capsys, ["series", str(f)])
    assert code == 2 and err.startswith("genehrhart.polyhedra:")


def test_exit_code_for_integration_error(tmp_path, capsys):
    f = tmp_path / "g2.in"
    f.write_text("ambient_dim 1\nrays 1\n1\ngrading 2\n")
    code, _, err = output(capsys, ["integrate", str(f)])
    assert code == 2 and err.startswith("genehrhart.integrate:")


def test_exit_code_for_budget(capsys):
    code, _, err = output(capsys, ["oracle", "condorcet3.in", "--degree", "30", "--budget", "100"])
    assert code == 3 and "candidate scans" in err


def test_load_problem_prefers_existing_path(tmp_path):
    f = tmp_path / "unit_square.in"
    f.write_text("ambient_dim 1\nrays 1\n1\ngrading 1\n")
    assert load_problem(str(f)).cone.ambient_dim == 1
    assert load_problem("unit_square.in").cone.ambient_dim == 3
