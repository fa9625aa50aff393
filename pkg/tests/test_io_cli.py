import csv
import json

import pytest

from troptransient.cli import CSV_COLUMNS, main, parse_subgraph, parse_weights
from troptransient.core import TropMatrix
from troptransient.errors import InputError
from troptransient.factor import Factorization
from troptransient.generate import generate_with_rank
from troptransient.io import load_factorization, load_matrix, matrix_from_obj, matrix_to_obj, save_matrix

N = "-inf"


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_round_trip(tmp_path):
    a = TropMatrix.of([[0, "1/2"], [N, -3]])
    save_matrix(a, tmp_path / "a.json")
    assert load_matrix(tmp_path / "a.json") == a
    assert matrix_to_obj(a)["entries"] == [[0, "1/2"], ["-inf", -3]]
    flat = matrix_from_obj({"rows": 2, "cols": 2, "entries": [0, "1/2", "-inf", -3]})
    assert flat == a


@pytest.mark.parametrize(
    "obj",
    [
        {"rows": 2, "cols": 2, "entries": [0, 1, 2]},
        {"rows": 1, "cols": 1, "entries": [[0.5]]},
        {"rows": 1, "cols": 1, "entries": [["abc"]]},
        {"rows": 1, "entries": [[0]]},
        [1, 2],
    ],
)
def test_malformed_matrices(obj):
    with pytest.raises(InputError):
        matrix_from_obj(obj)


def test_factorization_file(tmp_path):
    a, fac = generate_with_rank(4, 2, seed=0)
    path = write(tmp_path / "f.json", {"U": matrix_to_obj(fac.U), "L": matrix_to_obj(fac.L)})
    assert load_factorization(path) == fac
    with pytest.raises(InputError):
        load_factorization(write(tmp_path / "g.json", {"U": matrix_to_obj(fac.U)}))


def test_parsers():
    assert parse_weights("-5..5") == (-5, 5)
    with pytest.raises(InputError):
        parse_weights("5..-5")
    a = TropMatrix.of([[N, 0, N], [N, N, 0], [0, N, N]])
    assert parse_subgraph("cycle:0,1,2", a).arcs == frozenset({(0, 1), (1, 2), (2, 0)})
    assert parse_subgraph("nodes:0,1", a).arcs == frozenset({(0, 1)})
    assert parse_subgraph("nodes:0;arcs:", a).arcs == frozenset()
    assert parse_subgraph("critical", a).nodes == frozenset({0, 1, 2})
    with pytest.raises(InputError):
        parse_subgraph("blob", a)


def test_analyze_two_cycle(tmp_path, capsys):
    path = write(tmp_path / "a.json", {"rows": 2, "cols": 2, "entries": [[N, 1], [-1, N]]})
    assert main(["analyze", path]) == 0
    out = capsys.readouterr().out
    assert "T = 0" in out
    assert "0 failed check(s)" in out


def test_analyze_small_dimension_check(tmp_path, capsys):
    # d = 3, gamma = 2: classes {0} and {1, 2}
    path = write(tmp_path / "a.json", {"rows": 3, "cols": 3, "entries": [[N, 0, -1], [2, N, N], [-3, N, N]]})
    assert main(["analyze", path, "--scheme", "N"]) == 0
    assert "[PASS] small-dimension CSR" in capsys.readouterr().out


def test_analyze_with_rank_file(tmp_path, capsys):
    a, fac = generate_with_rank(5, 2, seed=5)
    mpath = write(tmp_path / "a.json", matrix_to_obj(a))
    fpath = write(tmp_path / "f.json", {"U": matrix_to_obj(fac.U), "L": matrix_to_obj(fac.L)})
    assert main(["analyze", mpath, "--rank-file", fpath]) == 0
    assert "Wi(r)+1" in capsys.readouterr().out


def test_analyze_errors(tmp_path):
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["analyze", str(bad)]) == 2
    reducible = write(tmp_path / "r.json", {"rows": 2, "cols": 2, "entries": [[0, 0], [N, 0]]})
    assert main(["analyze", reducible]) == 2
    assert main(["bogus"]) == 2


def test_thresholds_command(tmp_path, capsys):
    path = write(tmp_path / "a.json", {"rows": 3, "cols": 3, "entries": [[N, 0, N], [N, N, 0], [0, -1, N]]})
    assert main(["thresholds", path, "--subgraph", "cycle:0,1,2", "--sigma", "3"]) == 0
    out = capsys.readouterr().out
    assert "T_ex =" in out and "TcRLin" in out
    assert main(["thresholds", path, "--subgraph", "cycle:0,2", "--sigma", "2"]) == 2
    assert main(["thresholds", path, "--subgraph", "critical", "--sigma", "1"]) == 0


def _campaign(tmp_path, name, *extra):
    prefix = tmp_path / name
    code = main(["campaign", "--dim", "5", "--samples", "12", "--seed", "7", "--out", str(prefix), *extra])
    return code, (tmp_path / f"{name}.csv").read_text(), (tmp_path / f"{name}.json").read_text()


def test_campaign_reports(tmp_path):
    code, text, js = _campaign(tmp_path, "a", "--gamma", "2")
    assert code == 0
    rows = list(csv.DictReader(text.splitlines()))
    assert list(rows[0]) == CSV_COLUMNS
    assert len(rows) == 36
    assert {r["status"] for r in rows} == {"ok"}
    report = json.loads(js)
    assert report["anomalies"] == 0 and len(report["rows"]) == 36


def test_campaign_deterministic_and_parallel(tmp_path):
    _, csv1, js1 = _campaign(tmp_path, "a", "--rank", "2")
    _, csv2, js2 = _campaign(tmp_path, "b", "--rank", "2")
    _, csv3, js3 = _campaign(tmp_path, "c", "--rank", "2", "--jobs", "2")
    assert csv1 == csv2 == csv3
    assert js1 == js2 == js3


def test_campaign_empty_and_invalid(tmp_path):
    prefix = tmp_path / "empty"
    assert main(["campaign", "--dim", "4", "--samples", "0", "--seed", "1", "--out", str(prefix)]) == 0
    assert (tmp_path / "empty.csv").read_text().strip() == ",".join(CSV_COLUMNS)
    assert main(["campaign", "--dim", "4", "--samples", "3", "--seed", "1", "--gamma", "5", "--out", str(prefix)]) == 2
    assert main(["campaign", "--dim", "4", "--samples", "3", "--seed", "1", "--weights=x", "--out", str(prefix)]) == 2


def test_factorization_shape_check():
    a, fac = generate_with_rank(4, 2, seed=0)
    with pytest.raises(ValueError):
        Factorization(fac.U, fac.L, 3)
