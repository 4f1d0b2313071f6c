import json

import pytest

from hyperoracle.cli import main


def run(capsys, *argv):
    code = main(["--log-level", "WARNING", *map(str, argv)])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def built(tmp_path, toy_path, capsys):
    o = tmp_path / "toy.oracle"
    code, _, _ = run(capsys, "build", "--input", toy_path, "--out", o, "--budget-l", 30,
                     "--select", "degree", "--seed", 7)
    assert code == 0
    return o


def test_components(capsys, toy_path):
    code, out, _ = run(capsys, "components", "--input", toy_path, "--smax", 2)
    assert code == 0
    assert out.splitlines() == [
        "1\t0\t5\t8\t0,1,2,3,4",
        "2\t0\t1\t2\t0",
        "2\t1\t3\t6\t1,2,3",
        "2\t2\t1\t2\t4",
    ]


def test_linegraph(capsys, toy_path):
    _, out, _ = run(capsys, "linegraph", "--input", toy_path, "--s", 2)
    assert out.splitlines() == ["1\t2\t2", "2\t3\t2"]
    _, out, _ = run(capsys, "linegraph", "--input", toy_path, "--augmented")
    rows = [r.split("\t") for r in out.splitlines()]
    assert sum(r[3] == "membership" for r in rows) == 14 and len(rows) == 19


def test_build_logs_off_time(tmp_path, toy_path, capsys):
    o = tmp_path / "x.oracle"
    code = main(["build", "--input", str(toy_path), "--out", str(o), "--budget-l", "30", "--seed", "7"])
    err = capsys.readouterr().err
    assert code == 0 and "OFF" in err and '"seed": 7' in err
    assert o.read_text().startswith("#HYPED-ORACLE v1\nmeta smax=10 dmin=4 seed=7\n")


def test_build_is_deterministic_across_thread_counts(tmp_path, toy_path, capsys):
    outs = []
    for threads in (1, 4):
        o = tmp_path / f"t{threads}.oracle"
        run(capsys, "build", "--input", toy_path, "--out", o, "--select", "bestcover", "--threads", threads)
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]


def test_query_and_profile(tmp_path, toy_path, built, capsys):
    pairs = tmp_path / "p.tsv"
    pairs.write_text("1\t3\n0\t2\n")
    code, out, _ = run(capsys, "query", "--oracle", built, "--type", "hh", "--s", 2, "--pairs", pairs)
    assert code == 0
    rows = out.splitlines()
    assert rows[1].split("\t")[-2:] == ["1.16667", "small-component"]
    assert rows[2].split("\t")[-2:] == ["inf", "disconnected"]
    _, out, _ = run(capsys, "query", "--oracle", built, "--s", 2, "--pairs", pairs, "--round", 0)
    assert out.splitlines()[1].split("\t")[5] == "1"
    _, out, _ = run(capsys, "profile", "--oracle", built, "--pairs", pairs)
    assert [r.split("\t")[2] for r in out.splitlines()[1:4]] == ["1", "2", "3"]
    vpairs = tmp_path / "v.tsv"
    vpairs.write_text("2\t6\n")
    _, out, _ = run(capsys, "query", "--oracle", built, "--input", toy_path, "--type", "vv", "--s", 2, "--pairs", vpairs)
    assert out.splitlines()[1].split("\t")[5] == "2.16667"


def test_topk(tmp_path, toy_path, built, capsys):
    labels = tmp_path / "l.tsv"
    labels.write_text("0\ta\n1\ta\n2\ta\n3\tb\n4\ta\n")
    code, out, _ = run(capsys, "topk", "--oracle", built, "--labels", labels, "--k", 2, "--s", 1)
    assert code == 0
    assert out.splitlines()[1:3] == ["0\t1\t1\t1", "0\t2\t2\t2"]


def test_sample_eval_centrality(tmp_path, toy_path, built, capsys):
    q = tmp_path / "q.tsv"
    run(capsys, "sample-queries", "--input", toy_path, "--smax", 2, "--per-s", 3, "--out", q)
    assert len(q.read_text().splitlines()) >= 4
    rows = tmp_path / "rows.tsv"
    code, out, _ = run(capsys, "eval", "--input", toy_path, "--oracle", built, "--queries", q, "--rows", rows)
    rep = json.loads(out)
    assert code == 0
    for key in ("mae", "rmse", "time_per_query_us", "off_seconds", "l1_quantiles", "coverage_rate", "reach_error_rate"):
        assert key in rep
    assert len(rows.read_text().splitlines()[0].split("\t")) == 8
    code, out, _ = run(capsys, "centrality", "--input", toy_path, "--oracle", built, "--s", 1)
    assert code == 0
    assert out.splitlines()[0] == "kind\tid\ts\texact\testimate"
    assert out.splitlines()[-1].startswith("# vertex\tmape=")


def test_usage_errors(tmp_path, toy_path, built, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--input", str(toy_path), "--out", str(tmp_path / "o"), "--dmin", "6"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["build", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["components", "--input", str(tmp_path / "missing.tsv")])
    assert exc.value.code == 2
    pairs = tmp_path / "p.tsv"
    pairs.write_text("1\t2\n")
    with pytest.raises(SystemExit) as exc:
        main(["query", "--oracle", str(built), "--type", "vv", "--s", "1", "--pairs", str(pairs)])
    assert exc.value.code == 2


def test_runtime_errors(tmp_path, toy_path, capsys):
    bad = tmp_path / "bad.oracle"
    bad.write_text("#HYPED-ORACLE v1\nmeta smax=2 dmin=4 seed=0\n")
    pairs = tmp_path / "p.tsv"
    pairs.write_text("0\t1\n")
    code, _, err = run(capsys, "query", "--oracle", bad, "--s", 1, "--pairs", pairs)
    assert code == 1 and "missing end record" in err
    broken = tmp_path / "h.tsv"
    broken.write_text("1 2\n3\n")
    code, _, err = run(capsys, "components", "--input", broken)
    assert code == 1
