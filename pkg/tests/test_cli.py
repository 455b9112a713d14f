import json

import pytest

from sd120.cli import EXIT_OK, EXIT_UNRESOLVED, EXIT_USAGE, main


def run(capsys, tmp_path, *argv):
    code = main(["--out", str(tmp_path / "out"), *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerator(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "enumerator", "--n", "120")
    assert code == EXIT_OK
    assert "A_24 = 39703755" in out and "A_28 = 6101289120" in out and "A_32 = 475644139425" in out
    cfg = json.loads((tmp_path / "out" / "config.json").read_text())
    assert cfg["n"] == 120 and cfg["command"] == "enumerator"


def test_enumerator_bad_length(capsys, tmp_path):
    assert run(capsys, tmp_path, "enumerator", "--n", "30")[0] == EXIT_USAGE


def test_types(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "types", "--n", "24", "--d", "8", "--reasons")
    assert code == EXIT_OK
    assert " 23 |   1 |   1" in out
    rows = json.loads((tmp_path / "out" / "types.json").read_text())
    assert [1, 1] in rows["23"]


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["types", "--preset", "bogus"])
    assert e.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == EXIT_USAGE
    capsys.readouterr()


def test_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "sweep", "--case", "7-16-8", "--code", "z24",
                       "--sample", "40", "--seed", "7")
    assert code == EXIT_OK
    assert "seed 7" in out and "40 refuted, 0 unresolved" in out
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["refuted"] == 40
    lines = (tmp_path / "out" / "sweep.jsonl").read_text().splitlines()
    assert len(lines) == 41


def test_sweep_wrong_length(capsys, tmp_path):
    assert run(capsys, tmp_path, "sweep", "--case", "5-22-10", "--code", "z24")[0] == EXIT_USAGE


def test_sweep_code_file_and_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.code"
    bad.write_text("# x\n24 12\n0101\n")
    code, _, err = run(capsys, tmp_path, "sweep", "--case", "7-16-8", "--code", str(bad))
    assert code == EXIT_USAGE and "line 3" in err
    code, _, err = run(capsys, tmp_path, "sweep", "--case", "7-16-8", "--code", "missing")
    assert code == EXIT_USAGE and "neither" in err


def test_checkpoint_needs_resume(capsys, tmp_path):
    ck = tmp_path / "ck"
    args = ["sweep", "--case", "7-16-8", "--code", "y24", "--sample", "10", "--checkpoint", str(ck)]
    assert run(capsys, tmp_path, *args)[0] == EXIT_OK
    assert run(capsys, tmp_path, *args)[0] == EXIT_USAGE
    assert run(capsys, tmp_path, *args, "--resume")[0] == EXIT_OK


def test_mod7(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "mod7", "--sample", "30")
    assert code == EXIT_OK and "every subset contradicts" in out


def test_p59_sample(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "p59", "sample", "--count", "3", "--seed", "5", "--jobs", "1")
    assert code == EXIT_OK
    assert "3 refuted" in out and "full sweep" in out


def test_p59_full_needs_flag(capsys, tmp_path):
    assert run(capsys, tmp_path, "p59", "sweep", "--jobs", "1")[0] == EXIT_USAGE


def test_decompose(capsys, tmp_path):
    perm = "(" + ",".join(str(i) for i in range(1, 24)) + ")"
    code, out, _ = run(capsys, tmp_path, "decompose", "--code", "golay24", "--perm", perm)
    assert code == EXIT_OK and "23-(1;1)" in out
    code, _, err = run(capsys, tmp_path, "decompose", "--code", "golay24", "--perm", "(1,2,3)")
    assert code == EXIT_USAGE and "not an automorphism" in err


def test_lowweight(capsys, tmp_path):
    code, out, _ = run(capsys, tmp_path, "lowweight", "--code", "golay24", "--target", "9")
    assert code == EXIT_OK and "weight 8" in out
    code, out, _ = run(capsys, tmp_path, "lowweight", "--code", "golay24", "--target", "8",
                       "--iterations", "20")
    assert code == EXIT_UNRESOLVED and "no witness" in out


def test_default_out_dir_from_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("SD120_OUT", str(tmp_path / "env"))
    assert main(["enumerator", "--n", "24"]) == EXIT_OK
    capsys.readouterr()
    assert (tmp_path / "env" / "enumerator" / "config.json").exists()
