import io
import json

import pytest

from qtorus.cli import (EXIT_CAP, EXIT_INPUT, EXIT_OK, InputError, JobConfig, main,
                        probe_family, read_config_file)


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


@pytest.mark.parametrize("argv, want", [
    (("--model", "s+", "--N", "4", "--Q", "fourier:2,2"), "FreeProductCyclic([2, 2])"),
    (("--model", "u+", "--Q", "fourier:3"), "Free(3)"),
    (("--model", "o+", "--Q", "id:3"), "FreeProductCyclic([2, 2, 2])"),
    (("--model", "s+", "--Q", "fourier:2,3", "--extractor", "closed"),
     "FreeProductCyclic([2, 3])"),
])
def test_extract_examples(argv, want):
    code, text = run("extract", *argv)
    assert code == EXIT_OK
    d = json.loads(text)
    assert d["status"] == "ok" and d["classification"]["text"] == want
    assert json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False) == text.rstrip("\n")


def test_extract_text_and_gap():
    code, text = run("extract", "--model", "o+", "--Q", "id:2", "--format", "text")
    assert code == EXIT_OK and "classification: FreeProductCyclic([2, 2])" in text
    code, text = run("extract", "--model", "o+", "--Q", "id:2", "--format", "gap")
    assert code == EXIT_OK and "FreeGroup" in text


def test_extract_is_deterministic():
    argv = ("extract", "--model", "h+", "--Q", "fourier:2")
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize("argv", [
    ("extract", "--model", "s+", "--N", "3", "--Q", "fourier:2,2"),
    ("extract", "--model", "x+", "--N", "2"),
    ("extract", "--model", "s+", "--Q", "1, 1; 1, 1"),
    ("extract", "--model", "s+"),
    ("extract", "--model", "s+", "--N", "2", "--depth", "1"),
    ("analyze", "<a | a^>"),
    ("walk", "--group", "<a,b | a^2, b^2, (ab)^3 b^-1>", "--coset-cap", "5"),
    ("frobnicate",),
])
def test_bad_input_exits_2(argv):
    assert run(*argv)[0] == EXIT_INPUT


def test_cap_gives_partial_report():
    code, d = run_json("extract", "--model", "s+", "--N", "3", "--index-cap", "10")
    assert code == EXIT_CAP
    assert d["status"] == "resource_cap" and d["partial"] is True


def test_config_file(tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# small job\nmodel = o+\nN = 2\ndepth = 4  # shallow\n")
    assert read_config_file(cfg) == {"model": "o+", "N": 2, "depth": 4}
    code, d = run_json("extract", "--config", str(cfg))
    assert code == EXIT_OK and d["config"]["depth"] == 4
    # flags win over the file
    code, d = run_json("extract", "--config", str(cfg), "--model", "u+")
    assert d["classification"]["text"] == "Free(2)"
    (tmp_path / "bad.cfg").write_text("colour = blue\n")
    assert run("extract", "--config", str(tmp_path / "bad.cfg"))[0] == EXIT_INPUT


def test_job_config_validation():
    with pytest.raises(InputError):
        JobConfig(format="xml")
    with pytest.raises(InputError):
        JobConfig(index_cap=0)
    assert JobConfig(N=3).unitary().n == 3


def test_easy_model_from_json(tmp_path):
    f = tmp_path / "cat.json"
    f.write_text(json.dumps({"name": "pairs", "generators": ["P(0,2){d1 d2}"]}))
    code, d = run_json("extract", "--model", f"easy:{f}", "--Q", "id:2")
    assert code == EXIT_OK, d
    assert d["classification"]["text"] == "FreeProductCyclic([2, 2])"


def test_intertwiner_model_from_json(tmp_path):
    f = tmp_path / "maps.json"
    f.write_text(json.dumps({"maps": [{"k": "", "l": "ww", "matrix": "1; 0; 0; 1"}]}))
    code, d = run_json("extract", "--model", f"intertwiners:{f}", "--Q", "id:2")
    assert code == EXIT_OK and d["classification"]["text"] == "FreeProductCyclic([2, 2])"


def test_dual_model():
    code, d = run_json("extract", "--model", "dual:<a,b,c | >", "--Q", "fourier:3")
    assert code == EXIT_OK and d["classification"]["text"] == "Free(1)"
    code, d = run_json("extract", "--model", "dual:<a,b | a^2, b^3>", "--Q", "id:2",
                       "--extractor", "closed")
    assert d["classification"]["text"] == "FreeProductCyclic([2, 3])"
    assert run("extract", "--model", "dual:<a,b | >", "--Q", "id:3")[0] == EXIT_INPUT


@pytest.mark.parametrize("pres, want", [
    ("<a,b | a^2, b^2>", "FreeProductCyclic([2, 2])"),
    ("<a,b | a b a^-1 b^-1>", "FreeAbelian(2)"),
    ("<a,b | a^3, b^3, a b^-1>", "FiniteCyclic(3)"),
    ("<a | >", "Free(1)"),
])
def test_analyze_examples(pres, want):
    code, d = run_json("analyze", pres)
    assert code == EXIT_OK and d["classification"]["text"] == want


def test_analyze_text():
    code, text = run("analyze", "<a,b | a^2, b^3>", "--format", "text")
    assert code == EXIT_OK and "non_amenable" in text


def test_probe_compositions():
    code, d = run_json("probe", "--model", "s+", "--N", "4", "--extractor", "closed")
    assert code == EXIT_OK
    assert d["summary"]["count"] == 8
    assert d["summary"]["amenability"] == {"amenable": "1"}
    assert d["summary"]["classification"]["FreeProductCyclic([2, 2])"] == "1/8"


def test_probe_sampled_is_seeded():
    argv = ("probe", "--model", "o+", "--N", "3", "--family", "sampled:4", "--seed", "7")
    a, b = run(*argv), run(*argv)
    assert a == b and a[0] == EXIT_OK
    assert probe_family("sampled:4", 3, 7) != probe_family("sampled:4", 3, 8)
    assert run("probe", "--model", "o+", "--N", "3", "--family", "weird")[0] == EXIT_INPUT


def test_walk_outputs():
    code, text = run("walk", "--group", "<a,b | a^2, b^2>", "--horizon", "6",
                     "--format", "csv")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "n,r_n,bound" and lines[1].startswith("0,1,")
    assert [int(row.split(",")[1]) for row in lines[1:]] == [1, 0, 2, 0, 6, 0, 20]
    code, d = run_json("walk", "--group", "<a,b | a^2, b^3>", "--horizon", "8", "--radius", "6")
    assert code == EXIT_OK and d["meta"]["growth_fit"] == "exponential"
    code, d = run_json("walk", "--group", "<a,b | >", "--radius", "12",
                       "--walk-state-cap", "1000")
    assert code == EXIT_CAP and d["partial"] is True


def test_verify_paper_passes_with_flags():
    code, d = run_json("verify-paper", "--format", "json")
    statuses = [f["status"] for f in d["fixtures"]]
    assert code == EXIT_OK
    assert "FAIL" not in statuses and statuses.count("FLAGGED") == 2
