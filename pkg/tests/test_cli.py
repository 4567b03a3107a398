import filecmp
import shutil
import subprocess
import sys

import pytest

from recforge import bundle
from recforge.cli import RunConfig, main, parse_args


@pytest.fixture(scope="module")
def data(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    for name, spec, H in [("p2", "powers2", 2 ** 16), ("tm", "thue-morse", 2 ** 14),
                          ("p01", "periodic:01", 1000), ("c4", "geometric-runs:4", 4 ** 9),
                          ("f997", "co-multiples:997", 300000), ("db", "de-bruijn:11", 2058)]:
        assert main(["generate", spec, "--horizon", str(H), "--out", str(d / f"{name}.txt")]) == 0
    (d / "short.txt").write_text("1" + "0" * 99 + "\n")
    (d / "sparse.txt").write_text("111" + "0000001110" * 30 + "\n")
    (d / "q01.txt").write_text("blocks: 0 1\nJ: 0 1\n")
    return d


def test_parse_valid_construct(data, tmp_path):
    cfg = parse_args(["construct", "md", "--input", str(data / "c4.txt"), "--stages", "3",
                      "--out", str(tmp_path / "o")])
    assert isinstance(cfg, RunConfig)
    assert cfg.command == "construct md" and cfg.params == {"stages": 3}


@pytest.mark.parametrize("argv,code", [
    (["construct", "md"], 64),
    (["construct", "md", "--input", "x", "--bogus"], 64),
    ([], 64),
    (["construct", "md", "--input", "/nonexistent/file.txt", "--out", "o"], 66),
])
def test_usage_and_io_exit_codes(argv, code):
    assert main(argv) == code


def test_range_errors(data, tmp_path):
    assert main(["subshift-analyze", "--word", str(data / "tm.txt"), "--kmax", "999999",
                 "--out", str(tmp_path / "o")]) == 65
    assert main(["construct", "md", "--input", str(data / "c4.txt"), "--stages", "0",
                 "--out", str(tmp_path / "o")]) == 65
    (tmp_path / "tiny.txt").write_text("0101\n")
    assert main(["subshift-analyze", "--word", str(tmp_path / "tiny.txt"),
                 "--out", str(tmp_path / "o")]) == 65


def test_missing_input_reported_before_out(data, capsys):
    assert main(["construct", "md"]) == 64
    assert "--input" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["families-check", "--input", "{p2}"],
    ["subshift-analyze", "--word", "{tm}"],
    ["construct", "md", "--input", "{c4}", "--stages", "3"],
    ["construct", "ip-extract", "--word", "{tm}", "--depth", "4"],
    ["construct", "rapid-ip", "--input", "{c4}", "--depth", "4"],
    ["demo", "fps", "--word", "{p2}"],
    ["independence", "check", "--word", "{db}", "--input", "{q01}"],
    ["independence", "probe", "--word", "{db}", "--input", "{q01}", "--gap", "3", "--size", "2"],
])
def test_commands_succeed_and_verify(data, tmp_path, argv):
    argv = [a.format(**{p.stem: str(p) for p in data.iterdir()}) for a in argv]
    out = tmp_path / "bundle"
    assert main(argv + ["--out", str(out), "--verify"]) == 0
    assert (out / "certificates.txt").read_text().strip()
    assert (out / "report.txt").read_text().startswith("# recforge report")
    assert main(["verify", "--out", str(out)]) == 0


def test_sm_bundle(data, tmp_path):
    out = tmp_path / "sm"
    assert main(["construct", "sm", "--input", str(data / "f997.txt"), "--stages", "3",
                 "--out", str(out), "--verify"]) == 0
    assert (out / "trace.txt").read_text().startswith("kind: SmTrace")


def test_partial_and_inapplicable(data, tmp_path):
    assert main(["construct", "md", "--input", str(data / "sparse.txt"), "--stages", "3",
                 "--out", str(tmp_path / "a"), "--verify"]) == 2
    assert main(["demo", "fps", "--word", str(data / "p01.txt"), "--block", "0",
                 "--out", str(tmp_path / "b")]) == 3
    assert "kind: Inapplicable" in (tmp_path / "b" / "certificates.txt").read_text()


def test_tampered_bundle_fails_verify(data, tmp_path):
    out = tmp_path / "md"
    assert main(["construct", "md", "--input", str(data / "c4.txt"), "--out", str(out)]) == 0
    word = (out / "word.txt").read_text()
    flipped = word[:-2] + ("1" if word[-2] == "0" else "0") + "\n"
    (out / "word.txt").write_text(flipped)
    code, problems = bundle.verify(out)
    assert code == 4 and any("word.txt" in p for p in problems)
    assert main(["verify", "--out", str(out)]) == 4


def test_no_header_reruns_are_byte_identical(data, tmp_path):
    runs = []
    for name in ("one", "two"):
        out = tmp_path / name
        assert main(["demo", "fps", "--word", str(data / "p2.txt"), "--no-header",
                     "--out", str(out)]) == 0
        runs.append(out)
    cmp = filecmp.dircmp(runs[0], runs[1])
    assert not cmp.diff_files and not cmp.left_only and not cmp.right_only
    assert "generated" not in (runs[0] / "report.txt").read_text()


def test_threads_flag_does_not_change_results(data, tmp_path):
    for n in ("1", "2"):
        assert main(["subshift-analyze", "--word", str(data / "tm.txt"), "--threads", n,
                     "--no-header", "--out", str(tmp_path / n)]) == 0
    assert filecmp.cmp(tmp_path / "1" / "certificates.txt", tmp_path / "2" / "certificates.txt",
                       shallow=False)


def test_io_error_exit_code(data, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["construct", "md", "--input", str(data / "c4.txt"),
                 "--out", str(blocker / "sub")]) == 5


def test_console_script(data, tmp_path):
    exe = shutil.which("recforge")
    cmd = [exe] if exe else [sys.executable, "-m", "recforge"]
    r = subprocess.run(cmd + ["families-check", "--input", str(data / "p01.txt"),
                              "--out", str(tmp_path / "o")], capture_output=True, text=True)
    assert r.returncode == 0 and "SyndeticCert" in (tmp_path / "o" / "certificates.txt").read_text()
