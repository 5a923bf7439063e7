import io
import sys
from contextlib import redirect_stdout

import pytest

from quadsys import catalog
from quadsys.cli import main
from quadsys.formats import emit_design, parse_design


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_gen_and_verify_sqs8(tmp_path):
    design = tmp_path / "sqs8.design"
    code, out = run_cli("gen", "sqs8", "--out", str(design))
    assert code == 0 and design.exists()
    code, out = run_cli("verify", "--kind", "sqs", str(design))
    assert code == 0
    assert out.startswith("PASS")


def test_verify_corrupted_design_exits_1(tmp_path, capsys):
    d = catalog.sqs8()
    text = emit_design(d)
    lines = text.splitlines()
    corrupt = "\n".join(lines[:-1]) + "\n"  # drop the last block
    path = tmp_path / "bad.design"
    path.write_text(corrupt)
    code, out = run_cli("verify", "--kind", "sqs", str(path))
    assert code == 1
    assert "FAIL" in out


def test_parse_error_exits_2(tmp_path):
    path = tmp_path / "junk.design"
    path.write_text("KIND SQS\nT 3\nK 4\nPOINTS 0 1 2 3\n0 1 2 9\n")
    code, _ = run_cli("verify", "--kind", "sqs", str(path))
    assert code == 2


def test_missing_file_exits_2(tmp_path):
    code, _ = run_cli("verify", "--kind", "sqs", str(tmp_path / "nope.design"))
    assert code == 2


def test_gen_sqs22_with_certificate_and_rdsqs_verify(tmp_path):
    design = tmp_path / "sqs22.design"
    code, _ = run_cli("gen", "sqs22", "--out", str(design))
    assert code == 0
    res = tmp_path / "sqs22.res"
    assert res.exists()
    code, out = run_cli("verify", "--kind", "rdsqs", str(design), str(res))
    assert code == 0
    assert out.count("PASS") == 24  # steiner + coverage + 22 points


def test_jobs_flag_does_not_change_output(tmp_path):
    design = tmp_path / "rdgdd24.design"
    run_cli("gen", "rdgdd24", "--out", str(design))
    res = tmp_path / "rdgdd24.res"
    code1, out1 = run_cli("verify", "--kind", "rdgdd", str(design), str(res))
    code2, out2 = run_cli(
        "verify", "--kind", "rdgdd", str(design), str(res), "--jobs", "2"
    )
    assert (code1, out1) == (code2, out2) == (0, out1)


def test_derive_writes_derived_design(tmp_path):
    design = tmp_path / "sqs8.design"
    run_cli("gen", "sqs8", "--out", str(design))
    out_file = tmp_path / "sts7.design"
    code, _ = run_cli("derive", str(design), "inf_0", "--out", str(out_file))
    assert code == 0
    sub = parse_design(out_file.read_text())
    assert sub.v == 7 and len(sub.blocks) == 7


def test_resolve_found_and_exhausted(tmp_path):
    design = tmp_path / "sqs22.design"
    run_cli("gen", "sqs22", "--out", str(design))
    code, out = run_cli(
        "resolve", str(design), "--point", "inf_0", "--budget", "10000000"
    )
    assert code == 0 and out.startswith("FOUND")
    code, out = run_cli(
        "resolve", str(design), "--point", "inf_0", "--budget", "10"
    )
    assert code == 1 and out.startswith("EXHAUSTED")


def test_resolve_whole_design_none(tmp_path):
    # the Fano plane is not resolvable (7 points, 3-point blocks); the
    # search proves it, and a completed proof of absence is still exit 0
    design = tmp_path / "sqs8.design"
    run_cli("gen", "sqs8", "--out", str(design))
    sts7 = tmp_path / "sts7.design"
    run_cli("derive", str(design), "inf_0", "--out", str(sts7))
    code, out = run_cli("resolve", str(sts7), "--budget", "1000000")
    assert code == 0
    assert out.startswith("NONE")


def test_resolve_sqs8_itself_finds_the_plane_pairing(tmp_path):
    # complements of blocks are blocks, so the 14 blocks pair into 7 classes
    design = tmp_path / "sqs8.design"
    run_cli("gen", "sqs8", "--out", str(design))
    code, out = run_cli("resolve", str(design), "--budget", "1000000")
    assert code == 0
    assert out.startswith("FOUND")


def test_star_verify_roundtrip(tmp_path):
    design = tmp_path / "sqs28.design"
    code, _ = run_cli("gen", "sqs28", "--out", str(design))
    assert code == 0
    star = tmp_path / "sqs28.star"
    assert star.exists()
    code, out = run_cli("verify", "--kind", "star", str(design), str(star))
    assert code == 0
    assert "PASS star certificate" in out


def test_construct_and_report(tmp_path):
    design = tmp_path / "sqs28.design"
    run_cli("gen", "sqs28", "--out", str(design))
    out_dir = tmp_path / "out"
    code, _ = run_cli(
        "construct", str(tmp_path / "sqs28.star"), str(out_dir),
        "--design", str(design), "--jobs", "2",
    )
    assert code == 0
    assert (out_dir / "design.design").exists()
    assert len(list(out_dir.glob("point_*.res"))) == 112
    manifest = (out_dir / "manifest.txt").read_text()
    assert "design blocks=56980 v=112" in manifest
    assert manifest.count("PASS") == 113  # steiner + 112 points
    assert "resolved_points 112/112" in manifest
    code, out = run_cli("report", str(out_dir))
    assert code == 0
    assert "PASS every point resolved 112/112" in out


def test_gen_unknown_name_is_a_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["gen", "nope"])
    assert err.value.code == 2
