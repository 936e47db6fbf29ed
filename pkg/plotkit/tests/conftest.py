import subprocess
import sys

import pytest


def run_pdiv(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "pdiv.cli", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def golden_dir(tmp_path_factory):
    """Golden CSVs produced by the pdiv command-line tool."""
    root = tmp_path_factory.mktemp("golden")
    for gm in ("0", "0.5", "1"):
        run_pdiv(
            "region",
            "--gamma-minus", gm,
            "--resolution", "400",
            "--out", str(root / f"region_gm{gm}.csv"),
        )
    run_pdiv(
        "timeline",
        "--model", "eternal-nm",
        "--t-max", "10",
        "--points", "501",
        "--out", str(root / "timeline_enm.csv"),
    )
    run_pdiv(
        "timeline",
        "--model", "jc",
        "--t-max", "20",
        "--points", "1001",
        "--out", str(root / "timeline_jc.csv"),
    )
    return root
