import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("argv, needle", [
    (["run_demos.py", "tweety", "roulette"], "roulette  ok"),
    (["lottery_scaling.py", "--sizes", "50"], "     50"),
    (["valor_sweep.py", "--given", "bird", "--sentence", "fly"], "0.6000"),
])
def test_script_runs(argv, needle):
    proc = subprocess.run([sys.executable, str(SCRIPTS / argv[0]), *argv[1:]],
                          capture_output=True, text=True, check=True)
    assert needle in proc.stdout
