import os
import random
import sys

import pytest

# ensure project root on sys.path
PROJ_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJ_ROOT not in sys.path:
    sys.path.insert(0, PROJ_ROOT)

from kcmap.nnf.store import NnfStore  # noqa: E402
from kcmap.properties import classify, membership  # noqa: E402
from kcmap.transform import transformer  # noqa: E402
from kcmap.oracle import truth_table  # noqa: E402


@pytest.fixture
def store():
    return NnfStore(4)


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(autouse=True)
def _reset_knobs():
    # apply_settings mutates module-level knobs; every test starts from the defaults
    saved = (truth_table.MAX_VARS, truth_table.MAX_PRIME_VARS, classify.USE_ORACLE, membership.VERIFY_SEMANTIC, transformer.VERIFY_PI)
    yield
    (truth_table.MAX_VARS, truth_table.MAX_PRIME_VARS, classify.USE_ORACLE, membership.VERIFY_SEMANTIC, transformer.VERIFY_PI) = saved


@pytest.fixture
def quiet_config(tmp_path):
    """A settings file that keeps log files out of the project tree."""
    cfg = tmp_path / "settings.yaml"
    cfg.write_text(
        "logging:\n"
        "  to_files: false\n"
        "  console: false\n",
        encoding="utf-8",
    )
    return str(cfg)
