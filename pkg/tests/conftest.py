import sys
from pathlib import Path

import numpy as np
import pytest

# Add src/ to path for imports
src_path = Path(__file__).parent.parent / "src"
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

# tests/ itself, for the oracle module
tests_path = Path(__file__).parent
if str(tests_path) not in sys.path:
    sys.path.insert(0, str(tests_path))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gaussian_8x12():
    """Column-normalized 8 x 12 Gaussian matrix."""
    from solver import make_matrix

    return make_matrix(8, 12, "gaussian", np.random.default_rng(2024))


@pytest.fixture
def isolated_env(monkeypatch, tmp_path):
    """Clear LPREC_* settings and send reports to a temp dir."""
    for key in ("LPREC_ENUM_CAP", "LPREC_WORKERS"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("LPREC_REPORT_DIR", str(tmp_path / "reports"))
    return tmp_path
