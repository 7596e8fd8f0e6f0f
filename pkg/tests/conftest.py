import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ecg_synth import synth_ecg  # noqa: E402

from lcadc import AdcConfig, kernels  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def cfg():
    return AdcConfig()


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    """Run a test once per kernel backend."""
    if request.param == "cython" and not kernels.compiled_available():
        pytest.skip("compiled kernels not built")
    mod = kernels.get_backend(request.param)
    monkeypatch.setattr(kernels, "backend", mod)
    return mod


@pytest.fixture(scope="session")
def ecg_csv(tmp_path_factory):
    """60 s single-column synthetic ECG at 360 Hz, plus its R-peak times."""
    t, v, peaks = synth_ecg(duration=60.0, fs=360.0, seed=7)
    path = tmp_path_factory.mktemp("ecg") / "ecg360.csv"
    np.savetxt(path, v, fmt="%.9f", header="value", comments="")
    return path, peaks


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
