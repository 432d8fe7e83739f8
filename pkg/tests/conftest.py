import numpy as np
import pytest

from adrckit import TransferFunction, TuningConfig, TuningMode, build_controller, tune


@pytest.fixture(scope="session")
def paper_cfg():
    """Second-order design at omega_cl = 1 rad/s, k_eso = 10, b0 = 1."""
    return TuningConfig(n=2, omega_cl=1.0, k_eso=10.0, b0=1.0, mode=TuningMode.BW)


@pytest.fixture(scope="session")
def example_plant():
    """Critically damped second-order plant with unit gain and eigenfrequency."""
    return TransferFunction([1.0], [1.0, 2.0, 1.0])


@pytest.fixture(scope="session")
def chain_plant():
    def make(n: int, b0: float = 1.0) -> TransferFunction:
        den = np.zeros(n + 1)
        den[0] = 1.0
        return TransferFunction([b0], den)
    return make


@pytest.fixture(scope="session")
def controllers(paper_cfg):
    """The assembled controller for each of the four tuning modes."""
    out = {}
    for mode in TuningMode:
        cfg = paper_cfg.with_mode(mode)
        out[mode] = build_controller(cfg, tune(cfg))
    return out
