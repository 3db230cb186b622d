import numpy as np
import pytest

from hartman import numerics


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def captured_systems(monkeypatch):
    """Record every ``(A, b, x)`` passed through ``solve_dense``."""
    seen = []
    real = numerics.solve_dense

    def spy(A, b):
        x = real(A, b)
        seen.append((np.array(A), np.array(b), x))
        return x

    for mod in ("hartman.scattering1d", "hartman.splitter", "hartman.ring"):
        monkeypatch.setattr(f"{mod}.solve_dense", spy)
    return seen
