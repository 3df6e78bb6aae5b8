import pytest

from hideseek import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timings and tests never pay JIT."""
    _kernels.warmup()
