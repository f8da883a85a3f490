import numpy as np
import pytest

from pulsestab import (
    AbcParameters,
    build_grid,
    resolve_wave_parameters,
    sample_wave,
)


def make_case1(eta0, b=1.0, sign=+1, n=512, lfac=40.0):
    """Free-amplitude pulse (a = c = -b): (params, spec, grid, wave)."""
    params = AbcParameters(a=-b, b=b, c=-b)
    spec = resolve_wave_parameters(params, eta0, sign)
    grid = build_grid(n, lfac / spec.lam)
    return params, spec, grid, sample_wave(spec, grid)


def make_standing(a=-1.0, b=1.0, sign=+1, n=512, lfac=40.0):
    """Standing pulse (a = c, eta0 = -3/2): (params, spec, grid, wave)."""
    params = AbcParameters(a=a, b=b, c=a)
    spec = resolve_wave_parameters(params, -1.5, sign)
    grid = build_grid(n, lfac / spec.lam)
    return params, spec, grid, sample_wave(spec, grid)


@pytest.fixture(scope="session")
def case1_eta_minus1():
    return make_case1(-1.0)


@pytest.fixture(scope="session")
def standing_z1():
    return make_standing()


def dense_eigenvalues(operator):
    return np.linalg.eigvalsh(operator.entries)
