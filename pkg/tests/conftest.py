"""Shared fixtures and strategies."""

import numpy as np
import pytest
from hypothesis import strategies as st

from focklab import fockcore as fc
from focklab import systems as sy
from focklab import weights as wt


@pytest.fixture(scope="session")
def classical_weight():
    return wt.classical()


@pytest.fixture(scope="session")
def classical_space_8(classical_weight):
    return fc.compute_moments(classical_weight, 8)


@pytest.fixture(scope="session")
def classical_space_60(classical_weight):
    return fc.compute_moments(classical_weight, 60)


@pytest.fixture(scope="session")
def lattice_system_4(classical_space_8, classical_weight):
    sp = fc.compute_moments(classical_weight, 4)
    return sy.build_system(sy.disc_lattice(4, 1.0), sp)


def complex_in_disc(radius=2.0):
    """Strategy for complex numbers with |z| <= radius (polar draw)."""
    return st.builds(
        lambda r, t: complex(r * np.cos(t), r * np.sin(t)),
        st.floats(0.0, radius),
        st.floats(0.0, 2.0 * np.pi),
    )


def coeff_vectors(dim, scale=3.0):
    """Strategy for complex coefficient vectors of a fixed length."""
    member = st.builds(
        complex,
        st.floats(-scale, scale, allow_nan=False),
        st.floats(-scale, scale, allow_nan=False),
    )
    return st.lists(member, min_size=dim, max_size=dim).map(np.array)
