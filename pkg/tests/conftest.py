"""
Shared fixtures: default plant, the six published pushing cases, and the
total weight back-solved from the first of them
"""

import math

import pytest

from harness.case_store import SimCase
from sim.models import ContactParams, Gains, MassGeometry, UamParams

# (case, beta_deg, phi_deg, alpha_deg, f_E_d, T_sum_d)
TABLE_CASES = [
    (1, -30.0, -5.0, -25.0, 1.5370, 8.8177),
    (2, -30.0, -10.0, -20.0, 3.7840, 10.8956),
    (3, -60.0, -10.0, -50.0, 1.6895, 8.4258),
    (4, -60.0, -15.0, -45.0, 2.7280, 9.1281),
    (5, -90.0, -15.0, -75.0, 1.9970, 7.7160),
    (6, -90.0, -20.0, -70.0, 2.7127, 7.9314),
]


@pytest.fixture
def params():
    return UamParams()


@pytest.fixture
def contact():
    return ContactParams()


@pytest.fixture
def gains():
    return Gains()


@pytest.fixture
def table_cases():
    return list(TABLE_CASES)


@pytest.fixture
def G_t_table():
    """G_t = f_E sin(alpha0) / sin(phi0) from the first row"""
    _, _, phi, alpha, f_E, _ = TABLE_CASES[0]
    return f_E * math.sin(math.radians(abs(alpha))) / math.sin(math.radians(abs(phi)))


@pytest.fixture
def mg_table(G_t_table):
    return MassGeometry.from_total_weight(G_t_table, g=9.81)


@pytest.fixture
def make_case():
    def factory(name="case", beta_deg=-60.0, phi_d_deg=-10.0, **overrides):
        return SimCase(name=name, beta_deg=beta_deg, phi_d_deg=phi_d_deg, **overrides)
    return factory
