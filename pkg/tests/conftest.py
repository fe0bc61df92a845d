import pytest

from icobr.channel import scenario_from_dict


def benchmark_scenario(a21=1.8, c1=2.0, **overrides):
    """The relay-gain benchmark family: b1=1, b2=10, c2=1, every power 10,
    both relay phases at the full IC bandwidth."""
    doc = dict(a12=0.5, a21=a21, b1=1.0, b2=10.0, c1=c1, c2=1.0,
               P1=10.0, P2=10.0, P1R=10.0, P2R=10.0, PR=10.0,
               eta=2.0, eta_mac=1.0, eta_bc=1.0)
    doc.update(overrides)
    return scenario_from_dict(doc)


@pytest.fixture
def fig_scenario():
    return benchmark_scenario
