import numpy as np
import pytest

from turingrd import BrusselatorParams, DiffusionPair, DomainSpec, NormalFormParams

# Control point of the reference bifurcation diagram: A=2, unit rates, B=15,
# D=(0.1, 1), 1D interval of length 19.365.
P_POINT = BrusselatorParams(A=2.0, B=15.0)
P_DIFF = DiffusionPair(0.1, 1.0)
P_DOMAIN = DomainSpec(1, 19.365)
P_DOMAIN_2D = DomainSpec(2, 19.365)

FIG4_NF = NormalFormParams(nu=1.0, beta=-0.48, a=-1.0, b=0.5)
FIG4_DIFF = DiffusionPair(1.0, 0.001)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20260810))


def random_brusselator(rng) -> tuple[BrusselatorParams, DiffusionPair, DomainSpec]:
    params = BrusselatorParams(
        A=rng.uniform(0.5, 4.0),
        B=rng.uniform(0.5, 20.0),
        k1=rng.uniform(0.5, 2.0),
        k2=rng.uniform(0.5, 2.0),
        k3=rng.uniform(0.5, 2.0),
        k4=rng.uniform(0.5, 2.0),
    )
    diff = DiffusionPair(rng.uniform(0.01, 2.0), rng.uniform(0.01, 2.0))
    dom = DomainSpec(int(rng.choice([1, 2])), float(rng.choice([3.098, 19.365])))
    return params, diff, dom


def random_normal_form(rng) -> tuple[NormalFormParams, DiffusionPair, DomainSpec]:
    params = NormalFormParams(nu=rng.uniform(-2.0, 2.0), beta=rng.uniform(-2.0, 2.0))
    diff = DiffusionPair(rng.uniform(0.01, 2.0), rng.uniform(0.01, 2.0))
    dom = DomainSpec(int(rng.choice([1, 2])), float(rng.choice([3.098, 19.365])))
    return params, diff, dom
