import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from groupmatroid.groups import GroupProduct, cyclic, random_subgroup, symmetric, subgroup_closure
from groupmatroid.groups import construct_group

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FACTOR_SPECS = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:6", "symmetric:3", "abelian:2x2"]
ABELIAN_SPECS = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:6", "abelian:2x2"]


def product_of(specs):
    return GroupProduct([construct_group(s) for s in specs])


@st.composite
def subgroups(draw, specs=FACTOR_SPECS, max_n=3, max_order=216):
    """Random subgroup of a random product with |G| ≤ max_order."""
    n = draw(st.integers(1, max_n))
    chosen = []
    order = 1
    for _ in range(n):
        options = [s for s in specs if order * construct_group(s).order <= max_order]
        if not options:
            break
        s = draw(st.sampled_from(options))
        chosen.append(s)
        order *= construct_group(s).order
    parent = product_of(chosen)
    k = draw(st.integers(0, 3))
    gens = [tuple(draw(st.integers(0, o - 1)) for o in parent.orders) for _ in range(k)]
    return subgroup_closure(parent, gens)


def abelian_subgroups(max_n=3, max_order=216):
    return subgroups(specs=ABELIAN_SPECS, max_n=max_n, max_order=max_order)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def z6():
    return cyclic(6)


def random_subgroups(seed, count, specs=FACTOR_SPECS, max_n=3, max_order=216):
    """Deterministic sweep used by the acceptance suite and the slower tests."""
    rng = np.random.default_rng(seed)
    groups = {s: construct_group(s) for s in specs}
    out = []
    while len(out) < count:
        n = int(rng.integers(1, max_n + 1))
        chosen, order = [], 1
        for _ in range(n):
            options = [s for s in specs if order * groups[s].order <= max_order]
            if not options:
                break
            s = options[int(rng.integers(len(options)))]
            chosen.append(groups[s])
            order *= groups[s].order
        out.append(random_subgroup(rng, GroupProduct(chosen)))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
