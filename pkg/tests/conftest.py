import hypothesis
import pytest

from apolar import (
    InverseSystem,
    build_example2,
    build_example7,
    build_prop8,
    parse_form,
    wlp_certify,
)

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.load_profile("ci")

EXAMPLE2_SEED = 7

EXAMPLE2_BASE_H = (1, 3, 6, 9, 12, 15, 18, 21, 24, 27)
EXAMPLE2_FINAL_H = (1, 3, 6, 10, 15, 21, 28, 27, 27, 28)
PROP8_H = (1, 3, 5, 7, 9, 9, 6, 3)
# min of the binomial bounds for one generic form of degree 9 in 3 variables
SINGLE_FORM_H = (1, 3, 6, 10, 15, 15, 10, 6, 3, 1)


@pytest.fixture(scope="session")
def example2_report():
    return build_example2(EXAMPLE2_SEED)


@pytest.fixture(scope="session")
def example2_system(example2_report):
    return example2_report.system


@pytest.fixture(scope="session")
def example2_base(example2_system):
    return InverseSystem(3, example2_system.generators[:-1])


@pytest.fixture(scope="session")
def prop8_system():
    return build_prop8()


@pytest.fixture(scope="session")
def ci_system():
    return InverseSystem(3, (parse_form("y1*y2*y3"),))


@pytest.fixture(scope="session")
def example7_systems():
    return {e: build_example7(e) for e in range(3, 9)}


@pytest.fixture(scope="session")
def example2_certificate(example2_system):
    # symbolic certification of the non-unimodal flagship; shared because
    # the 27x28 eliminations take tens of seconds
    return wlp_certify(example2_system)
