import pytest

from hopflift.scalars import PrimeField


@pytest.fixture(params=[2, 3, 5])
def prime(request):
    return request.param


@pytest.fixture
def F3():
    return PrimeField(3)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
