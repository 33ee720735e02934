import pytest

ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body runs inside the context."""

    class _Recorder:
        def __init__(self):
            self.label = None

        def __call__(self, label):
            self.label = label
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            status = "PASS" if exc_type is None else "FAIL"
            ACCEPTANCE_RESULTS.append(f"{status}  {self.label}")
            return False

    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
