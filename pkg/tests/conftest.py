import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("FLAGZERO_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.delenv("FLAGZERO_THREADS", raising=False)


# one pass/fail line per acceptance criterion, printed after the run
_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(getattr(item, "function", None), "criterion", None)
    if label is None:
        return
    doc = (item.function.__doc__ or "").strip().splitlines()[0]
    if report.failed:
        _acceptance[label] = (doc, "FAIL")
    elif report.when == "call" and label not in _acceptance:
        _acceptance[label] = (doc, "PASS" if report.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s[2:])):
        doc, status = _acceptance[label]
        terminalreporter.write_line(f"{label:<5} {status}  {doc}")
