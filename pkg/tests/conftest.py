import re

_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_c(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    num, label = int(m.group(1)), m.group(2).replace("_", " ")
    if report.failed or (report.when == "call" and num not in _criteria):
        _criteria[num] = (label, "FAIL" if report.failed else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(_criteria):
        label, status = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d} {status}: {label}")
