"""Shared pytest wiring: per-criterion PASS/FAIL lines for the acceptance
suite in the terminal summary."""

import re

_CRITERION_RE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")

TITLES = {
    1: "worked 3x3 family: selective optimum, adversarial greedy cycles",
    2: "200 random finite families match exhaustive enumeration",
    3: "extremal graphs for prescribed out-degrees",
    4: "closest stable matrix on the 10x10 instance",
    5: "benchmark iteration counts stay flat in dimension",
    6: "two-sided bounds sandwich every iterate",
    7: "greedy contraction beats the closed-form linear rate",
    8: "quadratic order for selective greedy, linear for simplex",
    9: "selective greedy never cycles on sparse families",
    10: "LP layer matches the vertex oracle; polytope sweep terminates",
}

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION_RE.search(report.nodeid)
    if m:
        _results[int(m.group(1))] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        word = "PASS" if _results[num] == "passed" else "FAIL"
        title = TITLES.get(num, "")
        terminalreporter.write_line(f"criterion {num:2d}: {word} - {title}")
