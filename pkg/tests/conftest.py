import pytest

CRITERIA = {
    1: "Clifford closed forms at 200 rational t per case",
    2: "Clifford bound anchors",
    3: "restriction bound table and strict dominance by Xi",
    4: "BN-bound junctions and first-wall ratios",
    5: "bound-curve identities",
    6: "gamma and delta constants",
    7: "support property on U_gamma",
    8: "kernel semi-negativity of Q",
    9: "weight enumeration",
    10: "brute-force oracle dominance",
}

_outcomes: dict[int, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(mark.args[0], []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            continue
        failed = [name for name, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {n:2d} [{status}] {title} ({len(results) - len(failed)}/{len(results)} tests)"
        tr.write_line(line)
        for name in failed:
            tr.write_line(f"      failed: {name}")
