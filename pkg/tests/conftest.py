from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(results):
        title, checks = results[n]
        bad = [name for name, ok, _ in checks if not ok]
        status = "PASS" if not bad else "FAIL"
        line = f"{status} criterion {n:>2}: {title} ({len(checks) - len(bad)}/{len(checks)})"
        if bad:
            line += " failing: " + ", ".join(bad)
        tr.write_line(line)
