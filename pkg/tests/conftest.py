import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    status = "PASS" if report.passed else ("FAIL" if report.failed else "SKIP")
    name = report.nodeid.split("::")[-1]
    print(f"\n[{status}] {name}", flush=True)
