import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oddcox import SystemInvariant, canonical_star


def star(*exponents):
    """Canonical star form with the given leaf exponents."""
    return canonical_star(SystemInvariant(len(exponents) + 1, tuple(sorted(exponents))))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid and "::" in nodeid:
                name = nodeid.split("::")[-1]
                outcomes[name] = "PASS" if status == "passed" else "FAIL"
    if outcomes:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(outcomes):
            terminalreporter.write_line(f"{outcomes[name]} {name}")
