import re

CRITERIA_LABELS = {
    1: "endpoint identity at alpha = 1",
    2: "multiplicative sufficiency (exact mode)",
    3: "log-scale similarity equals alpha",
    4: "additive sufficiency (exact mode)",
    5: "distribution preservation (stochastic KS)",
    6: "skewness preservation (stochastic)",
    7: "correlation summary: decreasing grid, endpoint >= 0.95",
    8: "tail-targeted perturbation factor >= 10",
    9: "rank-swap/spearman monotonicity, 10 seeds",
    10: "determinism and atomicity",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid or getattr(rep, "when", "call") != "call":
                continue
            match = re.search(r"criterion_(\d+)", nodeid)
            if match:
                num = int(match.group(1))
                outcome = "PASS" if status == "passed" else "FAIL"
                # a criterion split over several tests fails as a whole
                if results.get(num) != "FAIL":
                    results[num] = outcome
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(results):
        label = CRITERIA_LABELS.get(num, "")
        terminalreporter.write_line(f"criterion {num:>2}: {results[num]}  {label}")
