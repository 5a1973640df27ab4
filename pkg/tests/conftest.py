"""Shared test configuration.

The terminal summary prints one PASS/FAIL line per acceptance criterion so
the gate status is readable without scrolling through the full report.
"""

from __future__ import annotations

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_(c\d{2})")

_LABELS = {
    "c01": "symbol determinant identity, all periods to 10",
    "c02": "even-parity 2cos form of the identity",
    "c03": "block-circulant factorization, m <= 4, n <= 6",
    "c04": "embedded targets verified + exact double-root certificate",
    "c05": "known spectra (segments and small matrices)",
    "c06": "finite eigenvalues inside the period <= 7 union",
    "c07": "square bound |re| + |im| <= 2 for n <= 12",
    "c08": "independent oracle agreement (charpoly, hausdorff)",
    "c09": "scatter artifacts emitted + density baselines",
    "c10": "root finder residual and reconstruction contracts",
}

_RANK = {"FAIL": 3, "PASS": 2, "SKIP": 1}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    seen: dict[str, str] = {}
    for bucket, verdict in (
        ("failed", "FAIL"),
        ("error", "FAIL"),
        ("passed", "PASS"),
        ("skipped", "SKIP"),
    ):
        for rep in terminalreporter.stats.get(bucket, ()):
            match = _CRITERION.search(getattr(rep, "nodeid", "") or "")
            if match is None:
                continue
            key = match.group(1)
            if _RANK[verdict] > _RANK.get(seen.get(key, ""), 0):
                seen[key] = verdict
    if not seen:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for key in sorted(_LABELS):
        if key in seen:
            terminalreporter.write_line(f"{key}  {_LABELS[key]:<58s} {seen[key]}")
