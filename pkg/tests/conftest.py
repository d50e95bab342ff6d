import numpy as np
import pytest

from henon_rigidity import MonicCenteredHenon


def random_map(rng: np.random.Generator, d: int) -> MonicCenteredHenon:
    """Coefficients in the closed unit disc, delta in the annulus 1/2 <= |delta| <= 2."""
    coeffs = np.sqrt(rng.random(d - 1)) * np.exp(2j * np.pi * rng.random(d - 1))
    delta = 0.5 * 4.0 ** rng.random() * np.exp(2j * np.pi * rng.random())
    return MonicCenteredHenon(d, tuple(coeffs), delta)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def quad():
    """The worked example ``(x, y) -> (y, y**2 - x)``."""
    return MonicCenteredHenon.quadratic(0.0, 1.0)


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        doc = _ACCEPTANCE.get(name, ("", ""))[1]
        _ACCEPTANCE[name] = (report.outcome, doc)


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py" in item.nodeid:
            doc = (item.function.__doc__ or "").strip().splitlines()
            _ACCEPTANCE.setdefault(item.name, ("not run", doc[0] if doc else ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (outcome, doc) in sorted(_ACCEPTANCE.items(), key=lambda kv: _ac_key(kv[0])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  {doc}")


def _ac_key(name: str):
    digits = "".join(ch for ch in name.split("_")[1] if ch.isdigit()) if name.startswith("test_ac") else ""
    return (int(digits) if digits else 99, name)
