import os
import sys

from hypothesis import HealthCheck, settings

HERE = os.path.dirname(__file__)
sys.path.insert(0, os.path.dirname(HERE))

settings.register_profile("ci", deadline=None, derandomize=True, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

DATA = os.path.join(HERE, "data")
SAMPLES = os.path.join(os.path.dirname(HERE), "samples")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
