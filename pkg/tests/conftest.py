import pytest
from hypothesis import HealthCheck, settings

from conductors import characters as ch
from conductors import weildeligne as wdm

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

# Every (rep, subgroup) pair whose invariant subspace is computed anywhere in
# the session is checked against the character average.
CROSS_CHECKS = {"pairs": 0, "mismatches": []}
ACCEPTANCE_LINES: list[str] = []

_original_invariant_subspace = wdm.invariant_subspace


def _checked_invariant_subspace(rep, H):
    V = _original_invariant_subspace(rep, H)
    chi = rep.__dict__.get("_character")
    if chi is None:
        chi = rep.__dict__["_character"] = rep.character()
    CROSS_CHECKS["pairs"] += 1
    if V.dim != ch.fixed_dim(chi, H):
        CROSS_CHECKS["mismatches"].append((H.elements, V.dim, ch.fixed_dim(chi, H)))
        raise AssertionError(f"dim V^H = {V.dim} but the character average gives "
                             f"{ch.fixed_dim(chi, H)} for H = {H.elements}")
    return V


@pytest.fixture(autouse=True, scope="session")
def cross_check_invariants():
    wdm.invariant_subspace = _checked_invariant_subspace
    yield CROSS_CHECKS
    wdm.invariant_subspace = _original_invariant_subspace


@pytest.fixture
def record_acceptance():
    def record(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"invariant_subspace cross-checks: {CROSS_CHECKS['pairs']} pairs, "
        f"{len(CROSS_CHECKS['mismatches'])} mismatches")
