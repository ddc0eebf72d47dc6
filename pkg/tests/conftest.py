import functools

import pytest

from hopfcyc.catalog import CATALOG
from hopfcyc.complexes import build_C_cocyclic, build_C_cyclic
from hopfcyc.exactlin import QQ


@functools.lru_cache(maxsize=None)
def instance(name, field=QQ):
    return CATALOG[name].instantiate(field)


@functools.lru_cache(maxsize=None)
def chain_models(name, cap=None):
    H, pair = instance(name)
    cap = CATALOG[name].cap if cap is None else cap
    return build_C_cocyclic(H, pair, cap), build_C_cyclic(H, pair, cap)


COMPATIBLE = [n for n in CATALOG if CATALOG[n].expected["left_compatible"]]
SAYD = [n for n in CATALOG if all(CATALOG[n].expected.values())]
ENVELOPING = [n for n in CATALOG if CATALOG[n].algebra is not None]


# one line per acceptance criterion at the end of the run

_criteria: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for k in getattr(report, "keywords", {}):
        if k.startswith("criterion_"):
            n = int(k.split("_")[1])
            _criteria[n] = _criteria.get(n, True) and report.passed


def pytest_configure(config):
    for n in range(1, 11):
        config.addinivalue_line("markers", "criterion_%d: acceptance criterion %d" % (n, n))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line("criterion %2d: %s" % (n, "PASS" if _criteria[n] else "FAIL"))
