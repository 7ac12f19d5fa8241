import json
import pathlib

import pytest

from toriclg.sigma import SplitBundleData, build_lg, product, projective_line, reorder_rays

DATA = pathlib.Path(__file__).parent / "data"


def p1xp1():
    # rays in the order (1,0), (0,1), (-1,0), (0,-1)
    return reorder_rays(product(projective_line(), projective_line()), [0, 2, 1, 3])


def elliptic_model(K=(0, 0, 0, 0)):
    return build_lg(SplitBundleData(p1xp1(), [(1, 1, 1, 1)]), K)


def three_points_model():
    return build_lg(SplitBundleData(projective_line(), [(2, 1)]), (0, 0))


@pytest.fixture
def data_dir():
    return DATA


def load(name):
    return json.loads((DATA / name).read_text())


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
