from pathlib import Path

import pytest

from dismantling import FormalContext, Lattice, enumerate_concepts, read_context

DATA = Path(__file__).parent / "data"

FIG1_COVERS = "1-2 1-3 1-7 2-4 2-5 3-4 3-6 4-10 5-10 6-10 6-8 7-8 7-9 8-11 9-11 10-11"
FIG5_COVERS = ("1-2 1-3 1-4 1-5 1-6 1-7 2-8 2-9 3-8 3-10 4-8 4-11 5-9 5-10 6-9 6-11 7-10 7-11 "
               "8-12 9-12 10-12 11-12")


def lattice_from_covers(n: int, covers: str) -> Lattice:
    return Lattice.from_covers([str(i) for i in range(1, n + 1)], [tuple(e.split("-")) for e in covers.split()])


@pytest.fixture
def fig2():
    return FormalContext.from_table("123", "abc", ["xx.", "x.x", ".xx"])


@pytest.fixture
def fig3():
    return FormalContext.from_table("123456", "abcdef",
                                    ["x.....", ".x....", "..x...", "xxxx..", "xxx.x.", "xxx..x"])


@pytest.fixture
def fig4():
    return FormalContext.from_table("12345", "abcde", ["x..x.", ".x..x", "xx...", ".xx..", "..x.."])


@pytest.fixture
def fig4_relation():
    return frozenset({("1", "a"), ("1", "d"), ("3", "a"), ("4", "b"), ("4", "c"), ("5", "c")})


@pytest.fixture
def fig5_lattice():
    return lattice_from_covers(12, FIG5_COVERS)


@pytest.fixture
def fig5():
    return FormalContext.from_table("234567", ["8", "9", "10", "11"],
                                    ["XX..", "X.X.", "X..X", ".XX.", ".X.X", "..XX"])


@pytest.fixture
def fig1_lattice():
    return lattice_from_covers(11, FIG1_COVERS)


@pytest.fixture
def chain3():
    return Lattice.from_covers(["bot", "mid", "top"], [("bot", "mid"), ("mid", "top")])


@pytest.fixture
def L2(fig2):
    return enumerate_concepts(fig2)


@pytest.fixture
def L3(fig3):
    return enumerate_concepts(fig3)


@pytest.fixture
def L4(fig4):
    return enumerate_concepts(fig4)


@pytest.fixture
def data_dir():
    return DATA


def load(name: str) -> FormalContext:
    return read_context(DATA / name)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
