import pytest

from graph_ph.graph import enumerate_graphs


@pytest.fixture(scope="session")
def graphs_upto_6():
    return [g for n in range(1, 7) for g in enumerate_graphs(n)]


@pytest.fixture(scope="session")
def connected_upto_6(graphs_upto_6):
    return [g for g in graphs_upto_6 if g.is_connected()]


@pytest.fixture(scope="session")
def connected_upto_7(connected_upto_6):
    return connected_upto_6 + enumerate_graphs(7, connected=True)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
