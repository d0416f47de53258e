import pytest

from paritylab import ParityGame, Subgame, gen_core, gen_scc


def mk(owners, priorities, successors, labels=None):
    return ParityGame(owners, priorities, successors, labels=labels)


def names(game, positions):
    """Sorted label strings of a PositionSet or Subgame (test shorthand)."""
    ps = getattr(positions, "alive", positions)
    return sorted(str(game.labels[i]) for i in ps.indices())


@pytest.fixture(scope="session")
def core1():
    return gen_core(1)


@pytest.fixture(scope="session")
def scc1():
    return gen_scc(1)


@pytest.fixture
def whole_core1(core1):
    return Subgame.whole(core1)
