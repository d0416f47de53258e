"""Build a tiny game by hand, inspect attractors, solve it.

Run: python demos/solve_basics.py
"""

from paritylab import ParityGame, PositionSet, Subgame, attractor, solve

# positions: 0 and 1 trade moves, 2 is an even self-loop both can reach
game = ParityGame(
    owners=[0, 1, 1],
    priorities=[2, 1, 0],
    successors=[[1, 2], [0, 2], [2]],
)
whole = Subgame.whole(game)

sink = PositionSet.of(game, [2])
print("attractor of {2} for player 0:", attractor(whole, sink, 0).indices())
print("attractor of {2} for player 1:", attractor(whole, sink, 1).indices())

regions, stats = solve(whole)
print("W0 =", regions.w0.indices())
print("W1 =", regions.w1.indices())
print(f"solved in {stats.total_calls} recursive calls")
