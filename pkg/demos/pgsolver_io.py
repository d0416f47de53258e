"""Round-trip a game through the PGSolver text format.

Run: python demos/pgsolver_io.py
"""

import tempfile
from pathlib import Path

from paritylab import Subgame, gen_scc, parse_pgsolver, solve, write_pgsolver

game = gen_scc(1)
text = write_pgsolver(game)
print(text, end="")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "game.pg"
    path.write_text(text, encoding="utf-8")
    back = parse_pgsolver(path.read_text(encoding="utf-8"))

assert back.successors == game.successors
assert back.labels == game.labels
print("\nround trip preserved all", back.n, "positions and their labels")

regions, _ = solve(Subgame.whole(back))
print("won by player 0:", not regions.w1)
