# ## Imports

import time
from pathlib import Path

from permforge import SolveConfig, brute_force_solve, load_model, serialize_model, solve
from permforge.model import Model

HERE = Path(__file__).parent

# ## Load the four-step model

model = load_model(HERE / "models" / "step4.json")
for c in model.constraints:
    print(c.describe())

# ## Solve it at length 9

out = solve(model)
print(out.count, "solutions")
[s.perm.compact() for s in out.solutions[:5]]

# ## Peel constraints off one at a time

for keep in range(2, 7):
    partial = Model(model.length, model.constraints[:keep])
    print(keep, "constraints:", solve(partial, SolveConfig(mode="count")).count)

# ## Growing the length

for n in range(5, 13):
    t0 = time.perf_counter()
    c = solve(Model(n, model.constraints), SolveConfig(mode="count")).count
    print(f"n={n:2d}  {c:5d}  {time.perf_counter() - t0:.2f}s")

# ## Cross-check against generate-and-test

ref = brute_force_solve(Model(8, model.constraints))
ref.count == solve(Model(8, model.constraints)).count

# ## Round-trip the document

print(serialize_model(model).decode())
