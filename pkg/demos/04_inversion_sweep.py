# ## Imports

import sys

import numpy as np

from permforge.oeis import A000712, compare_stabilized
from permforge.sweep import SweepSpec, run_sweep, write_csv

# ## Count 1324-avoiders by length and inversions

result = run_sweep(SweepSpec((1, 9), (0, 12)))
write_csv(result, sys.stdout)

# ## The matrix itself

counts = result.counts
counts.shape, counts.dtype

# rows sum to the number of avoiders with at most 12 inversions
counts.sum(axis=1)

# ## Columns freeze from n = k + 2 on

diag = np.array([result.cell(n, k) for n, k in result.diagonal()])
diag, np.array(A000712.terms[: len(diag)])

for row in compare_stabilized(result.as_table(), A000712):
    print(row.line())
