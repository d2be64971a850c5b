# ## Imports

from collections import Counter
from itertools import permutations

import numpy as np

from permforge import Permutation, check_property, parse_permutation, proper_intervals, statistic
from permforge.statistics import StatisticKind, StatisticPredicate, evaluate_predicate

# ## Intervals and simplicity

p = parse_permutation("1632547")
proper_intervals(p)

check_property(parse_permutation("246135"), "simple")

# ## Decompositions

check_property(parse_permutation("213654"), "plus_decomposable"), check_property(
    parse_permutation("546123"), "minus_decomposable"
)

check_property(parse_permutation("4253716"), "blockwise_simple"), check_property(
    parse_permutation("24513"), "blockwise_simple"
)

# ## Fixed points, involutions, parity

for text, prop in [("4312", "derangement"), ("1243", "involution"), ("2431", "involution"), ("3412", "parity")]:
    print(text, prop, check_property(parse_permutation(text), prop))

# ## Statistics

sigma = parse_permutation("7164523")
{k.value: statistic(sigma, k) for k in StatisticKind}

# descents plus ascents, taken mod 3
pred = StatisticPredicate(((1, "descents"), (1, "ascents")), "eq", 0, modulus=3)
evaluate_predicate(sigma, pred)

# ## Inversions and major index share a distribution

n = 6
perms = [Permutation(q) for q in permutations(range(1, n + 1))]
inv = Counter(statistic(q, "inversions") for q in perms)
maj = Counter(statistic(q, "major_index") for q in perms)
table = np.array([[inv[k], maj[k]] for k in range(n * (n - 1) // 2 + 1)])
print(table.T)
assert (table[:, 0] == table[:, 1]).all()
