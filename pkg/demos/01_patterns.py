# ## Imports

from permforge import (
    avoids,
    bivincular,
    boxed,
    classic,
    consecutive,
    contains,
    find_occurrences,
    mesh,
    parse_permutation,
    to_mesh,
    vincular,
)

# ## A target permutation

sigma = parse_permutation("5 2 1 6 3 4")
print(sigma, "length", len(sigma))

# padded view: position 0 holds 0, position n+1 holds n+1
pad = sigma.padded()
[pad[i] for i in range(len(pad))]

# ## Classic containment

# every increasing triple is an occurrence of 123
find_occurrences(sigma, classic("123"))

# inversions are exactly the occurrences of 21
len(find_occurrences(sigma, classic("21")))

avoids(parse_permutation("12345"), classic("21"))

# ## Adjacency requirements

# vincular: the first two letters must sit next to each other
find_occurrences(sigma, vincular("132", {1}))

# bivincular adds value adjacencies on top
find_occurrences(sigma, bivincular("312", {2}, {2}))

# consecutive: a contiguous window
t = parse_permutation("152463")
find_occurrences(t, consecutive("312"))

# ## Shaded regions

# a cell (x, y) must be empty of target points
shaded = mesh("132", [(0, 0), (2, 1), (2, 2)])
find_occurrences(sigma, shaded)

# boxed: nothing strictly inside the occurrence's bounding box
find_occurrences(parse_permutation("236514"), boxed("231"))

# ## Everything is a mesh pattern

for p in (classic("21"), vincular("132", {1}), boxed("231"), consecutive("312")):
    m = to_mesh(p)
    print(f"{p.describe():32s} -> {len(m.regions)} shaded cells")

# the reduction never changes the answer
all(contains(sigma, p) == contains(sigma, to_mesh(p)) for p in (vincular("132", {1}), shaded, boxed("231")))
