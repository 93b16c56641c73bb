# %% [markdown]
# # Covers, good covers and the counting inequality
#
# Covers are finite families of cells whose union is the ground set. The joint
# refinement of several covers is given by the atoms of all their cells.

# %%
from freedim import (Cover, CountingParams, atoms_refinement, build_grid_instance,
                     counting_check, find_min_n, good_cover_floor, interval_joint_refinement,
                     is_refinement, push_cover, restrict_cover)

c1 = Cover.of(6, [{0, 1, 2}, {3, 4, 5}])
c2 = Cover.of(6, [{0, 1}, {2, 3}, {4, 5}])
joint = atoms_refinement([c1, c2])
print(sorted(map(sorted, joint.cells)), is_refinement(joint, c1), is_refinement(joint, c2))
print(push_cover([0, 0, 1, 1, 2, 2], 3, c2).cells)
print(restrict_cover(c1, {2, 3}).cells)

# %% [markdown]
# On a chain, interval covers have a joint refinement built from endpoints,
# never larger than twice the total number of cells.

# %%
iv1 = Cover.from_intervals(12, [(0, 5), (4, 11)])
iv2 = Cover.from_intervals(12, [(0, 8), (7, 11)])
print(interval_joint_refinement(12, [iv1, iv2]).intervals())

# %% [markdown]
# Functions separating points by 1/2 force any cover on which each function
# oscillates by at most 1/3 to isolate every point.

# %%
inst = build_grid_instance(1, 1, 1)
print(len(inst), good_cover_floor(inst, Cover.singletons(4)))
print(good_cover_floor(inst, Cover.of(4, [{0, 1}, {2}, {3}])))

# %% [markdown]
# The counting inequality picks the grid size n at which the separated grid
# outgrows what d*n*m + p*m1 functions could cover with polynomially many cells.

# %%
for n in (7, 8):
    print(n, counting_check(CountingParams(d=2, m=1, m1=1, p=4, n=n)))
print("smallest n:", find_min_n(2, 1, 1, 4, limit=100))
