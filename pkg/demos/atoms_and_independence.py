# %% [markdown]
# # Atoms, independence and shattering
#
# A finite set family is stored as a boolean matrix, one row per member.
# Its atoms are the points grouped by membership signature.

# %%
import numpy as np

from freedim import SetFamily, atoms, independence_number, is_irredundant, realized_trace

fam = SetFamily.from_sets(6, [{0, 1, 2}, {1, 2, 3}, {2, 4}])
print(fam.matrix.astype(int))

# %%
for cell, sig in atoms(fam):
    print(sig, sorted(cell))

# %% [markdown]
# The number of atoms equals the number of distinct columns, i.e. the size of
# the realized trace. A family is independent when every one of the 2^k
# signatures shows up.

# %%
print("trace:", realized_trace(fam).as_strings())
print("independence number:", independence_number(fam))
print("irredundant:", is_irredundant(fam))

# %% [markdown]
# Three "coordinate" sets on the 8-point cube are fully independent.

# %%
cube = SetFamily.from_sets(8, [[x for x in range(8) if x >> i & 1] for i in range(3)])
print(independence_number(cube), len(atoms(cube)))

# %% [markdown]
# Random families: atoms never exceed 2^|F| or the ground size.

# %%
rng = np.random.default_rng(0)
for m in (2, 4, 8):
    f = SetFamily(12, rng.random((m, 12)) < 0.5)
    print(m, len(atoms(f)), min(2 ** m, 12))
