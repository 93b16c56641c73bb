# %% [markdown]
# # Chains, pseudotrees and their atom counts
#
# Initial segments of a chain are pairwise comparable, so no two are
# independent, and k of them cut the chain into at most k+1 atoms.

# %%
from freedim import (ChainCuts, Pseudotree, atoms, chain_initial_segments,
                     heindorf_check, ica_bound_report, independence_number,
                     initial_chains, wellmet_closure)

f = chain_initial_segments(ChainCuts(10, (1, 4, 6)))
print(f.members)
print(heindorf_check(f), independence_number(f)[0], len(atoms(f)))

# %% [markdown]
# In a pseudotree (a forest given by parent pointers) the down-set of each
# node is a chain. Down-sets of picked nodes produce at most 2|F| atoms.

# %%
forest = Pseudotree((None, 0, 0, 1, 1, None, 5))
print("roots:", forest.roots)
closed = wellmet_closure(forest)
print("closure parents:", closed.parent)
picks = [3, 4, 2, 6]
print(initial_chains(forest, picks).members)
print(ica_bound_report(forest, picks))
