# %% [markdown]
# # Free products and polynomial growth
#
# The free product places each factor family on its own coordinate of a
# product ground set. Atom counts multiply; independence numbers add.

# %%
import numpy as np

from freedim import (ChainCuts, SetFamily, atoms, certify_class_d, chain_initial_segments,
                     exponent_fit, free_product, growth_bound_report, independence_number)
from freedim.algebras import sample_subsets

a = SetFamily.from_sets(3, [{0}, {0, 1}])
b = SetFamily.from_sets(4, [{0, 1}, {1, 2}])
p = free_product([a, b])
print(p.shape, len(atoms(a)), len(atoms(b)), len(atoms(p.family)))
print(independence_number(a)[0], independence_number(b)[0], independence_number(p.family)[0])

# %% [markdown]
# A family with no d+1 independent members has at most C(|F|,0)+...+C(|F|,d)
# atoms, which grows like |F|^d. A chain is the d=1 case; a product of two
# chains is d=2.

# %%
rng = np.random.default_rng(1)
chain = chain_initial_segments(ChainCuts(65, tuple(range(64))))
grid = free_product([chain_initial_segments(ChainCuts(33, tuple(range(32))))] * 2).family
for name, fam, d in (("chain", chain, 1), ("two chains", grid, 2)):
    print(name, certify_class_d(fam, d).verified)
    rep = growth_bound_report(fam, d, sample_subsets(len(fam), (4, 8, 16, 32, 64), 3, rng))
    for row in rep.rows[::3]:
        print(f"  |F|={row.size:3d} atoms={row.atoms:5d} binomial={row.binomial:5d}")
    print("  fitted exponent:", round(exponent_fit([(r.size, r.atoms) for r in rep.rows]), 3))
