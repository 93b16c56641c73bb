# %% [markdown]
# # Sauer-Shelah witnesses
#
# A trace set with more than C(N,0)+...+C(N,d) patterns must shatter some
# d+1 coordinates. `sauer_shelah_find` returns the lex-first one.

# %%
from itertools import combinations

from freedim import TraceSet, binomial_bound, sauer_shelah_find

trace = TraceSet.of(4, ["0000", "1000", "0100", "1100", "0010", "0001"])
for d in range(4):
    print(d, len(trace), binomial_bound(4, d), sauer_shelah_find(trace, d))

# %% [markdown]
# The bound is tight: all patterns of weight at most d shatter nothing of
# size d+1.

# %%
n, d = 5, 2
low = [format(x, f"0{n}b") for x in range(2 ** n) if bin(x).count("1") <= d]
tight = TraceSet.of(n, low)
print(len(tight), binomial_bound(n, d), sauer_shelah_find(tight, d))
bigger = TraceSet.of(n, low + ["11100"])
print(sauer_shelah_find(bigger, d))
