# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Reformulations, exactly
#
# Every comparison below is between integers or `Fraction`s.  The running
# example is F = {∅, {a}, {b}, {a,b}, {a,b,c}}, with column sums (3, 3, 1)
# and m = 5.

# %%
from fractions import Fraction

from ucsets import (
    SetFamily,
    characteristic_matrix,
    check_conjecture_10,
    check_frankl,
    check_prop14,
    check_simplex,
    check_strong,
    minimal_r,
    r_tuple_intersection_average,
    symdiff_identity,
    weight_wr,
)

f = SetFamily.from_sets([[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]], "abc")
print("Frankl:", check_frankl(f).describe(), "witness", check_frankl(f).witness)

# %% [markdown]
# ## Weights on the simplex
#
# At a vertex e_k the weighted form is the k-th column sum; uniform weights
# can lose.  The weights w_r are proportional to r-th powers of the column
# sums and move toward the best vertex as r grows.

# %%
print("uniform:", check_simplex(f, [Fraction(1, 3)] * 3).describe())
F = characteristic_matrix(f)
for r in range(4):
    w = weight_wr(F, r)
    print(f"r={r}: w = ({', '.join(map(str, w))})  ->  {check_simplex(f, w).describe()}")

# %% [markdown]
# ## r-tuples
#
# The r = 0 form asks for average member size at least n/2, which fails
# here: 14 < 15.  From r = 1 on it holds.

# %%
for r in range(4):
    avg = r_tuple_intersection_average(f, r)
    print(f"r={r}: tuple average {avg}, check: {check_conjecture_10(f, r).describe()}")
print(minimal_r(f).describe())

# %% [markdown]
# ## The strong form at r = 1

# %%
for cid, rep in check_strong(f).items():
    print(f"{cid:4} {rep.describe()}")

# %% [markdown]
# ## Symmetric differences
#
# Σ|A⊗B| = Σ|A⊕B| + Σδ² holds for any family; the first sum beats the
# second unless every element lies in exactly half of the members.

# %%
ident = symdiff_identity(f)
print(ident.describe(), "deltas", ident.deltas, "strict", ident.strict)
print(symdiff_identity(SetFamily.powerset(3)).describe())
hyp, c12 = check_prop14(f)
print("sufficient condition:", hyp.describe(), "| implied:", c12.describe())
