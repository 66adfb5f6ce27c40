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
# # Families, reduction and characteristic matrices
#
# A family lives on a ground set of at most 64 labelled elements; each
# member is stored as a bit row.  We start from a five-member family on
# {a, b, c} that shows up again in later notebooks.

# %%
from pathlib import Path

import numpy as np

from ucsets import (
    SetFamily,
    characteristic_matrix,
    complement,
    complement_family,
    element_stats,
    is_intersection_closed,
    is_reduced,
    is_union_closed,
    product_matrix,
    product_sum,
    read_fam,
    reduce,
)

DATA = Path(__file__).resolve().parent.parent / "data" if "__file__" in globals() else Path("../data")
f = read_fam(DATA / "counterexample.fam")
print(f)
print("union-closed:", is_union_closed(f), " intersection-closed:", is_intersection_closed(f))
print("reduced:", is_reduced(f).describe())

# %% [markdown]
# ## Element counts
#
# |F_x| is the number of members containing x, and δ_x = |F_x| − |F_x^C|
# compares it with the members that miss x.

# %%
st = element_stats(f)
for label, cin, d in zip(f.labels, st.count_in, st.delta):
    print(f"{label}: |F_x| = {cin}, delta = {d:+d}")

# %% [markdown]
# ## Reduction
#
# `reduce` closes an arbitrary collection under unions, adds the empty
# set, merges elements that always occur together and reports any element
# that still cannot be split off on its own.

# %%
g, diag = reduce(SetFamily.from_sets([["a", "b"], ["b", "c"], ["c", "d"]], "abcd"))
print(g.format_members(), "|", diag.describe())

h, diag = reduce(SetFamily.from_sets([["a", "b"], ["a", "b", "c"]], "abc"))
print(h.format_members(), "labels", h.labels, "|", diag.describe())

# %% [markdown]
# ## Matrix view
#
# Rows are members, columns are elements.  The four Gram-type products of
# F and its complement count, entry by entry, |A∩B|, |A∖B|, |B∖A| and
# |A^C ∩ B^C|.

# %%
F = characteristic_matrix(f)
Fc = complement(F)
print(F.to_array())
for name, (A, B) in {"F F^T": (F, F), "F Fc^T": (F, Fc), "Fc F^T": (Fc, F), "Fc Fc^T": (Fc, Fc)}.items():
    M = product_matrix(A, B)
    assert int(M.sum()) == product_sum(A, B)
    print(f"{name:8} sum = {int(M.sum()):3d}")

# %% [markdown]
# The sums only need column sums: Σ[AB^T] = Σ_k colsum_k(A)·colsum_k(B).

# %%
cols = F.to_array().sum(axis=0)
print("column sums", cols, " Σ[FF^T] =", int(cols @ cols))

# %% [markdown]
# Complementing every member swaps union- and intersection-closure.

# %%
fc = complement_family(f)
print(fc.format_members(), is_intersection_closed(fc), is_reduced(fc).ok)
assert np.array_equal(characteristic_matrix(fc).to_array(), Fc.to_array())
