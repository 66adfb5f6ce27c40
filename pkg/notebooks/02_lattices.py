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
# # Lattices and their set families
#
# Every finite lattice is the lattice of a reduced intersection-closed
# family on its join-irreducibles (send a to the join-irreducibles below
# it), and dually of a reduced union-closed family on its
# meet-irreducibles.  The pentagon N5 is the smallest interesting case.

# %%
from ucsets import (
    family_to_lattice,
    join_irreducibles,
    meet_irreducibles,
    to_intersection_family,
    to_union_family,
)
from ucsets.lattice import (
    boolean_lattice,
    chain,
    check_conjecture_1,
    check_conjecture_2,
    compare_embeddings,
    diamond,
    irreducible_filters,
    irreducible_filters_bruteforce,
    pentagon,
    round_trip_isomorphism,
    to_dot,
)

N = pentagon()
print("elements:", N.elements)
print("join-irreducible:", [N.elements[j] for j in join_irreducibles(N)])
print("meet-irreducible:", [N.elements[p] for p in meet_irreducibles(N)])

# %% [markdown]
# ## Two routes to the irreducible filters
#
# The fast path takes the principal filters of join-irreducibles.  The
# brute force lists every filter and keeps those that are not the
# intersection of strictly larger ones.

# %%
for name, L in {"N5": N, "M3": diamond(), "B3": boolean_lattice(3), "chain5": chain(5)}.items():
    fast, slow = set(irreducible_filters(L)), set(irreducible_filters_bruteforce(L))
    print(f"{name:7} {len(fast)} irreducible filters, routes agree: {fast == slow}")

# %% [markdown]
# ## Embedded families

# %%
fi, fu = to_intersection_family(N), to_union_family(N)
print("intersection-closed:", fi.format_members(), "on", fi.labels)
print("union-closed:       ", fu.format_members(), "on", fu.labels)
print("round trip map:", round_trip_isomorphism(N, "union"))
print("back to a lattice:", family_to_lattice(fu).elements)

# %% [markdown]
# ## Lattice forms of Frankl's inequality
#
# Some join-irreducible j has at most half the elements above it; dually
# some meet-irreducible p has at least half the elements outside its ideal.

# %%
for name, L in {"N5": N, "B2": boolean_lattice(2), "chain4": chain(4)}.items():
    print(f"{name:7} {check_conjecture_1(L).describe():18} {check_conjecture_2(L).describe()}")

# %% [markdown]
# The filter and ideal embeddings need not be isomorphic.  N5 happens to
# give the same family both ways.

# %%
print(compare_embeddings(N))
print(to_dot(N))
