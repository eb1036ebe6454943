# %% [markdown]
# # Graph cohomology and Betti numbers
#
# A class in degree d is one homogeneous polynomial per vertex such that along
# each edge the difference vanishes on the hyperplane of the label. The graded
# dimensions h[d] are exact; Betti numbers follow by quotienting out the
# polynomial ring, which is only meaningful when the module is free.

# %%
from qgkm.cohomology import betti_numbers, free_module_dims, graph_cohomology_dims
from qgkm.models import generate, standard_params

g, _ = generate(standard_params("hpn", 1))
print("HP^1 h:", graph_cohomology_dims(g, 2).h)

for kind, n in [("hpn", 2), ("hpn", 3), ("gr2", 3), ("gr2", 4)]:
    g, _ = generate(standard_params(kind, n))
    rep = betti_numbers(g)
    print(f"{kind} {n}: b = {rep.b}  sum = #vertices: {rep.sum_equals_vertex_count}")

# %% [markdown]
# Gr_2(C^5) has 10 vertices and is 6-valent. The modular route ranks every
# system modulo two random 62-bit primes and falls back to exact elimination if
# they disagree.

# %%
g, _ = generate(standard_params("gr2", 5))
rep = betti_numbers(g, method="modular", seed=1)
print("h =", rep.dims.h, "via", rep.dims.method)
print("b =", rep.b)
print("free module with these generators:", free_module_dims(rep.b, g.rank, 6))
print(rep.note)
