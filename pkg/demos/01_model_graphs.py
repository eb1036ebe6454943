# %% [markdown]
# # The two model families
#
# Every graph here carries an integer label on each edge (a weight of the torus,
# defined up to sign) and a quaternionic weight on each vertex. The
# generators take the characters lambda, alpha_k as integer vectors.

# %%
from qgkm import graphfile
from qgkm.models import HpnParams, generate, standard_params

g, q = generate(standard_params("hpn", 2))
print(g)
for e in g.edges:
    print(f"{e.id:10s} {e.u} -- {e.v}   label {e.label}")
print("weights:", q.weights)

# %% [markdown]
# Between any two vertices of the HP^n graph there are two edges, and at each end
# they form a quaternionic pair. Labels at a pair add up to the vertex weight
# once signs are chosen.

# %%
for v in g.vertices:
    print(v, [(a.edge, b.edge) for a, b in q.pair_list(v)])

# %% [markdown]
# Gr_2(C^4): six vertices v_ij, each joined to the four vertices sharing one
# index. v12 and v34 are not adjacent, so the graph is an octahedron.

# %%
g, q = generate(standard_params("gr2", 4))
for v in g.vertices:
    print(v, "->", sorted(g.neighbors(v)), " weight", q.weights[v])

# %% [markdown]
# Non-standard parameters work as long as labels at every vertex stay pairwise
# independent; otherwise the generator names the offending vertex.

# %%
g, q = generate(HpnParams(2, (3, 1, 0), ((1, 2, 1), (0, 1, 4))))
print(graphfile.dumps(g, q)[:400], "...")

try:
    generate(HpnParams(2, (2, 0, 0), ((1, -1, 0), (1, -1, 0))))
except ValueError as exc:
    print("refused:", exc)
