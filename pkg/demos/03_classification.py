# %% [markdown]
# # Recognising the models
#
# `classify` checks GKM_3, verifies the quaternionic structure, inspects all
# 2-faces and then rebuilds lambda and the alpha_k from the smallest vertex. The
# rebuilt model must match the input exactly.

# %%
import random

from qgkm.classify import Pipeline, classify, probe_biangle_propagation, probe_quadrangle_rigidity
from qgkm.graph import GkmGraph
from qgkm.models import generate, kahler_cp2_triangle, random_params
from qgkm.quaternionic import QuaternionicStructure

rng = random.Random(7)
p = random_params("gr2", 5, rng)
print("generated with", p)
g, q = generate(p)
res = classify(g, q)
print(res.model, res.n, res.lam, res.alpha)

# %% [markdown]
# Renaming vertices does not matter; the vertex map says which input vertex
# plays which role.

# %%
names = {v: f"p{i}" for i, v in enumerate(reversed(g.vertices))}
h = GkmGraph(g.rank, [names[v] for v in g.vertices],
             [(e.id, names[e.u], names[e.v], e.label) for e in g.edges])
hq = QuaternionicStructure.from_edge_pairs(
    h, {names[v]: w for v, w in q.weights.items()},
    {names[v]: [(a.edge, b.edge) for a, b in q.pair_list(v)] for v in g.vertices})
res = classify(h, hq)
print(res.model, res.n)
print(res.vertex_map)

# %% [markdown]
# Refusals come with a reason and a witness.

# %%
print(classify(*kahler_cp2_triangle()))

g, q = generate(random_params("hpn", 3, rng))
bad = QuaternionicStructure(dict(q.weights, v2=(1, 0, 0, 0)), q.pairs)
print(classify(g, bad))

# %% [markdown]
# The probes check two structural facts on the computed faces; on HP^n the
# quadrangle probe is vacuous, on Gr_2 the biangle probe is.

# %%
for kind, n in [("hpn", 3), ("gr2", 5)]:
    g, q = generate(random_params(kind, n, rng))
    trace = Pipeline()
    classify(g, q, trace)
    for probe in (probe_biangle_propagation, probe_quadrangle_rigidity):
        r = probe(g, trace.hypotheses.faces)
        print(kind, n, r.name, "vacuous" if r.vacuous else ("holds" if r.holds else r.failures))
