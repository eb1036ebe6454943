# %% [markdown]
# # Connections, 2-faces and signs
#
# In a GKM_3 graph the compatible connection is unique. Following it from a pair
# of edges traces a closed walk, a 2-face. Faces through quaternionic pairs are
# quaternionic; the others are complex and can be signed consistently.

# %%
from collections import Counter

from qgkm.graph import enumerate_faces, find_connection
from qgkm.models import generate, kahler_cp2_triangle, noncomplex_triangle, standard_params
from qgkm.quaternionic import NotComplexFace, classify_face, sign_face


def census(g, q):
    con = find_connection(g)
    faces = enumerate_faces(g, con)
    return con, faces, [classify_face(f, g, q, con) for f in faces]


g, q = generate(standard_params("hpn", 2))
con, faces, kinds = census(g, q)
print(Counter(k.name for k in kinds))

# %% [markdown]
# Gr_2(C^4) has four quaternionic triangles, four complex triangles and three
# complex squares. Each square has equal labels on opposite sides.

# %%
g, q = generate(standard_params("gr2", 4))
con, faces, kinds = census(g, q)
print(Counter(k.name for k in kinds))
for f, k in zip(faces, kinds):
    if f.length == 4:
        print(" -> ".join(f.vertices), [g.label(d) for d in f.darts])

# %% [markdown]
# The triangle constant c tells the two quaternionic triangles apart: 0 for the
# quaternion-Kaehler CP^2, -2 for the Kaehler one.

# %%
for name, (t, tq) in [("noncomplex", noncomplex_triangle()), ("kaehler", kahler_cp2_triangle())]:
    _, _, [k] = census(t, tq)
    print(f"{name:12s} {k.name:22s} c={k.c}")

# %% [markdown]
# Signing a complex face picks a sign for every label so that reversed edges get
# opposite signs and consecutive lifts satisfy x_{i+1} + x_{i-1} = c_i x_i.
# Biangles are quaternionic and are refused.

# %%
g, q = generate(standard_params("gr2", 4))
con, faces, kinds = census(g, q)
quad = next(f for f, k in zip(faces, kinds) if k.name == "ComplexQuadrangle")
s = sign_face(quad, g, q, con)
print("lifts:", s.walk_lifts())
print("coefficients:", s.coefficients)

g, q = generate(standard_params("hpn", 1))
con, faces, _ = census(g, q)
try:
    sign_face(faces[0], g, q, con)
except NotComplexFace as exc:
    print("refused:", exc)
