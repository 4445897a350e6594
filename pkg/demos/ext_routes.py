"""Two ways to compute the Ext filtration inside local cohomology.

The witness route pushes dual Taylor cocycles of I^{k+1} through a Koszul
model; its cost doubles with every Taylor generator. The nerve route works
on the coordinate nerves of the same covers and stays small. A solved lift
on the full Taylor complex is the slow reference.

    python demos/ext_routes.py
"""

import time

from lochodge.linalg import subspace_eq
from lochodge.monomial import MonomialIdeal
from lochodge.resolutions import ext_colimit_image, ext_image_via_solved_lift

I = MonomialIdeal.from_gens([(2, 1, 0), (1, 0, 2), (0, 2, 1)])
q, u = 2, (-1, -2, -1)
for k in (0, 1):
    times = {}
    imgs = {}
    for route in ("nerve", "witness"):
        t = time.perf_counter()
        imgs[route] = ext_colimit_image(I, q, u, k, route=route)
        times[route] = time.perf_counter() - t
    t = time.perf_counter()
    ref = ext_image_via_solved_lift(I, q, u, k)
    times["solved"] = time.perf_counter() - t
    a = imgs["nerve"]
    same = subspace_eq(a.subspace, imgs["witness"].subspace, a.cech_dim) and subspace_eq(a.subspace, ref, a.cech_dim)
    print(f"k={k}: image dim {a.dim} of {a.cech_dim}, Ext dim {a.ext_dim}, routes agree: {same}, "
          + ", ".join(f"{r} {s * 1000:.1f} ms" for r, s in times.items()))
