"""Order filtration of a non-reduced scheme structure.

For the fat point (x1^2, x2) the local cohomology module is the same as for
the reduced point (x1, x2), but the order filtration is taken with respect
to the given generators. In degree (-2, -1) the class of 1/(x1^2 x2) is
killed by x1^2 and by x2, so it sits in O_0 while its Hodge level is 1.

    python demos/nonreduced_gap.py
"""

from lochodge.filtrations import hodge_dim, order_subspace
from lochodge.monomial import MonomialIdeal, radical

fat = MonomialIdeal.from_gens([(2, 0), (0, 1)])
point = radical(fat)
for u in [(-1, -1), (-2, -1), (-3, -1), (-2, -2)]:
    o_fat = len(order_subspace(fat, 2, u, 0))
    o_red = len(order_subspace(point, 2, u, 0))
    print(f"u={u}:  dim O_0 fat={o_fat}  reduced={o_red}  Hodge F_0={hodge_dim(point, 2, u, 0)}")
