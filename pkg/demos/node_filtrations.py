"""Hodge, order and Ext filtrations on H^1 of the node x1*x2 = 0.

The node is the simplest singular reduced complete intersection. Its Hodge
and order filtrations agree at k = 0 and split at k = 1 in degree (-2, -2),
which is what the J_k criterion predicts for one equation.

    python demos/node_filtrations.py
"""

from lochodge.filtrations import compare_filtrations, jk_criterion_check, singularity_level_probe
from lochodge.monomial import MonomialIdeal

node = MonomialIdeal.from_gens([(1, 1)])
table = compare_filtrations(node, 1, B=3, k_max=2)

print("degree     level  F        O        E        Koszul t")
for c in sorted(table.cells, key=lambda c: c.degree):
    print(f"{str(c.degree):10} {c.level:5}  {str(c.F):8} {str(c.O_dims):8} {str(c.E_dims):8} {c.koszul_t}")

print("\nF_k = O_k over the box:", table.verdicts["F_eq_O"])
print("E_k = O_k at q = codim:", table.verdicts["E_eq_O_at_codim"])

probe = singularity_level_probe(node, 3, 2)
print(f"verified singularity level {probe.verified_level}, first failure at {probe.first_failure}")
print("J_k criterion for k = 0, 1, 2:", [jk_criterion_check([(1, 1)], k) for k in range(3)])
