"""lcd(I) = pd(A/I) on a seeded corpus of squarefree monomial ideals.

The left side comes from Čech strands swept over sign patterns, the right
side from a minimized Taylor resolution. The two pipelines share no code
beyond the ideal itself.

    python demos/lyubeznik_corpus.py [seed]
"""

import sys

from lochodge.cech import lcd, min_nonvanishing_q
from lochodge.monomial import codim
from lochodge.report import corpus
from lochodge.resolutions import betti_numbers

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2024
for n in (4, 5, 6):
    for I in corpus(seed, 5, n):
        betti = betti_numbers(I)
        print(f"n={n}  lcd={lcd(I)}  pd={betti.pd}  codim={codim(I)}/{min_nonvanishing_q(I)}  "
              f"betti={betti.totals()}  {I}")
