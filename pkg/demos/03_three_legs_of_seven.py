# Type (7,7,7): a length-22 curvilinear scheme flowing into the spider.

import time

from spiderflat import (
    build_family,
    check_curvilinear_fiber,
    fiber_dimension,
    flatness_certificate,
)
from spiderflat.spider import margin_table

t0 = time.time()
fam = build_family((7, 7, 7))
names = fam.spider.variable_names()
for rel in fam.relations[:3]:
    print(rel.kind, rel.polynomial.to_str(names))
print(margin_table(fam))

# the pure-power relation for x, homogenized
print("f4 =", fam.family[3].to_str(names, fam.order))

for lam in (0, 1, -1):
    print(f"e={lam}: dimension {fiber_dimension(fam, lam).dimension}")

rep = check_curvilinear_fiber(fam, 1)
print("lex basis at e=1:", rep.gb_shape, "curvilinear:", rep.is_curvilinear)

cert = flatness_certificate(fam)
print(f"{cert.spair_count} S-pairs, all reduce to zero: {cert.all_reduce_to_zero}, "
      f"rank {cert.module_rank}")
print(f"{time.time() - t0:.2f}s")
