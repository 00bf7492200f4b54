# The smallest interesting case: two legs of length one.
# Q[t]/(t^3) degenerates to Q[x,y]/(x^2, xy, y^2).

from spiderflat import SpiderType, build_family, fiber_dimension

sp = SpiderType((1, 1))
fam = build_family(sp)
names = sp.variable_names()

print("weights", fam.weights)          # (2, 3)
for f in fam.family:
    print("  ", f.to_str(names, fam.order))

# every fibre has length 3; at e = 0 it is the spider itself
for lam in (0, 1, 2):
    rep = fiber_dimension(fam, lam)
    print(f"e={lam}: dim {rep.dimension}, basis {rep.gb_shape}")
