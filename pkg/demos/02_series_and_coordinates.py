# Moebius generators u_a = t/(1 - a t) and the divided-difference coordinates.

from fractions import Fraction

from spiderflat import SpiderType, divided_difference_coords, mobius_generator

n = 8
u1, u2 = mobius_generator(1, n), mobius_generator(2, n)
print("u_1 =", u1)
print("u_2 - u_1 == u_1 u_2 :", u2 - u1 == u1 * u2)

# coordinate i has t-adic order exactly i
cs = divided_difference_coords(SpiderType((2, 2, 2)))
for i, v in enumerate(cs.coords, start=1):
    print(f"v_{i}: order {v.valuation()}, leading coeff {v.coeffs[i]}")

# other sample points work too, as long as they are distinct and nonzero
cs = divided_difference_coords(SpiderType((2, 2, 2)), (Fraction(-1), Fraction(1, 2), 3))
print([v.valuation() for v in cs.coords])
