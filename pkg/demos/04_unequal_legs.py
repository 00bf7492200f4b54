# Unequal legs.  The longest leg takes the order-one coordinate, and
# consecutive weights are not always enough.

from spiderflat import NoFeasibleWeights, build_family, flatness_certificate

for legs in [(3, 1), (1, 2, 3), (1, 3, 3)]:
    try:
        fam = build_family(legs)
        how = "consecutive"
    except NoFeasibleWeights:
        # x^2 has z^3 as a tail here, so the short leg must weigh 3/2 of the long one
        fam = build_family(legs, general_search=True)
        how = "searched"
    cert = flatness_certificate(fam)
    print(legs, how, fam.weights, "flat:", cert.passed, "rank", cert.module_rank)
