"""
Tower, trace and idempotents
============================

U_n a U_n = eps(a) U_n defines a conditional expectation from A(n) to
A(n-1).  Iterating it gives a trace.  Traces of the four spectral
idempotents of A(2) are the dimensions of the summands of the square of
the spin representation.
"""
from spin7.cli import parse
from spin7.tower import epsilon, identify_weights, spectral_idempotents, trace

# expectations of the top generators
for g in ("U2", "K2", "H2", "H1*H2*H1"):
    print(g, "->", epsilon(3, parse(g, 3)))

# traces, exact and at q = 1
for g in ("1", "U1", "K1", "U1*U2"):
    t = trace(3, parse(g, 3))
    print(g, t, t(1))

# the four idempotents and the weights they project onto
weights = identify_weights()
for label, p in spectral_idempotents().items():
    print(label, weights[label], trace(2, p)(1))
    print("   ", p)
