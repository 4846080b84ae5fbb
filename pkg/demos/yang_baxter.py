"""
Yang-Baxter solutions
=====================

R(u) is a rational function of u with coefficients in A(2).  It satisfies
the Yang-Baxter equation in A(3) and specialises to 1, U and braid
generators at special points.
"""
from spin7 import ybe

# special values of R
print(ybe.check_specializations())

# the equation itself, with u and v left symbolic
print(ybe.check_ybe(ybe.build_R))

# the same at twenty random rational points
res = ybe.check_ybe(ybe.build_R, mode="sampled", seed=0)
print(res.ok, res.points[:3])

# sandwiching U between two R matrices
for name, r in ybe.check_sandwich().items():
    print(name, r.ok)
print(ybe.sandwich_at_q5())

# the second table gives a unitary family that fails the equation
print(ybe.check_unitarity(ybe.build_S).ok)
res = ybe.check_ybe(ybe.build_S)
print(res.ok, "first residual on", res.witness.split(":")[0])
