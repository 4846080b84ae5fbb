"""
Dimensions three ways
=====================

The algebra A(n) is counted by irreducible words, by dominant lattice
walks with spin steps, and by a product formula.
"""
from spin7.crystal import count_dominant_walks, dominant_walk_table, dyck_formula
from spin7.presentation import algebra_rules
from spin7.rewrite import enumerate_irreducible

# the four basis words of A(2)
print([str(w) or "1" for w in enumerate_irreducible(2, algebra_rules(2))])

# irreducible words, walks of length 2n and the formula agree
for n in (2, 3, 4):
    words = len(enumerate_irreducible(n, algebra_rules(n)))
    print(n, words, count_dominant_walks(2 * n), dyck_formula(n - 1))

# closed walks of odd length do not exist
print([count_dominant_walks(k) for k in range(1, 11)])

# dominant endpoints after three steps, in s-coordinates
print(sorted(dominant_walk_table(3)[3].items()))

# the formula keeps going where rewriting gets expensive
print([dyck_formula(m) for m in range(1, 9)])
