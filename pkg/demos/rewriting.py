"""
Normal forms and completion
===========================

Words in U, K, H reduce by rules solved from a faithful representation.
Shifted copies of the A(3) rules are not enough for A(4); completing them
by linear algebra gives a confluent system with 330 irreducible words.
"""
from spin7.cli import parse
from spin7.presentation import algebra_rules, rules_for
from spin7.rewrite import check_local_confluence, complete, normal_form

# H1 squared, rewritten in A(3)
rules3 = rules_for(3)
print(len(rules3), "rules for A(3)")
print(normal_form(parse("H1*H1", 3), rules3))
print(normal_form(parse("U1*U2*U1", 3), rules3))

# the A(3) rules are locally confluent
rep3 = check_local_confluence(rules3)
print(len(rep3.overlaps), "overlaps,", len(rep3.failures()), "not joinable")

# the shifted copies leave too many irreducible words in A(4)
rules4 = rules_for(4)
rep4 = check_local_confluence(rules4)
print(len(rep4.overlaps), "overlaps,", len(rep4.failures()), "not joinable")

# one round of linear-algebra completion repairs this
report = complete(rules4)
print(report)

# the completed system normalises products across both windows
print(normal_form(parse("H1*H2*H3*H2*H1", 4), algebra_rules(4)))
