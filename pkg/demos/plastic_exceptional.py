"""
The plastic recurrence with initial values 6, -9, 2
====================================================

A degree-3 recurrence whose leading Binet coefficient turns out to be a
square in the splitting field, so the non-square criterion cannot be used.
"""

from pisot_triples import PLASTIC_EXCEPTIONAL, binet_coefficients, eval_range, theorem_applicability

spec = PLASTIC_EXCEPTIONAL
print(spec)
print(eval_range(spec, 0, 15))

# f1 = f/d lives in Q(a), a the plastic number
b = binet_coefficients(spec)
print("f =", b.f, " d =", b.d)

r = theorem_applicability(spec)
print("verdict:", r.verdict.value)

for name, v in (("f1", r.nonsquare_f1), ("f1*a", r.nonsquare_f1alpha)):
    print(name, "->", v.status.value)
    if v.is_square:
        # degree-6 field; squaring it gives back f1 exactly
        print("   witness:", v.witness)
        print("   check:", v.witness * v.witness == v.element)
