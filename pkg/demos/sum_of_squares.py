"""x1^2 + x2^2 is irreducible over QQ but splits once i is adjoined.

Run: python3 demos/sum_of_squares.py
"""
from polystrength import Form, astr, extension_lift_search, strength

f = Form.parse("x1^2+x2^2", "QQ")
print("form:", f)
print("strength over the algebraic closure:", astr(f))

cert = strength(f)
print("over QQ:", cert.status, "lower", cert.lower, "upper", cert.upper)
for g, h in cert.witness:
    print(f"    ({g}) * ({h})")

lift = extension_lift_search(f, 1, degree_budget=2)
print("smallest extension where strength drops to 1:", lift.field.spec, "degree", lift.degree)
for g, h in lift.witness:
    print(f"    ({g}) * ({h})")
