"""A quadratic over GF(2)(t1, t2) whose strength only drops after a p-th root.

Run: python3 demos/function_field.py
"""
from polystrength import Form, astr, extension_lift_search, strength

f = Form.parse("t1*x1^2+t2*x2^2", "GF(2)(t1,t2)", ["x1", "x2"])
print("form:", f, "over", f.field.spec)
print("geometric strength:", astr(f))  # a square of a linear form after extracting roots
cert = strength(f)
print("rational strength:", cert.status, cert.lower, "..", cert.upper)

lift = extension_lift_search(f, 1, degree_budget=2)
if lift is None:
    print("no lift within degree 2")
else:
    print("lift field:", lift.field.spec)
    for g, h in lift.witness:
        print(f"    ({g}) * ({h})")
