"""Exact strength of a few cubics over GF(2), with certificates.

Run: python3 demos/finite_field_cubics.py
"""
from polystrength import Form, str_exact_finite_field
from polystrength.oracles import gf2_strength

samples = ["x1^3", "x1*x2*x3", "x1^2*x2+x2^2*x3+x3^2*x1", "x1^3+x2^3+x3^3+x1*x2*x3"]
for text in samples:
    f = Form.parse(text, "GF(2)", ["x1", "x2", "x3"])
    cert = str_exact_finite_field(f)
    terms = {e: int(c) for e, c in f.poly.terms.items()}
    print(f"{text:32s} str = {cert.value}  brute force = {gf2_strength(terms, 3, 3)}  verified = {cert.verify()}")
    for g, h in cert.witness:
        print(f"     ({g}) * ({h})")
