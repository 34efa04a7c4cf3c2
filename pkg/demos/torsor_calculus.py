"""Coaction, derivatives and Frobenius descent for a trivial torsor.

Run: python3 demos/torsor_calculus.py
"""
from polystrength import GF, QQ, TorsorAlgebra, delta, directional_derivative
from polystrength.torsor import filtration_level, frobenius_descend, init, twisted_delta_check

T = TorsorAlgebra(QQ, ["a"], ["x1", "x2"])
f = T.poly("a*x1^2*x2 + x2^2 + a")
D = delta(f, T)
print("f =", f)
for i in D.degrees():
    print(f"  Delta_{i} = {D[i]}")
print("level", filtration_level(f, T), "init", init(f, T))
print("derivative along x1:", directional_derivative(f, {"x1": 1}, T))

# in characteristic 2 an A-combination of squares has no first-order part
T2 = TorsorAlgebra(GF(2), ["a", "b"], ["x"])
g = T2.poly("a*x^2 + b*x^4")
d = frobenius_descend(g, T2)
print("\ng =", g, "over GF(2): first surviving component is q =", d.q)
print("rewrite:", " + ".join(f"({c})*({b})^{d.q}" for c, b in d.rewrite))
print("twisted identity holds:", twisted_delta_check(g, T2, d.q))
