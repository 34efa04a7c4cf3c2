"""The embedding witness in the Sym^2 shift model with m = n = 2.

Run: python3 demos/embedding_witness.py
"""
from polystrength import GF
from polystrength.torsor import SymShiftModel, embed_witness

M = SymShiftModel(GF(3), 2, 2)
J = M.rank_one_ideal()
f = M.poly("zu1u2^2 - zu1u1*zu2u2")   # a 2x2 minor in the U-block
phi = {"u1": {"e1": 1}, "u2": {"e2": 1}}
r0 = {"zu1u2": 1}
report = embed_witness(f, r0, phi, M, J, samples=4)
print("f =", f)
print("h = d_r0 f =", report.h)
print("w =", report.w)
for key in ("f_in_J", "level_at_most_one", "w_in_J", "derivative_identity", "translation_identity"):
    print(f"  {key:22s} {getattr(report, key)}")
print("all checks pass:", report.passed)
