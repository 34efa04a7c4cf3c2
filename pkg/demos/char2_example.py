"""The relations [v^2]^2 = [v^4] over GF(2): injectivity and squares in the image.

Run: python3 demos/char2_example.py
"""
from polystrength.glcase import ns_example_check, shift_decompose, span_stable

for n in (1, 2, 3):
    rep = ns_example_check(n)
    print(f"n = {n}: {len(rep.generators)} generators, injective = {rep.injective}, "
          f"z_i^2 in image = {rep.squares_in_image}")
print("generators for n = 2:", *ns_example_check(2).generators, sep="\n  ")
print("span stable under a transvection:", span_stable(2, [[1, 1], [0, 1]]))
print("Sym^3(K^2 + K^2) pieces (u-degree, dim):", shift_decompose(3, 2, 2))
