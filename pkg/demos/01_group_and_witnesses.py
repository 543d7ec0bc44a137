"""
Piecewise-linear maps with dyadic data
======================================

Build a few elements of F_R, compose and invert them exactly, and ask the
group for a map sending one ordered tuple of dyadics onto another.
"""

from liouville import (T, X0, Dyadic, apply, compose, invert, is_in_F, make_pl,
                       transitivity_witness)

# %% Elements are given by anchor points and the slope exponents of the two rays.
g = make_pl([(0, 0), (Dyadic(1, 1), Dyadic(1, 2)), (Dyadic(3, 2), Dyadic(1, 1)), (1, 1)],
            left_exp=0, right_exp=0)
print("g       :", g)
print("g(3/8)  :", apply(g, Dyadic(3, 3)))

# %% Composition and inversion stay exact; nothing is ever rounded.
h = compose(T, g)
print("T o g   :", h)
print("h^-1 h  is identity:", compose(invert(h), h).is_identity())

# %% X0 fixes 0 and 1, so it lies in F; T moves 0 and does not.
print("X0 in F :", is_in_F(X0), "  T in F:", is_in_F(T))

# %% Strong transitivity: send (1/4, 1/2, 3) to (0, 5, 15/2) with one element.
src = [Dyadic(1, 2), Dyadic(1, 1), Dyadic(3, 0)]
dst = [Dyadic(0, 0), Dyadic(5, 0), Dyadic(15, 1)]
w = transitivity_witness(src, dst, "F_R")
print("witness :", w)
print("images  :", [str(apply(w, p)) for p in src])
