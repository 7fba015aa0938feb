# # Jones polynomials from diagrams, colored Jones from cyclotomic data
#
# A diagram is a PD code: one quadruple per crossing, labels counter-clockwise
# starting from the incoming under-strand.  The shipped fixtures carry both a
# PD code and the cyclotomic coefficients C(k).

# In[1]:

from qjones import colored_jones, cyclotomic_solve, jones_from_pd, kauffman_bracket, load_knot
from qjones.cyclojones import ctilde, integrality_check

trefoil = load_knot("trefoil")
print(trefoil.diagram.pd, trefoil.diagram.signs)
print(trefoil.mirror_convention)


# The Kauffman bracket is in the variable A = q^(1/4).  Jones adds the writhe correction.

# In[2]:

print(kauffman_bracket(trefoil.diagram).pretty("A", unit=1))
print(jones_from_pd(trefoil.diagram).pretty())


# The same Jones polynomial appears as color 2 of the colored Jones function.

# In[3]:

print(colored_jones(trefoil.coeffs, 2) == jones_from_pd(trefoil.diagram))


# For the figure-8 every C(k) equals 1.

# In[4]:

fig8 = load_knot("figure8")
for n in range(1, 4):
    print(n, colored_jones(fig8.coeffs, n).pretty())


# cyclotomic_solve inverts the expansion from J(1), ..., J(N).  Two values are
# enough to recover C(0) and C(1).

# In[5]:

values = [colored_jones(fig8.coeffs, n) for n in (1, 2)]
print([c.pretty() for c in cyclotomic_solve(values).coeffs])


# Integrality: multiplying by {2k+1}!/({k}!{1}) gives C~(k), which must be
# divisible by that same factor again.  The check reports the quotients.

# In[6]:

report = integrality_check(ctilde(fig8.coeffs.truncate(5)))
print(report.passed, [qt.pretty() for _, _, qt in report.entries])
