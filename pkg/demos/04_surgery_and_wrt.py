# # Surgery series and WRT invariants
#
# For f = +-1 surgery on a knot K with cyclotomic coefficients C(k), the
# invariant is a Habiro-ring series built from weighted C(k).  At a root of
# unity it must agree with the WRT state sum, computed independently from the
# colored Jones values and a Gauss-sum normalization.

# In[1]:

from qjones import SurgeryPresentation, load_knot, surgery_knot, wrt_state_sum
from qjones.cyclo import RootSpec
from qjones.habiro import h_equal, h_eval
from qjones.surgery import gauss_sum, omega_term

print(omega_term(1, 1).pretty())
print(gauss_sum(1, 1), gauss_sum(-1, 1))


# (-1)-surgery on the trefoil fixture, truncated at N = 6.

# In[2]:

trefoil = load_knot("trefoil").coeffs
series6 = surgery_knot(trefoil, -1, 6)
print(series6.pretty()[:120])


# Evaluate both ways at a few roots.

# In[3]:

pres = SurgeryPresentation.knot_surgery(trefoil, -1)
for d in range(2, 6):
    series = h_eval(series6, RootSpec.from_d(d))
    state = wrt_state_sum(pres, [], d)
    print(d, series == state, state)


# Adding a split unknot with framing +-1 changes the presentation but not the manifold.

# In[4]:

from qjones.surgery import surgery_relative

x = surgery_relative(pres, [], 6)
for f in (1, -1):
    y = surgery_relative(pres.add_split_unknot(f), [], 6)
    print(f, h_equal(x, y, 6))


# A colored knot inside a surgered manifold: the figure-8 with color 2 next to
# the trefoil surgery.  The split table gives the product of the two pieces.

# In[5]:

both = SurgeryPresentation.knot_surgery(trefoil, 1, colored=load_knot("figure8").coeffs)
print(both.name, h_eval(surgery_relative(both, [2], 4), RootSpec.from_d(3)) == wrt_state_sum(both, [2], 3))
