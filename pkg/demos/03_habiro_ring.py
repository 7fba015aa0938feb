# # The Habiro ring
#
# An element is stored as q^(e/4) * sum_n f_n(q) (q;q)_n, truncated modulo
# (q;q)_(N+1).  Evaluation at a root where q has order d only sees n < d, and
# the (1-q)-adic expansion only sees n <= order.

# In[1]:

from qjones import HabiroElement, h_equal, h_eval, h_taylor, kz_series
from qjones.cyclo import RootSpec
from qjones.habiro import h_mul

kz = kz_series(10)
print(kz.pretty()[:80])


# At q = 1 only the first term survives; at q = -1 we get 1 + 2 = 3.

# In[2]:

print(h_eval(kz, RootSpec.from_d(1)), h_eval(kz, RootSpec.from_d(2)))
print(h_taylor(kz, 5))


# Products stay in canonical form and evaluation is multiplicative.

# In[3]:

sq = h_mul(kz, kz)
for d in (1, 2, 3, 4):
    r = RootSpec.from_d(d)
    print(d, h_eval(sq, r) == h_eval(kz, r) * h_eval(kz, r))


# Equality can only be tested up to a bound.  A term sitting at index bound+1
# is invisible to every test at that bound.

# In[4]:

bound = 3
zero = HabiroElement.from_terms([], bound + 1)
hidden = HabiroElement.from_terms([0] * (bound + 1) + [1], bound + 1)
print(h_equal(zero, hidden, bound), h_equal(zero, hidden, bound + 1))
