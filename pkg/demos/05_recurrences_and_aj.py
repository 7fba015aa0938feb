# # q-recurrences and the AJ check
#
# Operators live in the quantum plane: L shifts n, M multiplies by q^(n/2),
# and L M = q^(1/2) M L.  Coefficients are rational in t = q^(1/4) and M.

# In[1]:

from qjones import aj_compare, builtin_seq, guess_recurrence, specialize_q1, verify_recurrence
from qjones.ore import APoly, M, OrePoly, T, ore_mul, recurrence_polynomial

L = OrePoly.L()
print(ore_mul(L, OrePoly.scalar(M)).pretty())


# Guess a first-order recurrence for [n] from twelve values, then confirm it
# on ten terms it never saw.

# In[2]:

f = builtin_seq("bracket")
P = guess_recurrence(f, 1, 2, 12)
print(P.pretty(), P.meta["method"])
print(verify_recurrence(P, f, 13, 22))


# The second-order recurrence L^2 - [2]L + 1 also annihilates [n]; its left gcd
# with P is P again.

# In[3]:

Q = OrePoly({2: 1, 1: -(T**2 + T**-2), 0: 1})
print(recurrence_polynomial([Q, P]) == recurrence_polynomial([P]))


# At q = 1 the unknot operator becomes (M^2 - 1)(L - 1), M-essentially L - 1.

# In[4]:

a = specialize_q1(P)
print(a.pretty(), "|", aj_compare(a, APoly({(1, 0): 1, (0, 0): -1})))


# The figure-8 colored Jones function needs a third-order operator.  The
# guess is trained on n <= 14 (about 20 seconds) and checked on n = 15..24.

# In[5]:

from qjones.acceptance import figure8_recurrence
from qjones.fixtures import read_json

F, J = figure8_recurrence()
print(F.degree(), verify_recurrence(F, J, 15, 24))
A = APoly.from_json(read_json("figure8_apoly"))
print(A.pretty())
print(aj_compare(specialize_q1(F), A))
