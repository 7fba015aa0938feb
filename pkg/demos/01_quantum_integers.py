# # Quantum integers and roots of unity
#
# Everything in qjones lives in Z[q^(1/4), q^(-1/4)].  Exponents are stored in
# quarter units, so q itself is the monomial with exponent 4.

# In[1]:

from fractions import Fraction

from qjones.cyclo import CycNumber, RootSpec, cyc_div, ev_root
from qjones.qpoly import brace, bracket, cnk, factorial, qbinom, qpow

q = qpow(1)
print(q.terms)  # ((4, 1),)


# The two flavours of quantum integer: {n} = q^(n/2) - q^(-n/2) and [n] = {n}/{1}.

# In[2]:

for n in range(1, 5):
    print(n, brace(n).pretty(), "|", bracket(n).pretty())


# Factorials come in three kinds.  The unbalanced one uses 1 - q^n.

# In[3]:

print(factorial("unbalanced", 2).pretty())
print(factorial("bracket", 3) * brace(1) ** 3 == factorial("brace", 3))


# The product C(n,k) = {n+k}{n+k-1}...{n-k} drives the cyclotomic expansion.
# It vanishes as soon as k >= n, and for k < n all its exponents share a class mod 4.

# In[4]:

print(cnk(2, 1).pretty())
print(cnk(3, 3).is_zero())
print({k: cnk(5, k).exponent_classes() for k in range(5)})


# Gaussian binomials are palindromic.

# In[5]:

p = qbinom(4, 2)
print(p.pretty(), p == p.invert_q())


# ## Evaluation at a root of unity
#
# ev_root sends q^(1/4) to a primitive m-th root of unity x and reduces modulo
# the m-th cyclotomic polynomial.  With m = 8 we get q = x^4 = -1, so {2} dies.

# In[6]:

print(ev_root(brace(2), RootSpec(8)))
print(ev_root(qpow(Fraction(1, 4)), RootSpec(4)))


# Division is exact in the cyclotomic field.

# In[7]:

a = CycNumber(4, [2, -2])
b = CycNumber(4, [1, -1])
print(cyc_div(a, b))
