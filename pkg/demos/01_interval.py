"""The interval category: one arrow u: 0 -> 1, walked through by hand."""

from dihom.bimod import act, chain_bimodule, module_unitalize
from dihom.corpus import interval
from dihom.exactlin import ZZ
from dihom.homology import chain_complex
from dihom.nualg import find_local_unit, path_algebra, unitalize

C = interval(2)
print(C.objects, C.hom("0", "1").simplices)   # every hom is discrete: u, s0(u), s1s0(u)

# path algebra: basis id0, u, id1, and x*y means "y then x"
A = path_algebra(C)
u, id0, id1 = (A.basis_element(b) for b in ("u", "id0", "id1"))
print(A.mul(id1, u), A.mul(u, id0), A.mul(u, id1))   # u, u, 0

# no global unit, but every finite set of elements has a local one
print(A.is_unital, find_local_unit(A, [u], "left"), find_local_unit(A, [u], "right"))

# adjoining a unit: (u, 1)(id0, 2) = id0 + 3u + 2*1
Ah = unitalize(A)
print(Ah.mul(Ah.pair(u, 1), Ah.pair(id0, 2)))

# C_0 as a bimodule: u acts by post-composition on the left, pre-composition on the right
M = chain_bimodule(C, 0, ZZ, A)
print(act(u, M.generator("id0")), act(None, M.generator("id1"), u))

# the unitalized module is the same space, with 1 acting as the identity
Mh = module_unitalize(M)
print(act(Mh.left_algebra.one(), Mh.generator("u")))

cx = chain_complex(C)
H0 = cx.homology(0)
print(H0.describe(), cx.homology(1).describe())   # Z^3 and 0
print(H0.action_matrix("left", "u").tolist())
