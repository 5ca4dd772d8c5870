"""Relative homology of the commutative square against the edge {00, 01}."""

from dihom.corpus import square
from dihom.exactlin import ZZ
from dihom.homology import les, relative_complex, transfer_kernel
from dihom.scat import full_subcategory

S = square(2)
T, inc = full_subcategory(S, ["00", "01"])
rel = relative_complex(S, T, ZZ, inc)

# chains of S that factor through T, the full ambient chains, and their quotient
for n in range(3):
    print(n, rel.extended.rank(n), rel.ambient.rank(n), rel.quotient.rank(n))

print(rel.ses_ok())
for n in range(2):
    print(n, rel.extended.homology(n).describe(), rel.ambient.homology(n).describe(),
          rel.quotient.homology(n).describe())

rep = les(rel)
for node in rep.nodes:
    print(f"{node.where:12s} {node.incoming:>8s} -> {node.outgoing:<8s} exact={node.exact}")
print(rep.delta_lift_independent)

# the transfer map from R[S] (x) C_n(T) (x) R[S] is injective here...
for n in range(3):
    tk = transfer_kernel(S, T, n, ZZ, inc, rel.ambient)
    print(n, tk.triples, tk.kernel.describe(), tk.isomorphic_to_extended)

# ...but not for the two incomparable corners, where both routes to 11 get identified
T2, inc2 = full_subcategory(S, ["01", "10"])
print(transfer_kernel(S, T2, 0, ZZ, inc2).kernel.describe())
