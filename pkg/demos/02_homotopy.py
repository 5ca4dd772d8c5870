"""Two parallel arrows joined by a homotopy become one class in H_0."""

from dihom.corpus import parallel_pair_with_homotopy
from dihom.homology import chain_complex
from dihom.scat import validate_enriched_category

C = parallel_pair_with_homotopy(2)
X = C.hom("a", "b")
print(X.simplices[1])        # s0(f), s0(g), h
print(X.faces["h"])          # (d_0 h, d_1 h) = (g, f)
print(validate_enriched_category(C).ok)

cx = chain_complex(C)
print([cx.rank(n) for n in range(3)])
H0 = cx.homology(0)
print(H0.describe())

labels = cx.labels[0]
f = [int(x == "f") for x in labels]
g = [int(x == "g") for x in labels]
print(H0.same_class(f, g))   # True: d(h) = g - f

# representatives and the induced actions, as the CLI would report them
rep = H0.to_dict()
print(rep["generators"])
print(rep["left_action"]["idb"], rep["right_action"]["ida"])
