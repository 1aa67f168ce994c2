"""U_{2,3} over Z/4 and over S3: an exhaustive subgroup search over (Z/4)^3,
the kernel obstruction in S3 × S3, and the commutator contradiction."""
from groupmatroid.groups import GroupProduct, cyclic, enumerate_subgroups, symmetric
from groupmatroid.polymatroid import (
    nonabelian_u23_contradiction,
    representability_search,
    u23_kernel_search,
    uniform_matroid,
)

z4 = cyclic(4)
print("subgroups of (Z/4)^3:", len(enumerate_subgroups(GroupProduct([z4] * 3))))
H = representability_search(uniform_matroid(2, 3, b=4), z4, n_max=3)
if H is None:
    print("no subgroup of (Z/4)^3 realizes U_2,3")
else:
    print(f"U_2,3 is realized over Z/4 by a subgroup of order {H.order}, generators {H.generators}")

s3 = symmetric(3)
print("\nnormal kernels in S3 × S3 meeting both axes trivially:", len(u23_kernel_search(s3)))
c = nonabelian_u23_contradiction(s3)
fmt = GroupProduct([s3] * 3).format_element
print(f"a = {fmt(c['a'])}, b = {fmt(c['b'])}")
print(f"ab = {fmt(c['ab'])}, ba = {fmt(c['ba'])}: same on coordinates 1, 2 but not on 3")
