"""The order-6 subgroup H_s3 of S3 × S3: ranks, dual, flats, Möbius values,
characteristic polynomials and both critical-theorem counts."""
from groupmatroid import fixtures as fx
from groupmatroid.critical import verify_crapo_rota
from groupmatroid.polymatroid import a_dual, char_poly, flats, mobius, rank_table
from groupmatroid.reptheory import dual_crapo_rota, r_spectrum


def subset(mask):
    return "{" + ",".join(str(i + 1) for i in range(2) if mask >> i & 1) + "}"


H = fx.h_s3()
print("elements:", [H.parent.format_element(h) for h in H])

P = rank_table(H)
D = a_dual(P)
print("\n|H_S| and dual card*(S), base b =", P.base)
for S in range(4):
    print(f"  {subset(S):6} {str(P.card[S]):>3} {str(D.card[S]):>3}")

mu = mobius(D)
print("\ndual flats with μ(∅, F):", {subset(F): mu[(0, F)] for F in flats(D)})
print("χ_P(t)  =", char_poly(P))
print("χ_P*(t) =", char_poly(D))

print("\nirreducibles in R(H):", sorted(r_spectrum(H).names()))
for k in (1, 2):
    cr = verify_crapo_rota(H, k)
    dcr = dual_crapo_rota(H, k)
    print(f"k = {k}: tuples with no common identity coordinate {cr.lhs} = χ_P(6^k) {cr.rhs};"
          f" weighted dual count {dcr.lhs} = χ_P*(6^k) {dcr.rhs}")
