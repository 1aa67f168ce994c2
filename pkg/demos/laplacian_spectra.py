"""Quotient complexes X/H: Chen's subgroup of (Z/6)^3 and two binary codes with
equal top Laplacian spectra."""
from groupmatroid import fixtures as fx
from groupmatroid.exactlinalg import poly_str
from groupmatroid.laplacian import (
    build_quotient,
    edge_counts,
    euler_check,
    laplacian_spectrum,
    predicted_top_spectrum,
    verify_top_homology,
)

C = build_quotient(fx.chen())
print("Chen: faces per dimension", [C.num_faces(j) for j in range(3)])
print("  edges between vertex classes:", sorted(edge_counts(C).values()))
rep = laplacian_spectrum(C, 0, augmented=False)
print("  Δ_0 characteristic polynomial:", poly_str(rep.char_poly))
print("  integer roots", dict(rep.integer_roots), "residual", poly_str(rep.residual_factor))
print("  reduced Betti numbers:", euler_check(C).details["reduced_betti"])

for name, H in (("A", fx.binary_a()), ("B", fx.binary_b())):
    C = build_quotient(H)
    top = laplacian_spectrum(C, 5)
    print(f"\nbinary {name}: Δ_5 spectrum {dict(sorted(top.integer_roots.items()))}")
    print(f"  predicted from R(H):      {dict(sorted(predicted_top_spectrum(H).items()))}")
    print(f"  top Betti number:         {verify_top_homology(H, C).lhs}")
