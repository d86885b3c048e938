"""Assemble the Cartan matrix of a weight window twice.

Once as D^T D from composition multiplicities alone, once from explicit
projective covers and their induced-module flags.  The equality of the
two products is the reciprocity statement the package certifies."""

from supero import (
    build_gl, install_grading, window_from_box, decomposition_matrix,
    cartan_matrix_via_bgg, cartan_matrix_direct, flag_matrix, matrix_to_tsv,
)

g = install_grading(build_gl(1, 1), "compatible")
W = window_from_box(g, -1, 1, support_closure=False)

D = decomposition_matrix(g, W)
print("decomposition matrix [K(mu) : L(lam)]:")
print(matrix_to_tsv(g, D.weights, D.weights, D.entries))

F = flag_matrix(g, W)
print("flag matrix (P(lam) : K(mu)) — note it is the transpose:")
print(matrix_to_tsv(g, W, W, F))

via = cartan_matrix_via_bgg(D)
direct = cartan_matrix_direct(g, W)
print("predicted Cartan matrix == assembled Cartan matrix:", via == direct)
print(matrix_to_tsv(g, W, W, via))
