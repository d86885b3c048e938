"""Induce highest-weight modules over gl(1|1) and watch the contravariant
form decide which of them are simple.

K(a,b) is two-dimensional; its form degenerates exactly on the line
a + b = 0, and the quotient by the radical is the simple module."""

from supero import (
    build_gl, install_grading, kac_module, contravariant_form, simple_module,
)

g = install_grading(build_gl(1, 1), "compatible")

print("lam        dim K   form ranks      dim L")
for a, b in [(2, -1), (1, -1), (0, 0), (-1, 1), (3, 2)]:
    K = kac_module(g, (a, b))
    form = contravariant_form(K)
    L = simple_module(g, (a, b))
    ranks = {g.weight_str(w): r for w, r in sorted(form.ranks().items(), reverse=True)}
    print(f"{g.weight_str(K.highest_weight):>8}   {K.dim}       {ranks}   {L.dim}")

print()
print("the degenerate line a + b = 0 is where the top pairing dies:")
K = kac_module(g, (1, -1))
print("  K(1|-1) weights:", [g.weight_str(w) for w in K.weights],
      "-> radical is the lower weight line")
