"""Build gl(2|1) in both gradings, validate it, and check the
distinguished character that makes each grading admissible."""

from supero import build_gl, build_q, install_grading, validate_algebra, verify_semiinfinite

for kind in ("principal", "compatible"):
    g = install_grading(build_gl(2, 1), kind)
    rep = validate_algebra(g)
    semi = verify_semiinfinite(g)
    print(f"gl(2|1) {kind:>10}: axioms ok={rep['passed']}, "
          f"gamma={'(' + ','.join(semi['gamma']) + ')'}, "
          f"trace identity ok={semi['passed']} ({semi['pairs_checked']} pairs)")

q = build_q(3)
semi = verify_semiinfinite(q)
print(f"q(3)  built-in grading: gamma=0, trace identity ok={semi['passed']}")
