"""Explicit weight supermodules with exact rational action matrices.

A module is stored concretely: every basis vector carries a weight and a
parity, and every algebra basis element acts through one sparse matrix.
Everything downstream (forms, hom spaces, filtrations) works through this
single representation, so :func:`validate_module` is the final word on
whether a constructed action really is a representation.

Induction from a subalgebra is done once, generically: pick a PBW order
that ranks the free directions before the inducing subalgebra, enumerate
normal monomials in the free directions, and read the action straight off
the straightening algorithm.  Truncated variants (finite slices of
infinite-dimensional induced modules) drop monomials outside a degree or
weight cutoff; the validator knows which axiom instances are exact on the
retained vectors and checks only those.
"""

from .config import DEFAULT_LIMITS
from .errors import ResourceLimitError, TruncationError
from .linalg import SparseMatrix, vec_add_into
from .pbw import (
    PbwAlgebra,
    monomial_degree,
    monomial_parity,
    monomial_str,
    monomial_weight,
    monomials,
)
from .rational import ONE, QQ, ZERO, rat_str
from .weights import wadd, wneg


class ExplicitModule:
    """A finite-dimensional weight supermodule given by explicit matrices."""

    __slots__ = (
        "g",
        "weights",
        "parities",
        "action",
        "labels",
        "highest_weight",
        "truncated",
        "meta",
        "_wspaces",
    )

    def __init__(self, g, weights, parities, action, labels=None,
                 highest_weight=None, truncated=False, meta=None):
        self.g = g
        self.weights = tuple(tuple(w) for w in weights)
        self.parities = tuple(int(p) % 2 for p in parities)
        if len(self.weights) != len(self.parities):
            raise ValueError("weights and parities disagree in length")
        self.action = dict(action)
        n = len(self.weights)
        for x, mat in self.action.items():
            if mat.nrows != n or mat.ncols != n:
                raise ValueError(
                    f"action of {g.label(x)} is {mat.nrows}x{mat.ncols}, expected {n}x{n}"
                )
        if labels is None:
            labels = tuple(f"v{i}" for i in range(n))
        self.labels = tuple(labels)
        self.highest_weight = tuple(highest_weight) if highest_weight is not None else None
        self.truncated = bool(truncated)
        self.meta = dict(meta) if meta else {}
        self._wspaces = None

    # -- trivia ------------------------------------------------------------

    @property
    def dim(self):
        return len(self.weights)

    def __repr__(self):
        kind = self.meta.get("kind", "module")
        flag = ", truncated" if self.truncated else ""
        return f"ExplicitModule({kind}, dim={self.dim}{flag})"

    # -- acting ------------------------------------------------------------

    def act(self, x_id, vec):
        """Apply a basis element to a vector (dict index -> coefficient)."""
        return self.action[x_id].apply(vec)

    def act_vector(self, xvec, vec):
        """Apply an algebra element given as a dict id -> coefficient."""
        out = {}
        for x, c in xvec.items():
            if c:
                vec_add_into(out, self.action[x].apply(vec), c)
        return out

    def act_word(self, word, vec):
        """Apply a product of basis elements, rightmost factor first."""
        cur = vec
        for x in reversed(word):
            if not cur:
                return {}
            cur = self.action[x].apply(cur)
        return cur

    # -- weight bookkeeping ------------------------------------------------

    def weight_spaces(self):
        """Dict weight -> tuple of basis indices, indices ascending."""
        if self._wspaces is None:
            spaces = {}
            for i, w in enumerate(self.weights):
                spaces.setdefault(w, []).append(i)
            self._wspaces = {w: tuple(ix) for w, ix in spaces.items()}
        return self._wspaces

    def weight_space(self, w):
        return self.weight_spaces().get(tuple(w), ())

    def character(self):
        """Dict weight -> total dimension of the weight space."""
        return {w: len(ix) for w, ix in self.weight_spaces().items()}

    def super_character(self):
        """Dict weight -> (even dimension, odd dimension)."""
        out = {}
        for w, ix in self.weight_spaces().items():
            d1 = sum(self.parities[i] for i in ix)
            out[w] = (len(ix) - d1, d1)
        return out

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        """A stable, exact description suitable for golden-file comparison."""
        acts = {}
        for x in sorted(self.action):
            mat = self.action[x]
            triples = [
                [r, c, rat_str(v)] for (r, c), v in sorted(mat.data.items())
            ]
            acts[self.g.label(x)] = triples
        params = ",".join(str(p) for p in self.g.params)
        return {
            "algebra": f"{self.g.family}({params})",
            "grading": self.g.grading_kind,
            "kind": self.meta.get("kind", "module"),
            "dim": self.dim,
            "highest_weight": (
                self.g.weight_str(self.highest_weight)
                if self.highest_weight is not None
                else None
            ),
            "truncated": self.truncated,
            "weights": [self.g.weight_str(w) for w in self.weights],
            "parities": list(self.parities),
            "labels": list(self.labels),
            "action": acts,
        }


# ---------------------------------------------------------------------------
# validation


def _truncation_guard(module):
    """Return a predicate telling which axiom instances are exact.

    guard(i, x, y) is True when the bracket relation for the pair (x, y)
    applied to basis vector i is fully computed on the retained vectors.
    For degree-truncated modules everything at word degree >= the cutoff
    is retained; for weight-window truncations the retained word weights
    are exactly the window.
    """
    meta = module.meta
    g = module.g
    min_deg = meta.get("min_degree")
    window = meta.get("window")
    word_deg = meta.get("depth_degrees")
    word_wt = meta.get("word_weight")
    if min_deg is None and window is None:
        raise TruncationError(
            "truncated module without truncation metadata; cannot validate"
        )

    def guard(i, x, y):
        if min_deg is not None:
            d = word_deg[i]
            dx = g.degree_of(x)
            dy = g.degree_of(y)
            if d + dx < min_deg or d + dy < min_deg or d + dx + dy < min_deg:
                return False
        if window is not None:
            w = word_wt[i]
            wx = g.weight_of(x)
            wy = g.weight_of(y)
            for target in (wadd(w, wx), wadd(w, wy), wadd(wadd(w, wx), wy)):
                if target not in window:
                    return False
        return True

    return guard


def validate_module(module, limits=DEFAULT_LIMITS):
    """Check that the stored matrices really define a weight supermodule.

    Verifies torus diagonality, weight and parity additivity of every
    action matrix, and the bracket relation

        X_a X_b - (-1)^{|a||b|} X_b X_a = X_{[a,b]}

    on all pairs of algebra basis elements.  Truncated modules are checked
    only on the axiom instances that are exact on the retained vectors.
    Returns a report dict; see :func:`assert_valid_module`.
    """
    g = module.g
    failures = []
    n = module.dim

    missing = [x for x in range(g.dim) if x not in module.action]
    if missing:
        failures.append(f"no action matrix for {[g.label(x) for x in missing]}")

    for t in g.t_ids:
        coord = g.t_coord[t]
        mat = module.action.get(t)
        if mat is None:
            continue
        for (r, c), v in mat.data.items():
            if r != c:
                failures.append(f"torus element {g.label(t)} not diagonal at ({r},{c})")
                break
            if v != QQ(module.weights[r][coord]):
                failures.append(
                    f"torus eigenvalue of {g.label(t)} on vector {r} is {v}, "
                    f"weight says {module.weights[r][coord]}"
                )
                break

    for x, mat in module.action.items():
        wx = g.weight_of(x)
        px = g.parity(x)
        for (r, c), v in mat.data.items():
            if module.weights[r] != wadd(module.weights[c], wx):
                failures.append(
                    f"{g.label(x)} breaks weight additivity at ({r},{c})"
                )
                break
            if module.parities[r] != (module.parities[c] + px) % 2:
                failures.append(
                    f"{g.label(x)} breaks parity additivity at ({r},{c})"
                )
                break

    pairs_checked = 0
    guard = _truncation_guard(module) if module.truncated else None
    for a in range(g.dim):
        mat_a = module.action.get(a)
        if mat_a is None:
            continue
        pa = g.parity(a)
        for b in range(g.dim):
            mat_b = module.action.get(b)
            if mat_b is None:
                continue
            sign = -1 if pa and g.parity(b) else 1
            rhs_terms = g.bracket(a, b)
            if guard is None:
                lhs = mat_a @ mat_b
                if sign == 1:
                    lhs = lhs - mat_b @ mat_a
                else:
                    lhs = lhs + mat_b @ mat_a
                rhs = SparseMatrix(n, n)
                for k, coeff in rhs_terms.items():
                    rhs = rhs + module.action[k].scale(coeff)
                pairs_checked += 1
                if lhs != rhs:
                    failures.append(
                        f"bracket relation fails for ({g.label(a)},{g.label(b)})"
                    )
            else:
                for i in range(n):
                    if not guard(i, a, b):
                        continue
                    v = {i: ONE}
                    lhs = mat_a.apply(mat_b.apply(v))
                    vec_add_into(lhs, mat_b.apply(mat_a.apply(v)), QQ(-sign))
                    rhs = {}
                    for k, coeff in rhs_terms.items():
                        vec_add_into(rhs, module.action[k].apply(v), coeff)
                    pairs_checked += 1
                    if lhs != rhs:
                        failures.append(
                            f"bracket relation fails for ({g.label(a)},{g.label(b)}) "
                            f"on vector {i}"
                        )
                        break

    return {
        "module": repr(module),
        "dim": n,
        "truncated": module.truncated,
        "pairs_checked": pairs_checked,
        "failures": failures,
        "passed": not failures,
    }


def assert_valid_module(module, limits=DEFAULT_LIMITS):
    report = validate_module(module, limits)
    if not report["passed"]:
        raise ValueError(
            f"module validation failed: {report['failures'][:4]}"
        )
    return report


# ---------------------------------------------------------------------------
# elementary constructions


def trivial_module(k, lam):
    """The one-dimensional module where the torus acts by lam.

    Non-torus basis elements act by zero; the caller is responsible for
    only using this over subalgebras where that is consistent (e.g. a
    Borel, with lam vanishing on the derived part of the torus span).
    """
    lam = tuple(lam)
    action = {}
    for x in range(k.dim):
        mat = SparseMatrix(1, 1)
        if x in k.t_coord:
            c = QQ(lam[k.t_coord[x]])
            if c:
                mat.data[(0, 0)] = c
        action[x] = mat
    return ExplicitModule(
        k, [lam], [0], action, labels=("v",),
        highest_weight=lam, meta={"kind": "trivial"},
    )


def restrict_module(module, sub):
    """View a module over a subalgebra of its algebra (matched by label)."""
    parent = module.g
    action = {}
    for r in range(sub.dim):
        action[r] = module.action[parent.id_of(sub.label(r))]
    return ExplicitModule(
        sub, module.weights, module.parities, action, labels=module.labels,
        highest_weight=module.highest_weight, truncated=module.truncated,
        meta=dict(module.meta, kind=f"restrict({module.meta.get('kind', 'module')})"),
    )


def inflate_module(module, big, zero_ok=True):
    """Extend a module over a subalgebra to a larger one, unmatched
    basis elements acting by zero (matched by label)."""
    small = module.g
    n = module.dim
    action = {}
    for r in range(big.dim):
        lbl = big.label(r)
        if lbl in small.by_label:
            action[r] = module.action[small.id_of(lbl)]
        elif zero_ok:
            action[r] = SparseMatrix(n, n)
        else:
            raise ValueError(f"no action available for {lbl}")
    return ExplicitModule(
        big, module.weights, module.parities, action, labels=module.labels,
        highest_weight=module.highest_weight, truncated=module.truncated,
        meta=dict(module.meta),
    )


def direct_sum(a, b):
    """Block-diagonal direct sum of two modules over the same algebra."""
    from .algebra import same_algebra

    if not same_algebra(a.g, b.g):
        raise ValueError("direct sum needs modules over the same algebra")
    na, nb = a.dim, b.dim
    action = {}
    for x in range(a.g.dim):
        mat = SparseMatrix(na + nb, na + nb)
        for (r, c), v in a.action[x].data.items():
            mat.data[(r, c)] = v
        for (r, c), v in b.action[x].data.items():
            mat.data[(na + r, na + c)] = v
        action[x] = mat
    return ExplicitModule(
        a.g,
        a.weights + b.weights,
        a.parities + b.parities,
        action,
        labels=tuple(a.labels) + tuple(b.labels),
        truncated=a.truncated or b.truncated,
        meta={"kind": "direct_sum"},
    )


# ---------------------------------------------------------------------------
# induction


def induced_module(g, sub_ids, fiber, order=None, min_degree=None,
                   weight_window=None, max_length=None, highest_weight=None,
                   kind="induced", limits=DEFAULT_LIMITS):
    """Induce a module from a subalgebra along a PBW basis.

    ``fiber`` must be a module over ``g.subalgebra(sub_ids)`` (matched by
    label and position).  The basis of the result consists of pairs
    (normal monomial in the complementary directions, fiber vector); the
    action is read off the straightening rule, with the trailing
    subalgebra part of each normal word acting on the fiber.

    A ``min_degree``, ``weight_window`` or ``max_length`` cutoff yields a
    truncated module: free monomials outside the cutoff are dropped, and
    the result is tagged so the validator knows which axiom instances are
    exact.
    """
    sub_ids = list(sub_ids)
    sub_set = set(sub_ids)
    if len(sub_set) != len(sub_ids):
        raise ValueError("duplicate ids in sub_ids")
    free_ids = [i for i in range(g.dim) if i not in sub_set]
    if fiber.g.dim != len(sub_ids):
        raise ValueError(
            f"fiber algebra has dim {fiber.g.dim}, expected {len(sub_ids)}"
        )
    for r, sid in enumerate(sub_ids):
        if fiber.g.label(r) != g.label(sid):
            raise ValueError(
                f"fiber basis {r} is {fiber.g.label(r)}, expected {g.label(sid)}"
            )

    if order is None:
        key = (lambda i: (g.degree_of(i), i)) if g.degrees is not None else (lambda i: i)
        order = sorted(free_ids, key=key) + sorted(sub_ids, key=key)
    pbw = PbwAlgebra(g, order=order, limits=limits)
    min_sub_rank = min(pbw.rank[s] for s in sub_ids)
    if any(pbw.rank[f] >= min_sub_rank for f in free_ids):
        raise ValueError("PBW order must rank all free ids before sub ids")

    words = monomials(
        pbw, free_ids, weight_window=weight_window,
        min_degree=min_degree, max_length=max_length,
    )
    fdim = fiber.dim
    total = len(words) * fdim
    if total > limits.max_module_dim:
        raise ResourceLimitError(
            f"induced module dimension {total} exceeds limit {limits.max_module_dim}"
        )
    word_index = {w: k for k, w in enumerate(words)}
    truncated = (
        min_degree is not None or weight_window is not None
        or max_length is not None or fiber.truncated
    )

    wlen = g.weight_len
    weights = []
    parities = []
    labels = []
    word_wt = []
    word_deg = []
    graded = g.degrees is not None
    for w in words:
        mw = monomial_weight(g, w)
        mp = monomial_parity(g, w)
        md = monomial_degree(g, w) if graded else None
        ms = monomial_str(g, w)
        for j in range(fdim):
            weights.append(wadd(mw, fiber.weights[j]))
            parities.append((mp + fiber.parities[j]) % 2)
            labels.append(f"{ms}.{fiber.labels[j]}")
            word_wt.append(mw)
            word_deg.append(md)
    del wlen

    sub_local = {sid: r for r, sid in enumerate(sub_ids)}
    action = {}
    for x in range(g.dim):
        mat = SparseMatrix(total, total)
        for k, w in enumerate(words):
            expansion = pbw.straighten_word((x,) + w)
            images = {}
            for nword, c in expansion.items():
                cut = len(nword)
                for pos, lid in enumerate(nword):
                    if pbw.rank[lid] >= min_sub_rank:
                        cut = pos
                        break
                prefix = nword[:cut]
                row_word = word_index.get(prefix)
                if row_word is None:
                    if truncated:
                        continue
                    raise AssertionError(
                        f"free monomial {prefix} missing from untruncated basis"
                    )
                suffix = tuple(sub_local[s] for s in nword[cut:])
                images.setdefault(row_word, []).append((suffix, c))
            for j in range(fdim):
                col = k * fdim + j
                for row_word, emits in images.items():
                    acc = {}
                    for suffix, c in emits:
                        vec_add_into(acc, fiber.act_word(suffix, {j: ONE}), c)
                    base = row_word * fdim
                    for jj, cv in acc.items():
                        mat.data[(base + jj, col)] = mat.data.get((base + jj, col), ZERO) + cv
        for key in [key for key, v in mat.data.items() if not v]:
            del mat.data[key]
        action[x] = mat

    meta = {
        "kind": kind,
        "sub_ids": tuple(sub_ids),
        "free_ids": tuple(free_ids),
        "min_degree": min_degree,
        "depth_degrees": tuple(word_deg) if graded else None,
        "window": frozenset(tuple(w) for w in weight_window) if weight_window else None,
        "word_weight": tuple(word_wt),
        "pbw_order": tuple(order),
    }
    return ExplicitModule(
        g, weights, parities, action, labels=labels,
        highest_weight=highest_weight, truncated=truncated, meta=meta,
    )


# ---------------------------------------------------------------------------
# duals and parity


def dual_module(module, kind=None):
    """The dual space with the standard sign rule, weights negated.

    (x.f)(v) = -(-1)^{|x||f|} f(x.v).  Truncated modules have no honest
    dual (the missing vectors pair nontrivially), so this raises.
    """
    if module.truncated:
        raise TruncationError("cannot dualize a truncated module slice")
    g = module.g
    n = module.dim
    action = {}
    for x in range(g.dim):
        px = g.parity(x)
        mat = SparseMatrix(n, n)
        for (r, c), v in module.action[x].data.items():
            sign = -1 if px and module.parities[c] else 1
            mat.data[(c, r)] = -v if sign == 1 else v
        action[x] = mat
    return ExplicitModule(
        g,
        [wneg(w) for w in module.weights],
        module.parities,
        action,
        labels=tuple(f"{lbl}*" for lbl in module.labels),
        meta={"kind": kind or f"dual({module.meta.get('kind', 'module')})"},
    )


def tau_dual(module, kind=None):
    """The contravariant dual: weights preserved, action twisted by the
    transpose antiautomorphism e(i,j) -> e(j,i)."""
    if module.truncated:
        raise TruncationError("cannot dualize a truncated module slice")
    g = module.g
    if g.transpose is None:
        raise ValueError(f"{g.family}{g.params} has no transpose map installed")
    action = {}
    for x in range(g.dim):
        action[x] = module.action[g.transpose[x]].transpose()
    return ExplicitModule(
        g,
        module.weights,
        module.parities,
        action,
        labels=tuple(f"{lbl}^" for lbl in module.labels),
        highest_weight=None,
        meta={"kind": kind or f"tau_dual({module.meta.get('kind', 'module')})"},
    )


def parity_flip(module):
    """Same action matrices, all parities reversed."""
    flips = module.meta.get("parity_flips", 0) + 1
    return ExplicitModule(
        module.g,
        module.weights,
        [1 - p for p in module.parities],
        module.action,
        labels=module.labels,
        highest_weight=module.highest_weight,
        truncated=module.truncated,
        meta=dict(module.meta, parity_flips=flips),
    )


# ---------------------------------------------------------------------------
# sub and quotient


def _closure_echelon(module, vectors):
    """Row echelon basis of the submodule generated by the given vectors.

    Seed vectors must be weight- and parity-homogeneous; echelon reduction
    then keeps every row homogeneous automatically (two vectors sharing a
    leading coordinate share that coordinate's weight and parity).
    """
    from .linalg import Echelon

    for v in vectors:
        coords = [i for i in v if v[i]]
        if not coords:
            continue
        w0 = module.weights[coords[0]]
        p0 = module.parities[coords[0]]
        for i in coords[1:]:
            if module.weights[i] != w0 or module.parities[i] != p0:
                raise ValueError(
                    "submodule seed vectors must be weight/parity homogeneous"
                )

    ech = Echelon()
    frontier = []
    for v in vectors:
        lead = ech.add(v)
        if lead is not None:
            frontier.append(dict(ech.pivots[lead]))
    while frontier:
        next_frontier = []
        for v in frontier:
            for x in range(module.g.dim):
                img = module.act(x, v)
                lead = ech.add(img)
                if lead is not None:
                    next_frontier.append(dict(ech.pivots[lead]))
        frontier = next_frontier
    ech.full_reduce()
    return ech


def submodule_module(module, vectors):
    """The submodule generated by the given homogeneous vectors.

    Returns (sub, inclusion) where inclusion is a dim(module) x dim(sub)
    matrix whose columns are the canonical (reduced echelon) basis of the
    submodule.
    """
    ech = _closure_echelon(module, vectors)
    rows = ech.basis()
    nd = len(rows)
    lead = {}
    weights = []
    parities = []
    labels = []
    for k, row in enumerate(rows):
        piv = min(row)
        lead[piv] = k
        weights.append(module.weights[piv])
        parities.append(module.parities[piv])
        labels.append(f"s:{module.labels[piv]}")
    inclusion = SparseMatrix(module.dim, nd)
    for k, row in enumerate(rows):
        for i, v in row.items():
            inclusion.data[(i, k)] = v
    action = {}
    for x in range(module.g.dim):
        mat = SparseMatrix(nd, nd)
        for k, row in enumerate(rows):
            img = module.act(x, row)
            coords = ech.express(img)
            if coords is None:
                raise AssertionError("closure failed to be a submodule")
            for piv, c in coords.items():
                mat.data[(lead[piv], k)] = c
        action[x] = mat
    sub = ExplicitModule(
        module.g, weights, parities, action, labels=labels,
        truncated=module.truncated,
        meta={"kind": f"sub({module.meta.get('kind', 'module')})"},
    )
    return sub, inclusion


def quotient_module(module, vectors, kind=None):
    """The quotient by the submodule generated by the given vectors.

    Returns (quotient, projection) with projection a dim(q) x dim(module)
    matrix.  The quotient basis is the set of coordinates away from the
    echelon pivots of the submodule.
    """
    ech = _closure_echelon(module, vectors)
    pivots = set(ech.pivot_cols())
    keep = [i for i in range(module.dim) if i not in pivots]
    pos = {i: k for k, i in enumerate(keep)}
    nq = len(keep)

    def project(vec):
        red = ech.reduce(dict(vec))
        out = {}
        for i, v in red.items():
            out[pos[i]] = v
        return out

    projection = SparseMatrix(nq, module.dim)
    for i in range(module.dim):
        for k, v in project({i: ONE}).items():
            projection.data[(k, i)] = v
    action = {}
    for x in range(module.g.dim):
        mat = SparseMatrix(nq, nq)
        for k, i in enumerate(keep):
            img = module.act(x, {i: ONE})
            for r, v in project(img).items():
                mat.data[(r, k)] = v
        action[x] = mat
    hw = module.highest_weight
    if hw is not None and not any(module.weights[i] == hw for i in keep):
        hw = None
    quot = ExplicitModule(
        module.g,
        [module.weights[i] for i in keep],
        [module.parities[i] for i in keep],
        action,
        labels=[f"q:{module.labels[i]}" for i in keep],
        highest_weight=hw,
        truncated=module.truncated,
        meta={"kind": kind or f"quotient({module.meta.get('kind', 'module')})"},
    )
    return quot, projection
