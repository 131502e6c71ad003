"""Kasteleyn matrices of good patterns and the principal A-determinant.

Black nodes are the distinct rows of ``P A_Z`` and white nodes the distinct
rows of ``Q A_Z``, where the columns of ``A_Z`` span the kernel of ``B``.
Both node lists are sorted lexicographically, so the matrix (and the sign
of its determinant) is reproducible.

Variable conventions: intersection row ``e`` (0-based) carries ``z_{e+1}``,
pattern column ``i`` carries ``u_{i+1}`` and input column ``k`` of ``B_A``
carries ``v_{k+1}``.
"""

from dataclasses import dataclass, field
from itertools import permutations, product
from math import gcd

from .errors import CheckFailed, NotGood, NotSquare
from .intlinalg import as_intmatrix, det2, hermite_normal_form, integer_kernel
from .pattern import validate
from .polyring import SparsePoly, VarId, determinant, u, z


@dataclass
class NodeSets:
    A_Z: object
    black: list          # sorted labels
    white: list
    black_of: list       # row e -> index into black
    white_of: list


def node_sets(pat, check=True):
    """Black/white node labels of ``pat`` and the row-to-node maps."""
    if check:
        rep = validate(pat, "good")
        if not rep.ok:
            raise NotGood(str(rep.failures()[0]))
    A_Z = integer_kernel(pat.B).T
    PA = pat.P.dot(A_Z)
    QA = pat.Q.dot(A_Z)
    black_rows = [tuple(int(x) for x in r) for r in PA]
    white_rows = [tuple(int(x) for x in r) for r in QA]
    black = sorted(set(black_rows))
    white = sorted(set(white_rows))
    if len(black) != len(white):
        raise NotSquare(f"{len(black)} black nodes but {len(white)} white nodes")
    bi = {lab: k for k, lab in enumerate(black)}
    wi = {lab: k for k, lab in enumerate(white)}
    return NodeSets(A_Z, black, white, [bi[r] for r in black_rows], [wi[r] for r in white_rows])


@dataclass
class KasteleynMatrix:
    row_labels: list
    col_labels: list
    entries: list        # list of rows of SparsePoly
    p: int

    @property
    def size(self):
        return len(self.row_labels)

    def term_count(self):
        return sum(len(x) for row in self.entries for x in row)

    def determinant(self, cross_check=True):
        return determinant(self.entries, cross_check=cross_check)

    def to_json(self):
        return {
            "p": self.p,
            "row_labels": [list(r) for r in self.row_labels],
            "col_labels": [list(c) for c in self.col_labels],
            "entries": [[x.to_json() for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj):
        return cls([tuple(r) for r in obj["row_labels"]],
                   [tuple(c) for c in obj["col_labels"]],
                   [[SparsePoly.from_json(x) for x in row] for row in obj["entries"]],
                   obj["p"])


def build_K(pat, check=True):
    """Generalized Kasteleyn matrix: one ``z_e u_i u_j`` term per intersection row."""
    nodes = node_sets(pat, check=check)
    n = len(nodes.black)
    entries = [[SparsePoly() for _ in range(n)] for _ in range(n)]
    for e in range(pat.nrows):
        i, j = pat.row_pair(e)
        b, w = nodes.black_of[e], nodes.white_of[e]
        entries[b][w] = entries[b][w] + z(e + 1) * u(i + 1) * u(j + 1)
    return KasteleynMatrix(nodes.black, nodes.white, entries, pat.p)


def _complement_poly(poly, p):
    u_keys = [VarId("u", k).key for k in range(1, p + 1)]
    u_set = set(u_keys)
    out = {}
    for mono, c in poly.terms.items():
        exps = dict(mono)
        if any(exps.get(key, 0) > 1 for key in u_keys):
            raise ValueError("complement needs u-exponents at most 1")
        if any(VarId.from_key(key).family == "u" and key not in u_set for key in exps):
            raise ValueError(f"u-variable outside u1..u{p}")
        new = {key: e for key, e in exps.items() if key not in u_set}
        for key in u_keys:
            if not exps.get(key):
                new[key] = 1
        out[tuple(sorted(new.items()))] = c
    return SparsePoly(out)


def complement_K(K, p=None):
    """Replace each ``u_i u_j`` by the product of the other ``p - 2`` u-variables."""
    p = K.p if p is None else p
    entries = [[_complement_poly(x, p) for x in row] for row in K.entries]
    return KasteleynMatrix(K.row_labels, K.col_labels, entries, p)


def iota_map(pat):
    """``z_{e+1} -> |det2(zeta_i, zeta_j)|`` for every intersection row."""
    out = {}
    for e in range(pat.nrows):
        i, j = pat.row_pair(e)
        out[VarId("z", e + 1)] = abs(det2(pat.zeta(i), pat.zeta(j)))
    return out


def iota_det(K, pat, cross_check=True, substitute_first=True):
    """Determinant of ``K`` with every ``z_e`` specialised by ``iota_map``.

    The specialisation is a ring homomorphism, so it may be applied to the
    entries before taking the determinant; that is much cheaper and is the
    default.  ``substitute_first=False`` takes the determinant literally
    first.
    """
    images = iota_map(pat)
    if not substitute_first:
        return K.determinant(cross_check=cross_check).substitute(images)
    entries = [[x.substitute(images) for x in row] for row in K.entries]
    return determinant(entries, cross_check=cross_check)


# -- principal A-determinant ---------------------------------------------


@dataclass
class ADetResult:
    B_A: object
    run: object              # gulotta.RunResult
    K: KasteleynMatrix
    K_c: KasteleynMatrix
    u_form: SparsePoly       # iota(det K^c), before u -> v
    raw: SparsePoly          # in v, sign as computed
    value: SparsePoly        # sign-normalized
    newton: object = None    # NewtonReport on iota(det K)


def u_to_v_map(provenance):
    return {VarId("u", i + 1): (d, VarId("v", k + 1))
            for i, (k, d) in enumerate(provenance.entries)}


def u_to_v_inverse(u_form, provenance):
    """Image under ``u_i -> v_k / d_k``, scaled to a primitive integer polynomial.

    This is the substitution under which the result vanishes on the
    A-discriminant when some input column is split (``d_k > 1``).
    """
    keys = {VarId("u", i + 1).key: (VarId("v", k + 1).key, d)
            for i, (k, d) in enumerate(provenance.entries)}
    scaled = []
    for mono, c in u_form.terms.items():
        denom = 1
        image = {}
        for key, e in mono:
            if key in keys:
                vkey, d = keys[key]
                denom *= d ** e
                image[vkey] = image.get(vkey, 0) + e
            else:
                image[key] = image.get(key, 0) + e
        scaled.append((tuple(sorted(image.items())), c, denom))
    common = 1
    for _, _, denom in scaled:
        common = common * denom // gcd(common, denom)
    out = {}
    for mono, c, denom in scaled:
        out[mono] = out.get(mono, 0) + c * (common // denom)
    poly = SparsePoly(out)
    content = poly.content()
    if content > 1:
        poly = SparsePoly({m: c // content for m, c in poly.terms.items()})
    return poly


MULTIPLICITY_RULES = ("paper", "inverse")


def compute_adet(B_A, newton=True, cross_check=True, keep_trace=False, multiplicity="paper"):
    """Run the full pipeline and keep every intermediate object.

    ``multiplicity`` picks how split columns are folded back: ``"paper"``
    sets ``u_i = d_k v_k``; ``"inverse"`` uses ``u_i = v_k / d_k`` (see
    ``u_to_v_inverse``).  The two agree when every ``d_k`` is 1.
    """
    if multiplicity not in MULTIPLICITY_RULES:
        raise ValueError(f"multiplicity must be one of {MULTIPLICITY_RULES}")
    from .gulotta import run

    res = run(B_A, keep_trace=keep_trace)
    pat = res.pattern
    K = build_K(pat)
    K_c = complement_K(K)
    u_form = iota_det(K_c, pat, cross_check=cross_check)
    if multiplicity == "paper":
        raw = u_form.substitute(u_to_v_map(res.provenance))
    else:
        raw = u_to_v_inverse(u_form, res.provenance)
    report = None
    if newton:
        report = newton_polygon_check(iota_det(K, pat, cross_check=cross_check), pat.B)
    return ADetResult(as_intmatrix(B_A), res, K, K_c, u_form, raw, raw.sign_normalized(), report)


def principal_adet(B_A, multiplicity="paper"):
    """Principal A-determinant of the configuration with relation matrix ``B_A``, up to sign."""
    return compute_adet(B_A, newton=False, multiplicity=multiplicity).value


# -- Newton polygon ---------------------------------------------------------


@dataclass
class NewtonReport:
    passed: bool
    vertices: list = field(default_factory=list)   # hull vertices in lattice coordinates
    edges: list = field(default_factory=list)      # (primitive vector, lattice length)
    identification: object = None                  # 2x2 matrix, lattice coords -> B columns
    note: str = ""

    def edge_lengths(self):
        return [n for _, n in self.edges]


def _u_exponents(poly, p):
    keys = [VarId("u", k).key for k in range(1, p + 1)]
    vecs = set()
    for mono in poly.terms:
        exps = dict(mono)
        vecs.add(tuple(exps.get(key, 0) for key in keys))
    return sorted(vecs)


def _coords(basis, vec):
    """Coordinates of ``vec`` in an echelon ``basis``; None if not in its span."""
    rest = list(vec)
    out = []
    for row in basis:
        piv = next(c for c, x in enumerate(row) if x)
        q, r = divmod(rest[piv], row[piv])
        if r:
            return None
        out.append(q)
        rest = [a - q * b for a, b in zip(rest, row)]
    return tuple(out) if not any(rest) else None


def _hull(points):
    """Counter-clockwise convex hull (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return lower[:-1] + upper[:-1]


def _apply(g, vec):
    return (g[0][0] * vec[0] + g[0][1] * vec[1], g[1][0] * vec[0] + g[1][1] * vec[1])


def _solve_unimodular(src, dst):
    """2x2 integer ``g`` with ``g src_k = dst_k``; None unless ``g`` exists and has det +-1."""
    (a, b), (c, d) = src
    det = a * d - b * c
    if det == 0:
        return None
    # g = D S^-1 with S = [src0 src1] as columns
    inv = ((d, -c), (-b, a))      # det * S^-1
    (x0, y0), (x1, y1) = dst
    D = ((x0, x1), (y0, y1))
    g = []
    for r in range(2):
        row = []
        for col in range(2):
            num = D[r][0] * inv[0][col] + D[r][1] * inv[1][col]
            if num % det:
                return None
            row.append(num // det)
        g.append(row)
    if g[0][0] * g[1][1] - g[0][1] * g[1][0] not in (1, -1):
        return None
    return g


def newton_polygon_check(poly, B_Z, raise_on_fail=True):
    """Compare the Newton polygon (in the u-variables) with the columns of ``B_Z``.

    The exponent vectors must lie in a coset of a rank-2 lattice; in a basis
    of that lattice the hull's edges, each counted with its lattice length,
    must match the columns of ``B_Z`` under one unimodular map.
    """
    B_Z = as_intmatrix(B_Z)
    p = B_Z.shape[1]
    columns = sorted((int(B_Z[0, k]), int(B_Z[1, k])) for k in range(p))
    exps = _u_exponents(poly, p)
    if len(exps) < 2:
        return NewtonReport(True, note="degenerate: at most one monomial, nothing to compare")
    base = exps[0]
    diffs = [[a - b for a, b in zip(x, base)] for x in exps[1:]]
    basis = [list(r) for r in hermite_normal_form(diffs)]
    if len(basis) != 2:
        return _fail(raise_on_fail, NewtonReport(False, note=f"exponent lattice has rank {len(basis)}"))
    pts = [_coords(basis, [a - b for a, b in zip(x, base)]) for x in exps]
    hull = _hull(pts)
    edges = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        n = gcd(dx, dy)
        edges.append(((dx // n, dy // n), n))
    report = NewtonReport(False, hull, edges)
    expanded = sorted(vec for vec, n in edges for _ in range(n))
    if len(expanded) != len(columns):
        report.note = f"hull has {len(expanded)} unit steps, B has {len(columns)} columns"
        return _fail(raise_on_fail, report)
    e0, e1 = edges[0][0], next(vec for vec, _ in edges if det2(vec, edges[0][0]))
    directions = sorted(set(columns))
    for c0, c1 in product(directions, repeat=2):
        g = _solve_unimodular((e0, e1), (c0, c1))
        if g is None:
            continue
        if sorted(_apply(g, vec) for vec in expanded) == columns:
            report.passed = True
            report.identification = g
            return report
    report.note = "no unimodular map sends the hull edges onto the columns of B"
    return _fail(raise_on_fail, report)


def _fail(raise_on_fail, report):
    if raise_on_fail:
        raise CheckFailed(f"{report.note}; hull {report.vertices}, edges {report.edges}")
    return report


# -- dimer graph ---------------------------------------------------------------


@dataclass
class DimerGraph:
    black: list
    white: list
    edges: list          # (black index, white index, i, j) per intersection row

    def to_json(self):
        return {"black": [list(b) for b in self.black],
                "white": [list(w) for w in self.white],
                "edges": [list(e) for e in self.edges]}


def to_dimer_graph(pat, check=True):
    nodes = node_sets(pat, check=check)
    edges = [(nodes.black_of[e], nodes.white_of[e]) + pat.row_pair(e) for e in range(pat.nrows)]
    return DimerGraph(nodes.black, nodes.white, edges)


def match_up_to_relabeling(K, other):
    """Row/column permutations making two Kasteleyn matrices agree after erasing ``z``.

    Returns ``(row_perm, col_perm)`` with ``K[r][c] ~ other[row_perm[r]][col_perm[c]]``
    or None.  Small matrices only (the search is factorial).
    """
    n = len(K)
    erase = {}
    for M in (K, other):
        for row in M:
            for x in row:
                for var in x.variables():
                    if var.family == "z":
                        erase[var] = 1
    flat_a = [[x.substitute(erase) for x in row] for row in K]
    flat_b = [[x.substitute(erase) for x in row] for row in other]
    for rp in permutations(range(n)):
        for cp in permutations(range(n)):
            if all(flat_a[r][c] == flat_b[rp[r]][cp[c]] for r in range(n) for c in range(n)):
                return rp, cp
    return None
