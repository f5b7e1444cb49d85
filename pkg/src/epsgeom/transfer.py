"""Transfer checks between standard and eps-extended coefficients.

Kernels, images and exactness of polynomial matrices are compared across
the two coefficient fields with the Groebner module engine; faithful
flatness shows up concretely as the solvability of extended linear
systems in terms of standard syzygies.
"""

from .errors import InvalidInput, NotAComplex, NotASolution
from .groebner import module_member, module_syzygies, syzygy_basis
from .parser import format_poly, parse_poly
from .poly import EXTENDED, STANDARD, Poly


class PolyMatrix:
    """Rectangular polynomial matrix over one coefficient domain.

    Read as the module map R^cols -> R^rows sending the j-th basis
    vector to the j-th column.  Mixed-domain entries are promoted so the
    domain tag stays uniform.
    """

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise InvalidInput("a matrix needs at least one entry")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise InvalidInput("matrix rows have unequal lengths")
            for e in r:
                if not isinstance(e, Poly):
                    raise InvalidInput("matrix entries must be Poly")
        domain = STANDARD
        if any(e.domain == EXTENDED for r in rows for e in r):
            domain = EXTENDED
            rows = [[e.to_extended() for e in r] for r in rows]
        self.entries = tuple(tuple(r) for r in rows)
        self.domain = domain

    @staticmethod
    def from_strings(rows):
        return PolyMatrix([[parse_poly(s) for s in r] for r in rows])

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]))

    def entry(self, i, j):
        return self.entries[i][j]

    def column(self, j):
        return [r[j] for r in self.entries]

    def columns(self):
        return [self.column(j) for j in range(self.shape[1])]

    def to_extended(self):
        if self.domain == EXTENDED:
            return self
        return PolyMatrix(
            [[e.to_extended() for e in r] for r in self.entries]
        )

    def is_zero(self):
        return not any(e for r in self.entries for e in r)

    def mul(self, other):
        """Matrix product self * other."""
        n, m = self.shape
        m2, p = other.shape
        if m != m2:
            raise InvalidInput(
                "cannot multiply %dx%d by %dx%d" % (n, m, m2, p)
            )
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = Poly.zero(self.domain)
                for k in range(m):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def to_json(self):
        return [[format_poly(e) for e in r] for r in self.entries]

    def __repr__(self):
        return "PolyMatrix(%dx%d, %s)" % (*self.shape, self.domain)


def flatness_witness(a, x):
    """Express an extended solution of sum a_i*x_i = 0 over standard syzygies.

    a is a standard scalar row, x an extended solution vector; the result
    r satisfies x = sum r_i * beta_i where beta is the canonical standard
    syzygy basis of a.  That such r always exist is the flatness of the
    coefficient extension.
    """
    a = list(a)
    x = list(x)
    if len(a) != len(x):
        raise InvalidInput("coefficient row and solution have unequal lengths")
    if any(g.domain != STANDARD for g in a):
        raise InvalidInput("the coefficient row must be standard")
    acc = Poly.zero(EXTENDED)
    for g, xi in zip(a, x):
        acc = acc + g * xi
    if acc:
        raise NotASolution("sum a_i*x_i is not zero")
    beta = syzygy_basis(a)
    target = [xi.to_extended() for xi in x]
    r = module_member([list(b) for b in beta.generators], target)
    if r is None:
        raise InvalidInput("internal: solution escapes the standard syzygies")
    return r


def kernel_extension_check(A):
    """Compare ker(A) over standard and extended coefficients.

    Kernel generators are computed in both domains and checked against
    each other by module membership; agreement is the kernel half of the
    flatness transfer.
    """
    if A.domain != STANDARD:
        raise InvalidInput("expected a standard-domain matrix")
    cols = A.columns()
    ker_std = module_syzygies(cols)
    ker_ext = module_syzygies([[e.to_extended() for e in c] for c in cols])
    ext_in_std = all(
        module_member(ker_std, v) is not None for v in ker_ext
    ) if ker_std or not ker_ext else not ker_ext
    std_in_ext = all(
        module_member(ker_ext, [g.to_extended() for g in v]) is not None
        for v in ker_std
    ) if ker_ext or not ker_std else not ker_std
    ok = bool(ext_in_std and std_in_ext)
    return {
        "shape": list(A.shape),
        "standard_kernel": [[format_poly(g) for g in v] for v in ker_std],
        "extended_kernel": [[format_poly(g) for g in v] for v in ker_ext],
        "extended_in_standard_span": bool(ext_in_std),
        "standard_in_extended_span": bool(std_in_ext),
        "pass": ok,
    }


def _exact_over(cols_a, cols_b):
    ker = module_syzygies(cols_b)
    ker_in_image = all(module_member(cols_a, v) is not None for v in ker)
    image_in_ker = all(module_member(ker, c) is not None for c in cols_a)
    return bool(ker_in_image and image_in_ker)


def exactness_transfer_check(A, B):
    """Decide im(A) = ker(B) over both coefficient fields and compare.

    Requires B*A = 0.  The two verdicts must agree whether the pair is
    exact or not; that agreement is the transferred statement.
    """
    if A.domain != STANDARD or B.domain != STANDARD:
        raise InvalidInput("expected standard-domain matrices")
    if B.shape[1] != A.shape[0]:
        raise InvalidInput(
            "shapes %dx%d and %dx%d do not compose"
            % (*B.shape, *A.shape)
        )
    if not B.mul(A).is_zero():
        raise NotAComplex("B*A is not zero")
    exact_std = _exact_over(A.columns(), B.columns())
    exact_ext = _exact_over(
        A.to_extended().columns(), B.to_extended().columns()
    )
    agree = exact_std == exact_ext
    return {
        "shapes": {"first": list(A.shape), "second": list(B.shape)},
        "complex": True,
        "exact_standard": exact_std,
        "exact_extended": exact_ext,
        "verdicts_agree": bool(agree),
        "pass": bool(agree),
    }


def tensor_iso_check(P):
    """Check the base-change map for the module presented by P.

    Surjectivity is structural (generators map onto generators), so the
    verified content is injectivity: every extended-domain relation among
    the presented module's generators must be an extended combination of
    the standard relations, with the combinations reported as witnesses.
    A zero presentation (free module) passes outright.
    """
    if P.domain != STANDARD:
        raise InvalidInput("expected a standard-domain matrix")
    if P.is_zero():
        return {
            "shape": list(P.shape),
            "free": True,
            "surjectivity": "structural",
            "kernel_check": None,
            "witnesses": [],
            "pass": True,
        }
    kc = kernel_extension_check(P)
    ker_std = module_syzygies(P.columns())
    ker_ext = module_syzygies(
        [[e.to_extended() for e in c] for c in P.to_extended().columns()]
    )
    witnesses = []
    for v in ker_ext:
        r = module_member(ker_std, v) if ker_std else ([] if not any(v) else None)
        witnesses.append(
            None if r is None else [format_poly(g) for g in r]
        )
    ok = bool(kc["pass"] and all(w is not None for w in witnesses))
    return {
        "shape": list(P.shape),
        "free": False,
        "surjectivity": "structural",
        "kernel_check": kc,
        "witnesses": witnesses,
        "pass": ok,
    }
