"""Partial transforms of two-faced pairs and the product-identity checks.

The one-variable S-transform comes in two independently computed forms: the
moment route S(z) = ((1+z)/z) X(z) with h(X(z)) = 1+z, and the cumulant
route S(z) = c^{<-1>}(z)/z.  The two-variable partial transforms follow the
same pattern.  With H the ordered moment series, C = 1 + c_a + c_b + K the
cumulant series, u(z) = z/(1+c_a(z)) and X the inverses of the one-variable
moment series:

    T(z,w) = ((1+w)/w) (1 - (1+c_a(z)) / H(u(z), X_b(w)))          [moments]
           = 1 + (1/w) K(z, c_b^{<-1>}(w))                         [cumulants]

    S(z,w) = ((1+z)(1+w)/(zw)) (1 - (1+z+w) / H(X_a(z), X_b(w)))   [moments]
           = 1 + ((1+z+w)/(zw)) K(c_a^{<-1>}(z), c_b^{<-1>}(w))    [cumulants]

(The moment form of S is sometimes displayed with a bare z where 1+z+w is
meant; the form above is the one the cumulant identity, and the trivial
pair, force.)  The cumulant forms need the relevant face means to be 1,
which `rescale_pair` arranges; the moment forms only need nonzero means.

Divisibility by w (resp. zw) before the closing division is a structural
consequence of the vanishing slice identities h_a(u(z)) = 1 + c_a(z) and
h(X(z)) = 1 + z; it is asserted, never assumed.

`check_T_multiplicativity` and `check_S_multiplicativity` compare the
transform of a combined pair ((a1+a2, b1 b2), resp. (a1 a2, b1 b2)) with the
product of the pairs' transforms.  The combined pair's cumulants come from
constrained partition enumeration (bicum), the transforms from the series
pipeline; neither side reuses the other's machinery.  The S check also
verifies the equivalent mixed-cumulant form

    Kt(ca^{<-1>}, cb^{<-1>}) = Th_1 + Th_2 + ((1+z+w)/(zw)) Th_1 Th_2,

whose coefficient at (n,m) needs product cumulants only up to (n,m); this
reaches rectangle cells the literal series comparison cannot reach without
enumerating ground sets past the default cap.
"""

from __future__ import annotations

from fractions import Fraction

from .bicum import (
    PairDistribution,
    product_pair_distribution,
    series_C,
    series_H,
    series_K,
    sum_product_pair_distribution,
)
from .errors import NotNormalized, TruncationExceeded, ZeroMean, ZeroScale
from .multfn import MultFn, convolve, phi_series, pinched_convolve
from .series import (
    TruncatedSeries1,
    TruncatedSeries2,
    as_rational,
    s1_arith,
    s1_comp_inverse,
    s1_compose,
    s1_reciprocal,
    s1_shift_down,
    s2_arith,
    s2_compose_each_variable,
    s2_divide_monomial,
    s2_from_s1,
    s2_poly,
    s2_reciprocal,
)

_ZERO = Fraction(0)

METHODS = ("cumulant", "analytic")


class OneVarDistribution:
    """Free cumulants kappa_1 .. kappa_trunc of a single element."""

    __slots__ = ("trunc", "_kappa")

    def __init__(self, kappa):
        values = tuple(as_rational(v) for v in kappa)
        if not values:
            raise ValueError("need at least kappa_1")
        object.__setattr__(self, "trunc", len(values))
        object.__setattr__(self, "_kappa", values)

    def __setattr__(self, name, value):
        raise AttributeError("OneVarDistribution is immutable")

    def kappa(self, n):
        if n < 1 or n > self.trunc:
            raise TruncationExceeded(
                f"kappa_{n} outside stored range 1..{self.trunc}")
        return self._kappa[n - 1]

    def __eq__(self, other):
        if not isinstance(other, OneVarDistribution):
            return NotImplemented
        return self._kappa == other._kappa

    __hash__ = None

    def __repr__(self):
        return f"OneVarDistribution({list(self._kappa)!r})"


def left_marginal(d):
    """The left face of a pair as a one-variable distribution."""
    return OneVarDistribution([d.kappa(n, 0) for n in range(1, d.trunc + 1)])


def right_marginal(d):
    return OneVarDistribution([d.kappa(0, m) for m in range(1, d.trunc + 1)])


def cumulant_series_1var(d):
    """c(z) = sum kappa_n z^n."""
    return TruncatedSeries1({n: d.kappa(n) for n in range(1, d.trunc + 1)},
                            d.trunc)


def moment_series_1var(d):
    """psi(z) = sum M_n z^n via the free moment-cumulant convolution.

    Moments are the convolution of the cumulant function with the all-ones
    function, summed over NC(n); this stays on the enumeration side of the
    house and never touches series inversion.
    """
    kappa = MultFn([d.kappa(n) for n in range(1, d.trunc + 1)])
    zeta = MultFn([1] * d.trunc)
    return phi_series(convolve(kappa, zeta))


def x_series(d):
    """X(z) = psi^{<-1>}(z), defined when the mean kappa_1 is nonzero."""
    if d.kappa(1) == 0:
        raise ZeroMean("mean is zero; the moment series has no inverse")
    return s1_comp_inverse(moment_series_1var(d))


def s_transform_1var(d, method="cumulant"):
    """S(z) through order trunc-1, by either of two independent routes."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if d.trunc < 2:
        raise ValueError("need cumulants through order 2 for a nontrivial S")
    if d.kappa(1) == 0:
        raise ZeroMean("mean is zero; no S-transform")
    if method == "cumulant":
        return s1_shift_down(s1_comp_inverse(cumulant_series_1var(d)))
    x = x_series(d)
    one_plus_z = TruncatedSeries1({0: 1, 1: 1}, d.trunc - 1)
    return s1_arith(s1_shift_down(x), one_plus_z, "mul")


def rescale_pair(d, lam, mu):
    """The pair (lam*a, mu*b): kappa_{n,m} -> lam^n mu^m kappa_{n,m}."""
    lam, mu = as_rational(lam), as_rational(mu)
    if lam == 0 or mu == 0:
        raise ZeroScale("rescaling factors must be nonzero")
    return PairDistribution(
        d.trunc, {(n, m): lam ** n * mu ** m * v for (n, m), v in d.items()})


def _require_right_mean(d):
    if d.kappa(0, 1) != 1:
        raise NotNormalized(
            "right mean must be 1; apply rescale_pair(d, 1, 1/d.kappa(0,1))")


def _require_means(d):
    if d.kappa(1, 0) != 1 or d.kappa(0, 1) != 1:
        raise NotNormalized(
            "both means must be 1; apply "
            "rescale_pair(d, 1/d.kappa(1,0), 1/d.kappa(0,1))")


def partial_T(d, method="cumulant"):
    """Two-variable partial T-transform, exact through total order trunc-1.

    Needs the right mean equal to 1.  The moment route substitutes into the
    moment series H and asserts the vanishing of the w^0 slice before
    dividing; the cumulant route reads the mixed-cumulant series directly.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    N = d.trunc
    if N < 2:
        raise ValueError("need a table of order >= 2")
    _require_right_mean(d)

    if method == "cumulant":
        cb = cumulant_series_1var(right_marginal(d))
        expr = s2_compose_each_variable(
            series_K(d), TruncatedSeries1.identity(N), s1_comp_inverse(cb))
        t = s2_divide_monomial(expr, 0, 1)
        return s2_arith(TruncatedSeries2.one(t.trunc_order), t, "add")

    ca = cumulant_series_1var(left_marginal(d))
    one_plus_ca = s1_arith(TruncatedSeries1.one(N), ca, "add")
    u = s1_arith(TruncatedSeries1.identity(N), s1_reciprocal(one_plus_ca),
                 "mul")
    comp = s2_compose_each_variable(series_H(d), u, x_series(right_marginal(d)))
    e = s2_arith(TruncatedSeries2.one(N),
                 s2_arith(s2_from_s1(one_plus_ca, "z"), s2_reciprocal(comp),
                          "mul"),
                 "sub")
    for dz in range(N + 1):
        assert e.coeff(dz, 0) == 0, "w^0 slice of the T numerator must vanish"
    quot = s2_divide_monomial(e, 0, 1)
    one_plus_w = s2_poly({(0, 0): 1, (0, 1): 1}, quot.trunc_order)
    return s2_arith(one_plus_w, quot, "mul")


def partial_S(d, method="cumulant"):
    """Two-variable partial S-transform, exact through total order trunc-2.

    Needs both means equal to 1.  The moment route asserts both axis slices
    of the numerator vanish before dividing by zw.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    N = d.trunc
    if N < 3:
        raise ValueError("need a table of order >= 3")
    _require_means(d)

    if method == "cumulant":
        cai = s1_comp_inverse(cumulant_series_1var(left_marginal(d)))
        cbi = s1_comp_inverse(cumulant_series_1var(right_marginal(d)))
        expr = s2_compose_each_variable(series_K(d), cai, cbi)
        quot = s2_divide_monomial(expr, 1, 1)
        lin = s2_poly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, quot.trunc_order)
        return s2_arith(TruncatedSeries2.one(quot.trunc_order),
                        s2_arith(lin, quot, "mul"), "add")

    comp = s2_compose_each_variable(
        series_H(d), x_series(left_marginal(d)), x_series(right_marginal(d)))
    lin = s2_poly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, N)
    e = s2_arith(TruncatedSeries2.one(N),
                 s2_arith(lin, s2_reciprocal(comp), "mul"), "sub")
    for k in range(N + 1):
        assert e.coeff(k, 0) == 0, "w^0 slice of the S numerator must vanish"
        assert e.coeff(0, k) == 0, "z^0 slice of the S numerator must vanish"
    quot = s2_divide_monomial(e, 1, 1)
    n2 = quot.trunc_order
    corner = s2_arith(s2_poly({(0, 0): 1, (1, 0): 1}, n2),
                      s2_poly({(0, 0): 1, (0, 1): 1}, n2), "mul")
    return s2_arith(corner, quot, "mul")


# ---------------------------------------------------------------------------
# multiplicativity checks
# ---------------------------------------------------------------------------

def trim_pair(d, trunc):
    """The same pair distribution truncated to a lower order."""
    if trunc > d.trunc:
        raise TruncationExceeded(
            f"cannot extend a table of order {d.trunc} to {trunc}")
    return PairDistribution(
        trunc, {(n, m): v for (n, m), v in d.items() if n + m <= trunc})


def _sorted_cells(cells):
    return sorted(cells, key=lambda c: (c[0] + c[1], -c[0]))


def _compare_cells(lhs, rhs, cells):
    """Grid of coefficient comparisons; witness is the first mismatch."""
    witness = None
    grid = []
    for n, m in cells:
        a = lhs.coeff(n, m)
        b = rhs.coeff(n, m)
        grid.append({"n": n, "m": m, "lhs": str(a), "rhs": str(b)})
        if witness is None and a != b:
            witness = {"n": n, "m": m, "lhs": str(a), "rhs": str(b)}
    return witness, grid


def check_T_multiplicativity(fam, order):
    """Compare T of (a1+a2, b1 b2) with the product of the pairs' T's.

    Coefficientwise through total degree `order`; the family tables must
    extend one order further (the closing division by w costs one order).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    need = order + 1
    if fam.trunc < need:
        raise TruncationExceeded(
            f"family tables of order {need} needed to compare at {order}")
    for i in (1, 2):
        _require_right_mean(fam.pair(i))
    combined = sum_product_pair_distribution(fam, need)
    lhs = partial_T(combined, "cumulant")
    rhs = s2_arith(partial_T(trim_pair(fam.pair1, need), "cumulant"),
                   partial_T(trim_pair(fam.pair2, need), "cumulant"), "mul")
    cells = _sorted_cells((n, m) for n in range(order + 1)
                          for m in range(order + 1 - n))
    witness, grid = _compare_cells(lhs, rhs, cells)
    return {
        "theorem": "T-multiplicativity",
        "order": order,
        "status": "ok" if witness is None else "mismatch",
        "witness": witness,
        "grid": grid,
    }


def _theta_pieces(d, big):
    """Th = K(c_a^{<-1>}(z), c_b^{<-1>}(w)) and its zw-quotient Th-hat.

    Built blockwise from one-variable power tables so that Th-hat is exact
    to big-1 and zw * Th-hat to big+1; composing and then dividing would
    lose two orders instead.
    """
    ca = TruncatedSeries1({n: d.kappa(n, 0) for n in range(1, big + 1)}, big)
    cb = TruncatedSeries1({m: d.kappa(0, m) for m in range(1, big + 1)}, big)
    f = s1_comp_inverse(ca)
    g = s1_comp_inverse(cb)
    # A_n = f^n / z, B_m = g^m / w, exact to big - 1
    a_pows = [s1_shift_down(f)]
    b_pows = [s1_shift_down(g)]
    for _ in range(big - 1):
        a_pows.append(s1_arith(a_pows[-1], f, "mul"))
        b_pows.append(s1_arith(b_pows[-1], g, "mul"))
    hat = {}
    cap = big - 1
    for n in range(1, big + 1):
        for m in range(1, big + 1 - n):
            v = d.kappa(n, m)
            if not v:
                continue
            for i, vi in a_pows[n - 1].coeffs.items():
                rest = cap - i
                for j, vj in b_pows[m - 1].coeffs.items():
                    if j <= rest:
                        key = (i, j)
                        hat[key] = hat.get(key, _ZERO) + v * vi * vj
    theta_hat = TruncatedSeries2(hat, cap)
    theta = TruncatedSeries2(
        {(i + 1, j + 1): v for (i, j), v in hat.items() if i + j + 2 <= big},
        big)
    return theta, theta_hat


def check_S_multiplicativity(fam, order, right_order="b1b2", rect=None):
    """Compare S of (a1 a2, b1 b2) (or b2 b1) with the pairs' S product.

    Two comparisons, independent in mechanism:

      * the mixed-cumulant identity Th~ = Th_1 + Th_2 + ((1+z+w)/zw) Th_1 Th_2
        on the simplex n+m <= order together with the rectangle
        1 <= n,m <= rect (default order // 2) -- cell (n,m) of the identity
        needs combined cumulants only up to (n,m), so the rectangle gives
        the literal n,m-bounded multiplicativity statement at enumeration
        cost 2(n+m) per cell;
      * the series comparison S~ = S_1 S_2 through total order order-2,
        which exercises the whole transform pipeline including the
        divisibility assertions.

    Expected to fail for right_order='b2b1'; the report carries the first
    differing coefficient.
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    if rect is None:
        rect = order // 2
    big = max(order, 2 * rect)
    if fam.trunc < big:
        raise TruncationExceeded(
            f"family tables of order {big} needed for this comparison")
    for i in (1, 2):
        _require_means(fam.pair(i))

    region = {(n, m) for n in range(1, order) for m in range(1, order + 1 - n)}
    region |= {(n, m) for n in range(1, rect + 1) for m in range(1, rect + 1)}
    region = _sorted_cells(region)
    n_max = max(max(n for n, _ in region), order)
    m_max = max(max(m for _, m in region), order)
    cells = set(region)
    cells |= {(k, 0) for k in range(1, n_max + 1)}
    cells |= {(0, k) for k in range(1, m_max + 1)}
    # cells outside this set stay unknown; every compared coefficient below
    # only reads cells inside it
    combined = product_pair_distribution(fam, right_order, big,
                                         _sorted_cells(cells))

    theta_c, _ = _theta_pieces(combined, big)
    theta_1, hat_1 = _theta_pieces(fam.pair1, big)
    theta_2, hat_2 = _theta_pieces(fam.pair2, big)
    prod_hat = s2_arith(hat_1, hat_2, "mul")
    shifted = TruncatedSeries2(
        {(i + 1, j + 1): v for (i, j), v in prod_hat.coeffs.items()
         if i + j + 2 <= big},
        big)
    lin = s2_poly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, big)
    rhs = s2_arith(s2_arith(theta_1, theta_2, "add"),
                   s2_arith(lin, shifted, "mul"), "add")
    id_witness, id_grid = _compare_cells(theta_c, rhs, region)

    s_combined = partial_S(trim_pair(combined, order), "cumulant")
    s_pairs = s2_arith(partial_S(trim_pair(fam.pair1, order), "cumulant"),
                       partial_S(trim_pair(fam.pair2, order), "cumulant"), "mul")
    direct_cells = _sorted_cells((n, m) for n in range(order - 1)
                                 for m in range(order - 1 - n))
    s_witness, s_grid = _compare_cells(s_combined, s_pairs, direct_cells)

    witness = s_witness if s_witness is not None else id_witness
    return {
        "theorem": "S-multiplicativity",
        "right_order": right_order,
        "order": order,
        "rect": rect,
        "status": "ok" if witness is None else "mismatch",
        "witness": witness,
        "checks": [
            {"name": "mixed-cumulant identity", "witness": id_witness,
             "grid": id_grid},
            {"name": "series product", "order": order - 2,
             "witness": s_witness, "grid": s_grid},
        ],
    }


# ---------------------------------------------------------------------------
# foundational series identities
# ---------------------------------------------------------------------------

def _witness_1var(lhs, rhs):
    n = min(lhs.trunc_order, rhs.trunc_order)
    for d in range(n + 1):
        a, b = lhs.coeff(d), rhs.coeff(d)
        if a != b:
            return {"degree": d, "lhs": str(a), "rhs": str(b)}
    return None


def check_convolution_inversion(f, g):
    """phi_{f pinched* g} composed with phi_{f*g}^{<-1>} equals phi_f^{<-1>}."""
    lhs = s1_compose(phi_series(pinched_convolve(f, g)),
                     s1_comp_inverse(phi_series(convolve(f, g))))
    rhs = s1_comp_inverse(phi_series(f))
    witness = _witness_1var(lhs, rhs)
    return {
        "identity": "convolution-inversion",
        "order": min(lhs.trunc_order, rhs.trunc_order),
        "status": "ok" if witness is None else "mismatch",
        "witness": witness,
    }


def check_inverse_product(f, g):
    """z phi_{f*g}^{<-1>}(z) = phi_f^{<-1>}(z) phi_g^{<-1>}(z).

    Some statements of this identity show the pinched convolution on the
    left, but that version already fails at order 3 (the z^3 coefficient of
    z phi_{f pinched* g}^{<-1>} is -g_2, not -(f_2+g_2)); the plain
    convolution is what the surrounding derivations actually use, e.g. when
    splitting zw/(phi_{f2}^{<-1>} phi_{g2}^{<-1>}) into lone-pair factors.
    """
    n = f.trunc
    z = TruncatedSeries1.identity(n)
    lhs = s1_arith(z, s1_comp_inverse(phi_series(convolve(f, g))), "mul")
    rhs = s1_arith(s1_comp_inverse(phi_series(f)),
                   s1_comp_inverse(phi_series(g)), "mul")
    witness = _witness_1var(lhs, rhs)
    return {
        "identity": "inverse-product",
        "order": min(lhs.trunc_order, rhs.trunc_order),
        "status": "ok" if witness is None else "mismatch",
        "witness": witness,
    }


def check_bimoment_factorization(d):
    """h_a(z) + h_b(w) = h_a h_b / H + C(z h_a(z), w h_b(w)) for the pair d."""
    N = d.trunc
    one1 = TruncatedSeries1.one(N)
    ha = s1_arith(one1, moment_series_1var(left_marginal(d)), "add")
    hb = s1_arith(one1, moment_series_1var(right_marginal(d)), "add")
    ha2 = s2_from_s1(ha, "z")
    hb2 = s2_from_s1(hb, "w")
    lhs = s2_arith(ha2, hb2, "add")
    z = TruncatedSeries1.identity(N)
    composed = s2_compose_each_variable(series_C(d),
                                        s1_arith(z, ha, "mul"),
                                        s1_arith(z, hb, "mul"))
    rhs = s2_arith(s2_arith(s2_arith(ha2, hb2, "mul"),
                            s2_reciprocal(series_H(d)), "mul"),
                   composed, "add")
    witness = None
    for n in range(N + 1):
        for m in range(N + 1 - n):
            a, b = lhs.coeff(n, m), rhs.coeff(n, m)
            if a != b:
                witness = {"n": n, "m": m, "lhs": str(a), "rhs": str(b)}
                break
        if witness:
            break
    return {
        "identity": "bimoment-factorization",
        "order": N,
        "status": "ok" if witness is None else "mismatch",
        "witness": witness,
    }
