"""Multivariate gcd and squarefree decomposition over Q.

The gcd uses primitive-part recursion on a main variable with subresultant
coefficient control; squarefree decomposition iterates the "derived gcd"
(gcd with all partials), which is enough in characteristic zero.  Full
irreducible factorization is deliberately out of scope.
"""

from __future__ import annotations

from .poly import Polynomial, exact_div


def _main_variable(f: Polynomial, g: Polynomial):
    """Highest index with positive degree in f or g, or None if both constant."""
    for i in range(f.nvars - 1, -1, -1):
        if f.degree_in(i) > 0 or g.degree_in(i) > 0:
            return i
    return None


def _coeff_at(f: Polynomial, var: int, degree: int) -> Polynomial:
    terms = {}
    for m, c in f.terms.items():
        if m[var] == degree:
            terms[m[:var] + (0,) + m[var + 1:]] = c
    return Polynomial(terms, f.nvars)


def _var_coeffs(f: Polynomial, var: int) -> list:
    """Nonzero coefficients of f seen as univariate in `var`."""
    out = {}
    for m, c in f.terms.items():
        key = m[var]
        stripped = m[:var] + (0,) + m[var + 1:]
        acc = out.setdefault(key, {})
        acc[stripped] = acc.get(stripped, 0) + c
    return [Polynomial(terms, f.nvars) for _, terms in sorted(out.items())]


def _content_wrt(f: Polynomial, var: int) -> Polynomial:
    coeffs = _var_coeffs(f, var)
    content = coeffs[0]
    for c in coeffs[1:]:
        content = multivariate_gcd(content, c)
        if content.is_constant():
            break
    return content


def _pseudo_rem(f: Polynomial, g: Polynomial, var: int) -> Polynomial:
    """prem(f, g) in `var`: lc(g)^(deg f - deg g + 1) * f mod g."""
    dg = g.degree_in(var)
    lcg = _coeff_at(g, var, dg)
    r = f
    e = f.degree_in(var) - dg + 1
    while not r.is_zero() and r.degree_in(var) >= dg:
        dr = r.degree_in(var)
        lcr = _coeff_at(r, var, dr)
        shift = [0] * f.nvars
        shift[var] = dr - dg
        r = lcg * r - lcr * Polynomial.monomial(shift) * g
        e -= 1
    if e > 0:
        r = (lcg ** e) * r
    return r


def multivariate_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """A gcd, primitive with positive degrevlex leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(1, f.nvars)
    if len(f.terms) == 1 and len(g.terms) == 1:
        (mf, _), = f.terms.items()
        (mg, _), = g.terms.items()
        return Polynomial.monomial([min(a, b) for a, b in zip(mf, mg)])
    if len(f.terms) == 1 or len(g.terms) == 1:
        mono = next(iter((f if len(f.terms) == 1 else g).terms))
        other = g if len(f.terms) == 1 else f
        common = list(mono)
        for m in other.terms:
            common = [min(a, b) for a, b in zip(common, m)]
            if not any(common):
                break
        if any(common):
            return Polynomial.monomial(common)
        # Monomial is coprime to the other's monomial content; any further
        # common factor would be a non-monomial dividing a monomial.
        return Polynomial.constant(1, f.nvars)
    var = _main_variable(f, g)
    if var is None:
        return Polynomial.constant(1, f.nvars)

    content_f = _content_wrt(f, var)
    content_g = _content_wrt(g, var)
    pf = exact_div(f, content_f)
    pg = exact_div(g, content_g)
    content = multivariate_gcd(content_f, content_g)

    if pf.degree_in(var) < pg.degree_in(var):
        pf, pg = pg, pf

    # Subresultant PRS on the primitive parts (Brown's coefficient control).
    one = Polynomial.constant(1, f.nvars)
    g_coef = one
    h_coef = one
    while True:
        delta = pf.degree_in(var) - pg.degree_in(var)
        rem = _pseudo_rem(pf, pg, var)
        if rem.is_zero():
            gpp = exact_div(pg, _content_wrt(pg, var))
            return (content * gpp).primitive()
        if rem.degree_in(var) == 0:
            return content.primitive()
        divisor = g_coef * (h_coef ** delta)
        nxt = exact_div(rem, divisor)
        if nxt is None:  # pragma: no cover - subresultant division is exact
            raise ArithmeticError("subresultant PRS division failed")
        pf, pg = pg, nxt
        g_coef = _coeff_at(pf, var, pf.degree_in(var))
        if delta == 0:
            continue
        if delta == 1:
            h_coef = g_coef
        else:
            h_new = exact_div(g_coef ** delta, h_coef ** (delta - 1))
            if h_new is None:  # pragma: no cover
                raise ArithmeticError("subresultant PRS h-update failed")
            h_coef = h_new


def derived_gcd(f: Polynomial) -> Polynomial:
    """gcd of f with all its partial derivatives."""
    acc = f
    for i in range(f.nvars):
        d = f.derivative(i)
        if d.is_zero():
            continue
        acc = multivariate_gcd(acc, d)
        if acc.is_constant():
            break
    return acc


def squarefree_decomposition(f: Polynomial) -> list:
    """[(g, m), ...] with f = unit * prod g^m, g squarefree pairwise coprime,
    multiplicities strictly increasing."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if f.is_constant():
        return []
    if len(f.terms) == 1:
        (mono, _), = f.terms.items()
        by_mult: dict = {}
        for i, e in enumerate(mono):
            if e:
                by_mult.setdefault(e, []).append(i)
        out = []
        for e in sorted(by_mult):
            exps = [0] * f.nvars
            for i in by_mult[e]:
                exps[i] = 1
            out.append((Polynomial.monomial(exps), e))
        return out
    chain = [f.primitive()]
    while not chain[-1].is_constant():
        chain.append(derived_gcd(chain[-1]).primitive())
    # chain[k] = prod p^(e-k) over factors with e > k
    cofactors = []
    for k in range(len(chain) - 1):
        q = exact_div(chain[k], chain[k + 1])
        if q is None:  # pragma: no cover - derived gcd divides by construction
            raise ArithmeticError("derived gcd does not divide")
        cofactors.append(q.primitive())
    factors = []
    for k in range(len(cofactors)):
        if k + 1 < len(cofactors):
            s = exact_div(cofactors[k], cofactors[k + 1])
            if s is None:  # pragma: no cover
                raise ArithmeticError("squarefree chain broke")
        else:
            s = cofactors[k]
        s = s.primitive()
        if not s.is_constant():
            factors.append((s, k + 1))
    return factors
