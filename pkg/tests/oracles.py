"""Independent reference computations shared by the unit and acceptance tests."""

import mpmath

from pi_prover.numcore import Precision
from pi_prover.prover import DerivativeChain, derivative_chain, load_polynomial, solution_catalog, system_polynomial

CHAIN_FIELDS = ("vp", "vpp", "alphap", "alphapp", "betap", "betapp")


def finite_difference_chain(d: int = 17, digits: int = 100, step_exp: int = 25):
    """(chain, oracle, relative errors) for v', v'', alpha', alpha'', beta', beta''.

    v(u) is solved from P(u, v) = 0 by Newton iteration started at v0, and
    alpha(u), beta(u) come from the w-map on the branches fixed at u0.
    """
    sp = solution_catalog(d)
    P = system_polynomial(load_polynomial(d), sp.form)
    chain: DerivativeChain = derivative_chain(sp, P, Precision(digits + 30))
    terms = list(P.terms.items())
    e = sp.form.exponent
    with mpmath.workdps(digits):
        h = mpmath.mpf(10) ** -step_exp

        def Pf(u, v):
            return mpmath.fsum(c * u**i * v**j for (i, j), c in terms)

        def w(x):
            y = x**e
            return 432 * y / (y - 16) ** 3

        u0, v0 = chain.u0.to_mpc(), chain.v0.to_mpc()
        a0, b0 = chain.alpha0.to_mpc(), chain.beta0.to_mpc()

        def v_of(u):
            return mpmath.findroot(lambda v: Pf(u, v), v0, tol=mpmath.mpf(10) ** -(digits - 5))

        def root_near(wv, ref):
            s = mpmath.sqrt(1 - 4 * wv)
            return min(((1 - s) / 2, (1 + s) / 2), key=lambda r: abs(r - ref))

        def alpha(u):
            return root_near(w(u), a0)

        def beta(u):
            return root_near(w(v_of(u)), b0)

        def d1(f):
            return (f(u0 + h) - f(u0 - h)) / (2 * h)

        def d2(f, f0):
            return (f(u0 + h) - 2 * f0 + f(u0 - h)) / h**2

        oracle = {
            "vp": d1(v_of),
            "vpp": d2(v_of, v0),
            "alphap": d1(alpha),
            "alphapp": d2(alpha, a0),
            "betap": d1(beta),
            "betapp": d2(beta, b0),
        }
        rel = {}
        for name in CHAIN_FIELDS:
            got = getattr(chain, name).to_mpc()
            rel[name] = float(abs(got - oracle[name]) / abs(got))
    return chain, oracle, rel
