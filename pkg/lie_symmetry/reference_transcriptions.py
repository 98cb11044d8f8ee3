"""Published forms of the on-shell bindings and determining equations.

The strings are hand transcriptions in the expression grammar of
lie_symmetry.parser, written for the generic system with right-hand sides
F1, F2, F3, G.  They are compared against the generated equations by
detgen.cross_check_reference and are never used to compute anything.
"""

# Keys: the jet coordinate being bound.
ON_SHELL_BINDINGS = {
    'u12': '''
        F3_u*u1^4 + F3_u1*u1^3*u11 + F2_u*u1^3 + F3_x*u1^3 + 3*F3*u1^2*u11
        + F1_u*u1^2 + F2_x*u1^2 + 2*F2*u1*u11 + F1_x*u1 + F1*u11''',
    'u112': '''
        2*F1_x*u11 + 2*F2*u11^2 + F1*G + 6*F3_x*u1^2*u11 + 4*F2_x*u1*u11
        + 7*F3_u*u1^3*u11 + 5*F2_u*u1^2*u11 + 3*F1_u*u1*u11
        + 6*F3_u1*u1^2*u11^2 + 6*F3*u1*u11^2 + F3_u1*u1^3*G + 3*F3*u1^2*G
        + 2*F2*u1*G + F3_u1_u1*u1^3*u11^2 + 2*F3_x_u1*u1^3*u11
        + 2*F3_u_u1*u1^4*u11 + F3_x_x*u1^3 + F1_x_u*u1^2 + F3_u_u*u1^5
        + F2_u_u*u1^4 + F1_u_u*u1^3 + F1_x_x*u1 + F2_x_x*u1^2
        + 2*F3_x_u*u1^4 + 2*F2_x_u*u1^3'''
}

# Keys: (invariance condition, power of u11).  cond1 is the invariance of
# u2 = F, cond2 that of u111 = G.
DETERMINING_STRATA = {
    ('cond1', 0): '''
        - xi_y*u1 + F1*xi_x*u1 + 2*F2*xi_x*u1^2 + F3_u1*xi_x*u1^4
        + 3*F3*xi_x*u1^3 + F2*xi_u*u1^3 + F3_u1*xi_u*u1^5 + 2*F3*xi_u*u1^4
        + 3*F3^2*tau_x*u1^5 + 2*F2^2*tau_x*u1^3 + F1^2*tau_x*u1
        + 2*F3^2*tau_u*u1^6 + F2^2*tau_u*u1^4 - F3*tau_y*u1^3
        - F2*tau_y*u1^2 - F1*tau_y*u1 - F1_x*xi*u1 - F2_x*xi*u1^2
        - F3_x*xi*u1^3 - F1_y*tau*u1 - F2_y*tau*u1^2 - F3_y*tau*u1^3
        - F1_u*phi*u1 - F2_u*phi*u1^2 - F3_u*phi*u1^3 - 2*F2*phi_x*u1
        - F3_u1*phi_x*u1^3 - 3*F3*phi_x*u1^2 - F2*phi_u*u1^2
        - F3_u1*phi_u*u1^4 - 2*F3*phi_u*u1^3 - F1*phi_x + F1*F2*tau_u*u1^3
        + F2*F3_u1*tau_u*u1^6 + F1*F3_u1*tau_u*u1^5 + 4*F1*F3*tau_x*u1^3
        + 5*F2*F3*tau_x*u1^4 + F3*F3_u1*tau_x*u1^6 + 3*F1*F2*tau_x*u1^2
        + F2*F3_u1*tau_x*u1^5 + F1*F3_u1*tau_x*u1^4 + 2*F1*F3*tau_u*u1^4
        + 3*F2*F3*tau_u*u1^5 + F3*F3_u1*tau_u*u1^7 + phi_y''',
    ('cond2', 2): '''
        xi_u + F1*tau_u + 2*F2*tau_x + (6*F3*tau_x + 4*F2*tau_u)*u1
        + (6*F3_u1*tau_x + 9*F3*tau_u)*u1^2
        + (F3_u1_u1*tau_x + 7*F3_u1*tau_u)*u1^3 + F3_u1_u1*tau_u*u1^4''',
    ('cond2', 1): '''
        3*phi_x_u - 3*xi_x_x - 3*F1*tau_x_x - 6*F1_x*tau_x - 9*xi_x_u*u1
        + 3*phi_u_u*u1 - 6*xi_u_u*u1^2 - 6*F1*tau_u_u*u1^2
        - 6*F3_x_u1*tau_x*u1^3 - 6*F3_u_u1*tau_x*u1^4 - 3*F3_u1*tau_x_x*u1^3
        - 9*F3*tau_x_x*u1^2 - 6*F2*tau_x_x*u1 - 6*F3_x_u1*tau_u*u1^4
        - 6*F3_u_u1*tau_u*u1^5 - 15*F2*tau_x_u*u1^2 - 21*F3*tau_x_u*u1^3
        - 9*F1*tau_x_u*u1 - 6*F3_u1*tau_x_u*u1^4 - 12*F3*tau_u_u*u1^4
        - 3*F3_u1*tau_u_u*u1^5 - 9*F2*tau_u_u*u1^3 - 21*F3_x*tau_u*u1^3
        - 15*F2_x*tau_u*u1^2 - 12*F1_u*tau_u*u1^2 - 9*F1_x*tau_u*u1
        - 24*F3_u*tau_u*u1^4 - 18*F2_u*tau_u*u1^3 - 18*F3_x*tau_x*u1^2
        - 12*F2_x*tau_x*u1 - 21*F3_u*tau_x*u1^3 - 15*F2_u*tau_x*u1^2
        - 9*F1_u*tau_x*u1''',
    ('cond2', 0): '''
        G*phi_u - 3*G*xi_x - G_u1*phi_x + phi_x_x_x - 6*F3_x_u*tau_x*u1^4
        - 6*F2_x_u*tau_x*u1^3 - 6*F1_x_u*tau_x*u1^2 - 3*F3_u_u*tau_x*u1^5
        - 3*F2_u_u*tau_x*u1^4 - 3*F1_u_u*tau_x*u1^3 - 3*F1_x_x*tau_x*u1
        - 3*F2_x_x*tau_x*u1^2 - 3*F3_x_x*tau_x*u1^3 - F3*tau_x_x_x*u1^3
        - F2*tau_x_x_x*u1^2 - F1*tau_x_x_x*u1 - 3*F3_u*tau_x_x*u1^4
        - 3*F2_u*tau_x_x*u1^3 - 3*F3_x*tau_x_x*u1^3 - 3*F1_u*tau_x_x*u1^2
        - 3*F2_x*tau_x_x*u1^2 - 3*F1_x*tau_x_x*u1 - 3*F3*tau_x_x_u*u1^4
        - 3*F2*tau_x_x_u*u1^3 - 3*F1*tau_x_x_u*u1^2 - 3*F2*tau_x_u_u*u1^4
        - 3*F3*tau_x_u_u*u1^5 - 3*F1*tau_x_u_u*u1^3 - 6*F3_u*tau_x_u*u1^5
        - 6*F2_u*tau_x_u*u1^4 - 6*F3_x*tau_x_u*u1^4 - 6*F1_u*tau_x_u*u1^3
        - 6*F2_x*tau_x_u*u1^3 - 6*F1_x*tau_x_u*u1^2 - F2*tau_u_u_u*u1^5
        - F3*tau_u_u_u*u1^6 - F1*tau_u_u_u*u1^4 - 3*F3_u*tau_u_u*u1^6
        - 3*F2_u*tau_u_u*u1^5 - 3*F3_x*tau_u_u*u1^5 - 3*F1_u*tau_u_u*u1^4
        - 3*F2_x*tau_u_u*u1^4 - 3*F1_x*tau_u_u*u1^3 - 6*F3_x_u*tau_u*u1^5
        - 6*F2_x_u*tau_u*u1^4 - 6*F1_x_u*tau_u*u1^3 - 3*F3_u_u*tau_u*u1^6
        - 3*F2_u_u*tau_u*u1^5 - 3*F1_u_u*tau_u*u1^4 - 3*F2_x_x*tau_u*u1^3
        - 3*F1_x_x*tau_u*u1^2 - 3*F3_x_x*tau_u*u1^4 - G_u1*phi_u*u1
        + G_u1*xi_x*u1 + G_u1*xi_u*u1^2 - 3*F1*G*tau_x - 4*G*xi_u*u1
        + phi_u_u_u*u1^3 + 3*phi_x_x_u*u1 - 3*xi_x_x_u*u1^2 - xi_x_x_x*u1
        - 3*xi_x_u_u*u1^3 + 3*phi_x_u_u*u1^2 - xi_u_u_u*u1^4
        + F1*G_u1*tau_x*u1 + F3*G_u1*tau_u*u1^4 + F2*G_u1*tau_u*u1^3
        + F1*G_u1*tau_u*u1^2 - 3*F3_u1*G*tau_x*u1^3 - 9*F3*G*tau_x*u1^2
        - 6*F2*G*tau_x*u1 - 3*F3_u1*G*tau_u*u1^4 + F3*G_u1*tau_x*u1^3
        + F2*G_u1*tau_x*u1^2 - 10*F3*G*tau_u*u1^3 - 7*F2*G*tau_u*u1^2
        - 4*F1*G*tau_u*u1 - G_x*xi - G_y*tau - G_u*phi'''
}

# Published determining equations of the model system u2 = u1^2, u111 = 0,
# in published order (tau_u is listed twice).
MODEL_SYSTEM_EQUATIONS = (
    'tau_u',
    'phi_x + xi_y',
    '3*phi_u_x - 3*xi_x_x',
    'xi_u + 2*tau_x',
    '3*phi_u_x_x - xi_x_x_x',
    '5*tau_u_x + 2*xi_u_u',
    '3*tau_u_u_x + xi_u_u_u',
    '2*xi_x - tau_y - phi_u',
    '3*xi_x_u + 2*tau_x_x - phi_u_u',
    '3*xi_x_u_u + 3*tau_u_x_x - phi_u_u_u',
    '3*xi_x_x_u + tau_x_x_x - 3*phi_x_u_u',
    'phi_y',
    'phi_x_x_x',
    'tau_u'
)

# Ten-parameter general solution of the model system; the entries are the
# coefficients of C1, ..., C10 as vector fields (xi, tau, phi).
MODEL_SYSTEM_GENERAL_SOLUTION = (
    ('x^2/2 - 2*y*u', 'x*y', 'x*u'),
    ('x*y/2', 'y^2/2', '-x^2/8'),
    ('-2*u*x', 'x^2/2', '-2*u^2'),
    ('x/2', 'y', '0'),
    ('x/2', '0', 'u'),
    ('-2*u', 'x', '0'),
    ('-2*y', '0', 'x'),
    ('1', '0', '0'),
    ('0', '1', '0'),
    ('0', '0', '1')
)

# Published generators of the symmetry algebra of the model system.
MODEL_SYSTEM_GENERATORS = (
    ('1', '0', '0'),
    ('0', '1', '0'),
    ('0', '0', '1'),
    ('-2*u', 'x', '0'),
    ('-2*y', '0', 'x'),
    ('x/2', 'y', '0'),
    ('x/2', '0', 'u'),
    ('-2*u*x', 'x^2/2', '-2*u^2'),
    ('x*y/2', 'y^2/2', '-x^2/8'),
    ('x^2/2 - 2*y*u', 'x*y', 'x*u')
)
