"""Numerical audit of a zeta-function argument built from Gamma integral identities.

Modules: :mod:`specialfn` (special functions), :mod:`quad` (line quadrature),
:mod:`zerodb` (zero tables and the explicit formula), :mod:`identities`
(equation checkers), :mod:`audit` (zero-sum cancellation audit) and
:mod:`cli`.
"""
__version__ = "0.1.0"
