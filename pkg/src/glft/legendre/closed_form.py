"""Closed-form conjugation rules for catalog entries."""
from __future__ import annotations

from typing import Callable, Dict

import numpy as np

from glft.deform.deformation import deform
from glft.deform.params import diamond
from glft.funcspace import catalog
from glft.funcspace.function import ConvexFunction
from glft.utils.exceptions import NoClosedFormError

Rule = Callable[[ConvexFunction], ConvexFunction]

_RULES: Dict[str, Rule] = {}


def rule(family: str) -> Callable[[Rule], Rule]:
    def decorator(fn: Rule) -> Rule:
        _RULES[family] = fn
        return fn
    return decorator


@rule("affine")
def _affine(f: ConvexFunction) -> ConvexFunction:
    # <a, theta> + b  ->  indicator of {a} shifted by -b
    return catalog.indicator_point({'a': f.params['a'], 'v': -f.params['b']})


@rule("indicator-point")
def _indicator_point(f: ConvexFunction) -> ConvexFunction:
    return catalog.affine({'a': f.params['a'], 'b': -f.params['v']})


@rule("exp")
def _exp(f: ConvexFunction) -> ConvexFunction:
    return catalog.shannon({'m': f.params['m']})


@rule("shannon")
def _shannon(f: ConvexFunction) -> ConvexFunction:
    return catalog.exp_entry({'m': f.params['m']})


@rule("power-norm")
def _power_norm(f: ConvexFunction) -> ConvexFunction:
    p, m = f.params['p'], f.params['m']
    if p == 1.0:
        return catalog.indicator_ball({'m': m})
    return catalog.power_norm({'p': p / (p - 1.0), 'm': m})


@rule("indicator-ball")
def _indicator_ball(f: ConvexFunction) -> ConvexFunction:
    return catalog.power_norm({'p': 1.0, 'm': f.params['m']})


@rule("quadratic-form")
def _quadratic_form(f: ConvexFunction) -> ConvexFunction:
    Q, r, s = f.params['Q'], f.params['r'], f.params['s']
    Q_inv = np.linalg.inv(Q)
    Q_inv = 0.5 * (Q_inv + Q_inv.T)
    return catalog.quadratic_form({'Q': Q_inv, 'r': -Q_inv @ r, 's': 0.5 * r @ Q_inv @ r - s})


@rule("exp-abs")
def _exp_abs(f: ConvexFunction) -> ConvexFunction:
    return catalog.exp_abs_conjugate({'restrict': f.params['restrict']})


@rule("exp-abs-conjugate")
def _exp_abs_conjugate(f: ConvexFunction) -> ConvexFunction:
    return catalog.exp_abs({'restrict': f.params['restrict']})


@rule("neg-log")
def _neg_log(f: ConvexFunction) -> ConvexFunction:
    return catalog.neg_log_conjugate({'m': f.params['m']})


@rule("neg-log-conjugate")
def _neg_log_conjugate(f: ConvexFunction) -> ConvexFunction:
    return catalog.neg_log({'m': f.params['m']})


@rule("deformed")
def _deformed(f: ConvexFunction) -> ConvexFunction:
    # L(F_P) = (L F)_{P'} with P' the diamond of P
    base, P = f.params['base'], f.params['P']
    return deform(conjugate_closed(base), diamond(P)).relabel(f"conjugate({f.label})")


def has_closed_form(f: ConvexFunction) -> bool:
    if f.family == "deformed":
        return has_closed_form(f.params['base'])
    return f.family in _RULES


def conjugate_closed(f: ConvexFunction) -> ConvexFunction:
    """Analytic conjugate of a catalog entry.

    Raises NoClosedFormError for entries without a rule (rockafellar-2d,
    grid interpolants, custom functions); callers fall back to another engine.
    """
    handler = _RULES.get(f.family)
    if handler is None or not has_closed_form(f):
        raise NoClosedFormError(f"no closed-form conjugate for {f.label}")
    return handler(f)
