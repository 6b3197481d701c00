"""The generalized transform (T F)(eta) = lam (L F)(E eta + f) + <eta, g> + h."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from glft.deform.deformation import deform
from glft.deform.params import DeformParams, GenParams
from glft.funcspace.domain import Reals
from glft.funcspace.extended import ExtendedReal
from glft.funcspace.function import ConvexFunction
from glft.legendre.closed_form import conjugate_closed
from glft.legendre.engines import ClosedFormEngine, ConjugationEngine, get_engine
from glft.utils.exceptions import DimensionError

ParamsLike = Union[GenParams, DeformParams]


def as_gen_params(params: ParamsLike) -> GenParams:
    return params.as_gen() if isinstance(params, DeformParams) else params


@dataclass(frozen=True)
class GeneralizedTransform:
    """An order-reversing transform: a conjugation engine plus dual-side parameters."""

    engine: ConjugationEngine
    params: GenParams

    @classmethod
    def build(cls, params: ParamsLike, engine: Union[str, ConjugationEngine] = "closed"
              ) -> 'GeneralizedTransform':
        engine = get_engine(engine) if isinstance(engine, str) else engine
        return cls(engine=engine, params=as_gen_params(params))

    def __call__(self, f: ConvexFunction, eta) -> ExtendedReal:
        return self.evaluate(f, eta)

    def evaluate(self, f: ConvexFunction, eta) -> ExtendedReal:
        P = self.params
        if P.dim != f.dim:
            raise DimensionError(f"{f.label} is {f.dim}-D but the parameters are {P.dim}-D")
        eta = f.point(eta)
        base = ExtendedReal(self.engine.evaluate(f, P.inner_point(eta)))
        return base.scale(P.lam) + float(eta @ P.g) + P.h

    def as_function(self, f: ConvexFunction) -> ConvexFunction:
        """T F as a function. With the closed engine this is (F*)_P in catalog form."""
        if isinstance(self.engine, ClosedFormEngine):
            return deform(conjugate_closed(f), DeformParams.from_gen(self.params)).relabel(
                f"generalized({f.label})")
        return ConvexFunction(
            label=f"generalized({f.label})",
            domain=Reals(f.dim),
            evaluator=lambda eta: float(self.evaluate(f, eta)),
            family="generalized",
            params={'base': f},
        )


def generalized_conjugate(f: ConvexFunction, params: ParamsLike, eta,
                          engine: Union[str, ConjugationEngine] = "closed") -> ExtendedReal:
    """lam (L F)(E eta + f) + <eta, g> + h, saturating at +inf."""
    return GeneralizedTransform.build(params, engine).evaluate(f, eta)


def ordinary_reduction(f: ConvexFunction, eta, engine: Union[str, ConjugationEngine] = "closed"
                       ) -> ExtendedReal:
    """The transform at identity parameters: plain conjugation."""
    return generalized_conjugate(f, GenParams.identity(f.dim), np.atleast_1d(eta), engine)
