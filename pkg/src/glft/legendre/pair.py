"""Conjugate pairs (F, F*) produced by an engine."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from glft.funcspace.function import ConvexFunction
from glft.legendre.engines import ConjugationEngine, get_engine


@dataclass(frozen=True)
class ConjugatePair:
    """F on its domain together with F* on the dual side."""

    primal: ConvexFunction
    dual: ConvexFunction
    engine: str

    @property
    def dim(self) -> int:
        return self.primal.dim

    @property
    def legendre_type(self) -> bool:
        return self.primal.legendre_type and self.dual.legendre_type

    def swapped(self) -> 'ConjugatePair':
        """(F*, F): valid for closed convex F since F** = F."""
        return ConjugatePair(primal=self.dual, dual=self.primal, engine=self.engine)


def conjugate_pair(f: ConvexFunction,
                   engine: Union[str, ConjugationEngine] = "closed") -> ConjugatePair:
    if isinstance(engine, str):
        engine = get_engine(engine)
    return ConjugatePair(primal=f, dual=engine.conjugate(f), engine=engine.name)
