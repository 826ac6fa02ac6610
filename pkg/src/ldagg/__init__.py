"""Low-distortion aggregators built on separable Bregman divergences.

The aggregator of a generator ``phi`` minimizes total divergence to the data;
CES, Cobb-Douglas and the CES price index all arise from power-type generators.
"""

from .aggregator import (
    AggregateValue,
    WeightedData,
    ces,
    cobb_douglas,
    lda_mean,
    leontief,
    normalized_ces,
    price_index,
)
from .consumer import ConsumerProgram, ConsumerSolution, solve
from .divergence import bregman
from .errors import DegenerateParameterError, DomainError, LimitParameterError, ParseError
from .generators import CesParams, Generator, catalogue, conjugate, parse_generator

__version__ = "0.1.0"
