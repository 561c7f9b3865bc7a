#app/core/localext.py

import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple, Union

from app.models.equicore import INFINITE, Character, CharVector, Config, ExtTable

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalModel:
    """
    Ext_R(R/(S), R/(T) (x) chi^twist) over R = k[[vars]].

    Variables are (name, weight) pairs; S and T are sets of variable names.
    """

    d: int
    variables: Tuple[Tuple[str, int], ...]
    source_killed: FrozenSet[str]
    target_killed: FrozenSet[str]
    twist: int = 0

    def __post_init__(self):
        variables = tuple((str(name), int(weight) % self.d) for name, weight in self.variables)
        names = [name for name, _ in variables]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate variable names in local model: {names}")
        source = frozenset(self.source_killed)
        target = frozenset(self.target_killed)
        unknown = (source | target) - set(names)
        if unknown:
            raise ValueError(f"Killed variables {sorted(unknown)} are not coordinates of the model")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "source_killed", source)
        object.__setattr__(self, "target_killed", target)
        object.__setattr__(self, "twist", int(self.twist) % self.d)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    def weight(self, name: str) -> int:
        return dict(self.variables)[name]


@dataclass(frozen=True)
class TangentModel:
    """Weights of the tangent space at a fixed point."""

    d: int
    weights: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) % self.d for w in self.weights))

    @classmethod
    def at_xf(cls, cfg: Config) -> "TangentModel":
        """T_p X = 1^{m-2} + chi^n at a point of X_f."""
        if cfg.m < 2:
            raise ValueError(f"X_f is empty for {cfg.label}")
        return cls(cfg.d, (0,) * (cfg.m - 2) + (1,) * cfg.n)

    @classmethod
    def at_xg(cls, cfg: Config) -> "TangentModel":
        """T_q X = 1^{n-2} + (chi^{-1})^m at a point of X_g."""
        if cfg.n < 2:
            raise ValueError(f"X_g is empty for {cfg.label}")
        return cls(cfg.d, (0,) * (cfg.n - 2) + (-1,) * cfg.m)


def exterior_rows(d: int, weights: Iterable[int]) -> Dict[int, CharVector]:
    """Character vectors of Lambda^s of a sum of characters, for every s."""
    # layers[s][res] counts s-subsets with total weight res
    layers = [[1] + [0] * (d - 1)]
    for weight in weights:
        grown = [row[:] for row in layers] + [[0] * d]
        for s, row in enumerate(layers):
            for res, count in enumerate(row):
                if count:
                    grown[s + 1][(res + weight) % d] += count
        layers = grown
    return {s: CharVector(d, tuple(row)) for s, row in enumerate(layers)}


def free_factor(d: int, weights: Sequence[int]) -> CharVector:
    """
    Characters of k[[free variables]].

    No free variables leaves only the constants. Otherwise every residue in
    the subgroup generated by the weights occurs in infinitely many degrees.
    """
    if not weights:
        return CharVector.single(d, 0)
    step = reduce(gcd, (int(w) % d for w in weights), d)
    return CharVector(d, tuple(INFINITE if residue % step == 0 else 0 for residue in range(d)))


def koszul_ext(model: LocalModel) -> ExtTable:
    """
    Ext of coordinate quotients via the Koszul complex of R/(S).

    Args:
        model: The local model

    Returns:
        ExtTable with rows in [0, |S|]
    """
    d = model.d
    weights = dict(model.variables)
    both = [v for v in model.names if v in model.source_killed and v in model.target_killed]
    shifted = [v for v in model.names if v in model.source_killed and v not in model.target_killed]
    free = [v for v in model.names if v not in model.source_killed and v not in model.target_killed]

    # each v in S \ T is a nonzerodivisor on the target: one degree up, weight -w_v
    offset = len(shifted)
    base = model.twist - sum(weights[v] for v in shifted)
    free_vector = free_factor(d, [weights[v] for v in free])
    exterior = exterior_rows(d, [-weights[v] for v in both])

    rows = {p + offset: vector.tensor(free_vector).shift(base) for p, vector in exterior.items()}
    return ExtTable.from_rows(d, rows)


def point_ext(tm: TangentModel, delta: Union[int, Character]) -> ExtTable:
    """Ext between twisted skyscrapers at a fixed point: Lambda^s(T) (x) chi^delta."""
    shift = int(delta)
    rows = {s: vector.shift(shift) for s, vector in exterior_rows(tm.d, tm.weights).items()}
    return ExtTable.from_rows(tm.d, rows)
