#app/core/cohomology.py

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, List, Sequence, Tuple, Union

from app.models.equicore import (
    Character,
    CharVector,
    Config,
    ExtTable,
    WeightedSpace,
    ambient_weights,
    serre_twist,
)

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineBundle:
    """
    O(k) (x) chi^c on a weighted projective space, or O_X(k) (x) chi^c on the
    hypersurface X of a config.
    """

    k: int
    c: Character
    space: Union[WeightedSpace, Config]

    def __post_init__(self):
        if isinstance(self.space, Config) and self.space.m + self.space.n < 3:
            raise ValueError(
                f"Hypersurface cohomology needs m + n >= 3, got {self.space.label}; "
                "the (1,1,d) case is a single exceptional object"
            )

    @classmethod
    def on(cls, space: Union[WeightedSpace, Config], k: int, c: Union[int, Character]) -> "LineBundle":
        return cls(k, Character(int(c), space.d), space)


@lru_cache(maxsize=None)
def monomial_weight_counts(space: WeightedSpace, a: int) -> Tuple[int, ...]:
    """
    Count the degree-a monomials on a weighted space, split by weight.

    Coordinates sharing a weight are grouped, and each group of r coordinates
    contributes C(t + r - 1, r - 1) monomials of degree t and weight t * w.

    Args:
        space: The weighted projective space
        a: Total degree

    Returns:
        Tuple whose entry c is the number of monomials of weight c mod d
    """
    d = space.d
    if a < 0:
        return (0,) * d

    groups = {}
    for weight in space.weights:
        groups[weight] = groups.get(weight, 0) + 1

    # table[deg][res]: monomials in the groups seen so far
    table = [[0] * d for _ in range(a + 1)]
    table[0][0] = 1
    for weight, size in sorted(groups.items()):
        updated = [[0] * d for _ in range(a + 1)]
        for deg in range(a + 1):
            row = table[deg]
            if not any(row):
                continue
            for t in range(a - deg + 1):
                ways = comb(t + size - 1, size - 1)
                offset = t * weight
                target = updated[deg + t]
                for res, count in enumerate(row):
                    if count:
                        target[(res + offset) % d] += count * ways
        table = updated
    return tuple(table[a])


def count_monomials(space: WeightedSpace, a: int, c: Union[int, Character]) -> int:
    """Number of degree-a monomials whose weight is c mod d (x^I y^J has weight -|J|)."""
    return monomial_weight_counts(space, a)[int(c) % space.d]


def _h0_vector(space: WeightedSpace, k: int, c: int) -> List[int]:
    counts = monomial_weight_counts(space, k)
    return [counts[(e - c) % space.d] for e in range(space.d)]


def _top_vector(space: WeightedSpace, k: int, c: int) -> List[int]:
    # H^N(O(k) chi^c) is dual to H^0(O(-k-N-1) chi^{w-c}) with w the weight determinant
    top = space.dimension
    w = space.weight_determinant.r
    counts = monomial_weight_counts(space, -k - top - 1)
    return [counts[(c - e - w) % space.d] for e in range(space.d)]


def cohomology_projective(lb: LineBundle) -> ExtTable:
    """Equivariant cohomology of O(k) (x) chi^c on a weighted projective space."""
    space = lb.space
    if not isinstance(space, WeightedSpace):
        raise TypeError("cohomology_projective expects a line bundle on a weighted space")
    d = space.d
    rows = {
        0: CharVector(d, tuple(_h0_vector(space, lb.k, lb.c.r))),
        space.dimension: CharVector(d, tuple(_top_vector(space, lb.k, lb.c.r))),
    }
    return ExtTable.from_rows(d, rows)


def _difference(left: Sequence[int], right: Sequence[int], context: str) -> CharVector:
    values = tuple(a - b for a, b in zip(left, right))
    if any(value < 0 for value in values):
        raise ArithmeticError(f"Negative multiplicity in {context}: {values}")
    return CharVector(len(values), values)


def cohomology_hypersurface_in(space: WeightedSpace, degree: int, k: int, c: Union[int, Character]) -> ExtTable:
    """
    Cohomology of O(k) (x) chi^c on an invariant hypersurface of the given degree.

    Uses 0 -> O(k - degree) -> O(k) -> O_Y(k) -> 0; the middle cohomology of the
    ambient space vanishes, so only H^0 and H^{N-1} of Y survive.

    Args:
        space: Ambient weighted space, dimension at least 2
        degree: Degree of the invariant defining polynomial
        k: Degree of the line bundle
        c: Character twist

    Returns:
        ExtTable with rows 0 and N-1
    """
    if space.dimension < 2:
        raise ValueError(f"Hypersurface engine needs an ambient dimension >= 2, got {space.dimension}")
    c = int(c)
    top = space.dimension
    h0 = _difference(_h0_vector(space, k, c), _h0_vector(space, k - degree, c), f"H^0 of O({k})chi^{c}")
    h_top = _difference(_top_vector(space, k - degree, c), _top_vector(space, k, c), f"H^{top - 1} of O({k})chi^{c}")
    return ExtTable(space.d, ((0, h0), (top - 1, h_top)))


def cohomology_hypersurface(cfg: Config, k: int, c: Union[int, Character]) -> ExtTable:
    """Equivariant cohomology of O_X(k) (x) chi^c on X."""
    if cfg.m + cfg.n < 3:
        raise ValueError(f"Hypersurface cohomology needs m + n >= 3, got {cfg.label}")
    return cohomology_hypersurface_in(ambient_weights(cfg), cfg.d, k, c)


def euler_projective(space: WeightedSpace, k: int, c: Union[int, Character]) -> Tuple[int, ...]:
    """Equivariant Euler characteristic of O(k) (x) chi^c, one entry per character."""
    sign = -1 if space.dimension % 2 else 1
    h0 = _h0_vector(space, k, int(c))
    top = _top_vector(space, k, int(c))
    return tuple(a + sign * b for a, b in zip(h0, top))


def euler_hypersurface(space: WeightedSpace, degree: int, k: int, c: Union[int, Character]) -> Tuple[int, ...]:
    """Equivariant Euler characteristic on a hypersurface; valid in every dimension."""
    upper = euler_projective(space, k, c)
    lower = euler_projective(space, k - degree, c)
    return tuple(a - b for a, b in zip(upper, lower))


def line_bundle_cohomology(lb: LineBundle) -> ExtTable:
    """Dispatch on the kind of space the bundle lives on."""
    if isinstance(lb.space, Config):
        return cohomology_hypersurface(lb.space, lb.k, lb.c)
    return cohomology_projective(lb)


def p1_cohomology(d: int, k: int, c: Union[int, Character]) -> ExtTable:
    """Cohomology of O(k) (x) chi^c on the line with weights [0, -1]."""
    return cohomology_projective(LineBundle.on(WeightedSpace.join_line(d), k, c))


def serre_partner(cfg: Config, k: int, c: Union[int, Character]) -> Tuple[int, Character]:
    """The bundle whose cohomology is Serre dual to that of O_X(k) (x) chi^c."""
    twist_degree, twist_char = serre_twist(cfg)
    return -k + twist_degree, twist_char - int(c)


def serre_check(cfg: Config, samples: Iterable[Tuple[int, int]]) -> bool:
    """
    Check h^i(O_X(k) chi^c) = h^{dim X - i}(O_X(-k+d-m-n) chi^{-c-n}) on invariants.

    Args:
        cfg: Config with m + n >= 3
        samples: (k, c) pairs to test

    Returns:
        True if every sample satisfies the identity
    """
    top = cfg.dimension
    ok = True
    for k, c in samples:
        left = cohomology_hypersurface(cfg, k, c).invariants()
        k_dual, c_dual = serre_partner(cfg, k, c)
        right = cohomology_hypersurface(cfg, k_dual, c_dual).invariants()
        mirrored = {top - deg: value for deg, value in right.items()}
        if left != mirrored:
            logger.warning(f"Serre duality mismatch on {cfg.label} at (k={k}, c={c}): {left} vs {mirrored}")
            ok = False
    return ok
