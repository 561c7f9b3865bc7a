#app/models/equicore.py

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Tuple, Union

# Set up logging
logger = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Raised when an (m, n, d) triple is outside the supported range."""


class _Infinite:
    """Multiplicity of a character that occurs in infinitely many degrees of a free factor."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        # keeps the singleton identity across worker processes
        return (_Infinite, ())

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "inf"


INFINITE = _Infinite()
Multiplicity = Union[int, _Infinite]


def add_mult(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    """Add two multiplicities; anything plus INFINITE is INFINITE."""
    if a is INFINITE or b is INFINITE:
        return INFINITE
    return a + b


def mul_mult(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    """Multiply two multiplicities; zero annihilates INFINITE."""
    if a == 0 or b == 0:
        return 0
    if a is INFINITE or b is INFINITE:
        return INFINITE
    return a * b


def mult_to_json(value: Multiplicity) -> Union[int, str]:
    return "inf" if value is INFINITE else int(value)


@dataclass(frozen=True, order=True)
class Character:
    """A character of mu_d, stored as its canonical residue in [0, d)."""

    r: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ConfigError(f"Character group order must be positive, got d={self.d}")
        object.__setattr__(self, "r", self.r % self.d)

    def _residue(self, other) -> int:
        if isinstance(other, Character):
            if other.d != self.d:
                raise ValueError(f"Cannot combine characters of mu_{self.d} and mu_{other.d}")
            return other.r
        return int(other)

    def __add__(self, other) -> "Character":
        return Character(self.r + self._residue(other), self.d)

    __radd__ = __add__

    def __sub__(self, other) -> "Character":
        return Character(self.r - self._residue(other), self.d)

    def __rsub__(self, other) -> "Character":
        return Character(self._residue(other) - self.r, self.d)

    def __neg__(self) -> "Character":
        return Character(-self.r, self.d)

    def __int__(self) -> int:
        return self.r

    @property
    def is_trivial(self) -> bool:
        return self.r == 0

    def __str__(self) -> str:
        return f"chi^{self.r}"


@dataclass(frozen=True)
class Config:
    """
    Parameters (m, n, d) of the hypersurface X = V(f + g) in P^{m+n-1}.

    f has degree d in the m weight-0 variables x, g has degree d in the n
    weight-(-1) variables y. m = 1 is only accepted in cyclic mode.
    """

    m: int
    n: int
    d: int
    cyclic: bool = False

    def __post_init__(self):
        for name in ("m", "n", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if not (self.m <= self.n <= self.d):
            raise ConfigError(
                f"Expected 1 <= m <= n <= d, got (m, n, d) = ({self.m}, {self.n}, {self.d})"
            )
        if self.m == 1 and not self.cyclic:
            raise ConfigError("m = 1 is only supported in cyclic mode")
        if self.cyclic and self.m != 1:
            raise ConfigError(f"Cyclic mode requires m = 1, got m = {self.m}")

    @classmethod
    def of(cls, m: int, n: int, d: int) -> "Config":
        """Build a config, switching on cyclic mode exactly when m = 1."""
        return cls(m, n, d, cyclic=(m == 1))

    @property
    def ambient_dimension(self) -> int:
        return self.m + self.n - 1

    @property
    def dimension(self) -> int:
        return self.m + self.n - 2

    def char(self, value: int) -> Character:
        return Character(value, self.d)

    @property
    def label(self) -> str:
        return f"({self.m},{self.n},{self.d})"

    def to_dict(self) -> Dict[str, Union[int, bool]]:
        return {"m": self.m, "n": self.n, "d": self.d, "cyclic": self.cyclic}


def serre_twist(cfg: Config) -> Tuple[int, Character]:
    """Return the line bundle part O_X(d-m-n) (x) chi^{-n} of the Serre functor."""
    return cfg.d - cfg.m - cfg.n, cfg.char(-cfg.n)


def serre_shift(cfg: Config) -> int:
    """Return the cohomological shift of the Serre functor, dim X = m+n-2."""
    return cfg.dimension


@dataclass(frozen=True)
class WeightedSpace:
    """A projective space with a mu_d action given by one weight per coordinate."""

    d: int
    weights: Tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) < 2:
            raise ValueError(f"A weighted projective space needs at least 2 coordinates, got {len(self.weights)}")
        object.__setattr__(self, "weights", tuple(int(w) % self.d for w in self.weights))

    @classmethod
    def join_line(cls, d: int) -> "WeightedSpace":
        """The line through a point of X_f and a point of X_g."""
        return cls(d, (0, -1))

    @property
    def dimension(self) -> int:
        return len(self.weights) - 1

    @property
    def characters(self) -> Tuple[Character, ...]:
        return tuple(Character(w, self.d) for w in self.weights)

    @property
    def weight_determinant(self) -> Character:
        """Sum of the coordinate weights; the canonical bundle is O(-N-1) twisted by it."""
        return Character(sum(self.weights), self.d)


def ambient_weights(cfg: Config) -> WeightedSpace:
    """Weights of P^{m+n-1}: m zeros for the x variables, then n copies of -1."""
    return WeightedSpace(cfg.d, (0,) * cfg.m + (-1,) * cfg.n)


@dataclass(frozen=True)
class CharVector:
    """Multiplicity of every character of mu_d, indexed by canonical residue."""

    d: int
    mult: Tuple[Multiplicity, ...]

    def __post_init__(self):
        if len(self.mult) != self.d:
            raise ValueError(f"CharVector over mu_{self.d} needs {self.d} entries, got {len(self.mult)}")
        object.__setattr__(self, "mult", tuple(self.mult))

    @classmethod
    def zero(cls, d: int) -> "CharVector":
        return cls(d, (0,) * d)

    @classmethod
    def single(cls, d: int, char: Union[int, Character], count: Multiplicity = 1) -> "CharVector":
        values = [0] * d
        values[int(char) % d] = count
        return cls(d, tuple(values))

    @classmethod
    def from_mapping(cls, d: int, mapping: Mapping[Union[int, Character], Multiplicity]) -> "CharVector":
        values = [0] * d
        for char, count in mapping.items():
            index = int(char) % d
            values[index] = add_mult(values[index], count)
        return cls(d, tuple(values))

    def __getitem__(self, char: Union[int, Character]) -> Multiplicity:
        return self.mult[int(char) % self.d]

    @property
    def invariant(self) -> Multiplicity:
        return self.mult[0]

    def is_zero(self) -> bool:
        return all(value == 0 for value in self.mult)

    def has_infinite(self) -> bool:
        return any(value is INFINITE for value in self.mult)

    def total(self) -> Multiplicity:
        result: Multiplicity = 0
        for value in self.mult:
            result = add_mult(result, value)
        return result

    def items(self) -> Iterator[Tuple[int, Multiplicity]]:
        """Nonzero (residue, multiplicity) pairs in residue order."""
        for residue, value in enumerate(self.mult):
            if value != 0:
                yield residue, value

    def __add__(self, other: "CharVector") -> "CharVector":
        self._check_group(other)
        return CharVector(self.d, tuple(add_mult(a, b) for a, b in zip(self.mult, other.mult)))

    def scaled(self, factor: int) -> "CharVector":
        return CharVector(self.d, tuple(mul_mult(value, factor) for value in self.mult))

    def shift(self, char: Union[int, Character]) -> "CharVector":
        """Tensor with the character chi^char."""
        offset = int(char)
        values = [0] * self.d
        for residue, value in enumerate(self.mult):
            values[(residue + offset) % self.d] = value
        return CharVector(self.d, tuple(values))

    def dual(self) -> "CharVector":
        values = [0] * self.d
        for residue, value in enumerate(self.mult):
            values[(-residue) % self.d] = value
        return CharVector(self.d, tuple(values))

    def tensor(self, other: "CharVector") -> "CharVector":
        """Character vector of the tensor product of two representations."""
        self._check_group(other)
        values: list = [0] * self.d
        for a, x in self.items():
            for b, y in other.items():
                index = (a + b) % self.d
                values[index] = add_mult(values[index], mul_mult(x, y))
        return CharVector(self.d, tuple(values))

    def to_dict(self) -> Dict[str, Union[int, str]]:
        return {str(residue): mult_to_json(value) for residue, value in self.items()}

    def _check_group(self, other: "CharVector") -> None:
        if other.d != self.d:
            raise ValueError(f"Cannot combine vectors over mu_{self.d} and mu_{other.d}")


@dataclass(frozen=True)
class ExtTable:
    """
    Cohomological degree -> character multiplicities.

    Rows are kept sorted and zero rows are dropped, so two tables are equal
    exactly when they agree in every degree and every character.
    """

    d: int
    rows: Tuple[Tuple[int, CharVector], ...] = ()

    def __post_init__(self):
        merged: Dict[int, CharVector] = {}
        for degree, vector in self.rows:
            if vector.d != self.d:
                raise ValueError(f"Row over mu_{vector.d} in a table over mu_{self.d}")
            merged[degree] = merged[degree] + vector if degree in merged else vector
        cleaned = tuple(sorted((deg, vec) for deg, vec in merged.items() if not vec.is_zero()))
        object.__setattr__(self, "rows", cleaned)

    @classmethod
    def zero(cls, d: int) -> "ExtTable":
        return cls(d, ())

    @classmethod
    def from_rows(cls, d: int, rows: Mapping[int, CharVector]) -> "ExtTable":
        return cls(d, tuple(rows.items()))

    @classmethod
    def from_dict(cls, d: int, rows: Mapping[int, Mapping[int, Multiplicity]]) -> "ExtTable":
        """Build a table from plain nested dicts, e.g. {0: {0: 1}, 2: {2: 1}}."""
        return cls(d, tuple((deg, CharVector.from_mapping(d, row)) for deg, row in rows.items()))

    def row(self, degree: int) -> CharVector:
        for deg, vector in self.rows:
            if deg == degree:
                return vector
        return CharVector.zero(self.d)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(deg for deg, _ in self.rows)

    def invariants(self) -> Dict[int, Multiplicity]:
        """The character-0 column, restricted to degrees where it is nonzero."""
        return {deg: vec.invariant for deg, vec in self.rows if vec.invariant != 0}

    def is_zero(self) -> bool:
        return not self.rows

    def invariant_is_zero(self) -> bool:
        return not self.invariants()

    def invariant_degrees_outside(self, low: int, high: int) -> Tuple[int, ...]:
        """Degrees outside [low, high] that carry an invariant class."""
        return tuple(deg for deg in self.invariants() if deg < low or deg > high)

    def total(self) -> Multiplicity:
        result: Multiplicity = 0
        for _, vector in self.rows:
            result = add_mult(result, vector.total())
        return result

    def __add__(self, other: "ExtTable") -> "ExtTable":
        if other.d != self.d:
            raise ValueError(f"Cannot add tables over mu_{self.d} and mu_{other.d}")
        return ExtTable(self.d, self.rows + other.rows)

    def shift(self, char: Union[int, Character]) -> "ExtTable":
        """Tensor every row with chi^char."""
        return ExtTable(self.d, tuple((deg, vec.shift(char)) for deg, vec in self.rows))

    def dualize(self, top: int) -> "ExtTable":
        """Send degree s to top - s and every character to its inverse."""
        return ExtTable(self.d, tuple((top - deg, vec.dual()) for deg, vec in self.rows))

    def to_dict(self) -> Dict[str, Dict[str, Union[int, str]]]:
        return {str(deg): vec.to_dict() for deg, vec in self.rows}

    def summary(self) -> str:
        if not self.rows:
            return "0"
        parts = []
        for deg, vec in self.rows:
            entries = ", ".join(f"{r}:{value}" for r, value in vec.items())
            parts.append(f"{deg}:{{{entries}}}")
        return "{" + ", ".join(parts) + "}"
