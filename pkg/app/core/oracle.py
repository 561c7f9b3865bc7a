#app/core/oracle.py

import logging
import random
from collections import defaultdict
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from sympy import GF, QQ, isprime, primitive_root
from sympy.polys.matrices.sdm import SDM

from app.core.geometry import SpanKind
from app.core.localext import LocalModel, koszul_ext
from app.models.equicore import INFINITE, Character, CharVector, Config, ExtTable, WeightedSpace, ambient_weights

# Set up logging
logger = logging.getLogger(__name__)


def exact_rank(rows: Sequence[Mapping[int, int]], domain=QQ) -> int:
    """
    Rank of a sparse integer matrix over a field.

    Args:
        rows: One dict per row, mapping column index to an entry
        domain: A sympy field, QQ or a prime field GF(q)

    Returns:
        The rank, read off the pivots of the reduced row echelon form
    """
    elements = {i: {col: domain(value) for col, value in row.items() if value} for i, row in enumerate(rows)}
    elements = {i: {col: v for col, v in row.items() if v} for i, row in elements.items()}
    elements = {i: row for i, row in elements.items() if row}
    if not elements:
        return 0
    columns = 1 + max(col for row in elements.values() for col in row)
    _, pivots = SDM(elements, (len(rows), columns), domain).rref()
    return len(pivots)


def exponent_tuples(size: int, total: int) -> Iterator[Tuple[int, ...]]:
    """All exponent vectors of the given length and total degree, in a fixed order."""
    if total < 0:
        return
    for choice in combinations_with_replacement(range(size), total):
        exponents = [0] * size
        for index in choice:
            exponents[index] += 1
        yield tuple(exponents)


def enumerate_monomial_counts(space: WeightedSpace, a: int) -> Tuple[int, ...]:
    """Direct enumeration of degree-a monomials by weight."""
    counts = [0] * space.d
    for exponents in exponent_tuples(len(space.weights), a):
        weight = sum(e * w for e, w in zip(exponents, space.weights))
        counts[weight % space.d] += 1
    return tuple(counts)


def _weight(space: WeightedSpace, exponents: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(exponents, space.weights)) % space.d


def _block_ranks(
    space: WeightedSpace, sources: List[Tuple[int, ...]], targets: List[Tuple[int, ...]], degree: int, keep
) -> Dict[int, int]:
    """Rank of multiplication by the Fermat polynomial, per weight block."""
    index = {mono: i for i, mono in enumerate(targets)}
    blocks: Dict[int, List[Dict[int, int]]] = defaultdict(list)
    for mono in sources:
        row: Dict[int, int] = {}
        for i in range(len(mono)):
            image = mono[:i] + (mono[i] + degree,) + mono[i + 1:]
            if keep(image):
                row[index[image]] = row.get(index[image], 0) + 1
        blocks[_weight(space, mono)].append(row)
    return {weight: exact_rank(rows) for weight, rows in blocks.items()}


def fermat_cohomology(space: WeightedSpace, degree: int, k: int, c: Union[int, Character]) -> ExtTable:
    """
    Cohomology of O(k) (x) chi^c on the Fermat hypersurface sum z_i^degree = 0.

    H^0 is the cokernel of multiplication on monomials; H^{N-1} is the kernel
    of multiplication on the Cech classes z^e with every exponent negative.

    Args:
        space: Ambient weighted space of dimension >= 2
        degree: Degree of the Fermat polynomial, a multiple of every weight's order
        k: Degree of the line bundle
        c: Character twist

    Returns:
        ExtTable computed by exact rank
    """
    size = len(space.weights)
    top = size - 1
    d = space.d
    shift = int(c)
    if top < 2:
        raise ValueError(f"Fermat oracle needs an ambient dimension >= 2, got {top}")

    # H^0
    targets = list(exponent_tuples(size, k))
    sources = list(exponent_tuples(size, k - degree))
    ranks = _block_ranks(space, sources, targets, degree, keep=lambda mono: True)
    h0 = [0] * d
    for mono in targets:
        h0[(_weight(space, mono) + shift) % d] += 1
    for weight, rank in ranks.items():
        h0[(weight + shift) % d] -= rank

    # H^{N-1}: classes z^{-a-1}, stored by their negative exponents
    def negatives(total: int) -> List[Tuple[int, ...]]:
        return [tuple(-a - 1 for a in mono) for mono in exponent_tuples(size, -total - size)]

    sources = negatives(k - degree)
    targets = negatives(k)
    ranks = _block_ranks(space, sources, targets, degree, keep=lambda mono: all(e < 0 for e in mono))
    h_top = [0] * d
    for mono in sources:
        h_top[(_weight(space, mono) + shift) % d] += 1
    for weight, rank in ranks.items():
        h_top[(weight + shift) % d] -= rank

    return ExtTable(d, ((0, CharVector(d, tuple(h0))), (top - 1, CharVector(d, tuple(h_top)))))


def truncated_koszul_ext(model: LocalModel, max_degree: int = 8) -> Dict[int, Dict[int, int]]:
    """
    Ext of coordinate quotients from explicit Koszul cochains on monomials.

    The cochain complex splits by internal degree (monomial degree minus
    cohomological degree) and by character; only slices whose monomials all
    have degree <= max_degree are summed.

    Args:
        model: The local model
        max_degree: Truncation degree for monomials

    Returns:
        Nested dict degree -> character -> dimension
    """
    d = model.d
    weights = dict(model.variables)
    source = [v for v in model.names if v in model.source_killed]
    module_vars = [v for v in model.names if v not in model.target_killed]
    position = {v: i for i, v in enumerate(module_vars)}
    order = {v: i for i, v in enumerate(source)}
    length = len(source)

    def character(subset: Tuple[str, ...], mono: Tuple[int, ...]) -> int:
        value = model.twist - sum(weights[v] for v in subset)
        value += sum(e * weights[v] for v, e in zip(module_vars, mono))
        return value % d

    result: Dict[int, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for internal in range(-length, max_degree - length + 1):
        bases: List[Dict[int, List[Tuple[Tuple[str, ...], Tuple[int, ...]]]]] = []
        for p in range(length + 1):
            groups: Dict[int, list] = defaultdict(list)
            for subset in combinations(source, p):
                for mono in exponent_tuples(len(module_vars), internal + p):
                    groups[character(subset, mono)].append((subset, mono))
            bases.append(groups)

        for char in range(d):
            ranks = []
            for p in range(length):
                targets = bases[p + 1].get(char, [])
                index = {basis: i for i, basis in enumerate(targets)}
                rows = []
                for subset, mono in bases[p].get(char, []):
                    row: Dict[int, int] = {}
                    for v in source:
                        if v in subset or v not in position:
                            continue
                        sign = -1 if sum(1 for u in subset if order[u] < order[v]) % 2 else 1
                        bumped = list(mono)
                        bumped[position[v]] += 1
                        image = (tuple(sorted(subset + (v,), key=order.get)), tuple(bumped))
                        row[index[image]] = row.get(index[image], 0) + sign
                    rows.append(row)
                ranks.append(exact_rank(rows))
            for p in range(length + 1):
                dimension = len(bases[p].get(char, []))
                outgoing = ranks[p] if p < length else 0
                incoming = ranks[p - 1] if p > 0 else 0
                value = dimension - outgoing - incoming
                if value:
                    result[p][char] += value
    return {p: dict(row) for p, row in result.items()}


def koszul_agrees(model: LocalModel, max_degree: int = 8) -> bool:
    """Compare koszul_ext with the truncated computation; INFINITE entries need a positive count."""
    expected = koszul_ext(model)
    observed = truncated_koszul_ext(model, max_degree)
    degrees = set(expected.degrees()) | set(observed)
    for degree in degrees:
        row = expected.row(degree)
        counts = observed.get(degree, {})
        for char in range(model.d):
            want = row[char]
            got = counts.get(char, 0)
            if (want is INFINITE and got <= 0) or (want is not INFINITE and got != want):
                logger.warning(f"Koszul mismatch at degree {degree}, character {char}: expected {want}, got {got}")
                return False
    return True


def random_local_model(rng: random.Random, max_vars: int = 5, max_d: int = 5) -> LocalModel:
    """A random coordinate-quotient model small enough for the truncated oracle."""
    d = rng.randint(2, max_d)
    count = rng.randint(1, max_vars)
    variables = tuple((f"z{i}", rng.randrange(d)) for i in range(count))
    names = [name for name, _ in variables]
    source = frozenset(name for name in names if rng.random() < 0.6)
    target = frozenset(name for name in names if rng.random() < 0.5)
    return LocalModel(d, variables, source, target, rng.randrange(d))


def fermat_prime(d: int) -> int:
    """Smallest prime q with 2d | q - 1, so -1 has a d-th root in GF(q)."""
    q = 2 * d + 1
    while not isprime(q):
        q += 2 * d
    return q


def fermat_point(cfg: Config, locus: SpanKind, site: int = 0) -> Tuple[int, Tuple[int, ...]]:
    """
    A point of X_f or X_g on the Fermat model sum x_i^d + sum y_j^d = 0 over GF(q).

    The locus coordinates are (1, eta * omega^site, 0, ...) with eta^d = -1 and
    omega a primitive d-th root of unity, so sites 0..d-1 are distinct points.

    Returns:
        (q, homogeneous coordinates x_1..x_m, y_1..y_n)
    """
    d = cfg.d
    size = cfg.m if locus is SpanKind.POINT_F else cfg.n
    if size < 2:
        raise ValueError(f"{'X_f' if locus is SpanKind.POINT_F else 'X_g'} is empty for {cfg.label}")
    q = fermat_prime(d)
    eta = pow(primitive_root(q), (q - 1) // (2 * d), q)
    omega = eta * eta % q
    block = (1, eta * pow(omega, site, q) % q) + (0,) * (size - 2)
    if locus is SpanKind.POINT_F:
        return q, block + (0,) * cfg.n
    return q, (0,) * cfg.m + block


def fermat_cotangent_weights(cfg: Config, locus: SpanKind, site: int = 0) -> Tuple[int, ...]:
    """
    Weights of the chart functions spanning the cotangent space of X at a Fermat point.

    The chart divides by the first nonzero coordinate; per weight block the
    cotangent dimension is the block size minus the rank of the gradient there.
    """
    q, point = fermat_point(cfg, locus, site)
    d = cfg.d
    if sum(pow(value, d, q) for value in point) % q:
        raise ArithmeticError(f"Fermat point {point} is not on X for {cfg.label}")
    weights = ambient_weights(cfg).weights
    anchor = next(i for i, value in enumerate(point) if value)
    gradient = {i: d * pow(point[i], d - 1, q) % q for i in range(len(point)) if i != anchor}
    if not any(gradient.values()):
        raise ArithmeticError(f"Fermat point {point} is singular on X for {cfg.label}")

    blocks: Dict[int, List[int]] = defaultdict(list)
    for i in gradient:
        blocks[(weights[i] - weights[anchor]) % d].append(i)
    cotangent: List[int] = []
    for weight, members in sorted(blocks.items()):
        rank = exact_rank([{j: gradient[i] for j, i in enumerate(members)}], GF(q))
        cotangent.extend([weight] * (len(members) - rank))
    return tuple(cotangent)


def fermat_point_ext(cfg: Config, locus: SpanKind, site: int, delta: int) -> ExtTable:
    """
    Ext(O_p, O_p (x) chi^delta) at a Fermat point from explicit Koszul cochains.

    Args:
        cfg: The config
        locus: POINT_F or POINT_G
        site: Which Fermat point to use
        delta: Character of the target relative to the source

    Returns:
        ExtTable computed from the tangent space found by rank
    """
    weights = fermat_cotangent_weights(cfg, locus, site)
    variables = tuple((f"t{i}", weight) for i, weight in enumerate(weights))
    names = frozenset(name for name, _ in variables)
    model = LocalModel(cfg.d, variables, names, names, delta)
    return ExtTable.from_dict(cfg.d, truncated_koszul_ext(model, max_degree=len(variables)))
