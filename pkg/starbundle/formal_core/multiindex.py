"""Multi-index arithmetic shared by polynomials and differential operators."""

from collections.abc import Iterator, Sequence
from itertools import product
from math import comb, factorial

__all__ = [
    "MultiIndex",
    "add_indices",
    "binomial",
    "falling_factorial",
    "index_degree",
    "index_factorial",
    "indices_up_to",
    "is_below",
    "leibniz_splits",
    "lower_indices",
    "sub_indices",
    "unit_index",
    "zero_index",
]

MultiIndex = tuple[int, ...]


def zero_index(size: int) -> MultiIndex:
    return (0,) * size


def unit_index(size: int, position: int) -> MultiIndex:
    return tuple(1 if slot == position else 0 for slot in range(size))


def index_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def add_indices(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(alpha, beta, strict=True))


def sub_indices(alpha: MultiIndex, beta: MultiIndex) -> MultiIndex:
    return tuple(a - b for a, b in zip(alpha, beta, strict=True))


def is_below(beta: MultiIndex, alpha: MultiIndex) -> bool:
    """Componentwise ``beta <= alpha``."""
    return all(b <= a for a, b in zip(alpha, beta, strict=True))


def binomial(alpha: MultiIndex, beta: MultiIndex) -> int:
    """Multi-index binomial coefficient, the product of the componentwise ones."""
    result = 1
    for a, b in zip(alpha, beta, strict=True):
        result *= comb(a, b)
    return result


def index_factorial(alpha: MultiIndex) -> int:
    result = 1
    for a in alpha:
        result *= factorial(a)
    return result


def falling_factorial(exponent: MultiIndex, alpha: MultiIndex) -> int:
    """Coefficient produced by ``d^alpha`` acting on ``x^exponent``; zero when ``alpha`` exceeds it."""
    result = 1
    for e, a in zip(exponent, alpha, strict=True):
        if a > e:
            return 0
        for step in range(a):
            result *= e - step
    return result


def lower_indices(alpha: MultiIndex, positions: Sequence[int] | None = None) -> Iterator[MultiIndex]:
    """All ``gamma <= alpha``, optionally only varying the given positions (others stay 0)."""
    ranges = []
    for slot, a in enumerate(alpha):
        if positions is None or slot in positions:
            ranges.append(range(a + 1))
        else:
            ranges.append(range(1))
    for gamma in product(*ranges):
        yield tuple(gamma)


def indices_up_to(size: int, degree: int, positions: Sequence[int] | None = None) -> list[MultiIndex]:
    """All multi-indices of total degree at most ``degree``.

    Only ``positions`` may be nonzero when given. The order is by total degree,
    then reverse lexicographic, so simpler indices come first.
    """
    active = list(range(size)) if positions is None else list(positions)
    found: list[MultiIndex] = []
    for total in range(degree + 1):
        level: list[MultiIndex] = []
        for parts in _compositions(total, len(active)):
            alpha = [0] * size
            for slot, value in zip(active, parts, strict=True):
                alpha[slot] = value
            level.append(tuple(alpha))
        level.sort(reverse=True)
        found.extend(level)
    return found


def _compositions(total: int, count: int) -> Iterator[tuple[int, ...]]:
    if count == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, count - 1):
            yield (first, *rest)


def leibniz_splits(alpha: MultiIndex, parts: int) -> Iterator[tuple[tuple[MultiIndex, ...], int]]:
    """Split ``alpha`` into ``parts`` ordered summands with their multinomial weight.

    ``d^alpha (u_1 ... u_parts) = sum weight * prod d^{gamma_j} u_j`` over the yielded splits.
    """
    if parts == 1:
        yield (alpha,), 1
        return
    for first in lower_indices(alpha):
        rest = sub_indices(alpha, first)
        weight = binomial(alpha, first)
        for tail, tail_weight in leibniz_splits(rest, parts - 1):
            yield (first, *tail), weight * tail_weight
