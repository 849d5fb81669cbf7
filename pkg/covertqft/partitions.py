"""
Partitions and Young-diagram statistics.

The canonical order of partitions of d is reverse-lexicographic, so for d = 4
the order is (4), (3,1), (2,2), (2,1,1), (1,1,1,1). Every table and matrix in
the package is indexed in this order.
"""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from math import factorial, prod

import pyparsing as pp

from .exactalg import QRatFunc
from .exceptions import InternalConsistencyError, PartitionError


@total_ordering
class Partition:
    """Immutable weakly decreasing sequence of positive integers."""

    __slots__ = ('parts', 'd')

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise PartitionError(f'partition parts must be positive, got {parts}')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PartitionError(f'partition parts must be weakly decreasing, got {parts}')
        object.__setattr__(self, 'parts', parts)
        object.__setattr__(self, 'd', sum(parts))

    def __setattr__(self, name, value):
        raise AttributeError('Partition is immutable')

    @classmethod
    def from_parts(cls, parts):
        """Build from parts in any order."""
        return cls(sorted(parts, reverse=True))

    @classmethod
    def one_row(cls, d):
        return cls((d,)) if d else cls()

    @classmethod
    def one_column(cls, d):
        return cls((1,) * d)

    @classmethod
    def simple(cls, d):
        """The class of a transposition, (2, 1^(d-2))."""
        if d < 2:
            raise PartitionError(f'S_{d} has no transpositions')
        return cls((2,) + (1,) * (d - 2))

    @classmethod
    def parse(cls, text):
        return parse_partition(text)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    @property
    def length(self):
        return len(self.parts)

    def sort_key(self):
        return tuple(-p for p in self.parts)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __lt__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f'Partition{self.parts!r}'

    def __str__(self):
        return self.compact()

    def text(self):
        """Additive form, e.g. ``3+2+2+1+1``."""
        return '+'.join(str(p) for p in self.parts) if self.parts else '0'

    def compact(self):
        """Exponent form, e.g. ``(3,2^2,1^2)``."""
        groups = []
        for value, count in multiplicities(self).items():
            groups.append(str(value) if count == 1 else f'{value}^{count}')
        return '(' + ','.join(groups) + ')'


def _setup_partition_grammar():
    positive = pp.Regex(r'[1-9]\d*').setParseAction(lambda t: int(t[0]))

    additive = pp.delimitedList(positive, delim='+')
    additive.setParseAction(lambda t: list(t))

    group = positive + pp.Optional(pp.Literal('^').suppress() + positive, default=1)
    group.setParseAction(lambda t: [[t[0]] * t[1]])
    compact = (pp.Literal('(').suppress()
               + pp.Optional(pp.delimitedList(group, delim=','))
               + pp.Literal(')').suppress())
    compact.setParseAction(lambda t: [p for g in t for p in g])

    zero = pp.Literal('0').setParseAction(lambda t: [])
    return (compact | zero | additive) + pp.StringEnd()


PARTITION_PARSER = _setup_partition_grammar()


def parse_partition(text):
    """Parse ``3+2+2+1+1``, ``(3,2^2,1^2)`` or ``0``/``()`` for the empty partition."""
    try:
        tokens = PARTITION_PARSER.parseString(text.strip())
    except pp.ParseException as exc:
        raise PartitionError(f'malformed partition {text!r}: {exc}') from exc
    return Partition.from_parts(tokens.asList())


@lru_cache(maxsize=None)
def enumerate_partitions(d):
    """All partitions of d in canonical (reverse-lexicographic) order."""
    if d < 0:
        raise PartitionError(f'cannot enumerate partitions of {d}')
    result = []

    def extend(remaining, largest, prefix):
        if remaining == 0:
            result.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            extend(remaining - part, part, prefix + (part,))

    extend(d, d, ())
    return tuple(result)


@lru_cache(maxsize=None)
def partition_count(d):
    """p(d) by Euler's pentagonal-number recurrence."""
    if d < 0:
        return 0
    if d == 0:
        return 1
    total = 0
    k = 1
    while True:
        first = k * (3 * k - 1) // 2
        if first > d:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(d - first)
        second = k * (3 * k + 1) // 2
        if second <= d:
            total += sign * partition_count(d - second)
        k += 1
    return total


def conjugate(eta):
    if not eta.parts:
        return eta
    return Partition(tuple(sum(1 for p in eta.parts if p > j) for j in range(eta.parts[0])))


def multiplicities(eta):
    """Ordered mapping part value -> multiplicity, largest part first."""
    return dict(Counter(eta.parts))


def zeta(eta):
    """Order of the centralizer of a permutation of cycle type eta."""
    return prod(factorial(m) * value ** m for value, m in multiplicities(eta).items())


def class_size(eta):
    return factorial(eta.d) // zeta(eta)


def check_same_degree(*partitions):
    degrees = {p.d for p in partitions}
    if len(degrees) > 1:
        names = ', '.join(str(p) for p in partitions)
        raise PartitionError(f'partitions {names} have different sizes')
    return degrees.pop() if degrees else 0


@dataclass(frozen=True)
class CellStats:
    hooklengths: tuple
    total_content: int
    n_value: int


def boxes(eta):
    """(row, column) of each box, both 1-based, row by row."""
    return [(row, column) for row, length in enumerate(eta.parts, start=1)
            for column in range(1, length + 1)]


@lru_cache(maxsize=None)
def cell_stats(eta):
    """
    Hooklengths, total content and n(eta).

    The content of a box is its column minus its row, so boxes to the right
    of the diagonal count positively and c(eta) = n(eta') - n(eta).
    """
    transposed = conjugate(eta)
    hooks = []
    content = 0
    n_value = 0
    for row, column in boxes(eta):
        arm = eta.parts[row - 1] - column
        leg = transposed.parts[column - 1] - row
        hooks.append(arm + leg + 1)
        content += column - row
        n_value += row - 1
    return CellStats(tuple(sorted(hooks)), content, n_value)


def n_function(eta):
    return cell_stats(eta).n_value


@lru_cache(maxsize=None)
def dim(rho):
    """Dimension of the irreducible representation rho by the hooklength formula."""
    hook_product = prod(cell_stats(rho).hooklengths)
    value, remainder = divmod(factorial(rho.d), hook_product)
    if remainder:
        raise InternalConsistencyError(
            f'hooklength formula gave {factorial(rho.d)}/{hook_product} for {rho}'
        )
    return value


def Q_integer(h):
    """The Q-integer 1 + Q + ... + Q^(h-1) as a polynomial in q = Q^(1/2)."""
    return QRatFunc.Q_terms({j: 1 for j in range(h)})


def one_minus_Q_power(h):
    return QRatFunc.Q_terms({0: 1, h: -1})


@lru_cache(maxsize=None)
def q_dim(rho):
    """d! * prod (1 - Q)/(1 - Q^h) over the boxes, as a function of q."""
    denominator = QRatFunc(1)
    for h in cell_stats(rho).hooklengths:
        if h > 1:
            denominator = denominator * Q_integer(h)
    return QRatFunc(factorial(rho.d)) / denominator


@lru_cache(maxsize=None)
def schur_q(rho):
    """Principal specialization Q^n(rho) * prod 1/(1 - Q^h)."""
    denominator = QRatFunc(1)
    for h in cell_stats(rho).hooklengths:
        denominator = denominator * one_minus_Q_power(h)
    return QRatFunc.Q_power(n_function(rho)) / denominator
