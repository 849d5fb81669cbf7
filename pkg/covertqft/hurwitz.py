"""
Hurwitz numbers of branched covers of a genus g surface.

Values are weighted counts: the number of monodromy tuples divided by d!.
A cover's genus h is fixed by Riemann-Hurwitz; disconnected covers may have
negative h.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .exactalg import USeries, sin_half
from .exceptions import OracleBoundExceeded, PartitionError
from .partitions import Partition, class_size, dim, enumerate_partitions, zeta
from .permutations import commutator, compose, conjugacy_class, cycles, identity, symmetric_group
from .symchar import character
from .tqftcore import SemisimpleData

logger = logging.getLogger(__name__)

BRUTEFORCE_MAX_DEGREE = 4
BRUTEFORCE_MAX_POINTS = 8


@dataclass(frozen=True)
class BranchData:
    """Degree, base genus, the fixed ramification profiles and the number of simple points."""

    d: int
    g: int = 0
    classes: tuple = ()
    s: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'classes', tuple(self.classes))
        if self.d < 1:
            raise PartitionError(f'cover degree must be positive, got {self.d}')
        if self.g < 0 or self.s < 0:
            raise ValueError('base genus and simple point count must be non-negative')
        for eta in self.classes:
            if eta.d != self.d:
                raise PartitionError(f'ramification profile {eta} is not a partition of {self.d}')

    def canonical(self):
        """Same data with the profiles sorted, for memo keys."""
        return BranchData(self.d, self.g, tuple(sorted(self.classes)), self.s)

    def branch_points(self):
        return len(self.classes) + self.s

    def as_request(self):
        return {
            'd': self.d,
            'g': self.g,
            'classes': [eta.text() for eta in self.canonical().classes],
            's': self.s,
        }


@dataclass(frozen=True)
class HurwitzValue:
    value: Fraction
    connected: bool


def riemann_hurwitz_rhs(b):
    return b.d * (2 * b.g - 2) + sum(b.d - len(eta) for eta in b.classes) + b.s


def cover_genus(b):
    """The h with 2h - 2 = d(2g - 2) + sum (d - l(eta_i)) + s, or None on a parity failure."""
    twice = riemann_hurwitz_rhs(b) + 2
    if twice % 2:
        return None
    return twice // 2


@lru_cache(maxsize=None)
def _frobenius(d, g, classes, s):
    if d == 1:
        return Fraction(0) if s else Fraction(1)
    tau = Partition.simple(d)
    total = Fraction(0)
    d_factorial = factorial(d)
    for rho in enumerate_partitions(d):
        dim_rho = dim(rho)
        term = Fraction(d_factorial, dim_rho) ** (2 * g - 2)
        for eta in classes:
            term *= Fraction(class_size(eta) * character(rho, eta), dim_rho)
            if not term:
                break
        if term and s:
            term *= Fraction(class_size(tau) * character(rho, tau), dim_rho) ** s
        total += term
    return total


def hurwitz_disconnected(b):
    """Possibly disconnected count by the Frobenius character formula."""
    if cover_genus(b) is None:
        return HurwitzValue(Fraction(0), connected=False)
    b = b.canonical()
    return HurwitzValue(_frobenius(b.d, b.g, b.classes, b.s), connected=False)


@lru_cache(maxsize=None)
def _merge(blocks, permutation):
    """Join the orbit blocks (a tuple of frozensets) along the cycles of a permutation."""
    merged = list(blocks)
    for cycle in cycles(permutation):
        if len(cycle) < 2:
            continue
        touched = [block for block in merged if block & set(cycle)]
        if len(touched) < 2:
            continue
        union = frozenset().union(*touched)
        merged = [block for block in merged if block not in touched] + [union]
    return tuple(sorted(merged, key=min))


def hurwitz_bruteforce(b, require_transitive=False):
    """
    Count monodromy tuples with product the identity, divided by d!.

    Tuples are folded position by position into states made of the partial
    product and, when transitivity is required, the orbit partition of the
    sheets under every element seen so far.
    """
    if b.d > BRUTEFORCE_MAX_DEGREE or b.branch_points() > BRUTEFORCE_MAX_POINTS:
        raise OracleBoundExceeded(
            f'oracle bound exceeded: brute force is limited to d <= {BRUTEFORCE_MAX_DEGREE} '
            f'and {BRUTEFORCE_MAX_POINTS} branch points, got d={b.d} with {b.branch_points()}'
        )
    d = b.d
    if d == 1 and b.s:
        return HurwitzValue(Fraction(0), connected=require_transitive)

    steps = [('pair', None)] * b.g + [('class', eta) for eta in b.classes]
    if b.s:
        steps += [('class', Partition.simple(d))] * b.s
    start_blocks = tuple(frozenset([i]) for i in range(d)) if require_transitive else None
    states = {(identity(d), start_blocks): 1}

    for kind, eta in steps:
        following = {}
        if kind == 'pair':
            choices = [(commutator(x, y), (x, y)) for x, y in product(symmetric_group(d), repeat=2)]
        else:
            choices = [(x, (x,)) for x in conjugacy_class(eta)]
        for (partial, blocks), count in states.items():
            for element, generators in choices:
                new_blocks = blocks
                if require_transitive:
                    for generator in generators:
                        new_blocks = _merge(new_blocks, generator)
                key = (compose(partial, element), new_blocks)
                following[key] = following.get(key, 0) + count
        states = following

    total = 0
    for (partial, blocks), count in states.items():
        if partial != identity(d):
            continue
        if require_transitive and len(blocks) != 1:
            continue
        total += count
    return HurwitzValue(Fraction(total, factorial(d)), connected=require_transitive)


def _sub_multisets(parts, size):
    """Distinct sub-multisets of ``parts`` summing to ``size``, with their complements."""
    values = sorted(set(parts), reverse=True)
    counts = [parts.count(v) for v in values]
    results = []

    def walk(index, remaining, chosen):
        if index == len(values):
            if remaining == 0:
                rest = []
                for v, c, k in zip(values, counts, chosen):
                    rest.extend([v] * (c - k))
                taken = []
                for v, k in zip(values, chosen):
                    taken.extend([v] * k)
                results.append((Partition.from_parts(taken), Partition.from_parts(rest)))
            return
        for k in range(min(counts[index], remaining // values[index]) + 1):
            walk(index + 1, remaining - k * values[index], chosen + [k])

    walk(0, size, [])
    return results


def _splits(b, d1):
    """Ways to give a block of d1 sheets its share of every profile and of the simple points."""
    per_class = [_sub_multisets(list(eta.parts), d1) for eta in b.classes]
    for choice in product(*per_class):
        inside = tuple(alpha for alpha, _ in choice)
        outside = tuple(beta for _, beta in choice)
        for s1 in range(b.s + 1):
            yield inside, outside, s1


def _tuple_count(d, g, classes, s):
    if d == 0:
        return Fraction(1)
    return factorial(d) * hurwitz_disconnected(BranchData(d, g, classes, s)).value


@lru_cache(maxsize=None)
def _connected_count(d, g, classes, s):
    """Transitive monodromy tuples, by peeling off the orbit of sheet 1."""
    b = BranchData(d, g, classes, s)
    total = _tuple_count(d, g, classes, s)
    for d1 in range(1, d):
        ways = comb(d - 1, d1 - 1)
        for inside, outside, s1 in _splits(b, d1):
            connected = _connected_count(d1, g, tuple(sorted(inside)), s1)
            if not connected:
                continue
            rest = _tuple_count(d - d1, g, outside, s - s1)
            total -= ways * comb(s, s1) * connected * rest
    return total


def hurwitz_connected(b):
    """Count of connected covers, from disconnected counts by inclusion-exclusion."""
    b = b.canonical()
    if cover_genus(b) is None:
        return HurwitzValue(Fraction(0), connected=True)
    count = _connected_count(b.d, b.g, b.classes, b.s)
    return HurwitzValue(count / factorial(b.d), connected=True)


def hurwitz_value(b, connected=False, store=None):
    """
    Hurwitz number through the on-disk result cache.

    Records are ``{d, g, classes, s, connected, value}`` with the value as a
    ``p/q`` string, keyed by the canonical branch data and the flag.
    """
    request = {**b.as_request(), 'connected': connected}
    if store is not None:
        record = store.get('hurwitz', request)
        if record is not None:
            return HurwitzValue(Fraction(record['value']), connected)
    result = hurwitz_connected(b) if connected else hurwitz_disconnected(b)
    if store is not None:
        store.set('hurwitz', request, {**request, 'value': str(result.value)})
    return result


def disconnected_from_connected(b):
    """Rebuild the disconnected count from connected ones through the exponential formula."""
    b = b.canonical()
    return HurwitzValue(_assembled_count(b.d, b.g, b.classes, b.s) / factorial(b.d), connected=False)


@lru_cache(maxsize=None)
def _assembled_count(d, g, classes, s):
    if d == 0:
        return Fraction(0) if s else Fraction(1)
    b = BranchData(d, g, classes, s)
    total = Fraction(0)
    for d1 in range(1, d + 1):
        ways = comb(d - 1, d1 - 1)
        for inside, outside, s1 in _splits(b, d1):
            block = BranchData(d1, g, inside, s1)
            connected = factorial(d1) * hurwitz_connected(block).value
            if not connected:
                continue
            rest = _assembled_count(d - d1, g, tuple(sorted(outside)), s - s1)
            total += ways * comb(s, s1) * connected * rest
    return total


def h_series(d, eta, order):
    """
    Generating series of connected genus 0 base covers with one eta fiber.

    The coefficient of u^N, N = 2h + d + l(eta) - 2, is (-1)^h H_h / N!, where
    H_h counts connected genus h covers with N simple branch points.
    """
    if eta.d != d:
        raise PartitionError(f'{eta} is not a partition of {d}')
    terms = {}
    h = 0
    while True:
        points = 2 * h + d + len(eta) - 2
        if points >= order:
            break
        if points >= 0:
            value = hurwitz_connected(BranchData(d, 0, (eta,), points)).value
            if value:
                terms[points] = (-1) ** h * value / factorial(points)
        h += 1
    return USeries.from_terms(terms, order)


def l_series(k, order):
    """1 / (2 sin(k u / 2)), valuation -1."""
    return sin_half(k, order + 2).inverse()


def burnside(d, g):
    """Unramified count sum over rho of (d!/dim rho)^(2g - 2)."""
    return sum(
        (Fraction(factorial(d), dim(rho)) ** (2 * g - 2) for rho in enumerate_partitions(d)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def dijkgraaf_data(d):
    """
    Degree-0 Hurwitz theory as semisimple data.

    The idempotents are e_rho = (dim rho / d!) sum chi_rho(eta) e_eta and
    e_eta = sum over rho of |C_eta| chi_rho(eta) / dim rho times e_rho.
    """
    labels = enumerate_partitions(d)
    d_factorial = factorial(d)
    to_eta = {}
    from_eta = {}
    for rho in labels:
        to_eta[rho] = {eta: Fraction(dim(rho) * character(rho, eta), d_factorial) for eta in labels}
    for eta in labels:
        from_eta[eta] = {rho: Fraction(class_size(eta) * character(rho, eta), dim(rho)) for rho in labels}
    return SemisimpleData(
        labels=labels,
        lambda_={rho: Fraction(d_factorial, dim(rho)) ** 2 for rho in labels},
        mu={rho: Fraction(1) for rho in labels},
        mubar={rho: Fraction(1) for rho in labels},
        to_eta=to_eta,
        from_eta=from_eta,
        metric={eta: Fraction(zeta(eta)) for eta in labels},
        convention={'name': 'dijkgraaf'},
    )
