"""
Elements of S_d for the brute-force oracles.

A permutation is a tuple ``p`` with ``p[i]`` the image of sheet ``i``.
Composition ``compose(a, b)`` applies ``b`` first, then ``a``.
"""
from functools import lru_cache
from itertools import permutations

from .partitions import Partition


def identity(d):
    return tuple(range(d))


def compose(a, b):
    return tuple(a[i] for i in b)


def inverse(p):
    result = [0] * len(p)
    for i, image in enumerate(p):
        result[image] = i
    return tuple(result)


def commutator(a, b):
    """a b a^-1 b^-1."""
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def cycles(p):
    seen = set()
    result = []
    for start in range(len(p)):
        if start in seen:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = p[i]
        result.append(tuple(cycle))
    return result


def cycle_type(p):
    return Partition.from_parts(len(c) for c in cycles(p))


@lru_cache(maxsize=None)
def symmetric_group(d):
    return tuple(permutations(range(d)))


@lru_cache(maxsize=None)
def conjugacy_class(eta):
    """All permutations of cycle type eta, in lexicographic order."""
    return tuple(p for p in symmetric_group(eta.d) if cycle_type(p) == eta)


def conjugacy_classes(d):
    """Mapping cycle type -> elements, found by sorting all of S_d."""
    classes = {}
    for p in symmetric_group(d):
        classes.setdefault(cycle_type(p), []).append(p)
    return classes


def transpositions(d):
    return conjugacy_class(Partition.simple(d))
