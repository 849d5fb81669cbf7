"""
Characters of the symmetric group and its class algebra.

Class vectors live in the class algebra Z(C[S_d]) with basis e_eta, the sum of
all permutations of cycle type eta. With this normalization e_(1^d) is the
unit, the counit picks the coefficient of e_(1^d) divided by d!, and the
pairing <e_eta, e_mu> is 1/zeta(eta) on the diagonal.
"""
import csv
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .partitions import (
    Partition, check_same_degree, class_size, dim, enumerate_partitions, zeta,
)
from .permutations import compose, conjugacy_class, cycle_type
from .store import content_hash

logger = logging.getLogger(__name__)


def _beta_set(parts, length):
    return tuple(p + length - 1 - i for i, p in enumerate(parts)) + tuple(
        length - 1 - i for i in range(len(parts), length))


def _shape_from_beta(beta):
    beads = sorted(beta, reverse=True)
    length = len(beads)
    parts = [b - (length - 1 - i) for i, b in enumerate(beads)]
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape, cycle_lengths):
    """Character value on the multiset ``cycle_lengths`` (largest first) of the skew-free shape."""
    if not cycle_lengths:
        return 1 if not shape else 0
    k, rest = cycle_lengths[0], cycle_lengths[1:]
    beta = _beta_set(shape, len(shape))
    occupied = set(beta)
    total = 0
    for bead in beta:
        target = bead - k
        if target < 0 or target in occupied:
            continue
        # each bead jumped over flips the sign of the removed border strip
        crossed = sum(1 for b in beta if target < b < bead)
        smaller = _shape_from_beta([target if b == bead else b for b in beta])
        total += (-1) ** crossed * _murnaghan_nakayama(smaller, rest)
    return total


def character(rho, eta):
    """chi_rho(eta) by the Murnaghan-Nakayama rule on beta-sets."""
    check_same_degree(rho, eta)
    return _murnaghan_nakayama(rho.parts, eta.parts)


@dataclass(frozen=True)
class CharacterTable:
    """Integer matrix chi_rho(eta), rows and columns in canonical order."""

    d: int
    rows: tuple
    cols: tuple
    matrix: tuple

    def value(self, rho, eta):
        return self.matrix[self.rows.index(rho)][self.cols.index(eta)]

    def dimensions(self):
        return tuple(row[-1] for row in self.matrix)

    def as_record(self):
        labels = {
            'd': self.d,
            'rows': [p.text() for p in self.rows],
            'cols': [p.text() for p in self.cols],
            'matrix': [list(row) for row in self.matrix],
        }
        return {**labels, 'sha256': content_hash(labels)}

    @classmethod
    def from_record(cls, record):
        return cls(
            d=record['d'],
            rows=tuple(Partition.parse(p) for p in record['rows']),
            cols=tuple(Partition.parse(p) for p in record['cols']),
            matrix=tuple(tuple(row) for row in record['matrix']),
        )

    def write_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['rho\\eta'] + [p.text() for p in self.cols])
        for rho, row in zip(self.rows, self.matrix):
            writer.writerow([rho.text()] + list(row))


def _character_row(rho):
    return tuple(character(rho, eta) for eta in enumerate_partitions(rho.d))


def compute_character_table(d, jobs=1):
    labels = enumerate_partitions(d)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            matrix = tuple(pool.map(_character_row, labels))
    else:
        matrix = tuple(_character_row(rho) for rho in labels)
    return CharacterTable(d, labels, labels, matrix)


def _verified_record(record):
    payload = {k: record[k] for k in ('d', 'rows', 'cols', 'matrix')}
    return record.get('sha256') == content_hash(payload)


def character_table(d, jobs=1, store=None):
    """
    The full character table of S_d.

    With a ``store`` the table is read from, or written to, the on-disk
    result cache. A stored table whose hash does not match its contents is
    recomputed and rewritten.
    """
    request = {'d': d}
    if store is not None:
        record = store.get('chartable', request)
        if record is not None:
            if _verified_record(record):
                return CharacterTable.from_record(record)
            logger.warning('character table for d=%s failed its hash check; recomputing', d)
    table = compute_character_table(d, jobs=jobs)
    if store is not None:
        store.set('chartable', request, table.as_record())
    return table


@dataclass
class OrthogonalityReport:
    d: int
    row_failures: list = field(default_factory=list)
    column_failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.row_failures and not self.column_failures


def verify_orthogonality(d, table=None):
    """Check both orthogonality relations exactly, naming every failing pair."""
    table = table or character_table(d)
    report = OrthogonalityReport(d)
    labels = table.rows
    for i, rho in enumerate(labels):
        for j, sigma in enumerate(labels):
            inner = sum(
                (Fraction(table.matrix[i][c] * table.matrix[j][c], zeta(eta))
                 for c, eta in enumerate(table.cols)),
                Fraction(0),
            )
            if inner != (1 if i == j else 0):
                report.row_failures.append((rho, sigma))
    for a, eta in enumerate(table.cols):
        for b, mu in enumerate(table.cols):
            total = sum(row[a] * row[b] for row in table.matrix)
            if total != (zeta(eta) if a == b else 0):
                report.column_failures.append((eta, mu))
    return report


class ClassVector:
    """Finitely supported combination of class sums e_eta for a fixed d."""

    __slots__ = ('d', 'coefficients')

    def __init__(self, d, coefficients=None):
        self.d = d
        self.coefficients = {}
        for eta, c in (coefficients or {}).items():
            if eta.d != d:
                raise ValueError(f'{eta} is not a partition of {d}')
            if c:
                self.coefficients[eta] = c

    @classmethod
    def basis(cls, eta):
        return cls(eta.d, {eta: 1})

    def __getitem__(self, eta):
        return self.coefficients.get(eta, 0)

    def support(self):
        return sorted(self.coefficients)

    def __add__(self, other):
        coefficients = dict(self.coefficients)
        for eta, c in other.coefficients.items():
            coefficients[eta] = coefficients.get(eta, 0) + c
        return ClassVector(self.d, coefficients)

    def scale(self, c):
        return ClassVector(self.d, {eta: c * x for eta, x in self.coefficients.items()})

    def __mul__(self, other):
        result = ClassVector(self.d)
        for eta, a in self.coefficients.items():
            for mu, b in other.coefficients.items():
                result = result + class_product(eta, mu).scale(a * b)
        return result

    def __eq__(self, other):
        if not isinstance(other, ClassVector):
            return NotImplemented
        return self.d == other.d and self.coefficients == other.coefficients

    def __repr__(self):
        terms = ', '.join(f'{eta}: {c}' for eta, c in sorted(self.coefficients.items()))
        return f'ClassVector({{{terms}}})'


@lru_cache(maxsize=None)
def class_product(eta, mu):
    """e_eta * e_mu expanded in class sums through the character table."""
    d = check_same_degree(eta, mu)
    scale = Fraction(class_size(eta) * class_size(mu), factorial(d))
    coefficients = {}
    for nu in enumerate_partitions(d):
        total = sum(
            (Fraction(character(rho, eta) * character(rho, mu) * character(rho, nu), dim(rho))
             for rho in enumerate_partitions(d)),
            Fraction(0),
        )
        coefficients[nu] = scale * total
    return ClassVector(d, coefficients)


def class_product_by_convolution(eta, mu):
    """Multiply the class sums element by element; only for small d."""
    d = check_same_degree(eta, mu)
    if d > 4:
        raise ValueError('convolution oracle is limited to d <= 4')
    counts = {}
    for a in conjugacy_class(eta):
        for b in conjugacy_class(mu):
            nu = cycle_type(compose(a, b))
            counts[nu] = counts.get(nu, 0) + 1
    return ClassVector(d, {nu: Fraction(n, class_size(nu)) for nu, n in counts.items()})
