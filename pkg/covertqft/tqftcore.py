"""
A semisimple weighted two-level TQFT engine.

A cobordism of genus g with levels (k1, k2), m incoming and n outgoing
circles is a tensor with m covariant (input) indices followed by n
contravariant (output) indices. In the semisimple basis every tensor is
diagonal with entry lambda^(g+n-1) mu^(-k1) mubar^(-k2).

Scalars are duck-typed: Fractions, Gaussian rationals, QRatFunc, USeries and
SLaurent all work, as long as they multiply with each other.
"""
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import NonInvertibleError, VarianceError

logger = logging.getLogger(__name__)


class Basis(enum.Enum):
    ETA = 'eta'
    RHO = 'rho'


def is_zero(value):
    check = getattr(value, 'is_zero', None)
    if callable(check):
        return check()
    return value == 0


def _exact(value):
    return Fraction(value) if isinstance(value, int) else value


def _accumulate(entries, key, value):
    if key in entries:
        entries[key] = entries[key] + value
    else:
        entries[key] = value


def _prune(entries):
    return {key: value for key, value in entries.items() if not is_zero(value)}


@dataclass(frozen=True)
class CobordismSignature:
    g: int = 0
    k1: int = 0
    k2: int = 0
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.g < 0 or self.m < 0 or self.n < 0:
            raise ValueError(f'invalid cobordism signature {self}')

    @property
    def closed(self):
        return self.m == 0 and self.n == 0

    def glued(self, other):
        """Signature after joining one output of ``self`` to one input of ``other``."""
        return CobordismSignature(
            self.g + other.g, self.k1 + other.k1, self.k2 + other.k2,
            self.m + other.m - 1, self.n + other.n - 1,
        )

    def self_glued(self):
        return CobordismSignature(self.g + 1, self.k1, self.k2, self.m - 1, self.n - 1)

    def __str__(self):
        return f'W_{self.m}^{self.n}({self.g}|{self.k1},{self.k2})'


@dataclass(eq=False)
class SemisimpleData:
    """
    Eigenvalue data of a semisimple weighted TQFT.

    ``to_eta[rho][eta]`` expands the idempotent e_rho in the class basis and
    ``from_eta[eta][rho]`` is the inverse expansion. ``metric[eta]`` is the
    diagonal coefficient of the (+,+)-annulus in the class basis.
    """

    labels: tuple
    lambda_: dict
    mu: dict
    mubar: dict
    to_eta: dict
    metric: dict
    from_eta: dict = None
    convention: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.from_eta is None:
            self.from_eta = invert_matrix(self.to_eta, self.labels)

    def metric_in(self, basis):
        return dict(self.metric) if basis is Basis.ETA else dict(self.lambda_)

    def _transform(self, source, target, covariant):
        """Matrix A with new[y] = sum over x of old[x] * A[x][y]."""
        if source is target:
            return None
        if target is Basis.ETA:
            if covariant:
                return {rho: {eta: self.from_eta[eta][rho] for eta in self.labels} for rho in self.labels}
            return self.to_eta
        if covariant:
            return {eta: {rho: self.to_eta[rho][eta] for rho in self.labels} for eta in self.labels}
        return self.from_eta


def invert_matrix(matrix, labels):
    """Gauss-Jordan inverse of a square matrix given as nested dicts over ``labels``."""
    size = len(labels)
    rows = [[_exact(matrix[a][b]) for b in labels] + [Fraction(int(i == j)) for j in range(size)]
            for i, a in enumerate(labels)]
    for column in range(size):
        pivot = next((r for r in range(column, size) if not is_zero(rows[r][column])), None)
        if pivot is None:
            raise NonInvertibleError('basis change matrix is singular')
        rows[column], rows[pivot] = rows[pivot], rows[column]
        factor = rows[column][column]
        rows[column] = [x / factor for x in rows[column]]
        for r in range(size):
            if r != column and not is_zero(rows[r][column]):
                scale = rows[r][column]
                rows[r] = [x - scale * y for x, y in zip(rows[r], rows[column])]
    return {a: {b: rows[i][size + j] for j, b in enumerate(labels)} for i, a in enumerate(labels)}


@dataclass(eq=False)
class Tensor:
    signature: CobordismSignature
    entries: dict
    basis: Basis
    labels: tuple

    @property
    def m(self):
        return self.signature.m

    @property
    def n(self):
        return self.signature.n

    def is_output(self, position):
        return self.m <= position < self.m + self.n

    def is_input(self, position):
        return 0 <= position < self.m

    def scalar(self):
        if not self.signature.closed:
            raise ValueError(f'{self.signature} is not closed')
        return self.entries.get((), 0)

    def __getitem__(self, key):
        return self.entries.get(tuple(key), 0)

    def equals(self, other):
        """Exact equality of entries, treating missing entries as zero."""
        if self.signature != other.signature or self.basis is not other.basis:
            return False
        for key in set(self.entries) | set(other.entries):
            if self[key] != other[key]:
                return False
        return True


def tensor_of(sig, ss):
    """The diagonal tensor of a cobordism in the semisimple basis."""
    entries = {}
    power = sig.g + sig.n - 1
    for rho in ss.labels:
        if power < 0 and is_zero(ss.lambda_[rho]):
            raise NonInvertibleError(f'lambda for {rho} is not invertible, {sig} needs its inverse')
        value = ss.lambda_[rho] ** power
        if sig.k1:
            value = value * ss.mu[rho] ** (-sig.k1)
        if sig.k2:
            value = value * ss.mubar[rho] ** (-sig.k2)
        _accumulate(entries, (rho,) * (sig.m + sig.n), value)
    return Tensor(sig, _prune(entries), Basis.RHO, tuple(ss.labels))


def change_basis(t, ss, target):
    if t.basis is target:
        return t
    entries = t.entries
    for position in range(t.m + t.n):
        matrix = ss._transform(t.basis, target, covariant=t.is_input(position))
        transformed = {}
        for key, value in entries.items():
            for label, coefficient in matrix[key[position]].items():
                if is_zero(coefficient):
                    continue
                new_key = key[:position] + (label,) + key[position + 1:]
                _accumulate(transformed, new_key, value * coefficient)
        entries = _prune(transformed)
    return Tensor(t.signature, entries, target, t.labels)


def glue(t1, out_pos, t2, in_pos):
    """
    Contract output ``out_pos`` of ``t1`` with input ``in_pos`` of ``t2``.

    Positions are absolute (inputs first). The result lists the inputs of
    ``t1``, the remaining inputs of ``t2``, the remaining outputs of ``t1``
    and then the outputs of ``t2``.
    """
    if not t1.is_output(out_pos):
        raise VarianceError(
            f'position {out_pos} of {t1.signature} is not an output; raise the index before gluing')
    if not t2.is_input(in_pos):
        raise VarianceError(
            f'position {in_pos} of {t2.signature} is not an input; lower the index before gluing')
    if t1.basis is not t2.basis:
        raise ValueError('tensors must be in the same basis to be glued')

    by_contracted = {}
    for key, value in t2.entries.items():
        by_contracted.setdefault(key[in_pos], []).append((key, value))

    entries = {}
    for key1, value1 in t1.entries.items():
        label = key1[out_pos]
        inputs1, outputs1 = key1[:t1.m], key1[t1.m:out_pos] + key1[out_pos + 1:]
        for key2, value2 in by_contracted.get(label, ()):
            inputs2 = key2[:in_pos] + key2[in_pos + 1:t2.m]
            new_key = inputs1 + inputs2 + outputs1 + key2[t2.m:]
            _accumulate(entries, new_key, value1 * value2)
    return Tensor(t1.signature.glued(t2.signature), _prune(entries), t1.basis, t1.labels)


def self_glue(t, out_pos, in_pos):
    """Trace an output of ``t`` against one of its inputs."""
    if not t.is_output(out_pos):
        raise VarianceError(f'position {out_pos} of {t.signature} is not an output')
    if not t.is_input(in_pos):
        raise VarianceError(f'position {in_pos} of {t.signature} is not an input')
    entries = {}
    for key, value in t.entries.items():
        if key[out_pos] != key[in_pos]:
            continue
        new_key = tuple(label for i, label in enumerate(key) if i not in (out_pos, in_pos))
        _accumulate(entries, new_key, value)
    return Tensor(t.signature.self_glued(), _prune(entries), t.basis, t.labels)


def raise_index(t, position, metric):
    """Turn input ``position`` into the last output, weighting by ``metric``."""
    if not t.is_input(position):
        raise VarianceError(f'position {position} of {t.signature} is not an input')
    entries = {}
    for key, value in t.entries.items():
        label = key[position]
        new_key = key[:position] + key[position + 1:] + (label,)
        entries[new_key] = value * metric[label]
    sig = t.signature
    return Tensor(CobordismSignature(sig.g, sig.k1, sig.k2, sig.m - 1, sig.n + 1),
                  entries, t.basis, t.labels)


def lower_index(t, position, metric):
    """Turn output ``position`` into the last input, dividing by ``metric``."""
    if not t.is_output(position):
        raise VarianceError(f'position {position} of {t.signature} is not an output')
    entries = {}
    for key, value in t.entries.items():
        label = key[position]
        weight = metric[label]
        if is_zero(weight):
            raise NonInvertibleError(f'metric entry for {label} is not invertible')
        rest = key[:position] + key[position + 1:]
        new_key = rest[:t.m] + (label,) + rest[t.m:]
        entries[new_key] = value / weight
    sig = t.signature
    return Tensor(CobordismSignature(sig.g, sig.k1, sig.k2, sig.m + 1, sig.n - 1),
                  entries, t.basis, t.labels)


@dataclass
class FrobeniusReport:
    failures: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def fail(self, axiom, witness):
        self.failures.setdefault(axiom, witness)


def _sum(values):
    total = 0
    for value in values:
        total = value if total == 0 else total + value
    return total


def check_frobenius(ss):
    """
    Check the Frobenius algebra axioms of the level (0,0) sector in the class basis.

    The product is read off the three-holed sphere with all indices down,
    the last one raised with ``ss.metric``, so a wrong metric shows up.
    """
    labels = ss.labels
    lowered = change_basis(tensor_of(CobordismSignature(0, 0, 0, 3, 0), ss), ss, Basis.ETA)
    pairing = change_basis(tensor_of(CobordismSignature(0, 0, 0, 2, 0), ss), ss, Basis.ETA)
    unit = change_basis(tensor_of(CobordismSignature(0, 0, 0, 0, 1), ss), ss, Basis.ETA)

    def product(a, b, c):
        return lowered[(a, b, c)] * ss.metric[c]

    report = FrobeniusReport()
    for a in labels:
        for b in labels:
            for c in labels:
                if product(a, b, c) != product(b, a, c):
                    report.fail('commutativity', (a, b, c))
                left = _sum(product(a, b, x) * pairing[(x, c)] for x in labels)
                right = _sum(product(b, c, x) * pairing[(a, x)] for x in labels)
                if left != right:
                    report.fail('frobenius', (a, b, c))
                for e in labels:
                    left = _sum(product(a, b, x) * product(x, c, e) for x in labels)
                    right = _sum(product(b, c, x) * product(a, x, e) for x in labels)
                    if left != right:
                        report.fail('associativity', (a, b, c, e))
        for c in labels:
            value = _sum(unit[(x,)] * product(x, a, c) for x in labels)
            if value != (1 if a == c else 0):
                report.fail('unit', (a, c))
    if report.failures:
        logger.info('Frobenius check failed: %s', sorted(report.failures))
    return report
