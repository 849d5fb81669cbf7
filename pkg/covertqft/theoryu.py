"""
The weighted TQFT of admissible covers: closed formulas and their checks.

Two regimes are covered. On the anti-diagonal s1 = s, s2 = -s every
invariant is an exact rational function of Q = q^2 times a monomial in s;
the semisimple data of that regime is fixed by a consistency search over a
small set of sign and normalization conventions. In the full-torus regime
only separable invariants (a rational function of s1, s2 times a u-series)
are produced: the pair-of-pants generator and the Calabi-Yau caps.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .exactalg import (
    I, BivariatePoly, BivariateRatFunc, GaussianRational, QRatFunc, SFactor, SLaurent, USeries,
    cot_half, q_to_u, sin_half,
)
from .exceptions import ConventionError, NonInvertibleError, PartitionError
from .hurwitz import BranchData, h_series, hurwitz_disconnected, l_series
from .partitions import (
    Partition, conjugate, dim, enumerate_partitions, multiplicities, n_function, q_dim, zeta,
)
from .symchar import ClassVector, character, class_product
from .tqftcore import (
    Basis, CobordismSignature, SemisimpleData, change_basis, glue, raise_index, self_glue, tensor_of,
)

logger = logging.getLogger(__name__)

SIDES = ('s1', 's2')

# order of the u-series comparisons made while choosing a convention
CONVENTION_CHECK_ORDER = 8


@dataclass(frozen=True)
class InvariantKey:
    d: int
    g: int = 0
    k1: int = 0
    k2: int = 0
    inputs: tuple = ()
    outputs: tuple = ()

    def __post_init__(self):
        for eta in self.inputs + self.outputs:
            if eta.d != self.d:
                raise PartitionError(f'{eta} is not a partition of {self.d}')

    def signature(self):
        return CobordismSignature(self.g, self.k1, self.k2, len(self.inputs), len(self.outputs))

    def as_dict(self):
        return {
            'd': self.d, 'g': self.g, 'k1': self.k1, 'k2': self.k2,
            'inputs': [eta.text() for eta in self.inputs],
            'outputs': [eta.text() for eta in self.outputs],
        }


@dataclass(frozen=True)
class AntidiagConvention:
    """
    One candidate for the anti-diagonal semisimple data.

    ``normalization`` picks the prefactor of e_rho in the class basis:
    ``dim`` is dim(rho) chi, ``dim_s`` is (dim(rho)/d!) s^(l-d) chi and
    ``dim_is`` is (dim(rho)/d!) (is)^(l-d) chi. ``level_sign`` is the sign
    epsilon in Q^(epsilon (n(rho) k1 + n(rho') k2)) and ``mubar_sign`` the
    sign sigma in mubar = (sigma s)^d (dim_Q/dim) Q^(-epsilon n(rho')).
    """

    normalization: str
    level_sign: int
    mubar_sign: int

    def as_dict(self):
        return {
            'normalization': self.normalization,
            'level_sign': self.level_sign,
            'mubar_sign': self.mubar_sign,
        }


NORMALIZATIONS = ('dim', 'dim_s', 'dim_is')
# -1 before +1, so a sign nothing observes resolves to -1
CANDIDATES = tuple(
    AntidiagConvention(normalization, level_sign, mubar_sign)
    for normalization in NORMALIZATIONS
    for level_sign in (-1, 1)
    for mubar_sign in (-1, 1)
)


def undetermined_signs(d):
    """
    Signs of the convention that no invariant of degree d depends on.

    The level sign multiplies n(rho) and n(rho'), which all vanish for d = 1;
    the mubar sign enters as sigma^d.
    """
    signs = []
    if d == 1:
        signs.append('level_sign')
    if d % 2 == 0:
        signs.append('mubar_sign')
    return signs


@dataclass(frozen=True)
class AntidiagValue:
    """``s_factor`` times the rational function ``q_part`` of q = Q^(1/2)."""

    s_factor: SFactor
    q_part: QRatFunc

    @classmethod
    def zero(cls):
        return cls(SFactor(0, 1), QRatFunc(0))

    def is_zero(self):
        return self.q_part.is_zero()

    def at_q_one(self):
        """Coefficient of s^exponent at Q = 1."""
        return self.s_factor.sign * self.q_part.evaluate_at_one()

    def as_u_series(self, order):
        return q_to_u(self.q_part, order) * self.s_factor.sign

    def as_slaurent(self):
        if self.is_zero():
            return SLaurent()
        return SLaurent.monomial(self.q_part * self.s_factor.sign, self.s_factor.exponent)

    def __str__(self):
        if self.is_zero():
            return '0'
        if self.q_part == 1:
            return str(self.s_factor)
        if self.s_factor == SFactor(0, 1):
            return str(self.q_part)
        return f'{self.s_factor}*({self.q_part})'


@dataclass(frozen=True)
class FullTorusSeries:
    """Separable invariant ``s_part(s1, s2) * u_part(u)``."""

    s_part: BivariateRatFunc
    u_part: USeries

    def antidiagonal(self):
        """SLaurent in s with u-series coefficients."""
        return self.s_part.antidiagonal().map_coefficients(lambda c: self.u_part * c)

    def __mul__(self, other):
        return FullTorusSeries(self.s_part * other.s_part, self.u_part * other.u_part)

    def scale(self, c):
        return FullTorusSeries(self.s_part * c, self.u_part)

    def agrees_with(self, other):
        if self.u_part.is_zero() or self.s_part.is_zero():
            return other.u_part.is_zero() or other.s_part.is_zero()
        return self.s_part == other.s_part and self.u_part.agrees_with(other.u_part)

    def __str__(self):
        return f'({self.s_part}) * ({self.u_part})'


@dataclass(eq=False)
class AntidiagSemisimpleData(SemisimpleData):
    convention_object: AntidiagConvention = None


def _parity_sign(exponent):
    """(-1)^exponent as an int, for exponents of either sign."""
    return -1 if exponent % 2 else 1


def _s_power(exponent, imaginary=False):
    """s^exponent, or (is)^exponent when ``imaginary``."""
    return SLaurent.monomial(I ** exponent if imaginary else GaussianRational(1), exponent)


def _dim_ratio(rho):
    """dim_Q(rho) / dim(rho)."""
    return q_dim(rho) * Fraction(1, dim(rho))


def antid_closed(d, g, k1, k2, convention=None):
    """
    Closed anti-diagonal invariant of the genus g surface at levels (k1, k2).

    Equal to sign * s^b * sum over rho of (d!/dim)^(2g-2) (dim/dim_Q)^(k1+k2)
    Q^(epsilon (n(rho) k1 + n(rho') k2)) with b = d(2g - 2 - k1 - k2).
    """
    if d < 1:
        raise ValueError('antid_closed needs d >= 1')
    convention = convention or semisimple_data_antid(d).convention_object
    epsilon = convention.level_sign
    total = QRatFunc(0)
    for rho in enumerate_partitions(d):
        term = QRatFunc(Fraction(factorial(d), dim(rho)) ** (2 * g - 2))
        if k1 + k2:
            term = term * _dim_ratio(rho) ** (-(k1 + k2))
        exponent = epsilon * (n_function(rho) * k1 + n_function(conjugate(rho)) * k2)
        if exponent:
            term = term * QRatFunc.Q_power(exponent)
        total = total + term
    sign = _parity_sign(d * (g - 1)) * convention.mubar_sign ** abs(d * k2)
    return AntidiagValue(SFactor(d * (2 * g - 2 - k1 - k2), sign), total)


def level00_coefficient(d, g, classes):
    """
    Degree-0 level (0,0) coefficient (-s^2)^(hbar - 1) H.

    hbar is the genus at which the virtual dimension vanishes and H the
    possibly disconnected Hurwitz number with no simple points. A parity
    failure gives an exact zero.
    """
    twice = d * (2 * g - 2 + len(classes)) - sum(len(eta) for eta in classes)
    if twice % 2:
        return AntidiagValue.zero()
    value = hurwitz_disconnected(BranchData(d, g, tuple(classes), 0)).value
    if not value:
        return AntidiagValue.zero()
    half = twice // 2
    return AntidiagValue(SFactor(twice, _parity_sign(half)), QRatFunc(value))


def _normalized_basis(d, normalization):
    """to_eta and from_eta for one normalization of the idempotents."""
    labels = enumerate_partitions(d)

    def prefactor(rho):
        if normalization == 'dim':
            return Fraction(dim(rho))
        return Fraction(dim(rho), factorial(d))

    def weight(exponent):
        if normalization == 'dim':
            return SLaurent.monomial(1)
        return _s_power(exponent, imaginary=normalization == 'dim_is')

    # column orthogonality inverts chi_rho(eta) up to 1/zeta(eta)
    to_eta = {rho: {eta: weight(len(eta) - d) * (prefactor(rho) * character(rho, eta)) for eta in labels}
              for rho in labels}
    from_eta = {eta: {rho: weight(d - len(eta)) * (Fraction(character(rho, eta), zeta(eta)) / prefactor(rho))
                      for rho in labels}
                for eta in labels}
    return to_eta, from_eta


def _antid_metric(d):
    return {eta: SLaurent.monomial(Fraction(zeta(eta) * (-1) ** len(eta)), 2 * len(eta))
            for eta in enumerate_partitions(d)}


def _lambda_from_counit(d, to_eta):
    """lambda_rho = 1 / counit(e_rho), the counit taken from the degree-0 caps."""
    counit = {eta: level00_coefficient(d, 0, [eta]).as_slaurent() for eta in enumerate_partitions(d)}
    lambda_ = {}
    for rho, row in to_eta.items():
        value = SLaurent()
        for eta, c in row.items():
            value = value + c * counit[eta]
        lambda_[rho] = value.inverse()
    return lambda_


def _build_data(d, convention, to_eta, from_eta, lambda_):
    labels = enumerate_partitions(d)
    epsilon = convention.level_sign
    mu, mubar = {}, {}
    for rho in labels:
        ratio = _dim_ratio(rho)
        mu[rho] = SLaurent.monomial(ratio * QRatFunc.Q_power(-epsilon * n_function(rho)), d)
        mubar[rho] = SLaurent.monomial(
            ratio * QRatFunc.Q_power(-epsilon * n_function(conjugate(rho))) * convention.mubar_sign ** d, d)
    return AntidiagSemisimpleData(
        labels=labels,
        lambda_=lambda_,
        mu=mu,
        mubar=mubar,
        to_eta=to_eta,
        from_eta=from_eta,
        metric=_antid_metric(d),
        convention={**convention.as_dict(), 'undetermined': undetermined_signs(d)},
        convention_object=convention,
    )


def _level00_mismatch(d, ss):
    """First (inputs) whose degree-0 engine value differs from the Hurwitz sector, or None."""
    labels = enumerate_partitions(d)
    for arity in (1, 2, 3):
        tensor = change_basis(tensor_of(CobordismSignature(0, 0, 0, arity, 0), ss), ss, Basis.ETA)
        for key in _sorted_tuples(labels, arity):
            if tensor[key] != level00_coefficient(d, 0, list(key)).as_slaurent():
                return key
    return None


def _sorted_tuples(labels, arity):
    if arity == 0:
        yield ()
        return
    for i, label in enumerate(labels):
        for rest in _sorted_tuples(labels[i:], arity - 1):
            yield (label,) + rest


def _series_of(value, order):
    """An SLaurent with exact coefficients as an SLaurent with u-series coefficients."""
    return value.map_coefficients(lambda c: q_to_u(QRatFunc.coerce(c), order))


def _slaurent_series_agree(a, b):
    for exponent in set(a.terms) | set(b.terms):
        x, y = a.terms.get(exponent), b.terms.get(exponent)
        if x is None:
            x, y = y, x
        if y is None:
            if not x.is_zero():
                return False
        elif not x.agrees_with(y):
            return False
    return True


def _cap_signature(side):
    if side not in SIDES:
        raise ValueError(f'side must be one of {SIDES}, got {side!r}')
    return CobordismSignature(0, 0, -1, 1, 0) if side == 's1' else CobordismSignature(0, -1, 0, 1, 0)


def _cap_vector(ss, side):
    tensor = change_basis(tensor_of(_cap_signature(side), ss), ss, Basis.ETA)
    return {eta: tensor[(eta,)] for eta in ss.labels}


def _cap_mismatches(ss, d, order):
    mismatches = []
    for side in SIDES:
        vector = _cap_vector(ss, side)
        for eta in ss.labels:
            engine = _series_of(SLaurent.coerce(vector[eta]), order)
            expected = cy_cap(d, eta, order, side).antidiagonal()
            if not _slaurent_series_agree(engine, expected):
                mismatches.append((side, eta))
    return mismatches


CLOSED_GRID = ((0, 0, 0), (1, 0, 0), (2, 0, 0), (0, -1, 0), (0, 0, -1), (1, 1, -1), (2, -1, 1), (0, -1, -1))


def _closed_agrees(d, ss, convention, g, k1, k2):
    engine = tensor_of(CobordismSignature(g, k1, k2, 0, 0), ss).scalar()
    return SLaurent.coerce(engine) == antid_closed(d, g, k1, k2, convention).as_slaurent()


def _closed_mismatch(d, ss, convention):
    for g, k1, k2 in CLOSED_GRID:
        if not _closed_agrees(d, ss, convention, g, k1, k2):
            return (g, k1, k2)
    return None


def check_closed_antid(d, genera=range(4), levels=(-1, 0, 1)):
    """Points (g, k1, k2) where antid_closed differs from the engine's closed surface."""
    ss = semisimple_data_antid(d)
    return [
        (g, k1, k2)
        for g in genera for k1 in levels for k2 in levels
        if not _closed_agrees(d, ss, ss.convention_object, g, k1, k2)
    ]


@lru_cache(maxsize=None)
def semisimple_data_antid(d):
    """
    Anti-diagonal semisimple data, with the convention fixed by consistency.

    Candidates are tried in the order of ``CANDIDATES``; the first one whose
    degree-0 sector matches the Hurwitz numbers, whose Calabi-Yau caps match
    the sine-product formula on both sides, whose closed invariants match
    ``antid_closed`` and which satisfies the gluing axioms wins.
    """
    if d < 1:
        raise ValueError('semisimple_data_antid needs d >= 1')
    rejected = {}
    bases = {}
    for convention in CANDIDATES:
        if convention.normalization not in bases:
            to_eta, from_eta = _normalized_basis(d, convention.normalization)
            try:
                lambda_ = _lambda_from_counit(d, to_eta)
            except NonInvertibleError:
                bases[convention.normalization] = None
            else:
                base = _build_data(d, convention, to_eta, from_eta, lambda_)
                witness = _level00_mismatch(d, base)
                bases[convention.normalization] = None if witness else (to_eta, from_eta, lambda_)
                if witness:
                    rejected[convention.normalization] = f'degree-0 sector differs at {witness}'
        if bases[convention.normalization] is None:
            continue
        ss = _build_data(d, convention, *bases[convention.normalization])
        mismatches = _cap_mismatches(ss, d, CONVENTION_CHECK_ORDER)
        if mismatches:
            rejected[str(convention.as_dict())] = f'cap mismatch at {mismatches[0]}'
            continue
        witness = _closed_mismatch(d, ss, convention)
        if witness:
            rejected[str(convention.as_dict())] = f'closed invariant mismatch at {witness}'
            continue
        report = _check_gluing(d, ss, samples=2, seed=d)
        if not report.passed:
            rejected[str(convention.as_dict())] = f'gluing failure {report.failures[0]}'
            continue
        logger.info('anti-diagonal convention for d=%s: %s', d, convention.as_dict())
        return ss
    raise ConventionError(f'no anti-diagonal convention is consistent for d={d}: {rejected}')


def pair_series(d, order):
    """The level (0,0) pair of pants generator, (s1 + s2)/(2 s1 s2) (d cot(du/2) - cot(u/2))."""
    if d < 2:
        raise ValueError('pair_series needs d >= 2')
    s_part = BivariateRatFunc(BivariatePoly.s1() + BivariatePoly.s2(),
                              BivariatePoly({(1, 1): 2}))
    u_part = cot_half(d, order) * d - cot_half(1, order)
    return FullTorusSeries(s_part, u_part)


def _cap_s_part(sign, weight, length, side):
    exponent = (length, 0) if side == 's1' else (0, length)
    return BivariateRatFunc(BivariatePoly.constant(sign), BivariatePoly({exponent: weight}))


def cy_cap(d, eta, order, side='s1'):
    """
    Calabi-Yau cap at level (0,-1) (side ``s1``) or (-1,0) (side ``s2``).

    (-1)^(d - l) (2 sin(u/2))^d / (s^l zeta(eta) prod 2 sin(eta_i u/2)),
    with s the equivariant parameter of the chosen side.
    """
    if eta.d != d:
        raise PartitionError(f'{eta} is not a partition of {d}')
    _cap_signature(side)
    working = order + 2 * len(eta) + 2
    u_part = sin_half(1, working) ** d
    for part in eta:
        u_part = u_part * sin_half(part, working).inverse()
    s_part = _cap_s_part((-1) ** (d - len(eta)), zeta(eta), len(eta), side)
    return FullTorusSeries(s_part, u_part.truncate(order))


def cy_cap_connected(d, order, side='s1'):
    """Connected cap; nonzero only on the one-part profile (d)."""
    _cap_signature(side)
    working = order + 4
    u_part = sin_half(1, working) ** d * sin_half(d, working).inverse()
    s_part = _cap_s_part((-1) ** (d - 1), d, 1, side)
    return FullTorusSeries(s_part, u_part.truncate(order))


def _set_partitions(items):
    """Set partitions of a tuple, each a list of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        yield [(first,)] + smaller
        for i, block in enumerate(smaller):
            yield smaller[:i] + [(first,) + block] + smaller[i + 1:]


def _automorphisms(eta):
    return prod(factorial(m) for m in multiplicities(eta).values())


def _sub_profile(eta, block):
    return Partition.from_parts(eta.parts[i] for i in block)


def _labelled_cap(eta, order, side):
    """Disconnected cap with its parts told apart, on the anti-diagonal."""
    return cy_cap(eta.d, eta, order, side).scale(_automorphisms(eta)).antidiagonal()


def _sum_over_set_partitions(eta, piece, weight):
    """Sum over set partitions pi of the parts of eta of weight(|pi|) prod_B piece(eta_B)."""
    pieces = {}
    total = SLaurent()
    for blocks in _set_partitions(tuple(range(len(eta)))):
        term = SLaurent.monomial(weight(len(blocks)))
        for block in blocks:
            profile = _sub_profile(eta, block)
            if profile not in pieces:
                pieces[profile] = piece(profile)
            term = term * pieces[profile]
        total = total + term
    return total


def connected_cap(eta, order, side='s1'):
    """
    Connected cap with labelled parts, extracted from the disconnected caps.

    Inverts the exponential formula on set partitions:
    sum over pi of (-1)^(|pi|-1) (|pi|-1)! prod over blocks B of G(eta_B),
    G being the labelled disconnected cap. The result is an SLaurent in s
    with u-series coefficients; it vanishes unless eta has a single part.
    """
    _cap_signature(side)
    return _sum_over_set_partitions(
        eta, lambda profile: _labelled_cap(profile, order, side),
        lambda blocks: (-1) ** (blocks - 1) * factorial(blocks - 1))


def _derived_connected(order, side):
    def connected(profile):
        if len(profile) == 1:
            return recursive_cap(profile.d, order, side).antidiagonal()
        return connected_cap(profile, order, side)
    return connected


def assemble_cap(d, eta, order, side='s1', connected=None):
    """
    Disconnected cap on the anti-diagonal by the exponential formula.

    Sums, over set partitions of the labelled parts of eta, the product of
    the connected caps of the blocks and divides by prod m_j!.
    ``connected`` maps a sub-profile to its connected labelled cap. By
    default a single part takes the cap derived from the fundamental
    relation and a longer block the cap extracted by connected_cap.
    """
    if eta.d != d:
        raise PartitionError(f'{eta} is not a partition of {d}')
    _cap_signature(side)
    if connected is None:
        connected = _derived_connected(order, side)
    total = _sum_over_set_partitions(eta, connected, lambda blocks: 1)
    return total * SLaurent.monomial(Fraction(1, _automorphisms(eta)))


def cap_agrees(value, d, eta, order, side='s1'):
    """Whether an anti-diagonal cap agrees with the sine-product cap up to the order."""
    return _slaurent_series_agree(value, cy_cap(d, eta, order, side).antidiagonal())


def verify_fundamental_relation(d, order):
    """
    Residual of sum over eta of zeta(eta) s^(l+2-d) A_eta H_eta on the anti-diagonal.

    A_eta is the (0,-1) cap at s1 = s and H_eta the connected Hurwitz
    series. Every term is a multiple of s^(2-d); the coefficient is returned.
    """
    if d < 2:
        raise ValueError('verify_fundamental_relation needs d >= 2')
    residual = USeries.zero(order)
    for eta in enumerate_partitions(d):
        cap = cy_cap(d, eta, order, 's1').antidiagonal()
        weighted = cap * SLaurent.monomial(Fraction(zeta(eta)), len(eta) + 2 - d)
        exponent, coefficient = weighted.leading()
        if exponent != 2 - d:
            raise ValueError(f'unexpected power s^{exponent} in the fundamental relation')
        residual = residual + coefficient * h_series(d, eta, order)
    return residual


@lru_cache(maxsize=None)
def recursive_cap(d, order, side='s1'):
    """
    The connected cap derived from the fundamental relation alone.

    Writing the connected cap of degree k as c_k / (s1 k), the relation reads
    sum over eta of prod c_(eta_i) H_eta = 0, which determines c_d from the
    lower ones because H_(d) starts at u^(d-1).
    """
    if d < 1:
        raise ValueError('recursive_cap needs d >= 1')
    _cap_signature(side)
    working = order + 2 * d
    c = {1: USeries.one(working)}
    for k in range(2, d + 1):
        total = USeries.zero(working)
        for eta in enumerate_partitions(k):
            if len(eta) < 2:
                continue
            term = h_series(k, eta, working)
            for part in eta:
                term = term * c[part]
            total = total + term
        c[k] = -total * h_series(k, Partition.one_row(k), working).inverse()
    sign = (-1) ** (d - 1)
    s_part = _cap_s_part(sign, d, 1, side)
    return FullTorusSeries(s_part, (c[d] * sign).truncate(order))


def verify_relfin(d, order):
    """Residual of sum over eta of (-1)^l H_eta / prod 2 sin(eta_i u/2)."""
    if d < 2:
        raise ValueError('verify_relfin needs d >= 2')
    working = order + d + 2
    residual = USeries.zero(order)
    for eta in enumerate_partitions(d):
        term = h_series(d, eta, working)
        for part in eta:
            term = term * l_series(part, working)
        residual = residual + term.truncate(order) * (-1) ** len(eta)
    return residual


def aspinwall_morrison(d_max, order):
    """
    Genus-0 connected level (-1,-1) invariants for degrees 1..d_max.

    The closed invariants are summed into 1 + sum x^d A_d(u), the logarithm
    is taken in the degree variable x and the u^(2d-2) coefficient of each
    connected part is returned.
    """
    if d_max < 1:
        raise ValueError('aspinwall_morrison needs d_max >= 1')
    if order < 2 * d_max:
        raise ValueError(f'order {order} is too small, need at least {2 * d_max}')
    a = {0: USeries.one(order)}
    for d in range(1, d_max + 1):
        value = antid_closed(d, 0, -1, -1)
        if value.s_factor.exponent:
            raise ValueError(f'degree {d} invariant carries s^{value.s_factor.exponent}')
        a[d] = value.as_u_series(order)
    connected = _log_in_degree(a, d_max)
    result = []
    for d in range(1, d_max + 1):
        coefficient = connected[d].coefficient(2 * d - 2)
        if not coefficient.is_real():
            raise ValueError(f'degree {d} genus-0 coefficient {coefficient} is not real')
        result.append(coefficient.re)
    return result


def _log_in_degree(a, top):
    """log of 1 + sum_{n>=1} a_n x^n up to x^top, coefficients being u-series."""
    f = {}
    for n in range(1, top + 1):
        total = a[n] * n
        for k in range(1, n):
            total = total - f[k] * a[n - k] * k
        f[n] = total / n
    return f


def anti_diagonal_cap_vector(d, side='s1'):
    """Engine cap coefficients in the class basis as SLaurent in s over QRatFunc."""
    ss = semisimple_data_antid(d)
    return {eta: SLaurent.coerce(value) for eta, value in _cap_vector(ss, side).items()}


@dataclass
class CapCoherenceReport:
    d: int
    order: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches


def check_cap_coherence(d, order):
    """Compare the engine caps with the sine-product caps on both sides."""
    ss = semisimple_data_antid(d)
    return CapCoherenceReport(d, order, _cap_mismatches(ss, d, order))


def structure_constants_antid(d):
    """
    Class-algebra structure constants read off the anti-diagonal pants.

    The pants tensor with its output in the class basis is rescaled by
    (is)^(l(alpha) + l(beta) - l(gamma) - d), which must leave an s-free
    number equal to the class_product coefficient.
    """
    ss = semisimple_data_antid(d)
    pants = change_basis(tensor_of(CobordismSignature(0, 0, 0, 2, 1), ss), ss, Basis.ETA)
    result = {}
    for alpha in ss.labels:
        for beta in ss.labels:
            coefficients = {}
            for gamma in ss.labels:
                value = SLaurent.coerce(pants[(alpha, beta, gamma)])
                if value.is_zero():
                    continue
                exponent = len(alpha) + len(beta) - len(gamma) - d
                rescaled = value * _s_power(exponent, imaginary=True)
                if set(rescaled.terms) != {0}:
                    raise ValueError(f'pants coefficient {value} is not homogeneous of the expected degree')
                coefficient = QRatFunc.coerce(rescaled.terms[0])
                coefficients[gamma] = coefficient.constant_value().re
            result[alpha, beta] = ClassVector(d, coefficients)
    return result


def check_structure_constants(d):
    """Pairs (alpha, beta) where the pants disagree with the class algebra."""
    constants = structure_constants_antid(d)
    return [key for key, vector in constants.items() if vector != class_product(*key)]


@dataclass
class GluingReport:
    d: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def _random_signature(rng, min_inputs=0, min_outputs=0):
    return CobordismSignature(
        g=rng.randint(0, 1),
        k1=rng.randint(-1, 1),
        k2=rng.randint(-1, 1),
        m=rng.randint(min_inputs, min_inputs + 1),
        n=rng.randint(min_outputs, min_outputs + 1),
    )


def _eta_tensor(sig, ss):
    return change_basis(tensor_of(sig, ss), ss, Basis.ETA)


def _check_gluing(d, ss, samples, seed):
    """Check gluing, self-gluing and index raising in the class basis on random signatures."""
    rng = random.Random(seed)
    report = GluingReport(d)
    for _ in range(samples):
        first = _random_signature(rng, min_outputs=1)
        second = _random_signature(rng, min_inputs=1)
        out_pos = first.m + rng.randrange(first.n)
        in_pos = rng.randrange(second.m)
        glued = glue(_eta_tensor(first, ss), out_pos, _eta_tensor(second, ss), in_pos)
        if not glued.equals(_eta_tensor(first.glued(second), ss)):
            report.failures.append({'axiom': 'glue', 'first': str(first), 'second': str(second)})
        report.checked += 1

        looped = _random_signature(rng, min_inputs=1, min_outputs=1)
        traced = self_glue(_eta_tensor(looped, ss), looped.m + rng.randrange(looped.n), rng.randrange(looped.m))
        if not traced.equals(_eta_tensor(looped.self_glued(), ss)):
            report.failures.append({'axiom': 'selfglue', 'signature': str(looped)})
        report.checked += 1

        genus = rng.randint(0, 2)
        cap = CobordismSignature(genus, 0, 0, 1, 0)
        raised = raise_index(_eta_tensor(cap, ss), 0, ss.metric)
        if not raised.equals(_eta_tensor(CobordismSignature(genus, 0, 0, 0, 1), ss)):
            report.failures.append({'axiom': 'raise', 'signature': str(cap)})
        report.checked += 1
    return report


def verify_gluing_antid(d, samples, seed=0):
    """Random gluing and self-gluing identities for the anti-diagonal data, checked exactly."""
    report = _check_gluing(d, semisimple_data_antid(d), samples, seed)
    logger.info('gluing check d=%s: %s identities, %s failures', d, report.checked, len(report.failures))
    return report
