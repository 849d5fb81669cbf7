"""
Exact arithmetic for the cover TQFT engine.

Scalars are Gaussian rationals, elements of sympy's QQ_I. Truncated Laurent
series in u are sympy ring elements over QQ_I, multiplied, inverted,
exponentiated and logged by ``sympy.polys.ring_series``; rational functions
of q = Q^(1/2) are elements of the fraction field QQ_I(q), which cancels
common factors on construction; polynomials in the equivariant parameters
live in QQ[s1, s2]. The classes below add the truncation bookkeeping, the
canonical text forms of the records and the Laurent glue in s.
"""
from fractions import Fraction
from math import factorial

import pyparsing as pp
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.ring_series import rs_exp, rs_log, rs_mul, rs_series_inversion
from sympy.polys.rings import ring

from .exceptions import NonInvertibleError, SeriesDomainError

BigRational = Fraction

DEFAULT_ORDER = 16

_SCALARS = (int, Fraction)

_U_RING, _U = ring('u', QQ_I)
_Q_RING, _Q = ring('q', QQ_I)
_Q_FIELD = _Q_RING.to_field()
_S_RING, _S1, _S2 = ring('s1,s2', QQ)


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


class GaussianRational:
    """Exact complex number ``re + im*i``; wraps an element of QQ_I."""

    __slots__ = ('value',)

    def __init__(self, re=0, im=0):
        object.__setattr__(self, 'value', QQ_I(_to_qq(re), _to_qq(im)))

    def __setattr__(self, name, value):
        raise AttributeError('GaussianRational is immutable')

    @classmethod
    def wrap(cls, value):
        result = cls.__new__(cls)
        object.__setattr__(result, 'value', value)
        return result

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, _SCALARS):
            return cls(value)
        if QQ_I.of_type(value):
            return cls.wrap(value)
        return NotImplemented

    @property
    def re(self):
        return _from_qq(self.value.x)

    @property
    def im(self):
        return _from_qq(self.value.y)

    def is_real(self):
        return not self.value.y

    def conjugate(self):
        return GaussianRational.wrap(QQ_I(self.value.x, -self.value.y))

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        if not self.value:
            raise NonInvertibleError('division by zero Gaussian rational')
        return GaussianRational.wrap(QQ_I.one / self.value)

    def __bool__(self):
        return bool(self.value)

    def __neg__(self):
        return GaussianRational.wrap(-self.value)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational.wrap(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational.wrap(self.value - other.value)

    def __rsub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational.wrap(self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return GaussianRational.wrap(self.value ** exponent)

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        if self.is_real():
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f'GaussianRational({self})'

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        imag = _imaginary_text(im)
        if not re:
            return imag
        if im < 0:
            return f'{re} - {_imaginary_text(-im)}'
        return f'{re} + {imag}'


I = GaussianRational(0, 1)


def _imaginary_text(value):
    if value == 1:
        return 'i'
    if value == -1:
        return '-i'
    return f'{value}*i'


def _gauss(value):
    result = GaussianRational.coerce(value)
    if result is NotImplemented:
        raise TypeError(f'cannot use {type(value).__name__} as a Gaussian rational')
    return result


def _coefficient_text(c, variable_follows):
    """Render a coefficient as the first factor of a term; returns (sign, text)."""
    if c.is_real():
        sign = '-' if c.re < 0 else '+'
        magnitude = abs(c.re)
        if variable_follows and magnitude == 1:
            return sign, ''
        return sign, str(magnitude)
    if not c.re:
        sign = '-' if c.im < 0 else '+'
        return sign, _imaginary_text(abs(c.im))
    return '+', f'({c})'


def _join_terms(terms):
    """Join (sign, body) pairs as ``a + b - c``."""
    pieces = []
    for sign, body in terms:
        if not pieces:
            pieces.append(f'-{body}' if sign == '-' else body)
        else:
            pieces.append(f' {sign} {body}')
    return ''.join(pieces)


def _monomial_terms(items, variable):
    terms = []
    for exponent, c in items:
        if exponent == 0:
            sign, body = _coefficient_text(c, variable_follows=False)
        else:
            sign, body = _coefficient_text(c, variable_follows=True)
            power = variable if exponent == 1 else f'{variable}^{exponent}'
            body = f'{body}*{power}' if body else power
        terms.append((sign, body))
    return terms


def _sorted_items(poly):
    """(exponent, coefficient) pairs of a univariate ring element, lowest degree first."""
    return sorted((monom[0], c) for monom, c in poly.items())


# --------------------------------------------------------------------------
# Truncated Laurent series in u
# --------------------------------------------------------------------------

class USeries:
    """
    Truncated Laurent series in u over the Gaussian rationals.

    The series is ``u^valuation * body`` where ``body`` is an element of
    QQ_I[u] with a nonzero constant term. Every degree below ``valuation``
    is exactly zero and nothing is known from ``order`` (exclusive) on. The
    zero series has ``valuation == order``.
    """

    __slots__ = ('valuation', 'order', 'body')

    def __init__(self, coefficients=(), valuation=0, order=None):
        coefficients = [_gauss(c) for c in coefficients]
        if order is None:
            order = valuation + len(coefficients)
        body = _U_RING({(j,): c.value for j, c in enumerate(coefficients) if c})
        self._assign(body, valuation, order)

    def _assign(self, body, shift, order):
        """Store ``u^shift * body`` truncated at u^order with the lowest power factored out."""
        terms = {monom[0]: c for monom, c in body.items() if monom[0] < order - shift}
        if terms:
            low = min(terms)
            body = _U_RING({(k - low,): c for k, c in terms.items()})
            valuation = shift + low
        else:
            body, valuation = _U_RING.zero, order
        object.__setattr__(self, 'valuation', valuation)
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'body', body)

    def __setattr__(self, name, value):
        raise AttributeError('USeries is immutable')

    @classmethod
    def _from_body(cls, body, shift, order):
        series = cls.__new__(cls)
        series._assign(body, shift, order)
        return series

    @classmethod
    def zero(cls, order=DEFAULT_ORDER):
        return cls((), 0, order)

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls.monomial(1, 0, order)

    @classmethod
    def monomial(cls, c, exponent, order=DEFAULT_ORDER):
        return cls([c], exponent, order)

    @classmethod
    def from_terms(cls, terms, order=DEFAULT_ORDER):
        """Build from a mapping degree -> coefficient."""
        terms = {k: c for k, c in terms.items() if k < order}
        if not terms:
            return cls.zero(order)
        low = min(terms)
        body = _U_RING({(k - low,): _gauss(c).value for k, c in terms.items()})
        return cls._from_body(body, low, order)

    def is_zero(self):
        return not self.body

    def coefficient(self, degree):
        if degree >= self.order:
            raise ValueError(f'coefficient of u^{degree} is beyond the truncation order {self.order}')
        return GaussianRational.wrap(self.body.get((degree - self.valuation,), QQ_I.zero))

    def items(self):
        for k, c in _sorted_items(self.body):
            yield self.valuation + k, GaussianRational.wrap(c)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f'cannot extend a series known to O(u^{self.order}) to O(u^{order})')
        return USeries._from_body(self.body, self.valuation, order)

    def agrees_with(self, other):
        """True when both series coincide up to their common truncation order."""
        order = min(self.order, other.order)
        return self.truncate(order) == other.truncate(order)

    def _shifted(self, k):
        return self.body * _U ** k

    def _scaled(self, c):
        return USeries._from_body(self.body * _gauss(c).value, self.valuation, self.order)

    def __neg__(self):
        return USeries._from_body(-self.body, self.valuation, self.order)

    def __add__(self, other):
        if isinstance(other, (*_SCALARS, GaussianRational)):
            other = USeries.monomial(other, 0, max(self.order, 1))
        if not isinstance(other, USeries):
            return NotImplemented
        order = min(self.order, other.order)
        low = min(self.valuation, other.valuation)
        body = self._shifted(self.valuation - low) + other._shifted(other.valuation - low)
        return USeries._from_body(body, low, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (*_SCALARS, GaussianRational, USeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (*_SCALARS, GaussianRational)):
            return self._scaled(other)
        if not isinstance(other, USeries):
            return NotImplemented
        order = min(self.valuation + other.order, other.valuation + self.order)
        low = self.valuation + other.valuation
        if order - low <= 0:
            return USeries._from_body(_U_RING.zero, low, order)
        return USeries._from_body(rs_mul(self.body, other.body, _U, order - low), low, order)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise NonInvertibleError('non-invertible series')
        precision = self.order - self.valuation
        body = rs_series_inversion(self.body, _U, precision)
        return USeries._from_body(body, -self.valuation, self.order - 2 * self.valuation)

    def __truediv__(self, other):
        if isinstance(other, (*_SCALARS, GaussianRational)):
            return self._scaled(_gauss(other).inverse())
        if not isinstance(other, USeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = None
        base = self
        while exponent:
            if exponent & 1:
                result = base if result is None else result * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return USeries.one(self.order) if result is None else result

    def exp(self):
        if self.valuation < 0 or (self.valuation == 0 and not self.is_zero()):
            raise SeriesDomainError(
                f'exp needs a zero constant term, got {self.coefficient(min(self.valuation, 0))}'
                f' at u^{min(self.valuation, 0)}'
            )
        if self.order <= 0:
            return USeries.zero(self.order)
        if self.is_zero():
            return USeries.one(self.order)
        return USeries._from_body(rs_exp(self._shifted(self.valuation), _U, self.order), 0, self.order)

    def log(self):
        if self.valuation != 0 or self.coefficient(0) != 1:
            constant = self.coefficient(0) if self.valuation >= 0 else 'a pole'
            raise SeriesDomainError(f'log needs constant term 1, got {constant}')
        return USeries._from_body(rs_log(self.body, _U, self.order), 0, self.order)

    def __eq__(self, other):
        if isinstance(other, (*_SCALARS, GaussianRational)):
            other = USeries.monomial(other, 0, self.order)
        if not isinstance(other, USeries):
            return NotImplemented
        return (self.order == other.order and self.valuation == other.valuation
                and self.body == other.body)

    def __hash__(self):
        return hash((self.valuation, self.order, tuple(_sorted_items(self.body))))

    def __repr__(self):
        return f'USeries({self})'

    def __str__(self):
        terms = _monomial_terms(self.items(), 'u')
        big_o = 'O(1)' if self.order == 0 else ('O(u)' if self.order == 1 else f'O(u^{self.order})')
        terms.append(('+', big_o))
        return _join_terms(terms)

    @classmethod
    def parse(cls, text):
        return _parse_series(text)


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_inv(a):
    return a.inverse()


def series_exp(a):
    return a.exp()


def series_log(a):
    return a.log()


def sin_half(k, order=DEFAULT_ORDER):
    """The series of 2 sin(k u / 2)."""
    if k < 1:
        raise ValueError('sin_half needs k >= 1')
    half = Fraction(k, 2)
    terms = {}
    for m in range((order + 1) // 2):
        degree = 2 * m + 1
        terms[degree] = (-1) ** m * 2 * half ** degree / factorial(degree)
    return USeries.from_terms(terms, order)


def cos_half(k, order=DEFAULT_ORDER):
    """The series of 2 cos(k u / 2)."""
    half = Fraction(k, 2)
    terms = {}
    for m in range((order + 1) // 2):
        degree = 2 * m
        terms[degree] = (-1) ** m * 2 * half ** degree / factorial(degree)
    return USeries.from_terms(terms, order)


def cot_half(k, order=DEFAULT_ORDER):
    """Laurent series of cot(k u / 2); valuation -1 with leading term 2/k."""
    if k < 1:
        raise ValueError('cot_half needs k >= 1')
    return cos_half(k, order + 1) * sin_half(k, order + 2).inverse()


def exp_i_half(n, order=DEFAULT_ORDER):
    """The series of exp(i n u / 2), the image of q^n."""
    if order <= 0:
        return USeries.zero(order)
    if n == 0:
        return USeries.one(order)
    exponent = _U * QQ_I(QQ.zero, _to_qq(Fraction(n, 2)))
    return USeries._from_body(rs_exp(exponent, _U, order), 0, order)


# --------------------------------------------------------------------------
# Rational functions in q = Q^(1/2)
# --------------------------------------------------------------------------

def _strip_low(poly):
    """(k, {j: c}) with poly = q^k * sum c q^j and a nonzero constant term."""
    items = _sorted_items(poly)
    low = items[0][0]
    return low, [(j - low, c) for j, c in items]


def _q_laurent(terms):
    """Element of QQ_I(q) from a mapping exponent -> coefficient, exponents of any sign."""
    terms = {k: _gauss(c).value for k, c in terms.items() if c}
    if not terms:
        return _Q_FIELD.zero
    low = min(min(terms), 0)
    numerator = _Q_RING({(k - low,): c for k, c in terms.items()})
    return _Q_FIELD.new(numerator, _Q ** (-low))


class QRatFunc:
    """
    Rational function of q = Q^(1/2), an element of the fraction field QQ_I(q).

    Alongside the field element the canonical form ``q^shift * N(q) / D(q)``
    is kept, with N and D coprime, q dividing neither and D having constant
    term 1. It drives the text form and the hash.
    """

    __slots__ = ('value', 'shift', 'numerator', 'denominator')

    def __init__(self, value=0):
        if isinstance(value, QRatFunc):
            value = value.value
        elif getattr(value, 'field', None) is not _Q_FIELD:
            value = _Q_FIELD(_gauss(value).value)
        object.__setattr__(self, 'value', value)
        if not value:
            shift, numerator, denominator = 0, (), ((0, QQ_I.one),)
        else:
            k, numerator = _strip_low(value.numer)
            j, denominator = _strip_low(value.denom)
            c = denominator[0][1]
            numerator = tuple((e, x / c) for e, x in numerator)
            denominator = tuple((e, x / c) for e, x in denominator)
            shift = k - j
        object.__setattr__(self, 'shift', shift)
        object.__setattr__(self, 'numerator', numerator)
        object.__setattr__(self, 'denominator', denominator)

    def __setattr__(self, name, value):
        raise AttributeError('QRatFunc is immutable')

    @classmethod
    def coerce(cls, value):
        if isinstance(value, QRatFunc):
            return value
        if isinstance(value, (*_SCALARS, GaussianRational)):
            return cls(value)
        return NotImplemented

    @classmethod
    def q_terms(cls, terms):
        """Laurent polynomial in q from a mapping exponent -> coefficient."""
        return cls(_q_laurent(terms))

    @classmethod
    def Q_terms(cls, terms):
        """Laurent polynomial in Q = q^2 from a mapping exponent -> coefficient."""
        return cls.q_terms({2 * k: c for k, c in terms.items()})

    @classmethod
    def Q_power(cls, k):
        return cls.q_terms({2 * k: 1})

    @classmethod
    def q_power(cls, k):
        return cls.q_terms({k: 1})

    def is_zero(self):
        return not self.value

    def is_constant(self):
        return self.value.numer.is_ground and self.value.denom.is_ground

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f'{self} is not a constant')
        return GaussianRational.wrap(self.numerator[0][1]) if self.numerator else GaussianRational(0)

    def __neg__(self):
        return QRatFunc(-self.value)

    def __add__(self, other):
        other = QRatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRatFunc(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = QRatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRatFunc(self.value - other.value)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QRatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QRatFunc(self.value * other.value)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise NonInvertibleError('inverse of the zero rational function')
        return QRatFunc(_Q_FIELD.new(self.value.denom, self.value.numer))

    def __truediv__(self, other):
        other = QRatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return QRatFunc(self.value ** exponent)

    def evaluate_at_one(self):
        """Value at q = 1 (equivalently Q = 1, u = 0)."""
        den = sum((c for _, c in self.denominator), QQ_I.zero)
        if not den:
            raise NonInvertibleError(f'{self} has a pole at Q = 1')
        return GaussianRational.wrap(sum((c for _, c in self.numerator), QQ_I.zero) / den)

    def __eq__(self, other):
        other = QRatFunc.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value.numer * other.value.denom == other.value.numer * self.value.denom

    def __hash__(self):
        return hash((self.shift, self.numerator, self.denominator))

    def __repr__(self):
        return f'QRatFunc({self})'

    def __str__(self):
        num = _q_text(self.numerator, self.shift)
        if self.denominator == ((0, QQ_I.one),):
            return num
        if len(self.numerator) > 1 or self.shift:
            num = f'({num})'
        return f'{num}/({_q_text(self.denominator, 0)})'

    @classmethod
    def parse(cls, text):
        return _parse_qratfunc(text)


def _q_text(items, shift):
    if not items:
        return '0'
    return _join_terms(_monomial_terms(
        [(k + shift, GaussianRational.wrap(c)) for k, c in items], 'q'))


def q_to_u(f, order=DEFAULT_ORDER):
    """Substitute q = exp(iu/2) into ``f`` and expand as a u-series."""
    f = QRatFunc.coerce(f)
    cache = {}

    def image(items, shift, working):
        acc = USeries.zero(working)
        for k, c in items:
            n = k + shift
            if (n, working) not in cache:
                cache[n, working] = exp_i_half(n, working)
            acc = acc + cache[n, working] * GaussianRational.wrap(c)
        return acc

    degree = max(k for k, _ in f.denominator)
    leading = image(f.denominator, 0, degree + 2)
    if leading.is_zero():
        raise NonInvertibleError(f'denominator of {f} vanishes identically at q = exp(iu/2)')
    v = leading.valuation
    working = order + 2 * v
    num = image(f.numerator, f.shift, working)
    den = image(f.denominator, 0, working)
    return (num * den.inverse()).truncate(order)


# --------------------------------------------------------------------------
# The equivariant parameters s1, s2 and the anti-diagonal parameter s
# --------------------------------------------------------------------------

class SLaurent:
    """
    Sparse Laurent polynomial in s over an arbitrary scalar ring.

    Division is only defined by monomials whose coefficient is invertible,
    which is all the anti-diagonal theory ever needs.
    """

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        cleaned = {k: c for k, c in (terms or {}).items() if not _is_zero(c)}
        object.__setattr__(self, 'terms', dict(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError('SLaurent is immutable')

    @classmethod
    def monomial(cls, c, exponent=0):
        return cls({exponent: c})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, SLaurent):
            return value
        if isinstance(value, (*_SCALARS, GaussianRational, QRatFunc, USeries)):
            return cls({0: value})
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def leading(self):
        """(exponent, coefficient) of a monomial."""
        if not self.is_monomial():
            raise ValueError(f'{self} is not a monomial in s')
        return next(iter(self.terms.items()))

    def coefficient(self, exponent):
        return self.terms.get(exponent, 0)

    def map_coefficients(self, function):
        return SLaurent({k: function(c) for k, c in self.terms.items()})

    def __neg__(self):
        return SLaurent({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        other = SLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return SLaurent(terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = SLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = SLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                product = x * y
                terms[a + b] = terms[a + b] + product if a + b in terms else product
        return SLaurent(terms)

    __rmul__ = __mul__

    def inverse(self):
        if not self.is_monomial():
            raise NonInvertibleError(f'{self or 0} is not an invertible monomial in s')
        exponent, c = self.leading()
        return SLaurent({-exponent: Fraction(1, c) if isinstance(c, int) else 1 / c})

    def __truediv__(self, other):
        other = SLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.is_monomial():
            k, c = self.leading()
            return SLaurent({k * exponent: c ** exponent})
        result = SLaurent({0: 1})
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = SLaurent.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __repr__(self):
        return f'SLaurent({self})'

    def __str__(self):
        if not self.terms:
            return '0'
        pieces = []
        for k, c in self.terms.items():
            power = '' if k == 0 else ('*s' if k == 1 else f'*s^{k}')
            pieces.append(f'({c}){power}')
        return ' + '.join(pieces)


def _is_zero(value):
    if isinstance(value, (USeries, QRatFunc)):
        return value.is_zero()
    return value == 0


class SFactor:
    """Monomial ``sign * s^exponent`` with sign a unit in {1, -1, i, -i}."""

    __slots__ = ('exponent', 'sign')
    UNITS = (GaussianRational(1), GaussianRational(-1), I, -I)

    def __init__(self, exponent=0, sign=1):
        sign = _gauss(sign)
        if sign not in self.UNITS:
            raise ValueError(f'{sign} is not a unit of Z[i]')
        object.__setattr__(self, 'exponent', exponent)
        object.__setattr__(self, 'sign', sign)

    def __setattr__(self, name, value):
        raise AttributeError('SFactor is immutable')

    def __mul__(self, other):
        return SFactor(self.exponent + other.exponent, self.sign * other.sign)

    def __eq__(self, other):
        if not isinstance(other, SFactor):
            return NotImplemented
        return self.exponent == other.exponent and self.sign == other.sign

    def __hash__(self):
        return hash((self.exponent, self.sign))

    def as_slaurent(self):
        return SLaurent.monomial(self.sign, self.exponent)

    def __repr__(self):
        return f'SFactor({self})'

    def __str__(self):
        if self.exponent == 0:
            return str(self.sign)
        power = 's' if self.exponent == 1 else f's^{self.exponent}'
        if self.sign == 1:
            return power
        if self.sign == -1:
            return f'-{power}'
        return f'{self.sign}*{power}'


class BivariatePoly:
    """Polynomial in s1, s2 with rational coefficients; wraps an element of QQ[s1, s2]."""

    __slots__ = ('poly',)

    def __init__(self, terms=None):
        poly = _S_RING({k: _to_qq(c) for k, c in (terms or {}).items() if c})
        object.__setattr__(self, 'poly', poly)

    def __setattr__(self, name, value):
        raise AttributeError('BivariatePoly is immutable')

    @classmethod
    def wrap(cls, poly):
        result = cls.__new__(cls)
        object.__setattr__(result, 'poly', poly)
        return result

    @classmethod
    def coerce(cls, value):
        if isinstance(value, BivariatePoly):
            return value
        if isinstance(value, _SCALARS):
            return cls.constant(value)
        return NotImplemented

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def s1(cls, power=1):
        return cls.wrap(_S1 ** power)

    @classmethod
    def s2(cls, power=1):
        return cls.wrap(_S2 ** power)

    @property
    def terms(self):
        """Mapping (a, b) -> coefficient of s1^a s2^b, highest exponents first."""
        return {k: _from_qq(c) for k, c in sorted(self.poly.items(), reverse=True)}

    def is_zero(self):
        return not self.poly

    def __neg__(self):
        return BivariatePoly.wrap(-self.poly)

    def __add__(self, other):
        other = BivariatePoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BivariatePoly.wrap(self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = BivariatePoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BivariatePoly.wrap(self.poly - other.poly)

    def __mul__(self, other):
        other = BivariatePoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BivariatePoly.wrap(self.poly * other.poly)

    __rmul__ = __mul__

    def antidiagonal(self):
        """Substitute s1 = s, s2 = -s."""
        terms = {}
        for (a, b), c in self.terms.items():
            terms[a + b] = terms.get(a + b, 0) + (-1) ** b * c
        return SLaurent(terms)

    def evaluate(self, s1, s2):
        return sum((c * Fraction(s1) ** a * Fraction(s2) ** b for (a, b), c in self.terms.items()),
                   Fraction(0))

    def __eq__(self, other):
        other = BivariatePoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __str__(self):
        if not self.poly:
            return '0'
        terms = []
        for (a, b), c in self.terms.items():
            factors = [f's1^{a}' if a > 1 else 's1'] if a else []
            factors += [f's2^{b}' if b > 1 else 's2'] if b else []
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if factors and magnitude == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([str(magnitude)] + factors)
            terms.append((sign, body))
        return _join_terms(terms)


class BivariateRatFunc:
    """Ratio of two BivariatePoly; equality by cross-multiplication."""

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator=None):
        numerator = BivariatePoly.coerce(numerator)
        denominator = BivariatePoly.constant(1) if denominator is None else BivariatePoly.coerce(denominator)
        if denominator.is_zero():
            raise NonInvertibleError('rational function in s1, s2 with zero denominator')
        object.__setattr__(self, 'numerator', numerator)
        object.__setattr__(self, 'denominator', denominator)

    def __setattr__(self, name, value):
        raise AttributeError('BivariateRatFunc is immutable')

    def is_zero(self):
        return self.numerator.is_zero()

    def __neg__(self):
        return BivariateRatFunc(-self.numerator, self.denominator)

    def __add__(self, other):
        if isinstance(other, (*_SCALARS, BivariatePoly)):
            other = BivariateRatFunc(other)
        return BivariateRatFunc(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (*_SCALARS, BivariatePoly)):
            other = BivariateRatFunc(other)
        return BivariateRatFunc(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    __rmul__ = __mul__

    def antidiagonal(self):
        """Substitute s1 = s, s2 = -s; the result is an SLaurent in s."""
        num = self.numerator.antidiagonal()
        if num.is_zero():
            return SLaurent()
        den = self.denominator.antidiagonal()
        if den.is_zero():
            raise NonInvertibleError(f'denominator {self.denominator} vanishes at s1 = -s2')
        return num / den

    def __eq__(self, other):
        if isinstance(other, (*_SCALARS, BivariatePoly)):
            other = BivariateRatFunc(other)
        if not isinstance(other, BivariateRatFunc):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f'({self.numerator})/({self.denominator})'


# --------------------------------------------------------------------------
# Parsing of the canonical text forms
# --------------------------------------------------------------------------

def _setup_text_grammar():
    SIGN = pp.oneOf('+ -')
    integer = pp.Regex(r'-?\d+').setParseAction(lambda t: int(t[0]))
    rational = pp.Regex(r'\d+(?:/\d+)?').setParseAction(lambda t: Fraction(t[0]))

    imaginary = (pp.Optional(rational + pp.Literal('*').suppress(), default=Fraction(1))
                 + pp.Literal('i').suppress())
    imaginary.setParseAction(lambda t: GaussianRational(0, t[0]))

    def signed(tokens):
        value = tokens[-1]
        return -value if len(tokens) == 2 and tokens[0] == '-' else value

    def combine(tokens):
        value = tokens[0]
        if len(tokens) == 3:
            value = value + tokens[2] if tokens[1] == '+' else value - tokens[2]
        return _gauss(value)

    real = rational.copy().setParseAction(lambda t: GaussianRational(Fraction(t[0])))
    first = (pp.Optional(pp.Literal('-')) + (imaginary | real)).setParseAction(signed)
    complex_value = (first + pp.Optional(SIGN + imaginary)).setParseAction(combine)
    parenthesized = pp.Literal('(').suppress() + complex_value + pp.Literal(')').suppress()
    coefficient = parenthesized | imaginary | real

    def monomial(variable):
        power = pp.Optional(pp.Literal('^').suppress() + integer, default=1)
        bare = (pp.Literal(variable).suppress() + power).setParseAction(
            lambda t: (t[0], GaussianRational(1)))
        scaled = (coefficient + pp.Optional(pp.Literal('*').suppress() + pp.Literal(variable).suppress()
                                            + power)).setParseAction(
            lambda t: (t[1] if len(t) > 1 else 0, t[0]))
        return bare | scaled

    def polynomial(variable):
        term = monomial(variable)
        lead = (pp.Optional(pp.Literal('-'), default='+') + term).setParseAction(
            lambda t: [(t[1][0], t[1][1] if t[0] == '+' else -t[1][1])])
        rest = (SIGN + term).setParseAction(
            lambda t: [(t[1][0], t[1][1] if t[0] == '+' else -t[1][1])])
        return pp.Group(lead + pp.ZeroOrMore(rest))

    constant_order = pp.Literal('1').setParseAction(lambda t: 0)
    u_order = pp.Literal('u').suppress() + pp.Optional(pp.Literal('^').suppress() + integer, default=1)
    big_o = pp.Literal('O(').suppress() + (u_order | constant_order) + pp.Literal(')').suppress()
    series = pp.Optional(polynomial('u') + SIGN.suppress(), default=[]) + big_o

    q_poly = polynomial('q')
    wrapped = pp.Literal('(').suppress() + q_poly + pp.Literal(')').suppress()
    ratfunc = (wrapped ^ q_poly) + pp.Optional(pp.Literal('/').suppress() + wrapped)
    return complex_value, series, ratfunc


_COMPLEX, _SERIES, _RATFUNC = _setup_text_grammar()


def _collect(pairs):
    terms = {}
    for exponent, c in pairs:
        terms[exponent] = terms.get(exponent, 0) + c
    return terms


def parse_gaussian(text):
    try:
        return _COMPLEX.parseString(text.strip(), parseAll=True)[0]
    except pp.ParseException as exc:
        raise ValueError(f'not a Gaussian rational: {text!r} ({exc})') from exc


def _parse_series(text):
    try:
        tokens = _SERIES.parseString(text.strip(), parseAll=True)
    except pp.ParseException as exc:
        raise ValueError(f'not a truncated series: {text!r} ({exc})') from exc
    pairs, order = tokens[0], tokens[1]
    return USeries.from_terms(_collect(pairs), order)


def _parse_qratfunc(text):
    try:
        tokens = _RATFUNC.parseString(text.strip(), parseAll=True)
    except pp.ParseException as exc:
        raise ValueError(f'not a rational function of q: {text!r} ({exc})') from exc
    num = QRatFunc.q_terms(_collect(tokens[0]))
    if len(tokens) == 1:
        return num
    return num / QRatFunc.q_terms(_collect(tokens[1]))
