"""Exact constructible reals: rationals closed under field operations and
square roots of positive elements.

A ``Scalar`` wraps a sympy expression tree whose leaves are rationals and
whose only irrational nodes are square roots. Signs are decided in two
stages: an interval enclosure (mpmath interval arithmetic, refined by
doubling the working precision) settles every nonzero value, and an exact
test (minimal polynomial over Q) settles zero, which no enclosure can prove.
"""

import logging
import threading
from fractions import Fraction
from functools import total_ordering

import sympy
from mpmath import libmp
from mpmath.ctx_iv import MPIntervalContext

from .config import settings
from .errors import DomainError, ResourceLimitError, SceneParseError

log = logging.getLogger(__name__)

_START_BITS = 64
_X = sympy.Symbol('x')

# mpmath interval contexts carry a mutable precision; one per thread.
_local = threading.local()


def _iv_context() -> MPIntervalContext:
    ctx = getattr(_local, 'iv', None)
    if ctx is None:
        ctx = MPIntervalContext()
        _local.iv = ctx
    return ctx


# ---------------------------------------------------------------------------
# Expression helpers
# ---------------------------------------------------------------------------

def _to_expr(value) -> sympy.Expr:
    """Coerce a supported Python value into a sympy expression."""
    if isinstance(value, Scalar):
        return value.expr
    if isinstance(value, bool):
        raise TypeError('bool is not a Scalar')
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        frac = Fraction(value.strip())
        return sympy.Rational(frac.numerator, frac.denominator)
    if isinstance(value, sympy.Basic):
        return value
    raise TypeError(f'cannot convert {type(value).__name__} to Scalar')


def sqrt_depth(expr: sympy.Expr) -> int:
    """Nesting depth of square-root nodes in ``expr``."""
    if expr.is_Atom:
        return 0
    inner = max((sqrt_depth(arg) for arg in expr.args), default=0)
    if expr.is_Pow and expr.exp.is_Rational and expr.exp.q > 1:
        # sympy folds sqrt(sqrt(x)) into x**(1/4)
        return inner + int(expr.exp.q).bit_length() - 1
    return inner


def _int_power(ctx, x, k: int):
    if k < 0:
        return ctx.one / _int_power(ctx, x, -k)
    result = ctx.one
    for _ in range(k):
        result = result * x
    return result


def _enclose(expr: sympy.Expr, ctx):
    """Interval enclosure of ``expr`` at the context's current precision."""
    if expr.is_Rational:
        return ctx.mpf(int(expr.p)) / ctx.mpf(int(expr.q))
    if expr.is_Add:
        total = ctx.zero
        for arg in expr.args:
            total = total + _enclose(arg, ctx)
        return total
    if expr.is_Mul:
        total = ctx.one
        for arg in expr.args:
            total = total * _enclose(arg, ctx)
        return total
    if expr.is_Pow and expr.exp.is_Rational:
        base = _enclose(expr.base, ctx)
        exp = expr.exp
        if exp.q == 1:
            return _int_power(ctx, base, int(exp.p))
        q = int(exp.q)
        if q & (q - 1) == 0:
            # The operand is positive by construction; a loose enclosure may
            # still dip below zero, so clip it before taking roots.
            while q > 1:
                if (base < 0) is not False:
                    base = ctx.make_mpf((libmp.fzero, base._mpi_[1]))
                base = ctx.sqrt(base)
                q //= 2
            return _int_power(ctx, base, int(exp.p))
    raise DomainError(f'unsupported node in constructible expression: {expr!r}')


def _is_exact_zero(expr: sympy.Expr) -> bool:
    simplified = sympy.expand(sympy.radsimp(sympy.sqrtdenest(expr)))
    if simplified == 0:
        return True
    return sympy.minimal_polynomial(simplified, _X) == _X


def _decide_sign(expr: sympy.Expr) -> int:
    if expr.is_Rational:
        return (expr.p > 0) - (expr.p < 0)
    ctx = _iv_context()
    bits = _START_BITS
    zero_checked = False
    while bits <= settings.max_refine_bits:
        ctx.prec = bits
        enclosure = _enclose(expr, ctx)
        if (enclosure > 0) is True:
            return 1
        if (enclosure < 0) is True:
            return -1
        if not zero_checked:
            zero_checked = True
            log.debug('Enclosure at %d bits straddles zero, trying exact test', bits)
            if _is_exact_zero(expr):
                return 0
        bits *= 2
    raise ResourceLimitError(
        f'sign of {expr} unresolved at {settings.max_refine_bits} bits'
    )


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

@total_ordering
class Scalar:
    """Immutable exact constructible real."""

    __slots__ = ('expr', '_sign')

    def __init__(self, value=0):
        self.expr = _to_expr(value)
        self._sign = None

    @classmethod
    def _wrap(cls, expr: sympy.Expr) -> 'Scalar':
        return cls(sympy.expand(expr))

    # -- decisions ---------------------------------------------------------

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}."""
        if self._sign is None:
            self._sign = _decide_sign(self.expr)
        return self._sign

    def is_zero(self) -> bool:
        return self.sign() == 0

    @property
    def is_rational(self) -> bool:
        return bool(self.expr.is_Rational)

    def depth(self) -> int:
        return sqrt_depth(self.expr)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        try:
            return Scalar._wrap(self.expr + _to_expr(other))
        except TypeError:
            return NotImplemented

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        try:
            return Scalar._wrap(self.expr - _to_expr(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return Scalar._wrap(_to_expr(other) - self.expr)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return Scalar._wrap(self.expr * _to_expr(other))
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        try:
            other = other if isinstance(other, Scalar) else Scalar(other)
        except TypeError:
            return NotImplemented
        if other.sign() == 0:
            raise DomainError('division by a Scalar of sign 0')
        if other.is_rational:
            return Scalar._wrap(self.expr / other.expr)
        return Scalar._wrap(self.expr * sympy.radsimp(1 / other.expr))

    def __rtruediv__(self, other):
        try:
            return Scalar(other).__truediv__(self)
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return Scalar(-self.expr)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Scalar(1) / (self ** -k)
        return Scalar._wrap(self.expr ** k)

    def sqrt(self) -> 'Scalar':
        if self.sign() != 1:
            raise DomainError(f'square root of non-positive Scalar {self}')
        root = sympy.sqrtdenest(sympy.sqrt(self.expr))
        depth = sqrt_depth(root)
        if depth > settings.sqrt_depth_cap:
            raise ResourceLimitError(
                f'nested sqrt depth {depth} exceeds cap {settings.sqrt_depth_cap}'
            )
        result = Scalar(root)
        result._sign = 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        try:
            diff = self.expr - _to_expr(other)
        except TypeError:
            return NotImplemented
        return Scalar._wrap(diff).sign() == 0

    def __lt__(self, other):
        try:
            diff = self.expr - _to_expr(other)
        except TypeError:
            return NotImplemented
        return Scalar._wrap(diff).sign() < 0

    __hash__ = None

    def __bool__(self):
        return self.sign() != 0

    # -- conversion --------------------------------------------------------

    def __float__(self):
        return float(self.expr.evalf(30))

    def __repr__(self):
        return f'Scalar({self.expr})'

    def __str__(self):
        return str(self.expr)

    def to_json(self):
        """Scene-file syntax for this value (see ``from_json``)."""
        return _expr_to_json(self.expr)

    @classmethod
    def from_json(cls, data, location: str = '') -> 'Scalar':
        """Parse ``"p/q"``, numbers, and ``{"add"|"mul"|"neg"|"sqrt"|"sub"|"div": ...}``."""
        try:
            return cls(_json_to_expr(data, location))
        except SceneParseError:
            raise
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise SceneParseError(f'bad scalar {data!r}: {exc}', location) from exc


ZERO = Scalar(0)
ONE = Scalar(1)


def _json_to_expr(data, location: str) -> sympy.Expr:
    if isinstance(data, (int, str)) and not isinstance(data, bool):
        return _to_expr(data)
    if isinstance(data, dict) and len(data) == 1:
        (key, arg), = data.items()
        if key == 'sqrt':
            inner = Scalar(_json_to_expr(arg, f'{location}.sqrt'))
            return inner.sqrt().expr
        if key == 'neg':
            return -_json_to_expr(arg, f'{location}.neg')
        if key in ('add', 'mul', 'sub', 'div') and isinstance(arg, list) and arg:
            parts = [_json_to_expr(item, f'{location}.{key}[{i}]') for i, item in enumerate(arg)]
            result = Scalar(parts[0])
            for part in parts[1:]:
                if key == 'add':
                    result = result + Scalar(part)
                elif key == 'mul':
                    result = result * Scalar(part)
                elif key == 'sub':
                    result = result - Scalar(part)
                else:
                    try:
                        result = result / Scalar(part)
                    except DomainError as exc:
                        raise SceneParseError(str(exc), location) from exc
            return result.expr
    raise SceneParseError(f'unrecognised scalar syntax {data!r}', location)


def _expr_to_json(expr: sympy.Expr):
    if expr.is_Integer:
        return str(expr.p)
    if expr.is_Rational:
        return f'{expr.p}/{expr.q}'
    if expr.is_Add:
        return {'add': [_expr_to_json(arg) for arg in expr.args]}
    if expr.is_Mul:
        return {'mul': [_expr_to_json(arg) for arg in expr.args]}
    if expr.is_Pow and expr.exp.is_Rational:
        exp = expr.exp
        base = _expr_to_json(expr.base)
        q = int(exp.q)
        while q > 1:
            base = {'sqrt': base}
            q //= 2
        power = abs(int(exp.p))
        node = base if power == 1 else {'mul': [base] * power}
        return {'div': ['1', node]} if exp < 0 else node
    raise DomainError(f'cannot serialise {expr!r}')


# ---------------------------------------------------------------------------
# Named operations
# ---------------------------------------------------------------------------

def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return Scalar(a) + Scalar(b)


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    return Scalar(a) - Scalar(b)


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return Scalar(a) * Scalar(b)


def scalar_div(a: Scalar, b: Scalar) -> Scalar:
    return Scalar(a) / Scalar(b)


def scalar_sqrt(a: Scalar) -> Scalar:
    return Scalar(a).sqrt()


def scalar_sign(a: Scalar) -> int:
    return Scalar(a).sign()
