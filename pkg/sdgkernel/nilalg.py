"""The nilpotent-extended number line.

Elements are Scalar-linear combinations of squarefree monomials in
first-order generators. Generators are allocated in batches; any two
generators of one batch multiply to zero (including a generator with
itself), while products across batches survive. A batch of size n is the
generic element of D(n).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import NotInvertibleError, DomainError, UsageError
from .scalars import Scalar, ZERO, ONE

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Batch bookkeeping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Batch:
    """One batch of generators inside a BatchTable."""
    ctx: 'BatchTable' = field(repr=False, compare=False)
    index: int
    name: str
    generator_ids: tuple

    @property
    def size(self) -> int:
        return len(self.generator_ids)

    @property
    def generators(self) -> list:
        return [NilElement({(g,): ONE}, self.ctx) for g in self.generator_ids]


class BatchTable:
    """Allocation context for infinitesimal generators.

    Generator ids are never reused. A table is owned by a single scenario;
    elements from two different tables never mix.
    """

    def __init__(self):
        self.batches: list[Batch] = []
        self._batch_of: dict[int, int] = {}
        self._by_name: dict[str, Batch] = {}
        self._next_id = 0

    def new_batch(self, size: int, name: str | None = None) -> Batch:
        if size < 0:
            raise UsageError(f'batch size must be non-negative, got {size}')
        index = len(self.batches)
        name = name or f'g{index}'
        if name in self._by_name:
            raise UsageError(f'duplicate batch name {name!r}')
        ids = tuple(range(self._next_id, self._next_id + size))
        self._next_id += size
        batch = Batch(self, index, name, ids)
        self.batches.append(batch)
        self._by_name[name] = batch
        for g in ids:
            self._batch_of[g] = index
        log.debug('Allocated batch %s with %d generators', name, size)
        return batch

    def fresh_batch(self, size: int, name: str | None = None) -> list:
        return self.new_batch(size, name).generators

    def batch(self, key) -> Batch:
        """Look up a batch by index, name, or Batch."""
        if isinstance(key, Batch):
            if key.ctx is not self:
                raise UsageError('batch belongs to another context')
            return key
        if isinstance(key, str):
            if key not in self._by_name:
                raise UsageError(f'unknown batch {key!r}')
            return self._by_name[key]
        if isinstance(key, int) and 0 <= key < len(self.batches):
            return self.batches[key]
        raise UsageError(f'unknown batch {key!r}')

    def batch_of(self, generator_id: int) -> int:
        return self._batch_of[generator_id]

    def generator_name(self, generator_id: int) -> str:
        batch = self.batches[self._batch_of[generator_id]]
        pos = batch.generator_ids.index(generator_id)
        return f'{batch.name}{pos}' if batch.size > 1 else batch.name

    def __repr__(self):
        sizes = ', '.join(f'{b.name}:{b.size}' for b in self.batches)
        return f'BatchTable({sizes})'


def fresh_batch(ctx: BatchTable, size: int, name: str | None = None) -> list:
    """Allocate ``size`` new generators forming one batch."""
    return ctx.fresh_batch(size, name)


def _join(a: BatchTable | None, b: BatchTable | None) -> BatchTable | None:
    if a is None:
        return b
    if b is None or a is b:
        return a
    raise UsageError('cannot mix elements from different batch contexts')


# ---------------------------------------------------------------------------
# NilElement
# ---------------------------------------------------------------------------

class NilElement:
    """Immutable element of the truncated nilpotent algebra."""

    __slots__ = ('_terms', 'ctx')

    def __init__(self, terms=None, ctx: BatchTable | None = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(sorted(mono))
            if mono and ctx is None:
                raise UsageError('monomials with generators need a batch context')
            if mono and not _squarefree_in_batches(mono, ctx):
                continue
            coef = coef if isinstance(coef, Scalar) else Scalar(coef)
            if coef.is_zero():
                continue
            clean[mono] = coef
        self._terms = clean
        self.ctx = ctx

    @classmethod
    def constant(cls, value, ctx: BatchTable | None = None) -> 'NilElement':
        return cls({(): Scalar(value)}, ctx)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    # -- structure ---------------------------------------------------------

    def pure_part(self) -> Scalar:
        return self._terms.get((), ZERO)

    def nilpotent_part(self) -> 'NilElement':
        return NilElement({m: c for m, c in self._terms.items() if m}, self.ctx)

    def batches_used(self) -> set:
        if self.ctx is None:
            return set()
        return {self.ctx.batch_of(g) for mono in self._terms for g in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def is_pure(self) -> bool:
        return all(not m for m in self._terms)

    def is_invertible(self) -> bool:
        return self.pure_part().sign() != 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        ctx = _join(self.ctx, other.ctx)
        terms = dict(self._terms)
        for mono, coef in other._terms.items():
            terms[mono] = terms[mono] + coef if mono in terms else coef
        return NilElement(terms, ctx)

    __radd__ = __add__

    def __neg__(self):
        return NilElement({m: -c for m, c in self._terms.items()}, self.ctx)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        ctx = _join(self.ctx, other.ctx)
        terms: dict = {}
        for m1, c1 in self._terms.items():
            b1 = {ctx.batch_of(g) for g in m1} if m1 else set()
            for m2, c2 in other._terms.items():
                if m2 and b1 & {ctx.batch_of(g) for g in m2}:
                    continue
                mono = tuple(sorted(m1 + m2))
                prod = c1 * c2
                terms[mono] = terms[mono] + prod if mono in terms else prod
        return NilElement(terms, ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * nil_inverse(other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * nil_inverse(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = NilElement.constant(1, self.ctx)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, s: Scalar) -> 'NilElement':
        return NilElement({m: c * s for m, c in self._terms.items()}, self.ctx)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f'NilElement({self})'

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for mono in sorted(self._terms, key=lambda m: (len(m), m)):
            coef = self._terms[mono]
            names = '*'.join(self.ctx.generator_name(g) for g in mono) if mono else ''
            if not mono:
                parts.append(f'({coef})')
            elif coef == 1:
                parts.append(names)
            else:
                parts.append(f'({coef})*{names}')
        return ' + '.join(parts)


def _squarefree_in_batches(mono: tuple, ctx: BatchTable) -> bool:
    seen = set()
    for g in mono:
        b = ctx.batch_of(g)
        if b in seen:
            return False
        seen.add(b)
    return True


def _coerce(value) -> NilElement | None:
    if isinstance(value, NilElement):
        return value
    try:
        return NilElement.constant(value)
    except TypeError:
        return None


def nil(value, ctx: BatchTable | None = None) -> NilElement:
    """Coerce a Scalar-like value or NilElement into the algebra."""
    if isinstance(value, NilElement):
        _join(ctx, value.ctx)
        return value
    return NilElement.constant(value, ctx)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def nil_add(x: NilElement, y: NilElement) -> NilElement:
    return nil(x) + nil(y)


def nil_sub(x: NilElement, y: NilElement) -> NilElement:
    return nil(x) - nil(y)


def nil_mul(x: NilElement, y: NilElement) -> NilElement:
    return nil(x) * nil(y)


def _series_order(n: NilElement) -> int:
    # n^(m+1) = 0 when n spans m batches
    return len(n.batches_used())


def nil_inverse(x: NilElement) -> NilElement:
    """Inverse via the truncated geometric series around the pure part."""
    x = nil(x)
    p = x.pure_part()
    if p.sign() == 0:
        raise NotInvertibleError(f'{x} has zero pure part')
    inv_p = ONE / p
    step = -x.nilpotent_part().scale(inv_p)
    result = NilElement.constant(1, x.ctx)
    power = NilElement.constant(1, x.ctx)
    for _ in range(_series_order(x)):
        power = power * step
        result = result + power
    return result.scale(inv_p)


def _half_binomials(count: int) -> list:
    coeffs = [Fraction(1)]
    for k in range(1, count + 1):
        coeffs.append(coeffs[-1] * (Fraction(1, 2) - (k - 1)) / k)
    return coeffs


def nil_sqrt(x: NilElement) -> NilElement:
    """Square root via the truncated binomial series around the pure part."""
    x = nil(x)
    p = x.pure_part()
    if p.sign() != 1:
        raise DomainError(f'square root needs a positive pure part, got {p}')
    ratio = x.nilpotent_part().scale(ONE / p)
    order = _series_order(x)
    result = NilElement.constant(0, x.ctx)
    power = NilElement.constant(1, x.ctx)
    for k, binom in enumerate(_half_binomials(order)):
        if k:
            power = power * ratio
        result = result + power.scale(Scalar(binom))
    return result.scale(p.sqrt())


def nil_less(x: NilElement, y: NilElement) -> bool:
    """Strict order: the pure part of y - x is positive."""
    return (nil(y) - nil(x)).pure_part().sign() == 1


def nil_abs(x: NilElement) -> NilElement:
    x = nil(x)
    sign = x.pure_part().sign()
    if sign == 0:
        raise NotInvertibleError(f'|x| is only defined for invertible x, got {x}')
    return x if sign > 0 else -x


# ---------------------------------------------------------------------------
# KL cancellation
# ---------------------------------------------------------------------------

@dataclass
class KLDecomposition:
    """x = constant + sum(coefficients[g] * g) over one batch's generators."""
    batch: Batch
    constant: NilElement
    coefficients: dict  # generator id -> NilElement, one entry per generator

    def coefficient_list(self) -> list:
        return [self.coefficients[g] for g in self.batch.generator_ids]

    def vanishes_generically(self) -> bool:
        """True iff x = 0 for the generic element of the batch."""
        return self.constant.is_zero() and all(c.is_zero() for c in self.coefficients.values())


def _resolve_batch(x: NilElement, batch) -> Batch:
    if isinstance(batch, Batch):
        _join(x.ctx, batch.ctx)
        return batch
    if x.ctx is None:
        raise UsageError(f'unknown batch {batch!r} for a context-free element')
    return x.ctx.batch(batch)


def kl_cancel(x: NilElement, batch) -> KLDecomposition:
    """Split ``x`` by its dependence on the generators of ``batch``."""
    x = nil(x)
    batch = _resolve_batch(x, batch)
    ctx = batch.ctx
    members = set(batch.generator_ids)
    constant: dict = {}
    coefficients: dict = {g: {} for g in batch.generator_ids}
    for mono, coef in x.terms.items():
        hit = [g for g in mono if g in members]
        if not hit:
            constant[mono] = coef
            continue
        g = hit[0]
        rest = tuple(h for h in mono if h != g)
        coefficients[g][rest] = coef
    return KLDecomposition(
        batch=batch,
        constant=NilElement(constant, ctx),
        coefficients={g: NilElement(t, ctx) for g, t in coefficients.items()},
    )


def _iszero(expr) -> bool:
    return Scalar(expr).is_zero()


def kl_forces_zero(forms: list, batch) -> bool:
    """Whether the simultaneous vanishing of linear ``forms`` in ``batch``'s
    generators forces the generic element to zero.

    Decided on pure parts: full column rank modulo the nilpotents means the
    forms admit a left inverse over the local ring.
    """
    if not isinstance(batch, Batch):
        if not forms:
            raise UsageError(f'unknown batch {batch!r}')
        batch = _resolve_batch(nil(forms[0]), batch)
    rows = []
    for form in forms:
        dec = kl_cancel(form, batch)
        if not dec.constant.is_zero():
            raise UsageError(f'form {form} has a nonzero constant part')
        rows.append([c.pure_part().expr for c in dec.coefficient_list()])
    size = batch.size
    if size == 0:
        return True
    if not rows:
        return False
    rank = sympy.Matrix(rows).rank(iszerofunc=_iszero, simplify=False)
    return rank == size
