"""
A small language for building cobordisms out of caps, cylinders and pants.

    expr := leaf | glue(expr, nat, expr, nat) | selfglue(expr, nat, nat)
    leaf := (cap(sign) | cyl | pants(sign, sign, sign)) @(int, int)

A '-' boundary circle is an input and a '+' circle an output. In
``glue(A, a, B, b)`` output number a of A (counting from 1 among the outputs)
is joined to input number b of B; ``selfglue(A, a, b)`` joins output a of A
to its own input b.
"""
from dataclasses import dataclass, field

import pyparsing as pp

from .exceptions import CobordismSyntaxError, CobordismTypeError
from .tqftcore import CobordismSignature, glue, self_glue, tensor_of


@dataclass(frozen=True)
class Leaf:
    kind: str
    signs: tuple
    k1: int
    k2: int
    position: int = field(default=0, compare=False)

    def signature(self):
        return CobordismSignature(0, self.k1, self.k2, self.signs.count('-'), self.signs.count('+'))


@dataclass(frozen=True)
class Glue:
    left: object
    out_index: int
    right: object
    in_index: int
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SelfGlue:
    body: object
    out_index: int
    in_index: int
    position: int = field(default=0, compare=False)


def _leaf_action(kind):
    def action(text, loc, tokens):
        signs = tuple(tokens[:-2]) if kind != 'cyl' else ('-', '+')
        return Leaf(kind, signs, tokens[-2], tokens[-1], loc)
    return action


def _setup():
    LPAREN = pp.Literal('(').suppress()
    RPAREN = pp.Literal(')').suppress()
    COMMA = pp.Literal(',').suppress()

    # both the ASCII hyphen and the unicode minus sign are accepted
    sign = (pp.Literal('+') | pp.Literal('-') | pp.Literal('−')).setParseAction(
        lambda t: '-' if t[0] == '−' else t[0])
    integer = pp.Regex(r'[-−]?\d+').setParseAction(lambda t: int(t[0].replace('−', '-')))
    nat = pp.Regex(r'\d+').setParseAction(lambda t: int(t[0]))

    levels = pp.Literal('@').suppress() + LPAREN + integer + COMMA + integer + RPAREN

    cap = pp.Keyword('cap').suppress() + LPAREN + sign + RPAREN + levels
    cap.setParseAction(_leaf_action('cap'))
    cyl = pp.Keyword('cyl').suppress() + levels
    cyl.setParseAction(_leaf_action('cyl'))
    pants = (pp.Keyword('pants').suppress() + LPAREN
             + sign + pp.Optional(COMMA) + sign + pp.Optional(COMMA) + sign
             + RPAREN + levels)
    pants.setParseAction(_leaf_action('pants'))
    leaf = cap | cyl | pants

    expression = pp.Forward()
    glue_expr = (pp.Keyword('glue').suppress() + LPAREN + expression + COMMA + nat + COMMA
                 + expression + COMMA + nat + RPAREN)
    glue_expr.setParseAction(lambda text, loc, t: Glue(t[0], t[1], t[2], t[3], loc))
    selfglue_expr = (pp.Keyword('selfglue').suppress() + LPAREN + expression + COMMA + nat
                     + COMMA + nat + RPAREN)
    selfglue_expr.setParseAction(lambda text, loc, t: SelfGlue(t[0], t[1], t[2], loc))

    expression <<= glue_expr | selfglue_expr | leaf
    return expression


PARSER = _setup()


def parse_cobordism(text):
    try:
        return PARSER.parseString(text, parseAll=True)[0]
    except pp.ParseException as exc:
        raise CobordismSyntaxError(f'syntax error: {exc.msg}', text, exc.loc) from exc


def signature_of(expr, text=''):
    """Signature of the composite, checking every glue refers to a boundary that exists."""
    if isinstance(expr, Leaf):
        return expr.signature()
    if isinstance(expr, Glue):
        left = signature_of(expr.left, text)
        right = signature_of(expr.right, text)
        if left.n == 0:
            raise CobordismTypeError('left operand of glue has no outgoing (+) boundary', text, expr.position)
        if right.m == 0:
            raise CobordismTypeError('right operand of glue has no incoming (-) boundary', text, expr.position)
        if not 1 <= expr.out_index <= left.n:
            raise CobordismTypeError(
                f'output {expr.out_index} does not exist, the left operand has {left.n}', text, expr.position)
        if not 1 <= expr.in_index <= right.m:
            raise CobordismTypeError(
                f'input {expr.in_index} does not exist, the right operand has {right.m}', text, expr.position)
        return left.glued(right)
    body = signature_of(expr.body, text)
    if body.n == 0 or body.m == 0:
        raise CobordismTypeError('selfglue needs both an incoming and an outgoing boundary', text, expr.position)
    if not 1 <= expr.out_index <= body.n:
        raise CobordismTypeError(
            f'output {expr.out_index} does not exist, the operand has {body.n}', text, expr.position)
    if not 1 <= expr.in_index <= body.m:
        raise CobordismTypeError(
            f'input {expr.in_index} does not exist, the operand has {body.m}', text, expr.position)
    return body.self_glued()


def render(expr):
    if isinstance(expr, Leaf):
        levels = f'@({expr.k1},{expr.k2})'
        if expr.kind == 'cyl':
            return 'cyl' + levels
        return f"{expr.kind}({','.join(expr.signs)}){levels}"
    if isinstance(expr, Glue):
        return f'glue({render(expr.left)},{expr.out_index},{render(expr.right)},{expr.in_index})'
    return f'selfglue({render(expr.body)},{expr.out_index},{expr.in_index})'


def evaluate(expr, ss, text=''):
    """
    The tensor of the composite in the semisimple basis.

    ``expr`` may be source text, which is parsed first; type errors then point
    into that text.
    """
    if isinstance(expr, str):
        text = expr
        expr = parse_cobordism(text)
    signature_of(expr, text)
    return _evaluate(expr, ss)


def _evaluate(expr, ss):
    if isinstance(expr, Leaf):
        return tensor_of(expr.signature(), ss)
    if isinstance(expr, Glue):
        left = _evaluate(expr.left, ss)
        right = _evaluate(expr.right, ss)
        return glue(left, left.m + expr.out_index - 1, right, expr.in_index - 1)
    body = _evaluate(expr.body, ss)
    return self_glue(body, body.m + expr.out_index - 1, expr.in_index - 1)
