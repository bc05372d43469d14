"""Text forms for field elements and polynomials.

Element:   ``Fq2:[a0,a1]`` means a0 + a1*t (t^2 = n), digits 0 <= ai < p.
           For h > 1 each ai is itself a list ``[d0,...,d_{h-1}]`` over F_p.
           ``Fq6:[c0,c1,c2]`` nests three F_{q^2} lists.

Polynomial grammar (whitespace ignored)::

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := coef ['*'] mono | coef | mono
    mono  := 'x' ['^' INT]
    coef  := INT | list | 't' | INT '*'? 't'
    list  := '[' elem (',' elem)* ']'       elem := INT | list

An INT coefficient is an element of the prime field; ``t`` is the generator
of F_{q^2} over F_q. Repeated powers of x are summed. Examples:
``x^3-3x+1``, ``x^3 - [1,2]*x + [0,3]``, ``x^3 + 2t x + 1``.
"""

from __future__ import annotations

import re

from .gf import Field, FieldTower


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        self.msg, self.text, self.pos = msg, text, pos
        super().__init__(f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^")


def _list_of(F: Field, code: int):
    if F.base is None:
        return code
    return [_list_of(F.base, c) for c in F.coeffs(code)]


def format_coeffs(F: Field, code: int) -> str:
    v = _list_of(F, code)
    return str(v).replace(" ", "") if isinstance(v, list) else f"[{v}]"


def format_element(F: Field, code: int) -> str:
    return f"{F.name}:{format_coeffs(F, code)}"


def _from_list(F: Field, v, text, pos) -> int:
    if isinstance(v, int):
        if F.base is None:
            if not 0 <= v < F.p:
                raise ParseError(f"digit {v} out of range 0..{F.p - 1}", text, pos)
            return v
        return v % F.p if 0 <= v else F.neg(-v % F.p)
    if F.base is None:
        if len(v) != 1:
            raise ParseError("prime-field element takes one digit", text, pos)
        return _from_list(F, v[0], text, pos)
    if len(v) > F.ext_degree:
        raise ParseError(f"{F.name} element takes at most {F.ext_degree} coefficients", text, pos)
    cs = [_from_list(F.base, c, text, pos) for c in v] + [0] * (F.ext_degree - len(v))
    return F.from_coeffs(cs)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(t)|(\^)|([+\-])|(\*)|(\[)|(\])|(,)|(\S))")


def _tokens(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kind = m.lastindex
        if kind is None:
            break
        start = m.start(kind)
        val = m.group(kind)
        names = {1: "int", 2: "x", 3: "t", 4: "^", 5: "sign", 6: "*", 7: "[", 8: "]", 9: ",", 10: "bad"}
        out.append((names[kind], val, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, tower: FieldTower, text: str):
        self.T = tower
        self.F = tower.fq2
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = {"int": "integer", "end": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", self.text, tok[2])
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def nested(self):
        self.take("[")
        items = []
        while True:
            k = self.peek()[0]
            if k == "int":
                items.append(int(self.take()[1]))
            elif k == "[":
                items.append(self.nested())
            elif k == "sign" and self.peek()[1] == "-":
                self.take()
                items.append(-int(self.take("int")[1]))
            else:
                self.fail("expected integer or '['")
            if self.peek()[0] == ",":
                self.take()
                continue
            self.take("]")
            return items

    def coef(self):
        """Return a code or None if no coefficient is present."""
        F = self.F
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            c = int(val) % self.T.p
            if self.peek()[0] == "*" and self.toks[self.i + 1][0] == "t":
                self.take()
            if self.peek()[0] == "t":
                self.take()
                c = F.mul(c, self.T.t)
            return c
        if kind == "t":
            self.take()
            return self.T.t
        if kind == "[":
            v = self.nested()
            return _from_list(F, v, self.text, pos)
        return None

    def mono(self):
        if self.peek()[0] != "x":
            return None
        self.take()
        if self.peek()[0] == "^":
            self.take()
            return int(self.take("int")[1])
        return 1

    def term(self):
        pos = self.peek()[2]
        c = self.coef()
        if c is not None and self.peek()[0] == "*":
            self.take()
            e = self.mono()
            if e is None:
                self.fail("expected 'x' after '*'")
            return c, e
        e = self.mono()
        if c is None and e is None:
            raise ParseError("expected a term", self.text, pos)
        return (1 if c is None else c), (0 if e is None else e)

    def poly(self):
        F = self.F
        acc: dict[int, int] = {}
        first = True
        while True:
            neg = False
            kind, val, _ = self.peek()
            if kind == "sign":
                self.take()
                neg = val == "-"
            elif not first:
                if kind == "end":
                    break
                self.fail("expected '+' or '-'")
            c, e = self.term()
            if neg:
                c = F.neg(c)
            acc[e] = F.add(acc.get(e, 0), c)
            first = False
            if self.peek()[0] == "end":
                break
        self.take("end")
        n = max(acc) if acc else 0
        return [acc.get(i, 0) for i in range(n + 1)]


def parse_poly(tower: FieldTower, text: str):
    from .poly import Poly
    if not text.strip():
        raise ParseError("empty polynomial", text, 0)
    return Poly.from_list(tower, _Parser(tower, text).poly())


def parse_element(tower: FieldTower, text: str, level: str = "Fq2") -> int:
    """Parse ``[a0,a1]``, ``Fq2:[a0,a1]``, ``t`` or a bare integer into a code."""
    s = text.strip()
    m = re.match(r"(Fq6|Fq2|Fq|Fp):", s)
    if m:
        level = m.group(1)
        s = s[m.end():]
    F = tower.level(level)
    p = _Parser(tower, s)
    p.F = F
    kind, val, pos = p.peek()
    if kind == "[":
        code = _from_list(F, p.nested(), s, pos)
    elif kind in ("int", "t", "sign"):
        neg = kind == "sign" and p.take()[1] == "-"
        code = p.coef()
        if code is None:
            p.fail("expected an element")
        if neg:
            code = F.neg(code)
    else:
        p.fail("expected an element")
    p.take("end")
    return code


def format_poly(P) -> str:
    F = P.F
    p = F.p
    parts = []
    for e in range(P.degree, -1, -1):
        c = P.coeff(e)
        if not c:
            continue
        mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if c < p:
            neg = c > p // 2
            mag = p - c if neg else c
            body = mono if (mag == 1 and mono) else f"{mag}{mono}"
            sign = "-" if neg else "+"
        else:
            body = format_coeffs(F, c) + (f"*{mono}" if mono else "")
            sign = "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
