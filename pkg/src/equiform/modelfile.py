"""Line-oriented input files for models, module presentations, and
hand-specified operation tables.

Model files:

    ring X:2 Y:2            # base generators with even degrees
    gen a:3 b:3 c:3         # fiber generators
    d a = X^2               # differentials: polynomial expressions
    d b = X^2 + 2*X*Y + Y^2
    max-degree 9            # optional truncation override
    almost-free             # optional flag
    assert check spherical fails

Module files start with `module`, declare a ring and `relation` lines, and
describe the quotient of a free rank-one module.  Structure files start
with `structure`, declare a graded `basis`, and give sparse operation
tables via `m<arity> x y z = expr` lines.  `#` starts a comment; every
value is an integer or rational p/q.
"""

from fractions import Fraction
from typing import Optional

from .gca import CDGA, Element
from .polyring import BaseRing


class ParseError(ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Tokenizer:
    def __init__(self, text, line_no):
        self.text = text
        self.line_no = line_no
        self.pos = 0

    def error(self, msg):
        return ParseError(self.line_no, f"{msg} (column {self.pos + 1})")

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_name(self):
        ch = self.peek()
        if ch is None or not (ch.isalpha() or ch == "_"):
            raise self.error("expected a name")
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] in "_'")):
            self.pos += 1
        return self.text[start:self.pos]

    def take_number(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a number")
        num = int(self.text[start:self.pos])
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            save = self.pos
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if dstart == self.pos:
                self.pos = save
                return Fraction(num)
            return Fraction(num, int(self.text[dstart:self.pos]))
        return Fraction(num)

    def expect(self, ch):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1


def parse_expression(tok: Tokenizer, alg: CDGA) -> Element:
    """expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := atom ('^' int)?; atom := name | number | '(' expr ')'."""

    def atom():
        ch = tok.peek()
        if ch == "(":
            tok.expect("(")
            e = expr()
            tok.expect(")")
            return e
        if ch is not None and ch.isdigit():
            return alg.one().scale(tok.take_number())
        name = tok.take_name()
        if name not in alg.by_name:
            raise tok.error(f"undeclared generator {name!r}")
        return alg.gen(name)

    def factor():
        base = atom()
        if tok.peek() == "^":
            tok.expect("^")
            ch = tok.peek()
            if ch is None or not ch.isdigit():
                raise tok.error("expected an integer exponent")
            e = int(tok.take_number())
            out = alg.one()
            for _ in range(e):
                out = out * base
            return out
        return base

    def term():
        out = factor()
        while tok.peek() == "*":
            tok.expect("*")
            out = out * factor()
        return out

    def expr():
        negate = False
        if tok.peek() == "-":
            tok.expect("-")
            negate = True
        out = term()
        if negate:
            out = -out
        while tok.peek() in ("+", "-"):
            op = tok.peek()
            tok.expect(op)
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    return expr()


class Assertion:
    def __init__(self, line_no, words):
        self.line_no = line_no
        self.words = words

    def __repr__(self):
        return f"assert {' '.join(self.words)}"


class ModelFile:
    kind = "model"

    def __init__(self, algebra: CDGA, max_degree: Optional[int],
                 almost_free: bool, assertions, source: str):
        self.algebra = algebra
        self.max_degree = max_degree
        self.almost_free = almost_free
        self.assertions = assertions
        self.source = source


class ModuleFile:
    kind = "module"

    def __init__(self, ring: BaseRing, relations, max_degree: Optional[int],
                 assertions, source: str):
        self.ring = ring
        self.relations = relations  # list of RPoly
        self.max_degree = max_degree
        self.assertions = assertions
        self.source = source


class StructureFile:
    kind = "structure"

    def __init__(self, structure, assertions, source: str):
        self.structure = structure
        self.assertions = assertions
        self.source = source


def _strip(line):
    if "#" in line:
        line = line[:line.index("#")]
    return line.strip()


def _parse_decls(tok, line_no):
    out = []
    while tok.peek() is not None:
        name = tok.take_name()
        tok.expect(":")
        ch = tok.peek()
        if ch is None or not ch.isdigit():
            raise ParseError(line_no, f"expected a degree for {name}")
        deg = tok.take_number()
        if deg.denominator != 1 or deg <= 0:
            raise ParseError(line_no, f"degree of {name} must be a positive integer")
        out.append((name, int(deg)))
    return out


def parse_model(text: str):
    """Parse a model/module/structure file; returns the matching *File."""
    lines = text.splitlines()
    kind = "model"
    for raw in lines:
        s = _strip(raw)
        if s:
            if s == "module":
                kind = "module"
            elif s == "structure":
                kind = "structure"
            break
    if kind == "structure":
        return _parse_structure(lines, text)
    ring_decl = []
    gen_decl = []
    d_lines = []       # (line_no, name, expr text)
    relations = []     # (line_no, expr text)
    assertions = []
    max_degree = None
    almost_free = False
    for ln, raw in enumerate(lines, 1):
        line = _strip(raw)
        if not line or line in ("module",):
            continue
        tok = Tokenizer(line, ln)
        head = tok.take_name()
        if head == "ring":
            ring_decl.extend(_parse_decls(tok, ln))
        elif head == "gen":
            gen_decl.extend(_parse_decls(tok, ln))
        elif head == "d":
            name = tok.take_name()
            tok.expect("=")
            d_lines.append((ln, name, line[tok.pos:]))
        elif head == "relation":
            relations.append((ln, line[len("relation"):]))
        elif head == "max":
            # max-degree N
            tok.expect("-")
            word = tok.take_name()
            if word != "degree":
                raise ParseError(ln, "expected max-degree")
            max_degree = int(tok.take_number())
        elif head == "almost":
            tok.expect("-")
            if tok.take_name() != "free":
                raise ParseError(ln, "expected almost-free")
            almost_free = True
        elif head == "assert":
            assertions.append(Assertion(ln, line.split()[1:]))
        else:
            raise ParseError(ln, f"unknown directive {head!r}")
    for name, deg in ring_decl:
        if deg % 2:
            raise ParseError(1, f"base generator {name} must have even degree")
    if kind == "module":
        if gen_decl or d_lines:
            raise ParseError(1, "module files take ring/relation lines only")
        ring = BaseRing([n for n, _ in ring_decl], [d for _, d in ring_decl])
        ralg = CDGA(ring_decl, len(ring_decl))
        rels = []
        for ln, src in relations:
            tok = Tokenizer(src, ln)
            elem = parse_expression(tok, ralg)
            if tok.peek() is not None:
                raise ParseError(ln, "trailing input after expression")
            if elem.degree() is None:
                raise ParseError(ln, "relation must be homogeneous")
            rels.append({tuple(_mono_exps(ralg, m)): c for m, c in elem.terms.items()})
        return ModuleFile(ring, rels, max_degree, assertions, text)
    # plain model
    decls = ring_decl + gen_decl
    alg = CDGA(decls, len(ring_decl))
    diff = {}
    for ln, name, src in d_lines:
        if name not in alg.by_name:
            raise ParseError(ln, f"undeclared generator {name!r}")
        tok = Tokenizer(src, ln)
        elem = parse_expression(tok, alg)
        if tok.peek() is not None:
            raise ParseError(ln, "trailing input after expression")
        g = alg.by_name[name]
        if elem and elem.degree() != g.degree + 1:
            raise ParseError(ln, f"d({name}) must be homogeneous of degree {g.degree + 1}, "
                                 f"got degree {elem.degree()}")
        diff[name] = elem.terms
    try:
        alg = CDGA(decls, len(ring_decl), diff,
                   validate_to=max_degree if max_degree is not None else 12)
    except ValueError as exc:
        raise ParseError(0, str(exc))
    return ModelFile(alg, max_degree, almost_free, assertions, text)


def _mono_exps(ralg, mono):
    exps = [0] * len(ralg.generators)
    for i, e in mono:
        exps[i] = e
    return exps


def _parse_structure(lines, text):
    from .ainfty import AInfinityStructure
    basis = []
    ops = []           # (line_no, arity, arg names, expr text)
    assertions = []
    for ln, raw in enumerate(lines, 1):
        line = _strip(raw)
        if not line or line == "structure":
            continue
        tok = Tokenizer(line, ln)
        head = tok.take_name()
        if head == "basis":
            basis.extend(_parse_decls(tok, ln))
        elif head.startswith("m") and head[1:].isdigit():
            arity = int(head[1:])
            args = []
            while tok.peek() != "=":
                args.append(tok.take_name())
            if len(args) != arity:
                raise ParseError(ln, f"m{arity} takes {arity} arguments, got {len(args)}")
            tok.expect("=")
            ops.append((ln, arity, args, line[tok.pos:]))
        elif head == "assert":
            assertions.append(Assertion(ln, line.split()[1:]))
        else:
            raise ParseError(ln, f"unknown directive {head!r}")
    names = ["1"] + [n for n, _ in basis]
    degrees = [0] + [d for _, d in basis]
    if "1" in (n for n, _ in basis):
        raise ParseError(1, "the unit basis element is implicit")
    st = AInfinityStructure(names, degrees, unit_index=0, window=None)
    index = {n: i for i, n in enumerate(names)}
    # value expressions are linear combinations of basis names
    lin = CDGA([(n, d if d > 0 else 1) for n, d in zip(names, degrees)], 0)
    for ln, arity, args, src in ops:
        for a in args:
            if a not in index:
                raise ParseError(ln, f"unknown basis element {a!r}")
        tok = Tokenizer(src, ln)
        elem = parse_expression(tok, lin)
        if tok.peek() is not None:
            raise ParseError(ln, "trailing input after expression")
        value = {}
        for m, c in elem.terms.items():
            if len(m) != 1 or m[0][1] != 1:
                raise ParseError(ln, "operation values must be linear in the basis")
            value[m[0][0]] = c
        expected = sum(degrees[index[a]] for a in args) + 2 - arity
        for b in value:
            if degrees[b] != expected:
                raise ParseError(ln, f"value degree {degrees[b]} does not match "
                                     f"operation degree {expected}")
        st.set_entry(arity, tuple(index[a] for a in args), value)
    return StructureFile(st, assertions, text)


def print_model(mf: ModelFile) -> str:
    """Canonical text form; parse_model(print_model(m)) reproduces m."""
    alg = mf.algebra
    out = []
    if alg.base_count:
        out.append("ring " + " ".join(f"{g.name}:{g.degree}"
                                      for g in alg.base_generators))
    if alg.fiber_generators:
        out.append("gen " + " ".join(f"{g.name}:{g.degree}"
                                     for g in alg.fiber_generators))
    for g in alg.fiber_generators:
        dg = alg.d_gen(g.index)
        if dg:
            out.append(f"d {g.name} = {alg.format_element(dg)}")
    if mf.max_degree is not None:
        out.append(f"max-degree {mf.max_degree}")
    if mf.almost_free:
        out.append("almost-free")
    for a in mf.assertions:
        out.append(repr(a))
    return "\n".join(out) + "\n"


def model_from_algebra(alg: CDGA, max_degree=None, almost_free=False) -> ModelFile:
    return ModelFile(alg, max_degree, almost_free, [], "")
