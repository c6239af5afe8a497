"""Text and JSON front ends for presentations, groups, and kernels.

The presentation language is statement-based and semicolon-terminated:

    algebra weyl; gens x:0, d:1; rel d*x - x*d - 1; bound 3;

`algebra NAME;` is optional; `gens` declares generators with their
filtration weights (`:0` if omitted); each `rel` statement gives one
relation as a polynomial in the generators with rational coefficients;
`bound N;` sets the word-length truncation.  Printing produces a
canonical form: printing a parsed canonical text reproduces it byte
for byte, and parsing a printed presentation reproduces the
presentation.

Groups are written `Z4xZ2`; translation-algebra generators are written
`shift=(1,0);twist=(0,1)`.  JSON codecs for polynomials, presentations,
morphisms, and lifting diagrams round-trip exactly, with rationals as
"p/q" strings.
"""

from fractions import Fraction

from .words import NcPoly, word_key
from .truncated import Presentation, build_truncated
from .groups import FiniteAbGroup


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class UnknownGenerator(ParseError):
    pass


class ZeroModulus(Exception):
    pass


# -- tokenizer ---------------------------------------------------------------

_SYMBOLS = "+-*^();:,=/"


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return f"{self.kind}({self.value!r})"


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(_Token("int", int(text[start:i]), line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("ident", text[start:i], line, col))
            col += i - start
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", None, line, col))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead=0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.value)
            raise ParseError(f"expected {what or kind}, found {found}",
                             tok.line, tok.col)
        return self.next()


# -- polynomial expressions ---------------------------------------------------

def _parse_atom(cur, gen_index):
    tok = cur.peek()
    if tok.kind == "int":
        cur.next()
        value = Fraction(tok.value)
        if cur.peek().kind == "/":
            cur.next()
            den = cur.expect("int", "denominator")
            if den.value == 0:
                raise ParseError("zero denominator", den.line, den.col)
            value /= den.value
        return NcPoly.scalar(value)
    if tok.kind == "ident":
        cur.next()
        if tok.value not in gen_index:
            raise UnknownGenerator(
                f"unknown generator {tok.value!r}", tok.line, tok.col)
        return NcPoly.gen(gen_index[tok.value])
    if tok.kind == "(":
        cur.next()
        inner = _parse_expr(cur, gen_index)
        cur.expect(")", "closing parenthesis")
        return inner
    found = "end of input" if tok.kind == "eof" else repr(tok.value)
    raise ParseError(f"expected a term, found {found}", tok.line, tok.col)


def _parse_factor(cur, gen_index):
    base = _parse_atom(cur, gen_index)
    if cur.peek().kind == "^":
        cur.next()
        exp = cur.expect("int", "exponent")
        return base ** exp.value
    return base


def _parse_term(cur, gen_index):
    poly = _parse_factor(cur, gen_index)
    while cur.peek().kind == "*":
        cur.next()
        poly = poly * _parse_factor(cur, gen_index)
    return poly


def _parse_expr(cur, gen_index):
    sign = 1
    while cur.peek().kind in ("+", "-"):
        if cur.next().kind == "-":
            sign = -sign
    poly = _parse_term(cur, gen_index).scale(sign)
    while cur.peek().kind in ("+", "-"):
        sign = 1 if cur.next().kind == "+" else -1
        while cur.peek().kind in ("+", "-"):
            if cur.next().kind == "-":
                sign = -sign
        poly = poly + _parse_term(cur, gen_index).scale(sign)
    return poly


def parse_poly(text, gens):
    """Parse a polynomial expression over the named generators."""
    gen_index = {g: i for i, g in enumerate(gens)}
    cur = _Cursor(_tokenize(text))
    poly = _parse_expr(cur, gen_index)
    tok = cur.peek()
    if tok.kind != "eof":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.col)
    return poly


# -- presentations --------------------------------------------------------

def parse_presentation(text):
    """Parse the statement-based presentation language."""
    cur = _Cursor(_tokenize(text))
    name = None
    gens = []
    weights = []
    relation_src = []
    bound = None
    seen_gens = False
    while cur.peek().kind != "eof":
        head = cur.expect("ident", "a statement keyword")
        if head.value == "algebra":
            name_tok = cur.expect("ident", "algebra name")
            name = name_tok.value
        elif head.value == "gens":
            if seen_gens:
                raise ParseError("duplicate gens statement",
                                 head.line, head.col)
            seen_gens = True
            while True:
                g = cur.expect("ident", "generator name")
                w = 0
                if cur.peek().kind == ":":
                    cur.next()
                    w = cur.expect("int", "weight").value
                gens.append(g.value)
                weights.append(w)
                if cur.peek().kind == ",":
                    cur.next()
                    continue
                break
        elif head.value == "rel":
            start = cur.pos
            depth = 0
            while cur.peek().kind not in (";", "eof") or depth:
                k = cur.next().kind
                depth += (k == "(") - (k == ")")
            relation_src.append((start, cur.pos))
        elif head.value == "bound":
            bound = cur.expect("int", "bound value").value
        else:
            raise ParseError(f"unknown statement {head.value!r}",
                             head.line, head.col)
        cur.expect(";", "';'")
    if not gens:
        raise ParseError("missing gens statement", 1, 1)
    if bound is None:
        raise ParseError("missing bound statement", 1, 1)
    gen_index = {g: i for i, g in enumerate(gens)}
    relations = []
    for start, end in relation_src:
        stop = cur.tokens[end]
        sub = _Cursor(cur.tokens[start:end]
                      + [_Token("eof", None, stop.line, stop.col)])
        poly = _parse_expr(sub, gen_index)
        tok = sub.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.value!r} in relation",
                             tok.line, tok.col)
        relations.append(poly)
    return Presentation(gens, relations, bound, weights, name)


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else (
        f"{q.numerator}/{q.denominator}")


def print_poly(poly, gens):
    """Canonical text for a polynomial: terms in word order."""
    if poly.is_zero():
        return "0"
    bits = []
    for word, coeff in sorted(poly.terms.items(),
                              key=lambda t: word_key(t[0]), reverse=True):
        mag = abs(coeff)
        body = "*".join(gens[i] for i in word)
        if not word:
            piece = format_rational(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{format_rational(mag)}*{body}"
        if not bits:
            bits.append(piece if coeff > 0 else f"-{piece}")
        else:
            bits.append(("+ " if coeff > 0 else "- ") + piece)
    return " ".join(bits)


def print_presentation(pres):
    """Canonical text form; parsing it reproduces the presentation."""
    parts = []
    if pres.name:
        parts.append(f"algebra {pres.name};")
    parts.append("gens " + ", ".join(
        f"{g}:{w}" for g, w in zip(pres.gens, pres.weights)) + ";")
    for rel in pres.relations:
        parts.append(f"rel {print_poly(rel, pres.gens)};")
    parts.append(f"bound {pres.bound};")
    return " ".join(parts)


# -- groups and translation algebras ---------------------------------------

def parse_group(text):
    """Parse `Z<n>(xZ<n>)*` into a finite abelian group."""
    moduli = []
    for part in text.replace(" ", "").split("x"):
        if not part or part[0] not in "Zz" or not part[1:].isdigit():
            raise ParseError(f"bad group factor {part!r}")
        n = int(part[1:])
        if n == 0:
            raise ZeroModulus(f"zero modulus in {text!r}")
        moduli.append(n)
    return FiniteAbGroup(tuple(moduli))


def print_group(group):
    return "x".join(f"Z{n}" for n in group.moduli)


def parse_fm_gens(text, group):
    """Parse `shift=(1,0);twist=(0,1)` into (shift, twist) pairs."""
    pairs = []
    k = len(group.moduli)
    for item in text.replace(" ", "").split(";"):
        if not item:
            continue
        if "=" not in item:
            raise ParseError(f"expected shift=/twist= item, got {item!r}")
        kind, _, tup = item.partition("=")
        if kind not in ("shift", "twist"):
            raise ParseError(f"unknown item kind {kind!r}")
        if not (tup.startswith("(") and tup.endswith(")")):
            raise ParseError(f"expected a tuple, got {tup!r}")
        try:
            vec = tuple(int(p) for p in tup[1:-1].split(",") if p != "")
        except ValueError:
            raise ParseError(f"bad tuple {tup!r}") from None
        if len(vec) != k:
            raise ParseError(
                f"tuple {tup!r} does not match {k} group factors")
        if kind == "shift":
            pairs.append((group.reduce(vec), group.zero))
        else:
            pairs.append((group.zero, group.reduce(vec)))
    if not pairs:
        raise ParseError("no generators given")
    return pairs


# -- JSON codecs -----------------------------------------------------------

def poly_to_json(poly):
    return [{"word": list(w), "coeff": format_rational(c)}
            for w, c in sorted(poly.terms.items(),
                               key=lambda t: word_key(t[0]))]


def poly_from_json(obj):
    return NcPoly((tuple(item["word"]), Fraction(item["coeff"]))
                  for item in obj)


def presentation_to_json(pres):
    return {
        "name": pres.name,
        "gens": list(pres.gens),
        "weights": list(pres.weights),
        "bound": pres.bound,
        "relations": [poly_to_json(r) for r in pres.relations],
    }


def presentation_from_json(obj):
    return Presentation(
        obj["gens"],
        [poly_from_json(r) for r in obj.get("relations", [])],
        obj["bound"],
        obj.get("weights"),
        obj.get("name"),
    )


def diagram_to_json(diag):
    return {
        "label": diag.label,
        "R": presentation_to_json(diag.R.pres),
        "S": presentation_to_json(diag.S.pres),
        "Aprime": presentation_to_json(diag.Aprime.pres),
        "A": presentation_to_json(diag.A.pres),
        "maps": {
            "alpha": [poly_to_json(p) for p in diag.alpha.images],
            "beta": [poly_to_json(p) for p in diag.beta.images],
            "gamma": [poly_to_json(p) for p in diag.ext.gamma.images],
            "delta": [poly_to_json(p) for p in diag.delta.images],
        },
    }


def diagram_from_json(obj):
    from .etale import AlgebraMorphism, CentralExtension, EtaleDiagram
    algs = {key: build_truncated(presentation_from_json(obj[key]))
            for key in ("R", "S", "Aprime", "A")}
    maps = obj["maps"]

    def morph(key, source, target):
        return AlgebraMorphism(
            algs[source], algs[target],
            [poly_from_json(p) for p in maps[key]], name=key)

    return EtaleDiagram(
        morph("alpha", "R", "S"),
        morph("beta", "S", "A"),
        CentralExtension(morph("gamma", "Aprime", "A")),
        morph("delta", "R", "Aprime"),
        label=obj.get("label", ""))


def morphism_to_json(mor):
    return {
        "name": mor.name,
        "source": presentation_to_json(mor.source.pres),
        "target": presentation_to_json(mor.target.pres),
        "images": [poly_to_json(p) for p in mor.images],
    }


def morphism_from_json(obj):
    from .etale import AlgebraMorphism
    return AlgebraMorphism(
        build_truncated(presentation_from_json(obj["source"])),
        build_truncated(presentation_from_json(obj["target"])),
        [poly_from_json(p) for p in obj["images"]],
        name=obj.get("name", ""))
