"""Line-oriented text formats for grammars and parses.

Grammar files hold one rule per line::

    T <id> <byte>          terminal (decimal byte value)
    B <id> <left> <right>  binary rule
    R <id> <base> <k>      run-length rule
    S <start>              start symbol

Parse files hold one phrase per line, in text order::

    E <literal>            explicit phrase, backslash-escaped bytes
    C <src> <len>          copy of S[src .. src+len-1]

Blank lines and lines starting with ``#`` are ignored.
"""
import codecs

from .parse import Copy, Explicit, Parse
from .rlslp import Binary, GrammarError, Rlslp, Run, Terminal


class FormatError(ValueError):
    pass


def _lines(text):
    for num, line in enumerate(text.splitlines(), 1):
        if line.strip() and not line.lstrip().startswith("#"):
            yield num, line


def loads_grammar(text):
    rules, start = {}, None
    for num, line in _lines(text):
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "T" and len(parts) == 3:
                rule = Terminal(int(parts[2]))
            elif tag == "B" and len(parts) == 4:
                rule = Binary(parts[2], parts[3])
            elif tag == "R" and len(parts) == 4:
                rule = Run(parts[2], int(parts[3]))
            elif tag == "S" and len(parts) == 2:
                if start is not None:
                    raise FormatError(f"line {num}: second start symbol")
                start = parts[1]
                continue
            else:
                raise FormatError(f"line {num}: cannot parse {line.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {num}: {exc}") from None
        if parts[1] in rules:
            raise FormatError(f"line {num}: symbol {parts[1]!r} defined twice")
        rules[parts[1]] = rule
    if start is None:
        raise FormatError("missing start line 'S <start>'")
    return Rlslp(rules, start)


def dumps_grammar(g):
    out = []
    for sym, rule in g.rules.items():
        if isinstance(rule, Terminal):
            out.append(f"T {sym} {rule.symbol}")
        elif isinstance(rule, Binary):
            out.append(f"B {sym} {rule.left} {rule.right}")
        else:
            out.append(f"R {sym} {rule.base} {rule.k}")
    out.append(f"S {g.start}")
    return "\n".join(out) + "\n"


def _escape(literal):
    return codecs.escape_encode(literal)[0].decode("ascii")


def _unescape(field):
    return codecs.escape_decode(field.encode("latin-1"))[0]


def loads_parse(text):
    phrases = []
    for num, line in _lines(text):
        tag, _, rest = line.partition(" ")
        try:
            if tag == "E":
                lit = _unescape(rest)
                if not lit:
                    raise FormatError(f"line {num}: empty literal")
                phrases.append(Explicit(lit))
            elif tag == "C":
                src, length = rest.split()
                if int(src) < 1 or int(length) < 1:
                    raise FormatError(f"line {num}: source and length must be positive")
                phrases.append(Copy(int(src), int(length)))
            else:
                raise FormatError(f"line {num}: cannot parse {line.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {num}: {exc}") from None
    if not phrases:
        raise FormatError("parse has no phrases")
    return Parse(phrases)


def dumps_parse(p):
    out = []
    for ph in p.phrases:
        if isinstance(ph, Explicit):
            out.append(f"E {_escape(ph.literal)}")
        else:
            out.append(f"C {ph.src} {ph.length}")
    return "\n".join(out) + "\n"


def read_grammar(path):
    with open(path, encoding="utf-8") as fh:
        return loads_grammar(fh.read())


def write_grammar(g, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_grammar(g))


def read_parse(path):
    with open(path, encoding="latin-1") as fh:
        return loads_parse(fh.read())


def write_parse(p, path):
    with open(path, "w", encoding="latin-1") as fh:
        fh.write(dumps_parse(p))


def read_text(path):
    with open(path, "rb") as fh:
        return fh.read()


__all__ = ["FormatError", "GrammarError", "loads_grammar", "dumps_grammar",
           "loads_parse", "dumps_parse", "read_grammar", "write_grammar",
           "read_parse", "write_parse", "read_text"]
